use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Class, MAX_DIM};

/// An isometry of `Z^{1,r}` fixing `K`, as an integer matrix acting on
/// column vectors. Coordinates beyond the lattice dimension are fixed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElement {
    m: [[i8; MAX_DIM]; MAX_DIM],
    dim: u8,
}

impl WeylElement {
    pub fn identity(dim: usize) -> WeylElement {
        let mut m = [[0i8; MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylElement { m, dim: dim as u8 }
    }

    /// Reflection `x -> x + (x . a) a` in a root `a`.
    pub fn reflection(dim: usize, a: &Class) -> WeylElement {
        let mut w = WeylElement::identity(dim);
        for j in 0..dim {
            let e_dot_a = if j == 0 { a.0[0] } else { -a.0[j] };
            for i in 0..dim {
                w.m[i][j] += (e_dot_a * a.0[i]) as i8;
            }
        }
        w
    }

    /// Build from a square integer matrix of size `dim`.
    pub fn from_matrix(rows: &[Vec<i32>]) -> WeylElement {
        let dim = rows.len();
        let mut w = WeylElement::identity(dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                w.m[i][j] = x as i8;
            }
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.m[i][j] as i32
    }

    pub fn matrix(&self) -> Vec<Vec<i32>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.m[i][j] as i32).collect())
            .collect()
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &WeylElement) -> WeylElement {
        let mut m = [[0i8; MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut s = 0i32;
                for k in 0..MAX_DIM {
                    s += self.m[i][k] as i32 * o.m[k][j] as i32;
                }
                *out = s as i8;
            }
        }
        WeylElement { m, dim: self.dim }
    }

    /// Inverse `J w^T J`, where `J` is the Gram matrix.
    pub fn inverse(&self) -> WeylElement {
        let mut m = [[0i8; MAX_DIM]; MAX_DIM];
        let sign = |i: usize| if i == 0 { 1 } else { -1 };
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = (sign(i) * sign(j)) as i8 * self.m[j][i];
            }
        }
        WeylElement { m, dim: self.dim }
    }

    pub fn pow(&self, n: u32) -> WeylElement {
        let mut r = WeylElement::identity(self.dim());
        for _ in 0..n {
            r = r.compose(self);
        }
        r
    }

    pub fn apply(&self, x: &Class) -> Class {
        let mut out = [0i32; MAX_DIM];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..MAX_DIM {
                *o += self.m[i][j] as i32 * x.0[j];
            }
        }
        Class(out)
    }

    /// `g self g^{-1}`.
    pub fn conjugate_by(&self, g: &WeylElement) -> WeylElement {
        g.compose(self).compose(&g.inverse())
    }

    pub fn trace(&self) -> i32 {
        (0..self.dim()).map(|i| self.m[i][i] as i32).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.dim())
    }

    pub fn order(&self) -> u32 {
        let mut k = 1;
        let mut p = *self;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Restrict to the first `dim` coordinates (when the rest is fixed).
    pub fn truncate(&self, dim: usize) -> WeylElement {
        let mut w = WeylElement::identity(dim);
        for i in 0..dim {
            for j in 0..dim {
                w.m[i][j] = self.m[i][j];
            }
        }
        w
    }

    /// Same matrix, viewed in a lattice of larger dimension.
    pub fn extend(&self, dim: usize) -> WeylElement {
        WeylElement {
            m: self.m,
            dim: dim as u8,
        }
    }

    /// Permutation induced on a finite set of classes stable under `self`.
    pub fn permutation_on(&self, set: &[Class]) -> Option<Vec<usize>> {
        set.iter()
            .map(|c| {
                let img = self.apply(c);
                set.iter().position(|d| *d == img)
            })
            .collect()
    }

    /// Does `self` map the set `s` onto itself?
    pub fn stabilizes(&self, s: &[Class]) -> bool {
        s.iter().all(|c| s.contains(&self.apply(c)))
    }
}

/// The Weyl group, stored as an explicit element list in canonical order:
/// breadth-first layer from the identity, then lexicographic matrix order.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    elements: Vec<WeylElement>,
    layers: Vec<u8>,
    index: BTreeMap<WeylElement, u32>,
}

impl WeylGroup {
    pub fn generate(dim: usize, generators: &[WeylElement]) -> WeylGroup {
        let id = WeylElement::identity(dim);
        let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
        seen.insert(id);
        let mut elements = alloc::vec![id];
        let mut layers = alloc::vec![0u8];
        let mut frontier = alloc::vec![id];
        let mut depth = 0u8;
        while !frontier.is_empty() {
            depth += 1;
            let mut next: BTreeSet<WeylElement> = BTreeSet::new();
            for w in &frontier {
                for g in generators {
                    let x = g.compose(w);
                    if !seen.contains(&x) {
                        next.insert(x);
                    }
                }
            }
            frontier = next.into_iter().collect();
            for x in &frontier {
                seen.insert(*x);
                elements.push(*x);
                layers.push(depth);
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (*w, i as u32))
            .collect();
        WeylGroup {
            dim,
            elements,
            layers,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Word length of element `i` in the simple reflections.
    pub fn length(&self, i: usize) -> u8 {
        self.layers[i]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.index.contains_key(w)
    }
}
