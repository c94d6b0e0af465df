//! The lattice `Z^{1,r}`, its roots and exceptional classes, Weyl groups,
//! characteristic polynomials and lattice quotients.

mod class;
pub(crate) mod intlin;
mod weyl;

use alloc::vec;
use alloc::vec::Vec;

pub use class::{Class, MAX_DIM};
pub use weyl::{WeylElement, WeylGroup};

use intlin::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("degree {0} is outside 3..=6")]
    UnsupportedDegree(u8),
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomic,
    #[error("subspace is not invariant")]
    NotInvariant,
}

/// `Pic` of a weak del Pezzo surface of degree `d`, i.e. `Z^{1,9-d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    degree: u8,
}

impl Lattice {
    pub fn new(degree: u8) -> Result<Lattice, LatticeError> {
        if !(3..=6).contains(&degree) {
            return Err(LatticeError::UnsupportedDegree(degree));
        }
        Ok(Lattice { degree })
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Number of blown-up points `r = 9 - d`.
    pub fn r(&self) -> usize {
        9 - self.degree as usize
    }

    /// Lattice dimension `r + 1`.
    pub fn dim(&self) -> usize {
        self.r() + 1
    }

    /// Canonical class `-3E_0 + E_1 + ... + E_r`.
    pub fn canonical(&self) -> Class {
        let mut k = Class::e(0);
        k.0[0] = -3;
        for i in 1..=self.r() {
            k.0[i] = 1;
        }
        k
    }

    fn enumerate(&self, a_bound: i32, b_bound: i32, square: i32, k_dot: i32) -> Vec<Class> {
        let r = self.r();
        let k = self.canonical();
        let mut out = Vec::new();
        let mut b = vec![-b_bound; r];
        loop {
            for a in -a_bound..=a_bound {
                let mut c = Class::e(0);
                c.0[0] = a;
                c.0[1..=r].copy_from_slice(&b);
                if c.square() == square && c.dot(&k) == k_dot {
                    out.push(c);
                }
            }
            let mut i = 0;
            while i < r && b[i] == b_bound {
                b[i] = -b_bound;
                i += 1;
            }
            if i == r {
                break;
            }
            b[i] += 1;
        }
        out.sort();
        out
    }

    /// All roots `D^2 = -2, D.K = 0`, sorted.
    pub fn roots(&self) -> Vec<Class> {
        self.enumerate(3, 2, -2, 0)
    }

    /// All exceptional classes `D^2 = D.K = -1`, sorted.
    pub fn exceptional_classes(&self) -> Vec<Class> {
        self.enumerate(3, 2, -1, -1)
    }

    /// Widened search boxes; used to confirm the default boxes are complete.
    pub fn roots_in_box(&self, a_bound: i32, b_bound: i32) -> Vec<Class> {
        self.enumerate(a_bound, b_bound, -2, 0)
    }

    pub fn exceptional_in_box(&self, a_bound: i32, b_bound: i32) -> Vec<Class> {
        self.enumerate(a_bound, b_bound, -1, -1)
    }

    /// Simple roots `E_0 - E_1 - E_2 - E_3, E_1 - E_2, ..., E_{r-1} - E_r`.
    pub fn simple_roots(&self) -> Vec<Class> {
        let mut s = vec![Class::line3(1, 2, 3)];
        for i in 1..self.r() {
            s.push(Class::diff(i, i + 1));
        }
        s
    }

    pub fn reflection(&self, a: &Class) -> WeylElement {
        WeylElement::reflection(self.dim(), a)
    }

    pub fn weyl_group(&self) -> WeylGroup {
        let gens: Vec<WeylElement> = self
            .simple_roots()
            .iter()
            .map(|a| self.reflection(a))
            .collect();
        WeylGroup::generate(self.dim(), &gens)
    }

    /// The ten conic classes `E_0 - E_i` and `-K - (E_0 - E_i)` (degree 4 only),
    /// ordered `C_1, C_1', C_2, C_2', ...`.
    pub fn conic_classes(&self) -> Vec<Class> {
        let k = self.canonical();
        let mut out = Vec::new();
        for i in 1..=self.r() {
            let c = Class::e(0) - Class::e(i);
            out.push(c);
            out.push(-k - c);
        }
        out
    }
}

fn class_vec(c: &Class, dim: usize) -> Vec<i64> {
    c.0[..dim].iter().map(|&x| x as i64).collect()
}

/// Integer polynomial, lowest coefficient first.
pub type IntPoly = Vec<i64>;

/// Characteristic polynomial `det(T - w)` on the whole lattice.
pub fn char_poly(w: &WeylElement) -> IntPoly {
    let dim = w.dim();
    let a: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..dim).map(|j| Q::int(w.entry(i, j) as i128)).collect())
        .collect();
    intlin::charpoly(&a)
        .into_iter()
        .map(|c| c.as_int().expect("integral char poly") as i64)
        .collect()
}

/// Characteristic polynomial of `w` on the `w`-invariant subspace spanned by `basis`.
pub fn char_poly_on(w: &WeylElement, basis: &[Class]) -> Result<IntPoly, LatticeError> {
    let dim = w.dim();
    let b: Vec<Vec<i64>> = basis.iter().map(|c| class_vec(c, dim)).collect();
    let k = b.len();
    let mut a = vec![vec![Q::int(0); k]; k];
    for (j, c) in basis.iter().enumerate() {
        let img = class_vec(&w.apply(c), dim);
        let coef = intlin::solve(&b, &img).ok_or(LatticeError::NotInvariant)?;
        for i in 0..k {
            a[i][j] = coef[i];
        }
    }
    intlin::charpoly(&a)
        .into_iter()
        .map(|c| {
            c.as_int()
                .ok_or(LatticeError::NotInvariant)
                .map(|x| x as i64)
        })
        .collect()
}

/// A `Q`-basis of the orthogonal complement of `set` inside `Z^{1,r}`.
pub fn orthogonal_complement(set: &[Class], dim: usize) -> Vec<Class> {
    // x . c = x0 c0 - sum xi ci, so the row for c is (c0, -c1, ..., -cr).
    let rows: Vec<Vec<i64>> = set
        .iter()
        .map(|c| {
            (0..dim)
                .map(|i| {
                    if i == 0 {
                        c.0[0] as i64
                    } else {
                        -(c.0[i] as i64)
                    }
                })
                .collect()
        })
        .collect();
    intlin::kernel(&rows, dim)
        .into_iter()
        .map(|v| Class::from_slice(&v.iter().map(|&x| x as i32).collect::<Vec<_>>()))
        .collect()
}

pub fn rank(set: &[Class], dim: usize) -> usize {
    let v: Vec<Vec<i64>> = set.iter().map(|c| class_vec(c, dim)).collect();
    intlin::rank(&v)
}

/// Cyclotomic polynomial `Phi_n`, lowest coefficient first.
pub fn cyclotomic(n: u32) -> IntPoly {
    let mut p: IntPoly = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d)).expect("divisor of T^n - 1");
        }
    }
    p
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<IntPoly> {
    let mut r: Vec<i64> = a.to_vec();
    while r.last() == Some(&0) {
        r.pop();
    }
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![0i64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k] / b[db];
        if c * b[db] != r[k] {
            return None;
        }
        q[k - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k - db + i] -= c * bi;
        }
    }
    if r.iter().all(|&x| x == 0) {
        Some(q)
    } else {
        None
    }
}

/// Factor a monic integer polynomial as `prod Phi_n^{m_n}`, sorted by `n`.
pub fn cyclotomic_factorization(p: &[i64]) -> Result<Vec<(u32, u32)>, LatticeError> {
    let mut rest: IntPoly = p.to_vec();
    let mut out = Vec::new();
    for n in 1..=30u32 {
        let phi = cyclotomic(n);
        let mut m = 0;
        while rest.len() > 1 {
            match poly_div_exact(&rest, &phi) {
                Some(q) => {
                    rest = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            out.push((n, m));
        }
    }
    if rest == [1] {
        Ok(out)
    } else {
        Err(LatticeError::NotCyclotomic)
    }
}

/// Product of cyclotomic factors as an integer polynomial.
pub fn expand_cyclotomic(f: &[(u32, u32)]) -> IntPoly {
    let mut p: IntPoly = vec![1];
    for &(n, m) in f {
        for _ in 0..m {
            p = poly_mul(&p, &cyclotomic(n));
        }
    }
    p
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Invariant factors `> 1` of `(ambient / sub)_tors`, where `ambient` is a
/// basis of a lattice and `sub` lies in its span.
pub fn quotient_torsion(
    sub: &[Class],
    ambient: &[Class],
    dim: usize,
) -> Result<Vec<u64>, LatticeError> {
    let basis: Vec<Vec<i64>> = ambient.iter().map(|c| class_vec(c, dim)).collect();
    let mut rows = Vec::new();
    for s in sub {
        let coef = intlin::solve(&basis, &class_vec(s, dim)).ok_or(LatticeError::NotContained)?;
        let ints: Option<Vec<i64>> = coef.iter().map(|c| c.as_int().map(|x| x as i64)).collect();
        rows.push(ints.ok_or(LatticeError::NotContained)?);
    }
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    Ok(intlin::smith_diagonal(&rows)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_roots_and_exceptional_classes() {
        for (d, roots, exc) in [(6u8, 8usize, 6usize), (5, 20, 10), (4, 40, 16), (3, 72, 27)] {
            let l = Lattice::new(d).unwrap();
            assert_eq!(l.roots().len(), roots);
            assert_eq!(l.exceptional_classes().len(), exc);
            // Widening the search box finds nothing new.
            assert_eq!(l.roots_in_box(5, 4).len(), roots);
            assert_eq!(l.exceptional_in_box(5, 4).len(), exc);
        }
    }

    #[test]
    fn weyl_group_orders() {
        for (d, order) in [(6u8, 12usize), (5, 120), (4, 1920)] {
            let l = Lattice::new(d).unwrap();
            let w = l.weyl_group();
            assert_eq!(w.order(), order);
            let k = l.canonical();
            for g in w.elements() {
                assert_eq!(g.apply(&k), k);
            }
        }
    }

    #[test]
    fn reflection_properties() {
        let l = Lattice::new(4).unwrap();
        for a in l.roots() {
            let s = l.reflection(&a);
            assert!(s.compose(&s).is_identity());
            assert_eq!(s.apply(&a), -a);
            assert_eq!(s.inverse(), s);
        }
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        let p = expand_cyclotomic(&[(1, 2), (3, 1), (4, 2)]);
        assert_eq!(
            cyclotomic_factorization(&p).unwrap(),
            vec![(1, 2), (3, 1), (4, 2)]
        );
        assert_eq!(
            cyclotomic_factorization(&[1, 1, 1, 1]).unwrap(),
            vec![(2, 1), (4, 1)]
        );
        assert_eq!(
            cyclotomic_factorization(&[-2, 1]),
            Err(LatticeError::NotCyclotomic)
        );
    }

    #[test]
    fn identity_char_poly() {
        let l = Lattice::new(5).unwrap();
        let id = WeylElement::identity(l.dim());
        assert_eq!(
            cyclotomic_factorization(&char_poly(&id)).unwrap(),
            vec![(1, 5)]
        );
    }

    #[test]
    fn torsion_of_three_a2_in_e6() {
        let l = Lattice::new(3).unwrap();
        // Three mutually orthogonal A2 configurations of (-2)-classes.
        let sub = [
            Class::diff(1, 4),
            Class::line3(1, 2, 4),
            Class::diff(2, 5),
            Class::line3(2, 3, 5),
            Class::diff(3, 6),
            Class::line3(1, 3, 6),
        ];
        let tors = quotient_torsion(&sub, &l.simple_roots(), l.dim()).unwrap();
        assert_eq!(tors, vec![3]);
        let single = quotient_torsion(&[Class::diff(1, 2)], &l.simple_roots(), l.dim()).unwrap();
        assert!(single.is_empty());
    }

    #[test]
    fn torsion_rejects_outside_vectors() {
        let l = Lattice::new(5).unwrap();
        let err = quotient_torsion(&[Class::e(1)], &l.simple_roots(), l.dim());
        assert_eq!(err, Err(LatticeError::NotContained));
    }
}
