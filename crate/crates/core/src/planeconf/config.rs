use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Fe, Field, Mat};
use crate::piclat::{Class, WeylElement};

use super::{effective_closure, irreducible_part, LatticeData, PlaneError};

/// A point of `P^2` together with the points infinitely near to it along the
/// germ `y - y0 = a_1 (x - x0) + a_2 (x - x0)^2 + ...`.
///
/// A chain of length `L` blows up `L` points `p_1 < p_2 < ... < p_L`; `p_{k+1}`
/// is the direction of the germ truncated at order `k`. The base is given in
/// homogeneous coordinates `[x : y : z]` with last nonzero coordinate 1; chains
/// of length at least two lie in the chart `z = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub base: [Fe; 3],
    pub jet: Vec<Fe>,
}

impl Chain {
    pub fn point(x: Fe, y: Fe) -> Chain {
        Chain {
            base: [x, y, Fe::ONE],
            jet: Vec::new(),
        }
    }

    pub fn germ(x: Fe, y: Fe, jet: Vec<Fe>) -> Chain {
        Chain {
            base: [x, y, Fe::ONE],
            jet,
        }
    }

    /// The point `[v]`, normalized; `None` for the zero vector.
    pub fn projective(f: &Field, v: [Fe; 3]) -> Option<Chain> {
        let lead = *v.iter().rev().find(|x| !x.is_zero())?;
        let inv = f.inv(lead).ok()?;
        Some(Chain {
            base: v.map(|x| f.mul(x, inv)),
            jet: Vec::new(),
        })
    }

    pub fn is_affine(&self) -> bool {
        self.base[2] == Fe::ONE
    }

    pub fn len(&self) -> usize {
        self.jet.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub(crate) fn frobenius_chain(f: &Field, q: u64, ch: &Chain) -> Chain {
    let s = |a: Fe| f.pow_q(a, q);
    Chain {
        base: ch.base.map(s),
        jet: ch.jet.iter().map(|&a| s(a)).collect(),
    }
}

/// Points of `P^2` blown up in order: chain by chain, base point first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub q: u64,
    /// Field holding every coordinate; an extension of `F_q`.
    pub field: Field,
    pub chains: Vec<Chain>,
}

/// Curves through the configuration that become `(-2)`-curves or worse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidences {
    /// Labels (1-based) of the points on each line through at least three of them.
    pub lines: Vec<Vec<usize>>,
    /// Six points on a conic.
    pub conconic: bool,
}

const LINE: usize = 3;
const CONIC: usize = 6;

impl PointConfiguration {
    pub fn new(q: u64, field: Field, chains: Vec<Chain>) -> Result<PointConfiguration, PlaneError> {
        let (p, m) = crate::gf::prime_power(q)
            .ok_or(PlaneError::Gf(crate::gf::GfError::NotPrimePower(q)))?;
        if field.characteristic() != p || field.degree() % m != 0 {
            return Err(PlaneError::Gf(crate::gf::GfError::NotSubfield));
        }
        let c = PointConfiguration { q, field, chains };
        if c.r() > 6 {
            return Err(PlaneError::TooManyPoints(c.r()));
        }
        for (i, a) in c.chains.iter().enumerate() {
            if !a.jet.is_empty() && !a.is_affine() {
                return Err(PlaneError::NotAffine);
            }
            if c.chains[..i].iter().any(|b| b.base == a.base) {
                return Err(PlaneError::SharedBase);
            }
        }
        Ok(c)
    }

    pub fn r(&self) -> usize {
        self.chains.iter().map(Chain::len).sum()
    }

    /// `(chain, depth)` of each label `1..=r`, in label order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.chains
            .iter()
            .enumerate()
            .flat_map(|(c, ch)| (0..ch.len()).map(move |d| (c, d)))
            .collect()
    }

    fn label(&self, c: usize, d: usize) -> usize {
        self.chains[..c].iter().map(Chain::len).sum::<usize>() + d + 1
    }

    pub fn frobenius(&self, ch: &Chain) -> Chain {
        frobenius_chain(&self.field, self.q, ch)
    }

    /// Degree over `F_q` of the smallest field of definition of a chain.
    pub fn chain_degree(&self, ch: &Chain) -> usize {
        let mut cur = self.frobenius(ch);
        let mut k = 1;
        while cur != *ch {
            cur = self.frobenius(&cur);
            k += 1;
        }
        k
    }

    /// Image of each label under the Frobenius, as a map on `0..r` (label minus one).
    pub fn galois_permutation(&self) -> Result<Vec<usize>, PlaneError> {
        let mut perm = vec![0; self.r()];
        for (c, ch) in self.chains.iter().enumerate() {
            let img = self.frobenius(ch);
            let target = self
                .chains
                .iter()
                .position(|d| *d == img)
                .ok_or(PlaneError::NotStable)?;
            for d in 0..ch.len() {
                perm[self.label(c, d) - 1] = self.label(target, d) - 1;
            }
        }
        Ok(perm)
    }

    /// Frobenius on `Pic`: fixes `E_0` and permutes the `E_i` like the points.
    pub fn frobenius_weyl(&self) -> Result<WeylElement, PlaneError> {
        let perm = self.galois_permutation()?;
        let dim = self.r() + 1;
        let mut rows = vec![vec![0i32; dim]; dim];
        rows[0][0] = 1;
        for (i, &j) in perm.iter().enumerate() {
            rows[j + 1][i + 1] = 1;
        }
        Ok(WeylElement::from_matrix(&rows))
    }

    /// Taylor coefficients `t^0 .. t^{len-1}` of each monomial of degree at most
    /// two along the germ; rows indexed by depth.
    fn jet_rows(&self, ch: &Chain, monomials: usize) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let n = ch.len();
        let mut x = vec![Fe::ZERO; n];
        let mut y = vec![Fe::ZERO; n];
        x[0] = ch.base[0];
        y[0] = ch.base[1];
        if n > 1 {
            x[1] = Fe::ONE;
        }
        for (i, &a) in ch.jet.iter().enumerate() {
            y[i + 1] = a;
        }
        let mul = |a: &[Fe], b: &[Fe]| -> Vec<Fe> {
            let mut c = vec![Fe::ZERO; n];
            for i in 0..n {
                for j in 0..n - i {
                    c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
                }
            }
            c
        };
        let mut one = vec![Fe::ZERO; n];
        one[0] = ch.base[2];
        let mut series = vec![one, x.clone(), y.clone()];
        if monomials == CONIC {
            if ch.base[2].is_zero() {
                series[1][0] = Fe::ZERO;
                series[2][0] = Fe::ZERO;
            }
            series.push(mul(&x, &x));
            series.push(mul(&x, &y));
            series.push(mul(&y, &y));
        }
        (0..n)
            .map(|d| series.iter().map(|s| s[d]).collect())
            .collect()
    }

    /// Conditions for a curve to pass through every point of `labels`
    /// (and hence through their predecessors).
    fn conditions(&self, labels: &[usize], monomials: usize) -> Mat {
        let pts = self.points();
        let mut rows = Vec::new();
        for (c, ch) in self.chains.iter().enumerate() {
            let depth = labels
                .iter()
                .filter(|&&l| pts[l - 1].0 == c)
                .map(|&l| pts[l - 1].1)
                .max();
            if let Some(d) = depth {
                rows.extend(self.jet_rows(ch, monomials).into_iter().take(d + 1));
            }
        }
        Mat::from_rows(rows)
    }

    fn on_curve(&self, label: usize, curve: &[Fe], monomials: usize) -> bool {
        let cond = self.conditions(&[label], monomials);
        let f = &self.field;
        (0..cond.rows()).all(|i| {
            cond.row(i)
                .iter()
                .zip(curve)
                .fold(Fe::ZERO, |a, (&u, &v)| f.add(a, f.mul(u, v)))
                .is_zero()
        })
    }

    pub fn incidences(&self) -> Incidences {
        let r = self.r();
        let f = &self.field;
        let mut lines: Vec<Vec<usize>> = Vec::new();
        for i in 1..=r {
            for j in i + 1..=r {
                for k in j + 1..=r {
                    let cond = self.conditions(&[i, j, k], LINE);
                    let ker = cond.kernel(f);
                    if ker.len() != 1 {
                        continue;
                    }
                    let on: Vec<usize> = (1..=r)
                        .filter(|&l| self.on_curve(l, &ker[0], LINE))
                        .collect();
                    if !lines.contains(&on) {
                        lines.push(on);
                    }
                }
            }
        }
        lines.sort();
        let all: Vec<usize> = (1..=r).collect();
        let conconic = r == 6 && self.conditions(&all, CONIC).det(f).is_zero();
        Incidences { lines, conconic }
    }

    /// Classes of the curves that may carry `(-2)`-curves: exceptional divisors
    /// followed by a later point, lines through three points, the conic through six.
    pub fn root_generators(&self) -> Result<Vec<Class>, PlaneError> {
        let mut gens = Vec::new();
        for (c, ch) in self.chains.iter().enumerate() {
            for d in 1..ch.len() {
                gens.push(Class::diff(self.label(c, d - 1), self.label(c, d)));
            }
        }
        let inc = self.incidences();
        for l in &inc.lines {
            if l.len() > 3 {
                let mut c = Class::e(0);
                for &i in l {
                    c = c - Class::e(i);
                }
                return Err(PlaneError::NotGeneral(c));
            }
            gens.push(Class::line3(l[0], l[1], l[2]));
        }
        if inc.conconic {
            let mut c = 2 * Class::e(0);
            for i in 1..=6 {
                c = c - Class::e(i);
            }
            gens.push(c);
        }
        Ok(gens)
    }

    /// Effective roots: nonnegative combinations of the generators that are roots.
    pub fn effective_roots(&self) -> Result<Vec<Class>, PlaneError> {
        let eff = effective_closure(&self.root_generators()?);
        let w = self.frobenius_weyl()?;
        assert!(w.stabilizes(&eff), "Frobenius permutes the effective roots");
        Ok(eff)
    }

    /// Classes of the `(-2)`-curves.
    pub fn irreducible_roots(&self) -> Result<Vec<Class>, PlaneError> {
        Ok(irreducible_part(&self.effective_roots()?))
    }

    pub fn lattice_data(&self) -> Result<LatticeData, PlaneError> {
        Ok(LatticeData {
            degree: (9 - self.r()) as u8,
            frobenius: self.frobenius_weyl()?,
            basis: self.irreducible_roots()?,
        })
    }
}
