//! Point counts and zeta functions of weak and singular del Pezzo surfaces
//! from the Frobenius class.

use alloc::vec;
use alloc::vec::Vec;

use crate::golden::Cyclo;
use crate::piclat::expand_cyclotomic;
use crate::typetab::{ArithmeticType, Classification};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("count overflows 128-bit integers for q = {q}, n = {n}")]
    Overflow { q: u64, n: u32 },
    #[error("exponent n must be positive")]
    ZeroExponent,
}

/// Trace data of one arithmetic type, periodic in `n` with period the order of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    pub degree: u8,
    pub chi_pic: Cyclo,
    pub chi_root: Cyclo,
    pub chi_pic_s: Cyclo,
    pub order: u32,
    /// `Tr(w^n)` on `Pic`, indexed by `n mod order`.
    traces: Vec<i64>,
    /// Number of `(-2)`-curves fixed by `w^n`.
    root_traces: Vec<i64>,
    /// Number of singular points defined over `F_{q^n}`.
    sing_points: Vec<i64>,
}

impl ZetaData {
    pub fn new(cl: &Classification, at: &ArithmeticType) -> ZetaData {
        let g = cl.geometric_of(at);
        let w = at.representative;
        let order = w.order();
        let mut traces = Vec::new();
        let mut root_traces = Vec::new();
        let mut sing_points = Vec::new();
        let mut p = crate::piclat::WeylElement::identity(w.dim());
        for _ in 0..order {
            traces.push(p.trace() as i64);
            root_traces.push(g.root_basis.iter().filter(|r| p.apply(r) == **r).count() as i64);
            sing_points.push(g.components.iter().filter(|c| p.stabilizes(c)).count() as i64);
            p = p.compose(&w);
        }
        ZetaData {
            degree: at.degree,
            chi_pic: at.chi_pic.clone(),
            chi_root: at.chi_root.clone(),
            chi_pic_s: at.chi_pic_s.clone(),
            order,
            traces,
            root_traces,
            sing_points,
        }
    }

    fn at(&self, v: &[i64], n: u32) -> i64 {
        v[(n % self.order) as usize]
    }

    pub fn trace(&self, n: u32) -> i64 {
        self.at(&self.traces, n)
    }

    pub fn root_trace(&self, n: u32) -> i64 {
        self.at(&self.root_traces, n)
    }

    fn count(&self, q: u64, n: u32, trace: i64) -> Result<i128, ZetaError> {
        if n == 0 {
            return Err(ZetaError::ZeroExponent);
        }
        let over = ZetaError::Overflow { q, n };
        let qn = (q as i128).checked_pow(n).ok_or(over.clone())?;
        let q2n = qn.checked_mul(qn).ok_or(over.clone())?;
        let mid = qn.checked_mul(trace as i128).ok_or(over.clone())?;
        q2n.checked_add(mid)
            .and_then(|x| x.checked_add(1))
            .ok_or(over)
    }

    /// `#X(F_{q^n}) = q^{2n} + q^n Tr(w^n) + 1` for the weak surface.
    pub fn count_weak(&self, q: u64, n: u32) -> Result<i128, ZetaError> {
        self.count(q, n, self.trace(n))
    }

    /// Points of the singular model: the `(-2)`-curves fixed by `w^n` are
    /// excised from the trace.
    pub fn count_sing(&self, q: u64, n: u32) -> Result<i128, ZetaError> {
        self.count(q, n, self.trace(n) - self.root_trace(n))
    }

    /// `(#Sing(X_s)(F_{q^n}), N_n)`: rational singular points and `(-2)`-curves
    /// defined over `F_{q^n}`.
    pub fn sing_locus_counts(&self, n: u32) -> (i64, i64) {
        (self.at(&self.sing_points, n), self.root_trace(n))
    }

    /// Denominator of `Z(X_s, T)` (numerator is 1), lowest degree first:
    /// `(1 - T)(1 - q^2 T) det(1 - qT w | Pic_s)`.
    pub fn zeta_sing_denominator(&self, q: u64) -> Vec<i128> {
        let chi = expand_cyclotomic(&self.chi_pic_s);
        let k = chi.len() - 1;
        let q = q as i128;
        // det(1 - xA) = x^k chi(1/x), then x = qT.
        let rev: Vec<i128> = (0..=k)
            .map(|i| chi[k - i] as i128 * q.pow(i as u32))
            .collect();
        let lin = mul(&[1, -1], &[1, -q * q]);
        mul(&lin, &rev)
    }

    /// Counts `N_1, ..., N_len` read off the zeta denominator `D` through
    /// `sum N_n T^n = -T D'(T) / D(T)`.
    pub fn counts_from_zeta(&self, q: u64, len: usize) -> Vec<i128> {
        let d = self.zeta_sing_denominator(q);
        let mut num: Vec<i128> = vec![0; len + 1];
        for (i, &c) in d.iter().enumerate().skip(1) {
            if i <= len {
                num[i] = -(i as i128) * c;
            }
        }
        // Power series division by D, which has constant term 1.
        let mut out = vec![0i128; len + 1];
        for n in 1..=len {
            let mut s = num[n];
            for i in 1..=n.min(d.len() - 1) {
                s -= d[i] * out[n - i];
            }
            out[n] = s;
        }
        out.remove(0);
        out
    }
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typetab::classification;

    fn data(d: u8, t: u32) -> ZetaData {
        let c = classification(d).unwrap();
        ZetaData::new(c, c.by_number(t).unwrap())
    }

    #[test]
    fn weak_counts() {
        let c = classification(4).unwrap();
        let ordinary = &c.arithmetic[c.ordinary().arithmetic[0]];
        assert!(ordinary.representative.is_identity());
        assert_eq!(ZetaData::new(c, ordinary).count_weak(5, 1).unwrap(), 56);
        assert_eq!(data(4, 8).count_weak(3, 1).unwrap(), 10);
        assert_eq!(data(3, 1).count_weak(3, 1).unwrap(), 31);
    }

    #[test]
    fn singular_counts() {
        assert_eq!(data(4, 11).count_sing(5, 1).unwrap(), 46);
        assert_eq!(data(4, 8).count_sing(3, 1).unwrap(), 7);
        let c = classification(5).unwrap();
        for a in c.types().filter(|a| c.geometric_of(a).is_ordinary()) {
            let z = ZetaData::new(c, a);
            assert_eq!(z.count_sing(7, 2), z.count_weak(7, 2));
        }
    }

    #[test]
    fn denominators() {
        // (1 - T)(1 - q^2 T)(1 - qT) at q = 3.
        assert_eq!(data(4, 58).zeta_sing_denominator(3), vec![1, -13, 39, -27]);
        let c = classification(4).unwrap();
        let ordinary = &c.arithmetic[c.ordinary().arithmetic[0]];
        let d = ZetaData::new(c, ordinary).zeta_sing_denominator(2);
        let mut expect = vec![1i128, -1];
        for _ in 0..6 {
            expect = mul(&expect, &[1, -2]);
        }
        assert_eq!(d, mul(&expect, &[1, -4]));
        // chi_pic_s = Phi_1 Phi_3 gives a factor (1 - q^3 T^3).
        let z = data(6, 5);
        assert_eq!(z.chi_pic_s, vec![(1, 1), (3, 1)]);
        assert_eq!(
            z.zeta_sing_denominator(2),
            mul(&[1, -1], &mul(&[1, -4], &[1, 0, 0, -8]))
        );
    }

    #[test]
    fn singular_points() {
        let z = data(4, 14);
        assert_eq!(z.sing_locus_counts(1).0, 0);
        assert_eq!(z.sing_locus_counts(2).0, 2);
        let z = data(4, 30);
        assert_eq!(z.sing_locus_counts(1), (1, 0));
    }

    #[test]
    fn zeta_expansion_reproduces_counts() {
        for d in 3..=6 {
            let c = classification(d).unwrap();
            for a in c.types() {
                let z = ZetaData::new(c, a);
                for q in [3, 5] {
                    let from_zeta = z.counts_from_zeta(q, 12);
                    for n in 1..=12 {
                        assert_eq!(from_zeta[n as usize - 1], z.count_sing(q, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn counts_are_positive() {
        for d in 3..=6 {
            let c = classification(d).unwrap();
            for a in c.types() {
                let z = ZetaData::new(c, a);
                for q in [2, 3, 4, 5, 7, 9] {
                    for n in 1..=6 {
                        assert!(z.count_weak(q, n).unwrap() >= 1);
                        assert!(z.count_sing(q, n).unwrap() >= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn traces_determine_chi_pic_s() {
        let c = classification(4).unwrap();
        for g in c.geometric.iter().filter(|g| !g.is_ordinary()) {
            for (i, &x) in g.arithmetic.iter().enumerate() {
                for &y in &g.arithmetic[i + 1..] {
                    let (zx, zy) = (
                        ZetaData::new(c, &c.arithmetic[x]),
                        ZetaData::new(c, &c.arithmetic[y]),
                    );
                    let same = (1..=6).all(|n| zx.count_sing(3, n) == zy.count_sing(3, n));
                    assert_eq!(same, zx.chi_pic_s == zy.chi_pic_s);
                }
            }
        }
    }

    #[test]
    fn large_counts_overflow_cleanly() {
        assert!(matches!(
            data(4, 1).count_weak(1 << 20, 7),
            Err(ZetaError::Overflow { .. })
        ));
    }
}
