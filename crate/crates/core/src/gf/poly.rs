use alloc::vec;
use alloc::vec::Vec;

use super::{Fe, Field, GfError};

/// Univariate polynomial over a [`Field`], lowest coefficient first, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Fe>,
}

impl Poly {
    pub fn new(mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: Fe) -> Poly {
        Poly::new(vec![a])
    }

    pub fn one() -> Poly {
        Poly::constant(Fe::ONE)
    }

    /// The monic linear polynomial `T - a`.
    pub fn linear(f: &Field, a: Fe) -> Poly {
        Poly::new(vec![f.neg(a), Fe::ONE])
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut c = vec![Fe::ZERO; k + 1];
        c[k] = Fe::ONE;
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, a: Fe) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, f: &Field, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    pub fn divrem(&self, f: &Field, d: &Poly) -> Result<(Poly, Poly), GfError> {
        let dd = d.degree().ok_or(GfError::DivisionByZero)?;
        let lead_inv = f.inv(d.lead())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.c.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Result<Poly, GfError> {
        Ok(self.divrem(f, d)?.1)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero lead");
        self.scale(f, inv)
    }

    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn mulmod(&self, f: &Field, o: &Poly, m: &Poly) -> Poly {
        self.mul(f, o).rem(f, m).expect("nonzero modulus")
    }

    pub fn powmod(&self, f: &Field, mut e: u128, m: &Poly) -> Poly {
        let mut result = Poly::one().rem(f, m).expect("nonzero modulus");
        let mut base = self.rem(f, m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                result = result.mulmod(f, &base, m);
            }
            base = base.mulmod(f, &base, m);
            e >>= 1;
        }
        result
    }

    /// Apply a map to every coefficient (e.g. an embedding or Frobenius).
    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Poly {
        Poly::new(self.c.iter().map(|&x| g(x)).collect())
    }

    /// Lexicographic key on coefficient indices, highest degree first.
    pub fn sort_key(&self, f: &Field) -> Vec<u32> {
        let mut k = vec![self.c.len() as u32];
        k.extend(self.c.iter().rev().map(|&x| f.index(x)));
        k
    }
}
