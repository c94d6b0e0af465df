use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Fe, Field, GfError, Poly};

/// Factorization `unit * prod f_i^{e_i}` into monic irreducibles, sorted by
/// degree and then by coefficient indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiset of `(degree, multiplicity)` pairs.
    pub fn pattern(&self) -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = self.factors.iter().map(|(g, e)| (g.deg(), *e)).collect();
        v.sort_unstable();
        v
    }
}

/// Factor a nonzero polynomial; randomness is seeded so output is reproducible.
pub fn factor(f: &Field, p: &Poly, seed: u64) -> Result<Factorization, GfError> {
    if p.is_zero() {
        return Err(GfError::ZeroPolynomial);
    }
    let unit = p.lead();
    let monic = p.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in squarefree(f, &monic) {
        for (block, d) in distinct_degree(f, &sqf) {
            for g in equal_degree(f, &block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.sort_key(f).cmp(&b.0.sort_key(f)))
    });
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

fn pth_root(f: &Field, a: &Poly) -> Poly {
    let p = f.characteristic() as usize;
    let m = f.degree();
    let n = a.deg() / p;
    Poly::new(
        (0..=n)
            .map(|i| f.frobenius(a.coeff(i * p), m - 1))
            .collect(),
    )
}

fn exact_div(f: &Field, a: &Poly, b: &Poly) -> Poly {
    a.divrem(f, b).expect("nonzero divisor").0
}

fn squarefree(f: &Field, a: &Poly) -> Vec<(Poly, u32)> {
    let mut res = Vec::new();
    if a.deg() == 0 {
        return res;
    }
    let p = f.characteristic();
    let da = a.derivative(f);
    let mut c = a.gcd(f, &da);
    let mut w = exact_div(f, a, &c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(f, &c);
        let fac = exact_div(f, &w, &y);
        if fac.deg() > 0 {
            res.push((fac, i));
        }
        w = y;
        c = exact_div(f, &c, &w);
        i += 1;
    }
    if c.deg() > 0 {
        let root = pth_root(f, &c);
        for (g, j) in squarefree(f, &root) {
            res.push((g, j * p));
        }
    }
    res
}

fn distinct_degree(f: &Field, a: &Poly) -> Vec<(Poly, usize)> {
    let mut res = Vec::new();
    let mut g = a.clone();
    let x = Poly::monomial(1);
    let q = f.size() as u128;
    let mut h = x.rem(f, &g).expect("nonzero");
    let mut i = 1;
    while g.deg() >= 2 * i {
        h = h.powmod(f, q, &g);
        let d = g.gcd(f, &h.sub(f, &x));
        if d.deg() > 0 {
            g = exact_div(f, &g, &d);
            h = h.rem(f, &g).expect("nonzero");
            res.push((d, i));
        }
        i += 1;
    }
    if g.deg() > 0 {
        let d = g.deg();
        res.push((g, d));
    }
    res
}

fn random_poly(f: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = f.size();
    Poly::new(
        (0..deg)
            .map(|_| f.from_index(rng.random_range(0..q)))
            .collect(),
    )
}

fn equal_degree(f: &Field, a: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = a.deg();
    if n == d {
        return vec![a.clone()];
    }
    let q = f.size() as u128;
    loop {
        let r = random_poly(f, n, rng);
        if r.deg() == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            let steps = f.degree() as usize * d;
            let mut t = r.rem(f, a).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mulmod(f, &t, a);
                acc = acc.add(f, &t);
            }
            acc
        } else {
            let mut c = r.rem(f, a).expect("nonzero");
            let mut prod = c.clone();
            for _ in 1..d {
                c = c.powmod(f, q, a);
                prod = prod.mulmod(f, &c, a);
            }
            prod.powmod(f, (q - 1) / 2, a).sub(f, &Poly::one())
        };
        let u = a.gcd(f, &b);
        if u.deg() > 0 && u.deg() < n {
            let v = exact_div(f, a, &u);
            let mut out = equal_degree(f, &u, d, rng);
            out.extend(equal_degree(f, &v, d, rng));
            return out;
        }
    }
}

/// Roots of `p` in `f`, in index order (brute force; for small fields).
pub fn roots(f: &Field, p: &Poly) -> Vec<Fe> {
    f.elements().filter(|&x| p.eval(f, x).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(f: &Field, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn factors_mixed_example() {
        let f = Field::new(3, 1).unwrap();
        // (T^2+1)(T-1)^2 T over F_3
        let g = poly(&f, &[1, 0, 1]);
        let l = poly(&f, &[-1, 1]);
        let t = poly(&f, &[0, 1]);
        let prod = g.mul(&f, &l).mul(&f, &l).mul(&f, &t);
        let fac = factor(&f, &prod, 1).unwrap();
        assert_eq!(fac.factors, vec![(t, 1), (l, 2), (g, 1)]);
    }

    #[test]
    fn pth_power_input() {
        let f = Field::new(3, 2).unwrap();
        let l = poly(&f, &[1, 1]);
        let cube = l.pow(&f, 3).mul(&f, &l.pow(&f, 3));
        let fac = factor(&f, &cube, 9).unwrap();
        assert_eq!(fac.factors, vec![(l, 6)]);
    }

    #[test]
    fn even_characteristic_split() {
        let f = Field::new(2, 2).unwrap();
        let all: Vec<Poly> = f.elements().map(|a| Poly::linear(&f, a)).collect();
        let prod = all.iter().fold(Poly::one(), |acc, l| acc.mul(&f, l));
        let fac = factor(&f, &prod, 3).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
    }

    proptest! {
        #[test]
        fn product_of_factors_reconstructs(coeffs in proptest::collection::vec(0i64..5, 2..8), seed in 0u64..1000) {
            let f = Field::new(5, 1).unwrap();
            let mut p = poly(&f, &coeffs);
            if p.deg() == 0 { p = poly(&f, &[1, 1]); }
            let fac = factor(&f, &p, seed).unwrap();
            let mut acc = Poly::constant(fac.unit);
            for (g, e) in &fac.factors {
                prop_assert!(g.is_monic());
                acc = acc.mul(&f, &g.pow(&f, *e));
            }
            prop_assert_eq!(acc, p);
        }

        #[test]
        fn factors_are_irreducible(coeffs in proptest::collection::vec(0i64..3, 3..7), seed in 0u64..100) {
            let f = Field::new(3, 1).unwrap();
            let p = poly(&f, &coeffs);
            prop_assume!(p.deg() > 0);
            let fac = factor(&f, &p, seed).unwrap();
            for (g, _) in &fac.factors {
                // An irreducible factor of degree > 1 has no root; degree <= 3 makes that decisive.
                if g.deg() > 1 && g.deg() <= 3 {
                    prop_assert!(roots(&f, g).is_empty());
                }
            }
        }
    }
}
