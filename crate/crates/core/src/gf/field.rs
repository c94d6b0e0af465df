use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use super::prime;
use super::GfError;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// A field element, stored as its discrete logarithm with respect to the
/// field's primitive element. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(u32::MAX);
    pub const ONE: Fe = Fe(0);

    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }
}

/// The finite field `F_{p^m}` with Zech-logarithm tables.
///
/// The modulus is the least monic irreducible polynomial of degree `m`
/// in the ordering used by [`Field::new`]; the primitive element is the
/// least-index element of multiplicative order `p^m - 1`.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Field, GfError> {
        if !prime::is_prime(p as u64) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_FIELD_SIZE {
            return Err(GfError::TooLarge { p, m });
        }
        let q = q64 as u32;
        let pp = p as u64;
        let f = prime::least_irreducible(pp, m);
        let order = q64 - 1;
        let factors = prime::prime_factors(order);
        let to_vec = |idx: u32| -> Vec<u64> {
            let mut v = Vec::with_capacity(m as usize);
            let mut t = idx as u64;
            for _ in 0..m {
                v.push(t % pp);
                t /= pp;
            }
            v
        };
        let is_one = |v: &[u64]| v.first() == Some(&1) && v.iter().skip(1).all(|&c| c == 0);
        let generator = (1..q)
            .find(|&idx| {
                let g = to_vec(idx);
                if order == 1 {
                    return true;
                }
                factors
                    .iter()
                    .all(|&r| !is_one(&prime::powmod(&g, order / r, &f, pp)))
            })
            .expect("a primitive element exists");
        let g = to_vec(generator);
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![1u64];
        for k in 0..order as usize {
            let mut idx = 0u64;
            for (i, &c) in cur.iter().enumerate() {
                idx += c * pp.pow(i as u32);
            }
            exp[k] = idx as u32;
            log[idx as usize] = k as u32;
            cur = prime::mulmod(&cur, &g, &f, pp);
        }
        let mut zech = vec![u32::MAX; order as usize];
        for k in 0..order as usize {
            let idx = exp[k];
            let low = idx % p;
            let bumped = idx - low + (low + 1) % p;
            zech[k] = log[bumped as usize];
        }
        Ok(Field {
            p,
            m,
            q,
            modulus: f.iter().map(|&c| c as u32).collect(),
            exp,
            log,
            zech,
        })
    }

    /// Field of size `q = p^m`, given `q` directly.
    pub fn of_size(q: u64) -> Result<Field, GfError> {
        let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Field::new(p, m)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    pub fn size(&self) -> u32 {
        self.q
    }
    /// Monic modulus over `F_p`, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    pub fn one(&self) -> Fe {
        Fe::ONE
    }
    /// The primitive element used for the logarithm tables.
    pub fn primitive(&self) -> Fe {
        if self.q == 2 {
            Fe::ONE
        } else {
            Fe(1)
        }
    }

    pub fn from_int(&self, n: i64) -> Fe {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.from_index(r)
    }

    /// Element with coefficient index `sum c_i p^i`.
    pub fn from_index(&self, idx: u32) -> Fe {
        debug_assert!(idx < self.q);
        Fe(self.log[idx as usize])
    }

    /// Coefficient index of `a`; this defines the fixed element ordering.
    pub fn index(&self, a: Fe) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.exp[a.0 as usize]
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, GfError> {
        if coeffs.len() > self.m as usize {
            return Err(GfError::BadElement);
        }
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(GfError::BadElement);
            }
            idx += c * self.p.pow(i as u32);
        }
        Ok(self.from_index(idx))
    }

    /// Little-endian coefficients of `a` over `F_p`, always of length `m`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut idx = self.index(a);
        let mut v = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    /// Canonical text form, e.g. `[2,1]` for `2 + g`.
    pub fn format(&self, a: Fe) -> String {
        let mut s = String::from("[");
        for (i, c) in self.coeffs(a).iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s.push(']');
        s
    }

    pub fn parse(&self, text: &str) -> Result<Fe, GfError> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or(GfError::BadElement)?;
        let mut coeffs = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            coeffs.push(part.parse::<u32>().map_err(|_| GfError::BadElement)?);
        }
        self.from_coeffs(&coeffs)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    /// Nonzero elements in logarithm order.
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (0..self.q - 1).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.q - 1;
        let (lo, hi) = if a.0 <= b.0 { (a.0, b.0) } else { (b.0, a.0) };
        let z = self.zech[(hi - lo) as usize];
        if z == u32::MAX {
            Fe::ZERO
        } else {
            Fe(((lo as u64 + z as u64) % n as u64) as u32)
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let n = self.q - 1;
        Fe(((a.0 as u64 + (n / 2) as u64) % n as u64) as u32)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let n = (self.q - 1) as u64;
        Fe(((a.0 as u64 + b.0 as u64) % n) as u32)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(Fe((n - a.0) % n))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u128) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n = (self.q - 1) as u128;
        Fe(((a.0 as u128 * (e % n)) % n) as u32)
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        self.pow(a, (self.p as u128).pow(k % self.m))
    }

    /// `a^s` for `s` a power of `p`; used for relative Frobenius maps.
    pub fn pow_q(&self, a: Fe, s: u64) -> Fe {
        self.pow(a, s as u128)
    }

    /// Quadratic character. Errors on zero and in characteristic 2.
    pub fn is_square(&self, a: Fe) -> Result<bool, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if a.is_zero() {
            return Err(GfError::ZeroNotAllowed);
        }
        Ok(a.0 % 2 == 0)
    }

    /// `1`, `-1` or `0` according to the quadratic character.
    pub fn chi(&self, a: Fe) -> i32 {
        if a.is_zero() {
            0
        } else if a.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// A fixed non-square (the primitive element).
    pub fn non_square(&self) -> Result<Fe, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        Ok(Fe(1))
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a);
        }
        if self.p == 2 {
            let n = self.q - 1;
            let e = if a.0 % 2 == 0 { a.0 / 2 } else { (a.0 + n) / 2 };
            return Some(Fe(e % n));
        }
        if a.0 % 2 == 1 {
            None
        } else {
            Some(Fe(a.0 / 2))
        }
    }

    /// Degree over `F_p` of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: Fe) -> u32 {
        (1..=self.m)
            .filter(|d| self.m % d == 0)
            .find(|&d| self.frobenius(a, d) == a)
            .unwrap_or(self.m)
    }
}

/// Decompose `q = p^m`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime::prime_factors(q)[0];
    if prime::prime_factors(q).len() != 1 {
        return None;
    }
    let mut m = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        m += 1;
    }
    Some((p as u32, m))
}

/// Embedding of a subfield `F_{p^a}` into `F_{p^b}`, `a | b`.
///
/// The generator of the subfield maps to the root of its modulus in the
/// larger field with the least coefficient index.
#[derive(Clone, Debug)]
pub struct Embedding {
    powers: Vec<Fe>,
    sub_p: u32,
    sub_m: u32,
    sup_p: u32,
    sup_m: u32,
    preimage: Vec<(u32, Fe)>,
}

impl Embedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<Embedding, GfError> {
        if sub.p != sup.p || sup.m % sub.m != 0 {
            return Err(GfError::NotSubfield);
        }
        let root = if sub.m == 1 {
            Fe::ONE
        } else {
            let modulus: Vec<Fe> = sub
                .modulus
                .iter()
                .map(|&c| sup.from_int(c as i64))
                .collect();
            sup.elements()
                .find(|&x| {
                    let mut acc = Fe::ZERO;
                    for &c in modulus.iter().rev() {
                        acc = sup.add(sup.mul(acc, x), c);
                    }
                    acc.is_zero()
                })
                .ok_or(GfError::NotSubfield)?
        };
        let mut powers = Vec::with_capacity(sub.m as usize);
        let mut cur = Fe::ONE;
        for _ in 0..sub.m {
            powers.push(cur);
            cur = sup.mul(cur, root);
        }
        let mut emb = Embedding {
            powers,
            sub_p: sub.p,
            sub_m: sub.m,
            sup_p: sup.p,
            sup_m: sup.m,
            preimage: Vec::new(),
        };
        let mut pre: Vec<(u32, Fe)> = sub
            .elements()
            .map(|a| (sup.index(emb.apply_unchecked(sub, sup, a)), a))
            .collect();
        pre.sort_unstable_by_key(|e| e.0);
        emb.preimage = pre;
        Ok(emb)
    }

    fn apply_unchecked(&self, sub: &Field, sup: &Field, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for (c, &pw) in sub.coeffs(a).iter().zip(&self.powers) {
            if *c != 0 {
                acc = sup.add(acc, sup.mul(sup.from_int(*c as i64), pw));
            }
        }
        acc
    }

    pub fn apply(&self, sub: &Field, sup: &Field, a: Fe) -> Fe {
        debug_assert!(sub.p == self.sub_p && sub.m == self.sub_m);
        debug_assert!(sup.p == self.sup_p && sup.m == self.sup_m);
        self.apply_unchecked(sub, sup, a)
    }

    /// Inverse image of `b`, if `b` lies in the subfield.
    pub fn restrict(&self, sup: &Field, b: Fe) -> Option<Fe> {
        let idx = sup.index(b);
        self.preimage
            .binary_search_by_key(&idx, |e| e.0)
            .ok()
            .map(|i| self.preimage[i].1)
    }
}

/// Convenience wrapper around [`Embedding`] for one element.
pub fn embed(sub: &Field, sup: &Field, a: Fe) -> Result<Fe, GfError> {
    Ok(Embedding::new(sub, sup)?.apply(sub, sup, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_three() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        let two = f.from_int(2);
        assert_eq!(f.add(two, two), f.from_int(1));
        assert_eq!(f.mul(two, two), f.one());
        assert_eq!(f.is_square(two), Ok(false));
        assert_eq!(f.is_square(f.zero()), Err(GfError::ZeroNotAllowed));
    }

    #[test]
    fn nine_element_field() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let g = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(g, g), f.from_int(-1));
        // Every element of F_3 is a square in F_9.
        let emb = Embedding::new(&Field::new(3, 1).unwrap(), &f).unwrap();
        let two = emb.apply(
            &Field::new(3, 1).unwrap(),
            &f,
            Field::new(3, 1).unwrap().from_int(2),
        );
        assert_eq!(f.is_square(two), Ok(true));
        assert_eq!(f.format(f.from_coeffs(&[2, 1]).unwrap()), "[2,1]");
        assert_eq!(f.parse("[2,1]").unwrap(), f.from_coeffs(&[2, 1]).unwrap());
    }

    #[test]
    fn even_characteristic() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.is_square(f.one()), Err(GfError::EvenCharacteristic));
        for a in f.elements() {
            assert_eq!(f.add(a, a), f.zero());
            let s = f.sqrt(a).unwrap();
            assert_eq!(f.mul(s, s), a);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert!(matches!(Field::new(2, 21), Err(GfError::TooLarge { .. })));
        assert!(Field::new(2, 20).is_ok());
    }

    #[test]
    fn tower_embeddings_agree_on_prime_field() {
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let f81 = Field::new(3, 4).unwrap();
        let e39 = Embedding::new(&f3, &f9).unwrap();
        let e981 = Embedding::new(&f9, &f81).unwrap();
        let e381 = Embedding::new(&f3, &f81).unwrap();
        for a in f3.elements() {
            let two_step = e981.apply(&f9, &f81, e39.apply(&f3, &f9, a));
            assert_eq!(two_step, e381.apply(&f3, &f81, a));
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f9 = Field::new(3, 2).unwrap();
        let f729 = Field::new(3, 6).unwrap();
        let e = Embedding::new(&f9, &f729).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                let ea = e.apply(&f9, &f729, a);
                let eb = e.apply(&f9, &f729, b);
                assert_eq!(e.apply(&f9, &f729, f9.add(a, b)), f729.add(ea, eb));
                assert_eq!(e.apply(&f9, &f729, f9.mul(a, b)), f729.mul(ea, eb));
            }
            assert_eq!(e.restrict(&f729, e.apply(&f9, &f729, a)), Some(a));
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for &(p, m) in &[(2u32, 2u32), (3, 3), (5, 2), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.sub(a, a), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements().take(9) {
                    let lhs = f.mul(a, f.add(b, f.one()));
                    let rhs = f.add(f.mul(a, b), a);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
