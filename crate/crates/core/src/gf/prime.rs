//! Polynomials over a prime field, used to bootstrap extension-field tables.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo `f` over `F_p`.
pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        let shift = k - df;
        for (i, &fi) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

pub(crate) fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, f, p);
        }
        base = mulmod(&base, &base, f, p);
        e >>= 1;
    }
    rem(&result, f, p)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin-style irreducibility test for a monic `f` of degree `m` over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        xp = powmod(&xp, p, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree `m`:
/// candidates `T^m + c_{m-1}T^{m-1} + ... + c_0` are scanned in increasing
/// order of the integer `sum c_i p^i`.
pub(crate) fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut t = idx;
        for _ in 0..m {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(11));
        assert!(!is_prime(1) && !is_prime(9));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(least_irreducible(3, 1), vec![0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn irreducibility_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18.
        let mut count = 0;
        for idx in 0..81u64 {
            let mut f = Vec::new();
            let mut t = idx;
            for _ in 0..4 {
                f.push(t % 3);
                t /= 3;
            }
            f.push(1);
            if is_irreducible(&f, 3) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
