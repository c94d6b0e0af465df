//! Hand-typed reference tables shipped with the crate.

use alloc::string::String;
use alloc::vec::Vec;

const D3: &str = include_str!("../golden/types_d3.csv");
const D4: &str = include_str!("../golden/types_d4.csv");
const D5: &str = include_str!("../golden/types_d5.csv");
const D6: &str = include_str!("../golden/types_d6.csv");
const BLOWUP: &str = include_str!("../golden/blowup.csv");
const SEGRE: &str = include_str!("../golden/segre.csv");

/// Cyclotomic factorization `[(n, multiplicity)]`, sorted by `n`.
pub type Cyclo = Vec<(u32, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTableRow {
    pub type_no: u32,
    pub dynkin: &'static str,
    pub n_lines: u32,
    pub stabilizer: &'static str,
    pub stab_order: u32,
    pub chi_pic: Cyclo,
    pub chi_pic_s: Cyclo,
    /// Signed cycle type in `W(D_5)` (degree 4), barred parts negative.
    pub signed: Option<Vec<i32>>,
    /// Signed cycle type on the couples orthogonal to every root (degree 4, `A_1`).
    pub simple: Option<Vec<i32>>,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRow {
    pub type_no: u32,
    /// Reflection labels, composed right to left: `["12", "345"]` is `s_12 ∘ s_345`.
    pub word: Vec<&'static str>,
    /// Lengths of the nontrivial cycles on negative curves.
    pub cycles: Vec<u32>,
    pub t: i32,
    pub n_fixed: u32,
    pub i1: u32,
    pub i2: u32,
    /// `N(q) = a q^2 + b q + c` as `[a, b, c]`.
    pub n_poly: [i64; 3],
    pub target: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreRow {
    pub dynkin: &'static str,
    pub n_lines: u32,
    pub symbol: &'static str,
}

fn records(text: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::trim).collect())
}

fn num<T: core::str::FromStr>(s: &str) -> T {
    s.parse().ok().expect("golden integer")
}

/// Parse `"1^3 2"` into `[(1, 3), (2, 1)]`.
pub fn parse_cyclo(s: &str) -> Cyclo {
    let mut out: Cyclo = s
        .split_whitespace()
        .map(|tok| match tok.split_once('^') {
            Some((n, m)) => (num(n), num(m)),
            None => (num(tok), 1),
        })
        .collect();
    out.sort();
    out
}

/// Inverse of [`parse_cyclo`].
pub fn format_cyclo(c: &[(u32, u32)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, &(n, m)) in c.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = if m == 1 {
            write!(s, "{n}")
        } else {
            write!(s, "{n}^{m}")
        };
    }
    s
}

fn ints(s: &str) -> Option<Vec<i32>> {
    (!s.is_empty()).then(|| s.split_whitespace().map(num).collect())
}

/// Reference type table for `degree` in `3..=6`; empty for other degrees.
pub fn type_table(degree: u8) -> Vec<TypeTableRow> {
    let text = match degree {
        3 => D3,
        4 => D4,
        5 => D5,
        6 => D6,
        _ => return Vec::new(),
    };
    records(text)
        .map(|f| TypeTableRow {
            type_no: num(f[0]),
            dynkin: f[1],
            n_lines: num(f[2]),
            stabilizer: f[3],
            stab_order: num(f[4]),
            chi_pic: parse_cyclo(f[5]),
            chi_pic_s: parse_cyclo(f[6]),
            signed: ints(f[7]),
            simple: ints(f[8]),
            note: f[9],
        })
        .collect()
}

pub fn blowup_table() -> Vec<BlowupRow> {
    records(BLOWUP)
        .map(|f| {
            let p: Vec<i64> = f[7].split_whitespace().map(num).collect();
            BlowupRow {
                type_no: num(f[0]),
                word: f[1]
                    .split_whitespace()
                    .map(|w| w.trim_start_matches('s'))
                    .collect(),
                cycles: f[2].split_whitespace().map(num).collect(),
                t: num(f[3]),
                n_fixed: num(f[4]),
                i1: num(f[5]),
                i2: num(f[6]),
                n_poly: [p[0], p[1], p[2]],
                target: num(f[8]),
            }
        })
        .collect()
}

pub fn segre_table() -> Vec<SegreRow> {
    records(SEGRE)
        .map(|f| SegreRow {
            dynkin: f[0],
            n_lines: num(f[1]),
            symbol: f[2],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(type_table(6).len(), 9);
        assert_eq!(type_table(5).len(), 10);
        assert_eq!(type_table(4).len(), 58);
        assert_eq!(type_table(3).len(), 77);
        assert_eq!(blowup_table().len(), 58);
        assert_eq!(segre_table().len(), 16);
    }

    #[test]
    fn rows_are_numbered_consecutively() {
        for d in 3..=6 {
            for (i, r) in type_table(d).iter().enumerate() {
                assert_eq!(r.type_no as usize, i + 1);
            }
        }
    }

    #[test]
    fn cyclotomic_degrees_add_up() {
        let phi = |n: u32| (1..=n).filter(|k| gcd(*k, n) == 1).count() as u32;
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for d in 3..=6u8 {
            let rank = 10 - d as u32;
            for r in type_table(d) {
                let deg = |c: &Cyclo| c.iter().map(|&(n, m)| phi(n) * m).sum::<u32>();
                assert_eq!(deg(&r.chi_pic), rank, "degree {d} row {}", r.type_no);
                assert!(deg(&r.chi_pic_s) < rank);
            }
        }
    }

    #[test]
    fn cyclo_text_round_trips() {
        let c = parse_cyclo("2 1^3");
        assert_eq!(c, alloc::vec![(1, 3), (2, 1)]);
        assert_eq!(format_cyclo(&c), "1^3 2");
    }

    #[test]
    fn signed_types_partition_five() {
        for r in type_table(4) {
            let s = r.signed.unwrap();
            assert_eq!(s.iter().map(|x| x.abs()).sum::<i32>(), 5);
            assert_eq!(s.iter().filter(|&&x| x < 0).count() % 2, 0);
        }
    }
}
