//! Point counts and singular points of `X_s = {Q0 = Qinf = 0}` in `P^4`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{diagonalize, Embedding, Fe, Field, GfError, Mat};
use crate::quadmod::{QuadError, QuadricPair, SegreSymbol};
use crate::typetab::{segre_symbol_of, ArithmeticType, Classification};
use crate::zeta::{ZetaData, ZetaError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("brute force over F_{0} exceeds the enumeration budget")]
    Budget(u64),
    #[error("exponent n must be positive")]
    ZeroExponent,
    #[error("n_max must lie in 1..=6")]
    BadRange,
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("a plane lies on the surface")]
    PlaneOnSurface,
}

/// Largest field size for [`count_brute`].
pub const BRUTE_LIMIT: u64 = 32;

/// The pair over `F_{q^n}`.
pub fn base_change(p: &QuadricPair, n: u32) -> Result<QuadricPair, CountError> {
    if n == 0 {
        return Err(CountError::ZeroExponent);
    }
    if n == 1 {
        return Ok(p.clone());
    }
    let ext = Field::new(p.field.characteristic(), p.field.degree() * n)?;
    Ok(p.extend(&ext)?)
}

fn quad(f: &Field, m: &Mat, v: &[Fe]) -> Fe {
    m.bilinear(f, v, v)
}

/// Normalized representatives of `P^{k-1}(F)`: first nonzero coordinate 1.
fn projective_points(f: &Field, k: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    (0..k).flat_map(move |lead| {
        let free = k - 1 - lead;
        let size = f.size() as u64;
        (0..size.pow(free as u32)).map(move |mut idx| {
            let mut v = vec![Fe::ZERO; k];
            v[lead] = Fe::ONE;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = f.from_index((idx % size) as u32);
                idx /= size;
            }
            v
        })
    })
}

/// `#X_s(F_{q^n})` by enumerating `P^4(F_{q^n})`.
pub fn count_brute(p: &QuadricPair, n: u32) -> Result<u64, CountError> {
    let q = (p.field.size() as u64).checked_pow(n).unwrap_or(u64::MAX);
    if q > BRUTE_LIMIT {
        return Err(CountError::Budget(q));
    }
    let p = base_change(p, n)?;
    let f = &p.field;
    Ok(projective_points(f, 5)
        .filter(|v| quad(f, &p.q0, v).is_zero() && quad(f, &p.qinf, v).is_zero())
        .count() as u64)
}

/// `#X_s(F_{q^n})` from the quadratic Gauss sums of the members of the pencil.
pub fn count_charsum(p: &QuadricPair, n: u32) -> Result<i128, CountError> {
    let p = base_change(p, n)?;
    let f = &p.field;
    if f.characteristic() == 2 {
        return Err(GfError::EvenCharacteristic.into());
    }
    if p.pencil_determinant().is_zero() {
        return Err(QuadError::Degenerate.into());
    }
    let qq = f.size() as i128;
    let members = core::iter::once(p.qinf.clone()).chain(f.elements().map(|t| p.member(t)));
    let mut sum: i128 = 0;
    for m in members {
        let (r, d) = diagonalize(f, &m);
        if r % 2 == 1 {
            continue;
        }
        let half = (r / 2) as u32;
        let sign = if half % 2 == 1 { f.neg(d) } else { d };
        sum += (qq - 1) * qq.pow(5 - r as u32) * qq.pow(half) * f.chi(sign) as i128;
    }
    let q2 = qq * qq;
    debug_assert_eq!(sum % q2, 0);
    let affine = qq.pow(3) + sum / q2;
    Ok((affine - 1) / (qq - 1))
}

fn normalize(f: &Field, v: &[Fe]) -> Vec<Fe> {
    let lead = v.iter().find(|x| !x.is_zero()).copied().unwrap_or(Fe::ONE);
    let inv = f.inv(lead).expect("nonzero");
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

/// Singular points of `X_s` over `F_{q^n}`, normalized, in discovery order.
///
/// Each lies in the kernel of a singular member of the pencil.
pub fn singular_points(p: &QuadricPair, n: u32) -> Result<Vec<Vec<Fe>>, CountError> {
    let p = base_change(p, n)?;
    let f = &p.field;
    let det = p.pencil_determinant();
    if det.is_zero() {
        return Err(QuadError::Degenerate.into());
    }
    let mut members: Vec<Mat> = Vec::new();
    if det.deg() < 5 {
        members.push(p.qinf.clone());
    }
    members.extend(
        f.elements()
            .filter(|&t| det.eval(f, t).is_zero())
            .map(|t| p.member(t)),
    );
    let mut out: Vec<Vec<Fe>> = Vec::new();
    for m in members {
        let ker = m.kernel(f);
        for c in projective_points(f, ker.len()) {
            let v: Vec<Fe> = (0..5)
                .map(|i| {
                    c.iter()
                        .zip(&ker)
                        .fold(Fe::ZERO, |acc, (&a, k)| f.add(acc, f.mul(a, k[i])))
                })
                .collect();
            if quad(f, &p.q0, &v).is_zero() && quad(f, &p.qinf, &v).is_zero() {
                let v = normalize(f, &v);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    Ok(out)
}

/// A line of `X_s` through a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineThrough {
    /// Second point of the line, over `F_{q^2}`.
    pub direction: Vec<Fe>,
    pub rational: bool,
    /// Singular points of `X_s` on the line.
    pub singular: usize,
}

/// Rational points of `X_s` and the lines through them.
///
/// Every line through `x` lies in the tangent plane at `x`, and its direction
/// is a common zero of the two forms restricted to that plane. Such a zero is
/// defined over `F_{q^2}`.
#[derive(Clone, Debug)]
pub struct LineFinder {
    base: QuadricPair,
    ext: QuadricPair,
    emb: Embedding,
    singular: Vec<Vec<Fe>>,
}

fn rank_of(f: &Field, rows: &[&[Fe]]) -> usize {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).rank(f)
}

impl LineFinder {
    pub fn new(p: &QuadricPair) -> Result<LineFinder, CountError> {
        if p.pencil_determinant().is_zero() {
            return Err(QuadError::Degenerate.into());
        }
        let ext = base_change(p, 2)?;
        let emb = Embedding::new(&p.field, &ext.field)?;
        let singular = singular_points(p, 2)?;
        Ok(LineFinder {
            base: p.clone(),
            ext,
            emb,
            singular,
        })
    }

    pub fn pair(&self) -> &QuadricPair {
        &self.base
    }

    /// `X_s(F_q)`, normalized.
    pub fn rational_points(&self) -> Vec<Vec<Fe>> {
        let (f, p) = (&self.base.field, &self.base);
        projective_points(f, 5)
            .filter(|v| quad(f, &p.q0, v).is_zero() && quad(f, &p.qinf, v).is_zero())
            .collect()
    }

    /// Lines through the rational point `x`; `None` when `x` is singular.
    pub fn lines_through(&self, x: &[Fe]) -> Result<Option<Vec<LineThrough>>, CountError> {
        let (bf, f) = (&self.base.field, &self.ext.field);
        if !quad(bf, &self.base.q0, x).is_zero() || !quad(bf, &self.base.qinf, x).is_zero() {
            return Err(CountError::NotOnSurface);
        }
        let xe: Vec<Fe> = x.iter().map(|&a| self.emb.apply(bf, f, a)).collect();
        let a = self.ext.q0.mul_vec(f, &xe);
        let b = self.ext.qinf.mul_vec(f, &xe);
        let tangent = Mat::from_rows(vec![a, b]);
        if tangent.rank(f) < 2 {
            return Ok(None);
        }
        let ker = tangent.kernel(f);
        let (u, v) = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| (&ker[i], &ker[j]))
            .find(|(u, v)| rank_of(f, &[&xe, u, v]) == 3)
            .expect("the tangent plane is three dimensional");
        let q = bf.size() as u64;
        let mut out = Vec::new();
        for st in projective_points(f, 2) {
            let d: Vec<Fe> = (0..5)
                .map(|i| f.add(f.mul(st[0], u[i]), f.mul(st[1], v[i])))
                .collect();
            if !quad(f, &self.ext.q0, &d).is_zero() || !quad(f, &self.ext.qinf, &d).is_zero() {
                continue;
            }
            let conj: Vec<Fe> = d.iter().map(|&c| f.pow_q(c, q)).collect();
            let rational = rank_of(f, &[&xe, &d, &conj]) == 2;
            let singular = self
                .singular
                .iter()
                .filter(|y| rank_of(f, &[&xe, &d, y]) == 2)
                .count();
            out.push(LineThrough {
                direction: d,
                rational,
                singular,
            });
        }
        if out.len() > 2 {
            return Err(CountError::PlaneOnSurface);
        }
        Ok(Some(out))
    }

    /// Smooth rational points lying on no line of `X_s`.
    pub fn points_off_lines(&self) -> Result<Vec<Vec<Fe>>, CountError> {
        let mut out = Vec::new();
        for x in self.rational_points() {
            if matches!(self.lines_through(&x)?, Some(l) if l.is_empty()) {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// Measured value against its prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<T> {
    pub measured: T,
    pub expected: T,
}

impl<T: PartialEq> Check<T> {
    pub fn ok(&self) -> bool {
        self.measured == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claimed: String,
    pub q: u64,
    pub segre: Check<Option<SegreSymbol>>,
    /// `(n, check)` for `#X_s(F_{q^n})`.
    pub counts: Vec<(u32, Check<i128>)>,
    /// `(n, check)` for the number of singular points over `F_{q^n}`.
    pub singular: Vec<(u32, Check<i64>)>,
    /// Signed type of the simple roots from their restricted discriminants.
    pub simple: Check<Option<Vec<i32>>>,
    pub pass: bool,
}

/// Check a pair against the invariants of the claimed degree-4 arithmetic type.
pub fn verify_surface(
    p: &QuadricPair,
    cl: &Classification,
    claimed: &ArithmeticType,
    n_max: u32,
) -> Result<VerificationReport, CountError> {
    if !(1..=6).contains(&n_max) {
        return Err(CountError::BadRange);
    }
    let pencil = p.pencil()?;
    let q = p.field.size() as u64;
    let zeta = ZetaData::new(cl, claimed);
    let segre = Check {
        measured: Some(pencil.segre_symbol()),
        expected: segre_symbol_of(cl.geometric_of(claimed)),
    };
    let mut counts = Vec::new();
    let mut singular = Vec::new();
    for n in 1..=n_max {
        counts.push((
            n,
            Check {
                measured: count_charsum(p, n)?,
                expected: zeta.count_sing(q, n)?,
            },
        ));
        let sing = singular_points(p, n)?.len() as i64;
        singular.push((
            n,
            Check {
                measured: sing,
                expected: zeta.sing_locus_counts(n).0,
            },
        ));
    }
    let simple = Check {
        measured: Some(p.simple_signed_type()?),
        expected: claimed.simple.clone(),
    };
    let pass = segre.ok()
        && simple.ok()
        && counts.iter().all(|c| c.1.ok())
        && singular.iter().all(|c| c.1.ok());
    Ok(VerificationReport {
        claimed: claimed.label(),
        q,
        segre,
        counts,
        singular,
        simple,
        pass,
    })
}

#[cfg(test)]
mod tests;
