//! Pencils of quadrics in `P^4`.
//!
//! A cyclic module `[[F, δ]]` is `F_q[T]/(F)` with the pair of forms
//! `λ_F(δxy)` and `λ_F(Tδxy)`, where `λ_F` reads the coefficient of
//! `t^{n-1}`. Orthogonal sums of cyclic modules of total degree 5 give
//! pairs of quadrics whose base locus is a degree-4 del Pezzo surface.

mod segre;

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{factor, roots, Embedding, Fe, Field, GfError, Mat, Poly};

pub use segre::{SegreParseError, SegreSymbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("annihilator must be monic and nonconstant")]
    BadAnnihilator,
    #[error("delta is not a unit modulo the annihilator")]
    NotUnit,
    #[error("total degree is {0}, expected 5")]
    WrongDegree(usize),
    #[error("matrices must be symmetric and 5 by 5")]
    BadMatrix,
    #[error("quadratic forms need odd characteristic")]
    EvenCharacteristic,
    #[error("degenerate pencil")]
    Degenerate,
    #[error("theta is not a root")]
    NotRoot,
    #[error("module does not have the required shape")]
    ShapeMismatch,
}

/// `[[F, δ]]` with `δ` reduced modulo `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    pub f: Poly,
    pub delta: Poly,
}

impl CyclicModule {
    pub fn new(field: &Field, f: Poly, delta: Poly) -> Result<CyclicModule, QuadError> {
        if f.degree().unwrap_or(0) == 0 || !f.is_monic() {
            return Err(QuadError::BadAnnihilator);
        }
        let delta = delta.rem(field, &f)?;
        if delta.is_zero() || f.gcd(field, &delta).deg() > 0 {
            return Err(QuadError::NotUnit);
        }
        Ok(CyclicModule { f, delta })
    }

    /// `[[T - θ, δ]]`.
    pub fn linear(field: &Field, theta: Fe, delta: Fe) -> Result<CyclicModule, QuadError> {
        CyclicModule::new(field, Poly::linear(field, theta), Poly::constant(delta))
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    /// `λ_F(δ T^e t^k)` for `k = 0..2n-1`.
    fn functional(&self, field: &Field, e: usize) -> Vec<Fe> {
        let n = self.degree();
        let t = Poly::monomial(1);
        let mut cur = self
            .delta
            .mul(field, &Poly::monomial(e))
            .rem(field, &self.f)
            .expect("monic");
        let mut out = Vec::with_capacity(2 * n - 1);
        for _ in 0..2 * n - 1 {
            out.push(cur.coeff(n - 1));
            cur = cur.mulmod(field, &t, &self.f);
        }
        out
    }

    fn hankel(&self, field: &Field, e: usize) -> Mat {
        let n = self.degree();
        let lam = self.functional(field, e);
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, lam[i + j]);
            }
        }
        m
    }

    /// Matrix of `δΦ_F` in the basis `1, t, ..., t^{n-1}`.
    pub fn gram(&self, field: &Field) -> Mat {
        self.hankel(field, 0)
    }

    /// Matrix of `TδΦ_F`.
    pub fn gram_t(&self, field: &Field) -> Mat {
        self.hankel(field, 1)
    }

    /// `(-1)^{n(n-1)/2} N_F(δ)`.
    pub fn discriminant(&self, field: &Field) -> Fe {
        let n = self.degree();
        let norm = crate::gf::norm(field, &self.f, &self.delta);
        if (n * (n - 1) / 2) % 2 == 1 {
            field.neg(norm)
        } else {
            norm
        }
    }

    /// Restricted discriminant of `(θ - T)δΦ_F` at a root `θ` of `F` in the
    /// extension `ext`: `(-1)^{n(n-1)/2} N_F(δ) δ(θ)`.
    pub fn restricted_discriminant(
        &self,
        field: &Field,
        ext: &Field,
        theta: Fe,
    ) -> Result<Fe, QuadError> {
        let emb = Embedding::new(field, ext)?;
        let lift = |p: &Poly| p.map(|x| emb.apply(field, ext, x));
        if !lift(&self.f).eval(ext, theta).is_zero() {
            return Err(QuadError::NotRoot);
        }
        let disc = emb.apply(field, ext, self.discriminant(field));
        Ok(ext.mul(disc, lift(&self.delta).eval(ext, theta)))
    }
}

/// Orthogonal sum of cyclic modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticModule {
    pub summands: Vec<CyclicModule>,
}

impl QuadraticModule {
    pub fn new(summands: Vec<CyclicModule>) -> QuadraticModule {
        QuadraticModule { summands }
    }

    pub fn degree(&self) -> usize {
        self.summands.iter().map(CyclicModule::degree).sum()
    }

    /// Block-diagonal pair `(Q0, Qinf)` on `F_q^5`.
    pub fn to_pair(&self, field: &Field) -> Result<QuadricPair, QuadError> {
        if self.degree() != 5 {
            return Err(QuadError::WrongDegree(self.degree()));
        }
        let mut q0 = Mat::zeros(5, 5);
        let mut qinf = Mat::zeros(5, 5);
        let mut at = 0;
        for s in &self.summands {
            if s.discriminant(field).is_zero() {
                return Err(QuadError::Degenerate);
            }
            let (g, gt) = (s.gram(field), s.gram_t(field));
            for i in 0..s.degree() {
                for j in 0..s.degree() {
                    qinf.set(at + i, at + j, g.get(i, j));
                    q0.set(at + i, at + j, gt.get(i, j));
                }
            }
            at += s.degree();
        }
        QuadricPair::new(field.clone(), q0, qinf)
    }
}

/// The singular points on the vertex line of `[[T-θ,δ1]] ⊕ [[T-θ,δ2]] ⊕ M`
/// are rational exactly when `-δ1δ2` is a square.
pub fn vertex_rationality(field: &Field, delta1: Fe, delta2: Fe) -> Result<bool, QuadError> {
    if delta1.is_zero() || delta2.is_zero() {
        return Err(QuadError::ShapeMismatch);
    }
    Ok(field.is_square(field.neg(field.mul(delta1, delta2)))?)
}

/// Corank of a symmetric matrix and the determinant of the form it induces on
/// a complement of its kernel.
pub fn restricted_determinant(field: &Field, a: &Mat) -> (usize, Fe) {
    let pivots = a.clone().echelon(field);
    let m = Mat::from_rows(
        pivots
            .iter()
            .map(|&i| pivots.iter().map(|&j| a.get(i, j)).collect())
            .collect(),
    );
    let det = if pivots.is_empty() {
        Fe::ONE
    } else {
        m.det(field)
    };
    (a.rows() - pivots.len(), det)
}

/// Two symmetric `5 x 5` matrices over `F_q`, `q` odd, spanning the pencil
/// `Q0 - θ Qinf`.
///
/// `Qinf` is allowed to be singular; the pencil determinant then has a root
/// at infinity.
#[derive(Clone, Debug)]
pub struct QuadricPair {
    pub field: Field,
    pub q0: Mat,
    pub qinf: Mat,
}

impl PartialEq for QuadricPair {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.q0 == o.q0 && self.qinf == o.qinf
    }
}
impl Eq for QuadricPair {}

/// One Galois orbit of roots of the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilRoot {
    /// Monic irreducible factor of the pencil determinant; `None` at infinity.
    pub factor: Option<Poly>,
    pub degree: usize,
    pub multiplicity: u32,
    /// Jordan exponents at each root of the orbit, decreasing.
    pub exponents: Vec<u32>,
}

impl PencilRoot {
    pub fn corank(&self) -> usize {
        self.exponents.len()
    }
    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    /// `det(T Qinf - Q0)`.
    pub determinant: Poly,
    pub roots: Vec<PencilRoot>,
}

impl Pencil {
    pub fn segre_symbol(&self) -> SegreSymbol {
        let mut groups = Vec::new();
        for r in &self.roots {
            for _ in 0..r.degree {
                groups.push(r.exponents.clone());
            }
        }
        SegreSymbol::new(groups)
    }
}

impl QuadricPair {
    pub fn new(field: Field, q0: Mat, qinf: Mat) -> Result<QuadricPair, QuadError> {
        if field.characteristic() == 2 {
            return Err(QuadError::EvenCharacteristic);
        }
        for m in [&q0, &qinf] {
            if m.rows() != 5 || m.cols() != 5 || !m.is_symmetric() {
                return Err(QuadError::BadMatrix);
            }
        }
        Ok(QuadricPair { field, q0, qinf })
    }

    /// `Q0 - θ Qinf`.
    pub fn member(&self, theta: Fe) -> Mat {
        let f = &self.field;
        self.q0.combine(f, Fe::ONE, &self.qinf, f.neg(theta))
    }

    /// The pair over an extension field.
    pub fn extend(&self, ext: &Field) -> Result<QuadricPair, QuadError> {
        let emb = Embedding::new(&self.field, ext)?;
        let lift = |m: &Mat| m.map(|x| emb.apply(&self.field, ext, x));
        Ok(QuadricPair {
            field: ext.clone(),
            q0: lift(&self.q0),
            qinf: lift(&self.qinf),
        })
    }

    /// `det(T Qinf - Q0)` by fraction-free elimination over `F_q[T]`.
    pub fn pencil_determinant(&self) -> Poly {
        let f = &self.field;
        let n = 5;
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Poly::new(vec![f.neg(self.q0.get(i, j)), self.qinf.get(i, j)]))
                    .collect()
            })
            .collect();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Poly::zero();
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(f, &a[k][k]).sub(f, &a[i][k].mul(f, &a[k][j]));
                    a[i][j] = num.divrem(f, &prev).expect("nonzero pivot").0;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            d.scale(f, f.neg(Fe::ONE))
        } else {
            d
        }
    }

    /// Roots of the pencil with their Jordan exponents.
    pub fn pencil(&self) -> Result<Pencil, QuadError> {
        let f = &self.field;
        let det = self.pencil_determinant();
        if det.is_zero() {
            return Err(QuadError::Degenerate);
        }
        // A nonsingular member `Q0 - c Qinf`, over an extension if every
        // rational member is singular.
        let (ext, pair, c) = match f.elements().find(|&c| !det.eval(f, c).is_zero()) {
            Some(c) => (f.clone(), self.clone(), c),
            None => {
                let ext = Field::new(f.characteristic(), 2 * f.degree())?;
                let pair = self.extend(&ext)?;
                let emb = Embedding::new(f, &ext)?;
                let lifted = det.map(|x| emb.apply(f, &ext, x));
                let c = ext
                    .elements()
                    .find(|&c| !lifted.eval(&ext, c).is_zero())
                    .ok_or(QuadError::Degenerate)?;
                (ext, pair, c)
            }
        };
        let emb = Embedding::new(f, &ext)?;
        let u = pair.member(c).inverse(&ext)?.mul(&ext, &pair.qinf);
        // θ = c + 1/μ for the eigenvalues μ of u; infinity is μ = 0.
        let mut roots_out = Vec::new();
        let inf_mult = 5 - det.deg();
        if inf_mult > 0 {
            let exps = jordan_exponents(&ext, &u, &Poly::monomial(1), 1, inf_mult as u32);
            roots_out.push(PencilRoot {
                factor: None,
                degree: 1,
                multiplicity: inf_mult as u32,
                exponents: exps,
            });
        }
        for (g, m) in factor(f, &det, 0)?.factors {
            let d = g.deg();
            // μ^d g(c + 1/μ)
            let lin = Poly::new(vec![Fe::ONE, c]);
            let mut h = Poly::zero();
            for (k, &gk) in g.coeffs().iter().enumerate() {
                let term = lin
                    .pow(&ext, k as u32)
                    .mul(&ext, &Poly::monomial(d - k))
                    .scale(&ext, emb.apply(f, &ext, gk));
                h = h.add(&ext, &term);
            }
            let exps = jordan_exponents(&ext, &u, &h, d, m);
            roots_out.push(PencilRoot {
                factor: Some(g),
                degree: d,
                multiplicity: m,
                exponents: exps,
            });
        }
        Ok(Pencil {
            determinant: det,
            roots: roots_out,
        })
    }

    pub fn segre_symbol(&self) -> Result<SegreSymbol, QuadError> {
        Ok(self.pencil()?.segre_symbol())
    }

    /// Restricted discriminants at the simple roots, as `(degree, square)` per
    /// Galois orbit; the square test is in `F_{q^d}`.
    pub fn simple_root_classes(&self) -> Result<Vec<(usize, bool)>, QuadError> {
        let f = &self.field;
        let mut out = Vec::new();
        for r in self.pencil()?.roots.iter().filter(|r| r.is_simple()) {
            let square = match &r.factor {
                None => {
                    let (_, det) = restricted_determinant(f, &self.qinf);
                    f.is_square(det)?
                }
                Some(g) => {
                    let ext = Field::new(f.characteristic(), f.degree() * r.degree as u32)?;
                    let pair = self.extend(&ext)?;
                    let emb = Embedding::new(f, &ext)?;
                    let theta = roots(&ext, &g.map(|x| emb.apply(f, &ext, x)))[0];
                    let (_, det) = restricted_determinant(&ext, &pair.member(theta));
                    ext.is_square(det)?
                }
            };
            out.push((r.degree, square));
        }
        Ok(out)
    }

    /// Signed cycle type of the simple roots: a part `d` per orbit, negative
    /// when the restricted discriminant is a nonsquare.
    pub fn simple_signed_type(&self) -> Result<Vec<i32>, QuadError> {
        let mut v: Vec<i32> = self
            .simple_root_classes()?
            .into_iter()
            .map(|(d, sq)| if sq { d as i32 } else { -(d as i32) })
            .collect();
        v.sort_by(|a: &i32, b: &i32| b.abs().cmp(&a.abs()).then(b.cmp(a)));
        Ok(v)
    }
}

/// Jordan exponents of `u` at each root of the squarefree `h` (of degree `d`),
/// whose total algebraic multiplicity per root is `mult`.
fn jordan_exponents(f: &Field, u: &Mat, h: &Poly, d: usize, mult: u32) -> Vec<u32> {
    let hu = u.eval_poly(f, h);
    let mut ranks = vec![5usize];
    let mut pw = Mat::identity(5);
    for _ in 0..mult {
        pw = pw.mul(f, &hu);
        ranks.push(pw.rank(f));
    }
    // at_least[j] = blocks of size >= j+1 at each root
    let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / d).collect();
    let mut exps = Vec::new();
    for j in (0..at_least.len()).rev() {
        let exact = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..exact {
            exps.push(j as u32 + 1);
        }
    }
    exps
}
