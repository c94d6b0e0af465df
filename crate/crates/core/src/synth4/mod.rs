//! Explicit pairs of quadrics for every arithmetic type of degree 4.

mod recipe;

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{factor, Embedding, Fe, Field, GfError, Mat, Poly};
use crate::quadmod::{CyclicModule, QuadError, QuadraticModule, QuadricPair};

pub use recipe::{
    ordinary_recipe, recipe, recipes, Constraint, DeltaSpec, Factor, Recipe, RecipeError,
    RootOrbit, SquareClass, SummandSpec, Target,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error("no degree 4 arithmetic type {0}")]
    UnknownType(u32),
    #[error("quadrics need odd characteristic, got q = {0}")]
    EvenCharacteristic(u64),
    #[error("type {target} is not realizable over F_{q}: {reason}")]
    NotRealizable {
        target: String,
        q: u64,
        reason: String,
    },
    #[error("no witness found for {0} after the retry bound")]
    SearchExhausted(String),
}

const ROOT_ATTEMPTS: usize = 400;
const DELTA_ATTEMPTS: usize = 64;

/// Concrete data meeting a recipe: one irreducible polynomial per root orbit
/// and the resulting module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub roots: Vec<Poly>,
    pub module: QuadraticModule,
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`.
fn irreducible_count(q: u64, d: usize) -> u64 {
    let mobius = |n: usize| -> i64 {
        let (mut n, mut k, mut sign) = (n, 2, 1i64);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                sign = -sign;
            }
            k += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    };
    let total: i64 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(d / e) * (q as i64).pow(e as u32))
        .sum();
    (total / d as i64) as u64
}

fn is_irreducible(f: &Field, g: &Poly, seed: u64) -> bool {
    matches!(factor(f, g, seed).map(|fac| fac.factors), Ok(v) if v.len() == 1 && v[0].1 == 1)
}

struct Evaluator {
    field: Field,
    exts: Vec<(usize, Field, Embedding)>,
}

impl Evaluator {
    fn new(field: &Field, degrees: &[usize]) -> Result<Evaluator, GfError> {
        let mut exts = Vec::new();
        for &d in degrees {
            if exts.iter().all(|(e, _, _)| *e != d) {
                let ext = Field::new(field.characteristic(), field.degree() * d as u32)?;
                let emb = Embedding::new(field, &ext)?;
                exts.push((d, ext, emb));
            }
        }
        Ok(Evaluator {
            field: field.clone(),
            exts,
        })
    }

    fn ext(&self, d: usize) -> (&Field, &Embedding) {
        let (_, e, m) = self
            .exts
            .iter()
            .find(|(e, _, _)| *e == d)
            .expect("extension prepared");
        (e, m)
    }

    fn lift(&self, d: usize, p: &Poly) -> Poly {
        let (ext, emb) = self.ext(d);
        p.map(|x| emb.apply(&self.field, ext, x))
    }

    /// A root of `g` in `F_{q^d}`.
    fn root(&self, d: usize, g: &Poly) -> Fe {
        let (ext, _) = self.ext(d);
        let lg = self.lift(d, g);
        ext.elements()
            .find(|&x| lg.eval(ext, x).is_zero())
            .expect("irreducible of degree dividing d")
    }

    fn holds(
        &self,
        r: &Recipe,
        c: &Constraint,
        roots: &[Poly],
        summands: &[CyclicModule],
    ) -> Result<bool, GfError> {
        let d = c.degree(r);
        let (ext, emb) = self.ext(d);
        let mut acc = Fe::ONE;
        for fct in &c.factors {
            let v = match *fct {
                Factor::Delta { summand, root } => self
                    .lift(d, &summands[summand].delta)
                    .eval(ext, self.root(d, &roots[root])),
                Factor::Norm { summand } => {
                    let s = &summands[summand];
                    emb.apply(
                        &self.field,
                        ext,
                        crate::gf::norm(&self.field, &s.f, &s.delta),
                    )
                }
                Factor::RootDiff(a, b) => ext.sub(self.root(d, &roots[a]), self.root(d, &roots[b])),
            };
            acc = ext.mul(acc, v);
        }
        if acc.is_zero() {
            return Ok(false);
        }
        Ok(ext.is_square(acc)? == (c.class == SquareClass::Square))
    }
}

fn random_monic(f: &Field, rng: &mut ChaCha8Rng, d: usize) -> Poly {
    let mut c: Vec<Fe> = (0..d)
        .map(|_| f.from_index(rng.random_range(0..f.size())))
        .collect();
    c.push(Fe::ONE);
    Poly::new(c)
}

fn random_unit(f: &Field, rng: &mut ChaCha8Rng, modulus: &Poly) -> Poly {
    loop {
        let d = Poly::new(
            (0..modulus.deg())
                .map(|_| f.from_index(rng.random_range(0..f.size())))
                .collect(),
        );
        if !d.is_zero() && modulus.gcd(f, &d).deg() == 0 {
            return d;
        }
    }
}

/// Seeded search for root polynomials and deltas meeting every constraint of
/// the recipe.
pub fn residue_search(r: &Recipe, q: u64, seed: u64) -> Result<Witness, SynthError> {
    let field = Field::of_size(q)?;
    if field.characteristic() == 2 {
        return Err(SynthError::EvenCharacteristic(q));
    }
    r.check_consistent()?;
    for d in 1..=5 {
        let needed = r.roots.iter().filter(|o| o.degree == d).count() as u64;
        if needed > irreducible_count(q, d) {
            return Err(SynthError::NotRealizable {
                target: r.target.label(),
                q,
                reason: alloc::format!("needs {needed} distinct irreducible factors of degree {d}"),
            });
        }
    }
    let degrees: Vec<usize> = core::iter::once(1)
        .chain(r.roots.iter().map(|o| o.degree))
        .collect();
    let ev = Evaluator::new(&field, &degrees)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ROOT_ATTEMPTS {
        let mut roots: Vec<Poly> = Vec::new();
        for o in &r.roots {
            let g = loop {
                let g = random_monic(&field, &mut rng, o.degree);
                if is_irreducible(&field, &g, seed) {
                    break g;
                }
            };
            if roots.contains(&g) {
                break;
            }
            roots.push(g);
        }
        if roots.len() < r.roots.len() {
            continue;
        }
        let annihilators: Vec<Poly> = r
            .summands
            .iter()
            .map(|s| {
                s.factors.iter().fold(Poly::one(), |acc, &(i, e)| {
                    acc.mul(&field, &roots[i].pow(&field, e))
                })
            })
            .collect();
        for _ in 0..DELTA_ATTEMPTS {
            let mut summands = Vec::with_capacity(r.summands.len());
            for (s, ann) in r.summands.iter().zip(&annihilators) {
                let delta = match s.delta {
                    DeltaSpec::Free => random_unit(&field, &mut rng, ann),
                    DeltaSpec::Fixed(v) => Poly::constant(field.from_int(v)),
                    DeltaSpec::AnnihilatorAt { summand, root } => Poly::constant(
                        annihilators[summand].eval(&field, rational_root(&field, &roots[root])),
                    ),
                };
                match CyclicModule::new(&field, ann.clone(), delta) {
                    Ok(m) => summands.push(m),
                    Err(QuadError::NotUnit) => break,
                    Err(e) => return Err(e.into()),
                }
            }
            if summands.len() < r.summands.len() {
                continue;
            }
            let mut ok = true;
            for c in &r.constraints {
                if !ev.holds(r, c, &roots, &summands)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Witness {
                    roots,
                    module: QuadraticModule::new(summands),
                });
            }
        }
    }
    Err(SynthError::SearchExhausted(r.target.label()))
}

fn rational_root(f: &Field, g: &Poly) -> Fe {
    f.neg(g.coeff(0))
}

/// Block matrices over `F_3` for the types whose factorization pattern needs
/// four rational roots; the root at infinity supplies the fourth.
fn f3_override(type_no: u32, f: &Field) -> Option<QuadricPair> {
    let (s, n) = (Fe::ONE, f.from_int(-1));
    let diag = |d: [Fe; 5]| {
        let mut m = Mat::zeros(5, 5);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    };
    let z = Fe::ZERO;
    let a1 = |d0: Fe, dinf: Fe| {
        let q0 = diag([dinf, s, s, z, d0]);
        let mut qinf = diag([z, s, n, z, z]);
        qinf.set(3, 4, d0);
        qinf.set(4, 3, d0);
        (q0, qinf)
    };
    let two_a1 = |d0: Fe, d1: Fe, dinf: Fe| (diag([dinf, d1, s, z, z]), diag([z, d1, n, d0, n]));
    let (q0, qinf) = match type_no {
        1 => a1(s, s),
        2 => a1(n, s),
        4 => a1(n, n),
        6 => a1(s, n),
        16 => two_a1(s, s, s),
        18 => two_a1(s, n, n),
        19 => two_a1(n, n, n),
        21 => two_a1(n, s, s),
        _ => return None,
    };
    QuadricPair::new(f.clone(), q0, qinf).ok()
}

/// A pair of quadrics over `F_q` whose base locus has degree-4 arithmetic type
/// `type_no`.
pub fn synthesize(type_no: u32, q: u64, seed: u64) -> Result<QuadricPair, SynthError> {
    let r = recipe(type_no).ok_or(SynthError::UnknownType(type_no))?;
    if q == 3 {
        if let Some(p) = f3_override(type_no, &Field::new(3, 1)?) {
            return Ok(p);
        }
    }
    synthesize_recipe(&r, q, seed)
}

/// Ordinary surface with the given signed type in `W(D_5)`.
pub fn synthesize_ordinary(signed: &[i32], q: u64, seed: u64) -> Result<QuadricPair, SynthError> {
    synthesize_recipe(&ordinary_recipe(signed)?, q, seed)
}

pub fn synthesize_recipe(r: &Recipe, q: u64, seed: u64) -> Result<QuadricPair, SynthError> {
    let w = residue_search(r, q, seed)?;
    Ok(w.module.to_pair(&Field::of_size(q)?)?)
}

/// Pairs for all 58 numbered types.
pub fn synthesize_all(q: u64, seed: u64) -> Result<Vec<(u32, QuadricPair)>, SynthError> {
    (1..=58).map(|n| Ok((n, synthesize(n, q, seed)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::roots;
    use alloc::vec;

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(3, 1), 3);
        assert_eq!(irreducible_count(3, 2), 3);
        assert_eq!(irreducible_count(3, 3), 8);
        assert_eq!(irreducible_count(5, 4), 150);
        assert_eq!(irreducible_count(2, 5), 6);
    }

    #[test]
    fn type_58_any_delta() {
        for q in [3, 5, 7] {
            let p = synthesize(58, q, 1).unwrap();
            assert_eq!(p.segre_symbol().unwrap().to_string(), "[(41)]");
        }
    }

    #[test]
    fn type_8_over_f5() {
        let r = recipe(8).unwrap();
        let w = residue_search(&r, 5, 3).unwrap();
        let f = Field::of_size(5).unwrap();
        assert_eq!(w.module.summands.len(), 1);
        let pat = factor(&f, &w.module.summands[0].f, 0).unwrap().pattern();
        assert_eq!(pat, vec![(1, 1), (1, 2), (2, 1)]);
        let p = w.module.to_pair(&f).unwrap();
        assert_eq!(p.segre_symbol().unwrap().to_string(), "[2111]");
        // N_P(δ) square, so the restricted discriminants carry the table classes.
        assert!(f
            .is_square(crate::gf::norm(
                &f,
                &w.module.summands[0].f,
                &w.module.summands[0].delta
            ))
            .unwrap());
        assert_eq!(p.simple_signed_type().unwrap(), vec![-2, -1]);
    }

    #[test]
    fn search_patterns() {
        let f = Field::of_size(5).unwrap();
        let w = residue_search(&recipe(1).unwrap(), 5, 9).unwrap();
        assert_eq!(roots(&f, &w.module.summands[0].f).len(), 4);
        let f3 = Field::of_size(3).unwrap();
        let w = residue_search(&recipe(3).unwrap(), 3, 9).unwrap();
        let pat = factor(&f3, &w.module.summands[0].f, 0).unwrap().pattern();
        assert_eq!(pat, vec![(1, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn inconsistent_constraints() {
        let r = Recipe::parse("99 | a:1 b:1 c:1 d:1 e:1 | a.b.c.d.e/* | d0@a=S d0@a=N").unwrap();
        assert!(matches!(
            residue_search(&r, 7, 0),
            Err(SynthError::Recipe(RecipeError::Inconsistent(_)))
        ));
    }

    #[test]
    fn four_rational_roots_over_f3() {
        assert!(matches!(
            residue_search(&recipe(1).unwrap(), 3, 0),
            Err(SynthError::NotRealizable { q: 3, .. })
        ));
        assert!(synthesize(1, 3, 0).is_ok());
        assert!(matches!(
            synthesize_ordinary(&[1, 1, 1, 1, 1], 3, 0),
            Err(SynthError::NotRealizable { .. })
        ));
        assert!(synthesize_ordinary(&[2, 1, 1, 1], 3, 0).is_ok());
    }

    #[test]
    fn deterministic() {
        assert_eq!(synthesize(20, 7, 5).unwrap(), synthesize(20, 7, 5).unwrap());
        assert_eq!(synthesize(99, 7, 5), Err(SynthError::UnknownType(99)));
        assert_eq!(synthesize(1, 9, 0).unwrap().field.size(), 9);
        assert!(matches!(
            synthesize(1, 4, 0),
            Err(SynthError::EvenCharacteristic(4))
        ));
    }
}
