//! Blowups of `P^2` in Galois-stable configurations with infinitely near
//! points, contractions, and blowups of degree-4 surfaces at a rational point.

use alloc::string::String;
use alloc::vec::Vec;

use crate::gf::GfError;
use crate::piclat::{Class, WeylElement};
use crate::typetab::{classification, ArithmeticType, TypeError};

mod config;
mod recipes;

pub use config::{Chain, Incidences, PointConfiguration};
pub use recipes::{plane_recipes, PlaneRecipe};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("configuration is not stable under Frobenius")]
    NotStable,
    #[error("infinitely near points need an affine base")]
    NotAffine,
    #[error("two chains share a base point")]
    SharedBase,
    #[error("{0} points exceed the six allowed")]
    TooManyPoints(usize),
    #[error("points not in almost general position: {0} is effective")]
    NotGeneral(Class),
    #[error("no recipe for degree {0} type {1}")]
    NoRecipe(u8, u32),
    #[error("no configuration found for degree {0} type {1} over F_{2}")]
    Exhausted(u8, u32, u64),
    #[error("cannot contract {0}: {1}")]
    Contraction(Class, &'static str),
    #[error("inconsistent profile: {0}")]
    Profile(&'static str),
}

/// Frobenius element and `(-2)`-curve classes of a surface of degree `9 - r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub degree: u8,
    pub frobenius: WeylElement,
    pub basis: Vec<Class>,
}

impl LatticeData {
    pub fn identify(&self) -> Result<&'static ArithmeticType, PlaneError> {
        Ok(classification(self.degree)?.identify(&self.frobenius, &self.basis)?)
    }
}

/// Roots that are sums of generators, closed under adding a generator.
pub fn effective_closure(gens: &[Class]) -> Vec<Class> {
    let mut out: Vec<Class> = Vec::new();
    for g in gens {
        if !out.contains(g) {
            out.push(*g);
        }
    }
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let c = out[i] + *g;
            if c.square() == -2 && !out.contains(&c) {
                out.push(c);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Effective roots that are not the sum of two effective roots.
pub fn irreducible_part(eff: &[Class]) -> Vec<Class> {
    eff.iter()
        .filter(|&&c| !eff.iter().any(|&a| eff.contains(&(c - a))))
        .copied()
        .collect()
}

fn canonical(dim: usize) -> Class {
    let mut k = -3 * Class::e(0);
    for i in 1..dim {
        k = k + Class::e(i);
    }
    k
}

/// Contract the Frobenius-fixed exceptional class `e`, disjoint from the
/// `(-2)`-curves, and move it to `E_r` by a Weyl element.
pub fn contract(data: &LatticeData, e: &Class) -> Result<LatticeData, PlaneError> {
    let cl = classification(data.degree)?;
    let dim = cl.lattice.dim();
    if e.square() != -1 || e.dot(&canonical(dim)) != -1 {
        return Err(PlaneError::Contraction(*e, "not an exceptional class"));
    }
    if data.frobenius.apply(e) != *e {
        return Err(PlaneError::Contraction(*e, "not fixed by Frobenius"));
    }
    if data.basis.iter().any(|r| r.dot(e) != 0) {
        return Err(PlaneError::Contraction(*e, "meets a (-2)-curve"));
    }
    let last = Class::e(dim - 1);
    let g = cl
        .group
        .elements()
        .iter()
        .find(|g| g.apply(e) == last)
        .ok_or(PlaneError::Contraction(
            *e,
            "no Weyl element moves it to the last class",
        ))?;
    let w = data.frobenius.conjugate_by(g).truncate(dim - 1);
    let basis = data.basis.iter().map(|r| g.apply(r)).collect();
    Ok(LatticeData {
        degree: data.degree + 1,
        frobenius: w,
        basis,
    })
}

/// Blow up a rational point of a degree-4 surface lying on the exceptional
/// curves `profile` and on no `(-2)`-curve.
pub fn blowup_at_point(data: &LatticeData, profile: &[Class]) -> Result<LatticeData, PlaneError> {
    if data.degree != 4 {
        return Err(PlaneError::Profile("source must have degree 4"));
    }
    let cl = classification(4)?;
    if profile.iter().any(|c| !cl.exceptional.contains(c)) {
        return Err(PlaneError::Profile(
            "profile holds a class that is not exceptional",
        ));
    }
    if profile
        .iter()
        .any(|c| data.basis.iter().any(|r| c.dot(r) < 0))
    {
        return Err(PlaneError::Profile("profile holds a reducible class"));
    }
    if !data.frobenius.stabilizes(profile) {
        return Err(PlaneError::Profile("profile is not Galois stable"));
    }
    for (i, a) in profile.iter().enumerate() {
        if profile[i + 1..].iter().any(|b| a.dot(b) != 1) {
            return Err(PlaneError::Profile("profile curves do not meet pairwise"));
        }
    }
    let new = Class::e(6);
    let mut basis = data.basis.clone();
    basis.extend(profile.iter().map(|&c| c - new));
    Ok(LatticeData {
        degree: 3,
        frobenius: data.frobenius.extend(7),
        basis,
    })
}

/// How a plan reaches its surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Blowup(PointConfiguration),
    /// Blow up, then contract a rational exceptional class.
    Contraction {
        configuration: PointConfiguration,
        contracted: Class,
    },
    /// Blow up a rational point of a degree-4 surface on the given curves.
    PointOnSurface {
        source: String,
        profile: Vec<Class>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPlan {
    pub degree: u8,
    pub type_no: u32,
    pub q: u64,
    pub construction: Construction,
    pub frobenius: WeylElement,
    pub basis: Vec<Class>,
}

impl BlowupPlan {
    pub fn lattice_data(&self) -> LatticeData {
        LatticeData {
            degree: self.degree,
            frobenius: self.frobenius.clone(),
            basis: self.basis.clone(),
        }
    }
}

/// Attempts per recipe before giving up.
pub const ATTEMPTS: usize = 400;

/// A plane configuration realizing the numbered type, checked by identification.
///
/// Degrees 5 and 6 have a recipe for every type; degree 3 covers the types
/// obtained from six points in special position.
pub fn build_plan(degree: u8, type_no: u32, q: u64, seed: u64) -> Result<BlowupPlan, PlaneError> {
    let cands = recipes::recipes_for(degree, type_no);
    if cands.is_empty() {
        return Err(PlaneError::NoRecipe(degree, type_no));
    }
    for (i, rec) in cands.iter().enumerate() {
        let mut s = recipes::Sampler::new(q, rec.field_degree(), seed.wrapping_add(i as u64))?;
        for _ in 0..ATTEMPTS {
            let Some(draft) = rec.draw(&mut s) else {
                continue;
            };
            let Ok(conf) = PointConfiguration::new(q, s.field().clone(), draft.chains) else {
                continue;
            };
            let Ok(eff) = conf.effective_roots() else {
                continue;
            };
            if eff != effective_closure(&draft.generators) {
                continue;
            }
            let data = conf.lattice_data()?;
            let (data, construction) = match draft.contract {
                Some(e) => (
                    contract(&data, &e)?,
                    Construction::Contraction {
                        configuration: conf,
                        contracted: e,
                    },
                ),
                None => (data, Construction::Blowup(conf)),
            };
            if data.degree != degree {
                continue;
            }
            match data.identify() {
                Ok(t) if t.type_no == Some(type_no) => {
                    return Ok(BlowupPlan {
                        degree,
                        type_no,
                        q,
                        construction,
                        frobenius: data.frobenius,
                        basis: data.basis,
                    })
                }
                _ => continue,
            }
        }
    }
    Err(PlaneError::Exhausted(degree, type_no, q))
}

#[cfg(test)]
mod tests;
