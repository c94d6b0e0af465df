//! Degree-4 surfaces blown up at a rational point: Galois action on negative
//! curves, rational points off them, and routes to every degree-3 type.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::count::{CountError, LineFinder};
use crate::gf::Fe;
use crate::golden::BlowupRow;
use crate::piclat::Class;
use crate::planeconf::{
    blowup_at_point, build_plan, contract, BlowupPlan, Construction, LatticeData, PlaneError,
};
use crate::quadmod::QuadricPair;
use crate::synth4::{synthesize, synthesize_ordinary, SynthError};
use crate::typetab::{classification, ArithmeticType, GeometricType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowdownError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("degree-3 types are numbered 1 to 77, got {0}")]
    UnknownType(u32),
    #[error("no construction of degree-3 type {0} over F_{1} was found")]
    NoRoute(u32, u64),
}

/// Frobenius on the negative curves of a degree-4 type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveAction {
    /// Exceptional curves first, then `(-2)`-curves.
    pub curves: Vec<Class>,
    pub n_exceptional: usize,
    /// Image index of each curve.
    pub permutation: Vec<usize>,
}

impl CurveAction {
    /// Disjoint cycles, each starting at its least index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.curves.len()];
        let mut out = Vec::new();
        for i in 0..self.curves.len() {
            if seen[i] {
                continue;
            }
            let mut c = vec![i];
            seen[i] = true;
            let mut j = self.permutation[i];
            while j != i {
                seen[j] = true;
                c.push(j);
                j = self.permutation[j];
            }
            out.push(c);
        }
        out
    }

    /// Lengths of the nontrivial cycles, decreasing.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .cycles()
            .iter()
            .map(|c| c.len() as u32)
            .filter(|&l| l > 1)
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn fixed(&self) -> Vec<usize> {
        (0..self.curves.len())
            .filter(|&i| self.permutation[i] == i)
            .collect()
    }
}

pub fn curve_action(a: &ArithmeticType) -> CurveAction {
    let g = geometric(a);
    let curves = g.negative_curves();
    let permutation = a
        .representative
        .permutation_on(&curves)
        .expect("Frobenius permutes the negative curves");
    CurveAction {
        curves,
        n_exceptional: g.exceptional_curves.len(),
        permutation,
    }
}

fn geometric(a: &ArithmeticType) -> &'static GeometricType {
    let cl = classification(a.degree).expect("classified degree");
    cl.geometric_of(a)
}

/// Rational points of a degree-4 surface off its negative curves:
/// `N(q) = q^2 + t q + 1 - (n_fixed (q + 1) - I1) - I2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffCurveCount {
    pub label: String,
    pub type_no: Option<u32>,
    pub t: i32,
    pub n_fixed: u32,
    pub i1: u32,
    pub i2: u32,
    /// Coefficients of `q^2, q, 1`.
    pub poly: [i64; 3],
}

impl OffCurveCount {
    pub fn eval(&self, q: u64) -> i64 {
        let q = q as i64;
        self.poly[0] * q * q + self.poly[1] * q + self.poly[2]
    }
}

pub fn off_curve_count(a: &ArithmeticType) -> OffCurveCount {
    let act = curve_action(a);
    let fixed = act.fixed();
    let mut i1 = 0;
    for (k, &i) in fixed.iter().enumerate() {
        for &j in &fixed[k + 1..] {
            i1 += act.curves[i].dot(&act.curves[j]).max(0) as u32;
        }
    }
    let i2 = act
        .cycles()
        .iter()
        .filter(|c| c.len() == 2 && act.curves[c[0]].dot(&act.curves[c[1]]) == 1)
        .count() as u32;
    let t = a.representative.trace();
    let n = fixed.len() as u32;
    OffCurveCount {
        label: a.label(),
        type_no: a.type_no,
        t,
        n_fixed: n,
        i1,
        i2,
        poly: [
            1,
            (t - n as i32) as i64,
            1 - n as i64 + i1 as i64 - i2 as i64,
        ],
    }
}

/// Triples of pairwise meeting negative curves, and pairs meeting more than once.
pub fn concurrency_violations(g: &GeometricType) -> (Vec<[usize; 3]>, Vec<[usize; 2]>) {
    let v = g.negative_curves();
    let n = v.len();
    let mut tri = Vec::new();
    let mut multi = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = v[i].dot(&v[j]);
            if m > 1 {
                multi.push([i, j]);
            }
            if m < 1 {
                continue;
            }
            for k in j + 1..n {
                if v[i].dot(&v[k]) >= 1 && v[j].dot(&v[k]) >= 1 {
                    tri.push([i, j, k]);
                }
            }
        }
    }
    (tri, multi)
}

fn lattice_data(a: &ArithmeticType) -> LatticeData {
    LatticeData {
        degree: a.degree,
        frobenius: a.representative.clone(),
        basis: geometric(a).root_basis.clone(),
    }
}

/// Degree-3 type of the blowup of a rational point off every negative curve.
pub fn deg3_from_deg4(a: &ArithmeticType) -> Result<Option<u32>, BlowdownError> {
    Ok(blowup_at_point(&lattice_data(a), &[])?.identify()?.type_no)
}

/// One recomputed row of the blowup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupEntry {
    pub count: OffCurveCount,
    pub cycles: Vec<u32>,
    pub target: Option<u32>,
}

/// Rows for the 58 numbered degree-4 types.
pub fn blowup_table_recomputed() -> &'static [BlowupEntry] {
    static TABLE: OnceBox<Vec<BlowupEntry>> = OnceBox::new();
    TABLE.get_or_init(|| {
        let cl = classification(4).expect("degree 4");
        Box::new(
            cl.numbered()
                .into_iter()
                .map(|a| BlowupEntry {
                    count: off_curve_count(a),
                    cycles: curve_action(a).cycle_type(),
                    target: deg3_from_deg4(a).expect("blowup identifies"),
                })
                .collect(),
        )
    })
}

/// Differences from a transcribed row, by column name.
pub fn diff_row(e: &BlowupEntry, r: &BlowupRow) -> Vec<&'static str> {
    let c = &e.count;
    let mut out = Vec::new();
    let mut printed = r.cycles.clone();
    printed.sort_unstable_by(|a, b| b.cmp(a));
    if e.cycles != printed {
        out.push("cycles");
    }
    if c.t != r.t {
        out.push("t");
    }
    if c.n_fixed != r.n_fixed {
        out.push("n_fixed");
    }
    if c.i1 != r.i1 {
        out.push("I1");
    }
    if c.i2 != r.i2 {
        out.push("I2");
    }
    if c.poly != r.n_poly {
        out.push("N");
    }
    if e.target != Some(r.target) {
        out.push("type");
    }
    out
}

/// A degree-4 type blown up at a rational point on the curves `profile`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRoute {
    pub source: usize,
    pub profile: Vec<Class>,
    pub target: u32,
}

/// Every blowup of a degree-4 type at a rational point on one Frobenius-fixed
/// exceptional curve, or at the meeting point of a stable pair of them.
pub fn profile_routes() -> &'static [ProfileRoute] {
    static ROUTES: OnceBox<Vec<ProfileRoute>> = OnceBox::new();
    ROUTES.get_or_init(|| {
        let cl = classification(4).expect("degree 4");
        let mut out = Vec::new();
        for a in cl.types() {
            let g = cl.geometric_of(a);
            let w = &a.representative;
            let ex = &g.exceptional_curves;
            let mut profiles: Vec<Vec<Class>> = ex
                .iter()
                .filter(|c| w.apply(c) == **c)
                .map(|c| vec![*c])
                .collect();
            for (i, c) in ex.iter().enumerate() {
                for d in &ex[i + 1..] {
                    let p = vec![*c, *d];
                    if c.dot(d) == 1 && w.stabilizes(&p) {
                        profiles.push(p);
                    }
                }
            }
            let mut seen: Vec<(Option<u32>, Vec<i32>)> = Vec::new();
            for p in profiles {
                let key = (None, profile_signature(a, &p));
                if seen.iter().any(|s| s.1 == key.1) {
                    continue;
                }
                seen.push(key);
                let Ok(data) = blowup_at_point(&lattice_data(a), &p) else {
                    continue;
                };
                if let Ok(Some(t)) = data.identify().map(|t| t.type_no) {
                    out.push(ProfileRoute {
                        source: a.id,
                        profile: p,
                        target: t,
                    });
                }
            }
        }
        Box::new(out)
    })
}

/// Intersection data that determines the blowup up to symmetry: profile size,
/// how many profile curves are fixed, and the sorted meeting pattern of each
/// profile curve with the other negative curves.
fn profile_signature(a: &ArithmeticType, p: &[Class]) -> Vec<i32> {
    let act = curve_action(a);
    let mut sig = vec![
        p.len() as i32,
        p.iter()
            .filter(|c| a.representative.apply(c) == **c)
            .count() as i32,
    ];
    for c in p {
        let mut row: Vec<i32> = act
            .curves
            .iter()
            .enumerate()
            .filter(|(_, d)| c.dot(d) > 0 && !p.contains(d))
            .map(|(i, _)| {
                (i >= act.n_exceptional) as i32 * 4 + (act.permutation[i] == i) as i32 * 2 + 1
            })
            .collect();
        row.sort_unstable();
        sig.push(row.len() as i32);
        sig.extend(row);
    }
    sig
}

/// Rational points on the profile lying on no other negative curve, as a
/// polynomial in `q` (coefficients of `q^2, q, 1`).
pub fn profile_point_count(a: &ArithmeticType, p: &[Class]) -> [i64; 3] {
    match p.len() {
        0 => off_curve_count(a).poly,
        1 => {
            let c = p[0];
            let w = &a.representative;
            let g = geometric(a);
            let lines = g
                .exceptional_curves
                .iter()
                .filter(|d| **d != c && w.apply(d) == **d && c.dot(d) == 1)
                .count();
            let comps = g
                .components
                .iter()
                .filter(|k| w.stabilizes(k) && k.iter().map(|r| c.dot(r)).sum::<i32>() > 0)
                .count();
            [0, 1, 1 - (lines + comps) as i64]
        }
        _ => [0, 0, 1],
    }
}

/// A rational point of a concrete surface consistent with the chosen profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pair: QuadricPair,
    pub point: Vec<Fe>,
    /// Lines of the surface through the point, and whether each is rational.
    pub lines: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    /// Blow up a point off every negative curve of a degree-4 source.
    OffCurves { source: u32 },
    /// Six points of `P^2` in special position.
    Plane,
    /// Blow up a point on one or two exceptional curves of a degree-4 source.
    OnCurves { source: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg3Plan {
    pub route: Route,
    pub plan: BlowupPlan,
    /// Rational points of the source available to the route.
    pub available: i64,
    pub witness: Option<Witness>,
}

/// Why a type has no model over `F_q`.
///
/// Contracting a rational exceptional curve disjoint from the `(-2)`-curves
/// gives a degree-4 surface with a rational point off its negative curves. If
/// every such curve leads to a type whose count vanishes at `q`, no surface
/// of the degree-3 type exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExistence {
    pub type_no: u32,
    pub q: u64,
    /// Contracted curve, the degree-4 count of the result, and its value at `q`.
    pub contractions: Vec<(Class, OffCurveCount, i64)>,
}

/// Rational exceptional curves disjoint from the roots, with the counts of the
/// degree-4 surfaces they contract to.
pub fn contractions(
    a: &ArithmeticType,
    q: u64,
) -> Result<Vec<(Class, OffCurveCount, i64)>, BlowdownError> {
    let g = geometric(a);
    let data = lattice_data(a);
    let mut out = Vec::new();
    for e in &g.exceptional_curves {
        if a.representative.apply(e) != *e || g.root_basis.iter().any(|r| r.dot(e) != 0) {
            continue;
        }
        let down = contract(&data, e)?;
        let b = down.identify()?;
        let c = off_curve_count(b);
        let v = c.eval(q);
        out.push((*e, c, v));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Plan(Box<Deg3Plan>),
    NotRealizable(NonExistence),
    /// No explicit construction is attempted; the type is still classified.
    OutOfScope {
        type_no: u32,
        dynkin: String,
    },
}

/// Type constructed separately from degree 1 data.
pub const OUT_OF_SCOPE: u32 = 36;

fn source_pair(a: &ArithmeticType, q: u64, seed: u64) -> Result<QuadricPair, SynthError> {
    match (a.type_no, &a.signed) {
        (Some(n), _) => synthesize(n, q, seed),
        (None, Some(s)) => synthesize_ordinary(s, q, seed),
        (None, None) => Err(SynthError::UnknownType(0)),
    }
}

fn find_witness(pair: &QuadricPair, lines: &[bool]) -> Result<Option<Witness>, CountError> {
    let lf = LineFinder::new(pair)?;
    for x in lf.rational_points() {
        let Some(through) = lf.lines_through(&x)? else {
            continue;
        };
        let mut got: Vec<bool> = through.iter().map(|l| l.rational).collect();
        got.sort_unstable();
        if got == lines {
            return Ok(Some(Witness {
                pair: pair.clone(),
                point: x,
                lines: got,
            }));
        }
    }
    Ok(None)
}

fn profile_lines(a: &ArithmeticType, p: &[Class]) -> Vec<bool> {
    let mut v: Vec<bool> = p.iter().map(|c| a.representative.apply(c) == *c).collect();
    v.sort_unstable();
    v
}

fn surface_plan(
    a: &ArithmeticType,
    p: &[Class],
    type_no: u32,
    q: u64,
) -> Result<BlowupPlan, BlowdownError> {
    let data = blowup_at_point(&lattice_data(a), p)?;
    let t = data.identify()?;
    if t.type_no != Some(type_no) {
        return Err(TypeError::UnknownType(3, type_no).into());
    }
    Ok(BlowupPlan {
        degree: 3,
        type_no,
        q,
        construction: Construction::PointOnSurface {
            source: a.label(),
            profile: p.to_vec(),
        },
        frobenius: data.frobenius,
        basis: data.basis,
    })
}

/// Try the surface routes; returns a plan when the lattice count is positive
/// and a concrete source with a matching rational point exists.
fn via_surface(
    a: &ArithmeticType,
    p: &[Class],
    type_no: u32,
    q: u64,
    seed: u64,
) -> Result<Option<Deg3Plan>, BlowdownError> {
    let poly = profile_point_count(a, p);
    let q_ = q as i64;
    let available = poly[0] * q_ * q_ + poly[1] * q_ + poly[2];
    if available <= 0 {
        return Ok(None);
    }
    let pair = match source_pair(a, q, seed) {
        Ok(pair) => pair,
        Err(SynthError::NotRealizable { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let Some(witness) = find_witness(&pair, &profile_lines(a, p))? else {
        return Ok(None);
    };
    let route = match (p.is_empty(), a.type_no) {
        (true, Some(n)) => Route::OffCurves { source: n },
        _ => Route::OnCurves { source: a.label() },
    };
    Ok(Some(Deg3Plan {
        route,
        plan: surface_plan(a, p, type_no, q)?,
        available,
        witness: Some(witness),
    }))
}

/// A construction of the degree-3 type over `F_q` (odd `q`), or a proof that
/// none exists.
pub fn realizability(type_no: u32, q: u64, seed: u64) -> Result<Realization, BlowdownError> {
    let cl3 = classification(3)?;
    let target = cl3
        .by_number(type_no)
        .map_err(|_| BlowdownError::UnknownType(type_no))?;
    if type_no == OUT_OF_SCOPE {
        return Ok(Realization::OutOfScope {
            type_no,
            dynkin: cl3.geometric_of(target).dynkin.clone(),
        });
    }
    let cl4 = classification(4)?;
    let sources: Vec<&ArithmeticType> = cl4
        .numbered()
        .into_iter()
        .zip(blowup_table_recomputed())
        .filter(|(_, e)| e.target == Some(type_no))
        .map(|(a, _)| a)
        .collect();
    for a in &sources {
        if let Some(p) = via_surface(a, &[], type_no, q, seed)? {
            return Ok(Realization::Plan(Box::new(p)));
        }
    }
    match build_plan(3, type_no, q, seed) {
        Ok(plan) => {
            return Ok(Realization::Plan(Box::new(Deg3Plan {
                route: Route::Plane,
                plan,
                available: 1,
                witness: None,
            })))
        }
        Err(PlaneError::NoRecipe(..) | PlaneError::Exhausted(..)) => {}
        Err(e) => return Err(e.into()),
    }
    for r in profile_routes().iter().filter(|r| r.target == type_no) {
        if let Some(p) = via_surface(&cl4.arithmetic[r.source], &r.profile, type_no, q, seed)? {
            return Ok(Realization::Plan(Box::new(p)));
        }
    }
    let cs = contractions(target, q)?;
    if !cs.is_empty() && cs.iter().all(|c| c.2 == 0) {
        return Ok(Realization::NotRealizable(NonExistence {
            type_no,
            q,
            contractions: cs,
        }));
    }
    Err(BlowdownError::NoRoute(type_no, q))
}

#[cfg(test)]
mod tests;
