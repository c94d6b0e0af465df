//! Geometric types (Weyl orbits of root bases) and arithmetic types
//! (conjugacy classes in their stabilizers), numbered as in the reference tables.

pub mod dynkin;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::golden::{self, Cyclo};
use crate::piclat::{
    char_poly, char_poly_on, cyclotomic_factorization, orthogonal_complement, quotient_torsion,
    Class, Lattice, LatticeError, WeylElement, WeylGroup,
};
use crate::quadmod::SegreSymbol;

pub use dynkin::Component;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("class is not a root")]
    NotRoot,
    #[error("roots do not form a basis of a root subsystem")]
    NotBasis,
    #[error("element does not stabilize the root basis")]
    NotStabilized,
    #[error("matrix is not in the Weyl group")]
    NotInWeylGroup,
    #[error("ordinary surfaces carry no type number in degree {0}")]
    Ordinary(u8),
    #[error("no type {1} in degree {0}")]
    UnknownType(u8, u32),
    #[error("type numbering is ambiguous: {0}")]
    Ambiguous(String),
}

/// A Weyl orbit of root bases.
#[derive(Clone, Debug)]
pub struct GeometricType {
    pub id: usize,
    pub degree: u8,
    /// Canonical representative of the orbit.
    pub root_basis: Vec<Class>,
    pub components: Vec<Vec<Class>>,
    pub dynkin_components: Vec<Component>,
    pub dynkin: String,
    pub exceptional_curves: Vec<Class>,
    pub orbit_size: usize,
    /// Indices into the Weyl group, increasing.
    pub stabilizer: Vec<u32>,
    /// Ids of the arithmetic types, in table order.
    pub arithmetic: Vec<usize>,
    pub brauer: Vec<u64>,
    class_of: BTreeMap<u32, usize>,
}

impl GeometricType {
    pub fn is_ordinary(&self) -> bool {
        self.root_basis.is_empty()
    }

    pub fn n_lines(&self) -> usize {
        self.exceptional_curves.len()
    }

    /// Negative curves: exceptional curves followed by the root basis.
    pub fn negative_curves(&self) -> Vec<Class> {
        let mut v = self.exceptional_curves.clone();
        v.extend_from_slice(&self.root_basis);
        v
    }

    pub fn negative_curve_graph(&self) -> NegativeCurveGraph {
        let vertices = self.negative_curves();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let m = vertices[i].dot(&vertices[j]);
                if m > 0 {
                    edges.push((i, j, m as u32));
                }
            }
        }
        NegativeCurveGraph {
            n_exceptional: self.exceptional_curves.len(),
            vertices,
            edges,
        }
    }
}

/// Vertices are exceptional curves (dots) then `(-2)`-curves (circles);
/// edges carry intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCurveGraph {
    pub vertices: Vec<Class>,
    pub n_exceptional: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl NegativeCurveGraph {
    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|e| e.0 == a && e.1 == b)
            .map_or(0, |e| e.2)
    }
}

/// A conjugacy class of the stabilizer of a root basis.
#[derive(Clone, Debug)]
pub struct ArithmeticType {
    pub id: usize,
    pub degree: u8,
    pub geometric: usize,
    /// Table number; `None` for ordinary surfaces.
    pub type_no: Option<u32>,
    /// Position among the arithmetic types of its geometric type.
    pub ordinal: usize,
    /// First class member in the canonical Weyl order.
    pub representative: WeylElement,
    pub class_size: usize,
    pub chi_pic: Cyclo,
    pub chi_root: Cyclo,
    pub chi_pic_s: Cyclo,
    /// Degree 4 only: signed cycle type on the five couples of conic classes.
    pub signed: Option<Vec<i32>>,
    /// Degree 4 only: the same, restricted to couples orthogonal to every root.
    pub simple: Option<Vec<i32>>,
    /// Cycle lengths on the negative curves, decreasing.
    pub curve_cycles: Vec<u32>,
}

impl ArithmeticType {
    /// `"17"` for numbered types, `"o3"` for the fourth ordinary type.
    pub fn label(&self) -> String {
        match self.type_no {
            Some(n) => alloc::format!("{n}"),
            None => alloc::format!("o{}", self.ordinal),
        }
    }
}

/// Everything known about one degree.
pub struct Classification {
    pub lattice: Lattice,
    pub group: WeylGroup,
    /// Roots in the fixed order used for representatives: positive roots
    /// `E_i - E_j`, `E_0 - E_i - E_j - E_k`, `2E_0 - sum E_i`, then their negatives.
    pub roots: Vec<Class>,
    pub exceptional: Vec<Class>,
    pub geometric: Vec<GeometricType>,
    pub arithmetic: Vec<ArithmeticType>,
    root_index: BTreeMap<Class, u8>,
    perms: Vec<u8>,
}

fn nice_roots(lattice: &Lattice) -> Vec<Class> {
    let r = lattice.r();
    let mut pos = Vec::new();
    for i in 1..=r {
        for j in i + 1..=r {
            pos.push(Class::diff(i, j));
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            for k in j + 1..=r {
                pos.push(Class::line3(i, j, k));
            }
        }
    }
    if r == 6 {
        let mut c = Class::e(0);
        c.0[0] = 2;
        for i in 1..=6 {
            c.0[i] = -1;
        }
        pos.push(c);
    }
    let neg: Vec<Class> = pos.iter().map(|c| -*c).collect();
    pos.extend(neg);
    pos
}

/// Determinant of `-Gram`, by fraction-free elimination.
fn neg_gram_det(s: &[Class]) -> i64 {
    let n = s.len();
    let mut a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -(s[i].dot(&s[j]) as i64)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `prod (T^l - 1)` over the cycle lengths, as cyclotomic factors.
fn permutation_cyclo(lengths: &[u32]) -> Cyclo {
    let mut m: BTreeMap<u32, u32> = BTreeMap::new();
    for &l in lengths {
        for d in 1..=l {
            if l % d == 0 {
                *m.entry(d).or_default() += 1;
            }
        }
    }
    m.into_iter().collect()
}

fn cyclo_product(a: &Cyclo, b: &Cyclo) -> Cyclo {
    let mut m: BTreeMap<u32, u32> = BTreeMap::new();
    for &(n, k) in a.iter().chain(b) {
        *m.entry(n).or_default() += k;
    }
    m.into_iter().collect()
}

/// Signed cycle type of `w` on the couples `{C_i, C_i'}` with index in `couples`.
fn signed_type(w: &WeylElement, conics: &[Class], couples: &[usize]) -> Vec<i32> {
    let couple_of = |c: &Class| conics.iter().position(|d| d == c).map(|p| p / 2);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &i in couples {
        if seen.contains(&i) {
            continue;
        }
        let start = conics[2 * i];
        let mut c = start;
        let mut len = 0;
        loop {
            seen.insert(couple_of(&c).expect("w permutes the conic classes"));
            c = w.apply(&c);
            len += 1;
            if couple_of(&c) == Some(i) {
                break;
            }
        }
        out.push(if c == start { len } else { -len });
    }
    out.sort_by(|a: &i32, b: &i32| b.abs().cmp(&a.abs()).then(b.cmp(a)));
    out
}

fn sorted_signed(v: &[i32]) -> Vec<i32> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.abs().cmp(&a.abs()).then(b.cmp(a)));
    v
}

impl Classification {
    fn build(degree: u8) -> Result<Classification, TypeError> {
        let lattice = Lattice::new(degree)?;
        let group = lattice.weyl_group();
        let roots = nice_roots(&lattice);
        debug_assert_eq!(roots.len(), lattice.roots().len());
        let root_index: BTreeMap<Class, u8> = roots
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i as u8))
            .collect();
        let nr = roots.len();
        let mut perms = Vec::with_capacity(group.order() * nr);
        for w in group.elements() {
            for c in &roots {
                perms.push(root_index[&w.apply(c)]);
            }
        }
        let mut cl = Classification {
            exceptional: lattice.exceptional_classes(),
            lattice,
            group,
            roots,
            geometric: Vec::new(),
            arithmetic: Vec::new(),
            root_index,
            perms,
        };
        cl.enumerate_geometric()?;
        cl.enumerate_arithmetic()?;
        cl.number_types()?;
        Ok(cl)
    }

    pub fn degree(&self) -> u8 {
        self.lattice.degree()
    }

    fn perm(&self, w: usize) -> &[u8] {
        let nr = self.roots.len();
        &self.perms[w * nr..(w + 1) * nr]
    }

    fn image(&self, w: usize, set: &[u8]) -> Vec<u8> {
        let p = self.perm(w);
        let mut v: Vec<u8> = set.iter().map(|&i| p[i as usize]).collect();
        v.sort();
        v
    }

    fn classes_of(&self, set: &[u8]) -> Vec<Class> {
        set.iter().map(|&i| self.roots[i as usize]).collect()
    }

    fn enumerate_geometric(&mut self) -> Result<(), TypeError> {
        // Orbits of root bases, grown one root at a time from orbit representatives.
        let mut known: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut reps: Vec<(Vec<u8>, usize)> = Vec::new();
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        known.insert(Vec::new());
        reps.push((Vec::new(), 1));
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                for a in 0..self.roots.len() as u8 {
                    if s.contains(&a) {
                        continue;
                    }
                    let ra = self.roots[a as usize];
                    if !s
                        .iter()
                        .all(|&b| matches!(ra.dot(&self.roots[b as usize]), 0 | 1))
                    {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(a);
                    t.sort();
                    if known.contains(&t) || neg_gram_det(&self.classes_of(&t)) <= 0 {
                        continue;
                    }
                    let mut orbit = BTreeSet::new();
                    for w in 0..self.group.order() {
                        orbit.insert(self.image(w, &t));
                    }
                    let rep = orbit.iter().next().cloned().expect("nonempty orbit");
                    reps.push((rep.clone(), orbit.len()));
                    known.extend(orbit);
                    next.push(rep);
                }
            }
            level = next;
        }
        for (rep, orbit_size) in reps {
            let basis = self.classes_of(&rep);
            let comps = dynkin::components(&basis);
            let mut parts = Vec::new();
            let mut components = Vec::new();
            for c in &comps {
                let cls: Vec<Class> = c.iter().map(|&i| basis[i]).collect();
                parts.push(dynkin::classify(&cls).ok_or(TypeError::NotBasis)?);
                components.push(cls);
            }
            let exceptional_curves: Vec<Class> = self
                .exceptional
                .iter()
                .filter(|d| basis.iter().all(|r| d.dot(r) >= 0))
                .copied()
                .collect();
            let stabilizer: Vec<u32> = (0..self.group.order())
                .filter(|&w| self.image(w, &rep) == rep)
                .map(|w| w as u32)
                .collect();
            let brauer =
                quotient_torsion(&basis, &self.lattice.simple_roots(), self.lattice.dim())?;
            self.geometric.push(GeometricType {
                id: 0,
                degree: self.degree(),
                dynkin: dynkin::label(&parts),
                dynkin_components: parts,
                components,
                root_basis: basis,
                exceptional_curves,
                orbit_size,
                stabilizer,
                arithmetic: Vec::new(),
                brauer,
                class_of: BTreeMap::new(),
            });
        }
        // Table order: ordinary first, then the order of the reference rows.
        let rows = golden::type_table(self.degree());
        let mut order: Vec<(&str, u32)> = Vec::new();
        for r in &rows {
            if !order.contains(&(r.dynkin, r.n_lines)) {
                order.push((r.dynkin, r.n_lines));
            }
        }
        let pos = |g: &GeometricType| {
            if g.is_ordinary() {
                return 0;
            }
            order
                .iter()
                .position(|&(d, n)| d == g.dynkin && n as usize == g.n_lines())
                .map_or(usize::MAX, |p| p + 1)
        };
        self.geometric
            .sort_by_key(|g| (pos(g), g.root_basis.len(), g.dynkin.clone(), g.n_lines()));
        for (i, g) in self.geometric.iter_mut().enumerate() {
            g.id = i;
        }
        Ok(())
    }

    /// A generating set of a subgroup, chosen greedily in canonical order.
    fn generators(&self, sub: &[u32]) -> Vec<u32> {
        let n = self.group.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut gens = Vec::new();
        for &s in sub {
            if inside[s as usize] {
                continue;
            }
            gens.push(s);
            let mut i = 0;
            while i < members.len() {
                let m = *self.group.get(members[i] as usize);
                for &g in &gens {
                    let x = self.group.get(g as usize).compose(&m);
                    let xi = self.group.index_of(&x).expect("closed") as u32;
                    if !inside[xi as usize] {
                        inside[xi as usize] = true;
                        members.push(xi);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    fn enumerate_arithmetic(&mut self) -> Result<(), TypeError> {
        let conics = if self.degree() == 4 {
            self.lattice.conic_classes()
        } else {
            Vec::new()
        };
        for gi in 0..self.geometric.len() {
            let g = &self.geometric[gi];
            let gens = self.generators(&g.stabilizer);
            let gen_el: Vec<(WeylElement, WeylElement)> = gens
                .iter()
                .map(|&i| {
                    let e = *self.group.get(i as usize);
                    (e, e.inverse())
                })
                .collect();
            let in_stab: BTreeSet<u32> = g.stabilizer.iter().copied().collect();
            let mut class_of: BTreeMap<u32, usize> = BTreeMap::new();
            let mut classes: Vec<Vec<u32>> = Vec::new();
            for &s in &g.stabilizer {
                if class_of.contains_key(&s) {
                    continue;
                }
                let id = classes.len();
                let mut members = vec![s];
                class_of.insert(s, id);
                let mut i = 0;
                while i < members.len() {
                    let m = *self.group.get(members[i] as usize);
                    for (e, ei) in &gen_el {
                        let x = e.compose(&m).compose(ei);
                        let xi = self.group.index_of(&x).expect("closed") as u32;
                        assert!(in_stab.contains(&xi), "stabilizer is a subgroup");
                        if let alloc::collections::btree_map::Entry::Vacant(v) = class_of.entry(xi)
                        {
                            v.insert(id);
                            members.push(xi);
                        }
                    }
                    i += 1;
                }
                classes.push(members);
            }
            let basis = g.root_basis.clone();
            let curves = g.negative_curves();
            let complement = orthogonal_complement(&basis, self.lattice.dim());
            let orth_couples: Vec<usize> = (0..conics.len() / 2)
                .filter(|&i| basis.iter().all(|r| conics[2 * i].dot(r) == 0))
                .collect();
            let mut ids = Vec::new();
            for (ordinal, members) in classes.iter().enumerate() {
                let rep_index = *members.iter().min().expect("nonempty class");
                let w = *self.group.get(rep_index as usize);
                let inv = self.group.index_of(&w.inverse()).expect("closed") as u32;
                assert_eq!(
                    class_of[&inv], ordinal,
                    "classes are closed under inversion"
                );
                let chi_pic = cyclotomic_factorization(&char_poly(&w))?;
                let root_perm = w.permutation_on(&basis).ok_or(TypeError::NotStabilized)?;
                let chi_root = permutation_cyclo(&cycle_lengths(&root_perm));
                let chi_pic_s = if complement.is_empty() {
                    Vec::new()
                } else {
                    cyclotomic_factorization(&char_poly_on(&w, &complement)?)?
                };
                assert_eq!(cyclo_product(&chi_root, &chi_pic_s), chi_pic);
                let curve_perm = w.permutation_on(&curves).ok_or(TypeError::NotStabilized)?;
                let (signed, simple) = if self.degree() == 4 {
                    let all: Vec<usize> = (0..5).collect();
                    (
                        Some(signed_type(&w, &conics, &all)),
                        Some(signed_type(&w, &conics, &orth_couples)),
                    )
                } else {
                    (None, None)
                };
                let id = self.arithmetic.len();
                ids.push(id);
                self.arithmetic.push(ArithmeticType {
                    id,
                    degree: self.degree(),
                    geometric: gi,
                    type_no: None,
                    ordinal,
                    representative: w,
                    class_size: members.len(),
                    chi_pic,
                    chi_root,
                    chi_pic_s,
                    signed,
                    simple,
                    curve_cycles: cycle_lengths(&curve_perm),
                });
            }
            let g = &mut self.geometric[gi];
            g.class_of = class_of.into_iter().map(|(w, c)| (w, ids[c])).collect();
            g.arithmetic = ids;
        }
        Ok(())
    }

    fn number_types(&mut self) -> Result<(), TypeError> {
        let rows = golden::type_table(self.degree());
        for gi in 0..self.geometric.len() {
            if self.geometric[gi].is_ordinary() {
                continue;
            }
            let (dynkin, n_lines) = (
                self.geometric[gi].dynkin.clone(),
                self.geometric[gi].n_lines(),
            );
            let block: Vec<&golden::TypeTableRow> = rows
                .iter()
                .filter(|r| r.dynkin == dynkin && r.n_lines as usize == n_lines)
                .collect();
            let ids = self.geometric[gi].arithmetic.clone();
            if block.len() != ids.len() {
                return Err(TypeError::Ambiguous(alloc::format!(
                    "{dynkin}({n_lines}): {} classes, {} rows",
                    ids.len(),
                    block.len()
                )));
            }
            let fits = |a: &ArithmeticType, r: &golden::TypeTableRow| {
                a.chi_pic == r.chi_pic
                    && a.chi_pic_s == r.chi_pic_s
                    && r.signed
                        .as_ref()
                        .is_none_or(|s| a.signed.as_deref() == Some(&sorted_signed(s)[..]))
                    && r.simple
                        .as_ref()
                        .is_none_or(|s| a.simple.as_deref() == Some(&sorted_signed(s)[..]))
            };
            let mut numbered = Vec::new();
            for &id in &ids {
                let hits: Vec<u32> = block
                    .iter()
                    .filter(|r| fits(&self.arithmetic[id], r))
                    .map(|r| r.type_no)
                    .collect();
                match hits.as_slice() {
                    [n] => numbered.push((*n, id)),
                    _ => {
                        return Err(TypeError::Ambiguous(alloc::format!(
                            "{dynkin}({n_lines}) class {} fits rows {hits:?}",
                            self.arithmetic[id].ordinal
                        )))
                    }
                }
            }
            numbered.sort();
            if numbered.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(TypeError::Ambiguous(alloc::format!(
                    "{dynkin}({n_lines}) rows reused"
                )));
            }
            for (ordinal, &(n, id)) in numbered.iter().enumerate() {
                self.arithmetic[id].type_no = Some(n);
                self.arithmetic[id].ordinal = ordinal;
            }
            self.geometric[gi].arithmetic = numbered.iter().map(|&(_, id)| id).collect();
        }
        Ok(())
    }

    /// Arithmetic types in table order: ordinary types first, then by number.
    pub fn types(&self) -> impl Iterator<Item = &ArithmeticType> {
        self.geometric
            .iter()
            .flat_map(|g| g.arithmetic.iter().map(|&i| &self.arithmetic[i]))
    }

    /// Numbered arithmetic types, ordered by number.
    pub fn numbered(&self) -> Vec<&ArithmeticType> {
        let mut v: Vec<&ArithmeticType> = self
            .arithmetic
            .iter()
            .filter(|a| a.type_no.is_some())
            .collect();
        v.sort_by_key(|a| a.type_no);
        v
    }

    pub fn by_number(&self, type_no: u32) -> Result<&ArithmeticType, TypeError> {
        self.arithmetic
            .iter()
            .find(|a| a.type_no == Some(type_no))
            .ok_or(TypeError::UnknownType(self.degree(), type_no))
    }

    pub fn geometric_of(&self, a: &ArithmeticType) -> &GeometricType {
        &self.geometric[a.geometric]
    }

    pub fn ordinary(&self) -> &GeometricType {
        &self.geometric[0]
    }

    pub fn root_position(&self, c: &Class) -> Option<usize> {
        self.root_index.get(c).map(|&i| i as usize)
    }

    /// Find `g` in the Weyl group with `g(set) = target` as sets.
    pub fn transporter(
        &self,
        set: &[Class],
        target: &[Class],
    ) -> Result<Option<WeylElement>, TypeError> {
        let idx = |s: &[Class]| -> Result<Vec<u8>, TypeError> {
            let mut v: Vec<u8> = s
                .iter()
                .map(|c| self.root_index.get(c).copied().ok_or(TypeError::NotRoot))
                .collect::<Result<_, _>>()?;
            v.sort();
            Ok(v)
        };
        let (a, b) = (idx(set)?, idx(target)?);
        Ok((0..self.group.order())
            .find(|&w| self.image(w, &a) == b)
            .map(|w| *self.group.get(w)))
    }

    /// The geometric type of a root basis.
    pub fn geometric_type_of(
        &self,
        basis: &[Class],
    ) -> Result<(&GeometricType, WeylElement), TypeError> {
        for g in &self.geometric {
            if g.root_basis.len() == basis.len() && g.n_lines() == self.count_lines(basis) {
                if let Some(t) = self.transporter(basis, &g.root_basis)? {
                    return Ok((g, t));
                }
            }
        }
        Err(TypeError::NotBasis)
    }

    fn count_lines(&self, basis: &[Class]) -> usize {
        self.exceptional
            .iter()
            .filter(|d| basis.iter().all(|r| d.dot(r) >= 0))
            .count()
    }

    /// The arithmetic type of a Frobenius element `w` stabilizing the root basis `basis`.
    pub fn identify(&self, w: &WeylElement, basis: &[Class]) -> Result<&ArithmeticType, TypeError> {
        if w.dim() != self.lattice.dim() || !self.group.contains(w) {
            return Err(TypeError::NotInWeylGroup);
        }
        if basis.iter().any(|r| !self.root_index.contains_key(r)) {
            return Err(TypeError::NotRoot);
        }
        let pairwise = basis
            .iter()
            .enumerate()
            .all(|(i, a)| basis[i + 1..].iter().all(|b| matches!(a.dot(b), 0 | 1)));
        if !pairwise || neg_gram_det(basis) <= 0 {
            return Err(TypeError::NotBasis);
        }
        if !w.stabilizes(basis) {
            return Err(TypeError::NotStabilized);
        }
        if basis.is_empty() && self.degree() != 4 {
            return Err(TypeError::Ordinary(self.degree()));
        }
        let (g, t) = self.geometric_type_of(basis)?;
        let conj = w.conjugate_by(&t);
        let i = self
            .group
            .index_of(&conj)
            .ok_or(TypeError::NotInWeylGroup)? as u32;
        let id = *g.class_of.get(&i).ok_or(TypeError::NotStabilized)?;
        Ok(&self.arithmetic[id])
    }

    /// `(N_X, a, b, c)` for a degree-4 geometric type: the number of conic
    /// classes meeting every root nonnegatively, and the split read off the
    /// Segre symbol.
    pub fn count_p1_maps(&self, g: &GeometricType) -> Option<P1Maps> {
        if self.degree() != 4 {
            return None;
        }
        let conics = self.lattice.conic_classes();
        let n_x = conics
            .iter()
            .filter(|c| g.root_basis.iter().all(|r| c.dot(r) >= 0))
            .count();
        let n_orth = conics
            .iter()
            .filter(|c| g.root_basis.iter().all(|r| c.dot(r) == 0))
            .count();
        let symbol = segre_symbol_of(g)?;
        let (a, b, c) = symbol.morphism_split();
        Some(P1Maps {
            n_x,
            n_orthogonal: n_orth,
            a,
            b,
            c,
        })
    }
}

/// Morphism count to `P^1` and its split by root multiplicity and rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P1Maps {
    pub n_x: usize,
    /// Classes with `C.R = 0` for every root.
    pub n_orthogonal: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// The Segre symbol attached to a degree-4 geometric type.
pub fn segre_symbol_of(g: &GeometricType) -> Option<SegreSymbol> {
    if g.degree != 4 {
        return None;
    }
    golden::segre_table()
        .into_iter()
        .find(|r| r.dynkin == g.dynkin && r.n_lines as usize == g.n_lines())
        .and_then(|r| SegreSymbol::parse(r.symbol).ok())
}

static D3: OnceBox<Classification> = OnceBox::new();
static D4: OnceBox<Classification> = OnceBox::new();
static D5: OnceBox<Classification> = OnceBox::new();
static D6: OnceBox<Classification> = OnceBox::new();

/// The classification for `degree`, computed once and cached.
pub fn classification(degree: u8) -> Result<&'static Classification, TypeError> {
    let cell = match degree {
        3 => &D3,
        4 => &D4,
        5 => &D5,
        6 => &D6,
        d => return Err(LatticeError::UnsupportedDegree(d).into()),
    };
    if let Some(c) = cell.get() {
        return Ok(c);
    }
    let built = Classification::build(degree)?;
    Ok(cell.get_or_init(|| Box::new(built)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_3_reproduces_type_table() {
        let c = classification(3).unwrap();
        assert_eq!(c.group.order(), 51840);
        assert_eq!(c.group.elements().iter().map(|w| w.order()).max(), Some(12));
        assert_eq!(c.geometric.len(), 21);
        assert_eq!(c.numbered().len(), 77);
        assert_eq!(c.ordinary().arithmetic.len(), 25);
        for row in golden::type_table(3) {
            let a = c.by_number(row.type_no).unwrap();
            let g = c.geometric_of(a);
            assert_eq!(
                (g.dynkin.as_str(), g.n_lines()),
                (row.dynkin, row.n_lines as usize)
            );
            assert_eq!(
                g.stabilizer.len(),
                row.stab_order as usize,
                "row {}",
                row.type_no
            );
            assert_eq!(a.chi_pic, row.chi_pic, "row {}", row.type_no);
            assert_eq!(a.chi_pic_s, row.chi_pic_s, "row {}", row.type_no);
        }
        let a1 = c.geometric.iter().find(|g| g.dynkin == "A1").unwrap();
        assert_eq!(a1.n_lines(), 21);
        let e6 = c.geometric.iter().find(|g| g.dynkin == "E6").unwrap();
        assert_eq!(e6.stabilizer.len(), 1);
        let three_a2 = c.geometric.iter().find(|g| g.dynkin == "3A2").unwrap();
        assert_eq!(three_a2.brauer, vec![3]);
        for g in &c.geometric {
            assert_eq!(g.orbit_size * g.stabilizer.len(), 51840);
        }
        let id = WeylElement::identity(7);
        assert_eq!(c.identify(&id, &[]).unwrap_err(), TypeError::Ordinary(3));
        for a in c.numbered() {
            assert_eq!(
                c.identify(&a.representative, &c.geometric_of(a).root_basis)
                    .unwrap()
                    .id,
                a.id
            );
        }
    }

    #[test]
    fn curve_cycles_match_blowup_table_check() {
        let c = classification(4).unwrap();
        for row in golden::blowup_table() {
            let a = c.by_number(row.type_no).unwrap();
            let nontrivial: Vec<u32> = a.curve_cycles.iter().copied().filter(|&l| l > 1).collect();
            // The printed words for types 2 and 3 are exchanged relative to their signed types.
            let printed = match row.type_no {
                2 => golden::blowup_table()[2].cycles.clone(),
                3 => golden::blowup_table()[1].cycles.clone(),
                _ => row.cycles.clone(),
            };
            assert_eq!(nontrivial, printed, "type {}", row.type_no);
            let fixed = a.curve_cycles.iter().filter(|&&l| l == 1).count() as u32;
            assert_eq!(
                fixed + nontrivial.iter().sum::<u32>(),
                c.geometric_of(a).negative_curves().len() as u32
            );
        }
    }

    fn numbered_count(d: u8) -> usize {
        classification(d).unwrap().numbered().len()
    }

    #[test]
    fn type_counts_degree_6_5_4() {
        assert_eq!(numbered_count(6), 9);
        assert_eq!(numbered_count(5), 10);
        assert_eq!(numbered_count(4), 58);
    }

    #[test]
    fn geometric_type_counts() {
        for (d, n) in [(6, 5), (5, 6), (4, 15)] {
            let c = classification(d).unwrap();
            assert_eq!(c.geometric.len(), n + 1, "degree {d}");
        }
    }

    #[test]
    fn orbit_stabilizer() {
        for d in [4, 5, 6] {
            let c = classification(d).unwrap();
            for g in &c.geometric {
                assert_eq!(g.orbit_size * g.stabilizer.len(), c.group.order());
            }
        }
    }

    #[test]
    fn exceptional_curve_counts() {
        let c = classification(4).unwrap();
        assert_eq!(c.ordinary().n_lines(), 16);
        let two_a1: Vec<usize> = c
            .geometric
            .iter()
            .filter(|g| g.dynkin == "2A1")
            .map(|g| g.n_lines())
            .collect();
        assert_eq!(two_a1, vec![9, 8]);
    }

    #[test]
    fn stabilizer_orders() {
        let c = classification(5).unwrap();
        let a1 = c.geometric.iter().find(|g| g.dynkin == "A1").unwrap();
        assert_eq!(a1.stabilizer.len(), 6);
        let c = classification(4).unwrap();
        let a1 = c.geometric.iter().find(|g| g.dynkin == "A1").unwrap();
        assert_eq!(a1.stabilizer.len(), 48);
    }

    #[test]
    fn type_table_rows_reproduced() {
        for d in [4, 5, 6] {
            let c = classification(d).unwrap();
            for row in golden::type_table(d) {
                let a = c.by_number(row.type_no).unwrap();
                let g = c.geometric_of(a);
                assert_eq!(g.dynkin, row.dynkin);
                assert_eq!(g.n_lines(), row.n_lines as usize);
                assert_eq!(g.stabilizer.len(), row.stab_order as usize);
                assert_eq!(a.chi_pic, row.chi_pic);
                assert_eq!(a.chi_pic_s, row.chi_pic_s);
            }
        }
    }

    #[test]
    fn ordinary_degree_4_graph() {
        let c = classification(4).unwrap();
        let g = c.ordinary().negative_curve_graph();
        for i in 0..16 {
            let m: Vec<u32> = (0..16)
                .filter(|&j| j != i)
                .map(|j| g.multiplicity(i, j))
                .collect();
            assert_eq!(m.iter().filter(|&&x| x == 1).count(), 5);
            assert_eq!(m.iter().filter(|&&x| x >= 2).count(), 0);
        }
    }

    #[test]
    fn degree_6_a1_graphs() {
        let c = classification(6).unwrap();
        let a14 = &c.geometric[1];
        assert_eq!((a14.dynkin.as_str(), a14.n_lines()), ("A1", 4));
        let g = a14.negative_curve_graph();
        assert_eq!(g.vertices.len(), 5);
        // A path: four edges, endpoints of degree one.
        assert_eq!(g.edges.len(), 4);
        let a13 = &c.geometric[2];
        assert_eq!(a13.root_basis, vec![Class::line3(1, 2, 3)]);
        let g = a13.negative_curve_graph();
        let circle = g.vertices.len() - 1;
        assert_eq!(
            (0..circle)
                .filter(|&i| g.multiplicity(i, circle) == 1)
                .count(),
            3
        );
    }

    #[test]
    fn degree_5_a1_graph() {
        let c = classification(5).unwrap();
        let g = &c.geometric[1];
        assert_eq!(g.n_lines(), 7);
        assert_eq!(g.negative_curve_graph().vertices.len(), 8);
    }

    #[test]
    fn morphism_count_identity() {
        let c = classification(4).unwrap();
        for g in &c.geometric {
            let m = c.count_p1_maps(g).unwrap();
            assert_eq!(m.n_x, 2 * m.a + 2 * m.b + m.c, "{}", g.dynkin);
            assert_eq!(m.n_orthogonal, 2 * m.a, "{}", g.dynkin);
        }
        let ordinary = c.count_p1_maps(c.ordinary()).unwrap();
        assert_eq!(
            (ordinary.n_x, ordinary.a, ordinary.b, ordinary.c),
            (10, 5, 0, 0)
        );
        let a1 = c.count_p1_maps(&c.geometric[1]).unwrap();
        assert_eq!((a1.n_x, a1.a, a1.b, a1.c), (8, 3, 1, 0));
    }

    #[test]
    fn brauer_trivial_in_high_degree() {
        for d in [5, 6] {
            for g in &classification(d).unwrap().geometric {
                assert!(g.brauer.is_empty());
            }
        }
        let c = classification(4).unwrap();
        let d5 = c.geometric.iter().find(|g| g.dynkin == "D5").unwrap();
        assert!(d5.brauer.is_empty());
    }

    #[test]
    fn identify_examples() {
        let c = classification(4).unwrap();
        let basis = [Class::diff(2, 3), Class::diff(4, 5)];
        let id = WeylElement::identity(6);
        assert_eq!(c.identify(&id, &basis).unwrap().type_no, Some(11));
        let c6 = classification(6).unwrap();
        let s = c6.lattice.reflection(&Class::line3(1, 2, 3));
        assert_eq!(
            c6.identify(&s, &[Class::diff(1, 2)]).unwrap().type_no,
            Some(2)
        );
    }

    #[test]
    fn identify_round_trips() {
        for d in [4, 5, 6] {
            let c = classification(d).unwrap();
            for a in c.numbered() {
                let g = c.geometric_of(a);
                assert_eq!(
                    c.identify(&a.representative, &g.root_basis).unwrap().id,
                    a.id
                );
                // Transport to another orbit member and back.
                let h = *c.group.get(c.group.order() / 3);
                let moved: Vec<Class> = g.root_basis.iter().map(|r| h.apply(r)).collect();
                let w = a.representative.conjugate_by(&h);
                assert_eq!(c.identify(&w, &moved).unwrap().id, a.id);
            }
        }
    }

    #[test]
    fn identify_rejects_bad_input() {
        let c = classification(4).unwrap();
        let id = WeylElement::identity(6);
        assert_eq!(
            c.identify(&id, &[Class::e(1)]).unwrap_err(),
            TypeError::NotRoot
        );
        let s = c.lattice.reflection(&Class::diff(1, 2));
        assert_eq!(
            c.identify(&s, &[Class::diff(2, 3)]).unwrap_err(),
            TypeError::NotStabilized
        );
        let c6 = classification(6).unwrap();
        assert_eq!(
            c6.identify(&WeylElement::identity(4), &[]).unwrap_err(),
            TypeError::Ordinary(6)
        );
    }
}
