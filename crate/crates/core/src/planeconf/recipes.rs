use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{prime_power, Fe, Field, GfError};
use crate::piclat::Class;

use super::config::{frobenius_chain, Chain};

/// Random elements of the subfields of `F_{q^K}`.
pub(crate) struct Sampler {
    q: u64,
    k: u32,
    field: Field,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub(crate) fn new(q: u64, k: u32, seed: u64) -> Result<Sampler, GfError> {
        let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Ok(Sampler {
            q,
            k,
            field: Field::new(p, m * k)?,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub(crate) fn field(&self) -> &Field {
        &self.field
    }

    /// Uniform element of `F_{q^d}`; `d` divides `K`.
    fn any(&mut self, d: u32) -> Fe {
        assert_eq!(self.k % d, 0, "subfield degree divides the field degree");
        let sub = self.q.pow(d);
        let i = self.rng.random_range(0..sub);
        if i == 0 {
            return Fe::ZERO;
        }
        let f = &self.field;
        let step = (f.size() as u128 - 1) / (sub as u128 - 1);
        f.pow(f.primitive(), step * i as u128)
    }

    fn nonzero(&mut self, d: u32) -> Fe {
        loop {
            let a = self.any(d);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// The Galois orbit of `ch`, when it has exactly `size` members.
    fn orbit(&self, ch: Chain, size: u32) -> Option<Vec<Chain>> {
        let mut out = vec![ch];
        loop {
            let next = frobenius_chain(&self.field, self.q, out.last().expect("nonempty"));
            if next == out[0] {
                break;
            }
            out.push(next);
        }
        (out.len() == size as usize).then_some(out)
    }

    fn line_point(&self, m: Fe, b: Fe, x: Fe) -> Chain {
        let f = &self.field;
        Chain::point(x, f.add(f.mul(m, x), b))
    }

    /// Slope of the line from the affine point `p` to `r`.
    fn slope(&self, p: [Fe; 3], r: [Fe; 3]) -> Option<Fe> {
        let f = &self.field;
        let (dx, dy) = (
            f.sub(r[0], f.mul(p[0], r[2])),
            f.sub(r[1], f.mul(p[1], r[2])),
        );
        f.div(dy, dx).ok()
    }

    /// Uniform point of `P^2(F_{q^d})`.
    fn plane_point(&mut self, d: u32) -> Chain {
        loop {
            let v = [self.any(d), self.any(d), self.any(d)];
            if let Some(c) = Chain::projective(&self.field, v) {
                return c;
            }
        }
    }

    fn rational_point(&mut self) -> Chain {
        self.plane_point(1)
    }

    fn affine_point(&mut self) -> Chain {
        Chain::point(self.any(1), self.any(1))
    }

    /// Uniform point over `F_{q^d}` of the rational line `y = m x + b`.
    fn on_line(&mut self, m: Fe, b: Fe, d: u32) -> Chain {
        let n = self.q.pow(d);
        if self.rng.random_range(0..=n) == n {
            return Chain::projective(&self.field, [Fe::ONE, m, Fe::ZERO]).expect("nonzero");
        }
        let x = self.any(d);
        self.line_point(m, b, x)
    }
}

/// Jet coefficient constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    Any,
    Nonzero,
    Zero,
}

/// A family of configurations in `P^2`.
///
/// Orbit lists give the sizes of the Galois orbits of points (or chains) placed
/// on the named curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneRecipe {
    /// Three points on a rational line, then `extra` general rational points.
    Collinear { orbits: Vec<u32>, extra: usize },
    /// General chains of length two, then general rational points.
    Pairs { orbits: Vec<u32>, extra: usize },
    /// A rational chain of length two pointing at a rational point.
    TowardPoint,
    /// A rational chain along a germ with the given coefficients, then rational points.
    Germ { jet: Vec<Coef>, extra: usize },
    /// A rational chain and two points on a rational line through its base.
    ChainAndLine { jet: Vec<Coef>, orbits: Vec<u32> },
    /// Build `base`, then contract a rational exceptional class.
    Contract {
        base: alloc::boxed::Box<PlaneRecipe>,
        class: Class,
    },
    /// Six points on the conic `y = x^2`.
    Conic(Vec<u32>),
    /// Three points on each of two rational lines.
    TwoLines(Vec<u32>, Vec<u32>),
    /// Three points on each of two conjugate lines.
    ConjugateLines(Vec<u32>),
    /// Pairwise intersections of four lines, by orbits of lines.
    FourLines(Vec<u32>),
    /// Chains of length two based at three points of a rational line.
    PairsOnLine(Vec<u32>),
    /// A chain of length `len` along `y = x^2`, completed by points of the conic.
    ConicChain { len: usize },
    /// A general chain of length five and a rational point on its tangent line.
    TangentPoint,
    /// Three chains of length two, each pointing at the next base point.
    Cycle(u32),
}

pub(crate) struct Draft {
    pub chains: Vec<Chain>,
    /// Classes whose closure should be the effective roots.
    pub generators: Vec<Class>,
    pub contract: Option<Class>,
}

#[derive(Default)]
struct Builder {
    chains: Vec<Chain>,
    generators: Vec<Class>,
    next: usize,
}

impl Builder {
    /// Append a chain; returns the label of its base point.
    fn push(&mut self, ch: Chain) -> usize {
        let base = self.next + 1;
        for d in 1..ch.len() {
            self.generators.push(Class::diff(base + d - 1, base + d));
        }
        self.next += ch.len();
        self.chains.push(ch);
        base
    }

    fn push_all(&mut self, chs: Vec<Chain>) -> Vec<usize> {
        chs.into_iter().map(|c| self.push(c)).collect()
    }

    fn line(&mut self, l: &[usize]) {
        self.generators.push(Class::line3(l[0], l[1], l[2]));
    }

    fn conic(&mut self) {
        let mut c = 2 * Class::e(0);
        for i in 1..=self.next {
            c = c - Class::e(i);
        }
        self.generators.push(c);
    }

    fn done(self) -> Draft {
        Draft {
            chains: self.chains,
            generators: self.generators,
            contract: None,
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn lcm_all(v: &[u32]) -> u32 {
    v.iter().fold(1, |a, &b| lcm(a, b))
}

impl PlaneRecipe {
    /// Degree over `F_q` of the field holding all coordinates.
    pub fn field_degree(&self) -> u32 {
        use PlaneRecipe::*;
        match self {
            Collinear { orbits, .. } | Pairs { orbits, .. } | ChainAndLine { orbits, .. } => {
                lcm_all(orbits)
            }
            Conic(o) | FourLines(o) | PairsOnLine(o) => lcm_all(o),
            TwoLines(a, b) => lcm(lcm_all(a), lcm_all(b)),
            ConjugateLines(o) => lcm(2, lcm_all(o)),
            Contract { base, .. } => base.field_degree(),
            Cycle(k) => *k,
            TowardPoint | Germ { .. } | ConicChain { .. } | TangentPoint => 1,
        }
    }

    fn jet(s: &mut Sampler, pattern: &[Coef]) -> Vec<Fe> {
        pattern
            .iter()
            .map(|c| match c {
                Coef::Any => s.any(1),
                Coef::Nonzero => s.nonzero(1),
                Coef::Zero => Fe::ZERO,
            })
            .collect()
    }

    fn line_points(
        s: &mut Sampler,
        b: &mut Builder,
        m: Fe,
        c: Fe,
        orbits: &[u32],
    ) -> Option<Vec<usize>> {
        let mut labels = Vec::new();
        for &k in orbits {
            let p = s.on_line(m, c, k);
            let o = s.orbit(p, k)?;
            labels.extend(b.push_all(o));
        }
        Some(labels)
    }

    pub(crate) fn draw(&self, s: &mut Sampler) -> Option<Draft> {
        use PlaneRecipe::*;
        let mut b = Builder::default();
        match self {
            Collinear { orbits, extra } => {
                let (m, c) = (s.any(1), s.any(1));
                let l = Self::line_points(s, &mut b, m, c, orbits)?;
                b.line(&l);
                for _ in 0..*extra {
                    b.push(s.rational_point());
                }
            }
            Pairs { orbits, extra } => {
                for &k in orbits {
                    let ch = Chain::germ(s.any(k), s.any(k), vec![s.any(k)]);
                    b.push_all(s.orbit(ch, k)?);
                }
                for _ in 0..*extra {
                    b.push(s.rational_point());
                }
            }
            TowardPoint => {
                let p = s.affine_point();
                let r = s.rational_point();
                let a = s.slope(p.base, r.base)?;
                let i = b.push(Chain {
                    base: p.base,
                    jet: vec![a],
                });
                let j = b.push(r);
                b.line(&[i, i + 1, j]);
            }
            Germ { jet, extra } => {
                let a = Self::jet(s, jet);
                let collinear = jet.get(1) == Some(&Coef::Zero);
                b.push(Chain::germ(s.any(1), s.any(1), a));
                if collinear {
                    b.line(&[1, 2, 3]);
                }
                for _ in 0..*extra {
                    b.push(s.rational_point());
                }
            }
            ChainAndLine { jet, orbits } => {
                let a = Self::jet(s, jet);
                let (x0, y0) = (s.any(1), s.any(1));
                let m = s.any(1);
                if m == a[0] {
                    return None;
                }
                let f = s.field().clone();
                b.push(Chain::germ(x0, y0, a));
                let c = f.sub(y0, f.mul(m, x0));
                let l = Self::line_points(s, &mut b, m, c, orbits)?;
                b.line(&[1, l[0], l[1]]);
            }
            Contract { base, class } => {
                let mut d = base.draw(s)?;
                d.contract = Some(*class);
                return Some(d);
            }
            Conic(orbits) => {
                let f = s.field().clone();
                for &k in orbits {
                    let n = s.q.pow(k);
                    let p = if s.rng.random_range(0..=n) == n {
                        Chain::projective(&f, [Fe::ZERO, Fe::ONE, Fe::ZERO]).expect("nonzero")
                    } else {
                        let x = s.any(k);
                        Chain::point(x, f.mul(x, x))
                    };
                    b.push_all(s.orbit(p, k)?);
                }
                b.conic();
            }
            TwoLines(u, v) => {
                for o in [u, v] {
                    let (m, c) = (s.any(1), s.any(1));
                    let l = Self::line_points(s, &mut b, m, c, o)?;
                    b.line(&l);
                }
            }
            ConjugateLines(orbits) => {
                let (m, c) = (s.any(2), s.any(2));
                let f = s.field().clone();
                if f.pow_q(m, s.q) == m && f.pow_q(c, s.q) == c {
                    return None;
                }
                let (mut first, mut second) = (Vec::new(), Vec::new());
                for &k in orbits {
                    let x = s.any(k);
                    let o = s.orbit(s.line_point(m, c, x), k)?;
                    for (i, l) in b.push_all(o).into_iter().enumerate() {
                        if i % 2 == 0 {
                            first.push(l)
                        } else {
                            second.push(l)
                        }
                    }
                }
                b.line(&first);
                b.line(&second);
            }
            FourLines(orbits) => {
                let mut lines: Vec<[Fe; 2]> = Vec::new();
                for &k in orbits {
                    let l = Chain::point(s.any(k), s.any(k));
                    lines.extend(s.orbit(l, k)?.into_iter().map(|c| [c.base[0], c.base[1]]));
                }
                let f = s.field().clone();
                let mut on: Vec<Vec<usize>> = vec![Vec::new(); 4];
                for i in 0..4 {
                    for j in i + 1..4 {
                        let x = f
                            .div(
                                f.sub(lines[j][1], lines[i][1]),
                                f.sub(lines[i][0], lines[j][0]),
                            )
                            .ok()?;
                        let y = f.add(f.mul(lines[i][0], x), lines[i][1]);
                        let l = b.push(Chain::point(x, y));
                        on[i].push(l);
                        on[j].push(l);
                    }
                }
                for l in &on {
                    b.line(l);
                }
            }
            PairsOnLine(orbits) => {
                let (m, c) = (s.any(1), s.any(1));
                let mut bases = Vec::new();
                for &k in orbits {
                    let x = s.any(k);
                    let p = s.line_point(m, c, x);
                    let ch = Chain {
                        base: p.base,
                        jet: vec![s.any(k)],
                    };
                    bases.extend(b.push_all(s.orbit(ch, k)?));
                }
                b.line(&bases);
            }
            ConicChain { len } => {
                let f = s.field().clone();
                let x0 = s.any(1);
                let mut jet = vec![Fe::ZERO; len - 1];
                jet[0] = f.add(x0, x0);
                if *len > 2 {
                    jet[1] = Fe::ONE;
                }
                b.push(Chain::germ(x0, f.mul(x0, x0), jet));
                while b.next < 6 {
                    let x = s.any(1);
                    b.push(Chain::point(x, f.mul(x, x)));
                }
                b.conic();
            }
            TangentPoint => {
                let f = s.field().clone();
                let a = Self::jet(s, &[Coef::Any, Coef::Nonzero, Coef::Any, Coef::Any]);
                let (x0, y0) = (s.any(1), s.any(1));
                let x = s.any(1);
                let y = f.add(y0, f.mul(a[0], f.sub(x, x0)));
                b.push(Chain::germ(x0, y0, a));
                let j = b.push(Chain::point(x, y));
                b.line(&[1, 2, j]);
            }
            Cycle(k) => {
                let ps: Vec<Chain> = if *k == 1 {
                    (0..3).map(|_| s.affine_point()).collect()
                } else {
                    let p = Chain::point(s.any(3), s.any(3));
                    s.orbit(p, 3)?
                };
                let mut labels = Vec::new();
                for i in 0..3 {
                    let a = s.slope(ps[i].base, ps[(i + 1) % 3].base)?;
                    labels.push(b.push(Chain {
                        base: ps[i].base,
                        jet: vec![a],
                    }));
                }
                for i in 0..3 {
                    b.line(&[labels[i], labels[i] + 1, labels[(i + 1) % 3]]);
                }
            }
        }
        Some(b.done())
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Degree-3 type of each six-point family, in catalogue order.
const DEG3_TYPES: [u32; 42] = [
    11, 10, 8, 9, 5, 7, 6, 4, 3, 2, 1, 27, 29, 26, 24, 23, 22, 25, 28, 30, 49, 48, 46, 47, 45, 35,
    64, 33, 63, 31, 62, 60, 61, 70, 77, 60, 72, 73, 69, 72, 74, 76,
];

/// Six-point families with the degree-3 type each produces in general position.
pub fn plane_recipes() -> Vec<(u32, PlaneRecipe)> {
    DEG3_TYPES.into_iter().zip(families()).collect()
}

fn families() -> Vec<PlaneRecipe> {
    use Coef::*;
    use PlaneRecipe::*;
    let mut out = Vec::new();
    for o in partitions(6, 6) {
        out.push(Conic(o));
    }
    let threes = partitions(3, 3);
    for (i, a) in threes.iter().enumerate() {
        for c in &threes[i..] {
            out.push(TwoLines(a.clone(), c.clone()));
        }
    }
    for o in [vec![2, 2, 2], vec![4, 2], vec![6]] {
        out.push(ConjugateLines(o));
    }
    for o in partitions(4, 4) {
        out.push(FourLines(o));
    }
    for o in &threes {
        out.push(Pairs {
            orbits: o.clone(),
            extra: 0,
        });
        out.push(PairsOnLine(o.clone()));
    }
    for o in [vec![1, 1], vec![2]] {
        out.push(ChainAndLine {
            jet: vec![Any, Nonzero, Any],
            orbits: o,
        });
    }
    out.push(Germ {
        jet: vec![Any, Nonzero, Any, Any, Any],
        extra: 0,
    });
    out.push(Germ {
        jet: vec![Any, Zero, Nonzero, Any, Any],
        extra: 0,
    });
    out.push(Germ {
        jet: vec![Any, Nonzero, Any, Any],
        extra: 1,
    });
    out.push(Germ {
        jet: vec![Any, Zero, Nonzero, Any],
        extra: 1,
    });
    out.push(ConicChain { len: 6 });
    out.push(ConicChain { len: 5 });
    out.push(TangentPoint);
    out.push(Cycle(1));
    out.push(Cycle(3));
    out
}

fn deg6(type_no: u32) -> Option<PlaneRecipe> {
    use Coef::*;
    use PlaneRecipe::*;
    Some(match type_no {
        1 => Pairs {
            orbits: vec![1],
            extra: 1,
        },
        2 => Contract {
            base: alloc::boxed::Box::new(deg5(2)?),
            class: Class::line2(3, 4),
        },
        3 => Collinear {
            orbits: vec![1, 1, 1],
            extra: 0,
        },
        4 => Collinear {
            orbits: vec![2, 1],
            extra: 0,
        },
        5 => Collinear {
            orbits: vec![3],
            extra: 0,
        },
        6 => TowardPoint,
        7 => Germ {
            jet: vec![Any, Nonzero],
            extra: 0,
        },
        8 => Contract {
            base: alloc::boxed::Box::new(deg5(7)?),
            class: Class::line2(1, 2),
        },
        9 => Germ {
            jet: vec![Any, Zero],
            extra: 0,
        },
        _ => return None,
    })
}

fn deg5(type_no: u32) -> Option<PlaneRecipe> {
    use Coef::*;
    use PlaneRecipe::*;
    Some(match type_no {
        1 => Collinear {
            orbits: vec![1, 1, 1],
            extra: 1,
        },
        2 => Collinear {
            orbits: vec![2, 1],
            extra: 1,
        },
        3 => Collinear {
            orbits: vec![3],
            extra: 1,
        },
        4 => Pairs {
            orbits: vec![1, 1],
            extra: 0,
        },
        5 => Pairs {
            orbits: vec![2],
            extra: 0,
        },
        6 => ChainAndLine {
            jet: vec![Any],
            orbits: vec![1, 1],
        },
        7 => ChainAndLine {
            jet: vec![Any],
            orbits: vec![2],
        },
        8 => Germ {
            jet: vec![Any, Zero],
            extra: 1,
        },
        9 => Germ {
            jet: vec![Any, Nonzero, Any],
            extra: 0,
        },
        10 => Germ {
            jet: vec![Any, Zero, Nonzero],
            extra: 0,
        },
        _ => return None,
    })
}

pub(crate) fn recipes_for(degree: u8, type_no: u32) -> Vec<PlaneRecipe> {
    match degree {
        6 => deg6(type_no).into_iter().collect(),
        5 => deg5(type_no).into_iter().collect(),
        3 => plane_recipes()
            .into_iter()
            .filter(|e| e.0 == type_no)
            .map(|e| e.1)
            .collect(),
        _ => Vec::new(),
    }
}
