use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

const RECIPES: &str = include_str!("recipes.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Square,
    NonSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Numbered(u32),
    /// Ordinary surface with this signed type.
    Ordinary(Vec<i32>),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Numbered(n) => n.to_string(),
            Target::Ordinary(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                format!("ordinary {}", parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOrbit {
    pub name: char,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaSpec {
    Free,
    Fixed(i64),
    /// Annihilator of another summand evaluated at a rational root.
    AnnihilatorAt {
        summand: usize,
        root: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSpec {
    /// `(root orbit, exponent)`.
    pub factors: Vec<(usize, u32)>,
    pub delta: DeltaSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    Delta { summand: usize, root: usize },
    Norm { summand: usize },
    RootDiff(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub factors: Vec<Factor>,
    pub class: SquareClass,
}

impl Constraint {
    /// Degree of the field the quantity lives in.
    pub fn degree(&self, r: &Recipe) -> usize {
        self.factors
            .iter()
            .flat_map(|f| match *f {
                Factor::Delta { root, .. } => alloc::vec![root],
                Factor::Norm { .. } => alloc::vec![],
                Factor::RootDiff(a, b) => alloc::vec![a, b],
            })
            .map(|i| r.roots[i].degree)
            .max()
            .unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub target: Target,
    pub roots: Vec<RootOrbit>,
    pub summands: Vec<SummandSpec>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecipeError {
    #[error("malformed recipe: {0}")]
    Syntax(String),
    #[error("contradictory square classes for {0}")]
    Inconsistent(String),
    #[error("signed type {0:?} does not partition 5 with an even number of bars")]
    BadSignedType(Vec<i32>),
}

fn syntax(s: &str) -> RecipeError {
    RecipeError::Syntax(s.into())
}

impl Recipe {
    pub fn parse(line: &str) -> Result<Recipe, RecipeError> {
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let [no, roots, summands, classes] = cols[..] else {
            return Err(syntax(line));
        };
        let type_no: u32 = no.parse().map_err(|_| syntax(no))?;
        let mut orbits = Vec::new();
        for tok in roots.split_whitespace() {
            let (name, d) = tok.split_once(':').ok_or_else(|| syntax(tok))?;
            let name = name.chars().next().ok_or_else(|| syntax(tok))?;
            orbits.push(RootOrbit {
                name,
                degree: d.parse().map_err(|_| syntax(tok))?,
            });
        }
        let root = |c: &str| -> Result<usize, RecipeError> {
            let ch = c.chars().next().ok_or_else(|| syntax(c))?;
            orbits
                .iter()
                .position(|o| o.name == ch && c.len() == 1)
                .ok_or_else(|| syntax(c))
        };
        let index = |c: &str| -> Result<usize, RecipeError> { c.parse().map_err(|_| syntax(c)) };
        let mut specs = Vec::new();
        for tok in summands.split_whitespace() {
            let (ann, delta) = tok.split_once('/').ok_or_else(|| syntax(tok))?;
            let mut factors = Vec::new();
            for f in ann.split('.') {
                let (r, e) = f.split_once('^').unwrap_or((f, "1"));
                factors.push((root(r)?, e.parse().map_err(|_| syntax(f))?));
            }
            let delta = if delta == "*" {
                DeltaSpec::Free
            } else if let Some(rest) = delta.strip_prefix('F') {
                let (s, r) = rest.split_once('@').ok_or_else(|| syntax(delta))?;
                DeltaSpec::AnnihilatorAt {
                    summand: index(s)?,
                    root: root(r)?,
                }
            } else {
                DeltaSpec::Fixed(delta.parse().map_err(|_| syntax(delta))?)
            };
            specs.push(SummandSpec { factors, delta });
        }
        let mut constraints = Vec::new();
        for tok in classes.split_whitespace() {
            let (expr, class) = tok.split_once('=').ok_or_else(|| syntax(tok))?;
            let class = match class {
                "S" => SquareClass::Square,
                "N" => SquareClass::NonSquare,
                _ => return Err(syntax(tok)),
            };
            let mut factors = Vec::new();
            for f in expr.split('*') {
                let fct = if let Some(rest) = f.strip_prefix('d') {
                    let (s, r) = rest.split_once('@').ok_or_else(|| syntax(f))?;
                    Factor::Delta {
                        summand: index(s)?,
                        root: root(r)?,
                    }
                } else if let Some(s) = f.strip_prefix('N') {
                    Factor::Norm { summand: index(s)? }
                } else if let Some(inner) = f.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
                    let (a, b) = inner.split_once('-').ok_or_else(|| syntax(f))?;
                    Factor::RootDiff(root(a)?, root(b)?)
                } else {
                    return Err(syntax(f));
                };
                factors.push(fct);
            }
            constraints.push(Constraint { factors, class });
        }
        let r = Recipe {
            target: Target::Numbered(type_no),
            roots: orbits,
            summands: specs,
            constraints,
        };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<(), RecipeError> {
        let label = self.target.label();
        if self.degree() != 5 {
            return Err(RecipeError::Syntax(format!(
                "{label}: summand degrees add to {}",
                self.degree()
            )));
        }
        let n = self.summands.len();
        for s in &self.summands {
            if let DeltaSpec::AnnihilatorAt { summand, root } = s.delta {
                if summand >= n || self.roots[root].degree != 1 {
                    return Err(RecipeError::Syntax(label));
                }
            }
        }
        for c in &self.constraints {
            let mut big = c.factors.iter().filter_map(|f| match *f {
                Factor::Delta { summand, root } => {
                    let present = self
                        .summands
                        .get(summand)
                        .is_some_and(|s| s.factors.iter().any(|x| x.0 == root));
                    Some((present, self.roots[root].degree))
                }
                Factor::Norm { summand } => Some((summand < n, 1)),
                Factor::RootDiff(a, b) => {
                    Some((true, self.roots[a].degree.max(self.roots[b].degree)))
                }
            });
            if big.any(|(present, _)| !present) {
                return Err(RecipeError::Syntax(label));
            }
        }
        Ok(())
    }

    /// Total degree of the module.
    pub fn degree(&self) -> usize {
        self.summands
            .iter()
            .flat_map(|s| {
                s.factors
                    .iter()
                    .map(|&(r, e)| self.roots[r].degree * e as usize)
            })
            .sum()
    }

    /// Factorization pattern of `P` over `F_q` as `(degree, multiplicity)`.
    pub fn pattern(&self) -> Vec<(usize, u32)> {
        let mut mult = alloc::vec![0u32; self.roots.len()];
        for s in &self.summands {
            for &(r, e) in &s.factors {
                mult[r] += e;
            }
        }
        let mut v: Vec<(usize, u32)> = self
            .roots
            .iter()
            .zip(mult)
            .map(|(o, m)| (o.degree, m))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn check_consistent(&self) -> Result<(), RecipeError> {
        let mut seen: BTreeMap<Vec<Factor>, SquareClass> = BTreeMap::new();
        for c in &self.constraints {
            let mut key = c.factors.clone();
            key.sort();
            if let Some(prev) = seen.insert(key, c.class) {
                if prev != c.class {
                    return Err(RecipeError::Inconsistent(self.target.label()));
                }
            }
        }
        Ok(())
    }
}

/// All 58 numbered recipes, in order.
pub fn recipes() -> Vec<Recipe> {
    RECIPES
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Recipe::parse(l).expect("shipped recipe parses"))
        .collect()
}

pub fn recipe(type_no: u32) -> Option<Recipe> {
    recipes()
        .into_iter()
        .find(|r| r.target == Target::Numbered(type_no))
}

/// Cyclic module on `P` with the root classes read from the signed type and
/// `N_P(δ)` a square.
pub fn ordinary_recipe(signed: &[i32]) -> Result<Recipe, RecipeError> {
    let bad = || RecipeError::BadSignedType(signed.to_vec());
    if signed.iter().map(|x| x.unsigned_abs()).sum::<u32>() != 5
        || signed.contains(&0)
        || signed.iter().filter(|&&x| x < 0).count() % 2 == 1
    {
        return Err(bad());
    }
    let names = ['a', 'b', 'c', 'd', 'e'];
    let roots: Vec<RootOrbit> = signed
        .iter()
        .zip(names)
        .map(|(&s, name)| RootOrbit {
            name,
            degree: s.unsigned_abs() as usize,
        })
        .collect();
    let mut constraints: Vec<Constraint> = signed
        .iter()
        .enumerate()
        .map(|(i, &s)| Constraint {
            factors: alloc::vec![Factor::Delta {
                summand: 0,
                root: i
            }],
            class: if s > 0 {
                SquareClass::Square
            } else {
                SquareClass::NonSquare
            },
        })
        .collect();
    constraints.push(Constraint {
        factors: alloc::vec![Factor::Norm { summand: 0 }],
        class: SquareClass::Square,
    });
    let r = Recipe {
        target: Target::Ordinary(signed.to_vec()),
        summands: alloc::vec![SummandSpec {
            factors: (0..roots.len()).map(|i| (i, 1)).collect(),
            delta: DeltaSpec::Free
        }],
        roots,
        constraints,
    };
    r.validate()?;
    Ok(r)
}
