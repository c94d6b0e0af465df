//! JSON and CSV forms of the core objects.

use serde::{Deserialize, Serialize};

use delpezzo_core::blowdown::{BlowupEntry, NonExistence, Realization, Route, Witness};
use delpezzo_core::count::VerificationReport;
use delpezzo_core::gf::{prime_power, Fe, Field, Mat};
use delpezzo_core::golden::Cyclo;
use delpezzo_core::piclat::{Class, WeylElement};
use delpezzo_core::planeconf::{BlowupPlan, Construction, PointConfiguration};
use delpezzo_core::quadmod::QuadricPair;
use delpezzo_core::typetab::{ArithmeticType, Classification};
use delpezzo_core::zeta::ZetaData;

use crate::Error;

/// Parse `q` given as `"p^m"` or as an integer.
pub fn parse_q(s: &str) -> Result<u64, Error> {
    let s = s.trim();
    let q = match s.split_once('^') {
        Some((p, m)) => {
            let p: u64 = p.trim().parse().map_err(|_| Error::BadQ(s.into()))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::BadQ(s.into()))?;
            p.checked_pow(m).ok_or_else(|| Error::BadQ(s.into()))?
        }
        None => s.parse().map_err(|_| Error::BadQ(s.into()))?,
    };
    match prime_power(q) {
        Some(_) => Ok(q),
        None => Err(Error::BadQ(s.into())),
    }
}

fn class_vec(c: &Class, dim: usize) -> Vec<i32> {
    c.coords()[..dim].to_vec()
}

fn weyl_rows(w: &WeylElement) -> Vec<Vec<i32>> {
    w.matrix()
}

fn cyclo(c: &Cyclo) -> Vec<[u32; 2]> {
    c.iter().map(|&(n, m)| [n, m]).collect()
}

/// Canonical text of a matrix over `f`.
fn mat_text(f: &Field, m: &Mat) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|&x| f.format(x)).collect())
        .collect()
}

fn mat_parse(f: &Field, rows: &[Vec<String>]) -> Result<Mat, Error> {
    let rows: Result<Vec<Vec<Fe>>, _> = rows
        .iter()
        .map(|r| r.iter().map(|s| f.parse(s)).collect())
        .collect();
    Ok(Mat::from_rows(rows?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    #[serde(rename = "Q0")]
    pub q0: Vec<Vec<String>>,
    #[serde(rename = "Qinf")]
    pub qinf: Vec<Vec<String>>,
}

impl PairJson {
    pub fn from_pair(p: &QuadricPair) -> PairJson {
        let f = &p.field;
        PairJson {
            p: f.characteristic(),
            m: f.degree(),
            modulus: f.modulus().to_vec(),
            q0: mat_text(f, &p.q0),
            qinf: mat_text(f, &p.qinf),
        }
    }

    pub fn to_pair(&self) -> Result<QuadricPair, Error> {
        let f = Field::new(self.p, self.m)?;
        if f.modulus() != self.modulus.as_slice() {
            return Err(Error::Modulus(self.modulus.clone(), f.modulus().to_vec()));
        }
        let q0 = mat_parse(&f, &self.q0)?;
        let qinf = mat_parse(&f, &self.qinf)?;
        Ok(QuadricPair::new(f, q0, qinf)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    pub degree: u8,
    pub type_no: u32,
    pub dynkin: String,
    pub n_lines: usize,
    pub stab_order: usize,
    pub chi_pic: Vec<[u32; 2]>,
    pub chi_pic_s: Vec<[u32; 2]>,
    pub w_matrix: Vec<Vec<i32>>,
    pub brauer: Vec<u64>,
}

impl TypeRow {
    pub fn new(cl: &Classification, a: &ArithmeticType) -> TypeRow {
        let g = cl.geometric_of(a);
        TypeRow {
            degree: a.degree,
            type_no: a.type_no.unwrap_or(0),
            dynkin: g.dynkin.clone(),
            n_lines: g.n_lines(),
            stab_order: g.stabilizer.len(),
            chi_pic: cyclo(&a.chi_pic),
            chi_pic_s: cyclo(&a.chi_pic_s),
            w_matrix: weyl_rows(&a.representative),
            brauer: g.brauer.clone(),
        }
    }
}

fn cyclo_text(c: &[[u32; 2]]) -> String {
    c.iter()
        .map(|[n, m]| {
            if *m == 1 {
                format!("{n}")
            } else {
                format!("{n}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn type_rows(cl: &Classification) -> Vec<TypeRow> {
    cl.numbered()
        .into_iter()
        .map(|a| TypeRow::new(cl, a))
        .collect()
}

pub fn type_rows_csv(rows: &[TypeRow]) -> String {
    let mut s = String::from("degree,type_no,dynkin,n_lines,stab_order,chi_pic,chi_pic_s,brauer\n");
    for r in rows {
        let brauer = r
            .brauer
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.degree,
            r.type_no,
            r.dynkin,
            r.n_lines,
            r.stab_order,
            cyclo_text(&r.chi_pic),
            cyclo_text(&r.chi_pic_s),
            brauer
        ));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub degree: u8,
    pub type_no: u32,
    pub q: u64,
    pub counts_weak: Vec<i128>,
    pub counts_sing: Vec<i128>,
    pub zeta_denominator: Vec<i128>,
}

impl ZetaJson {
    pub fn new(z: &ZetaData, type_no: u32, q: u64, nmax: u32) -> Result<ZetaJson, Error> {
        let weak = (1..=nmax)
            .map(|n| z.count_weak(q, n))
            .collect::<Result<_, _>>()?;
        let sing = (1..=nmax)
            .map(|n| z.count_sing(q, n))
            .collect::<Result<_, _>>()?;
        Ok(ZetaJson {
            degree: z.degree,
            type_no,
            q,
            counts_weak: weak,
            counts_sing: sing,
            zeta_denominator: z.zeta_sing_denominator(q),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub measured: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub claimed: String,
    pub q: u64,
    pub segre: CheckJson,
    pub counts: Vec<(u32, CheckJson)>,
    pub singular: Vec<(u32, CheckJson)>,
    pub simple: CheckJson,
    pub pass: bool,
}

fn check<T: std::fmt::Debug + PartialEq>(m: &T, e: &T) -> CheckJson {
    CheckJson {
        measured: format!("{m:?}"),
        expected: format!("{e:?}"),
        ok: m == e,
    }
}

impl ReportJson {
    pub fn new(r: &VerificationReport) -> ReportJson {
        let segre = CheckJson {
            measured: r
                .segre
                .measured
                .as_ref()
                .map_or("none".into(), |s| s.to_string()),
            expected: r
                .segre
                .expected
                .as_ref()
                .map_or("none".into(), |s| s.to_string()),
            ok: r.segre.ok(),
        };
        ReportJson {
            claimed: r.claimed.clone(),
            q: r.q,
            segre,
            counts: r
                .counts
                .iter()
                .map(|(n, c)| (*n, check(&c.measured, &c.expected)))
                .collect(),
            singular: r
                .singular
                .iter()
                .map(|(n, c)| (*n, check(&c.measured, &c.expected)))
                .collect(),
            simple: check(&r.simple.measured, &r.simple.expected),
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    /// Degree over `F_q` of the field of definition.
    pub field_degree: usize,
    pub coordinates: Vec<String>,
    pub jet: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub points: Vec<PointJson>,
    pub lines: Vec<Vec<usize>>,
    pub conconic: bool,
}

impl ConfigurationJson {
    pub fn new(c: &PointConfiguration) -> ConfigurationJson {
        let f = &c.field;
        let inc = c.incidences();
        ConfigurationJson {
            p: f.characteristic(),
            m: f.degree(),
            modulus: f.modulus().to_vec(),
            points: c
                .chains
                .iter()
                .map(|ch| PointJson {
                    field_degree: c.chain_degree(ch),
                    coordinates: ch.base.iter().map(|&x| f.format(x)).collect(),
                    jet: ch.jet.iter().map(|&x| f.format(x)).collect(),
                })
                .collect(),
            lines: inc.lines,
            conconic: inc.conconic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionJson {
    Blowup {
        configuration: ConfigurationJson,
    },
    Contraction {
        configuration: ConfigurationJson,
        contracted: Vec<i32>,
    },
    PointOnSurface {
        source: String,
        profile: Vec<Vec<i32>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanJson {
    pub degree: u8,
    pub type_no: u32,
    pub q: u64,
    pub construction: ConstructionJson,
    pub weyl_matrix: Vec<Vec<i32>>,
    pub roots: Vec<Vec<i32>>,
    pub identified: String,
}

impl PlanJson {
    pub fn new(p: &BlowupPlan) -> Result<PlanJson, Error> {
        let dim = 10 - p.degree as usize;
        let construction = match &p.construction {
            Construction::Blowup(c) => ConstructionJson::Blowup {
                configuration: ConfigurationJson::new(c),
            },
            Construction::Contraction {
                configuration,
                contracted,
            } => ConstructionJson::Contraction {
                configuration: ConfigurationJson::new(configuration),
                contracted: class_vec(contracted, 11 - p.degree as usize),
            },
            Construction::PointOnSurface { source, profile } => ConstructionJson::PointOnSurface {
                source: source.clone(),
                profile: profile.iter().map(|c| class_vec(c, 6)).collect(),
            },
        };
        let identified = p
            .lattice_data()
            .identify()
            .map_err(delpezzo_core::planeconf::PlaneError::from)?
            .label();
        Ok(PlanJson {
            degree: p.degree,
            type_no: p.type_no,
            q: p.q,
            construction,
            weyl_matrix: weyl_rows(&p.frobenius),
            roots: p.basis.iter().map(|c| class_vec(c, dim)).collect(),
            identified,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRowJson {
    pub type_no: u32,
    pub cycles: Vec<u32>,
    pub t: i32,
    pub n_fixed: u32,
    pub i1: u32,
    pub i2: u32,
    pub n_poly: [i64; 3],
    pub target: Option<u32>,
    /// Columns that differ from the transcribed table.
    pub golden_diff: Vec<String>,
}

impl BlowupRowJson {
    pub fn new(e: &BlowupEntry, diff: &[&str]) -> BlowupRowJson {
        let c = &e.count;
        BlowupRowJson {
            type_no: c.type_no.unwrap_or(0),
            cycles: e.cycles.clone(),
            t: c.t,
            n_fixed: c.n_fixed,
            i1: c.i1,
            i2: c.i2,
            n_poly: c.poly,
            target: e.target,
            golden_diff: diff.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// `q^2 - 2q - 3` style text.
pub fn poly_text(p: &[i64; 3]) -> String {
    let mut s = String::new();
    for (k, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = ["q^2", "q", ""][k];
        let mag = c.unsigned_abs();
        let body = if mag == 1 && !mono.is_empty() {
            mono.to_string()
        } else {
            format!("{mag}{mono}")
        };
        if s.is_empty() {
            s = if c < 0 { format!("-{body}") } else { body };
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
            s.push_str(&body);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn blowup_table_csv(rows: &[BlowupRowJson]) -> String {
    let mut s = String::from("type_no,cycles,t,n_fixed,I1,I2,N,target,golden_diff\n");
    for r in rows {
        let cycles = r
            .cycles
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.type_no,
            cycles,
            r.t,
            r.n_fixed,
            r.i1,
            r.i2,
            poly_text(&r.n_poly),
            r.target.map_or(String::new(), |t| t.to_string()),
            r.golden_diff.join(" ")
        ));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub pair: PairJson,
    pub point: Vec<String>,
    pub lines_rational: Vec<bool>,
}

impl WitnessJson {
    pub fn new(w: &Witness) -> WitnessJson {
        let f = &w.pair.field;
        WitnessJson {
            pair: PairJson::from_pair(&w.pair),
            point: w.point.iter().map(|&x| f.format(x)).collect(),
            lines_rational: w.lines.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionJson {
    pub contracted: Vec<i32>,
    pub degree4_type: String,
    pub n_poly: [i64; 3],
    pub n_at_q: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RealizationJson {
    Plan {
        route: String,
        available: i64,
        plan: PlanJson,
        witness: Option<WitnessJson>,
    },
    NotRealizable {
        type_no: u32,
        q: u64,
        certificate: Vec<ContractionJson>,
    },
    OutOfScope {
        type_no: u32,
        dynkin: String,
        row: TypeRow,
    },
}

fn route_text(r: &Route) -> String {
    match r {
        Route::OffCurves { source } => format!("off-curves from degree-4 type {source}"),
        Route::Plane => "plane configuration".into(),
        Route::OnCurves { source } => format!("on exceptional curves of degree-4 type {source}"),
    }
}

fn certificate(c: &NonExistence) -> Vec<ContractionJson> {
    c.contractions
        .iter()
        .map(|(e, n, v)| ContractionJson {
            contracted: class_vec(e, 7),
            degree4_type: n.label.clone(),
            n_poly: n.poly,
            n_at_q: *v,
        })
        .collect()
}

impl RealizationJson {
    pub fn new(r: &Realization) -> Result<RealizationJson, Error> {
        Ok(match r {
            Realization::Plan(p) => RealizationJson::Plan {
                route: route_text(&p.route),
                available: p.available,
                plan: PlanJson::new(&p.plan)?,
                witness: p.witness.as_ref().map(WitnessJson::new),
            },
            Realization::NotRealizable(c) => RealizationJson::NotRealizable {
                type_no: c.type_no,
                q: c.q,
                certificate: certificate(c),
            },
            Realization::OutOfScope { type_no, dynkin } => {
                let cl = delpezzo_core::typetab::classification(3)?;
                let row = TypeRow::new(cl, cl.by_number(*type_no)?);
                RealizationJson::OutOfScope {
                    type_no: *type_no,
                    dynkin: dynkin.clone(),
                    row,
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use delpezzo_core::synth4::synthesize;

    #[test]
    fn q_forms() {
        assert_eq!(parse_q("3^2").unwrap(), 9);
        assert_eq!(parse_q("25").unwrap(), 25);
        assert!(parse_q("6").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("2^70").is_err());
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly_text(&[1, -2, -3]), "q^2 - 2q - 3");
        assert_eq!(poly_text(&[1, 0, 1]), "q^2 + 1");
        assert_eq!(poly_text(&[0, 1, -1]), "q - 1");
        assert_eq!(poly_text(&[0, 0, 0]), "0");
    }

    #[test]
    fn pair_round_trip() {
        let p = synthesize(23, 9, 4).unwrap();
        let j = PairJson::from_pair(&p);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"Q0\"") && text.contains("\"Qinf\""));
        let back: PairJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_pair().unwrap(), p);
    }

    #[test]
    fn wrong_modulus_is_rejected() {
        let p = synthesize(5, 9, 0).unwrap();
        let mut j = PairJson::from_pair(&p);
        j.modulus[0] += 1;
        assert!(matches!(j.to_pair(), Err(Error::Modulus(..))));
    }
}
