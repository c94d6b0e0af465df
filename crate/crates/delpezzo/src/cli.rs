//! `delpezzo` subcommands.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use delpezzo_core::blowdown::{blowup_table_recomputed, diff_row, realizability, Realization};
use delpezzo_core::count::verify_surface;
use delpezzo_core::golden::blowup_table;
use delpezzo_core::planeconf::build_plan;
use delpezzo_core::synth4::synthesize;
use delpezzo_core::typetab::classification;
use delpezzo_core::zeta::ZetaData;

use crate::checks;
use crate::format::{
    blowup_table_csv, parse_q, type_rows, type_rows_csv, BlowupRowJson, PairJson, PlanJson,
    RealizationJson, ReportJson, ZetaJson,
};
use crate::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Arithmetic types of singular del Pezzo surfaces over finite fields"
)]
pub struct Cli {
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of arithmetic types of one degree.
    Enumerate {
        #[arg(long)]
        degree: u8,
    },
    /// Point counts and zeta denominator of a type.
    Zeta {
        #[arg(long)]
        degree: u8,
        #[arg(long = "type")]
        type_no: u32,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
    /// Pair of quadrics realizing a degree-4 type.
    Synthesize {
        #[arg(long, default_value_t = 4)]
        degree: u8,
        #[arg(long = "type", required_unless_present = "all")]
        type_no: Option<u32>,
        /// Every type 1 to 58 into the `--out` directory, with a manifest.
        #[arg(long, conflicts_with = "type_no")]
        all: bool,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a pair against a claimed degree-4 type.
    Verify {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: u8,
        #[arg(long = "type")]
        type_no: u32,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Plane configuration realizing a type of degree 3, 5 or 6.
    BlowupPlan {
        #[arg(long)]
        degree: u8,
        #[arg(long = "type")]
        type_no: u32,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recomputed blowup table of the degree-4 types.
    Deg3Table,
    /// Construction of a degree-3 type, or a certificate that none exists.
    Realize {
        #[arg(long, default_value_t = 3)]
        degree: u8,
        #[arg(long = "type")]
        type_no: u32,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-validate the independent computations.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parse `argv` and run; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn json_only(cli: &Cli) -> Result<(), Error> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Error::Usage("this subcommand only writes JSON".into())),
    }
}

fn need_degree(d: u8, allowed: &[u8]) -> Result<(), Error> {
    if allowed.contains(&d) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "degree must be one of {allowed:?}, got {d}"
        )))
    }
}

fn need_odd(q: u64) -> Result<(), Error> {
    if q % 2 == 1 {
        Ok(())
    } else {
        Err(Error::Usage(format!("quadric pencils need odd q, got {q}")))
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    match &cli.command {
        Command::Enumerate { degree } => {
            need_degree(*degree, &[3, 4, 5, 6])?;
            let rows = type_rows(classification(*degree)?);
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => type_rows_csv(&rows),
            };
            emit(cli, out, &text)?;
        }
        Command::Zeta {
            degree,
            type_no,
            q,
            nmax,
        } => {
            json_only(cli)?;
            need_degree(*degree, &[3, 4, 5, 6])?;
            if !(1..=12).contains(nmax) {
                return Err(Error::Usage("nmax must lie in 1..=12".into()));
            }
            let q = parse_q(q)?;
            let cl = classification(*degree)?;
            let z = ZetaData::new(cl, cl.by_number(*type_no)?);
            emit(cli, out, &json(&ZetaJson::new(&z, *type_no, q, *nmax)?)?)?;
        }
        Command::Synthesize {
            degree,
            type_no,
            all,
            q,
            seed,
        } => {
            json_only(cli)?;
            need_degree(*degree, &[4])?;
            let q = parse_q(q)?;
            need_odd(q)?;
            if *all {
                let dir = cli
                    .out
                    .as_ref()
                    .ok_or_else(|| Error::Usage("--all needs --out DIR".into()))?;
                synthesize_all(dir, q, *seed)?;
            } else {
                let t = type_no.expect("clap requires --type without --all");
                emit(
                    cli,
                    out,
                    &json(&PairJson::from_pair(&synthesize(t, q, *seed)?))?,
                )?;
            }
        }
        Command::Verify {
            pair,
            degree,
            type_no,
            nmax,
        } => {
            json_only(cli)?;
            need_degree(*degree, &[4])?;
            if !(1..=6).contains(nmax) {
                return Err(Error::Usage("nmax must lie in 1..=6".into()));
            }
            let text = fs::read_to_string(pair)?;
            let p: PairJson = serde_json::from_str(&text)?;
            let p = p.to_pair()?;
            let cl = classification(4)?;
            let r = verify_surface(&p, cl, cl.by_number(*type_no)?, *nmax)?;
            emit(cli, out, &json(&ReportJson::new(&r))?)?;
            return Ok(if r.pass { 0 } else { 1 });
        }
        Command::BlowupPlan {
            degree,
            type_no,
            q,
            seed,
        } => {
            json_only(cli)?;
            need_degree(*degree, &[3, 5, 6])?;
            let q = parse_q(q)?;
            classification(*degree)?.by_number(*type_no)?;
            let plan = build_plan(*degree, *type_no, q, *seed)?;
            emit(cli, out, &json(&PlanJson::new(&plan)?)?)?;
        }
        Command::Deg3Table => {
            let golden = blowup_table();
            let rows: Vec<BlowupRowJson> = blowup_table_recomputed()
                .iter()
                .zip(&golden)
                .map(|(e, r)| BlowupRowJson::new(e, &diff_row(e, r)))
                .collect();
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => blowup_table_csv(&rows),
            };
            emit(cli, out, &text)?;
        }
        Command::Realize {
            degree,
            type_no,
            q,
            seed,
        } => {
            json_only(cli)?;
            need_degree(*degree, &[3])?;
            let q = parse_q(q)?;
            need_odd(q)?;
            let r = realizability(*type_no, q, *seed)?;
            emit(cli, out, &json(&RealizationJson::new(&r)?)?)?;
            return Ok(if matches!(r, Realization::NotRealizable(_)) {
                1
            } else {
                0
            });
        }
        Command::Selftest { seed } => {
            let outcomes = [
                checks::lattice_constants()?,
                checks::structural_identities()?,
                checks::counter_agreement(20, *seed)?,
                checks::discriminant_formulas(200, *seed)?,
                checks::off_line_points(*seed)?,
                checks::plane_plans(&[3, 5], *seed)?,
                checks::synthesis_end_to_end(&[5], 3)?,
            ];
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&o.line());
                text.push('\n');
            }
            emit(cli, out, &text)?;
            return Ok(if outcomes.iter().all(|o| o.pass) {
                0
            } else {
                1
            });
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ManifestEntry {
    type_no: u32,
    file: String,
}

#[derive(Serialize)]
struct Manifest {
    q: u64,
    seed: u64,
    pairs: Vec<ManifestEntry>,
}

fn synthesize_all(dir: &Path, q: u64, seed: u64) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    let mut pairs = Vec::new();
    for t in 1..=58 {
        let file = format!("type_{t:02}.json");
        fs::write(
            dir.join(&file),
            json(&PairJson::from_pair(&synthesize(t, q, seed)?))?,
        )?;
        pairs.push(ManifestEntry { type_no: t, file });
    }
    fs::write(
        dir.join("manifest.json"),
        json(&Manifest { q, seed, pairs })?,
    )?;
    Ok(())
}

/// Run a fixed set of subcommands writing every artifact under `dir`.
pub fn pipeline(dir: &Path, seed: u64) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    let s = seed.to_string();
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let mut jobs: Vec<Vec<String>> = Vec::new();
    for d in ["3", "4", "5", "6"] {
        jobs.push(vec![
            "enumerate".into(),
            "--degree".into(),
            d.into(),
            "--out".into(),
            path(&format!("types_{d}.json")),
        ]);
        jobs.push(vec![
            "enumerate".into(),
            "--degree".into(),
            d.into(),
            "--format".into(),
            "csv".into(),
            "--out".into(),
            path(&format!("types_{d}.csv")),
        ]);
    }
    jobs.push(vec![
        "deg3-table".into(),
        "--out".into(),
        path("blowup_table.json"),
    ]);
    jobs.push(vec![
        "deg3-table".into(),
        "--format".into(),
        "csv".into(),
        "--out".into(),
        path("blowup.csv"),
    ]);
    jobs.push(vec![
        "synthesize".into(),
        "--all".into(),
        "--q".into(),
        "5".into(),
        "--seed".into(),
        s.clone(),
        "--out".into(),
        path("pairs_5"),
    ]);
    for (d, t) in [("4", "21"), ("3", "17"), ("5", "3")] {
        jobs.push(vec![
            "zeta".into(),
            "--degree".into(),
            d.into(),
            "--type".into(),
            t.into(),
            "--q".into(),
            "3^2".into(),
            "--out".into(),
            path(&format!("zeta_{d}_{t}.json")),
        ]);
    }
    for (d, t, q) in [("6", "7", "2^2"), ("5", "10", "7"), ("3", "70", "5")] {
        jobs.push(vec![
            "blowup-plan".into(),
            "--degree".into(),
            d.into(),
            "--type".into(),
            t.into(),
            "--q".into(),
            q.into(),
            "--seed".into(),
            s.clone(),
            "--out".into(),
            path(&format!("plan_{d}_{t}.json")),
        ]);
    }
    for (t, q) in [
        ("1", "3"),
        ("17", "3"),
        ("39", "5"),
        ("60", "3"),
        ("75", "5"),
        ("36", "5"),
    ] {
        jobs.push(vec![
            "realize".into(),
            "--type".into(),
            t.into(),
            "--q".into(),
            q.into(),
            "--seed".into(),
            s.clone(),
            "--out".into(),
            path(&format!("realize_{t}_{q}.json")),
        ]);
    }
    for job in jobs {
        let argv = std::iter::once("delpezzo".to_string()).chain(job.iter().cloned());
        let mut sink = Vec::new();
        let mut err = Vec::new();
        let code = run(argv, &mut sink, &mut err);
        if code == 2 {
            return Err(Error::Usage(format!(
                "{job:?}: {}",
                String::from_utf8_lossy(&err)
            )));
        }
    }
    Ok(())
}
