use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use delpezzo::checks::{self, Outcome};
use delpezzo::cli::pipeline;
use delpezzo::Error;

fn read_tree(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) -> std::io::Result<()> {
    let mut entries: Vec<_> = fs::read_dir(dir)?.collect::<Result<_, _>>()?;
    entries.sort_by_key(|e| e.file_name());
    for e in entries {
        let p = e.path();
        if p.is_dir() {
            read_tree(root, &p, out)?;
        } else {
            let rel = p
                .strip_prefix(root)
                .expect("inside root")
                .to_string_lossy()
                .into_owned();
            out.insert(rel, fs::read(&p)?);
        }
    }
    Ok(())
}

fn determinism() -> Result<Outcome, Error> {
    let a = tempfile::tempdir()?;
    let b = tempfile::tempdir()?;
    pipeline(a.path(), 7)?;
    pipeline(b.path(), 7)?;
    let (mut ta, mut tb) = (BTreeMap::new(), BTreeMap::new());
    read_tree(a.path(), a.path(), &mut ta)?;
    read_tree(b.path(), b.path(), &mut tb)?;
    let differing: Vec<&String> = ta.keys().filter(|k| ta.get(*k) != tb.get(*k)).collect();
    let pass = !ta.is_empty() && ta.len() == tb.len() && differing.is_empty();
    Ok(Outcome {
        name: "determinism",
        pass,
        detail: format!("{} artifacts per run; differing {differing:?}", ta.len()),
    })
}

fn main() {
    let criteria: Vec<(u32, Box<dyn Fn() -> Result<Outcome, Error>>)> = vec![
        (1, Box::new(checks::type_tables)),
        (2, Box::new(checks::lattice_constants)),
        (3, Box::new(checks::blowup_table_check)),
        (
            4,
            Box::new(|| checks::synthesis_end_to_end(&[3, 5, 7, 9, 11], 4)),
        ),
        (5, Box::new(|| checks::counter_agreement(20, 2024))),
        (6, Box::new(|| checks::discriminant_formulas(200, 2024))),
        (7, Box::new(|| checks::plane_plans(&[2, 3, 4, 5, 7], 0))),
        (8, Box::new(|| checks::degree_three(&[3, 5], 0))),
        (9, Box::new(checks::structural_identities)),
        (10, Box::new(determinism)),
    ];
    let mut passed = 0;
    for (k, f) in &criteria {
        let start = Instant::now();
        let line = match f() {
            Ok(o) => {
                passed += o.pass as u32;
                o.line()
            }
            Err(e) => format!("FAIL criterion error: {e}"),
        };
        println!("[{k:2}] {line} ({:.1}s)", start.elapsed().as_secs_f64());
    }
    println!("{passed}/{} criteria pass", criteria.len());
}
