use std::fs;

use delpezzo::cli::{pipeline, run};
use delpezzo::format::{
    parse_q, BlowupRowJson, PairJson, PlanJson, RealizationJson, ReportJson, TypeRow,
};
use proptest::prelude::*;

fn call(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("delpezzo").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn enumerate_degree_six() {
    let (code, out, _) = call(&["enumerate", "--degree", "6"]);
    assert_eq!(code, 0);
    let rows: Vec<TypeRow> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", out);
    let (_, csv, _) = call(&["enumerate", "--degree", "6", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn synthesize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    let f = file.to_str().unwrap();
    assert_eq!(
        call(&[
            "synthesize",
            "--degree",
            "4",
            "--type",
            "58",
            "--q",
            "7",
            "--out",
            f
        ])
        .0,
        0
    );
    let (code, out, _) = call(&[
        "verify", "--pair", f, "--degree", "4", "--type", "58", "--nmax", "4",
    ]);
    assert_eq!(code, 0);
    let r: ReportJson = serde_json::from_str(&out).unwrap();
    assert!(r.pass);
    assert_eq!(call(&["verify", "--pair", f, "--type", "57"]).0, 1);
    let pair: PairJson = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(pair.p, 7);
    assert_eq!(PairJson::from_pair(&pair.to_pair().unwrap()), pair);
}

#[test]
fn synthesize_all_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("pairs");
    assert_eq!(
        call(&[
            "synthesize",
            "--all",
            "--q",
            "3^2",
            "--out",
            d.to_str().unwrap()
        ])
        .0,
        0
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["pairs"].as_array().unwrap().len(), 58);
    assert_eq!(manifest["q"], 9);
    assert!(d.join("type_58.json").exists());
}

#[test]
fn realize_exit_codes() {
    let (code, out, _) = call(&["realize", "--degree", "3", "--type", "1", "--q", "3"]);
    assert_eq!(code, 1);
    match serde_json::from_str::<RealizationJson>(&out).unwrap() {
        RealizationJson::NotRealizable { certificate, .. } => {
            assert!(!certificate.is_empty());
            assert!(certificate.iter().all(|c| c.n_at_q == 0));
        }
        r => panic!("{r:?}"),
    }
    let (code, out, _) = call(&["realize", "--type", "60", "--q", "3"]);
    assert_eq!(code, 0);
    let r: RealizationJson = serde_json::from_str(&out).unwrap();
    assert!(matches!(r, RealizationJson::Plan { ref route, .. } if route.contains("53")));
    let (code, out, _) = call(&["realize", "--type", "36", "--q", "5"]);
    assert_eq!(code, 0);
    assert!(matches!(
        serde_json::from_str(&out).unwrap(),
        RealizationJson::OutOfScope { type_no: 36, .. }
    ));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["realize", "--type", "5", "--q", "6"]).0, 2);
    assert_eq!(call(&["realize", "--type", "99", "--q", "5"]).0, 2);
    assert_eq!(call(&["enumerate", "--degree", "2"]).0, 2);
    assert_eq!(
        call(&["zeta", "--degree", "4", "--type", "3", "--q", "5", "--format", "csv"]).0,
        2
    );
    assert_eq!(call(&["synthesize", "--all", "--q", "5"]).0, 2);
    assert_eq!(call(&["synthesize", "--type", "3", "--q", "4"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn plan_and_table_round_trip() {
    let (code, out, _) = call(&["blowup-plan", "--degree", "5", "--type", "9", "--q", "5"]);
    assert_eq!(code, 0);
    let p: PlanJson = serde_json::from_str(&out).unwrap();
    assert_eq!(p.identified, "9");
    assert_eq!(serde_json::to_string_pretty(&p).unwrap() + "\n", out);
    let (_, out, _) = call(&["deg3-table"]);
    let rows: Vec<BlowupRowJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 58);
    assert_eq!(
        rows.iter().find(|r| r.type_no == 53).unwrap().target,
        Some(60)
    );
    let (_, csv, _) = call(&["deg3-table", "--format", "csv"]);
    assert!(csv
        .lines()
        .any(|l| l.starts_with("21,") && l.contains("q^2 - 2q - 3")));
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let a = call(&[
        "blowup-plan",
        "--degree",
        "3",
        "--type",
        "70",
        "--q",
        "5",
        "--seed",
        "9",
    ]);
    let b = call(&[
        "blowup-plan",
        "--degree",
        "3",
        "--type",
        "70",
        "--q",
        "5",
        "--seed",
        "9",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn pipeline_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    pipeline(dir.path(), 0).unwrap();
    for name in [
        "types_3.json",
        "blowup.csv",
        "pairs_5/manifest.json",
        "realize_17_3.json",
        "plan_6_7.json",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prime_power_forms_agree(pi in 0usize..5, m in 1u32..4) {
        let p = [2u64, 3, 5, 7, 11][pi];
        prop_assert_eq!(parse_q(&format!("{p}^{m}")).unwrap(), p.pow(m));
        prop_assert_eq!(parse_q(&p.pow(m).to_string()).unwrap(), p.pow(m));
    }

    #[test]
    fn synthesized_pairs_round_trip(t in 1u32..=58, qi in 0usize..3, seed in 0u64..4) {
        let q = [3u64, 5, 9][qi];
        let p = delpezzo_core::synth4::synthesize(t, q, seed).unwrap();
        let text = serde_json::to_string(&PairJson::from_pair(&p)).unwrap();
        let back: PairJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_pair().unwrap(), p);
    }
}
