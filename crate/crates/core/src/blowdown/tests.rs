use alloc::vec::Vec;

use super::*;
use crate::golden::blowup_table;

fn deg4(n: u32) -> &'static ArithmeticType {
    classification(4).unwrap().by_number(n).unwrap()
}

#[test]
fn counts_of_sample_rows() {
    assert_eq!(off_curve_count(deg4(1)).poly, [1, -7, 12]);
    assert_eq!(off_curve_count(deg4(23)).poly, [1, 2, 1]);
    assert_eq!(off_curve_count(deg4(1)).eval(3), 0);
    assert_eq!(off_curve_count(deg4(53)).eval(3), 6);
}

#[test]
fn identity_fixes_thirteen_curves() {
    let a = curve_action(deg4(1));
    assert_eq!(a.curves.len(), 13);
    assert!(a.cycle_type().is_empty());
    assert_eq!(curve_action(deg4(10)).cycle_type()[0], 6);
    assert_eq!(curve_action(deg4(48)).cycle_type(), vec![4, 4]);
}

#[test]
fn blowup_targets() {
    assert_eq!(deg3_from_deg4(deg4(15)).unwrap(), Some(19));
    assert_eq!(deg3_from_deg4(deg4(53)).unwrap(), Some(60));
    assert_eq!(deg3_from_deg4(deg4(1)).unwrap(), Some(1));
}

#[test]
fn table_agrees_except_known_rows() {
    let mut bad = Vec::new();
    for (e, r) in blowup_table_recomputed().iter().zip(blowup_table()) {
        let d = diff_row(e, &r);
        if !d.is_empty() {
            bad.push((r.type_no, d));
        }
    }
    let rows: Vec<u32> = bad.iter().map(|b| b.0).collect();
    assert_eq!(rows, vec![2, 3, 4, 12, 19, 48], "{bad:?}");
    for e in blowup_table_recomputed() {
        assert!(e.target.is_some());
    }
}

#[test]
fn no_concurrent_curves_in_degree_four() {
    for g in &classification(4).unwrap().geometric {
        let (tri, multi) = concurrency_violations(g);
        assert!(tri.is_empty() && multi.is_empty(), "{}", g.dynkin);
    }
}

#[test]
fn profile_examples() {
    let t22 = deg4(22);
    let one: Vec<&ProfileRoute> = profile_routes()
        .iter()
        .filter(|r| r.source == t22.id && r.profile.len() == 1)
        .collect();
    assert!(one.iter().any(|r| r.target == 39));
    let t16 = deg4(16);
    assert!(profile_routes()
        .iter()
        .any(|r| r.source == t16.id && r.profile.len() == 2 && r.target == 54));
}

#[test]
fn nonexistence_over_f3() {
    for t in [1, 12] {
        match realizability(t, 3, 0).unwrap() {
            Realization::NotRealizable(c) => {
                assert!(c.contractions.iter().all(|s| s.2 == 0));
                assert!(!c.contractions.is_empty());
            }
            r => panic!("type {t}: {r:?}"),
        }
    }
    assert!(matches!(
        realizability(36, 3, 0).unwrap(),
        Realization::OutOfScope { .. }
    ));
    assert!(
        matches!(realizability(60, 3, 0).unwrap(), Realization::Plan(p) if p.route == Route::OffCurves { source: 53 })
    );
}

#[test]
fn type_17_needs_a_source_point_off_curves() {
    let cl3 = classification(3).unwrap();
    let c = contractions(cl3.by_number(17).unwrap(), 3).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].0, Class::from_slice(&[1, 0, 0, 0, 0, -1, -1]));
    assert_eq!(c[0].1.type_no, Some(21));
    assert_eq!(c[0].1.poly, [1, -2, -3]);
    assert!(matches!(
        realizability(17, 3, 0).unwrap(),
        Realization::NotRealizable(_)
    ));
    assert!(
        matches!(realizability(17, 5, 0).unwrap(), Realization::Plan(p) if p.route == Route::OffCurves { source: 21 })
    );
}

#[test]
fn contracted_types_blow_back_up() {
    let cl3 = classification(3).unwrap();
    for t in [1, 12, 17, 60] {
        for (_, c, _) in contractions(cl3.by_number(t).unwrap(), 5).unwrap() {
            let a = classification(4)
                .unwrap()
                .by_number(c.type_no.unwrap())
                .unwrap();
            assert_eq!(deg3_from_deg4(a).unwrap(), Some(t));
        }
    }
}

#[test]
fn points_off_lines_match_the_count() {
    for q in [3u64, 5] {
        for n in [1u32, 8, 15, 23, 31, 48, 53] {
            let a = deg4(n);
            let Ok(pair) = synthesize(n, q, 1) else {
                continue;
            };
            let lf = LineFinder::new(&pair).unwrap();
            let got = lf.points_off_lines().unwrap().len() as i64;
            assert_eq!(got, off_curve_count(a).eval(q), "type {n} q={q}");
        }
    }
}

#[test]
fn witness_point_has_the_profile_lines() {
    let Realization::Plan(p) = realizability(39, 5, 0).unwrap() else {
        panic!()
    };
    let w = p.witness.unwrap();
    let lf = LineFinder::new(&w.pair).unwrap();
    let lines = lf.lines_through(&w.point).unwrap().unwrap();
    let mut flags: Vec<bool> = lines.iter().map(|l| l.rational).collect();
    flags.sort_unstable();
    assert_eq!(flags, w.lines);
    assert!(matches!(p.route, Route::OnCurves { .. }));
    assert!(!w.lines.is_empty() && w.lines.iter().all(|&r| r));
}
