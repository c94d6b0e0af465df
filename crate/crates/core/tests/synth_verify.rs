use delpezzo_core::count::verify_surface;
use delpezzo_core::synth4::{synthesize, synthesize_ordinary};
use delpezzo_core::typetab::classification;

#[test]
fn every_numbered_type_verifies() {
    let cl = classification(4).unwrap();
    for q in [3u64, 5, 7, 9, 11] {
        let n_max = if q > 9 { 3 } else { 4 };
        for t in 1..=58 {
            let p = synthesize(t, q, 0).unwrap_or_else(|e| panic!("type {t} q {q}: {e}"));
            let r = verify_surface(&p, cl, cl.by_number(t).unwrap(), n_max).unwrap();
            assert!(r.pass, "type {t} q {q}: {r:?}");
        }
    }
}

#[test]
fn ordinary_types_verify() {
    let cl = classification(4).unwrap();
    for at in &cl.ordinary().arithmetic {
        let at = &cl.arithmetic[*at];
        let signed = at.signed.clone().unwrap();
        for q in [3u64, 5, 7] {
            match synthesize_ordinary(&signed, q, 0) {
                Ok(p) => {
                    let r = verify_surface(&p, cl, at, 3).unwrap();
                    assert!(r.pass, "{signed:?} q {q}: {r:?}");
                }
                Err(e) => {
                    assert_eq!(q, 3, "{signed:?}: {e}");
                    assert_eq!(signed.iter().filter(|x| x.abs() == 1).count(), 5);
                }
            }
        }
    }
}
