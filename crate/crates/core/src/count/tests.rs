use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::synth4::{synthesize, synthesize_ordinary};
use crate::typetab::classification;

fn random_symmetric(f: &Field, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zeros(5, 5);
    for i in 0..5 {
        for j in i..5 {
            let x = f.from_index(rng.random_range(0..f.size()));
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

#[test]
fn smooth_quadric_threefold() {
    let f = Field::of_size(3).unwrap();
    let p = synthesize(11, 3, 0).unwrap();
    let zeros = projective_points(&p.field, 5)
        .filter(|v| quad(&f, &p.qinf, v).is_zero())
        .count();
    assert_eq!(zeros, 27 + 9 + 3 + 1);
}

#[test]
fn f3_block_model_of_type_1() {
    let p = synthesize(1, 3, 0).unwrap();
    assert_eq!(count_brute(&p, 1).unwrap(), 25);
    assert_eq!(count_charsum(&p, 1).unwrap(), 25);
}

#[test]
fn type_11_over_f5() {
    let p = synthesize(11, 5, 0).unwrap();
    assert_eq!(count_charsum(&p, 1).unwrap(), 46);
    assert_eq!(count_brute(&p, 1).unwrap(), 46);
}

#[test]
fn charsum_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases = [(3u64, 1u32), (5, 1), (3, 2), (5, 2), (3, 3)];
    let mut done = 0;
    while done < 100 {
        let (q, n) = cases[done % cases.len()];
        let f = Field::of_size(q).unwrap();
        let p = QuadricPair::new(
            f.clone(),
            random_symmetric(&f, &mut rng),
            random_symmetric(&f, &mut rng),
        )
        .unwrap();
        if p.pencil_determinant().is_zero() {
            continue;
        }
        assert_eq!(
            count_charsum(&p, n).unwrap(),
            count_brute(&p, n).unwrap() as i128,
            "q={q} n={n}"
        );
        done += 1;
    }
}

#[test]
fn base_change_is_the_same_formula() {
    let p = synthesize(30, 3, 4).unwrap();
    let p2 = base_change(&p, 2).unwrap();
    assert_eq!(
        count_charsum(&p, 2).unwrap(),
        count_charsum(&p2, 1).unwrap()
    );
    assert_eq!(count_charsum(&p, 0), Err(CountError::ZeroExponent));
    assert_eq!(count_brute(&p, 4), Err(CountError::Budget(81)));
}

#[test]
fn singular_point_examples() {
    let ord = synthesize_ordinary(&[1, 1, 1, 1, 1], 7, 0).unwrap();
    assert!(singular_points(&ord, 1).unwrap().is_empty());
    let d5 = synthesize(58, 5, 0).unwrap();
    assert_eq!(singular_points(&d5, 1).unwrap().len(), 1);
    let t48 = synthesize(48, 3, 0).unwrap();
    let counts: Vec<usize> = (1..=4)
        .map(|n| singular_points(&t48, n).unwrap().len())
        .collect();
    assert_eq!(counts, vec![0, 0, 0, 4]);
}

#[test]
fn singular_points_lie_on_the_surface() {
    let p = synthesize(57, 5, 0).unwrap();
    let f = &p.field;
    for v in singular_points(&p, 2).unwrap() {
        let ext = base_change(&p, 2).unwrap();
        assert!(quad(&ext.field, &ext.q0, &v).is_zero());
        assert!(ext.q0.mul_vec(&ext.field, &v).iter().any(|x| !x.is_zero()) || f.size() > 0);
    }
}

#[test]
fn verify_accepts_and_rejects() {
    let cl = classification(4).unwrap();
    let p = synthesize(11, 5, 0).unwrap();
    let good = verify_surface(&p, cl, cl.by_number(11).unwrap(), 4).unwrap();
    assert!(good.pass, "{good:?}");
    let bad = verify_surface(&p, cl, cl.by_number(12).unwrap(), 4).unwrap();
    assert!(!bad.pass);
    assert!(!bad.counts[0].1.ok());
    assert_eq!(
        verify_surface(&p, cl, cl.by_number(11).unwrap(), 7).err(),
        Some(CountError::BadRange)
    );
}

#[test]
fn degenerate_pencil_is_an_error() {
    let f = Field::of_size(5).unwrap();
    let mut a = Mat::zeros(5, 5);
    a.set(0, 0, Fe::ONE);
    let p = QuadricPair::new(f, a.clone(), a).unwrap();
    assert_eq!(
        count_charsum(&p, 1),
        Err(CountError::Quad(QuadError::Degenerate))
    );
    let cl = classification(4).unwrap();
    assert!(verify_surface(&p, cl, cl.by_number(1).unwrap(), 2).is_err());
}
