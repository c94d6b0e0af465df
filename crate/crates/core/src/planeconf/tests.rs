use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::gf::{Fe, Field};

fn split(degree: u8) -> LatticeData {
    let dim = 10 - degree as usize;
    LatticeData {
        degree,
        frobenius: WeylElement::identity(dim),
        basis: Vec::new(),
    }
}

#[test]
fn three_collinear_rational_points() {
    let f = Field::of_size(5).unwrap();
    let pts = [(0, 0), (1, 1), (2, 2)].map(|(x, y)| Chain::point(f.from_int(x), f.from_int(y)));
    let c = PointConfiguration::new(5, f, pts.to_vec()).unwrap();
    assert_eq!(c.irreducible_roots().unwrap(), vec![Class::line3(1, 2, 3)]);
    assert!(c.frobenius_weyl().unwrap().is_identity());
}

#[test]
fn tangent_chain_through_third_point() {
    let f = Field::of_size(7).unwrap();
    let one = f.from_int(1);
    let c = PointConfiguration::new(
        7,
        f.clone(),
        vec![
            Chain::germ(Fe::ZERO, Fe::ZERO, vec![one]),
            Chain::point(f.from_int(3), f.from_int(3)),
        ],
    )
    .unwrap();
    let mut r = c.irreducible_roots().unwrap();
    r.sort();
    let mut want = vec![Class::diff(1, 2), Class::line3(1, 2, 3)];
    want.sort();
    assert_eq!(r, want);
}

#[test]
fn general_points_have_no_roots() {
    let f = Field::of_size(7).unwrap();
    let pts =
        [(0, 0), (1, 0), (0, 1), (1, 1)].map(|(x, y)| Chain::point(f.from_int(x), f.from_int(y)));
    let c = PointConfiguration::new(7, f, pts.to_vec()).unwrap();
    assert!(c.irreducible_roots().unwrap().is_empty());
}

#[test]
fn four_collinear_points_are_rejected() {
    let f = Field::of_size(5).unwrap();
    let pts = [0, 1, 2, 3].map(|x| Chain::point(f.from_int(x), Fe::ZERO));
    let c = PointConfiguration::new(5, f, pts.to_vec()).unwrap();
    assert!(matches!(
        c.irreducible_roots(),
        Err(PlaneError::NotGeneral(_))
    ));
}

#[test]
fn conjugate_pair_swaps() {
    let f = Field::of_size(9).unwrap();
    let a = f.primitive();
    let b = f.pow_q(a, 3);
    let c = PointConfiguration::new(
        3,
        f.clone(),
        vec![
            Chain::point(a, Fe::ZERO),
            Chain::point(b, Fe::ZERO),
            Chain::point(Fe::ONE, Fe::ONE),
        ],
    )
    .unwrap();
    assert_eq!(c.galois_permutation().unwrap(), vec![1, 0, 2]);
    let unstable = PointConfiguration::new(3, f.clone(), vec![Chain::point(a, Fe::ZERO)]).unwrap();
    assert_eq!(unstable.frobenius_weyl(), Err(PlaneError::NotStable));
    let far = Chain::projective(&f, [Fe::ONE, Fe::ONE, Fe::ZERO]).unwrap();
    assert_eq!(
        PointConfiguration::new(
            3,
            f,
            vec![Chain {
                jet: vec![Fe::ONE],
                ..far
            }]
        ),
        Err(PlaneError::NotAffine)
    );
}

#[test]
fn points_at_infinity_over_f2() {
    let f = Field::of_size(2).unwrap();
    let pts = vec![
        Chain::point(Fe::ZERO, Fe::ZERO),
        Chain::point(Fe::ONE, Fe::ONE),
        Chain::projective(&f, [Fe::ONE, Fe::ONE, Fe::ZERO]).unwrap(),
        Chain::point(Fe::ZERO, Fe::ONE),
    ];
    let c = PointConfiguration::new(2, f, pts).unwrap();
    assert_eq!(c.irreducible_roots().unwrap(), vec![Class::line3(1, 2, 3)]);
}

#[test]
fn conic_through_six_points() {
    let f = Field::of_size(7).unwrap();
    let pts: Vec<Chain> = (0..6)
        .map(|x| Chain::point(f.from_int(x), f.from_int(x * x)))
        .collect();
    let c = PointConfiguration::new(7, f, pts).unwrap();
    let r = c.irreducible_roots().unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].coords()[..7], [2, -1, -1, -1, -1, -1, -1]);
}

#[test]
fn jet_collinearity_matches_second_coefficient() {
    let f = Field::of_size(5).unwrap();
    for a2 in 0..5 {
        let ch = Chain::germ(
            Fe::ZERO,
            Fe::ZERO,
            vec![f.from_int(2), f.from_int(a2), Fe::ONE],
        );
        let c = PointConfiguration::new(5, f.clone(), vec![ch]).unwrap();
        let collinear = c.incidences().lines == vec![vec![1, 2, 3]];
        assert_eq!(collinear, a2 == 0);
    }
}

#[test]
fn contraction_to_the_last_class() {
    let d = split(5);
    let up = contract(&d, &Class::e(4)).unwrap();
    assert_eq!(up.degree, 6);
    assert!(up.frobenius.is_identity() && up.basis.is_empty());
    let swap = LatticeData {
        degree: 5,
        frobenius: WeylElement::from_matrix(&[
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
        ]),
        basis: vec![Class::line3(1, 2, 3)],
    };
    let six = contract(&swap, &Class::line2(3, 4)).unwrap();
    assert_eq!(six.identify().unwrap().type_no, Some(2));
    assert!(contract(&d, &Class::diff(1, 2)).is_err());
}

#[test]
fn degree_five_and_six_plans() {
    for q in [2, 3, 4, 5, 7] {
        for (degree, n) in [(6u8, 9u32), (5, 10)] {
            for t in 1..=n {
                let plan = build_plan(degree, t, q, 1)
                    .unwrap_or_else(|e| panic!("{degree} {t} q={q}: {e}"));
                assert_eq!(plan.lattice_data().identify().unwrap().type_no, Some(t));
            }
        }
    }
}

#[test]
fn six_point_catalogue() {
    for (want, rec) in plane_recipes() {
        for q in [3u64, 5] {
            let Ok(plan) = build_plan(3, want, q, 3) else {
                assert!(
                    q == 3 && [1, 2, 22, 45].contains(&want),
                    "type {want} over F_{q}"
                );
                continue;
            };
            assert_eq!(
                plan.lattice_data().identify().unwrap().type_no,
                Some(want),
                "{rec:?}"
            );
        }
    }
}

#[test]
fn conic_types_are_distinct() {
    let types: Vec<u32> = plane_recipes()
        .iter()
        .filter(|r| matches!(r.1, PlaneRecipe::Conic(_)))
        .map(|r| r.0)
        .collect();
    assert_eq!(types, vec![11, 10, 8, 9, 5, 7, 6, 4, 3, 2, 1]);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn rational_config(pts: &[(i64, i64)], jet: Option<(i64, i64)>) -> Option<PointConfiguration> {
        let f = Field::of_size(7).unwrap();
        let mut chains: Vec<Chain> = Vec::new();
        if let Some((a, b)) = jet {
            chains.push(Chain::germ(
                Fe::ZERO,
                Fe::ZERO,
                vec![f.from_int(a), f.from_int(b)],
            ));
        }
        for &(x, y) in pts {
            let c = Chain::point(f.from_int(x), f.from_int(y));
            if chains.iter().any(|d| d.base == c.base) {
                return None;
            }
            chains.push(c);
        }
        PointConfiguration::new(7, f, chains).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rational_configurations_identify_to_split_types(
            pts in proptest::collection::vec((0i64..7, 0i64..7), 1..4),
            jet in proptest::option::of((0i64..7, 0i64..7)),
        ) {
            let Some(c) = rational_config(&pts, jet) else { return Ok(()) };
            let Ok(roots) = c.irreducible_roots() else { return Ok(()) };
            for (i, a) in roots.iter().enumerate() {
                prop_assert_eq!(a.square(), -2);
                for b in &roots[i + 1..] {
                    prop_assert!(a.dot(b) >= 0);
                }
            }
            let eff = c.effective_roots().unwrap();
            prop_assert_eq!(effective_closure(&roots), eff);
            let data = c.lattice_data().unwrap();
            if data.degree <= 6 && !roots.is_empty() {
                let t = data.identify().unwrap();
                prop_assert!(t.representative.is_identity());
            }
        }
    }
}
