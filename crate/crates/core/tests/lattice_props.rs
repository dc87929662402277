use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;
use todorov::lattice::snf::solve_integer;
use todorov::lattice::{DivisorClass, IntLattice};

/// Kummer-type lattice: `h² = 4` and sixteen disjoint nodes, `ΣN` even.
fn kummer_lattice() -> IntLattice {
    let mut gram = vec![vec![0; 17]; 17];
    gram[0][0] = 4;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -2;
    }
    let nodes = DivisorClass::new((0..17).map(|i| i64::from(i > 0)).collect());
    IntLattice::new(
        (0..17).map(|i| format!("e{i}")).collect(),
        gram,
        vec![nodes],
    )
    .unwrap()
}

/// Some `ε ∈ {0,1}^m` makes `b − Σε_k D_k` coordinatewise even.
fn even_by_search(lat: &IntLattice, b: &DivisorClass) -> bool {
    let d = lat.declared_even();
    (0u32..1 << d.len()).any(|mask| {
        let sub = d
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(b.clone(), |acc, (_, dk)| acc - dk);
        sub.is_coordinatewise_even()
    })
}

proptest! {
    #[test]
    fn evenness_matches_search(coords in prop::collection::vec(-5i64..=5, 17)) {
        let lat = kummer_lattice();
        let b = DivisorClass::new(coords);
        let cert = lat.is_even(&b).unwrap();
        prop_assert_eq!(cert.is_some(), even_by_search(&lat, &b));
        if let Some(cert) = cert {
            let rebuilt = lat
                .declared_even()
                .iter()
                .zip(&cert.coefficients)
                .fold(cert.quotient.scaled(2), |acc, (d, &e)| acc + d.scaled(i64::from(e)));
            prop_assert_eq!(&rebuilt, &b);
            // an even class has an integral half-square on an even lattice
            prop_assert!(lat.half_square(&b).unwrap().is_integer());
        }
    }

    #[test]
    fn constructed_even_classes_certify(q in prop::collection::vec(-4i64..=4, 17), eps in any::<bool>()) {
        let lat = kummer_lattice();
        let mut b = DivisorClass::new(q).scaled(2);
        if eps {
            b = b + &lat.declared_even()[0];
        }
        prop_assert!(lat.is_even(&b).unwrap().is_some());
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        a in prop::collection::vec(-3i64..=3, 17),
        b in prop::collection::vec(-3i64..=3, 17),
        c in prop::collection::vec(-3i64..=3, 17),
    ) {
        let lat = kummer_lattice();
        let (a, b, c) = (DivisorClass::new(a), DivisorClass::new(b), DivisorClass::new(c));
        prop_assert_eq!(lat.pair(&a, &b).unwrap(), lat.pair(&b, &a).unwrap());
        prop_assert_eq!(
            lat.pair(&(&a + &b), &c).unwrap(),
            lat.pair(&a, &c).unwrap() + lat.pair(&b, &c).unwrap()
        );
        prop_assert_eq!(lat.half_square(&a.scaled(2)).unwrap(), Ratio::from_integer(lat.square(&a).unwrap()));
    }

    #[test]
    fn integer_solutions_reproduce_target(
        gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..5),
        x in prop::collection::vec(-3i64..=3, 5),
    ) {
        let target: Vec<i64> = (0..3).map(|i| gens.iter().zip(&x).map(|(g, c)| g[i] * c).sum()).collect();
        let sol = solve_integer(&gens, &target).expect("target lies in the span");
        for i in 0..3 {
            let got: BigInt = sol.iter().zip(&gens).map(|(c, g)| c * g[i]).sum();
            prop_assert_eq!(got, BigInt::from(target[i]));
        }
    }
}

#[test]
fn with_halves_pairs_like_half_classes() {
    let lat = kummer_lattice();
    let ext = lat.with_halves();
    assert_eq!(ext.rank(), 18);
    assert_eq!(ext.labels()[17], "half(0)");
    let half = DivisorClass::basis(18, 17);
    // (ΣN/2)² = −32/4
    assert_eq!(ext.square(&half).unwrap(), -8);
    assert_eq!(ext.pair(&half, &DivisorClass::basis(18, 1)).unwrap(), -1);
}

#[test]
fn lattice_json_round_trip() {
    let lat = kummer_lattice();
    let text = serde_json::to_string(&lat).unwrap();
    let back: IntLattice = serde_json::from_str(&text).unwrap();
    assert_eq!(back, lat);
    let odd = r#"{"basis": ["a"], "gram": [[1]]}"#;
    assert!(serde_json::from_str::<IntLattice>(odd).is_err());
}
