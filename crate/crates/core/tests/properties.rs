mod common;

use common::{a_k_normal_form, random_coordinate_change, transform};
use picardlab::curve_lab::{classify_ak_auto, AkClass};
use picardlab::singularities::{transport_cyclic, ScenarioEntry, Site};
use picardlab::{BaseSurface, DivisorClass, SingType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class(e: u32) -> impl Strategy<Value = DivisorClass> {
    (-20i64..=20, -20i64..=20).prop_map(move |(a, b)| DivisorClass::hirzebruch(e, a, b))
}

proptest! {
    #[test]
    fn intersection_is_bilinear_and_symmetric(
        (x, y, z) in (0u32..6).prop_flat_map(|e| (class(e), class(e), class(e))),
        k in -5i64..=5,
    ) {
        let xy = x.intersect(&y).unwrap();
        prop_assert_eq!(xy, y.intersect(&x).unwrap());
        prop_assert_eq!(
            x.try_add(&y).unwrap().intersect(&z).unwrap(),
            x.intersect(&z).unwrap() + y.intersect(&z).unwrap()
        );
        prop_assert_eq!(x.scale(k).intersect(&y).unwrap(), k * xy);
    }

    #[test]
    fn riemann_roch_when_higher_cohomology_vanishes(e in 0u32..6, a in 0i64..10, extra in -1i64..12) {
        // b ≥ ae - 1 makes every summand O(b - je) have degree ≥ -1.
        let b = a * i64::from(e) + extra;
        let d = DivisorClass::hirzebruch(e, a, b);
        let k = BaseSurface::Hirzebruch(e).canonical_class();
        let chi = 1 + d.intersect(&d.try_sub(&k).unwrap()).unwrap() / 2;
        prop_assert_eq!(d.h0(), chi);
    }

    #[test]
    fn plane_riemann_roch(d in -2i64..30) {
        let h = DivisorClass::plane(d);
        let k = BaseSurface::ProjectivePlane.canonical_class();
        prop_assert_eq!(h.h0(), 1 + h.intersect(&h.try_sub(&k).unwrap()).unwrap() / 2);
    }

    #[test]
    fn ample_classes_are_positive(e in 0u32..6, a in -5i64..15, b in -5i64..60) {
        let d = DivisorClass::hirzebruch(e, a, b);
        if d.is_ample() {
            prop_assert!(d.self_intersection() > 0);
            prop_assert!(d.intersect(&DivisorClass::section(e)).unwrap() > 0);
            prop_assert!(d.intersect(&DivisorClass::fiber(e)).unwrap() > 0);
        }
    }

    #[test]
    fn cyclic_transport_conserves_points(n in 1u32..6, d in 1u32..7, on in 0u64..10, off in 0u64..10) {
        let even_n = 2 * n;
        let a = SingType::a(even_n - 1).unwrap();
        let scenario = [
            ScenarioEntry::new(Some(a), Site::OnBranchFiberTransversal { parity_n: even_n }, on),
            ScenarioEntry::new(Some(a), Site::OffSpecialLoci, off),
        ];
        let inv = transport_cyclic(&scenario, d).unwrap();
        prop_assert_eq!(inv.total(), on + u64::from(d) * off);
        if d > 1 {
            prop_assert_eq!(inv.count(SingType::a(d * even_n - 1).unwrap()), on);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_survives_coordinate_changes(k in 1u32..6, seed in any::<u64>(), unit in -2i64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_coordinate_change(&mut rng);
        let g = transform(&a_k_normal_form(k), &phi, unit);
        prop_assert_eq!(classify_ak_auto(&g, k).unwrap(), AkClass::A(k));
    }
}
