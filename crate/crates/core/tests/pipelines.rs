use picardlab::constructions::{
    build, build_theorem2_with, closed_form_h11, closed_form_pg, spot_validate_curve, Theorem2Reading,
};
use picardlab::geography::{self, SetKind};
use picardlab::{Theorem, TheoremParams};

fn sweep() -> Vec<(Theorem, TheoremParams)> {
    let mut out = Vec::new();
    out.extend((2..=12).map(|n| (Theorem::One, TheoremParams::n(n))));
    for m in 3..=8 {
        out.extend([2, 4, 6].map(|n| (Theorem::Two, TheoremParams::mn(m, n))));
    }
    for m in 2..=8 {
        out.extend([4, 6, 8].map(|n| (Theorem::Three, TheoremParams::mn(m, n))));
    }
    out
}

#[test]
fn every_sweep_member_is_certified() {
    for (t, p) in sweep() {
        let r = build(t, p).unwrap();
        assert!(r.certified(), "{}", r.summary());
        assert_eq!(r.computed.q, 0);
        assert_eq!(r.computed.p_g, r.computed.chi - 1);
        assert_eq!(r.computed.p_g, closed_form_pg(t, p).unwrap());
        assert_eq!(r.h11, closed_form_h11(t, p).unwrap());
        assert_eq!(r.picard_lower as i64, r.h11);
        assert!(r.building_data.as_building_data().validate().is_empty());
    }
}

#[test]
fn theorem2_parity_variants_share_closed_forms() {
    for m in 3..=8 {
        for n in [2, 4, 6] {
            let r = build_theorem2_with(m, n, Theorem2Reading::Corrected).unwrap();
            let (m, n) = (i64::from(m), i64::from(n));
            assert_eq!(r.computed.k2, 4 * m * n * n - 4 * (m + 2) * n + 8);
            assert_eq!(r.computed.chi, m * n * n - n + 1);
        }
    }
}

#[test]
fn printed_reading_validates_only_when_m_equals_n() {
    for m in [4, 6, 8] {
        for n in [2, 4, 6, 8] {
            let ok = build_theorem2_with(m, n, Theorem2Reading::Printed).is_ok();
            assert_eq!(ok, m == n, "m={m} n={n}");
        }
    }
}

#[test]
fn branch_curve_matches_assumed_inventory() {
    for n in 2..=6 {
        spot_validate_curve(n).unwrap();
    }
}

#[test]
fn geography_invariants_up_to_ten_thousand() {
    let chi_max = 10_000;
    for kind in SetKind::ALL {
        for p in geography::enumerate_set(kind, chi_max) {
            assert!(geography::admissible(p.k2, p.chi), "{}", p.provenance);
            assert!(p.k2 >= 1 && p.chi >= 1);
        }
    }
    for p in geography::enumerate_set(SetKind::A2, chi_max) {
        assert!(4 * p.chi > p.k2, "{} reaches the Severi line", p.provenance);
    }
    assert!(geography::slope_identity_failures(50, 50).is_empty());
}

#[test]
fn theorem_families_land_in_their_sets() {
    let a2 = geography::enumerate_set(SetKind::A2, 2000);
    for m in 3..=8 {
        for n in [2, 4] {
            let r = build(Theorem::Two, TheoremParams::mn(m, n)).unwrap();
            assert!(a2.iter().any(|p| p.point() == (r.computed.k2, r.computed.chi)));
        }
    }
}
