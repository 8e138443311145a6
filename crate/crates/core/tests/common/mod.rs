//! Helpers shared by the integration tests.
#![allow(dead_code)]

use picardlab::curve_lab::LocalPoly;
use picardlab::poly::{rat, MPoly};
use rand::Rng;

/// Monomials `x0^i x1^j y0^k y1^l` of the Cox ring of `F_e` in the class
/// `aΔ₀ + bF`, where `x0, x1` have class `F`, `y0` has class `Δ₀` and `y1`
/// has class `Δ₀ + eF`.
pub fn h0_oracle_hirzebruch(e: i64, a: i64, b: i64) -> i64 {
    if a < 0 {
        return 0;
    }
    let mut count = 0;
    for l in 0..=a {
        let k = a - l;
        debug_assert!(k >= 0);
        let rest = b - e * l;
        for i in 0..=rest.max(-1) {
            let j = rest - i;
            if j >= 0 {
                count += 1;
            }
        }
    }
    count
}

/// Monomials of degree `d` in three variables.
pub fn h0_oracle_plane(d: i64) -> i64 {
    let mut count = 0;
    for i in 0..=d.max(-1) {
        for j in 0..=(d - i).max(-1) {
            if d - i - j >= 0 {
                count += 1;
            }
        }
    }
    count
}

/// `y² - x^{k+1}`.
pub fn a_k_normal_form(k: u32) -> LocalPoly {
    LocalPoly(&MPoly::<2>::var(1).pow(2) - &MPoly::<2>::var(0).pow(k + 1))
}

fn small<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-3..=3)
}

/// Invertible polynomial change of coordinates fixing the origin: an
/// invertible linear part plus random quadratic and cubic terms.
pub fn random_coordinate_change<R: Rng>(rng: &mut R) -> [MPoly<2>; 2] {
    let (a, b, c, d) = loop {
        let m = (small(rng), small(rng), small(rng), small(rng));
        if m.0 * m.3 - m.1 * m.2 != 0 {
            break m;
        }
    };
    let x = MPoly::<2>::var(0);
    let y = MPoly::<2>::var(1);
    let mut out = [
        &x.scale(&rat(a)) + &y.scale(&rat(b)),
        &x.scale(&rat(c)) + &y.scale(&rat(d)),
    ];
    for comp in out.iter_mut() {
        for exps in [[2, 0], [1, 1], [0, 2], [3, 0], [0, 3], [2, 1]] {
            let coeff = small(rng);
            if coeff != 0 {
                comp.add_term(exps, rat(coeff));
            }
        }
    }
    out
}

/// `f ∘ φ`, optionally multiplied by the unit `1 + u·x`.
pub fn transform(f: &LocalPoly, phi: &[MPoly<2>; 2], unit: i64) -> LocalPoly {
    let g = f.poly().compose(phi, None);
    let u = &MPoly::<2>::one() + &MPoly::<2>::var(0).scale(&rat(unit));
    LocalPoly(&g * &u)
}
