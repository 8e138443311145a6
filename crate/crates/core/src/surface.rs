//! Divisor classes on the two families of rational base surfaces.
//!
//! On the projective plane a class is a multiple `dH` of the line class. On
//! the Hirzebruch surface `F_e` a class is written `aΔ₀ + bF` in the basis of
//! the negative section `Δ₀` (with `Δ₀² = -e`) and the fiber `F`. For `e = 0`
//! the two basis elements are two intersecting fibers of the two rulings, so
//! the pairing matrix is `[[0, 1], [1, 0]]`.
//!
//! Coefficients are `i64`. Every class that occurs in the constructions has
//! coefficients well below `10⁶`, so products stay far from overflow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseSurface {
    ProjectivePlane,
    /// `F_e = P(O ⊕ O(-e))`.
    Hirzebruch(u32),
}

impl BaseSurface {
    /// Holomorphic Euler characteristic `χ(O)`; equal to 1 for every rational surface.
    pub fn chi(self) -> i64 {
        1
    }

    pub fn p_g(self) -> i64 {
        0
    }

    pub fn q(self) -> i64 {
        0
    }

    pub fn canonical_class(self) -> DivisorClass {
        match self {
            BaseSurface::ProjectivePlane => DivisorClass::plane(-3),
            BaseSurface::Hirzebruch(e) => DivisorClass::hirzebruch(e, -2, -(i64::from(e) + 2)),
        }
    }

    /// Whole-class zero on this surface.
    pub fn zero(self) -> DivisorClass {
        match self {
            BaseSurface::ProjectivePlane => DivisorClass::plane(0),
            BaseSurface::Hirzebruch(e) => DivisorClass::hirzebruch(e, 0, 0),
        }
    }
}

impl fmt::Display for BaseSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSurface::ProjectivePlane => write!(f, "P2"),
            BaseSurface::Hirzebruch(e) => write!(f, "F{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DivisorClass {
    /// `d·H` on the projective plane.
    Plane { d: i64 },
    /// `a·Δ₀ + b·F` on `F_e`.
    Hirzebruch { e: u32, a: i64, b: i64 },
}

impl DivisorClass {
    pub fn plane(d: i64) -> Self {
        DivisorClass::Plane { d }
    }

    pub fn hirzebruch(e: u32, a: i64, b: i64) -> Self {
        DivisorClass::Hirzebruch { e, a, b }
    }

    /// Negative section `Δ₀` of `F_e`.
    pub fn section(e: u32) -> Self {
        Self::hirzebruch(e, 1, 0)
    }

    /// Fiber class `F` of `F_e`.
    pub fn fiber(e: u32) -> Self {
        Self::hirzebruch(e, 0, 1)
    }

    pub fn surface(&self) -> BaseSurface {
        match *self {
            DivisorClass::Plane { .. } => BaseSurface::ProjectivePlane,
            DivisorClass::Hirzebruch { e, .. } => BaseSurface::Hirzebruch(e),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d == 0,
            DivisorClass::Hirzebruch { a, b, .. } => a == 0 && b == 0,
        }
    }

    /// Coefficient-wise effectivity (`d ≥ 0`, resp. `a, b ≥ 0`).
    pub fn is_effective(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d >= 0,
            DivisorClass::Hirzebruch { a, b, .. } => a >= 0 && b >= 0,
        }
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(i64, i64) -> i64,
    ) -> Result<DivisorClass> {
        match (*self, *other) {
            (DivisorClass::Plane { d: d1 }, DivisorClass::Plane { d: d2 }) => {
                Ok(DivisorClass::plane(op(d1, d2)))
            }
            (
                DivisorClass::Hirzebruch { e: e1, a: a1, b: b1 },
                DivisorClass::Hirzebruch { e: e2, a: a2, b: b2 },
            ) if e1 == e2 => Ok(DivisorClass::hirzebruch(e1, op(a1, a2), op(b1, b2))),
            _ => Err(Error::IncompatibleClasses {
                left: self.surface(),
                right: other.surface(),
            }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |x, y| x - y)
    }

    pub fn scale(&self, k: i64) -> Self {
        match *self {
            DivisorClass::Plane { d } => DivisorClass::plane(k * d),
            DivisorClass::Hirzebruch { e, a, b } => DivisorClass::hirzebruch(e, k * a, k * b),
        }
    }

    /// Intersection number `self · other`.
    pub fn intersect(&self, other: &Self) -> Result<i64> {
        match (*self, *other) {
            (DivisorClass::Plane { d: d1 }, DivisorClass::Plane { d: d2 }) => Ok(d1 * d2),
            (
                DivisorClass::Hirzebruch { e: e1, a: a1, b: b1 },
                DivisorClass::Hirzebruch { e: e2, a: a2, b: b2 },
            ) if e1 == e2 => Ok(-i64::from(e1) * a1 * a2 + a1 * b2 + a2 * b1),
            _ => Err(Error::IncompatibleClasses {
                left: self.surface(),
                right: other.surface(),
            }),
        }
    }

    pub fn self_intersection(&self) -> i64 {
        self.intersect(self).expect("a class always pairs with itself")
    }

    /// `h⁰(O(D))`.
    ///
    /// On `F_e` the pushforward to `P¹` of `O(aΔ₀ + bF)` is
    /// `O(b) ⊕ O(b-e) ⊕ … ⊕ O(b-ae)`, whence the sum below.
    pub fn h0(&self) -> i64 {
        match *self {
            DivisorClass::Plane { d } if d >= 0 => (d + 1) * (d + 2) / 2,
            DivisorClass::Plane { .. } => 0,
            DivisorClass::Hirzebruch { e, a, b } => {
                if a < 0 {
                    return 0;
                }
                let e = i64::from(e);
                (0..=a).map(|j| (b - j * e + 1).max(0)).sum()
            }
        }
    }

    /// Ampleness: `d > 0` on P², `a > 0` and `b > a·e` on `F_e`.
    pub fn is_ample(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d > 0,
            DivisorClass::Hirzebruch { e, a, b } => a > 0 && b > a * i64::from(e),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DivisorClass::Plane { d } => write!(f, "{d}H"),
            DivisorClass::Hirzebruch { a, b, .. } => {
                if b < 0 {
                    write!(f, "{a}Δ₀-{}F", -b)
                } else {
                    write!(f, "{a}Δ₀+{b}F")
                }
            }
        }
    }
}

/// Free-function form of [`DivisorClass::intersect`].
pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
    d1.intersect(d2)
}

pub fn canonical_class(surface: BaseSurface) -> DivisorClass {
    surface.canonical_class()
}

pub fn h0(d: &DivisorClass) -> i64 {
    d.h0()
}

pub fn is_ample(d: &DivisorClass) -> bool {
    d.is_ample()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_pairing() {
        assert_eq!(intersect(&DivisorClass::plane(2), &DivisorClass::plane(3)), Ok(6));
    }

    #[test]
    fn hirzebruch_pairing() {
        let d = DivisorClass::hirzebruch(2, 1, 2);
        assert_eq!(d.intersect(&DivisorClass::section(2)), Ok(0));
        // (n-2)Δ₀ + (mn-m-1)F at m=2, n=4.
        let k_plus_l = DivisorClass::hirzebruch(2, 2, 5);
        assert_eq!(k_plus_l.self_intersection(), 12);
        assert_eq!(2 * k_plus_l.self_intersection(), 2 * 2 * 16 - 4 * 3 * 4 + 8);
    }

    #[test]
    fn mismatched_surfaces_rejected() {
        let err = DivisorClass::plane(1).intersect(&DivisorClass::fiber(1));
        assert!(matches!(err, Err(Error::IncompatibleClasses { .. })));
        let err = DivisorClass::fiber(1).intersect(&DivisorClass::fiber(2));
        assert!(err.is_err());
        assert!(DivisorClass::fiber(1).try_add(&DivisorClass::fiber(3)).is_err());
    }

    #[test]
    fn e_zero_pairing_is_hyperbolic() {
        let s = DivisorClass::section(0);
        let f = DivisorClass::fiber(0);
        assert_eq!(s.self_intersection(), 0);
        assert_eq!(f.self_intersection(), 0);
        assert_eq!(s.intersect(&f), Ok(1));
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(canonical_class(BaseSurface::ProjectivePlane), DivisorClass::plane(-3));
        assert_eq!(
            canonical_class(BaseSurface::Hirzebruch(1)),
            DivisorClass::hirzebruch(1, -2, -3)
        );
        for e in 0..=5 {
            let k = canonical_class(BaseSurface::Hirzebruch(e));
            let f = DivisorClass::fiber(e);
            assert_eq!(k.intersect(&f), Ok(-2));
            assert_eq!(f.self_intersection(), 0);
            // K² = 8 on every Hirzebruch surface.
            assert_eq!(k.self_intersection(), 8);
        }
        assert_eq!(canonical_class(BaseSurface::ProjectivePlane).self_intersection(), 9);
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&DivisorClass::plane(2)), 6);
        assert_eq!(2 * h0(&DivisorClass::plane(2)), 4 * 4 - 4);
        assert_eq!(h0(&DivisorClass::plane(-1)), 0);
        assert_eq!(h0(&DivisorClass::hirzebruch(2, 1, 1)), 2);
        assert_eq!(h0(&DivisorClass::hirzebruch(2, 2, 5)), 12);
        assert_eq!(h0(&DivisorClass::hirzebruch(2, -1, 5)), 0);
        assert_eq!(h0(&DivisorClass::hirzebruch(0, 0, 0)), 1);
    }

    #[test]
    fn ampleness() {
        assert!(is_ample(&DivisorClass::plane(1)));
        assert!(!is_ample(&DivisorClass::plane(0)));
        assert!(is_ample(&DivisorClass::hirzebruch(3, 2, 7)));
        assert!(!is_ample(&DivisorClass::hirzebruch(2, 1, 2)));
        assert!(is_ample(&DivisorClass::hirzebruch(0, 1, 1)));
        assert!(!is_ample(&DivisorClass::hirzebruch(0, 0, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(DivisorClass::hirzebruch(2, 2, 5).to_string(), "2Δ₀+5F");
        assert_eq!(DivisorClass::hirzebruch(1, -2, -3).to_string(), "-2Δ₀-3F");
        assert_eq!(DivisorClass::plane(-3).to_string(), "-3H");
    }
}
