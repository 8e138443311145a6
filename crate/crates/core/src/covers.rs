//! Double and bidouble covers of rational surfaces.
//!
//! A double cover is given by building data `{L, B}` with `B = 2L`; its
//! canonical class is `f*(K_Y + L)`. A bidouble cover is given by
//! `{L₁, L₂, L₃, B₁, B₂, B₃}` with `2L₁ = B₂ + B₃`, `2L₂ = B₁ + B₃` and
//! `L₃ = L₁ + L₂ - B₃`; there `2K_X = f*(2K_Y + B₁ + B₂ + B₃)`.
//!
//! The invariant formulas hold for covers with at worst ADE singularities,
//! which is all the constructions produce.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{BaseSurface, DivisorClass};

/// Numerical invariants of a (canonical model of a) surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
    pub p_g: i64,
    pub q: i64,
    pub h11: i64,
}

impl SurfaceInvariants {
    /// Derives `q = 1 + p_g - χ` and `h^{1,1} = 10χ - K² - 2q`.
    pub fn from_k2_chi_pg(k2: i64, chi: i64, p_g: i64) -> Result<Self> {
        let q = 1 + p_g - chi;
        if q < 0 {
            return Err(Error::InconsistentData(format!(
                "derived irregularity q = 1 + p_g - chi = {q} is negative"
            )));
        }
        Ok(SurfaceInvariants {
            k2,
            chi,
            p_g,
            q,
            h11: crate::singularities::h11(chi, k2, q),
        })
    }
}

/// A single failed cover condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverViolation {
    /// A class lives on a different surface than the declared base.
    WrongSurface { name: String },
    /// `B ≠ 2L` for a double cover.
    BranchNotTwiceL,
    /// `L` (or `L_i`) is the trivial class.
    TrivialLineBundle { name: String },
    /// One of the three bidouble relations fails; `relation` names it.
    RelationFails { relation: String },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::WrongSurface { name } => write!(f, "{name} is not a class on the base"),
            CoverViolation::BranchNotTwiceL => write!(f, "B ≠ 2L"),
            CoverViolation::TrivialLineBundle { name } => write!(f, "{name} is trivial"),
            CoverViolation::RelationFails { relation } => write!(f, "{relation} fails"),
        }
    }
}

/// Common surface of double and bidouble building data.
pub trait BuildingData {
    fn base(&self) -> BaseSurface;

    /// Every violated cover condition; empty means valid.
    fn validate(&self) -> Vec<CoverViolation>;

    fn invariants(&self) -> Result<SurfaceInvariants>;

    /// Class on the base whose pull-back is `K_X` (double) or `2K_X` (bidouble).
    fn canonical_base_class(&self) -> Result<DivisorClass>;

    /// `K_X` ample, certified through ampleness of [`Self::canonical_base_class`].
    fn canonical_ample(&self) -> Result<bool> {
        Ok(self.canonical_base_class()?.is_ample())
    }

    fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoverData {
    pub base: BaseSurface,
    #[serde(rename = "L")]
    pub l: DivisorClass,
    #[serde(rename = "B")]
    pub b: DivisorClass,
}

impl DoubleCoverData {
    pub fn new(l: DivisorClass, b: DivisorClass) -> Self {
        DoubleCoverData { base: l.surface(), l, b }
    }
}

impl BuildingData for DoubleCoverData {
    fn base(&self) -> BaseSurface {
        self.base
    }

    fn validate(&self) -> Vec<CoverViolation> {
        let mut out = Vec::new();
        for (name, class) in [("L", &self.l), ("B", &self.b)] {
            if class.surface() != self.base {
                out.push(CoverViolation::WrongSurface { name: name.into() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        if self.b != self.l.scale(2) {
            out.push(CoverViolation::BranchNotTwiceL);
        }
        if self.l.is_zero() {
            out.push(CoverViolation::TrivialLineBundle { name: "L".into() });
        }
        out
    }

    fn invariants(&self) -> Result<SurfaceInvariants> {
        let k = self.base.canonical_class();
        let kl = k.try_add(&self.l)?;
        let k2 = 2 * kl.self_intersection();
        let twice_excess = self.l.intersect(&kl)?;
        if twice_excess % 2 != 0 {
            return Err(Error::InconsistentData(format!(
                "L·(L+K) = {twice_excess} is odd, chi would not be integral"
            )));
        }
        let chi = 2 * self.base.chi() + twice_excess / 2;
        let p_g = self.base.p_g() + kl.h0();
        SurfaceInvariants::from_k2_chi_pg(k2, chi, p_g)
    }

    fn canonical_base_class(&self) -> Result<DivisorClass> {
        self.base.canonical_class().try_add(&self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidoubleCoverData {
    pub base: BaseSurface,
    #[serde(rename = "L")]
    pub l: [DivisorClass; 3],
    #[serde(rename = "B")]
    pub b: [DivisorClass; 3],
}

impl BidoubleCoverData {
    pub fn new(l: [DivisorClass; 3], b: [DivisorClass; 3]) -> Self {
        BidoubleCoverData {
            base: l[0].surface(),
            l,
            b,
        }
    }

    /// Total branch class `B₁ + B₂ + B₃`.
    pub fn total_branch(&self) -> Result<DivisorClass> {
        self.b[0].try_add(&self.b[1])?.try_add(&self.b[2])
    }
}

impl BuildingData for BidoubleCoverData {
    fn base(&self) -> BaseSurface {
        self.base
    }

    fn validate(&self) -> Vec<CoverViolation> {
        let mut out = Vec::new();
        let named = self
            .l
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("L{}", i + 1), c))
            .chain(self.b.iter().enumerate().map(|(i, c)| (format!("B{}", i + 1), c)));
        for (name, class) in named {
            if class.surface() != self.base {
                out.push(CoverViolation::WrongSurface { name });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let [l1, l2, l3] = &self.l;
        let [b1, b2, b3] = &self.b;
        let sum = |x: &DivisorClass, y: &DivisorClass| x.try_add(y).expect("same surface");
        if l1.scale(2) != sum(b2, b3) {
            out.push(CoverViolation::RelationFails {
                relation: "2L1 = B2 + B3".into(),
            });
        }
        if l2.scale(2) != sum(b1, b3) {
            out.push(CoverViolation::RelationFails {
                relation: "2L2 = B1 + B3".into(),
            });
        }
        if *l3 != sum(l1, l2).try_sub(b3).expect("same surface") {
            out.push(CoverViolation::RelationFails {
                relation: "L3 = L1 + L2 - B3".into(),
            });
        }
        for (i, l) in self.l.iter().enumerate() {
            if l.is_zero() {
                out.push(CoverViolation::TrivialLineBundle {
                    name: format!("L{}", i + 1),
                });
            }
        }
        out
    }

    fn invariants(&self) -> Result<SurfaceInvariants> {
        let k = self.base.canonical_class();
        let k2 = self.canonical_base_class()?.self_intersection();
        let mut twice_excess = 0;
        let mut p_g = self.base.p_g();
        for l in &self.l {
            let kl = k.try_add(l)?;
            twice_excess += l.intersect(&kl)?;
            p_g += kl.h0();
        }
        if twice_excess % 2 != 0 {
            return Err(Error::InconsistentData(format!(
                "Σ L_i·(L_i+K) = {twice_excess} is odd, chi would not be integral"
            )));
        }
        let chi = 4 * self.base.chi() + twice_excess / 2;
        SurfaceInvariants::from_k2_chi_pg(k2, chi, p_g)
    }

    fn canonical_base_class(&self) -> Result<DivisorClass> {
        self.base.canonical_class().scale(2).try_add(&self.total_branch()?)
    }
}

/// Either kind of building data, as stored in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverData {
    Double(DoubleCoverData),
    Bidouble(BidoubleCoverData),
}

impl CoverData {
    pub fn as_building_data(&self) -> &dyn BuildingData {
        match self {
            CoverData::Double(d) => d,
            CoverData::Bidouble(d) => d,
        }
    }
}

pub fn validate_double(data: &DoubleCoverData) -> Vec<CoverViolation> {
    data.validate()
}

pub fn double_invariants(data: &DoubleCoverData) -> Result<SurfaceInvariants> {
    data.invariants()
}

pub fn validate_bidouble(data: &BidoubleCoverData) -> Vec<CoverViolation> {
    data.validate()
}

pub fn bidouble_invariants(data: &BidoubleCoverData) -> Result<SurfaceInvariants> {
    data.invariants()
}

/// Pull-back of `aΔ₀ + bF` along the `Z_d`-cover `F_{de} → F_e` branched
/// over two fibers: `aΔ₀ + dbF`.
///
/// The class must not contain the two branch fibers as components; that is
/// the caller's responsibility and is not checked here.
pub fn cyclic_pullback_class(class: &DivisorClass, d: i64) -> Result<DivisorClass> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "cyclic cover degree must be positive, got {d}"
        )));
    }
    match *class {
        DivisorClass::Hirzebruch { e, a, b } => {
            let de = u32::try_from(d)
                .ok()
                .and_then(|d| d.checked_mul(e))
                .ok_or_else(|| Error::InvalidArgument("cover degree too large".into()))?;
            Ok(DivisorClass::hirzebruch(de, a, d * b))
        }
        DivisorClass::Plane { .. } => Err(Error::InvalidArgument(
            "cyclic pull-back is defined on Hirzebruch surfaces only".into(),
        )),
    }
}

pub fn canonical_ample_check(data: &dyn BuildingData) -> Result<bool> {
    data.canonical_ample()
}
