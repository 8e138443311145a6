//! The three theorem pipelines.
//!
//! Each pipeline assembles branch data on the base surface, computes cover
//! invariants and singularities, and certifies ampleness of the canonical
//! class, the closed-form invariants and maximality of the Picard number.
//!
//! The blown-up plane `F₁` enters only through fixed classes: the strict
//! transforms `l'₁, l'₂` are fibers, `l̄₃ = Δ₀ + F` and `C̄ = 2nΔ₀ + 2nF`
//! (the blown-up point `(0:0:1)` is off `C`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covers::{
    canonical_ample_check, cyclic_pullback_class, BidoubleCoverData, CoverData,
    DoubleCoverData, SurfaceInvariants,
};
use crate::curve_lab;
use crate::error::{Error, Result};
use crate::poly::rat;
use crate::singularities::{
    picard_lower_bound, transport_bidouble, transport_cyclic, transport_double, union_type, Branch,
    Meets, ScenarioEntry, Site, SingInventory, SingType,
};
use crate::surface::{BaseSurface, DivisorClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Theorem {
    One,
    Two,
    Three,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::One => 1,
            Theorem::Two => 2,
            Theorem::Three => 3,
        }
    }
}

impl From<Theorem> for u8 {
    fn from(t: Theorem) -> u8 {
        t.number()
    }
}

impl TryFrom<u8> for Theorem {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            3 => Ok(Theorem::Three),
            _ => Err(Error::InvalidArgument(format!("theorem must be 1, 2 or 3, got {v}"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// `m` is absent for the plane construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TheoremParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    pub n: u32,
}

impl TheoremParams {
    pub fn n(n: u32) -> Self {
        TheoremParams { m: None, n }
    }

    pub fn mn(m: u32, n: u32) -> Self {
        TheoremParams { m: Some(m), n }
    }

    fn require_m(&self, theorem: Theorem) -> Result<u32> {
        self.m
            .ok_or_else(|| Error::InvalidArgument(format!("theorem {theorem} needs a value for m")))
    }
}

impl fmt::Display for TheoremParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "m={m}, n={n}", n = self.n),
            None => write!(f, "n={}", self.n),
        }
    }
}

/// Checks the parameter constraints of a theorem and returns `(m, n)`
/// (with `m = 0` for the plane construction).
pub fn check_params(theorem: Theorem, params: TheoremParams) -> Result<(u32, u32)> {
    let n = params.n;
    match theorem {
        Theorem::One => {
            if params.m.is_some() {
                return Err(Error::InvalidArgument("theorem 1 takes no m".into()));
            }
            if n < 2 {
                return Err(Error::Constraint(format!("theorem 1 needs n >= 2, got n = {n}")));
            }
            Ok((0, n))
        }
        Theorem::Two => {
            let m = params.require_m(theorem)?;
            if m < 3 {
                return Err(Error::Constraint(format!("theorem 2 needs m >= 3, got m = {m}")));
            }
            if !n.is_multiple_of(2) {
                return Err(Error::Constraint(format!("theorem 2: n must be even, got n = {n}")));
            }
            if n < 2 {
                return Err(Error::Constraint(format!("theorem 2 needs n >= 2, got n = {n}")));
            }
            Ok((m, n))
        }
        Theorem::Three => {
            let m = params.require_m(theorem)?;
            if m < 2 {
                return Err(Error::Constraint(format!("theorem 3 needs m >= 2, got m = {m}")));
            }
            if !n.is_multiple_of(2) {
                return Err(Error::Constraint(format!("theorem 3: n must be even, got n = {n}")));
            }
            if n < 4 {
                return Err(Error::Constraint(format!("theorem 3 needs n >= 4, got n = {n}")));
            }
            Ok((m, n))
        }
    }
}

/// Closed-form `(K², χ)`.
pub fn closed_form_invariants(theorem: Theorem, params: TheoremParams) -> Result<(i64, i64)> {
    let (m, n) = check_params(theorem, params)?;
    let (m, n) = (i64::from(m), i64::from(n));
    Ok(match theorem {
        Theorem::One => (4 * n * n - 12 * n + 9, n * n - n + 1),
        Theorem::Two => (4 * m * n * n - 4 * (m + 2) * n + 8, m * n * n - n + 1),
        Theorem::Three => (2 * m * n * n - 4 * (m + 1) * n + 8, m * n * (n - 1) / 2 + 1),
    })
}

/// Closed-form `h^{1,1}`.
pub fn closed_form_h11(theorem: Theorem, params: TheoremParams) -> Result<i64> {
    let (m, n) = check_params(theorem, params)?;
    let (m, n) = (i64::from(m), i64::from(n));
    Ok(match theorem {
        Theorem::One => 6 * n * n + 2 * n + 1,
        Theorem::Two => 6 * m * n * n + (4 * m - 2) * n + 2,
        Theorem::Three => 3 * m * n * n + (4 - m) * n + 2,
    })
}

/// Closed-form geometric genus.
pub fn closed_form_pg(theorem: Theorem, params: TheoremParams) -> Result<i64> {
    closed_form_invariants(theorem, params).map(|(_, chi)| chi - 1)
}

/// Which coefficient to use in the fiber part of `L₁, L₂` for the second
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem2Reading {
    /// `½m` (even `m`), `½(m-1)` (odd `m`); satisfies the cover relations.
    Corrected,
    /// `½n`, `½(n-1)` as typeset.
    Printed,
}

fn half(value: i64, what: &str) -> Result<i64> {
    if value % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "{what} = {value}/2 is not an integer"
        )));
    }
    Ok(value / 2)
}

/// Building data of the second construction on `F_m`.
pub fn theorem2_building_data(m: u32, n: u32, reading: Theorem2Reading) -> Result<BidoubleCoverData> {
    let e = m;
    let (m, n) = (i64::from(m), i64::from(n));
    let c = match reading {
        Theorem2Reading::Corrected => m,
        Theorem2Reading::Printed => n,
    };
    let fib = DivisorClass::fiber(e);
    let b3 = DivisorClass::hirzebruch(e, 2 * n + 2, (2 * n + 1) * m);
    let l3 = fib;
    if m % 2 == 0 {
        let h = half(c, "fiber coefficient")?;
        let l1 = DivisorClass::hirzebruch(e, n + 1, m * n + h + 1);
        let l2 = DivisorClass::hirzebruch(e, n + 1, m * n + h);
        Ok(BidoubleCoverData::new(
            [l1, l2, l3],
            [DivisorClass::hirzebruch(e, 0, 0), fib.scale(2), b3],
        ))
    } else {
        let h = half(c - 1, "fiber coefficient")?;
        let l = DivisorClass::hirzebruch(e, n + 1, m * n + h + 1);
        Ok(BidoubleCoverData::new([l, l, l3], [fib, fib, b3]))
    }
}

/// Inventory of the branch curve `C` assumed by the pipelines: `n` points
/// of type `A_{n-1}` on each coordinate line.
pub fn curve_c_inventory(n: u32) -> Result<SingInventory> {
    Ok(SingInventory::from_counts([(SingType::a(n - 1)?, 3 * u64::from(n))]))
}

/// Runs the curve laboratory on `C_n` and compares with
/// [`curve_c_inventory`].
pub fn spot_validate_curve(n: u32) -> Result<()> {
    let report = curve_lab::singular_points_report(n, curve_lab::DEFAULT_MAX_N)?;
    let expected = curve_c_inventory(n)?;
    let found = match report.representative_type() {
        Some(curve_lab::AkClass::A(k)) => {
            SingInventory::from_counts([(SingType::a(k)?, report.total_points() as u64)])
        }
        other => {
            return Err(Error::InconsistentData(format!(
                "curve C_{n}: unexpected representative type {other:?}"
            )))
        }
    };
    if found != expected || !report.lines.iter().all(|l| l.transversal) {
        return Err(Error::InconsistentData(format!(
            "curve C_{n}: found {found}, expected {expected}"
        )));
    }
    Ok(())
}

/// Blow-up centre `(0:0:1)` is not on `C_n`.
pub fn blowup_center_off_curve(n: u32) -> Result<bool> {
    let c = curve_lab::curve_c(n)?;
    Ok(c.eval(&[rat(0), rat(0), rat(1)]) != rat(0))
}

/// Singularities of `C̃ ⊂ F_m`, the pull-back of `C̄` along the `Z_m`-cover
/// branched over `l'₁, l'₂`: `2n` points on those fibers, `n` on `l̄₃`.
pub fn pulled_back_curve_inventory(m: u32, n: u32) -> Result<SingInventory> {
    let a = SingType::a(n - 1)?;
    let on_fibers = ScenarioEntry::new(Some(a), Site::OnBranchFiberTransversal { parity_n: n }, 2 * u64::from(n));
    let off = ScenarioEntry::new(Some(a), Site::OffSpecialLoci, u64::from(n));
    transport_cyclic(&[on_fibers, off], m)
}

/// Pull-backs of `C̄` and `l̄₃` to `F_m`.
pub fn pulled_back_classes(m: u32, n: u32) -> Result<(DivisorClass, DivisorClass)> {
    let n = i64::from(n);
    let c_bar = DivisorClass::hirzebruch(1, 2 * n, 2 * n);
    let l3_bar = DivisorClass::hirzebruch(1, 1, 1);
    Ok((
        cyclic_pullback_class(&c_bar, i64::from(m))?,
        cyclic_pullback_class(&l3_bar, i64::from(m))?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub theorem: Theorem,
    pub params: TheoremParams,
    pub building_data: CoverData,
    pub base_branch_inventory: SingInventory,
    pub scenario: Vec<ScenarioEntry>,
    pub cover_inventory: SingInventory,
    pub computed: SurfaceInvariants,
    pub closed_form: ClosedForm,
    pub ample: bool,
    pub picard_lower: u64,
    pub h11: i64,
    pub maximal: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
}

impl ConstructionReport {
    /// `match`, `maximal` and `ample` all hold.
    pub fn certified(&self) -> bool {
        self.matches && self.maximal && self.ample
    }

    pub fn summary(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        format!(
            "theorem {} ({}): K2={} chi={} p_g={} q={} h11={} picard_lower={} inventory={} ample={} maximal={} match={}",
            self.theorem,
            self.params,
            self.computed.k2,
            self.computed.chi,
            self.computed.p_g,
            self.computed.q,
            self.h11,
            self.picard_lower,
            self.cover_inventory,
            yes(self.ample),
            yes(self.maximal),
            yes(self.matches),
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn certify(
    theorem: Theorem,
    params: TheoremParams,
    building_data: CoverData,
    base_branch_inventory: SingInventory,
    scenario: Vec<ScenarioEntry>,
    cover_inventory: SingInventory,
    n_indep: u32,
) -> Result<ConstructionReport> {
    let data = building_data.as_building_data();
    let violations = data.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::InconsistentData(format!(
            "building data fails the cover conditions: {}",
            list.join("; ")
        )));
    }
    let computed = data.invariants()?;
    let ample = canonical_ample_check(data)?;
    let (k2, chi) = closed_form_invariants(theorem, params)?;
    let picard_lower = picard_lower_bound(&cover_inventory, n_indep)?;
    let h11 = computed.h11;
    Ok(ConstructionReport {
        theorem,
        params,
        building_data,
        base_branch_inventory,
        scenario,
        cover_inventory,
        computed,
        closed_form: ClosedForm { k2, chi },
        ample,
        maximal: i64::try_from(picard_lower).is_ok_and(|p| p == h11),
        picard_lower,
        h11,
        matches: (computed.k2, computed.chi) == (k2, chi),
    })
}

fn on(carrier: Branch, meets: Meets) -> Site {
    Site::Bidouble { carrier, meets }
}

fn crossing(carrier: Branch, other: Branch, count: u64) -> ScenarioEntry {
    ScenarioEntry::new(None, on(carrier, Meets::One { divisor: other, contact: 1 }), count)
}

/// Bidouble cover of `P²` branched over `l₁`, `l₂` and `l₃ + C`.
pub fn build_theorem1(n: u32) -> Result<ConstructionReport> {
    let params = TheoremParams::n(n);
    check_params(Theorem::One, params)?;
    let k = i64::from(n);
    let h = DivisorClass::plane;
    let data = BidoubleCoverData::new([h(k + 1), h(k + 1), h(1)], [h(1), h(1), h(2 * k + 1)]);

    let count = u64::from(n);
    let a = SingType::a(n - 1)?;
    // A_{n-1} of C on l₃, joined by l₃.
    let d = union_type(Some(a), 1)?;
    let scenario = vec![
        ScenarioEntry::new(Some(d), on(Branch::B3, Meets::Nothing), count),
        ScenarioEntry::new(Some(a), on(Branch::B3, Meets::One { divisor: Branch::B1, contact: 1 }), count),
        ScenarioEntry::new(Some(a), on(Branch::B3, Meets::One { divisor: Branch::B2, contact: 1 }), count),
        crossing(Branch::B1, Branch::B2, 1),
        crossing(Branch::B1, Branch::B3, 1),
        crossing(Branch::B2, Branch::B3, 1),
    ];
    let mut base = SingInventory::new();
    base.add(d, count);
    base.add(a, 2 * count);
    let cover = transport_bidouble(&scenario)?;
    certify(Theorem::One, params, CoverData::Bidouble(data), base, scenario, cover, 1)
}

/// Bidouble cover of `F_m` branched over fibers and `Δ₀ + l̃₃ + C̃`.
pub fn build_theorem2(m: u32, n: u32) -> Result<ConstructionReport> {
    build_theorem2_with(m, n, Theorem2Reading::Corrected)
}

pub fn build_theorem2_with(m: u32, n: u32, reading: Theorem2Reading) -> Result<ConstructionReport> {
    let params = TheoremParams::mn(m, n);
    check_params(Theorem::Two, params)?;
    if !blowup_center_off_curve(n)? {
        return Err(Error::InconsistentData("blow-up centre lies on C".into()));
    }
    let data = theorem2_building_data(m, n, reading)?;

    let c_tilde = pulled_back_curve_inventory(m, n)?;
    let on_fiber = SingType::a(m * n - 1)?;
    let off_fiber = SingType::a(n - 1)?;
    let on_count = c_tilde.count(on_fiber);
    let off_count = c_tilde.count(off_fiber);
    // The off-fiber points of C̃ lie on l̃₃ ⊂ B₃.
    let d = union_type(Some(off_fiber), 1)?;
    let (fiber_a, fiber_b) = if m.is_multiple_of(2) {
        (Branch::B2, Branch::B2)
    } else {
        (Branch::B1, Branch::B2)
    };
    let meets = |b| Meets::One { divisor: b, contact: 1 };
    let half = on_count / 2;
    let scenario = vec![
        ScenarioEntry::new(Some(d), on(Branch::B3, Meets::Nothing), off_count),
        ScenarioEntry::new(Some(on_fiber), on(Branch::B3, meets(fiber_a)), half),
        ScenarioEntry::new(Some(on_fiber), on(Branch::B3, meets(fiber_b)), on_count - half),
        // Each branch fiber crosses Δ₀ and l̃₃ once.
        crossing(fiber_a, Branch::B3, 2),
        crossing(fiber_b, Branch::B3, 2),
    ];
    let mut base = SingInventory::new();
    base.add(d, off_count);
    base.add(on_fiber, on_count);
    let cover = transport_bidouble(&scenario)?;
    certify(Theorem::Two, params, CoverData::Bidouble(data), base, scenario, cover, 2)
}

/// Double cover of `F_m` branched over `C̃ + l̃₁ + l̃₂`.
pub fn build_theorem3(m: u32, n: u32) -> Result<ConstructionReport> {
    let params = TheoremParams::mn(m, n);
    check_params(Theorem::Three, params)?;
    if !blowup_center_off_curve(n)? {
        return Err(Error::InconsistentData("blow-up centre lies on C".into()));
    }
    let e = m;
    let (mm, nn) = (i64::from(m), i64::from(n));
    let (c_class, _) = pulled_back_classes(m, n)?;
    let b = c_class.try_add(&DivisorClass::fiber(e).scale(2))?;
    let l = DivisorClass::hirzebruch(e, nn, mm * nn + 1);
    let data = DoubleCoverData::new(l, b);

    let c_tilde = pulled_back_curve_inventory(m, n)?;
    let on_fiber = SingType::a(m * n - 1)?;
    let off_fiber = SingType::a(n - 1)?;
    // On-fiber singularities of C̃ joined by the transversal branch fiber.
    let d = union_type(Some(on_fiber), 1)?;
    let scenario = vec![
        ScenarioEntry::new(Some(d), Site::OffSpecialLoci, c_tilde.count(on_fiber)),
        ScenarioEntry::new(Some(off_fiber), Site::OffSpecialLoci, c_tilde.count(off_fiber)),
    ];
    let base = SingInventory::from_counts(scenario.iter().map(|s| (s.sing.expect("singular"), s.multiplicity)));
    let cover = transport_double(&base);
    certify(Theorem::Three, params, CoverData::Double(data), base, scenario, cover, 2)
}

pub fn build(theorem: Theorem, params: TheoremParams) -> Result<ConstructionReport> {
    match theorem {
        Theorem::One => {
            check_params(theorem, params)?;
            build_theorem1(params.n)
        }
        Theorem::Two => build_theorem2(params.require_m(theorem)?, params.n),
        Theorem::Three => build_theorem3(params.require_m(theorem)?, params.n),
    }
}

/// Base surface of the cover.
pub fn base_surface(theorem: Theorem, params: TheoremParams) -> Result<BaseSurface> {
    let (m, _) = check_params(theorem, params)?;
    Ok(match theorem {
        Theorem::One => BaseSurface::ProjectivePlane,
        _ => BaseSurface::Hirzebruch(m),
    })
}
