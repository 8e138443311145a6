//! ADE inventories, local transport rules and the Picard lower bound.
//!
//! The transport rules are keyed by local configuration data (which branch
//! divisor carries a singularity, which other one passes through it and with
//! what contact order). They do not look at equations; [`crate::curve_lab`]
//! checks the configurations of the branch curve independently.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A rational double point `A_k` (k ≥ 1), `D_k` (k ≥ 4) or `E_k` (k ∈ {6,7,8}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingType {
    family: Family,
    index: u32,
}

impl SingType {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(SingType { family, index })
        } else {
            Err(Error::InvalidSingType(format!("{family:?}{index}")))
        }
    }

    pub fn a(k: u32) -> Result<Self> {
        Self::new(Family::A, k)
    }

    pub fn d(k: u32) -> Result<Self> {
        Self::new(Family::D, k)
    }

    pub fn e(k: u32) -> Result<Self> {
        Self::new(Family::E, k)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Number of (-2)-curves in the minimal resolution.
    pub fn resolution_curve_count(&self) -> u64 {
        u64::from(self.index)
    }
}

impl std::str::FromStr for SingType {
    type Err = Error;

    /// Parses `A3`, `D10`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSingType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(bad()),
        };
        let index = chars.as_str().parse().map_err(|_| bad())?;
        SingType::new(family, index)
    }
}

impl Serialize for SingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SingType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

/// Multiset of ADE singularity types.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingInventory {
    counts: BTreeMap<SingType, u64>,
}

#[derive(Serialize, Deserialize)]
struct InventoryEntry {
    family: Family,
    index: u32,
    count: u64,
}

impl SingInventory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(items: impl IntoIterator<Item = (SingType, u64)>) -> Self {
        let mut inv = Self::new();
        for (t, c) in items {
            inv.add(t, c);
        }
        inv
    }

    pub fn add(&mut self, t: SingType, count: u64) {
        if count > 0 {
            *self.counts.entry(t).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &SingInventory) {
        for (&t, &c) in &other.counts {
            self.add(t, c);
        }
    }

    pub fn count(&self, t: SingType) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// Number of singular points.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SingType, u64)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }

    /// `Σ i·α_i + Σ j·β_j + Σ k·γ_k`.
    pub fn resolution_curve_count(&self) -> u64 {
        self.iter().map(|(t, c)| t.resolution_curve_count() * c).sum()
    }
}

impl fmt::Display for SingInventory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (t, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}×{t}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SingInventory {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<InventoryEntry> = self
            .iter()
            .map(|(t, count)| InventoryEntry {
                family: t.family,
                index: t.index,
                count,
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SingInventory {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<InventoryEntry>::deserialize(d)?;
        let mut inv = SingInventory::new();
        for e in entries {
            let t = SingType::new(e.family, e.index).map_err(serde::de::Error::custom)?;
            inv.add(t, e.count);
        }
        Ok(inv)
    }
}

pub fn resolution_curve_count(inv: &SingInventory) -> u64 {
    inv.resolution_curve_count()
}

/// Lower bound on the Picard number of the minimal resolution of a cover of
/// a smooth surface carrying `n_indep` numerically independent divisors.
///
/// Only the two situations the bound is used for are accepted: a line on P²
/// (`n_indep = 1`) and section plus fiber on `F_e` (`n_indep = 2`).
pub fn picard_lower_bound(inv: &SingInventory, n_indep: u32) -> Result<u64> {
    if !(1..=2).contains(&n_indep) {
        return Err(Error::InvalidArgument(format!(
            "n_indep must be 1 (P² base) or 2 (Hirzebruch base), got {n_indep}"
        )));
    }
    Ok(inv.resolution_curve_count() + u64::from(n_indep))
}

/// `h^{1,1} = 10χ - K² - 2q`.
pub fn h11(chi: i64, k2: i64, q: i64) -> i64 {
    10 * chi - k2 - 2 * q
}

/// Type of the union of a branch germ with a smooth curve through it.
///
/// `branch = None` is a smooth germ; then `contact` is the contact order
/// `c ≥ 1` of the two smooth curves and the union is `A_{2c-1}`. An `A_k`
/// germ with a transversal smooth curve (`contact = 1`) gives `D_{k+3}`.
pub fn union_type(branch: Option<SingType>, contact: u32) -> Result<SingType> {
    if contact == 0 {
        return Err(Error::InvalidArgument("contact order must be positive".into()));
    }
    match branch {
        None => SingType::a(2 * contact - 1),
        Some(t) if t.family == Family::A && contact == 1 => SingType::d(t.index + 3),
        Some(t) if t.family == Family::A => Err(Error::UnsupportedConfiguration(format!(
            "{t} with a smooth curve of contact order {contact}"
        ))),
        Some(t) => Err(Error::UnsupportedConfiguration(format!(
            "union of {t} with a smooth curve"
        ))),
    }
}

/// Branch divisor of a bidouble cover, `B1`, `B2` or `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    B1,
    B2,
    B3,
}

/// How the other branch divisors pass through a point of the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Meets {
    /// The point lies on no other branch divisor.
    Nothing,
    /// Exactly one other branch divisor passes through, smooth there.
    One { divisor: Branch, contact: u32 },
    /// Both other branch divisors pass through.
    BothOthers,
}

/// Where a branch singularity sits relative to the special loci of a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Site {
    /// Cyclic cover: away from the two branch fibers.
    OffSpecialLoci,
    /// Cyclic cover: on a branch fiber, transversal to it, of type `A_{n-1}`.
    OnBranchFiberTransversal { parity_n: u32 },
    /// Bidouble cover: carried by `carrier`, met by the others as described.
    Bidouble { carrier: Branch, meets: Meets },
}

/// One local configuration, repeated `multiplicity` times.
///
/// `sing = None` means the carrier is smooth at the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub sing: Option<SingType>,
    pub site: Site,
    pub multiplicity: u64,
}

impl ScenarioEntry {
    pub fn new(sing: Option<SingType>, site: Site, multiplicity: u64) -> Self {
        ScenarioEntry {
            sing,
            site,
            multiplicity,
        }
    }
}

impl fmt::Display for ScenarioEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sing = self
            .sing
            .map_or_else(|| "smooth".to_string(), |t| t.to_string());
        write!(f, "{}×{} at {:?}", self.multiplicity, sing, self.site)
    }
}

pub type BranchSingScenario = Vec<ScenarioEntry>;

/// Bidouble rule that produced a cover singularity (or smoothness).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BidoubleRule {
    /// Transverse crossing of two smooth branch divisors: smooth point.
    R0,
    /// Two smooth branches with union `A_{2n+1}`: one `A_n`.
    R1,
    /// `A_n` on one branch, a second branch smooth through it: one `A_{2n+1}`.
    R2,
    /// Singularity of one branch disjoint from the others: two copies.
    R3,
}

/// Identifies the bidouble rule for one entry and its per-point output.
pub fn bidouble_rule(entry: &ScenarioEntry) -> Result<(BidoubleRule, Vec<SingType>)> {
    let unsupported = || Error::UnsupportedConfiguration(entry.to_string());
    let Site::Bidouble { carrier, meets } = entry.site else {
        return Err(unsupported());
    };
    match (entry.sing, meets) {
        (_, Meets::BothOthers) => Err(unsupported()),
        (None, Meets::One { divisor, contact }) if divisor != carrier => {
            let union = union_type(None, contact)?;
            if union.index == 1 {
                Ok((BidoubleRule::R0, vec![]))
            } else {
                // union A_{2n+1} with n = contact - 1
                Ok((BidoubleRule::R1, vec![SingType::a(contact - 1)?]))
            }
        }
        (Some(t), Meets::One { divisor, contact }) if divisor != carrier => {
            if t.family != Family::A || contact != 1 {
                return Err(unsupported());
            }
            union_type(Some(t), contact)?;
            Ok((BidoubleRule::R2, vec![SingType::a(2 * t.index + 1)?]))
        }
        (Some(t), Meets::Nothing) => Ok((BidoubleRule::R3, vec![t, t])),
        _ => Err(unsupported()),
    }
}

/// Cover singularities of a bidouble cover from its branch configurations.
pub fn transport_bidouble(scenario: &[ScenarioEntry]) -> Result<SingInventory> {
    let mut out = SingInventory::new();
    for entry in scenario {
        let (_, produced) = bidouble_rule(entry)?;
        for t in produced {
            out.add(t, entry.multiplicity);
        }
    }
    Ok(out)
}

/// A double cover has one singularity of the same ADE type over each ADE
/// singularity of its branch curve.
pub fn transport_double(branch_inventory: &SingInventory) -> SingInventory {
    branch_inventory.clone()
}

/// Singularities of the pull-back of a curve along the `Z_d`-cover of a
/// Hirzebruch surface branched over two fibers.
///
/// A transversal `A_{n-1}` on a branch fiber becomes a single `A_{dn-1}`
/// (only for even `n`); a singularity off the fibers is copied `d` times.
pub fn transport_cyclic(scenario: &[ScenarioEntry], d: u32) -> Result<SingInventory> {
    if d == 0 {
        return Err(Error::InvalidArgument("cyclic cover degree must be positive".into()));
    }
    let mut out = SingInventory::new();
    for entry in scenario {
        match (entry.sing, entry.site) {
            (Some(t), Site::OffSpecialLoci) => out.add(t, u64::from(d) * entry.multiplicity),
            (Some(t), Site::OnBranchFiberTransversal { parity_n }) => {
                if t.family != Family::A {
                    return Err(Error::UnsupportedConfiguration(format!(
                        "{t} on a branch fiber: pullback not ADE"
                    )));
                }
                if t.index + 1 != parity_n {
                    return Err(Error::UnsupportedConfiguration(format!(
                        "{t} declared as A_(n-1) with n = {parity_n}"
                    )));
                }
                if parity_n % 2 != 0 {
                    return Err(Error::UnsupportedConfiguration(format!(
                        "{t} on a branch fiber with odd n = {parity_n}: not covered by the \
                         even-n transport rule"
                    )));
                }
                out.add(SingType::a(d * parity_n - 1)?, entry.multiplicity);
            }
            _ => return Err(Error::UnsupportedConfiguration(entry.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: u32) -> SingType {
        SingType::a(k).unwrap()
    }

    fn d(k: u32) -> SingType {
        SingType::d(k).unwrap()
    }

    #[test]
    fn sing_type_bounds() {
        assert!(SingType::a(0).is_err());
        assert!(SingType::d(3).is_err());
        assert!(SingType::e(5).is_err());
        assert!(SingType::e(9).is_err());
        assert!(SingType::e(8).is_ok());
    }

    #[test]
    fn resolution_counts() {
        let inv = SingInventory::from_counts([(d(4), 4), (a(3), 4)]);
        assert_eq!(resolution_curve_count(&inv), 28);
        assert_eq!(resolution_curve_count(&SingInventory::new()), 0);
        let e8 = SingInventory::from_counts([(SingType::e(8).unwrap(), 1)]);
        assert_eq!(resolution_curve_count(&e8), 8);
    }

    #[test]
    fn picard_bounds() {
        let inv = SingInventory::from_counts([(d(4), 4), (a(3), 4)]);
        assert_eq!(picard_lower_bound(&inv, 1), Ok(29));
        let inv = SingInventory::from_counts([(d(10), 8), (a(3), 8)]);
        assert_eq!(picard_lower_bound(&inv, 2), Ok(106));
        assert_eq!(picard_lower_bound(&SingInventory::new(), 2), Ok(2));
        assert!(picard_lower_bound(&SingInventory::new(), 0).is_err());
        assert!(picard_lower_bound(&SingInventory::new(), 3).is_err());
    }

    #[test]
    fn h11_examples() {
        assert_eq!(h11(3, 1, 0), 29);
        assert_eq!(h11(11, 16, 0), 94);
        assert_eq!(h11(1, 9, 0), 1);
    }

    #[test]
    fn union_types() {
        assert_eq!(union_type(None, 1), Ok(a(1)));
        assert_eq!(union_type(Some(a(3)), 1), Ok(d(6)));
        for n in 1..6 {
            assert_eq!(union_type(None, n + 1), Ok(a(2 * n + 1)));
        }
        assert!(union_type(Some(a(2)), 2).is_err());
        assert!(union_type(Some(d(4)), 1).is_err());
        assert!(union_type(None, 0).is_err());
    }

    #[test]
    fn bidouble_rules() {
        let r1 = ScenarioEntry::new(
            None,
            Site::Bidouble {
                carrier: Branch::B1,
                meets: Meets::One { divisor: Branch::B2, contact: 2 },
            },
            1,
        );
        assert_eq!(transport_bidouble(&[r1]).unwrap(), SingInventory::from_counts([(a(1), 1)]));

        // m = 3, n = 2: A_{mn-1} = A5 on B3, fiber smooth through it.
        let r2 = ScenarioEntry::new(
            Some(a(5)),
            Site::Bidouble {
                carrier: Branch::B3,
                meets: Meets::One { divisor: Branch::B1, contact: 1 },
            },
            1,
        );
        assert_eq!(transport_bidouble(&[r2]).unwrap(), SingInventory::from_counts([(a(11), 1)]));

        let r3 = ScenarioEntry::new(
            Some(d(4)),
            Site::Bidouble { carrier: Branch::B3, meets: Meets::Nothing },
            1,
        );
        assert_eq!(transport_bidouble(&[r3]).unwrap(), SingInventory::from_counts([(d(4), 2)]));

        let r0 = ScenarioEntry::new(
            None,
            Site::Bidouble {
                carrier: Branch::B1,
                meets: Meets::One { divisor: Branch::B2, contact: 1 },
            },
            5,
        );
        assert!(transport_bidouble(&[r0]).unwrap().is_empty());
    }

    #[test]
    fn bidouble_rejections() {
        let triple = ScenarioEntry::new(
            Some(a(1)),
            Site::Bidouble { carrier: Branch::B1, meets: Meets::BothOthers },
            1,
        );
        assert!(transport_bidouble(&[triple]).is_err());
        let tangent = ScenarioEntry::new(
            Some(a(2)),
            Site::Bidouble {
                carrier: Branch::B1,
                meets: Meets::One { divisor: Branch::B2, contact: 2 },
            },
            1,
        );
        assert!(transport_bidouble(&[tangent]).is_err());
        let self_meet = ScenarioEntry::new(
            None,
            Site::Bidouble {
                carrier: Branch::B1,
                meets: Meets::One { divisor: Branch::B1, contact: 1 },
            },
            1,
        );
        assert!(transport_bidouble(&[self_meet]).is_err());
        let lonely_smooth = ScenarioEntry::new(
            None,
            Site::Bidouble { carrier: Branch::B1, meets: Meets::Nothing },
            1,
        );
        assert!(transport_bidouble(&[lonely_smooth]).is_err());
        let cyclic_site = ScenarioEntry::new(Some(a(1)), Site::OffSpecialLoci, 1);
        assert!(transport_bidouble(&[cyclic_site]).is_err());
    }

    #[test]
    fn double_transport_is_identity() {
        let inv = SingInventory::from_counts([(d(10), 8), (a(3), 8)]);
        assert_eq!(transport_double(&inv), inv);
        assert!(transport_double(&SingInventory::new()).is_empty());
    }

    #[test]
    fn cyclic_rules() {
        let on_fiber = ScenarioEntry::new(Some(a(1)), Site::OnBranchFiberTransversal { parity_n: 2 }, 1);
        assert_eq!(transport_cyclic(&[on_fiber], 3).unwrap(), SingInventory::from_counts([(a(5), 1)]));
        let off = ScenarioEntry::new(Some(a(3)), Site::OffSpecialLoci, 1);
        assert_eq!(transport_cyclic(&[off], 2).unwrap(), SingInventory::from_counts([(a(3), 2)]));

        let odd = ScenarioEntry::new(Some(a(2)), Site::OnBranchFiberTransversal { parity_n: 3 }, 1);
        assert!(matches!(
            transport_cyclic(&[odd], 2),
            Err(Error::UnsupportedConfiguration(_))
        ));
        let d_on_fiber = ScenarioEntry::new(Some(d(4)), Site::OnBranchFiberTransversal { parity_n: 4 }, 1);
        assert!(transport_cyclic(&[d_on_fiber], 2).is_err());
        let mislabelled = ScenarioEntry::new(Some(a(3)), Site::OnBranchFiberTransversal { parity_n: 2 }, 1);
        assert!(transport_cyclic(&[mislabelled], 2).is_err());
        assert!(transport_cyclic(&[], 0).is_err());
    }

    #[test]
    fn inventory_serde_is_sorted_array() {
        let inv = SingInventory::from_counts([(a(3), 8), (d(10), 8)]);
        let json = serde_json::to_string(&inv).unwrap();
        assert_eq!(
            json,
            r#"[{"family":"A","index":3,"count":8},{"family":"D","index":10,"count":8}]"#
        );
        let back: SingInventory = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inv);
        assert!(serde_json::from_str::<SingInventory>(r#"[{"family":"D","index":2,"count":1}]"#).is_err());
    }
}
