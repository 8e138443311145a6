//! Invariant sets in the `(K², χ)` plane, their relations, slopes and plots.
//!
//! Sets and parameter ranges:
//!
//! | set | `(K², χ)` | parameters |
//! |-----|-----------|------------|
//! | A1 | `(4n²-12n+9, n²-n+1)` | `n ≥ 2` |
//! | A2 | `(4mn²-4(m+2)n+8, mn²-n+1)` | `m ≥ 3`, `n ≥ 2` even |
//! | A3 | `(2mn²-4(m+1)n+8, ½mn(n-1)+1)` | `m ≥ 2`, `n ≥ 4` even |
//! | B  | `(2(n-3)², ½(n-1)(n-2)+1)` | `n ≥ 4` |
//! | T  | `(2t(t-1)(t-4)+8, ½t(t-1)(t-3)+1)` | `t ≥ 6` even |
//!
//! The relaxed variant of A2 drops the parity condition on `n` and allows
//! `m = 2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, ratio, Rational, UPoly};

/// Default cap on `χ` for enumeration.
pub const DEFAULT_CHI_MAX: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetKind {
    A1,
    A2,
    A3,
    B,
    T,
}

impl SetKind {
    pub const ALL: [SetKind; 5] = [SetKind::A1, SetKind::A2, SetKind::A3, SetKind::B, SetKind::T];

    pub fn label(self) -> &'static str {
        match self {
            SetKind::A1 => "A1",
            SetKind::A2 => "A2",
            SetKind::A3 => "A3",
            SetKind::B => "B",
            SetKind::T => "T",
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetKind::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown set `{s}` (expected A1, A2, A3, B or T)")))
    }
}

/// Parameters that produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "set")]
pub enum Provenance {
    A1 { n: i64 },
    A2 { m: i64, n: i64 },
    A3 { m: i64, n: i64 },
    B { n: i64 },
    T { t: i64 },
}

impl Provenance {
    pub fn kind(&self) -> SetKind {
        match self {
            Provenance::A1 { .. } => SetKind::A1,
            Provenance::A2 { .. } => SetKind::A2,
            Provenance::A3 { .. } => SetKind::A3,
            Provenance::B { .. } => SetKind::B,
            Provenance::T { .. } => SetKind::T,
        }
    }

    /// `m=3;n=2` style parameter string.
    pub fn params(&self) -> String {
        match *self {
            Provenance::A1 { n } | Provenance::B { n } => format!("n={n}"),
            Provenance::A2 { m, n } | Provenance::A3 { m, n } => format!("m={m};n={n}"),
            Provenance::T { t } => format!("t={t}"),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind(), self.params().replace(';', ","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeoPair {
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
    pub provenance: Provenance,
}

impl GeoPair {
    pub fn point(&self) -> (i64, i64) {
        (self.k2, self.chi)
    }

    fn sort_key(&self) -> (i64, i64, Provenance) {
        (self.chi, self.k2, self.provenance)
    }
}

impl PartialOrd for GeoPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeoPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

pub fn a1_pair(n: i64) -> (i64, i64) {
    (4 * n * n - 12 * n + 9, n * n - n + 1)
}

pub fn a2_pair(m: i64, n: i64) -> (i64, i64) {
    (4 * m * n * n - 4 * (m + 2) * n + 8, m * n * n - n + 1)
}

pub fn a3_pair(m: i64, n: i64) -> (i64, i64) {
    (2 * m * n * n - 4 * (m + 1) * n + 8, m * n * (n - 1) / 2 + 1)
}

pub fn b_pair(n: i64) -> (i64, i64) {
    (2 * (n - 3) * (n - 3), (n - 1) * (n - 2) / 2 + 1)
}

pub fn t_pair(t: i64) -> (i64, i64) {
    (2 * t * (t - 1) * (t - 4) + 8, t * (t - 1) * (t - 3) / 2 + 1)
}

fn one_param(chi_max: i64, start: i64, step: i64, f: fn(i64) -> (i64, i64), tag: fn(i64) -> Provenance) -> Vec<GeoPair> {
    let mut out = Vec::new();
    let mut k = start;
    loop {
        let (k2, chi) = f(k);
        if chi > chi_max {
            break;
        }
        out.push(GeoPair { k2, chi, provenance: tag(k) });
        k += step;
    }
    out
}

/// `(m, n)` families whose `χ` grows in both parameters.
fn two_params(
    chi_max: i64,
    m_min: i64,
    n_min: i64,
    n_step: i64,
    f: fn(i64, i64) -> (i64, i64),
    tag: fn(i64, i64) -> Provenance,
) -> Vec<GeoPair> {
    let mut out = Vec::new();
    let mut n = n_min;
    while f(m_min, n).1 <= chi_max {
        let mut m = m_min;
        loop {
            let (k2, chi) = f(m, n);
            if chi > chi_max {
                break;
            }
            out.push(GeoPair { k2, chi, provenance: tag(m, n) });
            m += 1;
        }
        n += n_step;
    }
    out
}

/// All pairs of one set with `χ ≤ chi_max`, sorted by `(χ, K², provenance)`.
pub fn enumerate_set(which: SetKind, chi_max: i64) -> Vec<GeoPair> {
    let mut out = match which {
        SetKind::A1 => one_param(chi_max, 2, 1, a1_pair, |n| Provenance::A1 { n }),
        SetKind::A2 => two_params(chi_max, 3, 2, 2, a2_pair, |m, n| Provenance::A2 { m, n }),
        SetKind::A3 => two_params(chi_max, 2, 4, 2, a3_pair, |m, n| Provenance::A3 { m, n }),
        SetKind::B => one_param(chi_max, 4, 1, b_pair, |n| Provenance::B { n }),
        SetKind::T => one_param(chi_max, 6, 2, t_pair, |t| Provenance::T { t }),
    };
    out.sort();
    out
}

/// A2 with `m ≥ 2` and every `n ≥ 2`.
pub fn enumerate_a2_relaxed(chi_max: i64) -> Vec<GeoPair> {
    let mut out = two_params(chi_max, 2, 2, 1, a2_pair, |m, n| Provenance::A2 { m, n });
    out.sort();
    out
}

/// Noether, BMY and positivity.
pub fn admissible(k2: i64, chi: i64) -> bool {
    k2 >= 1 && chi >= 1 && k2 >= 2 * chi - 6 && k2 <= 9 * chi
}

/// `K²/χ`.
pub fn slope(p: &GeoPair) -> Rational {
    ratio(p.k2, p.chi)
}

/// `4 + 4(1-n-mn)/(1-n+mn²)`.
pub fn slope_formula(m: i64, n: i64) -> Rational {
    rat(4) + ratio(4 * (1 - n - m * n), 1 - n + m * n * n)
}

/// Slope of the second family from its closed form.
pub fn a2_slope(m: i64, n: i64) -> Rational {
    let (k2, chi) = a2_pair(m, n);
    ratio(k2, chi)
}

/// Pairs `(m, n)` with `m ≤ m_max`, even `n ≤ n_max` (`m ≥ 1`, `n ≥ 2`)
/// where the closed-form slope and the `μ` formula disagree.
pub fn slope_identity_failures(m_max: i64, n_max: i64) -> Vec<(i64, i64)> {
    let mut bad = Vec::new();
    for m in 1..=m_max {
        for n in (2..=n_max).step_by(2) {
            if a2_slope(m, n) != slope_formula(m, n) {
                bad.push((m, n));
            }
        }
    }
    bad
}

/// Which parameter is held fixed in a slope sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeSweep {
    /// Fixed even `n`, `m = 3..=m_max`; limit `4 - 4/n`.
    FixN { n: i64, m_max: i64 },
    /// Fixed `m ≥ 3`, even `n = 2..=n_max`; limit `4`.
    FixM { m: i64, n_max: i64 },
}

impl SlopeSweep {
    pub fn limit(&self) -> Rational {
        match *self {
            SlopeSweep::FixN { n, .. } => rat(4) - ratio(4, n),
            SlopeSweep::FixM { .. } => rat(4),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SlopeSweep::FixN { n, m_max } => {
                if n < 2 || n % 2 != 0 {
                    return Err(Error::Constraint(format!("n must be even and >= 2, got n = {n}")));
                }
                if m_max < 3 {
                    return Err(Error::Constraint(format!("m_max must be >= 3, got {m_max}")));
                }
            }
            SlopeSweep::FixM { m, n_max } => {
                if m < 3 {
                    return Err(Error::Constraint(format!("m must be >= 3, got m = {m}")));
                }
                if n_max < 2 {
                    return Err(Error::Constraint(format!("n_max must be >= 2, got {n_max}")));
                }
            }
        }
        Ok(())
    }

    fn points(&self) -> Vec<(i64, i64)> {
        match *self {
            SlopeSweep::FixN { n, m_max } => (3..=m_max).map(|m| (m, n)).collect(),
            SlopeSweep::FixM { m, n_max } => (2..=n_max).step_by(2).map(|n| (m, n)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeRow {
    pub m: i64,
    pub n: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
    pub slope: String,
    pub formula: String,
    pub identity: bool,
    pub distance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeLimitReport {
    pub sweep: SlopeSweep,
    pub limit: String,
    pub rows: Vec<SlopeRow>,
    pub all_identities_hold: bool,
    /// Distances to the limit never increase along the sweep.
    pub monotone: bool,
    pub final_distance: String,
    pub threshold: String,
    pub below_threshold: bool,
}

impl SlopeLimitReport {
    pub fn final_distance_value(&self) -> Rational {
        self.final_distance.parse().expect("rational written by this module")
    }
}

/// Exact slope table of the second family with its limit.
pub fn slope_limit_report(sweep: SlopeSweep, threshold: &Rational) -> Result<SlopeLimitReport> {
    sweep.validate()?;
    let limit = sweep.limit();
    let mut rows = Vec::new();
    let mut distances = Vec::new();
    for (m, n) in sweep.points() {
        let (k2, chi) = a2_pair(m, n);
        let mu = ratio(k2, chi);
        let formula = slope_formula(m, n);
        let distance = (&mu - &limit).abs();
        rows.push(SlopeRow {
            m,
            n,
            k2,
            chi,
            slope: mu.to_string(),
            formula: formula.to_string(),
            identity: mu == formula,
            distance: distance.to_string(),
        });
        distances.push(distance);
    }
    let final_distance = distances.last().cloned().unwrap_or_else(Rational::zero);
    Ok(SlopeLimitReport {
        sweep,
        limit: limit.to_string(),
        all_identities_hold: rows.iter().all(|r| r.identity),
        monotone: distances.windows(2).all(|w| w[1] <= w[0]),
        below_threshold: &final_distance < threshold,
        final_distance: final_distance.to_string(),
        threshold: threshold.to_string(),
        rows,
    })
}

/// `|μ - limit|` at a single parameter pair.
pub fn distance_to_limit(m: i64, n: i64, limit: &Rational) -> Rational {
    (slope_formula(m, n) - limit).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Verified,
    RefutedWithinBound,
    VerifiedUnderRelaxedAssumption,
}

impl ClaimStatus {
    pub fn is_success(self) -> bool {
        !matches!(self, ClaimStatus::RefutedWithinBound)
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::RefutedWithinBound => "refuted_within_bound",
            ClaimStatus::VerifiedUnderRelaxedAssumption => "verified_under_relaxed_assumption",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub witnesses: Vec<String>,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetRelationsReport {
    pub chi_max: i64,
    pub set_sizes: Vec<(SetKind, usize)>,
    pub claims: Vec<Claim>,
}

impl SetRelationsReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn all_succeeded(&self) -> bool {
        self.claims.iter().all(|c| c.status.is_success())
    }

    /// Claims as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.claims).expect("claims serialize") + "\n"
    }
}

fn points(pairs: &[GeoPair]) -> BTreeSet<(i64, i64)> {
    pairs.iter().map(GeoPair::point).collect()
}

fn is_square(v: i64) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == v)
}

/// `K²/2` is an integer square.
pub fn half_is_square(k2: i64) -> bool {
    k2 % 2 == 0 && is_square(k2 / 2)
}

/// Dyadic windows `[c, 2c]` with `c` a power of two, from the first power
/// of two at least `start` while `2c ≤ chi_max`.
pub fn dyadic_windows(start: i64, chi_max: i64) -> Vec<(i64, i64)> {
    let mut c = 1i64;
    while c < start.max(1) {
        c *= 2;
    }
    let mut out = Vec::new();
    while 2 * c <= chi_max {
        out.push((c, 2 * c));
        c *= 2;
    }
    out
}

/// Counts per window; `None` if some window is empty.
fn window_counts(set: &BTreeSet<(i64, i64)>, windows: &[(i64, i64)]) -> Option<Vec<usize>> {
    let counts: Vec<usize> = windows
        .iter()
        .map(|&(lo, hi)| set.iter().filter(|p| p.1 >= lo && p.1 <= hi).count())
        .collect();
    counts.iter().all(|&c| c > 0).then_some(counts)
}

fn describe_windows(name: &str, windows: &[(i64, i64)], counts: &[usize]) -> String {
    let parts: Vec<String> = windows
        .iter()
        .zip(counts)
        .map(|((lo, hi), c)| format!("[{lo},{hi}]:{c}"))
        .collect();
    format!("{name} per window: {}", parts.join(" "))
}

/// Coefficient comparison of two polynomial identities in `t`.
pub struct SymbolicIdentity {
    pub name: &'static str,
    pub lhs: [UPoly; 2],
    pub rhs: [UPoly; 2],
}

impl SymbolicIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn poly_t(c: &[i64]) -> UPoly {
    UPoly::from_ints(c)
}

/// `T` against `A3` at `(m, n) = (t-3, t)` and against `A2` at
/// `(m, n) = (t/2-1, t-1)`, as polynomials in `t`.
pub fn t_identities() -> [SymbolicIdentity; 2] {
    let t = UPoly::t();
    let one = poly_t(&[1]);
    let c = |k: i64| poly_t(&[k]);
    let t_k2 = &(&(&(&t * &(&t - &one)) * &(&t - &c(4))) * &c(2)) + &c(8);
    let t_chi = &(&(&t * &(&t - &one)) * &(&t - &c(3))).scale(&ratio(1, 2)) + &one;

    // A3 at m = t - 3, n = t.
    let m3 = &t - &c(3);
    let n3 = t.clone();
    let a3_k2 = &(&(&(&m3 * &(&n3 * &n3)) * &c(2)) - &(&(&(&m3 + &one) * &n3) * &c(4))) + &c(8);
    let a3_chi = &(&(&m3 * &n3) * &(&n3 - &one)).scale(&ratio(1, 2)) + &one;

    // A2 at m = t/2 - 1, n = t - 1.
    let m2 = &t.scale(&ratio(1, 2)) - &one;
    let n2 = &t - &one;
    let a2_k2 = &(&(&(&m2 * &(&n2 * &n2)) * &c(4)) - &(&(&(&m2 + &c(2)) * &n2) * &c(4))) + &c(8);
    let a2_chi = &(&(&m2 * &(&n2 * &n2)) - &n2) + &one;

    [
        SymbolicIdentity {
            name: "T = A3(t-3, t)",
            lhs: [t_k2.clone(), t_chi.clone()],
            rhs: [a3_k2, a3_chi],
        },
        SymbolicIdentity {
            name: "T = A2(t/2-1, t-1)",
            lhs: [t_k2, t_chi],
            rhs: [a2_k2, a2_chi],
        },
    ]
}

fn status(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Verified
    } else {
        ClaimStatus::RefutedWithinBound
    }
}

fn first_few(set: &BTreeSet<(i64, i64)>, k: usize) -> String {
    let mut v: Vec<&(i64, i64)> = set.iter().collect();
    v.sort_by_key(|p| (p.1, p.0));
    let shown: Vec<String> = v.iter().take(k).map(|(a, b)| format!("({a},{b})")).collect();
    shown.join(" ")
}

/// Certificates for the set-theoretic claims within `χ ≤ chi_max`.
pub fn set_relations_report(chi_max: i64) -> Result<SetRelationsReport> {
    if chi_max < 3 {
        return Err(Error::Constraint(format!("chi_max must be >= 3, got {chi_max}")));
    }
    let sets: Vec<(SetKind, Vec<GeoPair>)> = SetKind::ALL
        .iter()
        .map(|&k| (k, enumerate_set(k, chi_max)))
        .collect();
    let get = |k: SetKind| &sets.iter().find(|(s, _)| *s == k).expect("all sets enumerated").1;
    let pts = |k: SetKind| points(get(k));
    let (a1, a2, a3, b, t) = (pts(SetKind::A1), pts(SetKind::A2), pts(SetKind::A3), pts(SetKind::B), pts(SetKind::T));
    let a2_relaxed = points(&enumerate_a2_relaxed(chi_max));
    let mut claims = Vec::new();

    // i) five empty intersections.
    let pairs = [
        ("A1∩B", &a1, &b),
        ("A2∩B", &a2, &b),
        ("A3∩B", &a3, &b),
        ("A1∩A2", &a1, &a2),
        ("A1∩A3", &a1, &a3),
    ];
    let mut ok = true;
    let mut witnesses = Vec::new();
    for (name, x, y) in pairs {
        let common: BTreeSet<_> = x.intersection(y).copied().collect();
        ok &= common.is_empty();
        witnesses.push(if common.is_empty() {
            format!("{name} = ∅")
        } else {
            format!("{name} ∋ {}", first_few(&common, 3))
        });
    }
    claims.push(Claim { claim_id: "i".into(), status: status(ok), witnesses, bound: chi_max });

    // Parity and square ingredients of the disjointness argument.
    let checks: [(&str, bool); 4] = [
        ("K2 odd on A1", a1.iter().all(|p| p.0 % 2 != 0)),
        ("K2 even on A2 ∪ A3", a2.iter().chain(&a3).all(|p| p.0 % 2 == 0)),
        ("chi odd on A2", a2.iter().all(|p| p.1 % 2 != 0)),
        ("K2/2 a square on B", b.iter().all(|p| half_is_square(p.0))),
    ];
    claims.push(Claim {
        claim_id: "i.ingredients".into(),
        status: status(checks.iter().all(|c| c.1)),
        witnesses: checks
            .iter()
            .map(|(name, holds)| format!("{name}: {}", if *holds { "holds" } else { "fails" }))
            .collect(),
        bound: chi_max,
    });
    let square_halves = |set: &BTreeSet<(i64, i64)>| -> BTreeSet<(i64, i64)> {
        set.iter().filter(|p| half_is_square(p.0)).copied().collect()
    };
    let mut ok = true;
    let mut witnesses = Vec::new();
    for (name, set) in [("A1", &a1), ("A2", &a2), ("A3", &a3)] {
        let hits = square_halves(set);
        ok &= hits.is_empty();
        witnesses.push(if hits.is_empty() {
            format!("{name}: K2/2 never a square")
        } else {
            format!("{name}: K2/2 a square for {} pairs, first {}", hits.len(), first_few(&hits, 3))
        });
    }
    claims.push(Claim { claim_id: "i.non_square".into(), status: status(ok), witnesses, bound: chi_max });

    // ii) both differences are infinite: nonempty in every dyadic window.
    let a2_minus: BTreeSet<_> = a2.difference(&a3).copied().collect();
    let a3_minus: BTreeSet<_> = a3.difference(&a2).copied().collect();
    let start = a2_minus.iter().chain(&a3_minus).map(|p| p.1).min().unwrap_or(1);
    let windows = dyadic_windows(start, chi_max);
    let c2 = window_counts(&a2_minus, &windows);
    let c3 = window_counts(&a3_minus, &windows);
    let mut witnesses = vec![
        format!("|A2∖A3| = {}", a2_minus.len()),
        format!("|A3∖A2| = {}", a3_minus.len()),
    ];
    if let Some(c) = &c2 {
        witnesses.push(describe_windows("A2∖A3", &windows, c));
    }
    if let Some(c) = &c3 {
        witnesses.push(describe_windows("A3∖A2", &windows, c));
    }
    claims.push(Claim {
        claim_id: "ii".into(),
        status: status(c2.is_some() && c3.is_some() && !windows.is_empty()),
        witnesses,
        bound: chi_max,
    });

    // T ⊆ A3 and T ⊆ A2.
    let [id3, id2] = t_identities();
    let t_in_a3 = t.iter().all(|p| a3.contains(p));
    claims.push(Claim {
        claim_id: "T⊆A3".into(),
        status: status(t_in_a3 && id3.holds()),
        witnesses: vec![
            format!("{} symbolic identity: {}", id3.name, if id3.holds() { "holds" } else { "fails" }),
            format!("{} T pairs checked, all in A3: {}", t.len(), t_in_a3),
            format!("first T pairs: {}", first_few(&t, 3)),
        ],
        bound: chi_max,
    });
    let t_in_a2_strict = t.iter().all(|p| a2.contains(p));
    let t_in_a2_relaxed = t.iter().all(|p| a2_relaxed.contains(p));
    let t_strict_count = t.iter().filter(|p| a2.contains(p)).count();
    let a2_status = if t_in_a2_strict && id2.holds() {
        ClaimStatus::Verified
    } else if t_in_a2_relaxed && id2.holds() {
        ClaimStatus::VerifiedUnderRelaxedAssumption
    } else {
        ClaimStatus::RefutedWithinBound
    };
    claims.push(Claim {
        claim_id: "T⊆A2".into(),
        status: a2_status,
        witnesses: vec![
            format!("{} symbolic identity: {}", id2.name, if id2.holds() { "holds" } else { "fails" }),
            format!(
                "printed constraints (m >= 3, n even): {t_strict_count} of {} T pairs in A2; n = t-1 is odd for even t",
                t.len()
            ),
            format!(
                "relaxed constraints (m >= 2, any n >= 2): all T pairs in A2: {t_in_a2_relaxed}"
            ),
            "t = 6 gives (128,46) = A2(m=2,n=5)".into(),
        ],
        bound: chi_max,
    });

    // iii) A2 ∩ A3 infinite.
    let strict_common: BTreeSet<_> = a2.intersection(&a3).copied().collect();
    let relaxed_common: BTreeSet<_> = a2_relaxed.intersection(&a3).copied().collect();
    let start = relaxed_common.iter().map(|p| p.1).min().unwrap_or(1);
    let windows = dyadic_windows(start, chi_max);
    let relaxed_counts = window_counts(&relaxed_common, &windows);
    let strict_counts = window_counts(&strict_common, &windows);
    let iii_status = if strict_counts.is_some() && !windows.is_empty() {
        ClaimStatus::Verified
    } else if relaxed_counts.is_some() && !windows.is_empty() && t_in_a2_relaxed {
        ClaimStatus::VerifiedUnderRelaxedAssumption
    } else {
        ClaimStatus::RefutedWithinBound
    };
    let mut witnesses = vec![
        format!("printed constraints: |A2∩A3| = {}", strict_common.len()),
        format!("relaxed constraints: |A2∩A3| = {}", relaxed_common.len()),
        format!("first relaxed common pairs: {}", first_few(&relaxed_common, 4)),
    ];
    if let Some(c) = &relaxed_counts {
        witnesses.push(describe_windows("relaxed A2∩A3", &windows, c));
    }
    claims.push(Claim { claim_id: "iii".into(), status: iii_status, witnesses, bound: chi_max });

    // Noether-line slices.
    let on_noether = |set: &BTreeSet<(i64, i64)>| -> BTreeSet<(i64, i64)> {
        set.iter().filter(|p| p.0 == 2 * p.1 - 6).copied().collect()
    };
    let a2_slice = on_noether(&a2);
    let expected: BTreeSet<(i64, i64)> = (3..)
        .map(|m| (8 * m - 8, 4 * m - 1))
        .take_while(|p| p.1 <= chi_max)
        .collect();
    let a3_slice = on_noether(&a3);
    claims.push(Claim {
        claim_id: "noether".into(),
        status: status(a2_slice == expected && a3_slice.is_empty()),
        witnesses: vec![
            format!("A2 on K2 = 2chi-6: {} pairs, equal to {{(8m-8,4m-1)}}: {}", a2_slice.len(), a2_slice == expected),
            format!("A3 on K2 = 2chi-6: {} pairs", a3_slice.len()),
        ],
        bound: chi_max,
    });

    // Admissibility of every enumerated pair.
    let bad: Vec<String> = sets
        .iter()
        .flat_map(|(_, v)| v.iter())
        .filter(|p| !admissible(p.k2, p.chi))
        .map(|p| format!("{} at {}", p.provenance, p.chi))
        .take(3)
        .collect();
    claims.push(Claim {
        claim_id: "admissible".into(),
        status: status(bad.is_empty()),
        witnesses: if bad.is_empty() {
            vec!["every enumerated pair satisfies K2 >= 1, chi >= 1, Noether and BMY".into()]
        } else {
            bad
        },
        bound: chi_max,
    });

    Ok(SetRelationsReport {
        chi_max,
        set_sizes: sets.iter().map(|(k, v)| (*k, v.len())).collect(),
        claims,
    })
}

/// Family whose members lie on a line in the `(χ, K²)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineFamily {
    /// `n·K² = 4(n-1)χ - 4(n+1)(n-1)`.
    Second,
    /// `(n-1)·K² = 4(n-2)χ - 4n(n-2)`.
    Third,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRow {
    pub m: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesReport {
    pub family: LineFamily,
    pub n: i64,
    /// Slope of the line as an exact rational.
    pub line_slope: String,
    pub below_severi: bool,
    pub rows: Vec<LineRow>,
    pub all_hold: bool,
}

/// Checks the line equation for `m` in `m_range`, denominators cleared.
pub fn lines_report(family: LineFamily, n: i64, m_range: std::ops::RangeInclusive<i64>) -> Result<LinesReport> {
    let (n_min, m_min) = match family {
        LineFamily::Second => (2, 3),
        LineFamily::Third => (4, 2),
    };
    if n < n_min || n % 2 != 0 {
        return Err(Error::Constraint(format!("n must be even and >= {n_min}, got n = {n}")));
    }
    if *m_range.start() < m_min {
        return Err(Error::Constraint(format!("m must be >= {m_min}")));
    }
    let (den, num, constant) = match family {
        LineFamily::Second => (n, 4 * (n - 1), 4 * (n + 1) * (n - 1)),
        LineFamily::Third => (n - 1, 4 * (n - 2), 4 * n * (n - 2)),
    };
    let rows: Vec<LineRow> = m_range
        .map(|m| {
            let (k2, chi) = match family {
                LineFamily::Second => a2_pair(m, n),
                LineFamily::Third => a3_pair(m, n),
            };
            LineRow { m, k2, chi, lhs: den * k2, rhs: num * chi - constant }
        })
        .collect();
    let line_slope = ratio(num, den);
    Ok(LinesReport {
        family,
        n,
        below_severi: line_slope < rat(4),
        line_slope: line_slope.to_string(),
        all_hold: rows.iter().all(|r| r.lhs == r.rhs),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FigureFormat {
    Svg,
    Csv,
}

impl FromStr for FigureFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "svg" => Ok(FigureFormat::Svg),
            "csv" => Ok(FigureFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Enumerates the requested sets, merged and sorted.
pub fn enumerate_sets(sets: &[SetKind], chi_max: i64) -> Vec<GeoPair> {
    let mut kinds = sets.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut all: Vec<GeoPair> = kinds.iter().flat_map(|&k| enumerate_set(k, chi_max)).collect();
    all.sort();
    all
}

/// CSV table with header `set_label,params,K2,chi,slope_num,slope_den`.
pub fn emit_csv(pairs: &[GeoPair]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(["set_label", "params", "K2", "chi", "slope_num", "slope_den"]).map_err(io)?;
    for p in pairs {
        let s = slope(p);
        w.write_record([
            p.provenance.kind().label().to_string(),
            p.provenance.params(),
            p.k2.to_string(),
            p.chi.to_string(),
            s.numer().to_string(),
            s.denom().to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Upper `χ` bounds of the panels, largest first: `chi_max / 10^j` while at
/// least 20, between two and four panels.
pub fn panel_bounds(chi_max: i64) -> Vec<i64> {
    let mut bounds = vec![chi_max];
    while bounds.len() < 4 {
        let next = bounds.last().unwrap() / 10;
        if next < 20 {
            break;
        }
        bounds.push(next);
    }
    if bounds.len() < 2 {
        bounds.push((chi_max / 2).max(1));
    }
    bounds
}

const PANEL: f64 = 360.0;
const MARGIN: f64 = 50.0;
const GAP: f64 = 40.0;
const LEGEND_H: f64 = 40.0;

fn marker(kind: SetKind, x: f64, y: f64) -> String {
    let class = format!("marker set-{}", kind.label());
    match kind {
        SetKind::A1 => format!(r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="2.50"/>"#),
        SetKind::A2 => format!(
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="4.00" height="4.00"/>"#,
            x - 2.0,
            y - 2.0
        ),
        SetKind::A3 => format!(
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
            x,
            y - 3.0,
            x - 3.0,
            y + 2.0,
            x + 3.0,
            y + 2.0
        ),
        SetKind::B => format!(
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
            x,
            y - 3.0,
            x + 3.0,
            y,
            x,
            y + 3.0,
            x - 3.0,
            y
        ),
        SetKind::T => format!(
            r#"<path class="{class}" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}"/>"#,
            x - 3.0,
            y - 3.0,
            x + 3.0,
            y + 3.0,
            x - 3.0,
            y + 3.0,
            x + 3.0,
            y - 3.0
        ),
    }
}

fn swatch(kind: SetKind, x: f64, y: f64) -> String {
    marker(kind, x, y).replacen("marker set-", "legend-swatch set-", 1)
}

/// Multi-panel SVG of the `(χ, K²)` plane with the Noether, Severi and BMY
/// lines. Each panel is an affine window `[0, b] × [0, 9b]`; a pair is drawn
/// in the smallest panel whose bound is at least its `χ`, so every pair
/// appears exactly once.
pub fn emit_svg(sets: &[SetKind], chi_max: i64) -> String {
    let pairs = enumerate_sets(sets, chi_max);
    let bounds = panel_bounds(chi_max);
    let k = bounds.len() as f64;
    let width = 2.0 * MARGIN + k * PANEL + (k - 1.0) * GAP;
    let height = 2.0 * MARGIN + PANEL + LEGEND_H;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    s.push_str(concat!(
        "<style>",
        ".frame{fill:none;stroke:#000;stroke-width:1}",
        ".line-noether{stroke:#1f77b4;stroke-width:1.2}",
        ".line-severi{stroke:#d62728;stroke-width:1.2}",
        ".line-bmy{stroke:#2ca02c;stroke-width:1.2}",
        ".set-A1{fill:#9467bd}.set-A2{fill:#1f77b4}.set-A3{fill:#ff7f0e}.set-B{fill:#8c564b}",
        ".set-T{fill:none;stroke:#e377c2;stroke-width:1.2}",
        "text{font-family:sans-serif;font-size:11px}",
        "</style>\n"
    ));
    for (j, &hi) in bounds.iter().enumerate() {
        let lo = bounds.get(j + 1).copied();
        let x0 = MARGIN + j as f64 * (PANEL + GAP);
        let y0 = MARGIN;
        let hi_f = hi as f64;
        let kmax = 9.0 * hi_f;
        let tx = |chi: f64| x0 + chi / hi_f * PANEL;
        let ty = |k2: f64| y0 + PANEL - k2 / kmax * PANEL;
        s.push_str(&format!("<g class=\"panel\" id=\"panel-{j}\">\n"));
        s.push_str(&format!(
            "<rect class=\"frame\" x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{PANEL:.2}\" height=\"{PANEL:.2}\"/>\n"
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">chi in [0, {hi}], K2 in [0, {}]</text>\n",
            x0,
            y0 - 8.0,
            9 * hi
        ));
        // Noether K2 = 2chi - 6 from its zero at chi = 3.
        if hi_f > 3.0 {
            s.push_str(&format!(
                "<line class=\"line-noether\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
                tx(3.0),
                ty(0.0),
                tx(hi_f),
                ty(2.0 * hi_f - 6.0)
            ));
        }
        for (class, slope) in [("line-severi", 4.0), ("line-bmy", 9.0)] {
            s.push_str(&format!(
                "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
                tx(0.0),
                ty(0.0),
                tx(hi_f),
                ty(slope * hi_f)
            ));
        }
        for p in pairs.iter().filter(|p| p.chi <= hi && lo.is_none_or(|lo| p.chi > lo)) {
            s.push_str(&marker(p.provenance.kind(), tx(p.chi as f64), ty(p.k2 as f64)));
            s.push('\n');
        }
        s.push_str("</g>\n");
    }
    // Legend.
    let ly = MARGIN + PANEL + 28.0;
    let mut lx = MARGIN;
    s.push_str("<g class=\"legend\">\n");
    for (class, label) in [("line-noether", "Noether"), ("line-severi", "Severi"), ("line-bmy", "BMY")] {
        s.push_str(&format!(
            "<line class=\"{class}\" x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\"/><text x=\"{:.2}\" y=\"{:.2}\">{label}</text>\n",
            lx + 16.0,
            lx + 20.0,
            ly + 4.0
        ));
        lx += 80.0;
    }
    let mut kinds = sets.to_vec();
    kinds.sort();
    kinds.dedup();
    for kind in kinds {
        s.push_str(&swatch(kind, lx + 4.0, ly));
        s.push_str(&format!("<text x=\"{:.2}\" y=\"{:.2}\">{kind}</text>\n", lx + 12.0, ly + 4.0));
        lx += 50.0;
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn emit_figure(sets: &[SetKind], chi_max: i64, format: FigureFormat) -> Result<String> {
    match format {
        FigureFormat::Svg => Ok(emit_svg(sets, chi_max)),
        FigureFormat::Csv => emit_csv(&enumerate_sets(sets, chi_max)),
    }
}

/// Number of markers in an SVG produced by [`emit_svg`].
pub fn count_markers(svg: &str) -> usize {
    svg.matches("class=\"marker ").count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(kind: SetKind, chi_max: i64) -> Vec<(i64, i64)> {
        enumerate_set(kind, chi_max).iter().map(GeoPair::point).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(pts(SetKind::A1, 31), vec![(1, 3), (9, 7), (25, 13), (49, 21), (81, 31)]);
        assert_eq!(pts(SetKind::B, 11), vec![(2, 4), (8, 7), (18, 11)]);
        assert_eq!(pts(SetKind::T, 46), vec![(128, 46)]);
        assert_eq!(pts(SetKind::A2, 11), vec![(16, 11)]);
        assert_eq!(pts(SetKind::A3, 13), vec![(24, 13)]);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(1, 3));
        assert!(admissible(16, 11));
        assert!(admissible(1, 1));
        assert!(!admissible(19, 2));
        assert!(!admissible(0, 5));
        assert!(!admissible(3, 10));
    }

    #[test]
    fn slopes() {
        let p = GeoPair { k2: 16, chi: 11, provenance: Provenance::A2 { m: 3, n: 2 } };
        assert_eq!(slope(&p), ratio(16, 11));
        assert_eq!(slope_formula(3, 2), ratio(16, 11));
        let q = GeoPair { k2: 4, chi: 1, provenance: Provenance::A1 { n: 2 } };
        assert_eq!(slope(&q), rat(4));
        assert!(slope_identity_failures(12, 12).is_empty());
        assert!(distance_to_limit(200, 2, &rat(2)) < ratio(1, 100));
        assert_eq!(distance_to_limit(3, 100, &rat(4)), ratio(1596, 29901));
        assert!(distance_to_limit(3, 100, &rat(4)) > ratio(1, 50));
    }

    #[test]
    fn slope_reports() {
        let r = slope_limit_report(SlopeSweep::FixN { n: 2, m_max: 20 }, &ratio(1, 10)).unwrap();
        assert_eq!(r.limit, "2");
        assert_eq!(r.rows.len(), 18);
        assert!(r.all_identities_hold && r.monotone && r.below_threshold);
        let r = slope_limit_report(SlopeSweep::FixM { m: 3, n_max: 40 }, &ratio(1, 5)).unwrap();
        assert_eq!(r.limit, "4");
        assert!(r.all_identities_hold);
        assert!(slope_limit_report(SlopeSweep::FixN { n: 3, m_max: 20 }, &ratio(1, 10)).is_err());
        assert!(slope_limit_report(SlopeSweep::FixM { m: 2, n_max: 20 }, &ratio(1, 10)).is_err());
    }

    #[test]
    fn symbolic_identities() {
        let [a3, a2] = t_identities();
        assert!(a3.holds());
        assert!(a2.holds());
        assert_eq!(t_pair(6), a3_pair(3, 6));
        assert_eq!(t_pair(6), a2_pair(2, 5));
    }

    #[test]
    fn relations_small_bound() {
        let r = set_relations_report(500).unwrap();
        for id in ["i.ingredients", "ii", "T⊆A3", "noether", "admissible"] {
            assert_eq!(r.claim(id).unwrap().status, ClaimStatus::Verified, "{id}");
        }
        assert_eq!(r.claim("T⊆A2").unwrap().status, ClaimStatus::VerifiedUnderRelaxedAssumption);
        assert_eq!(r.claim("iii").unwrap().status, ClaimStatus::VerifiedUnderRelaxedAssumption);
        // (128, 46) = A3(3, 6) = B(11) = T(6).
        let i = r.claim("i").unwrap();
        assert_eq!(i.status, ClaimStatus::RefutedWithinBound);
        assert!(i.witnesses.contains(&"A3∩B ∋ (128,46)".to_string()));
        assert_eq!(r.claim("i.non_square").unwrap().status, ClaimStatus::RefutedWithinBound);
        assert!(!r.all_succeeded());
        assert_eq!(a3_pair(3, 6), b_pair(11));
        assert!(set_relations_report(2).is_err());
    }

    #[test]
    fn claims_json_shape() {
        let r = set_relations_report(100).unwrap();
        let json = r.to_json();
        assert!(json.starts_with("[\n  {\n    \"claim_id\": \"i\""));
        assert!(json.contains("\"status\": \"verified_under_relaxed_assumption\""));
    }

    #[test]
    fn lines() {
        let r = lines_report(LineFamily::Second, 2, 3..=8).unwrap();
        assert!(r.all_hold && r.below_severi);
        assert_eq!(r.rows[0].lhs, 32);
        assert_eq!(r.rows[0].rhs, 32);
        assert_eq!(r.line_slope, "2");
        let r = lines_report(LineFamily::Third, 4, 2..=8).unwrap();
        assert!(r.all_hold);
        assert_eq!((r.rows[0].lhs, r.rows[0].rhs), (72, 72));
        assert!(lines_report(LineFamily::Third, 2, 2..=3).is_err());
    }

    #[test]
    fn figure_outputs() {
        let csv = emit_figure(&[SetKind::A1], 31, FigureFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "set_label,params,K2,chi,slope_num,slope_den");
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[1], "A1,n=2,1,3,1,3");

        let svg = emit_figure(&[SetKind::A2, SetKind::A3], 200, FigureFormat::Svg).unwrap();
        let expected = enumerate_set(SetKind::A2, 200).len() + enumerate_set(SetKind::A3, 200).len();
        assert_eq!(count_markers(&svg), expected);
        assert!(svg.contains("line-noether") && svg.contains("line-severi") && svg.contains("line-bmy"));
        assert_eq!(svg, emit_svg(&[SetKind::A3, SetKind::A2], 200));

        let empty = emit_svg(&[], 200);
        assert_eq!(count_markers(&empty), 0);
        assert!(empty.contains("line-severi"));
        assert_eq!("png".parse::<FigureFormat>(), Err(Error::UnknownFormat("png".into())));
    }

    #[test]
    fn panels() {
        assert_eq!(panel_bounds(10_000), vec![10_000, 1000, 100]);
        assert_eq!(panel_bounds(200), vec![200, 20]);
        assert_eq!(panel_bounds(100), vec![100, 50]);
        assert_eq!(panel_bounds(1_000_000), vec![1_000_000, 100_000, 10_000, 1000]);
    }

    #[test]
    fn windows() {
        assert_eq!(dyadic_windows(11, 100), vec![(16, 32), (32, 64)]);
        assert!(dyadic_windows(50, 60).is_empty());
    }
}
