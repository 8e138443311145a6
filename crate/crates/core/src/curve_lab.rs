//! Exact checks on the branch curve
//! `C_n = (X0ⁿ + X1ⁿ + X2ⁿ)² - 4((X0X1)ⁿ + (X0X2)ⁿ + (X1X2)ⁿ)`
//! and local `A_k` recognition by square completion.
//!
//! Singular points with root-of-unity coordinates are never represented. The
//! substitution `X1 → ζX1, X2 → ζ'X2` with `ζⁿ = ζ'ⁿ = 1` fixes `C_n`, and it
//! permutes the `n` points on each coordinate line transitively, so checking
//! the rational representative on each line is enough.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, MPoly, Rational, UPoly};

/// Largest `n` accepted by [`singular_points_report`] unless overridden.
pub const DEFAULT_MAX_N: u32 = 8;

/// Upper limit for the automatic jet-bound doubling.
pub const JET_BOUND_CAP: u32 = 64;

/// Homogeneous polynomial in `X0, X1, X2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    degree: u32,
    poly: MPoly<3>,
}

impl HomPoly {
    pub fn new(poly: MPoly<3>) -> Result<Self> {
        let degree = poly.total_degree().unwrap_or(0);
        if !poly.is_homogeneous_of_degree(degree) {
            return Err(Error::InvalidArgument("polynomial is not homogeneous".into()));
        }
        Ok(HomPoly { degree, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MPoly<3> {
        &self.poly
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        self.poly.eval(point)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Polynomial in local coordinates `(x, y)` centred at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPoly(pub MPoly<2>);

impl LocalPoly {
    pub fn poly(&self) -> &MPoly<2> {
        &self.0
    }

    pub fn constant_term(&self) -> Rational {
        self.0.coeff([0, 0])
    }

    /// Lowest-degree homogeneous part.
    pub fn tangent_cone(&self) -> MPoly<2> {
        match self.0.order() {
            Some(d) => self.0.homogeneous_part(d),
            None => MPoly::zero(),
        }
    }

    /// The tangent cone does not vanish on `direction`.
    pub fn is_transversal_to(&self, direction: &[Rational; 2]) -> bool {
        !self.tangent_cone().eval(direction).is_zero()
    }
}

impl fmt::Display for LocalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `l1 = [X0 = 0]`, `l2 = [X1 = 0]`, `l3 = [X2 = 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoordinateLine {
    L1,
    L2,
    L3,
}

impl CoordinateLine {
    pub const ALL: [CoordinateLine; 3] = [CoordinateLine::L1, CoordinateLine::L2, CoordinateLine::L3];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(CoordinateLine::L1),
            2 => Ok(CoordinateLine::L2),
            3 => Ok(CoordinateLine::L3),
            _ => Err(Error::InvalidArgument(format!("line index must be 1, 2 or 3, got {i}"))),
        }
    }

    /// Index of the coordinate that vanishes on the line.
    pub fn vanishing_var(self) -> usize {
        match self {
            CoordinateLine::L1 => 0,
            CoordinateLine::L2 => 1,
            CoordinateLine::L3 => 2,
        }
    }

    /// The two surviving coordinates, in increasing order.
    pub fn remaining_vars(self) -> [usize; 2] {
        match self {
            CoordinateLine::L1 => [1, 2],
            CoordinateLine::L2 => [0, 2],
            CoordinateLine::L3 => [0, 1],
        }
    }

    /// Rational point `(0:1:1)` and its permutations.
    pub fn representative(self) -> [i64; 3] {
        let mut p = [1, 1, 1];
        p[self.vanishing_var()] = 0;
        p
    }

    /// Chart used to localise at [`Self::representative`].
    pub fn chart(self) -> usize {
        self.remaining_vars()[0]
    }
}

impl fmt::Display for CoordinateLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.vanishing_var() + 1)
    }
}

/// The branch curve `C_n` of degree `2n`.
pub fn curve_c(n: u32) -> Result<HomPoly> {
    if n < 2 {
        return Err(Error::Constraint(format!("curve C needs n >= 2, got {n}")));
    }
    let x: [MPoly<3>; 3] = [MPoly::var(0), MPoly::var(1), MPoly::var(2)];
    let p: Vec<MPoly<3>> = x.iter().map(|v| v.pow(n)).collect();
    let s = &(&p[0] + &p[1]) + &p[2];
    let mixed = &(&(&p[0] * &p[1]) + &(&p[0] * &p[2])) + &(&p[1] * &p[2]);
    HomPoly::new(&s.pow(2) - &mixed.scale(&rat(4)))
}

/// Binary form obtained by setting the line's coordinate to zero; the
/// variables are the two remaining coordinates in increasing order.
pub fn restrict_to_line(c: &HomPoly, line: CoordinateLine) -> MPoly<2> {
    let vanishing = line.vanishing_var();
    let [u, v] = line.remaining_vars();
    MPoly::from_terms(
        c.poly
            .terms()
            .filter(|(e, _)| e[vanishing] == 0)
            .map(|(e, c)| ([e[u], e[v]], c.clone())),
    )
}

/// Distinct points of `P¹` where a nonzero binary form vanishes.
///
/// Uses the square-free part `f / gcd(f, f')` of the dehomogenisation, plus
/// the point at infinity when the degree drops.
pub fn binary_distinct_roots(form: &MPoly<2>) -> usize {
    let degree = form.total_degree().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); degree as usize + 1];
    for (e, c) in form.terms() {
        coeffs[e[0] as usize] += c.clone();
    }
    let u = UPoly::new(coeffs);
    let affine = u.distinct_root_count();
    let at_infinity = usize::from(u.degree().unwrap_or(0) < degree as usize);
    affine + at_infinity
}

/// Dehomogenises in `chart` and moves `point` to the origin. The local
/// variables are the two non-chart coordinates in increasing order.
pub fn localize(p: &HomPoly, point: &[Rational; 3], chart: usize) -> Result<LocalPoly> {
    if chart > 2 {
        return Err(Error::InvalidArgument(format!("chart must be 0, 1 or 2, got {chart}")));
    }
    if point[chart].is_zero() {
        return Err(Error::ZeroChartCoordinate);
    }
    if !p.eval(point).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let normalized: Vec<Rational> = point.iter().map(|c| c / &point[chart]).collect();
    let mut subs: [MPoly<2>; 3] = [MPoly::zero(), MPoly::zero(), MPoly::zero()];
    let mut local = 0;
    for (i, sub) in subs.iter_mut().enumerate() {
        if i == chart {
            *sub = MPoly::one();
        } else {
            *sub = &MPoly::var(local) + &MPoly::constant(normalized[i].clone());
            local += 1;
        }
    }
    let f = p.poly.compose(&subs, None);
    debug_assert!(f.coeff([0, 0]).is_zero());
    Ok(LocalPoly(f))
}

/// Outcome of [`classify_ak`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AkClass {
    Smooth,
    A(u32),
    CorankAtLeast2,
}

impl fmt::Display for AkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AkClass::Smooth => write!(f, "Smooth"),
            AkClass::A(k) => write!(f, "A{k}"),
            AkClass::CorankAtLeast2 => write!(f, "CorankAtLeast2"),
        }
    }
}

/// Part of `f` of the form `y^k · (…)(x)`, returned as a polynomial in `x`.
fn y_coefficient(f: &MPoly<2>, k: u32) -> MPoly<2> {
    MPoly::from_terms(
        f.terms()
            .filter(|(e, _)| e[1] == k)
            .map(|(e, c)| ([e[0], 0], c.clone())),
    )
}

/// Recognises `A_k` germs at the origin working modulo terms of total
/// degree `>= jet_bound`.
///
/// After a linear change putting the quadratic part into the form `c·y²`,
/// repeated substitutions `y → y - a₁(x)/(2c)` remove the part linear in
/// `y`, leaving `unit·y² + g(x)`. Substitutions of this shape map the ideal
/// of terms of degree `>= jet_bound` into itself, and `A_k` is
/// `(k+1)`-determined, so `ord g = k+1 < jet_bound` certifies `A_k`.
pub fn classify_ak(f: &LocalPoly, jet_bound: u32) -> Result<AkClass> {
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidArgument(
            "germ does not pass through the origin (nonzero constant term)".into(),
        ));
    }
    if jet_bound < 3 {
        return Err(Error::JetBoundTooSmall(jet_bound));
    }
    let f = f.0.truncate(jet_bound);
    if !f.homogeneous_part(1).is_zero() {
        return Ok(AkClass::Smooth);
    }
    let (a, b, c) = (f.coeff([2, 0]), f.coeff([1, 1]), f.coeff([0, 2]));
    let det = &a * &c * rat(4) - &b * &b;
    if !det.is_zero() {
        return Ok(AkClass::A(1));
    }
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Ok(AkClass::CorankAtLeast2);
    }

    let x = MPoly::<2>::var(0);
    let y = MPoly::<2>::var(1);
    // Rank one: Q = c(y + b/(2c)·x)² if c ≠ 0, otherwise Q = a·x² and we swap.
    let mut g = if c.is_zero() {
        f.compose(&[y.clone(), x.clone()], Some(jet_bound))
    } else {
        let shift = x.scale(&(&b / (&c * rat(2))));
        f.compose(&[x.clone(), &y - &shift], Some(jet_bound))
    };
    let lead = g.coeff([0, 2]);
    debug_assert!(!lead.is_zero());
    debug_assert!(g.coeff([1, 1]).is_zero() && g.coeff([2, 0]).is_zero());
    let half_inv = Rational::one() / (&lead * rat(2));

    for _ in 0..=jet_bound {
        let linear_in_y = y_coefficient(&g, 1);
        if linear_in_y.is_zero() {
            break;
        }
        let shift = linear_in_y.scale(&half_inv);
        g = g.compose(&[x.clone(), &y - &shift], Some(jet_bound));
    }
    if !y_coefficient(&g, 1).is_zero() {
        return Err(Error::JetBoundTooSmall(jet_bound));
    }
    let pure_x = y_coefficient(&g, 0);
    match pure_x.order() {
        None => Err(Error::JetBoundTooSmall(jet_bound)),
        Some(ord) => Ok(AkClass::A(ord - 1)),
    }
}

/// Initial jet bound `2k + 4` for an expected `A_k`.
pub fn default_jet_bound(expected_k: u32) -> u32 {
    2 * expected_k + 4
}

/// [`classify_ak`] starting at [`default_jet_bound`] and doubling on
/// [`Error::JetBoundTooSmall`] up to [`JET_BOUND_CAP`].
pub fn classify_ak_auto(f: &LocalPoly, expected_k: u32) -> Result<AkClass> {
    let mut bound = default_jet_bound(expected_k).min(JET_BOUND_CAP);
    loop {
        match classify_ak(f, bound) {
            Err(Error::JetBoundTooSmall(_)) if bound < JET_BOUND_CAP => {
                bound = (bound * 2).min(JET_BOUND_CAP);
            }
            Err(Error::JetBoundTooSmall(_)) => return Err(Error::NonIsolated(bound)),
            other => return other,
        }
    }
}

/// Findings on one coordinate line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReport {
    pub line: String,
    pub restriction_identity: bool,
    pub distinct_points: usize,
    pub representative: [i64; 3],
    pub chart: usize,
    pub gradient_vanishes: bool,
    pub representative_type: AkClass,
    pub transversal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointsReport {
    pub n: u32,
    pub lines: Vec<LineReport>,
    pub torus_invariant: bool,
    pub blowup_center_off_curve: bool,
    pub limitations: String,
}

impl SingularPointsReport {
    pub fn total_points(&self) -> usize {
        self.lines.iter().map(|l| l.distinct_points).sum()
    }

    /// The common representative type, when all lines agree.
    pub fn representative_type(&self) -> Option<AkClass> {
        let first = self.lines.first()?.representative_type;
        self.lines
            .iter()
            .all(|l| l.representative_type == first)
            .then_some(first)
    }

    pub fn summary(&self) -> String {
        let rep = self
            .representative_type()
            .map_or_else(|| "mixed".to_string(), |t| t.to_string());
        let yes = |b: bool| if b { "yes" } else { "no" };
        format!(
            "{} lines × {} points, representative {}, transversal: {}, torus-invariant: {}",
            self.lines.len(),
            self.lines.first().map_or(0, |l| l.distinct_points),
            rep,
            yes(self.lines.iter().all(|l| l.transversal)),
            yes(self.torus_invariant),
        )
    }
}

fn stage(stage: &str, detail: impl Into<String>) -> Error {
    Error::Stage {
        stage: stage.into(),
        detail: detail.into(),
    }
}

/// Every exponent of every monomial is a multiple of `n`.
pub fn torus_invariant(c: &HomPoly, n: u32) -> bool {
    c.poly.terms().all(|(e, _)| e.iter().all(|k| k % n == 0))
}

/// Verifies that `C_n` has `n` transversal singular points of type
/// `A_{n-1}` on each coordinate line, for `2 ≤ n ≤ max_n`.
pub fn singular_points_report(n: u32, max_n: u32) -> Result<SingularPointsReport> {
    if n > max_n {
        return Err(Error::Constraint(format!("n = {n} exceeds the bound {max_n}")));
    }
    let c = curve_c(n)?;
    let expected = n - 1;
    let mut lines = Vec::new();
    for line in CoordinateLine::ALL {
        let restriction = restrict_to_line(&c, line);
        let square = &MPoly::<2>::var(0).pow(n) - &MPoly::<2>::var(1).pow(n);
        let identity = restriction == square.pow(2);
        if !identity {
            return Err(stage("restriction", format!("{line}: restriction is not (u^n - v^n)^2")));
        }
        let points = binary_distinct_roots(&restriction);
        if points != n as usize {
            return Err(stage("root_count", format!("{line}: {points} distinct points, expected {n}")));
        }

        let rep = line.representative();
        let chart = line.chart();
        let point = rep.map(rat);
        let local = localize(&c, &point, chart).map_err(|e| stage("localize", e.to_string()))?;
        let gradient_vanishes = local.poly().homogeneous_part(1).is_zero();
        if !gradient_vanishes {
            return Err(stage("singular_point", format!("{line}: representative is a smooth point")));
        }
        let class = classify_ak_auto(&local, expected).map_err(|e| stage("classification", e.to_string()))?;
        if class != AkClass::A(expected) {
            return Err(stage(
                "classification",
                format!("{line}: representative is {class}, expected A{expected}"),
            ));
        }
        // The line's own coordinate is the local variable that vanishes along it.
        let mut direction = [Rational::one(), Rational::one()];
        let local_index = if line.vanishing_var() < chart { line.vanishing_var() } else { line.vanishing_var() - 1 };
        direction[local_index] = Rational::zero();
        let transversal = local.is_transversal_to(&direction);
        if !transversal {
            return Err(stage("transversality", format!("{line}: tangent cone contains the line")));
        }
        lines.push(LineReport {
            line: line.to_string(),
            restriction_identity: identity,
            distinct_points: points,
            representative: rep,
            chart,
            gradient_vanishes,
            representative_type: class,
            transversal,
        });
    }
    let torus = torus_invariant(&c, n);
    if !torus {
        return Err(stage("torus", "some exponent is not divisible by n"));
    }
    let center = [rat(0), rat(0), rat(1)];
    Ok(SingularPointsReport {
        n,
        lines,
        torus_invariant: torus,
        blowup_center_off_curve: !c.eval(&center).is_zero(),
        limitations: "only the three coordinate lines are examined; singular points off \
                      these lines are not searched for"
            .into(),
    })
}

/// Result of parsing the term-sum text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedPoly {
    Local(LocalPoly),
    Homogeneous(HomPoly),
}

struct Term {
    coeff: Rational,
    vars: Vec<(String, u32)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.number()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            position: start,
            message: "exponent too large".into(),
        })
    }

    fn variable(&mut self) -> Result<(String, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            if self.pos > start || self.src[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected a variable"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        if !matches!(name.as_str(), "x" | "y" | "X0" | "X1" | "X2") {
            self.pos = start;
            return Err(self.err(format!("unknown variable `{name}` (use x, y or X0, X1, X2)")));
        }
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        Ok((name, exp))
    }

    fn factor_is_number(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn term(&mut self, sign: i64) -> Result<Term> {
        let mut coeff = rat(sign);
        let mut vars = Vec::new();
        loop {
            if self.factor_is_number() {
                let num = self.number()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.number()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                coeff *= value;
            } else {
                vars.push(self.variable()?);
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Term { coeff, vars })
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            out.push(self.term(sign)?);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(c) => return Err(self.err(format!("unexpected character `{}`", c as char))),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

/// Parses the term-sum format `c*x^i*y^j + …` (local) or
/// `c*X0^i*X1^j*X2^k + …` (homogeneous); `c` may be `p/q`.
pub fn parse_poly(text: &str) -> Result<ParsedPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let terms = parser.terms()?;
    let uses_local = terms.iter().flat_map(|t| &t.vars).any(|(v, _)| v == "x" || v == "y");
    let uses_hom = terms.iter().flat_map(|t| &t.vars).any(|(v, _)| v.starts_with('X'));
    if uses_local && uses_hom {
        return Err(Error::Parse {
            position: 0,
            message: "mixes local (x, y) and homogeneous (X0, X1, X2) variables".into(),
        });
    }
    if uses_hom {
        let mut p = MPoly::<3>::zero();
        for t in terms {
            let mut e = [0u32; 3];
            for (v, k) in t.vars {
                let i = (v.as_bytes()[1] - b'0') as usize;
                e[i] += k;
            }
            p.add_term(e, t.coeff);
        }
        Ok(ParsedPoly::Homogeneous(HomPoly::new(p)?))
    } else {
        let mut p = MPoly::<2>::zero();
        for t in terms {
            let mut e = [0u32; 2];
            for (v, k) in t.vars {
                e[usize::from(v == "y")] += k;
            }
            p.add_term(e, t.coeff);
        }
        Ok(ParsedPoly::Local(LocalPoly(p)))
    }
}

pub fn parse_local(text: &str) -> Result<LocalPoly> {
    match parse_poly(text)? {
        ParsedPoly::Local(p) => Ok(p),
        ParsedPoly::Homogeneous(_) => Err(Error::Parse {
            position: 0,
            message: "expected a local polynomial in x, y".into(),
        }),
    }
}
