//! Sparse exact-rational polynomials.
//!
//! [`MPoly`] is a multivariate polynomial in a fixed number of variables with
//! `BigRational` coefficients, stored as a map from exponent vectors to
//! nonzero coefficients. [`UPoly`] is a dense univariate polynomial used for
//! gcd computations and identity testing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Multivariate polynomial in `N` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<const N: usize> {
    terms: BTreeMap<[u32; N], Rational>,
}

impl<const N: usize> Default for MPoly<N> {
    fn default() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
}

impl<const N: usize> MPoly<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(c: Rational, exps: [u32; N]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; N], Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: [u32; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: [u32; N]) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn deg_of(e: &[u32; N]) -> u32 {
        e.iter().sum()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Self::deg_of).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Self::deg_of).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| Self::deg_of(e) == d)
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::deg_of(e) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::deg_of(e) < bound)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul_truncated(&self, other: &Self, bound: Option<u32>) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = e1[i] + e2[i];
                }
                if bound.is_some_and(|b| Self::deg_of(&e) >= b) {
                    continue;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        self.pow_truncated(k, None)
    }

    pub fn pow_truncated(&self, k: u32, bound: Option<u32>) -> Self {
        let mut acc = Self::one();
        if let Some(b) = bound {
            acc = acc.truncate(b);
        }
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_truncated(&base, bound);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_truncated(&base, bound);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.add_term(ne, c * rat(i64::from(e[var])));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                if e[i] > 0 {
                    t *= num_traits::pow(point[i].clone(), e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `subs[i]` for the `i`-th variable, dropping terms of
    /// total degree `>= bound` after every product.
    pub fn compose<const M: usize>(&self, subs: &[MPoly<M>; N], bound: Option<u32>) -> MPoly<M> {
        let mut cache: Vec<Vec<MPoly<M>>> = vec![Vec::new(); N];
        let mut out = MPoly::<M>::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::<M>::constant(c.clone());
            if let Some(b) = bound {
                term = term.truncate(b);
            }
            for i in 0..N {
                let k = e[i] as usize;
                if k == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(MPoly::<M>::one());
                }
                while powers.len() <= k {
                    let next = powers.last().unwrap().mul_truncated(&subs[i], bound);
                    powers.push(next);
                }
                term = term.mul_truncated(&powers[k], bound);
                if term.is_zero() {
                    break;
                }
            }
            for (e, c) in term.terms {
                out.add_term(e, c);
            }
        }
        out
    }
}

impl<const N: usize> Add for &MPoly<N> {
    type Output = MPoly<N>;
    fn add(self, rhs: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &MPoly<N> {
    type Output = MPoly<N>;
    fn sub(self, rhs: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul for &MPoly<N> {
    type Output = MPoly<N>;
    fn mul(self, rhs: &MPoly<N>) -> MPoly<N> {
        self.mul_truncated(rhs, None)
    }
}

impl<const N: usize> Neg for &MPoly<N> {
    type Output = MPoly<N>;
    fn neg(self) -> MPoly<N> {
        self.scale(&rat(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr for MPoly<N> {
            type Output = MPoly<N>;
            fn $m(self, rhs: MPoly<N>) -> MPoly<N> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<const N: usize> Neg for MPoly<N> {
    type Output = MPoly<N>;
    fn neg(self) -> MPoly<N> {
        -&self
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders a polynomial in the term-sum text format with the given names.
pub fn format_terms<const N: usize>(p: &MPoly<N>, names: &[&str; N]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    // Highest total degree first, then lexicographic in exponents.
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(e1, _), (e2, _)| {
        let d1: u32 = e1.iter().sum();
        let d2: u32 = e2.iter().sum();
        d2.cmp(&d1).then(e2.cmp(e1))
    });
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors = Vec::new();
        if !abs.is_one() || e.iter().all(|&k| k == 0) {
            factors.push(fmt_rational(&abs));
        }
        for (name, &k) in names.iter().zip(e.iter()) {
            match k {
                0 => {}
                1 => factors.push((*name).to_string()),
                _ => factors.push(format!("{name}^{k}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for MPoly<2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self, &["x", "y"]))
    }
}

impl fmt::Display for MPoly<3> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self, &["X0", "X1", "X2"]))
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let v = &c * dc;
                rem[i - dd + j] -= v;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn square_free_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Number of distinct complex roots.
    pub fn distinct_root_count(&self) -> usize {
        self.square_free_part().degree().unwrap_or(0)
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

macro_rules! forward_owned_u {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_u!(Add, add);
forward_owned_u!(Sub, sub);
forward_owned_u!(Mul, mul);


#[cfg(test)]
mod tests {
    use super::*;

    type P2 = MPoly<2>;

    #[test]
    fn arithmetic_basics() {
        let x = P2::var(0);
        let y = P2::var(1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.coeff([1, 1]), rat(2));
        assert_eq!(sq.len(), 3);
        let diff = &sq - &sq;
        assert!(diff.is_zero());
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.order(), Some(2));
        assert!(sq.is_homogeneous_of_degree(2));
    }

    #[test]
    fn truncated_power_matches_full() {
        let x = P2::var(0);
        let y = P2::var(1);
        let p = &(&x + &y.pow(2)) + &P2::constant(ratio(1, 2));
        let full = p.pow(7).truncate(5);
        let trunc = p.pow_truncated(7, Some(5));
        assert_eq!(full, trunc);
    }

    #[test]
    fn compose_and_derivative() {
        let x = P2::var(0);
        let y = P2::var(1);
        let f = &y.pow(2) - &x.pow(3);
        // x -> x + y, y -> y
        let g = f.compose(&[&x + &y, y.clone()], None);
        assert_eq!(g.eval(&[rat(1), rat(2)]), rat(4 - 27));
        let fx = f.derivative(0);
        assert_eq!(fx, x.pow(2).scale(&rat(-3)));
    }

    #[test]
    fn format_roundtrip_text() {
        let x = P2::var(0);
        let y = P2::var(1);
        let f = &(&y.pow(2) - &x.pow(3)) + &x.scale(&ratio(-1, 2));
        assert_eq!(f.to_string(), "-x^3 + y^2 - 1/2*x");
    }

    #[test]
    fn upoly_gcd_and_square_free() {
        // (t^3 - 1)^2
        let p = UPoly::from_ints(&[-1, 0, 0, 1]);
        let sq = &p * &p;
        assert_eq!(sq.distinct_root_count(), 3);
        assert_eq!(sq.square_free_part(), p);
        let (q, r) = sq.div_rem(&p);
        assert_eq!(q, p);
        assert!(r.is_zero());
        assert_eq!(UPoly::from_ints(&[5]).distinct_root_count(), 0);
        assert_eq!(UPoly::from_ints(&[0, 0, 1]).distinct_root_count(), 1);
    }
}
