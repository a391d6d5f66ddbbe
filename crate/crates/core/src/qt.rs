//! Exact coefficient arithmetic.
//!
//! [`IntPoly2`] is an integer polynomial in `q` and `t` (Laurent in `t`),
//! [`FactorDenominator`] a product of factors `1 - q^a t^b` kept factored,
//! and [`QTFraction`] their quotient. [`WeightPolynomial`] is a Laurent
//! polynomial in `x_1, …, x_n` with such coefficients.
//!
//! Fractions are never brought to a gcd-normal form. Addition goes over the
//! least common multiple of the factored denominators followed by trial
//! division by those same factors, and equality is decided by
//! cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial in `q` (nonnegative degrees) and `t` (any degree).
///
/// Terms are keyed by `(deg_q, deg_t)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, i32), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0, 0)
    }

    pub fn monomial(c: BigInt, deg_q: u32, deg_t: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_q, deg_t), c);
        }
        Self { terms }
    }

    pub fn q_pow(a: u32) -> Self {
        Self::monomial(BigInt::one(), a, 0)
    }

    pub fn t_pow(b: i32) -> Self {
        Self::monomial(BigInt::one(), 0, b)
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(a: u32, b: i32) -> Self {
        &Self::one() - &Self::monomial(BigInt::one(), a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Terms in canonical order (lexicographic on `(deg_q, deg_t)`).
    pub fn terms(&self) -> impl Iterator<Item = (u32, i32, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coefficient(&self, deg_q: u32, deg_t: i32) -> BigInt {
        self.terms.get(&(deg_q, deg_t)).cloned().unwrap_or_default()
    }

    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a == 0)
    }

    fn add_term(&mut self, key: (u32, i32), c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn shift(&self, deg_q: u32, deg_t: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), v)| ((a + deg_q, b + deg_t), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `1 - q^a t^b`, or `None` when it does not divide.
    pub fn div_one_minus(&self, a: u32, b: i32) -> Option<Self> {
        if (a, b) == (0, 0) {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with nonnegative t-degrees. With lex order on (deg_q, deg_t)
        // the leading term of 1 - q^a t^b is -q^a t^b.
        let shift = self.terms.keys().map(|&(_, t)| t).min().unwrap().min(0);
        let (a, b) = (a, b as i64);
        let mut rem: BTreeMap<(u32, i64), BigInt> =
            self.terms.iter().map(|(&(q, t), c)| ((q, t as i64 - shift as i64), c.clone())).collect();
        let mut quot = IntPoly2::zero();
        while let Some((&(q, t), c)) = rem.iter().next_back() {
            if q < a || t < b {
                return None;
            }
            let c = c.clone();
            let lowered = (q - a, t - b);
            rem.remove(&(q, t));
            let e = rem.entry(lowered).or_default();
            *e += &c;
            if e.is_zero() {
                rem.remove(&lowered);
            }
            // quotient term: c * X / m with sign -1 absorbed as: p = (1 - m) s
            // gives s's term -c X/m; we accumulate -c.
            quot.add_term((lowered.0, (lowered.1 + shift as i64) as i32), &(-c));
        }
        Some(quot)
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let tq = rational_pow(t, b)?;
            acc += rational_pow(q, a as i32)? * tq * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

fn rational_pow(x: &BigRational, e: i32) -> Result<BigRational> {
    if e < 0 {
        if x.is_zero() {
            return Err(Error::EvaluationPole);
        }
        Ok(num_traits::pow(x.recip(), e.unsigned_abs() as usize))
    } else {
        Ok(num_traits::pow(x.clone(), e as usize))
    }
}

impl Add for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &IntPoly2 {
    type Output = IntPoly2;
    fn sub(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Neg for &IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        IntPoly2 { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Mul for &IntPoly2 {
    type Output = IntPoly2;
    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

fn write_power(parts: &mut Vec<String>, var: &str, e: i64) {
    match e {
        0 => {}
        1 => parts.push(var.to_string()),
        _ => parts.push(format!("{var}^{e}")),
    }
}

/// Canonical form: terms joined by `" + "`, each `c*q^a*t^b` with unit
/// parts omitted, e.g. `1 + -2*t + q*t^-1`.
impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let mut vars = Vec::new();
                write_power(&mut vars, "q", a as i64);
                write_power(&mut vars, "t", b as i64);
                if vars.is_empty() {
                    return c.to_string();
                }
                let body = vars.join("*");
                if c.is_one() {
                    body
                } else if (-c).is_one() {
                    format!("-{body}")
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl FromStr for IntPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) if !rest.starts_with(|c: char| c.is_ascii_digit()) => (-1, rest),
                _ => (1, term),
            };
            let mut coeff = BigInt::from(sign);
            let (mut a, mut b) = (0u32, 0i32);
            for factor in body.split('*') {
                let bad = || Error::Parse(format!("bad term {term:?}"));
                if let Some(rest) = factor.strip_prefix('q') {
                    a += match rest.strip_prefix('^') {
                        Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else if let Some(rest) = factor.strip_prefix('t') {
                    b += match rest.strip_prefix('^') {
                        Some(e) => e.parse::<i32>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else {
                    coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
                }
            }
            out.add_term((a, b), &coeff);
        }
        Ok(out)
    }
}

/// Multiset of factors `1 - q^a t^b`, `(a, b) ≠ (0, 0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorDenominator {
    factors: BTreeMap<(u32, u32), u32>,
}

impl FactorDenominator {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn factor(a: u32, b: u32) -> Result<Self> {
        Self::one().with_factor(a, b, 1)
    }

    pub fn with_factor(mut self, a: u32, b: u32, multiplicity: u32) -> Result<Self> {
        if (a, b) == (0, 0) {
            return Err(Error::Invariant("denominator factor 1 - q^0 t^0 vanishes".into()));
        }
        if multiplicity > 0 {
            *self.factors.entry((a, b)).or_insert(0) += multiplicity;
        }
        Ok(self)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Distinct factors with multiplicities, sorted by `(a, b)`.
    pub fn factors(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.factors.iter().map(|(k, m)| (*k, *m))
    }

    /// Factors listed with repetition in canonical order.
    pub fn flat(&self) -> Vec<(u32, u32)> {
        self.factors.iter().flat_map(|(k, &m)| std::iter::repeat_n(*k, m as usize)).collect()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &other.factors {
            *out.factors.entry(*k).or_insert(0) += m;
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &m) in &other.factors {
            let e = out.factors.entry(*k).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    /// `self / other` when `other` divides `self` as a multiset.
    fn quotient(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &m) in &other.factors {
            let e = out.factors.get_mut(k).expect("divisor multiset");
            *e -= m;
            if *e == 0 {
                out.factors.remove(k);
            }
        }
        out
    }

    pub fn expand(&self) -> IntPoly2 {
        self.factors.iter().fold(IntPoly2::one(), |acc, (&(a, b), &m)| &acc * &IntPoly2::one_minus(a, b as i32).pow(m))
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (&(a, b), &m) in &self.factors {
            let v = BigRational::one() - rational_pow(q, a as i32)? * rational_pow(t, b as i32)?;
            if v.is_zero() {
                return Err(Error::EvaluationPole);
            }
            acc *= num_traits::pow(v, m as usize);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactorDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.flat() {
            let mono = IntPoly2::monomial(BigInt::one(), a, b as i32);
            write!(f, "(1-{mono})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct QTFraction {
    num: IntPoly2,
    den: FactorDenominator,
}

impl QTFraction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly2::one())
    }

    pub fn from_poly(num: IntPoly2) -> Self {
        Self { num, den: FactorDenominator::one() }
    }

    /// Builds `num / den` and cancels whatever denominator factors divide `num`.
    pub fn new(num: IntPoly2, den: FactorDenominator) -> Self {
        let mut f = Self { num, den };
        f.reduce();
        f
    }

    pub fn numerator(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn denominator(&self) -> &FactorDenominator {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = FactorDenominator::one();
            return;
        }
        let keys: Vec<(u32, u32)> = self.den.factors.keys().copied().collect();
        for (a, b) in keys {
            while self.den.factors.contains_key(&(a, b)) {
                match self.num.div_one_minus(a, b as i32) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.factors.get_mut(&(a, b)).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.factors.remove(&(a, b));
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Cross-multiplied equality over the common denominator.
    pub fn frac_equal(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let common = self.den.lcm(&other.den);
        let lhs = &self.num * &common.quotient(&self.den).expand();
        let rhs = &other.num * &common.quotient(&other.den).expand();
        lhs == rhs
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q, t)?;
        Ok(self.num.eval(q, t)? / d)
    }
}

impl PartialEq for QTFraction {
    fn eq(&self, other: &Self) -> bool {
        self.frac_equal(other)
    }
}

impl Eq for QTFraction {}

impl Add for &QTFraction {
    type Output = QTFraction;
    fn add(self, rhs: &QTFraction) -> QTFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let den = self.den.lcm(&rhs.den);
        let lhs = &self.num * &den.quotient(&self.den).expand();
        let r = &rhs.num * &den.quotient(&rhs.den).expand();
        QTFraction::new(&lhs + &r, den)
    }
}

impl Sub for &QTFraction {
    type Output = QTFraction;
    fn sub(self, rhs: &QTFraction) -> QTFraction {
        self + &-rhs
    }
}

impl Neg for &QTFraction {
    type Output = QTFraction;
    fn neg(self) -> QTFraction {
        QTFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &QTFraction {
    type Output = QTFraction;
    fn mul(self, rhs: &QTFraction) -> QTFraction {
        if self.is_zero() || rhs.is_zero() {
            return QTFraction::zero();
        }
        QTFraction::new(&self.num * &rhs.num, self.den.product(&rhs.den))
    }
}

impl fmt::Display for QTFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// A sum of fractions grouped by denominator; the groups are brought over
/// one common denominator only when the total is requested.
#[derive(Clone, Debug, Default)]
pub struct FractionSum {
    parts: BTreeMap<FactorDenominator, IntPoly2>,
}

impl FractionSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, f: &QTFraction) {
        if f.is_zero() {
            return;
        }
        let slot = self.parts.entry(f.den.clone()).or_default();
        *slot = &*slot + &f.num;
    }

    pub fn total(&self) -> QTFraction {
        let common = self.parts.keys().fold(FactorDenominator::one(), |acc, d| acc.lcm(d));
        let mut num = IntPoly2::zero();
        for (d, p) in &self.parts {
            num = &num + &(p * &common.quotient(d).expand());
        }
        QTFraction::new(num, common)
    }
}

/// One Ram-Yip term's scalar weight:
/// `t^{(ℓ(w) - ℓ(wφ(J)) - |J|)/2} (1-t)^{|J|} Π_{J+} 1/(1 - q^l t^ρ) Π_{J-} q^l t^ρ/(1 - q^l t^ρ)`.
pub fn geometry_weight_ramyip(
    ell_w: i64,
    ell_end: i64,
    size_j: i64,
    positive: &[(u32, u32)],
    negative: &[(u32, u32)],
) -> Result<QTFraction> {
    let twice = ell_w - ell_end - size_j;
    if twice.rem_euclid(2) != 0 {
        return Err(Error::Invariant(format!("odd Ram-Yip t-exponent 2e = {twice}")));
    }
    if size_j < 0 || size_j as usize != positive.len() + negative.len() {
        return Err(Error::Invariant("fold count does not match the factor lists".into()));
    }
    let mut num = &IntPoly2::t_pow((twice / 2) as i32) * &IntPoly2::one_minus(0, 1).pow(size_j as u32);
    let mut den = FactorDenominator::one();
    for &(l, rho) in positive {
        den = den.with_factor(l, rho, 1)?;
    }
    for &(l, rho) in negative {
        den = den.with_factor(l, rho, 1)?;
        num = num.shift(l, rho as i32);
    }
    Ok(QTFraction::new(num, den))
}

/// One Schwer term's weight `t^{(ℓ(w) + ℓ(wφ(J)) - |J|)/2} (1-t)^{|J|}`.
pub fn geometry_weight_schwer(ell_w: i64, ell_end: i64, size_j: i64) -> Result<IntPoly2> {
    let twice = ell_w + ell_end - size_j;
    if twice < 0 || twice % 2 != 0 || size_j < 0 {
        return Err(Error::Invariant(format!("Schwer t-exponent 2e = {twice} is not a nonnegative even integer")));
    }
    Ok(&IntPoly2::t_pow((twice / 2) as i32) * &IntPoly2::one_minus(0, 1).pow(size_j as u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// Rational functions in `q, t`.
    QT,
    /// Integer polynomials in `t` only.
    TOnly,
}

/// A Laurent polynomial in `x_1, …, x_n` with exact coefficients.
#[derive(Clone, Debug)]
pub struct WeightPolynomial {
    n: usize,
    kind: CoeffKind,
    terms: BTreeMap<Vec<i64>, QTFraction>,
}

impl WeightPolynomial {
    pub fn zero(n: usize, kind: CoeffKind) -> Self {
        Self { n, kind, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by exponent vector.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QTFraction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[i64]) -> QTFraction {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    fn check_coeff(&self, coeff: &QTFraction) -> Result<()> {
        if self.kind == CoeffKind::TOnly && !(coeff.is_polynomial() && coeff.numerator().is_q_free()) {
            return Err(Error::CoeffKindMismatch);
        }
        Ok(())
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coeff: &QTFraction) -> Result<()> {
        if exponent.len() != self.n {
            return Err(Error::DimensionMismatch(exponent.len(), self.n));
        }
        self.check_coeff(coeff)?;
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&exponent) {
            Some(existing) => {
                let sum = &*existing + coeff;
                if sum.is_zero() {
                    self.terms.remove(&exponent);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exponent, coeff.clone());
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.kind != other.kind {
            return Err(Error::CoeffKindMismatch);
        }
        Ok(())
    }

    pub fn poly_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn poly_scale(&self, scalar: &QTFraction) -> Result<Self> {
        self.check_coeff(scalar)?;
        let mut out = Self::zero(self.n, self.kind);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * scalar))?;
        }
        Ok(out)
    }

    pub fn poly_equal(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.first_difference(other).is_none())
    }

    /// The smallest exponent where the two polynomials disagree.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<i64>, QTFraction, QTFraction)> {
        let mut keys: Vec<&Vec<i64>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let a = self.coefficient(e);
            let b = other.coefficient(e);
            (!a.frac_equal(&b)).then(|| (e.clone(), a, b))
        })
    }

    /// Applies `f` to every exponent vector.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Self> {
        let mut out = Self::zero(self.n, self.kind);
        for (e, c) in &self.terms {
            out.add_term(f(e), c)?;
        }
        Ok(out)
    }

    /// Exact evaluation of all coefficients at `(q0, t0)`; zero values dropped.
    pub fn specialize(&self, q0: &BigRational, t0: &BigRational) -> Result<BTreeMap<Vec<i64>, BigRational>> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = c.eval(q0, t0)?;
            if !v.is_zero() {
                out.insert(e.clone(), v);
            }
        }
        Ok(out)
    }
}

/// Builds a [`WeightPolynomial`] from many terms, deferring fraction addition.
#[derive(Clone, Debug)]
pub struct WeightAccumulator {
    n: usize,
    kind: CoeffKind,
    terms: BTreeMap<Vec<i64>, FractionSum>,
}

impl WeightAccumulator {
    pub fn new(n: usize, kind: CoeffKind) -> Self {
        Self { n, kind, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, exponent: Vec<i64>, coeff: &QTFraction) -> Result<()> {
        if exponent.len() != self.n {
            return Err(Error::DimensionMismatch(exponent.len(), self.n));
        }
        WeightPolynomial::zero(self.n, self.kind).check_coeff(coeff)?;
        self.terms.entry(exponent).or_default().add(coeff);
        Ok(())
    }

    pub fn finish(self) -> Result<WeightPolynomial> {
        let mut out = WeightPolynomial::zero(self.n, self.kind);
        for (e, sum) in self.terms {
            out.add_term(e, &sum.total())?;
        }
        Ok(out)
    }
}

impl PartialEq for WeightPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.poly_equal(other).unwrap_or(false)
    }
}

/// `x1^2*x2`, or `1` for the zero vector.
pub fn format_monomial(exponent: &[i64]) -> String {
    let parts: Vec<String> = exponent
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Text form: terms in exponent order joined by `" + "`; unit coefficients
/// are omitted, others are parenthesized before the monomial.
impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = format_monomial(e);
                let unit = c.is_polynomial() && c.numerator().is_one();
                match (unit, mono.as_str()) {
                    (true, _) => mono,
                    (false, "1") => format!("({c})"),
                    (false, _) => format!("({c})*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Formats a specialized polynomial: `value*monomial` terms joined by `" + "`.
pub fn format_specialized(values: &BTreeMap<Vec<i64>, BigRational>) -> String {
    if values.is_empty() {
        return "0".to_string();
    }
    values
        .iter()
        .rev()
        .map(|(e, v)| {
            let mono = format_monomial(e);
            if v.is_one() {
                mono
            } else if mono == "1" {
                v.to_string()
            } else if v.is_negative() || !v.is_integer() {
                format!("({v})*{mono}")
            } else {
                format!("{v}*{mono}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn p(s: &str) -> IntPoly2 {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn frac(num: &str, den: &[(u32, u32)]) -> QTFraction {
        let mut d = FactorDenominator::one();
        for &(a, b) in den {
            d = d.with_factor(a, b, 1).unwrap();
        }
        QTFraction::new(p(num), d)
    }

    #[test]
    fn canonical_strings() {
        let poly = &IntPoly2::one_minus(0, 1).pow(2) * &IntPoly2::t_pow(-1);
        assert_eq!(poly.to_string(), "t^-1 + -2 + t");
        assert_eq!(p("3*q^2*t + -q + 1").to_string(), "1 + -q + 3*q^2*t");
        assert_eq!(IntPoly2::zero().to_string(), "0");
        for s in ["t^-1 + -2 + t", "1 + -q + 3*q^2*t", "-5", "q*t^3", "-q^2*t^-4 + 7*q^3"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("2*x".parse::<IntPoly2>().is_err());
        assert_eq!(FactorDenominator::factor(1, 1).unwrap().lcm(&FactorDenominator::factor(0, 1).unwrap()).to_string(), "(1-t)(1-q*t)");
    }

    #[test]
    fn division_by_factors() {
        let d = p("1 + -t^2");
        assert_eq!(d.div_one_minus(0, 1), Some(p("1 + t")));
        assert_eq!(p("1 + t").div_one_minus(0, 1), None);
        let prod = &IntPoly2::one_minus(2, 1) * &p("t^-3 + 4*q*t");
        assert_eq!(prod.div_one_minus(2, 1), Some(p("t^-3 + 4*q*t")));
        assert_eq!(p("q").div_one_minus(1, 1), None);
    }

    #[test]
    fn fraction_addition() {
        let f = frac("1", &[(1, 1)]);
        assert_eq!(&f + &QTFraction::zero(), f);
        let sum = &frac("1", &[(0, 1)]) + &frac("-t", &[(0, 1)]);
        assert!(sum.is_polynomial());
        assert_eq!(sum.numerator(), &IntPoly2::one());
        let doubled = &f + &f;
        assert_eq!(doubled.numerator(), &p("2"));
        assert_eq!(doubled.denominator(), f.denominator());
    }

    #[test]
    fn fraction_equality() {
        let raw = QTFraction { num: p("1 + -t^2"), den: FactorDenominator::factor(0, 1).unwrap() };
        assert!(raw.frac_equal(&QTFraction::from_poly(p("1 + t"))));
        assert!(!frac("1", &[(0, 1)]).frac_equal(&frac("1", &[(1, 1)])));
        let f = frac("q + t", &[(1, 2), (1, 2)]);
        assert!(f.frac_equal(&f));
    }

    #[test]
    fn ramyip_weights() {
        assert_eq!(geometry_weight_ramyip(0, 0, 0, &[], &[]).unwrap(), QTFraction::one());
        let w = geometry_weight_ramyip(3, 3, 2, &[(1, 3)], &[(1, 3)]).unwrap();
        let expected = frac("q*t^2 + -2*q*t^3 + q*t^4", &[(1, 3), (1, 3)]);
        assert_eq!(w, expected);
        assert_eq!(geometry_weight_ramyip(1, 0, 1, &[(1, 1)], &[]).unwrap(), frac("1 + -t", &[(1, 1)]));
        assert!(matches!(geometry_weight_ramyip(1, 1, 1, &[(1, 1)], &[]), Err(Error::Invariant(_))));
    }

    #[test]
    fn schwer_weights() {
        assert_eq!(geometry_weight_schwer(0, 0, 0).unwrap(), IntPoly2::one());
        assert_eq!(geometry_weight_schwer(2, 0, 2).unwrap(), p("1 + -2*t + t^2"));
        assert_eq!(geometry_weight_schwer(3, 1, 2).unwrap(), p("t + -2*t^2 + t^3"));
        assert!(geometry_weight_schwer(1, 0, 2).is_err());
        assert!(geometry_weight_schwer(0, 0, 2).is_err());
    }

    fn x(n: usize, var: usize) -> Vec<i64> {
        let mut e = vec![0; n];
        e[var] = 1;
        e
    }

    #[test]
    fn weight_polynomial_arithmetic() {
        let mut sum = WeightPolynomial::zero(2, CoeffKind::QT);
        sum.add_term(x(2, 0), &QTFraction::one()).unwrap();
        sum.add_term(x(2, 1), &QTFraction::one()).unwrap();
        assert_eq!(sum.to_string(), "x1 + x2");
        let zero = WeightPolynomial::zero(2, CoeffKind::QT);
        assert!(sum.poly_add(&zero).unwrap().poly_equal(&sum).unwrap());
        let scaled = sum.poly_scale(&QTFraction::from_poly(p("1 + -t"))).unwrap();
        assert_eq!(scaled.coefficient(&x(2, 1)), QTFraction::from_poly(p("1 + -t")));
        assert_eq!(scaled.to_string(), "(1 + -t)*x1 + (1 + -t)*x2");

        let mut a = WeightPolynomial::zero(1, CoeffKind::QT);
        a.add_term(vec![1], &QTFraction { num: p("1 + -t^2"), den: FactorDenominator::factor(0, 1).unwrap() })
            .unwrap();
        let mut b = WeightPolynomial::zero(1, CoeffKind::QT);
        b.add_term(vec![1], &QTFraction::from_poly(p("1 + t"))).unwrap();
        assert!(a.poly_equal(&b).unwrap());
        assert!(matches!(a.poly_add(&sum), Err(Error::DimensionMismatch(1, 2))));
        let t_only = WeightPolynomial::zero(1, CoeffKind::TOnly);
        assert!(matches!(a.poly_add(&t_only), Err(Error::CoeffKindMismatch)));
        let mut t_only = t_only;
        assert!(t_only.add_term(vec![0], &frac("1", &[(1, 1)])).is_err());
    }

    #[test]
    fn grouped_sums() {
        let mut sum = FractionSum::new();
        sum.add(&frac("1", &[(0, 1)]));
        sum.add(&frac("-t", &[(0, 1)]));
        sum.add(&frac("q*t", &[(1, 1)]));
        sum.add(&frac("-1", &[(1, 1)]));
        assert!(sum.total().is_zero());
        let mut acc = WeightAccumulator::new(1, CoeffKind::TOnly);
        acc.add(vec![2], &QTFraction::from_poly(p("t"))).unwrap();
        acc.add(vec![2], &QTFraction::from_poly(p("-t + 1"))).unwrap();
        assert!(acc.add(vec![2, 0], &QTFraction::one()).is_err());
        assert_eq!(acc.finish().unwrap().to_string(), "x1^2");
    }

    #[test]
    fn specialization() {
        let mut poly = WeightPolynomial::zero(2, CoeffKind::QT);
        poly.add_term(vec![0, 0], &frac("1", &[(1, 1)])).unwrap();
        poly.add_term(x(2, 0), &QTFraction::from_poly(p("1 + -t"))).unwrap();
        let at = poly.specialize(&r(0, 1), &r(1, 1)).unwrap();
        assert_eq!(at.len(), 1);
        assert_eq!(at[&vec![0, 0]], r(1, 1));
        let at = poly.specialize(&r(0, 1), &r(5, 3)).unwrap();
        assert_eq!(at[&vec![0, 0]], r(1, 1));
        assert!(matches!(poly.specialize(&r(1, 1), &r(1, 1)), Err(Error::EvaluationPole)));
        assert!(matches!(IntPoly2::t_pow(-1).eval(&r(1, 1), &r(0, 1)), Err(Error::EvaluationPole)));
    }

    #[test]
    fn denominators_are_one_at_origin() {
        let d = FactorDenominator::factor(1, 2).unwrap().with_factor(0, 3, 2).unwrap().with_factor(2, 0, 1).unwrap();
        assert_eq!(d.expand().coefficient(0, 0), BigInt::one());
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly2> {
        prop::collection::vec((0u32..3, -2i32..3, -3i64..4), 0..4).prop_map(|terms| {
            terms.into_iter().fold(IntPoly2::zero(), |acc, (a, b, c)| &acc + &IntPoly2::monomial(c.into(), a, b))
        })
    }

    fn arb_frac() -> impl Strategy<Value = QTFraction> {
        (arb_poly(), prop::collection::vec((0u32..3, 0u32..3), 0..3)).prop_map(|(num, den)| {
            let mut d = FactorDenominator::one();
            for (a, b) in den {
                if (a, b) != (0, 0) {
                    d = d.with_factor(a, b, 1).unwrap();
                }
            }
            QTFraction::new(num, d)
        })
    }

    fn arb_point() -> impl Strategy<Value = (BigRational, BigRational)> {
        (2i64..9, 1i64..7, 2i64..9, 1i64..7).prop_map(|(a, b, c, d)| (r(a, b + a), r(c, d + c + 1)))
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_associative(f in arb_frac(), g in arb_frac(), h in arb_frac()) {
            prop_assert!((&f + &g).frac_equal(&(&g + &f)));
            prop_assert!((&(&f + &g) + &h).frac_equal(&(&f + &(&g + &h))));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn specialization_is_a_ring_morphism(f in arb_frac(), g in arb_frac(), (q0, t0) in arb_point()) {
            let fv = f.eval(&q0, &t0).unwrap();
            let gv = g.eval(&q0, &t0).unwrap();
            prop_assert_eq!((&f + &g).eval(&q0, &t0).unwrap(), &fv + &gv);
            prop_assert_eq!((&f * &g).eval(&q0, &t0).unwrap(), fv * gv);
        }

        #[test]
        fn canonical_string_round_trips(poly in arb_poly()) {
            let back: IntPoly2 = poly.to_string().parse().unwrap();
            prop_assert_eq!(back, poly);
        }
    }
}
