//! Exact arithmetic in one formal parameter.
//!
//! [`LaurentPoly`] is a Laurent polynomial (integer exponents, possibly
//! negative) with arbitrary-precision rational coefficients; [`LaurentRational`]
//! is a quotient of two of them kept in canonical form (denominator a true
//! polynomial with nonzero constant term, monic leading coefficient, gcd
//! with the numerator removed). One parameter is enough for the whole crate:
//! the occurrences of a second parameter are handled by the exponent-level
//! substitutions t ↦ t^k and t ↦ −t.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    /// Denominator vanishes at the evaluation point.
    #[error("pole at the evaluation point")]
    PoleAtPoint,
    /// Negative exponents evaluated at zero.
    #[error("zero base with negative exponents")]
    ZeroBase,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational-function literal: {0}")]
    Malformed(String),
}

/// Laurent polynomial: map exponent → nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rat::one(), 0)
    }

    /// The formal parameter t.
    pub fn param() -> Self {
        LaurentPoly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    /// Lowest exponent present (None for zero).
    pub fn ord(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent present (None for zero).
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = out.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(e);
            }
        }
        LaurentPoly { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let entry = out.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs: out }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by the monomial t^e.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Substitute t ↦ t^k (k may be negative).
    pub fn scale_exponents(&self, k: i64) -> Self {
        assert!(k != 0, "exponent substitution must be nonzero");
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Substitute t ↦ −t.
    pub fn negate_param(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, EvalError> {
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            if *e < 0 && x.is_zero() {
                return Err(EvalError::ZeroBase);
            }
            acc += c * rat_pow(x, *e);
        }
        Ok(acc)
    }
}

pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Dense ord-0 polynomial helpers used by the gcd routine.
fn to_dense(p: &LaurentPoly) -> (i64, Vec<Rat>) {
    let ord = p.ord().expect("nonzero");
    let deg = p.degree().unwrap();
    let mut v = vec![Rat::zero(); (deg - ord + 1) as usize];
    for (e, c) in &p.coeffs {
        v[(e - ord) as usize] = c.clone();
    }
    (ord, v)
}

fn from_dense(v: &[Rat]) -> LaurentPoly {
    let mut coeffs = BTreeMap::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            coeffs.insert(i as i64, c.clone());
        }
    }
    LaurentPoly { coeffs }
}

fn dense_trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Remainder of a by b (b nonzero), both dense.
fn dense_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    dense_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let f = r[dr].clone() / lead.clone();
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &f * &b[i];
            r[idx] -= delta;
        }
        dense_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn dense_div_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    dense_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db)];
    while r.len() > db || (r.len() == db + 1) {
        if r.is_empty() {
            break;
        }
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let f = r[dr].clone() / lead.clone();
        q[dr - db] = f.clone();
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &f * &b[i];
            r[idx] -= delta;
        }
        dense_trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Monic gcd of two ord-0 dense polynomials.
fn dense_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    dense_trim(&mut x);
    dense_trim(&mut y);
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    // normalize monic
    let lead = x.last().cloned().unwrap_or_else(Rat::one);
    for c in &mut x {
        *c /= lead.clone();
    }
    x
}

/// Exact rational function in the formal parameter.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRational {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = LaurentRational { num, den };
        r.canonicalize();
        r
    }

    pub fn zero() -> Self {
        LaurentRational {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        LaurentRational {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    /// The formal parameter t as a rational function.
    pub fn param() -> Self {
        LaurentRational::from_poly(LaurentPoly::param())
    }

    /// t^e for any integer e.
    pub fn param_pow(e: i64) -> Self {
        LaurentRational::from_poly(LaurentPoly::monomial(Rat::one(), e))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentRational {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        LaurentRational::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        LaurentRational::constant(rat_int(n))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True when the denominator is 1 (an honest Laurent polynomial).
    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    /// As a genuine polynomial in the parameter with integer coefficients:
    /// requires denominator 1 and no negative exponents. Returns the
    /// coefficient list c_0, c_1, … .
    pub fn as_integer_poly(&self) -> Option<Vec<BigInt>> {
        if !self.den.is_one() {
            return None;
        }
        if self.num.is_zero() {
            return Some(vec![]);
        }
        if self.num.ord().unwrap() < 0 {
            return None;
        }
        let deg = self.num.degree().unwrap();
        let mut out = vec![BigInt::zero(); (deg + 1) as usize];
        for (e, c) in self.num.iter() {
            if !c.denom().is_one() {
                return None;
            }
            out[*e as usize] = c.numer().clone();
        }
        Some(out)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // make den a true polynomial with nonzero constant term
        let dord = self.den.ord().unwrap();
        if dord != 0 {
            self.den = self.den.shift(-dord);
            self.num = self.num.shift(-dord);
        }
        if !self.den.is_one() {
            let nord = self.num.ord().unwrap();
            let (_, ndense) = to_dense(&self.num.shift(-nord));
            let (_, ddense) = to_dense(&self.den);
            let g = dense_gcd(&ndense, &ddense);
            if g.len() > 1 {
                let nq = dense_div_exact(&ndense, &g);
                let dq = dense_div_exact(&ddense, &g);
                self.num = from_dense(&nq).shift(nord);
                self.den = from_dense(&dq);
                let dord2 = self.den.ord().unwrap();
                if dord2 != 0 {
                    self.den = self.den.shift(-dord2);
                    self.num = self.num.shift(-dord2);
                }
            }
        }
        // monic denominator (leading coefficient 1, hence positive)
        let lead = self.den.coeff(self.den.degree().unwrap());
        if !lead.is_one() {
            let inv = lead.recip();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        LaurentRational::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        LaurentRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        LaurentRational::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        LaurentRational::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentRational::zero();
        }
        LaurentRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = LaurentRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Substitute t ↦ t^k (k ≠ 0; k = −1 re-expresses t-series in q = t^{−1}).
    pub fn scale_exponents(&self, k: i64) -> Self {
        LaurentRational::new(self.num.scale_exponents(k), self.den.scale_exponents(k))
    }

    /// Substitute t ↦ −t.
    pub fn negate_param(&self) -> Self {
        LaurentRational::new(self.num.negate_param(), self.den.negate_param())
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rat) -> Result<Rat, EvalError> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(EvalError::PoleAtPoint);
        }
        Ok(self.num.eval(x)? / d)
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.den.is_one() && self.num.degree() == Some(0) {
            return Some(self.num.coeff(0));
        }
        None
    }
}

/// (a;q)_n = Π_{j=0}^{n−1} (1 − a q^j), with (a;q)_0 = 1.
pub fn pochhammer(a: &LaurentRational, q: &LaurentRational, n: u32) -> LaurentRational {
    let one = LaurentRational::one();
    let mut acc = LaurentRational::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc.mul(&one.sub(&aq));
        aq = aq.mul(q);
    }
    acc
}

/// Numeric (a;q)_n over exact rationals.
pub fn pochhammer_rat(a: &Rat, q: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= Rat::one() - &aq;
        aq *= q;
    }
    acc
}

/// q-binomial [n m]_t = (1−t^{n−m+1})···(1−t^n) / ((1−t)···(1−t^m)) in the
/// formal parameter. A Laurent polynomial whenever n ≥ m ≥ 0; zero when the
/// numerator hits a (1−t^0) factor.
pub fn qbinomial(n: i64, m: u32) -> LaurentRational {
    let mut num = LaurentRational::one();
    let mut den = LaurentRational::one();
    let one = LaurentRational::one();
    for j in 1..=m as i64 {
        num = num.mul(&one.sub(&LaurentRational::param_pow(n - m as i64 + j)));
        den = den.mul(&one.sub(&LaurentRational::param_pow(j)));
    }
    num.div(&den)
}

/// Numeric q-binomial at a rational t.
pub fn qbinomial_rat(n: i64, m: u32, t: &Rat) -> Rat {
    let mut num = Rat::one();
    let mut den = Rat::one();
    for j in 1..=m as i64 {
        num *= Rat::one() - rat_pow(t, n - m as i64 + j);
        den *= Rat::one() - rat_pow(t, j);
    }
    num / den
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*t^{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_laurent_rational(&s).map_err(serde::de::Error::custom)
    }
}

fn parse_poly(s: &str) -> Result<LaurentPoly, ParseError> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentPoly::zero());
    }
    let mut acc = LaurentPoly::zero();
    for term in s.split(" + ") {
        let (c, e) = term
            .split_once("*t^")
            .ok_or_else(|| ParseError::Malformed(term.to_string()))?;
        let coeff: Rat = c
            .trim()
            .parse()
            .map_err(|_| ParseError::Malformed(term.to_string()))?;
        let exp: i64 = e
            .trim()
            .parse()
            .map_err(|_| ParseError::Malformed(term.to_string()))?;
        acc = acc.add(&LaurentPoly::monomial(coeff, exp));
    }
    Ok(acc)
}

/// Parse the `(<num>)/(<den>)` string form produced by `Display`.
pub fn parse_laurent_rational(s: &str) -> Result<LaurentRational, ParseError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
    let (num, den) = inner
        .split_once(")/(")
        .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
    let num = parse_poly(num)?;
    let den = parse_poly(den)?;
    if den.is_zero() {
        return Err(ParseError::Malformed("zero denominator".into()));
    }
    Ok(LaurentRational::new(num, den))
}
