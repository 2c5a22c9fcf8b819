//! Exact scalars: complex numbers with rational parts, and finite Laurent
//! series in π over them.
//!
//! Every quantity the verifier compares is of the form `(rational) · π^k · i^j`,
//! so a sorted map from π-exponent to a complex rational coefficient is closed
//! under all the operations we need and keeps every identity exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;
pub type CRational = Complex<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseExactError {
    #[error("empty number")]
    Empty,
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed complex number `{0}`")]
    Complex(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `re + im·i` with integer parts.
pub fn cint(re: i64, im: i64) -> CRational {
    Complex::new(int(re), int(im))
}

pub fn crat(re: Rational, im: Rational) -> CRational {
    Complex::new(re, im)
}

pub fn creal(re: Rational) -> CRational {
    Complex::new(re, Rational::zero())
}

pub fn imag_unit() -> CRational {
    cint(0, 1)
}

pub fn c_is_zero(c: &CRational) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

pub fn c_pow(c: &CRational, exp: u32) -> CRational {
    let mut acc = cint(1, 0);
    for _ in 0..exp {
        acc = &acc * c;
    }
    acc
}

pub fn c_to_f64(c: &CRational) -> Complex<f64> {
    Complex::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseExactError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseExactError::Empty);
    }
    let bad = || ParseExactError::Rational(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ParseExactError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        // Decimal literal, converted exactly.
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Parses `3`, `-1/2`, `3i`, `-i`, `1+2i`, `1/2-3/4i`.
pub fn parse_complex(s: &str) -> Result<CRational, ParseExactError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ParseExactError::Empty);
    }
    let bad = || ParseExactError::Complex(s.to_string());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(creal(parse_rational(&t)?));
    };
    // Split at the last sign that is not the leading one.
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-') && !body[..k].ends_with('/'))
        .map(|(k, _)| k)
        .last();
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_str {
        "" | "+" => int(1),
        "-" => int(-1),
        other => parse_rational(other.trim_start_matches('+')).map_err(|_| bad())?,
    };
    let re = if re_str.is_empty() {
        Rational::zero()
    } else {
        parse_rational(re_str).map_err(|_| bad())?
    };
    Ok(crat(re, im))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`parse_complex`].
pub fn format_complex(c: &CRational) -> String {
    let im_part = |im: &Rational| -> String {
        if im.is_one() {
            "i".to_string()
        } else if (-im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", format_rational(im))
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => format_rational(&c.re),
        (true, false) => im_part(&c.im),
        (false, false) => {
            let im = im_part(&c.im);
            if c.im.is_negative() {
                format!("{}{}", format_rational(&c.re), im)
            } else {
                format!("{}+{}", format_rational(&c.re), im)
            }
        }
    }
}

/// A rational serialized as a JSON integer when integral, else as `"p/q"`.
/// Deserialization accepts integers and strings.
pub mod rational_serde {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn to_json(r: &Rational) -> serde_json::Value {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                return serde_json::Value::from(v);
            }
        }
        serde_json::Value::from(format_rational(r))
    }

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        to_json(r).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        match Repr::deserialize(de)? {
            Repr::Int(v) => Ok(int(v)),
            Repr::Str(s) => parse_rational(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Complex rational as a `[re, im]` JSON pair.
pub mod complex_pair_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Pair(
        #[serde(with = "rational_serde")] Rational,
        #[serde(with = "rational_serde")] Rational,
    );

    pub fn serialize<S: Serializer>(c: &CRational, ser: S) -> Result<S::Ok, S::Error> {
        Pair(c.re.clone(), c.im.clone()).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<CRational, D::Error> {
        let Pair(re, im) = Pair::deserialize(de)?;
        Ok(crat(re, im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[CRational], ser: S) -> Result<S::Ok, S::Error> {
            let pairs: Vec<Pair> = v.iter().map(|c| Pair(c.re.clone(), c.im.clone())).collect();
            pairs.serialize(ser)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<CRational>, D::Error> {
            let pairs = Vec::<Pair>::deserialize(de)?;
            Ok(pairs.into_iter().map(|Pair(re, im)| crat(re, im)).collect())
        }
    }
}

/// A finite sum `Σ_k c_k π^k` with complex rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exact {
    terms: BTreeMap<i32, CRational>,
}

impl Exact {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_complex(cint(1, 0))
    }

    pub fn from_complex(c: CRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · π^power`
    pub fn monomial(c: CRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c_is_zero(&c) {
            terms.insert(power, c);
        }
        Exact { terms }
    }

    pub fn pi_power(power: i32) -> Self {
        Self::monomial(cint(1, 0), power)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &CRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// `Some((k, c))` if the value is exactly `c·π^k` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(i32, &CRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &CRational) -> Self {
        let mut out = Exact::zero();
        for (k, v) in &self.terms {
            out.accumulate(*k, v * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Exact::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact ratio of two monomials, when it is a plain complex rational.
    pub fn ratio(&self, other: &Exact) -> Option<CRational> {
        let (ka, a) = self.as_monomial()?;
        let (kb, b) = other.as_monomial()?;
        (ka == kb).then(|| a / b)
    }

    pub fn approx(&self) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(k, c)| c_to_f64(c) * std::f64::consts::PI.powi(*k))
            .sum()
    }

    fn accumulate(&mut self, power: i32, c: CRational) {
        if c_is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(|| cint(0, 0));
        *entry = &*entry + c;
        if c_is_zero(entry) {
            self.terms.remove(&power);
        }
    }
}

impl From<CRational> for Exact {
    fn from(c: CRational) -> Self {
        Exact::from_complex(c)
    }
}

impl Add for &Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }
}

impl Sub for &Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        self + &(-rhs)
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        let mut out = Exact::zero();
        for (ka, a) in &self.terms {
            for (kb, b) in &rhs.terms {
                out.accumulate(ka + kb, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -&self
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = format_complex(c);
            let simple = c.re.is_zero() || c.im.is_zero();
            match *k {
                0 => write!(f, "{coeff}")?,
                _ if simple => write!(f, "{coeff}*pi")?,
                _ => write!(f, "({coeff})*pi")?,
            }
            if *k != 0 && *k != 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExactTermRepr {
    pi_power: i32,
    #[serde(with = "rational_serde")]
    re: Rational,
    #[serde(with = "rational_serde")]
    im: Rational,
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    terms: Vec<ExactTermRepr>,
    #[serde(default, skip_deserializing)]
    approx: [f64; 2],
    #[serde(default, skip_deserializing)]
    text: String,
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let a = self.approx();
        ExactRepr {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ExactTermRepr {
                    pi_power: *k,
                    re: c.re.clone(),
                    im: c.im.clone(),
                })
                .collect(),
            approx: [a.re, a.im],
            text: self.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ExactRepr::deserialize(de)?;
        let mut out = Exact::zero();
        for t in repr.terms {
            out.accumulate(t.pi_power, crat(t.re, t.im));
        }
        Ok(out)
    }
}
