//! Exact rational scalars and complex rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps numerator and
//! denominator coprime with a positive denominator. Text form is either an
//! integer, an exact decimal (`-1.25`) or a `p/q` fraction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/7"` or an exact decimal such as `"0.125"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (whole, fraction) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !fraction.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{fraction}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num_traits::pow(BigInt::from(10), fraction.len());
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large magnitudes: fall back through the integer parts.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rational approximation of `sqrt(r)` with absolute error below `2^-bits`,
/// obtained by bisection on exact rationals.
pub fn sqrt_approx(r: &Rational, bits: u32) -> Rational {
    if let Some(s) = exact_sqrt(r) {
        return s;
    }
    let mut lo = Rational::zero();
    let mut hi = if r > &Rational::one() { r.clone() } else { Rational::one() };
    let eps = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), bits as usize));
    let two = int(2);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
        // Keep the bracket endpoints on short dyadics.
        lo = round_dyadic(&lo, bits + 4);
        hi = round_dyadic_up(&hi, bits + 4);
    }
    (lo + hi) / two
}

fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(2), bits as usize);
    let scaled = (x * Rational::from_integer(scale.clone())).floor();
    scaled / Rational::from_integer(scale)
}

fn round_dyadic_up(x: &Rational, bits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(2), bits as usize);
    let scaled = (x * Rational::from_integer(scale.clone())).ceil();
    scaled / Rational::from_integer(scale)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via the continued-fraction expansion.
pub fn rationalize(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let target = Rational::from_float(x)?;
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    let cap = BigInt::from(max_den);
    let mut best = Rational::from_integer(target.floor().to_integer());
    for _ in 0..64 {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > cap {
            break;
        }
        best = Rational::new(p2.clone(), q2.clone());
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac_part = &rest - Rational::from_integer(a);
        if frac_part.is_zero() {
            break;
        }
        rest = frac_part.recip();
    }
    Some(best)
}

/// Complex number with exact rational parts; houses evaluations at `s = jw`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    /// `j * w`
    pub fn imaginary(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn j() -> Self {
        Self::imaginary(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::EvaluationAtPole("division by complex zero".into()));
        }
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}j", format_rational(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}j", format_rational(&self.re), format_rational(&-&self.im))
        } else {
            write!(f, "{}+{}j", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &ComplexRational {
    type Output = ComplexRational;
    /// Panics on division by zero; use [`ComplexRational::inv`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &ComplexRational) -> ComplexRational {
        self * &o.inv().expect("complex division by zero")
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -&self.re, im: -&self.im }
    }
}
