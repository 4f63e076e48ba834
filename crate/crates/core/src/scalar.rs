//! Coefficient domains.
//!
//! Every algebraic pipeline in the crate is generic over [`Scalar`], which has
//! two implementations:
//!
//! - [`GaussianRational`]: exact arithmetic in `Q(i)` on arbitrary-precision
//!   rationals,
//! - [`FloatComplex`]: IEEE double-precision complex numbers.
//!
//! Only the dilogarithm needs floating point; exact values are embedded with
//! [`Scalar::to_complex`] at the last moment.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Absolute threshold below which a floating scalar counts as zero.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;

/// Relative tolerance used to identify two floating scalars.
pub const FLOAT_EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite floating component ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("cannot parse scalar literal {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

impl ScalarError {
    fn parse(text: &str, reason: impl Into<String>) -> Self {
        ScalarError::Parse {
            text: text.to_string(),
            reason: reason.into(),
        }
    }
}

/// Field operations shared by both coefficient domains.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for the exact domain.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: i64) -> Self;
    fn from_gaussian(g: &GaussianRational) -> Self;

    /// Exact test in `Q(i)`; `|z| <= FLOAT_ZERO_TOL` in floating mode.
    fn is_zero(&self) -> bool;

    /// Exact equality in `Q(i)`; relative `FLOAT_EQ_TOL` identification in
    /// floating mode.
    fn approx_eq(&self, other: &Self) -> bool;

    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.inv()?)
    }

    /// Nearest floating complex value.
    fn to_complex(&self) -> FloatComplex;

    /// Pivot weight for elimination: larger is preferred, zero is unusable.
    fn pivot_weight(&self) -> f64;

    fn is_real(&self) -> bool;

    fn parse_literal(text: &str) -> Result<Self, ScalarError>;
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An element `re + im·i` of `Q(i)`.
///
/// Both components are kept in lowest terms with a positive denominator by
/// [`BigRational`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(rat(re, 1), rat(im, 1))
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`. Panics if a denominator is zero.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational::new(rat(re_num, re_den), rat(im_num, im_den))
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn embed(&self) -> FloatComplex {
        FloatComplex(Complex64::new(to_f64(&self.re), to_f64(&self.im)))
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational to f64 conversion")
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    fn from_integer(n: i64) -> Self {
        GaussianRational::from_ints(n, 0)
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        g.clone()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if Scalar::is_zero(self) {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    fn to_complex(&self) -> FloatComplex {
        self.embed()
    }

    fn pivot_weight(&self) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn parse_literal(text: &str) -> Result<Self, ScalarError> {
        text.parse()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Splits a literal into its real and imaginary text, following the grammar
/// `RAT ( ('+'|'-') RAT? 'i' )?` plus the pure-imaginary form `[sign] RAT? 'i'`.
/// The imaginary part is returned with its sign and without the trailing `i`.
fn split_literal(text: &str) -> Result<(Option<&str>, Option<String>), ScalarError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ScalarError::parse(text, "empty literal"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((Some(s), None));
    };
    // The sign separating the parts is the last '+'/'-' not at position 0 and
    // not directly after an exponent marker.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let ch = bytes[idx];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let (re, im) = match split {
        Some(idx) => (Some(&body[..idx]), &body[idx..]),
        None => (None, body),
    };
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.to_string(),
    };
    Ok((re, Some(im)))
}

fn parse_rational(part: &str, text: &str) -> Result<BigRational, ScalarError> {
    let part = part.strip_prefix('+').unwrap_or(part);
    let (num, den) = match part.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (part, None),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(ScalarError::parse(text, format!("bad numerator {num:?}")));
    }
    let num: BigInt = num
        .parse()
        .map_err(|_| ScalarError::parse(text, "bad numerator"))?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if !valid_int(d, false) {
                return Err(ScalarError::parse(text, format!("bad denominator {d:?}")));
            }
            d.parse()
                .map_err(|_| ScalarError::parse(text, "bad denominator"))?
        }
    };
    if den.is_zero() {
        return Err(ScalarError::parse(text, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let (re, im) = split_literal(text)?;
        let re = match re {
            Some(r) => parse_rational(r, text)?,
            None => BigRational::zero(),
        };
        let im = match im {
            Some(i) => parse_rational(&i, text)?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational::new(re, im))
    }
}

/// Parses a Gaussian-rational literal such as `1-1i`, `3/2` or `-i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ScalarError> {
    text.parse()
}

// ---------------------------------------------------------------------------
// Floating complex
// ---------------------------------------------------------------------------

/// A finite double-precision complex number.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct FloatComplex(Complex64);

impl FloatComplex {
    /// Rejects NaN and infinite components.
    pub fn new(re: f64, im: f64) -> Result<Self, ScalarError> {
        if re.is_finite() && im.is_finite() {
            Ok(FloatComplex(Complex64::new(re, im)))
        } else {
            Err(ScalarError::NonFinite(re, im))
        }
    }

    pub(crate) fn from_raw(z: Complex64) -> Self {
        FloatComplex(z)
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
}

impl From<FloatComplex> for Complex64 {
    fn from(z: FloatComplex) -> Complex64 {
        z.0
    }
}

impl Add for FloatComplex {
    type Output = FloatComplex;
    fn add(self, rhs: Self) -> Self {
        FloatComplex(self.0 + rhs.0)
    }
}

impl Sub for FloatComplex {
    type Output = FloatComplex;
    fn sub(self, rhs: Self) -> Self {
        FloatComplex(self.0 - rhs.0)
    }
}

impl Mul for FloatComplex {
    type Output = FloatComplex;
    fn mul(self, rhs: Self) -> Self {
        FloatComplex(self.0 * rhs.0)
    }
}

impl Neg for FloatComplex {
    type Output = FloatComplex;
    fn neg(self) -> Self {
        FloatComplex(-self.0)
    }
}

impl Scalar for FloatComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatComplex(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        FloatComplex(Complex64::new(1.0, 0.0))
    }

    fn from_integer(n: i64) -> Self {
        FloatComplex(Complex64::new(n as f64, 0.0))
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        g.embed()
    }

    fn is_zero(&self) -> bool {
        self.0.norm() <= FLOAT_ZERO_TOL
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.norm()).max(other.0.norm());
        (self.0 - other.0).norm() <= FLOAT_EQ_TOL * scale
    }

    fn conj(&self) -> Self {
        FloatComplex(self.0.conj())
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.0.re == 0.0 && self.0.im == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FloatComplex(self.0.inv()))
    }

    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.0.re == 0.0 && other.0.im == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FloatComplex(self.0 / other.0))
    }

    fn to_complex(&self) -> FloatComplex {
        *self
    }

    fn pivot_weight(&self) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            self.0.norm()
        }
    }

    fn is_real(&self) -> bool {
        self.0.im.abs() <= FLOAT_ZERO_TOL
    }

    fn parse_literal(text: &str) -> Result<Self, ScalarError> {
        text.parse()
    }
}

/// Formats a real with 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..16).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.16e}")
    }
}

impl fmt::Display for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            write!(f, "{}", format_real(re))
        } else if im < 0.0 {
            write!(f, "{}-{}i", format_real(re), format_real(-im))
        } else {
            write!(f, "{}+{}i", format_real(re), format_real(im))
        }
    }
}

fn parse_float_part(part: &str, text: &str) -> Result<f64, ScalarError> {
    if part.contains('/') {
        let r = parse_rational(part, text)?;
        return Ok(to_f64(&r));
    }
    let part = part.strip_prefix('+').unwrap_or(part);
    let lowered = part.to_ascii_lowercase();
    if lowered.contains("inf") || lowered.contains("nan") {
        return Err(ScalarError::parse(text, "non-finite component"));
    }
    part.parse::<f64>()
        .map_err(|_| ScalarError::parse(text, format!("bad number {part:?}")))
}

impl FromStr for FloatComplex {
    type Err = ScalarError;

    /// Same shape as the exact grammar, with decimal or scientific components
    /// also accepted.
    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let (re, im) = split_literal(text)?;
        let re = match re {
            Some(r) => parse_float_part(r, text)?,
            None => 0.0,
        };
        let im = match im {
            Some(i) => parse_float_part(&i, text)?,
            None => 0.0,
        };
        FloatComplex::new(re, im)
    }
}

/// Nearest double for each component.
pub fn embed(g: &GaussianRational) -> FloatComplex {
    g.embed()
}
