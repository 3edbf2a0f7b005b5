//! Walk parameters, the Rademacher step law, single-step evolution and the
//! closed-form moments and position bounds of the antlion walk
//! `X_t = alpha * X_{t-1} + xi_t`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Parses `"m/n"` or a plain integer into a reduced [`Rational`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return invalid(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Parses `"m/n"`, an integer, or a decimal such as `"0.3"` or `"1e-3"` into
/// the rational it denotes exactly.
pub fn parse_exact_number(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('/') {
        return parse_rational(s);
    }
    let bad = || Error::InvalidParameter(format!("not a number: {s:?}"));
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_digits}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize));
    if shift < 0 {
        value /= scale;
    } else {
        value *= scale;
    }
    Ok(if negative { -value } else { value })
}

/// Converts a big rational to the nearest double.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    r.to_f64().unwrap_or(f64::NAN)
}

/// The memory parameter.
///
/// Exact values are rationals strictly inside (0, 1); they drive the exact
/// enumeration engine. Real values may be anywhere in [0, 1]: 1 reproduces the
/// simple random walk, 0 gives i.i.d. positions.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha {
    Exact(Rational),
    Real(f64),
}

impl Alpha {
    pub fn exact(m: i64, n: i64) -> Result<Self> {
        if n == 0 {
            return invalid("zero denominator");
        }
        Self::from_rational(Rational::new(BigInt::from(m), BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Result<Self> {
        if !r.is_positive() || r >= Rational::one() {
            return invalid(format!("exact alpha must lie in (0, 1), got {r}"));
        }
        Ok(Alpha::Exact(r))
    }

    pub fn real(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return invalid(format!("alpha must lie in [0, 1], got {value}"));
        }
        Ok(Alpha::Real(value))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Alpha::Exact(r) => rational_to_f64(r),
            Alpha::Real(v) => *v,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Alpha::Exact(r) => Some(r),
            Alpha::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Alpha::Exact(_))
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// `"m/n"` selects exact mode, anything else is parsed as a decimal.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            Alpha::from_rational(parse_rational(s)?)
        } else {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad alpha {s:?}")))?;
            Alpha::real(v)
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Alpha::Real(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Full parameter set of a walk: memory parameter, probability `p` of a
/// `-1` step, and horizon `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkParams {
    pub alpha: Alpha,
    pub p: f64,
    pub t: usize,
}

impl WalkParams {
    pub fn new(alpha: Alpha, p: f64, t: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return invalid(format!("p must lie in [0, 1], got {p}"));
        }
        Ok(WalkParams { alpha, p, t })
    }

    pub fn symmetric(alpha: Alpha, t: usize) -> Self {
        WalkParams { alpha, p: 0.5, t }
    }
}

/// A single Rademacher increment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Minus,
    Plus,
}

impl Step {
    pub fn value(self) -> i32 {
        match self {
            Step::Minus => -1,
            Step::Plus => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn flip(self) -> Step {
        match self {
            Step::Minus => Step::Plus,
            Step::Plus => Step::Minus,
        }
    }

    pub fn from_sign(v: f64) -> Step {
        if v < 0.0 {
            Step::Minus
        } else {
            Step::Plus
        }
    }
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

/// Draws `-1` with probability `p` and `+1` otherwise.
pub fn sample_step<R: Rng + ?Sized>(p: f64, rng: &mut R) -> Step {
    if rng.random::<f64>() < p {
        Step::Minus
    } else {
        Step::Plus
    }
}

#[inline]
pub fn evolve(x: f64, alpha: f64, xi: Step) -> f64 {
    alpha * x + xi.as_f64()
}

/// Replays an increment sequence from `X_0 = 0` and returns `X_T`.
pub fn replay(alpha: f64, steps: &[Step]) -> f64 {
    steps.iter().fold(0.0, |x, &s| evolve(x, alpha, s))
}

/// `E[X_t] = (1-2p)(1-alpha^t)/(1-alpha)`, or `(1-2p)t` at `alpha = 1`.
pub fn closed_form_mean(params: &WalkParams) -> f64 {
    let a = params.alpha.as_f64();
    let t = params.t as f64;
    let drift = 1.0 - 2.0 * params.p;
    if a == 1.0 {
        drift * t
    } else {
        drift * (1.0 - a.powi(params.t as i32)) / (1.0 - a)
    }
}

/// `Var[X_t] = 4p(1-p)(1-alpha^{2t})/(1-alpha^2)`, or `4p(1-p)t` at `alpha = 1`.
pub fn closed_form_variance(params: &WalkParams) -> f64 {
    let a = params.alpha.as_f64();
    let step_var = 4.0 * params.p * (1.0 - params.p);
    if a == 1.0 {
        step_var * params.t as f64
    } else {
        step_var * (1.0 - a.powi(2 * params.t as i32)) / (1.0 - a * a)
    }
}

fn rpow(r: &Rational, e: usize) -> Rational {
    num_traits::pow(r.clone(), e)
}

/// Closed-form mean evaluated in exact rational arithmetic.
pub fn closed_form_mean_exact(alpha: &Rational, p: &Rational, t: usize) -> Rational {
    let one = Rational::one();
    let drift = &one - p * Rational::from_integer(2.into());
    drift * (&one - rpow(alpha, t)) / (&one - alpha)
}

/// Closed-form variance evaluated in exact rational arithmetic.
pub fn closed_form_variance_exact(alpha: &Rational, p: &Rational, t: usize) -> Rational {
    let one = Rational::one();
    let step_var = Rational::from_integer(4.into()) * p * (&one - p);
    step_var * (&one - rpow(alpha, 2 * t)) / (&one - alpha * alpha)
}

/// Open interval `(-1/(1-alpha), 1/(1-alpha))` containing every realizable position.
pub fn position_bounds(alpha: &Alpha) -> Result<(f64, f64)> {
    let a = alpha.as_f64();
    if a >= 1.0 {
        return invalid("position bounds are infinite for alpha = 1");
    }
    let b = 1.0 / (1.0 - a);
    Ok((-b, b))
}

/// `(1 - alpha^t)/(1 - alpha)`: the position of the all-plus path at time `t`.
pub fn all_plus_position(alpha: f64, t: usize) -> f64 {
    if alpha == 1.0 {
        t as f64
    } else {
        (1.0 - alpha.powi(t as i32)) / (1.0 - alpha)
    }
}
