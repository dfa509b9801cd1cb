//! Exact rational scalars and the extended reals used for parameter boxes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Abs, Floor, Gcd, Lcm, Pow, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;

use crate::error::{Error, Result};

pub use malachite_q::Rational;

/// Sign tests and small helpers used throughout the crate.
pub trait RationalExt {
    fn zero() -> Rational;
    fn one() -> Rational;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs(&self) -> Rational;
    fn recip(&self) -> Rational;
}

impl RationalExt for Rational {
    fn zero() -> Rational {
        <Rational as Zero>::ZERO
    }

    fn one() -> Rational {
        <Rational as One>::ONE
    }

    fn is_zero(&self) -> bool {
        *self == 0u32
    }

    fn is_positive(&self) -> bool {
        *self > 0u32
    }

    fn is_negative(&self) -> bool {
        *self < 0u32
    }

    fn abs(&self) -> Rational {
        Abs::abs(self)
    }

    fn recip(&self) -> Rational {
        Reciprocal::reciprocal(self)
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from(v)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from_signeds(num, den)
}

fn parse_integer(text: &str) -> Option<Integer> {
    let t = text.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty()
        || !t
            .trim_start_matches('-')
            .bytes()
            .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    Integer::from_str(t).ok()
}

/// Parses `"7"`, `"-3/5"`, `"2^-20"` or a finite decimal such as `"0.625"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Input(format!("invalid rational {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((base, exp)) = s.split_once('^') {
        let base = parse_rational(base)?;
        let exp: i64 = exp.trim().parse().map_err(|_| bad())?;
        if base.is_zero() && exp < 0 {
            return Err(bad());
        }
        return Ok(Pow::pow(base, exp));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num).ok_or_else(bad)?;
        let den = parse_integer(den).ok_or_else(bad)?;
        if den <= 0u32 {
            return Err(Error::Input(format!(
                "rational {text:?} must have a positive denominator"
            )));
        }
        return Ok(Rational::from_integers(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_part = if whole.is_empty() || whole == "-" || whole == "+" {
            Integer::from(0u32)
        } else {
            parse_integer(whole).ok_or_else(bad)?
        };
        let frac_num = parse_integer(frac).ok_or_else(bad)?;
        let den = Pow::pow(Integer::from(10u32), frac.len() as u64);
        let frac = Rational::from_integers(frac_num, den);
        let whole = Rational::from(whole_part);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    parse_integer(s).map(Rational::from).ok_or_else(bad)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    f64::rounding_from(q, RoundingMode::Nearest).0
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Scales a coefficient vector to a primitive integer vector (gcd 1) with the
/// same sign pattern. Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<Rational>> {
    if v.iter().all(RationalExt::is_zero) {
        return None;
    }
    let lcm = v
        .iter()
        .fold(Natural::from(1u32), |acc, q| acc.lcm(q.denominator_ref()));
    let scaled: Vec<Rational> = v.iter().map(|q| q * Rational::from(lcm.clone())).collect();
    let gcd = scaled
        .iter()
        .filter(|x| !x.is_zero())
        .fold(Natural::from(0u32), |acc, x| acc.gcd(x.numerator_ref()));
    let gcd = Rational::from(gcd);
    Some(scaled.into_iter().map(|x| x / &gcd).collect())
}

/// Rounds to the nearest multiple of `2^-bits` (ties toward +inf).
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let half = Rational::from_signeds(1, 2);
    let scale = Rational::from(Natural::from(1u32) << bits);
    Rational::from(Floor::floor(q * &scale + half)) / scale
}

/// A rational extended by the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "-inf" | "-infinity" => Ok(ExtRational::NegInfinity),
            "inf" | "+inf" | "infinity" => Ok(ExtRational::PosInfinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInfinity => f.write_str("-inf"),
            ExtRational::PosInfinity => f.write_str("inf"),
            ExtRational::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

/// Axis-aligned parameter box `I = I_1 x ... x I_p`; sides may be unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterBox {
    pub lower: Vec<ExtRational>,
    pub upper: Vec<ExtRational>,
}

impl ParameterBox {
    pub fn new(lower: Vec<ExtRational>, upper: Vec<ExtRational>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Input("box bounds have different lengths".into()));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if lo >= hi || *lo == ExtRational::PosInfinity || *hi == ExtRational::NegInfinity {
                return Err(Error::EmptyBox(format!(
                    "coordinate {i}: lower {lo} is not below upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The whole space `R^p`.
    pub fn unbounded(dim: usize) -> Self {
        Self {
            lower: vec![ExtRational::NegInfinity; dim],
            upper: vec![ExtRational::PosInfinity; dim],
        }
    }

    pub fn finite(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        Self::new(
            lower.into_iter().map(ExtRational::Finite).collect(),
            upper.into_iter().map(ExtRational::Finite).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Closed-box membership.
    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && point.iter().enumerate().all(|(i, x)| {
                let x = ExtRational::Finite(x.clone());
                self.lower[i] <= x && x <= self.upper[i]
            })
    }

    /// Bounds with infinite sides replaced by `+-half_width`.
    pub fn clipped(&self, half_width: &Rational) -> (Vec<Rational>, Vec<Rational>) {
        let lo = self
            .lower
            .iter()
            .map(|b| b.finite().cloned().unwrap_or_else(|| -half_width.clone()))
            .collect();
        let hi = self
            .upper
            .iter()
            .map(|b| b.finite().cloned().unwrap_or_else(|| half_width.clone()))
            .collect();
        (lo, hi)
    }

    /// Largest absolute finite bound, zero when all sides are infinite.
    pub fn finite_extent(&self) -> Rational {
        self.lower
            .iter()
            .chain(&self.upper)
            .filter_map(|b| b.finite())
            .map(RationalExt::abs)
            .max()
            .unwrap_or_else(<Rational as RationalExt>::zero)
    }
}
