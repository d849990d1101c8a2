//! Additive valuation values.
//!
//! A multiplicative absolute value `|x| = ε^q` for a fixed formal base
//! `0 < ε < 1` is stored as the exponent `q`; `|x| = 0` is [`ValExp::Inf`].
//! Products become sums, maxima become minima and `|x| ≤ |y|` reads
//! `v(x) ≥ v(y)`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// An exact additive value: a rational number or `+∞`.
///
/// The derived order puts every finite value below `Inf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValExp {
    Finite(BigRational),
    Inf,
}

impl ValExp {
    pub fn zero() -> Self {
        ValExp::Finite(BigRational::zero())
    }

    pub fn int(v: i64) -> Self {
        ValExp::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ValExp::Finite(BigRational::new(num.into(), den.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ValExp::Inf)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ValExp::Finite(q) => Some(q),
            ValExp::Inf => None,
        }
    }

    /// Multiplication by a non-negative integer; `0 · ∞ = 0` (empty product).
    pub fn scale(&self, k: u64) -> Self {
        match self {
            ValExp::Finite(q) => ValExp::Finite(q * BigInt::from(k)),
            ValExp::Inf if k == 0 => ValExp::zero(),
            ValExp::Inf => ValExp::Inf,
        }
    }

    /// Renders `ε^q` as a float. Presentation only.
    pub fn approx(&self, epsilon: f64) -> f64 {
        match self {
            ValExp::Finite(q) => epsilon.powf(q.to_f64().unwrap_or(f64::NAN)),
            ValExp::Inf => 0.0,
        }
    }

    /// `a - b` where `b` must be finite.
    pub fn checked_sub(&self, other: &ValExp) -> Option<ValExp> {
        match (self, other) {
            (_, ValExp::Inf) => None,
            (ValExp::Inf, _) => Some(ValExp::Inf),
            (ValExp::Finite(a), ValExp::Finite(b)) => Some(ValExp::Finite(a - b)),
        }
    }
}

impl From<BigRational> for ValExp {
    fn from(q: BigRational) -> Self {
        ValExp::Finite(q)
    }
}

impl From<i64> for ValExp {
    fn from(v: i64) -> Self {
        ValExp::int(v)
    }
}

impl Add for ValExp {
    type Output = ValExp;
    fn add(self, rhs: ValExp) -> ValExp {
        &self + &rhs
    }
}

impl<'a> Add<&'a ValExp> for &'a ValExp {
    type Output = ValExp;
    fn add(self, rhs: &ValExp) -> ValExp {
        match (self, rhs) {
            (ValExp::Finite(a), ValExp::Finite(b)) => ValExp::Finite(a + b),
            _ => ValExp::Inf,
        }
    }
}

/// Subtraction of a finite value. Panics when the right operand is `Inf`;
/// use [`ValExp::checked_sub`] where that can happen.
impl Sub for ValExp {
    type Output = ValExp;
    fn sub(self, rhs: ValExp) -> ValExp {
        self.checked_sub(&rhs).expect("subtracting an infinite value")
    }
}

impl Neg for ValExp {
    type Output = ValExp;
    fn neg(self) -> ValExp {
        match self {
            ValExp::Finite(q) => ValExp::Finite(-q),
            ValExp::Inf => panic!("negating an infinite value"),
        }
    }
}

impl Sum for ValExp {
    fn sum<I: Iterator<Item = ValExp>>(iter: I) -> ValExp {
        iter.fold(ValExp::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ValExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValExp::Finite(q) => write!(f, "{q}"),
            ValExp::Inf => write!(f, "inf"),
        }
    }
}

/// Minimum over an iterator, `Inf` when empty.
pub fn min_val<I: IntoIterator<Item = ValExp>>(iter: I) -> ValExp {
    iter.into_iter().min().unwrap_or(ValExp::Inf)
}
