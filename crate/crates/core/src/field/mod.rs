//! Base-field models and their elements.
//!
//! Four valued fields are modelled exactly:
//!
//! * `TrivialQ`: `Q` with the trivial valuation.
//! * `PAdicQ(p)`: `Q` with the `p`-adic valuation, `v(p) = 1`.
//! * `PiAdicQ`: `Q(π)` with the `π`-adic valuation, residue characteristic 0.
//! * `PiAdicFp(p)`: `F_p(π)` with the `π`-adic valuation, equal characteristic `p`.

mod fp;
pub(crate) mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use fp::Fp;
pub use poly::{RatFunc, Scalar, UniPoly};

use crate::error::{Error, Result};
use crate::value::ValExp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseFieldModel {
    TrivialQ,
    PAdicQ(u64),
    PiAdicQ,
    PiAdicFp(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// F_p multiplication goes through u128 but inverses use Fermat, keep p modest.
const MAX_PRIME: u64 = 1 << 31;

impl BaseFieldModel {
    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseFieldModel::PAdicQ(p))
    }

    pub fn piadic_fp(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseFieldModel::PiAdicFp(p))
    }

    pub fn residue_char(&self) -> u64 {
        match self {
            BaseFieldModel::TrivialQ | BaseFieldModel::PiAdicQ => 0,
            BaseFieldModel::PAdicQ(p) | BaseFieldModel::PiAdicFp(p) => *p,
        }
    }

    pub fn is_discretely_valued(&self) -> bool {
        !matches!(self, BaseFieldModel::TrivialQ)
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(k))
    }

    pub fn from_bigint(&self, k: &BigInt) -> FieldElem {
        match self {
            BaseFieldModel::TrivialQ | BaseFieldModel::PAdicQ(_) => {
                FieldElem::Rat(BigRational::from_integer(k.clone()))
            }
            BaseFieldModel::PiAdicQ => {
                FieldElem::PiQ(RatFunc::constant(BigRational::from_integer(k.clone())))
            }
            BaseFieldModel::PiAdicFp(p) => {
                let r = k.mod_floor(&BigInt::from(*p)).to_i64().unwrap();
                FieldElem::PiFp(RatFunc::constant(Fp::new(r, *p)))
            }
        }
    }

    /// Embeds a rational. Over `F_p(π)` the denominator must be prime to `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            BaseFieldModel::TrivialQ | BaseFieldModel::PAdicQ(_) => Ok(FieldElem::Rat(q.clone())),
            BaseFieldModel::PiAdicQ => Ok(FieldElem::PiQ(RatFunc::constant(q.clone()))),
            BaseFieldModel::PiAdicFp(p) => {
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "denominator {} vanishes in F_{p}",
                        q.denom()
                    )));
                }
                Ok(self.from_bigint(q.numer()) / den)
            }
        }
    }

    /// The uniformizer `π` of a `π`-adic model.
    pub fn pi(&self) -> Result<FieldElem> {
        match self {
            BaseFieldModel::PiAdicQ => Ok(FieldElem::PiQ(RatFunc::from_poly(
                UniPoly::monomial(BigRational::one(), 1),
                &BigRational::one(),
            ))),
            BaseFieldModel::PiAdicFp(p) => {
                let one = Fp::new(1, *p);
                Ok(FieldElem::PiFp(RatFunc::from_poly(UniPoly::monomial(one, 1), &one)))
            }
            _ => Err(Error::ModelMismatch(format!("{self} has no symbol pi"))),
        }
    }

    /// A uniformizer for discretely valued models (`p` or `π`).
    pub fn uniformizer(&self) -> Result<FieldElem> {
        match self {
            BaseFieldModel::PAdicQ(p) => Ok(self.from_int(*p as i64)),
            BaseFieldModel::PiAdicQ | BaseFieldModel::PiAdicFp(_) => self.pi(),
            BaseFieldModel::TrivialQ => Err(Error::NotDiscretelyValued),
        }
    }

    /// Whether `x` is an element of this model.
    pub fn contains(&self, x: &FieldElem) -> bool {
        match (self, x) {
            (BaseFieldModel::TrivialQ | BaseFieldModel::PAdicQ(_), FieldElem::Rat(_)) => true,
            (BaseFieldModel::PiAdicQ, FieldElem::PiQ(_)) => true,
            (BaseFieldModel::PiAdicFp(p), FieldElem::PiFp(f)) => f.unit().modulus() == *p,
            _ => false,
        }
    }

    /// The additive valuation `v(x)`; `Inf` for zero.
    pub fn val(&self, x: &FieldElem) -> ValExp {
        debug_assert!(self.contains(x), "{x:?} is not an element of {self}");
        if x.is_zero() {
            return ValExp::Inf;
        }
        match (self, x) {
            (BaseFieldModel::TrivialQ, _) => ValExp::zero(),
            (BaseFieldModel::PAdicQ(p), FieldElem::Rat(q)) => {
                let p = BigInt::from(*p);
                ValExp::int(padic_ord(q.numer(), &p) - padic_ord(q.denom(), &p))
            }
            (_, FieldElem::PiQ(f)) => ValExp::int(f.ord().unwrap()),
            (_, FieldElem::PiFp(f)) => ValExp::int(f.ord().unwrap()),
            _ => unreachable!("model/element mismatch"),
        }
    }
}

fn padic_ord(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

impl fmt::Display for BaseFieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseFieldModel::TrivialQ => write!(f, "trivial"),
            BaseFieldModel::PAdicQ(p) => write!(f, "padic:{p}"),
            BaseFieldModel::PiAdicQ => write!(f, "piadic-q"),
            BaseFieldModel::PiAdicFp(p) => write!(f, "piadic-f{p}"),
        }
    }
}

/// An element of one of the base-field models, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    PiQ(RatFunc<BigRational>),
    PiFp(RatFunc<Fp>),
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::PiQ(f) => f.is_zero(),
            FieldElem::PiFp(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::PiQ(f) => f.num() == f.den(),
            FieldElem::PiFp(f) => f.num() == f.den(),
        }
    }

    /// The integer `k` in the same field as `self`.
    pub fn int_like(&self, k: i64) -> FieldElem {
        match self {
            FieldElem::Rat(_) => FieldElem::Rat(BigRational::from_integer(k.into())),
            FieldElem::PiQ(_) => FieldElem::PiQ(RatFunc::constant(BigRational::from_integer(k.into()))),
            FieldElem::PiFp(f) => FieldElem::PiFp(RatFunc::constant(Fp::new(k, f.unit().modulus()))),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.int_like(1) / self.clone())
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.int_like(1);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Whether the value is a plain (possibly negative) number that prints
    /// without parentheses.
    pub fn is_simple(&self) -> bool {
        matches!(self, FieldElem::Rat(_))
    }

    pub fn is_negative_constant(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_negative(),
            _ => false,
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:tt, $rf:ident) => {
        impl<'a> $trait<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                match (self, rhs) {
                    (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a $rat b),
                    (FieldElem::PiQ(a), FieldElem::PiQ(b)) => FieldElem::PiQ(a.$rf(b)),
                    (FieldElem::PiFp(a), FieldElem::PiFp(b)) => FieldElem::PiFp(a.$rf(b)),
                    _ => panic!("mixing elements of different field models"),
                }
            }
        }

        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +, add);
binop!(Sub, sub, -, sub);
binop!(Mul, mul, *, mul);
binop!(Div, div, /, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::PiQ(a) => FieldElem::PiQ(a.neg()),
            FieldElem::PiFp(a) => FieldElem::PiFp(a.neg()),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -(self.clone())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(q) => write!(f, "{q}"),
            FieldElem::PiQ(r) => write!(f, "{r}"),
            FieldElem::PiFp(r) => write!(f, "{r}"),
        }
    }
}
