//! Univariate polynomials and reduced rational functions in the
//! uniformizer `π` over a prime field (`Q` or `F_p`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::fp::Fp;

/// Minimal field interface for coefficients of [`UniPoly`].
///
/// `F_p` elements carry their modulus, so constants are produced from an
/// existing element rather than from nothing.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Self;

    /// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self>
    where
        Self: Sized,
    {
        a.euclid_gcd(b)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.recip()
    }

    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        rational_gcd(a, b)
    }
}

// Word-sized primes for the coprimality test.
const CHECK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Gcd over `Q`: a modular test settles the common coprime case, otherwise
/// a primitive remainder sequence over `Z` avoids coefficient blow-up.
fn rational_gcd(a: &UniPoly<BigRational>, b: &UniPoly<BigRational>) -> UniPoly<BigRational> {
    if a.is_zero() || b.is_zero() {
        return a.add(b).make_monic();
    }
    let (ia, ib) = (primitive(a), primitive(b));
    if ia.len() == 1 || ib.len() == 1 {
        return UniPoly::from_coeffs(vec![BigRational::one()]);
    }
    for p in CHECK_PRIMES {
        let bp = BigInt::from(p);
        if (ia.last().unwrap() % &bp).is_zero() || (ib.last().unwrap() % &bp).is_zero() {
            continue;
        }
        let reduce = |v: &[BigInt]| {
            UniPoly::from_coeffs(
                v.iter().map(|c| Fp::new(c.mod_floor(&bp).to_i64().expect("reduced below p"), p)).collect(),
            )
        };
        if reduce(&ia).euclid_gcd(&reduce(&ib)).degree() == Some(0) {
            return UniPoly::from_coeffs(vec![BigRational::one()]);
        }
        break;
    }
    let (mut x, mut y) = if ia.len() >= ib.len() { (ia, ib) } else { (ib, ia) };
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_int(r) };
    }
    UniPoly::from_coeffs(x.into_iter().map(BigRational::from_integer).collect()).make_monic()
}

fn primitive(p: &UniPoly<BigRational>) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int(ints)
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// Remainder of `lc(b)^k · a` by `b`, up to a constant factor.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.len() > db {
            r = primitive_int(r);
        }
    }
    r
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus())
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus())
    }
    fn is_zero_elem(&self) -> bool {
        self.value() == 0
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

/// Dense polynomial, coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// `c · π^deg`.
    pub fn monomial(c: F, deg: usize) -> Self {
        if c.is_zero_elem() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Order of vanishing at `π = 0`.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_elem())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.plus(s);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(Scalar::negate).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.lead().expect("polynomial division by zero");
        let dinv = dlead.inverse();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let zero = dlead.zero_like();
        let mut quot = vec![zero; rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + ddeg].times(&dinv);
            if c.is_zero_elem() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(d));
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn make_monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inverse()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    fn euclid_gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }
}

/// Reduced fraction `num / den` with `den` monic; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Scalar> RatFunc<F> {
    /// Builds and canonicalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let one = den.lead().unwrap().one_like();
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::from_coeffs(vec![one]) };
        }
        // Cheap path for π-power denominators, which dominate in practice.
        let (mut num, mut den) = (num, den);
        let shift = num.ord().unwrap().min(den.ord().unwrap());
        if shift > 0 {
            num = UniPoly::from_coeffs(num.coeffs[shift..].to_vec());
            den = UniPoly::from_coeffs(den.coeffs[shift..].to_vec());
        }
        if den.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree() != Some(0) {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let l = den.lead().unwrap().inverse();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc { num: UniPoly::from_coeffs(vec![c]), den: UniPoly::from_coeffs(vec![one]) }
    }

    pub fn from_poly(p: UniPoly<F>, unit: &F) -> Self {
        RatFunc { num: p, den: UniPoly::from_coeffs(vec![unit.one_like()]) }
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn unit(&self) -> F {
        self.den.lead().unwrap().one_like()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// `π`-adic order: `ord(num) - ord(den)`, `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        let n = self.num.ord()? as i64;
        Some(n - self.den.ord().unwrap() as i64)
    }
}

fn write_poly<F: Scalar>(f: &mut fmt::Formatter<'_>, p: &UniPoly<F>, shift: i64) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero_elem() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let e = i as i64 - shift;
        match e {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*pi")?,
            _ => write!(f, "{c}*pi^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    /// Laurent-in-`π` values print in the expression grammar; other
    /// denominators print as a quotient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = &self.den;
        let deg = den.degree().unwrap();
        let is_pi_power = den.ord() == Some(deg);
        if is_pi_power {
            write!(f, "(")?;
            write_poly(f, &self.num, deg as i64)?;
            write!(f, ")")
        } else {
            write!(f, "((")?;
            write_poly(f, &self.num, 0)?;
            write!(f, ")/(")?;
            write_poly(f, den, 0)?;
            write!(f, "))")
        }
    }
}
