//! Sparse Laurent polynomials over a base-field model and their
//! generalized Gauss valuations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{BaseFieldModel, FieldElem};
use crate::value::{min_val, ValExp};

pub type Exponent = Vec<i64>;

/// `Σ a_I t^I` with `I ∈ Z^n`. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    model: BaseFieldModel,
    nvars: usize,
    terms: BTreeMap<Exponent, FieldElem>,
}

impl LaurentPoly {
    pub fn zero(model: BaseFieldModel, nvars: usize) -> Self {
        LaurentPoly { model, nvars, terms: BTreeMap::new() }
    }

    pub fn one(model: BaseFieldModel, nvars: usize) -> Self {
        Self::constant(model, nvars, model.one())
    }

    pub fn constant(model: BaseFieldModel, nvars: usize, c: FieldElem) -> Self {
        Self::monomial(model, c, vec![0; nvars])
    }

    pub fn monomial(model: BaseFieldModel, c: FieldElem, exps: Exponent) -> Self {
        let mut p = Self::zero(model, exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `t_{i+1}` (0-based `i`).
    pub fn var(model: BaseFieldModel, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, bound: nvars });
        }
        let mut e = vec![0; nvars];
        e[i] = 1;
        Ok(Self::monomial(model, model.one(), e))
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(model: BaseFieldModel, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FieldElem, Exponent)>,
    {
        let mut p = Self::zero(model, nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            if !model.contains(&c) {
                return Err(Error::ModelMismatch(format!("coefficient {c} is not in {model}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn model(&self) -> BaseFieldModel {
        self.model
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// `Some((c, I))` when the polynomial is a single term `c·t^I`.
    pub fn as_monomial(&self) -> Option<(&FieldElem, &Exponent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// The constant coefficient if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.model.zero());
        }
        self.as_monomial()
            .filter(|(_, e)| e.iter().all(|&x| x == 0))
            .map(|(c, _)| c.clone())
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials in different variable counts");
        assert_eq!(self.model, other.model, "Laurent polynomials over different models");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            model: self.model,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.model, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut out = Self::zero(self.model, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            model: self.model,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.model, self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents are only defined for monomials,
    /// the units of the Laurent ring.
    pub fn pow_signed(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (c, e) = self.as_monomial().ok_or_else(|| {
            Error::InvalidArgument("negative power of a non-monomial is not a Laurent polynomial".into())
        })?;
        let c = c.pow(k)?;
        Ok(Self::monomial(self.model, c, e.iter().map(|x| x * k).collect()))
    }

    /// Inverse of a monomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        self.pow_signed(-1).ok()
    }

    /// The additive generalized Gauss valuation `min_I v(a_I) + ⟨I, ρ⟩`.
    pub fn gauss_val(&self, rho: &[BigRational]) -> Result<ValExp> {
        if rho.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: rho.len() });
        }
        Ok(min_val(self.terms.iter().map(|(e, c)| {
            let shift: BigRational = e
                .iter()
                .zip(rho)
                .map(|(i, r)| r * BigInt::from(*i))
                .sum();
            self.model.val(c) + ValExp::Finite(shift)
        })))
    }

    /// Gauss valuation of the fraction `self / den`.
    pub fn gauss_val_rational(&self, den: &LaurentPoly, rho: &[BigRational]) -> Result<ValExp> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.gauss_val(rho)?;
        let d = den.gauss_val(rho)?;
        Ok(n.checked_sub(&d).expect("nonzero polynomial has finite Gauss value"))
    }

    /// `t_i ∂/∂t_i`, i.e. `Σ I_i a_I t^I` (0-based `i`).
    pub fn log_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, bound: self.nvars });
        }
        let mut out = Self::zero(self.model, self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                out.add_term(e.clone(), c * &c.int_like(e[i]));
            }
        }
        Ok(out)
    }

    /// Substitutes `t_i = subs[i]`.
    ///
    /// Negative powers of non-monomial substitutions are not Laurent
    /// polynomials, so the result is returned as `numerator` together with
    /// denominator exponents `d_i`: the value is `numerator / Π subs[i]^{d_i}`.
    /// `d_i = 0` whenever `subs[i]` is a monomial.
    pub fn substitute(&self, subs: &[LaurentPoly]) -> Result<(LaurentPoly, Vec<u32>)> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: subs.len() });
        }
        let target = subs.first().map_or(0, |s| s.nvars);
        for (i, s) in subs.iter().enumerate() {
            if s.nvars != target {
                return Err(Error::DimensionMismatch { expected: target, found: s.nvars });
            }
            if s.model != self.model {
                return Err(Error::ModelMismatch(format!("substitution {} over {}", i + 1, s.model)));
            }
            if s.is_zero() {
                return Err(Error::ZeroSubstitution(i + 1));
            }
        }
        let inverses: Vec<Option<LaurentPoly>> = subs.iter().map(|s| s.monomial_inverse()).collect();
        let mut den = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for i in 0..self.nvars {
                if inverses[i].is_none() && e[i] < 0 {
                    den[i] = den[i].max(e[i].unsigned_abs() as u32);
                }
            }
        }
        let mut cache: Vec<BTreeMap<i64, LaurentPoly>> = vec![BTreeMap::new(); self.nvars];
        let mut power = |i: usize, k: i64| -> LaurentPoly {
            cache[i]
                .entry(k)
                .or_insert_with(|| match &inverses[i] {
                    Some(inv) if k < 0 => inv.pow(k.unsigned_abs() as u32),
                    _ => subs[i].pow(k as u32),
                })
                .clone()
        };
        let mut out = Self::zero(self.model, target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.model, target, c.clone());
            for i in 0..self.nvars {
                let k = if inverses[i].is_some() { e[i] } else { e[i] + den[i] as i64 };
                if k != 0 {
                    term = term.mul(&power(i, k));
                }
            }
            out = out.add(&term);
        }
        Ok((out, den))
    }

    /// Renders with custom variable names, in the expression grammar.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(usize) -> String) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

struct DisplayWith<'a> {
    poly: &'a LaurentPoly,
    names: &'a dyn Fn(usize) -> String,
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_simple() && c.is_negative_constant() {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*{}", (self.names)(i))?,
                    _ => write!(f, "*{}^{}", (self.names)(i), x)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| format!("t{}", i + 1);
        DisplayWith { poly: self, names: &names }.fmt(f)
    }
}
