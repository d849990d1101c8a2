//! Pluriforms in logarithmic coordinates and the Kähler seminorm at
//! monomial points.
//!
//! A point is always presented through a [`MonomialChart`]: substitutions
//! `t_i = g_i(s)` together with Gauss radii `ρ` for `s`. Once a form is
//! written in the basis `⊗_j ⋀_{i∈S_j} ds_i/s_i` at a residually tame point,
//! that basis is orthonormal and the seminorm is the minimum of the Gauss
//! values of the coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::BaseFieldModel;
use crate::laurent::LaurentPoly;
use crate::seminorm::subsets;
use crate::value::{min_val, ValExp};

/// `m` strictly increasing `l`-subsets of `0..n`, one per tensor slot.
pub type BasisIndex = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialChart {
    model: BaseFieldModel,
    substitutions: Vec<LaurentPoly>,
    rho: Vec<BigRational>,
}

impl MonomialChart {
    pub fn new(model: BaseFieldModel, substitutions: Vec<LaurentPoly>, rho: Vec<BigRational>) -> Result<Self> {
        let n = substitutions.len();
        if rho.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rho.len() });
        }
        for (i, g) in substitutions.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
            }
            if g.model() != model {
                return Err(Error::ModelMismatch(format!("substitution {} is over {}", i + 1, g.model())));
            }
            if g.is_zero() {
                return Err(Error::ZeroSubstitution(i + 1));
            }
        }
        Ok(MonomialChart { model, substitutions, rho })
    }

    /// `t_i = s_i`: the Gauss point with radii `ρ` itself.
    pub fn identity(model: BaseFieldModel, rho: Vec<BigRational>) -> Self {
        let n = rho.len();
        let substitutions = (0..n).map(|i| LaurentPoly::var(model, n, i).unwrap()).collect();
        MonomialChart { model, substitutions, rho }
    }

    pub fn n(&self) -> usize {
        self.substitutions.len()
    }

    pub fn model(&self) -> BaseFieldModel {
        self.model
    }

    pub fn substitutions(&self) -> &[LaurentPoly] {
        &self.substitutions
    }

    pub fn rho(&self) -> &[BigRational] {
        &self.rho
    }

    pub fn with_rho(&self, rho: Vec<BigRational>) -> Result<Self> {
        MonomialChart::new(self.model, self.substitutions.clone(), rho)
    }

    /// Exponent matrix `L` when every substitution is a single monomial.
    pub fn exponent_matrix(&self) -> Option<Vec<Vec<i64>>> {
        self.substitutions
            .iter()
            .map(|g| g.as_monomial().map(|(_, e)| e.clone()))
            .collect()
    }

    /// Image of the point under the retraction onto the `t`-skeleton:
    /// `ρ*_i = v(g_i)` at the point.
    pub fn retract(&self) -> Vec<BigRational> {
        self.substitutions
            .iter()
            .map(|g| match g.gauss_val(&self.rho).expect("chart dimensions checked") {
                ValExp::Finite(q) => q,
                ValExp::Inf => unreachable!("substitutions are nonzero"),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TameStatus {
    Tame,
    Wild,
    Unknown,
}

impl fmt::Display for TameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TameStatus::Tame => "tame",
            TameStatus::Wild => "wild",
            TameStatus::Unknown => "unknown",
        })
    }
}

/// Integer determinant by fraction-free elimination.
pub fn int_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    sign * &a[n - 1][n - 1]
}

/// Residual tameness of the chart's parameters at its point.
///
/// Residue characteristic 0 is always tame. For monomial substitutions
/// `t = c·s^L` the criterion is `v(det L) = 0`. General substitutions over
/// positive residue characteristic are undecided.
pub fn tame_certificate(chart: &MonomialChart) -> Result<TameStatus> {
    let exps = chart.exponent_matrix();
    let det = exps.as_ref().map(|l| int_det(l));
    if det.as_ref().is_some_and(Zero::is_zero) {
        return Err(Error::DegenerateChart);
    }
    if chart.model.residue_char() == 0 {
        return Ok(TameStatus::Tame);
    }
    match det {
        Some(d) => {
            let v = chart.model.val(&chart.model.from_bigint(&d.abs()));
            Ok(if v == ValExp::zero() { TameStatus::Tame } else { TameStatus::Wild })
        }
        None => Ok(TameStatus::Unknown),
    }
}

/// `Σ_e φ_e · ⊗_{j} ⋀_{i∈S_j} dt_i/t_i` with Laurent coefficients in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pluriform {
    model: BaseFieldModel,
    n: usize,
    l: usize,
    m: usize,
    coeffs: BTreeMap<BasisIndex, LaurentPoly>,
}

impl Pluriform {
    pub fn zero(model: BaseFieldModel, n: usize, l: usize, m: usize) -> Result<Self> {
        if l > n || m == 0 {
            return Err(Error::InvalidArgument(format!("need 0 ≤ l ≤ n and m ≥ 1, got n={n}, l={l}, m={m}")));
        }
        Ok(Pluriform { model, n, l, m, coeffs: BTreeMap::new() })
    }

    /// `f · (dt_1/t_1 ∧ … ∧ dt_n/t_n)^{⊗m}`.
    pub fn canonical(f: LaurentPoly, m: usize) -> Result<Self> {
        let n = f.nvars();
        let mut form = Pluriform::zero(f.model(), n, n, m)?;
        form.add_term(vec![(0..n).collect(); m], f)?;
        Ok(form)
    }

    /// `df = Σ_i (t_i ∂f/∂t_i) dt_i/t_i`.
    pub fn differential(f: &LaurentPoly) -> Self {
        let n = f.nvars();
        let mut form = Pluriform { model: f.model(), n, l: 1, m: 1, coeffs: BTreeMap::new() };
        for i in 0..n {
            form.add_term(vec![vec![i]], f.log_derivative(i).unwrap()).unwrap();
        }
        form
    }

    /// Adds `coeff` to the coefficient of `index` (0-based subsets).
    pub fn add_term(&mut self, index: BasisIndex, coeff: LaurentPoly) -> Result<()> {
        self.check_index(&index)?;
        if coeff.nvars() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: coeff.nvars() });
        }
        if coeff.model() != self.model {
            return Err(Error::ModelMismatch(format!("coefficient over {} in a form over {}", coeff.model(), self.model)));
        }
        let sum = match self.coeffs.remove(&index) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if !sum.is_zero() {
            self.coeffs.insert(index, sum);
        }
        Ok(())
    }

    fn check_index(&self, index: &BasisIndex) -> Result<()> {
        if index.len() != self.m {
            return Err(Error::InvalidArgument(format!("basis index has {} slots, expected m = {}", index.len(), self.m)));
        }
        for s in index {
            if s.len() != self.l {
                return Err(Error::InvalidArgument(format!("slot {s:?} does not have l = {} entries", self.l)));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!("slot {s:?} is not strictly increasing")));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= self.n) {
                return Err(Error::IndexOutOfRange { index: bad, bound: self.n });
            }
        }
        Ok(())
    }

    pub fn model(&self) -> BaseFieldModel {
        self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<BasisIndex, LaurentPoly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, f: &LaurentPoly) -> Pluriform {
        let mut out = Pluriform { coeffs: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.coeffs {
            let p = c.mul(f);
            if !p.is_zero() {
                out.coeffs.insert(e.clone(), p);
            }
        }
        out
    }

    /// `min_e v(φ_e)` at the Gauss point `ρ` of the coefficient variables.
    pub fn coefficient_min(&self, rho: &[BigRational]) -> Result<ValExp> {
        let vals = self.coeffs.values().map(|c| c.gauss_val(rho)).collect::<Result<Vec<_>>>()?;
        Ok(min_val(vals))
    }
}

/// Determinant of the square submatrix `rows × cols` by Laplace expansion
/// with memoisation over column sets.
fn minor(jac: &[Vec<LaurentPoly>], rows: &[usize], cols: &[usize], zero: &LaurentPoly) -> LaurentPoly {
    fn go(
        jac: &[Vec<LaurentPoly>],
        rows: &[usize],
        cols: &[usize],
        mask: u64,
        memo: &mut HashMap<u64, LaurentPoly>,
        zero: &LaurentPoly,
    ) -> LaurentPoly {
        let depth = mask.count_ones() as usize;
        if depth == rows.len() {
            return LaurentPoly::one(zero.model(), zero.nvars());
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let r = rows[rows.len() - 1 - depth];
        let mut acc = zero.clone();
        // Expanding along the last unassigned row; sign from the column's
        // position among the still-free columns.
        let free: Vec<usize> = (0..cols.len()).filter(|k| mask >> k & 1 == 0).collect();
        let last = free.len() - 1;
        for (pos, &k) in free.iter().enumerate() {
            let a = &jac[r][cols[k]];
            if a.is_zero() {
                continue;
            }
            let sub = go(jac, rows, cols, mask | (1 << k), memo, zero);
            if sub.is_zero() {
                continue;
            }
            let term = a.mul(&sub);
            acc = if (last - pos).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(jac, rows, cols, 0, &mut HashMap::new(), zero)
}

/// A pulled-back form `numerator / denominator`, the numerator written in
/// the chart's logarithmic basis `ds_i/s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledBack {
    pub numerator: Pluriform,
    pub denominator: LaurentPoly,
}

impl PulledBack {
    /// `min_e v(num_e) - v(den)` at the Gauss point `ρ`.
    pub fn value_at(&self, rho: &[BigRational]) -> Result<ValExp> {
        let num = self.numerator.coefficient_min(rho)?;
        let den = self.denominator.gauss_val(rho)?;
        Ok(num.checked_sub(&den).expect("denominator is nonzero"))
    }

    /// Pulls back further along `chart`, for composed charts.
    pub fn pullback(&self, chart: &MonomialChart) -> Result<PulledBack> {
        let inner = pullback(&self.numerator, chart)?;
        let (dnum, dexp) = self.denominator.substitute(chart.substitutions())?;
        let mut extra = LaurentPoly::one(chart.model(), chart.n());
        for (g, &k) in chart.substitutions().iter().zip(&dexp) {
            if k > 0 {
                extra = extra.mul(&g.pow(k));
            }
        }
        Ok(PulledBack {
            numerator: inner.numerator.scale(&extra),
            denominator: inner.denominator.mul(&dnum),
        })
    }

    /// Equality as rational forms (cross-multiplication).
    pub fn equivalent(&self, other: &PulledBack) -> bool {
        let a = self.numerator.scale(&other.denominator);
        let b = other.numerator.scale(&self.denominator);
        a.coeffs == b.coeffs
    }
}

/// Rewrites `φ` through `t_i = g_i(s)`.
///
/// Uses `dt_i/t_i = (1/g_i) Σ_k (s_k ∂g_i/∂s_k) ds_k/s_k`, so a slot
/// `⋀_{i∈S} dt_i/t_i` becomes `(Π_{i∈S} g_i)^{-1} Σ_T det J[S,T] ⋀_{k∈T} ds_k/s_k`.
/// Monomial `g_i` are inverted in the Laurent ring; the others are
/// collected into a common denominator `Π g_i^{c_i}`.
pub fn pullback(form: &Pluriform, chart: &MonomialChart) -> Result<PulledBack> {
    let n = chart.n();
    if form.n != n {
        return Err(Error::DimensionMismatch { expected: form.n, found: n });
    }
    if form.model != chart.model {
        return Err(Error::ModelMismatch(format!("form over {} and chart over {}", form.model, chart.model)));
    }
    let model = chart.model;
    let subs = chart.substitutions();
    let zero = LaurentPoly::zero(model, n);
    let inverses: Vec<Option<LaurentPoly>> = subs.iter().map(LaurentPoly::monomial_inverse).collect();
    let jac: Vec<Vec<LaurentPoly>> = subs
        .iter()
        .map(|g| (0..n).map(|k| g.log_derivative(k).unwrap()).collect())
        .collect();

    let mut staged = Vec::with_capacity(form.coeffs.len());
    for (index, coeff) in &form.coeffs {
        let (mut num, mut den) = coeff.substitute(subs)?;
        for slot in index {
            for &i in slot {
                match &inverses[i] {
                    Some(inv) => num = num.mul(inv),
                    None => den[i] += 1,
                }
            }
        }
        staged.push((index, num, den));
    }
    let common: Vec<u32> = (0..n)
        .map(|i| staged.iter().map(|(_, _, d)| d[i]).max().unwrap_or(0))
        .collect();

    let targets = subsets(n, form.l);
    let mut minors: HashMap<(Vec<usize>, Vec<usize>), LaurentPoly> = HashMap::new();
    let mut out = Pluriform::zero(model, n, form.l, form.m)?;
    for (index, mut num, den) in staged {
        for i in 0..n {
            let k = common[i] - den[i];
            if k > 0 {
                num = num.mul(&subs[i].pow(k));
            }
        }
        // Expand the tensor product slot by slot.
        let mut partial: Vec<(BasisIndex, LaurentPoly)> = vec![(Vec::new(), num)];
        for slot in index {
            let mut next = Vec::new();
            for t in &targets {
                let det = minors
                    .entry((slot.clone(), t.clone()))
                    .or_insert_with(|| minor(&jac, slot, t, &zero))
                    .clone();
                if det.is_zero() {
                    continue;
                }
                for (idx, c) in &partial {
                    let mut idx = idx.clone();
                    idx.push(t.clone());
                    next.push((idx, c.mul(&det)));
                }
            }
            partial = next;
        }
        for (idx, c) in partial {
            out.add_term(idx, c)?;
        }
    }
    let mut denominator = LaurentPoly::one(model, n);
    for (g, &k) in subs.iter().zip(&common) {
        if k > 0 {
            denominator = denominator.mul(&g.pow(k));
        }
    }
    Ok(PulledBack { numerator: out, denominator })
}

/// The Kähler seminorm of `φ` at the chart's point, computed in the
/// chart's logarithmic basis. It is the geometric Kähler seminorm whenever
/// [`tame_certificate`] reports [`TameStatus::Tame`].
pub fn kahler_norm_at(form: &Pluriform, chart: &MonomialChart) -> Result<ValExp> {
    pullback(form, chart)?.value_at(chart.rho())
}

/// Value together with the tameness certificate that qualifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerEvaluation {
    pub value: ValExp,
    pub certificate: TameStatus,
}

pub fn evaluate(form: &Pluriform, chart: &MonomialChart) -> Result<KahlerEvaluation> {
    let certificate = tame_certificate(chart)?;
    let value = kahler_norm_at(form, chart)?;
    Ok(KahlerEvaluation { value, certificate })
}
