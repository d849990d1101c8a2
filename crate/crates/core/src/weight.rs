//! Weight norm versus Kähler norm at divisorial points of Kummer-over-Gauss
//! type.
//!
//! `l = k(t_1..t_n)` carries the Gauss valuation with all `|t_i| = 1`, and
//! `K = l[s_j]/(s_j^{e_j} - t_j)` for the Kummer indices `j`. The field `K`
//! is again purely transcendental: it is Gauss in the coordinates `u` where
//! `u_j = s_j` for Kummer indices and `u_i = t_i` otherwise.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::BaseFieldModel;
use crate::kahler::{pullback, MonomialChart, Pluriform};
use crate::lattice::{Matrix, PresentationMatrix};
use crate::laurent::LaurentPoly;
use crate::value::ValExp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerDivisorialSpec {
    model: BaseFieldModel,
    n: usize,
    /// `(j, e_j)` with 0-based `j`, sorted by `j`.
    kummer: Vec<(usize, u64)>,
}

/// Base for which the log different is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferentBase {
    /// Relative to `l = k(t)`.
    Gauss,
    /// Relative to the ground field `k`.
    Ground,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub wt: ValExp,
    pub omega: ValExp,
    pub delta_log_k: ValExp,
    pub delta_log_l: ValExp,
    pub identity_holds: bool,
}

impl KummerDivisorialSpec {
    pub fn new(model: BaseFieldModel, n: usize, kummer: Vec<(usize, u64)>) -> Result<Self> {
        if !model.is_discretely_valued() {
            return Err(Error::NotDiscretelyValued);
        }
        let mut kummer = kummer;
        kummer.sort();
        for w in kummer.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument(format!("Kummer index {} repeated", w[0].0 + 1)));
            }
        }
        for &(j, e) in &kummer {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, bound: n });
            }
            if e == 0 {
                return Err(Error::InvalidArgument("Kummer exponents must be at least 1".into()));
            }
        }
        Ok(KummerDivisorialSpec { model, n, kummer })
    }

    pub fn model(&self) -> BaseFieldModel {
        self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kummer(&self) -> &[(usize, u64)] {
        &self.kummer
    }

    /// Exponent `e_i` of coordinate `i`, `1` for non-Kummer coordinates.
    pub fn exponent(&self, i: usize) -> u64 {
        self.kummer.iter().find(|(j, _)| *j == i).map_or(1, |&(_, e)| e)
    }

    fn is_kummer(&self, i: usize) -> bool {
        self.kummer.iter().any(|(j, _)| *j == i)
    }

    fn unit_radii(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.n]
    }

    /// Rewrites `g(t, s)` (variables `t_1..t_n, s_1..s_n`) in the Gauss
    /// coordinates `u` of `K` via `t_j = u_j^{e_j}`, `s_j = u_j`.
    pub fn to_gauss_coordinates(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        let n = self.n;
        if g.nvars() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: g.nvars() });
        }
        if g.model() != self.model {
            return Err(Error::ModelMismatch(format!("g is over {}", g.model())));
        }
        for (e, _) in g.terms() {
            if let Some(i) = (0..n).find(|&i| e[n + i] != 0 && !self.is_kummer(i)) {
                return Err(Error::InvalidArgument(format!("s{} is not a Kummer coordinate", i + 1)));
            }
        }
        let mut subs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = self.exponent(i) as i64;
            subs.push(LaurentPoly::monomial(self.model, self.model.one(), e));
        }
        for i in 0..n {
            subs.push(LaurentPoly::var(self.model, n, i)?);
        }
        let (reduced, _) = g.substitute(&subs)?;
        Ok(reduced)
    }

    /// `v_K(g)`; rejects `g = 0`.
    pub fn valuation(&self, g: &LaurentPoly) -> Result<ValExp> {
        let u = self.to_gauss_coordinates(g)?;
        if u.is_zero() {
            return Err(Error::InvalidArgument("g must be nonzero".into()));
        }
        u.gauss_val(&self.unit_radii())
    }

    /// `Δ = det(∂f_i/∂s_j) = Π_j e_j s_j^{e_j - 1}` in the `u` coordinates.
    pub fn jacobian_determinant(&self) -> LaurentPoly {
        let mut delta = LaurentPoly::one(self.model, self.n);
        for &(j, e) in &self.kummer {
            let mut exps = vec![0; self.n];
            exps[j] = e as i64 - 1;
            delta = delta.mul(&LaurentPoly::monomial(self.model, self.model.from_int(e as i64), exps));
        }
        delta
    }

    /// The chart `t_i = u_i^{e_i}` at the unit Gauss point.
    pub fn kummer_chart(&self) -> MonomialChart {
        let subs = (0..self.n)
            .map(|i| {
                let mut e = vec![0; self.n];
                e[i] = self.exponent(i) as i64;
                LaurentPoly::monomial(self.model, self.model.one(), e)
            })
            .collect();
        MonomialChart::new(self.model, subs, self.unit_radii()).expect("Kummer chart is well formed")
    }

    /// `‖g·(dt_1∧…∧dt_n)^{⊗m}‖_wt = |g| · |Δ π_K|^m`, additively.
    pub fn weight_norm(&self, g: &LaurentPoly, m: usize) -> Result<ValExp> {
        let vg = self.valuation(g)?;
        let delta = self.jacobian_determinant().gauss_val(&self.unit_radii())?;
        // e_{K/k} = 1, so π_k is a uniformizer of K.
        let pi = self.model.val(&self.model.uniformizer()?);
        Ok(vg + (delta + pi).scale(m as u64))
    }

    /// The Kähler norm of `g·(dt_1∧…∧dt_n)^{⊗m}`, by pulling the form back
    /// to the orthonormal logarithmic basis `du/u` of `K`.
    pub fn kahler_norm(&self, g: &LaurentPoly, m: usize) -> Result<ValExp> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let gu = self.to_gauss_coordinates(g)?;
        if gu.is_zero() {
            return Err(Error::InvalidArgument("g must be nonzero".into()));
        }
        // dt_1∧…∧dt_n = (Π t_i) · dt_1/t_1∧…∧dt_n/t_n
        let prod_t = LaurentPoly::monomial(self.model, self.model.one(), vec![m as i64; self.n]);
        let form = Pluriform::canonical(prod_t, m)?;
        let chart = self.kummer_chart();
        let pulled = pullback(&form, &chart)?;
        let scaled = crate::kahler::PulledBack {
            numerator: pulled.numerator.scale(&gu),
            denominator: pulled.denominator,
        };
        scaled.value_at(chart.rho())
    }

    /// Content of the log differentials relative to `l` (torsion module
    /// with relations `e_j s_j^{e_j} δs_j`), or the content of the torsion
    /// of the log differentials relative to `k`.
    pub fn log_different(&self, base: DifferentBase) -> Result<ValExp> {
        let model = self.model;
        let n = self.n;
        let k = self.kummer.len();
        let zero = LaurentPoly::zero(model, n);
        match base {
            DifferentBase::Gauss => {
                let mut entries = vec![zero; k * k];
                for (r, &(j, e)) in self.kummer.iter().enumerate() {
                    let mut exps = vec![0; n];
                    exps[j] = e as i64;
                    entries[r * k + r] = LaurentPoly::monomial(model, model.from_int(e as i64), exps);
                }
                // Inseparable layers (p | e_j) leave a free summand: content Inf.
                let mat = Matrix::new(k, k, entries, model, self.unit_radii())?;
                Ok(PresentationMatrix::new(mat)?.content())
            }
            DifferentBase::Ground => {
                // generators δt_1..δt_n, δs_j; relation e_j δs_j - δt_j per Kummer index
                let rows = n + k;
                let mut entries = vec![zero; rows * k];
                for (c, &(j, e)) in self.kummer.iter().enumerate() {
                    entries[j * k + c] = LaurentPoly::constant(model, n, model.from_int(-1));
                    entries[(n + c) * k + c] = LaurentPoly::constant(model, n, model.from_int(e as i64));
                }
                // the free part has rank n; only the torsion contributes
                let mat = Matrix::new(rows, k, entries, model, self.unit_radii())?;
                Ok(PresentationMatrix::new(mat)?.smith().divisors.into_iter().sum())
            }
        }
    }

    /// Checks `‖·‖_wt = |π_k|^m (δ^log_{K/k})^m ‖·‖_ω`.
    pub fn compare(&self, g: &LaurentPoly, m: usize) -> Result<CompareReport> {
        let wt = self.weight_norm(g, m)?;
        let omega = self.kahler_norm(g, m)?;
        let delta_log_k = self.log_different(DifferentBase::Ground)?;
        let delta_log_l = self.log_different(DifferentBase::Gauss)?;
        let pi = self.model.val(&self.model.uniformizer()?);
        let predicted = (pi + delta_log_k.clone()).scale(m as u64) + omega.clone();
        Ok(CompareReport { identity_holds: predicted == wt, wt, omega, delta_log_k, delta_log_l })
    }
}

/// The different of the tame totally ramified extension `k(π^{1/e})/k`,
/// computed as the content of `Ω` presented by `e·s^{e-1}` with `v(s) = 1/e`.
pub fn different_kummer_ramified(model: BaseFieldModel, e: u64) -> Result<ValExp> {
    if !model.is_discretely_valued() {
        return Err(Error::NotDiscretelyValued);
    }
    if e < 2 {
        return Err(Error::InvalidArgument("ramification index must be at least 2".into()));
    }
    let p = model.residue_char();
    if p != 0 && e.gcd(&p) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({e}, {p}) ≠ 1: extension is not tame")));
    }
    let entry = LaurentPoly::monomial(model, model.from_int(e as i64), vec![e as i64 - 1]);
    let rho = vec![BigRational::new(1.into(), (e as i64).into())];
    let mat = Matrix::new(1, 1, vec![entry], model, rho)?;
    let content = PresentationMatrix::new(mat)?.content();
    debug_assert_eq!(content, ValExp::ratio(e as i64 - 1, e as i64));
    Ok(content)
}
