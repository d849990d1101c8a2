//! Finitely presented modules over valuation rings: Smith normal form,
//! content, semilattice index and the adic seminorm.
//!
//! Entries are Laurent polynomials in auxiliary Gauss variables at fixed
//! radii (with zero variables they are plain field elements). Elimination
//! happens in the fraction field; valuations come from the Gauss valuation.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{BaseFieldModel, FieldElem};
use crate::laurent::LaurentPoly;
use crate::value::{min_val, ValExp};

mod series;

/// Unreduced fraction of Laurent polynomials. Monomial denominators are
/// absorbed into the numerator, so scalar entries always have `den = 1`.
#[derive(Clone, Debug)]
struct Frac {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Frac {
    fn new(num: LaurentPoly, den: LaurentPoly) -> Frac {
        debug_assert!(!den.is_zero());
        let one = LaurentPoly::one(num.model(), num.nvars());
        if num.is_zero() {
            return Frac { num, den: one };
        }
        if num == den {
            return Frac { num: one.clone(), den: one };
        }
        match den.monomial_inverse() {
            Some(inv) => Frac { num: num.mul(&inv), den: one },
            None => Frac { num, den },
        }
    }

    fn from_poly(p: LaurentPoly) -> Frac {
        let one = LaurentPoly::one(p.model(), p.nvars());
        Frac { num: p, den: one }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn val(&self, rho: &[BigRational]) -> ValExp {
        self.num
            .gauss_val_rational(&self.den, rho)
            .expect("fraction with consistent dimensions")
    }

    fn mul(&self, other: &Frac) -> Frac {
        Frac::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn div(&self, other: &Frac) -> Frac {
        Frac::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    fn sub(&self, other: &Frac) -> Frac {
        if self.den == other.den {
            return Frac::new(self.num.sub(&other.num), self.den.clone());
        }
        Frac::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
}

/// A row-major matrix over `K[t^{±1}]` together with Gauss radii for `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
    model: BaseFieldModel,
    rho: Vec<BigRational>,
}

impl Matrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<LaurentPoly>,
        model: BaseFieldModel,
        rho: Vec<BigRational>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        for e in &entries {
            if e.nvars() != rho.len() {
                return Err(Error::DimensionMismatch { expected: rho.len(), found: e.nvars() });
            }
            if e.model() != model {
                return Err(Error::ModelMismatch(format!("entry over {} in a matrix over {model}", e.model())));
            }
        }
        Ok(Matrix { rows, cols, entries, model, rho })
    }

    /// A matrix of field elements (no auxiliary variables).
    pub fn from_elems(rows: usize, cols: usize, entries: Vec<FieldElem>, model: BaseFieldModel) -> Result<Self> {
        let entries = entries.into_iter().map(|c| LaurentPoly::constant(model, 0, c)).collect();
        Matrix::new(rows, cols, entries, model, Vec::new())
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64], model: BaseFieldModel) -> Result<Self> {
        Matrix::from_elems(rows, cols, entries.iter().map(|&v| model.from_int(v)).collect(), model)
    }

    pub fn identity(n: usize, model: BaseFieldModel) -> Self {
        let mut entries = vec![LaurentPoly::zero(model, 0); n * n];
        for i in 0..n {
            entries[i * n + i] = LaurentPoly::one(model, 0);
        }
        Matrix { rows: n, cols: n, entries, model, rho: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn model(&self) -> BaseFieldModel {
        self.model
    }

    pub fn rho(&self) -> &[BigRational] {
        &self.rho
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_val(&self, r: usize, c: usize) -> ValExp {
        self.get(r, c).gauss_val(&self.rho).expect("entry dimensions are checked at construction")
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        if self.rho != other.rho || self.model != other.model {
            return Err(Error::ModelMismatch("matrices over different points".into()));
        }
        let nv = self.rho.len();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.model, nv);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Matrix::new(self.rows, other.cols, entries, self.model, self.rho.clone())
    }

    fn fracs(&self) -> Vec<Vec<Frac>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| Frac::from_poly(self.get(r, c).clone())).collect())
            .collect()
    }

    /// Valuation of the determinant, by exact Gaussian elimination.
    pub fn det_val(&self) -> Result<ValExp> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        match series::det_val(self) {
            Some(v) if v.is_inf() => Err(Error::Singular),
            Some(v) => Ok(v),
            None => self.det_val_exact(),
        }
    }

    fn det_val_exact(&self) -> Result<ValExp> {
        let n = self.rows;
        let mut a = self.fracs();
        let mut total = ValExp::zero();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, pivot);
            total = total + a[k][k].val(&self.rho);
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = a[r][k].div(&a[k][k]);
                for c in k + 1..n {
                    if !a[k][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[k][c]));
                    }
                }
            }
        }
        Ok(total)
    }
}

/// A presentation `K°^m / (column span)`; every entry lies in `K°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix(Matrix);

impl PresentationMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        for r in 0..matrix.rows {
            for c in 0..matrix.cols {
                if matrix.entry_val(r, c) < ValExp::zero() {
                    return Err(Error::NegativeValuation { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(PresentationMatrix(matrix))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// Elementary divisors by minimal-valuation pivoting.
    ///
    /// The pivot divides every other entry of the active block since ideals
    /// of a valuation ring are totally ordered; clearing its column by row
    /// operations leaves the rest of its row irrelevant.
    pub fn smith(&self) -> ElementaryDivisors {
        match series::smith(&self.0) {
            Some((divisors, free_rank)) => ElementaryDivisors { divisors, free_rank },
            None => self.smith_exact(),
        }
    }

    fn smith_exact(&self) -> ElementaryDivisors {
        let m = &self.0;
        let mut a = m.fracs();
        let mut rows: Vec<usize> = (0..m.rows).collect();
        let mut cols: Vec<usize> = (0..m.cols).collect();
        let mut divisors = Vec::new();
        loop {
            let mut best: Option<(ValExp, usize, usize)> = None;
            for (ri, &r) in rows.iter().enumerate() {
                for (ci, &c) in cols.iter().enumerate() {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    let v = a[r][c].val(&m.rho);
                    if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                        best = Some((v, ri, ci));
                    }
                }
            }
            let Some((v, ri, ci)) = best else { break };
            let (pr, pc) = (rows[ri], cols[ci]);
            rows.remove(ri);
            cols.remove(ci);
            for &r in &rows {
                if a[r][pc].is_zero() {
                    continue;
                }
                let f = a[r][pc].div(&a[pr][pc]);
                debug_assert!(f.val(&m.rho) >= ValExp::zero(), "elimination left the valuation ring");
                for &c in &cols {
                    if !a[pr][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[pr][c]));
                    }
                }
            }
            divisors.push(v);
        }
        divisors.sort();
        ElementaryDivisors { free_rank: m.rows - divisors.len(), divisors }
    }

    /// Content of the presented module: sum of divisors, `Inf` unless torsion.
    pub fn content(&self) -> ValExp {
        self.smith().content()
    }
}

/// `M ≅ K°^{free_rank} ⊕ ⊕_i K°/(π_i)` with `v(π_i) = divisors[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisors {
    pub divisors: Vec<ValExp>,
    pub free_rank: usize,
}

impl ElementaryDivisors {
    pub fn new(mut divisors: Vec<ValExp>, free_rank: usize) -> Result<Self> {
        if divisors.iter().any(|d| d.is_inf() || *d < ValExp::zero()) {
            return Err(Error::InvalidArgument("divisors must be finite and non-negative".into()));
        }
        divisors.sort();
        Ok(ElementaryDivisors { divisors, free_rank })
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.divisors.len()
    }

    pub fn content(&self) -> ValExp {
        if self.free_rank > 0 {
            ValExp::Inf
        } else {
            self.divisors.iter().cloned().sum()
        }
    }

    /// The maximal `K°`-seminorm on the module bounded by 1 on generators.
    ///
    /// `coords` lists free coordinates first, then one coordinate per
    /// torsion summand. `Inf` means the element is divisible.
    pub fn adic_norm(&self, coords: &[FieldElem], model: BaseFieldModel) -> Result<ValExp> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: coords.len() });
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        let free_part = free.iter().map(|x| model.val(x));
        let torsion_part = torsion.iter().zip(&self.divisors).map(|(x, d)| {
            let v = model.val(x);
            if v < *d { v } else { ValExp::Inf }
        });
        Ok(min_val(free_part.chain(torsion_part)))
    }
}

/// `[M : L]` additively: `v(det M) - v(det L)`.
pub fn semilattice_index(m: &Matrix, l: &Matrix) -> Result<ValExp> {
    if m.rows != l.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: l.rows });
    }
    let dm = m.det_val()?;
    let dl = l.det_val()?;
    Ok(dm - dl)
}
