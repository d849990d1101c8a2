//! Cartesian seminormed spaces given by an orthogonal basis.
//!
//! A [`DiagSeminorm`] with weights `w_i` represents
//! `‖Σ a_i e_i‖ = min_i (v(a_i) + w_i)` additively. Tensor, exterior and
//! symmetric powers carry product bases whose weights are sums.

use crate::error::{Error, Result};
use crate::field::{BaseFieldModel, FieldElem};
use crate::value::{min_val, ValExp};

/// Whether the weights are exact or only bound the true quotient seminorm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// The stored weights bound the additive seminorm from below, i.e. the
    /// multiplicative norm from above. Produced by symmetric powers over
    /// positive residue characteristic, where binomial coefficients can drop
    /// valuation and the monomial basis need not stay orthogonal.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagSeminorm {
    labels: Vec<String>,
    weights: Vec<ValExp>,
    exactness: Exactness,
}

impl DiagSeminorm {
    pub fn new(labels: Vec<String>, weights: Vec<ValExp>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: weights.len() });
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("basis labels must be distinct".into()));
        }
        Ok(DiagSeminorm { labels, weights, exactness: Exactness::Exact })
    }

    /// Basis labelled `e1, e2, …`.
    pub fn from_weights(weights: Vec<ValExp>) -> Self {
        let labels = (1..=weights.len()).map(|i| format!("e{i}")).collect();
        DiagSeminorm { labels, weights, exactness: Exactness::Exact }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[ValExp] {
        &self.weights
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    fn combine(&self, other: Exactness) -> Exactness {
        if self.exactness == Exactness::Exact && other == Exactness::Exact {
            Exactness::Exact
        } else {
            Exactness::UpperBound
        }
    }

    /// The seminorm of `Σ coords_i e_i`.
    pub fn norm_of(&self, coords: &[FieldElem], model: BaseFieldModel) -> Result<ValExp> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        Ok(min_val(coords.iter().zip(&self.weights).map(|(a, w)| model.val(a) + w.clone())))
    }

    pub fn tensor(&self, other: &DiagSeminorm) -> DiagSeminorm {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        let mut weights = Vec::with_capacity(self.dim() * other.dim());
        for (la, wa) in self.labels.iter().zip(&self.weights) {
            for (lb, wb) in other.labels.iter().zip(&other.weights) {
                labels.push(format!("{la}⊗{lb}"));
                weights.push(wa + wb);
            }
        }
        DiagSeminorm { labels, weights, exactness: self.combine(other.exactness) }
    }

    /// `⋀^q`: basis of increasing `q`-subsets.
    pub fn wedge_power(&self, q: usize) -> Result<DiagSeminorm> {
        if q > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "wedge power {q} exceeds dimension {}",
                self.dim()
            )));
        }
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for subset in subsets(self.dim(), q) {
            labels.push(self.join(&subset, "∧"));
            weights.push(subset.iter().map(|&i| self.weights[i].clone()).sum());
        }
        Ok(DiagSeminorm { labels, weights, exactness: self.exactness })
    }

    /// `S^q`: basis of size-`q` multisets. Over positive residue
    /// characteristic the result is flagged [`Exactness::UpperBound`].
    pub fn sym_power(&self, q: i64, residue_char: u64) -> Result<DiagSeminorm> {
        if q < 0 {
            return Err(Error::InvalidArgument(format!("negative symmetric power {q}")));
        }
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for ms in multisets(self.dim(), q as usize) {
            labels.push(self.join(&ms, "·"));
            weights.push(ms.iter().map(|&i| self.weights[i].clone()).sum());
        }
        let exactness = if residue_char > 0 && q > 1 { Exactness::UpperBound } else { self.exactness };
        Ok(DiagSeminorm { labels, weights, exactness })
    }

    fn join(&self, idx: &[usize], sep: &str) -> String {
        if idx.is_empty() {
            return "1".to_string();
        }
        idx.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Weight of the top exterior power basis vector.
    pub fn det_norm(&self) -> Result<ValExp> {
        if let Some(i) = self.weights.iter().position(ValExp::is_inf) {
            return Err(Error::DegenerateDeterminant(i + 1));
        }
        Ok(self.weights.iter().cloned().sum())
    }

    /// `[‖·‖_other : ‖·‖_self]` additively: `det(other) - det(self)`.
    pub fn norm_index(&self, other: &DiagSeminorm) -> Result<ValExp> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(other.det_norm()? - self.det_norm()?)
    }

    /// Quotient along a coordinate projection: keeps the listed basis
    /// vectors (0-based) and drops the rest.
    pub fn project(&self, keep: &[usize]) -> Result<DiagSeminorm> {
        let mut labels = Vec::with_capacity(keep.len());
        let mut weights = Vec::with_capacity(keep.len());
        for &i in keep {
            if i >= self.dim() {
                return Err(Error::IndexOutOfRange { index: i, bound: self.dim() });
            }
            labels.push(self.labels[i].clone());
            weights.push(self.weights[i].clone());
        }
        DiagSeminorm::new(labels, weights).map(|mut d| {
            d.exactness = self.exactness;
            d
        })
    }
}

/// Strictly increasing `q`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < q - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= n {
        go(0, n, q, &mut Vec::new(), &mut out);
    }
    out
}

/// Weakly increasing `q`-tuples from `0..n`.
pub fn multisets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, q, &mut Vec::new(), &mut out);
    out
}
