//! Min-plus piecewise-linear functions, skeleton polytopes and maximality loci.

mod locus;
mod lp;
mod polytope;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

pub use locus::{min_locus, Face, FaceComplex};
pub use lp::{minimize, LpOutcome};
pub use polytope::{semistable_skeleton, RationalPolytope, Vertex};

use crate::error::{Error, Result};
use crate::kahler::{MonomialChart, Pluriform};
use crate::value::{min_val, ValExp};

/// `ρ ↦ min_j (c_j + ⟨I_j, ρ⟩)`, one term per slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl TropPoly {
    pub fn new(n: usize) -> Self {
        TropPoly { n, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, Vec<i64>)>,
    {
        let mut t = TropPoly::new(n);
        for (c, slope) in terms {
            t.add_term(c, slope)?;
        }
        Ok(t)
    }

    /// Adds `c + ⟨slope, ρ⟩`; a repeated slope keeps the smaller constant.
    pub fn add_term(&mut self, c: BigRational, slope: Vec<i64>) -> Result<()> {
        if slope.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: slope.len() });
        }
        self.terms
            .entry(slope)
            .and_modify(|old| {
                if c < *old {
                    *old = c.clone();
                }
            })
            .or_insert(c);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(slope, constant)`, ordered by slope.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    pub fn eval(&self, rho: &[BigRational]) -> Result<ValExp> {
        if rho.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: rho.len() });
        }
        Ok(min_val(self.terms.iter().map(|(slope, c)| ValExp::Finite(c + affine(slope, rho)))))
    }

    /// Drops terms that are nowhere strictly needed for the minimum on `ℝⁿ`.
    /// The resulting function is identical.
    pub fn pruned(&self) -> TropPoly {
        let entries: Vec<(&Vec<i64>, &BigRational)> = self.terms.iter().collect();
        let mut kept: Vec<usize> = (0..entries.len()).collect();
        let mut i = 0;
        while i < kept.len() {
            let j = kept[i];
            let others: Vec<usize> = kept.iter().copied().filter(|&k| k != j).collect();
            if !others.is_empty() && !needed(entries[j], others.iter().map(|&k| entries[k]), self.n) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        TropPoly {
            n: self.n,
            terms: kept.into_iter().map(|k| (entries[k].0.clone(), entries[k].1.clone())).collect(),
        }
    }
}

/// Whether term `j` is strictly below all others somewhere: the LP
/// `max ε` s.t. `c_j + I_j·ρ + ε ≤ c_k + I_k·ρ`, with `ε ≤ 1`, has a positive optimum.
fn needed<'a>(
    j: (&Vec<i64>, &BigRational),
    others: impl Iterator<Item = (&'a Vec<i64>, &'a BigRational)>,
    n: usize,
) -> bool {
    use num_traits::{One, Signed, Zero};
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (slope, c) in others {
        let mut row: Vec<BigRational> =
            (0..n).map(|i| BigRational::from_integer((j.0[i] - slope[i]).into())).collect();
        row.push(BigRational::one());
        a.push(row);
        b.push(c - j.1);
    }
    let mut cap = vec![BigRational::zero(); n + 1];
    cap[n] = BigRational::one();
    a.push(cap);
    b.push(BigRational::one());
    let mut cost = vec![BigRational::zero(); n + 1];
    cost[n] = -BigRational::one();
    match minimize(&cost, &a, &b) {
        LpOutcome::Optimal { value, .. } => value.is_negative(),
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

fn affine(slope: &[i64], rho: &[BigRational]) -> BigRational {
    slope.iter().zip(rho).map(|(&e, r)| r * BigRational::from_integer(e.into())).sum()
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("inf");
        }
        f.write_str("min(")?;
        for (k, (slope, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in slope.iter().enumerate() {
                if e != 0 {
                    write!(f, " + {e}*r{}", i + 1)?;
                }
            }
        }
        f.write_str(")")
    }
}

/// Tropicalization of a form written in the ambient coordinates: one term
/// `(v(a), I)` per monomial `a·t^I` of every coefficient.
pub fn tropicalize(form: &Pluriform) -> TropPoly {
    let mut t = TropPoly::new(form.n());
    let model = form.model();
    for coeff in form.coeffs().values() {
        for (exp, a) in coeff.terms() {
            if let ValExp::Finite(v) = model.val(a) {
                t.add_term(v, exp.clone()).expect("exponent length equals n");
            }
        }
    }
    t
}

pub fn trop_eval(t: &TropPoly, rho: &[BigRational]) -> Result<ValExp> {
    t.eval(rho)
}

/// Skeleton coordinates of the chart's point under the retraction.
pub fn retract(chart: &MonomialChart) -> Vec<BigRational> {
    chart.retract()
}
