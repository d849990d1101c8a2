use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lp::{minimize, LpOutcome};
use crate::error::{Error, Result};
use crate::seminorm::subsets;

/// `{ρ : ⟨a_k, ρ⟩ ≤ b_k for all k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    n: usize,
    constraints: Vec<(Vec<BigRational>, BigRational)>,
}

/// A vertex together with the indices of the constraints tight at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<BigRational>,
    pub tight: BTreeSet<usize>,
}

impl RationalPolytope {
    pub fn new(n: usize, constraints: Vec<(Vec<BigRational>, BigRational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("polytope dimension must be positive".into()));
        }
        for (a, _) in &constraints {
            if a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.len() });
            }
        }
        Ok(RationalPolytope { n, constraints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.constraints
    }

    pub fn slack(&self, k: usize, rho: &[BigRational]) -> BigRational {
        let (a, b) = &self.constraints[k];
        b - dot(a, rho)
    }

    pub fn contains(&self, rho: &[BigRational]) -> bool {
        rho.len() == self.n && (0..self.constraints.len()).all(|k| !self.slack(k, rho).is_negative())
    }

    pub fn tight_set(&self, rho: &[BigRational]) -> BTreeSet<usize> {
        (0..self.constraints.len()).filter(|&k| self.slack(k, rho).is_zero()).collect()
    }

    /// Minimizes `⟨c, ρ⟩` over the polytope.
    pub fn minimize(&self, c: &[BigRational]) -> Result<LpOutcome> {
        if c.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: c.len() });
        }
        let (a, b): (Vec<_>, Vec<_>) = self.constraints.iter().cloned().unzip();
        Ok(minimize(c, &a, &b))
    }

    /// Errors unless the polytope is nonempty and bounded (2n LPs).
    pub fn check_bounded(&self) -> Result<()> {
        for i in 0..self.n {
            for sign in [1i64, -1] {
                let mut c = vec![BigRational::zero(); self.n];
                c[i] = BigRational::from_integer(sign.into());
                match self.minimize(&c)? {
                    LpOutcome::Infeasible => return Err(Error::EmptyPolytope),
                    LpOutcome::Unbounded => return Err(Error::UnboundedPolytope),
                    LpOutcome::Optimal { .. } => {}
                }
            }
        }
        Ok(())
    }

    /// All vertices, by brute force over `n`-subsets of constraints, sorted
    /// lexicographically by coordinates.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut points: BTreeSet<Vec<BigRational>> = BTreeSet::new();
        for subset in subsets(self.constraints.len(), self.n) {
            let a: Vec<Vec<BigRational>> = subset.iter().map(|&k| self.constraints[k].0.clone()).collect();
            let b: Vec<BigRational> = subset.iter().map(|&k| self.constraints[k].1.clone()).collect();
            if let Some(x) = solve(a, b) {
                if self.contains(&x) {
                    points.insert(x);
                }
            }
        }
        points
            .into_iter()
            .map(|point| {
                let tight = self.tight_set(&point);
                Vertex { point, tight }
            })
            .collect()
    }

    /// Points of a uniform grid over the bounding box that lie in the polytope.
    pub fn grid_points(&self, steps: u32) -> Result<Vec<Vec<BigRational>>> {
        self.check_bounded()?;
        let verts = self.vertices();
        let steps = steps.max(1);
        let mut axes = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let lo = verts.iter().map(|v| &v.point[i]).min().expect("bounded nonempty polytope").clone();
            let hi = verts.iter().map(|v| &v.point[i]).max().expect("bounded nonempty polytope").clone();
            let step = (&hi - &lo) / BigRational::from_integer(steps.into());
            let axis: Vec<BigRational> =
                (0..=steps).map(|k| &lo + &step * BigRational::from_integer(k.into())).collect();
            axes.push(axis);
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.n];
        loop {
            let p: Vec<BigRational> = idx.iter().enumerate().map(|(i, &k)| axes[i][k].clone()).collect();
            if self.contains(&p) {
                out.push(p);
            }
            let mut i = self.n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < axes[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

/// `{ρ : ρ_i ≥ 0, Σ ρ_i ≤ va}`, the skeleton of the standard semistable model
/// of `T_1⋯T_n = a`.
pub fn semistable_skeleton(n: usize, va: &BigRational) -> Result<RationalPolytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !va.is_positive() {
        return Err(Error::InvalidArgument(format!("v(a) must be positive, got {va}")));
    }
    let mut constraints = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut a = vec![BigRational::zero(); n];
        a[i] = -BigRational::one();
        constraints.push((a, BigRational::zero()));
    }
    constraints.push((vec![BigRational::one(); n], va.clone()));
    RationalPolytope::new(n, constraints)
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unique solution of a square system, or `None` when singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
