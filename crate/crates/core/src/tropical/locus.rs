use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use rayon::prelude::*;

use super::lp::LpOutcome;
use super::polytope::{dot, RationalPolytope};
use super::TropPoly;
use crate::error::{Error, Result};

/// A face of a polytope: the constraints tight on all of it, and its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight: Vec<usize>,
    pub vertices: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceComplex {
    pub faces: Vec<Face>,
}

/// Minimum of `t` over `p` and the set where it is attained, as a union of
/// faces sorted by tight set.
pub fn min_locus(t: &TropPoly, p: &RationalPolytope) -> Result<(BigRational, FaceComplex)> {
    if t.n() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), found: t.n() });
    }
    if t.is_empty() {
        return Err(Error::EmptyTropPoly);
    }
    p.check_bounded()?;

    let terms: Vec<(Vec<BigRational>, BigRational)> = t
        .terms()
        .map(|(slope, c)| (slope.iter().map(|&e| BigRational::from_integer(e.into())).collect(), c.clone()))
        .collect();
    let optima: Vec<BigRational> = terms
        .par_iter()
        .map(|(slope, c)| match p.minimize(slope)? {
            LpOutcome::Optimal { value, .. } => Ok(value + c),
            LpOutcome::Infeasible => Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => Err(Error::UnboundedPolytope),
        })
        .collect::<Result<_>>()?;
    let m_star = optima.iter().min().expect("nonempty").clone();

    let vertices = p.vertices();
    let mut faces: BTreeMap<Vec<usize>, Vec<Vec<BigRational>>> = BTreeMap::new();
    for ((slope, c), opt) in terms.iter().zip(&optima) {
        if *opt != m_star {
            continue;
        }
        let optimal: Vec<_> = vertices.iter().filter(|v| dot(slope, &v.point) + c == m_star).collect();
        debug_assert!(!optimal.is_empty(), "LP optimum must be attained at a vertex");
        let mut tight: BTreeSet<usize> = optimal[0].tight.clone();
        for v in &optimal[1..] {
            tight = tight.intersection(&v.tight).copied().collect();
        }
        faces
            .entry(tight.into_iter().collect())
            .or_insert_with(|| optimal.iter().map(|v| v.point.clone()).collect());
    }
    let faces = faces.into_iter().map(|(tight, vertices)| Face { tight, vertices }).collect();
    Ok((m_star, FaceComplex { faces }))
}
