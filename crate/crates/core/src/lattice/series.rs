//! Scalar matrices over `Q(π)`: elimination on integer polynomials and on
//! truncated power series instead of reduced rational functions.
//!
//! Rows are first multiplied by their common denominator and cleared of
//! rational coefficients. Fraction-free Bareiss elimination over `Z[π]`
//! then gives the exact rank and a nonzero maximal minor of valuation `V`.
//! Every elementary divisor is at most `V`, so the Smith form can be
//! computed modulo `π^{V+1}` without losing information.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::field::poly::UniPoly;
use crate::field::{BaseFieldModel, FieldElem};
use crate::value::ValExp;

type IntPoly = Vec<BigInt>;
type Series = Vec<BigRational>;

/// Integer polynomial rows and the total order of the row multipliers, or
/// `None` when the matrix is not a constant matrix over `Q(π)`.
fn integer_rows(m: &Matrix) -> Option<(Vec<Vec<IntPoly>>, i64)> {
    if m.model != BaseFieldModel::PiAdicQ || !m.rho.is_empty() {
        return None;
    }
    let mut rows = Vec::with_capacity(m.rows);
    let mut shift = 0i64;
    for r in 0..m.rows {
        let fracs: Vec<(UniPoly<BigRational>, UniPoly<BigRational>)> = (0..m.cols)
            .map(|c| {
                let e = m.get(r, c);
                match e.as_constant() {
                    Some(FieldElem::PiQ(f)) => (f.num().clone(), f.den().clone()),
                    _ => unreachable!("constant entries of a PiAdicQ matrix"),
                }
            })
            .collect();
        let mut dens: Vec<&UniPoly<BigRational>> = Vec::new();
        for (_, d) in &fracs {
            if d.degree() != Some(0) && !dens.contains(&d) {
                dens.push(d);
            }
        }
        let common = dens.iter().fold(UniPoly::from_coeffs(vec![BigRational::one()]), |acc, d| acc.mul(d));
        shift += common.ord().unwrap_or(0) as i64;
        let polys: Vec<UniPoly<BigRational>> =
            fracs.iter().map(|(n, d)| n.mul(&common.div_rem(d).0)).collect();
        let lcm = polys
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        rows.push(polys.iter().map(|p| p.coeffs().iter().map(|c| (c * &scale).to_integer()).collect()).collect());
    }
    Some((rows, shift))
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn ord(p: &[BigInt]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: IntPoly, b: &[BigInt]) -> IntPoly {
    let mut a = a;
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    trim(a)
}

/// Quotient of an exact division in `Z[π]`.
fn exact_div(a: IntPoly, b: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return a;
    }
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a;
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact Bareiss division");
    trim(quot)
}

/// Rank and the last pivot, which is a nonzero maximal minor up to sign.
fn bareiss(mut a: Vec<Vec<IntPoly>>, cols: usize) -> (usize, IntPoly) {
    let rows = a.len();
    let mut prev: IntPoly = vec![BigInt::one()];
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if !e.is_empty() && best.is_none_or(|(len, _, _)| e.len() < len) {
                    best = Some((e.len(), i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        a.swap(k, i);
        for row in a.iter_mut() {
            row.swap(k, j);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let t = sub(mul(&a[k][k], &a[i][j]), &mul(&a[i][k], &a[k][j]));
                a[i][j] = exact_div(t, &prev);
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
        k += 1;
    }
    (k, prev)
}

pub(super) fn det_val(m: &Matrix) -> Option<ValExp> {
    let (rows, shift) = integer_rows(m)?;
    let (rank, pivot) = bareiss(rows, m.cols);
    if rank < m.rows {
        return Some(ValExp::Inf);
    }
    Some(ValExp::int(ord(&pivot).expect("nonzero pivot") as i64 - shift))
}

fn series_ord(s: &[BigRational]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

fn series_mul(a: &[BigRational], b: &[BigRational], prec: usize) -> Series {
    let mut out = vec![BigRational::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(u: &[BigRational], prec: usize) -> Series {
    let u0 = u[0].recip();
    let mut inv: Series = Vec::with_capacity(prec);
    inv.push(u0.clone());
    for i in 1..prec {
        let mut acc = BigRational::zero();
        for j in 1..=i.min(u.len() - 1) {
            acc += &u[j] * &inv[i - j];
        }
        inv.push(-acc * &u0);
    }
    inv
}

/// Elementary divisors and free rank, or `None` outside the fast path.
pub(super) fn smith(m: &Matrix) -> Option<(Vec<ValExp>, usize)> {
    let (rows, _) = integer_rows(m)?;
    let (rank, pivot) = bareiss(rows.clone(), m.cols);
    if rank == 0 {
        return Some((Vec::new(), m.rows));
    }
    let prec = ord(&pivot).expect("nonzero pivot") + 1;
    let mut a: Vec<Vec<Series>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    let mut s: Series =
                        p.iter().take(prec).map(|c| BigRational::from_integer(c.clone())).collect();
                    s.resize(prec, BigRational::zero());
                    s
                })
                .collect()
        })
        .collect();
    let mut act_rows: Vec<usize> = (0..m.rows).collect();
    let mut act_cols: Vec<usize> = (0..m.cols).collect();
    let mut divisors = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &r) in act_rows.iter().enumerate() {
            for (ci, &c) in act_cols.iter().enumerate() {
                if let Some(v) = series_ord(&a[r][c]) {
                    if best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, ri, ci));
                    }
                }
            }
        }
        let (d, ri, ci) = best.expect("rank bounds the number of pivots");
        let (pr, pc) = (act_rows.remove(ri), act_cols.remove(ci));
        let low = prec - d;
        let inv = series_inv(&a[pr][pc][d..], low);
        for &r in &act_rows {
            if series_ord(&a[r][pc]).is_none() {
                continue;
            }
            let f = series_mul(&a[r][pc][d..], &inv, low);
            for &c in &act_cols {
                if series_ord(&a[pr][c]).is_none() {
                    continue;
                }
                let prod = series_mul(&f, &a[pr][c][d..], low);
                for (k, x) in prod.into_iter().enumerate() {
                    a[r][c][k + d] -= x;
                }
            }
        }
        divisors.push(ValExp::int(d as i64));
    }
    divisors.sort();
    Some((divisors, m.rows - rank))
}
