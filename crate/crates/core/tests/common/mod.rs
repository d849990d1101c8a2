#![allow(dead_code)]

use kahler::kahler::Pluriform;
use kahler::lattice::Matrix;
use kahler::{BaseFieldModel, FieldElem, LaurentPoly};
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn models() -> Vec<BaseFieldModel> {
    vec![
        BaseFieldModel::padic(2).unwrap(),
        BaseFieldModel::padic(3).unwrap(),
        BaseFieldModel::PiAdicQ,
        BaseFieldModel::piadic_fp(5).unwrap(),
    ]
}

pub fn rational(rng: &mut impl Rng, span: i64, max_den: i64) -> BigRational {
    r(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

pub fn point(rng: &mut impl Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| rational(rng, 12, 4)).collect()
}

fn nonzero(rng: &mut impl Rng, span: i64) -> i64 {
    loop {
        let v = rng.gen_range(-span..=span);
        if v != 0 {
            return v;
        }
    }
}

/// Nonzero integer not divisible by `p` (any nonzero integer when `p = 0`).
fn prime_to(rng: &mut impl Rng, p: u64, span: i64) -> i64 {
    loop {
        let v = nonzero(rng, span);
        if p == 0 || v.rem_euclid(p as i64) != 0 {
            return v;
        }
    }
}

/// A random element of valuation zero.
pub fn unit(rng: &mut impl Rng, model: BaseFieldModel) -> FieldElem {
    let p = model.residue_char();
    let a = prime_to(rng, p, 9);
    let b = prime_to(rng, p, 9).abs();
    let mut x = model.from_rational(&r(a, b)).unwrap();
    if let Ok(pi) = model.pi() {
        if rng.gen_bool(0.5) {
            let c = model.from_int(nonzero(rng, 5));
            x = x + c * pi.pow(rng.gen_range(1..3)).unwrap();
        }
    }
    x
}

/// A random nonzero element of valuation in `lo..=hi` (zero for the trivial model).
pub fn elem(rng: &mut impl Rng, model: BaseFieldModel, lo: i64, hi: i64) -> FieldElem {
    let u = unit(rng, model);
    match model.uniformizer() {
        Ok(pi) => u * pi.pow(rng.gen_range(lo..=hi)).unwrap(),
        Err(_) => u,
    }
}

pub fn laurent(
    rng: &mut impl Rng,
    model: BaseFieldModel,
    n: usize,
    max_terms: usize,
    exp_lo: i64,
    exp_hi: i64,
) -> LaurentPoly {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..k)
            .map(|_| (elem(rng, model, -1, 3), (0..n).map(|_| rng.gen_range(exp_lo..=exp_hi)).collect()))
            .collect();
        let f = LaurentPoly::from_terms(model, n, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random nonsingular integral square matrix of field constants.
pub fn integral_matrix(rng: &mut impl Rng, model: BaseFieldModel, size: usize) -> Matrix {
    loop {
        let entries: Vec<FieldElem> = (0..size * size)
            .map(|_| if rng.gen_bool(0.2) { model.zero() } else { elem(rng, model, 0, 2) })
            .collect();
        let m = Matrix::from_elems(size, size, entries, model).unwrap();
        if m.det_val().is_ok_and(|v| !v.is_inf()) {
            return m;
        }
    }
}

/// Random integer matrix with determinant ±1.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            m.swap(i, (i + 1) % n);
            continue;
        }
        let c = rng.gen_range(-2..=2);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m
}

/// Random invertible integer matrix with small entries.
pub fn int_matrix(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if kahler::kahler::int_det(&m) != 0.into() {
            return m;
        }
    }
}

pub fn monomial_subs(model: BaseFieldModel, l: &[Vec<i64>]) -> Vec<LaurentPoly> {
    l.iter().map(|row| LaurentPoly::monomial(model, model.one(), row.clone())).collect()
}

/// Random `l`-subset of `0..n`, sorted.
pub fn subset(rng: &mut impl Rng, n: usize, l: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..l {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut s = all[..l].to_vec();
    s.sort();
    s
}

/// Random nonzero pluriform with up to `max_indices` basis indices.
pub fn form(rng: &mut impl Rng, model: BaseFieldModel, n: usize, l: usize, m: usize, max_indices: usize) -> Pluriform {
    let mut f = Pluriform::zero(model, n, l, m).unwrap();
    for _ in 0..rng.gen_range(1..=max_indices) {
        let index = (0..m).map(|_| subset(rng, n, l)).collect();
        let c = laurent(rng, model, n, 4, -2, 2);
        f.add_term(index, c).unwrap();
    }
    if f.is_zero() {
        f.add_term(vec![(0..l).collect(); m], LaurentPoly::one(model, n)).unwrap();
    }
    f
}

/// `v_K(g)` for `K = l[s_j]/(s_j^{e_j} - t_j)` by reducing `s`-exponents
/// modulo `e_j` and reading off the Gauss valuation of the basis
/// `t^I s^J`, `0 ≤ J_j < e_j`, at unit radii.
pub fn kummer_valuation(model: BaseFieldModel, n: usize, exps: &[u64], g: &LaurentPoly) -> kahler::ValExp {
    use std::collections::BTreeMap;
    let mut reduced: BTreeMap<Vec<i64>, FieldElem> = BTreeMap::new();
    for (e, c) in g.terms() {
        let mut key = e.clone();
        for j in 0..n {
            let ej = exps[j] as i64;
            let (quot, rem) = (e[n + j].div_euclid(ej), e[n + j].rem_euclid(ej));
            key[j] += quot;
            key[n + j] = rem;
        }
        let entry = reduced.entry(key).or_insert_with(|| model.zero());
        *entry = &*entry + c;
    }
    kahler::value::min_val(reduced.values().map(|c| model.val(c)))
}

/// Random polynomial in `t_1..t_n, s_1..s_n` using `s_j` only where `e_j > 1`.
pub fn kummer_poly(rng: &mut impl Rng, model: BaseFieldModel, exps: &[u64], max_terms: usize) -> LaurentPoly {
    let n = exps.len();
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..k)
            .map(|_| {
                let mut e: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                e.extend(exps.iter().map(|&ej| if ej > 1 { rng.gen_range(-4..=6) } else { 0 }));
                (elem(rng, model, 0, 2), e)
            })
            .collect();
        let g = LaurentPoly::from_terms(model, 2 * n, terms).unwrap();
        if !g.is_zero() && !kummer_valuation(model, n, exps, &g).is_inf() {
            return g;
        }
    }
}

/// Vertices of `{ρ ≥ 0, Σρ ≤ va}`: the origin and `va·e_i`.
pub fn simplex_vertices(n: usize, va: &BigRational) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![q(0); n]];
    for i in 0..n {
        let mut v = vec![q(0); n];
        v[i] = va.clone();
        out.push(v);
    }
    out.sort();
    out
}

/// Checks that `locus` is exactly the set where `t` attains `m*` on `p`,
/// that every face is exposed by its tight set and that its vertices are
/// the polytope vertices `verts` on that face. Returns a description of
/// the first violation.
pub fn check_locus(
    t: &kahler::tropical::TropPoly,
    p: &kahler::tropical::RationalPolytope,
    verts: &[Vec<BigRational>],
    m_star: &BigRational,
    locus: &kahler::tropical::FaceComplex,
    grid_steps: u32,
) -> Result<(), String> {
    let on = |x: &[BigRational], tight: &[usize]| tight.iter().all(|&k| num_traits::Zero::is_zero(&p.slack(k, x)));
    let value = |x: &[BigRational]| t.eval(x).unwrap().finite().unwrap().clone();
    for face in &locus.faces {
        let expected: Vec<_> = verts.iter().filter(|v| on(v, &face.tight)).cloned().collect();
        let mut listed = face.vertices.clone();
        listed.sort();
        if listed != expected {
            return Err(format!("face {:?} lists {:?}, expected {:?}", face.tight, listed, expected));
        }
        if expected.is_empty() {
            return Err(format!("tight set {:?} is infeasible", face.tight));
        }
        if let Some(v) = expected.iter().find(|v| value(v) != *m_star) {
            return Err(format!("face {:?} contains {:?} off the minimum", face.tight, v));
        }
    }
    let mut points = verts.to_vec();
    points.extend(p.grid_points(grid_steps).unwrap());
    let mut attained = false;
    for x in &points {
        let v = value(x);
        if v < *m_star {
            return Err(format!("value {v} below m* at {x:?}"));
        }
        let in_locus = locus.faces.iter().any(|f| on(x, &f.tight));
        if (v == *m_star) != in_locus {
            return Err(format!("point {x:?} with value {v}: membership {in_locus}"));
        }
        attained |= v == *m_star;
    }
    if !attained {
        return Err("m* not attained at any vertex".into());
    }
    Ok(())
}
