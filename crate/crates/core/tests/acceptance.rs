//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use kahler::kahler::{evaluate, int_det, kahler_norm_at, MonomialChart, Pluriform, TameStatus};
use kahler::lattice::{semilattice_index, Matrix, PresentationMatrix};
use kahler::seminorm::DiagSeminorm;
use kahler::tropical::{min_locus, semistable_skeleton, tropicalize};
use kahler::weight::{different_kummer_ramified, KummerDivisorialSpec};
use kahler::{BaseFieldModel, LaurentPoly, ValExp};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;

/// Outcome of one criterion: number of checks and the first failure.
type Outcome = Result<usize, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn padic(p: u64) -> BaseFieldModel {
    BaseFieldModel::padic(p).unwrap()
}

fn ac1() -> Outcome {
    let mut g = rng(1);
    let ms = [padic(2), padic(3), BaseFieldModel::PiAdicQ];
    for i in 0..1000 {
        let model = ms[i % 3];
        let n = g.gen_range(1..=3);
        let f = laurent(&mut g, model, n, 8, -3, 3);
        let h = laurent(&mut g, model, n, 8, -3, 3);
        let rho = point(&mut g, n);
        let lhs = f.mul(&h).gauss_val(&rho).unwrap();
        let rhs = f.gauss_val(&rho).unwrap() + h.gauss_val(&rho).unwrap();
        ensure(lhs == rhs, || format!("pair {i} over {model}: {lhs} vs {rhs}"))?;
    }
    Ok(1000)
}

fn divisor_sum(m: &Matrix) -> ValExp {
    PresentationMatrix::new(m.clone()).unwrap().smith().divisors.into_iter().sum()
}

fn ac2() -> Outcome {
    let mut g = rng(2);
    let mut checks = 0;
    for model in models() {
        for i in 0..500 {
            let size = g.gen_range(1..=5);
            let x = integral_matrix(&mut g, model, size);
            let y = integral_matrix(&mut g, model, size);
            let xy = x.mul(&y).unwrap();
            let content = |m: &Matrix| PresentationMatrix::new(m.clone()).unwrap().content();
            let (cx, cy, cxy) = (content(&x), content(&y), content(&xy));
            ensure(cxy == cx.clone() + cy.clone(), || format!("{model} pair {i}: {cxy} vs {cx} + {cy}"))?;
            for m in [&x, &y, &xy] {
                let (s, d) = (divisor_sum(m), m.det_val().unwrap());
                ensure(s == d, || format!("{model} pair {i}: divisor sum {s} vs v(det) {d}"))?;
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn ac3() -> Outcome {
    let mut g = rng(3);
    let ms = models();
    for i in 0..200 {
        let model = ms[i % ms.len()];
        let size = g.gen_range(1..=4);
        let m = integral_matrix(&mut g, model, size);
        let t = integral_matrix(&mut g, model, size);
        let l = m.mul(&t).unwrap();
        let index = semilattice_index(&m, &l).unwrap();
        let content = PresentationMatrix::new(t).unwrap().content();
        ensure(index.clone() + content.clone() == ValExp::zero(), || {
            format!("{model} instance {i}: index {index}, content {content}")
        })?;
    }
    Ok(200)
}

fn ac4() -> Outcome {
    let mut g = rng(4);
    for i in 0..200 {
        let dim = g.gen_range(1..=6);
        let mut norm = || DiagSeminorm::from_weights((0..dim).map(|_| ValExp::Finite(rational(&mut g, 9, 5))).collect());
        let (a, b, c) = (norm(), norm(), norm());
        let lhs = a.norm_index(&b).unwrap() + b.norm_index(&c).unwrap();
        let rhs = a.norm_index(&c).unwrap();
        ensure(lhs == rhs, || format!("triple {i}: {lhs} vs {rhs}"))?;
    }
    Ok(200)
}

fn ac5() -> Outcome {
    let mut g = rng(5);
    let ms = models();
    for i in 0..100 {
        let model = ms[i % ms.len()];
        let n = g.gen_range(1..=4);
        let m = g.gen_range(1..=3);
        let f = Pluriform::canonical(LaurentPoly::one(model, n), m).unwrap();
        let rho = point(&mut g, n);
        let v = kahler_norm_at(&f, &MonomialChart::identity(model, rho.clone())).unwrap();
        ensure(v == ValExp::zero(), || format!("skeleton point {rho:?} over {model}: {v}"))?;
    }
    for i in 0..100 {
        let model = ms[i % ms.len()];
        let n = g.gen_range(1..=4);
        let rho: Vec<BigRational> = (0..n).map(|_| r(g.gen_range(1..=12), g.gen_range(1..=4))).collect();
        let subs = (0..n)
            .map(|j| LaurentPoly::constant(model, n, unit(&mut g, model)).add(&LaurentPoly::var(model, n, j).unwrap()))
            .collect();
        let chart = MonomialChart::new(model, subs, rho.clone()).unwrap();
        let f = Pluriform::canonical(LaurentPoly::one(model, n), 1).unwrap();
        let v = kahler_norm_at(&f, &chart).unwrap();
        let expected: BigRational = rho.iter().sum();
        ensure(v > ValExp::zero() && v == ValExp::Finite(expected.clone()), || {
            format!("translated chart at {rho:?} over {model}: {v}, expected {expected}")
        })?;
    }
    Ok(200)
}

fn ac6() -> Outcome {
    let mut g = rng(6);
    let ms = models();
    for i in 0..50 {
        let model = ms[i % ms.len()];
        let rho = rational(&mut g, 30, 9);
        let dt = Pluriform::differential(&LaurentPoly::var(model, 1, 0).unwrap());
        let v = kahler_norm_at(&dt, &MonomialChart::identity(model, vec![rho.clone()])).unwrap();
        ensure(v == ValExp::Finite(rho.clone()), || format!("radius {rho}: {v}"))?;
    }
    Ok(50)
}

fn ac7() -> Outcome {
    let mut g = rng(7);
    let mut done = 0;
    while done < 100 {
        let p = [2u64, 3, 5][done % 3];
        let model = padic(p);
        let n = g.gen_range(1..=3);
        let mut l = int_matrix(&mut g, n);
        let det = int_det(&l);
        if (&det % BigInt::from(p)) == BigInt::from(0) {
            continue;
        }
        let f = Pluriform::canonical(LaurentPoly::one(model, n), 1).unwrap();
        let chart = MonomialChart::new(model, monomial_subs(model, &l), point(&mut g, n)).unwrap();
        let ev = evaluate(&f, &chart).unwrap();
        ensure(ev.certificate == TameStatus::Tame && ev.value == ValExp::zero(), || {
            format!("L = {l:?} over {model}: {} with value {}", ev.certificate, ev.value)
        })?;
        let row = g.gen_range(0..n);
        for e in l[row].iter_mut() {
            *e *= p as i64;
        }
        let wild_det = int_det(&l);
        let chart = MonomialChart::new(model, monomial_subs(model, &l), chart.rho().to_vec()).unwrap();
        let ev = evaluate(&f, &chart).unwrap();
        let expected = model.val(&model.from_bigint(&wild_det.abs()));
        ensure(
            ev.certificate == TameStatus::Wild && ev.value == expected && expected > ValExp::zero(),
            || format!("scaled L = {l:?} over {model}: {} with value {}", ev.certificate, ev.value),
        )?;
        done += 1;
    }
    Ok(100)
}

fn ac8() -> Outcome {
    let mut g = rng(8);
    let ms = models();
    for i in 0..1000 {
        let model = ms[i % ms.len()];
        let n = g.gen_range(1..=3);
        let l = g.gen_range(0..=n);
        let m = g.gen_range(1..=2);
        let f = form(&mut g, model, n, l, m, 3);
        let rho = point(&mut g, n);
        let trop = tropicalize(&f).eval(&rho).unwrap();
        let direct = kahler_norm_at(&f, &MonomialChart::identity(model, rho.clone())).unwrap();
        ensure(trop == direct, || format!("form {i} over {model} at {rho:?}: {trop} vs {direct}"))?;
    }
    Ok(1000)
}

fn random_skeleton_form(g: &mut impl Rng, model: BaseFieldModel) -> (usize, BigRational, Pluriform) {
    let n = g.gen_range(1..=3);
    let va = r(g.gen_range(1..=8), 2);
    (n, va, form(g, model, n, 0, 1, 2))
}

fn ac9() -> Outcome {
    let mut g = rng(9);
    let ms = models();
    for i in 0..50 {
        let model = ms[i % ms.len()];
        let (n, va, f) = random_skeleton_form(&mut g, model);
        let t = tropicalize(&f);
        let p = semistable_skeleton(n, &va).unwrap();
        let (m_star, locus) = min_locus(&t, &p).unwrap();
        let verts = simplex_vertices(n, &va);
        let by_vertices = verts.iter().map(|v| t.eval(v).unwrap()).min().unwrap();
        ensure(by_vertices == ValExp::Finite(m_star.clone()), || {
            format!("instance {i}: m* {m_star} vs vertex minimum {by_vertices}")
        })?;
        check_locus(&t, &p, &verts, &m_star, &locus, if n == 3 { 6 } else { 10 })
            .map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(50)
}

fn exponent_vectors(n: usize) -> Vec<Vec<u64>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|v| (1..=6u64).map(move |e| [v.clone(), vec![e]].concat())).collect()
    })
}

fn ac10() -> Outcome {
    let mut g = rng(10);
    let mut checks = 0;
    for p in [2u64, 3, 5] {
        let model = padic(p);
        for n in 1..=3 {
            for exps in exponent_vectors(n) {
                let kummer = exps.iter().enumerate().filter(|(_, &e)| e > 1).map(|(j, &e)| (j, e)).collect();
                let spec = KummerDivisorialSpec::new(model, n, kummer).unwrap();
                for m in 1..=3 {
                    let poly = unit_kummer_poly(&mut g, model, &exps);
                    let rep = spec.compare(&poly, m).unwrap();
                    let rhs = (ValExp::int(1) + rep.delta_log_k.clone()).scale(m as u64) + rep.omega.clone();
                    ensure(rep.identity_holds && rep.wt == rhs, || {
                        format!("p={p} e={exps:?} m={m}: wt {} vs {rhs}", rep.wt)
                    })?;
                    checks += 1;
                }
            }
        }
        for e in 2..=8u64 {
            if e % p == 0 {
                continue;
            }
            let d = different_kummer_ramified(model, e).unwrap();
            let closed = ValExp::ratio(e as i64 - 1, e as i64);
            ensure(d == closed, || format!("different p={p} e={e}: {d} vs {closed}"))?;
            checks += 1;
        }
    }
    Ok(checks)
}

/// Random `g` with `v_K(g) = 0`.
fn unit_kummer_poly(g: &mut impl Rng, model: BaseFieldModel, exps: &[u64]) -> LaurentPoly {
    loop {
        let poly = kummer_poly(g, model, exps, 3);
        if kummer_valuation(model, exps.len(), exps, &poly) == ValExp::zero() {
            return poly;
        }
    }
}

fn ac11() -> Outcome {
    let mut g = rng(11);
    let ms = models();
    for i in 0..20 {
        let model = ms[i % ms.len()];
        let (n, va, f) = random_skeleton_form(&mut g, model);
        let p = semistable_skeleton(n, &va).unwrap();
        let (m_star, locus) = min_locus(&tropicalize(&f), &p).unwrap();
        let witness = locus
            .faces
            .iter()
            .flat_map(|face| face.vertices.iter())
            .find(|v| {
                p.contains(v)
                    && kahler_norm_at(&f, &MonomialChart::identity(model, v.to_vec())).unwrap()
                        == ValExp::Finite(m_star.clone())
            });
        ensure(witness.is_some(), || format!("instance {i}: no rational point of the locus attains {m_star}"))?;
    }
    Ok(20)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Gauss valuation is multiplicative", ac1),
        ("content is multiplicative, divisor sum equals v(det)", ac2),
        ("semilattice index plus content vanishes", ac3),
        ("index of diagonal norms is transitive", ac4),
        ("torus skeleton: canonical form has norm 1 exactly on the skeleton", ac5),
        ("norm of dT is the radius function", ac6),
        ("tameness determinant criterion", ac7),
        ("tropicalization agrees with the Kahler norm", ac8),
        ("maximality locus is a union of faces of the simplex", ac9),
        ("weight norm comparison identity and tame different", ac10),
        ("maximum attained at a rational point of the locus", ac11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(n) => println!("[PASS] AC-{} {name}: {n} exact checks ({ms} ms)", k + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] AC-{} {name}: {e}", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 11/11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria failed");
        ExitCode::FAILURE
    }
}
