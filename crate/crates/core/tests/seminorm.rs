mod common;

use common::*;
use kahler::seminorm::{DiagSeminorm, Exactness};
use kahler::ValExp;
use num_rational::BigRational;
use proptest::prelude::*;

fn weights(n: usize) -> impl Strategy<Value = Vec<ValExp>> {
    prop::collection::vec((-6i64..6, 1i64..4).prop_map(|(a, b)| ValExp::Finite(r(a, b))), n)
}

fn finite(v: &ValExp) -> BigRational {
    v.finite().expect("finite weight").clone()
}

proptest! {
    #[test]
    fn index_is_transitive(
        (a, b, c) in (1usize..=6).prop_flat_map(|n| (weights(n), weights(n), weights(n)))
    ) {
        let (a, b, c) = (
            DiagSeminorm::from_weights(a),
            DiagSeminorm::from_weights(b),
            DiagSeminorm::from_weights(c),
        );
        prop_assert_eq!(
            a.norm_index(&b).unwrap() + b.norm_index(&c).unwrap(),
            a.norm_index(&c).unwrap()
        );
        prop_assert_eq!(a.norm_index(&a).unwrap(), ValExp::zero());
    }

    #[test]
    fn tensor_determinant(a in weights(3), b in weights(2)) {
        let (a, b) = (DiagSeminorm::from_weights(a), DiagSeminorm::from_weights(b));
        let t = a.tensor(&b);
        prop_assert_eq!(
            t.det_norm().unwrap(),
            a.det_norm().unwrap().scale(2) + b.det_norm().unwrap().scale(3)
        );
    }

    #[test]
    fn symmetric_power_matches_monomials(w in weights(3), deg in 0i64..4) {
        let s = DiagSeminorm::from_weights(w.clone()).sym_power(deg, 0).unwrap();
        // monomials x^a y^b z^c with a + b + c = deg
        let mut expected = Vec::new();
        for a in (0..=deg).rev() {
            for b in (0..=deg - a).rev() {
                let c = deg - a - b;
                let v = finite(&w[0]) * q(a) + finite(&w[1]) * q(b) + finite(&w[2]) * q(c);
                expected.push(v);
            }
        }
        let mut got: Vec<BigRational> = s.weights().iter().map(finite).collect();
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn raising_a_weight_raises_derived_weights(w in weights(4), i in 0usize..4, bump in 1i64..5) {
        let base = DiagSeminorm::from_weights(w.clone());
        let mut w2 = w;
        w2[i] = w2[i].clone() + ValExp::int(bump);
        let raised = DiagSeminorm::from_weights(w2);
        let pairs = [
            (base.wedge_power(2).unwrap(), raised.wedge_power(2).unwrap()),
            (base.sym_power(2, 0).unwrap(), raised.sym_power(2, 0).unwrap()),
            (base.tensor(&base), raised.tensor(&raised)),
        ];
        for (lo, hi) in pairs {
            for (x, y) in lo.weights().iter().zip(hi.weights()) {
                prop_assert!(x <= y);
            }
        }
        prop_assert!(base.det_norm().unwrap() < raised.det_norm().unwrap());
    }
}

#[test]
fn symmetric_powers_in_positive_characteristic_are_bounds() {
    let d = DiagSeminorm::from_weights(vec![ValExp::int(1), ValExp::int(2)]);
    assert_eq!(d.sym_power(1, 3).unwrap().exactness(), Exactness::Exact);
    assert_eq!(d.sym_power(2, 3).unwrap().exactness(), Exactness::UpperBound);
    assert_eq!(d.sym_power(2, 0).unwrap().exactness(), Exactness::Exact);
}

#[test]
fn infinite_weight_has_no_determinant() {
    let d = DiagSeminorm::from_weights(vec![ValExp::int(1), ValExp::Inf]);
    assert!(d.det_norm().is_err());
}
