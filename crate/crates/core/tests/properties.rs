//! Property tests for the polynomial, form and bracket layers.

use courant_core::exactpoly::{rat, Monomial};
use courant_core::standard::d8_example;
use courant_core::{parse_poly, CartanModel, Courant, Poly, PolyForm, Rational, Section, VectorField, Vars};
use proptest::prelude::*;

fn vars4() -> Vars {
    Vars::numbered("x", 4)
}

fn poly_in(vars: Vars) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..=5, 1i64..=3), 0..5).prop_map(move |terms| {
        let mut p = Poly::zero(&vars);
        for (exps, num, den) in terms {
            p += Poly::monomial(&vars, Monomial::from_exponents(exps), rat(num, den));
        }
        p
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_in(vars4())
}

fn form(degree: usize) -> impl Strategy<Value = PolyForm> {
    let n = 4;
    let tuples: Vec<Vec<usize>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|t| t.len() == degree)
        .collect();
    prop::collection::vec(poly(), tuples.len()).prop_map(move |coeffs| {
        let mut w = PolyForm::zero(&vars4(), degree);
        for (idx, c) in tuples.iter().zip(coeffs) {
            w.add_component(idx, c).unwrap();
        }
        w
    })
}

fn section(model: &CartanModel) -> impl Strategy<Value = Section> {
    let vars = model.vars().clone();
    let d = model.dim();
    prop::collection::vec(prop_oneof![3 => Just(None), 1 => poly_in(vars.clone()).prop_map(Some)], d).prop_map(
        move |comps| Section::new(comps.into_iter().map(|c| c.unwrap_or_else(|| Poly::zero(&vars))).collect()),
    )
}

fn rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.vars()), a.clone());
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(), b in poly(), i in 0usize..4) {
        prop_assert_eq!((&a * &b).d(i), &(&a.d(i) * &b) + &(&a * &b.d(i)));
    }

    #[test]
    fn mixed_partials_commute(a in poly(), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(a.d(i).d(j), a.d(j).d(i));
    }

    #[test]
    fn print_then_parse_roundtrips(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly(&text, a.vars()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), pt in prop::collection::vec(rational(), 4)) {
        prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
    }

    #[test]
    fn d_squared_vanishes(w0 in poly(), w1 in form(1), w2 in form(2)) {
        prop_assert!(PolyForm::function(&w0).exterior_derivative().exterior_derivative().is_zero());
        prop_assert!(w1.exterior_derivative().exterior_derivative().is_zero());
        prop_assert!(w2.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn homotopy_inverts_d(w1 in form(1), w2 in form(2), w3 in form(3)) {
        for w in [w1, w2, w3] {
            let lhs = w.homotopy().exterior_derivative().add(&w.exterior_derivative().homotopy());
            prop_assert_eq!(lhs, w);
        }
    }

    #[test]
    fn vector_field_bracket_is_a_commutator(a in poly(), b in poly(), f in poly()) {
        let v = vars4();
        let x = VectorField::coordinate(&v, 0).scale(&a).add(&VectorField::coordinate(&v, 2));
        let y = VectorField::coordinate(&v, 1).scale(&b);
        let lhs = x.bracket(&y).apply(&f);
        let rhs = &x.apply(&y.apply(&f)) - &y.apply(&x.apply(&f));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dorfman_is_additive(
        (e1, e2, e3) in {
            let m = d8_example();
            (section(&m), section(&m), section(&m))
        }
    ) {
        let m = d8_example();
        let c = Courant::new(&m);
        prop_assert_eq!(c.dorfman(&e1, &(&e2 + &e3)), &c.dorfman(&e1, &e2) + &c.dorfman(&e1, &e3));
        prop_assert_eq!(c.dorfman(&(&e1 + &e2), &e3), &c.dorfman(&e1, &e3) + &c.dorfman(&e2, &e3));
    }

    #[test]
    fn dorfman_leibniz_and_anchor(
        (e1, e2, f) in {
            let m = d8_example();
            (section(&m), section(&m), poly())
        }
    ) {
        let m = d8_example();
        let c = Courant::new(&m);
        let lhs = c.dorfman(&e1, &e2.scale(&f));
        let rhs = &c.dorfman(&e1, &e2).scale(&f) + &e2.scale(&m.anchor(&e1).apply(&f));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.anchor(&c.dorfman(&e1, &e2)), m.anchor(&e1).bracket(&m.anchor(&e2)));
    }

    #[test]
    fn symmetric_part_is_exact(
        (e1, e2) in {
            let m = d8_example();
            (section(&m), section(&m))
        }
    ) {
        let m = d8_example();
        let c = Courant::new(&m);
        let sym = &c.dorfman(&e1, &e2) + &c.dorfman(&e2, &e1);
        prop_assert_eq!(sym, c.d_operator(&c.pairing(&e1, &e2)));
    }
}

#[test]
fn malformed_input_reports_offset() {
    let err = parse_poly("x1 +", &vars4()).unwrap_err();
    assert_eq!(err.offset(), Some(4));
}
