use num_bigint::BigInt;
use proptest::prelude::*;
use qtrop::poly::rational::{int, rat};
use qtrop::poly::{parse_poly, Polynomial, RationalFunction, ZLaurent};
use qtrop::qholo::{
    check_prop1, degree_data, evaluate, first_order_operator, fit_points, fit_quasipolynomial, slopes,
    RecursionSystem,
};
use qtrop::weyl::{apply, homogenize, WeylElement, VARS};

fn monomial(e: i64) -> RationalFunction {
    RationalFunction::from_integer_laurent(&ZLaurent::monomial(BigInt::from(1), e))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn weyl_strategy() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0i64..=2, -2i64..=2, -3i64..=3, -3i64..=3), 1..=5).prop_map(|ts| {
        ts.into_iter().fold(WeylElement::zero(), |acc, (l, m, k, c)| {
            acc.add(&WeylElement::term(int(c), l, m, k))
        })
    })
}

fn laurent_seq(len: usize) -> impl Strategy<Value = Vec<RationalFunction>> {
    prop::collection::vec(prop::collection::vec((-4i64..=4, -3i64..=3), 0..=3), len).prop_map(|vs| {
        vs.into_iter()
            .map(|ts| {
                RationalFunction::from_integer_laurent(&ZLaurent::from_terms(
                    ts.into_iter().map(|(e, c)| (e, BigInt::from(c))),
                ))
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn first_order_sequences_match_closed_form(alpha in -5i64..=5, beta in -5i64..=5) {
        let op = first_order_operator(alpha, beta);
        let sys = RecursionSystem::homogeneous(op.clone(), vec![RationalFunction::one()]).unwrap();
        let seq = evaluate(&sys, 40).unwrap();
        for n in 0..=40i64 {
            prop_assert_eq!(&seq.values()[n as usize], &monomial(alpha * binom2(n) + beta * n));
        }
        let rep = check_prop1(&op, &seq.values()[..=40], 8).unwrap();
        prop_assert!(rep.contained);
        let finite: Vec<_> = rep.sequence_slopes.finite.iter().cloned().collect();
        prop_assert_eq!(finite, vec![int(alpha)]);
    }

    #[test]
    fn fits_reproduce_quasipolynomials(
        period in 1usize..=4,
        coeffs in prop::collection::vec((-6i64..=6, -6i64..=6, -6i64..=6), 4),
        (a, b) in (-4i64..=4, -4i64..=4),
    ) {
        let c = &coeffs[..period];
        let v = |n: i64| {
            let (g2, g1, g0) = c[(n as usize) % period];
            g2 * binom2(n) + g1 * n + g0
        };
        let data: Vec<(i64, i64)> = (0..40).map(|n| (n, v(n))).collect();
        let fit = fit_points(&data, 8).unwrap();
        prop_assert!(period % fit.period == 0, "period {} fitted {}", period, fit.period);
        for &(n, y) in &data[fit.onset as usize..] {
            prop_assert_eq!(fit.eval(n), int(y));
        }
        let expected: std::collections::BTreeSet<_> = c.iter().map(|t| int(t.0)).collect();
        let got: std::collections::BTreeSet<_> = slopes(&fit).finite.iter().cloned().collect();
        prop_assert_eq!(&got, &expected);
        // adding a linear term changes no slope
        let shifted: Vec<(i64, i64)> = data.iter().map(|&(n, y)| (n, y + a * n + b)).collect();
        let fit2 = fit_points(&shifted, 8).unwrap();
        prop_assert_eq!(slopes(&fit2), slopes(&fit));
    }

    #[test]
    fn index_fits_agree_with_point_fits(alpha in -5i64..=5, beta in -5i64..=5, c0 in -5i64..=5) {
        let vals: Vec<i64> = (0..30).map(|n| alpha * binom2(n) + beta * n + c0).collect();
        let a = fit_quasipolynomial(&vals, 4).unwrap();
        let pts: Vec<(i64, i64)> = vals.iter().enumerate().map(|(n, v)| (n as i64, *v)).collect();
        let b = fit_points(&pts, 4).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(b.gamma2().cloned().collect::<Vec<_>>(), vec![int(alpha)]);
        prop_assert_eq!((b.period, b.onset), (1, 0));
    }

    #[test]
    fn operator_products_act_as_compositions(
        p in weyl_strategy(),
        q in weyl_strategy(),
        f in laurent_seq(10),
    ) {
        let pq = p.mul(&q);
        let qf: Vec<RationalFunction> = (0..6).map(|n| apply(&q, &f, n).unwrap()).collect();
        for n in 0..=(6 - 1 - p.order().unwrap_or(0)).min(3) {
            prop_assert_eq!(apply(&pq, &f, n).unwrap(), apply(&p, &qf, n).unwrap());
        }
    }

    #[test]
    fn multiplication_is_associative(a in weyl_strategy(), b in weyl_strategy(), c in weyl_strategy()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn display_round_trips(p in weyl_strategy()) {
        let text = p.to_string();
        prop_assert_eq!(WeylElement::parse_normal_form(&text, &VARS).unwrap(), p);
    }

    #[test]
    fn homogenized_operators_annihilate(
        alpha in -3i64..=3,
        beta in -3i64..=3,
        b in prop::collection::vec((0i64..=2, -2i64..=2, -2i64..=2), 1..=3),
    ) {
        // f_{n+1} = q^(alpha n + beta) f_n + b(q^n, q)
        let op = first_order_operator(alpha, beta);
        let mut rhs = Polynomial::zero(&["M", "q"]);
        for (m, k, c) in b {
            rhs = rhs.checked_add(&Polynomial::monomial(&["M", "q"], vec![m, k], int(c))).unwrap();
        }
        let sys = RecursionSystem::new(op.clone(), &rhs, vec![RationalFunction::one()]).unwrap();
        let seq = evaluate(&sys, 12).unwrap();
        let h = homogenize(&op, &rhs).unwrap();
        prop_assert!(!h.is_zero());
        for n in 0..(12 - h.order().unwrap()) {
            prop_assert!(apply(&h, seq.values(), n).unwrap().is_zero(), "n = {}", n);
        }
    }
}

#[test]
fn fit_needs_enough_points() {
    let few: Vec<(i64, i64)> = (0..4).map(|n| (n, n * n)).collect();
    assert!(fit_points(&few, 8).is_err());
}

#[test]
fn periodic_fit() {
    // deg f_n = floor(n^2 / 2): period 2, slope 1 on both residues
    let data: Vec<(i64, i64)> = (0..40).map(|n| (n, n * n / 2)).collect();
    let fit = fit_points(&data, 8).unwrap();
    assert_eq!(fit.period, 2);
    assert!(fit.gamma2().all(|g| *g == int(1)));
    for &(n, v) in &data {
        assert_eq!(fit.eval(n), int(v));
    }
    // slope 3/2 needs two residues with gamma2 = 3/2 exactly
    let data: Vec<(i64, i64)> = (0..40).map(|n| (n, 3 * n * n / 4)).collect();
    let fit = fit_points(&data, 8).unwrap();
    assert!(fit.gamma2().all(|g| *g == rat(3, 2)));
}

#[test]
fn rational_initial_values_and_degrees() {
    // f_{n+1} = q^n f_n with f_0 = 1 / (1 - q)
    let op = first_order_operator(1, 0);
    let f0 = RationalFunction::from_polynomials(
        &parse_poly("1", &["q"]).unwrap(),
        &parse_poly("1 - q", &["q"]).unwrap(),
    )
    .unwrap();
    let sys = RecursionSystem::homogeneous(op, vec![f0]).unwrap();
    let seq = evaluate(&sys, 10).unwrap();
    assert!(!seq.values()[3].is_laurent());
    let d = degree_data(seq.values(), false).unwrap();
    // deg of q^C(n,2) / (1 - q) is C(n,2) - 1
    for (n, v) in d {
        assert_eq!(v, binom2(n) - 1);
    }
}
