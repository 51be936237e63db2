mod common;

use proptest::prelude::*;
use qtrop::poly::rational::{int, rat};
use qtrop::poly::Rational;
use qtrop::tropical::{
    balancing_check, curve, curve_of, curve_oracle, curve_with_subdivision, duality_report, eval, on_curve,
    tropicalize_with, Convention, RPoint, TropicalCurve, TropicalPolynomial, TropicalTerm, Window,
};
use qtrop::weyl::WeylElement;

fn terms_strategy(max: usize) -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-4i64..=4, -4i64..=4, -8i64..=8), 2..=max)
}

fn build(terms: &[(i64, i64, i64)]) -> Option<TropicalPolynomial> {
    let tp = TropicalPolynomial::from_integer_terms(terms).ok()?;
    (tp.len() >= 2).then_some(tp)
}

fn argmin_count(tp: &TropicalPolynomial, p: &RPoint) -> usize {
    eval(tp, &p.0, &p.1).1.len()
}

fn midpoint(a: &RPoint, b: &RPoint) -> RPoint {
    ((&a.0 + &b.0) / int(2), (&a.1 + &b.1) / int(2))
}

fn bounding_window(c: &TropicalCurve) -> Window {
    let mut pts: Vec<&RPoint> = c.vertices.iter().collect();
    pts.extend(c.lines.iter().map(|l| &l.anchor));
    let xs = pts.iter().map(|p| p.0.clone());
    let ys = pts.iter().map(|p| p.1.clone());
    let (x0, x1) = (xs.clone().min().unwrap_or(int(0)), xs.max().unwrap_or(int(0)));
    let (y0, y1) = (ys.clone().min().unwrap_or(int(0)), ys.max().unwrap_or(int(0)));
    Window::new(x0 - int(2), y0 - int(2), x1 + int(2), y1 + int(2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn curves_are_balanced_and_dual_to_their_subdivision(terms in terms_strategy(8)) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let (c, s) = curve_with_subdivision(&tp).unwrap();
        let b = balancing_check(&c);
        prop_assert!(b.balanced, "defects {:?}", b.defects);
        let d = duality_report(&c, &s);
        prop_assert!(d.ok(), "{:?}", d);
        prop_assert_eq!(c.vertices.len(), s.cells.len());
        prop_assert_eq!(c.edges.len(), s.interior_edges.len());
        prop_assert_eq!(c.rays.len(), s.boundary_edges.len());
    }

    #[test]
    fn curve_elements_attain_the_minimum_twice(terms in terms_strategy(8)) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let c = curve(&tp).unwrap();
        for v in &c.vertices {
            prop_assert!(argmin_count(&tp, v) >= 3);
        }
        for e in &c.edges {
            let m = midpoint(&c.vertices[e.from], &c.vertices[e.to]);
            prop_assert!(argmin_count(&tp, &m) >= 2);
        }
        for r in &c.rays {
            let b = &c.vertices[r.base];
            let p = (&b.0 + int(r.dir.0) * int(7), &b.1 + int(r.dir.1) * int(7));
            let far = (&b.0 + int(r.dir.0) * int(1000), &b.1 + int(r.dir.1) * int(1000));
            prop_assert!(argmin_count(&tp, &p) >= 2);
            prop_assert!(argmin_count(&tp, &far) >= 2);
        }
        for l in &c.lines {
            let p = (&l.anchor.0 + int(l.dir.0) * int(3), &l.anchor.1 + int(l.dir.1) * int(3));
            prop_assert!(argmin_count(&tp, &p) >= 2);
        }
    }

    #[test]
    fn vertices_are_where_three_or_more_terms_tie(terms in terms_strategy(8)) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let c = curve(&tp).unwrap();
        for v in &c.vertices {
            let (_, arg) = eval(&tp, &v.0, &v.1);
            let affinely_independent = arg.iter().any(|&i| arg.iter().any(|&j| arg.iter().any(|&k| {
                let (ti, tj, tk) = (&tp.terms()[i], &tp.terms()[j], &tp.terms()[k]);
                let det = (&tj.a - &ti.a) * (&tk.b - &ti.b) - (&tj.b - &ti.b) * (&tk.a - &ti.a);
                det != int(0)
            })));
            prop_assert!(affinely_independent, "vertex {:?} argmin {:?}", v, arg);
        }
    }

    #[test]
    fn incidence_agrees_with_direct_evaluation(
        terms in terms_strategy(6),
        pts in prop::collection::vec((-40i64..=40, -40i64..=40, 1i64..=4), 40),
    ) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let c = curve(&tp).unwrap();
        for (x, y, d) in pts {
            let p = (rat(x, d), rat(y, d));
            prop_assert_eq!(on_curve(&c, &p), argmin_count(&tp, &p) >= 2, "{:?}", p);
        }
    }

    #[test]
    fn oracle_witnesses_lie_on_the_curve(terms in terms_strategy(6)) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let c = curve(&tp).unwrap();
        let w = bounding_window(&c);
        for wit in curve_oracle(&tp, &w, 24) {
            prop_assert!(on_curve(&c, &wit.point), "{:?}", wit.point);
        }
    }

    #[test]
    fn adding_a_common_linear_form_leaves_the_curve(
        terms in terms_strategy(7),
        (al, be, ga) in (-3i64..=3, -3i64..=3, -5i64..=5),
    ) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let moved: Vec<_> = terms.iter().map(|&(a, b, c)| (a + al, b + be, c + ga)).collect();
        let tq = build(&moved).unwrap();
        prop_assert_eq!(curve(&tp).unwrap(), curve(&tq).unwrap());
    }

    #[test]
    fn scaling_constants_scales_the_curve(terms in terms_strategy(7), k in 1i64..=5) {
        let Some(tp) = build(&terms) else { return Ok(()) };
        let scaled: Vec<_> = terms.iter().map(|&(a, b, c)| (a, b, c * k)).collect();
        let c1 = curve(&tp).unwrap();
        let ck = curve(&build(&scaled).unwrap()).unwrap();
        let expect: Vec<RPoint> = c1.vertices.iter().map(|(x, y)| (x * int(k), y * int(k))).collect();
        prop_assert_eq!(&ck.vertices, &expect);
        prop_assert_eq!(ck.edges, c1.edges);
        prop_assert_eq!(ck.rays, c1.rays);
    }

    #[test]
    fn rational_slopes_are_handled(
        terms in prop::collection::vec((-6i64..=6, -6i64..=6, -8i64..=8), 2..=6),
        den in 1i64..=3,
    ) {
        let tp = TropicalPolynomial::new(terms.iter().map(|&(a, b, c)| TropicalTerm {
            a: rat(a, den),
            b: rat(b, den),
            c: int(c),
        }));
        let Ok(tp) = tp else { return Ok(()) };
        if tp.len() < 2 { return Ok(()) }
        let (c, s) = curve_with_subdivision(&tp).unwrap();
        prop_assert!(balancing_check(&c).balanced);
        prop_assert!(duality_report(&c, &s).ok());
        for e in &c.edges {
            let m = midpoint(&c.vertices[e.from], &c.vertices[e.to]);
            prop_assert!(argmin_count(&tp, &m) >= 2);
        }
    }

    #[test]
    fn conventions_are_reflections(
        terms in prop::collection::vec((0i64..=3, 0i64..=4, -4i64..=4, -3i64..=3), 2..=7),
    ) {
        let mut op = WeylElement::zero();
        for (l, m, k, c) in terms {
            if c != 0 {
                op = op.add(&WeylElement::term(int(c), l, m, k));
            }
        }
        let Ok(tp) = tropicalize_with(&op, Convention::Max) else { return Ok(()) };
        if tp.len() < 2 { return Ok(()) }
        let (max, _) = curve_of(&op, Convention::Max).unwrap();
        let (min, _) = curve_of(&op, Convention::Min).unwrap();
        let mut reflected: Vec<RPoint> = max.vertices.iter().map(|(x, y)| (-x, -y)).collect();
        reflected.sort();
        prop_assert_eq!(min.vertices, reflected);
        prop_assert_eq!(max.edges.len(), min.edges.len());
        prop_assert_eq!(max.rays.len(), min.rays.len());
    }
}

#[test]
fn tropical_line() {
    let tp = TropicalPolynomial::from_integer_terms(&[(1, 0, 0), (0, 1, 0), (0, 0, 0)]).unwrap();
    let c = curve(&tp).unwrap();
    assert_eq!(c.vertices, vec![(int(0), int(0))]);
    let mut dirs: Vec<_> = c.rays.iter().map(|r| r.dir).collect();
    dirs.sort();
    assert_eq!(dirs, vec![(-1, -1), (0, 1), (1, 0)]);
}

#[test]
fn tropical_conic_with_multiplicity() {
    // min{2x, 0} along one direction: a single line of multiplicity 2
    let tp = TropicalPolynomial::from_integer_terms(&[(2, 0, 0), (0, 0, 0)]).unwrap();
    let c = curve(&tp).unwrap();
    assert!(c.vertices.is_empty());
    assert_eq!(c.lines.len(), 1);
    assert_eq!(c.lines[0].mult, 2);
    assert_eq!(c.lines[0].dir, (0, 1));
    let tp = TropicalPolynomial::from_integer_terms(&[(2, 0, 0), (1, 0, 1), (0, 0, 0)]).unwrap();
    // min{2x, x + 1, 0}: both ties at x = 0, and x + 1 never wins
    let c = curve(&tp).unwrap();
    assert_eq!(c.lines.len(), 1);
    assert_eq!(c.lines[0].mult, 2);
    let r: Rational = c.lines[0].anchor.0.clone();
    assert_eq!(r, int(0));
}
