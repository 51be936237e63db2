mod common;

use common::{colored_jones, is_one, jones_values, pt};
use qtrop::geometry::{is_good, minkowski_sum, polygon_at_q0, LatticePolygon};
use qtrop::knots::{
    self, load, metadata_check, newton_polygon_ml, operator_degrees, rhs_at, twist_index, vertical_shift,
    AjOutcome, KnotEntry,
};
use qtrop::poly::{parse_poly, RationalFunction};
use qtrop::tropical::{balancing_check, curve_of, duality_report, Convention, RPoint};
use qtrop::weyl::{apply_laurent, WeylElement};

fn twist(name: &str) -> i64 {
    twist_index(name).unwrap()
}

fn entries() -> Vec<KnotEntry> {
    knots::load_builtin()
}

#[test]
fn oracle_unknot_normalization() {
    for p in [-2, -1, 1, 2] {
        assert!(colored_jones(0, p).is_empty());
        assert!(is_one(&colored_jones(1, p)));
    }
    // twist index 0 is the unknot: J(N) = 1 for N >= 1
    for n in 1..6 {
        assert!(is_one(&colored_jones(n, 0)), "N = {n}");
    }
}

#[test]
fn oracle_figure_eight_jones_polynomial() {
    // J_2 of 4_1 in the unknot-normalized convention: q^2 - q + 1 - q^-1 + q^-2
    let j2 = common::to_zlaurent(&colored_jones(2, -1));
    let expected = qtrop::poly::ZLaurent::from_terms([
        (-2, 1.into()),
        (-1, (-1).into()),
        (0, 1.into()),
        (1, (-1).into()),
        (2, 1.into()),
    ]);
    assert_eq!(j2, expected);
}

#[test]
fn shipped_initial_values_match_the_oracle() {
    for e in entries() {
        let oracle = jones_values(twist(&e.name), e.initial_values.len());
        for (n, (v, o)) in e.initial_values.iter().zip(&oracle).enumerate() {
            assert_eq!(v.as_integer_laurent().as_ref(), Some(o), "{} f_{n}", e.name);
        }
    }
}

#[test]
fn bootstrapped_sequences_match_the_oracle() {
    for e in entries() {
        let count = 13;
        let seq = e.sequence(count - 1).unwrap();
        let oracle = jones_values(twist(&e.name), count);
        for (n, want) in oracle.iter().enumerate() {
            assert_eq!(
                seq.values()[n].as_integer_laurent().as_ref(),
                Some(want),
                "{} f_{n}",
                e.name
            );
        }
    }
}

#[test]
fn operators_map_oracle_values_to_the_right_hand_side() {
    for e in entries() {
        let order = e.nonhomogeneous_op.order().unwrap() as usize;
        let vals = jones_values(twist(&e.name), 9 + order + 1);
        let h = e.homogenized().unwrap();
        for n in 0..=8 {
            let b = apply_laurent(&e.nonhomogeneous_op, &vals, n).unwrap().unwrap();
            assert_eq!(b.to_rational(), rhs_at(&e, n), "{} n = {n}", e.name);
        }
        let hv = jones_values(twist(&e.name), 8 + h.order().unwrap() as usize + 1);
        for n in 0..=8 {
            let z = apply_laurent(&h, &hv, n).unwrap().unwrap();
            assert!(z.is_zero(), "{} homogenized, n = {n}", e.name);
        }
    }
}

#[test]
fn shipped_homogeneous_figure_eight_annihilates() {
    let e = load("4_1").unwrap();
    let h = e.homogeneous_op.clone().unwrap();
    let vals = jones_values(-1, 16);
    for n in 0..=12 {
        assert!(apply_laurent(&h, &vals, n).unwrap().unwrap().is_zero(), "n = {n}");
    }
}

#[test]
fn validation_report() {
    for e in entries() {
        let r = knots::validate(&e, 8).unwrap();
        assert!(r.ok(), "{r}");
        assert!(r.laurent);
    }
}

#[test]
fn sequence_values_are_laurent() {
    for e in entries() {
        let seq = e.sequence(15).unwrap();
        assert!(
            seq.values().iter().all(RationalFunction::is_laurent),
            "{}",
            e.name
        );
    }
}

#[test]
fn term_counts_and_degrees() {
    let counts: Vec<usize> = entries()
        .iter()
        .map(|e| e.nonhomogeneous_op.term_count())
        .collect();
    assert_eq!(counts, vec![22, 98, 346]);
    let e52 = load("5_2").unwrap();
    assert_eq!(operator_degrees(&e52.nonhomogeneous_op), (3, 12, 19));
    // (2p - 1, 8p - 4, 17/2 p (p - 1) + 2) at p = 2
    let p = 2;
    assert_eq!(
        operator_degrees(&e52.nonhomogeneous_op),
        (2 * p - 1, 8 * p - 4, 17 * p * (p - 1) / 2 + 2)
    );
    for e in entries() {
        let m = metadata_check(&e, twist(&e.name));
        assert!(m.ok(), "{m}");
    }
}

#[test]
fn twist_identification() {
    assert_eq!(twist_index("4_1"), Some(-1));
    assert_eq!(twist_index("6_1"), Some(-2));
    assert_eq!(twist_index("8_1"), Some(-3));
    assert_eq!(twist_index("5_2"), Some(2));
    assert_eq!(knots::twist_term_count(-1), Some(22));
    assert_eq!(knots::twist_term_count(-2), Some(346));
    assert_eq!(knots::twist_term_count(-8), Some(139976));
    assert_eq!(knots::twist_term_count(2), Some(98));
    assert_eq!(knots::twist_term_count(11), Some(430652));
    assert_eq!(knots::twist_term_count(0), None);
}

#[test]
fn goodness() {
    for row in knots::goodness_table(&entries()) {
        assert_eq!(row.good, Ok(true), "{} {}", row.knot, row.operator);
    }
    assert!(knots::goodness_table(&entries()).len() >= 4);
}

#[test]
fn figure_eight_aj_identity_by_direct_expansion() {
    let e = load("4_1").unwrap();
    // x = L, y = M
    let product = "(-1+L)*(-1+M)^4*(1+M)^3*(-L+L*M+M^2+2*L*M^2+L^2*M^2+L*M^3-L*M^4)";
    let expected = parse_poly(product, &["M", "L"]).unwrap();
    let specialized = e.homogeneous_op.as_ref().unwrap().at_q1();
    assert_eq!(specialized, expected);
    assert_eq!(knots::verify_aj(&e).unwrap(), AjOutcome::Equal);
}

#[test]
fn aj_detects_monomial_multiples_and_differences() {
    let f = parse_poly("(-1+L)*(1+M)", &["M", "L"]).unwrap();
    let g = parse_poly("-3*M^2*L*(-1+L)*(1+M)", &["M", "L"]).unwrap();
    assert!(matches!(
        knots::compare_up_to_monomial(&g, std::slice::from_ref(&f)),
        AjOutcome::UpToMonomial { m: 2, l: 1, .. }
    ));
    let h = parse_poly("(-1+L)*(1+M)+1", &["M", "L"]).unwrap();
    assert_eq!(
        knots::compare_up_to_monomial(&h, std::slice::from_ref(&f)),
        AjOutcome::Different
    );
    assert_eq!(
        knots::compare_up_to_monomial(&f, std::slice::from_ref(&f)),
        AjOutcome::Equal
    );
}

fn segment(h: i64) -> LatticePolygon {
    LatticePolygon::hull([(0, 0), (0, h)])
}

#[test]
fn figure_eight_vertical_shift() {
    let e = load("4_1").unwrap();
    let polygon = polygon_at_q0(&e.nonhomogeneous_op).unwrap();
    let factor = newton_polygon_ml(e.geometric_factor().unwrap());
    assert_eq!(factor, LatticePolygon::hull([(1, 0), (2, 2), (1, 4), (0, 2)]));
    assert_eq!(
        polygon,
        LatticePolygon::hull([(0, 2), (1, 0), (2, 2), (2, 5), (1, 7), (0, 5)])
    );
    // independent edge-vector merge: sort the edge vectors of both summands by angle
    let mut vs = factor.edge_vectors();
    vs.extend([(0, 3), (0, -3)]);
    vs.sort_by(|a, b| angle_key(*a).partial_cmp(&angle_key(*b)).unwrap());
    let start = (1, 0);
    let mut merged = vec![start];
    let mut cur = start;
    for v in &vs[..vs.len() - 1] {
        cur = (cur.0 + v.0, cur.1 + v.1);
        merged.push(cur);
    }
    assert_eq!(LatticePolygon::hull(merged), polygon);

    let report = knots::verify_vertical_shift(&e).unwrap();
    assert_eq!(report.found, Some((3, (0, 0))));
    assert_ne!(minkowski_sum(&factor, &segment(0)), polygon);
    let moved = factor.translate((0, 1));
    assert_eq!(vertical_shift(&polygon, &moved, 7), Some((3, (0, -1))));
    assert_eq!(vertical_shift(&polygon, &factor, 2), None);
}

fn angle_key(v: (i64, i64)) -> f64 {
    // counterclockwise walk from the lowest vertex: angles in [0, 2pi)
    (v.1 as f64)
        .atan2(v.0 as f64)
        .rem_euclid(2.0 * std::f64::consts::PI)
}

fn vertices_of(op: &WeylElement) -> Vec<RPoint> {
    let (c, s) = curve_of(op, Convention::Max).unwrap();
    assert!(balancing_check(&c).balanced);
    assert!(duality_report(&c, &s).ok());
    c.vertices
}

#[test]
fn figure_eight_vertex_lists() {
    let e = load("4_1").unwrap();
    let mut nh = vec![
        pt("1", "-1/2"),
        pt("-1/2", "-1/2"),
        pt("-2", "0"),
        pt("0", "-1"),
        pt("2", "-2"),
        pt("1/2", "-3/2"),
        pt("-1", "-3/2"),
    ];
    nh.sort();
    assert_eq!(vertices_of(&e.nonhomogeneous_op), nh);
    let h = vertices_of(e.homogeneous_op.as_ref().unwrap());
    assert_eq!(h.len(), 17);
    for p in [
        pt("3", "-1/2"),
        pt("-1", "-1/3"),
        pt("-3/4", "-1/2"),
        pt("1", "-8/3"),
        pt("-3", "-5/2"),
    ] {
        assert!(h.contains(&p), "{p:?}");
    }
    assert_eq!(h, e.expected_homogeneous_vertices);
}

#[test]
fn twist_knot_vertex_lists() {
    let e = load("5_2").unwrap();
    let v = vertices_of(&e.nonhomogeneous_op);
    assert_eq!(v.len(), 14);
    assert!(v.contains(&pt("17/2", "-1/2")) && v.contains(&pt("-17/2", "-5/2")));
    assert_eq!(v, e.expected_vertices);

    let e = load("6_1").unwrap();
    let v = vertices_of(&e.nonhomogeneous_op);
    assert_eq!(v.len(), 26);
    for p in [pt("1/5", "-8/5"), pt("-1/5", "-12/5"), pt("1", "-10/3")] {
        assert!(v.contains(&p), "{p:?}");
    }
    assert_eq!(v, e.expected_vertices);
}

#[test]
fn min_convention_reflects_vertices() {
    let e = load("4_1").unwrap();
    let (max, _) = curve_of(&e.nonhomogeneous_op, Convention::Max).unwrap();
    let (min, _) = curve_of(&e.nonhomogeneous_op, Convention::Min).unwrap();
    let mut reflected: Vec<RPoint> = max.vertices.iter().map(|(x, y)| (-x, -y)).collect();
    reflected.sort();
    assert_eq!(min.vertices, reflected);
}

#[test]
fn product_form_and_expanded_homogeneous_operator_agree_up_to_sign() {
    let e = load("4_1").unwrap();
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/a41_homogeneous_expanded.txt"
    ))
    .unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).collect();
    let expanded = WeylElement::parse_normal_form(&body, &["x", "y", "t"]).unwrap();
    let shipped = e.homogeneous_op.unwrap();
    assert!(shipped == expanded || shipped == expanded.neg());
    assert_eq!(shipped.term_count(), 124);
    assert!(is_good(&shipped).unwrap());
}

#[test]
fn first_homogeneous_summand_expands_with_positive_top_coefficient() {
    let p = parse_poly(
        "x^3*(t^2-y)*(t^3-y)*y^2*(t+y)*(t-y^2)*(t^3-y^2)/t^14",
        &["x", "y", "t"],
    )
    .unwrap();
    let m = qtrop::poly::Monomial::from_exponents(vec![3, 9, -14]);
    // (-y)(-y)(y)(-y^2)(-y^2) y^2 = +y^9
    assert_eq!(p.coeff(&m), qtrop::poly::rational::int(1));
}
