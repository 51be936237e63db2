use std::collections::BTreeSet;

use proptest::prelude::*;
use qtrop::geometry::hull3::{hull3, P3};
use qtrop::geometry::{
    cross2, edge_slopes, lower_subdivision, minkowski_sum, LatticePolygon, LiftedConfiguration, Point2, Slope,
};
use qtrop::poly::rational::int;

/// Planes `n . x = d` (primitive, outward) supporting at least three
/// non-collinear points of a full-dimensional set, by exhaustive search.
fn brute_facets(pts: &[P3]) -> BTreeSet<([i128; 3], i128)> {
    let mut out = BTreeSet::new();
    let v = |p: P3| [p[0] as i128, p[1] as i128, p[2] as i128];
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            for k in 0..pts.len() {
                let (a, b, c) = (v(pts[i]), v(pts[j]), v(pts[k]));
                let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let mut n = [
                    u[1] * w[2] - u[2] * w[1],
                    u[2] * w[0] - u[0] * w[2],
                    u[0] * w[1] - u[1] * w[0],
                ];
                if n == [0, 0, 0] {
                    continue;
                }
                let g = gcd(gcd(n[0], n[1]), n[2]);
                n = [n[0] / g, n[1] / g, n[2] / g];
                let d = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
                let side: Vec<i128> = pts
                    .iter()
                    .map(|p| n[0] * p[0] as i128 + n[1] * p[1] as i128 + n[2] * p[2] as i128 - d)
                    .collect();
                if side.iter().all(|s| *s <= 0) {
                    out.insert((n, d));
                }
            }
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn hull_facets(pts: &[P3]) -> BTreeSet<([i128; 3], i128)> {
    let h = hull3(pts);
    h.faces
        .iter()
        .map(|f| {
            let (a, b, c) = (h.points[f[0]], h.points[f[1]], h.points[f[2]]);
            let v = |p: P3| [p[0] as i128, p[1] as i128, p[2] as i128];
            let (a, b, c) = (v(a), v(b), v(c));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let mut n = [
                u[1] * w[2] - u[2] * w[1],
                u[2] * w[0] - u[0] * w[2],
                u[0] * w[1] - u[1] * w[0],
            ];
            let g = gcd(gcd(n[0], n[1]), n[2]);
            n = [n[0] / g, n[1] / g, n[2] / g];
            (n, n[0] * a[0] + n[1] * a[1] + n[2] * a[2])
        })
        .collect()
}

/// Extreme points of a planar set: not in the closed hull of the others.
fn brute_vertices(pts: &[Point2]) -> BTreeSet<Point2> {
    let distinct: Vec<Point2> = pts.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = BTreeSet::new();
    'p: for &p in &distinct {
        let others: Vec<Point2> = distinct.iter().copied().filter(|q| *q != p).collect();
        for &a in &others {
            for &b in &others {
                // on segment ab
                if cross2(a, b, p) == 0 && a != b {
                    let t = (p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1);
                    let len = (b.0 - a.0).pow(2) + (b.1 - a.1).pow(2);
                    if t >= 0 && t <= len {
                        continue 'p;
                    }
                }
                for &c in &others {
                    let (s1, s2, s3) = (cross2(a, b, p), cross2(b, c, p), cross2(c, a, p));
                    let tri = cross2(a, b, c);
                    if tri != 0 && ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) {
                        continue 'p;
                    }
                }
            }
        }
        out.insert(p);
    }
    out
}

fn points2(n: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hull3_facets_match_exhaustive_search(
        pts in prop::collection::vec(prop::array::uniform3(-3i64..=3), 4..=12)
    ) {
        let h = hull3(&pts);
        if h.dim < 3 {
            return Ok(());
        }
        prop_assert_eq!(hull_facets(&pts), brute_facets(&pts));
    }

    #[test]
    fn hull3_degenerate_inputs(
        base in prop::collection::vec((-4i64..=4, -4i64..=4), 3..=10),
        z in -3i64..=3,
    ) {
        // coplanar sets never produce faces
        let pts: Vec<P3> = base.iter().map(|&(x, y)| [x, y, z]).collect();
        let h = hull3(&pts);
        prop_assert!(h.dim <= 2);
        prop_assert!(h.faces.is_empty());
    }

    #[test]
    fn polygon_hull_matches_extreme_points(pts in points2(12)) {
        let hull = LatticePolygon::hull(pts.iter().copied());
        let got: BTreeSet<Point2> = hull.vertices().iter().copied().collect();
        prop_assert_eq!(got, brute_vertices(&pts));
        for p in &pts {
            prop_assert!(hull.contains(*p));
        }
    }

    #[test]
    fn minkowski_sum_is_hull_of_pairwise_sums(a in points2(7), b in points2(7)) {
        let (pa, pb) = (LatticePolygon::hull(a.clone()), LatticePolygon::hull(b.clone()));
        let sums = a.iter().flat_map(|p| b.iter().map(move |q| (p.0 + q.0, p.1 + q.1)));
        prop_assert_eq!(minkowski_sum(&pa, &pb), LatticePolygon::hull(sums));
        prop_assert_eq!(minkowski_sum(&pa, &pb), minkowski_sum(&pb, &pa));
    }

    #[test]
    fn edge_slopes_come_in_direction_classes(pts in points2(10)) {
        let hull = LatticePolygon::hull(pts);
        let Ok(s) = edge_slopes(&hull) else { return Ok(()) };
        let expect: BTreeSet<String> = hull
            .edge_vectors()
            .into_iter()
            .map(|v| Slope::of(v).to_string())
            .collect();
        let got: BTreeSet<String> = s.iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(got, expect);
        prop_assert_eq!(s.negated().negated(), s);
    }

    #[test]
    fn lower_subdivision_is_regular_and_tiles_the_support(
        pts in prop::collection::vec((-3i64..=3, -3i64..=3, -6i64..=6), 3..=12)
    ) {
        let mut cfg = LiftedConfiguration::new();
        for &(x, y, h) in &pts {
            cfg.offer((x, y), int(h));
        }
        let Ok(s) = lower_subdivision(&cfg) else { return Ok(()) };
        if s.cells.is_empty() {
            return Ok(());
        }
        prop_assert_eq!(s.total_twice_area(), s.support.twice_area());
        for c in &s.cells {
            // the affine function through three marked points lies weakly
            // below every lifted point and touches exactly the marked ones
            let m = &c.marked;
            let tri = m.iter().flat_map(|a| m.iter().flat_map(move |b| m.iter().map(move |c| (*a, *b, *c))))
                .find(|(a, b, c)| cross2(*a, *b, *c) != 0)
                .unwrap();
            let (a, b, cc) = tri;
            let h = |p: Point2| cfg.height(p).unwrap().clone();
            let det = int(cross2(a, b, cc) as i64);
            let plane = |p: Point2| {
                // barycentric interpolation of the heights of a, b, cc
                let la = int(cross2(b, cc, p) as i64) / &det;
                let lb = int(cross2(cc, a, p) as i64) / &det;
                let lc = int(cross2(a, b, p) as i64) / &det;
                la * h(a) + lb * h(b) + lc * h(cc)
            };
            for &(x, y, _) in &pts {
                let p = (x, y);
                let hp = h(p);
                prop_assert!(plane(p) <= hp);
                if c.polygon.contains(p) && plane(p) == hp {
                    prop_assert!(m.contains(&p));
                }
            }
        }
    }
}
