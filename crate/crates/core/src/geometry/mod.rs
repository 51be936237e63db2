//! Newton polytopes, projections, lower-hull subdivisions, Minkowski sums and
//! edge slopes, all in exact integer arithmetic.

pub mod hull3;
mod polygon;
mod subdivision;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Rational;
use crate::weyl::WeylElement;

pub use polygon::{
    cross2, lattice_length, minkowski_sum, Dimension, LatticePolygon, Point2, Slope, SlopeSet,
};
pub use subdivision::{lower_subdivision, Cell, LiftedConfiguration, RegularSubdivision, SubdivisionEdge};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("P(M, L, 1) vanishes identically")]
    ZeroAtQ1,
    #[error("a point has no edge slopes")]
    ZeroDimensional,
    #[error("N_P1 is not contained in N_P0")]
    ContainmentViolated,
    #[error("coordinates too large for exact hull arithmetic")]
    CoordinateOverflow,
}

/// Exponent triple: `l` of L, `m` of M, `k` of q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint3 {
    pub l: i64,
    pub m: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    /// Distinct exponent triples of the support, sorted.
    pub points: Vec<LatticePoint3>,
    /// Vertices of the convex hull, sorted.
    pub vertices: Vec<LatticePoint3>,
    /// Affine dimension of the support.
    pub dim: usize,
}

pub fn newton_polytope_3d(p: &WeylElement) -> Result<NewtonPolytope, GeometryError> {
    if p.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let mut points: Vec<LatticePoint3> = p
        .support()
        .into_iter()
        .map(|((l, m, k), _)| LatticePoint3 { l, m, k })
        .collect();
    points.sort_unstable();
    points.dedup();
    let raw: Vec<hull3::P3> = points.iter().map(|p| [p.l, p.m, p.k]).collect();
    if raw.iter().flatten().any(|c| c.abs() >= hull3::COORD_LIMIT) {
        return Err(GeometryError::CoordinateOverflow);
    }
    let h = hull3::hull3(&raw);
    let to3 = |q: hull3::P3| LatticePoint3 {
        l: q[0],
        m: q[1],
        k: q[2],
    };
    let mut vertices: Vec<LatticePoint3> = match h.dim {
        3 => h.vertex_indices().into_iter().map(|i| to3(h.points[i])).collect(),
        0 => vec![to3(h.points[0])],
        1 => {
            // extremes along the line: lexicographic min and max
            vec![to3(h.points[0]), to3(*h.points.last().expect("nonempty"))]
        }
        _ => planar_vertices(&h.points).into_iter().map(to3).collect(),
    };
    vertices.sort_unstable();
    Ok(NewtonPolytope {
        points,
        vertices,
        dim: h.dim,
    })
}

/// Vertices of a planar 3D point set, via a 2D hull in a coordinate
/// projection that is injective on the plane.
fn planar_vertices(points: &[hull3::P3]) -> Vec<hull3::P3> {
    let (_, b) = hull3::affine_basis(points);
    let u = [
        (points[b[1]][0] - points[b[0]][0]) as i128,
        (points[b[1]][1] - points[b[0]][1]) as i128,
        (points[b[1]][2] - points[b[0]][2]) as i128,
    ];
    let v = [
        (points[b[2]][0] - points[b[0]][0]) as i128,
        (points[b[2]][1] - points[b[0]][1]) as i128,
        (points[b[2]][2] - points[b[0]][2]) as i128,
    ];
    let n = hull3::cross(u, v);
    // drop the coordinate with a nonzero normal component
    let drop = (0..3).find(|&i| n[i] != 0).expect("plane");
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj = |p: &hull3::P3| (p[keep[0]], p[keep[1]]);
    let poly = LatticePolygon::hull(points.iter().map(proj));
    points
        .iter()
        .filter(|p| poly.vertices().contains(&proj(p)))
        .copied()
        .collect()
}

/// `N_{P,0}`: hull of the `(L, M)` exponents.
pub fn project_to_lm(points: &[LatticePoint3]) -> LatticePolygon {
    LatticePolygon::hull(points.iter().map(|p| (p.l, p.m)))
}

pub fn polygon_at_q0(p: &WeylElement) -> Result<LatticePolygon, GeometryError> {
    if p.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    Ok(LatticePolygon::hull(
        p.support().into_iter().map(|((l, m, _), _)| (l, m)),
    ))
}

/// `N_{P,1}`: hull of the exponents of `P(M, L, 1)`.
pub fn polygon_at_q1(p: &WeylElement) -> Result<LatticePolygon, GeometryError> {
    if p.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let q1 = p.at_q1();
    if q1.is_zero() {
        return Err(GeometryError::ZeroAtQ1);
    }
    // at_q1 is over [M, L]
    Ok(LatticePolygon::hull(
        q1.terms().map(|(m, _)| (m.exponent(1), m.exponent(0))),
    ))
}

/// `N_{P,1} = N_{P,0}`. Also checks `N_{P,1} ⊆ N_{P,0}`.
pub fn is_good(p: &WeylElement) -> Result<bool, GeometryError> {
    let n0 = polygon_at_q0(p)?;
    let n1 = polygon_at_q1(p)?;
    if !n0.contains_polygon(&n1) {
        return Err(GeometryError::ContainmentViolated);
    }
    Ok(n0 == n1)
}

/// Heights `min(-k)` over the terms sharing each `(i, j)`.
pub fn lift(p: &WeylElement) -> LiftedConfiguration {
    let mut cfg = LiftedConfiguration::new();
    for ((l, m, k), _) in p.support() {
        cfg.offer((l, m), Rational::from_integer((-k).into()));
    }
    cfg
}

pub fn edge_slopes(p: &LatticePolygon) -> Result<SlopeSet, GeometryError> {
    if matches!(p.dimension(), Dimension::Empty | Dimension::Point) {
        return Err(GeometryError::ZeroDimensional);
    }
    let mut s = SlopeSet::default();
    for v in p.edge_vectors() {
        s.insert(Slope::of(v));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> WeylElement {
        WeylElement::parse_normal_form(s, &["M", "L", "q"]).unwrap()
    }

    #[test]
    fn small_polytopes() {
        let n = newton_polytope_3d(&nf("q*M*L")).unwrap();
        assert_eq!(n.vertices, vec![LatticePoint3 { l: 1, m: 1, k: 1 }]);
        let n = newton_polytope_3d(&nf("L - q*M^2")).unwrap();
        assert_eq!(n.vertices.len(), 2);
        assert_eq!(project_to_lm(&n.points).vertices(), &[(0, 2), (1, 0)]);
        assert!(newton_polytope_3d(&WeylElement::zero()).is_err());
    }

    #[test]
    fn goodness() {
        let p = nf("L + (q - 1)*M");
        assert_eq!(polygon_at_q1(&p).unwrap().vertices(), &[(1, 0)]);
        assert!(!is_good(&p).unwrap());
        assert!(is_good(&nf("q*M*L")).unwrap());
        assert_eq!(polygon_at_q1(&nf("(q-1)*M")), Err(GeometryError::ZeroAtQ1));
    }

    #[test]
    fn lift_takes_minimum() {
        let c = lift(&nf("q^3*M*L + q*M*L"));
        assert_eq!(c.height((1, 1)), Some(&Rational::from_integer((-3).into())));
        assert_eq!(c.provenance[&(1, 1)].len(), 2);
        let c = lift(&nf("L - q*M^2"));
        assert_eq!(c.height((1, 0)), Some(&Rational::from_integer(0.into())));
        assert_eq!(c.height((0, 2)), Some(&Rational::from_integer((-1).into())));
    }

    #[test]
    fn slopes() {
        let seg = LatticePolygon::hull([(1, 0), (0, 2)]);
        assert_eq!(edge_slopes(&seg).unwrap().to_string(), "{-2}");
        let sq = LatticePolygon::hull([(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(edge_slopes(&sq).unwrap().to_string(), "{0, 1/0}");
        assert!(edge_slopes(&LatticePolygon::hull([(0, 0)])).is_err());
    }

    #[test]
    fn tropical_line_subdivision() {
        let mut c = LiftedConfiguration::new();
        for p in [(0, 0), (1, 0), (0, 1)] {
            c.offer(p, Rational::from_integer(0.into()));
        }
        let s = lower_subdivision(&c).unwrap();
        assert_eq!(s.cells.len(), 1);
        assert_eq!(s.boundary_edges.len(), 3);
        assert!(s.interior_edges.is_empty());
        let mut c = LiftedConfiguration::new();
        c.offer((0, 0), Rational::from_integer(0.into()));
        c.offer((1, 0), Rational::from_integer(1.into()));
        let s = lower_subdivision(&c).unwrap();
        assert!(s.cells.is_empty());
        assert_eq!(s.segments.len(), 1);
    }
}
