//! Regular subdivisions induced by lower hulls of lifted point sets.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::hull3::{affine_basis, face_normal, hull3, COORD_LIMIT, P3};
use super::polygon::{cross2, LatticePolygon, Point2};
use super::GeometryError;
use crate::poly::{lcm_denominators, Rational};

/// One height per lattice point, plus every height that was offered for it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftedConfiguration {
    pub points: BTreeMap<Point2, Rational>,
    /// All candidate heights per point, ascending; only the first counts.
    pub provenance: BTreeMap<Point2, Vec<Rational>>,
}

impl LiftedConfiguration {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offers height `h` at `p`; the smallest height wins.
    pub fn offer(&mut self, p: Point2, h: Rational) {
        let list = self.provenance.entry(p).or_default();
        let at = list.partition_point(|x| x < &h);
        list.insert(at, h.clone());
        self.points
            .entry(p)
            .and_modify(|cur| {
                if h < *cur {
                    *cur = h.clone();
                }
            })
            .or_insert(h);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn height(&self, p: Point2) -> Option<&Rational> {
        self.points.get(&p)
    }

    /// Integer heights after multiplying by the least common denominator.
    fn integer_lift(&self) -> Result<Vec<P3>, GeometryError> {
        let d = lcm_denominators(self.points.values());
        let scale = Rational::from_integer(d);
        self.points
            .iter()
            .map(|(&(i, j), h)| {
                let v = (h * &scale).to_integer();
                let z = v
                    .to_i64()
                    .filter(|z| z.abs() < COORD_LIMIT)
                    .ok_or(GeometryError::CoordinateOverflow)?;
                if i.abs() >= COORD_LIMIT || j.abs() >= COORD_LIMIT {
                    return Err(GeometryError::CoordinateOverflow);
                }
                Ok([i, j, z])
            })
            .collect()
    }
}

/// A two-dimensional cell: projection of one lower facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polygon: LatticePolygon,
    /// Lattice points whose lift lies on the facet (sorted).
    pub marked: Vec<Point2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub a: Point2,
    pub b: Point2,
    /// Adjacent cells (two for interior edges, one on the boundary, none for
    /// the segments of a one-dimensional configuration).
    pub cells: Vec<usize>,
}

impl SubdivisionEdge {
    pub fn lattice_length(&self) -> i64 {
        super::polygon::lattice_length(self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub cells: Vec<Cell>,
    pub interior_edges: Vec<SubdivisionEdge>,
    pub boundary_edges: Vec<SubdivisionEdge>,
    /// Lower-chain pieces when the configuration spans only a line.
    pub segments: Vec<SubdivisionEdge>,
    /// Lattice points whose lift lies on the lower hull.
    pub marked_points: Vec<Point2>,
    /// Convex hull of all configuration points.
    pub support: LatticePolygon,
}

impl RegularSubdivision {
    pub fn total_twice_area(&self) -> i128 {
        self.cells.iter().map(|c| c.polygon.twice_area()).sum()
    }
}

fn edge_key(a: Point2, b: Point2) -> (Point2, Point2) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn on_plane(n: [i128; 3], d: i128, p: P3) -> bool {
    n[0] * p[0] as i128 + n[1] * p[1] as i128 + n[2] * p[2] as i128 == d
}

/// Projects the lower faces of the lifted points to a subdivision of their
/// convex hull.
pub fn lower_subdivision(cfg: &LiftedConfiguration) -> Result<RegularSubdivision, GeometryError> {
    let lifted = cfg.integer_lift()?;
    let flat: Vec<P3> = lifted.iter().map(|p| [p[0], p[1], 0]).collect();
    let support = LatticePolygon::hull(lifted.iter().map(|p| (p[0], p[1])));
    let (dim2, _) = affine_basis(&flat);
    let mut out = RegularSubdivision {
        cells: vec![],
        interior_edges: vec![],
        boundary_edges: vec![],
        segments: vec![],
        marked_points: vec![],
        support,
    };
    match dim2 {
        0 => {
            out.marked_points = lifted.iter().map(|p| (p[0], p[1])).collect();
        }
        1 => line_chain(&lifted, &mut out),
        _ => {
            let h = hull3(&lifted);
            if h.dim == 2 {
                // every lift is coplanar: one cell
                let marked: Vec<Point2> = lifted.iter().map(|p| (p[0], p[1])).collect();
                out.cells.push(Cell {
                    polygon: LatticePolygon::hull(marked.iter().copied()),
                    marked,
                });
            } else {
                let mut planes: BTreeSet<([i128; 3], i128)> = BTreeSet::new();
                for f in &h.faces {
                    let (a, b, c) = (h.points[f[0]], h.points[f[1]], h.points[f[2]]);
                    let n = face_normal(a, b, c);
                    if n[2] < 0 {
                        let d = n[0] * a[0] as i128 + n[1] * a[1] as i128 + n[2] * a[2] as i128;
                        planes.insert((n, d));
                    }
                }
                for (n, d) in planes {
                    let marked: Vec<Point2> = lifted
                        .iter()
                        .filter(|p| on_plane(n, d, **p))
                        .map(|p| (p[0], p[1]))
                        .collect();
                    out.cells.push(Cell {
                        polygon: LatticePolygon::hull(marked.iter().copied()),
                        marked,
                    });
                }
            }
            let mut edges: BTreeMap<(Point2, Point2), Vec<usize>> = BTreeMap::new();
            for (ci, cell) in out.cells.iter().enumerate() {
                for (a, b) in cell.polygon.edges() {
                    edges.entry(edge_key(a, b)).or_default().push(ci);
                }
            }
            for ((a, b), cells) in edges {
                let e = SubdivisionEdge { a, b, cells };
                if e.cells.len() >= 2 {
                    out.interior_edges.push(e);
                } else {
                    out.boundary_edges.push(e);
                }
            }
            let mut marked: BTreeSet<Point2> = BTreeSet::new();
            for c in &out.cells {
                marked.extend(c.marked.iter().copied());
            }
            out.marked_points = marked.into_iter().collect();
        }
    }
    Ok(out)
}

/// Lower convex chain of a configuration whose points are collinear.
fn line_chain(lifted: &[P3], out: &mut RegularSubdivision) {
    let mut pts: Vec<P3> = lifted.to_vec();
    pts.sort_unstable();
    let p0 = (pts[0][0], pts[0][1]);
    let (dx, dy) = (pts[1][0] - p0.0, pts[1][1] - p0.1);
    let g = dx.gcd(&dy);
    let u = (dx / g, dy / g);
    // parameter along the primitive direction
    let param = |p: &P3| -> i64 {
        let v = (p[0] - p0.0, p[1] - p0.1);
        if u.0 != 0 {
            v.0 / u.0
        } else {
            v.1 / u.1
        }
    };
    let mut chain: Vec<(i64, i64, Point2)> = pts.iter().map(|p| (param(p), p[2], (p[0], p[1]))).collect();
    chain.sort_unstable();
    let mut lower: Vec<(i64, i64, Point2)> = Vec::new();
    for c in chain.iter().copied() {
        while lower.len() >= 2 {
            let a = lower[lower.len() - 2];
            let b = lower[lower.len() - 1];
            if cross2((a.0, a.1), (b.0, b.1), (c.0, c.1)) <= 0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(c);
    }
    for w in lower.windows(2) {
        out.segments.push(SubdivisionEdge {
            a: w[0].2,
            b: w[1].2,
            cells: vec![],
        });
    }
    // points lying on the chain
    let mut marked = Vec::new();
    for c in &chain {
        let on = lower.windows(2).any(|w| {
            c.0 >= w[0].0 && c.0 <= w[1].0 && cross2((w[0].0, w[0].1), (w[1].0, w[1].1), (c.0, c.1)) == 0
        });
        if on {
            marked.push(c.2);
        }
    }
    marked.sort_unstable();
    out.marked_points = marked;
}
