use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::poly::{fmt_rational, Rational};

/// Lattice point `(l, m)`: horizontal L-exponent, vertical M-exponent.
pub type Point2 = (i64, i64);

pub fn cross2(o: Point2, a: Point2, b: Point2) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Number of lattice steps on the segment `a-b`.
pub fn lattice_length(a: Point2, b: Point2) -> i64 {
    (b.0 - a.0).gcd(&(b.1 - a.1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimension {
    Empty,
    Point,
    Segment,
    Polygon,
}

/// Convex lattice polygon (possibly a segment or a point).
///
/// Vertices are strictly convex, counterclockwise, starting at the
/// lexicographically smallest `(l, m)`; a segment is stored as its two
/// endpoints in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<Point2>,
}

impl LatticePolygon {
    pub fn empty() -> Self {
        LatticePolygon { vertices: vec![] }
    }

    /// Convex hull (Andrew's monotone chain, exact).
    pub fn hull<I: IntoIterator<Item = Point2>>(points: I) -> Self {
        let mut pts: Vec<Point2> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() <= 2 {
            return LatticePolygon { vertices: pts };
        }
        let mut lower: Vec<Point2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross2(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross2(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] > lower[1] {
            lower.swap(0, 1);
        }
        LatticePolygon { vertices: lower }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn dimension(&self) -> Dimension {
        match self.vertices.len() {
            0 => Dimension::Empty,
            1 => Dimension::Point,
            2 => Dimension::Segment,
            _ => Dimension::Polygon,
        }
    }

    /// Boundary edges in order; a segment has one edge.
    pub fn edges(&self) -> Vec<(Point2, Point2)> {
        let n = self.vertices.len();
        match n {
            0 | 1 => vec![],
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }

    /// Boundary traversal vectors; a segment `a-b` contributes `b-a` and `a-b`.
    pub fn edge_vectors(&self) -> Vec<Point2> {
        let n = self.vertices.len();
        match n {
            0 | 1 => vec![],
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                vec![(b.0 - a.0, b.1 - a.1), (a.0 - b.0, a.1 - b.1)]
            }
            _ => (0..n)
                .map(|i| {
                    let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                    (b.0 - a.0, b.1 - a.1)
                })
                .collect(),
        }
    }

    /// Twice the enclosed area (zero when degenerate).
    pub fn twice_area(&self) -> i128 {
        let n = self.vertices.len();
        if n < 3 {
            return 0;
        }
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
            })
            .sum()
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross2(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            _ => self.edges().iter().all(|&(a, b)| cross2(a, b, p) >= 0),
        }
    }

    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&p| self.contains(p))
    }

    pub fn translate(&self, d: Point2) -> LatticePolygon {
        LatticePolygon {
            vertices: self.vertices.iter().map(|p| (p.0 + d.0, p.1 + d.1)).collect(),
        }
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(l, m)| format!("({l},{m})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Angle class for sorting directions counterclockwise, starting just after
/// straight down.
fn half(v: Point2) -> u8 {
    if v.0 > 0 || (v.0 == 0 && v.1 > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: Point2, b: Point2) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

/// Minkowski sum by merging the two boundary edge sequences by angle.
pub fn minkowski_sum(a: &LatticePolygon, b: &LatticePolygon) -> LatticePolygon {
    let (Some(&sa), Some(&sb)) = (a.vertices.first(), b.vertices.first()) else {
        return LatticePolygon::empty();
    };
    let mut vs: Vec<Point2> = a.edge_vectors();
    vs.extend(b.edge_vectors());
    vs.sort_by(|x, y| angle_cmp(*x, *y));
    let mut merged: Vec<Point2> = Vec::new();
    for v in vs {
        match merged.last_mut() {
            Some(last) if angle_cmp(*last, v) == Ordering::Equal => {
                last.0 += v.0;
                last.1 += v.1;
            }
            _ => merged.push(v),
        }
    }
    let mut cur = (sa.0 + sb.0, sa.1 + sb.1);
    let mut pts = vec![cur];
    for v in merged {
        cur = (cur.0 + v.0, cur.1 + v.1);
        pts.push(cur);
    }
    debug_assert_eq!(pts.first(), pts.last());
    LatticePolygon::hull(pts)
}

/// Edge slope `dm / dl`, with vertical edges kept apart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational),
    Vertical,
}

impl Slope {
    pub fn of(v: Point2) -> Slope {
        if v.0 == 0 {
            Slope::Vertical
        } else {
            Slope::Finite(Rational::new(BigInt::from(v.1), BigInt::from(v.0)))
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{}", fmt_rational(r)),
            Slope::Vertical => write!(f, "1/0"),
        }
    }
}

/// Finite set of slopes plus a marker for the vertical slope `1/0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SlopeSet {
    pub finite: BTreeSet<Rational>,
    pub vertical: bool,
}

impl SlopeSet {
    pub fn insert(&mut self, s: Slope) {
        match s {
            Slope::Finite(r) => {
                self.finite.insert(r);
            }
            Slope::Vertical => self.vertical = true,
        }
    }

    pub fn contains(&self, s: &Slope) -> bool {
        match s {
            Slope::Finite(r) => self.finite.contains(r),
            Slope::Vertical => self.vertical,
        }
    }

    /// `{-s}`; `1/0` is its own negative.
    pub fn negated(&self) -> SlopeSet {
        SlopeSet {
            finite: self.finite.iter().map(|r| -r.clone()).collect(),
            vertical: self.vertical,
        }
    }

    /// Containment of the finite parts; the vertical marker is compared
    /// separately by callers that care.
    pub fn finite_subset_of(&self, other: &SlopeSet) -> bool {
        self.finite.is_subset(&other.finite)
    }

    pub fn is_subset_of(&self, other: &SlopeSet) -> bool {
        self.finite_subset_of(other) && (!self.vertical || other.vertical)
    }

    pub fn iter(&self) -> impl Iterator<Item = Slope> + '_ {
        self.finite
            .iter()
            .cloned()
            .map(Slope::Finite)
            .chain(self.vertical.then_some(Slope::Vertical))
    }

    pub fn len(&self) -> usize {
        self.finite.len() + usize::from(self.vertical)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
