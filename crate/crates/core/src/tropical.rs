//! Min-plus polynomials and their tropical curves.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{
    lattice_length, lift, lower_subdivision, GeometryError, LatticePolygon, LiftedConfiguration, Point2,
    RegularSubdivision,
};
use crate::par::Execution;
use crate::poly::{fmt_rational, lcm_denominators, Rational};
use crate::weyl::WeylElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("empty tropical polynomial")]
    Empty,
    #[error("forms of a cell do not meet in a single point")]
    InconsistentDual,
    #[error("empty window")]
    EmptyWindow,
}

/// Linear form `a*x + b*y + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalTerm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl TropicalTerm {
    pub fn at(&self, x: &Rational, y: &Rational) -> Rational {
        &self.a * x + &self.b * y + &self.c
    }
}

/// `min` of finitely many linear forms, one per `(a, b)`, sorted by `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    terms: Vec<TropicalTerm>,
}

impl TropicalPolynomial {
    /// Duplicate `(a, b)` pairs keep the smaller constant.
    pub fn new(terms: impl IntoIterator<Item = TropicalTerm>) -> Result<Self, TropicalError> {
        let mut best: BTreeMap<(Rational, Rational), Rational> = BTreeMap::new();
        for t in terms {
            best.entry((t.a, t.b))
                .and_modify(|c| {
                    if t.c < *c {
                        *c = t.c.clone();
                    }
                })
                .or_insert(t.c);
        }
        if best.is_empty() {
            return Err(TropicalError::Empty);
        }
        Ok(TropicalPolynomial {
            terms: best
                .into_iter()
                .map(|((a, b), c)| TropicalTerm { a, b, c })
                .collect(),
        })
    }

    pub fn from_integer_terms(terms: &[(i64, i64, i64)]) -> Result<Self, TropicalError> {
        Self::new(terms.iter().map(|&(a, b, c)| TropicalTerm {
            a: Rational::from_integer(a.into()),
            b: Rational::from_integer(b.into()),
            c: Rational::from_integer(c.into()),
        }))
    }

    pub fn terms(&self) -> &[TropicalTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common denominator of the slopes `a`, `b`; exponents times this are
    /// lattice points.
    fn exponent_scale(&self) -> BigInt {
        lcm_denominators(self.terms.iter().flat_map(|t| [&t.a, &t.b]))
    }

    fn lattice_point(&self, t: &TropicalTerm, d: &BigInt) -> Option<Point2> {
        let s = Rational::from_integer(d.clone());
        Some((
            (&t.a * &s).to_integer().to_i64()?,
            (&t.b * &s).to_integer().to_i64()?,
        ))
    }

    /// Configuration `(D a, D b) -> c` and the index of each lattice point.
    fn configuration(&self) -> Result<(LiftedConfiguration, BTreeMap<Point2, usize>, BigInt), TropicalError> {
        let d = self.exponent_scale();
        let mut cfg = LiftedConfiguration::new();
        let mut index = BTreeMap::new();
        for (i, t) in self.terms.iter().enumerate() {
            let p = self
                .lattice_point(t, &d)
                .ok_or(GeometryError::CoordinateOverflow)?;
            cfg.offer(p, t.c.clone());
            index.insert(p, i);
        }
        Ok((cfg, index, d))
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = Vec::new();
                for (coef, var) in [(&t.a, "x"), (&t.b, "y")] {
                    if coef.is_zero() {
                        continue;
                    }
                    if *coef == Rational::from_integer(1.into()) {
                        s.push(var.to_string());
                    } else {
                        s.push(format!("{}{}", fmt_rational(coef), var));
                    }
                }
                if !t.c.is_zero() || s.is_empty() {
                    s.push(fmt_rational(&t.c));
                }
                s.join(" + ").replace("+ -", "- ")
            })
            .collect();
        write!(f, "min{{{}}}", parts.join(", "))
    }
}

/// Sign convention for attaching a tropical polynomial to a Weyl element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `max { i x + j y + k }`, written as `min { -i x - j y - k }`. This is
    /// the convention of the reference vertex tables.
    #[default]
    Max,
    /// `min { i x + j y - k }`, the reflection of `Max` through the origin.
    Min,
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "max" => Ok(Convention::Max),
            "min" => Ok(Convention::Min),
            _ => Err(format!("unknown convention {s:?} (expected max or min)")),
        }
    }
}

/// `P_t(x, y) = min { i x + j y - k }` over the support of `P`.
pub fn tropicalize(p: &WeylElement) -> Result<TropicalPolynomial, TropicalError> {
    tropicalize_with(p, Convention::Min)
}

pub fn tropicalize_with(p: &WeylElement, conv: Convention) -> Result<TropicalPolynomial, TropicalError> {
    if p.is_zero() {
        return Err(TropicalError::Empty);
    }
    let sign: i64 = match conv {
        Convention::Min => 1,
        Convention::Max => -1,
    };
    let cfg = lift(p);
    TropicalPolynomial::new(cfg.points.iter().map(|(&(i, j), h)| TropicalTerm {
        a: Rational::from_integer((sign * i).into()),
        b: Rational::from_integer((sign * j).into()),
        c: h.clone(),
    }))
}

/// Minimum value and every term index attaining it.
pub fn eval(tp: &TropicalPolynomial, x: &Rational, y: &Rational) -> (Rational, Vec<usize>) {
    let mut best: Option<Rational> = None;
    let mut arg = Vec::new();
    for (i, t) in tp.terms.iter().enumerate() {
        let v = t.at(x, y);
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => arg.push(i),
            _ => {
                best = Some(v);
                arg = vec![i];
            }
        }
    }
    (best.unwrap_or_else(Rational::zero), arg)
}

pub type RPoint = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveEdge {
    pub from: usize,
    pub to: usize,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub base: usize,
    pub dir: (i64, i64),
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub anchor: RPoint,
    pub dir: (i64, i64),
    pub mult: i64,
}

/// Balanced rational graph: vertices, bounded edges, rays and whole lines.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    pub vertices: Vec<RPoint>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<Ray>,
    pub lines: Vec<Line>,
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.gcd(&v.1);
    if g == 0 {
        v
    } else {
        (v.0 / g, v.1 / g)
    }
}

/// Primitive integer vector along a rational direction.
pub fn primitive_rational(dx: &Rational, dy: &Rational) -> Option<(i64, i64)> {
    let d = lcm_denominators([dx, dy]);
    let s = Rational::from_integer(d);
    let x = (dx * &s).to_integer();
    let y = (dy * &s).to_integer();
    let g = x.gcd(&y);
    if g.is_zero() {
        return None;
    }
    Some(((x / &g).to_i64()?, (y / &g).to_i64()?))
}

/// Unique point where the three forms agree.
fn meet(t: [&TropicalTerm; 3]) -> Option<RPoint> {
    let (a1, b1, r1) = (&t[1].a - &t[0].a, &t[1].b - &t[0].b, &t[0].c - &t[1].c);
    let (a2, b2, r2) = (&t[2].a - &t[0].a, &t[2].b - &t[0].b, &t[0].c - &t[2].c);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return None;
    }
    let x = (&r1 * &b2 - &r2 * &b1) / &det;
    let y = (&a1 * &r2 - &a2 * &r1) / &det;
    Some((x, y))
}

fn dual_curve(
    tp: &TropicalPolynomial,
    sub: &RegularSubdivision,
    index: &BTreeMap<Point2, usize>,
) -> Result<TropicalCurve, TropicalError> {
    let term = |p: &Point2| &tp.terms[index[p]];
    // one vertex per two-dimensional cell
    let mut cell_vertex: Vec<RPoint> = Vec::with_capacity(sub.cells.len());
    for cell in &sub.cells {
        let v = cell.polygon.vertices();
        let tri = [term(&v[0]), term(&v[1]), term(&v[2])];
        let pt = meet(tri).ok_or(TropicalError::InconsistentDual)?;
        let value = tri[0].at(&pt.0, &pt.1);
        for p in &cell.marked {
            if term(p).at(&pt.0, &pt.1) != value {
                return Err(TropicalError::InconsistentDual);
            }
        }
        cell_vertex.push(pt);
    }
    let mut order: Vec<RPoint> = cell_vertex.clone();
    order.sort();
    order.dedup();
    let vid = |p: &RPoint| order.binary_search(p).expect("present");
    let mut curve = TropicalCurve {
        vertices: order.clone(),
        ..Default::default()
    };
    for e in &sub.interior_edges {
        let (u, w) = (vid(&cell_vertex[e.cells[0]]), vid(&cell_vertex[e.cells[1]]));
        if u == w {
            continue;
        }
        let (from, to) = (u.min(w), u.max(w));
        curve.edges.push(CurveEdge {
            from,
            to,
            mult: e.lattice_length(),
        });
    }
    for e in &sub.boundary_edges {
        let ci = e.cells[0];
        let poly = &sub.cells[ci].polygon;
        let n = primitive((-(e.b.1 - e.a.1), e.b.0 - e.a.0));
        // point the normal into the cell
        let inside = poly
            .vertices()
            .iter()
            .chain(sub.cells[ci].marked.iter())
            .map(|p| (p.0 - e.a.0) as i128 * n.0 as i128 + (p.1 - e.a.1) as i128 * n.1 as i128)
            .find(|d| *d != 0)
            .expect("two-dimensional cell");
        let dir = if inside > 0 { n } else { (-n.0, -n.1) };
        curve.rays.push(Ray {
            base: vid(&cell_vertex[ci]),
            dir,
            mult: e.lattice_length(),
        });
    }
    for s in &sub.segments {
        let (ta, tb) = (term(&s.a), term(&s.b));
        let (da, db, dc) = (&tb.a - &ta.a, &tb.b - &ta.b, &ta.c - &tb.c);
        let anchor = if !da.is_zero() {
            (&dc / &da, Rational::zero())
        } else {
            (Rational::zero(), &dc / &db)
        };
        let mut dir = primitive((-(s.b.1 - s.a.1), s.b.0 - s.a.0));
        if dir.0 < 0 || (dir.0 == 0 && dir.1 < 0) {
            dir = (-dir.0, -dir.1);
        }
        curve.lines.push(Line {
            anchor,
            dir,
            mult: lattice_length(s.a, s.b),
        });
    }
    curve.edges.sort_by_key(|e| (e.from, e.to));
    curve.rays.sort_by_key(|r| (r.base, r.dir));
    curve
        .lines
        .sort_by(|a, b| (&a.anchor, a.dir).cmp(&(&b.anchor, b.dir)));
    Ok(curve)
}

/// The tropical curve of `tp`, built as the dual graph of its regular
/// subdivision. Also returns that subdivision.
pub fn curve_with_subdivision(
    tp: &TropicalPolynomial,
) -> Result<(TropicalCurve, RegularSubdivision), TropicalError> {
    let (cfg, index, _) = tp.configuration()?;
    let sub = lower_subdivision(&cfg)?;
    let c = dual_curve(tp, &sub, &index)?;
    Ok((c, sub))
}

pub fn curve(tp: &TropicalPolynomial) -> Result<TropicalCurve, TropicalError> {
    curve_with_subdivision(tp).map(|(c, _)| c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// `(vertex index, sum of multiplicity-weighted outgoing directions)` for
    /// every vertex whose sum is nonzero.
    pub defects: Vec<(usize, (i64, i64))>,
}

pub fn balancing_check(c: &TropicalCurve) -> BalanceReport {
    let mut sums: Vec<(i64, i64)> = vec![(0, 0); c.vertices.len()];
    let mut add = |v: usize, d: (i64, i64), m: i64| {
        sums[v].0 += m * d.0;
        sums[v].1 += m * d.1;
    };
    for e in &c.edges {
        let (p, q) = (&c.vertices[e.from], &c.vertices[e.to]);
        let Some(d) = primitive_rational(&(&q.0 - &p.0), &(&q.1 - &p.1)) else {
            continue;
        };
        add(e.from, d, e.mult);
        add(e.to, (-d.0, -d.1), e.mult);
    }
    for r in &c.rays {
        add(r.base, r.dir, r.mult);
    }
    let defects: Vec<(usize, (i64, i64))> = sums
        .into_iter()
        .enumerate()
        .filter(|(_, s)| *s != (0, 0))
        .collect();
    BalanceReport {
        balanced: defects.is_empty(),
        defects,
    }
}

/// Closed axis-parallel box `[x0, x1] x [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Rational,
    pub y0: Rational,
    pub x1: Rational,
    pub y1: Rational,
}

impl Window {
    pub fn new(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, TropicalError> {
        if x1 <= x0 || y1 <= y0 {
            return Err(TropicalError::EmptyWindow);
        }
        Ok(Window { x0, y0, x1, y1 })
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        p.0 >= self.x0 && p.0 <= self.x1 && p.1 >= self.y0 && p.1 <= self.y1
    }

    /// Grid spacing in each direction.
    pub fn step(&self, grid: u32) -> (Rational, Rational) {
        let g = Rational::from_integer(grid.into());
        ((&self.x1 - &self.x0) / &g, (&self.y1 - &self.y0) / &g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: RPoint,
    pub argmin: Vec<usize>,
}

/// Grid points of the window where the minimum is attained at least twice.
pub fn curve_oracle(tp: &TropicalPolynomial, window: &Window, grid: u32) -> Vec<Witness> {
    curve_oracle_with(Execution::available(), tp, window, grid)
}

pub fn curve_oracle_with(
    exec: Execution,
    tp: &TropicalPolynomial,
    window: &Window,
    grid: u32,
) -> Vec<Witness> {
    assert!(grid >= 1, "grid must be positive");
    let (sx, sy) = window.step(grid);
    let n = grid as usize + 1;
    exec.flat_map_range(n, |r| {
        let y = &window.y0 + &sy * Rational::from_integer(r.into());
        (0..n)
            .filter_map(|s| {
                let x = &window.x0 + &sx * Rational::from_integer(s.into());
                let (_, arg) = eval(tp, &x, &y);
                (arg.len() >= 2).then(|| Witness {
                    point: (x, y.clone()),
                    argmin: arg,
                })
            })
            .collect()
    })
}

fn cross_r(o: &RPoint, d: (&Rational, &Rational), p: &RPoint) -> Rational {
    d.0 * (&p.1 - &o.1) - d.1 * (&p.0 - &o.0)
}

/// Exact incidence of `p` with some vertex, edge, ray or line of `c`.
pub fn on_curve(c: &TropicalCurve, p: &RPoint) -> bool {
    if c.vertices.iter().any(|v| v == p) {
        return true;
    }
    for e in &c.edges {
        let (a, b) = (&c.vertices[e.from], &c.vertices[e.to]);
        let d = (&b.0 - &a.0, &b.1 - &a.1);
        if cross_r(a, (&d.0, &d.1), p).is_zero() {
            let t = &d.0 * (&p.0 - &a.0) + &d.1 * (&p.1 - &a.1);
            let len = &d.0 * &d.0 + &d.1 * &d.1;
            if !t.is_negative() && t <= len {
                return true;
            }
        }
    }
    for r in &c.rays {
        let a = &c.vertices[r.base];
        let d = (
            Rational::from_integer(r.dir.0.into()),
            Rational::from_integer(r.dir.1.into()),
        );
        if cross_r(a, (&d.0, &d.1), p).is_zero() {
            let t = &d.0 * (&p.0 - &a.0) + &d.1 * (&p.1 - &a.1);
            if !t.is_negative() {
                return true;
            }
        }
    }
    for l in &c.lines {
        let d = (
            Rational::from_integer(l.dir.0.into()),
            Rational::from_integer(l.dir.1.into()),
        );
        if cross_r(&l.anchor, (&d.0, &d.1), p).is_zero() {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub vertices: usize,
    pub cells: usize,
    pub bounded_edges: usize,
    pub interior_edges: usize,
    pub rays: usize,
    pub boundary_edges: usize,
    pub lines: usize,
    pub segments: usize,
    /// Human-readable mismatches; empty when the bijections hold.
    pub mismatches: Vec<String>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn sign_free(v: (i64, i64)) -> (i64, i64) {
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

/// Checks counts and the dual pairing of directions and multiplicities
/// between a curve and a subdivision, independently of how the curve was
/// built.
pub fn duality_report(c: &TropicalCurve, s: &RegularSubdivision) -> DualityReport {
    let mut r = DualityReport {
        vertices: c.vertices.len(),
        cells: s.cells.len(),
        bounded_edges: c.edges.len(),
        interior_edges: s.interior_edges.len(),
        rays: c.rays.len(),
        boundary_edges: s.boundary_edges.len(),
        lines: c.lines.len(),
        segments: s.segments.len(),
        mismatches: vec![],
    };
    for (what, a, b) in [
        ("vertices vs 2-cells", r.vertices, r.cells),
        (
            "bounded edges vs interior edges",
            r.bounded_edges,
            r.interior_edges,
        ),
        ("rays vs boundary edges", r.rays, r.boundary_edges),
        ("lines vs segments", r.lines, r.segments),
    ] {
        if a != b {
            r.mismatches.push(format!("{what}: {a} != {b}"));
        }
    }
    // bounded edges: multiset of (normal line, multiplicity)
    let mut curve_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for e in &c.edges {
        let (p, q) = (&c.vertices[e.from], &c.vertices[e.to]);
        if let Some(d) = primitive_rational(&(&q.0 - &p.0), &(&q.1 - &p.1)) {
            *curve_side.entry((sign_free(d), e.mult)).or_default() += 1;
        }
    }
    let mut sub_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for e in &s.interior_edges {
        let n = primitive((-(e.b.1 - e.a.1), e.b.0 - e.a.0));
        *sub_side.entry((sign_free(n), e.lattice_length())).or_default() += 1;
    }
    if curve_side != sub_side {
        r.mismatches
            .push("bounded edges are not perpendicular to interior edges with equal lattice length".into());
    }
    // rays: inward normals of the boundary of the support
    let mut ray_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for ray in &c.rays {
        *ray_side.entry((ray.dir, ray.mult)).or_default() += 1;
    }
    let mut bnd_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for e in &s.boundary_edges {
        let n = inward_normal(&s.support, e.a, e.b);
        *bnd_side.entry((n, e.lattice_length())).or_default() += 1;
    }
    if ray_side != bnd_side {
        r.mismatches
            .push("rays are not inward normals of boundary edges with equal lattice length".into());
    }
    let mut line_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for l in &c.lines {
        *line_side.entry((sign_free(l.dir), l.mult)).or_default() += 1;
    }
    let mut seg_side: BTreeMap<((i64, i64), i64), i64> = BTreeMap::new();
    for e in &s.segments {
        let n = primitive((-(e.b.1 - e.a.1), e.b.0 - e.a.0));
        *seg_side.entry((sign_free(n), e.lattice_length())).or_default() += 1;
    }
    if line_side != seg_side {
        r.mismatches
            .push("lines are not perpendicular to segments with equal lattice length".into());
    }
    r
}

fn inward_normal(support: &LatticePolygon, a: Point2, b: Point2) -> (i64, i64) {
    let n = primitive((-(b.1 - a.1), b.0 - a.0));
    let side = support
        .vertices()
        .iter()
        .map(|p| (p.0 - a.0) as i128 * n.0 as i128 + (p.1 - a.1) as i128 * n.1 as i128)
        .find(|d| *d != 0)
        .unwrap_or(1);
    if side > 0 {
        n
    } else {
        (-n.0, -n.1)
    }
}

/// Curve of a Weyl element under the given convention, with the subdivision
/// of the exponent configuration it was built from.
pub fn curve_of(
    p: &WeylElement,
    conv: Convention,
) -> Result<(TropicalCurve, RegularSubdivision), TropicalError> {
    curve_with_subdivision(&tropicalize_with(p, conv)?)
}

pub fn fmt_point(p: &RPoint) -> String {
    format!("({},{})", fmt_rational(&p.0), fmt_rational(&p.1))
}
