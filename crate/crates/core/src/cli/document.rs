//! JSON form of a tropical curve. Rationals are strings such as `"-17/2"`.

use serde::{Deserialize, Serialize};

use crate::geometry::{edge_slopes, is_good, polygon_at_q0};
use crate::poly::{fmt_rational, parse_rational};
use crate::tropical::{primitive_rational, Convention, CurveEdge, Line, RPoint, Ray, TropicalCurve};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayDoc {
    pub base: usize,
    pub dir: [i64; 2],
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDoc {
    pub anchor: [String; 2],
    pub dir: [i64; 2],
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub source: String,
    pub convention: String,
    pub good: bool,
    /// Vertices of `N_{P,0}` as `[l, m]`.
    pub polygon: Vec<[i64; 2]>,
    pub slopes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub vertices: Vec<[String; 2]>,
    pub edges: Vec<EdgeDoc>,
    pub rays: Vec<RayDoc>,
    pub lines: Vec<LineDoc>,
    pub metadata: Metadata,
}

fn point_doc(p: &RPoint) -> [String; 2] {
    [fmt_rational(&p.0), fmt_rational(&p.1)]
}

fn parse_point(p: &[String; 2]) -> Result<RPoint, String> {
    let r = |s: &String| parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"));
    Ok((r(&p[0])?, r(&p[1])?))
}

impl CurveDocument {
    pub fn new(curve: &TropicalCurve, metadata: Metadata) -> Self {
        CurveDocument {
            vertices: curve.vertices.iter().map(point_doc).collect(),
            edges: curve
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: e.from,
                    to: e.to,
                    mult: e.mult,
                })
                .collect(),
            rays: curve
                .rays
                .iter()
                .map(|r| RayDoc {
                    base: r.base,
                    dir: [r.dir.0, r.dir.1],
                    mult: r.mult,
                })
                .collect(),
            lines: curve
                .lines
                .iter()
                .map(|l| LineDoc {
                    anchor: point_doc(&l.anchor),
                    dir: [l.dir.0, l.dir.1],
                    mult: l.mult,
                })
                .collect(),
            metadata,
        }
    }

    /// Checks indices, primitivity and multiplicities and rebuilds the curve.
    pub fn to_curve(&self) -> Result<TropicalCurve, String> {
        let n = self.vertices.len();
        let vertices = self
            .vertices
            .iter()
            .map(parse_point)
            .collect::<Result<Vec<_>, _>>()?;
        let prim = |d: [i64; 2]| -> Result<(i64, i64), String> {
            let v = primitive_rational(
                &crate::poly::rational::int(d[0]),
                &crate::poly::rational::int(d[1]),
            )
            .ok_or("zero direction")?;
            if v != (d[0], d[1]) {
                return Err(format!("direction {d:?} is not primitive"));
            }
            Ok(v)
        };
        let mult = |m: i64| {
            if m >= 1 {
                Ok(m)
            } else {
                Err(format!("multiplicity {m} < 1"))
            }
        };
        let mut c = TropicalCurve {
            vertices,
            ..Default::default()
        };
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(format!("edge index out of range: {} {}", e.from, e.to));
            }
            c.edges.push(CurveEdge {
                from: e.from,
                to: e.to,
                mult: mult(e.mult)?,
            });
        }
        for r in &self.rays {
            if r.base >= n {
                return Err(format!("ray base out of range: {}", r.base));
            }
            c.rays.push(Ray {
                base: r.base,
                dir: prim(r.dir)?,
                mult: mult(r.mult)?,
            });
        }
        for l in &self.lines {
            c.lines.push(Line {
                anchor: parse_point(&l.anchor)?,
                dir: prim(l.dir)?,
                mult: mult(l.mult)?,
            });
        }
        Ok(c)
    }
}

/// Metadata for a curve built from a Weyl element.
pub fn metadata_for(p: &WeylElement, source: &str, conv: Convention) -> Metadata {
    let polygon = polygon_at_q0(p).ok();
    Metadata {
        source: source.to_string(),
        convention: match conv {
            Convention::Max => "max".into(),
            Convention::Min => "min".into(),
        },
        good: is_good(p).unwrap_or(false),
        polygon: polygon
            .as_ref()
            .map(|q| q.vertices().iter().map(|v| [v.0, v.1]).collect())
            .unwrap_or_default(),
        slopes: polygon
            .as_ref()
            .and_then(|q| edge_slopes(q).ok())
            .map(|s| s.iter().map(|x| x.to_string()).collect())
            .unwrap_or_default(),
    }
}
