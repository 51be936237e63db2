//! Deterministic SVG drawings of tropical curves, y-axis pointing up.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly::Rational;
use crate::tropical::{RPoint, TropicalCurve, TropicalError, Window};

/// Window around all vertices and line anchors, padded by one unit.
pub fn default_window(c: &TropicalCurve) -> Window {
    let pts: Vec<&RPoint> = c
        .vertices
        .iter()
        .chain(c.lines.iter().map(|l| &l.anchor))
        .collect();
    let one = Rational::from_integer(1.into());
    let (mut x0, mut y0, mut x1, mut y1) = (-&one, -&one, one.clone(), one.clone());
    if let Some(p) = pts.first() {
        (x0, y0, x1, y1) = (p.0.clone(), p.1.clone(), p.0.clone(), p.1.clone());
    }
    for p in pts {
        x0 = x0.min(p.0.clone());
        x1 = x1.max(p.0.clone());
        y0 = y0.min(p.1.clone());
        y1 = y1.max(p.1.clone());
    }
    Window::new(
        (x0 - &one).floor(),
        (y0 - &one).floor(),
        (x1 + &one).ceil(),
        (y1 + &one).ceil(),
    )
    .expect("padded window is nonempty")
}

/// Parameter interval of `p + t d` inside the window, intersected with
/// `[lo, hi]` (unbounded where `None`).
fn clip(
    p: &RPoint,
    d: (&Rational, &Rational),
    w: &Window,
    lo: Option<Rational>,
    hi: Option<Rational>,
) -> Option<(Rational, Rational)> {
    let mut lo = lo;
    let mut hi = hi;
    for (pc, dc, a, b) in [(&p.0, d.0, &w.x0, &w.x1), (&p.1, d.1, &w.y0, &w.y1)] {
        if dc.is_zero() {
            if pc < a || pc > b {
                return None;
            }
            continue;
        }
        let (ta, tb) = ((a - pc) / dc, (b - pc) / dc);
        let (t0, t1) = if dc.is_positive() { (ta, tb) } else { (tb, ta) };
        lo = Some(lo.map_or(t0.clone(), |l| l.max(t0)));
        hi = Some(hi.map_or(t1.clone(), |h| h.min(t1)));
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        _ => None,
    }
}

struct Frame {
    w: Window,
    scale: f64,
}

impl Frame {
    fn x(&self, v: &Rational) -> f64 {
        ((v - &self.w.x0).to_f64().unwrap_or(0.0)) * self.scale
    }

    fn y(&self, v: &Rational) -> f64 {
        ((&self.w.y1 - v).to_f64().unwrap_or(0.0)) * self.scale
    }
}

fn at(p: &RPoint, d: (&Rational, &Rational), t: &Rational) -> RPoint {
    (&p.0 + d.0 * t, &p.1 + d.1 * t)
}

/// Renders `c` inside `window` at `scale` pixels per unit.
pub fn render(c: &TropicalCurve, window: Option<Window>, scale: f64) -> Result<String, TropicalError> {
    let w = window.unwrap_or_else(|| default_window(c));
    if w.x1 <= w.x0 || w.y1 <= w.y0 {
        return Err(TropicalError::EmptyWindow);
    }
    let f = Frame { w, scale };
    let width = f.x(&f.w.x1);
    let height = f.y(&f.w.y0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    // lattice dots
    let _ = writeln!(s, r##"<g fill="#bbbbbb">"##);
    let (xa, xb) = (f.w.x0.ceil().to_integer(), f.w.x1.floor().to_integer());
    let (ya, yb) = (f.w.y0.ceil().to_integer(), f.w.y1.floor().to_integer());
    let (xa, xb, ya, yb) = (
        xa.to_i64().unwrap_or(0),
        xb.to_i64().unwrap_or(0),
        ya.to_i64().unwrap_or(0),
        yb.to_i64().unwrap_or(0),
    );
    if (xb - xa + 1).saturating_mul(yb - ya + 1) <= 40_000 {
        for gx in xa..=xb {
            for gy in ya..=yb {
                let (px, py) = (
                    f.x(&Rational::from_integer(gx.into())),
                    f.y(&Rational::from_integer(gy.into())),
                );
                let _ = writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="1.5"/>"#);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#1f4e99" stroke-width="2" fill="none">"##);
    let mut labels: Vec<(f64, f64, i64)> = Vec::new();
    let mut segment = |s: &mut String, a: RPoint, b: RPoint, mult: i64| {
        let (ax, ay, bx, by) = (f.x(&a.0), f.y(&a.1), f.x(&b.0), f.y(&b.1));
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}"/>"#
        );
        if mult > 1 {
            labels.push(((ax + bx) / 2.0, (ay + by) / 2.0, mult));
        }
    };
    let one = Rational::from_integer(1.into());
    let zero = Rational::zero();
    for e in &c.edges {
        let (p, q) = (&c.vertices[e.from], &c.vertices[e.to]);
        let d = (&q.0 - &p.0, &q.1 - &p.1);
        if let Some((t0, t1)) = clip(p, (&d.0, &d.1), &f.w, Some(zero.clone()), Some(one.clone())) {
            segment(&mut s, at(p, (&d.0, &d.1), &t0), at(p, (&d.0, &d.1), &t1), e.mult);
        }
    }
    for r in &c.rays {
        let p = &c.vertices[r.base];
        let d = (
            Rational::from_integer(r.dir.0.into()),
            Rational::from_integer(r.dir.1.into()),
        );
        if let Some((t0, t1)) = clip(p, (&d.0, &d.1), &f.w, Some(zero.clone()), None) {
            segment(&mut s, at(p, (&d.0, &d.1), &t0), at(p, (&d.0, &d.1), &t1), r.mult);
        }
    }
    for l in &c.lines {
        let d = (
            Rational::from_integer(l.dir.0.into()),
            Rational::from_integer(l.dir.1.into()),
        );
        if let Some((t0, t1)) = clip(&l.anchor, (&d.0, &d.1), &f.w, None, None) {
            segment(
                &mut s,
                at(&l.anchor, (&d.0, &d.1), &t0),
                at(&l.anchor, (&d.0, &d.1), &t1),
                l.mult,
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#000000">"##);
    for v in &c.vertices {
        if f.w.contains(v) {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#,
                f.x(&v.0),
                f.y(&v.1)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<g font-family="sans-serif" font-size="12" fill="#b22222">"##
    );
    for (x, y, m) in labels {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{m}</text>"#, x + 3.0, y - 3.0);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::int;
    use crate::tropical::{curve, TropicalPolynomial};

    #[test]
    fn tropical_line_is_y_shaped() {
        let tp = TropicalPolynomial::from_integer_terms(&[(1, 0, 0), (0, 1, 0), (0, 0, 0)]).unwrap();
        let c = curve(&tp).unwrap();
        let w = Window::new(int(-2), int(-2), int(2), int(2)).unwrap();
        let a = render(&c, Some(w.clone()), 10.0).unwrap();
        assert_eq!(a.matches("<line").count(), 3);
        // rays (1,0) and (0,1) end on the window edges, (-1,-1) in the corner
        assert!(a.contains(r#"<line x1="20.00" y1="20.00" x2="40.00" y2="20.00"/>"#));
        assert!(a.contains(r#"<line x1="20.00" y1="20.00" x2="0.00" y2="40.00"/>"#));
        assert_eq!(a, render(&c, Some(w), 10.0).unwrap());
    }

    #[test]
    fn clipping() {
        let w = Window::new(int(0), int(0), int(1), int(1)).unwrap();
        let p = (int(-1), rat_half());
        let d = (int(1), int(0));
        assert_eq!(clip(&p, (&d.0, &d.1), &w, None, None), Some((int(1), int(2))));
        let q = (int(-1), int(5));
        assert_eq!(clip(&q, (&d.0, &d.1), &w, None, None), None);
    }

    fn rat_half() -> Rational {
        crate::poly::rational::rat(1, 2)
    }
}
