//! Exact incremental convex hull in three dimensions.

use std::collections::HashSet;

pub type P3 = [i64; 3];

/// Inputs must stay below this magnitude so every orientation determinant
/// fits in `i128`.
pub const COORD_LIMIT: i64 = 1 << 40;

fn sub(a: P3, b: P3) -> [i128; 3] {
    [
        (a[0] - b[0]) as i128,
        (a[1] - b[1]) as i128,
        (a[2] - b[2]) as i128,
    ]
}

pub fn cross(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn dot(u: [i128; 3], v: [i128; 3]) -> i128 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Sign of `det(b - a, c - a, p - a)`: positive when `p` lies on the side the
/// normal `(b - a) x (c - a)` points to.
pub fn orient(a: P3, b: P3, c: P3, p: P3) -> i128 {
    dot(cross(sub(b, a), sub(c, a)), sub(p, a))
}

/// Outward normal of a face, reduced to a primitive vector.
pub fn face_normal(a: P3, b: P3, c: P3) -> [i128; 3] {
    let n = cross(sub(b, a), sub(c, a));
    let g = gcd3(n);
    if g == 0 {
        n
    } else {
        [n[0] / g, n[1] / g, n[2] / g]
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd3(n: [i128; 3]) -> i128 {
    gcd(gcd(n[0], n[1]), n[2])
}

/// Hull of a finite point set. For full-dimensional input `faces` is an
/// outward-oriented triangulation of the boundary (coplanar triangles are
/// possible); otherwise `faces` is empty and `dim` says why.
#[derive(Clone, Debug)]
pub struct Hull3 {
    pub points: Vec<P3>,
    pub faces: Vec<[usize; 3]>,
    pub dim: usize,
}

/// Affine dimension of a point set and up to four spanning indices.
pub fn affine_basis(points: &[P3]) -> (usize, Vec<usize>) {
    if points.is_empty() {
        return (0, vec![]);
    }
    let p0 = points[0];
    let Some(i1) = points.iter().position(|&p| p != p0) else {
        return (0, vec![0]);
    };
    let u = sub(points[i1], p0);
    let Some(i2) = points.iter().position(|&p| cross(u, sub(p, p0)) != [0, 0, 0]) else {
        return (1, vec![0, i1]);
    };
    let n = cross(u, sub(points[i2], p0));
    let Some(i3) = points.iter().position(|&p| dot(n, sub(p, p0)) != 0) else {
        return (2, vec![0, i1, i2]);
    };
    (3, vec![0, i1, i2, i3])
}

pub fn hull3(input: &[P3]) -> Hull3 {
    let mut points: Vec<P3> = input.to_vec();
    points.sort_unstable();
    points.dedup();
    for p in &points {
        assert!(
            p.iter().all(|c| c.abs() < COORD_LIMIT),
            "coordinate out of range for exact hull"
        );
    }
    let (dim, basis) = affine_basis(&points);
    if dim < 3 {
        return Hull3 {
            points,
            faces: vec![],
            dim,
        };
    }
    let [a, b, c, d] = [basis[0], basis[1], basis[2], basis[3]];
    // 4 * centroid of the initial simplex stays strictly inside
    let mut inner = [0i64; 3];
    for &i in &basis {
        for k in 0..3 {
            inner[k] += points[i][k];
        }
    }
    let below = |f: [usize; 3], pts: &Vec<P3>| -> bool {
        let a4 = [4 * pts[f[0]][0], 4 * pts[f[0]][1], 4 * pts[f[0]][2]];
        let n = cross(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
        dot(n, sub(inner, a4)) < 0
    };
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for f in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
        if below(f, &points) {
            faces.push(f);
        } else {
            faces.push([f[0], f[2], f[1]]);
        }
    }
    let used: HashSet<usize> = basis.iter().copied().collect();
    for pi in 0..points.len() {
        if used.contains(&pi) {
            continue;
        }
        let p = points[pi];
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient(points[f[0]], points[f[1]], points[f[2]], p) > 0)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            edges.insert((f[0], f[1]));
            edges.insert((f[1], f[2]));
            edges.insert((f[2], f[0]));
        }
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        let mut horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(u, v)| !edges.contains(&(*v, *u)))
            .copied()
            .collect();
        horizon.sort_unstable();
        for (u, v) in horizon {
            next.push([u, v, pi]);
        }
        faces = next;
    }
    Hull3 {
        points,
        faces,
        dim: 3,
    }
}

impl Hull3 {
    /// Points that are genuine vertices of the polytope (not interior to an
    /// edge or a facet), for full-dimensional hulls.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let mut incident: Vec<Vec<[i128; 3]>> = vec![Vec::new(); self.points.len()];
        for f in &self.faces {
            let n = face_normal(self.points[f[0]], self.points[f[1]], self.points[f[2]]);
            for &i in f {
                incident[i].push(n);
            }
        }
        let mut out = Vec::new();
        for (i, normals) in incident.iter().enumerate() {
            if normals.is_empty() {
                continue;
            }
            let n1 = normals[0];
            let Some(n2) = normals.iter().find(|n| cross(n1, **n) != [0, 0, 0]) else {
                continue;
            };
            let c = cross(n1, *n2);
            if normals.iter().any(|n| dot(c, *n) != 0) {
                out.push(i);
            }
        }
        out
    }
}
