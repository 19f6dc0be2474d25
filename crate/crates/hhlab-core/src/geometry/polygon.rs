//! Planar convex polygons: exact measures, support and chord machinery, and a
//! convex-hull constructor used by the random-instance generators.

use super::vecmath::{cross2, dot2, norm2, sub2};
use super::Halfspace;
use crate::error::{Error, Result};

/// Signed area by the shoelace formula; positive for counter-clockwise order.
pub fn signed_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * s
}

pub fn perimeter(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| norm2(sub2(vertices[(i + 1) % n], vertices[i])))
        .sum()
}

/// Area centroid via the standard shoelace-weighted formula.
pub fn centroid(vertices: &[[f64; 2]]) -> [f64; 2] {
    let n = vertices.len();
    let a = signed_area(vertices);
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let w = p[0] * q[1] - q[0] * p[1];
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [cx / (6.0 * a), cy / (6.0 * a)]
}

/// Length-weighted average of edge midpoints.
pub fn boundary_centroid(vertices: &[[f64; 2]]) -> [f64; 2] {
    let n = vertices.len();
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut total = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let len = norm2(sub2(q, p));
        cx += 0.5 * (p[0] + q[0]) * len;
        cy += 0.5 * (p[1] + q[1]) * len;
        total += len;
    }
    [cx / total, cy / total]
}

pub fn diameter(vertices: &[[f64; 2]]) -> f64 {
    let mut d = 0.0f64;
    for (i, a) in vertices.iter().enumerate() {
        for b in vertices.iter().skip(i + 1) {
            d = d.max(norm2(sub2(*b, *a)));
        }
    }
    d
}

/// Validates counter-clockwise order and strict convexity.
pub fn validate(vertices: &[[f64; 2]]) -> Result<()> {
    if vertices.len() < 3 {
        return Err(Error::InvalidDomain(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    let scale = diameter(vertices).max(1e-300);
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        let cr = cross2(sub2(b, a), sub2(c, b));
        if cr <= 1e-12 * scale * scale {
            return Err(Error::InvalidDomain(format!(
                "polygon not strictly convex / counter-clockwise at vertex {i} (cross = {cr:.3e})"
            )));
        }
    }
    Ok(())
}

/// Outward unit normals and offsets of the edge lines, one per edge
/// (edge i runs from vertex i to vertex i+1).
pub fn halfspaces(vertices: &[[f64; 2]]) -> Vec<Halfspace> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            let e = sub2(q, p);
            let len = norm2(e);
            // ccw order: outward normal is the edge rotated by -90 degrees
            let nrm = [e[1] / len, -e[0] / len];
            Halfspace {
                normal: vec![nrm[0], nrm[1]],
                offset: nrm[0] * p[0] + nrm[1] * p[1],
            }
        })
        .collect()
}

pub fn support(vertices: &[[f64; 2]], d: [f64; 2]) -> f64 {
    vertices
        .iter()
        .map(|v| dot2(*v, d))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn contains(vertices: &[[f64; 2]], p: [f64; 2], tol: f64) -> bool {
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if cross2(sub2(b, a), sub2(p, a)) < -tol {
            return false;
        }
    }
    true
}

/// Distance from an interior point to the boundary (minimum edge-line slack).
pub fn interior_distance(vertices: &[[f64; 2]], p: [f64; 2]) -> f64 {
    let mut dist = f64::INFINITY;
    for hs in halfspaces(vertices) {
        dist = dist.min(hs.offset - (hs.normal[0] * p[0] + hs.normal[1] * p[1]));
    }
    dist
}

/// Nearest point on the polygon boundary to `p` (interior or exterior).
pub fn nearest_boundary(vertices: &[[f64; 2]], p: [f64; 2]) -> [f64; 2] {
    let n = vertices.len();
    let mut best = vertices[0];
    let mut best_d = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let e = sub2(b, a);
        let len2 = dot2(e, e);
        let t = if len2 > 0.0 {
            (dot2(sub2(p, a), e) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let cand = [a[0] + t * e[0], a[1] + t * e[1]];
        let d = norm2(sub2(p, cand));
        if d < best_d {
            best_d = d;
            best = cand;
        }
    }
    best
}

/// Parameter range of the line p + t d inside the polygon, or None when the
/// line misses it. Direction need not be normalized.
pub fn clip_line(vertices: &[[f64; 2]], p: [f64; 2], d: [f64; 2]) -> Option<(f64, f64)> {
    let mut t_min = f64::NEG_INFINITY;
    let mut t_max = f64::INFINITY;
    for hs in halfspaces(vertices) {
        let a = [hs.normal[0], hs.normal[1]];
        let denom = dot2(a, d);
        let num = hs.offset - dot2(a, p);
        if denom.abs() < 1e-15 {
            if num < 0.0 {
                return None;
            }
        } else {
            let t = num / denom;
            if denom > 0.0 {
                t_max = t_max.min(t);
            } else {
                t_min = t_min.max(t);
            }
        }
    }
    (t_min < t_max).then_some((t_min, t_max))
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain), with
/// near-collinear points dropped.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| norm2(sub2(*a, *b)) < 1e-12);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let scale = diameter(&pts).max(1e-300);
    let eps = 1e-10 * scale * scale;
    let chain = |iter: &mut dyn Iterator<Item = [f64; 2]>| -> Vec<[f64; 2]> {
        let mut h: Vec<[f64; 2]> = Vec::new();
        for p in iter {
            while h.len() >= 2 {
                let a = h[h.len() - 2];
                let b = h[h.len() - 1];
                if cross2(sub2(b, a), sub2(p, b)) <= eps {
                    h.pop();
                } else {
                    break;
                }
            }
            h.push(p);
        }
        h
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    lower
}

/// Width of the polygon: minimum over edge normals of the support span.
pub fn width_min(vertices: &[[f64; 2]]) -> f64 {
    halfspaces(vertices)
        .iter()
        .map(|hs| {
            let d = [hs.normal[0], hs.normal[1]];
            support(vertices, d) + support(vertices, [-d[0], -d[1]])
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<[f64; 2]> {
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    }

    #[test]
    fn square_measures() {
        let v = square();
        assert!((signed_area(&v) - 1.0).abs() < 1e-14);
        assert!((perimeter(&v) - 4.0).abs() < 1e-14);
        assert_eq!(centroid(&v), [0.5, 0.5]);
        assert_eq!(boundary_centroid(&v), [0.5, 0.5]);
    }

    #[test]
    fn validate_rejects_cw_and_nonconvex() {
        let mut cw = square();
        cw.reverse();
        assert!(validate(&cw).is_err());
        let dent = vec![[0.0, 0.0], [1.0, 0.0], [0.4, 0.4], [0.0, 1.0]];
        assert!(validate(&dent).is_err());
        assert!(validate(&square()).is_ok());
    }

    #[test]
    fn clip_line_square_vertical() {
        let v = square();
        let (t0, t1) = clip_line(&v, [0.5, 0.5], [0.0, 1.0]).unwrap();
        assert!((t0 + 0.5).abs() < 1e-12 && (t1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hull_of_square_with_interior_points() {
        let mut pts = square();
        pts.push([0.5, 0.5]);
        pts.push([0.25, 0.75]);
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(validate(&h).is_ok());
        assert!((signed_area(&h) - 1.0).abs() < 1e-12);
    }
}
