//! Slice-area profiles along a coordinate axis (the data of Schwarz
//! symmetrization). For convex input the profile^(1/(n−1)) is concave.

use super::{ellipsoid, polytope, ConvexBody, Halfspace};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchwarzProfile {
    pub axis: usize,
    /// Heights measured from the lower support plane, in [0, height_extent].
    pub heights: Vec<f64>,
    pub slice_areas: Vec<f64>,
    pub height_extent: f64,
}

impl SchwarzProfile {
    pub fn sup_area(&self) -> f64 {
        self.slice_areas.iter().cloned().fold(0.0, f64::max)
    }

    /// Largest midpoint-concavity violation of areas^(1/(n−1)) on the support,
    /// normalized by the profile maximum. Zero (up to tolerance) for convex
    /// bodies by Brunn–Minkowski.
    pub fn concavity_defect(&self, dim: usize) -> f64 {
        let p = 1.0 / (dim as f64 - 1.0);
        let g: Vec<f64> = self.slice_areas.iter().map(|a| a.max(0.0).powf(p)).collect();
        let gmax = g.iter().cloned().fold(0.0, f64::max);
        if gmax <= 0.0 {
            return 0.0;
        }
        let mut defect = 0.0f64;
        for i in 1..g.len() - 1 {
            if g[i - 1] > 0.0 && g[i + 1] > 0.0 {
                defect = defect.max((0.5 * (g[i - 1] + g[i + 1]) - g[i]) / gmax);
            }
        }
        defect
    }
}

fn polygon_slice_length(vertices: &[[f64; 2]], axis: usize, c: f64) -> f64 {
    // intersection of a convex polygon with the line {x_axis = c}
    let other = 1 - axis;
    let n = vertices.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let fa = a[axis] - c;
        let fb = b[axis] - c;
        if fa.abs() < 1e-15 {
            lo = lo.min(a[other]);
            hi = hi.max(a[other]);
        }
        if (fa < 0.0) != (fb < 0.0) {
            let t = fa / (fa - fb);
            let y = a[other] + t * (b[other] - a[other]);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    (hi - lo).max(0.0)
}

/// Slice areas of a convex body along coordinate `axis` on a uniform grid of
/// at least 512 heights.
pub fn schwarz_profile(body: &ConvexBody, axis: usize) -> Result<SchwarzProfile> {
    body.validate()?;
    let n = body.dim();
    if axis >= n {
        return Err(Error::InvalidArgument(format!(
            "axis {axis} out of range for dimension {n}"
        )));
    }
    let mut e = vec![0.0; n];
    e[axis] = 1.0;
    let neg: Vec<f64> = e.iter().map(|x| -x).collect();
    let top = body.support(&e);
    let bottom = -body.support(&neg);
    let extent = top - bottom;
    let k = 512usize;
    let mut heights = Vec::with_capacity(k + 1);
    let mut areas = Vec::with_capacity(k + 1);

    let slice_area = |c_abs: f64| -> f64 {
        match body {
            ConvexBody::Polygon2 { vertices } => polygon_slice_length(vertices, axis, c_abs),
            ConvexBody::Ball { center, radius } => {
                let t = c_abs - center[axis];
                let r2 = radius * radius - t * t;
                if r2 <= 0.0 {
                    0.0
                } else {
                    ellipsoid::unit_ball_volume(n - 1) * r2.powf((n as f64 - 1.0) / 2.0)
                }
            }
            ConvexBody::Ellipsoid {
                center,
                semi_axes,
                frame,
            } => ellipsoid::slice_area(center, semi_axes, frame, axis, c_abs),
            ConvexBody::PolytopeH { dim, halfspaces } => {
                // substitute x_axis = c into the halfspace system
                let others: Vec<usize> = (0..*dim).filter(|&i| i != axis).collect();
                let sub: Vec<Halfspace> = halfspaces
                    .iter()
                    .map(|h| Halfspace {
                        normal: others.iter().map(|&i| h.normal[i]).collect(),
                        offset: h.offset - h.normal[axis] * c_abs,
                    })
                    .collect();
                polytope::try_volume(dim - 1, &sub)
            }
        }
    };

    for i in 0..=k {
        let h = extent * i as f64 / k as f64;
        heights.push(h);
        areas.push(slice_area(bottom + h));
    }
    Ok(SchwarzProfile {
        axis,
        heights,
        slice_areas: areas,
        height_extent: extent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_profile() {
        let b = ConvexBody::ball(vec![0.0; 3], 1.0).unwrap();
        let p = schwarz_profile(&b, 2).unwrap();
        assert!((p.height_extent - 2.0).abs() < 1e-12);
        // mid-height slice is the unit disk
        let mid = p.slice_areas[p.slice_areas.len() / 2];
        assert!((mid - std::f64::consts::PI).abs() < 1e-10);
        assert!((p.sup_area() - std::f64::consts::PI).abs() < 1e-10);
        assert!(p.concavity_defect(3) < 1e-6);
    }

    #[test]
    fn cube_profile_constant() {
        let hs = vec![
            Halfspace { normal: vec![1.0, 0.0, 0.0], offset: 1.0 },
            Halfspace { normal: vec![-1.0, 0.0, 0.0], offset: 0.0 },
            Halfspace { normal: vec![0.0, 1.0, 0.0], offset: 1.0 },
            Halfspace { normal: vec![0.0, -1.0, 0.0], offset: 0.0 },
            Halfspace { normal: vec![0.0, 0.0, 1.0], offset: 1.0 },
            Halfspace { normal: vec![0.0, 0.0, -1.0], offset: 0.0 },
        ];
        let cube = ConvexBody::polytope_h(3, hs).unwrap();
        let p = schwarz_profile(&cube, 2).unwrap();
        assert!((p.height_extent - 1.0).abs() < 1e-9);
        for (h, a) in p.heights.iter().zip(&p.slice_areas) {
            if *h > 1e-6 && *h < 1.0 - 1e-6 {
                assert!((a - 1.0).abs() < 1e-8, "slice at {h}: {a}");
            }
        }
    }

    #[test]
    fn polygon_profile_triangle() {
        let tri = ConvexBody::polygon2(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]).unwrap();
        let p = schwarz_profile(&tri, 0).unwrap();
        // slice length at x = c is c
        let idx = 256;
        let c = p.heights[idx];
        assert!((p.slice_areas[idx] - c).abs() < 1e-10);
        assert!(p.concavity_defect(2) < 1e-6);
    }
}
