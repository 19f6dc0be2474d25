//! Boundary flatness scale and local boundary density for smooth 2-D domains.
//!
//! A boundary is flat at scale δ when, around every boundary point, the piece
//! of boundary inside the δ-ball stays in the slope-1/10 cone of the tangent
//! line (so it is a graph with small derivative in the normal frame, and no
//! second sheet enters the ball).

use super::{boundary_samples_2d, vecmath::dot2, BoundarySample, ConvexBody, Domain, FlatnessReport, PlanarDomain};
use crate::error::{Error, Result};

const SLOPE: f64 = 0.1;

fn cone_predicate(samples: &[BoundarySample], delta: f64) -> bool {
    let d2 = delta * delta;
    for a in samples {
        let tangent = [a.normal[1], -a.normal[0]];
        for b in samples {
            let dx = [b.point[0] - a.point[0], b.point[1] - a.point[1]];
            let r2 = dx[0] * dx[0] + dx[1] * dx[1];
            if r2 == 0.0 || r2 > d2 {
                continue;
            }
            let nu = dot2(a.normal, dx).abs();
            let tau = dot2(tangent, dx).abs();
            if nu > SLOPE * tau + 1e-12 * delta {
                return false;
            }
        }
    }
    true
}

/// Largest δ (geometric bisection, tolerance δ·1e-3) such that every boundary
/// sample's δ-ball sees the boundary inside its slope-1/10 tangent cone.
/// Polygons are rejected: corners force δ = 0.
pub fn flatness_scale(domain: &Domain) -> Result<FlatnessReport> {
    flatness_scale_at(domain, 1024)
}

/// Same as [`flatness_scale`] with an explicit boundary sampling resolution.
pub fn flatness_scale_at(domain: &Domain, resolution: usize) -> Result<FlatnessReport> {
    domain.validate()?;
    match domain {
        Domain::Convex(ConvexBody::Polygon2 { .. })
        | Domain::Convex(ConvexBody::PolytopeH { .. }) => {
            return Err(Error::Unsupported(
                "flatness scale undefined for polyhedral boundaries (corners force delta = 0)"
                    .into(),
            ));
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() > 2 => {
            // by symmetry the computation reduces to a great circle
            let circle = Domain::Convex(ConvexBody::Ball {
                center: vec![0.0, 0.0],
                radius: *radius,
            });
            return flatness_scale_at(&circle, resolution);
        }
        Domain::Convex(ConvexBody::Ellipsoid { semi_axes, .. }) if semi_axes.len() > 2 => {
            return Err(Error::Unsupported(
                "flatness scale implemented for planar boundaries".into(),
            ));
        }
        _ => {}
    }
    let samples = boundary_samples_2d(domain, resolution)?;
    let diam = domain.diameter();
    let mut lo = 0.0f64;
    let mut hi = diam;
    if !cone_predicate(&samples, hi) {
        // bisection with relative tolerance delta * 1e-3
        while hi - lo > 1e-3 * hi.max(1e-12 * diam) {
            let mid = 0.5 * (lo + hi);
            if cone_predicate(&samples, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    } else {
        lo = hi;
    }
    Ok(FlatnessReport {
        delta: lo,
        resolution,
    })
}

/// Arclength of ∂Ω inside the ball B(x, δ), by dense boundary sampling.
/// `x` must lie on the boundary within 1e-6·diam.
pub fn boundary_density(domain: &PlanarDomain, x: [f64; 2], delta: f64) -> Result<f64> {
    domain.validate()?;
    let d = Domain::Planar(domain.clone());
    let diam = d.diameter();
    if delta > diam {
        return Err(Error::InvalidArgument(
            "boundary_density needs delta <= diameter".into(),
        ));
    }
    // on-boundary check
    let on_tol = 1e-6 * diam;
    let dist_to_boundary = match domain {
        PlanarDomain::Star2 { center, radial } => {
            let interp = super::planar::StarInterp::new(*center, radial)?;
            let q = interp.nearest_boundary(x);
            (q[0] - x[0]).hypot(q[1] - x[1])
        }
        PlanarDomain::Annulus2 { r_inner, r_outer } => {
            let rho = x[0].hypot(x[1]);
            (rho - r_inner).abs().min((rho - r_outer).abs())
        }
    };
    if dist_to_boundary > on_tol {
        return Err(Error::InvalidArgument(format!(
            "point is {dist_to_boundary:.3e} away from the boundary (tolerance {on_tol:.3e})"
        )));
    }
    let perimeter = d.surface()?;
    let count = ((perimeter / delta * 256.0) as usize).clamp(8192, 262_144);
    let samples = boundary_samples_2d(&d, count)?;
    let d2 = delta * delta;
    Ok(samples
        .iter()
        .filter(|s| {
            let dx = s.point[0] - x[0];
            let dy = s.point[1] - x[1];
            dx * dx + dy * dy <= d2
        })
        .map(|s| s.ds)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_flatness_proportional_to_radius() {
        // secant-cone oracle for a circular arc: delta = 2 R sin(atan(1/10))
        let oracle = 2.0 * (0.1f64.atan()).sin();
        for radius in [1.0, 2.0] {
            let d = Domain::Convex(ConvexBody::ball(vec![0.0, 0.0], radius).unwrap());
            let r = flatness_scale(&d).unwrap();
            let c = r.delta / radius;
            assert!(
                (c - oracle).abs() < 0.02,
                "R={radius}: c = {c}, oracle {oracle}"
            );
            assert!(c > 0.15 && c < 0.35);
        }
    }

    #[test]
    fn flatness_stable_under_resolution_doubling() {
        let d = Domain::Convex(ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap());
        let a = flatness_scale_at(&d, 512).unwrap().delta;
        let b = flatness_scale_at(&d, 1024).unwrap().delta;
        assert!((a - b).abs() < 0.01 * b.max(a));
    }

    #[test]
    fn annulus_flatness_limited_by_inner_circle() {
        let oracle = 2.0 * (0.1f64.atan()).sin();
        let d = Domain::Planar(PlanarDomain::annulus2(0.2, 1.0).unwrap());
        let r = flatness_scale(&d).unwrap();
        assert!(
            (r.delta - oracle * 0.2).abs() < 0.01,
            "delta = {} vs {}",
            r.delta,
            oracle * 0.2
        );
    }

    #[test]
    fn star_circle_matches_ball() {
        let star = Domain::Planar(PlanarDomain::star2([0.0, 0.0], vec![1.0; 128]).unwrap());
        let ball = Domain::Convex(ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap());
        let a = flatness_scale(&star).unwrap().delta;
        let b = flatness_scale(&ball).unwrap().delta;
        assert!((a - b).abs() < 0.01 * b);
    }

    #[test]
    fn polygon_rejected() {
        let sq = Domain::Convex(
            ConvexBody::polygon2(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap(),
        );
        assert!(matches!(
            flatness_scale(&sq),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn disk_boundary_density() {
        // two arcs of ≈ delta: exact chord-arc value 4 asin(delta/2)
        let star = PlanarDomain::star2([0.0, 0.0], vec![1.0; 256]).unwrap();
        let v = boundary_density(&star, [1.0, 0.0], 0.1).unwrap();
        let oracle = 4.0 * (0.05f64).asin();
        assert!((v - oracle).abs() < 2e-3, "{v} vs {oracle}");
    }

    #[test]
    fn annulus_density_starves_on_inner_circle() {
        let ann = PlanarDomain::annulus2(0.05, 1.0).unwrap();
        let v = boundary_density(&ann, [0.05, 0.0], 0.2).unwrap();
        // inner circle runs out of boundary: 2π·0.05 ≈ 0.314 < 2δ = 0.4
        assert!((v - std::f64::consts::TAU * 0.05).abs() < 2e-3, "{v}");
        assert!(v < 2.0 * 0.2);
    }

    #[test]
    fn smooth_curve_density_ratio_tends_to_two() {
        let star = PlanarDomain::star2([0.0, 0.0], vec![1.0; 256]).unwrap();
        for delta in [0.05, 0.02] {
            let v = boundary_density(&star, [1.0, 0.0], delta).unwrap();
            assert!((v / delta - 2.0).abs() < 0.01, "delta {delta}: {}", v / delta);
        }
    }
}
