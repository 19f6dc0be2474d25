//! Planar test domains: star-shaped radial graphs with a C² periodic cubic
//! spline interpolant, and annuli. Curvature-free analytic derivatives of the
//! interpolant drive normals, arclength, and the flatness machinery.

use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Solves the cyclic tridiagonal system (diag `b`, off-diag `a`/`c`, wrap
/// corners) via the Sherman–Morrison correction of a plain Thomas solve.
fn cyclic_tridiag(b_diag: f64, off: f64, d: &[f64]) -> Vec<f64> {
    let n = d.len();
    assert!(n >= 3);
    let gamma = -b_diag;
    let mut diag = vec![b_diag; n];
    diag[0] = b_diag - gamma;
    diag[n - 1] = b_diag - off * off / gamma;
    let thomas = |diag: &[f64], rhs: &[f64]| -> Vec<f64> {
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        c_prime[0] = off / diag[0];
        d_prime[0] = rhs[0] / diag[0];
        for i in 1..n {
            let m = diag[i] - off * c_prime[i - 1];
            c_prime[i] = off / m;
            d_prime[i] = (rhs[i] - off * d_prime[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d_prime[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d_prime[i] - c_prime[i] * x[i + 1];
        }
        x
    };
    let y = thomas(&diag, d);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = off;
    let z = thomas(&diag, &u);
    let vy = y[0] + off / gamma * y[n - 1];
    let vz = z[0] + off / gamma * z[n - 1];
    let factor = vy / (1.0 + vz);
    y.iter().zip(&z).map(|(yi, zi)| yi - factor * zi).collect()
}

/// Periodic C² cubic spline through uniform radial samples r(2πk/M).
#[derive(Clone, Debug)]
pub struct StarInterp {
    pub center: [f64; 2],
    r: Vec<f64>,
    d2: Vec<f64>,
    h: f64,
}

impl StarInterp {
    pub fn new(center: [f64; 2], radial: &[f64]) -> Result<Self> {
        let m = radial.len();
        if m < 64 {
            return Err(Error::InvalidDomain(format!(
                "star domain needs >= 64 radial samples, got {m}"
            )));
        }
        let rmin = radial.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(rmin > 0.0) {
            return Err(Error::InvalidDomain(
                "star domain radial samples must be positive".into(),
            ));
        }
        let h = TAU / m as f64;
        let rhs: Vec<f64> = (0..m)
            .map(|k| {
                let prev = radial[(k + m - 1) % m];
                let next = radial[(k + 1) % m];
                6.0 * (next - 2.0 * radial[k] + prev) / (h * h)
            })
            .collect();
        let d2 = cyclic_tridiag(4.0, 1.0, &rhs);
        Ok(Self {
            center,
            r: radial.to_vec(),
            d2,
            h,
        })
    }

    pub fn sample_count(&self) -> usize {
        self.r.len()
    }

    fn locate(&self, theta: f64) -> (usize, usize, f64) {
        let m = self.r.len();
        let t = theta.rem_euclid(TAU);
        let k = ((t / self.h) as usize).min(m - 1);
        (k, (k + 1) % m, t - k as f64 * self.h)
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let (k, k1, u) = self.locate(theta);
        let h = self.h;
        let a = h - u;
        self.d2[k] * a * a * a / (6.0 * h)
            + self.d2[k1] * u * u * u / (6.0 * h)
            + (self.r[k] / h - self.d2[k] * h / 6.0) * a
            + (self.r[k1] / h - self.d2[k1] * h / 6.0) * u
    }

    pub fn radius_d1(&self, theta: f64) -> f64 {
        let (k, k1, u) = self.locate(theta);
        let h = self.h;
        let a = h - u;
        -self.d2[k] * a * a / (2.0 * h) + self.d2[k1] * u * u / (2.0 * h)
            - (self.r[k] / h - self.d2[k] * h / 6.0)
            + (self.r[k1] / h - self.d2[k1] * h / 6.0)
    }

    pub fn radius_d2(&self, theta: f64) -> f64 {
        let (k, k1, u) = self.locate(theta);
        let h = self.h;
        self.d2[k] * (h - u) / h + self.d2[k1] * u / h
    }

    pub fn point(&self, theta: f64) -> [f64; 2] {
        let r = self.radius(theta);
        [
            self.center[0] + r * theta.cos(),
            self.center[1] + r * theta.sin(),
        ]
    }

    /// |c'(θ)| = sqrt(r² + r'²).
    pub fn speed(&self, theta: f64) -> f64 {
        let r = self.radius(theta);
        let rp = self.radius_d1(theta);
        (r * r + rp * rp).sqrt()
    }

    pub fn unit_tangent(&self, theta: f64) -> [f64; 2] {
        let r = self.radius(theta);
        let rp = self.radius_d1(theta);
        let (s, c) = theta.sin_cos();
        let tx = rp * c - r * s;
        let ty = rp * s + r * c;
        let n = tx.hypot(ty);
        [tx / n, ty / n]
    }

    pub fn outward_normal(&self, theta: f64) -> [f64; 2] {
        let t = self.unit_tangent(theta);
        [t[1], -t[0]]
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let rho = dx.hypot(dy);
        rho < self.radius(dy.atan2(dx).rem_euclid(TAU))
    }

    /// Signed margin r(θ_p) − ρ(p); positive inside (not a metric distance).
    pub fn radial_margin(&self, p: [f64; 2]) -> f64 {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let rho = dx.hypot(dy);
        self.radius(dy.atan2(dx).rem_euclid(TAU)) - rho
    }

    /// Area ∫ r²/2 dθ by the periodic trapezoid rule on a fine grid
    /// (spectrally accurate on the smooth interpolant).
    pub fn area(&self) -> f64 {
        let n = 8 * self.r.len();
        let dt = TAU / n as f64;
        (0..n)
            .map(|i| {
                let r = self.radius(i as f64 * dt);
                0.5 * r * r
            })
            .sum::<f64>()
            * dt
    }

    pub fn perimeter(&self) -> f64 {
        let n = 8 * self.r.len();
        let dt = TAU / n as f64;
        (0..n).map(|i| self.speed(i as f64 * dt)).sum::<f64>() * dt
    }

    pub fn max_radius(&self) -> f64 {
        let n = 8 * self.r.len();
        (0..n)
            .map(|i| self.radius(i as f64 * TAU / n as f64))
            .fold(0.0, f64::max)
    }

    pub fn min_radius(&self) -> f64 {
        let n = 8 * self.r.len();
        (0..n)
            .map(|i| self.radius(i as f64 * TAU / n as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from an interior point to the boundary curve: polyline scan
    /// with angular pruning, refined by golden section on the exact curve.
    pub fn boundary_distance(&self, p: [f64; 2]) -> f64 {
        let m = 4 * self.r.len();
        let dt = TAU / m as f64;
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let alpha = dy.atan2(dx).rem_euclid(TAU);
        let rho = dx.hypot(dy);
        let dist_at = |theta: f64| -> f64 {
            let q = self.point(theta);
            (q[0] - p[0]).hypot(q[1] - p[1])
        };
        // seed with the radial candidate, then scan with pruning: a boundary
        // point at angular offset φ is at least ρ·sin|φ| away (for |φ| ≤ π/2)
        let mut best = dist_at(alpha);
        let mut best_theta = alpha;
        for i in 0..m {
            let theta = i as f64 * dt;
            let mut dphi = (theta - alpha).rem_euclid(TAU);
            if dphi > std::f64::consts::PI {
                dphi = TAU - dphi;
            }
            if dphi < std::f64::consts::FRAC_PI_2 && rho * dphi.sin() - self.h * self.max_radius() > best {
                continue;
            }
            let d = dist_at(theta);
            if d < best {
                best = d;
                best_theta = theta;
            }
        }
        let (_, refined) =
            crate::opt::golden_section(dist_at, best_theta - dt, best_theta + dt, 1e-12);
        refined.min(best)
    }

    /// Nearest boundary point (same scan as `boundary_distance`).
    pub fn nearest_boundary(&self, p: [f64; 2]) -> [f64; 2] {
        let m = 4 * self.r.len();
        let dt = TAU / m as f64;
        let dist_at = |theta: f64| -> f64 {
            let q = self.point(theta);
            (q[0] - p[0]).hypot(q[1] - p[1])
        };
        let mut best_theta = 0.0;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let theta = i as f64 * dt;
            let d = dist_at(theta);
            if d < best {
                best = d;
                best_theta = theta;
            }
        }
        let (t, _) = crate::opt::golden_section(dist_at, best_theta - dt, best_theta + dt, 1e-13);
        self.point(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_interpolant_is_exact() {
        let samples: Vec<f64> = vec![1.0; 128];
        let s = StarInterp::new([0.0, 0.0], &samples).unwrap();
        for k in 0..50 {
            let t = k as f64 * 0.13;
            assert!((s.radius(t) - 1.0).abs() < 1e-12);
            assert!(s.radius_d1(t).abs() < 1e-10);
        }
        assert!((s.area() - std::f64::consts::PI).abs() < 1e-10);
        assert!((s.perimeter() - TAU).abs() < 1e-10);
        let n = s.outward_normal(0.7);
        assert!((n[0] - 0.7f64.cos()).abs() < 1e-10);
        assert!((n[1] - 0.7f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn wobbly_star_matches_closed_form() {
        // r(θ) = 1 + 0.2 cos 3θ: area = π (1 + 0.04/2·... ) = π(1 + 0.02)
        let m = 256;
        let samples: Vec<f64> = (0..m)
            .map(|k| 1.0 + 0.2 * (3.0 * k as f64 * TAU / m as f64).cos())
            .collect();
        let s = StarInterp::new([0.0, 0.0], &samples).unwrap();
        let area_exact = std::f64::consts::PI * (1.0 + 0.5 * 0.2 * 0.2);
        assert!(
            (s.area() - area_exact).abs() < 1e-6,
            "area {} vs {}",
            s.area(),
            area_exact
        );
        // spline interpolates the samples
        for k in [0usize, 17, 100] {
            let theta = k as f64 * TAU / m as f64;
            let want = 1.0 + 0.2 * (3.0 * theta).cos();
            assert!((s.radius(theta) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_distance_of_circle() {
        let samples: Vec<f64> = vec![1.0; 128];
        let s = StarInterp::new([0.0, 0.0], &samples).unwrap();
        let d = s.boundary_distance([0.3, 0.1]);
        let want = 1.0 - 0.3f64.hypot(0.1);
        assert!((d - want).abs() < 1e-9, "{d} vs {want}");
    }
}
