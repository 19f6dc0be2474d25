//! Interior and boundary integration with error control, and the normalized
//! interior-vs-boundary mean ratio evaluator.
//!
//! Exact-fan paths use fan/simplicial decompositions with degree-9
//! Grundmann–Möller cones and a refinement-difference error estimate;
//! quasi-Monte-Carlo uses a digit-scrambled Halton sequence with rejection in
//! the bounding box and batched standard errors.

use crate::error::{Error, Result};
use crate::functions::{self, TestFunction};
use crate::geometry::{self, ConvexBody, Domain, PlanarDomain};
use serde::{Deserialize, Serialize};
use std::sync::Mutex;

// ---------------------------------------------------------------------------
// basic rules

/// Gauss–Legendre nodes/weights on [-1, 1] (Newton on the Legendre
/// recurrence), cached per order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: Mutex<Option<std::collections::HashMap<usize, (Vec<f64>, Vec<f64>)>>> =
        Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(Default::default);
    if let Some(v) = map.get(&n) {
        return v.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = pk;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    map.insert(n, (nodes.clone(), weights.clone()));
    (nodes, weights)
}

/// Grundmann–Möller rule of degree 2s+1 on an n-simplex, returned as
/// (barycentric point, weight) pairs with weights summing to one, so that
/// ∫_S f ≈ vol(S) · Σ w_j f(x_j).
pub fn grundmann_moeller(n: usize, s: usize) -> Vec<(Vec<f64>, f64)> {
    let d = 2 * s + 1;
    let mut rule = Vec::new();
    let factorial = |k: usize| -> f64 { (1..=k).map(|i| i as f64).product::<f64>().max(1.0) };
    for i in 0..=s {
        let denom_pow = (d + n - 2 * i) as f64;
        let coeff = (if i % 2 == 0 { 1.0 } else { -1.0 }) * 2.0f64.powi(-2 * (s as i32))
            * denom_pow.powi(d as i32)
            / (factorial(i) * factorial(d + n - i));
        // compositions of s - i into n + 1 parts
        let target = s - i;
        let mut beta = vec![0usize; n + 1];
        beta[n] = target;
        loop {
            let bary: Vec<f64> = beta
                .iter()
                .map(|b| (2 * b + 1) as f64 / denom_pow)
                .collect();
            rule.push((bary, coeff));
            // next composition (colex)
            let mut k = n;
            while k > 0 && beta[k] == 0 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            let v = beta[k];
            beta[k] = 0;
            beta[k - 1] += 1;
            beta[n] = v - 1;
        }
    }
    // normalize: weights must sum to 1 over the unit simplex scaled by n!
    let total: f64 = rule.iter().map(|(_, w)| *w).sum();
    for (_, w) in rule.iter_mut() {
        *w /= total;
    }
    rule
}

fn simplex_volume(points: &[Vec<f64>]) -> f64 {
    let k = points.len() - 1;
    let dim = points[0].len();
    let m = nalgebra::DMatrix::<f64>::from_fn(dim, k, |r, c| points[c + 1][r] - points[0][r]);
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    if k == dim {
        m.determinant().abs() / fact
    } else {
        let g = m.transpose() * &m;
        g.determinant().max(0.0).sqrt() / fact
    }
}

fn integrate_simplex<F: Fn(&[f64]) -> f64>(
    f: &F,
    points: &[Vec<f64>],
    rule: &[(Vec<f64>, f64)],
) -> f64 {
    let vol = simplex_volume(points);
    if vol == 0.0 {
        return 0.0;
    }
    let dim = points[0].len();
    let mut sum = 0.0;
    let mut x = vec![0.0; dim];
    for (bary, w) in rule {
        for c in 0..dim {
            x[c] = 0.0;
        }
        for (b, p) in bary.iter().zip(points) {
            for c in 0..dim {
                x[c] += b * p[c];
            }
        }
        sum += w * f(&x);
    }
    vol * sum
}

fn split_longest_edge(points: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let k = points.len();
    let mut best = (0usize, 1usize);
    let mut best_d = -1.0;
    for i in 0..k {
        for j in i + 1..k {
            let d: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if d > best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    let mid: Vec<f64> = points[best.0]
        .iter()
        .zip(&points[best.1])
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let mut left = points.to_vec();
    left[best.1] = mid.clone();
    let mut right = points.to_vec();
    right[best.0] = mid;
    (left, right)
}

// ---------------------------------------------------------------------------
// scrambled Halton

const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Halton sequence with per-seed digit scrambling (zero digit fixed so the
/// sequence stays a (0,1)-net).
pub struct ScrambledHalton {
    perms: Vec<Vec<usize>>,
}

impl ScrambledHalton {
    pub fn new(dim: usize, seed: u64) -> Self {
        use rand::seq::SliceRandom;
        let perms = (0..dim)
            .map(|d| {
                let b = PRIMES[d % PRIMES.len()];
                let mut perm: Vec<usize> = (1..b).collect();
                let mut rng = crate::rng::substream(seed, 0x4A17, d as u64);
                perm.shuffle(&mut rng);
                let mut full = vec![0usize];
                full.extend(perm);
                full
            })
            .collect();
        Self { perms }
    }

    pub fn point(&self, index: u64) -> Vec<f64> {
        self.perms
            .iter()
            .enumerate()
            .map(|(d, perm)| {
                let b = PRIMES[d % PRIMES.len()] as u64;
                let mut i = index + 1;
                let mut x = 0.0;
                let mut scale = 1.0 / b as f64;
                while i > 0 {
                    let digit = (i % b) as usize;
                    x += perm[digit] as f64 * scale;
                    scale /= b as f64;
                    i /= b;
                }
                x
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// interior integral

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralMethod {
    ExactFan,
    QuasiMc,
}

fn check_singularity(domain: &Domain, f: &TestFunction) -> Result<()> {
    if let Some(center) = f.singularity() {
        let diam = domain.diameter();
        let inside = match domain {
            Domain::Planar(PlanarDomain::Annulus2 { r_inner, .. }) => {
                // allowed when the center sits inside the hole
                let rho = center[0].hypot(center[1]);
                rho >= r_inner - 1e-9 * diam
            }
            _ => domain.contains(center, 1e-9 * diam),
        };
        if inside {
            return Err(Error::Singularity(
                "log singularity inside the closed domain".into(),
            ));
        }
    }
    Ok(())
}

fn fan_triangles(vertices: &[[f64; 2]]) -> Vec<Vec<Vec<f64>>> {
    let c = geometry::polygon::centroid(vertices);
    let n = vertices.len();
    (0..n)
        .map(|i| {
            vec![
                vec![c[0], c[1]],
                vec![vertices[i][0], vertices[i][1]],
                vec![vertices[(i + 1) % n][0], vertices[(i + 1) % n][1]],
            ]
        })
        .collect()
}

fn subdivide4(t: &[Vec<f64>]) -> [Vec<Vec<f64>>; 4] {
    let mid = |a: &[f64], b: &[f64]| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
    };
    let m01 = mid(&t[0], &t[1]);
    let m12 = mid(&t[1], &t[2]);
    let m02 = mid(&t[0], &t[2]);
    [
        vec![t[0].clone(), m01.clone(), m02.clone()],
        vec![m01.clone(), t[1].clone(), m12.clone()],
        vec![m02.clone(), m12.clone(), t[2].clone()],
        vec![m01, m12, m02],
    ]
}

fn integrate_triangles<F: Fn(&[f64]) -> f64>(
    f: &F,
    tris: &[Vec<Vec<f64>>],
    levels: usize,
    rule: &[(Vec<f64>, f64)],
) -> f64 {
    let mut sum = 0.0;
    let mut stack: Vec<(Vec<Vec<f64>>, usize)> =
        tris.iter().map(|t| (t.clone(), levels)).collect();
    while let Some((t, lv)) = stack.pop() {
        if lv == 0 {
            sum += integrate_simplex(f, &t, rule);
        } else {
            for s in subdivide4(&t) {
                stack.push((s, lv - 1));
            }
        }
    }
    sum
}

fn integrate_simplices<F: Fn(&[f64]) -> f64>(
    f: &F,
    simplices: &[Vec<Vec<f64>>],
    levels: usize,
    rule: &[(Vec<f64>, f64)],
) -> f64 {
    let mut sum = 0.0;
    let mut stack: Vec<(Vec<Vec<f64>>, usize)> =
        simplices.iter().map(|s| (s.clone(), levels)).collect();
    while let Some((s, lv)) = stack.pop() {
        if lv == 0 {
            sum += integrate_simplex(f, &s, rule);
        } else {
            let (a, b) = split_longest_edge(&s);
            stack.push((a, lv - 1));
            stack.push((b, lv - 1));
        }
    }
    sum
}

/// Polar product rule over a disk sector family: θ midpoints × Gauss radii.
fn integrate_polar<F: Fn(f64, f64) -> f64, R: Fn(f64) -> (f64, f64)>(
    f: &F,        // integrand in (θ, ρ), *including* the Jacobian ρ
    radial: &R,   // θ → (ρ_min, ρ_max)
    n_theta: usize,
    n_r: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n_r);
    let dt = std::f64::consts::TAU / n_theta as f64;
    let mut sum = 0.0;
    for i in 0..n_theta {
        let theta = (i as f64 + 0.5) * dt;
        let (r0, r1) = radial(theta);
        if r1 <= r0 {
            continue;
        }
        let half = 0.5 * (r1 - r0);
        let mid = 0.5 * (r1 + r0);
        let mut inner = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            inner += w * f(theta, mid + half * x);
        }
        sum += inner * half * dt;
    }
    sum
}

/// Interior integral with the chosen method; returns (value, error estimate).
pub fn interior_integral(
    domain: &Domain,
    f: &TestFunction,
    method: IntegralMethod,
    budget: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    domain.validate()?;
    f.validate()?;
    check_singularity(domain, f)?;
    let budget = budget.max(1000);
    match method {
        IntegralMethod::QuasiMc => quasi_mc_interior(domain, f, budget, seed),
        IntegralMethod::ExactFan => exact_interior(domain, f, budget),
    }
}

fn exact_interior(domain: &Domain, f: &TestFunction, budget: usize) -> Result<(f64, f64)> {
    let g = |x: &[f64]| f.eval_raw(x);
    match domain {
        Domain::Convex(ConvexBody::Polygon2 { vertices }) => {
            let rule = grundmann_moeller(2, 4);
            let tris = fan_triangles(vertices);
            let base = (budget / (rule.len() * tris.len()).max(1)).max(1);
            let levels = ((base as f64).log(4.0).floor() as usize).clamp(1, 5);
            let coarse = integrate_triangles(&g, &tris, levels - 1, &rule);
            let fine = integrate_triangles(&g, &tris, levels, &rule);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::PolytopeH { dim, halfspaces }) => {
            let data = geometry::polytope::analyze(*dim, halfspaces)?;
            let rule = grundmann_moeller(*dim, 4);
            let base = (budget / (rule.len() * data.simplices.len()).max(1)).max(1);
            let levels = ((base as f64).log2().floor() as usize).clamp(1, 8);
            let coarse = integrate_simplices(&g, &data.simplices, levels - 1, &rule);
            let fine = integrate_simplices(&g, &data.simplices, levels, &rule);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 2 => {
            let (cx, cy) = (center[0], center[1]);
            let h = |theta: f64, rho: f64| {
                g(&[cx + rho * theta.cos(), cy + rho * theta.sin()]) * rho
            };
            let n_theta = ((budget as f64 / 64.0).sqrt() as usize).clamp(64, 1024);
            let coarse = integrate_polar(&h, &|_| (0.0, *radius), n_theta, 24);
            let fine = integrate_polar(&h, &|_| (0.0, *radius), 2 * n_theta, 32);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 3 => {
            let val = |n_r: usize, n_u: usize, n_t: usize| -> f64 {
                let (rn, rw) = gauss_legendre(n_r);
                let (un, uw) = gauss_legendre(n_u);
                let dt = std::f64::consts::TAU / n_t as f64;
                let mut sum = 0.0;
                for (ri, wi) in rn.iter().zip(&rw) {
                    let rho = 0.5 * radius * (ri + 1.0);
                    for (uj, wj) in un.iter().zip(&uw) {
                        let sint = (1.0 - uj * uj).sqrt();
                        for k in 0..n_t {
                            let th = (k as f64 + 0.5) * dt;
                            let x = [
                                center[0] + rho * sint * th.cos(),
                                center[1] + rho * sint * th.sin(),
                                center[2] + rho * uj,
                            ];
                            sum += wi * wj * dt * g(&x) * rho * rho * 0.5 * radius;
                        }
                    }
                }
                sum
            };
            let coarse = val(16, 16, 32);
            let fine = val(24, 24, 48);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ellipsoid {
            center,
            semi_axes,
            frame,
        }) if semi_axes.len() <= 3 => {
            // affine pull-back to the unit ball
            let n = semi_axes.len();
            let jac: f64 = semi_axes.iter().product();
            let map = |u: &[f64]| -> Vec<f64> {
                let mut x = center.clone();
                for (k, axis) in frame.iter().enumerate() {
                    for c in 0..n {
                        x[c] += axis[c] * semi_axes[k] * u[k];
                    }
                }
                x
            };
            let pulled = move |u: &[f64]| g(&map(u));
            let ball = Domain::Convex(ConvexBody::Ball {
                center: vec![0.0; n],
                radius: 1.0,
            });
            let (v, e) = exact_interior_fn(&ball, &pulled, budget)?;
            Ok((v * jac, e * jac))
        }
        Domain::Planar(PlanarDomain::Star2 { center, radial }) => {
            let interp = geometry::StarInterp::new(*center, radial)?;
            let (cx, cy) = (center[0], center[1]);
            let h = |theta: f64, rho: f64| {
                g(&[cx + rho * theta.cos(), cy + rho * theta.sin()]) * rho
            };
            let n_theta = ((budget as f64 / 64.0).sqrt() as usize).clamp(128, 2048);
            let coarse = integrate_polar(&h, &|t| (0.0, interp.radius(t)), n_theta, 16);
            let fine = integrate_polar(&h, &|t| (0.0, interp.radius(t)), 2 * n_theta, 24);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Planar(PlanarDomain::Annulus2 { r_inner, r_outer }) => {
            // radial log substitution ρ = e^u keeps integrands with a
            // singularity in the hole smooth near the inner circle
            let h = |theta: f64, u: f64| {
                let rho = u.exp();
                g(&[rho * theta.cos(), rho * theta.sin()]) * rho * rho
            };
            let (u0, u1) = (r_inner.ln(), r_outer.ln());
            let radial = |_t: f64| (u0, u1);
            let n_theta = ((budget as f64 / 64.0).sqrt() as usize).clamp(64, 1024);
            let n_u = (8.0 * (u1 - u0)).ceil() as usize + 24;
            let coarse = integrate_polar(&h, &radial, n_theta, n_u);
            let fine = integrate_polar(&h, &radial, 2 * n_theta, n_u + 16);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        _ => quasi_mc_interior(domain, f, budget.max(100_000), 0),
    }
}

fn exact_interior_fn(
    domain: &Domain,
    f: &dyn Fn(&[f64]) -> f64,
    budget: usize,
) -> Result<(f64, f64)> {
    // only the ball paths are used through the pulled-back closure
    match domain {
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 2 => {
            let g = f;
            let (cx, cy) = (center[0], center[1]);
            let h = |theta: f64, rho: f64| {
                g(&[cx + rho * theta.cos(), cy + rho * theta.sin()]) * rho
            };
            let n_theta = ((budget as f64 / 64.0).sqrt() as usize).clamp(64, 1024);
            let coarse = integrate_polar(&h, &|_| (0.0, *radius), n_theta, 24);
            let fine = integrate_polar(&h, &|_| (0.0, *radius), 2 * n_theta, 32);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 3 => {
            let g = f;
            let val = |n_r: usize, n_u: usize, n_t: usize| -> f64 {
                let (rn, rw) = gauss_legendre(n_r);
                let (un, uw) = gauss_legendre(n_u);
                let dt = std::f64::consts::TAU / n_t as f64;
                let mut sum = 0.0;
                for (ri, wi) in rn.iter().zip(&rw) {
                    let rho = 0.5 * radius * (ri + 1.0);
                    for (uj, wj) in un.iter().zip(&uw) {
                        let sint = (1.0 - uj * uj).sqrt();
                        for k in 0..n_t {
                            let th = (k as f64 + 0.5) * dt;
                            let x = [
                                center[0] + rho * sint * th.cos(),
                                center[1] + rho * sint * th.sin(),
                                center[2] + rho * uj,
                            ];
                            sum += wi * wj * dt * g(&x) * rho * rho * 0.5 * radius;
                        }
                    }
                }
                sum
            };
            let coarse = val(16, 16, 32);
            let fine = val(24, 24, 48);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        _ => Err(Error::Unsupported("adapter path".into())),
    }
}

fn quasi_mc_interior(
    domain: &Domain,
    f: &TestFunction,
    budget: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let (lo, hi) = domain.bbox();
    let dim = lo.len();
    let halton = ScrambledHalton::new(dim, seed);
    let cell: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let n_batches = 8usize;
    let per = (budget / n_batches).max(125);
    let mut batch_means = Vec::with_capacity(n_batches);
    for b in 0..n_batches {
        let mut sum = 0.0;
        for i in 0..per {
            let u = halton.point((b * per + i) as u64);
            let x: Vec<f64> = lo
                .iter()
                .zip(&hi)
                .zip(&u)
                .map(|((a, bb), t)| a + t * (bb - a))
                .collect();
            if domain.contains(&x, 0.0) {
                sum += f.eval_raw(&x);
            }
        }
        batch_means.push(cell * sum / per as f64);
    }
    let mean = batch_means.iter().sum::<f64>() / n_batches as f64;
    let var = batch_means
        .iter()
        .map(|m| (m - mean) * (m - mean))
        .sum::<f64>()
        / (n_batches as f64 - 1.0);
    Ok((mean, (var / n_batches as f64).sqrt()))
}

// ---------------------------------------------------------------------------
// boundary integral

fn adaptive_edge<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: usize) -> (f64, f64) {
    let (nodes, weights) = gauss_legendre(10);
    let gauss = |x0: f64, x1: f64| -> f64 {
        let half = 0.5 * (x1 - x0);
        let mid = 0.5 * (x1 + x0);
        nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    };
    fn recurse<G: Fn(f64, f64) -> f64>(
        g: &G,
        a: f64,
        b: f64,
        whole: f64,
        depth: usize,
    ) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let l = g(a, m);
        let r = g(m, b);
        let diff = (l + r - whole).abs();
        if depth == 0 || diff < 1e-13 * (1.0 + whole.abs()) {
            (l + r, diff)
        } else {
            let (lv, le) = recurse(g, a, m, l, depth - 1);
            let (rv, re) = recurse(g, m, b, r, depth - 1);
            (lv + rv, le + re)
        }
    }
    let whole = gauss(a, b);
    recurse(&gauss, a, b, whole, depth)
}

fn periodic_rule<F: Fn(f64) -> f64>(f: &F, m: usize) -> f64 {
    let dt = std::f64::consts::TAU / m as f64;
    (0..m).map(|i| f((i as f64 + 0.5) * dt)).sum::<f64>() * dt
}

/// Boundary integral ∫_∂Ω f dH^{n−1}; returns (value, error estimate).
pub fn boundary_integral(domain: &Domain, f: &TestFunction, budget: usize) -> Result<(f64, f64)> {
    domain.validate()?;
    f.validate()?;
    check_singularity(domain, f)?;
    let g = |x: &[f64]| f.eval_raw(x);
    let depth = ((budget as f64).log2() as usize).clamp(6, 14);
    match domain {
        Domain::Convex(ConvexBody::Polygon2 { vertices }) => {
            let n = vertices.len();
            let mut total = 0.0;
            let mut err = 0.0;
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let len = (b[0] - a[0]).hypot(b[1] - a[1]);
                let (v, e) = adaptive_edge(
                    &|t| g(&[a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]) * len,
                    0.0,
                    1.0,
                    depth,
                );
                total += v;
                err += e;
            }
            Ok((total, err + 1e-14 * total.abs()))
        }
        Domain::Convex(ConvexBody::PolytopeH { dim, halfspaces }) => {
            let data = geometry::polytope::analyze(*dim, halfspaces)?;
            let rule = grundmann_moeller(dim - 1, 4);
            let mut coarse = 0.0;
            let mut fine = 0.0;
            for facet in &data.facets {
                coarse += integrate_simplices(&g, &facet.simplices, 1, &rule);
                fine += integrate_simplices(&g, &facet.simplices, 2, &rule);
            }
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 2 => {
            let h = |t: f64| g(&[center[0] + radius * t.cos(), center[1] + radius * t.sin()]) * radius;
            let m = (budget / 4).clamp(256, 16_384);
            let coarse = periodic_rule(&h, m / 2);
            let fine = periodic_rule(&h, m);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() == 3 => {
            let val = |n_u: usize, n_t: usize| -> f64 {
                let (un, uw) = gauss_legendre(n_u);
                let dt = std::f64::consts::TAU / n_t as f64;
                let mut sum = 0.0;
                for (uj, wj) in un.iter().zip(&uw) {
                    let sint = (1.0 - uj * uj).sqrt();
                    for k in 0..n_t {
                        let th = (k as f64 + 0.5) * dt;
                        let x = [
                            center[0] + radius * sint * th.cos(),
                            center[1] + radius * sint * th.sin(),
                            center[2] + radius * uj,
                        ];
                        sum += wj * dt * g(&x) * radius * radius;
                    }
                }
                sum
            };
            let coarse = val(24, 48);
            let fine = val(32, 64);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Convex(ConvexBody::Ellipsoid {
            center,
            semi_axes,
            frame,
        }) if semi_axes.len() == 2 => {
            let (a, b) = (semi_axes[0], semi_axes[1]);
            let h = |t: f64| {
                let (s, c) = t.sin_cos();
                let x = [
                    center[0] + a * c * frame[0][0] + b * s * frame[1][0],
                    center[1] + a * c * frame[0][1] + b * s * frame[1][1],
                ];
                g(&x) * (a * s).hypot(b * c)
            };
            let m = (budget / 4).clamp(256, 16_384);
            let coarse = periodic_rule(&h, m / 2);
            let fine = periodic_rule(&h, m);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Planar(PlanarDomain::Star2 { center, radial }) => {
            let interp = geometry::StarInterp::new(*center, radial)?;
            let h = |t: f64| {
                let p = interp.point(t);
                g(&[p[0], p[1]]) * interp.speed(t)
            };
            let m = (budget / 4).clamp(512, 16_384);
            let coarse = periodic_rule(&h, m / 2);
            let fine = periodic_rule(&h, m);
            Ok((fine, (fine - coarse).abs() + 1e-14 * fine.abs()))
        }
        Domain::Planar(PlanarDomain::Annulus2 { r_inner, r_outer }) => {
            let mut total = 0.0;
            let mut err = 0.0;
            for r in [*r_outer, *r_inner] {
                let h = |t: f64| g(&[r * t.cos(), r * t.sin()]) * r;
                let m = (budget / 8).clamp(256, 16_384);
                let coarse = periodic_rule(&h, m / 2);
                let fine = periodic_rule(&h, m);
                total += fine;
                err += (fine - coarse).abs();
            }
            Ok((total, err + 1e-14 * total.abs()))
        }
        _ => Err(Error::Unsupported(
            "boundary integral not implemented for this variant".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// ratio report

/// One full normalized-ratio evaluation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioReport {
    pub domain: Domain,
    pub function: TestFunction,
    pub interior_integral: f64,
    pub interior_error: f64,
    pub boundary_integral: f64,
    pub boundary_error: f64,
    pub volume: f64,
    pub surface: f64,
    /// (surface/volume) · interior_integral / boundary_integral.
    pub ratio: f64,
    pub method: IntegralMethod,
    pub seed: u64,
}

/// Assemble the normalized ratio (|∂Ω|/|Ω|)·∫_Ω f / ∫_∂Ω f.
///
/// Refuses when f dips below zero on the boundary (hypothesis violation) or
/// when the boundary integral is smaller than ten times its error bar
/// (ill-posed ratio).
pub fn hh_ratio(domain: &Domain, f: &TestFunction, budget: usize, seed: u64) -> Result<RatioReport> {
    hh_ratio_with(domain, f, IntegralMethod::ExactFan, budget, seed)
}

pub fn hh_ratio_with(
    domain: &Domain,
    f: &TestFunction,
    method: IntegralMethod,
    budget: usize,
    seed: u64,
) -> Result<RatioReport> {
    domain.validate()?;
    f.validate()?;
    let samples = 512;
    let fmin = functions::boundary_min(f, domain, samples)?;
    let fscale = geometry::boundary_samples_2d(domain, 64)
        .map(|v| {
            v.iter()
                .map(|s| f.eval_raw(&[s.point[0], s.point[1]]).abs())
                .fold(0.0f64, f64::max)
        })
        .unwrap_or(1.0);
    if fmin < -1e-6 * (fscale + 1e-12) {
        return Err(Error::HypothesisViolation(format!(
            "f is negative on the boundary (min {fmin:.6e})"
        )));
    }
    let (iv, ie) = interior_integral(domain, f, method, budget, seed)?;
    let (bv, be) = boundary_integral(domain, f, budget)?;
    if bv <= 10.0 * be {
        return Err(Error::IllPosedRatio(format!(
            "boundary integral {bv:.3e} within 10x its error bar {be:.3e}"
        )));
    }
    let volume = domain.volume()?;
    let surface = domain.surface()?;
    Ok(RatioReport {
        domain: domain.clone(),
        function: f.clone(),
        interior_integral: iv,
        interior_error: ie,
        boundary_integral: bv,
        boundary_error: be,
        volume,
        surface,
        ratio: surface / volume * iv / bv,
        method,
        seed,
    })
}
