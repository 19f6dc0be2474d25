//! Derivative-free minimization helpers shared by the geometry and search
//! modules: Nelder–Mead simplex and golden-section line search.

/// Options for [`nelder_mead`].
#[derive(Clone, Copy, Debug)]
pub struct NmOptions {
    pub max_iter: usize,
    pub f_tol: f64,
    pub x_tol: f64,
    /// Relative size of the initial simplex perturbation.
    pub init_step: f64,
}

impl Default for NmOptions {
    fn default() -> Self {
        Self {
            max_iter: 400,
            f_tol: 1e-10,
            x_tol: 1e-10,
            init_step: 0.05,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub fun: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder–Mead simplex minimization of `f`, started at `x0`.
///
/// Infinite objective values are allowed and treated as worse than any finite
/// value, so callers can reject infeasible decodes with `f64::INFINITY`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], options: &NmOptions) -> NmResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n > 0, "empty parameter vector");
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        let delta = if x0[i].abs() < 1e-12 {
            options.init_step * 0.05
        } else {
            options.init_step * x0[i].abs()
        };
        v[i] += delta.max(1e-8);
        simplex.push(v);
    }
    let mut fv: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut nfev = n + 1;

    let mut iterations = 0;
    for iter in 0..options.max_iter {
        iterations = iter + 1;
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| fv[a].partial_cmp(&fv[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        fv = idx.iter().map(|&i| fv[i]).collect();

        let f_spread = (fv[n] - fv[0]).abs();
        let mut max_dist = 0.0f64;
        for v in simplex.iter().skip(1) {
            let d: f64 = v
                .iter()
                .zip(&simplex[0])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            max_dist = max_dist.max(d);
        }
        if f_spread < options.f_tol && max_dist < options.x_tol {
            return NmResult {
                x: simplex[0].clone(),
                fun: fv[0],
                iterations,
                evaluations: nfev,
                converged: true,
            };
        }

        let mut centroid = vec![0.0; n];
        for v in simplex.iter().take(n) {
            for j in 0..n {
                centroid[j] += v[j] / n as f64;
            }
        }

        let point = |base: &[f64], dir: &[f64], t: f64| -> Vec<f64> {
            base.iter()
                .zip(dir)
                .map(|(b, d)| b + t * (d - b))
                .collect()
        };

        let xr = point(&centroid, &simplex[n], -alpha);
        let fr = f(&xr);
        nfev += 1;
        if fr < fv[0] {
            let xe = point(&centroid, &xr, gamma);
            let fe = f(&xe);
            nfev += 1;
            if fe < fr {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if fr < fv[n - 1] {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            let (xc, fc) = if fr < fv[n] {
                let xc = point(&centroid, &xr, rho);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = point(&centroid, &simplex[n], rho);
                let fc = f(&xc);
                (xc, fc)
            };
            nfev += 1;
            if fc < fv[n].min(fr) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = point(&simplex[0], &simplex[i], sigma);
                    fv[i] = f(&simplex[i]);
                    nfev += 1;
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if fv[i] < fv[best] {
            best = i;
        }
    }
    NmResult {
        x: simplex[best].clone(),
        fun: fv[best],
        iterations,
        evaluations: nfev,
        converged: false,
    }
}

/// Golden-section minimization of a unimodal 1-D function on [a, b].
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let r = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2),
            &[0.0, 0.0],
            &NmOptions::default(),
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-4 && (r.x[1] + 2.0).abs() < 1e-4);
    }

    #[test]
    fn golden_finds_min() {
        let (x, _) = golden_section(|t| (t - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-7);
    }

    #[test]
    fn rejects_through_infinity() {
        // Feasible region x >= 0.5; minimum at x = 1.
        let r = nelder_mead(
            |x| {
                if x[0] < 0.5 {
                    f64::INFINITY
                } else {
                    (x[0] - 1.0).powi(2)
                }
            },
            &[2.0],
            &NmOptions::default(),
        );
        assert!((r.x[0] - 1.0).abs() < 1e-4);
    }
}
