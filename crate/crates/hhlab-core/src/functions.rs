//! Test functions with certified convexity/subharmonicity: affine pieces,
//! max-affine envelopes, PSD quadratic forms, norm powers, and the planar
//! log singularity −log‖x−x₀‖.

use crate::error::{Error, Result};
use crate::geometry::{boundary_samples_2d, ConvexBody, Domain};
use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffinePlane {
    pub g: Vec<f64>,
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TestFunction {
    Affine { g: Vec<f64>, c: f64 },
    MaxAffine { planes: Vec<AffinePlane> },
    QuadForm {
        q: Vec<Vec<f64>>,
        linear: Vec<f64>,
        constant: f64,
    },
    NormPower { center: Vec<f64>, p: f64 },
    LogSingularity { center: Vec<f64> },
}

impl TestFunction {
    pub fn validate(&self) -> Result<()> {
        match self {
            TestFunction::Affine { .. } => Ok(()),
            TestFunction::MaxAffine { planes } => {
                if planes.is_empty() {
                    Err(Error::InvalidArgument("max-affine needs >= 1 plane".into()))
                } else {
                    Ok(())
                }
            }
            TestFunction::QuadForm { q, linear, .. } => {
                let n = q.len();
                if q.iter().any(|row| row.len() != n) || linear.len() != n {
                    return Err(Error::InvalidArgument("quadratic form shape mismatch".into()));
                }
                let m = DMatrix::from_fn(n, n, |r, c| 0.5 * (q[r][c] + q[c][r]));
                let eig = m.symmetric_eigenvalues();
                let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
                let scale = eig.iter().map(|x| x.abs()).fold(1.0, f64::max);
                if min < -1e-10 * scale {
                    Err(Error::InvalidArgument(format!(
                        "quadratic form not PSD (min eigenvalue {min:.3e})"
                    )))
                } else {
                    Ok(())
                }
            }
            TestFunction::NormPower { p, .. } => {
                if *p >= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument("norm power needs p >= 1".into()))
                }
            }
            TestFunction::LogSingularity { .. } => Ok(()),
        }
    }

    /// Plain evaluation; +∞ exactly at a log singularity.
    pub fn eval_raw(&self, x: &[f64]) -> f64 {
        match self {
            TestFunction::Affine { g, c } => g.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + c,
            TestFunction::MaxAffine { planes } => planes
                .iter()
                .map(|p| p.g.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + p.c)
                .fold(f64::NEG_INFINITY, f64::max),
            TestFunction::QuadForm {
                q,
                linear,
                constant,
            } => {
                let mut s = *constant;
                for (i, xi) in x.iter().enumerate() {
                    s += linear[i] * xi;
                    for (j, xj) in x.iter().enumerate() {
                        s += 0.5 * (q[i][j] + q[j][i]) * xi * xj;
                    }
                }
                s
            }
            TestFunction::NormPower { center, p } => {
                let r2: f64 = x
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                r2.powf(p / 2.0)
            }
            TestFunction::LogSingularity { center } => {
                let r2: f64 = x
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if r2 == 0.0 {
                    f64::INFINITY
                } else {
                    -0.5 * r2.ln()
                }
            }
        }
    }

    /// Evaluation with a singularity error at the log center.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let v = self.eval_raw(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Singularity(
                "evaluation at the singular center".into(),
            ))
        }
    }

    pub fn singularity(&self) -> Option<&[f64]> {
        match self {
            TestFunction::LogSingularity { center } => Some(center),
            _ => None,
        }
    }

    /// Every variant except the log singularity is convex.
    pub fn is_convex_variant(&self) -> bool {
        !matches!(self, TestFunction::LogSingularity { .. })
    }

    /// The function x ↦ f(x/λ), up to a positive factor for norm powers
    /// (which leaves the normalized ratio unchanged).
    pub fn rescale_domain(&self, lambda: f64) -> Result<TestFunction> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(match self {
            TestFunction::Affine { g, c } => TestFunction::Affine {
                g: g.iter().map(|a| a / lambda).collect(),
                c: *c,
            },
            TestFunction::MaxAffine { planes } => TestFunction::MaxAffine {
                planes: planes
                    .iter()
                    .map(|p| AffinePlane {
                        g: p.g.iter().map(|a| a / lambda).collect(),
                        c: p.c,
                    })
                    .collect(),
            },
            TestFunction::QuadForm {
                q,
                linear,
                constant,
            } => TestFunction::QuadForm {
                q: q.iter()
                    .map(|row| row.iter().map(|a| a / (lambda * lambda)).collect())
                    .collect(),
                linear: linear.iter().map(|a| a / lambda).collect(),
                constant: *constant,
            },
            TestFunction::NormPower { center, p } => TestFunction::NormPower {
                center: center.iter().map(|a| a * lambda).collect(),
                p: *p,
            },
            TestFunction::LogSingularity { .. } => {
                return Err(Error::Unsupported(
                    "log singularity rescales by an additive constant, not a factor".into(),
                ))
            }
        })
    }
}

/// Outcome of the sampled midpoint-convexity test.
#[derive(Clone, Debug)]
pub struct ConvexityCheck {
    pub convex: bool,
    /// (y1, y2, t, f(segment point), t f(y1) + (1−t) f(y2)) for a violation.
    pub witness: Option<(Vec<f64>, Vec<f64>, f64, f64, f64)>,
    pub trials: usize,
}

fn sample_interior(body: &ConvexBody, rng: &mut impl Rng) -> Vec<f64> {
    let (lo, hi) = body.bbox();
    loop {
        let p: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| a + rng.gen::<f64>() * (b - a))
            .collect();
        if body.contains(&p, -1e-12 * body.diameter()) {
            return p;
        }
    }
}

/// Random-segment convexity test; returns the first violating triple if any.
pub fn is_convex_sampled(
    f: &TestFunction,
    body: &ConvexBody,
    trials: usize,
    seed: u64,
) -> Result<ConvexityCheck> {
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    body.validate()?;
    for i in 0..trials {
        let mut rng = crate::rng::stream(seed, i as u64);
        let y1 = sample_interior(body, &mut rng);
        let y2 = sample_interior(body, &mut rng);
        let t: f64 = rng.gen();
        let mid: Vec<f64> = y1
            .iter()
            .zip(&y2)
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect();
        let fm = f.eval_raw(&mid);
        let bound = t * f.eval_raw(&y1) + (1.0 - t) * f.eval_raw(&y2);
        let scale = 1.0 + fm.abs() + bound.abs();
        if fm > bound + 1e-10 * scale {
            return Ok(ConvexityCheck {
                convex: false,
                witness: Some((y1, y2, t, fm, bound)),
                trials: i + 1,
            });
        }
    }
    Ok(ConvexityCheck {
        convex: true,
        witness: None,
        trials,
    })
}

/// Outcome of the discrete-Laplacian subharmonicity test.
#[derive(Clone, Debug)]
pub struct SubharmonicCheck {
    pub subharmonic: bool,
    pub witness: Option<Vec<f64>>,
    pub tested: usize,
    pub skipped: usize,
}

/// Variant-specific bound on fourth directional derivatives near x, used to
/// scale the O(h²) tolerance of the discrete Laplacian.
fn fourth_derivative_bound(f: &TestFunction, x: &[f64], h: f64) -> Option<f64> {
    match f {
        TestFunction::Affine { .. } | TestFunction::MaxAffine { .. } | TestFunction::QuadForm { .. } => {
            Some(0.0)
        }
        TestFunction::NormPower { center, p } => {
            let r: f64 = x
                .iter()
                .zip(center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let coeff = (p * (p - 1.0) * (p - 2.0) * (p - 3.0)).abs() + p * p * p + 1.0;
            if *p >= 4.0 {
                Some(coeff * (r + h).powf(p - 4.0))
            } else {
                let r_eff = r - h * (x.len() as f64).sqrt();
                if r_eff <= 0.0 {
                    None // stencil reaches the non-smooth center
                } else {
                    Some(coeff * r_eff.powf(p - 4.0))
                }
            }
        }
        TestFunction::LogSingularity { center } => {
            let r: f64 = x
                .iter()
                .zip(center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let r_eff = r - h * (x.len() as f64).sqrt();
            if r_eff <= 0.0 {
                None
            } else {
                Some(12.0 / r_eff.powi(4))
            }
        }
    }
}

/// 2n+1-point discrete-Laplacian test at random interior points with an
/// h²-scaled tolerance; points whose stencil leaves the domain are skipped
/// and counted.
pub fn is_subharmonic_sampled(
    f: &TestFunction,
    body: &ConvexBody,
    trials: usize,
    h: f64,
    seed: u64,
) -> Result<SubharmonicCheck> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("stencil width must be > 0".into()));
    }
    body.validate()?;
    let n = body.dim();
    let mut tested = 0;
    let mut skipped = 0;
    for i in 0..trials {
        let mut rng = crate::rng::stream(seed, i as u64);
        let x = sample_interior(body, &mut rng);
        let mut stencil_ok = true;
        let mut lap = -(2.0 * n as f64) * f.eval_raw(&x);
        for d in 0..n {
            for sgn in [-1.0, 1.0] {
                let mut y = x.clone();
                y[d] += sgn * h;
                if !body.contains(&y, 0.0) {
                    stencil_ok = false;
                    break;
                }
                lap += f.eval_raw(&y);
            }
            if !stencil_ok {
                break;
            }
        }
        let Some(m4) = fourth_derivative_bound(f, &x, h) else {
            skipped += 1;
            continue;
        };
        if !stencil_ok {
            skipped += 1;
            continue;
        }
        lap /= h * h;
        let tol = n as f64 * h * h * m4 / 12.0 * 2.0 + 1e-9 * (1.0 + f.eval_raw(&x).abs());
        tested += 1;
        if lap < -tol {
            return Ok(SubharmonicCheck {
                subharmonic: false,
                witness: Some(x),
                tested,
                skipped,
            });
        }
    }
    Ok(SubharmonicCheck {
        subharmonic: true,
        witness: None,
        tested,
        skipped,
    })
}

/// Minimum of f over the boundary: dense sampling plus golden-section
/// refinement along the boundary parameter (2-D domains), facet sampling for
/// polytopes in n ≥ 3.
pub fn boundary_min(f: &TestFunction, domain: &Domain, samples: usize) -> Result<f64> {
    if samples < 16 {
        return Err(Error::InvalidArgument(
            "boundary_min needs >= 16 samples".into(),
        ));
    }
    domain.validate()?;
    match domain {
        Domain::Convex(ConvexBody::PolytopeH { dim, halfspaces }) if *dim >= 3 => {
            // sample facet simplices with a fixed low-discrepancy pattern
            let data = crate::geometry::polytope::analyze(*dim, halfspaces)?;
            let mut best = f64::INFINITY;
            let mut idx = 0u64;
            let halton = crate::quadrature::ScrambledHalton::new(*dim, 0xB0D);
            for facet in &data.facets {
                for s in &facet.simplices {
                    let per = (samples / data.facets.len().max(1)).max(4);
                    for _ in 0..per {
                        let u = halton.point(idx);
                        idx += 1;
                        // uniform barycentric via exponential spacing trick
                        let mut w: Vec<f64> =
                            u.iter().map(|t| -(1.0 - t).max(1e-300).ln()).collect();
                        w.push(1.0);
                        let tot: f64 = w.iter().sum();
                        let mut x = vec![0.0; *dim];
                        for (k, pt) in s.iter().enumerate() {
                            for c in 0..*dim {
                                x[c] += w[k] / tot * pt[c];
                            }
                        }
                        best = best.min(f.eval_raw(&x));
                    }
                }
            }
            Ok(best)
        }
        Domain::Convex(ConvexBody::Ball { center, radius }) if center.len() >= 3 => {
            let mut best = f64::INFINITY;
            for i in 0..samples as u64 {
                let mut rng = crate::rng::stream(0xB0D, i);
                let v = crate::rng::unit_vector(&mut rng, center.len());
                let x: Vec<f64> = center
                    .iter()
                    .zip(&v)
                    .map(|(c, d)| c + radius * d)
                    .collect();
                best = best.min(f.eval_raw(&x));
            }
            Ok(best)
        }
        _ => {
            let pts = boundary_samples_2d(domain, samples)?;
            let mut best = f64::INFINITY;
            let mut best_idx = 0;
            for (i, s) in pts.iter().enumerate() {
                let v = f.eval_raw(&[s.point[0], s.point[1]]);
                if v < best {
                    best = v;
                    best_idx = i;
                }
            }
            // refine between the neighbors of the best sample along the chord
            let prev = &pts[(best_idx + pts.len() - 1) % pts.len()];
            let next = &pts[(best_idx + 1) % pts.len()];
            let (_, refined) = crate::opt::golden_section(
                |t| {
                    let p = [
                        prev.point[0] + t * (next.point[0] - prev.point[0]),
                        prev.point[1] + t * (next.point[1] - prev.point[1]),
                    ];
                    f.eval_raw(&p)
                },
                0.0,
                1.0,
                1e-10,
            );
            Ok(best.min(refined))
        }
    }
}

/// Shift a function by a constant so its boundary minimum is exactly zero.
pub fn shifted_to_zero_boundary_min(
    f: &TestFunction,
    domain: &Domain,
    samples: usize,
) -> Result<TestFunction> {
    let m = boundary_min(f, domain, samples)?;
    Ok(match f {
        TestFunction::Affine { g, c } => TestFunction::Affine {
            g: g.clone(),
            c: c - m,
        },
        TestFunction::MaxAffine { planes } => TestFunction::MaxAffine {
            planes: planes
                .iter()
                .map(|p| AffinePlane {
                    g: p.g.clone(),
                    c: p.c - m,
                })
                .collect(),
        },
        TestFunction::QuadForm {
            q,
            linear,
            constant,
        } => TestFunction::QuadForm {
            q: q.clone(),
            linear: linear.clone(),
            constant: constant - m,
        },
        other => {
            return Err(Error::Unsupported(format!(
                "boundary shift not defined for {other:?}"
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlanarDomain;

    fn unit_square() -> ConvexBody {
        ConvexBody::polygon2(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = TestFunction::MaxAffine {
            planes: vec![
                AffinePlane { g: vec![1.0], c: 0.0 },
                AffinePlane { g: vec![-1.0], c: 1.0 },
            ],
        };
        assert!((f.eval(&[0.3]).unwrap() - 0.7).abs() < 1e-15);
        let g = TestFunction::NormPower {
            center: vec![0.0, 0.0],
            p: 2.0,
        };
        assert!((g.eval(&[3.0, 4.0]).unwrap() - 25.0).abs() < 1e-12);
        let h = TestFunction::LogSingularity {
            center: vec![0.0, 0.0],
        };
        assert!((h.eval(&[0.01, 0.0]).unwrap() - 100.0f64.ln()).abs() < 1e-12);
        assert!(matches!(
            h.eval(&[0.0, 0.0]),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn quadform_psd_validation() {
        let bad = TestFunction::QuadForm {
            q: vec![vec![-1.0, 0.0], vec![0.0, -1.0]],
            linear: vec![0.0, 0.0],
            constant: 0.0,
        };
        assert!(bad.validate().is_err());
        let good = TestFunction::QuadForm {
            q: vec![vec![2.0, 1.0], vec![1.0, 2.0]],
            linear: vec![0.0, 0.0],
            constant: 0.0,
        };
        assert!(good.validate().is_ok());
    }

    #[test]
    fn convexity_sampled() {
        let sq = unit_square();
        let aff = TestFunction::Affine {
            g: vec![1.0, -2.0],
            c: 0.3,
        };
        assert!(is_convex_sampled(&aff, &sq, 2000, 1).unwrap().convex);
        // concave function caught with a witness
        let bad = TestFunction::QuadForm {
            q: vec![vec![-2.0, 0.0], vec![0.0, -2.0]],
            linear: vec![0.0, 0.0],
            constant: 0.0,
        };
        let chk = is_convex_sampled(&bad, &sq, 5000, 2).unwrap();
        assert!(!chk.convex && chk.witness.is_some());
        // max of 5 random planes is convex
        let planes: Vec<AffinePlane> = (0..5)
            .map(|i| AffinePlane {
                g: vec![(i as f64).sin(), (i as f64).cos()],
                c: 0.1 * i as f64,
            })
            .collect();
        let ma = TestFunction::MaxAffine { planes };
        assert!(is_convex_sampled(&ma, &sq, 10_000, 3).unwrap().convex);
    }

    #[test]
    fn subharmonicity_sampled() {
        let sq = unit_square();
        let np = TestFunction::NormPower {
            center: vec![0.5, 0.5],
            p: 2.0,
        };
        assert!(
            is_subharmonic_sampled(&np, &sq, 2000, 1e-3, 7)
                .unwrap()
                .subharmonic
        );
        let neg = TestFunction::QuadForm {
            q: vec![vec![-2.0, 0.0], vec![0.0, -2.0]],
            linear: vec![0.0, 0.0],
            constant: 0.0,
        };
        assert!(
            !is_subharmonic_sampled(&neg, &sq, 2000, 1e-3, 8)
                .unwrap()
                .subharmonic
        );
        // harmonic log singularity on a polygon avoiding the center
        let shifted = ConvexBody::polygon2(vec![[1.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0]])
            .unwrap();
        let log = TestFunction::LogSingularity {
            center: vec![0.0, 0.0],
        };
        assert!(
            is_subharmonic_sampled(&log, &shifted, 2000, 1e-3, 9)
                .unwrap()
                .subharmonic
        );
    }

    #[test]
    fn boundary_min_examples() {
        let sq = Domain::Convex(unit_square());
        let aff = TestFunction::Affine {
            g: vec![1.0, 0.0],
            c: 0.0,
        };
        let m = boundary_min(&aff, &sq, 512).unwrap();
        assert!(m.abs() < 1e-9, "min {m}");
        let ma = TestFunction::MaxAffine {
            planes: vec![AffinePlane {
                g: vec![1.0, 0.0],
                c: -0.2,
            }],
        };
        let m = boundary_min(&ma, &sq, 512).unwrap();
        assert!((m + 0.2).abs() < 1e-9);
        // log singularity on the annulus: minimum 0 on the outer circle
        let ann = Domain::Planar(PlanarDomain::annulus2(0.1, 1.0).unwrap());
        let log = TestFunction::LogSingularity {
            center: vec![0.0, 0.0],
        };
        let m = boundary_min(&log, &ann, 1024).unwrap();
        assert!(m.abs() < 1e-9, "min {m}");
    }

    #[test]
    fn norm_power_scale_covariance() {
        let f = TestFunction::NormPower {
            center: vec![0.0, 0.0],
            p: 1.7,
        };
        for lam in [0.5, 2.0, 3.7] {
            let x = [0.3, -0.4];
            let lx = [lam * x[0], lam * x[1]];
            let a = f.eval_raw(&lx);
            let b = lam.powf(1.7) * f.eval_raw(&x);
            assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }
}
