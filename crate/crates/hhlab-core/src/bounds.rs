//! Closed-form constants, special functions (Γ, complete elliptic E), the 1-D
//! endpoint-mean inequality, the half-space Poisson kernel, and the slice
//! integral identity.

use crate::error::{Error, Result};
use crate::geometry::{self, ConvexBody};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey coefficients).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_87e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_49e-3,
    -0.210_264_441_724_104_88e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_89e-3,
    0.844_182_239_838_527_43e-4,
    -0.261_908_384_015_814_09e-4,
    0.368_991_826_595_316_27e-5,
];

fn lanczos_series(x: f64) -> f64 {
    let mut s = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (x - 1.0 + k as f64);
    }
    s
}

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma needs a positive argument, got {x}"
        )));
    }
    if x < 0.5 {
        // recurrence Γ(x) = Γ(x+1)/x keeps the series in its sweet spot
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let t = x + LANCZOS_G - 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + lanczos_series(x).ln())
}

/// Γ(x) for x > 0, relative error ≤ 1e-12 (log-domain for large arguments).
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma needs a positive argument, got {x}"
        )));
    }
    if x < 0.5 {
        return Ok(gamma_fn(x + 1.0)? / x);
    }
    if x >= 12.0 {
        return Ok(ln_gamma(x)?.exp());
    }
    let t = x + LANCZOS_G - 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * lanczos_series(x))
}

/// Complete elliptic integral of the second kind in the *modulus* convention:
/// E(k) = ∫₀^{π/2} sqrt(1 − k² sin²θ) dθ, k ∈ [0, 1].
///
/// (Not the parameter convention E(m); the modulus matches usage like
/// E(sqrt(1 − b²/a²)) for ellipse arclength.)
pub fn elliptic_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "elliptic modulus must lie in [0,1], got {k}"
        )));
    }
    if k == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let m = k * k;
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = k;
    let mut sum = c * c;
    let mut pow2 = 1.0;
    for _ in 0..40 {
        let a1 = 0.5 * (a + b);
        let b1 = (a * b).sqrt();
        c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = a1;
        b = b1;
        if c.abs() < 1e-17 * a {
            break;
        }
    }
    let big_k = PI / (2.0 * a);
    Ok(big_k * (1.0 - 0.5 * sum))
}

/// The theorem-1 constants at dimension n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsTable {
    pub n: usize,
    /// 2 n^{n+1}/√π.
    pub simple: f64,
    /// √(2n) Γ((n+2)/2)/Γ((n+1)/2) · n^n.
    pub refined: f64,
    /// refined / n^{n+1}; tends to 1 + 1/(4n).
    pub asymptotic_ratio: f64,
}

pub fn theorem1_constants(n: usize) -> Result<BoundsTable> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "theorem1 constants defined for n >= 2".into(),
        ));
    }
    let nf = n as f64;
    let simple = 2.0 * nf.powi(n as i32 + 1) / PI.sqrt();
    let gamma_ratio = (ln_gamma((nf + 2.0) / 2.0)? - ln_gamma((nf + 1.0) / 2.0)?).exp();
    let refined = (2.0 * nf).sqrt() * gamma_ratio * nf.powi(n as i32);
    Ok(BoundsTable {
        n,
        simple,
        refined,
        asymptotic_ratio: refined / nf.powi(n as i32 + 1),
    })
}

/// (16/π) E(sqrt(1 − b²/a²)) for inscribed-ellipse semi-axes a ≥ b; equals 8
/// exactly at a = b.
pub fn proposition_2d_bound(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidArgument("semi-axes must be positive".into()));
    }
    if b > a {
        return Err(Error::InvalidArgument(
            "proposition bound needs a >= b".into(),
        ));
    }
    let e = (1.0 - (b * b) / (a * a)).max(0.0).sqrt();
    Ok(16.0 * elliptic_e(e)? / PI)
}

/// (3/2)(√(1+a²)+2a)/(2√(1+a²)+2a): increasing in a, sup 9/8, value 3/4 at 0⁺.
pub fn triangle_family_ratio(a: f64) -> f64 {
    let s = (1.0 + a * a).sqrt();
    1.5 * (s + 2.0 * a) / (2.0 * s + 2.0 * a)
}

/// Center-of-mass comparison for a body in the closed positive orthant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub interior_norm: f64,
    pub boundary_norm: f64,
    pub constant: f64,
    pub ok: bool,
}

pub fn corollary_check(body: &ConvexBody) -> Result<CorollaryReport> {
    let n = body.dim();
    let diam = body.diameter();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = -1.0;
        if body.support(&e) > 1e-9 * diam.max(1.0) {
            return Err(Error::HypothesisViolation(
                "body leaves the closed positive orthant".into(),
            ));
        }
    }
    let m_in = geometry::centroid(body)?;
    let m_bd = geometry::boundary_centroid(body)?;
    let ni = m_in.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = m_bd.iter().map(|x| x * x).sum::<f64>().sqrt();
    let constant = theorem1_constants(n)?.simple;
    Ok(CorollaryReport {
        interior_norm: ni,
        boundary_norm: nb,
        constant,
        ok: ni <= constant * nb + 1e-12,
    })
}

/// |Ω|^{1/n} scale law of the convex-domain bound in n ≥ 3 (implicit constant
/// taken as 1; empirical constants are fitted by the stochastic module).
pub fn theorem3_scale(n: usize, volume: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "the |Ω|^{1/n} bound needs n >= 3".into(),
        ));
    }
    if !(volume > 0.0) {
        return Err(Error::InvalidArgument("volume must be positive".into()));
    }
    Ok(volume.powf(1.0 / n as f64))
}

/// δ^{n−1} exp(c |Ω|^{2/n}/δ²) |Ω|^{−(n−2)/n}: the flatness-scale bound with
/// an explicitly supplied exponent constant.
pub fn theorem4_bound(n: usize, volume: f64, delta: f64, c_exponent: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be >= 2".into()));
    }
    if !(volume > 0.0 && delta > 0.0) {
        return Err(Error::InvalidArgument(
            "volume and delta must be positive".into(),
        ));
    }
    let nf = n as f64;
    Ok(delta.powf(nf - 1.0)
        * (c_exponent * volume.powf(2.0 / nf) / (delta * delta)).exp()
        * volume.powf(-(nf - 2.0) / nf))
}

fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on [a, b].
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// 1-D endpoint-mean inequality: (1/(b−a)) ∫ f ≤ (f(a)+f(b))/2 for convex f,
/// checked by adaptive quadrature.
pub fn verify_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<bool> {
    if !(a < b) {
        return Err(Error::InvalidArgument("verify_1d needs a < b".into()));
    }
    let endpoint_mean = 0.5 * (f(a) + f(b));
    let mean = integrate_1d(&f, a, b, 1e-12 * (b - a).max(1.0)) / (b - a);
    Ok(mean <= endpoint_mean + 1e-10 * (1.0 + endpoint_mean.abs()))
}

/// Classical upper-half-space Poisson kernel Γ(n/2) π^{−n/2} x_n/‖x‖^n,
/// evaluated at interior x (boundary point at the origin).
pub fn half_space_poisson_kernel(n: usize, x: &[f64]) -> Result<f64> {
    if x.len() != n || n < 2 {
        return Err(Error::InvalidArgument(
            "kernel point dimension mismatch".into(),
        ));
    }
    let xn = x[n - 1];
    if !(xn > 0.0) {
        return Err(Error::InvalidArgument(
            "kernel needs x_n > 0 (upper half space)".into(),
        ));
    }
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    Ok(gamma_fn(n as f64 / 2.0)? / PI.powf(n as f64 / 2.0) * xn / norm.powi(n as i32))
}

/// Numeric evaluation of ∫₀^∞ b c^{n−2}/(b²+c²)^{n/2} db (equals 1/(n−2),
/// independently of c). Geometric Gauss panels, tail below 1e-12.
pub fn slice_integral_identity(n: usize, c: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "slice integral identity needs n >= 3".into(),
        ));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument("slice constant must be > 0".into()));
    }
    let integrand = |b: f64| -> f64 {
        let q = b * b + c * c;
        b * c.powi(n as i32 - 2) / q.powf(n as f64 / 2.0)
    };
    let (nodes, weights) = crate::quadrature::gauss_legendre(20);
    let mut total = 0.0;
    let mut lo = 0.0f64;
    let mut hi = c * 2.0f64.powi(-30);
    // geometric panels out to c·2^48; the tail is ≤ 2^{-48(n-2)/1}·(n-2)^{-1}
    for _ in 0..79 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            panel += w * integrand(mid + half * x);
        }
        total += panel * half;
        lo = hi;
        hi *= 2.0;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gamma_reference_values() {
        // frozen high-precision references
        let cases = [
            (0.1, 9.513_507_698_668_732),
            (0.5, 1.772_453_850_905_516),
            (1.5, 0.886_226_925_452_758),
            (2.7, 1.544_685_845_850_594),
            (5.0, 24.0),
            (10.3, 716_430.689_062_375_2),
            (25.6, 4.259_787_883_649_394e24),
            (150.5, 4.661_072_627_097_378e261),
        ];
        for (x, want) in cases {
            let got = gamma_fn(x).unwrap();
            assert!(rel(got, want) < 1e-12, "gamma({x}) = {got} vs {want}");
        }
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.0).is_err());
    }

    #[test]
    fn gamma_chain_estimate() {
        // 2√π Γ((n+1)/2)/Γ(n/2) ≤ √(2πn) for n = 2..50
        for n in 2..=50 {
            let nf = n as f64;
            let lhs = 2.0 * PI.sqrt()
                * (ln_gamma((nf + 1.0) / 2.0).unwrap() - ln_gamma(nf / 2.0).unwrap()).exp();
            let rhs = (2.0 * PI * nf).sqrt();
            assert!(lhs <= rhs + 1e-12, "n={n}: {lhs} > {rhs}");
        }
    }

    #[test]
    fn elliptic_values() {
        assert_eq!(elliptic_e(0.0).unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
        let cases = [
            (0.3, 1.534_833_464_923_249),
            (0.866_025_403_784_438_6, 1.211_056_027_568_459_5),
            (0.9, 1.171_697_052_781_614_2),
        ];
        for (k, want) in cases {
            assert!(rel(elliptic_e(k).unwrap(), want) < 1e-12);
        }
        // ellipse (2,1) perimeter: 8 E(√3/2) (adaptive arclength oracle)
        let p = 8.0 * elliptic_e(3.0f64.sqrt() / 2.0).unwrap();
        assert!(rel(p, 9.688_448_220_547_676) < 1e-12);
        assert!(elliptic_e(1.5).is_err());
    }

    #[test]
    fn elliptic_is_decreasing() {
        let mut prev = elliptic_e(0.0).unwrap();
        for i in 1..=100 {
            let k = i as f64 / 100.0;
            let v = elliptic_e(k).unwrap();
            assert!(v < prev, "E not decreasing at k = {k}");
            prev = v;
        }
    }

    #[test]
    fn theorem1_table() {
        let t2 = theorem1_constants(2).unwrap();
        assert!(rel(t2.simple, 9.027_033_336_764_1) < 1e-12);
        assert!((t2.refined - t2.simple).abs() < 1e-12 * t2.simple);
        let t3 = theorem1_constants(3).unwrap();
        assert!(rel(t3.simple, 91.398_712_534_736_52) < 1e-12);
        assert!(rel(t3.refined, 87.917_552_428_829_52) < 1e-12);
        for n in 2..=50 {
            let t = theorem1_constants(n).unwrap();
            assert!(
                t.refined <= t.simple * (1.0 + 1e-12),
                "refined exceeds simple at n = {n}"
            );
        }
        assert!(theorem1_constants(1).is_err());
    }

    #[test]
    fn asymptotic_ratio_behavior() {
        let t20 = theorem1_constants(20).unwrap();
        let target = 1.0 + 1.0 / 80.0;
        assert!((t20.asymptotic_ratio - target).abs() < 1.0 / 20.0);
        // deviation from 1 + 1/(4n) decreasing in n and ≤ 1/n for n ≥ 10
        let mut prev = f64::INFINITY;
        for n in 10..=50 {
            let t = theorem1_constants(n).unwrap();
            let dev = (t.asymptotic_ratio - (1.0 + 0.25 / n as f64)).abs();
            assert!(dev <= 1.0 / n as f64, "n={n}: dev {dev}");
            assert!(dev <= prev + 1e-15, "deviation not decreasing at n={n}");
            prev = dev;
        }
    }

    #[test]
    fn proposition_bound_values() {
        assert_eq!(proposition_2d_bound(1.0, 1.0).unwrap(), 8.0);
        assert_eq!(proposition_2d_bound(3.7, 3.7).unwrap(), 8.0);
        let thin = proposition_2d_bound(1.0, 1e-9).unwrap();
        assert!(rel(thin, 16.0 / PI) < 1e-6);
        assert!(rel(proposition_2d_bound(2.0, 1.0).unwrap(), 6.167_857_700_760_16) < 1e-10);
        assert!(proposition_2d_bound(1.0, 2.0).is_err());
    }

    #[test]
    fn triangle_family_values() {
        assert!(rel(triangle_family_ratio(1.0), 1.060_660_171_779_821_3) < 1e-12);
        assert!((triangle_family_ratio(1e9) - 1.125).abs() < 1e-8);
        assert!((triangle_family_ratio(1e-12) - 0.75).abs() < 1e-10);
        // increasing, bounded by 9/8
        let mut prev = 0.0;
        for i in 1..=200 {
            let a = 10f64.powf(-3.0 + 6.0 * i as f64 / 200.0);
            let v = triangle_family_ratio(a);
            assert!(v > prev && v <= 1.125 + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn scale_laws() {
        assert!(rel(theorem4_bound(3, 1.0, 1.0, 1.0).unwrap(), std::f64::consts::E) < 1e-14);
        // dilation covariance: scaling Ω by λ multiplies the bound by λ
        for n in [2usize, 3] {
            let (vol, delta, c) = (2.3, 0.4, 0.7);
            let lam: f64 = 1.7;
            let b1 = theorem4_bound(n, vol, delta, c).unwrap();
            let b2 = theorem4_bound(n, lam.powi(n as i32) * vol, lam * delta, c).unwrap();
            assert!(rel(b2, lam * b1) < 1e-12, "n={n}");
        }
        assert!(rel(theorem3_scale(3, 8.0).unwrap(), 2.0) < 1e-14);
        assert!(theorem3_scale(2, 1.0).is_err());
    }

    #[test]
    fn verify_1d_examples() {
        assert!(verify_1d(|x| x * x, 0.0, 1.0).unwrap());
        assert!(verify_1d(|x| x.abs(), -1.0, 2.0).unwrap());
        // affine: equality to 1e-12
        let f = |x: f64| 3.0 * x - 1.0;
        let mean = integrate_1d(f, 0.2, 1.7, 1e-14) / 1.5;
        assert!((mean - 0.5 * (f(0.2) + f(1.7))).abs() < 1e-12);
        assert!(verify_1d(f, 0.2, 1.7).unwrap());
    }

    #[test]
    fn slice_identity_values() {
        for n in [3usize, 4, 5] {
            for c in [0.5, 1.0, 2.0] {
                let v = slice_integral_identity(n, c).unwrap();
                let want = 1.0 / (n as f64 - 2.0);
                assert!(
                    (v - want).abs() < 1e-8,
                    "n={n}, c={c}: {v} vs {want}"
                );
            }
        }
        // c-independence to 1e-8
        let a = slice_integral_identity(4, 0.17).unwrap();
        let b = slice_integral_identity(4, 13.0).unwrap();
        assert!((a - b).abs() < 1e-8);
        assert!(slice_integral_identity(2, 1.0).is_err());
    }

    #[test]
    fn poisson_kernel_values() {
        assert!(half_space_poisson_kernel(3, &[0.0, 0.0, -1.0]).is_err());
        // normalization over the boundary hyperplane at x = (0,0,1), n = 3:
        // ∫ p dξ = Γ(1.5) π^{-1.5} ∫∫ (1+|ξ|²)^{-3/2} = 1, checked by polar
        // quadrature of the radial profile.
        let pk = |rho: f64| half_space_poisson_kernel(3, &[rho, 0.0, 1.0]).unwrap();
        // substitute r = s/(1-s) to reach the whole plane
        let integral = integrate_1d(
            |s: f64| {
                let r = s / (1.0 - s);
                pk(r) * r * std::f64::consts::TAU / ((1.0 - s) * (1.0 - s))
            },
            0.0,
            1.0 - 1e-9,
            1e-12,
        );
        assert!((integral - 1.0).abs() < 1e-4, "normalization {integral}");
    }

    #[test]
    fn corollary_unit_square_at_origin() {
        let sq =
            ConvexBody::polygon2(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let rep = corollary_check(&sq).unwrap();
        let want = 0.5f64.hypot(0.5);
        assert!((rep.interior_norm - want).abs() < 1e-12);
        assert!((rep.boundary_norm - want).abs() < 1e-12);
        assert!(rep.ok);
        // body dipping into the negative orthant is rejected
        let shifted =
            ConvexBody::polygon2(vec![[-0.5, 0.0], [0.5, 0.0], [0.5, 1.0], [-0.5, 1.0]]).unwrap();
        assert!(matches!(
            corollary_check(&shifted),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
