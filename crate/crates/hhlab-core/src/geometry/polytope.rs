//! H-representation polytopes at desk scale (n ≤ 6): combinatorial vertex
//! enumeration, boundedness certificates, exact volume/centroid/facet data via
//! recursive simplicial decomposition, and the Chebyshev-center program solved
//! by basis enumeration.

use super::vecmath::{dist, dot, norm, normalize, scale as vscale};
use super::Halfspace;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

const EPS: f64 = 1e-9;

/// Facet of a polytope: supporting halfspace, exact (n−1)-measure, centroid,
/// and a simplicial decomposition embedded in the ambient space.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
    pub centroid: Vec<f64>,
    /// (dim−1)-simplices, each `dim` points in ambient coordinates.
    pub simplices: Vec<Vec<Vec<f64>>>,
}

/// Full combinatorial/metric analysis of a bounded H-polytope.
#[derive(Clone, Debug)]
pub struct PolyData {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub volume: f64,
    pub centroid: Vec<f64>,
    pub surface: f64,
    pub boundary_centroid: Vec<f64>,
    pub facets: Vec<Facet>,
    /// dim-simplices (dim+1 points each) decomposing the polytope.
    pub simplices: Vec<Vec<Vec<f64>>>,
}

fn normalized(hs: &[Halfspace]) -> Result<Vec<Halfspace>> {
    hs.iter()
        .map(|h| {
            let n = norm(&h.normal);
            if n < 1e-12 {
                return Err(Error::InvalidDomain("zero halfspace normal".into()));
            }
            Ok(Halfspace {
                normal: vscale(&h.normal, 1.0 / n),
                offset: h.offset / n,
            })
        })
        .collect()
}

fn combinations(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] + 1 <= m - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

fn n_choose_k(m: usize, k: usize) -> f64 {
    let mut v = 1.0f64;
    for i in 0..k {
        v *= (m - i) as f64 / (i + 1) as f64;
    }
    v
}

/// All vertices of {x : a_i·x ≤ b_i}, assuming unit normals.
pub fn enumerate_vertices(dim: usize, hs: &[Halfspace]) -> Result<Vec<Vec<f64>>> {
    let m = hs.len();
    if m < dim {
        return Err(Error::InvalidDomain("too few halfspaces (unbounded)".into()));
    }
    if n_choose_k(m, dim) > 2e7 {
        return Err(Error::InvalidArgument(format!(
            "vertex enumeration over C({m},{dim}) subsets exceeds desk scale"
        )));
    }
    let offset_scale = hs.iter().map(|h| h.offset.abs()).fold(1.0, f64::max);
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut mat = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    for combo in combinations(m, dim) {
        for (r, &i) in combo.iter().enumerate() {
            for c in 0..dim {
                mat[(r, c)] = hs[i].normal[c];
            }
            rhs[r] = hs[i].offset;
        }
        let lu = mat.clone().full_piv_lu();
        if lu.determinant().abs() < 1e-10 {
            continue;
        }
        let Some(x) = lu.solve(&rhs) else { continue };
        let v: Vec<f64> = x.iter().copied().collect();
        let vscale_local = v.iter().map(|c| c.abs()).fold(offset_scale, f64::max);
        let tol = EPS * vscale_local.max(1.0);
        if hs.iter().all(|h| dot(&h.normal, &v) <= h.offset + tol) {
            if !vertices.iter().any(|w| dist(w, &v) < 10.0 * tol) {
                vertices.push(v);
            }
        }
    }
    Ok(vertices)
}

/// Boundedness certificate: the recession cone {d : A d ≤ 0} is nonzero iff
/// the normals are rank-deficient (it contains a line) or some (n−1)-subset's
/// nullspace direction satisfies all inequalities (an extreme ray).
pub fn recession_ray(dim: usize, hs: &[Halfspace]) -> Option<Vec<f64>> {
    let m = hs.len();
    if m < dim {
        return Some(vec![0.0; dim]); // trivially unbounded, direction unknown
    }
    let a = DMatrix::<f64>::from_fn(m, dim, |r, c| hs[r].normal[c]);
    let svd = a.clone().svd(false, true);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-10 * smax)
        .count();
    if rank < dim {
        // lineality direction: a right-singular vector for a tiny singular value
        let vt = svd.v_t.unwrap();
        let d: Vec<f64> = (0..dim).map(|c| vt[(rank.min(dim - 1), c)]).collect();
        return Some(d);
    }
    if dim == 1 {
        return None; // full-rank 1-D normals cut both directions
    }
    for combo in combinations(m, dim - 1) {
        // pad with a zero row so the full right-singular basis (including the
        // nullspace direction) is available
        let sub_m = DMatrix::<f64>::from_fn(dim, dim, |r, c| {
            if r < dim - 1 {
                hs[combo[r]].normal[c]
            } else {
                0.0
            }
        });
        let svd = sub_m.svd(false, true);
        let vt = svd.v_t.unwrap();
        let d: Vec<f64> = (0..dim).map(|c| vt[(dim - 1, c)]).collect();
        let Some(d) = normalize(&d) else { continue };
        for cand in [d.clone(), vscale(&d, -1.0)] {
            if hs.iter().all(|h| dot(&h.normal, &cand) <= EPS) {
                return Some(cand);
            }
        }
    }
    None
}

/// Chebyshev center of {a_i·x ≤ b_i} with unit normals: maximize r subject to
/// a_i·x + r ≤ b_i, r ≥ 0, by enumerating (dim+1)-element active sets.
pub fn chebyshev_center(dim: usize, hs: &[Halfspace]) -> Result<(f64, Vec<f64>)> {
    let hs = normalized(hs)?;
    let m = hs.len();
    let lifted_dim = dim + 1;
    // rows: [a_i, 1 | b_i] for each halfspace plus [0, -1 | 0] for r >= 0
    let row = |i: usize| -> (Vec<f64>, f64) {
        if i < m {
            let mut a = hs[i].normal.clone();
            a.push(1.0);
            (a, hs[i].offset)
        } else {
            let mut a = vec![0.0; dim];
            a.push(-1.0);
            (a, 0.0)
        }
    };
    if n_choose_k(m + 1, lifted_dim) > 2e7 {
        return Err(Error::InvalidArgument(
            "Chebyshev basis enumeration exceeds desk scale".into(),
        ));
    }
    let offset_scale = hs.iter().map(|h| h.offset.abs()).fold(1.0, f64::max);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut mat = DMatrix::<f64>::zeros(lifted_dim, lifted_dim);
    let mut rhs = DVector::<f64>::zeros(lifted_dim);
    for combo in combinations(m + 1, lifted_dim) {
        for (r, &i) in combo.iter().enumerate() {
            let (a, b) = row(i);
            for c in 0..lifted_dim {
                mat[(r, c)] = a[c];
            }
            rhs[r] = b;
        }
        let lu = mat.clone().full_piv_lu();
        if lu.determinant().abs() < 1e-12 {
            continue;
        }
        let Some(x) = lu.solve(&rhs) else { continue };
        let r = x[dim];
        let tol = EPS * offset_scale.max(x.amax()).max(1.0);
        if r < -tol {
            continue;
        }
        let feasible = (0..m + 1).all(|i| {
            let (a, b) = row(i);
            (0..lifted_dim).map(|c| a[c] * x[c]).sum::<f64>() <= b + tol
        });
        if feasible && best.as_ref().map_or(true, |(br, _)| r > *br) {
            best = Some((r.max(0.0), x.iter().take(dim).copied().collect()));
        }
    }
    best.ok_or_else(|| Error::InvalidDomain("infeasible halfspace system".into()))
}

/// Orthonormal basis of the hyperplane orthogonal to `a` (columns of an
/// n×(n−1) matrix), via QR of a full-rank completion.
fn hyperplane_basis(a: &[f64]) -> DMatrix<f64> {
    let dim = a.len();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for r in 0..dim {
        m[(r, 0)] = a[r];
    }
    // complete with identity columns, then orthonormalize
    for c in 1..dim {
        m[(c - 1, c)] = 1.0;
        // avoid near-parallel completion column
        if a[c - 1].abs() > 0.9 {
            m[(c - 1, c)] = 0.0;
            m[(c % dim, c)] = 1.0;
        }
    }
    let qr = m.qr();
    let q = qr.q();
    q.columns(1, dim - 1).into_owned()
}

fn simplex_measure(points: &[Vec<f64>]) -> f64 {
    let k = points.len() - 1;
    if k == 0 {
        return 0.0;
    }
    let dim = points[0].len();
    let m = DMatrix::<f64>::from_fn(dim, k, |r, c| points[c + 1][r] - points[0][r]);
    if k == dim {
        let det = m.determinant().abs();
        let mut fact = 1.0;
        for i in 1..=k {
            fact *= i as f64;
        }
        det / fact
    } else {
        // k-measure in ambient dim: sqrt(det GramianT)
        let g = m.transpose() * &m;
        let det = g.determinant().max(0.0);
        let mut fact = 1.0;
        for i in 1..=k {
            fact *= i as f64;
        }
        det.sqrt() / fact
    }
}

/// Analyze a bounded full-dimensional H-polytope; errors on unbounded or
/// degenerate input.
pub fn analyze(dim: usize, halfspaces: &[Halfspace]) -> Result<PolyData> {
    if dim < 1 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    if dim > 6 {
        return Err(Error::Unsupported(
            "H-polytopes supported up to dimension 6".into(),
        ));
    }
    let hs = normalized(halfspaces)?;
    if let Some(_d) = recession_ray(dim, &hs) {
        return Err(Error::InvalidDomain("polytope is unbounded".into()));
    }
    analyze_bounded(dim, &hs)
}

fn analyze_bounded(dim: usize, hs: &[Halfspace]) -> Result<PolyData> {
    let vertices = enumerate_vertices(dim, hs)?;
    if vertices.len() < dim + 1 {
        return Err(Error::InvalidDomain(format!(
            "degenerate polytope: only {} vertices in dimension {dim}",
            vertices.len()
        )));
    }
    let interior: Vec<f64> = (0..dim)
        .map(|c| vertices.iter().map(|v| v[c]).sum::<f64>() / vertices.len() as f64)
        .collect();
    let vert_scale = vertices
        .iter()
        .flat_map(|v| v.iter().map(|c| c.abs()))
        .fold(1.0, f64::max);
    let on_tol = 100.0 * EPS * vert_scale;

    let min_slack = hs
        .iter()
        .map(|h| h.offset - dot(&h.normal, &interior))
        .fold(f64::INFINITY, f64::min);
    if min_slack <= 0.0 {
        return Err(Error::InvalidDomain(
            "polytope has empty interior".into(),
        ));
    }

    let mut facets: Vec<Facet> = Vec::new();
    for h in hs {
        let on: Vec<&Vec<f64>> = vertices
            .iter()
            .filter(|v| (dot(&h.normal, v) - h.offset).abs() <= on_tol)
            .collect();
        if on.len() < dim {
            continue; // redundant halfspace
        }
        let p0 = on[0].clone();
        if dim == 1 {
            facets.push(Facet {
                normal: h.normal.clone(),
                offset: h.offset,
                area: 1.0, // 0-dimensional counting measure
                centroid: p0.clone(),
                simplices: vec![vec![p0.clone()]],
            });
            continue;
        }
        let basis = hyperplane_basis(&h.normal); // dim x (dim-1)
        let embed = |y: &[f64]| -> Vec<f64> {
            let mut x = p0.clone();
            for (c, yc) in y.iter().enumerate() {
                for r in 0..dim {
                    x[r] += basis[(r, c)] * yc;
                }
            }
            x
        };
        if dim == 2 {
            // facet is a segment: project on the single basis vector
            let coord = |v: &Vec<f64>| -> f64 {
                (0..dim).map(|r| basis[(r, 0)] * (v[r] - p0[r])).sum()
            };
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in &on {
                let t = coord(v);
                lo = lo.min(t);
                hi = hi.max(t);
            }
            let a_pt = embed(&[lo]);
            let b_pt = embed(&[hi]);
            let area = hi - lo;
            if area <= on_tol {
                continue;
            }
            facets.push(Facet {
                normal: h.normal.clone(),
                offset: h.offset,
                area,
                centroid: vec![(a_pt[0] + b_pt[0]) / 2.0, (a_pt[1] + b_pt[1]) / 2.0],
                simplices: vec![vec![a_pt, b_pt]],
            });
            continue;
        }
        // restrict the other halfspaces onto the hyperplane and recurse
        let mut sub_hs: Vec<Halfspace> = Vec::new();
        for g in hs {
            if std::ptr::eq(g, h) {
                continue;
            }
            let an: Vec<f64> = (0..dim - 1)
                .map(|c| (0..dim).map(|r| basis[(r, c)] * g.normal[r]).sum())
                .collect();
            let nn = norm(&an);
            if nn < 1e-9 {
                continue;
            }
            sub_hs.push(Halfspace {
                normal: vscale(&an, 1.0 / nn),
                offset: (g.offset - dot(&g.normal, &p0)) / nn,
            });
        }
        match analyze_bounded(dim - 1, &sub_hs) {
            Ok(sub) => {
                if sub.volume <= on_tol {
                    continue;
                }
                let centroid = embed(&sub.centroid);
                let simplices: Vec<Vec<Vec<f64>>> = sub
                    .simplices
                    .iter()
                    .map(|s| s.iter().map(|y| embed(y)).collect())
                    .collect();
                facets.push(Facet {
                    normal: h.normal.clone(),
                    offset: h.offset,
                    area: sub.volume,
                    centroid,
                    simplices,
                });
            }
            Err(Error::InvalidDomain(_)) => continue, // degenerate facet → redundant
            Err(e) => return Err(e),
        }
    }
    if facets.is_empty() {
        return Err(Error::InvalidDomain("no proper facets found".into()));
    }

    // cone decomposition from the interior point
    let mut volume = 0.0;
    let mut centroid = vec![0.0; dim];
    let mut simplices: Vec<Vec<Vec<f64>>> = Vec::new();
    for f in &facets {
        for s in &f.simplices {
            let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
            simplex.push(interior.clone());
            simplex.extend(s.iter().cloned());
            let v = simplex_measure(&simplex);
            if v <= 0.0 {
                continue;
            }
            for c in 0..dim {
                let sc: f64 = simplex.iter().map(|p| p[c]).sum::<f64>() / (dim as f64 + 1.0);
                centroid[c] += v * sc;
            }
            volume += v;
            simplices.push(simplex);
        }
    }
    if volume <= 0.0 {
        return Err(Error::InvalidDomain("zero volume".into()));
    }
    for c in centroid.iter_mut() {
        *c /= volume;
    }
    let surface: f64 = facets.iter().map(|f| f.area).sum();
    let mut bcent = vec![0.0; dim];
    for f in &facets {
        for c in 0..dim {
            bcent[c] += f.area * f.centroid[c];
        }
    }
    for c in bcent.iter_mut() {
        *c /= surface;
    }

    Ok(PolyData {
        dim,
        vertices,
        volume,
        centroid,
        surface,
        boundary_centroid: bcent,
        facets,
        simplices,
    })
}

/// Volume of the polytope, or 0 when the system is infeasible/degenerate.
pub fn try_volume(dim: usize, hs: &[Halfspace]) -> f64 {
    if dim == 1 {
        // interval: max lower bound vs min upper bound
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for h in hs {
            let a = h.normal[0];
            if a.abs() < 1e-12 {
                if h.offset < 0.0 {
                    return 0.0;
                }
                continue;
            }
            let t = h.offset / a;
            if a > 0.0 {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }
        }
        return (hi - lo).max(0.0);
    }
    match normalized(hs).and_then(|h| analyze_bounded(dim, &h)) {
        Ok(p) => p.volume,
        Err(_) => 0.0,
    }
}

/// Parameter range of the line p + t d inside the polytope.
pub fn clip_line(hs: &[Halfspace], p: &[f64], d: &[f64]) -> Option<(f64, f64)> {
    let mut t_min = f64::NEG_INFINITY;
    let mut t_max = f64::INFINITY;
    for h in hs {
        let denom = dot(&h.normal, d);
        let num = h.offset - dot(&h.normal, p);
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

pub fn support(vertices: &[Vec<f64>], d: &[f64]) -> f64 {
    vertices
        .iter()
        .map(|v| dot(v, d))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn diameter(vertices: &[Vec<f64>]) -> f64 {
    let mut dm = 0.0f64;
    for (i, a) in vertices.iter().enumerate() {
        for b in vertices.iter().skip(i + 1) {
            dm = dm.max(dist(a, b));
        }
    }
    dm
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cube_halfspaces(dim: usize) -> Vec<Halfspace> {
        let mut hs = Vec::new();
        for i in 0..dim {
            let mut n = vec![0.0; dim];
            n[i] = 1.0;
            hs.push(Halfspace {
                normal: n.clone(),
                offset: 1.0,
            });
            n[i] = -1.0;
            hs.push(Halfspace {
                normal: n,
                offset: 0.0,
            });
        }
        hs
    }

    #[test]
    fn unit_cube_2d_3d_4d() {
        for dim in 2..=4 {
            let p = analyze(dim, &cube_halfspaces(dim)).unwrap();
            assert_eq!(p.vertices.len(), 1 << dim);
            assert!((p.volume - 1.0).abs() < 1e-10, "dim {dim}: {}", p.volume);
            assert!((p.surface - 2.0 * dim as f64).abs() < 1e-9);
            for c in &p.centroid {
                assert!((c - 0.5).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn simplex_volume_3d() {
        // x,y,z >= 0, x+y+z <= 1 → volume 1/6
        let mut hs = Vec::new();
        for i in 0..3 {
            let mut n = vec![0.0; 3];
            n[i] = -1.0;
            hs.push(Halfspace { normal: n, offset: 0.0 });
        }
        let s3 = 3.0f64.sqrt();
        hs.push(Halfspace {
            normal: vec![1.0 / s3; 3],
            offset: 1.0 / s3,
        });
        let p = analyze(3, &hs).unwrap();
        assert!((p.volume - 1.0 / 6.0).abs() < 1e-10);
        assert_eq!(p.vertices.len(), 4);
        for c in &p.centroid {
            assert!((c - 0.25).abs() < 1e-10);
        }
    }

    #[test]
    fn unbounded_detected() {
        // only lower bounds: recession along +x
        let hs = vec![
            Halfspace {
                normal: vec![-1.0, 0.0],
                offset: 0.0,
            },
            Halfspace {
                normal: vec![0.0, -1.0],
                offset: 0.0,
            },
            Halfspace {
                normal: vec![0.0, 1.0],
                offset: 1.0,
            },
        ];
        assert!(matches!(
            analyze(2, &hs),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn chebyshev_center_of_cube_and_slab() {
        let (r, c) = chebyshev_center(2, &cube_halfspaces(2)).unwrap();
        assert!((r - 0.5).abs() < 1e-9);
        assert!((c[0] - 0.5).abs() < 1e-9 && (c[1] - 0.5).abs() < 1e-9);

        // rectangle [0,4]x[0,1]: inradius 1/2
        let hs = vec![
            Halfspace { normal: vec![1.0, 0.0], offset: 4.0 },
            Halfspace { normal: vec![-1.0, 0.0], offset: 0.0 },
            Halfspace { normal: vec![0.0, 1.0], offset: 1.0 },
            Halfspace { normal: vec![0.0, -1.0], offset: 0.0 },
        ];
        let (r, c) = chebyshev_center(2, &hs).unwrap();
        assert!((r - 0.5).abs() < 1e-9);
        assert!((c[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn redundant_halfspace_ignored() {
        let mut hs = cube_halfspaces(2);
        hs.push(Halfspace {
            normal: vec![1.0, 0.0],
            offset: 5.0,
        });
        let p = analyze(2, &hs).unwrap();
        assert!((p.volume - 1.0).abs() < 1e-10);
        assert_eq!(p.facets.len(), 4);
    }
}
