//! Randomized search for a metric midpoint off the canonical geodesic.
//!
//! Midpoint sets are lower-dimensional, so plain random points never land on one.
//! Each random start `zeta + delta u` is instead pushed onto the midpoint set
//! `B(x, r) ∩ B(y, r)`, `r = d(x, y) / 2`, by cyclic projections. Thompson balls are
//! order intervals `e^-r x <= w <= e^r x`, so the set is `{w : a_i <= w <= b_j}`.
//!
//! For curved cones the intervals pinch: whenever `b_j - a_i` lies on the boundary
//! of the cone, every feasible `w` has `w - a_i` in the face of `b_j - a_i`. These
//! implicit equalities are read off the data once and imposed exactly, and the
//! projections run inside the resulting affine subspace, where they converge.
//!
//! A hit only counts if it passes the exact distance test, so a returned point is
//! always a genuine witness; finding nothing certifies nothing.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::{ConeSpec, Family};
use crate::error::Result;
use crate::geodesics::{self, GeodesicPath};
use crate::linalg;
use crate::point::Point;
use crate::sampling;

const MIDPOINT_TOL: f64 = 1e-9;
const OFF_PATH_MIN: f64 = 1e-4;
const MIN_STEP: f64 = 1e-4;
const MAX_SWEEPS: usize = 200;
/// Relative eigenvalue size below which `b - a` is treated as touching the boundary.
const PINCH_TOL: f64 = 1e-9;

/// Constraints describing the midpoint set.
enum MidpointSet {
    /// `lower_i <= rows_i . w <= upper_i` with unit rows.
    Slabs {
        rows: Vec<Point>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// `w - a in C` for each floor `a`, `b - w in C` for each ceiling `b`, and `w` in
    /// the affine subspace of implicit equalities.
    Intervals {
        family: Family,
        floors: [Point; 2],
        ceilings: [Point; 2],
        equalities: Option<AffineProjector>,
    },
}

/// Orthogonal projection onto `{w : A w = c}`, moving only along the columns of
/// `basis` (the symmetric matrices for the PSD cone).
struct AffineProjector {
    a: DMatrix<f64>,
    rhs: DVector<f64>,
    basis: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl AffineProjector {
    fn new(eqs: Vec<(Vec<f64>, f64)>, basis: DMatrix<f64>) -> Option<Self> {
        if eqs.is_empty() {
            return None;
        }
        let n = basis.nrows();
        let a = DMatrix::from_fn(eqs.len(), n, |i, j| eqs[i].0[j]);
        let rhs = DVector::from_iterator(eqs.len(), eqs.iter().map(|e| e.1));
        let pinv = (&a * &basis).pseudo_inverse(1e-10).ok()?;
        Some(AffineProjector {
            a,
            rhs,
            basis,
            pinv,
        })
    }

    fn project(&self, w: &Point) -> Point {
        let wv = DVector::from_column_slice(w.coords());
        let resid = &self.rhs - &self.a * &wv;
        let step = &self.basis * (&self.pinv * resid);
        Point::new((wv + step).iter().copied().collect())
    }
}

impl MidpointSet {
    fn new(cone: &ConeSpec, x: &Point, y: &Point, r: f64) -> Self {
        let (lo, hi) = ((-r).exp(), r.exp());
        if let Some(rows) = cone.facet_rows() {
            let mut unit = Vec::with_capacity(rows.len());
            let mut lower = Vec::with_capacity(rows.len());
            let mut upper = Vec::with_capacity(rows.len());
            for row in rows {
                let norm = row.norm();
                let (fx, fy) = (row.dot(x) / norm, row.dot(y) / norm);
                let (l, u) = (lo * fx.max(fy), hi * fx.min(fy));
                let (l, u) = if l > u {
                    ((l + u) / 2.0, (l + u) / 2.0)
                } else {
                    (l, u)
                };
                unit.push(row.scale(1.0 / norm));
                lower.push(l);
                upper.push(u);
            }
            return MidpointSet::Slabs {
                rows: unit,
                lower,
                upper,
            };
        }
        let family = cone.family();
        let floors = [x.scale(lo), y.scale(lo)];
        let ceilings = [x.scale(hi), y.scale(hi)];
        let scale = x.sup_norm().max(y.sup_norm()) * hi;
        let mut eqs = Vec::new();
        for a in &floors {
            for b in &ceilings {
                for dir in face_normals(family, cone, &(b - a), PINCH_TOL * scale) {
                    // dir . (w - a) = 0
                    let rhs = dir.iter().zip(a.iter()).map(|(p, q)| p * q).sum();
                    eqs.push((dir, rhs));
                }
            }
        }
        let n = cone.ambient_dim();
        let basis = match cone.matrix_order() {
            Some(k) => symmetric_basis(k),
            None => DMatrix::identity(n, n),
        };
        MidpointSet::Intervals {
            family,
            floors,
            ceilings,
            equalities: AffineProjector::new(eqs, basis),
        }
    }

    fn restrict(&self, w: &Point) -> Point {
        match self {
            MidpointSet::Intervals {
                equalities: Some(eq),
                ..
            } => eq.project(w),
            _ => w.clone(),
        }
    }

    fn sweep(&self, w: &mut Point, cone: &ConeSpec) {
        match self {
            MidpointSet::Slabs { rows, lower, upper } => {
                for ((row, &l), &u) in rows.iter().zip(lower).zip(upper) {
                    let v = row.dot(w);
                    let target = v.clamp(l, u);
                    if target != v {
                        *w = w.combine(1.0, row, target - v);
                    }
                }
            }
            MidpointSet::Intervals {
                family,
                floors,
                ceilings,
                ..
            } => {
                for a in floors {
                    // w <- a + proj(w - a)
                    *w = self.restrict(&(a + &project(*family, cone, &(&*w - a))));
                }
                for b in ceilings {
                    // w <- b - proj(b - w)
                    *w = self.restrict(&(b - &project(*family, cone, &(b - &*w))));
                }
            }
        }
    }
}

/// Columns span the symmetric `k x k` matrices inside `R^(k*k)`.
fn symmetric_basis(k: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(k * k, k * (k + 1) / 2);
    let mut col = 0;
    for p in 0..k {
        for q in p..k {
            b[(p * k + q, col)] = 1.0;
            b[(q * k + p, col)] = 1.0;
            col += 1;
        }
    }
    b
}

/// Linear functionals vanishing on the span of the smallest face of the cone
/// containing `p`, treating parts of `p` within `tol` of the boundary as on it.
fn face_normals(family: Family, cone: &ConeSpec, p: &Point, tol: f64) -> Vec<Vec<f64>> {
    match family {
        Family::Psd => {
            // face = {M : M v = 0 for v in the (near) kernel of p}
            let k = cone.matrix_order().unwrap_or(1);
            let m = linalg::symmetrize(&linalg::square(k, p.coords()));
            let (vals, vecs) = linalg::sym_eigen(&m);
            let mut out = Vec::new();
            for (j, &val) in vals.iter().enumerate() {
                if val > tol {
                    continue;
                }
                let v = vecs.column(j);
                for row_idx in 0..k {
                    let mut row = vec![0.0; k * k];
                    for q in 0..k {
                        row[row_idx * k + q] = v[q];
                    }
                    out.push(row);
                }
            }
            out
        }
        Family::Lorentz => {
            let n = p.len();
            let s = p[0];
            let w = &p.coords()[1..];
            let nw = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            if s - nw > tol {
                return Vec::new();
            }
            let unit_rows = || {
                (0..n)
                    .map(|i| {
                        let mut r = vec![0.0; n];
                        r[i] = 1.0;
                        r
                    })
                    .collect()
            };
            if s + nw <= tol || nw == 0.0 {
                return unit_rows();
            }
            // face is the ray through (1, w/|w|)
            let mut ray = vec![1.0];
            ray.extend(w.iter().map(|v| v / nw));
            linalg::null_space(&[ray], n, 1e-12)
                .map(|(_, basis)| basis)
                .unwrap_or_else(|_| unit_rows())
        }
        Family::Orthant | Family::Polyhedral => Vec::new(),
    }
}

/// Euclidean projection onto a Lorentz or PSD cone.
fn project(family: Family, cone: &ConeSpec, p: &Point) -> Point {
    match family {
        Family::Lorentz => {
            let s = p[0];
            let nw = p.coords()[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
            if nw <= s {
                p.clone()
            } else if nw <= -s {
                Point::zeros(p.len())
            } else {
                let a = 0.5 * (s + nw);
                let mut c = vec![a];
                c.extend(p.coords()[1..].iter().map(|v| a * v / nw));
                Point::new(c)
            }
        }
        Family::Psd => {
            let k = cone.matrix_order().unwrap_or(1);
            let m = linalg::symmetrize(&linalg::square(k, p.coords()));
            if m.clone().cholesky().is_some() {
                return Point::new(linalg::row_major(&m));
            }
            let (vals, vecs) = linalg::sym_eigen(&m);
            let clipped =
                DMatrix::from_diagonal(&DVector::from_iterator(k, vals.iter().map(|v| v.max(0.0))));
            let proj = &vecs * clipped * vecs.transpose();
            Point::new(linalg::row_major(&linalg::symmetrize(&proj)))
        }
        Family::Orthant | Family::Polyhedral => unreachable!("polyhedral sets use slabs"),
    }
}

fn random_direction(cone: &ConeSpec, rng: &mut ChaCha8Rng) -> Point {
    match cone.matrix_order() {
        Some(k) => {
            let g = DMatrix::from_vec(k, k, sampling::gaussian_vector(k * k, rng));
            let s = Point::new(linalg::row_major(&linalg::symmetrize(&g)));
            s.scale(1.0 / s.sup_norm())
        }
        None => {
            let u = sampling::random_unit(cone.ambient_dim(), rng);
            u.scale(1.0 / u.sup_norm())
        }
    }
}

/// Looks for a metric midpoint of `x` and `y` off the canonical geodesic.
///
/// Draws `samples` starts `zeta + delta u` (`zeta` the canonical midpoint, `u` a random
/// unit-sup direction, `delta / |zeta|_inf` log-uniform in `[1e-4, radius]`), projects
/// each onto the midpoint set and returns the first interior point with
/// `|d(x,w) + d(w,y) - d(x,y)| <= 1e-9` whose relative sup distance from the canonical
/// path is at least `1e-4`.
pub fn midpoint_oracle(
    cone: &ConeSpec,
    x: &Point,
    y: &Point,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Result<Option<Point>> {
    let d = cone.thompson_distance(x, y)?;
    if d == 0.0 {
        return Ok(None);
    }
    let path = geodesics::geodesic(cone, x, y)?;
    let zeta = path.midpoint();
    let path_scale = x.sup_norm().max(y.sup_norm());
    let zeta_scale = zeta.sup_norm();
    let set = MidpointSet::new(cone, x, y, 0.5 * d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (log_lo, log_hi) = (MIN_STEP.ln(), radius.max(MIN_STEP).ln());
    // Projections are nonexpansive towards points of the set, zeta included, so
    // once an iterate is this close to zeta it can never be accepted.
    let hopeless = OFF_PATH_MIN * path_scale;

    for _ in 0..samples {
        let delta = zeta_scale * rng.random_range(log_lo..=log_hi).exp();
        let u = random_direction(cone, &mut rng);
        let mut w = set.restrict(&zeta.combine(1.0, &u, delta));
        let mut hopeless_start = false;
        for _ in 0..MAX_SWEEPS {
            if (&w - &zeta).norm() < hopeless {
                hopeless_start = true;
                break;
            }
            let before = w.clone();
            set.sweep(&mut w, cone);
            if w.sup_distance(&before) <= 1e-15 * zeta_scale {
                break;
            }
        }
        if hopeless_start {
            continue;
        }
        if let Some(found) = accept(cone, x, y, d, &path, w) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn accept(
    cone: &ConeSpec,
    x: &Point,
    y: &Point,
    d: f64,
    path: &GeodesicPath,
    w: Point,
) -> Option<Point> {
    if w.sup_distance(path.start())
        .min(w.sup_distance(&path.end()))
        == 0.0
    {
        return None;
    }
    if !cone.classify(&w).ok()?.is_interior() {
        return None;
    }
    let excess = cone.thompson_distance(x, &w).ok()? + cone.thompson_distance(&w, y).ok()? - d;
    if excess.abs() > MIDPOINT_TOL {
        return None;
    }
    (path.relative_sup_distance(&w) >= OFF_PATH_MIN).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_witness_for_non_unique_orthant_pair() {
        let c = ConeSpec::orthant(3).unwrap();
        let (x, y) = (Point::from([1.0, 1.0, 1.0]), Point::from([2.0, 0.5, 1.0]));
        let w = midpoint_oracle(&c, &x, &y, 10_000, 0.5, 0)
            .unwrap()
            .unwrap();
        let d = c.thompson_distance(&x, &y).unwrap();
        let s = c.thompson_distance(&x, &w).unwrap() + c.thompson_distance(&w, &y).unwrap();
        assert!((s - d).abs() <= 1e-9);
    }

    #[test]
    fn finds_witness_for_three_valued_matrix_spectrum() {
        let c = ConeSpec::psd(3).unwrap();
        let (x, y) = (Point::diag(&[1.0, 1.0, 1.0]), Point::diag(&[2.5, 1.3, 0.4]));
        assert!(midpoint_oracle(&c, &x, &y, 10_000, 0.5, 0)
            .unwrap()
            .is_some());
    }

    #[test]
    fn no_witness_for_unique_pairs() {
        let c = ConeSpec::orthant(3).unwrap();
        let (x, y) = (Point::from([1.0, 1.0, 1.0]), Point::from([2.0, 0.5, 0.5]));
        assert_eq!(midpoint_oracle(&c, &x, &y, 10_000, 0.5, 0).unwrap(), None);
        let p = ConeSpec::psd(2).unwrap();
        let (x, y) = (Point::diag(&[1.0, 1.0]), Point::diag(&[2.0, 0.5]));
        assert_eq!(midpoint_oracle(&p, &x, &y, 10_000, 0.5, 0).unwrap(), None);
        let ray = Point::from([1.0, 2.0, 3.0]);
        assert_eq!(
            midpoint_oracle(&c, &ray, &ray.scale(2.0), 10_000, 0.5, 0).unwrap(),
            None
        );
    }
}
