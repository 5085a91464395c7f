//! Known Thompson-metric isometries and a sampling test for projective linearity.

use std::fmt;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::{ConeSpec, Family};
use crate::error::{domain, input, Error, Result};
use crate::linalg;
use crate::point::Point;
use crate::sampling;

/// Number of interior samples used to validate a map at construction.
pub const VALIDATION_SAMPLES: usize = 100;
/// Normalized residual at or below which a fit counts as linear.
pub const LINEAR_TOL: f64 = 1e-6;
/// Normalized residual at or above which a fit counts as not linear.
pub const NONLINEAR_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// Square matrix acting on the ambient coordinates.
    Linear(Vec<Vec<f64>>),
    /// `x -> P(g) x` for an interior `g` of a symmetric cone.
    Congruence(Point),
    /// Jordan inverse `x -> x^{-1}`.
    Inversion,
    /// Orthant map inverting one coordinate (1-based).
    PartialInversion(usize),
    /// Maps applied left to right.
    Composite(Vec<ConeMap>),
}

/// A self-map of a cone's interior.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeMap {
    cone: ConeSpec,
    kind: MapKind,
}

impl ConeMap {
    pub fn linear(cone: &ConeSpec, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = cone.ambient_dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return input(format!("linear map must be a {n}x{n} matrix"));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return input("linear map has non-finite entries");
        }
        Self::validated(cone, MapKind::Linear(rows))
    }

    pub fn congruence(cone: &ConeSpec, g: Point) -> Result<Self> {
        if cone.jordan().is_none() {
            return domain("congruence needs a symmetric cone");
        }
        if !(cone.margin(&g)? > 0.0) {
            return domain("congruence element must be interior");
        }
        Self::validated(cone, MapKind::Congruence(g))
    }

    pub fn inversion(cone: &ConeSpec) -> Result<Self> {
        if cone.jordan().is_none() {
            return domain("inversion needs a symmetric cone");
        }
        Self::validated(cone, MapKind::Inversion)
    }

    pub fn partial_inversion(cone: &ConeSpec, index: usize) -> Result<Self> {
        if cone.family() != Family::Orthant {
            return domain("partial inversion is defined on the orthant");
        }
        if index == 0 || index > cone.ambient_dim() {
            return input(format!(
                "coordinate index {index} out of range 1..={}",
                cone.ambient_dim()
            ));
        }
        Self::validated(cone, MapKind::PartialInversion(index))
    }

    pub fn composite(cone: &ConeSpec, maps: Vec<ConeMap>) -> Result<Self> {
        if maps.iter().any(|m| m.cone != *cone) {
            return input("all maps in a composite must share the cone");
        }
        Self::validated(cone, MapKind::Composite(maps))
    }

    /// A random linear automorphism: positive diagonal times permutation on the
    /// orthant, `x -> A x A^T` on psd, boost times rotation on the Lorentz cone.
    pub fn random_automorphism<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R) -> Result<Self> {
        let n = cone.ambient_dim();
        let rows = match cone.family() {
            Family::Orthant => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                let mut rows = vec![vec![0.0; n]; n];
                for (i, &j) in perm.iter().enumerate() {
                    rows[i][j] = rng.random_range(-1.5..1.5f64).exp();
                }
                rows
            }
            Family::Psd => {
                let k = cone.matrix_order().unwrap_or(1);
                let a = loop {
                    let a = DMatrix::from_vec(k, k, sampling::gaussian_vector(k * k, rng));
                    let sv = a.singular_values();
                    if sv.min() > 0.1 * sv.max() {
                        break a;
                    }
                };
                let mut rows = vec![vec![0.0; n]; n];
                for i in 0..k {
                    for j in 0..k {
                        for p in 0..k {
                            for q in 0..k {
                                rows[i * k + j][p * k + q] = a[(i, p)] * a[(j, q)];
                            }
                        }
                    }
                }
                rows
            }
            Family::Lorentz => lorentz_transform(n, rng),
            Family::Polyhedral => {
                return domain("no automorphism sampler for general polyhedral cones")
            }
        };
        Self::linear(cone, rows)
    }

    fn validated(cone: &ConeSpec, kind: MapKind) -> Result<Self> {
        let map = ConeMap {
            cone: cone.clone(),
            kind,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..VALIDATION_SAMPLES {
            let x = sampling::random_interior(cone, &mut rng);
            let fx = map.image(&x)?;
            let margin = cone.margin(&fx)?;
            if !(margin > 0.0) {
                return domain(format!(
                    "map sends an interior point outside the interior (margin {margin:e})"
                ));
            }
        }
        Ok(map)
    }

    pub fn cone(&self) -> &ConeSpec {
        &self.cone
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        let margin = self.cone.margin(x)?;
        if !(margin > 0.0) {
            return domain(format!("point is not in the interior (margin {margin:e})"));
        }
        self.image(x)
    }

    fn image(&self, x: &Point) -> Result<Point> {
        match &self.kind {
            MapKind::Linear(rows) => Ok(rows
                .iter()
                .map(|r| r.iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect::<Vec<f64>>()
                .into()),
            MapKind::Congruence(g) => self.algebra()?.quadratic_apply(g, x),
            MapKind::Inversion => self.algebra()?.inverse(x),
            MapKind::PartialInversion(i) => {
                let mut c = x.clone().into_coords();
                c[i - 1] = 1.0 / c[i - 1];
                Ok(c.into())
            }
            MapKind::Composite(maps) => maps.iter().try_fold(x.clone(), |p, m| m.image(&p)),
        }
    }

    fn algebra(&self) -> Result<crate::jordan::JordanAlgebra> {
        self.cone
            .jordan()
            .ok_or_else(|| Error::Domain("map needs a symmetric cone".into()))
    }
}

impl fmt::Display for ConeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MapKind::Linear(_) => write!(f, "linear"),
            MapKind::Congruence(_) => write!(f, "congruence"),
            MapKind::Inversion => write!(f, "inversion"),
            MapKind::PartialInversion(i) => write!(f, "partial_inversion({i})"),
            MapKind::Composite(maps) => {
                let names: Vec<String> = maps.iter().map(|m| m.to_string()).collect();
                write!(f, "composite[{}]", names.join(","))
            }
        }
    }
}

/// Boost along a random direction composed with a random spatial rotation.
fn lorentz_transform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let m = n - 1;
    let rot = sampling::random_orthogonal(m, rng);
    let dir = sampling::random_unit(m, rng);
    let phi: f64 = rng.random_range(-1.5..1.5);
    let mut boost = DMatrix::<f64>::identity(n, n);
    boost[(0, 0)] = phi.cosh();
    for i in 0..m {
        boost[(0, i + 1)] = phi.sinh() * dir[i];
        boost[(i + 1, 0)] = phi.sinh() * dir[i];
        for j in 0..m {
            boost[(i + 1, j + 1)] += (phi.cosh() - 1.0) * dir[i] * dir[j];
        }
    }
    let mut spatial = DMatrix::<f64>::identity(n, n);
    spatial.view_mut((1, 1), (m, m)).copy_from(&rot);
    let t = boost * spatial;
    (0..n).map(|i| t.row(i).iter().copied().collect()).collect()
}

/// Largest `|d(f x, f y) - d(x, y)|` over `samples` random interior pairs.
pub fn check_isometry(map: &ConeMap, samples: usize, seed: u64) -> Result<f64> {
    let cone = map.cone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let x = sampling::random_interior(cone, &mut rng);
        let y = sampling::random_interior(cone, &mut rng);
        let before = cone.thompson_distance(&x, &y)?;
        let after = cone.thompson_distance(&map.apply(&x)?, &map.apply(&y)?)?;
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projectivity {
    Linear,
    NotLinear,
    Inconclusive,
}

impl fmt::Display for Projectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Projectivity::Linear => "projectively_linear",
            Projectivity::NotLinear => "not_projectively_linear",
            Projectivity::Inconclusive => "inconclusive",
        })
    }
}

/// Best linear fit `T` with `f(x) ∥ T x`.
///
/// For psd cones `T` acts on the orthonormal coordinates of symmetric matrices
/// (diagonal entries, then `sqrt(2)` times the upper off-diagonal entries row by row).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveFit {
    pub verdict: Projectivity,
    /// Smallest over largest singular value of the stacked constraints.
    pub residual: f64,
    /// Unit Frobenius norm, sign chosen so that `T` maps a sample into the cone.
    pub matrix: Vec<Vec<f64>>,
}

impl ProjectiveFit {
    pub fn is_linear(&self) -> bool {
        self.verdict == Projectivity::Linear
    }
}

/// Fits `T` by homogeneous least squares on `(I - f f^T) T x = 0` over sampled unit
/// `x` and unit `f = f(x)/|f(x)|`. Retries once with the next seed when the samples
/// do not pin `T` down to a single direction.
pub fn is_projectively_linear(map: &ConeMap, samples: usize, seed: u64) -> Result<ProjectiveFit> {
    let n = map.cone().dimension();
    if samples < n + 2 {
        return input(format!("need at least {} samples, got {samples}", n + 2));
    }
    match fit_projective(map, samples, seed)? {
        Some(fit) => Ok(fit),
        None => fit_projective(map, samples, seed.wrapping_add(1))?.ok_or_else(|| {
            Error::Numeric("sample set is degenerate: the linear fit is not unique".into())
        }),
    }
}

fn fit_projective(map: &ConeMap, samples: usize, seed: u64) -> Result<Option<ProjectiveFit>> {
    let cone = map.cone();
    let coords = Coordinates::for_cone(cone);
    let n = coords.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DMatrix::zeros(samples * n, n * n);
    let mut first = None;
    for s in 0..samples {
        let x = sampling::random_interior(cone, &mut rng);
        let fx = coords.reduce(&map.apply(&x)?);
        let xr = coords.reduce(&x);
        let xn = xr.norm();
        let fnorm = fx.norm();
        let (xh, fh) = (xr.scale(1.0 / xn), fx.scale(1.0 / fnorm));
        for i in 0..n {
            for b in 0..n {
                let p = if i == b { 1.0 } else { 0.0 } - fh[i] * fh[b];
                for c in 0..n {
                    a[(s * n + i, b * n + c)] = p * xh[c];
                }
            }
        }
        first.get_or_insert(x);
    }
    let svd = linalg::full_svd(&a)?;
    let sv = &svd.singular_values;
    let smax = sv[0];
    let m = n * n;
    let smin = sv.get(m - 1).copied().unwrap_or(0.0);
    let second = if m >= 2 { sv[m - 2] } else { smax };
    if second <= LINEAR_TOL * smax {
        return Ok(None);
    }
    let residual = smin / smax;
    let v = svd.right.column(m - 1);
    let mut t = DMatrix::from_fn(n, n, |i, j| v[i * n + j]);
    let x0 = first.unwrap_or_else(|| cone.interior_point());
    let t_apply = |t: &DMatrix<f64>, x: &Point| -> Point {
        coords.expand(&Point::new(linalg::mat_vec(t, coords.reduce(x).coords())))
    };
    if cone.margin(&t_apply(&t, &x0))? < 0.0 {
        t = -t;
    }
    let verdict = if residual <= LINEAR_TOL {
        let mut check = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut inside = true;
        for _ in 0..VALIDATION_SAMPLES {
            let x = sampling::random_interior(cone, &mut check);
            if !(cone.margin(&t_apply(&t, &x))? > 0.0) {
                inside = false;
                break;
            }
        }
        if inside {
            Projectivity::Linear
        } else {
            Projectivity::NotLinear
        }
    } else if residual >= NONLINEAR_TOL {
        Projectivity::NotLinear
    } else {
        Projectivity::Inconclusive
    };
    Ok(Some(ProjectiveFit {
        verdict,
        residual,
        matrix: (0..n).map(|i| t.row(i).iter().copied().collect()).collect(),
    }))
}

/// Identity coordinates, or orthonormal coordinates on symmetric `k x k` matrices.
enum Coordinates {
    Plain(usize),
    Symmetric(usize),
}

impl Coordinates {
    fn for_cone(cone: &ConeSpec) -> Self {
        match cone.matrix_order() {
            Some(k) => Coordinates::Symmetric(k),
            None => Coordinates::Plain(cone.ambient_dim()),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Coordinates::Plain(n) => *n,
            Coordinates::Symmetric(k) => k * (k + 1) / 2,
        }
    }

    fn reduce(&self, x: &Point) -> Point {
        match self {
            Coordinates::Plain(_) => x.clone(),
            Coordinates::Symmetric(k) => {
                let k = *k;
                let mut out: Vec<f64> = (0..k).map(|i| x[i * k + i]).collect();
                for i in 0..k {
                    for j in (i + 1)..k {
                        out.push(std::f64::consts::SQRT_2 * 0.5 * (x[i * k + j] + x[j * k + i]));
                    }
                }
                out.into()
            }
        }
    }

    fn expand(&self, v: &Point) -> Point {
        match self {
            Coordinates::Plain(_) => v.clone(),
            Coordinates::Symmetric(k) => {
                let k = *k;
                let mut out = vec![0.0; k * k];
                for i in 0..k {
                    out[i * k + i] = v[i];
                }
                let mut idx = k;
                for i in 0..k {
                    for j in (i + 1)..k {
                        let val = v[idx] / std::f64::consts::SQRT_2;
                        out[i * k + j] = val;
                        out[j * k + i] = val;
                        idx += 1;
                    }
                }
                out.into()
            }
        }
    }
}
