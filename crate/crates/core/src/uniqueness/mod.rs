//! Is the Thompson geodesic between two interior points unique?
//!
//! Balanced pairs are decided by the boundary structure of the plane through the
//! points: for polyhedral cones, whether the faces containing the two boundary
//! points of the line share a common direction; for symmetric cones, whether the
//! relative spectrum is exactly `{1/b, b}`. Non-unique verdicts carry an explicit
//! alternative midpoint.

mod oracle;

use std::fmt;

pub use oracle::midpoint_oracle;

use crate::cones::{ConeSpec, Family};
use crate::error::{domain, Error, Result};
use crate::geodesics::{self, LegOrder};
use crate::jordan::JordanAlgebra;
use crate::linalg;
use crate::point::Point;

/// Facet `i` counts as active at a boundary point `p` when `psi_i(p) / |psi_i|`
/// is at most this, with `p` scaled to unit sup norm.
pub const ACTIVE_TOL: f64 = 1e-9;
/// Relative singular-value cutoff for the rank of stacked active facets.
pub const RANK_TOL: f64 = 1e-9;
/// Spectral verdicts need `|lambda_max lambda_min - 1|` below this.
pub const SPECTRAL_PRODUCT_TOL: f64 = 1e-8;
/// Witnesses must satisfy both half-distance equalities within this.
pub const WITNESS_TOL: f64 = 1e-8;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Unique,
    NonUnique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Collinear,
    Unbalanced,
    Spectral,
    FaceSpan,
    TwoDim,
    Oracle,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unique => "unique",
            Status::NonUnique => "non_unique",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Collinear => "collinear",
            Method::Unbalanced => "unbalanced",
            Method::Spectral => "spectral",
            Method::FaceSpan => "face_span",
            Method::TwoDim => "two_dim",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessVerdict {
    pub status: Status,
    pub method: Method,
    /// An alternative midpoint; present for every non-unique verdict.
    pub witness: Option<Point>,
    /// Relative spectrum `sigma(P(y^-1/2) x)` when the cone is symmetric.
    pub spectrum: Option<Vec<f64>>,
}

impl UniquenessVerdict {
    fn unique(method: Method) -> Self {
        UniquenessVerdict {
            status: Status::Unique,
            method,
            witness: None,
            spectrum: None,
        }
    }

    fn non_unique(method: Method, witness: Point) -> Self {
        UniquenessVerdict {
            status: Status::NonUnique,
            method,
            witness: Some(witness),
            spectrum: None,
        }
    }

    fn with_spectrum(mut self, spectrum: Vec<f64>) -> Self {
        self.spectrum = Some(spectrum);
        self
    }

    pub fn is_unique(&self) -> bool {
        self.status == Status::Unique
    }
}

fn require_distinct(cone: &ConeSpec, x: &Point, y: &Point) -> Result<()> {
    cone.m_ratio(x, y)?;
    if ConeSpec::are_equal(x, y) {
        return domain("the two points coincide");
    }
    Ok(())
}

/// Decides uniqueness of the Thompson geodesic from `x` to `y`.
pub fn is_unique(cone: &ConeSpec, x: &Point, y: &Point) -> Result<UniquenessVerdict> {
    require_distinct(cone, x, y)?;
    if ConeSpec::are_collinear(x, y) {
        return Ok(UniquenessVerdict::unique(Method::Collinear));
    }
    if !geodesics::is_balanced(cone, x, y)? {
        let alt = geodesics::geodesic_with_order(cone, x, y, LegOrder::RayFirst)?;
        return Ok(UniquenessVerdict::non_unique(
            Method::Unbalanced,
            alt.midpoint(),
        ));
    }
    if cone.dimension() == 2 {
        return Ok(UniquenessVerdict::unique(Method::TwoDim));
    }
    match cone.family() {
        Family::Orthant => {
            let spectrum = cone.jordan().expect("orthant").relative_spectrum(x, y)?;
            Ok(face_span_test(cone, x, y)?.with_spectrum(spectrum))
        }
        Family::Polyhedral => face_span_test(cone, x, y),
        Family::Lorentz | Family::Psd => spectral_verdict(cone, x, y),
    }
}

fn spectral_verdict(cone: &ConeSpec, x: &Point, y: &Point) -> Result<UniquenessVerdict> {
    let alg = cone.jordan().expect("symmetric family");
    let spectrum = alg.relative_spectrum(x, y)?;
    let lo = spectrum[0];
    let hi = spectrum[spectrum.len() - 1];
    if spectrum.len() == 2 && (lo * hi - 1.0).abs() <= SPECTRAL_PRODUCT_TOL {
        return Ok(UniquenessVerdict::unique(Method::Spectral).with_spectrum(spectrum));
    }
    let witness = spectral_witness(alg, x, y, 1)?;
    Ok(UniquenessVerdict::non_unique(Method::Spectral, witness).with_spectrum(spectrum))
}

/// Both half-distance equalities `d(x, w) = d(w, y) = d(x, y) / 2` within [`WITNESS_TOL`].
fn is_metric_midpoint(cone: &ConeSpec, x: &Point, y: &Point, w: &Point, half: f64) -> bool {
    match (cone.thompson_distance(x, w), cone.thompson_distance(w, y)) {
        (Ok(a), Ok(b)) => (a - half).abs() <= WITNESS_TOL && (b - half).abs() <= WITNESS_TOL,
        _ => false,
    }
}

/// Uniqueness test for balanced pairs in polyhedral cones (and the orthant).
///
/// Let `x'`, `y'` be where the line through `x`, `y` leaves the cone. The geodesic is
/// unique exactly when no nonzero direction is tangent to both faces, i.e. the facet
/// rows active at `x'` or at `y'` together span the dual space.
pub fn face_span_test(cone: &ConeSpec, x: &Point, y: &Point) -> Result<UniquenessVerdict> {
    let rows = cone
        .facet_rows()
        .ok_or_else(|| Error::Domain("face-span test needs a polyhedral cone".into()))?;
    require_distinct(cone, x, y)?;
    if !geodesics::is_balanced(cone, x, y)? {
        return domain("face-span test needs a balanced pair (M(x/y) = M(y/x))");
    }
    let lb = cone.line_boundary_points(x, y)?;
    let (xp, yp) = lb
        .pair()
        .ok_or_else(|| Error::Numeric("balanced pair with a single boundary crossing".into()))?;
    let normalized: Vec<Point> = rows.iter().map(|r| r.scale(1.0 / r.norm())).collect();
    let active = |p: &Point| -> Vec<Vec<f64>> {
        let p = p.normalized_sup();
        normalized
            .iter()
            .filter(|r| r.dot(&p) <= ACTIVE_TOL)
            .map(|r| r.coords().to_vec())
            .collect()
    };
    let mut stacked = active(xp);
    stacked.extend(active(yp));
    let n = cone.ambient_dim();
    let (rank, null) = linalg::null_space(&stacked, n, RANK_TOL)?;
    if rank == n {
        return Ok(UniquenessVerdict::unique(Method::FaceSpan));
    }
    let z = Point::new(null[0].clone());
    let path = geodesics::type_one_path(cone, x, y)?;
    let zeta = path.midpoint();
    let half = 0.5 * path.total_length();
    let base_step = 1e-2 * zeta.sup_norm();
    for sign in [1.0, -1.0] {
        let mut delta = base_step;
        for _ in 0..=MAX_HALVINGS {
            let w = zeta.combine(1.0, &z, sign * delta);
            if is_metric_midpoint(cone, x, y, &w, half) {
                return Ok(UniquenessVerdict::non_unique(Method::FaceSpan, w));
            }
            delta *= 0.5;
        }
    }
    Err(Error::Numeric(
        "shared face direction found but no perturbed midpoint validated".into(),
    ))
}

/// Alternative midpoint for a pair whose relative spectrum has an intermediate value.
///
/// The pair is moved to `(e, z)` with `z = P(x^-1/2) y`; with `z = sum l_j c_j` and
/// `l_i` the spectral value at `intermediate_index` (ascending, so neither the
/// smallest nor the largest), `(z + eps c_i)^(1/2)` is a midpoint of `e` and `z` for
/// every small `eps > 0`. The result is mapped back with `P(x^1/2)`.
pub fn spectral_witness(
    alg: JordanAlgebra,
    x: &Point,
    y: &Point,
    intermediate_index: usize,
) -> Result<Point> {
    let cone = ConeSpec::from_jordan(alg)?;
    let d = cone.thompson_distance(x, y)?;
    let x_inv_half = alg.power(x, -0.5)?;
    let z = alg.quadratic_apply(&x_inv_half, y)?;
    let dec = alg.spectral(&z)?;
    let k = dec.len();
    if k < 3 {
        return domain(format!(
            "relative spectrum has {k} distinct value(s); no intermediate eigenvalue"
        ));
    }
    if intermediate_index == 0 || intermediate_index + 1 >= k {
        return domain(format!(
            "index {intermediate_index} is not an intermediate eigenvalue (valid: 1..{})",
            k - 2
        ));
    }
    let r = d.exp();
    let li = dec.eigenvalues[intermediate_index];
    let mut eps = 0.5 * (r - li).min(r * li * li - li);
    if !(eps > 0.0) {
        return Err(Error::Numeric(format!(
            "eigenvalue {li} is not strictly inside (1/{r}, {r})"
        )));
    }
    let x_half = alg.power(x, 0.5)?;
    for _ in 0..=MAX_HALVINGS {
        let w_local = witness_for_epsilon(alg, &z, &dec.idempotents[intermediate_index], eps)?;
        let w = alg.quadratic_apply(&x_half, &w_local)?;
        let w = match alg {
            JordanAlgebra::Sym(k) => symmetrized(k, &w),
            _ => w,
        };
        if is_metric_midpoint(&cone, x, y, &w, 0.5 * d) {
            return Ok(w);
        }
        eps *= 0.5;
    }
    Err(Error::Numeric(
        "no step size produced a validated midpoint".into(),
    ))
}

/// `(z + eps c)^(1/2)`.
pub(crate) fn witness_for_epsilon(
    alg: JordanAlgebra,
    z: &Point,
    c: &Point,
    eps: f64,
) -> Result<Point> {
    alg.power(&z.combine(1.0, c, eps), 0.5)
}

fn symmetrized(k: usize, p: &Point) -> Point {
    Point::new(linalg::row_major(&linalg::symmetrize(&linalg::square(
        k,
        p.coords(),
    ))))
}

/// Uniqueness of the Hilbert-metric geodesic between the rays through `x` and `y`.
///
/// Symmetric cones: unique iff the relative spectrum has exactly two values.
/// Polyhedral cones: `y` is rescaled to balance the pair and the face-span test decides.
pub fn hilbert_unique(cone: &ConeSpec, x: &Point, y: &Point) -> Result<UniquenessVerdict> {
    cone.m_ratio(x, y)?;
    if ConeSpec::are_collinear(x, y) {
        return domain("the points are projectively equal");
    }
    let lam = geodesics::balance_scale(cone, x, y)?;
    let ly = y.scale(lam);
    match cone.family() {
        Family::Orthant | Family::Polyhedral => {
            if cone.dimension() == 2 {
                return Ok(UniquenessVerdict::unique(Method::TwoDim));
            }
            face_span_test(cone, x, &ly)
        }
        Family::Lorentz | Family::Psd => {
            let alg = cone.jordan().expect("symmetric family");
            let spectrum = alg.relative_spectrum(x, y)?;
            if spectrum.len() == 2 {
                return Ok(UniquenessVerdict::unique(Method::Spectral).with_spectrum(spectrum));
            }
            let witness = spectral_witness(alg, x, &ly, 1)?;
            Ok(UniquenessVerdict::non_unique(Method::Spectral, witness).with_spectrum(spectrum))
        }
    }
}
