//! Cone families, membership, the order ratios `M(x/y)` and `m(x/y)`, Thompson and
//! Hilbert distances, and where the line through two points leaves the cone.

use crate::error::{domain, input, Error, Result};
use crate::jordan::JordanAlgebra;
use crate::linalg;
use crate::point::Point;

/// Absolute membership tolerance applied after scaling a point to unit sup norm.
pub const MEMBERSHIP_TOL: f64 = 1e-10;
/// Largest tolerated `|x_ij - x_ji|` for matrix points (relative to `max(1, |x|_inf)`).
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Two points are treated as spanning a single ray when their unit directions
/// differ by less than this angle.
pub const COLLINEAR_TOL: f64 = 1e-9;
/// Relative sup-norm threshold for treating two points as equal.
pub const EQUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Orthant,
    Polyhedral,
    Lorentz,
    Psd,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Orthant(usize),
    Polyhedral { facets: Vec<Point>, witness: Point },
    Lorentz(usize),
    Psd(usize),
}

/// A closed, pointed cone with nonempty interior from one of four families.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSpec {
    kind: Kind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipClass {
    Interior,
    Boundary,
    Outside,
}

/// Membership verdict together with the unnormalized margin (smallest facet value,
/// smallest eigenvalue, or `s - |w|` for the Lorentz cone).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub class: MembershipClass,
    pub margin: f64,
}

impl Membership {
    pub fn is_interior(&self) -> bool {
        self.class == MembershipClass::Interior
    }
}

/// `max_ratio = M(x/y)`, the least `b` with `x <= b y`; `min_ratio = m(x/y)`, the
/// largest `a` with `a y <= x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRatios {
    pub max_ratio: f64,
    pub min_ratio: f64,
}

/// Where the line through `x` and `y` meets the boundary. `x_prime` lies beyond `x`,
/// `y_prime` beyond `y`; either is `None` when the line stays in the cone on that side.
#[derive(Debug, Clone, PartialEq)]
pub struct LineBoundary {
    pub x_prime: Option<Point>,
    pub y_prime: Option<Point>,
}

impl LineBoundary {
    pub fn is_degenerate(&self) -> bool {
        self.x_prime.is_none() || self.y_prime.is_none()
    }

    pub fn pair(&self) -> Option<(&Point, &Point)> {
        Some((self.x_prime.as_ref()?, self.y_prime.as_ref()?))
    }
}

impl ConeSpec {
    pub fn orthant(n: usize) -> Result<Self> {
        if n == 0 {
            return input("orthant dimension must be at least 1");
        }
        Ok(ConeSpec {
            kind: Kind::Orthant(n),
        })
    }

    /// Lorentz cone `{(s, w) : s >= |w|_2}` in `R^ambient`.
    pub fn lorentz(ambient: usize) -> Result<Self> {
        if ambient < 2 {
            return input("Lorentz cone needs ambient dimension at least 2");
        }
        Ok(ConeSpec {
            kind: Kind::Lorentz(ambient),
        })
    }

    /// Positive semidefinite `k x k` real symmetric matrices.
    pub fn psd(k: usize) -> Result<Self> {
        if k == 0 {
            return input("matrix order must be at least 1");
        }
        Ok(ConeSpec { kind: Kind::Psd(k) })
    }

    /// The cone `{x : psi_i(x) >= 0}` cut out by the rows `psi_i`.
    ///
    /// Rows must be nonzero, of equal length, span the dual space (so the cone is
    /// pointed), and admit a point where every row is strictly positive.
    pub fn polyhedral(facets: Vec<Vec<f64>>) -> Result<Self> {
        let n = match facets.first() {
            Some(r) if !r.is_empty() => r.len(),
            _ => return input("polyhedral cone needs at least one nonempty facet row"),
        };
        for (i, row) in facets.iter().enumerate() {
            if row.len() != n {
                return input(format!(
                    "facet row {i} has {} entries, expected {n}",
                    row.len()
                ));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return input(format!("facet row {i} has a non-finite entry"));
            }
            if row.iter().all(|&v| v == 0.0) {
                return input(format!("facet row {i} is zero"));
            }
        }
        let (rank, _) = linalg::null_space(&facets, n, 1e-12)?;
        if rank < n {
            return domain(format!(
                "facet rows have rank {rank} < {n}; the cone contains a line"
            ));
        }
        let facets: Vec<Point> = facets.into_iter().map(Point::new).collect();
        let witness = interior_witness(&facets, n).ok_or_else(|| {
            Error::Domain("facet inequalities have no common interior point".into())
        })?;
        Ok(ConeSpec {
            kind: Kind::Polyhedral { facets, witness },
        })
    }

    /// The cone of squares of `alg`.
    pub fn from_jordan(alg: JordanAlgebra) -> Result<Self> {
        match alg {
            JordanAlgebra::Orthant(n) => Self::orthant(n),
            JordanAlgebra::Sym(k) => Self::psd(k),
            JordanAlgebra::Spin(n) => Self::lorentz(n + 1),
        }
    }

    pub fn family(&self) -> Family {
        match self.kind {
            Kind::Orthant(_) => Family::Orthant,
            Kind::Polyhedral { .. } => Family::Polyhedral,
            Kind::Lorentz(_) => Family::Lorentz,
            Kind::Psd(_) => Family::Psd,
        }
    }

    /// Number of stored coordinates of a point (`k * k` for matrices).
    pub fn ambient_dim(&self) -> usize {
        match &self.kind {
            Kind::Orthant(n) | Kind::Lorentz(n) => *n,
            Kind::Polyhedral { witness, .. } => witness.len(),
            Kind::Psd(k) => k * k,
        }
    }

    /// Dimension of the linear span of the cone (`k(k+1)/2` for matrices).
    pub fn dimension(&self) -> usize {
        match &self.kind {
            Kind::Psd(k) => k * (k + 1) / 2,
            _ => self.ambient_dim(),
        }
    }

    /// Matrix order for the PSD family.
    pub fn matrix_order(&self) -> Option<usize> {
        match self.kind {
            Kind::Psd(k) => Some(k),
            _ => None,
        }
    }

    /// The Euclidean Jordan algebra whose cone of squares this is, if any.
    pub fn jordan(&self) -> Option<JordanAlgebra> {
        match self.kind {
            Kind::Orthant(n) => Some(JordanAlgebra::Orthant(n)),
            Kind::Lorentz(n) => Some(JordanAlgebra::Spin(n - 1)),
            Kind::Psd(k) => Some(JordanAlgebra::Sym(k)),
            Kind::Polyhedral { .. } => None,
        }
    }

    /// Facet functionals for the polyhedral families (coordinate rows for the orthant).
    pub fn facet_rows(&self) -> Option<Vec<Point>> {
        match &self.kind {
            Kind::Orthant(n) => Some(
                (0..*n)
                    .map(|i| {
                        let mut r = vec![0.0; *n];
                        r[i] = 1.0;
                        Point::new(r)
                    })
                    .collect(),
            ),
            Kind::Polyhedral { facets, .. } => Some(facets.clone()),
            _ => None,
        }
    }

    /// Values `psi_i(x)` of the facet functionals.
    pub fn facet_values(&self, x: &Point) -> Option<Vec<f64>> {
        match &self.kind {
            Kind::Orthant(_) => Some(x.coords().to_vec()),
            Kind::Polyhedral { facets, .. } => Some(facets.iter().map(|f| f.dot(x)).collect()),
            _ => None,
        }
    }

    /// A point in the interior.
    pub fn interior_point(&self) -> Point {
        match &self.kind {
            Kind::Polyhedral { witness, .. } => witness.clone(),
            _ => self.jordan().map(|a| a.unit()).unwrap_or_default(),
        }
    }

    /// Checks the coordinate count and, for matrices, symmetry.
    pub fn validate(&self, x: &Point) -> Result<()> {
        if x.len() != self.ambient_dim() {
            return input(format!(
                "point has {} coordinates, cone expects {}",
                x.len(),
                self.ambient_dim()
            ));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return input("point has a non-finite coordinate");
        }
        if let Kind::Psd(k) = self.kind {
            let asym = linalg::max_asymmetry(k, x.coords());
            if asym > SYMMETRY_TOL * x.sup_norm().max(1.0) {
                return input(format!(
                    "matrix point is not symmetric (asymmetry {asym:e})"
                ));
            }
        }
        Ok(())
    }

    /// Unnormalized margin; positive exactly on the interior.
    pub fn margin(&self, x: &Point) -> Result<f64> {
        self.validate(x)?;
        Ok(match &self.kind {
            Kind::Orthant(_) | Kind::Polyhedral { .. } => self
                .facet_values(x)
                .unwrap_or_default()
                .into_iter()
                .fold(f64::INFINITY, f64::min),
            _ => self.jordan().expect("symmetric family").min_eigenvalue(x)?,
        })
    }

    pub fn classify(&self, x: &Point) -> Result<Membership> {
        let margin = self.margin(x)?;
        let scale = x.sup_norm();
        let normalized = if scale > 0.0 { margin / scale } else { 0.0 };
        let class = if normalized > MEMBERSHIP_TOL {
            MembershipClass::Interior
        } else if normalized >= -MEMBERSHIP_TOL {
            MembershipClass::Boundary
        } else {
            MembershipClass::Outside
        };
        Ok(Membership { class, margin })
    }

    fn require_positive(&self, x: &Point, name: &str) -> Result<()> {
        let margin = self.margin(x)?;
        if !(margin > 0.0) {
            return domain(format!("{name} is not in the interior (margin {margin:e})"));
        }
        Ok(())
    }

    /// `M(x/y)` and `m(x/y)` for strictly interior `x`, `y`.
    pub fn m_ratio(&self, x: &Point, y: &Point) -> Result<OrderRatios> {
        self.require_positive(x, "x")?;
        self.require_positive(y, "y")?;
        let ratios: Vec<f64> = match &self.kind {
            Kind::Polyhedral { facets, .. } => facets.iter().map(|f| f.dot(x) / f.dot(y)).collect(),
            _ => self
                .jordan()
                .expect("symmetric family")
                .relative_eigenvalues(x, y)?,
        };
        let (lo, hi) = ratios
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &r| {
                (lo.min(r), hi.max(r))
            });
        Ok(OrderRatios {
            max_ratio: hi,
            min_ratio: lo,
        })
    }

    /// `d(x, y) = log max(M(x/y), M(y/x))`.
    pub fn thompson_distance(&self, x: &Point, y: &Point) -> Result<f64> {
        let r = self.m_ratio(x, y)?;
        Ok(r.max_ratio.ln().max(-r.min_ratio.ln()).max(0.0))
    }

    /// `delta(x, y) = log (M(x/y) M(y/x))`.
    pub fn hilbert_distance(&self, x: &Point, y: &Point) -> Result<f64> {
        let r = self.m_ratio(x, y)?;
        Ok((r.max_ratio.ln() - r.min_ratio.ln()).max(0.0))
    }

    /// True when `x` and `y` lie on a common ray (angle below [`COLLINEAR_TOL`]).
    pub fn are_collinear(x: &Point, y: &Point) -> bool {
        let (nx, ny) = (x.norm(), y.norm());
        if nx == 0.0 || ny == 0.0 {
            return true;
        }
        x.combine(1.0 / nx, y, -1.0 / ny).norm() < COLLINEAR_TOL
    }

    pub fn are_equal(x: &Point, y: &Point) -> bool {
        x.sup_distance(y) <= EQUAL_TOL * x.sup_norm().max(y.sup_norm())
    }

    /// The boundary directions `x - m(x/y) y` and `M(x/y) y - x` of the line through
    /// `x` and `y`, together with the ratios.
    pub(crate) fn boundary_rays(
        &self,
        x: &Point,
        y: &Point,
    ) -> Result<(Point, Point, OrderRatios)> {
        let r = self.m_ratio(x, y)?;
        if Self::are_collinear(x, y) {
            return domain("points are collinear; the line through them stays on one ray");
        }
        let u = x.combine(1.0, y, -r.min_ratio);
        let v = y.combine(r.max_ratio, x, -1.0);
        Ok((u, v, r))
    }

    /// Points where the line through `x` and `y` crosses the boundary, normalized to
    /// lie on that affine line: `x' = (x - m y)/(1 - m)` and `y' = (M y - x)/(M - 1)`.
    pub fn line_boundary_points(&self, x: &Point, y: &Point) -> Result<LineBoundary> {
        let (u, v, r) = self.boundary_rays(x, y)?;
        let x_prime = (r.min_ratio < 1.0 - 1e-12).then(|| u.scale(1.0 / (1.0 - r.min_ratio)));
        let y_prime = (r.max_ratio > 1.0 + 1e-12).then(|| v.scale(1.0 / (r.max_ratio - 1.0)));
        Ok(LineBoundary { x_prime, y_prime })
    }

    /// Hilbert's cross-ratio metric on the affine section `phi = 1`.
    ///
    /// The boundary points are the section images of the boundary rays, which exist
    /// even when the affine line meets the boundary only once.
    pub fn cross_ratio_distance(&self, x: &Point, y: &Point, phi: &Point) -> Result<f64> {
        if phi.len() != self.ambient_dim() {
            return input("functional has the wrong dimension");
        }
        self.require_positive(x, "x")?;
        self.require_positive(y, "y")?;
        if Self::are_equal(x, y) {
            return Ok(0.0);
        }
        if Self::are_collinear(x, y) {
            return Ok(0.0);
        }
        let (u, v, _) = self.boundary_rays(x, y)?;
        let section = |p: &Point, name: &str| -> Result<Point> {
            let val = phi.dot(p);
            if !(val > 0.0) {
                return domain(format!("functional is not positive at {name} ({val:e})"));
            }
            Ok(p.scale(1.0 / val))
        };
        let (xs, ys) = (section(x, "x")?, section(y, "y")?);
        let (xp, yp) = (section(&u, "x'")?, section(&v, "y'")?);
        let dist = |a: &Point, b: &Point| (a - b).norm();
        let value = (dist(&xp, &ys) / dist(&xp, &xs)) * (dist(&yp, &xs) / dist(&yp, &ys));
        Ok(value.ln())
    }
}

/// Strictly feasible point of `psi_i(w) > 0`: the sum of normalized rows, or a
/// perceptron run when that fails.
fn interior_witness(facets: &[Point], n: usize) -> Option<Point> {
    let normalized: Vec<Point> = facets.iter().map(|f| f.scale(1.0 / f.norm())).collect();
    let feasible = |w: &Point| normalized.iter().all(|f| f.dot(w) > 1e-9 * w.norm());
    let mut w = normalized.iter().fold(Point::zeros(n), |acc, f| &acc + f);
    if feasible(&w) {
        return Some(w);
    }
    for _ in 0..200_000 {
        let worst = normalized
            .iter()
            .min_by(|a, b| a.dot(&w).total_cmp(&b.dot(&w)))?;
        if worst.dot(&w) > 1e-9 * w.norm() {
            return Some(w);
        }
        w = &w + worst;
    }
    feasible(&w).then_some(w)
}
