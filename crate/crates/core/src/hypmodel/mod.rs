//! Projective ambient models of real and complex hyperbolic space.
//!
//! Points of `KH^n` are negative lines for the Hermitian form
//! `<z, w> = sum_{i<n} conj(z_i) w_i - conj(z_n) w_n` on `K^(n+1)`. Interior
//! points are stored with `<X, X> = -1` and the distance is
//! `cosh d(x, y) = |<X, Y>|`, which pins the sectional curvature of the
//! complex model to `[-4, -1]` (totally real planes have curvature `-1`,
//! complex lines `-4`). The real model is the hyperboloid model of `H^n`
//! embedded with real coordinates.

mod busemann;
mod curvature;
mod gromov;
mod isometry;
pub mod sampling;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{CVector, MAX_DIM};

pub use busemann::BusemannChart;
pub use curvature::{curvature_eigensplit, eigenspace_dims, is_delta_triple, jacobi_scale, plane_delta, JacobiKind};
pub use gromov::{
    busemann_product_closed_form, gromov_product_busemann, gromov_product_ideal, gromov_product_point,
    gromov_product_point_busemann, visual_product_closed_form,
};
pub use isometry::Isometry;

/// Tolerance for projective equality on `||X ^ Y||` of max-normalized reps.
pub const PROJECTIVE_TOL: f64 = 1e-10;
/// Tolerance on `<X, X> = 0` for ideal representatives.
pub const NULL_TOL: f64 = 1e-12;
/// Tolerance for orthogonality and unit-length checks on tangent vectors.
pub const TANGENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpace {
    field: Field,
    n: usize,
}

impl ModelSpace {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("dimension parameter n = {n} must be at least 2")));
        }
        if n + 1 > MAX_DIM {
            return Err(Error::Domain(format!(
                "dimension parameter n = {n} exceeds supported maximum {}",
                MAX_DIM - 1
            )));
        }
        Ok(Self { field, n })
    }

    pub fn real(n: usize) -> Self {
        Self::new(Field::Real, n).expect("valid real model")
    }

    pub fn complex(n: usize) -> Self {
        Self::new(Field::Complex, n).expect("valid complex model")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_complex(&self) -> bool {
        self.field == Field::Complex
    }

    /// Number of ambient coordinates, `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    /// Real dimension of the manifold.
    pub fn manifold_dim(&self) -> usize {
        self.n * self.field.real_dim()
    }

    /// The Hermitian form of signature `(n, 1)`.
    #[inline]
    pub fn form(&self, a: &CVector, b: &CVector) -> Complex64 {
        let last = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..last {
            acc += a[i].conj() * b[i];
        }
        acc - a[last].conj() * b[last]
    }

    #[inline]
    pub fn form_sqr(&self, a: &CVector) -> f64 {
        self.form(a, a).re
    }

    /// Counts of positive and negative form values on the standard basis.
    pub fn signature(&self) -> (usize, usize) {
        let dim = self.ambient_dim();
        (0..dim).fold((0, 0), |(p, m), i| {
            let e = CVector::basis(dim, i);
            let q = self.form_sqr(&e);
            if q > 0.0 {
                (p + 1, m)
            } else {
                (p, m + 1)
            }
        })
    }

    pub fn origin(&self) -> ProjectivePoint {
        ProjectivePoint { model: *self, rep: CVector::basis(self.ambient_dim(), self.n) }
    }

    fn check_field(&self, v: &CVector) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::Representation(format!("expected {} coordinates, got {}", self.ambient_dim(), v.len())));
        }
        if self.field == Field::Real && !v.is_real(1e-12) {
            return Err(Error::Representation("real model requires real coordinates".into()));
        }
        Ok(())
    }
}

/// Interior point, stored with `<rep, rep> = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    model: ModelSpace,
    rep: CVector,
}

impl ProjectivePoint {
    pub fn new(model: ModelSpace, rep: CVector) -> Result<Self> {
        model.check_field(&rep)?;
        let q = model.form_sqr(&rep);
        let scale = rep.norm_sqr();
        if q >= -1e-14 * scale || !q.is_finite() {
            return Err(Error::Representation(format!("<X, X> = {q} is not negative")));
        }
        Ok(Self { model, rep: rep.scale(1.0 / (-q).sqrt()) })
    }

    /// Wraps a representative already known to satisfy `<rep, rep> = -1`.
    /// Moderate representatives are renormalized; huge ones (far from the
    /// origin) are trusted since the form evaluation would cancel.
    pub(crate) fn from_normalized(model: ModelSpace, rep: CVector) -> Self {
        if rep.max_modulus() < 8.0 {
            let q = model.form_sqr(&rep);
            if q < 0.0 {
                return Self { model, rep: rep.scale(1.0 / (-q).sqrt()) };
            }
        }
        Self { model, rep }
    }

    pub fn model(&self) -> ModelSpace {
        self.model
    }

    pub fn rep(&self) -> &CVector {
        &self.rep
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.model == other.model && self.rep.max_normalized().wedge_norm(&other.rep.max_normalized()) <= PROJECTIVE_TOL
    }

    /// Representative of `other` rescaled by a unit scalar so that
    /// `<self, other>` is real and non-positive.
    pub fn aligned(&self, other: &Self) -> CVector {
        align_phase(&self.model, &self.rep, &other.rep)
    }
}

/// Boundary point, stored as a null vector with largest coordinate of
/// modulus one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPoint {
    model: ModelSpace,
    rep: CVector,
}

impl IdealPoint {
    pub fn new(model: ModelSpace, rep: CVector) -> Result<Self> {
        model.check_field(&rep)?;
        if rep.max_modulus() == 0.0 || !rep.max_modulus().is_finite() {
            return Err(Error::Representation("ideal representative must be nonzero".into()));
        }
        let rep = rep.max_normalized();
        let q = model.form_sqr(&rep);
        if q.abs() > NULL_TOL {
            return Err(Error::Representation(format!("<X, X> = {q:e} is not null")));
        }
        Ok(Self { model, rep })
    }

    /// Null vectors produced by exact constructions; rounding is tolerated.
    pub(crate) fn from_null(model: ModelSpace, rep: CVector) -> Self {
        Self { model, rep: rep.max_normalized() }
    }

    pub fn model(&self) -> ModelSpace {
        self.model
    }

    pub fn rep(&self) -> &CVector {
        &self.rep
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.model == other.model && self.rep.wedge_norm(&other.rep) <= PROJECTIVE_TOL
    }

    /// Representative scaled so that `<base, rep> = -1`.
    pub fn normalized_at(&self, base: &ProjectivePoint) -> CVector {
        let c = -1.0 / self.model.form(base.rep(), &self.rep);
        self.rep.scale_complex(c)
    }
}

/// Tangent vector at an interior point, represented in `X^perp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    at: ProjectivePoint,
    vec: CVector,
}

impl TangentVector {
    pub fn new(at: ProjectivePoint, vec: CVector) -> Result<Self> {
        at.model.check_field(&vec)?;
        let pairing = at.model.form(at.rep(), &vec).norm();
        if pairing > TANGENT_TOL * (1.0 + vec.norm() * at.rep.norm()) {
            return Err(Error::Precondition(format!(
                "vector is not orthogonal to its base point (|<X, v>| = {pairing:e})"
            )));
        }
        Ok(Self { at, vec })
    }

    /// Orthogonal projection of an arbitrary ambient vector onto `X^perp`.
    pub fn project(at: ProjectivePoint, vec: CVector) -> Self {
        let c = at.model.form(at.rep(), &vec);
        Self { at, vec: vec + at.rep.scale_complex(c) }
    }

    pub(crate) fn from_parts(at: ProjectivePoint, vec: CVector) -> Self {
        Self { at, vec }
    }

    pub fn at(&self) -> &ProjectivePoint {
        &self.at
    }

    pub fn vec(&self) -> &CVector {
        &self.vec
    }

    /// Real Riemannian inner product `Re <v, w>`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.at.model.form(&self.vec, &other.vec).re
    }

    pub fn norm_sqr(&self) -> f64 {
        self.at.model.form_sqr(&self.vec).max(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { at: self.at, vec: self.vec.scale(factor) }
    }

    pub fn unit(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::Normalization { norm_sqr: self.norm_sqr() });
        }
        Ok(self.scaled(1.0 / n))
    }

    /// Multiplication by the imaginary unit (the complex structure `J`).
    pub fn rotate_j(&self) -> Self {
        Self { at: self.at, vec: self.vec.scale_complex(Complex64::i()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { at: self.at, vec: self.vec + other.vec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { at: self.at, vec: self.vec - other.vec }
    }

    fn check_unit(&self) -> Result<()> {
        let q = self.norm_sqr();
        if (q - 1.0).abs() > TANGENT_TOL {
            return Err(Error::Normalization { norm_sqr: q });
        }
        Ok(())
    }
}

/// A point of the closed model: interior or at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Vertex {
    Interior(ProjectivePoint),
    Ideal(IdealPoint),
}

impl Vertex {
    pub fn model(&self) -> ModelSpace {
        match self {
            Vertex::Interior(p) => p.model(),
            Vertex::Ideal(p) => p.model(),
        }
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Vertex::Interior(a), Vertex::Interior(b)) => a.projectively_eq(b),
            (Vertex::Ideal(a), Vertex::Ideal(b)) => a.projectively_eq(b),
            _ => false,
        }
    }
}

impl From<ProjectivePoint> for Vertex {
    fn from(p: ProjectivePoint) -> Self {
        Vertex::Interior(p)
    }
}

impl From<IdealPoint> for Vertex {
    fn from(p: IdealPoint) -> Self {
        Vertex::Ideal(p)
    }
}

/// Rescales `y` by a unit scalar so that `<x, y>` is real and non-positive.
pub(crate) fn align_phase(model: &ModelSpace, x: &CVector, y: &CVector) -> CVector {
    let p = model.form(x, y);
    let m = p.norm();
    if m == 0.0 {
        return *y;
    }
    y.scale_complex(-p.conj() / m)
}

fn acosh_stable(a: f64) -> f64 {
    let y = a - 1.0;
    if y <= 0.0 {
        0.0
    } else if y < 1e-2 {
        (y + (y * (2.0 + y)).sqrt()).ln_1p()
    } else {
        a.acosh()
    }
}

/// Hyperbolic distance `arccosh |<X, Y>|`.
pub fn distance(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    if x.model != y.model {
        return Err(Error::ModelMismatch);
    }
    let model = x.model;
    let p = model.form(x.rep(), y.rep());
    let a = p.norm();
    if a < 1.0 - 1e-9 || !a.is_finite() {
        return Err(Error::Representation(format!("|<X, Y>| = {a} < 1 for normalized points")));
    }
    if a < 2.0 {
        // 2(cosh d - 1) = <X - Y', X - Y'> with Y' phase-aligned; avoids the
        // cancellation in a - 1 for nearby points
        let yy = x.aligned(y);
        let diff = *x.rep() - yy;
        let q = model.form_sqr(&diff).max(0.0);
        let d = 2.0 * (0.5 * q.sqrt()).asinh();
        if x.rep.max_modulus() < 1e3 && y.rep.max_modulus() < 1e3 {
            return Ok(d);
        }
    }
    Ok(acosh_stable(a))
}

/// `exp_o(t u)`, realized as `cosh(t) O + sinh(t) U`.
pub fn geodesic_ray(o: &ProjectivePoint, u: &TangentVector, t: f64) -> Result<ProjectivePoint> {
    if o.model != u.at.model {
        return Err(Error::ModelMismatch);
    }
    u.check_unit()?;
    let pairing = o.model.form(o.rep(), u.vec()).norm();
    if pairing > TANGENT_TOL * (1.0 + u.vec.norm() * o.rep.norm()) {
        return Err(Error::Precondition("tangent vector is not based at o".into()));
    }
    Ok(ProjectivePoint::from_normalized(o.model, o.rep.scale(t.cosh()) + u.vec.scale(t.sinh())))
}

/// Ideal endpoint `O + U` of the ray `exp_o(t u)`.
pub fn ray_endpoint(u: &TangentVector) -> Result<IdealPoint> {
    u.check_unit()?;
    Ok(IdealPoint::from_null(u.at.model, *u.at.rep() + *u.vec()))
}

/// Unit tangent at `x` of the geodesic toward the ideal point `xi`.
pub fn direction_to_ideal(x: &ProjectivePoint, xi: &IdealPoint) -> Result<TangentVector> {
    if x.model != xi.model {
        return Err(Error::ModelMismatch);
    }
    let normalized = xi.normalized_at(x);
    Ok(TangentVector::from_parts(*x, normalized - *x.rep()))
}

/// Unit tangent at `x` of the geodesic toward the interior point `y`.
pub fn direction_to_point(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<TangentVector> {
    if x.model != y.model {
        return Err(Error::ModelMismatch);
    }
    if x.projectively_eq(y) {
        return Err(Error::Degenerate("direction to a coincident point".into()));
    }
    let yy = x.aligned(y);
    let c = -x.model.form(x.rep(), &yy).re; // cosh d
    let v = yy - x.rep().scale(c);
    TangentVector::from_parts(*x, v).unit()
}

/// Point at arc length `s` from `x` on the geodesic segment toward `y`,
/// evaluated as `(sinh(d - s) X + sinh(s) Y') / sinh(d)`, which stays well
/// conditioned when both endpoints are far from the origin.
pub fn segment_point(x: &ProjectivePoint, y: &ProjectivePoint, s: f64) -> Result<ProjectivePoint> {
    let d = distance(x, y)?;
    if d < 1e-8 {
        let u = direction_to_point(x, y)?;
        return geodesic_ray(x, &u, s);
    }
    let yy = x.aligned(y);
    let sd = d.sinh();
    let rep = x.rep().scale((d - s).sinh() / sd) + yy.scale(s.sinh() / sd);
    Ok(ProjectivePoint::from_normalized(x.model, rep))
}

/// Unit-speed geodesic with prescribed ideal endpoints.
#[derive(Debug, Clone, Copy)]
pub struct IdealGeodesic {
    model: ModelSpace,
    tail: CVector,
    head: CVector,
}

impl IdealGeodesic {
    /// `gamma(t) = (e^{-t} tail + e^{t} head) / 2` with `<tail, head> = -2`.
    pub(crate) fn from_scaled(model: ModelSpace, tail: CVector, head: CVector) -> Self {
        Self { model, tail, head }
    }

    pub fn point(&self, t: f64) -> ProjectivePoint {
        let rep = self.tail.scale(0.5 * (-t).exp()) + self.head.scale(0.5 * t.exp());
        ProjectivePoint::from_normalized(self.model, rep)
    }

    /// Unit velocity at parameter `t`.
    pub fn velocity(&self, t: f64) -> TangentVector {
        let at = self.point(t);
        let v = self.head.scale(0.5 * t.exp()) - self.tail.scale(0.5 * (-t).exp());
        TangentVector::from_parts(at, v)
    }

    pub fn start(&self) -> IdealPoint {
        IdealPoint::from_null(self.model, self.tail)
    }

    pub fn end(&self) -> IdealPoint {
        IdealPoint::from_null(self.model, self.head)
    }
}

/// The geodesic from `xi` (at `-inf`) to `eta` (at `+inf`), parameterized so
/// that `gamma(0)` balances the two endpoints as seen from the model origin.
pub fn geodesic_between_ideal(xi: &IdealPoint, eta: &IdealPoint) -> Result<IdealGeodesic> {
    if xi.model != eta.model {
        return Err(Error::ModelMismatch);
    }
    let model = xi.model;
    let p = model.form(xi.rep(), eta.rep());
    if xi.projectively_eq(eta) || p.norm() < 1e-15 {
        return Err(Error::DegenerateGeodesic);
    }
    let head = eta.rep().scale_complex(-2.0 / p);
    let origin = model.origin();
    let a = model.form(origin.rep(), xi.rep()).norm();
    let b = model.form(origin.rep(), &head).norm();
    let r = (b / a).sqrt();
    Ok(IdealGeodesic { model, tail: xi.rep().scale(r), head: head.scale(1.0 / r) })
}
