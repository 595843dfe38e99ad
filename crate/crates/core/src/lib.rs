//! Metric geometry of the real and complex hyperbolic spaces and of their
//! boundaries at infinity.
//!
//! The crate is organized bottom-up:
//!
//! * [`hypmodel`]: projective models, distances, geodesics, Busemann
//!   functions, Gromov products and the curvature eigensplit.
//! * [`heisen`]: the Heisenberg group with its Carnot-Caratheodory and
//!   left-invariant Riemannian distances.
//! * [`corr`]: horosphere and boundary charts relating the two, the
//!   horospherical metric `d_b` and the spherical metric `d_inf`.
//! * [`tri`]: equiradial points of finite, ideal and mixed triangles.
//! * [`verify`]: a seeded batch harness that checks the bilipschitz
//!   comparisons between visual metrics and Gromov products.

pub mod batch;
pub mod corr;
pub mod error;
pub mod heisen;
pub mod hypmodel;
pub mod solve;
pub mod tri;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
