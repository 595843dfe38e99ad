use serde::{Deserialize, Serialize};

use super::ambient::{ambient_distance, AmbientOptions};
use super::{radial_project_horosphere, BoundaryChart};
use crate::error::{Error, Result};
use crate::heisen::{cc_solve, horizontal_length, CcMethod, HorizontalPath, VariationalOptions};
use crate::hypmodel::{distance, IdealPoint, ProjectivePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HoroMethod {
    /// Carnot-Caratheodory distance of the Heisenberg preimages.
    Heis,
    /// Horizontal path optimization on the horosphere inside the model.
    Ambient,
}

/// `d_b(xi, eta)` for the Busemann function of the chart.
pub fn horospherical_distance(
    bc: &BoundaryChart,
    xi: &IdealPoint,
    eta: &IdealPoint,
    method: HoroMethod,
) -> Result<f64> {
    horospherical_solve(bc, xi, eta, method, CcMethod::Shooting, &AmbientOptions::default())
}

/// As [`horospherical_distance`], choosing the Heisenberg solver and the
/// ambient discretization.
pub fn horospherical_solve(
    bc: &BoundaryChart,
    xi: &IdealPoint,
    eta: &IdealPoint,
    method: HoroMethod,
    cc_method: CcMethod,
    ambient: &AmbientOptions,
) -> Result<f64> {
    let p = bc.preimage(xi)?;
    let q = bc.preimage(eta)?;
    match method {
        HoroMethod::Heis => Ok(cc_solve(&p, &q, cc_method, &VariationalOptions::default())?.distance),
        HoroMethod::Ambient => ambient_distance(bc, &p, &q, ambient),
    }
}

/// Radial image of a boundary curve on the horosphere of level `t`.
#[derive(Debug, Clone)]
pub struct LevelCurve {
    pub level: f64,
    pub points: Vec<ProjectivePoint>,
    /// Length of the level polyline measured in the model.
    pub length: f64,
    /// Carnot-Caratheodory length of the boundary curve.
    pub boundary_length: f64,
}

impl LevelCurve {
    /// `length / boundary_length`, which tends to `e^t`.
    pub fn ratio(&self) -> f64 {
        self.length / self.boundary_length
    }
}

/// Projects a horizontal boundary curve, given in Heisenberg coordinates,
/// radially onto the horosphere `b = t`.
pub fn project_curve_to_level(bc: &BoundaryChart, curve: &HorizontalPath, t: f64) -> Result<LevelCurve> {
    let boundary_length = horizontal_length(curve)?;
    if boundary_length == 0.0 {
        return Err(Error::Degenerate("boundary curve has zero length".into()));
    }
    let points = curve
        .samples()
        .iter()
        .map(|p| radial_project_horosphere(bc.chart(), &bc.ideal(p)?, t))
        .collect::<Result<Vec<_>>>()?;
    let length = points.windows(2).map(|w| distance(&w[0], &w[1])).sum::<Result<f64>>()?;
    Ok(LevelCurve { level: t, points, length, boundary_length })
}
