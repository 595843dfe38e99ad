use super::{check_dims, dilation, group_mul, herm, HeisPoint};
use crate::error::{Error, Result};
use crate::vector::CVector;

/// Per-step tolerance on the vertical defect of a horizontal polyline.
pub const HORIZONTAL_TOL: f64 = 1e-8;

/// Polyline whose consecutive samples are joined by left translates of
/// horizontal one-parameter subgroups.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalPath {
    samples: Vec<HeisPoint>,
}

impl HorizontalPath {
    pub fn new(samples: Vec<HeisPoint>) -> Result<Self> {
        let first = samples.first().ok_or_else(|| Error::Degenerate("empty path".into()))?;
        for p in &samples {
            check_dims(first.dim(), p.dim())?;
        }
        Ok(Self { samples })
    }

    /// Lifts a curve in `E1` starting at `start`, reconstructing the vertical
    /// coordinate from the group law so every step is horizontal.
    pub fn from_plane_curve(start: HeisPoint, zs: &[CVector]) -> Result<Self> {
        let mut samples = vec![start];
        let mut prev = start;
        for z in zs {
            check_dims(prev.dim(), z.len())?;
            let t = prev.t() + herm(prev.z(), z).im;
            prev = HeisPoint::new(*z, t);
            samples.push(prev);
        }
        Ok(Self { samples })
    }

    /// Straight horizontal segment `p exp(s v)`, `s` in `[0, 1]`.
    pub fn segment(p: &HeisPoint, v: &CVector, resolution: usize) -> Result<Self> {
        check_dims(p.dim(), v.len())?;
        let resolution = resolution.max(1);
        let samples = (0..=resolution)
            .map(|k| {
                let s = k as f64 / resolution as f64;
                group_mul(p, &HeisPoint::new(v.scale(s), 0.0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[HeisPoint] {
        &self.samples
    }

    pub fn resolution(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn start(&self) -> &HeisPoint {
        &self.samples[0]
    }

    pub fn end(&self) -> &HeisPoint {
        &self.samples[self.samples.len() - 1]
    }

    /// Vertical defect `dt - Im <z_k, z_{k+1}>` of step `k`.
    pub fn step_defect(&self, k: usize) -> f64 {
        let (a, b) = (&self.samples[k], &self.samples[k + 1]);
        b.t() - a.t() - herm(a.z(), b.z()).im
    }

    /// Index and value of the largest vertical defect.
    pub fn worst_defect(&self) -> Option<(usize, f64)> {
        (0..self.resolution()).map(|k| (k, self.step_defect(k))).max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
    }

    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        let samples = self.samples.iter().map(|p| dilation(lambda, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self { samples })
    }

    /// Left translate by `g`.
    pub fn translated(&self, g: &HeisPoint) -> Result<Self> {
        let samples = self.samples.iter().map(|p| group_mul(g, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self { samples })
    }

    /// Inserts the midpoint of every step along its one-parameter subgroup.
    pub fn refined(&self) -> Self {
        let mut samples = Vec::with_capacity(2 * self.samples.len() - 1);
        for w in self.samples.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let dz = (*b.z() - *a.z()).scale(0.5);
            let theta = 0.5 * (b.t() - a.t() - herm(a.z(), b.z()).im);
            samples.push(*a);
            samples.push(group_mul(a, &HeisPoint::new(dz, theta)).expect("same dimension"));
        }
        samples.push(*self.end());
        Self { samples }
    }
}

/// Carnot-Caratheodory length `sum |dz_k|` of a horizontal polyline.
pub fn horizontal_length(path: &HorizontalPath) -> Result<f64> {
    if let Some((step, value)) = path.worst_defect() {
        let scale = path.samples.iter().fold(1.0f64, |m, p| m.max(p.z().norm_sqr()).max(p.t().abs()));
        if value.abs() > HORIZONTAL_TOL * scale {
            return Err(Error::NotHorizontal { step, value });
        }
    }
    Ok(path.samples.windows(2).map(|w| (*w[1].z() - *w[0].z()).norm()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn lengths_of_simple_paths() {
        let p = HeisPoint::planar(Complex64::new(0.5, 0.1), 2.0);
        let constant = HorizontalPath::new(vec![p; 5]).unwrap();
        assert_eq!(horizontal_length(&constant).unwrap(), 0.0);
        let v = CVector::from_slice(&[Complex64::new(3.0, 4.0)]);
        let seg = HorizontalPath::segment(&HeisPoint::identity(1), &v, 16).unwrap();
        assert!((horizontal_length(&seg).unwrap() - 5.0).abs() < 1e-14);
        let dil = seg.dilated(0.5).unwrap();
        assert!((horizontal_length(&dil).unwrap() - 2.5).abs() < 1e-14);
        let moved = HorizontalPath::segment(&p, &v, 16).unwrap();
        assert!((horizontal_length(&moved).unwrap() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_vertical_steps() {
        let a = HeisPoint::identity(1);
        let b = HeisPoint::new(CVector::zeros(1), 0.1);
        let path = HorizontalPath::new(vec![a, a, b]).unwrap();
        assert_eq!(horizontal_length(&path), Err(Error::NotHorizontal { step: 1, value: 0.1 }));
    }

    #[test]
    fn refinement_keeps_endpoints_and_length() {
        let zs: Vec<CVector> = (1..=6)
            .map(|k| CVector::from_slice(&[Complex64::from_polar(1.0, k as f64) - Complex64::new(1.0, 0.0)]))
            .collect();
        let path = HorizontalPath::from_plane_curve(HeisPoint::identity(1), &zs).unwrap();
        let fine = path.refined();
        assert_eq!(fine.resolution(), 12);
        assert!((fine.end().t() - path.end().t()).abs() < 1e-14);
        let (l0, l1) = (horizontal_length(&path).unwrap(), horizontal_length(&fine).unwrap());
        assert!((l0 - l1).abs() < 1e-14);
    }
}
