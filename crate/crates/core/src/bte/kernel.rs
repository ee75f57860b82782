use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::OrdinateSet;
use crate::dg::CoefficientField;
use crate::geometry::Point;
use crate::{Error, Result};

/// Angular dependence of the scattering kernel on `mu = omega . omega'`.
#[derive(Clone)]
pub enum AngularProfile {
    Isotropic(f64),
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for AngularProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Isotropic(c) => f.debug_tuple("Isotropic").field(c).finish(),
            Self::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}

/// `sigma_s(x, mu) = spatial(x) * angular(mu)`.
#[derive(Clone, Debug)]
pub struct ScatteringKernel {
    pub angular: AngularProfile,
    pub spatial: Option<CoefficientField>,
}

impl ScatteringKernel {
    pub fn constant(sigma_s: f64) -> Self {
        Self {
            angular: AngularProfile::Isotropic(sigma_s),
            spatial: None,
        }
    }

    pub fn angular(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            angular: AngularProfile::Callable(Arc::new(f)),
            spatial: None,
        }
    }

    pub fn with_spatial(mut self, spatial: CoefficientField) -> Self {
        self.spatial = Some(spatial);
        self
    }

    #[inline]
    pub fn angular_at(&self, mu: f64) -> f64 {
        match &self.angular {
            AngularProfile::Isotropic(c) => *c,
            AngularProfile::Callable(f) => f(mu),
        }
    }

    #[inline]
    pub fn spatial_at(&self, x: Point) -> f64 {
        self.spatial.as_ref().map_or(1.0, |s| s.at(x))
    }

    #[inline]
    pub fn at(&self, x: Point, mu: f64) -> f64 {
        self.spatial_at(x) * self.angular_at(mu)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.angular, AngularProfile::Isotropic(c) if c == 0.0)
            || matches!(&self.spatial, Some(CoefficientField::Constant(s)) if *s == 0.0)
    }

    /// `K[k][l] = w_l * angular(omega_k . omega_l)`, row-major.
    pub fn coupling_matrix(&self, ords: &OrdinateSet) -> Vec<f64> {
        let n = ords.len();
        let mut k_mat = Vec::with_capacity(n * n);
        for k in 0..n {
            let wk = ords.vector(k);
            for l in 0..n {
                k_mat.push(ords.weights[l] * self.angular_at(wk.dot(ords.vector(l))));
            }
        }
        k_mat
    }
}

/// `inf_{x, k} [sigma_t(x) - sum_l w_l sigma_s(x, omega_k . omega_l)]` over
/// the sample points; fails unless it is positive.
pub fn coercivity_check(
    sigma_t: &CoefficientField,
    kernel: &ScatteringKernel,
    ords: &OrdinateSet,
    samples: &[Point],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no sample points"));
    }
    let k_mat = kernel.coupling_matrix(ords);
    let n = ords.len();
    let row_sums: Vec<f64> = (0..n).map(|k| k_mat[k * n..(k + 1) * n].iter().sum()).collect();
    let mut worst: Option<(f64, Point, usize)> = None;
    for &x in samples {
        let st = sigma_t.at(x);
        let sp = kernel.spatial_at(x);
        for (k, r) in row_sums.iter().enumerate() {
            let margin = st - sp * r;
            if worst.is_none_or(|(m, _, _)| margin < m) {
                worst = Some((margin, x, k));
            }
        }
    }
    let (margin, point, ordinate) = worst.expect("samples are non-empty");
    if margin > 0.0 && margin.is_finite() {
        Ok(margin)
    } else {
        Err(Error::NotCoercive {
            point,
            ordinate,
            margin,
        })
    }
}

/// `sup_{x, k} sum_l w_l sigma_s(x, omega_k . omega_l) / sigma_t(x)` over
/// the sample points.
pub fn scattering_ratio(
    sigma_t: &CoefficientField,
    kernel: &ScatteringKernel,
    ords: &OrdinateSet,
    samples: &[Point],
) -> f64 {
    let k_mat = kernel.coupling_matrix(ords);
    let n = ords.len();
    let max_row = (0..n)
        .map(|k| k_mat[k * n..(k + 1) * n].iter().sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    samples
        .iter()
        .map(|&x| kernel.spatial_at(x) * max_row / sigma_t.at(x))
        .fold(0.0, f64::max)
}
