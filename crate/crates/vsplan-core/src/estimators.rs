//! Specification limits, sample statistics, and the two point estimators of
//! the fraction defective for a normal characteristic with unknown standard
//! deviation.
//!
//! The fraction of product outside `[L, U]` at process setting (mu, sigma) is
//!
//! ```text
//! p(mu, sigma) = Phi((L - mu) / sigma) + Phi((mu - U) / sigma)
//! ```
//!
//! `ml_estimate` plugs the sample mean and standard deviation into p;
//! `mvu_estimate` is the minimum variance unbiased estimator, a pair of
//! symmetric-beta tail integrals of the standardized distances to the limits.

use serde::Serialize;

use crate::numerics::{std_normal_cdf, sym_beta_cdf, BetaParams};
use crate::{Error, Result};

/// Two-sided specification interval. Construction enforces L < U.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecLimits {
    lower: f64,
    upper: f64,
}

impl SpecLimits {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::InvalidArgument(format!(
                "specification limits need finite lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Interval midpoint (L + U) / 2, the process level of minimal fraction
    /// defective for any sigma.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// Interval width U - L.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Sample size, mean, and standard deviation of a measurement sample.
///
/// n > 3 (the MVU estimator needs it; smaller samples have no business in a
/// variables plan) and sd > 0: a degenerate sample is an input error, not an
/// estimator edge case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    n: u32,
    mean: f64,
    sd: f64,
}

impl SampleStats {
    pub fn new(n: u32, mean: f64, sd: f64) -> Result<Self> {
        if n <= 3 {
            return Err(Error::InvalidArgument(format!(
                "sample statistics need n > 3, got {n}"
            )));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidArgument("sample mean must be finite".into()));
        }
        if !(sd.is_finite() && sd > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sample standard deviation must be positive and finite, got {sd}"
            )));
        }
        Ok(Self { n, mean, sd })
    }

    /// Compute stats from raw observations (divisor n - 1).
    pub fn from_sample(xs: &[f64]) -> Result<Self> {
        let n = xs.len() as u32;
        if n <= 3 {
            return Err(Error::InvalidArgument(format!(
                "sample statistics need n > 3 observations, got {n}"
            )));
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
        let sd = (ss / (n as f64 - 1.0)).sqrt();
        Self::new(n, mean, sd)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }
}

/// True fraction defective p(mu, sigma) for the limits.
pub fn fraction_defective(mu: f64, sigma: f64, limits: &SpecLimits) -> f64 {
    assert!(sigma > 0.0, "fraction_defective needs sigma > 0");
    std_normal_cdf((limits.lower - mu) / sigma) + std_normal_cdf((mu - limits.upper) / sigma)
}

/// Maximum likelihood estimate: p(x_bar, s).
pub fn ml_estimate(stats: &SampleStats, limits: &SpecLimits) -> f64 {
    fraction_defective(stats.mean, stats.sd, limits)
}

/// Minimum variance unbiased estimate of the fraction defective.
///
/// With c = sqrt(n) / (n - 1) and B the Beta((n-2)/2, (n-2)/2) distribution
/// function,
///
/// ```text
/// p_hat = B(V) + B(W),
/// V = 1/2 - c (x_bar - L) / (2 s),  W = 1/2 - c (U - x_bar) / (2 s),
/// ```
///
/// V and W clamped to [0, 1]. When the mean lies inside the limits the two
/// arguments satisfy V + W < 1, so p_hat < 1.
pub fn mvu_estimate(stats: &SampleStats, limits: &SpecLimits) -> f64 {
    let n = stats.n as f64;
    let params = BetaParams::new(stats.n).expect("SampleStats guarantees n > 3");
    let c = n.sqrt() / (n - 1.0);
    let v = (0.5 - 0.5 * c * (stats.mean - limits.lower) / stats.sd).clamp(0.0, 1.0);
    let w = (0.5 - 0.5 * c * (limits.upper - stats.mean) / stats.sd).clamp(0.0, 1.0);
    let p_hat = sym_beta_cdf(v, &params) + sym_beta_cdf(w, &params);
    if stats.mean > limits.lower && stats.mean < limits.upper {
        debug_assert!(p_hat <= 1.0 + 1e-12);
    }
    p_hat.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits19() -> SpecLimits {
        SpecLimits::new(1.0, 9.0).unwrap()
    }

    #[test]
    fn limits_validation() {
        assert!(SpecLimits::new(2.0, 2.0).is_err());
        assert!(SpecLimits::new(3.0, 1.0).is_err());
        assert!(SpecLimits::new(f64::NAN, 1.0).is_err());
        let l = limits19();
        assert_eq!(l.midpoint(), 5.0);
        assert_eq!(l.width(), 8.0);
    }

    #[test]
    fn stats_validation() {
        assert!(SampleStats::new(3, 0.0, 1.0).is_err());
        assert!(SampleStats::new(10, 0.0, 0.0).is_err());
        assert!(SampleStats::new(10, 0.0, -1.0).is_err());
        assert!(SampleStats::new(4, 5.0, 2.0).is_ok());
        let s = SampleStats::from_sample(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.n(), 4);
        assert!((s.mean() - 2.5).abs() < 1e-15);
        assert!((s.sd() - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn fraction_defective_centered_symmetric() {
        let l = limits19();
        for &sigma in &[0.5, 1.0, 2.0, 4.0] {
            let p = fraction_defective(5.0, sigma, &l);
            assert!((p - 2.0 * std_normal_cdf(-4.0 / sigma)).abs() < 1e-16);
            // centered is the minimum over mu
            assert!(fraction_defective(5.3, sigma, &l) > p);
            assert!(fraction_defective(4.7, sigma, &l) > p);
            // and symmetric about the midpoint
            let d = fraction_defective(5.0 + 1.1, sigma, &l)
                - fraction_defective(5.0 - 1.1, sigma, &l);
            assert!(d.abs() < 1e-16);
        }
    }

    #[test]
    fn ml_estimate_is_plugin() {
        let l = limits19();
        let s = SampleStats::new(5, 8.0, 2.0).unwrap();
        let expect = std_normal_cdf(-3.5) + std_normal_cdf(-0.5);
        assert!((ml_estimate(&s, &l) - expect).abs() < 1e-16);
    }

    #[test]
    fn mvu_estimate_closed_form_n5() {
        // for n = 5 the symmetric beta has a = 3/2 and
        // B(x) = [asin(2x-1) + pi/2 + 2 (2x-1) sqrt(x (1-x))] / pi
        let closed = |x: f64| {
            if x <= 0.0 {
                0.0
            } else if x >= 1.0 {
                1.0
            } else {
                ((2.0 * x - 1.0).asin()
                    + std::f64::consts::FRAC_PI_2
                    + 2.0 * (2.0 * x - 1.0) * (x * (1.0 - x)).sqrt())
                    / std::f64::consts::PI
            }
        };
        let l = limits19();
        let c = 5.0f64.sqrt() / 4.0;
        for &(mean, sd) in &[(8.0, 2.0), (5.0, 1.5), (2.2, 0.8), (0.5, 1.0), (9.5, 3.0)] {
            let s = SampleStats::new(5, mean, sd).unwrap();
            let v = (0.5 - 0.5 * c * (mean - 1.0) / sd).clamp(0.0, 1.0);
            let w = (0.5 - 0.5 * c * (9.0 - mean) / sd).clamp(0.0, 1.0);
            let expect = closed(v) + closed(w);
            assert!(
                (mvu_estimate(&s, &l) - expect).abs() < 1e-13,
                "mean {mean} sd {sd}"
            );
        }
    }

    #[test]
    fn mvu_clamps_far_out_means() {
        let l = limits19();
        // mean far below L: V clamps to 1, W clamps to 0
        let s = SampleStats::new(6, -40.0, 1.0).unwrap();
        assert_eq!(mvu_estimate(&s, &l), 1.0);
        // mean dead center with tiny sd: both arguments clamp to 0
        let s = SampleStats::new(6, 5.0, 1e-3).unwrap();
        assert_eq!(mvu_estimate(&s, &l), 0.0);
    }

    #[test]
    fn estimators_affine_invariant() {
        let l = limits19();
        let s = SampleStats::new(12, 6.3, 1.7).unwrap();
        for &(a, b) in &[(2.0, -3.0), (0.25, 10.0), (117.0, 0.4)] {
            let lt = SpecLimits::new(a * 1.0 + b, a * 9.0 + b).unwrap();
            let st = SampleStats::new(12, a * 6.3 + b, a * 1.7).unwrap();
            assert!((ml_estimate(&s, &l) - ml_estimate(&st, &lt)).abs() < 1e-12);
            assert!((mvu_estimate(&s, &l) - mvu_estimate(&st, &lt)).abs() < 1e-12);
        }
    }

    #[test]
    fn estimates_stay_in_unit_interval() {
        let l = limits19();
        for n in [4u32, 5, 9, 40] {
            for i in 0..60 {
                let mean = -5.0 + i as f64 * 0.35;
                for &sd in &[0.05, 0.7, 3.0, 30.0] {
                    let s = SampleStats::new(n, mean, sd).unwrap();
                    let ml = ml_estimate(&s, &l);
                    let mvu = mvu_estimate(&s, &l);
                    assert!((0.0..1.0).contains(&ml) || ml <= 1.0);
                    assert!((0.0..=1.0).contains(&mvu));
                    if mean > 1.0 && mean < 9.0 {
                        assert!(mvu <= 1.0);
                    }
                }
            }
        }
    }
}
