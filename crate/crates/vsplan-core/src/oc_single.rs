//! Exact operating characteristics of single sampling plans by variables
//! under two-sided specification limits.
//!
//! A single plan (n, k) accepts when the estimated fraction defective is at
//! most k. For a given true fraction defective p the acceptance probability
//! depends on where the process sits between the limits, so the OC is a band:
//! for each p it is swept over the sigma range compatible with p,
//! parameterized as sigma = s * sigma0(p) with s in (0, 1] and the process
//! level on the upper of the two mean solutions of p(mu, sigma) = p.
//!
//! `oc_ml` and `oc_mvu` are exact single integrals (respectively a double
//! integral) of normal tail differences against the chi-square density of
//! the sample variance; both reduce to the one-sided noncentral-t OC as
//! s -> 0 and the far limit stops mattering.

use serde::Serialize;

use crate::estimators::SpecLimits;
use crate::numerics::{
    chi2_bulk, chi2_pdf, find_root, integrate, maximize_1d, std_normal_cdf, std_normal_pdf,
    std_normal_quantile, sym_beta_cdf, sym_beta_inv, BetaParams, QuadratureSpec,
};
use crate::{Error, Result};

/// Which estimator of the fraction defective drives the acceptance rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Procedure {
    Ml,
    Mvu,
}

impl std::fmt::Display for Procedure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Procedure::Ml => "ml",
            Procedure::Mvu => "mvu",
        })
    }
}

/// Single sampling plan: sample size and acceptance constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SinglePlan {
    n: u32,
    k: f64,
}

impl SinglePlan {
    pub fn new(n: u32, k: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "single plan needs n >= 2, got {n}"
            )));
        }
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "acceptance constant must lie in (0,1), got {k}"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// One point of an OC or ASN band: process fraction defective p, scale
/// fraction s = sigma / sigma0(p), the implied (sigma, mu), and the value of
/// the evaluated characteristic there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandPoint {
    pub p: f64,
    pub s: f64,
    pub sigma: f64,
    pub mu: f64,
    pub value: f64,
}

/// Which end of a band to locate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Min,
    Max,
}

/// Largest sigma compatible with fraction defective p: the process centered
/// at the midpoint has p(mid, sigma0) = p.
pub fn sigma0(p: f64, limits: &SpecLimits) -> f64 {
    assert!(0.0 < p && p < 1.0, "sigma0 needs p in (0,1)");
    (limits.lower() - limits.upper()) / (2.0 * std_normal_quantile(0.5 * p))
}

/// Solve Phi((L-U)/sigma - z) + Phi(z) = p for z on [Phi^-1(p/2), Phi^-1(p)].
///
/// The bracket ends are the centered (sigma = sigma0) and one-sided
/// (sigma -> 0) limits; f is strictly increasing between them, and the
/// endpoint clamps absorb the roundoff cases that arise when a band sweep
/// hits s = 1 exactly.
fn invert_mu_z(sigma: f64, p: f64, limits: &SpecLimits) -> f64 {
    let zlo = std_normal_quantile(0.5 * p);
    let zhi = std_normal_quantile(p);
    let w = (limits.lower() - limits.upper()) / sigma;
    let f = |z: f64| std_normal_cdf(w - z) + std_normal_cdf(z) - p;
    if f(zlo) >= 0.0 {
        return zlo;
    }
    if f(zhi) <= 0.0 {
        return zhi;
    }
    find_root(f, zlo, zhi, 0.0).expect("sign change guaranteed by the clamps")
}

/// Upper solution mu of p(mu, sigma) = p, i.e. the one with mu >= midpoint.
/// The lower solution is its mirror L + U - mu.
///
/// Errors when sigma alone already forces more than p defective
/// (sigma > sigma0(p)).
pub fn invert_mu(sigma: f64, p: f64, limits: &SpecLimits) -> Result<f64> {
    assert!(sigma > 0.0 && (0.0..1.0).contains(&p) && p > 0.0);
    let p_min = 2.0 * std_normal_cdf(0.5 * (limits.lower() - limits.upper()) / sigma);
    if p_min > p && sigma > sigma0(p, limits) {
        return Err(Error::InvalidArgument(format!(
            "no process level attains p = {p} at sigma = {sigma}: minimum is {p_min}"
        )));
    }
    Ok(limits.upper() + sigma * invert_mu_z(sigma, p, limits))
}

/// Acceptance probability of the plan under the ML estimator at (mu, sigma).
///
/// The acceptance region is an interval for the mean whose endpoints depend
/// on the sample standard deviation, which turns the OC into a single
/// integral against the chi-square(n-1) density: with sig_t = sigma
/// sqrt(t/nu) and m(sig_t) the upper mean solution of p(., sig_t) = k,
///
/// ```text
/// OC = int { Phi(sqrt(n)(m - mu)/sigma) - Phi(sqrt(n)(m' - mu)/sigma) } g_nu(t) dt
/// ```
///
/// cut off at t = C where the two solutions merge; above C no sample of that
/// dispersion can be accepted.
pub fn oc_ml(
    plan: &SinglePlan,
    mu: f64,
    sigma: f64,
    limits: &SpecLimits,
    spec: &QuadratureSpec,
) -> Result<f64> {
    assert!(sigma > 0.0, "oc_ml needs sigma > 0");
    let n = plan.n as f64;
    let nu = n - 1.0;
    let k = plan.k;
    let zk2 = std_normal_quantile(0.5 * k);
    let c_cut = nu * limits.width() * limits.width() / (4.0 * sigma * sigma * zk2 * zk2);
    let (mut tlo, thi) = chi2_bulk(nu, 1e-14);
    let hi = c_cut.min(thi);
    if hi <= tlo * (1.0 + 1e-12) {
        // acceptance only possible below the bulk; integrate the remnant
        tlo = 0.0;
    }
    if hi <= tlo {
        return Ok(0.0);
    }
    let sqrt_n = n.sqrt();
    let integrand = |t: f64| {
        let sig_t = sigma * (t / nu).sqrt();
        let m = limits.upper() + sig_t * invert_mu_z(sig_t, k, limits);
        let m_mirror = limits.lower() + limits.upper() - m;
        let hi_tail = std_normal_cdf(sqrt_n * (m - mu) / sigma);
        let lo_tail = std_normal_cdf(sqrt_n * (m_mirror - mu) / sigma);
        (hi_tail - lo_tail) * chi2_pdf(t, nu)
    };
    let q = integrate(integrand, tlo, hi, spec)?;
    Ok(q.value.clamp(0.0, 1.0))
}

/// Acceptance probability of the plan under the MVU estimator at (mu, sigma).
///
/// Acceptance is the event B(V) + B(W) <= k with B the symmetric beta cdf of
/// the standardized distances to the limits. Conditioning on the variance
/// gives one single integral for the part where the lower-limit statistic is
/// clamped plus a double integral over the contributing (variance, V) region:
///
/// ```text
/// OC = int_0^{A(yk,0)} { Phi(-dU - r) - Phi(-dL + (1-2yk) r) } g_nu(t) dt
///    + 2 int_0^{yk} int_0^{A(psi(y),y)} phi(-dU + (2y-1) r) r g_nu(t) dt dy,
/// ```
///
/// r = sqrt(t nu), psi(y) = B^-1(k - B(y)), dU/dL the sqrt(n)-standardized
/// distances of mu to the limits, and A(x, y) the variance cutoff where the
/// two beta arguments can still sum below k. Requires n >= 4.
pub fn oc_mvu(
    plan: &SinglePlan,
    mu: f64,
    sigma: f64,
    limits: &SpecLimits,
    spec: &QuadratureSpec,
) -> Result<f64> {
    assert!(sigma > 0.0, "oc_mvu needs sigma > 0");
    let n_int = plan.n;
    let bp = BetaParams::new(n_int).map_err(|_| {
        Error::InvalidArgument(format!(
            "MVU operating characteristic needs n >= 4, got {n_int}"
        ))
    })?;
    let n = n_int as f64;
    let nu = n - 1.0;
    let k = plan.k;
    let sqrt_n = n.sqrt();
    let d_u = sqrt_n * (mu - limits.upper()) / sigma;
    let d_l = sqrt_n * (mu - limits.lower()) / sigma;
    let yk = sym_beta_inv(k, &bp);
    let (tlo, thi) = chi2_bulk(nu, 1e-14);
    let a_cut = |x: f64, y: f64| -> f64 {
        let rem = 1.0 - x - y;
        if rem <= 0.0 {
            return f64::INFINITY;
        }
        n * limits.width() * limits.width() / (4.0 * sigma * sigma * nu * rem * rem)
    };
    // tighter tolerances for the inner level keep its quadrature noise out of
    // the outer error estimate
    let inner_spec = QuadratureSpec {
        abs_tol: (spec.abs_tol * 1e-2).max(5e-14),
        rel_tol: (spec.rel_tol * 1e-2).max(5e-14),
        max_subdivisions: spec.max_subdivisions,
    };

    let mut total = 0.0;
    let b1 = a_cut(yk, 0.0).min(thi);
    let a1 = if b1 > tlo * (1.0 + 1e-12) { tlo } else { 0.0 };
    if b1 > a1 {
        let f1 = |t: f64| {
            let r = (t * nu).sqrt();
            (std_normal_cdf(-d_u - r) - std_normal_cdf(-d_l + (1.0 - 2.0 * yk) * r))
                * chi2_pdf(t, nu)
        };
        total += integrate(f1, a1, b1, spec)?.value;
    }

    let inner_err = std::cell::Cell::new(None::<Error>);
    let outer = |y: f64| -> f64 {
        let rem = (k - sym_beta_cdf(y, &bp)).clamp(0.0, 1.0);
        let psi = sym_beta_inv(rem, &bp);
        let bi = a_cut(psi, y).min(thi);
        let ai = if bi > tlo * (1.0 + 1e-12) { tlo } else { 0.0 };
        if bi <= ai {
            return 0.0;
        }
        let g = |t: f64| {
            let r = (t * nu).sqrt();
            std_normal_pdf(-d_u + (2.0 * y - 1.0) * r) * r * chi2_pdf(t, nu)
        };
        match integrate(g, ai, bi, &inner_spec) {
            Ok(q) => q.value,
            Err(e) => {
                inner_err.set(Some(e));
                0.0
            }
        }
    };
    if yk > 0.0 {
        let t2 = integrate(outer, 0.0, yk, spec)?.value;
        if let Some(e) = inner_err.take() {
            return Err(e);
        }
        total += 2.0 * t2;
    }
    Ok(total.clamp(0.0, 1.0))
}

/// OC under the chosen procedure.
pub fn oc(
    plan: &SinglePlan,
    procedure: Procedure,
    mu: f64,
    sigma: f64,
    limits: &SpecLimits,
    spec: &QuadratureSpec,
) -> Result<f64> {
    match procedure {
        Procedure::Ml => oc_ml(plan, mu, sigma, limits, spec),
        Procedure::Mvu => oc_mvu(plan, mu, sigma, limits, spec),
    }
}

/// Scale floor of the band sweep: s ranges over [S_FLOOR, 1].
pub const S_FLOOR: f64 = 1e-4;

/// Extreme of the OC over all process settings with fraction defective p:
/// sigma sweeps (S_FLOOR, 1] * sigma0(p) with mu on the upper solution
/// branch. Returns (sigma at the extreme, extreme value).
pub fn oc_band_extreme(
    plan: &SinglePlan,
    procedure: Procedure,
    p: f64,
    limits: &SpecLimits,
    spec: &QuadratureSpec,
    extreme: Extreme,
) -> Result<(f64, f64)> {
    let s0 = sigma0(p, limits);
    let err = std::cell::Cell::new(None::<Error>);
    let sign = match extreme {
        Extreme::Min => -1.0,
        Extreme::Max => 1.0,
    };
    let f = |s: f64| -> f64 {
        let sigma = s * s0;
        let mu = limits.upper() + sigma * invert_mu_z(sigma, p, limits);
        match oc(plan, procedure, mu, sigma, limits, spec) {
            Ok(v) => sign * v,
            Err(e) => {
                err.set(Some(e));
                f64::NEG_INFINITY
            }
        }
    };
    let (s_star, v) = maximize_1d(f, S_FLOOR, 1.0);
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok((s_star * s0, sign * v))
}
