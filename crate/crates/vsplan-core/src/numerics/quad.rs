//! Adaptive Gauss-Kronrod quadrature and Gauss-Legendre node generation.
//!
//! The adaptive driver pairs the 7-point Gauss rule with its 15-point Kronrod
//! extension and bisects the segment with the largest error estimate until
//! the requested tolerance is met (QUADPACK's QK15/QAG scheme, Piessens et
//! al. 1983). Kronrod nodes are interior points, so integrands may be
//! singular or undefined at the interval endpoints.

use crate::{Error, Result};

/// Tolerances and subdivision cap for [`integrate`].
///
/// The integration stops when the summed error estimate drops below
/// `max(abs_tol, rel_tol * |integral|)`. `max_subdivisions` bounds the number
/// of bisections before the driver gives up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

/// Integral value with the achieved error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

// 15-point Kronrod abscissae (positive half); odd indices are the embedded
// 7-point Gauss abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One Gauss-Kronrod 15 panel over [a, b].
fn qk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    for j in 0..7 {
        let absc = half * XGK[j];
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        let fsum = f1 + f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0f64).min((200.0 * err / resasc).powf(1.5));
    }
    let round = 50.0 * f64::EPSILON * resabs;
    if round > f64::MIN_POSITIVE {
        err = err.max(round);
    }
    (value, err)
}

/// Adaptive integral of f over [a, b].
///
/// Returns the value and the achieved error estimate, or an error if the
/// subdivision cap is exhausted before the tolerance is met. Endpoints are
/// never evaluated. a > b integrates with the usual sign flip.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(
            "integrate needs finite endpoints".into(),
        ));
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let (v, e) = qk15(&mut f, lo, hi);
    let mut segs = vec![Segment {
        a: lo,
        b: hi,
        value: v,
        error: e,
    }];

    for _ in 0..spec.max_subdivisions {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            break;
        }
        // bisect the worst segment
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            if s.error > segs[worst].error {
                worst = i;
            }
        }
        let Segment { a: sa, b: sb, .. } = segs[worst];
        let mid = 0.5 * (sa + sb);
        if mid <= sa || mid >= sb {
            break; // interval at machine resolution
        }
        let (v1, e1) = qk15(&mut f, sa, mid);
        let (v2, e2) = qk15(&mut f, mid, sb);
        segs[worst] = Segment {
            a: sa,
            b: mid,
            value: v1,
            error: e1,
        };
        segs.push(Segment {
            a: mid,
            b: sb,
            value: v2,
            error: e2,
        });
    }

    // deterministic summation order independent of the splitting history
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let total: f64 = segs.iter().map(|s| s.value).sum();
    let err: f64 = segs.iter().map(|s| s.error).sum();
    if err > spec.abs_tol.max(spec.rel_tol * total.abs()) {
        return Err(Error::NoConvergence(format!(
            "integrate: error estimate {err:.3e} after {} subdivisions",
            spec.max_subdivisions
        )));
    }
    Ok(QuadResult {
        value: sign * total,
        error_estimate: err,
    })
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence (NR 4.6).
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x| x * x, 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        let r = integrate(|x| 3.0 * x.powi(5) - x, -1.0, 2.0, &spec).unwrap();
        assert!((r.value - (0.5 * 64.0 - 0.5 * 1.0 - 2.0 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_and_peaked_integrands() {
        let spec = QuadratureSpec::default();
        // int_0^10 sin x dx = 1 - cos 10
        let r = integrate(f64::sin, 0.0, 10.0, &spec).unwrap();
        assert!((r.value - (1.0 - 10.0f64.cos())).abs() < 1e-12);
        // a narrow Gaussian: int phi((x - 5) / 0.01) / 0.01 over [0, 10] = sqrt(2 pi) ... = 1
        let r = integrate(
            |x: f64| (-(x - 5.0) * (x - 5.0) / (2.0 * 1e-4)).exp() / (1e-2 * (2.0 * std::f64::consts::PI).sqrt()),
            0.0,
            10.0,
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "value {}", r.value);
    }

    #[test]
    fn endpoint_singularity_is_tolerated() {
        // int_0^1 x^(-1/2) dx = 2; the rule never touches x = 0
        let spec = QuadratureSpec {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_subdivisions: 200,
        };
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "value {}", r.value);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let spec = QuadratureSpec::default();
        let fwd = integrate(|x| x.exp(), 0.0, 1.0, &spec).unwrap().value;
        let rev = integrate(|x| x.exp(), 1.0, 0.0, &spec).unwrap().value;
        assert!((fwd + rev).abs() < 1e-14);
    }

    #[test]
    fn cap_exhaustion_errors() {
        let spec = QuadratureSpec {
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            max_subdivisions: 4,
        };
        assert!(matches!(
            integrate(|x: f64| (x * 37.1).sin() / (x + 1e-9), 0.0, 1.0, &spec),
            Err(Error::NoConvergence(_))
        ));
    }

    #[test]
    fn gauss_legendre_integrates_high_degree() {
        // n-point GL is exact through degree 2n - 1
        let (x, w) = gauss_legendre_nodes(8);
        let val: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(14)).sum();
        assert!((val - 2.0 / 15.0).abs() < 1e-14);
        let sum_w: f64 = w.iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-14);
        let (x, w) = gauss_legendre_nodes(96);
        assert_eq!(x.len(), 96);
        let sum_w: f64 = w.iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-13);
        // nodes strictly increasing and symmetric
        for i in 1..96 {
            assert!(x[i] > x[i - 1]);
        }
        assert!((x[0] + x[95]).abs() < 1e-15);
    }
}
