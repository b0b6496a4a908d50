//! Scalar root finding (Brent) and bounded maximization (grid scan plus
//! golden-section refinement).

use crate::{Error, Result};

/// Root of f on [a, b] by Brent's method (inverse quadratic / secant /
/// bisection, NR 9.3). Requires a sign change on the bracket.
///
/// `tol` is the absolute x-tolerance; machine-precision spacing is always
/// added, so `tol = 0` asks for full precision.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut xa = a;
    let mut xb = b;
    let mut fa = f(xa);
    let mut fb = f(xb);
    if fa == 0.0 {
        return Ok(xa);
    }
    if fb == 0.0 {
        return Ok(xb);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidArgument(format!(
            "find_root: no sign change on [{a:e}, {b:e}] (f: {fa:e}, {fb:e})"
        )));
    }
    let mut xc = xa;
    let mut fc = fa;
    let mut d = xb - xa;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            xc = xa;
            fc = fa;
            d = xb - xa;
            e = d;
        }
        if fc.abs() < fb.abs() {
            xa = xb;
            xb = xc;
            xc = xa;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * xb.abs() + 0.5 * tol;
        let xm = 0.5 * (xc - xb);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(xb);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // attempt inverse quadratic interpolation
            let s = fb / fa;
            let (mut p, mut q) = if xa == xc {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (xb - xa) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        xa = xb;
        fa = fb;
        if d.abs() > tol1 {
            xb += d;
        } else {
            xb += tol1.copysign(xm);
        }
        fb = f(xb);
        if fb == 0.0 {
            return Ok(xb);
        }
    }
    Err(Error::NoConvergence("find_root: iteration cap".into()))
}

const GOLDEN: f64 = 0.381_966_011_250_105_1; // 2 - golden ratio

/// Maximum of f on [lo, hi]: 201-point grid scan to bracket the global
/// maximizer, then golden-section refinement of the bracketing cell pair.
///
/// Returns (argmax, max). The argmax is located to about 1e-8 (absolute,
/// plus interval scale); the grid stage makes the result reliable for the
/// mildly multimodal profiles that arise in band evaluation.
pub fn maximize_1d<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> (f64, f64) {
    assert!(hi > lo && lo.is_finite() && hi.is_finite());
    const GRID: usize = 201;
    let step = (hi - lo) / (GRID - 1) as f64;
    let mut best_i = 0;
    let mut best_x = lo;
    let mut best_f = f64::NEG_INFINITY;
    for i in 0..GRID {
        let x = if i == GRID - 1 { hi } else { lo + i as f64 * step };
        let v = f(x);
        if v > best_f {
            best_f = v;
            best_x = x;
            best_i = i;
        }
    }
    let mut a = if best_i == 0 { lo } else { lo + (best_i - 1) as f64 * step };
    let mut b = if best_i == GRID - 1 { hi } else { lo + (best_i + 1) as f64 * step };
    // golden-section: shrink [a, b] around the maximizer
    let mut x1 = a + GOLDEN * (b - a);
    let mut x2 = b - GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let tol = 1e-9_f64.max(1e-12 * (hi - lo).abs());
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + GOLDEN * (b - a);
            f1 = f(x1);
        }
    }
    let (xr, fr) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if fr >= best_f {
        (xr, fr)
    } else {
        (best_x, best_f)
    }
}
