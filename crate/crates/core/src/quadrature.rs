//! Adaptive Simpson quadrature.
//!
//! Integrands in this crate are piecewise smooth with kinks at known
//! abscissae, so callers split the range at those points via
//! [`integrate_pieces`] and let the recursion handle the smooth parts.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 50;

struct Panel {
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) * (fa + 4.0 * fm + fb) / 6.0
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: Panel, eps: f64, budget: f64, depth: u32) -> Result<f64> {
    let Panel { a, m, b, fa, fm, fb, whole } = p;
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;

    if delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    // Endpoint singularities (e.g. square-root edges) stall the halving
    // tolerance; at the depth limit a panel within the whole budget is kept.
    if depth == 0 && delta.abs() <= budget {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 || !delta.is_finite() {
        return Err(Error::Quadrature {
            lo: a,
            hi: b,
            detail: format!(
                "no convergence (estimate {}, error {:.3e}, tolerance {:.3e})",
                left + right,
                delta.abs() / 15.0,
                eps
            ),
        });
    }
    let l = refine(
        f,
        Panel { a, m: lm, b: m, fa, fm: flm, fb: fm, whole: left },
        0.5 * eps,
        budget,
        depth - 1,
    )?;
    let r = refine(
        f,
        Panel { a: m, m: rm, b, fa: fm, fm: frm, fb, whole: right },
        0.5 * eps,
        budget,
        depth - 1,
    )?;
    Ok(l + r)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if b == a {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, Panel { a, m, b, fa, fm, fb, whole }, tol, tol, MAX_DEPTH)
}

/// Integrates over `[a, b]`, splitting at every point of `splits` strictly
/// inside the range. The tolerance is shared among pieces by length.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, splits: &[f64], tol: f64) -> Result<f64> {
    let mut cuts: Vec<f64> = splits.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
    let width = b - a;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let piece_tol = tol * (w[1] - w[0]) / width;
        total += integrate(&f, w[0], w[1], piece_tol.max(f64::EPSILON * 16.0))?;
    }
    Ok(total)
}
