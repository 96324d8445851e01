//! Floating-point validation layer: adaptive quadrature and grid-refined
//! suprema for functions outside the exact piecewise-polynomial world
//! (Gaussians and friends).  Nothing computed here ever feeds back into the
//! exact structures.

use crate::error::{Error, Result};
use crate::piecewise::PiecewiseFn;

/// Decay information used to truncate integrals over infinite domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Supported inside [lo, hi].
    Compact { lo: f64, hi: f64 },
    /// |F(x)| <= exp(-x^2) scale: tails cut where exp(-c^2)/c is negligible.
    Gaussian,
    /// No decay promise; infinite bounds are rejected.
    None,
}

/// A real-valued function handle with its declared decay class.
pub struct NumericFn {
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    decay: DecayClass,
}

impl NumericFn {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: DecayClass) -> Self {
        NumericFn { f: Box::new(f), decay }
    }

    /// Wrap an exact piecewise function for cross-validation.
    pub fn from_piecewise(p: &PiecewiseFn) -> Self {
        let span = match (p.breakpoints().first(), p.breakpoints().last()) {
            (Some(a), Some(b)) => DecayClass::Compact {
                lo: crate::numeric::rat_to_f64(a) - 1.0,
                hi: crate::numeric::rat_to_f64(b) + 1.0,
            },
            _ => DecayClass::None,
        };
        let p = p.clone();
        NumericFn::new(move |x| p.eval_f64(x), span)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }
}

/// Grid maximum of |F| over the window, refined around the best cell; the
/// relative error target for smooth peaks is about 1e-6 at the defaults
/// (grid 256, refinement 6).
pub fn numeric_sup_norm(f: &NumericFn, window: (f64, f64), grid: usize, refinement: usize) -> f64 {
    let (mut lo, mut hi) = window;
    assert!(lo < hi && grid >= 4);
    let mut best = 0.0f64;
    for _ in 0..=refinement {
        let step = (hi - lo) / grid as f64;
        let mut best_x = lo;
        for i in 0..=grid {
            let x = lo + step * i as f64;
            let v = f.eval(x).abs();
            if v > best {
                best = v;
                best_x = x;
            }
        }
        lo = (best_x - step).max(window.0);
        hi = (best_x + step).min(window.1);
    }
    best
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &NumericFn,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
    force: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f.eval(lm);
    let frm = f.eval(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // a minimum depth is forced: the error estimate is blind to kinks that
    // cancel symmetrically on coarse panels
    if force == 0 && delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::NoConvergence);
    }
    let next_force = force.saturating_sub(1);
    let l = adaptive(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1, next_force)?;
    let r = adaptive(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1, next_force)?;
    Ok(l + r)
}

/// Adaptive Simpson integration; infinite bounds are truncated through the
/// declared decay class (for `Gaussian`, cut where `exp(-c^2)/c < tol/10`).
pub fn numeric_integral(f: &NumericFn, a: f64, b: f64, tol: f64) -> Result<f64> {
    assert!(tol > 0.0);
    let clip = |x: f64, start: bool| -> Result<f64> {
        if x.is_finite() {
            return Ok(x);
        }
        match f.decay() {
            DecayClass::Compact { lo, hi } => Ok(if start { lo } else { hi }),
            DecayClass::Gaussian => {
                let mut c = 2.0f64;
                while (-c * c).exp() / c >= tol / 10.0 && c < 40.0 {
                    c += 0.5;
                }
                Ok(if start { -c } else { c })
            }
            DecayClass::None => Err(Error::NoConvergence),
        }
    };
    let a = clip(a, true)?;
    let b = clip(b, false)?;
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f.eval(a), f.eval(m), f.eval(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 48, 5)
}
