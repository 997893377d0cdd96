//! Brent's bracketed root finder (inverse quadratic interpolation and secant
//! steps, safeguarded by bisection).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub x_abs_tol: f64,
    pub x_rel_tol: f64,
    /// Stop as soon as `|f(x)| <= f_tol`. Zero disables the test.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            x_abs_tol: 1e-15,
            x_rel_tol: 4.0 * f64::EPSILON,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub f_root: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Finds a root of `f` on `[a, b]`. `f(a)` and `f(b)` must have opposite signs
/// (or one of them be zero).
pub fn brent<F>(mut f: F, a: f64, b: f64, opts: RootOptions) -> Result<RootResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite(format!("root-finder objective at x = {x}")))
        }
    };

    let mut xpre = a;
    let mut xcur = b;
    let mut fpre = eval(xpre)?;
    let mut fcur = eval(xcur)?;
    let done = |root, f_root, iterations| RootResult {
        root,
        f_root,
        iterations,
        converged: true,
    };
    if fpre == 0.0 {
        return Ok(done(xpre, fpre, 0));
    }
    if fcur == 0.0 {
        return Ok(done(xcur, fcur, 0));
    }
    if fpre.is_sign_negative() == fcur.is_sign_negative() {
        return Err(Error::Domain(format!(
            "no sign change on [{a}, {b}]: f = ({fpre}, {fcur})"
        )));
    }

    let (mut xblk, mut fblk) = (0.0, 0.0);
    let (mut spre, mut scur) = (0.0f64, 0.0f64);

    for iter in 0..opts.max_iter {
        if fpre != 0.0 && fcur != 0.0 && fpre.is_sign_negative() != fcur.is_sign_negative() {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = (opts.x_abs_tol + opts.x_rel_tol * xcur.abs()) / 2.0;
        let sbis = (xblk - xcur) / 2.0;
        if fcur == 0.0 || sbis.abs() < delta || fcur.abs() <= opts.f_tol {
            return Ok(done(xcur, fcur, iter));
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = eval(xcur)?;
    }

    Ok(RootResult {
        root: xcur,
        f_root: fcur,
        iterations: opts.max_iter,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(f: impl Fn(f64) -> f64, a: f64, b: f64) -> RootResult {
        brent(|x| Ok(f(x)), a, b, RootOptions::default()).unwrap()
    }

    #[test]
    fn sqrt_two() {
        let r = solve(|x| x * x - 2.0, 0.0, 2.0);
        assert!(r.converged);
        assert!((r.root - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cubic_and_transcendental() {
        let r = solve(|x| x.powi(3) - 2.0 * x - 5.0, 2.0, 3.0);
        assert!((r.root - 2.0945514815423265).abs() < 1e-14);
        let r = solve(|x| x.cos() - x, 0.0, 1.0);
        assert!((r.root - 0.7390851332151607).abs() < 1e-15);
    }

    #[test]
    fn endpoint_root() {
        let r = solve(|x| x - 1.0, 1.0, 3.0);
        assert_eq!(r.root, 1.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn steep_log_root_has_tight_relative_error() {
        let target: f64 = 3.3e-6;
        let r = solve(|x| -(x.ln()) + target.ln(), 1e-7, 0.1);
        assert!(((r.root - target) / target).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change_is_error() {
        assert!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, RootOptions::default()).is_err());
    }

    #[test]
    fn non_finite_objective_is_error() {
        let e = brent(|_| Ok(f64::NAN), 0.0, 1.0, RootOptions::default());
        assert!(matches!(e, Err(Error::NonFinite(_))));
    }

    #[test]
    fn converges_within_iteration_cap() {
        // discontinuous sign change forces bisection-like behaviour
        let r = solve(|x| if x < 0.3 { -1.0 } else { 1.0 }, 0.0, 1.0);
        assert!(r.converged);
        assert!((r.root - 0.3).abs() < 1e-14);
    }
}
