//! Safeguarded bracketed root finding (Brent's method).

use crate::error::{Error, Result};
use crate::real::Real;

/// A sign-changing bracket: lo < hi and f(lo)·f(hi) ≤ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<R> {
    pub lo: R,
    pub hi: R,
    pub f_lo: R,
    pub f_hi: R,
}

impl<R: Real> Bracket<R> {
    pub fn new(lo: R, hi: R, f_lo: R, f_hi: R) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("bracket: need lo < hi, got [{lo}, {hi}]")));
        }
        if f_lo * f_hi > R::zero() {
            return Err(Error::Domain(format!(
                "bracket: f does not change sign on [{lo}, {hi}] ({f_lo}, {f_hi})"
            )));
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and builds the bracket.
    pub fn evaluate<F: FnMut(R) -> R>(lo: R, hi: R, f: &mut F) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::new(lo, hi, f_lo, f_hi)
    }
}

/// Brent's method: inverse-quadratic/secant steps safeguarded by
/// bisection. Terminates with bracket width ≤ tol (plus a few ulps).
pub fn find_root<R: Real, F: FnMut(R) -> R>(mut f: F, bracket: Bracket<R>, tol: R) -> Result<R> {
    if !(tol > R::zero()) {
        return Err(Error::Domain("find_root: tol must be positive".into()));
    }
    let mut a = bracket.lo;
    let mut b = bracket.hi;
    let mut fa = bracket.f_lo;
    let mut fb = bracket.f_hi;
    if fa == R::zero() {
        return Ok(a);
    }
    if fb == R::zero() {
        return Ok(b);
    }

    // Keep b the best estimate.
    if fa.abs() < fb.abs() {
        core::mem::swap(&mut a, &mut b);
        core::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    let two = R::of(2.0);
    let half = R::of(0.5);

    for _ in 0..200 {
        if fb * fc > R::zero() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let eps = R::epsilon();
        let tol1 = two * eps * b.abs() + half * tol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb == R::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Secant / inverse quadratic interpolation.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = R::one() - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * q0 * (q0 - r) - (b - a) * (r - R::one()));
                q = (q0 - R::one()) * (r - R::one()) * (s - R::one());
            }
            if p > R::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = R::of(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
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
        a = b;
        fa = fb;
        b = if d.abs() > tol1 {
            b + d
        } else if xm > R::zero() {
            b + tol1
        } else {
            b - tol1
        };
        fb = f(b);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn root_of<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> f64 {
        let b = Bracket::evaluate(lo, hi, &mut f).unwrap();
        find_root(f, b, tol).unwrap()
    }

    #[test]
    fn sqrt_two() {
        let r = root_of(|x| x * x - 2.0, 1.0, 2.0, 1e-12);
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cosine_root() {
        let r = root_of(f64::cos, 1.0, 2.0, 1e-12);
        assert!((r - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn z_closed_form_inverse() {
        // Z(r) = 4 tan(r/2) + sin r - 3r at α = 3/2; solve Z(r) = Z(π/2).
        let z = |r: f64| 4.0 * (r / 2.0).tan() + r.sin() - 3.0 * r;
        let target = 5.0 - 1.5 * PI;
        let r = root_of(|r| z(r) - target, 0.1, 3.0, 1e-13);
        assert!((r - PI / 2.0).abs() < 1e-11, "got {r}");
    }

    #[test]
    fn endpoint_root() {
        let r = root_of(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn final_value_small() {
        let mut f = |x: f64| (x - 0.3).powi(3);
        let b = Bracket::evaluate(0.0, 1.0, &mut f).unwrap();
        let r = find_root(&mut f, b, 1e-10).unwrap();
        assert!(f(r).abs() <= f(b.lo).abs().min(f(b.hi).abs()));
        assert!((r - 0.3).abs() < 1e-4);
    }

    #[test]
    fn non_bracket_rejected() {
        assert!(Bracket::evaluate(1.0, 2.0, &mut |x: f64| x * x + 1.0).is_err());
        assert!(Bracket::new(2.0, 1.0, -1.0, 1.0).is_err());
    }
}
