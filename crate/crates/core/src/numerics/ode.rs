//! Adaptive embedded Runge–Kutta integration (Dormand–Prince 5(4)).

use crate::error::{Error, Result};
use crate::real::Real;

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// 5th-order solution weights equal the last A row (FSAL); 4th-order weights:
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince step from (t, y) with step h.
/// Returns (y5, error norm estimate).
fn dp_step<R: Real, F>(rhs: &mut F, t: R, y: &[R], h: R, k0: &[R]) -> (Vec<R>, Vec<R>, R)
where
    F: FnMut(R, &[R], &mut [R]),
{
    let n = y.len();
    let mut k = vec![vec![R::zero(); n]; 7];
    k[0].copy_from_slice(k0);
    let mut ytmp = vec![R::zero(); n];
    for s in 0..6 {
        for i in 0..n {
            let mut acc = R::zero();
            for (j, kj) in k.iter().enumerate().take(s + 1) {
                acc += R::of(A[s][j]) * kj[i];
            }
            ytmp[i] = y[i] + h * acc;
        }
        let ts = t + R::of(C[s]) * h;
        let (head, tail) = k.split_at_mut(s + 1);
        let _ = head;
        rhs(ts, &ytmp, &mut tail[0]);
    }
    // 5th order solution = stage-7 input (FSAL): ytmp already holds it.
    let y5 = ytmp.clone();
    let k7 = k[6].clone();
    let mut errnorm = R::zero();
    for i in 0..n {
        let mut acc4 = R::zero();
        for (j, kj) in k.iter().enumerate() {
            acc4 += R::of(B4[j]) * kj[i];
        }
        let y4 = y[i] + h * acc4;
        let scale = R::one().max(y[i].abs().max(y5[i].abs()));
        let e = (y5[i] - y4) / scale;
        errnorm = errnorm.max(e.abs());
    }
    (y5, k7, errnorm)
}

/// Integrate y' = rhs(t, y) from t0 to t1, returning y(t1).
///
/// `tol` controls the per-step local error; `max_step` caps the step size
/// (use `infinity` for pure adaptive stepping).
pub fn integrate_ode<R: Real, F>(
    mut rhs: F,
    t0: R,
    t1: R,
    y0: &[R],
    tol: R,
    max_step: R,
) -> Result<Vec<R>>
where
    F: FnMut(R, &[R], &mut [R]),
{
    if !(tol > R::zero()) {
        return Err(Error::Domain("integrate_ode: tol must be positive".into()));
    }
    let mut y = y0.to_vec();
    if t0 == t1 {
        return Ok(y);
    }
    let dir = if t1 > t0 { R::one() } else { -R::one() };
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut h = (span * R::of(0.01)).min(max_step) * dir;
    let hmin = span * R::epsilon() * R::of(16.0);

    let mut k0 = vec![R::zero(); y.len()];
    rhs(t, &y, &mut k0);

    let safety = R::of(0.9);
    loop {
        if (t1 - t) * dir <= R::zero() {
            return Ok(y);
        }
        if ((t1 - t) * dir) < h * dir {
            h = t1 - t;
        }
        let (y5, k7, err) = dp_step(&mut rhs, t, &y, h, &k0);
        if !err.is_finite() {
            return Err(Error::Stiffness { t: t.to_f64_lossy() });
        }
        if err <= tol {
            t = t + h;
            y = y5;
            k0 = k7;
            let grow = if err == R::zero() {
                R::of(5.0)
            } else {
                (safety * (tol / err).powf(R::of(0.2))).min(R::of(5.0))
            };
            h = (h * grow).abs().min(max_step) * dir;
        } else {
            let shrink = (safety * (tol / err).powf(R::of(0.2))).max(R::of(0.1));
            h = h * shrink;
        }
        if h.abs() < hmin {
            return Err(Error::Stiffness { t: t.to_f64_lossy() });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn exponential() {
        let y = integrate_ode(
            |_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0],
            0.0,
            1.0,
            &[1.0],
            1e-12,
            f64::INFINITY,
        )
        .unwrap();
        assert!((y[0] - E).abs() < 1e-10, "got {}", y[0]);
    }

    #[test]
    fn constant_rhs_zero() {
        let y = integrate_ode(
            |_t: f64, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0,
            0.0,
            5.0,
            &[3.25],
            1e-10,
            f64::INFINITY,
        )
        .unwrap();
        assert_eq!(y[0], 3.25);
    }

    #[test]
    fn spherical_bessel_limit() {
        // q'' + (2/t)q' + q = 0 has regular solution sin(t)/t.
        let eps: f64 = 1e-6;
        let q0 = eps.sin() / eps;
        let dq0 = (eps * eps.cos() - eps.sin()) / (eps * eps);
        let y = integrate_ode(
            |t: f64, y: &[f64], dy: &mut [f64]| {
                dy[0] = y[1];
                dy[1] = -(2.0 / t) * y[1] - y[0];
            },
            eps,
            PI / 2.0,
            &[q0, dq0],
            1e-12,
            f64::INFINITY,
        )
        .unwrap();
        assert!((y[0] - 2.0 / PI).abs() < 1e-9, "got {}", y[0]);
    }

    #[test]
    fn observed_order_at_least_four() {
        // Force (near-)fixed steps through max_step and a loose tol; the
        // global error on y' = y must then scale at least like h^4.
        let run = |h: f64| -> f64 {
            let y = integrate_ode(
                |_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0],
                0.0,
                1.0,
                &[1.0],
                1e30,
                h,
            )
            .unwrap();
            (y[0] - E).abs()
        };
        let e1 = run(0.1);
        let e2 = run(0.05);
        let order = (e1 / e2).log2();
        assert!(order >= 4.0, "observed order {order} (errors {e1}, {e2})");
    }

    #[test]
    fn backwards_integration() {
        let y = integrate_ode(
            |_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0],
            1.0,
            0.0,
            &[E],
            1e-12,
            f64::INFINITY,
        )
        .unwrap();
        assert!((y[0] - 1.0).abs() < 1e-10);
    }
}
