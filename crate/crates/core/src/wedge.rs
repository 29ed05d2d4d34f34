//! Scalar functions on the spherical wedge of angle π/α: the harmonic
//! weight w, the profile functions F and Z, the inverse Z⁻¹, the
//! isoperimetric profile Υ_α = F∘Z⁻¹, and the comparison map f.

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate, Bracket};
use crate::real::Real;

/// Inputs with ρ beyond this cutoff are rejected: tan^{2α}(ρ/2) overflows
/// as ρ → π and the pipeline never needs radii that close to the far pole.
pub const RHO_MAX_MARGIN: f64 = 1e-6;

/// Wedge of angle π/α on the two-sphere, α > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeParam<R> {
    alpha: R,
}

impl<R: Real> WedgeParam<R> {
    pub fn new(alpha: R) -> Result<Self> {
        if !(alpha > R::one()) {
            return Err(Error::Domain(format!("wedge: need alpha > 1, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> R {
        self.alpha
    }

    /// Wedge opening angle π/α.
    pub fn opening(&self) -> R {
        R::PI() / self.alpha
    }

    fn check_rho(&self, rho: R) -> Result<()> {
        if rho >= R::PI() - R::of(RHO_MAX_MARGIN) || rho < R::zero() {
            return Err(Error::Domain(format!(
                "rho = {rho} outside [0, pi - {RHO_MAX_MARGIN})"
            )));
        }
        Ok(())
    }
}

/// Point of the closed wedge in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint<R> {
    pub rho: R,
    pub theta: R,
}

impl<R: Real> PolarPoint<R> {
    pub fn new(rho: R, theta: R, wedge: &WedgeParam<R>) -> Result<Self> {
        wedge.check_rho(rho)?;
        if theta < R::zero() || theta > wedge.opening() {
            return Err(Error::Domain(format!(
                "theta = {theta} outside [0, {}]",
                wedge.opening()
            )));
        }
        Ok(Self { rho, theta })
    }
}

/// The positive harmonic weight w = tan^α(ρ/2) sin(αθ), vanishing on the
/// wedge boundary.
pub fn weight<R: Real>(p: PolarPoint<R>, w: &WedgeParam<R>) -> R {
    let half = R::of(0.5);
    (p.rho * half).tan().powf(w.alpha()) * (w.alpha() * p.theta).sin()
}

/// F(ρ) = tan^{2α}(ρ/2) sin ρ, strictly increasing on (0, π) for α > 1.
pub fn cal_f<R: Real>(r: R, w: &WedgeParam<R>) -> Result<R> {
    w.check_rho(r)?;
    Ok(cal_f_unchecked(r, w))
}

pub(crate) fn cal_f_unchecked<R: Real>(r: R, w: &WedgeParam<R>) -> R {
    let half = R::of(0.5);
    let two = R::of(2.0);
    (r * half).tan().powf(two * w.alpha()) * r.sin()
}

/// Z(r) = ∫₀^r F(ρ) dρ. For α = 3/2 the closed form
/// 4 tan(r/2) + sin r − 3r is used; general α goes through quadrature.
pub fn big_z<R: Real>(r: R, w: &WedgeParam<R>, tol: R) -> Result<R> {
    w.check_rho(r)?;
    if w.alpha() == R::of(1.5) {
        Ok(big_z_closed_form_3_2(r))
    } else {
        Ok(big_z_quadrature(r, w, tol)?)
    }
}

/// Closed form of Z at α = 3/2.
pub fn big_z_closed_form_3_2<R: Real>(r: R) -> R {
    let half = R::of(0.5);
    R::of(4.0) * (r * half).tan() + r.sin() - R::of(3.0) * r
}

/// Quadrature path for Z, valid for any α > 1.
pub fn big_z_quadrature<R: Real>(r: R, w: &WedgeParam<R>, tol: R) -> Result<R> {
    w.check_rho(r)?;
    let wedge = *w;
    Ok(integrate(move |rho| cal_f_unchecked(rho, &wedge), R::zero(), r, tol)?.value)
}

/// The unique r with Z(r) = y, by bracketed root finding on the strictly
/// increasing Z.
pub fn big_z_inverse<R: Real>(y: R, w: &WedgeParam<R>, tol: R) -> Result<R> {
    if y < R::zero() {
        return Err(Error::Domain(format!("big_z_inverse: need y >= 0, got {y}")));
    }
    if y == R::zero() {
        return Ok(R::zero());
    }
    let rho_max = R::PI() - R::of(RHO_MAX_MARGIN);
    // Z is increasing and unbounded as r -> pi; expand the bracket upward.
    let mut hi = R::of(1.0);
    let mut z_hi = big_z(hi, w, tol)?;
    while z_hi < y {
        hi = (hi + R::of(0.4)).min(rho_max - R::of(RHO_MAX_MARGIN));
        let next = big_z(hi, w, tol)?;
        if next < y && hi >= rho_max - R::of(2.0) * R::of(RHO_MAX_MARGIN) {
            return Err(Error::Domain(format!(
                "big_z_inverse: y = {y} requires r closer to pi than supported"
            )));
        }
        z_hi = next;
    }
    let bracket = Bracket::new(R::zero(), hi, -y, z_hi - y)?;
    find_root(|r| big_z(r, w, tol).unwrap_or(R::infinity()) - y, bracket, tol)
}

/// Isoperimetric profile Υ_α(y) = F(Z⁻¹(y)).
pub fn upsilon<R: Real>(y: R, w: &WedgeParam<R>, tol: R) -> Result<R> {
    if y == R::zero() {
        return Ok(R::zero());
    }
    let r = big_z_inverse(y, w, tol)?;
    cal_f(r, w)
}

/// The comparison map f(ρ) = 2^{1/3} sin^{(1+2α)/3}(ρ/2) cos^{(1−2α)/3}(ρ/2),
/// chosen so that f³ = tan^{2α}(ρ/2) sin ρ exactly.
pub fn comparison_f<R: Real>(rho: R, w: &WedgeParam<R>) -> Result<R> {
    w.check_rho(rho)?;
    let third = R::one() / R::of(3.0);
    let two_alpha = R::of(2.0) * w.alpha();
    let half = R::of(0.5);
    Ok(R::of(2.0).powf(third)
        * (rho * half).sin().powf((R::one() + two_alpha) * third)
        * (rho * half).cos().powf((R::one() - two_alpha) * third))
}

/// Closed form of f²·f′ = tan^{2α}(ρ/2)·(2α + cos ρ)/3, used by the
/// pointwise inequality checks.
pub fn comparison_f2_fprime<R: Real>(rho: R, w: &WedgeParam<R>) -> Result<R> {
    w.check_rho(rho)?;
    let half = R::of(0.5);
    let two_alpha = R::of(2.0) * w.alpha();
    Ok((rho * half).tan().powf(two_alpha) * (two_alpha + rho.cos()) / R::of(3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn w32() -> WedgeParam<f64> {
        WedgeParam::new(1.5).unwrap()
    }

    #[test]
    fn weight_values() {
        for alpha in [1.2f64, 1.5, 2.0, 3.0] {
            let w = WedgeParam::new(alpha).unwrap();
            let p = PolarPoint::new(PI / 2.0, PI / (2.0 * alpha), &w).unwrap();
            assert!((weight(p, &w) - 1.0).abs() < 1e-14);
            let b = PolarPoint::new(1.0, 0.0, &w).unwrap();
            assert_eq!(weight(b, &w), 0.0);
        }
        let w = w32();
        let p = PolarPoint::new(PI / 3.0, PI / 3.0, &w).unwrap();
        let want = 3.0f64.powf(-0.75); // tan^1.5(π/6)·sin(π/2)
        assert!((weight(p, &w) - want).abs() < 1e-12);
        assert!((want - 0.438_691_3).abs() < 1e-6);
    }

    #[test]
    fn weight_discretely_harmonic() {
        // Laplace-Beltrami of w vanishes; the five-point discretization
        // must shrink at O(h^2).
        let w = w32();
        let lap = |rho: f64, theta: f64, h: f64| -> f64 {
            let f = |r: f64, t: f64| {
                weight(PolarPoint::new(r, t, &w).unwrap(), &w)
            };
            let d_rho = ((rho + h).sin() + rho.sin()) / 2.0 * (f(rho + h, theta) - f(rho, theta))
                - (rho.sin() + (rho - h).sin()) / 2.0 * (f(rho, theta) - f(rho - h, theta));
            let d_theta = f(rho, theta + h) - 2.0 * f(rho, theta) + f(rho, theta - h);
            d_rho / (h * h * rho.sin()) + d_theta / (h * h * rho.sin().powi(2))
        };
        for &(rho, theta) in &[(0.8, 0.7), (1.5, 1.1), (2.2, 1.9)] {
            let l1 = lap(rho, theta, 1e-2).abs();
            let l2 = lap(rho, theta, 5e-3).abs();
            assert!(l1 < 1e-2, "residual {l1} at ({rho},{theta})");
            let order = (l1 / l2).log2();
            assert!(order > 1.7, "order {order} at ({rho},{theta})");
        }
    }

    #[test]
    fn cal_f_values() {
        let w = w32();
        assert_eq!(cal_f(0.0, &w).unwrap(), 0.0);
        assert!((cal_f(PI / 2.0, &w).unwrap() - 1.0).abs() < 1e-14);
        let delta = (-1.0 / 3.0f64.sqrt()).acos();
        assert!((cal_f(delta, &w).unwrap() - 5.886_751_345_9).abs() < 1e-9);
        assert!(cal_f(3.2, &w).is_err());
    }

    #[test]
    fn big_z_closed_form_and_quadrature_agree() {
        let w = w32();
        for r in [0.3, 1.0, PI / 2.0, 2.0, 2.8] {
            let closed = big_z(r, &w, 1e-12).unwrap();
            let quad = big_z_quadrature(r, &w, 1e-12).unwrap();
            assert!((closed - quad).abs() < 1e-10, "r={r}: {closed} vs {quad}");
        }
        assert!((big_z(PI / 2.0, &w, 1e-12).unwrap() - (5.0 - 1.5 * PI)).abs() < 1e-12);
        assert_eq!(big_z(0.0, &w, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn big_z_at_table_delta() {
        // Z(δ) = (3/π)·I(S(δ)) with I(S(δ)) = 2.07876577 from the sector
        // identity I = (π/2α)Z.
        let w = w32();
        let delta = (-1.0 / 3.0f64.sqrt()).acos();
        let z = big_z(delta, &w, 1e-12).unwrap();
        assert!((z - 3.0 / PI * 2.078_765_77).abs() < 1e-7, "got {z}");
        assert!((z - 1.985_075_08).abs() < 1e-6);
    }

    #[test]
    fn inverse_round_trip() {
        for alpha in [1.2f64, 1.5, 2.0, 3.0] {
            let w = WedgeParam::new(alpha).unwrap();
            for r in [0.1, 0.7, 1.4, 2.1, 2.7, 3.0] {
                let z = big_z(r, &w, 1e-13).unwrap();
                let back = big_z_inverse(z, &w, 1e-13).unwrap();
                assert!((back - r).abs() < 1e-10, "alpha={alpha} r={r}: got {back}");
            }
        }
    }

    #[test]
    fn inverse_closed_form_and_table_row() {
        let w = w32();
        let r = big_z_inverse(5.0 - 1.5 * PI, &w, 1e-13).unwrap();
        assert!((r - PI / 2.0).abs() < 1e-10);
        // Table row T: r* = Z^{-1}((3/π)·1.88896324)
        let r_star = big_z_inverse(3.0 / PI * 1.888_963_24, &w, 1e-13).unwrap();
        assert!((r_star - 2.153_994_60).abs() < 1e-7, "got {r_star}");
        assert_eq!(big_z_inverse(0.0, &w, 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn upsilon_values() {
        let w = w32();
        assert_eq!(upsilon(0.0, &w, 1e-12).unwrap(), 0.0);
        assert!((upsilon(5.0 - 1.5 * PI, &w, 1e-12).unwrap() - 1.0).abs() < 1e-9);
        let w2 = WedgeParam::new(2.0).unwrap();
        assert!(upsilon(0.5, &w2, 1e-12).unwrap() < upsilon(1.0, &w2, 1e-12).unwrap());
    }

    #[test]
    fn comparison_f_cubed_equals_cal_f() {
        for alpha in [1.01, 1.5, 2.0, 5.0] {
            let w = WedgeParam::new(alpha).unwrap();
            for i in 1..100 {
                let rho = PI * i as f64 / 101.0;
                let f = comparison_f(rho, &w).unwrap();
                let rel = (f.powi(3) - cal_f(rho, &w).unwrap()).abs() / cal_f(rho, &w).unwrap().max(1e-300);
                assert!(rel < 1e-12, "alpha={alpha} rho={rho}: rel {rel}");
            }
        }
        let w = w32();
        assert_eq!(comparison_f(0.0, &w).unwrap(), 0.0);
        assert!((comparison_f(PI / 2.0, &w).unwrap() - 1.0).abs() < 1e-13);
        let f = comparison_f(PI / 3.0, &w).unwrap();
        assert!((f - cal_f(PI / 3.0, &w).unwrap().cbrt()).abs() < 1e-13);
        // F(π/3) = tan³(π/6)·sin(π/3) = 1/6, so f = 6^{-1/3}.
        assert!((f - 0.550_321_208_1).abs() < 1e-9);
    }

    #[test]
    fn f2_fprime_closed_form_matches_finite_difference() {
        let w = w32();
        for &rho in &[0.5, 1.0, 1.8, 2.5] {
            let h = 1e-6;
            let fp = (comparison_f(rho + h, &w).unwrap() - comparison_f(rho - h, &w).unwrap())
                / (2.0 * h);
            let f = comparison_f(rho, &w).unwrap();
            let closed = comparison_f2_fprime(rho, &w).unwrap();
            assert!((f * f * fp - closed).abs() < 1e-7, "rho={rho}");
        }
    }

    #[test]
    fn moment_inequality_random_directions() {
        // α² tan^{4α}(ρ/2) sin⁴(αθ)(dρ² + sin²ρ dθ²) ≥ y⁴(dx² + dy²)
        // with (x, y) = f(ρ)(cos αθ, sin αθ).
        use crate::numerics::RngStream;
        let mut rng = RngStream::new(11).substream(0);
        for alpha in [1.2, 1.5, 2.5] {
            let w = WedgeParam::new(alpha).unwrap();
            for _ in 0..200 {
                let rho = rng.uniform_in(1e-3, PI - 1e-3);
                let theta = rng.uniform_in(0.0, PI / alpha);
                let (drho, dtheta) = (rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0));
                let f = comparison_f(rho, &w).unwrap();
                let fp = comparison_f2_fprime(rho, &w).unwrap() / (f * f);
                let y = f * (alpha * theta).sin();
                let lhs = alpha.powi(2)
                    * (rho / 2.0).tan().powf(4.0 * alpha)
                    * (alpha * theta).sin().powi(4)
                    * (drho * drho + rho.sin().powi(2) * dtheta * dtheta);
                let rhs = y.powi(4)
                    * (fp * fp * drho * drho + alpha * alpha * f * f * dtheta * dtheta);
                assert!(lhs >= rhs - 1e-10 * lhs.abs().max(1.0), "alpha={alpha} rho={rho} theta={theta}");
            }
        }
    }

    #[test]
    fn z_strictly_increasing() {
        let w = WedgeParam::new(2.0).unwrap();
        let mut prev = 0.0;
        for i in 1..60 {
            let r = 3.05 * i as f64 / 60.0;
            let z = big_z(r, &w, 1e-12).unwrap();
            assert!(z > prev);
            prev = z;
        }
    }
}
