//! The main pipeline: from a domain's moment I(G) to the equalizing
//! sector radius r* and the eigenvalue lower bound λ* = λ₁(S(r*)),
//! together with an independent ODE-shooting oracle and the decay
//! exponent of the Brownian pursuit application.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_ode, Bracket};
use crate::specfun::{hyp2f1, Hyp2F1Args};
use crate::star::{moment, StarDomain, Wedge};
use crate::wedge::big_z_inverse;

/// Capture threshold for the pursuit application: finiteness of the
/// n = 4 expected capture time needs λ₁(T) above this.
pub const CAPTURE_THRESHOLD: f64 = 5.101_267_527;

/// Pipeline output with solver diagnostics.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub label: String,
    pub alpha: f64,
    pub moment: f64,
    pub r_star: f64,
    pub lambda_star: f64,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Residuals {
    pub moment_tol: f64,
    pub root_tol: f64,
    /// |shooting function| at the returned λ*.
    pub shoot_residual: f64,
}

/// r* with I(S(r*)) = I, i.e. r* = Z⁻¹(2αI/π).
pub fn equalizing_radius(moment: f64, wedge: &Wedge, tol: f64) -> Result<f64> {
    if moment < 0.0 {
        return Err(Error::Domain(format!("equalizing_radius: I = {moment} < 0")));
    }
    big_z_inverse(2.0 * wedge.alpha() * moment / PI, wedge, tol)
}

/// Shooting function of the hypergeometric route:
/// λ ↦ ₂F₁((1−√(1+4λ))/2, (1+√(1+4λ))/2; α+1; (1−cos r*)/2).
pub fn shoot_fn_hyp(lambda: f64, r_star: f64, wedge: &Wedge, tol: f64) -> Result<f64> {
    let s = (1.0 + 4.0 * lambda).sqrt();
    let args = Hyp2F1Args::new(
        (1.0 - s) / 2.0,
        (1.0 + s) / 2.0,
        wedge.alpha() + 1.0,
        (1.0 - r_star.cos()) / 2.0,
    )?;
    hyp2f1(args, tol)
}

/// First positive root of the hypergeometric shooting function: the
/// eigenvalue λ₁(S(r*)).
pub fn shoot_lambda_hyp(r_star: f64, wedge: &Wedge, tol: f64) -> Result<f64> {
    if !(r_star > 0.0 && r_star <= PI) {
        return Err(Error::Domain(format!(
            "shoot_lambda_hyp: need 0 < r* <= pi, got {r_star}"
        )));
    }
    first_root(|lambda| shoot_fn_hyp(lambda, r_star, wedge, tol * 1e-2), r_star, wedge, tol)
}

/// Scans λ upward from 0 until the shooting function changes sign, then
/// polishes with Brent. The function is 1 at λ = 0 (the series is empty
/// there since ab = 0), and the first eigenvalue is simple, so a modest
/// step cannot skip the first root once the step is small against the
/// eigenvalue scale.
fn first_root<F: FnMut(f64) -> Result<f64>>(
    mut shoot: F,
    r_star: f64,
    wedge: &Wedge,
    tol: f64,
) -> Result<f64> {
    let alpha = wedge.alpha();
    let x_star = (1.0 - r_star.cos()) / 2.0;
    let cap = 10.0 * (alpha + 1.0) * (alpha + 2.0) / x_star.min(1.0);
    let step = 0.1 * alpha * (alpha + 1.0);

    let mut lam_prev = 0.0;
    let mut f_prev = shoot(lam_prev)?;
    loop {
        let lam = lam_prev + step;
        if lam > cap {
            return Err(Error::BracketSearch(format!(
                "no sign change in (0, {cap}] for r* = {r_star}, alpha = {alpha}"
            )));
        }
        let f = shoot(lam)?;
        if f_prev * f <= 0.0 {
            let bracket = Bracket::new(lam_prev, lam, f_prev, f)?;
            return find_root(|l| shoot(l).unwrap_or(f64::NAN), bracket, tol);
        }
        lam_prev = lam;
        f_prev = f;
    }
}

/// Value q(r*) of the regular solution of the sector ODE
/// sin(r) q'' + (2α + cos r) q' + λ sin(r) q = 0,
/// started at r₀ with the two-term Frobenius series
/// q = 1 + c₂ r², c₂ = −λ/(4(α+1)).
pub fn shoot_fn_ode(lambda: f64, r_star: f64, wedge: &Wedge, tol: f64) -> Result<f64> {
    let alpha = wedge.alpha();
    let r0: f64 = 1e-4;
    let c2 = -lambda / (4.0 * (alpha + 1.0));
    let y0 = [1.0 + c2 * r0 * r0, 2.0 * c2 * r0];
    let y = integrate_ode(
        |r: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -((2.0 * alpha + r.cos()) * y[1] + lambda * r.sin() * y[0]) / r.sin();
        },
        r0,
        r_star,
        &y0,
        tol,
        f64::INFINITY,
    )?;
    Ok(y[0])
}

/// Independent oracle: the same eigenvalue by ODE shooting.
pub fn shoot_lambda_ode(r_star: f64, wedge: &Wedge, tol: f64) -> Result<f64> {
    if !(r_star > 0.0 && r_star < PI) {
        return Err(Error::Domain(format!(
            "shoot_lambda_ode: need 0 < r* < pi, got {r_star}"
        )));
    }
    let ode_tol = (tol * 1e-3).clamp(1e-13, 1e-9);
    first_root(|lambda| shoot_fn_ode(lambda, r_star, wedge, ode_tol), r_star, wedge, tol)
}

/// Full pipeline: moment → equalizing radius → eigenvalue bound.
pub fn payne_weinberger_bound(g: &StarDomain, tol: f64) -> Result<BoundReport> {
    let moment_tol = tol.max(1e-12);
    let m = moment(g, moment_tol)?;
    bound_from_moment(m.moment, g.wedge(), g.label(), tol)
}

/// Pipeline tail for a precomputed moment (used when the moment has a
/// closed form, as for the majorant domain).
pub fn bound_from_moment(
    moment: f64,
    wedge: &Wedge,
    label: &str,
    tol: f64,
) -> Result<BoundReport> {
    let root_tol = tol.max(1e-12);
    let r_star = equalizing_radius(moment, wedge, root_tol)?;
    let lambda_star = shoot_lambda_hyp(r_star, wedge, root_tol)?;
    let shoot_residual = shoot_fn_hyp(lambda_star, r_star, wedge, root_tol * 1e-2)?.abs();
    Ok(BoundReport {
        label: label.to_string(),
        alpha: wedge.alpha(),
        moment,
        r_star,
        lambda_star,
        residuals: Residuals {
            moment_tol: tol,
            root_tol,
            shoot_residual,
        },
    })
}

/// Tail-decay exponent of the cone-exit probability in 3-space whose
/// spherical link has first eigenvalue λ₁:
/// a = (√(λ₁ + 1/4) − 1/2)/2.
pub fn decay_exponent_3d(lambda1: f64) -> f64 {
    ((lambda1 + 0.25).sqrt() - 0.5) / 2.0
}

/// The decisive pursuit inequality: λ₁ strictly above the capture
/// threshold.
pub fn check_capture_threshold(lambda1: f64) -> bool {
    lambda1 > CAPTURE_THRESHOLD
}

/// Reference decay-rate constants carried from the literature; the
/// 4-pursuer values are not derivable inside this crate.
pub const A3_REFERENCE: [f64; 2] = [0.906_958_86, 0.908_276_16];
pub const A4_REFERENCE: [f64; 2] = [1.000_294_46, 1.001_512_34];

/// One cell of the two-route eigenvalue comparison.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct OracleCell {
    pub r_star: f64,
    pub alpha: f64,
    pub lambda_hyp: f64,
    pub lambda_ode: f64,
    pub delta: f64,
}

/// Standard (r*, α) comparison grid for the two eigenvalue routes.
pub const ORACLE_R_GRID: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
pub const ORACLE_ALPHA_GRID: [f64; 4] = [1.2, 1.5, 2.0, 3.0];

/// Compares the hypergeometric-root and ODE-shooting eigenvalues over
/// the full grid.
pub fn oracle_agreement(tol: f64) -> Result<Vec<OracleCell>> {
    let mut cells = Vec::new();
    for &alpha in &ORACLE_ALPHA_GRID {
        let wedge = Wedge::new(alpha)?;
        for &r_star in &ORACLE_R_GRID {
            let lambda_hyp = shoot_lambda_hyp(r_star, &wedge, tol)?;
            let lambda_ode = shoot_lambda_ode(r_star, &wedge, tol)?;
            cells.push(OracleCell {
                r_star,
                alpha,
                lambda_hyp,
                lambda_ode,
                delta: (lambda_hyp - lambda_ode).abs(),
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::{hat_tetra, hat_tetra_moment_closed_form, sector, tetra_triangle};

    fn w32() -> Wedge {
        Wedge::new(1.5).unwrap()
    }

    #[test]
    fn equalizing_radius_table_rows() {
        let w = w32();
        assert_eq!(equalizing_radius(0.0, &w, 1e-12).unwrap(), 0.0);
        let r = equalizing_radius(1.888_963_24, &w, 1e-12).unwrap();
        assert!((r - 2.153_994_60).abs() < 1e-7, "T row: {r}");
        let r = equalizing_radius(1.908_313_55, &w, 1e-12).unwrap();
        assert!((r - 2.157_429_81).abs() < 1e-7, "hatT row: {r}");
    }

    #[test]
    fn closed_form_sector_eigenvalues() {
        for alpha in [1.1, 1.5, 2.0, 3.0] {
            let w = Wedge::new(alpha).unwrap();
            let l = shoot_lambda_hyp(PI, &w, 1e-10).unwrap();
            assert!((l - alpha * (alpha + 1.0)).abs() < 1e-8, "alpha={alpha}: {l}");
            let l = shoot_lambda_hyp(PI / 2.0, &w, 1e-10).unwrap();
            assert!(
                (l - (alpha + 1.0) * (alpha + 2.0)).abs() < 1e-8,
                "alpha={alpha}: {l}"
            );
        }
    }

    #[test]
    fn table_sector_eigenvalues() {
        let w = w32();
        let l = shoot_lambda_hyp(2.186_276_04, &w, 1e-10).unwrap();
        assert!((l - 5.004_635_38).abs() < 1e-7, "S(delta): {l}");
        let l = shoot_lambda_hyp(1.910_633_24, &w, 1e-10).unwrap();
        assert!((l - 6.195_617_75).abs() < 1e-7, "S(eps): {l}");
    }

    #[test]
    fn ode_oracle_matches_table() {
        let w = w32();
        let l = shoot_lambda_ode(PI / 2.0, &w, 1e-10).unwrap();
        assert!((l - 8.75).abs() < 1e-8, "got {l}");
        let l = shoot_lambda_ode(2.153_994_60, &w, 1e-10).unwrap();
        assert!((l - 5.116_414_65).abs() < 1e-7, "T row: {l}");
    }

    #[test]
    fn no_interior_zero_below_first_eigenvalue() {
        let w = w32();
        let lambda1 = 8.75;
        for frac in [0.2, 0.5, 0.9] {
            let q = shoot_fn_ode(frac * lambda1, PI / 2.0, &w, 1e-11).unwrap();
            assert!(q > 0.0, "lambda = {}: q = {q}", frac * lambda1);
        }
    }

    #[test]
    fn frobenius_start_insensitive_to_higher_terms() {
        // Adding the r⁴ Frobenius term at r₀ = 1e-4 must not move the
        // shooting value beyond tight tolerance.
        let w = w32();
        let alpha = 1.5;
        let lambda = 5.0;
        let r0: f64 = 1e-4;
        let c2 = -lambda / (4.0 * (alpha + 1.0));
        let c4 = ((4.0 / 3.0 - lambda) * c2 + lambda / 6.0) / (8.0 * (alpha + 2.0));
        let y0 = [
            1.0 + c2 * r0 * r0 + c4 * r0.powi(4),
            2.0 * c2 * r0 + 4.0 * c4 * r0.powi(3),
        ];
        let rhs = |r: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -((2.0 * alpha + r.cos()) * y[1] + lambda * r.sin() * y[0]) / r.sin();
        };
        let y4 = integrate_ode(rhs, r0, 2.0, &y0, 1e-12, f64::INFINITY).unwrap();
        let y2 = shoot_fn_ode(lambda, 2.0, &w, 1e-12).unwrap();
        assert!((y4[0] - y2).abs() < 1e-10, "{} vs {y2}", y4[0]);
    }

    #[test]
    fn pipeline_table_rows() {
        let rep = payne_weinberger_bound(&tetra_triangle(), 1e-9).unwrap();
        assert!((rep.moment - 1.888_963_24).abs() < 1e-7);
        assert!((rep.r_star - 2.153_994_60).abs() < 1e-7);
        assert!((rep.lambda_star - 5.116_414_65).abs() < 1e-7);

        let (_, c) = hat_tetra(1e-12).unwrap();
        let rep = bound_from_moment(hat_tetra_moment_closed_form(&c), &w32(), "hatT", 1e-9).unwrap();
        assert!((rep.moment - 1.908_313_55).abs() < 1e-7);
        assert!((rep.r_star - 2.157_429_81).abs() < 1e-7);
        assert!((rep.lambda_star - 5.104_215_18).abs() < 1e-7);
    }

    #[test]
    fn sector_is_pipeline_fixed_point() {
        for (alpha, r) in [(1.5, 1.0), (2.0, 2.2), (1.2, 0.7)] {
            let w = Wedge::new(alpha).unwrap();
            let rep = payne_weinberger_bound(&sector(r, w).unwrap(), 1e-10).unwrap();
            assert!((rep.r_star - r).abs() < 1e-8, "alpha={alpha} r={r}: {}", rep.r_star);
            let direct = shoot_lambda_hyp(r, &w, 1e-10).unwrap();
            assert!((rep.lambda_star - direct).abs() < 1e-8);
        }
    }

    #[test]
    fn sector_eigenvalue_decreasing_in_radius() {
        let w = w32();
        let mut prev = f64::INFINITY;
        for i in 1..=10 {
            let r = PI * i as f64 / 10.5;
            let l = shoot_lambda_hyp(r.min(PI), &w, 1e-10).unwrap();
            assert!(l < prev, "r={r}: {l} !< {prev}");
            prev = l;
        }
        // infimum over r is the wedge value α(α+1)
        assert!(prev > 1.5 * 2.5 - 1e-9);
    }

    #[test]
    fn decay_exponents() {
        assert!((decay_exponent_3d(5.104_215_18) - 0.906_958_86).abs() < 1e-8);
        assert!((decay_exponent_3d(5.116_414_65) - 0.908_276_16).abs() < 1e-8);
        assert!((decay_exponent_3d(3.75) - 0.75).abs() < 1e-14);
        assert_eq!(decay_exponent_3d(0.0), 0.0);
    }

    #[test]
    fn capture_threshold() {
        assert!(check_capture_threshold(5.104_215_18));
        assert!(!check_capture_threshold(CAPTURE_THRESHOLD));
        assert!(!check_capture_threshold(5.004_635_38));
    }
}
