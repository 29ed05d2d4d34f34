//! Randomized numerical verification of the supporting inequalities:
//! the rearrangement lemma of Szegő type, the isoperimetric deficit, and
//! the pointwise comparison-map inequalities.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{integrate, RngStream, Sampler};
use crate::star::{boundary_weight_integral, moment, random_star, sector, StarDomain, Wedge};
use crate::wedge::{cal_f, comparison_f, comparison_f2_fprime, upsilon, WedgeParam};

/// Ordered disjoint union of half-open intervals inside [0, ω).
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        intervals.retain(|(a, b)| b > a);
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in intervals.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::Domain(format!(
                    "interval set not disjoint: {:?} overlaps {:?}",
                    w[0], w[1]
                )));
            }
        }
        if intervals.iter().any(|(a, _)| *a < 0.0) {
            return Err(Error::Domain("interval set must lie in [0, inf)".into()));
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// True when the set equals [0, |E|] up to symmetric difference below
    /// `tol` — the equality case of the lemma.
    pub fn is_initial_interval(&self, tol: f64) -> bool {
        let m = self.measure();
        // symmetric difference with [0, m]
        let inside: f64 = self
            .intervals
            .iter()
            .map(|(a, b)| (b.min(m) - a.min(m)).max(0.0))
            .sum();
        (m - inside) * 2.0 < tol
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SzegoOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Checks Φ(∫_E ψ) ≤ ∫_E φ(Ψ(x)) ψ(x) dx for nonnegative ψ and
/// nondecreasing φ on [0, ω).
pub fn check_szego<Psi, Phi>(
    psi: Psi,
    phi: Phi,
    set: &IntervalSet,
    omega: f64,
    tol: f64,
) -> Result<SzegoOutcome>
where
    Psi: Fn(f64) -> f64,
    Phi: Fn(f64) -> f64,
{
    if set.intervals.iter().any(|(_, b)| *b > omega) {
        return Err(Error::Domain("interval set exceeds [0, omega)".into()));
    }
    // Cumulative Ψ on a fine grid (composite Simpson), then incremental
    // lookups. ψ is smooth by contract, so the grid error is far below
    // the check tolerance.
    let n = 8192usize;
    let h = omega / n as f64;
    let mut cum = vec![0.0f64; n + 1];
    let mut prev = psi(0.0);
    for i in 1..=n {
        let x = i as f64 * h;
        let mid = psi(x - 0.5 * h);
        let cur = psi(x);
        cum[i] = cum[i - 1] + h / 6.0 * (prev + 4.0 * mid + cur);
        prev = cur;
    }
    let big_psi = |x: f64| -> f64 {
        let pos = (x / h).clamp(0.0, n as f64);
        let i = (pos.floor() as usize).min(n - 1);
        let frac = pos - i as f64;
        // quadratic correction via Simpson over the partial cell
        let a = i as f64 * h;
        let x1 = a + frac * h;
        let part = (x1 - a) / 6.0 * (psi(a) + 4.0 * psi(0.5 * (a + x1)) + psi(x1));
        cum[i] + part
    };

    let int_psi: f64 = set
        .intervals
        .iter()
        .map(|&(a, b)| big_psi(b) - big_psi(a))
        .sum();
    let lhs = integrate(&phi, 0.0, int_psi, tol * 1e-2)?.value;
    let mut rhs = 0.0;
    for &(a, b) in &set.intervals {
        rhs += integrate(|x: f64| phi(big_psi(x)) * psi(x), a, b, tol * 1e-2)?.value;
    }
    Ok(SzegoOutcome {
        lhs,
        rhs,
        ok: lhs <= rhs + tol,
    })
}

/// Random interval set: 1..=4 disjoint intervals in [0, ω).
pub fn random_interval_set(sampler: &mut Sampler, omega: f64) -> IntervalSet {
    let k = 1 + (sampler.uniform() * 4.0) as usize;
    let mut points: Vec<f64> = (0..2 * k).map(|_| sampler.uniform_in(0.0, omega)).collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let intervals = points.chunks(2).map(|c| (c[0], c[1])).collect();
    IntervalSet::new(intervals).expect("sorted pairs are disjoint")
}

/// Random nonnegative ψ: quadratic with nonnegative coefficients.
pub fn random_psi(sampler: &mut Sampler) -> impl Fn(f64) -> f64 {
    let c: Vec<f64> = (0..3).map(|_| sampler.uniform_in(0.0, 2.0)).collect();
    move |x: f64| c[0] + c[1] * x + c[2] * x * x
}

/// Random nondecreasing φ on [0, ∞): quadratic with nonnegative
/// coefficients and φ(0) ≥ 0; monotone by construction.
pub fn random_phi(sampler: &mut Sampler) -> impl Fn(f64) -> f64 {
    let c: Vec<f64> = (0..3).map(|_| sampler.uniform_in(0.0, 2.0)).collect();
    move |z: f64| c[0] + c[1] * z + c[2] * z * z
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub trials: usize,
    pub passes: usize,
    pub failing_trials: Vec<usize>,
    pub worst: f64,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failing_trials.is_empty()
    }
}

/// Seeded Szegő property suite; includes the pipeline's own function
/// shapes ψ = tan³(x/2) sin x, φ(z) = z^{1/3} on every third trial.
pub fn szego_suite(seed: u64, trials: usize, tol: f64) -> Result<SuiteResult> {
    let stream = RngStream::new(seed);
    let mut failing = Vec::new();
    let mut worst = f64::INFINITY;
    for trial in 0..trials {
        let mut s = stream.substream(trial as u64);
        let outcome = if trial % 3 == 0 {
            let omega = PI - 0.1;
            let set = random_interval_set(&mut s, omega);
            check_szego(
                |x: f64| (x / 2.0).tan().powi(3) * x.sin(),
                |z: f64| z.max(0.0).cbrt(),
                &set,
                omega,
                tol,
            )?
        } else {
            let omega = sampler_omega(&mut s);
            let set = random_interval_set(&mut s, omega);
            let psi = random_psi(&mut s);
            let phi = random_phi(&mut s);
            check_szego(psi, phi, &set, omega, tol)?
        };
        worst = worst.min(outcome.rhs - outcome.lhs);
        if !outcome.ok {
            failing.push(trial);
        }
    }
    Ok(SuiteResult {
        suite: "szego".into(),
        trials,
        passes: trials - failing.len(),
        failing_trials: failing,
        worst,
    })
}

fn sampler_omega(s: &mut Sampler) -> f64 {
    s.uniform_in(1.0, 3.0)
}

/// Deficit ∫_{∂G} w² ds − (π/2α) Υ_α((2α/π) ∫_G w² da); nonnegative by
/// the isoperimetric lemma, zero exactly for sectors.
pub fn isoperimetric_deficit(g: &StarDomain, tol: f64) -> Result<f64> {
    let lhs = boundary_weight_integral(g, tol)?;
    let alpha = g.wedge().alpha();
    let i = moment(g, tol)?.moment;
    let rhs = PI / (2.0 * alpha) * upsilon(2.0 * alpha / PI * i, g.wedge(), tol * 1e-2)?;
    Ok(lhs - rhs)
}

/// Seeded isoperimetric property suite over smooth random star domains.
pub fn isoperimetric_suite(seed: u64, trials: usize, tol: f64) -> Result<SuiteResult> {
    let stream = RngStream::new(seed);
    let alphas = [1.3, 1.5, 2.0, 2.5];
    let mut failing = Vec::new();
    let mut worst = f64::INFINITY;
    let mut strictly_positive = 0usize;
    for trial in 0..trials {
        let mut s = stream.substream(trial as u64);
        let alpha = alphas[trial % alphas.len()];
        let wedge = Wedge::new(alpha).unwrap();
        let dom = random_star(wedge, &mut s, format!("rand-{trial}"));
        let deficit = isoperimetric_deficit(&dom, 1e-8)?;
        worst = worst.min(deficit);
        if deficit < -tol {
            failing.push(trial);
        }
        if deficit > 10.0 * tol {
            strictly_positive += 1;
        }
    }
    // Random smooth non-constant radii should be strictly non-sector in
    // the vast majority of draws.
    if trials >= 20 && (strictly_positive as f64) < 0.95 * trials as f64 {
        failing.push(usize::MAX);
    }
    Ok(SuiteResult {
        suite: "isoperimetric".into(),
        trials,
        passes: trials - failing.len().min(trials),
        failing_trials: failing,
        worst,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DesiderataReport {
    pub alpha: f64,
    pub grid: usize,
    pub max_equality_rel_err: f64,
    pub inequality_ok: bool,
}

/// Pointwise checks on a ρ-grid in (0, π): f³ equals tan^{2α}(ρ/2) sin ρ
/// and f² f′ = tan^{2α}(ρ/2)(2α + cos ρ)/3 stays below α tan^{2α}(ρ/2).
pub fn check_desiderata(wedge: &WedgeParam<f64>, grid: usize) -> Result<DesiderataReport> {
    let alpha = wedge.alpha();
    let mut max_rel = 0.0f64;
    let mut ineq_ok = true;
    for i in 1..grid {
        let rho = PI * i as f64 / grid as f64;
        let f = comparison_f(rho, wedge)?;
        let big_f = cal_f(rho, wedge)?;
        if big_f > 1e-300 {
            max_rel = max_rel.max((f.powi(3) - big_f).abs() / big_f);
        }
        let lhs = comparison_f2_fprime(rho, wedge)?;
        let bound = alpha * (rho / 2.0).tan().powf(2.0 * alpha);
        if lhs > bound * (1.0 + 1e-12) {
            ineq_ok = false;
        }
    }
    Ok(DesiderataReport {
        alpha,
        grid,
        max_equality_rel_err: max_rel,
        inequality_ok: ineq_ok,
    })
}

/// Sector equality case of the deficit, at several radii and wedges.
pub fn sector_deficits(tol: f64) -> Result<Vec<(f64, f64, f64)>> {
    let mut rows = Vec::new();
    for alpha in [1.5, 2.0] {
        let wedge = Wedge::new(alpha).unwrap();
        for r in [0.8, PI / 2.0, 2.0] {
            let d = isoperimetric_deficit(&sector(r, wedge)?, tol)?;
            rows.push((alpha, r, d));
        }
    }
    Ok(rows)
}
