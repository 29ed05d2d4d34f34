//! Monte Carlo simulation of Brownian pursuit on the line: n pursuers
//! chasing one prey, all independent standard Brownian motions, with a
//! power-law fit of the capture-time tail.

use rayon::prelude::*;

use crate::bound::{decay_exponent_3d, A3_REFERENCE, A4_REFERENCE};
use crate::error::{Error, Result};
use crate::numerics::RngStream;

#[derive(Debug, Clone, serde::Serialize)]
pub struct PursuitConfig {
    pub n_pursuers: usize,
    pub prey_start: f64,
    pub pursuer_starts: Vec<f64>,
    pub dt: f64,
    pub t_max: f64,
    pub paths: usize,
    pub seed: u64,
}

impl PursuitConfig {
    /// Default configuration: pursuers at 0, prey at 1.
    pub fn new(n_pursuers: usize, paths: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            n_pursuers,
            prey_start: 1.0,
            pursuer_starts: vec![0.0; n_pursuers],
            dt: 1e-3,
            t_max: 50.0,
            paths,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pursuers < 1 {
            return Err(Error::Domain("pursuit: need at least one pursuer".into()));
        }
        if self.pursuer_starts.len() != self.n_pursuers {
            return Err(Error::Domain(format!(
                "pursuit: {} starts for {} pursuers",
                self.pursuer_starts.len(),
                self.n_pursuers
            )));
        }
        if self.pursuer_starts.iter().any(|&x| x >= self.prey_start) {
            return Err(Error::Domain(
                "pursuit: all pursuers must start strictly left of the prey".into(),
            ));
        }
        if !(self.dt > 0.0) || !(self.t_max > 0.0) {
            return Err(Error::Domain("pursuit: dt and t_max must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PursuitStats {
    /// Capture time per path; `t_max` entries are censored.
    pub capture_times: Vec<f64>,
    pub censored_fraction: f64,
    /// (t, surviving paths, P̂(τ > t)) on a log-spaced grid.
    pub survival_curve: Vec<(f64, usize, f64)>,
    pub tail_exponent: f64,
    pub tail_stderr: f64,
    pub fit_points: usize,
}

/// Minimum surviving-path count for a grid point to enter the tail fit.
pub const FIT_MIN_SURVIVORS: usize = 30;

/// Euler–Maruyama simulation of the pursuit; deterministic given the
/// seed, with one RNG substream per path so parallel order is
/// irrelevant.
pub fn simulate(config: &PursuitConfig) -> Result<PursuitStats> {
    config.validate()?;
    if config.paths == 0 {
        return Ok(PursuitStats {
            capture_times: Vec::new(),
            censored_fraction: 0.0,
            survival_curve: Vec::new(),
            tail_exponent: f64::NAN,
            tail_stderr: f64::NAN,
            fit_points: 0,
        });
    }
    let stream = RngStream::new(config.seed);
    let sqrt_dt = config.dt.sqrt();
    let steps = (config.t_max / config.dt).ceil() as usize;

    let capture_times: Vec<f64> = (0..config.paths)
        .into_par_iter()
        .map(|path| {
            let mut rng = stream.substream(path as u64);
            let mut prey = config.prey_start;
            let mut pursuers = config.pursuer_starts.clone();
            for step in 1..=steps {
                prey += sqrt_dt * rng.gaussian();
                let mut caught = false;
                for p in pursuers.iter_mut() {
                    *p += sqrt_dt * rng.gaussian();
                    caught |= *p >= prey;
                }
                if caught {
                    return step as f64 * config.dt;
                }
            }
            config.t_max
        })
        .collect();

    let censored = capture_times
        .iter()
        .filter(|&&t| t >= config.t_max)
        .count();
    let censored_fraction = censored as f64 / config.paths as f64;

    let mut sorted = capture_times.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let survival_curve = survival_on_grid(&sorted, config);

    let (tail_exponent, tail_stderr, fit_points) = fit_tail(&survival_curve, config)?;

    Ok(PursuitStats {
        capture_times,
        censored_fraction,
        survival_curve,
        tail_exponent,
        tail_stderr,
        fit_points,
    })
}

fn survival_on_grid(sorted: &[f64], config: &PursuitConfig) -> Vec<(f64, usize, f64)> {
    let n = sorted.len();
    let lo = (config.t_max / 200.0).max(config.dt);
    let hi = config.t_max;
    let points = 64usize;
    (0..points)
        .map(|i| {
            let t = lo * (hi / lo).powf(i as f64 / (points - 1) as f64);
            // survivors: capture time strictly greater than t
            let idx = sorted.partition_point(|&x| x <= t);
            let survivors = n - idx;
            (t, survivors, survivors as f64 / n as f64)
        })
        .collect()
}

/// Least squares of log P̂ on log t over [t_max/100, t_max], restricted
/// to grid points with more than `FIT_MIN_SURVIVORS` survivors.
fn fit_tail(
    curve: &[(f64, usize, f64)],
    config: &PursuitConfig,
) -> Result<(f64, f64, usize)> {
    let window_lo = config.t_max / 100.0;
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter(|(t, s, _)| *t >= window_lo && *s > FIT_MIN_SURVIVORS)
        .map(|(t, _, p)| (t.ln(), p.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::FitWindow(format!(
            "only {} usable grid points; decrease dt or t_max, or add paths",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss_res: f64 = pts
        .iter()
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let stderr = if pts.len() > 2 {
        (ss_res / (n - 2.0) / (sxx - sx * sx / n)).sqrt()
    } else {
        f64::NAN
    };
    Ok((-slope, stderr, pts.len()))
}

/// One row of the decay-rate report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExponentRow {
    pub lambda1: f64,
    pub a3: f64,
}

/// Tabulates the 3-space decay exponents for the given eigenvalue bounds
/// alongside the literature reference constants.
pub fn exponent_report(lambda_bounds: &[f64]) -> Result<(Vec<ExponentRow>, [f64; 2], [f64; 2])> {
    if lambda_bounds.iter().any(|&l| l <= 0.0) {
        return Err(Error::Domain("exponent_report: eigenvalues must be positive".into()));
    }
    let rows = lambda_bounds
        .iter()
        .map(|&l| ExponentRow {
            lambda1: l,
            a3: decay_exponent_3d(l),
        })
        .collect();
    Ok((rows, A3_REFERENCE, A4_REFERENCE))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        assert!(PursuitConfig::new(0, 10, 1).is_err());
        let mut cfg = PursuitConfig::new(2, 10, 1).unwrap();
        cfg.pursuer_starts[1] = 2.0; // right of the prey
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn zero_paths_degenerate() {
        let cfg = PursuitConfig::new(1, 0, 1).unwrap();
        let stats = simulate(&cfg).unwrap();
        assert!(stats.capture_times.is_empty());
        assert_eq!(stats.censored_fraction, 0.0);
    }

    #[test]
    fn deterministic_reruns() {
        let mut cfg = PursuitConfig::new(2, 400, 7).unwrap();
        cfg.dt = 0.01;
        cfg.t_max = 5.0;
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a.capture_times, b.capture_times);
        assert_eq!(a.tail_exponent.to_bits(), b.tail_exponent.to_bits());
    }

    #[test]
    fn survival_curve_nonincreasing() {
        let mut cfg = PursuitConfig::new(1, 2000, 3).unwrap();
        cfg.dt = 0.01;
        cfg.t_max = 10.0;
        let stats = simulate(&cfg).unwrap();
        for w in stats.survival_curve.windows(2) {
            assert!(w[1].2 <= w[0].2 + 1e-15);
        }
        assert!(stats.survival_curve[0].2 <= 1.0);
    }

    #[test]
    fn single_pursuer_exponent_near_half() {
        // Reflection principle: the prey-pursuer difference is a scaled
        // Brownian motion, so P(τ > t) ~ t^{-1/2}.
        let mut cfg = PursuitConfig::new(1, 20_000, 11).unwrap();
        cfg.dt = 5e-3;
        cfg.t_max = 40.0;
        let stats = simulate(&cfg).unwrap();
        assert!(
            (stats.tail_exponent - 0.5).abs() < 0.12,
            "exponent {} +- {}",
            stats.tail_exponent,
            stats.tail_stderr
        );
    }

    #[test]
    fn exponent_table_rows() {
        let (rows, a3_ref, a4_ref) = exponent_report(&[5.104_215_18, 5.116_414_65, 3.75]).unwrap();
        assert!((rows[0].a3 - a3_ref[0]).abs() < 1e-8);
        assert!((rows[1].a3 - a3_ref[1]).abs() < 1e-8);
        assert!((rows[2].a3 - 0.75).abs() < 1e-12);
        assert_eq!(a4_ref, A4_REFERENCE);
        assert!(exponent_report(&[0.0]).is_err());
    }

    #[test]
    fn identical_starts_exchangeable() {
        // Permuting identical pursuer starts cannot change anything:
        // the draw order is by pursuer index, not by value.
        let mut cfg = PursuitConfig::new(3, 200, 5).unwrap();
        cfg.dt = 0.01;
        cfg.t_max = 4.0;
        let a = simulate(&cfg).unwrap();
        let mut cfg2 = cfg.clone();
        cfg2.pursuer_starts.reverse();
        let b = simulate(&cfg2).unwrap();
        assert_eq!(a.capture_times, b.capture_times);
    }
}
