//! Gauss's ordinary hypergeometric function ₂F₁ and log-gamma, on the
//! real parameter region the eigenvalue pipeline needs (x ∈ [0, 1]).

use crate::error::{Error, Result};
use crate::real::Real;

/// Hard cap on the number of series terms before giving up.
pub const MAX_TERMS: usize = 100_000;

/// Parameter quadruple (a, b; c; x) for ₂F₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub x: R,
}

impl<R: Real> Hyp2F1Args<R> {
    pub fn new(a: R, b: R, c: R, x: R) -> Result<Self> {
        if !(c > R::zero()) {
            return Err(Error::Domain(format!("hyp2f1: need c > 0, got c = {c}")));
        }
        if !(x >= R::zero() && x <= R::one()) {
            return Err(Error::Domain(format!("hyp2f1: need x in [0, 1], got {x}")));
        }
        if x == R::one() && !(c - a - b > R::zero()) {
            return Err(Error::Domain(format!(
                "hyp2f1: series diverges at x = 1 unless c - a - b > 0 (got {})",
                c - a - b
            )));
        }
        Ok(Self { a, b, c, x })
    }
}

/// Raw hypergeometric series 1 + (ab/c)x/1! + ..., by term-ratio recurrence.
/// Converges for x < 1 always, and at x = 1 when c - a - b > 0.
fn series<R: Real>(a: R, b: R, c: R, x: R, tol: R) -> Result<R> {
    let mut term = R::one();
    let mut sum = R::one();
    for k in 0..MAX_TERMS {
        let kf = R::of(k as f64);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + R::one())) * x;
        sum += term;
        if term.abs() <= tol && k > 2 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: format!("2F1({a},{b};{c};{x})"),
        partial: sum.to_f64_lossy(),
        terms: MAX_TERMS,
    })
}

/// ₂F₁(a, b; c; x) with absolute error ≤ tol.
///
/// For x > 1/2 the Euler transformation
/// ₂F₁(a,b;c;x) = (1−x)^(c−a−b) ₂F₁(c−a, c−b; c; x)
/// is applied. At x = 1 the value is Gauss's summation
/// Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)), which is exact.
pub fn hyp2f1<R: Real>(args: Hyp2F1Args<R>, tol: R) -> Result<R> {
    let Hyp2F1Args { a, b, c, x } = args;
    if !(tol > R::zero()) {
        return Err(Error::Domain("hyp2f1: tol must be positive".into()));
    }
    if x == R::one() {
        return gauss_summation(a, b, c);
    }
    if x > R::of(0.5) {
        let s = c - a - b;
        let f = series(c - a, c - b, c, x, tol)?;
        Ok((R::one() - x).powf(s) * f)
    } else {
        series(a, b, c, x, tol)
    }
}

/// Value of ₂F₁ at x = 1 by the Gauss summation formula; requires
/// c − a − b > 0 and evaluates through log-gamma, with the sign handled
/// through the reflection needed when c − a or c − b is negative.
pub fn gauss_summation<R: Real>(a: R, b: R, c: R) -> Result<R> {
    let s = c - a - b;
    if !(s > R::zero()) {
        return Err(Error::Domain(format!(
            "gauss summation needs c - a - b > 0, got {s}"
        )));
    }
    // Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)); c > 0 and s > 0, but c−a or c−b may
    // be negative or hit a pole of Γ (where the value is 0).
    let (lg_ca, sign_ca) = log_gamma_signed(c - a)?;
    let (lg_cb, sign_cb) = log_gamma_signed(c - b)?;
    match (sign_ca, sign_cb) {
        (0, _) | (_, 0) => Ok(R::zero()),
        (sa, sb) => {
            let lg = log_gamma(c)? + log_gamma(s)? - lg_ca - lg_cb;
            Ok(R::of((sa * sb) as f64) * lg.exp())
        }
    }
}

/// Natural log of Γ(z) for z > 0, Lanczos approximation (g = 607/128).
pub fn log_gamma<R: Real>(z: R) -> Result<R> {
    if !(z > R::zero()) {
        return Err(Error::Domain(format!("log_gamma: need z > 0, got {z}")));
    }
    Ok(lanczos(z))
}

/// log|Γ(z)| and the sign of Γ(z) for arbitrary real z; sign 0 marks a
/// pole (z a nonpositive integer), where 1/Γ(z) = 0.
fn log_gamma_signed<R: Real>(z: R) -> Result<(R, i32)> {
    if z > R::zero() {
        return Ok((lanczos(z), 1));
    }
    // Reflection: Γ(z)Γ(1−z) = π / sin(πz).
    let zf = z.to_f64_lossy();
    if zf == zf.floor() {
        return Ok((R::infinity(), 0));
    }
    let sinpi = (R::PI() * z).sin();
    let lg = R::PI().ln() - sinpi.abs().ln() - lanczos(R::one() - z);
    let sign = if sinpi > R::zero() { 1 } else { -1 };
    Ok((lg, sign))
}

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

fn lanczos<R: Real>(z: R) -> R {
    if z < R::of(0.5) {
        // Recurrence keeps the approximation on its accurate range.
        return lanczos(z + R::one()) - z.ln();
    }
    let z = z - R::one();
    let mut acc = R::of(LANCZOS_COEFFS[0]);
    for (k, &ck) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += R::of(ck) / (z + R::of(k as f64));
    }
    let t = z + R::of(LANCZOS_G) + R::of(0.5);
    let half_log_2pi = R::of(0.918_938_533_204_672_8); // ln(2π)/2
    half_log_2pi + (z + R::of(0.5)) * t.ln() - t + acc.ln()
}
