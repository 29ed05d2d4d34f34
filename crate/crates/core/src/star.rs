//! Star-shaped domains in the wedge, described by a radius function
//! r(θ) on [0, π/α], with the concrete domains used by the pipeline:
//! truncated sectors, the tetrahedral triangle, and its majorant.

use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::{integrate, Sampler};
use crate::wedge::{big_z, big_z_inverse, cal_f, WedgeParam};

/// Scalar type used by the domain layer.
pub type Wedge = WedgeParam<f64>;

#[derive(Debug, Clone)]
pub enum RadiusFn {
    /// Truncated sector S(r).
    Constant(f64),
    /// Face of the regular tetrahedral tessellation (α = 3/2).
    Tetra,
    /// Majorant of the tetrahedral triangle: r(θ) = Z⁻¹(T(θ)) with
    /// T(θ) = A1 + A2 cos(θ − π/3) + A3 (1 − cos 6θ).
    HatTetra { a1: f64, a2: f64, a3: f64 },
    /// Truncated cosine series, optionally clamped to [lo, hi].
    Cosine {
        c0: f64,
        coeffs: Vec<f64>,
        clamp: Option<(f64, f64)>,
    },
    /// Sampled table with monotone cubic (PCHIP) interpolation.
    Table(Pchip),
}

#[derive(Debug, Clone)]
pub struct StarDomain {
    wedge: Wedge,
    radius: RadiusFn,
    label: String,
}

/// Moment of inertia I(G) = ∫_G w² da with solver diagnostics.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MomentReport {
    pub moment: f64,
    pub tol: f64,
    pub evaluations: usize,
}

const TETRA_ALPHA: f64 = 1.5;

fn tetra_radius(theta: f64) -> f64 {
    PI / 2.0 + ((theta - PI / 3.0).cos() / 2.0f64.sqrt()).atan()
}

fn tetra_radius_deriv(theta: f64) -> f64 {
    let u = (theta - PI / 3.0).cos() / 2.0f64.sqrt();
    let du = -(theta - PI / 3.0).sin() / 2.0f64.sqrt();
    du / (1.0 + u * u)
}

impl StarDomain {
    pub fn new(wedge: Wedge, radius: RadiusFn, label: impl Into<String>) -> Result<Self> {
        let dom = Self {
            wedge,
            radius,
            label: label.into(),
        };
        // Radius must stay in [0, π) across the wedge.
        for i in 0..=256 {
            let theta = dom.wedge.opening() * i as f64 / 256.0;
            let r = dom.radius(theta);
            if !(0.0..PI).contains(&r) {
                return Err(Error::Geometry(format!(
                    "radius {r} at theta = {theta} outside [0, pi)"
                )));
            }
        }
        Ok(dom)
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn radius(&self, theta: f64) -> f64 {
        match &self.radius {
            RadiusFn::Constant(r) => *r,
            RadiusFn::Tetra => tetra_radius(theta),
            RadiusFn::HatTetra { a1, a2, a3 } => {
                let t = a1 + a2 * (theta - PI / 3.0).cos() + a3 * (1.0 - (6.0 * theta).cos());
                big_z_inverse(t.max(0.0), &self.wedge, 1e-12)
                    .expect("hat-tetra majorant stays below the Z range cap")
            }
            RadiusFn::Cosine { c0, coeffs, clamp } => {
                let alpha = self.wedge.alpha();
                let mut r = *c0;
                for (k, c) in coeffs.iter().enumerate() {
                    r += c * ((k + 1) as f64 * alpha * theta).cos();
                }
                match clamp {
                    Some((lo, hi)) => r.clamp(*lo, *hi),
                    None => r,
                }
            }
            RadiusFn::Table(p) => p.eval(theta),
        }
    }

    pub fn radius_deriv(&self, theta: f64) -> f64 {
        match &self.radius {
            RadiusFn::Constant(_) => 0.0,
            RadiusFn::Tetra => tetra_radius_deriv(theta),
            RadiusFn::HatTetra { a2, a3, .. } => {
                // r = Z⁻¹(T) so r' = T' / F(r).
                let tp = -a2 * (theta - PI / 3.0).sin() + 6.0 * a3 * (6.0 * theta).sin();
                let r = self.radius(theta);
                if r == 0.0 {
                    0.0
                } else {
                    tp / cal_f(r, &self.wedge).expect("radius below pi")
                }
            }
            RadiusFn::Cosine { c0, coeffs, clamp } => {
                let alpha = self.wedge.alpha();
                let mut r = *c0;
                let mut dr = 0.0;
                for (k, c) in coeffs.iter().enumerate() {
                    let freq = (k + 1) as f64 * alpha;
                    r += c * (freq * theta).cos();
                    dr -= c * freq * (freq * theta).sin();
                }
                match clamp {
                    Some((lo, hi)) if r < *lo || r > *hi => 0.0,
                    _ => dr,
                }
            }
            RadiusFn::Table(p) => p.deriv(theta),
        }
    }

    /// Pointwise containment by radius comparison.
    pub fn contains(&self, other: &StarDomain, samples: usize) -> bool {
        (0..=samples).all(|i| {
            let theta = self.wedge.opening() * i as f64 / samples as f64;
            other.radius(theta) <= self.radius(theta) + 1e-12
        })
    }
}

/// The truncated sector S(r).
pub fn sector(r: f64, wedge: Wedge) -> Result<StarDomain> {
    if !(0.0..PI).contains(&r) {
        return Err(Error::Domain(format!("sector: need 0 <= r < pi, got {r}")));
    }
    StarDomain::new(wedge, RadiusFn::Constant(r), format!("S({r:.8})"))
}

/// The face of the regular tetrahedral tessellation of the sphere,
/// sitting in the wedge of angle 2π/3 (α = 3/2).
pub fn tetra_triangle() -> StarDomain {
    let wedge = Wedge::new(TETRA_ALPHA).expect("3/2 > 1");
    StarDomain::new(wedge, RadiusFn::Tetra, "T").expect("tetra radius stays in range")
}

/// Solved coefficients of the majorant's trigonometric upper bound T(θ).
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct HatTetraCoeffs {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

/// Reference moment of the majorant domain ĥT; the third coefficient of
/// T(θ) is pinned so the closed-form moment lands on this value.
pub const HAT_TETRA_MOMENT: f64 = 1.908_313_55;

/// The majorant domain: radius Z⁻¹(T(θ)) with T matched to Z(r(θ)) of the
/// tetrahedral triangle at θ = 0 and π/3, and the A3 ripple pinned by the
/// reference moment. The construction checks that A3 sits at or above the
/// curvature-matching (tangency) value at θ = π/3, which guarantees
/// T(θ) ≥ Z(r(θ)) with strict clearance in the interior.
pub fn hat_tetra(tol: f64) -> Result<(StarDomain, HatTetraCoeffs)> {
    let wedge = Wedge::new(TETRA_ALPHA).expect("3/2 > 1");
    let g = |theta: f64| -> Result<f64> { big_z(tetra_radius(theta), &wedge, tol) };
    let t0 = g(0.0)?;
    let t1 = g(PI / 3.0)?;

    // System for (A1, A2, A3):
    //   T(0)    = A1 + A2/2                        = t0
    //   T(π/3)  = A1 + A2                          = t1
    //   moment  = (π/3) A1 + (9√3/16) A2 + (π/3) A3 = reference moment
    let m = [
        [1.0, 0.5, 0.0],
        [1.0, 1.0, 0.0],
        [PI / 3.0, 9.0 * 3.0f64.sqrt() / 16.0, PI / 3.0],
    ];
    let sol = solve3(m, [t0, t1, HAT_TETRA_MOMENT])?;
    let coeffs = HatTetraCoeffs {
        a1: sol[0],
        a2: sol[1],
        a3: sol[2],
    };

    // Tangency value of A3 (second derivative of Z(r(θ)) matched at π/3,
    // by Richardson-extrapolated central differences): the smallest ripple
    // for which T still majorizes. The pinned A3 must not fall below it.
    let d2 = |h: f64| -> Result<f64> {
        Ok((g(PI / 3.0 + h)? - 2.0 * t1 + g(PI / 3.0 - h)?) / (h * h))
    };
    let h = 1e-3;
    let g2 = (4.0 * d2(h / 2.0)? - d2(h)?) / 3.0;
    let a3_tangent = (g2 + coeffs.a2) / 36.0;
    if coeffs.a3 < a3_tangent - 1e-9 {
        return Err(Error::Geometry(format!(
            "hat-tetra ripple {} below tangency value {a3_tangent}",
            coeffs.a3
        )));
    }
    let dom = StarDomain::new(
        wedge,
        RadiusFn::HatTetra {
            a1: coeffs.a1,
            a2: coeffs.a2,
            a3: coeffs.a3,
        },
        "hatT",
    )?;
    Ok((dom, coeffs))
}

/// I(ĥT) by the closed form π A1/3 + (9√3/16) A2 + π A3/3.
pub fn hat_tetra_moment_closed_form(c: &HatTetraCoeffs) -> f64 {
    PI / 3.0 * c.a1 + 9.0 * 3.0f64.sqrt() / 16.0 * c.a2 + PI / 3.0 * c.a3
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() < 1e-14 {
            return Err(Error::SingularSystem("hat-tetra matching".into()));
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// I(G) = ∫_G w² da = ∫₀^{π/α} Z(r(θ)) sin²(αθ) dθ.
pub fn moment(g: &StarDomain, tol: f64) -> Result<MomentReport> {
    let alpha = g.wedge().alpha();
    // The inner Z evaluation gets a tighter tolerance than the outer
    // θ-quadrature so its error does not pollute the estimate.
    let inner_tol = (tol * 1e-2).max(1e-14);
    let wedge = *g.wedge();
    let q = integrate(
        |theta: f64| {
            let z = big_z(g.radius(theta), &wedge, inner_tol).unwrap_or(f64::NAN);
            z * (alpha * theta).sin().powi(2)
        },
        0.0,
        g.wedge().opening(),
        tol,
    )?;
    Ok(MomentReport {
        moment: q.value,
        tol,
        evaluations: q.evaluations,
    })
}

/// ∫_{∂G} w² ds over the outer curve ρ = r(θ); the radial edges lie on
/// θ ∈ {0, π/α} where w = 0 and contribute nothing.
pub fn boundary_weight_integral(g: &StarDomain, tol: f64) -> Result<f64> {
    let alpha = g.wedge().alpha();
    let q = integrate(
        |theta: f64| {
            let r = g.radius(theta);
            let rp = g.radius_deriv(theta);
            let w2 = (r / 2.0).tan().powf(2.0 * alpha) * (alpha * theta).sin().powi(2);
            w2 * (rp * rp + r.sin().powi(2)).sqrt()
        },
        0.0,
        g.wedge().opening(),
        tol,
    )?;
    Ok(q.value)
}

/// Seeded smooth random star domain: r(θ) = clamp(c0 + Σ c_k cos(kαθ)).
pub fn random_star(wedge: Wedge, sampler: &mut Sampler, label: impl Into<String>) -> StarDomain {
    let c0 = sampler.uniform_in(1.0, 2.2);
    let coeffs: Vec<f64> = (0..4).map(|_| sampler.uniform_in(-0.15, 0.15)).collect();
    StarDomain::new(
        wedge,
        RadiusFn::Cosine {
            c0,
            coeffs,
            clamp: Some((0.3, 2.9)),
        },
        label,
    )
    .expect("clamped cosine radius stays in range")
}

/// Load a sampled radius table ("theta,r" rows, header optional) and wrap
/// it in monotone-cubic interpolation.
pub fn load_radius_csv(path: &Path, wedge: Wedge) -> Result<StarDomain> {
    let text = std::fs::read_to_string(path)?;
    parse_radius_csv(&text, wedge, path.display().to_string())
}

pub fn parse_radius_csv(text: &str, wedge: Wedge, label: String) -> Result<StarDomain> {
    let mut thetas = Vec::new();
    let mut radii = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.to_ascii_lowercase().replace(' ', "") == "theta,r" {
            continue;
        }
        let mut parts = line.split(',');
        let theta: f64 = parts
            .next()
            .ok_or_else(|| Error::Ingestion {
                line: lineno,
                msg: "missing theta column".into(),
            })?
            .trim()
            .parse()
            .map_err(|e| Error::Ingestion {
                line: lineno,
                msg: format!("bad theta: {e}"),
            })?;
        let r: f64 = parts
            .next()
            .ok_or_else(|| Error::Ingestion {
                line: lineno,
                msg: "missing r column".into(),
            })?
            .trim()
            .parse()
            .map_err(|e| Error::Ingestion {
                line: lineno,
                msg: format!("bad r: {e}"),
            })?;
        if parts.next().is_some() {
            return Err(Error::Ingestion {
                line: lineno,
                msg: "expected exactly two columns".into(),
            });
        }
        if let Some(&prev) = thetas.last() {
            if theta <= prev {
                return Err(Error::Ingestion {
                    line: lineno,
                    msg: format!("theta not strictly increasing ({prev} -> {theta})"),
                });
            }
        }
        if !(0.0..PI).contains(&r) {
            return Err(Error::Ingestion {
                line: lineno,
                msg: format!("r = {r} outside [0, pi)"),
            });
        }
        thetas.push(theta);
        radii.push(r);
    }
    if thetas.len() < 2 {
        return Err(Error::Ingestion {
            line: 0,
            msg: format!("need at least 2 samples, got {}", thetas.len()),
        });
    }
    let opening = wedge.opening();
    if thetas[0].abs() > 1e-9 || (thetas[thetas.len() - 1] - opening).abs() > 1e-9 {
        return Err(Error::Ingestion {
            line: 0,
            msg: format!(
                "theta grid [{}, {}] must cover [0, {opening}]",
                thetas[0],
                thetas[thetas.len() - 1]
            ),
        });
    }
    let pchip = Pchip::new(thetas, radii)?;
    StarDomain::new(wedge, RadiusFn::Table(pchip), label)
}

/// Monotone cubic (Fritsch–Carlson) interpolation. Stays within the data
/// range, so a table of radii below π cannot overshoot past π.
#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::Domain("pchip: need matching arrays of length >= 2".into()));
        }
        let n = x.len();
        let mut h = vec![0.0; n - 1];
        let mut slope = vec![0.0; n - 1];
        for i in 0..n - 1 {
            h[i] = x[i + 1] - x[i];
            slope[i] = (y[i + 1] - y[i]) / h[i];
        }
        let mut d = vec![0.0; n];
        d[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), slope[0], slope.get(1).copied().unwrap_or(slope[0]));
        d[n - 1] = endpoint_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            slope[n - 2],
            if n >= 3 { slope[n - 3] } else { slope[n - 2] },
        );
        for i in 1..n - 1 {
            if slope[i - 1] * slope[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
            }
        }
        Ok(Self { x, y, d })
    }

    fn segment(&self, t: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    pub fn deriv(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let dh00 = (6.0 * s * s - 6.0 * s) / h;
        let dh10 = 3.0 * s * s - 4.0 * s + 1.0;
        let dh01 = -(6.0 * s * s - 6.0 * s) / h;
        let dh11 = 3.0 * s * s - 2.0 * s;
        dh00 * self.y[i] + dh10 * self.d[i] + dh01 * self.y[i + 1] + dh11 * self.d[i + 1]
    }
}

fn hermite_basis(s: f64) -> (f64, f64, f64, f64) {
    (
        2.0 * s.powi(3) - 3.0 * s * s + 1.0,
        s.powi(3) - 2.0 * s * s + s,
        -2.0 * s.powi(3) + 3.0 * s * s,
        s.powi(3) - s * s,
    )
}

// Shape-preserving three-point endpoint slope (Fritsch-Carlson).
fn endpoint_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}
