//! Shared numerical kernels: adaptive quadrature, bracketed root finding,
//! adaptive ODE integration, deterministic random streams.

pub mod ode;
pub mod quad;
pub mod rng;
pub mod root;

pub use ode::integrate_ode;
pub use quad::{integrate, QuadratureResult};
pub use rng::{RngStream, Sampler};
pub use root::{find_root, Bracket};
