//! Sharp lower bounds for the first Dirichlet eigenvalue of domains
//! contained in a wedge of the two-sphere.
//!
//! The pipeline maps a star-shaped domain G ⊂ W to its weighted moment
//! I(G) = ∫_G w² da, the equalizing sector radius r* with
//! I(S(r*)) = I(G), and the eigenvalue bound λ₁(G) ≥ λ₁(S(r*)),
//! computed as the first positive root of a hypergeometric shooting
//! function and independently cross-checked by ODE shooting. Supporting
//! modules verify the underlying rearrangement and isoperimetric
//! inequalities numerically, solve the eigenproblem directly by finite
//! elements, and simulate the Brownian-pursuit application.
//!
//! The scalar kernels (`specfun`, `numerics`, `wedge`) are generic over
//! the floating-point type through [`real::Real`]; the pipeline layers
//! work in f64, re-exported here through concrete aliases.

pub mod bound;
pub mod error;
pub mod fd;
pub mod lab;
pub mod numerics;
pub mod pursuit;
pub mod real;
pub mod specfun;
pub mod star;
pub mod wedge;

pub use error::{Error, Result};
pub use real::Real;

/// Scalar type of the concrete pipeline layers.
pub type Scalar = f64;
/// Wedge parameter at the pipeline scalar type.
pub type Wedge = wedge::WedgeParam<Scalar>;
/// Polar point at the pipeline scalar type.
pub type PolarPoint = wedge::PolarPoint<Scalar>;
/// Hypergeometric argument quadruple at the pipeline scalar type.
pub type Hyp2F1Args = specfun::Hyp2F1Args<Scalar>;
/// Quadrature result at the pipeline scalar type.
pub type QuadratureResult = numerics::QuadratureResult<Scalar>;
/// Root bracket at the pipeline scalar type.
pub type Bracket = numerics::Bracket<Scalar>;

pub use bound::{payne_weinberger_bound, BoundReport};
pub use star::{sector, tetra_triangle, StarDomain};
