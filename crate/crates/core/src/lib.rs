//! Incompressible Navier-Stokes on the flat 2pi-periodic torus, discretized
//! with a theta-method in time and MINI finite elements in space, plus the
//! diagnostics needed to certify the discrete energy structure of the scheme:
//! per-step energy identities, interpolation-gap formulas, dual-norm bounds on
//! the discrete time derivative, and the local-energy-inequality bookkeeping
//! (projection remainders, telescoping identities, defect functionals).
//!
//! Layout:
//! - [`mesh`]: uniform simplicial triangulation of the d-torus (d = 2, 3).
//! - [`quadrature`]: simplex rules with audited polynomial exactness.
//! - [`spaces`]: velocity (P1 + cell bubble) and pressure (P1) spaces,
//!   fields, norms, interpolation and L2 projections.
//! - [`probes`]: numerical probes for the structural hypotheses the analysis
//!   of the scheme rests on (inf-sup/coercivity, inverse inequality,
//!   commutator defects of the projections).
//! - [`operators`]: assembled mass/stiffness/divergence forms and the
//!   skew-stabilized convection term.
//! - [`stepper`]: the implicit theta-step with Picard linearization and the
//!   trajectory driver.
//! - [`diagnostics`]: time reconstructions, energy ledger, pressure ratios,
//!   local energy inequality reports.
//! - [`snapshot`]: binary trajectory persistence.
//! - [`initial`]: Taylor-Green and seeded divergence-free initial data.

pub mod diagnostics;
pub mod error;
pub mod initial;
pub mod linalg;
pub mod mesh;
pub mod operators;
pub mod probes;
pub mod quadrature;
pub mod snapshot;
pub mod spaces;
pub mod stepper;

pub use error::Error;

/// Domain period: every axis of the torus has length `2*pi`.
pub const TORUS_LENGTH: f64 = 2.0 * std::f64::consts::PI;
