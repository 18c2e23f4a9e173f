//! Velocity-field diagnostics for relativistic wave equations.
//!
//! A wavefunction ψ and a four-potential `A` define a four-velocity field
//! through `(m u_μ + q A_μ) ψ = −iħ ∂_μ ψ`. This crate extracts that field
//! from analytic fixtures and evaluates the residuals of the relations built
//! on it: the Newton force law, its curl condition, the mass shell, the
//! Klein-Gordon equation and its nonlinear correction, the divergence
//! identity, the action integral, and the Dirac equation in both its γ and
//! α/β forms. Worldline geometry (boosts, time-slice pierce points) lives in
//! [`worldline`].
//!
//! Coordinates use `x4 = ict` throughout, so contractions are plain sums.

pub mod action;
pub mod context;
pub mod dirac;
pub mod error;
pub mod fields;
pub mod four;
pub mod jet;
pub mod units;
pub mod velocity;
pub mod wavefunctions;
pub mod worldline;

pub use context::Context;
pub use error::{Error, Result};
pub use four::{boost_x1, contract, Event, FourVector, Matrix4, C64};
pub use jet::{differentiate, DerivativeMethod, DiffOrder, Jet, ScalarField};
pub use units::PhysicalConstants;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
