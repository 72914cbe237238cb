//! Numerics for the Gaussian-weighted Fock spaces `F^p_α` of entire
//! functions on the complex plane.
//!
//! The crate evaluates weighted norms, reproducing kernels, t-Berezin
//! transforms of positive measures and ball measures, builds square
//! r-lattices, classifies measures as Fock–Carleson through the equivalent
//! Berezin / ball / lattice tests, and computes Toeplitz operators `T_μ`
//! together with their boundedness and compactness diagnostics on `F^∞_α`.
//!
//! Every integral carries an explicit Gaussian envelope, which gives
//! rigorous truncation bounds. Divergence is reported as a verdict rather
//! than an error: see [`verdict`].

pub mod carleson;
pub mod envelope;
pub mod error;
pub mod function;
pub mod kernel;
pub mod lattice;
pub mod measure;
pub mod norms;
pub mod quadrature;
pub mod space;
pub mod toeplitz;
pub mod transforms;
pub mod verdict;
pub mod verify;

pub use error::{FockError, Result};
pub use function::EntireFunction;
pub use measure::{Atom, Measure, PlaneFunction, RadialProfile};
pub use quadrature::QuadratureSpec;
pub use space::{ComplexPoint, Exponent, FockWeight};
pub use verdict::{Decay, Growth, Verdict};
