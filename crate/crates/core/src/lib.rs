//! Archimedean-based Marshall-Olkin (AMO) bivariate distributions and copulas.
//!
//! The model starts from an Archimedean generator `G` and three shocks with
//! cumulative hazards `H₁, H₂, H₃`. The lifetimes `M_i = min(X_i, X₃)` have
//! joint survival function `G(H₁(t₁) + H₂(t₂) + H₃(max(t₁, t₂)))`, and the
//! associated copula is
//!
//! ```text
//! C(u, v) = G(max(D₁(x) + y, x + D₂(y))),   x = G⁻¹(u), y = G⁻¹(v)
//! ```
//!
//! for a pair of distortions `D₁, D₂`. The crate evaluates the copula and its
//! frontier, computes the mass of the singular component, Kendall's function
//! and tau, and tail dependence, and samples the model exactly for completely
//! monotone generators.
//!
//! ```
//! use amo::{AmoCopula, DistortionFamily, GeneratorFamily};
//!
//! let c = AmoCopula::from_families(
//!     GeneratorFamily::Clayton(1.0),
//!     DistortionFamily::Linear(0.5),
//!     DistortionFamily::Linear(0.5),
//! )
//! .unwrap();
//! assert!((c.evaluate(0.5, 0.5) - 0.4).abs() < 1e-12);
//! assert!((c.singular_mass().unwrap() - 1.0 / 3.0).abs() < 1e-8);
//! ```

// NaN must fail parameter checks, hence the negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

use std::sync::Arc;

pub mod cli;
pub mod copula;
pub mod dependence;
pub mod distortions;
pub mod error;
pub mod generators;
pub mod numerics;
pub mod sampling;

/// A shared real function.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub use copula::{equivalence_check, AmoCopula, CaseTag, Equivalence, JointModel};
pub use dependence::{
    empirical_tail, empirical_tau, kendall_function, kendall_tau, tail_parameters, TailReport, TailSide, TailValue,
};
pub use distortions::{
    distortions_from_hazards, hazards_from_distortions, make_distortion, t_function, t_inverse, Distortion,
    DistortionFamily, Hazard, HazardTriple,
};
pub use error::{Error, Result};
pub use generators::{
    kendall_function_base, kendall_tau_base, make_generator, validate_generator, Generator, GeneratorFamily,
    TailDecay, ZeroExpansion,
};
pub use numerics::{integrate, invert_monotone, Interval, Tolerance};
pub use sampling::{sample_batch, sample_frailty, sample_pair, FrailtyLaw, FrailtySpec, RngStream, SamplePair};
