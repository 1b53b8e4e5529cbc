//! Exact combinatorics of stable marked genus-0 curves and the hyperelliptic
//! curves that double-cover them.
//!
//! A stable `m`-marked curve of genus 0 is handled through its weighted dual
//! tree ([`WeightedTree`]). From there the crate computes
//!
//! * the central component and the contraction to a semistable binary form
//!   ([`central`], [`forms`]),
//! * the admissible double cover of a `(2g+2)`-marked tree and its stable
//!   hyperelliptic model ([`cover`]),
//! * the closed-form local stable reduction of `y^2 = prod (x - x_i)^{n_i}`
//!   ([`reduction`]),
//! * boundary strata and image dimensions of the map from stable
//!   hyperelliptic curves to binary forms ([`moduli`]),
//! * exhaustive censuses of stable trees for small `m` ([`enumerate`]).
//!
//! Everything is exact integer arithmetic.

pub mod central;
pub mod cli;
pub mod cover;
pub mod enumerate;
mod error;
pub mod forms;
pub mod moduli;
pub mod reduction;
pub mod tree;

pub use central::{contract_to_form, find_central, CentralResult};
pub use cover::{build_cover, stable_model, CoverModel, StableHyperellipticModel};
pub use enumerate::{enumerate, Census};
pub use error::{Error, Result};
pub use forms::{BinaryFormClass, GitClass};
pub use moduli::{classify_stratum, f_g_exponents, image_dimension, StratumLabel};
pub use reduction::{blowup_chain, reduce, BlowupChain, ExponentVector, ReductionOutput};
pub use tree::{canonical_code, validate_stable, CanonicalCode, StabilityReport, VertexId, WeightedTree};
