//! Exact computation of chief series and cover-avoidance properties of
//! finite-dimensional Lie algebras over the rationals and prime fields.

pub mod error;
pub mod field;
pub mod linalg;
pub mod liealg;
pub mod enumerate;
pub mod chief;
pub mod cap;
pub mod catalog;
pub mod harness;

pub use cap::{CapMode, CapVerdict, FactorVerdict, Overall, TwoMaximalIdeal};
pub use catalog::{builtin, AlgebraSpec, Metadata};
pub use chief::{Certainty, ChiefFactor, ChiefSeries, FactorClass, MinimalIdeal};
pub use enumerate::{EnumerationBudget, Lattice};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement};
pub use harness::{HarnessConfig, Outcome, Population, VerificationReport};
pub use liealg::LieAlgebra;
pub use linalg::{Matrix, Subspace, Vector};
