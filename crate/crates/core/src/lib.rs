//! Exact-arithmetic engine for group-indexed currents built from an
//! enveloping algebra tensored with an exterior algebra.
//!
//! A context fixes a finite-dimensional rational Lie algebra, a group, and
//! an action of the group by bracket automorphisms. Currents over the
//! context form a graded, filtered algebra carrying five operations:
//! boundary, coproduct, counit, convolution, and antipode. This crate
//! implements those operations termwise in exact rational arithmetic,
//! together with a four-slot bimodule presentation whose partial products
//! recover the convolution, a lift of everything to the free tensor algebra
//! where the boundary fails to square to zero, and randomized law suites
//! that re-check the structural identities on demand.
//!
//! Elements are sparse maps from basis keys to rationals; all term orders
//! are total, so equality, printing, and serialization are canonical.

pub mod algebra;
pub mod bimodule;
pub mod config;
pub mod context;
pub mod currents;
pub mod enveloping;
pub mod error;
pub mod exterior;
pub mod groups;
pub mod linalg;
pub mod linear;
pub mod reps;
pub mod scalar;
pub mod suites;
pub mod tensor_lift;
pub mod validate;

pub use algebra::LieAlgebra;
pub use bimodule::{FourKey, FourSlotElement};
pub use config::{parse_context, ContextConfig};
pub use context::{contexts, Context};
pub use currents::{
    point_map_convolve, point_map_total, CurrentElement, CurrentKey, HopfOp, PointMap,
    TensorSquareElement,
};
pub use enveloping::{PbwMonomial, UeaElement};
pub use error::{Error, Result};
pub use exterior::{ExtElement, ExtMonomial};
pub use groups::{Group, GroupElement};
pub use linalg::SMat;
pub use linear::LinExpr;
pub use reps::Representation;
pub use scalar::Scalar;
pub use suites::{
    bookkeeping_pair_problems, bookkeeping_problems, closure_subgroup, run_all, run_suite,
    Failure, SuiteConfig, SuiteReport, SUITES,
};
pub use tensor_lift::{FreeElement, LiftKey, TensorLiftElement, TensorWord};
pub use validate::{Check, ValidationReport};
