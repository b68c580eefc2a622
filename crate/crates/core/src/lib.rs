//! Exact computation of twisted Alexander-Lin polynomials `D_{rho,r}(s)` of
//! augmented group systems from periodic permutation representations of the
//! augmentation kernel, together with the structural checks these
//! polynomials are known to satisfy.

pub mod alexmod;
pub mod corpus;
pub mod covers;
pub mod error;
pub mod groups;
pub mod laurent;
pub mod linalg;
pub mod reps;
pub mod words;

pub use alexmod::{alexander_lin, InvariantReport, PipelineOptions};
pub use error::{Error, Result};
pub use groups::{AugmentedGroupSystem, KernelPresentation};
pub use laurent::LaurentPoly;
pub use reps::{PeriodicRep, Permutation};
pub use words::{FreeWord, Gen, GroupRingElement, KernelWord};
