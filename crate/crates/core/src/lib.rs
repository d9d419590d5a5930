//! Exact classification and verification of group-invariant equivalence
//! relations ("simultaneity structures") on R⁴.
//!
//! Every computation runs over the field Q(√2) ([`Scalar`]), so membership
//! predicates, orthogonality and causal classification are decided exactly.

pub mod error;
pub mod formats;
pub mod groups;
pub mod linalg;
pub mod partition;
pub mod relations;
pub mod scalar;
pub mod spacetime;
pub mod suite;
pub mod synchrony;

pub use error::{Error, Result};
pub use groups::{member, Affine4, GroupId, RestFrame};
pub use linalg::{Mat3, Mat4, Vec3, Vec4};
pub use partition::{EventSet, FinitePartition, InducedPolicy};
pub use relations::{RealSubgroupSpec, RelationSpec, SubgroupClass};
pub use scalar::{Rational, Scalar};
pub use spacetime::{CausalClass, CausalKind, Event, MetricParams};
pub use suite::{SuiteConfig, TheoremReport};
pub use synchrony::InertialCoords;
