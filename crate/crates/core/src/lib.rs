//! Exact computations with quivers, potentials and the algebras attached to
//! frozen Jacobian algebras and Coxeter words.

pub mod algebra;
pub mod birs;
pub mod catalog;
pub mod coxeter;
pub mod error;
pub mod io;
pub mod keller;
pub mod linalg;
pub mod modrep;
pub mod path;
pub mod potential;
pub mod quiver;
pub mod rational;
pub mod subalgebra;
pub mod verify;

pub use algebra::{AlgebraPresentation, FdAlgebra, DEFAULT_MAX_LEN};
pub use error::{Error, Result};
pub use path::{Path, PathElement};
pub use potential::{FrozenQp, HypothesisReport, Potential};
pub use quiver::{Arrow, ArrowId, FrozenData, Quiver, VertexId};
pub use rational::Rat;
pub use birs::{build_birs_qp, ArrowKind, BirsQp};
pub use coxeter::{CoxeterSystem, Graph, Word};
pub use keller::{keller_extend, verify_endomorphism_match, KellerReport};
pub use modrep::{FdModule, GlobalDimension, ModuleMap};
pub use verify::ExampleReport;
