//! Finite-dimensional representations.

pub mod algmodule;
pub mod complex;
pub mod endquiver;
pub mod module;
pub mod preprojective;
pub mod resolution;

pub use algmodule::{map_from_images, FreeModule, Subquotient};
pub use complex::{check_complex_exact, ComplexReport};
pub use endquiver::{end_gabriel_quiver, graded_endpoints};
pub use module::{graded_hom, hom_space, FdModule, ModuleMap};
pub use preprojective::{lambda_w, preprojective_presentation, tw_from, tw_summands, LambdaReport, LambdaW};
pub use resolution::{
    global_dimension, projective_resolution, relative_shape_holds, resolve_idempotent_quotient, resolve_quotient,
    GlobalDimension, Resolution,
};
