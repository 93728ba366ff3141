//! Projective resolutions, Ext with explicit classes, Tor, and exactness of
//! derived complexes.

pub mod exactness;
pub mod ext;
pub mod resolution;
pub mod tensor;

pub use exactness::{hom_exactness, linear_defect, tensor_exactness};
pub use ext::{ext_dim, ext_space, ext_space_with, ExtSpace, Extension, EXT_ENUMERATION_LIMIT};
pub use resolution::{projective_resolution, syzygy, Resolution};
pub use tensor::{generator_map, tensor_map, tensor_space, tor_dim, tor_dim_by_right, TensorSpace};
