//! Graded homomorphisms, localization at homogeneous multiplicative sets,
//! and product submodules.

pub mod hom;
pub mod localization;
pub mod product;

pub use hom::{hom_image, hom_kernel, hom_preimage, make_hom, GradedHom};
pub use localization::{check_denominators, localize, localize_module, localize_ring, LocalizedModule, LocalizedRing};
pub use product::{product_ideal, product_submodule, split_product};
