//! Homogeneous ideals, ring-map hypotheses, quotient functors and Ore extensions.

mod affine;
mod ideal;
mod immersion;
mod ore;

pub use affine::{check_affine_hypothesis, finite_module_check, image_right_ideal, AffineReport, FiniteModuleReport};
pub use ideal::{largest_twosided_inside, GradedIdeal, Sidedness, TwoSidedCore, Witness};
pub use immersion::ClosedImmersion;
pub use ore::{ore_extension, OreData, OreExtension};
