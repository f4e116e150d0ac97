//! Graded right modules known degree by degree, and the functors between them.

mod bimodule;
mod cover;
mod functors;
mod graded;
mod hom;
mod present;
mod spec;

pub use bimodule::{
    adjunction_check, bar_tensor, hom_bimodule, watts_bimodule, AdjunctionReport, BigradedBimodule, BimoduleKind,
    WattsFunctor,
};
pub use cover::{default_generator_names, FreeCover, ModuleElement};
pub use functors::{induce_along, restrict_along};
pub use graded::{GradedModule, ModulePresentation};
pub use hom::{graded_hom, ModuleMapSpace};
pub use present::{free_module, present_module, regular_module};
pub use spec::{parse_module_spec, ModuleSpec};

#[cfg(test)]
mod tests;
