//! Veronese subalgebras and the functors between `A` and `A⁽ⁿ⁾`.

mod algebra;
mod family;
mod functors;
mod tails;

pub use algebra::VeroneseAlgebra;
pub use family::{check_lemma_i, ideal_family, IdealFamily, LemmaIReport, LemmaIRow};
pub use functors::{veronese_coinduce, veronese_pullback, veronese_pushforward};
pub use tails::{
    min_veronese_gen1, projector, tails_window_equal, verevkin_defect, DefectReport, DefectRow, MinVeroneseReport,
};

#[cfg(test)]
mod tests;
