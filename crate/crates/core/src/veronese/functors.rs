use crate::error::Result;
use crate::module::{hom_bimodule, induce_along, restrict_along, watts_bimodule, GradedModule, WattsFunctor};

use super::algebra::VeroneseAlgebra;

/// `f_*M`: degree `i` is `M_{ni}`.
pub fn veronese_pushforward(v: &VeroneseAlgebra, m: &GradedModule) -> Result<GradedModule> {
    restrict_along(v.embedding(), m)
}

/// `f*N = N ⊗ A`, computed on `[.., hi]`.
pub fn veronese_pullback(v: &VeroneseAlgebra, n: &GradedModule, hi: i64) -> Result<GradedModule> {
    induce_along(v.embedding(), n, hi)
}

/// `f^!N`: degree `i` is `Hom(A(−i) as an A⁽ⁿ⁾-module, N)`. `N` must be bounded.
pub fn veronese_coinduce(v: &VeroneseAlgebra, n: &GradedModule) -> Result<GradedModule> {
    hom_bimodule(&watts_bimodule(&WattsFunctor::VeronesePushforward(v)), n)
}
