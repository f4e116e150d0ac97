//! Weighted free associative algebra: words, polynomials, presentations.

pub mod parse;
mod poly;
mod presentation;
mod word;

pub use parse::{parse_poly, parse_presentation};
pub use poly::FreePoly;
pub use presentation::{is_identifier, GeneratorInfo, Presentation};
pub use word::{term_compare, Word};
