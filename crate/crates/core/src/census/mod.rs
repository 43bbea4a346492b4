//! Ordered subgraph census: the patterns `(H, pi)`, their copy counts
//! `N_n(H, pi)` in a graph, and the exact growth exponent `B(H, pi)` with its
//! optimizer count `r(H, pi)`.

mod count;
mod exponent;
mod pattern;

pub use count::count_ordered_copies;
pub use exponent::{exponent_b, predicted_growth, ExponentReport, GrowthLaw};
pub use pattern::{classify_pattern, Classification, OrderedPattern, PatternClass};
