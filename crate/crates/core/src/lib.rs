//! Exhaustive checkers for finite categories, colax monoidal functors and
//! homotopy monoids over the truncated simplex category.

pub mod equivalences;
pub mod fincat;
pub mod homotopy_monoid;
pub mod loopspace;
pub mod monoidal;
pub mod report;
pub mod simplex;
