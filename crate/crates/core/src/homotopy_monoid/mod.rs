//! Homotopy monoids over the truncated simplex category.
//!
//! * [`set_monoid`]: homotopy monoids in an ambient given by a trait, strict
//!   packaging of ordinary monoids and extraction when every comparison map
//!   is invertible.
//! * [`cat`]: homotopy monoids in finite categories and the fixture
//!   generator.
//! * [`construction`]: the monoidal structure on the base category `C(1)`.

pub mod ambient;
pub mod cat;
pub mod construction;
pub mod set_monoid;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivalences::SearchError;
use crate::monoidal::ColaxError;
use crate::report::Check;

pub use ambient::{CatAmbient, ClassAmbient, EquivalenceAmbient, PowerMap, SetPowers};
pub use cat::{fixture_generator, CatHomotopyMonoid, Decoration, Inflation};
pub use construction::{
    assemble_monoidal_category, build_monoidal_category, find_monoidal_isomorphism, BuildOptions, MonoidalIsomorphism,
};
pub use set_monoid::{extract_monoid, strict_packaging, MHomotopyMonoid, Monoid, MonoidData};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomotopyMonoidError {
    #[error("missing component {0}")]
    MissingComponent(String),
    #[error("comparison map {0} is not invertible")]
    NotStrong(String),
    #[error("not a monoid: {0}")]
    InvalidMonoid(String),
    #[error(transparent)]
    Colax(#[from] ColaxError),
    #[error("search exceeded the budget of {0} candidates")]
    BudgetExceeded(u64),
    #[error("level {requested} is outside the truncation bound {bound}")]
    OutOfTruncation { requested: usize, bound: usize },
    #[error("bad inflation spec: {0}")]
    InvalidInflation(String),
    #[error("{component} has no pseudo-inverse")]
    NotAnEquivalence { component: String },
    #[error("construction invariant breached: {0}")]
    ConstructionInvariantBreach(String),
}

impl HomotopyMonoidError {
    pub(crate) fn from_search(component: &str, e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded(b) => HomotopyMonoidError::BudgetExceeded(b),
            SearchError::NotFound => HomotopyMonoidError::NotAnEquivalence {
                component: component.to_string(),
            },
            SearchError::ShapeMismatch(s) => HomotopyMonoidError::ConstructionInvariantBreach(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyMonoidReport {
    pub checks: Vec<Check>,
}

impl HomotopyMonoidReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// `(check name, witness)` for every failure.
    pub fn failures(&self) -> Vec<(String, String)> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.name.clone(), f.clone())))
            .collect()
    }
}
