//! Techno-economic model for hydrogen production pathways.
//!
//! Green (electrolysis), blue (SMR with capture) and gray (SMR) hydrogen are
//! priced with a levelized-cost model, a discounted cash-flow model, a carbon
//! price and production-credit overlay, and transport and storage chains.
//! [`analysis`] builds sweeps, tornado rankings and figure series on top.
//!
//! ```text
//! let s = Scenario::default();
//! let gray = lcoh(s.params(Pathway::Gray), &s.financial)?;   // ~1.80 USD/kg
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dataset;
pub mod error;
pub mod exec;
pub mod finance;
pub mod lcoh;
pub mod logistics;
pub mod model;
pub mod policy;
pub mod scenario;
pub mod solver;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{BandLevel, Feedstock, FinancialParams, Pathway, PathwayParams, ValueBand};
pub use scenario::{load_scenario, load_scenario_with_defaults, Scenario};

/// Library version, also reported in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
