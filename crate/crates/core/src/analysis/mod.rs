//! Sweeps, tornado sensitivity and figure data built on the scenario model.

mod figures;
mod sweep;
mod table;
mod tornado;

use std::fmt;
use std::str::FromStr;

pub use figures::{figure_data, FigureId, FIG10_CARBON_GRID, PRICE_GRID, SIZE_GRID_KW};
pub use sweep::{grid_from_range, sweep, SweepRow, SweepSpec, SweepTable};
pub use table::{format_number, Cell, Format, Table};
pub use tornado::{default_tornado_params, tornado, tornado_table, TornadoEntry, TornadoParam};

use crate::error::{Error, Result};
use crate::finance::{breakeven_price, build_cashflows, irr, npv};
use crate::logistics::{compose_chain, StorageSpec, TransportLeg};
use crate::model::{BandLevel, Pathway};
use crate::policy::{effective_lcoh, PolicyRegime};
use crate::scenario::Scenario;

/// Quantity reported by sweeps and tornado runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Lcoh,
    Npv,
    Irr,
    Breakeven,
    DeliveredCost,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Lcoh,
        Metric::Npv,
        Metric::Irr,
        Metric::Breakeven,
        Metric::DeliveredCost,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Lcoh => "lcoh",
            Metric::Npv => "npv",
            Metric::Irr => "irr",
            Metric::Breakeven => "breakeven",
            Metric::DeliveredCost => "delivered_cost",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Metric::Npv => "USD",
            Metric::Irr => "fraction",
            _ => "USD/kg",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::validation(
                    "metric",
                    format!("unknown metric `{s}` (expected lcoh, npv, irr, breakeven or delivered_cost)"),
                )
            })
    }
}

/// Evaluate one metric for one pathway of a scenario under a given policy.
///
/// NPV and IRR use `analysis.h2_price`; delivered cost uses `analysis.chain`.
pub fn evaluate(
    scenario: &Scenario,
    pathway: Pathway,
    metric: Metric,
    policy: &PolicyRegime,
) -> Result<f64> {
    let params = scenario.params(pathway);
    let fin = &scenario.financial;
    match metric {
        Metric::Lcoh => Ok(effective_lcoh(params, fin, policy)?.breakdown.total),
        Metric::Npv => {
            let cf = build_cashflows(params, fin, policy, scenario.analysis.h2_price)?;
            npv(&cf, fin.discount_rate)
        }
        Metric::Irr => irr(&build_cashflows(params, fin, policy, scenario.analysis.h2_price)?),
        Metric::Breakeven => breakeven_price(params, fin, policy),
        Metric::DeliveredCost => {
            let production = effective_lcoh(params, fin, policy)?.breakdown;
            let chain = &scenario.analysis.chain;
            let leg = TransportLeg::from_tables(chain.mode, chain.distance_km, BandLevel::Mid, &scenario.logistics)?;
            let store = chain
                .storage
                .map(|k| StorageSpec::from_tables(k, BandLevel::Mid, &scenario.logistics))
                .transpose()?;
            Ok(compose_chain(&production, &[leg], store.as_ref(), fin)?.total)
        }
    }
}

/// Like [`evaluate`], but an IRR or break-even that does not exist is `None`.
pub fn evaluate_defined(
    scenario: &Scenario,
    pathway: Pathway,
    metric: Metric,
    policy: &PolicyRegime,
) -> Result<Option<f64>> {
    match evaluate(scenario, pathway, metric, policy) {
        Ok(v) => Ok(Some(v)),
        Err(e) if is_undefined(metric, &e) => Ok(None),
        Err(e) => Err(e),
    }
}

fn is_undefined(metric: Metric, e: &Error) -> bool {
    match metric {
        Metric::Irr => matches!(e, Error::NoSignChange | Error::Bracket { .. } | Error::Domain(_)),
        Metric::Breakeven => matches!(e, Error::Bracket { .. }),
        _ => false,
    }
}

const PATHWAY_FIELDS: [(&str, &str); 10] = [
    ("capex", "USD/kW"),
    ("fixed_opex", "USD/kg"),
    ("ccs_cost", "USD/kg"),
    ("electricity_price", "USD/MWh"),
    ("feedstock_cost", "USD/kg"),
    ("gas_price_index", "index"),
    ("efficiency", "fraction"),
    ("capacity_factor", "fraction"),
    ("emission_intensity_unabated", "kg CO2/kg H2"),
    ("capture_rate", "fraction"),
];

const OTHER_FIELDS: [(&str, &str, &str); 7] = [
    ("discount_rate", "financial.discount_rate", "fraction"),
    ("lifetime_years", "financial.lifetime_years", "years"),
    ("plant_size_kw", "financial.plant_size_kw", "kW"),
    ("h2_price", "analysis.h2_price", "USD/kg"),
    ("carbon_price", "policy.carbon_price_usd_per_ton", "USD/ton"),
    ("credit_years", "policy.credit_years", "years"),
    ("distance_km", "analysis.chain.distance_km", "km"),
];

/// Full dotted path for a parameter key as seen by one pathway.
///
/// Bare pathway fields (`capex`) and `pathways.*.capex` expand to that
/// pathway's entry; a few common short names map to their sections. A path
/// that does not exist for the pathway is a mismatch when the field is a
/// known pathway field, otherwise an unknown parameter.
pub fn resolve_parameter(scenario: &Scenario, key: &str, pathway: Pathway) -> Result<String> {
    let path = if let Some(field) = key.strip_prefix("pathways.*.") {
        format!("pathways.{pathway}.{field}")
    } else if PATHWAY_FIELDS.iter().any(|(f, _)| *f == key) {
        format!("pathways.{pathway}.{key}")
    } else if let Some((_, full, _)) = OTHER_FIELDS.iter().find(|(short, _, _)| *short == key) {
        full.to_string()
    } else {
        key.to_string()
    };
    if scenario.get_number(&path).is_some() {
        return Ok(path);
    }
    let field = path.rsplit('.').next().unwrap_or_default();
    if path.starts_with("pathways.") && PATHWAY_FIELDS.iter().any(|(f, _)| *f == field) {
        let owner = path.split('.').nth(1).unwrap_or_default();
        return Err(Error::Mismatch(format!("`{field}` does not apply to the {owner} pathway")));
    }
    Err(Error::UnknownParameter(key.to_string()))
}

/// Display unit for a parameter key or path.
pub fn parameter_unit(key: &str) -> &'static str {
    let field = key.rsplit('.').next().unwrap_or(key);
    PATHWAY_FIELDS
        .iter()
        .find(|(f, _)| *f == field)
        .map(|(_, u)| *u)
        .or_else(|| {
            OTHER_FIELDS
                .iter()
                .find(|(short, full, _)| *short == key || *full == key || full.ends_with(&format!(".{field}")))
                .map(|(_, _, u)| *u)
        })
        .unwrap_or("value")
}
