//! One-at-a-time sensitivity ranked by swing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::model::{Feedstock, Pathway};
use crate::scenario::Scenario;

use super::{evaluate, resolve_parameter, Cell, Metric, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct TornadoParam {
    pub parameter: String,
    pub low: f64,
    pub high: f64,
}

impl TornadoParam {
    pub fn new(parameter: impl Into<String>, low: f64, high: f64) -> Result<Self> {
        let parameter = parameter.into();
        if !(low < high) {
            return Err(Error::validation(
                parameter,
                format!("tornado low must be below high, got {low} and {high}"),
            ));
        }
        Ok(Self { parameter, low, high })
    }

    /// `key=lo:hi` with absolute values, or `key=30%` for ±30% around the base value.
    pub fn parse(text: &str, scenario: &Scenario, pathway: Pathway) -> Result<Self> {
        let (key, range) = text.split_once('=').ok_or_else(|| {
            Error::validation("param", format!("expected key=lo:hi or key=pct%, got `{text}`"))
        })?;
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::validation(key, format!("`{s}` is not a number")))
        };
        if let Some(pct) = range.strip_suffix('%') {
            let frac = num(pct)? / 100.0;
            let path = resolve_parameter(scenario, key, pathway)?;
            let base = scenario.get_number(&path).expect("resolved paths hold numbers");
            let (a, b) = (base * (1.0 - frac), base * (1.0 + frac));
            Self::new(key, a.min(b), a.max(b))
        } else if let Some((lo, hi)) = range.split_once(':') {
            Self::new(key, num(lo)?, num(hi)?)
        } else {
            Err(Error::validation("param", format!("expected key=lo:hi or key=pct%, got `{text}`")))
        }
    }
}

/// Price ±1 USD/kg, CAPEX ±30% and feedstock ±30% around the scenario's values.
pub fn default_tornado_params(scenario: &Scenario, pathway: Pathway) -> Result<Vec<TornadoParam>> {
    let params = scenario.params(pathway);
    let price = scenario.analysis.h2_price;
    let (feed_key, feed) = match params.feedstock {
        Feedstock::Electricity { price_usd_per_mwh } => ("electricity_price", price_usd_per_mwh),
        Feedstock::Direct { cost_usd_per_kg, .. } => ("feedstock_cost", cost_usd_per_kg),
    };
    let mut out = vec![
        TornadoParam::new("h2_price", (price - 1.0).max(0.0), price + 1.0)?,
        TornadoParam::new("capex", 0.7 * params.capex, 1.3 * params.capex)?,
    ];
    if feed > 0.0 {
        out.push(TornadoParam::new(feed_key, 0.7 * feed, 1.3 * feed)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TornadoEntry {
    pub parameter: String,
    pub low_value: f64,
    pub high_value: f64,
    pub metric_at_low: f64,
    pub metric_at_high: f64,
    pub swing: f64,
}

/// Evaluate each parameter at its two endpoints, others at base, sorted by swing.
///
/// Equal swings keep their input order.
pub fn tornado(
    scenario: &Scenario,
    pathway: Pathway,
    params: &[TornadoParam],
    metric: Metric,
    apply_policy: bool,
    exec: Execution,
) -> Result<Vec<TornadoEntry>> {
    let paths: Vec<String> = params
        .iter()
        .map(|p| {
            if !(p.low < p.high) {
                return Err(Error::validation(&p.parameter, "tornado low must be below high"));
            }
            resolve_parameter(scenario, &p.parameter, pathway)
        })
        .collect::<Result<_>>()?;
    let points: Vec<(usize, f64)> = params
        .iter()
        .enumerate()
        .flat_map(|(i, p)| [(i, p.low), (i, p.high)])
        .collect();
    let values = map_ordered(exec, &points, |&(i, x)| {
        let s = scenario.with_number(&paths[i], x)?;
        let apply = apply_policy || paths[i].starts_with("policy.");
        evaluate(&s, pathway, metric, &s.active_policy(apply))
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;

    let mut entries: Vec<TornadoEntry> = params
        .iter()
        .zip(values.chunks_exact(2))
        .map(|(p, v)| TornadoEntry {
            parameter: p.parameter.clone(),
            low_value: p.low,
            high_value: p.high,
            metric_at_low: v[0],
            metric_at_high: v[1],
            swing: (v[1] - v[0]).abs(),
        })
        .collect();
    entries.sort_by(|a, b| b.swing.total_cmp(&a.swing));
    Ok(entries)
}

pub fn tornado_table(entries: &[TornadoEntry], metric: Metric) -> Table {
    let u = metric.unit();
    let mut t = Table::new([
        "parameter".to_string(),
        "low_value".into(),
        "high_value".into(),
        format!("{metric}_at_low ({u})"),
        format!("{metric}_at_high ({u})"),
        format!("swing ({u})"),
    ]);
    for e in entries {
        t.push(vec![
            Cell::Text(e.parameter.clone()),
            e.low_value.into(),
            e.high_value.into(),
            e.metric_at_low.into(),
            e.metric_at_high.into(),
            e.swing.into(),
        ]);
    }
    t
}
