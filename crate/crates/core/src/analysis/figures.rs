//! Data series behind each reproduced figure, on fixed default grids.
//!
//! Production-economics figures (1–9, 13) run without policy. The carbon
//! figures (10, 12) apply the scenario's credits and vary the carbon price.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::finance::{build_cashflows, irr, npv};
use crate::lcoh::{capex_at_scale, lcoh, params_at_scale};
use crate::logistics::{compose_chain, StorageSpec, TransportLeg};
use crate::model::{BandLevel, FinancialParams, Pathway};
use crate::policy::{effective_lcoh, PolicyRegime};
use crate::scenario::Scenario;

use super::{default_tornado_params, grid_from_range, tornado, tornado_table, Cell, Metric, Table};

/// Hydrogen price grid (lo, hi, step) for figures 2–5, USD/kg.
pub const PRICE_GRID: (f64, f64, f64) = (0.0, 10.0, 0.25);
/// Plant sizes for figures 1 and 7–9, kW.
pub const SIZE_GRID_KW: [f64; 3] = [1_000.0, 10_000.0, 100_000.0];
/// Carbon price grid (lo, hi, step) for figures 10 and 12, USD/ton.
pub const FIG10_CARBON_GRID: (f64, f64, f64) = (0.0, 200.0, 10.0);
/// Electricity prices for the figure 3 family of curves, USD/MWh.
pub const FIG3_ELECTRICITY: [f64; 4] = [20.0, 30.0, 40.0, 50.0];
/// Electricity price grid (lo, hi, step) for figure 13, USD/MWh.
pub const FIG13_ELECTRICITY_GRID: (f64, f64, f64) = (20.0, 100.0, 5.0);

const PRODUCTION_ORDER: [Pathway; 3] = [Pathway::Green, Pathway::Blue, Pathway::Gray];
const CARBON_ORDER: [Pathway; 3] = [Pathway::Gray, Pathway::Blue, Pathway::Green];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig12,
    Fig13,
}

impl FigureId {
    pub const ALL: [FigureId; 12] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
        FigureId::Fig10,
        FigureId::Fig12,
        FigureId::Fig13,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
            FigureId::Fig10 => "fig10",
            FigureId::Fig12 => "fig12",
            FigureId::Fig13 => "fig13",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = FigureId::ALL.into_iter().find(|f| f.as_str() == s) {
            return Ok(id);
        }
        let reason = if s == "fig11" {
            "investment trend projections are market data, not model output"
        } else {
            "no such figure (supported: fig1-fig10, fig12, fig13)"
        };
        Err(Error::UnsupportedFigure {
            id: s.to_string(),
            reason: reason.into(),
        })
    }
}

/// The x-grid and series a figure plots.
pub fn figure_data(id: FigureId, scenario: &Scenario, exec: Execution) -> Result<Table> {
    match id {
        FigureId::Fig1 => cost_shares(scenario, exec),
        FigureId::Fig2 | FigureId::Fig4 => npv_vs_price(scenario, exec),
        FigureId::Fig3 => green_npv_by_electricity(scenario, exec),
        FigureId::Fig5 => irr_vs_price(scenario, exec),
        FigureId::Fig6 => {
            let params = default_tornado_params(scenario, Pathway::Green)?;
            let entries = tornado(scenario, Pathway::Green, &params, Metric::Npv, false, exec)?;
            Ok(tornado_table(&entries, Metric::Npv))
        }
        FigureId::Fig7 => by_size(scenario, exec, "USD/kg", |p, fin| {
            Ok(lcoh(&params_at_scale(p, fin.plant_size_kw)?, fin)?.total)
        }),
        FigureId::Fig8 => by_size(scenario, exec, "USD/kW", |p, fin| {
            Ok(capex_at_scale(p.pathway, fin.plant_size_kw)?.band.mid)
        }),
        FigureId::Fig9 => {
            let price = scenario.analysis.h2_price;
            by_size(scenario, exec, "USD", move |p, fin| {
                let cf = build_cashflows(&params_at_scale(p, fin.plant_size_kw)?, fin, &PolicyRegime::none(), price)?;
                npv(&cf, fin.discount_rate)
            })
        }
        FigureId::Fig10 => by_carbon_price(scenario, exec, "USD/kg", |s, p, policy| {
            Ok(effective_lcoh(s.params(p), &s.financial, policy)?.breakdown.total)
        }),
        FigureId::Fig12 => by_carbon_price(scenario, exec, "USD", |s, p, policy| {
            let cf = build_cashflows(s.params(p), &s.financial, policy, s.analysis.h2_price)?;
            npv(&cf, s.financial.discount_rate)
        }),
        FigureId::Fig13 => green_lcoh_by_electricity(scenario, exec),
    }
}

fn grid((lo, hi, step): (f64, f64, f64)) -> Vec<f64> {
    grid_from_range(lo, hi, step).expect("built-in grids are valid")
}

fn price_npv(scenario: &Scenario, p: Pathway, price: f64) -> Result<f64> {
    let cf = build_cashflows(scenario.params(p), &scenario.financial, &PolicyRegime::none(), price)?;
    npv(&cf, scenario.financial.discount_rate)
}

fn npv_vs_price(scenario: &Scenario, exec: Execution) -> Result<Table> {
    let mut t = Table::new(
        std::iter::once("h2_price (USD/kg)".to_string())
            .chain(PRODUCTION_ORDER.iter().map(|p| format!("{p} (USD)"))),
    );
    let rows = map_ordered(exec, &grid(PRICE_GRID), |&price| -> Result<Vec<Cell>> {
        let mut row = vec![Cell::Num(price)];
        for p in PRODUCTION_ORDER {
            row.push(price_npv(scenario, p, price)?.into());
        }
        Ok(row)
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

fn irr_vs_price(scenario: &Scenario, exec: Execution) -> Result<Table> {
    let mut t = Table::new(
        std::iter::once("h2_price (USD/kg)".to_string())
            .chain(PRODUCTION_ORDER.iter().map(|p| format!("{p} (fraction)"))),
    );
    let rows = map_ordered(exec, &grid(PRICE_GRID), |&price| -> Result<Vec<Cell>> {
        let mut row = vec![Cell::Num(price)];
        for p in PRODUCTION_ORDER {
            let cf = build_cashflows(scenario.params(p), &scenario.financial, &PolicyRegime::none(), price)?;
            row.push(match irr(&cf) {
                Ok(r) => Cell::Num(r),
                Err(Error::NoSignChange | Error::Bracket { .. } | Error::Domain(_)) => Cell::Missing,
                Err(e) => return Err(e),
            });
        }
        Ok(row)
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

fn green_npv_by_electricity(scenario: &Scenario, exec: Execution) -> Result<Table> {
    let variants: Vec<Scenario> = FIG3_ELECTRICITY
        .iter()
        .map(|&e| scenario.with_number("pathways.green.electricity_price", e))
        .collect::<Result<_>>()?;
    let mut t = Table::new(
        std::iter::once("h2_price (USD/kg)".to_string()).chain(
            FIG3_ELECTRICITY
                .iter()
                .map(|e| format!("green at {e} USD/MWh (USD)")),
        ),
    );
    let rows = map_ordered(exec, &grid(PRICE_GRID), |&price| -> Result<Vec<Cell>> {
        let mut row = vec![Cell::Num(price)];
        for s in &variants {
            row.push(price_npv(s, Pathway::Green, price)?.into());
        }
        Ok(row)
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

fn by_size<F>(scenario: &Scenario, exec: Execution, unit: &str, f: F) -> Result<Table>
where
    F: Fn(&crate::model::PathwayParams, &FinancialParams) -> Result<f64> + Sync,
{
    let mut t = Table::new(
        std::iter::once("plant_size (MW)".to_string())
            .chain(PRODUCTION_ORDER.iter().map(|p| format!("{p} ({unit})"))),
    );
    let rows = map_ordered(exec, &SIZE_GRID_KW, |&kw| -> Result<Vec<Cell>> {
        let fin = FinancialParams {
            plant_size_kw: kw,
            ..scenario.financial
        };
        let mut row = vec![Cell::Num(kw / 1000.0)];
        for p in PRODUCTION_ORDER {
            row.push(f(scenario.params(p), &fin)?.into());
        }
        Ok(row)
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

fn by_carbon_price<F>(scenario: &Scenario, exec: Execution, unit: &str, f: F) -> Result<Table>
where
    F: Fn(&Scenario, Pathway, &PolicyRegime) -> Result<f64> + Sync,
{
    let mut t = Table::new(
        std::iter::once("carbon_price_usd_per_ton".to_string())
            .chain(CARBON_ORDER.iter().map(|p| format!("{p} ({unit})"))),
    );
    let rows = map_ordered(exec, &grid(FIG10_CARBON_GRID), |&c| -> Result<Vec<Cell>> {
        let policy = scenario.policy.with_carbon_price(c);
        let mut row = vec![Cell::Num(c)];
        for p in CARBON_ORDER {
            row.push(f(scenario, p, &policy)?.into());
        }
        Ok(row)
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

/// Figure 13 prices fixed O&M from the plant-size OPEX table.
pub(crate) fn fig13_scenario(scenario: &Scenario) -> Result<Scenario> {
    let mut raw = scenario.raw().clone();
    raw["opex_source"] = "table11".into();
    Scenario::from_value(raw)
}

fn green_lcoh_by_electricity(scenario: &Scenario, exec: Execution) -> Result<Table> {
    let base = fig13_scenario(scenario)?;
    let mut t = Table::new(["electricity_price (USD/MWh)", "green (USD/kg)"]);
    let rows = map_ordered(exec, &grid(FIG13_ELECTRICITY_GRID), |&e| -> Result<Vec<Cell>> {
        let s = base.with_number("pathways.green.electricity_price", e)?;
        Ok(vec![
            Cell::Num(e),
            lcoh(s.params(Pathway::Green), &s.financial)?.total.into(),
        ])
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}

fn cost_shares(scenario: &Scenario, exec: Execution) -> Result<Table> {
    let chain = &scenario.analysis.chain;
    let leg = TransportLeg::from_tables(chain.mode, chain.distance_km, BandLevel::Mid, &scenario.logistics)?;
    let store = chain
        .storage
        .map(|k| StorageSpec::from_tables(k, BandLevel::Mid, &scenario.logistics))
        .transpose()?;
    let mut t = Table::new([
        "plant_size (MW)",
        "pathway",
        "production (USD/kg)",
        "transport (USD/kg)",
        "storage (USD/kg)",
        "total (USD/kg)",
        "production_share (fraction)",
        "transport_share (fraction)",
        "storage_share (fraction)",
    ]);
    let points: Vec<(f64, Pathway)> = SIZE_GRID_KW
        .iter()
        .flat_map(|&kw| PRODUCTION_ORDER.iter().map(move |&p| (kw, p)))
        .collect();
    let rows = map_ordered(exec, &points, |&(kw, p)| -> Result<Vec<Cell>> {
        let fin = FinancialParams {
            plant_size_kw: kw,
            ..scenario.financial
        };
        let production = lcoh(&params_at_scale(scenario.params(p), kw)?, &fin)?;
        let d = compose_chain(&production, &[leg], store.as_ref(), &fin)?;
        Ok(vec![
            Cell::Num(kw / 1000.0),
            Cell::Text(p.to_string()),
            d.production.into(),
            d.transport.into(),
            d.storage.into(),
            d.total.into(),
            d.shares.production.into(),
            d.shares.transport.into(),
            d.shares.storage.into(),
        ])
    });
    for row in rows {
        t.push(row?);
    }
    Ok(t)
}
