//! Capital recovery and levelized cost of hydrogen.

use serde::Serialize;

use crate::dataset::{PaperDataset, SIZE_ANCHORS_KW};
use crate::error::{Error, Result};
use crate::model::{annual_output_kg, FinancialParams, Pathway, PathwayParams, ValueBand};

/// Capital recovery factor, per year.
///
/// `r(1+r)^n / ((1+r)^n - 1)`, or `1/n` when `r == 0`.
pub fn crf(discount_rate: f64, lifetime_years: u32) -> Result<f64> {
    check_rate_and_life(discount_rate, lifetime_years)?;
    let n = lifetime_years as f64;
    if discount_rate == 0.0 {
        return Ok(1.0 / n);
    }
    let growth = (1.0 + discount_rate).powf(n);
    Ok(discount_rate * growth / (growth - 1.0))
}

/// Present value of 1 USD per year for `lifetime_years` years: `Σ (1+r)^-t`.
pub fn annuity_sum(discount_rate: f64, lifetime_years: u32) -> Result<f64> {
    check_rate_and_life(discount_rate, lifetime_years)?;
    if discount_rate == 0.0 {
        return Ok(lifetime_years as f64);
    }
    let n = lifetime_years as f64;
    Ok((1.0 - (1.0 + discount_rate).powf(-n)) / discount_rate)
}

fn check_rate_and_life(discount_rate: f64, lifetime_years: u32) -> Result<()> {
    if !(discount_rate >= 0.0) {
        return Err(Error::Domain(format!(
            "discount rate must be >= 0, got {discount_rate}"
        )));
    }
    if lifetime_years == 0 {
        return Err(Error::Domain("lifetime must be at least one year".into()));
    }
    Ok(())
}

/// Per-kg cost decomposition. `credit` is non-positive; everything else is non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CostBreakdown {
    pub capital: f64,
    pub fixed_om: f64,
    pub feedstock: f64,
    pub carbon: f64,
    pub credit: f64,
    pub transport: f64,
    pub storage: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn from_components(
        capital: f64,
        fixed_om: f64,
        feedstock: f64,
        carbon: f64,
        credit: f64,
        transport: f64,
        storage: f64,
    ) -> Self {
        let mut b = Self {
            capital,
            fixed_om,
            feedstock,
            carbon,
            credit,
            transport,
            storage,
            total: 0.0,
        };
        b.total = b.component_sum();
        b
    }

    pub fn component_sum(&self) -> f64 {
        self.capital
            + self.fixed_om
            + self.feedstock
            + self.carbon
            + self.credit
            + self.transport
            + self.storage
    }

    /// Production-only cost (total less transport and storage).
    pub fn production(&self) -> f64 {
        self.total - self.transport - self.storage
    }

    pub const CSV_HEADER: [&'static str; 9] = [
        "pathway",
        "capital (USD/kg)",
        "fixed_om (USD/kg)",
        "feedstock (USD/kg)",
        "carbon (USD/kg)",
        "credit (USD/kg)",
        "transport (USD/kg)",
        "storage (USD/kg)",
        "total (USD/kg)",
    ];

    pub fn values(&self) -> [f64; 8] {
        [
            self.capital,
            self.fixed_om,
            self.feedstock,
            self.carbon,
            self.credit,
            self.transport,
            self.storage,
            self.total,
        ]
    }
}

/// Levelized production cost before policy, transport and storage.
pub fn lcoh(params: &PathwayParams, fin: &FinancialParams) -> Result<CostBreakdown> {
    let output = annual_output_kg(params, fin);
    if !(output > 0.0) {
        return Err(Error::ZeroOutput);
    }
    let recovery = crf(fin.discount_rate, fin.lifetime_years)?;
    let capital = params.capex * fin.plant_size_kw * recovery / output;
    Ok(CostBreakdown::from_components(
        capital,
        params.fixed_opex + params.ccs_cost,
        params.feedstock_cost()?,
        0.0,
        0.0,
        0.0,
        0.0,
    ))
}

/// A band looked up at a plant size, flagged when the size fell outside the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBand {
    pub band: ValueBand,
    /// Size was outside 1–100 MW and got clamped to the nearest anchor.
    pub clamped: bool,
}

/// CAPEX band (USD/kW) at a plant size, log-linear between the 1/10/100 MW anchors.
pub fn capex_at_scale(pathway: Pathway, plant_size_kw: f64) -> Result<ScaledBand> {
    interpolate_table("T10", pathway, plant_size_kw)
}

/// Non-feedstock OPEX band (USD/kg) at a plant size.
pub fn opex_at_scale(pathway: Pathway, plant_size_kw: f64) -> Result<ScaledBand> {
    interpolate_table("T11", pathway, plant_size_kw)
}

fn interpolate_table(table: &str, pathway: Pathway, plant_size_kw: f64) -> Result<ScaledBand> {
    if !(plant_size_kw > 0.0) {
        return Err(Error::Domain(format!(
            "plant size must be > 0 kW, got {plant_size_kw}"
        )));
    }
    let data = PaperDataset;
    let anchors: Vec<(f64, ValueBand)> = SIZE_ANCHORS_KW
        .iter()
        .map(|&(kw, col)| (kw, data.pathway_cell(table, pathway, col)))
        .collect();

    let (first, last) = (anchors[0], anchors[anchors.len() - 1]);
    if plant_size_kw <= first.0 {
        return Ok(ScaledBand {
            band: first.1,
            clamped: plant_size_kw < first.0,
        });
    }
    if plant_size_kw >= last.0 {
        return Ok(ScaledBand {
            band: last.1,
            clamped: plant_size_kw > last.0,
        });
    }
    for pair in anchors.windows(2) {
        let ((s0, b0), (s1, b1)) = (pair[0], pair[1]);
        if plant_size_kw == s1 {
            return Ok(ScaledBand {
                band: b1,
                clamped: false,
            });
        }
        if plant_size_kw < s1 {
            let t = (plant_size_kw.ln() - s0.ln()) / (s1.ln() - s0.ln());
            let low = b0.low + t * (b1.low - b0.low);
            let high = b0.high + t * (b1.high - b0.high);
            return Ok(ScaledBand {
                band: ValueBand::new(low, high),
                clamped: false,
            });
        }
    }
    unreachable!("size {plant_size_kw} not bracketed by anchors")
}

/// Parameters re-priced with table CAPEX and OPEX mid-values at a plant size.
pub fn params_at_scale(params: &PathwayParams, plant_size_kw: f64) -> Result<PathwayParams> {
    Ok(PathwayParams {
        capex: capex_at_scale(params.pathway, plant_size_kw)?.band.mid,
        fixed_opex: opex_at_scale(params.pathway, plant_size_kw)?.band.mid,
        ..*params
    })
}

/// LCOH across plant sizes, each evaluated at that size's table mid-values.
pub fn lcoh_vs_size(
    params: &PathwayParams,
    sizes_kw: &[f64],
    fin: &FinancialParams,
) -> Result<Vec<(f64, CostBreakdown)>> {
    if sizes_kw.is_empty() {
        return Err(Error::Domain("at least one plant size is required".into()));
    }
    sizes_kw
        .iter()
        .map(|&kw| {
            let scaled = params_at_scale(params, kw)?;
            let fin = FinancialParams {
                plant_size_kw: kw,
                ..*fin
            };
            Ok((kw, lcoh(&scaled, &fin)?))
        })
        .collect()
}
