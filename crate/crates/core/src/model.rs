//! Domain types and unit conventions.
//!
//! Units used throughout the crate:
//!
//! | quantity            | unit               |
//! |---------------------|--------------------|
//! | capital cost        | USD per kW input   |
//! | per-kg costs        | USD per kg H₂      |
//! | electricity price   | USD per MWh        |
//! | carbon price        | USD per tonne CO₂  |
//! | emission intensity  | kg CO₂ per kg H₂   |
//! | plant size          | kW input capacity  |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower heating value of hydrogen, kWh per kg.
pub const H2_LHV_KWH_PER_KG: f64 = 33.33;

pub const HOURS_PER_YEAR: f64 = 8760.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pathway {
    Green,
    Blue,
    Gray,
}

impl Pathway {
    pub const ALL: [Pathway; 3] = [Pathway::Green, Pathway::Blue, Pathway::Gray];

    pub fn as_str(self) -> &'static str {
        match self {
            Pathway::Green => "green",
            Pathway::Blue => "blue",
            Pathway::Gray => "gray",
        }
    }
}

impl fmt::Display for Pathway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pathway {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "green" => Ok(Pathway::Green),
            "blue" => Ok(Pathway::Blue),
            "gray" => Ok(Pathway::Gray),
            other => Err(Error::validation(
                "pathway",
                format!("unknown pathway `{other}` (expected green, blue or gray)"),
            )),
        }
    }
}

/// A low/mid/high range, as quoted by most table cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueBand {
    pub low: f64,
    pub mid: f64,
    pub high: f64,
}

impl ValueBand {
    /// Band with the arithmetic midpoint as `mid`.
    pub fn new(low: f64, high: f64) -> Self {
        Self::with_mid(low, 0.5 * (low + high), high)
    }

    pub fn with_mid(low: f64, mid: f64, high: f64) -> Self {
        assert!(
            low <= mid && mid <= high,
            "band must satisfy low <= mid <= high, got {low}/{mid}/{high}"
        );
        Self { low, mid, high }
    }

    pub fn point(value: f64) -> Self {
        Self {
            low: value,
            mid: value,
            high: value,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn pick(&self, level: BandLevel) -> f64 {
        match level {
            BandLevel::Low => self.low,
            BandLevel::Mid => self.mid,
            BandLevel::High => self.high,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandLevel {
    Low,
    Mid,
    High,
}

/// How the per-kg feedstock cost of a pathway is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feedstock {
    /// Electrolysis: cost follows from the electricity price and efficiency.
    Electricity { price_usd_per_mwh: f64 },
    /// Gas-based routes: a direct USD/kg cost scaled by a gas-price index.
    Direct { cost_usd_per_kg: f64, price_index: f64 },
}

/// Techno-economic description of one production pathway.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathwayParams {
    pub pathway: Pathway,
    /// USD per kW of input capacity.
    pub capex: f64,
    /// Non-feedstock O&M, USD/kg.
    pub fixed_opex: f64,
    /// Capture, compression and sequestration adder, USD/kg. Zero except for blue.
    pub ccs_cost: f64,
    pub feedstock: Feedstock,
    pub efficiency: f64,
    pub capacity_factor: f64,
    /// kg CO₂ per kg H₂ before capture.
    pub emission_intensity_unabated: f64,
    pub capture_rate: f64,
}

impl PathwayParams {
    pub fn electricity_price(&self) -> Option<f64> {
        match self.feedstock {
            Feedstock::Electricity { price_usd_per_mwh } => Some(price_usd_per_mwh),
            Feedstock::Direct { .. } => None,
        }
    }

    /// Feedstock cost in USD/kg H₂.
    pub fn feedstock_cost(&self) -> Result<f64> {
        match self.feedstock {
            Feedstock::Electricity { price_usd_per_mwh } => {
                feedstock_cost_green(price_usd_per_mwh, self.efficiency)
            }
            Feedstock::Direct {
                cost_usd_per_kg,
                price_index,
            } => Ok(cost_usd_per_kg * price_index),
        }
    }

    /// Emissions left after capture, kg CO₂ per kg H₂.
    pub fn effective_emission_intensity(&self) -> f64 {
        self.emission_intensity_unabated * (1.0 - self.capture_rate)
    }

    /// Checks every range invariant; `prefix` is the scenario key path used in messages.
    pub fn validate(&self, prefix: &str) -> Result<()> {
        let key = |k: &str| format!("{prefix}.{k}");
        check(self.capex > 0.0, key("capex"), "must be > 0", self.capex)?;
        check(self.fixed_opex >= 0.0, key("fixed_opex"), "must be >= 0", self.fixed_opex)?;
        check(self.ccs_cost >= 0.0, key("ccs_cost"), "must be >= 0", self.ccs_cost)?;
        check(
            self.efficiency > 0.0 && self.efficiency <= 1.0,
            key("efficiency"),
            "must be in (0, 1]",
            self.efficiency,
        )?;
        check(
            self.capacity_factor > 0.0 && self.capacity_factor <= 1.0,
            key("capacity_factor"),
            "must be in (0, 1]",
            self.capacity_factor,
        )?;
        check(
            self.emission_intensity_unabated >= 0.0,
            key("emission_intensity_unabated"),
            "must be >= 0",
            self.emission_intensity_unabated,
        )?;
        check(
            (0.0..1.0).contains(&self.capture_rate),
            key("capture_rate"),
            "must be in [0, 1)",
            self.capture_rate,
        )?;
        match self.feedstock {
            Feedstock::Electricity { price_usd_per_mwh } => check(
                price_usd_per_mwh >= 0.0,
                key("electricity_price"),
                "must be >= 0",
                price_usd_per_mwh,
            ),
            Feedstock::Direct {
                cost_usd_per_kg,
                price_index,
            } => {
                check(
                    cost_usd_per_kg >= 0.0,
                    key("feedstock_cost"),
                    "must be >= 0",
                    cost_usd_per_kg,
                )?;
                check(price_index >= 0.0, key("gas_price_index"), "must be >= 0", price_index)
            }
        }
    }
}

fn check(ok: bool, key: String, rule: &str, value: f64) -> Result<()> {
    // NaN fails every comparison above, so it lands here too.
    if ok {
        Ok(())
    } else {
        Err(Error::validation(key, format!("{rule}, got {value}")))
    }
}

/// Discounting and sizing inputs shared by every pathway.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinancialParams {
    /// Fraction per year (WACC).
    pub discount_rate: f64,
    pub lifetime_years: u32,
    /// kW of input capacity.
    pub plant_size_kw: f64,
}

impl FinancialParams {
    pub fn validate(&self, prefix: &str) -> Result<()> {
        check(
            self.discount_rate >= 0.0,
            format!("{prefix}.discount_rate"),
            "must be >= 0",
            self.discount_rate,
        )?;
        if self.lifetime_years < 1 {
            return Err(Error::validation(
                format!("{prefix}.lifetime_years"),
                "must be >= 1, got 0",
            ));
        }
        check(
            self.plant_size_kw > 0.0,
            format!("{prefix}.plant_size_kw"),
            "must be > 0",
            self.plant_size_kw,
        )
    }
}

/// Electricity cost per kg of hydrogen, USD/kg.
pub fn feedstock_cost_green(electricity_price_usd_per_mwh: f64, efficiency: f64) -> Result<f64> {
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::Domain(format!(
            "efficiency must be in (0, 1], got {efficiency}"
        )));
    }
    if !(electricity_price_usd_per_mwh >= 0.0) {
        return Err(Error::Domain(format!(
            "electricity price must be >= 0, got {electricity_price_usd_per_mwh}"
        )));
    }
    Ok(specific_energy_kwh_per_kg(efficiency) * electricity_price_usd_per_mwh / 1000.0)
}

/// Input energy needed per kg of hydrogen at the given conversion efficiency.
pub fn specific_energy_kwh_per_kg(efficiency: f64) -> f64 {
    H2_LHV_KWH_PER_KG / efficiency
}

/// Hydrogen produced per year, kg.
pub fn annual_output_kg(params: &PathwayParams, fin: &FinancialParams) -> f64 {
    fin.plant_size_kw * HOURS_PER_YEAR * params.capacity_factor
        / specific_energy_kwh_per_kg(params.efficiency)
}
