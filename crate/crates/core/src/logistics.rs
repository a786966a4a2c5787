//! Transport and storage cost models and delivered-cost chains.
//!
//! Transport legs price a fixed conditioning step (liquefaction, compression
//! or synthesis), a distance term per 1000 km, and reconversion for chemical
//! carriers. Losses are monetized by dividing by the delivered fraction.
//!
//! Pipeline OPEX is read as USD/kg per 1000 km so every mode shares the same
//! distance basis. LH₂ boil-off is a daily rate compounded over the voyage,
//! whose length follows from a configurable service speed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::PaperDataset;
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::lcoh::{crf, CostBreakdown};
use crate::model::{BandLevel, FinancialParams, ValueBand};

/// Tolerance on `shares` summing to one.
pub const SHARE_SUM_TOL: f64 = 1e-9;

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(Error::validation(
                        stringify!($name),
                        format!(
                            "unknown name `{}` (expected one of: {})",
                            other,
                            [$($text),+].join(", ")
                        ),
                    )),
                }
            }
        }
    };
}

named_enum!(
    TransportMode {
        PipelineNew => "pipeline_new",
        PipelineRepurposed => "pipeline_repurposed",
        Lh2ShipLarge => "lh2_ship_large",
        Lh2ShipSmall => "lh2_ship_small",
        TruckTube => "truck_tube",
        TruckCryo => "truck_cryo",
        CarrierNh3 => "carrier_nh3",
        CarrierLohc => "carrier_lohc",
    }
);

named_enum!(
    StorageKind {
        Compressed350 => "compressed_350",
        Compressed700 => "compressed_700",
        Lh2TankSmall => "lh2_tank_small",
        Lh2TankLarge => "lh2_tank_large",
        SaltCavern => "salt_cavern",
        DepletedField => "depleted_field",
        Aquifer => "aquifer",
        Nh3Store => "nh3_store",
        LohcStore => "lohc_store",
        MetalHydride => "metal_hydride",
    }
);

impl TransportMode {
    pub fn is_carrier(self) -> bool {
        matches!(self, TransportMode::CarrierNh3 | TransportMode::CarrierLohc)
    }
}

/// Storage cycles per year by storage family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StorageCycles {
    pub compressed: f64,
    pub liquid: f64,
    pub underground: f64,
    pub chemical: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogisticsConfig {
    /// LH₂ ship service speed, km per day.
    pub ship_speed_km_per_day: f64,
    pub cycles_per_year: StorageCycles,
}

impl Default for LogisticsConfig {
    fn default() -> Self {
        Self {
            ship_speed_km_per_day: 600.0,
            cycles_per_year: StorageCycles {
                compressed: 52.0,
                liquid: 52.0,
                underground: 12.0,
                chemical: 12.0,
            },
        }
    }
}

impl LogisticsConfig {
    pub fn validate(&self, prefix: &str) -> Result<()> {
        if !(self.ship_speed_km_per_day > 0.0) {
            return Err(Error::validation(
                format!("{prefix}.ship_speed_km_per_day"),
                format!("must be > 0, got {}", self.ship_speed_km_per_day),
            ));
        }
        let c = &self.cycles_per_year;
        for (name, v) in [
            ("compressed", c.compressed),
            ("liquid", c.liquid),
            ("underground", c.underground),
            ("chemical", c.chemical),
        ] {
            if !(v >= 1.0) {
                return Err(Error::validation(
                    format!("{prefix}.cycles_per_year.{name}"),
                    format!("must be >= 1, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

/// One single-mode transport step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransportLeg {
    pub mode: TransportMode,
    pub distance_km: f64,
    /// Liquefaction, compression or synthesis, USD/kg.
    pub fixed_cost_per_kg: f64,
    pub variable_cost_per_kg_per_1000km: f64,
    /// Carriers only, USD/kg.
    pub reconversion_cost_per_kg: f64,
    pub loss_fraction: f64,
}

impl TransportLeg {
    /// Leg priced from the transport tables at the given band level.
    pub fn from_tables(
        mode: TransportMode,
        distance_km: f64,
        level: BandLevel,
        config: &LogisticsConfig,
    ) -> Result<Self> {
        if !(distance_km > 0.0) {
            return Err(Error::validation(
                "distance_km",
                format!("must be > 0, got {distance_km}"),
            ));
        }
        let d = PaperDataset;
        let row = mode.as_str();
        let v = |table: &str, col: &str| d.cell(table, row, col).pick(level);
        let (fixed, variable, reconversion, loss) = match mode {
            TransportMode::PipelineNew | TransportMode::PipelineRepurposed => {
                (0.0, v("T2", "opex"), 0.0, v("T2", "energy_loss") / 100.0)
            }
            TransportMode::Lh2ShipLarge | TransportMode::Lh2ShipSmall => {
                let daily = v("T3", "boil_off") / 100.0;
                let days = distance_km / config.ship_speed_km_per_day;
                let loss = 1.0 - (1.0 - daily).powf(days);
                (v("T3", "liquefaction"), v("T3", "shipping"), 0.0, loss)
            }
            TransportMode::TruckTube | TransportMode::TruckCryo => {
                (v("T4", "compression"), v("T4", "trucking"), 0.0, 0.0)
            }
            TransportMode::CarrierNh3 | TransportMode::CarrierLohc => (
                v("T5", "synthesis"),
                v("T5", "transport"),
                v("T5", "reconversion"),
                0.0,
            ),
        };
        let leg = Self {
            mode,
            distance_km,
            fixed_cost_per_kg: fixed,
            variable_cost_per_kg_per_1000km: variable,
            reconversion_cost_per_kg: reconversion,
            loss_fraction: loss,
        };
        leg.validate()?;
        Ok(leg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |k: &str, m: String| Err(Error::validation(k, m));
        if !(self.distance_km > 0.0) {
            return bad("distance_km", format!("must be > 0, got {}", self.distance_km));
        }
        for (k, v) in [
            ("fixed_cost_per_kg", self.fixed_cost_per_kg),
            ("variable_cost_per_kg_per_1000km", self.variable_cost_per_kg_per_1000km),
            ("reconversion_cost_per_kg", self.reconversion_cost_per_kg),
        ] {
            if !(v >= 0.0) {
                return bad(k, format!("must be >= 0, got {v}"));
            }
        }
        if !(0.0..1.0).contains(&self.loss_fraction) {
            return bad("loss_fraction", format!("must be in [0, 1), got {}", self.loss_fraction));
        }
        if !self.mode.is_carrier() && self.reconversion_cost_per_kg != 0.0 {
            return bad(
                "reconversion_cost_per_kg",
                format!("must be 0 for {}", self.mode),
            );
        }
        Ok(())
    }
}

/// Itemized cost of one leg, USD per kg delivered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegCost {
    pub fixed: f64,
    pub variable: f64,
    pub reconversion: f64,
    pub loss_uplift: f64,
    pub total: f64,
}

impl LegCost {
    fn component_count(&self) -> usize {
        [self.fixed, self.variable, self.reconversion]
            .iter()
            .filter(|&&c| c > 0.0)
            .count()
    }
}

pub fn leg_cost_detail(leg: &TransportLeg) -> LegCost {
    let fixed = leg.fixed_cost_per_kg;
    let variable = leg.variable_cost_per_kg_per_1000km * leg.distance_km / 1000.0;
    let reconversion = leg.reconversion_cost_per_kg;
    let subtotal = fixed + variable + reconversion;
    let total = subtotal / (1.0 - leg.loss_fraction);
    LegCost {
        fixed,
        variable,
        reconversion,
        loss_uplift: total - subtotal,
        total,
    }
}

/// Cost of one leg per kg actually delivered.
pub fn leg_cost(leg: &TransportLeg) -> f64 {
    leg_cost_detail(leg).total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StorageSpec {
    pub kind: StorageKind,
    pub capex_per_kg_capacity: f64,
    pub opex_per_kg_year: f64,
    pub cycles_per_year: f64,
    pub efficiency_loss: f64,
    /// Per-kg charge/discharge conversion (synthesis plus reconversion); chemical stores only.
    pub conversion_cost_per_kg: f64,
}

impl StorageSpec {
    pub fn from_tables(kind: StorageKind, level: BandLevel, config: &LogisticsConfig) -> Result<Self> {
        let d = PaperDataset;
        let row = kind.as_str();
        let v = |table: &str, col: &str| d.cell(table, row, col).pick(level);
        let cycles = &config.cycles_per_year;
        let spec = match kind {
            StorageKind::Compressed350 | StorageKind::Compressed700 => Self {
                kind,
                capex_per_kg_capacity: v("T6", "capex"),
                opex_per_kg_year: v("T6", "opex"),
                cycles_per_year: cycles.compressed,
                efficiency_loss: v("T6", "efficiency_loss") / 100.0,
                conversion_cost_per_kg: 0.0,
            },
            StorageKind::Lh2TankSmall | StorageKind::Lh2TankLarge => {
                // Daily boil-off over the mean holding time of one cycle.
                let holding_days = 365.0 / cycles.liquid;
                let daily = v("T7", "boil_off") / 100.0;
                Self {
                    kind,
                    capex_per_kg_capacity: v("T7", "capex"),
                    opex_per_kg_year: v("T7", "opex"),
                    cycles_per_year: cycles.liquid,
                    efficiency_loss: 1.0 - (1.0 - daily).powf(holding_days),
                    conversion_cost_per_kg: 0.0,
                }
            }
            StorageKind::SaltCavern | StorageKind::DepletedField | StorageKind::Aquifer => {
                let efficiency = underground_cycle_efficiency(kind);
                // Worst-case cost pairs with the lowest cycle efficiency.
                let eff = match level {
                    BandLevel::Low => efficiency.high,
                    BandLevel::Mid => efficiency.mid,
                    BandLevel::High => efficiency.low,
                };
                Self {
                    kind,
                    capex_per_kg_capacity: v("T8", "capex"),
                    opex_per_kg_year: v("T8", "opex"),
                    cycles_per_year: cycles.underground,
                    efficiency_loss: 1.0 - eff / 100.0,
                    conversion_cost_per_kg: 0.0,
                }
            }
            StorageKind::Nh3Store | StorageKind::LohcStore | StorageKind::MetalHydride => Self {
                kind,
                capex_per_kg_capacity: 0.0,
                opex_per_kg_year: v("T9", "storage_cost"),
                cycles_per_year: cycles.chemical,
                efficiency_loss: v("T9", "efficiency_loss") / 100.0,
                conversion_cost_per_kg: v("T9", "cost") + v("T9", "reconversion"),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cycles_per_year >= 1.0) {
            return Err(Error::validation(
                "cycles_per_year",
                format!("must be >= 1, got {}", self.cycles_per_year),
            ));
        }
        if !(0.0..1.0).contains(&self.efficiency_loss) {
            return Err(Error::validation(
                "efficiency_loss",
                format!("must be in [0, 1), got {}", self.efficiency_loss),
            ));
        }
        for (k, v) in [
            ("capex_per_kg_capacity", self.capex_per_kg_capacity),
            ("opex_per_kg_year", self.opex_per_kg_year),
            ("conversion_cost_per_kg", self.conversion_cost_per_kg),
        ] {
            if !(v >= 0.0) {
                return Err(Error::validation(k, format!("must be >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Cycle efficiency (%) used for an underground store.
///
/// The salt-cavern table cell reads "5 - 95"; the model uses 75–95, matching the
/// prose description of the same table.
pub fn underground_cycle_efficiency(kind: StorageKind) -> ValueBand {
    match kind {
        StorageKind::SaltCavern => ValueBand::new(75.0, 95.0),
        other => PaperDataset.cell("T8", other.as_str(), "cycle_efficiency"),
    }
}

/// Storage cost per kg of throughput.
pub fn storage_cost_per_kg(s: &StorageSpec, fin: &FinancialParams) -> Result<f64> {
    Ok(storage_cost_before_loss(s, fin)? / (1.0 - s.efficiency_loss))
}

/// Storage cost per kg before the efficiency-loss uplift.
pub fn storage_cost_before_loss(s: &StorageSpec, fin: &FinancialParams) -> Result<f64> {
    let recovery = crf(fin.discount_rate, fin.lifetime_years)?;
    Ok((s.capex_per_kg_capacity * recovery + s.opex_per_kg_year) / s.cycles_per_year
        + s.conversion_cost_per_kg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostShares {
    pub production: f64,
    pub transport: f64,
    pub storage: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeliveredCost {
    pub production: f64,
    pub transport: f64,
    pub storage: f64,
    pub total: f64,
    /// `total` divided by the fraction of hydrogen surviving all legs.
    pub loss_adjusted_total: f64,
    pub shares: CostShares,
}

/// Production cost plus transport legs and an optional storage step.
pub fn compose_chain(
    production: &CostBreakdown,
    legs: &[TransportLeg],
    store: Option<&StorageSpec>,
    fin: &FinancialParams,
) -> Result<DeliveredCost> {
    let mut transport = 0.0;
    let mut surviving = 1.0;
    for leg in legs {
        leg.validate()?;
        transport += leg_cost(leg);
        surviving *= 1.0 - leg.loss_fraction;
    }
    let storage = match store {
        Some(s) => {
            s.validate()?;
            storage_cost_per_kg(s, fin)?
        }
        None => 0.0,
    };
    let production = production.production();
    let total = production + transport + storage;
    if !(total > 0.0) {
        return Err(Error::Domain(format!(
            "delivered cost must be positive to form shares, got {total}"
        )));
    }
    Ok(DeliveredCost {
        production,
        transport,
        storage,
        total,
        loss_adjusted_total: total / surviving,
        shares: CostShares {
            production: production / total,
            transport: transport / total,
            storage: storage / total,
        },
    })
}

/// Result of a single-mode chain search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainChoice {
    pub mode: TransportMode,
    pub delivered: DeliveredCost,
    /// Every candidate in input order.
    pub candidates: Vec<(TransportMode, LegCost)>,
}

/// Cheapest single-mode transport at mid-band costs.
///
/// Ties go to the mode with fewer non-zero cost components, then to the
/// lexicographically smaller mode name.
pub fn cheapest_chain(
    distance_km: f64,
    production: &CostBreakdown,
    fin: &FinancialParams,
    candidates: &[TransportMode],
    config: &LogisticsConfig,
) -> Result<ChainChoice> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let legs: Vec<TransportLeg> = map_ordered(Execution::default(), candidates, |&mode| {
        TransportLeg::from_tables(mode, distance_km, BandLevel::Mid, config)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let costs: Vec<(TransportMode, LegCost)> = legs
        .iter()
        .map(|leg| (leg.mode, leg_cost_detail(leg)))
        .collect();
    let best = costs
        .iter()
        .zip(&legs)
        .min_by(|(a, _), (b, _)| {
            a.1.total
                .total_cmp(&b.1.total)
                .then(a.1.component_count().cmp(&b.1.component_count()))
                .then(a.0.as_str().cmp(b.0.as_str()))
        })
        .expect("non-empty candidates");
    let delivered = compose_chain(production, std::slice::from_ref(best.1), None, fin)?;
    Ok(ChainChoice {
        mode: best.0 .0,
        delivered,
        candidates: costs,
    })
}

/// Fractional CAPEX saving of a repurposed pipeline against a new one, at band midpoints.
pub fn pipeline_repurposing_saving() -> f64 {
    let d = PaperDataset;
    1.0 - d.cell("T2", "pipeline_repurposed", "capex").mid / d.cell("T2", "pipeline_new", "capex").mid
}
