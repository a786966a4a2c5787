//! Scenario configuration: JSON overlays on the shipped defaults.
//!
//! A user file only lists the keys it changes. It is deep-merged onto the
//! defaults, then the merged tree is checked against the schema (unknown keys
//! are rejected with their full key path) and against parameter invariants.
//! A `null` in the overlay deletes the default value, which is how a green
//! scenario swaps `electricity_price` for a direct `feedstock_cost`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lcoh::opex_at_scale;
use crate::logistics::{LogisticsConfig, StorageKind, TransportMode};
use crate::model::{FinancialParams, Feedstock, Pathway, PathwayParams};
use crate::policy::{Credits, PolicyRegime};

/// The defaults file compiled into the library.
pub const DEFAULTS_JSON: &str = include_str!("../data/defaults.json");

pub const SCHEMA_VERSION: u32 = 1;

/// Where fixed O&M comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpexSource {
    /// `pathways.*.fixed_opex` as configured.
    Table1,
    /// Size-interpolated mid of the plant-size OPEX table, replacing `fixed_opex`.
    Table11,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSettings {
    pub distance_km: f64,
    pub mode: TransportMode,
    pub storage: Option<StorageKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSettings {
    /// Hydrogen selling price for NPV and IRR runs, USD/kg.
    pub h2_price: f64,
    pub chain: ChainSettings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    version: u32,
    opex_source: OpexSource,
    financial: FinancialParams,
    pathways: RawPathways,
    policy: RawPolicy,
    logistics: LogisticsConfig,
    analysis: AnalysisSettings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPathways {
    green: RawPathway,
    blue: RawPathway,
    gray: RawPathway,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPathway {
    capex: f64,
    fixed_opex: f64,
    #[serde(default)]
    ccs_cost: f64,
    electricity_price: Option<f64>,
    feedstock_cost: Option<f64>,
    gas_price_index: Option<f64>,
    efficiency: f64,
    capacity_factor: f64,
    emission_intensity_unabated: f64,
    capture_rate: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolicy {
    carbon_price_usd_per_ton: f64,
    credits: Credits,
    credit_years: Option<u32>,
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub opex_source: OpexSource,
    pub financial: FinancialParams,
    pathways: [PathwayParams; 3],
    /// The policy regime the config describes; whether it is applied is up to the caller.
    pub policy: PolicyRegime,
    pub logistics: LogisticsConfig,
    pub analysis: AnalysisSettings,
    raw: Value,
}

impl Default for Scenario {
    fn default() -> Self {
        load_scenario("").expect("shipped defaults are valid")
    }
}

/// Parse a user config against the shipped defaults. Empty text means "all defaults".
pub fn load_scenario(config_text: &str) -> Result<Scenario> {
    load_scenario_with_defaults(config_text, DEFAULTS_JSON)
}

pub fn load_scenario_with_defaults(config_text: &str, defaults_text: &str) -> Result<Scenario> {
    let mut base = parse_object(defaults_text, "<defaults>")?;
    let overlay = if config_text.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        parse_object(config_text, "<config>")?
    };
    merge(&mut base, overlay);
    Scenario::from_value(base)
}

fn parse_object(text: &str, origin: &str) -> Result<Value> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    if !value.is_object() {
        return Err(Error::Parse {
            path: origin.to_string(),
            message: "top level must be an object".into(),
        });
    }
    Ok(value)
}

/// Recursive object merge; `null` in the overlay removes the key.
fn merge(base: &mut Value, overlay: Value) {
    match (base, overlay) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                if v.is_null() {
                    b.remove(&k);
                } else if let Some(slot) = b.get_mut(&k) {
                    merge(slot, v);
                } else {
                    b.insert(k, v);
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

impl Scenario {
    /// Build from a complete (already merged) config tree.
    pub fn from_value(raw: Value) -> Result<Self> {
        let parsed: RawScenario = serde_path_to_error::deserialize(&raw).map_err(|e| {
            let path = e.path().to_string();
            Error::Validation {
                key: if path == "." { "<root>".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })?;
        if parsed.version != SCHEMA_VERSION {
            return Err(Error::validation(
                "version",
                format!("unsupported schema version {}, expected {SCHEMA_VERSION}", parsed.version),
            ));
        }
        let financial = parsed.financial;
        financial.validate("financial")?;

        let raw_paths = [
            (Pathway::Green, &parsed.pathways.green),
            (Pathway::Blue, &parsed.pathways.blue),
            (Pathway::Gray, &parsed.pathways.gray),
        ];
        let mut pathways = Vec::with_capacity(3);
        for (pathway, rp) in raw_paths {
            let mut p = resolve_pathway(pathway, rp)?;
            if parsed.opex_source == OpexSource::Table11 {
                p.fixed_opex = opex_at_scale(pathway, financial.plant_size_kw)?.band.mid;
            }
            pathways.push(p);
        }

        let policy = PolicyRegime {
            carbon_price: parsed.policy.carbon_price_usd_per_ton,
            credits: parsed.policy.credits,
            credit_years: parsed.policy.credit_years.unwrap_or(financial.lifetime_years),
        };
        policy.validate(financial.lifetime_years, "policy")?;
        parsed.logistics.validate("logistics")?;

        let analysis = parsed.analysis;
        if !(analysis.h2_price >= 0.0) {
            return Err(Error::validation(
                "analysis.h2_price",
                format!("must be >= 0, got {}", analysis.h2_price),
            ));
        }
        if !(analysis.chain.distance_km > 0.0) {
            return Err(Error::validation(
                "analysis.chain.distance_km",
                format!("must be > 0, got {}", analysis.chain.distance_km),
            ));
        }

        Ok(Self {
            opex_source: parsed.opex_source,
            financial,
            pathways: [pathways[0], pathways[1], pathways[2]],
            policy,
            logistics: parsed.logistics,
            analysis,
            raw,
        })
    }

    pub fn params(&self, pathway: Pathway) -> &PathwayParams {
        &self.pathways[pathway as usize]
    }

    /// The configured policy when `apply` is set, otherwise no carbon price and no credits.
    pub fn active_policy(&self, apply: bool) -> PolicyRegime {
        if apply {
            self.policy
        } else {
            PolicyRegime::none()
        }
    }

    /// Merged config tree, including every default.
    pub fn raw(&self) -> &Value {
        &self.raw
    }

    /// Numeric value at a dotted key path, if present.
    pub fn get_number(&self, path: &str) -> Option<f64> {
        lookup(&self.raw, path).and_then(Value::as_f64)
    }

    /// Copy of this scenario with one numeric key replaced.
    ///
    /// The key must already exist in the merged tree and hold a number.
    pub fn with_number(&self, path: &str, value: f64) -> Result<Self> {
        let mut raw = self.raw.clone();
        let slot = path
            .split('.')
            .try_fold(&mut raw, |v, k| v.get_mut(k))
            .filter(|v| v.is_number())
            .ok_or_else(|| Error::UnknownParameter(path.to_string()))?;
        *slot = if slot.is_u64() && value >= 0.0 && value.fract() == 0.0 {
            // Integer fields such as lifetime_years stay integers.
            Value::from(value as u64)
        } else {
            serde_json::Number::from_f64(value)
                .map(Value::Number)
                .ok_or_else(|| Error::validation(path, format!("must be finite, got {value}")))?
        };
        Self::from_value(raw)
    }

    /// Compact JSON of the merged tree with sorted keys.
    pub fn canonical_json(&self) -> String {
        self.raw.to_string()
    }

    /// SHA-256 of [`Scenario::canonical_json`], lowercase hex.
    pub fn checksum(&self) -> String {
        hex(&Sha256::digest(self.canonical_json().as_bytes()))
    }
}

fn lookup<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |v, k| v.get(k))
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn resolve_pathway(pathway: Pathway, rp: &RawPathway) -> Result<PathwayParams> {
    let prefix = format!("pathways.{pathway}");
    let key = |k: &str| format!("{prefix}.{k}");
    let feedstock = match (pathway, rp.electricity_price, rp.feedstock_cost) {
        (Pathway::Green, Some(_), Some(_)) => {
            return Err(Error::validation(
                key("feedstock_cost"),
                "is derived from electricity_price for green; set electricity_price to null to give it directly",
            ))
        }
        (Pathway::Green, Some(price), None) => Feedstock::Electricity {
            price_usd_per_mwh: price,
        },
        (Pathway::Blue | Pathway::Gray, Some(_), _) => {
            return Err(Error::validation(
                key("electricity_price"),
                "only applies to the green pathway",
            ))
        }
        (_, None, Some(cost)) => Feedstock::Direct {
            cost_usd_per_kg: cost,
            price_index: rp.gas_price_index.unwrap_or(1.0),
        },
        (_, None, None) => {
            return Err(Error::validation(
                key("feedstock_cost"),
                "missing; give feedstock_cost (or electricity_price for green)",
            ))
        }
    };
    if matches!(feedstock, Feedstock::Electricity { .. }) && rp.gas_price_index.is_some() {
        return Err(Error::validation(
            key("gas_price_index"),
            "only applies to a direct feedstock_cost",
        ));
    }
    let params = PathwayParams {
        pathway,
        capex: rp.capex,
        fixed_opex: rp.fixed_opex,
        ccs_cost: rp.ccs_cost,
        feedstock,
        efficiency: rp.efficiency,
        capacity_factor: rp.capacity_factor,
        emission_intensity_unabated: rp.emission_intensity_unabated,
        capture_rate: rp.capture_rate,
    };
    params.validate(&prefix)?;
    Ok(params)
}
