//! Carbon pricing, production tax credits and policy-adjusted LCOH.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::finance::{build_cashflows, npv};
use crate::lcoh::{annuity_sum, lcoh, CostBreakdown};
use crate::model::{FinancialParams, Pathway, PathwayParams};
use crate::solver::{bisect, Tolerance};

/// Upper end of the switchover search, USD/ton.
pub const SWITCHOVER_MAX_CARBON_PRICE: f64 = 1000.0;

/// Per-pathway production credit, USD/kg H₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Credits {
    pub green: f64,
    pub blue: f64,
    pub gray: f64,
}

impl Credits {
    pub const NONE: Credits = Credits {
        green: 0.0,
        blue: 0.0,
        gray: 0.0,
    };

    pub fn get(&self, pathway: Pathway) -> f64 {
        match pathway {
            Pathway::Green => self.green,
            Pathway::Blue => self.blue,
            Pathway::Gray => self.gray,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyRegime {
    /// USD per tonne CO₂.
    pub carbon_price: f64,
    pub credits: Credits,
    /// Years from commissioning during which the credit is paid.
    pub credit_years: u32,
}

impl PolicyRegime {
    /// No carbon price and no credits.
    pub fn none() -> Self {
        Self {
            carbon_price: 0.0,
            credits: Credits::NONE,
            credit_years: 0,
        }
    }

    pub fn credit(&self, pathway: Pathway) -> f64 {
        self.credits.get(pathway)
    }

    pub fn with_carbon_price(self, carbon_price: f64) -> Self {
        Self {
            carbon_price,
            ..self
        }
    }

    pub fn validate(&self, lifetime_years: u32, prefix: &str) -> Result<()> {
        if !(self.carbon_price >= 0.0) {
            return Err(Error::validation(
                format!("{prefix}.carbon_price_usd_per_ton"),
                format!("must be >= 0, got {}", self.carbon_price),
            ));
        }
        for p in Pathway::ALL {
            let c = self.credit(p);
            if !(c >= 0.0) {
                return Err(Error::validation(
                    format!("{prefix}.credits.{p}"),
                    format!("must be >= 0, got {c}"),
                ));
            }
        }
        if self.credit_years > lifetime_years {
            return Err(Error::validation(
                format!("{prefix}.credit_years"),
                format!(
                    "must not exceed the {lifetime_years}-year lifetime, got {}",
                    self.credit_years
                ),
            ));
        }
        Ok(())
    }
}

/// Carbon cost per kg H₂ at a carbon price in USD/ton.
pub fn carbon_adder(params: &PathwayParams, carbon_price: f64) -> f64 {
    params.effective_emission_intensity() * carbon_price / 1000.0
}

/// Share of a lifetime-levelized flat credit that a `credit_years`-long credit is worth.
pub fn credit_levelization(fin: &FinancialParams, credit_years: u32) -> Result<f64> {
    let years = credit_years.min(fin.lifetime_years);
    if years == 0 {
        return Ok(0.0);
    }
    if years == fin.lifetime_years {
        return Ok(1.0);
    }
    Ok(annuity_sum(fin.discount_rate, years)? / annuity_sum(fin.discount_rate, fin.lifetime_years)?)
}

/// Policy-adjusted LCOH.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveLcoh {
    pub breakdown: CostBreakdown,
    /// The credit exceeded the cost; credit was trimmed so the total is zero.
    pub floored: bool,
}

pub fn effective_lcoh(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
) -> Result<EffectiveLcoh> {
    let base = lcoh(params, fin)?;
    let carbon = carbon_adder(params, policy.carbon_price);
    let credit = -policy.credit(params.pathway) * credit_levelization(fin, policy.credit_years)?;
    let mut b = CostBreakdown::from_components(
        base.capital,
        base.fixed_om,
        base.feedstock,
        carbon,
        credit,
        base.transport,
        base.storage,
    );
    let floored = b.total < 0.0;
    if floored {
        b.credit = -(b.capital + b.fixed_om + b.feedstock + b.carbon + b.transport + b.storage);
        b.total = 0.0;
    }
    Ok(EffectiveLcoh {
        breakdown: b,
        floored,
    })
}

/// Carbon price (USD/ton) at which two pathways reach the same effective LCOH.
pub fn switchover_carbon_price(
    a: &PathwayParams,
    b: &PathwayParams,
    fin: &FinancialParams,
    policy_base: &PolicyRegime,
) -> Result<f64> {
    let gap = |price: f64| -> Result<f64> {
        let policy = policy_base.with_carbon_price(price);
        Ok(effective_lcoh(a, fin, &policy)?.breakdown.total
            - effective_lcoh(b, fin, &policy)?.breakdown.total)
    };
    let (lo, hi) = (0.0, SWITCHOVER_MAX_CARBON_PRICE);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    let no_crossing = || {
        let dominant = if g_lo <= 0.0 { a.pathway } else { b.pathway };
        Error::NoCrossing {
            a: a.pathway.to_string(),
            b: b.pathway.to_string(),
            lo,
            hi,
            dominant: dominant.to_string(),
        }
    };
    if a.effective_emission_intensity() == b.effective_emission_intensity() {
        return Err(no_crossing());
    }
    if g_lo.signum() == g_hi.signum() && g_lo != 0.0 && g_hi != 0.0 {
        return Err(no_crossing());
    }
    // `gap` only fails on invalid inputs, which the endpoint calls above already ruled out.
    bisect(|c| gap(c).unwrap_or(f64::NAN), lo, hi, Tolerance::MACHINE)
}

/// NPV at a fixed hydrogen price across carbon prices.
pub fn npv_vs_carbon_price(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    h2_price: f64,
    carbon_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if carbon_grid.is_empty() {
        return Err(Error::Domain("carbon price grid is empty".into()));
    }
    map_ordered(Execution::default(), carbon_grid, |&c| {
        let cf = build_cashflows(params, fin, &policy.with_carbon_price(c), h2_price)?;
        Ok((c, npv(&cf, fin.discount_rate)?))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finance::breakeven_price;
    use crate::model::{annual_output_kg, Feedstock};
    use approx::assert_relative_eq;

    fn fin() -> FinancialParams {
        FinancialParams {
            discount_rate: 0.07,
            lifetime_years: 20,
            plant_size_kw: 10_000.0,
        }
    }

    fn gas(pathway: Pathway, capex: f64, opex: f64, ccs: f64, feed: f64, eff: f64, capture: f64) -> PathwayParams {
        PathwayParams {
            pathway,
            capex,
            fixed_opex: opex,
            ccs_cost: ccs,
            feedstock: Feedstock::Direct {
                cost_usd_per_kg: feed,
                price_index: 1.0,
            },
            efficiency: eff,
            capacity_factor: 0.9,
            emission_intensity_unabated: 9.5,
            capture_rate: capture,
        }
    }

    fn gray() -> PathwayParams {
        gas(Pathway::Gray, 900.0, 0.2, 0.0, 1.15, 0.8, 0.0)
    }

    fn blue() -> PathwayParams {
        gas(Pathway::Blue, 1100.0, 0.3, 1.0, 1.35, 0.75, 0.875)
    }

    fn green() -> PathwayParams {
        PathwayParams {
            pathway: Pathway::Green,
            capex: 1700.0,
            fixed_opex: 0.5,
            ccs_cost: 0.0,
            feedstock: Feedstock::Electricity {
                price_usd_per_mwh: 50.0,
            },
            efficiency: 0.65,
            capacity_factor: 0.5,
            emission_intensity_unabated: 0.0,
            capture_rate: 0.0,
        }
    }

    fn ira() -> PolicyRegime {
        PolicyRegime {
            carbon_price: 0.0,
            credits: Credits {
                green: 3.0,
                blue: 1.0,
                gray: 0.0,
            },
            credit_years: 20,
        }
    }

    #[test]
    fn carbon_adder_examples() {
        assert_relative_eq!(carbon_adder(&gray(), 100.0), 0.95, epsilon = 1e-12);
        assert_eq!(carbon_adder(&green(), 500.0), 0.0);
        assert_relative_eq!(carbon_adder(&blue(), 200.0), 0.2375, epsilon = 1e-12);
    }

    #[test]
    fn gray_at_200_is_nearly_four() {
        let e = effective_lcoh(&gray(), &fin(), &ira().with_carbon_price(200.0)).unwrap();
        assert!((3.3..=4.5).contains(&e.breakdown.total), "{}", e.breakdown.total);
        assert_relative_eq!(e.breakdown.carbon, 1.9, epsilon = 1e-12);
    }

    #[test]
    fn flat_credit_subtracts_exactly() {
        let base = lcoh(&green(), &fin()).unwrap().total;
        let e = effective_lcoh(&green(), &fin(), &ira()).unwrap();
        assert_relative_eq!(base - e.breakdown.total, 3.0, epsilon = 1e-12);
        assert!(!e.floored);

        let base = lcoh(&blue(), &fin()).unwrap().total;
        let e = effective_lcoh(&blue(), &fin(), &ira()).unwrap();
        assert_relative_eq!(base - e.breakdown.total, 1.0, epsilon = 1e-12);
        assert_eq!(e.breakdown.total, e.breakdown.component_sum());
    }

    #[test]
    fn short_credit_is_levelized() {
        let policy = PolicyRegime {
            credit_years: 10,
            ..ira()
        };
        let e = effective_lcoh(&green(), &fin(), &policy).unwrap();
        let oracle: f64 = (1..=10).map(|t| 1.07f64.powi(-t)).sum::<f64>()
            / (1..=20).map(|t| 1.07f64.powi(-t)).sum::<f64>();
        assert_relative_eq!(e.breakdown.credit, -3.0 * oracle, max_relative = 1e-12);
        assert_eq!(credit_levelization(&fin(), 0).unwrap(), 0.0);
    }

    #[test]
    fn credit_larger_than_cost_floors_at_zero() {
        let policy = PolicyRegime {
            credits: Credits {
                gray: 10.0,
                ..Credits::NONE
            },
            ..ira()
        };
        let e = effective_lcoh(&gray(), &fin(), &policy).unwrap();
        assert!(e.floored);
        assert_eq!(e.breakdown.total, 0.0);
        assert!(e.breakdown.credit < 0.0);
        assert!(e.breakdown.component_sum().abs() < 1e-12);
    }

    #[test]
    fn green_is_flat_and_all_affine_in_carbon_price() {
        let totals = |p: &PathwayParams| -> Vec<f64> {
            [0.0, 70.0, 140.0]
                .iter()
                .map(|&c| effective_lcoh(p, &fin(), &ira().with_carbon_price(c)).unwrap().breakdown.total)
                .collect()
        };
        let g = totals(&green());
        assert!(g.iter().all(|&x| x == g[0]));
        for p in [gray(), blue()] {
            let t = totals(&p);
            assert_relative_eq!(t[1] - t[0], t[2] - t[1], epsilon = 1e-12);
            assert_relative_eq!(
                (t[1] - t[0]) / 70.0,
                p.effective_emission_intensity() / 1000.0,
                max_relative = 1e-9
            );
        }
    }

    /// 1 USD/ton dense scan for the first sign change of the cost gap.
    fn scan_switchover(a: &PathwayParams, b: &PathwayParams, policy: &PolicyRegime) -> Option<f64> {
        let gap = |c: f64| {
            let pol = policy.with_carbon_price(c);
            effective_lcoh(a, &fin(), &pol).unwrap().breakdown.total
                - effective_lcoh(b, &fin(), &pol).unwrap().breakdown.total
        };
        let g0 = gap(0.0);
        (1..=1000).map(|c| c as f64).find(|&c| gap(c).signum() != g0.signum())
    }

    #[test]
    fn gray_vs_credited_green_crosses_below_150() {
        let x = switchover_carbon_price(&gray(), &green(), &fin(), &ira()).unwrap();
        let scan = scan_switchover(&gray(), &green(), &ira()).unwrap();
        assert!(x <= scan && scan - x <= 1.0, "bisection {x} vs scan {scan}");
        assert!(x <= 150.0);
    }

    #[test]
    fn identical_intensity_has_no_crossing() {
        let err = switchover_carbon_price(&green(), &green(), &fin(), &ira()).unwrap_err();
        assert!(matches!(err, Error::NoCrossing { .. }));
    }

    #[test]
    fn gray_vs_blue_matches_closed_form() {
        let none = PolicyRegime::none();
        let x = switchover_carbon_price(&gray(), &blue(), &fin(), &none).unwrap();
        let d_base = lcoh(&blue(), &fin()).unwrap().total - lcoh(&gray(), &fin()).unwrap().total;
        let d_int = gray().effective_emission_intensity() - blue().effective_emission_intensity();
        assert_relative_eq!(x, d_base / (d_int / 1000.0), max_relative = 1e-9);
    }

    #[test]
    fn no_crossing_names_dominant_pathway() {
        let mut cheap_blue = blue();
        cheap_blue.feedstock = Feedstock::Direct {
            cost_usd_per_kg: 0.0,
            price_index: 1.0,
        };
        cheap_blue.ccs_cost = 0.0;
        cheap_blue.fixed_opex = 0.0;
        match switchover_carbon_price(&gray(), &cheap_blue, &fin(), &PolicyRegime::none()) {
            Err(Error::NoCrossing { dominant, .. }) => assert_eq!(dominant, "blue"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn npv_vs_carbon_price_slopes() {
        let grid = [0.0, 50.0, 100.0, 150.0, 200.0];
        let price = 5.0;
        let g = npv_vs_carbon_price(&green(), &fin(), &ira(), price, &grid).unwrap();
        assert!(g.iter().all(|&(_, v)| v == g[0].1));

        let gr = npv_vs_carbon_price(&gray(), &fin(), &ira(), price, &grid).unwrap();
        let bl = npv_vs_carbon_price(&blue(), &fin(), &ira(), price, &grid).unwrap();
        let slope = |s: &[(f64, f64)]| (s[4].1 - s[0].1) / 200.0;
        assert!(gr.windows(2).all(|w| w[1].1 < w[0].1));
        let annuity = annuity_sum(0.07, 20).unwrap();
        assert_relative_eq!(
            slope(&gr),
            -annual_output_kg(&gray(), &fin()) * 9.5 / 1000.0 * annuity,
            max_relative = 1e-9
        );
        // Same output per kW is not needed for the ratio test; compare per-kg slopes.
        let per_kg = |s: &[(f64, f64)], p: &PathwayParams| slope(s) / annual_output_kg(p, &fin());
        assert_relative_eq!(per_kg(&gr, &gray()) / per_kg(&bl, &blue()), 8.0, max_relative = 1e-9);

        let none = npv_vs_carbon_price(&gray(), &fin(), &PolicyRegime::none(), price, &[0.0]).unwrap();
        let cf = build_cashflows(&gray(), &fin(), &PolicyRegime::none(), price).unwrap();
        assert_eq!(none[0].1, npv(&cf, 0.07).unwrap());
        assert!(npv_vs_carbon_price(&gray(), &fin(), &ira(), price, &[]).is_err());
    }

    #[test]
    fn breakeven_passes_policy_through() {
        for (p, carbon) in [(gray(), 120.0), (blue(), 80.0), (green(), 40.0)] {
            let none = breakeven_price(&p, &fin(), &PolicyRegime::none()).unwrap();
            let pol = ira().with_carbon_price(carbon);
            let with = breakeven_price(&p, &fin(), &pol).unwrap();
            let expected = none + carbon_adder(&p, carbon) - pol.credit(p.pathway);
            assert!((with - expected).abs() < 1e-9, "{} {with} {expected}", p.pathway);
        }
    }

    #[test]
    fn validation_rejects_overlong_credit() {
        let p = PolicyRegime {
            credit_years: 21,
            ..ira()
        };
        assert!(p.validate(20, "policy").is_err());
        assert!(ira().validate(20, "policy").is_ok());
        assert!(ira().with_carbon_price(-1.0).validate(20, "policy").is_err());
    }
}
