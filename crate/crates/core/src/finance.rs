//! Discounted cash flow: NPV, IRR and break-even hydrogen price.
//!
//! Cash flows are real and constant over the project life. The only
//! time-varying term is a production credit that stops after
//! `credit_years`. There is no salvage value.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::model::{annual_output_kg, FinancialParams, PathwayParams};
use crate::policy::{carbon_adder, PolicyRegime};
use crate::solver::{bisect, Tolerance};

/// IRR search interval.
pub const IRR_BRACKET: (f64, f64) = (-0.99, 10.0);
/// IRR stops once `|NPV|` is below this fraction of the initial outlay.
pub const IRR_NPV_REL_TOL: f64 = 1e-6;
/// Break-even search interval, USD/kg.
pub const BREAKEVEN_BRACKET: (f64, f64) = (0.0, 100.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CashFlowSeries {
    /// Year-0 investment as a positive magnitude.
    pub initial_outlay: f64,
    /// Net flow for years 1..=n.
    pub net_flows: Vec<f64>,
}

impl CashFlowSeries {
    pub fn new(initial_outlay: f64, net_flows: Vec<f64>) -> Result<Self> {
        if !(initial_outlay >= 0.0) {
            return Err(Error::Domain(format!(
                "initial outlay must be >= 0, got {initial_outlay}"
            )));
        }
        Ok(Self {
            initial_outlay,
            net_flows,
        })
    }

    fn sign_changes(&self) -> usize {
        let mut last = if self.initial_outlay > 0.0 { -1.0 } else { 0.0 };
        let mut changes = 0;
        for &f in &self.net_flows {
            if f == 0.0 {
                continue;
            }
            if last != 0.0 && f.signum() != last {
                changes += 1;
            }
            last = f.signum();
        }
        changes
    }
}

/// Annual cash flows for a plant selling all output at `h2_price` USD/kg.
pub fn build_cashflows(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    h2_price: f64,
) -> Result<CashFlowSeries> {
    if !(h2_price >= 0.0) {
        return Err(Error::Domain(format!(
            "hydrogen price must be >= 0, got {h2_price}"
        )));
    }
    let output = annual_output_kg(params, fin);
    let cost = params.fixed_opex
        + params.ccs_cost
        + params.feedstock_cost()?
        + carbon_adder(params, policy.carbon_price);
    let credit = policy.credit(params.pathway);
    let flows = (1..=fin.lifetime_years)
        .map(|year| {
            let credit = if year <= policy.credit_years { credit } else { 0.0 };
            output * (h2_price - (cost - credit))
        })
        .collect();
    CashFlowSeries::new(params.capex * fin.plant_size_kw, flows)
}

/// `-outlay + Σ flow_t / (1+r)^t`.
pub fn npv(cf: &CashFlowSeries, discount_rate: f64) -> Result<f64> {
    if !(discount_rate > -1.0) {
        return Err(Error::Domain(format!(
            "discount rate must be > -1, got {discount_rate}"
        )));
    }
    Ok(npv_unchecked(cf, discount_rate))
}

fn npv_unchecked(cf: &CashFlowSeries, discount_rate: f64) -> f64 {
    let step = 1.0 / (1.0 + discount_rate);
    let mut factor = 1.0;
    let mut total = -cf.initial_outlay;
    for &f in &cf.net_flows {
        factor *= step;
        total += f * factor;
    }
    total
}

/// Internal rate of return of a conventional series (outlay then non-negative flows).
pub fn irr(cf: &CashFlowSeries) -> Result<f64> {
    match cf.sign_changes() {
        0 => return Err(Error::NoSignChange),
        1 => {}
        n => {
            return Err(Error::Domain(format!(
                "cash flows change sign {n} times; IRR is not unique"
            )))
        }
    }
    let (lo, hi) = IRR_BRACKET;
    let tol = Tolerance {
        f_abs: IRR_NPV_REL_TOL * cf.initial_outlay.max(f64::MIN_POSITIVE),
        x_abs: 1e-12,
    };
    bisect(|r| npv_unchecked(cf, r), lo, hi, tol)
}

/// Hydrogen price (USD/kg) at which NPV at the discount rate is zero.
pub fn breakeven_price(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
) -> Result<f64> {
    if !(annual_output_kg(params, fin) > 0.0) {
        return Err(Error::ZeroOutput);
    }
    // Evaluate the inputs once so the solver closure cannot fail.
    build_cashflows(params, fin, policy, 0.0)?;
    let value = |price: f64| {
        build_cashflows(params, fin, policy, price)
            .and_then(|cf| npv(&cf, fin.discount_rate))
            .unwrap_or(f64::NAN)
    };
    let (lo, hi) = BREAKEVEN_BRACKET;
    bisect(value, lo, hi, Tolerance::MACHINE)
}

/// NPV over a price grid, in grid order.
pub fn npv_vs_price(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    price_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    npv_vs_price_with(Execution::default(), params, fin, policy, price_grid)
}

pub fn npv_vs_price_with(
    exec: Execution,
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    price_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if price_grid.is_empty() {
        return Err(Error::Domain("price grid is empty".into()));
    }
    map_ordered(exec, price_grid, |&price| {
        let cf = build_cashflows(params, fin, policy, price)?;
        Ok((price, npv(&cf, fin.discount_rate)?))
    })
    .into_iter()
    .collect()
}

/// IRR over a price grid; `None` where the IRR is undefined.
pub fn irr_vs_price(
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    price_grid: &[f64],
) -> Result<Vec<(f64, Option<f64>)>> {
    irr_vs_price_with(Execution::default(), params, fin, policy, price_grid)
}

pub fn irr_vs_price_with(
    exec: Execution,
    params: &PathwayParams,
    fin: &FinancialParams,
    policy: &PolicyRegime,
    price_grid: &[f64],
) -> Result<Vec<(f64, Option<f64>)>> {
    if price_grid.is_empty() {
        return Err(Error::Domain("price grid is empty".into()));
    }
    map_ordered(exec, price_grid, |&price| {
        let cf = build_cashflows(params, fin, policy, price)?;
        match irr(&cf) {
            Ok(r) => Ok((price, Some(r))),
            Err(Error::NoSignChange | Error::Domain(_) | Error::Bracket { .. }) => {
                Ok((price, None))
            }
            Err(e) => Err(e),
        }
    })
    .into_iter()
    .collect()
}
