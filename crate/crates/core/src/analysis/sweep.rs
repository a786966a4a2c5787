//! One-parameter sweeps over a scenario.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::model::Pathway;
use crate::scenario::Scenario;

use super::{evaluate_defined, parameter_unit, resolve_parameter, Cell, Metric, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Dotted key path, `pathways.*.field`, or a short name such as `capex`.
    pub parameter: String,
    pub grid: Vec<f64>,
    pub metric: Metric,
    pub pathways: Vec<Pathway>,
    /// Apply the scenario's carbon price and credits. Always on for `policy.*` sweeps.
    pub apply_policy: bool,
}

impl SweepSpec {
    pub fn new(
        parameter: impl Into<String>,
        grid: Vec<f64>,
        metric: Metric,
        pathways: Vec<Pathway>,
        apply_policy: bool,
    ) -> Result<Self> {
        let spec = Self {
            parameter: parameter.into(),
            grid,
            metric,
            pathways,
            apply_policy,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::validation("grid", "must not be empty"));
        }
        if let Some(x) = self.grid.iter().find(|x| !x.is_finite()) {
            return Err(Error::validation("grid", format!("values must be finite, got {x}")));
        }
        if let Some(w) = self.grid.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::validation(
                "grid",
                format!("must be strictly increasing, got {} then {}", w[0], w[1]),
            ));
        }
        if self.pathways.is_empty() {
            return Err(Error::validation("pathways", "must name at least one pathway"));
        }
        for (i, p) in self.pathways.iter().enumerate() {
            if self.pathways[..i].contains(p) {
                return Err(Error::validation("pathways", format!("{p} listed twice")));
            }
        }
        Ok(())
    }
}

/// Inclusive `lo, lo + step, ...` up to `hi`, each point rounded to 10 decimals.
pub fn grid_from_range(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
        return Err(Error::validation("range", "bounds and step must be finite"));
    }
    if !(step > 0.0) {
        return Err(Error::validation("range", format!("step must be > 0, got {step}")));
    }
    if lo > hi {
        return Err(Error::validation("range", format!("lo {lo} exceeds hi {hi}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(Error::validation("range", format!("{} points is too many", n + 1)));
    }
    Ok((0..=n)
        .map(|i| {
            let v = lo + i as f64 * step;
            format!("{v:.10}").parse::<f64>().expect("formatted float parses")
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    /// One value per pathway in spec order; `None` where the metric is undefined.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub parameter: String,
    pub metric: Metric,
    pub pathways: Vec<Pathway>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_table(&self) -> Table {
        let mut columns = vec![format!("{} ({})", self.parameter, parameter_unit(&self.parameter))];
        columns.extend(
            self.pathways
                .iter()
                .map(|p| format!("{p} {} ({})", self.metric, self.metric.unit())),
        );
        let mut t = Table::new(columns);
        for row in &self.rows {
            let mut cells = vec![Cell::Num(row.x)];
            cells.extend(row.values.iter().map(|&v| Cell::from(v)));
            t.push(cells);
        }
        t
    }

    pub fn series(&self, pathway: Pathway) -> Option<Vec<Option<f64>>> {
        let i = self.pathways.iter().position(|&p| p == pathway)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }
}

/// Evaluate `spec.metric` at every grid point, all other fields held at `scenario`.
///
/// Grid points are independent and may run in parallel; rows always come back
/// in grid order, so serial and parallel runs are identical.
pub fn sweep(scenario: &Scenario, spec: &SweepSpec, exec: Execution) -> Result<SweepTable> {
    spec.validate()?;
    let paths: Vec<String> = spec
        .pathways
        .iter()
        .map(|&p| resolve_parameter(scenario, &spec.parameter, p))
        .collect::<Result<_>>()?;
    let apply = spec.apply_policy || paths.iter().any(|p| p.starts_with("policy."));

    let rows = map_ordered(exec, &spec.grid, |&x| -> Result<SweepRow> {
        // Pathways that share a path (e.g. a financial key) share one rebuilt scenario.
        let mut built: BTreeMap<&str, Scenario> = BTreeMap::new();
        let mut values = Vec::with_capacity(spec.pathways.len());
        for (&pathway, path) in spec.pathways.iter().zip(&paths) {
            if !built.contains_key(path.as_str()) {
                built.insert(path, scenario.with_number(path, x)?);
            }
            let s = &built[path.as_str()];
            values.push(evaluate_defined(s, pathway, spec.metric, &s.active_policy(apply))?);
        }
        Ok(SweepRow { x, values })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(SweepTable {
        parameter: spec.parameter.clone(),
        metric: spec.metric,
        pathways: spec.pathways.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::evaluate;
    use crate::policy::PolicyRegime;

    fn spec(param: &str, grid: Vec<f64>, metric: Metric, pathways: Vec<Pathway>) -> SweepSpec {
        SweepSpec::new(param, grid, metric, pathways, false).unwrap()
    }

    #[test]
    fn grid_validation() {
        let bad = |g: Vec<f64>| SweepSpec::new("capex", g, Metric::Lcoh, vec![Pathway::Green], false);
        assert!(bad(vec![]).is_err());
        assert!(bad(vec![1.0, 1.0]).is_err());
        assert!(bad(vec![2.0, 1.0]).is_err());
        assert!(bad(vec![f64::NAN]).is_err());
        assert!(SweepSpec::new("capex", vec![1.0], Metric::Lcoh, vec![], false).is_err());
    }

    #[test]
    fn ranges_are_inclusive_and_clean() {
        assert_eq!(grid_from_range(0.0, 1.0, 0.25).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = grid_from_range(0.0, 0.3, 0.1).unwrap();
        assert_eq!(g, vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(grid_from_range(0.0, 10.0, 0.25).unwrap().len(), 41);
        assert_eq!(grid_from_range(5.0, 5.0, 1.0).unwrap(), vec![5.0]);
        assert!(grid_from_range(1.0, 0.0, 1.0).is_err());
        assert!(grid_from_range(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn electricity_thresholds() {
        let s = Scenario::default();
        let t = sweep(
            &s,
            &spec("electricity_price", vec![40.0, 80.0], Metric::Lcoh, vec![Pathway::Green]),
            Execution::Serial,
        )
        .unwrap();
        let green = t.series(Pathway::Green).unwrap();
        // Table-1 fixed O&M here; the figure variant uses the plant-size table.
        assert!(green[0].unwrap() < 4.5);
        assert!(green[1].unwrap() > 6.0);
    }

    #[test]
    fn electricity_sweep_on_gray_is_a_mismatch() {
        let s = Scenario::default();
        let r = sweep(
            &s,
            &spec("electricity_price", vec![40.0], Metric::Lcoh, vec![Pathway::Green, Pathway::Gray]),
            Execution::Serial,
        );
        assert!(matches!(r, Err(Error::Mismatch(_))));
        let r = sweep(&s, &spec("nonsense", vec![1.0], Metric::Lcoh, vec![Pathway::Gray]), Execution::Serial);
        assert!(matches!(r, Err(Error::UnknownParameter(_))));
    }

    #[test]
    fn single_point_at_base_equals_direct_call() {
        let s = Scenario::default();
        for m in [Metric::Lcoh, Metric::Npv, Metric::Breakeven, Metric::DeliveredCost] {
            let t = sweep(&s, &spec("capex", vec![900.0], m, vec![Pathway::Gray]), Execution::Serial).unwrap();
            let direct = evaluate(&s, Pathway::Gray, m, &PolicyRegime::none()).unwrap();
            assert_eq!(t.rows[0].values[0], Some(direct));
        }
    }

    #[test]
    fn carbon_sweeps_apply_policy() {
        let s = Scenario::default();
        let t = sweep(
            &s,
            &spec("carbon_price", vec![0.0, 200.0], Metric::Lcoh, vec![Pathway::Green, Pathway::Gray]),
            Execution::Serial,
        )
        .unwrap();
        let green = t.series(Pathway::Green).unwrap();
        assert_eq!(green[0], green[1]);
        assert!(green[0].unwrap() < 2.0);
        let gray = t.series(Pathway::Gray).unwrap();
        assert!((gray[1].unwrap() - gray[0].unwrap() - 1.9).abs() < 1e-12);
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let s = Scenario::default();
        let sp = spec(
            "h2_price",
            grid_from_range(0.0, 10.0, 0.25).unwrap(),
            Metric::Irr,
            Pathway::ALL.to_vec(),
        );
        let a = sweep(&s, &sp, Execution::Serial).unwrap();
        let b = sweep(&s, &sp, Execution::Parallel).unwrap();
        assert_eq!(a.to_table().to_csv().unwrap(), b.to_table().to_csv().unwrap());
        // Prices below cost leave IRR undefined rather than failing the sweep.
        assert_eq!(a.rows[0].values[0], None);
    }

    #[test]
    fn table_headers_carry_units() {
        let s = Scenario::default();
        let t = sweep(&s, &spec("discount_rate", vec![0.05, 0.1], Metric::Npv, vec![Pathway::Blue]), Execution::Serial)
            .unwrap()
            .to_table();
        assert_eq!(t.columns, vec!["discount_rate (fraction)", "blue npv (USD)"]);
    }
}
