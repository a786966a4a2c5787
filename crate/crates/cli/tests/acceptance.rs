//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Runs without the libtest harness so the report reads top to bottom.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use h2tea::analysis::{default_tornado_params, figure_data, tornado, FigureId, Metric, Table};
use h2tea::dataset::PaperDataset;
use h2tea::finance::{breakeven_price, build_cashflows, irr, npv, CashFlowSeries};
use h2tea::lcoh::{annuity_sum, capex_at_scale, crf, lcoh, lcoh_vs_size};
use h2tea::logistics::{cheapest_chain, pipeline_repurposing_saving, TransportMode};
use h2tea::model::annual_output_kg;
use h2tea::policy::{effective_lcoh, switchover_carbon_price, PolicyRegime};
use h2tea::{Execution, Pathway, Scenario};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn column(t: &Table, name: &str) -> Vec<f64> {
    let i = t.column(name).unwrap_or_else(|| panic!("missing column {name}"));
    t.numbers(i).into_iter().map(|v| v.expect("numeric cell")).collect()
}

fn c1_table13_bands(s: &Scenario) -> Outcome {
    let start = Instant::now();
    let bands = [
        (Pathway::Green, 3.50, 6.00),
        (Pathway::Blue, 2.00, 3.50),
        (Pathway::Gray, 1.50, 2.50),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, lo, hi) in bands {
        let total = lcoh(s.params(p), &s.financial).map_err(|e| e.to_string())?.total;
        ok &= (lo..=hi).contains(&total);
        parts.push(format!("{p} {total:.4} in [{lo:.2}, {hi:.2}]"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    check(ok, format!("{}; {elapsed:?}", parts.join(", ")))
}

fn c2_breakeven(s: &Scenario) -> Outcome {
    let bands = [
        (Pathway::Green, 4.5, 6.0),
        (Pathway::Blue, 2.5, 3.5),
        (Pathway::Gray, 1.5, 2.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, lo, hi) in bands {
        let be = breakeven_price(s.params(p), &s.financial, &PolicyRegime::none()).map_err(|e| e.to_string())?;
        let total = lcoh(s.params(p), &s.financial).map_err(|e| e.to_string())?.total;
        let gap = (be - total).abs();
        ok &= (lo..=hi).contains(&be) && gap < 1e-4;
        parts.push(format!("{p} {be:.4} (|be-lcoh| {gap:.1e})"));
    }
    check(ok, parts.join(", "))
}

fn c3_carbon_figure(s: &Scenario) -> Outcome {
    let t = figure_data(FigureId::Fig10, s, Execution::Serial).map_err(|e| e.to_string())?;
    let x = column(&t, "carbon_price_usd_per_ton");
    let at200 = x.iter().position(|&c| c == 200.0).ok_or("grid lacks 200")?;
    let gray = column(&t, "gray (USD/kg)")[at200];
    let blue = column(&t, "blue (USD/kg)")[at200];
    let green = column(&t, "green (USD/kg)");
    let spread = green.iter().cloned().fold(f64::MIN, f64::max) - green.iter().cloned().fold(f64::MAX, f64::min);
    let ok = (3.3..=4.5).contains(&gray) && (2.2..=3.2).contains(&blue) && spread == 0.0 && green[0] < 2.0;
    check(
        ok,
        format!("gray {gray:.4}, blue {blue:.4}, green {:.4} (spread {spread:e})", green[0]),
    )
}

fn c4_switchover(s: &Scenario) -> Outcome {
    let gray = s.params(Pathway::Gray);
    let green = s.params(Pathway::Green);
    let c = switchover_carbon_price(gray, green, &s.financial, &s.policy).map_err(|e| e.to_string())?;
    let total = |p, price| {
        effective_lcoh(p, &s.financial, &s.policy.with_carbon_price(price))
            .unwrap()
            .breakdown
            .total
    };
    let scan = (0..=1000)
        .map(f64::from)
        .find(|&price| total(gray, price) >= total(green, price))
        .ok_or("dense scan found no crossing")?;
    let agrees = c <= scan && scan - c <= 1.0;
    check(
        agrees && (50.0..=150.0).contains(&c),
        format!("crossing {c:.3} USD/ton (scan {scan}); required [50, 150]"),
    )
}

fn c5_scale(s: &Scenario) -> Outcome {
    let sizes = [1_000.0, 10_000.0, 100_000.0];
    let mut drops = Vec::new();
    let mut ok = true;
    for p in Pathway::ALL {
        let series: Vec<f64> = lcoh_vs_size(s.params(p), &sizes, &s.financial)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(_, b)| b.total)
            .collect();
        ok &= series.windows(2).all(|w| w[1] < w[0]);
        drops.push((p, series[0] - series[2]));
        let anchor = PaperDataset.get("T10", p.as_str(), "10 MW").ok_or("missing anchor")?;
        let at10 = capex_at_scale(p, 10_000.0).map_err(|e| e.to_string())?;
        ok &= at10.band == anchor && !at10.clamped;
    }
    let drop = |q| drops.iter().find(|(p, _)| *p == q).unwrap().1;
    ok &= drop(Pathway::Green) > drop(Pathway::Gray);
    check(
        ok,
        format!(
            "drops 1->100 MW: green {:.3}, blue {:.3}, gray {:.3}; 10 MW CAPEX at anchors",
            drop(Pathway::Green),
            drop(Pathway::Blue),
            drop(Pathway::Gray)
        ),
    )
}

fn c6_sensitivity(s: &Scenario) -> Outcome {
    let none = PolicyRegime::none();
    let fin = s.financial;
    let a = annuity_sum(fin.discount_rate, fin.lifetime_years).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut worst_rel = 0.0f64;
    let mut range = (f64::MAX, f64::MIN);
    for i in 0..=15 {
        let cf = 0.5 + 0.01 * i as f64;
        let sc = s.with_number("pathways.green.capacity_factor", cf).map_err(|e| e.to_string())?;
        let p = sc.params(Pathway::Green);
        let at = |price| npv(&build_cashflows(p, &fin, &none, price).unwrap(), fin.discount_rate).unwrap();
        let delta = at(s.analysis.h2_price + 1.0) - at(s.analysis.h2_price);
        let closed = annual_output_kg(p, &fin) * a;
        worst_rel = worst_rel.max((delta - closed).abs() / closed);
        range = (range.0.min(delta), range.1.max(delta));
        ok &= (8e6..=12e6).contains(&delta);
        if i == 15 {
            ok &= delta > 10e6;
        }
    }
    ok &= worst_rel < 1e-9;
    let params = default_tornado_params(s, Pathway::Green).map_err(|e| e.to_string())?;
    let entries = tornado(s, Pathway::Green, &params, Metric::Npv, false, Execution::Serial).map_err(|e| e.to_string())?;
    ok &= entries[0].parameter == "h2_price";
    check(
        ok,
        format!(
            "dNPV/+1 USD/kg {:.3}M..{:.3}M over CF 0.50-0.65 (closed-form rel err {worst_rel:.1e}); tornado top: {}",
            range.0 / 1e6,
            range.1 / 1e6,
            entries[0].parameter
        ),
    )
}

fn c7_electricity(s: &Scenario) -> Outcome {
    let t = figure_data(FigureId::Fig13, s, Execution::Serial).map_err(|e| e.to_string())?;
    let x = column(&t, "electricity_price (USD/MWh)");
    let y = column(&t, "green (USD/kg)");
    let mut ok = true;
    let (mut at40, mut at80) = (f64::NAN, f64::NAN);
    for (&e, &l) in x.iter().zip(&y) {
        if e == 40.0 {
            at40 = l;
            ok &= l < 4.0;
        }
        if e >= 80.0 {
            ok &= l > 6.0;
            if e == 80.0 {
                at80 = l;
            }
        }
    }
    ok &= at40.is_finite() && at80.is_finite();
    check(ok, format!("green at 40 USD/MWh {at40:.4}, at 80 USD/MWh {at80:.4}"))
}

fn c8_logistics(s: &Scenario) -> Outcome {
    let saving = pipeline_repurposing_saving();
    let pair = [TransportMode::TruckTube, TransportMode::Lh2ShipLarge];
    let prod = lcoh(s.params(Pathway::Green), &s.financial).map_err(|e| e.to_string())?;
    let pick = |km| cheapest_chain(km, &prod, &s.financial, &pair, &s.logistics).map(|c| c.mode);
    let short = pick(300.0).map_err(|e| e.to_string())?;
    let long = pick(3000.0).map_err(|e| e.to_string())?;
    let t = figure_data(FigureId::Fig1, s, Execution::Serial).map_err(|e| e.to_string())?;
    let prod_share = column(&t, "production_share (fraction)");
    let tra = column(&t, "transport_share (fraction)");
    let sto = column(&t, "storage_share (fraction)");
    let shares_ok = (0..prod_share.len()).all(|i| prod_share[i] >= 0.85 && tra[i] <= 0.10 && sto[i] <= 0.05);
    let min_prod = prod_share.iter().cloned().fold(f64::MAX, f64::min);
    let ok = (saving - 0.70).abs() < 1e-12
        && (0.50..=0.70 + 1e-12).contains(&saving)
        && short == TransportMode::TruckTube
        && long == TransportMode::Lh2ShipLarge
        && shares_ok;
    check(
        ok,
        format!(
            "repurposing saving {:.1}%; 300 km -> {short}, 3000 km -> {long}; min production share {min_prod:.3}",
            saving * 100.0
        ),
    )
}

fn npv_at(cf: &CashFlowSeries, r: f64) -> f64 {
    npv(cf, r).unwrap()
}

fn c9_oracles(s: &Scenario, suite_start: Instant) -> Outcome {
    // CRF x annuity over the full grid.
    let mut worst = 0.0f64;
    for ri in 0..=20 {
        let r = ri as f64 / 100.0;
        for n in 1..=40 {
            worst = worst.max((crf(r, n).unwrap() * annuity_sum(r, n).unwrap() - 1.0).abs());
        }
    }
    let crf_ok = worst < 1e-12;

    // IRR against a 1e-4 grid scan on random single-sign-change series.
    let mut rng = ChaCha8Rng::seed_from_u64(0x48_3274_6561);
    let mut irr_worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(3..=30);
        let flows: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0) * 1e5).collect();
        let target = rng.gen_range(-0.3..0.8);
        let outlay: f64 = flows
            .iter()
            .enumerate()
            .map(|(t, f)| f / (1.0f64 + target).powi(t as i32 + 1))
            .sum();
        let cf = CashFlowSeries::new(outlay, flows).unwrap();
        let solved = irr(&cf).map_err(|e| e.to_string())?;
        let (lo, step) = (-0.9, 1e-4);
        let mut prev = npv_at(&cf, lo);
        let mut oracle = f64::NAN;
        for k in 1..=29_000 {
            let r = lo + k as f64 * step;
            let v = npv_at(&cf, r);
            if prev > 0.0 && v <= 0.0 {
                oracle = r - step / 2.0;
                break;
            }
            prev = v;
        }
        irr_worst = irr_worst.max((solved - oracle).abs());
    }
    let irr_ok = irr_worst < 2e-4;

    // NPV is affine in the selling price.
    let none = PolicyRegime::none();
    let mut resid = 0.0f64;
    for p in Pathway::ALL {
        let at = |x: f64| npv_at(&build_cashflows(s.params(p), &s.financial, &none, x).unwrap(), s.financial.discount_rate);
        let grid: Vec<f64> = (0..=40).map(|i| i as f64 * 0.25).collect();
        let ys: Vec<f64> = grid.iter().map(|&x| at(x)).collect();
        let slope = (ys[40] - ys[0]) / (grid[40] - grid[0]);
        let scale = ys.iter().map(|y| y.abs()).fold(1.0, f64::max);
        for (x, y) in grid.iter().zip(&ys) {
            resid = resid.max((ys[0] + slope * x - y).abs() / scale);
        }
    }
    let lin_ok = resid < 1e-9;

    let elapsed = suite_start.elapsed();
    check(
        crf_ok && irr_ok && lin_ok && elapsed < Duration::from_secs(30),
        format!(
            "CRF*annuity max err {worst:.1e}; IRR vs scan max {irr_worst:.1e}; collinearity {resid:.1e}; suite {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn c10_determinism() -> Outcome {
    let run = |id: &str, serial: bool| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_h2tea"));
        c.args(["figure", id, "--format", "csv"]).env_remove("H2TEA_DEFAULTS");
        if serial {
            c.arg("--serial");
        }
        let o = c.output().expect("binary runs");
        (o.status.success(), o.stdout)
    };
    let mut bad = Vec::new();
    for id in FigureId::ALL {
        let (ok1, first) = run(id.as_str(), false);
        let (ok2, second) = run(id.as_str(), false);
        let (ok3, serial) = run(id.as_str(), true);
        if !(ok1 && ok2 && ok3) || first != second || first != serial || first.contains(&b'\r') {
            bad.push(id.as_str());
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} figures byte-identical across runs and serial/parallel", FigureId::ALL.len())
        } else {
            format!("differs: {}", bad.join(", "))
        },
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let s = Scenario::default();
    let mut results: Vec<(u8, &str, Outcome)> = vec![
        (1, "LCOH inside model-estimate bands", c1_table13_bands(&s)),
        (2, "break-even inside key-assumption bands", c2_breakeven(&s)),
        (3, "carbon-price overlay at 200 USD/ton", c3_carbon_figure(&s)),
        (4, "gray vs credited green switchover", c4_switchover(&s)),
        (5, "scale economics", c5_scale(&s)),
        (6, "price sensitivity closed forms", c6_sensitivity(&s)),
        (7, "electricity price thresholds", c7_electricity(&s)),
        (8, "logistics and cost shares", c8_logistics(&s)),
    ];
    let c10 = c10_determinism();
    results.push((9, "numerical oracles", c9_oracles(&s, start)));
    results.push((10, "figure determinism", c10));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    println!();
    for (n, name, outcome) in &results {
        match outcome {
            Ok(d) => println!("PASS {n:>2} {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {d}");
            }
        }
    }
    println!("\nacceptance: {} passed, {failed} failed\n", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
