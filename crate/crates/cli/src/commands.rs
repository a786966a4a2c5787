use h2tea::analysis::{
    self, default_tornado_params, figure_data, grid_from_range, tornado_table, Cell, FigureId, Metric,
    SweepSpec, Table, TornadoParam,
};
use h2tea::dataset::PaperDataset;
use h2tea::finance::{breakeven_price, build_cashflows, irr as irr_of, npv as npv_of};
use h2tea::lcoh::CostBreakdown;
use h2tea::logistics::{cheapest_chain, compose_chain, StorageSpec, TransportMode};
use h2tea::policy::effective_lcoh;
use h2tea::{BandLevel, Error, Pathway};

use crate::{Context, Failure, Output};

type CmdResult = Result<Output, Failure>;

fn selected(pathways: &[Pathway]) -> Vec<Pathway> {
    if pathways.is_empty() {
        Pathway::ALL.to_vec()
    } else {
        pathways.to_vec()
    }
}

fn emit(ctx: &Context, table: &Table) -> CmdResult {
    Ok(Output {
        text: table.render(ctx.format)?,
        deferred: None,
    })
}

fn production(ctx: &Context, p: Pathway) -> Result<CostBreakdown, Error> {
    let s = &ctx.scenario;
    Ok(effective_lcoh(s.params(p), &s.financial, &s.active_policy(ctx.apply_policy))?.breakdown)
}

pub fn lcoh(ctx: &Context, pathways: &[Pathway]) -> CmdResult {
    let mut t = Table::new(CostBreakdown::CSV_HEADER);
    for p in selected(pathways) {
        let b = production(ctx, p)?;
        let mut row = vec![Cell::Text(p.to_string())];
        row.extend(b.values().into_iter().map(Cell::Num));
        t.push(row);
    }
    emit(ctx, &t)
}

fn cashflow_metric(
    ctx: &Context,
    price: f64,
    pathways: &[Pathway],
    header: &str,
    f: impl Fn(&h2tea::finance::CashFlowSeries, f64) -> Result<f64, Error>,
) -> CmdResult {
    if !(price >= 0.0 && price.is_finite()) {
        return Err(Failure::user(format!("--price must be a finite value >= 0, got {price}")));
    }
    let s = &ctx.scenario;
    let policy = s.active_policy(ctx.apply_policy);
    let mut t = Table::new(["pathway", header]);
    let mut deferred = None;
    for p in selected(pathways) {
        let cf = build_cashflows(s.params(p), &s.financial, &policy, price)?;
        let cell = match f(&cf, s.financial.discount_rate) {
            Ok(v) => Cell::Num(v),
            Err(e) => {
                let mut fail = Failure::from(e);
                if fail.code != 3 {
                    return Err(fail);
                }
                fail.message = format!("{p}: {}", fail.message);
                deferred.get_or_insert(fail);
                Cell::Missing
            }
        };
        t.push(vec![Cell::Text(p.to_string()), cell]);
    }
    Ok(Output {
        text: t.render(ctx.format)?,
        deferred,
    })
}

pub fn npv(ctx: &Context, price: f64, pathways: &[Pathway]) -> CmdResult {
    cashflow_metric(ctx, price, pathways, "npv (USD)", npv_of)
}

pub fn irr(ctx: &Context, price: f64, pathways: &[Pathway]) -> CmdResult {
    cashflow_metric(ctx, price, pathways, "irr (fraction)", |cf, _| irr_of(cf))
}

pub fn breakeven(ctx: &Context, pathways: &[Pathway]) -> CmdResult {
    let s = &ctx.scenario;
    let policy = s.active_policy(ctx.apply_policy);
    let mut t = Table::new(["pathway", "breakeven (USD/kg)"]);
    for p in selected(pathways) {
        let be = breakeven_price(s.params(p), &s.financial, &policy)?;
        t.push(vec![Cell::Text(p.to_string()), Cell::Num(be)]);
    }
    emit(ctx, &t)
}

fn parse_modes(text: Option<&str>) -> Result<Vec<TransportMode>, Failure> {
    match text {
        None => Ok(TransportMode::ALL.to_vec()),
        Some(list) => {
            let modes = list
                .split(',')
                .map(str::trim)
                .filter(|m| !m.is_empty())
                .map(|m| m.parse::<TransportMode>())
                .collect::<Result<Vec<_>, _>>()?;
            if modes.is_empty() {
                return Err(Error::EmptyCandidates.into());
            }
            Ok(modes)
        }
    }
}

pub fn chain(ctx: &Context, distance_km: f64, modes: Option<&str>, pathways: &[Pathway]) -> CmdResult {
    if !(distance_km > 0.0 && distance_km.is_finite()) {
        return Err(Failure::user(format!("--distance-km must be > 0, got {distance_km}")));
    }
    let modes = parse_modes(modes)?;
    let s = &ctx.scenario;
    let store = s
        .analysis
        .chain
        .storage
        .map(|k| StorageSpec::from_tables(k, BandLevel::Mid, &s.logistics))
        .transpose()?;
    let mut t = Table::new([
        "pathway",
        "mode",
        "production (USD/kg)",
        "fixed (USD/kg)",
        "variable (USD/kg)",
        "reconversion (USD/kg)",
        "loss_uplift (USD/kg)",
        "transport (USD/kg)",
        "storage (USD/kg)",
        "delivered (USD/kg)",
        "loss_adjusted (USD/kg)",
        "cheapest",
    ]);
    for p in selected(pathways) {
        let prod = production(ctx, p)?;
        let choice = cheapest_chain(distance_km, &prod, &s.financial, &modes, &s.logistics)?;
        for (mode, leg) in &choice.candidates {
            let leg_spec = h2tea::logistics::TransportLeg::from_tables(*mode, distance_km, BandLevel::Mid, &s.logistics)?;
            let d = compose_chain(&prod, &[leg_spec], store.as_ref(), &s.financial)?;
            t.push(vec![
                Cell::Text(p.to_string()),
                Cell::Text(mode.to_string()),
                d.production.into(),
                leg.fixed.into(),
                leg.variable.into(),
                leg.reconversion.into(),
                leg.loss_uplift.into(),
                d.transport.into(),
                d.storage.into(),
                d.total.into(),
                d.loss_adjusted_total.into(),
                Cell::Text(if *mode == choice.mode { "*" } else { "" }.into()),
            ]);
        }
    }
    emit(ctx, &t)
}

fn parse_range(text: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::user(format!("--range expects lo:hi:step, got `{text}`")))?;
    match nums[..] {
        [lo, hi, step] => Ok(grid_from_range(lo, hi, step)?),
        _ => Err(Failure::user(format!("--range expects lo:hi:step, got `{text}`"))),
    }
}

pub fn sweep(ctx: &Context, param: &str, range: &str, metric: &str, pathways: &[Pathway]) -> CmdResult {
    let metric: Metric = metric.parse()?;
    let grid = parse_range(range)?;
    let s = &ctx.scenario;
    let pathways = if pathways.is_empty() {
        // Without an explicit filter, keep the pathways the parameter applies to.
        let mut applicable = Vec::new();
        let mut first_err = None;
        for p in Pathway::ALL {
            match analysis::resolve_parameter(s, param, p) {
                Ok(_) => applicable.push(p),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        match (applicable.is_empty(), first_err) {
            (true, Some(e)) => return Err(e.into()),
            _ => applicable,
        }
    } else {
        pathways.to_vec()
    };
    let spec = SweepSpec::new(param, grid, metric, pathways, ctx.apply_policy)?;
    let table = analysis::sweep(s, &spec, ctx.exec)?.to_table();
    emit(ctx, &table)
}

pub fn tornado(ctx: &Context, params: &[String], metric: &str, pathway: Pathway) -> CmdResult {
    let metric: Metric = metric.parse()?;
    let s = &ctx.scenario;
    let params = if params.is_empty() {
        default_tornado_params(s, pathway)?
    } else {
        params
            .iter()
            .map(|p| TornadoParam::parse(p, s, pathway))
            .collect::<Result<Vec<_>, _>>()?
    };
    let entries = analysis::tornado(s, pathway, &params, metric, ctx.apply_policy, ctx.exec)?;
    emit(ctx, &tornado_table(&entries, metric))
}

pub fn figure(ctx: &Context, id: &str) -> CmdResult {
    let id: FigureId = id.parse()?;
    emit(ctx, &figure_data(id, &ctx.scenario, ctx.exec)?)
}

pub fn dataset_export(ctx: &Context) -> CmdResult {
    let mut t = Table::new(["table_id", "row", "column", "low", "mid", "high", "unit"]);
    for e in PaperDataset.entries() {
        t.push(vec![
            e.table.into(),
            e.row.into(),
            e.column.into(),
            e.band.low.into(),
            e.band.mid.into(),
            e.band.high.into(),
            e.unit.into(),
        ]);
    }
    emit(ctx, &t)
}
