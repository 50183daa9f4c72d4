// SPDX-License-Identifier: Apache-2.0

//! One function per subcommand. Each writes its table and returns the
//! one-line summary printed on success.

use num_complex::Complex64;
use rayon::prelude::*;

use scx_core::numkit::CMatrix;
use scx_core::propagator::{dyson_expansion, exact_propagator, HamiltonianModel, Trajectory, DEFAULT_PROPAGATOR_TOL};
use scx_core::recursion_lab::{
    backward_recursion, forward_recursion_from, geometric_partial_sums, in_oracle, ExpansionMode,
    GeometricSeriesSpec, RecursionTable, ORACLE_MAX_N,
};
use scx_core::strong_expansion::{defect_rel, run_strong, solve_mvt_time, term_scaling_probe, Seed, TimeGrid};

use crate::cli::{
    DirectionArg, GeometricArgs, MethodArg, ModeArg, MvtArgs, ProbeArg, PropagateArgs, RecursionArgs, SeedModeArg,
    StrongArgs, SweepArgs,
};
use crate::config::load_model_config;
use crate::error::CliError;
use crate::svg::PlotSpec;
use crate::table::{emit_table, ColumnKind, OutputFormat, ResultTable, Value};

fn matrix_columns(prefix: &str, dim: usize) -> Vec<(String, ColumnKind)> {
    if dim == 1 {
        return vec![(prefix.to_string(), ColumnKind::Complex)];
    }
    (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (format!("{prefix}{i}{j}"), ColumnKind::Complex)))
        .collect()
}

fn matrix_values(m: &CMatrix) -> Vec<Value> {
    m.as_slice().iter().map(|&z| Value::Complex(z)).collect()
}

fn time_arg(model: &HamiltonianModel, flag: &str, t: f64) -> Result<f64, CliError> {
    if !t.is_finite() || !model.contains(t) {
        let (lo, hi) = model.window();
        return Err(CliError::usage(flag, format!("time {t} outside model window [{lo}, {hi}]")));
    }
    Ok(t)
}

fn t0_arg(model: &HamiltonianModel, t0: Option<f64>) -> Result<f64, CliError> {
    match t0 {
        Some(t) => time_arg(model, "--t0", t),
        None => Ok(model.window().0),
    }
}

pub fn geometric(args: &GeometricArgs) -> Result<String, CliError> {
    let mode = match args.mode {
        ModeArg::Weak => ExpansionMode::Weak,
        ModeArg::Strong => ExpansionMode::Strong,
    };
    let spec = GeometricSeriesSpec::new(args.a, mode, args.terms).map_err(|e| {
        let flag = if args.terms == 0 { "--terms" } else { "--a" };
        CliError::usage(flag, e)
    })?;
    let sums = geometric_partial_sums(&spec);
    if let Some(out) = &args.out {
        let mut table = ResultTable::new([
            ("m", ColumnKind::Int),
            ("partial_sum", ColumnKind::Real),
            ("error", ColumnKind::Real),
        ]);
        for (i, s) in sums.sums.iter().enumerate() {
            table.push(vec![
                Value::Int(i as i64 + 1),
                Value::Real(*s),
                Value::Real((s - sums.limit).abs()),
            ]);
        }
        emit_table(&table, out, &OutputFormat::Csv)?;
    }
    let mut line = format!(
        "geometric a={} mode={}: final partial sum {} limit {:.6}",
        args.a,
        format!("{mode:?}").to_lowercase(),
        sums.last(),
        sums.limit
    );
    if sums.diverged {
        line.push_str(&format!(" (diverged: guard hit after {} terms)", sums.sums.len()));
    }
    Ok(line)
}

pub fn recursion(args: &RecursionArgs) -> Result<String, CliError> {
    for (flag, n) in [("--start", args.start), ("--stop", args.stop)] {
        if n > ORACLE_MAX_N {
            return Err(CliError::usage(flag, format!("index {n} exceeds {ORACLE_MAX_N}")));
        }
    }
    let table: RecursionTable = match args.direction {
        DirectionArg::Forward => {
            if args.stop <= args.start {
                return Err(CliError::usage("--stop", "forward recursion needs --stop > --start"));
            }
            let seed = match args.seed {
                Some(s) => s,
                None if args.start == 0 => 1.0 - (-1.0f64).exp(),
                None => in_oracle(args.start)?,
            };
            forward_recursion_from(args.start, seed, args.stop)?
        }
        DirectionArg::Backward => {
            if args.stop >= args.start {
                return Err(CliError::usage("--stop", "backward recursion needs --stop < --start"));
            }
            backward_recursion(args.start, args.seed.unwrap_or(0.0), args.stop)?
        }
    };
    let mut rows: Vec<(u32, f64)> = table.indices.iter().copied().zip(table.values.iter().copied()).collect();
    rows.sort_by_key(|r| r.0);

    let mut out = ResultTable::new([
        ("n", ColumnKind::Int),
        ("I", ColumnKind::Real),
        ("oracle", ColumnKind::Real),
        ("abs_error", ColumnKind::Real),
    ]);
    let mut stop_error = f64::NAN;
    for (n, v) in rows {
        let exact = in_oracle(n)?;
        if n == args.stop {
            stop_error = (v - exact).abs() / exact;
        }
        out.push(vec![
            Value::Int(n as i64),
            Value::Real(v),
            Value::Real(exact),
            Value::Real((v - exact).abs()),
        ]);
    }
    emit_table(&out, &args.out, &OutputFormat::Csv)?;
    Ok(format!(
        "recursion {} {} -> {}: relative error at n={} is {:e}",
        format!("{:?}", args.direction).to_lowercase(),
        args.start,
        args.stop,
        args.stop,
        stop_error
    ))
}

pub fn propagate(args: &PropagateArgs) -> Result<String, CliError> {
    let model = load_model_config(&args.model)?;
    let t0 = t0_arg(&model, args.t0)?;
    let t = time_arg(&model, "--t", args.t)?;
    if t < t0 {
        return Err(CliError::usage("--t", "must not precede --t0"));
    }
    let exact = exact_propagator(&model, t, t0, DEFAULT_PROPAGATOR_TOL)?.u;
    match args.method {
        MethodArg::Exact => {
            let mut cols = vec![("t0".to_string(), ColumnKind::Real), ("t".to_string(), ColumnKind::Real)];
            cols.extend(matrix_columns("u", model.dim()));
            cols.push(("unitarity_defect".into(), ColumnKind::Real));
            let mut table = ResultTable::new(cols);
            let mut row = vec![Value::Real(t0), Value::Real(t)];
            row.extend(matrix_values(&exact));
            row.push(Value::Real(exact.unitarity_defect()));
            table.push(row);
            emit_table(&table, &args.out, &OutputFormat::Csv)?;
            Ok(format!(
                "exact propagator u({t}, {t0}): unitarity defect {:e}",
                exact.unitarity_defect()
            ))
        }
        MethodArg::Dyson => {
            if args.order > scx_core::propagator::MAX_DYSON_ORDER {
                return Err(CliError::usage(
                    "--order",
                    format!("at most {}", scx_core::propagator::MAX_DYSON_ORDER),
                ));
            }
            let series = dyson_expansion(&model, t, t0, args.order)?.with_reference(exact);
            let mut cols = vec![("m".to_string(), ColumnKind::Int), ("term_norm".to_string(), ColumnKind::Real)];
            cols.extend(matrix_columns("sum", model.dim()));
            cols.push(("error".into(), ColumnKind::Real));
            let mut table = ResultTable::new(cols);
            let errors = series.errors.clone().expect("reference attached");
            for m in 0..series.len() {
                let mut row = vec![Value::Int(m as i64), Value::Real(series.term_norms[m])];
                row.extend(matrix_values(&series.partial_sums[m]));
                row.push(Value::Real(errors[m]));
                table.push(row);
            }
            emit_table(&table, &args.out, &OutputFormat::Csv)?;
            Ok(format!(
                "Dyson expansion to order {} at t={t}: error {:e}",
                args.order,
                errors.last().expect("non-empty")
            ))
        }
    }
}

pub fn strong(args: &StrongArgs) -> Result<String, CliError> {
    let model = load_model_config(&args.model)?;
    let t0 = t0_arg(&model, args.t0)?;
    if args.grid.is_empty() {
        return Err(CliError::usage("--grid", "at least one time is required"));
    }
    for &t in &args.grid {
        time_arg(&model, "--grid", t)?;
    }
    time_arg(&model, "--target", args.target)?;
    let grid = TimeGrid::with_target(t0, &args.grid, args.target).map_err(|e| CliError::usage("--grid", e))?;
    let seed = match args.seed_mode {
        SeedModeArg::Exact => Seed::Exact,
        SeedModeArg::Value => {
            let re = args
                .seed_re
                .ok_or_else(|| CliError::usage("--seed-re", "required with --seed-mode value"))?;
            let im = args.seed_im.unwrap_or(0.0);
            Seed::Value(CMatrix::scalar(model.dim(), Complex64::new(re, im))?)
        }
    };
    let run = run_strong(&model, &grid, &seed)?;

    let d = model.dim();
    let mut cols = vec![("k".to_string(), ColumnKind::Int), ("t".to_string(), ColumnKind::Real)];
    for prefix in ["u", "term", "partial_sum", "exact"] {
        cols.extend(matrix_columns(prefix, d));
    }
    cols.push(("error".into(), ColumnKind::Real));
    let mut table = ResultTable::new(cols);
    for k in 0..grid.len() {
        let mut row = vec![Value::Int(k as i64 + 1), Value::Real(grid.points()[k])];
        row.extend(matrix_values(&run.iterates[k]));
        row.extend(matrix_values(&run.series.terms[k]));
        row.extend(matrix_values(&run.series.partial_sums[k]));
        row.extend(matrix_values(&run.exact[k]));
        row.push(Value::Real(run.iterates[k].distance(&run.exact[k])));
        table.push(row);
    }
    emit_table(&table, &args.out, &OutputFormat::Csv)?;
    let target_err = run.series.errors.as_ref().and_then(|e| e.last().copied()).unwrap_or(f64::NAN);
    Ok(format!(
        "strong expansion over {} times to t={}: error vs exact {:e}, unroll/fold gap {:e}",
        grid.len(),
        grid.target(),
        target_err,
        run.unroll_fold_gap()
    ))
}

pub fn mvt(args: &MvtArgs) -> Result<String, CliError> {
    let model = load_model_config(&args.model)?;
    let t0 = t0_arg(&model, args.t0)?;
    let tk = time_arg(&model, "--tk", args.tk)?;
    if tk <= t0 {
        return Err(CliError::usage("--tk", "must exceed t0"));
    }
    let traj = Trajectory::new(&model, t0, tk, DEFAULT_PROPAGATOR_TOL)?;
    let report = match args.candidate {
        Some(c) => {
            if !(c >= t0 && c <= tk) {
                return Err(CliError::usage("--candidate", format!("must lie in [{t0}, {tk}]")));
            }
            defect_rel(&model, t0, tk, c, |s| traj.at(s))?
        }
        None => solve_mvt_time(&model, t0, tk, |s| traj.at(s))?,
    };
    let mut table = ResultTable::new([
        ("t0", ColumnKind::Real),
        ("t_k", ColumnKind::Real),
        ("t_candidate", ColumnKind::Real),
        ("defect_rel", ColumnKind::Real),
    ]);
    table.push(vec![
        Value::Real(t0),
        Value::Real(tk),
        Value::Real(report.t_candidate),
        Value::Real(report.defect_rel),
    ]);
    emit_table(&table, &args.out, &OutputFormat::Csv)?;
    Ok(format!(
        "mean-value defect on [{t0}, {tk}] at t={}: {:e}",
        report.t_candidate, report.defect_rel
    ))
}

fn format_for(svg: &Option<std::path::PathBuf>, plot: PlotSpec) -> OutputFormat {
    match svg {
        Some(p) => OutputFormat::CsvSvg {
            svg_path: p.clone(),
            plot,
        },
        None => OutputFormat::Csv,
    }
}

pub fn sweep(args: &SweepArgs) -> Result<String, CliError> {
    let model = load_model_config(&args.model)?;
    if args.values.is_empty() {
        return Err(CliError::usage("--values", "at least one value is required"));
    }
    if let Some(bad) = args.values.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
        return Err(CliError::usage("--values", format!("coupling {bad} must be positive")));
    }
    match args.probe {
        ProbeArg::TermScaling => term_scaling(args, &model),
        ProbeArg::OrderError => order_error(args, &model),
    }
}

fn default_grid(model: &HamiltonianModel) -> (Vec<f64>, f64) {
    let (lo, hi) = model.window();
    let span = hi - lo;
    let times = (0..6).map(|i| lo + span * (6 - i) as f64 / 6.0).collect();
    (times, lo + span / 12.0)
}

fn term_scaling(args: &SweepArgs, model: &HamiltonianModel) -> Result<String, CliError> {
    let t0 = model.window().0;
    let (times, target) = match (&args.grid, args.target) {
        (Some(g), Some(t)) => (g.clone(), t),
        (Some(g), None) => {
            let last = g.last().copied().unwrap_or(t0);
            (g.clone(), t0 + 0.5 * (last - t0))
        }
        (None, _) => default_grid(model),
    };
    for &t in &times {
        time_arg(model, "--grid", t)?;
    }
    time_arg(model, "--target", target)?;
    let grid = TimeGrid::with_target(t0, &times, target).map_err(|e| CliError::usage("--grid", e))?;
    let g_ref = args.values[0];
    let base = model.with_coupling(g_ref)?;
    let chunks = args
        .values
        .par_iter()
        .map(|&g| term_scaling_probe(&base, &grid, &[g / g_ref]))
        .collect::<Result<Vec<_>, _>>()?;

    let mut table = ResultTable::new([
        ("g", ColumnKind::Real),
        ("j", ColumnKind::Int),
        ("term_norm", ColumnKind::Real),
        ("ratio", ColumnKind::Real),
        ("expected", ColumnKind::Real),
    ]);
    let mut worst: f64 = 0.0;
    for row in chunks.into_iter().flatten() {
        worst = worst.max((row.ratio - row.expected).abs());
        table.push(vec![
            Value::Real(row.coupling),
            Value::Int(row.j as i64),
            Value::Real(row.norm),
            Value::Real(row.ratio),
            Value::Real(row.expected),
        ]);
    }
    let plot = PlotSpec {
        x: "j".into(),
        y: "term_norm".into(),
        series: Some("g".into()),
        log_x: false,
        log_y: true,
        title: "strong-coupling term norms".into(),
    };
    emit_table(&table, &args.out, &format_for(&args.svg, plot))?;
    Ok(format!(
        "term-scaling over {} couplings, {} terms each: max |ratio - (g/g_ref)^-j| = {:e}",
        args.values.len(),
        grid.len() - 1,
        worst
    ))
}

fn order_error(args: &SweepArgs, model: &HamiltonianModel) -> Result<String, CliError> {
    let (lo, hi) = model.window();
    let t = match args.t {
        Some(t) => time_arg(model, "--t", t)?,
        None => (lo + 1.0).min(hi),
    };
    if args.order > scx_core::propagator::MAX_DYSON_ORDER {
        return Err(CliError::usage("--order", format!("at most {}", scx_core::propagator::MAX_DYSON_ORDER)));
    }
    let per_g = args
        .values
        .par_iter()
        .map(|&g| -> Result<_, CliError> {
            let m = model.with_coupling(g)?;
            let u = exact_propagator(&m, t, lo, DEFAULT_PROPAGATOR_TOL)?.u;
            Ok((g, dyson_expansion(&m, t, lo, args.order)?.with_reference(u)))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut table = ResultTable::new([
        ("m", ColumnKind::Int),
        ("g", ColumnKind::Real),
        ("term_norm", ColumnKind::Real),
        ("error", ColumnKind::Real),
    ]);
    for m in 0..=args.order {
        for (g, series) in &per_g {
            let errors = series.errors.as_ref().expect("reference attached");
            table.push(vec![
                Value::Int(m as i64),
                Value::Real(*g),
                Value::Real(series.term_norms[m]),
                Value::Real(errors[m]),
            ]);
        }
    }
    let plot = PlotSpec {
        x: "g".into(),
        y: "error".into(),
        series: Some("m".into()),
        log_x: true,
        log_y: true,
        title: "Dyson partial-sum error".into(),
    };
    emit_table(&table, &args.out, &format_for(&args.svg, plot))?;
    Ok(format!(
        "order-error over {} couplings at t={t}, orders 0..={}",
        args.values.len(),
        args.order
    ))
}
