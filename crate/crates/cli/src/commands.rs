use std::fs::File;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;
use wbasis::diffmatrix::{
    dense_diff_matrix, dense_diff_matrix_closed, generalized_hermite_iota, iota, iota_check, konoplev_iota_check_30,
    power_section, separability_scan,
};
use wbasis::expansion::{
    error_report_with, expand_with, Basis, DerivativeMode, ErrorReportOptions, Grid, PhiRule, TestFunction,
};
use wbasis::fastops::FastProductPlan;
use wbasis::io::{fmt_f64, write_error_rows, write_json, write_matrix_csv, write_section, write_vector_csv};
use wbasis::{FamilyKind, WeightFamily};

use crate::{
    check_domain, BasisArg, Command, DmatArgs, ErrplotArgs, ExpandArgs, Format, MatvecArgs, ModeArg, OutputOpts,
    PhiRuleArg, PowersGrowthArgs, SeparabilityArgs, Table45Args,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<wbasis::Error> for CliError {
    fn from(e: wbasis::Error) -> Self {
        if e.is_config_error() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Dmat(a) => dmat(a),
        Command::Matvec(a) => matvec(a),
        Command::Expand(a) => expand(a),
        Command::Errplot(a) => errplot(a),
        Command::Separability(a) => separability(a),
        Command::PowersGrowth(a) => powers_growth(a),
        Command::Table45(a) => table45(a),
    }
}

/// Writes to the chosen file or to stdout.
fn emit(output: &OutputOpts, write: impl FnOnce(&mut dyn Write) -> wbasis::Result<()>) -> CliResult {
    match &output.out {
        Some(path) => write(&mut File::create(path)?)?,
        None => write(&mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn emit_json(output: &OutputOpts, value: &serde_json::Value) -> CliResult {
    emit(output, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}

fn sidecar(output: &OutputOpts, value: &serde_json::Value) -> CliResult {
    if let (Some(path), Format::Csv) = (&output.out, output.format) {
        write_json(value, &path.with_extension("json"))?;
    }
    Ok(())
}

fn basis(b: BasisArg) -> Basis {
    match b {
        BasisArg::P => Basis::P,
        BasisArg::Phi => Basis::Phi,
    }
}

fn phi_rule(r: PhiRuleArg) -> PhiRule {
    match r {
        PhiRuleArg::Sqrt => PhiRule::SqrtWeight,
        PhiRuleArg::Weight => PhiRule::Weight,
    }
}

fn dmat(a: DmatArgs) -> CliResult {
    let fam = a.family.resolve()?;
    if a.s == 0 {
        return Err(CliError::config("--s must be at least 1"));
    }
    let section = power_section(fam, a.s, a.display, a.internal)?;
    if a.verify {
        let d = section.entries();
        let sign = if a.s % 2 == 1 { 1.0 } else { -1.0 };
        let residual = (0..d.rows())
            .flat_map(|i| (0..d.cols()).map(move |j| (i, j)))
            .map(|(i, j)| (d.get(i, j) + sign * d.get(j, i)).abs())
            .fold(0.0, f64::max);
        let tol = 1e-12 * section.max_abs().max(1.0);
        if residual > tol {
            return Err(CliError::Numerical(format!("symmetry check failed: residual {residual:e} > {tol:e}")));
        }
        eprintln!("verify: symmetry residual {residual:e}");
    }
    match (a.output.format, &a.output.out) {
        (Format::Json, _) => {
            let rows: Vec<&[f64]> = (0..section.rows()).map(|i| section.entries().row(i)).collect();
            emit_json(&a.output, &json!({ "meta": section.meta(), "entries": rows }))
        }
        (Format::Csv, Some(path)) => Ok(write_section(&section, path)?),
        (Format::Csv, None) => emit(&a.output, |w| write_matrix_csv(section.entries(), w)),
    }
}

fn matvec(a: MatvecArgs) -> CliResult {
    let fam = a.family.resolve()?;
    if a.m > a.n {
        return Err(CliError::config(format!("--M ({}) must not exceed --N ({})", a.m, a.n)));
    }
    if a.r == 0 {
        return Err(CliError::config("--r must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let f: Vec<f64> = (0..=a.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (h, method, flops) = match FastProductPlan::for_family(fam, a.m, a.n) {
        Ok(plan) => {
            let mut plan = plan.with_zero_padding(a.zero_pad);
            let h = plan.apply_power(&f, a.r)?;
            (h, "fast", Some(plan.flops()))
        }
        Err(wbasis::Error::Unsupported(_)) => {
            let d = dense_diff_matrix(fam, a.n, a.n)?.into_entries();
            let mut h = (0..a.r).fold(f.clone(), |v, _| d.matvec(&v));
            h.truncate(a.m + 1);
            (h, "dense", None)
        }
        Err(e) => return Err(e.into()),
    };
    let mut meta = json!({
        "family": fam, "M": a.m, "N": a.n, "r": a.r, "seed": a.seed, "method": method, "flops": flops,
    });
    if a.verify && method == "fast" {
        let d = dense_diff_matrix_closed(fam, a.n, a.n)?.into_entries();
        let dense = (0..a.r).fold(f.clone(), |v, _| d.matvec(&v));
        let scale = dense[..=a.m].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = h.iter().zip(&dense).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let rel = if scale > 0.0 { err / scale } else { err };
        meta["verify_max_rel_err"] = json!(rel);
        let tol = if a.r == 1 { 1e-13 } else { 1e-11 };
        if rel > tol {
            return Err(CliError::Numerical(format!("fast and dense products differ: {rel:e} > {tol:e}")));
        }
    }
    match a.output.format {
        Format::Json => {
            meta["h"] = json!(h);
            emit_json(&a.output, &meta)
        }
        Format::Csv => {
            emit(&a.output, |w| write_vector_csv("h", &h, w))?;
            sidecar(&a.output, &meta)
        }
    }
}

fn expand(a: ExpandArgs) -> CliResult {
    let fam = a.family.resolve()?;
    let f = a.func.test_function();
    check_domain(f, fam)?;
    let c = expand_with(&f, basis(a.basis), fam, a.n, phi_rule(a.phi_rule))?;
    let meta = json!({ "family": fam, "func": f.id(), "basis": c.basis().to_string(), "N": a.n });
    match a.output.format {
        Format::Json => {
            let mut v = meta;
            v["coefficients"] = json!(c.values());
            emit_json(&a.output, &v)
        }
        Format::Csv => {
            emit(&a.output, |w| write_vector_csv("coefficient", c.values(), w))?;
            sidecar(&a.output, &meta)
        }
    }
}

fn errplot(a: ErrplotArgs) -> CliResult {
    let fam = a.family.resolve()?;
    let f = a.func.test_function();
    check_domain(f, fam)?;
    if a.deriv > 2 {
        return Err(CliError::config("--deriv must be 0, 1 or 2"));
    }
    if a.n.is_empty() {
        return Err(CliError::config("--N needs at least one value"));
    }
    let grid = match &a.grid {
        Some(g) => g.parse::<Grid>()?,
        None => Grid::default_for(fam),
    };
    let points: Vec<f64> = grid.points().collect();
    let mode = match a.mode {
        ModeArg::Partial => DerivativeMode::PartialSum,
        ModeArg::Expand => DerivativeMode::ExpandDerivative,
        ModeArg::Matrix => DerivativeMode::ViaMatrix { extra: a.extra },
    };
    let opts = ErrorReportOptions { phi_rule: phi_rule(a.phi_rule), mode, ..Default::default() };
    let rows = error_report_with(f, fam, basis(a.basis), &a.n, &points, a.deriv, &opts)?;
    match a.output.format {
        Format::Json => emit_json(&a.output, &json!({ "func": f.id(), "grid": [grid.a, grid.b, grid.n], "rows": rows })),
        Format::Csv => {
            emit(&a.output, |w| write_error_rows(&rows, w))?;
            sidecar(&a.output, &json!({ "family": fam, "func": f.id(), "grid": [grid.a, grid.b, grid.n] }))
        }
    }
}

fn separability(a: SeparabilityArgs) -> CliResult {
    let fam = a.family.resolve()?;
    if a.n < 5 {
        return Err(CliError::config("--N must be at least 5"));
    }
    let d = dense_diff_matrix(fam, a.n, a.n)?;
    let report = separability_scan(&d)?;
    let verdict = if report.separable {
        "separable"
    } else if report.symmetric_separable {
        "symmetrically separable"
    } else {
        "non-separable"
    };
    let mut value = json!({ "family": fam, "verdict": verdict, "report": report });
    match fam.kind() {
        FamilyKind::GeneralizedHermite => {
            value["iota_2_1"] = json!(iota(&d, 2, 1)?);
            value["iota_2_1_closed_form"] = json!(generalized_hermite_iota(fam.mu(), 1));
        }
        FamilyKind::Konoplev => {
            value["iota_check_3_0"] = json!(iota_check(&d, 3, 0)?);
            value["iota_check_3_0_closed_form"] = json!(konoplev_iota_check_30(fam.alpha(), fam.gamma()));
        }
        _ => {}
    }
    match a.output.format {
        Format::Json => emit_json(&a.output, &value),
        Format::Csv => emit(&a.output, |w| {
            writeln!(w, "key,value")?;
            writeln!(w, "verdict,{verdict}")?;
            for (k, v) in [
                ("max_abs", report.max_abs),
                ("max_iota", report.max_iota),
                ("max_iota_check", report.max_iota_check),
                ("max_even_entry", report.max_even_entry),
                ("tolerance", report.tolerance),
            ] {
                writeln!(w, "{k},{}", fmt_f64(v))?;
            }
            for key in ["iota_2_1", "iota_2_1_closed_form", "iota_check_3_0", "iota_check_3_0_closed_form"] {
                if let Some(v) = value[key].as_f64() {
                    writeln!(w, "{key},{}", fmt_f64(v))?;
                }
            }
            Ok(())
        }),
    }
}

fn powers_growth(a: PowersGrowthArgs) -> CliResult {
    let fam = a.family.resolve()?;
    if a.s == 0 {
        return Err(CliError::config("--s must be at least 1"));
    }
    let maxima = a
        .internal
        .iter()
        .map(|&k| power_section(fam, a.s, a.display, k).map(|s| (k, s.max_abs())))
        .collect::<wbasis::Result<Vec<_>>>()?;
    let rows: Vec<serde_json::Value> = maxima
        .iter()
        .enumerate()
        .map(|(i, &(k, m))| {
            let change = if i == 0 { 0.0 } else { (m - maxima[i - 1].1) / maxima[i - 1].1 };
            json!({ "internal": k, "max_abs": m, "relative_change": change })
        })
        .collect();
    match a.output.format {
        Format::Json => emit_json(&a.output, &json!({ "family": fam, "s": a.s, "display": a.display, "rows": rows })),
        Format::Csv => emit(&a.output, |w| {
            writeln!(w, "internal,max_abs,relative_change")?;
            for r in &rows {
                writeln!(
                    w,
                    "{},{},{}",
                    r["internal"],
                    fmt_f64(r["max_abs"].as_f64().unwrap_or(f64::NAN)),
                    fmt_f64(r["relative_change"].as_f64().unwrap_or(f64::NAN))
                )?;
            }
            Ok(())
        }),
    }
}

fn table45(a: Table45Args) -> CliResult {
    let alphas = [1.0, 2.0, 3.0, 4.0];
    let mut table = vec![[0.0; 4]; 3];
    for (j, &alpha) in alphas.iter().enumerate() {
        let fam = WeightFamily::laguerre(alpha)?;
        for (k, row) in table.iter_mut().enumerate() {
            let opts = ErrorReportOptions::default();
            row[j] = error_report_with(TestFunction::Lag2, fam, Basis::Phi, &[a.n], &[0.0], k, &opts)?[0].sup_err;
        }
    }
    match a.output.format {
        Format::Json => emit_json(&a.output, &json!({ "eta": wbasis::expansion::ETA, "N": a.n, "alpha": alphas, "errors": table })),
        Format::Csv => emit(&a.output, |w| {
            writeln!(w, "deriv,alpha=1,alpha=2,alpha=3,alpha=4")?;
            for (k, row) in table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
                writeln!(w, "{k},{}", cells.join(","))?;
            }
            Ok(())
        }),
    }
}
