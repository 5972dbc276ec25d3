//! Command-line front end. [`run`] does all the work so the binary and the
//! tests share one entry point.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use collin_core::collinearity::{diagnose, DEFAULT_THRESHOLD};
use collin_core::inference::{decision_table, Rule, DEFAULT_ALPHA};
use collin_core::io::{load_csv, to_sorted_json, write_series_csv, FitSummary, Provenance, ReportDocument};
use collin_core::selection::{compare_models, select, Direction};
use collin_core::simulation::{
    find_threshold_k, median_threshold_k, replicate, run_example, run_figure_experiment, Design, ExperimentConfig,
    Measure, X32Form,
};
use collin_core::tables::{format_grid, standard_grid, Factor};
use collin_core::{fit_ols, Error};

pub const THREADS_ENV: &str = "COLLIN_THREADS";

#[derive(Parser, Debug)]
#[command(name = "collin", version, about = "Multicollinearity diagnostics for linear regression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit the full model and report VIF, aVIF, condition number and the
    /// classic/adjusted decision table as JSON.
    Diagnose(DiagnoseArgs),
    /// Run backward elimination or forward selection under one rule.
    Select(SelectArgs),
    /// Run a seeded threshold-k sweep and print the result as JSON.
    Simulate(SimulateArgs),
    /// Print a grid of a(n,k), b(n,k) or sqrt(a(n,k)).
    Tables(TablesArgs),
    /// Print the max VIF / max aVIF series of one independent-normals sweep
    /// as CSV.
    Figures(FiguresArgs),
    /// Run the simulated 35-coefficient example end to end.
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
struct DiagnoseArgs {
    csv: PathBuf,
    #[arg(long)]
    response: String,
    #[arg(long, default_value_t = DEFAULT_ALPHA, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_positive)]
    threshold: f64,
}

#[derive(Args, Debug)]
struct SelectArgs {
    csv: PathBuf,
    #[arg(long)]
    response: String,
    #[arg(long, value_enum)]
    rule: RuleArg,
    #[arg(long, value_enum, default_value_t = DirectionArg::Backward)]
    direction: DirectionArg,
    #[arg(long, default_value_t = DEFAULT_ALPHA, value_parser = parse_alpha)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    design: DesignArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, value_parser = parse_gamma)]
    gamma: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MeasureArg::Vif)]
    measure: MeasureArg,
    /// Largest number of predictors in the sweep (design default otherwise).
    #[arg(long)]
    max_predictors: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_positive)]
    threshold: f64,
    /// Independent sweeps seeded from `--seed`; above 1 the output lists
    /// every threshold_k and their median.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    replicates: u32,
    /// Use 4*X2 - 3*X3 + X5 instead of the product form for X32.
    #[arg(long)]
    additive_x32: bool,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_enum)]
    what: WhatArg,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    max_predictors: Option<usize>,
}

#[derive(Args, Debug)]
struct ExampleArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long)]
    additive_x32: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    Classic,
    Adjusted,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Backward,
    Forward,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DesignArg {
    Indep,
    Gamma,
    Example,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeasureArg {
    Vif,
    Avif,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhatArg {
    A,
    B,
    SqrtA,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("must lie in (0, 1), got {v}"))
    }
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must lie in [0, 1), got {v}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

/// Exit status for failures that are not usage errors.
#[derive(Debug)]
enum Failure {
    Data(Error),
    Output(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 1 on a usage error, 2 on a data error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Sizes the global rayon pool from `COLLIN_THREADS` when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Diagnose(a) => cmd_diagnose(a, out),
        Command::Select(a) => cmd_select(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Tables(a) => cmd_tables(a, out),
        Command::Figures(a) => cmd_figures(a, out),
        Command::Example(a) => cmd_example(a, out),
    }
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = to_sorted_json(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_diagnose(a: DiagnoseArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let data = load_csv(&a.csv, &a.response)?;
    let fit = fit_ols(&data)?;
    let collinearity = diagnose(&data, a.threshold)?;
    let decisions = decision_table(&fit, a.alpha)?;
    let mut notes = Vec::new();
    if !collinearity.flagged_by_vif_only.is_empty() {
        notes.push(format!(
            "flagged by VIF but not by aVIF: {}",
            collinearity.flagged_by_vif_only.join(", ")
        ));
    }
    let settings = format!("diagnose response={} alpha={} threshold={}", a.response, a.alpha, a.threshold);
    let doc = ReportDocument {
        fit: FitSummary::from(&fit),
        collinearity,
        decisions,
        selection: None,
        comparison: None,
        notes,
        provenance: Provenance::new(None, &settings),
    };
    writeln!(out, "{}", doc.to_json()?)?;
    Ok(())
}

fn cmd_select(a: SelectArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let data = load_csv(&a.csv, &a.response)?;
    let rule = match a.rule {
        RuleArg::Classic => Rule::Classic,
        RuleArg::Adjusted => Rule::Adjusted,
    };
    let direction = match a.direction {
        DirectionArg::Backward => Direction::Backward,
        DirectionArg::Forward => Direction::Forward,
    };
    let initial = fit_ols(&data)?;
    let collinearity = diagnose(&data, DEFAULT_THRESHOLD)?;
    let trace = select(&data, direction, rule, a.alpha)?;
    let decisions = decision_table(&trace.final_fit, a.alpha)?;
    let comparison = compare_models(&[("full", &initial), ("selected", &trace.final_fit)])?;
    let settings = format!(
        "select response={} rule={rule} direction={direction:?} alpha={}",
        a.response, a.alpha
    );
    let doc = ReportDocument {
        fit: FitSummary::from(&trace.final_fit),
        collinearity,
        decisions,
        selection: Some(trace),
        comparison: Some(comparison),
        notes: vec!["collinearity describes the full model; fit and decisions describe the selected model".into()],
        provenance: Provenance::new(None, &settings),
    };
    writeln!(out, "{}", doc.to_json()?)?;
    Ok(())
}

fn cmd_simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let design = match a.design {
        DesignArg::Indep => Design::IndependentNormals,
        DesignArg::Gamma => Design::GammaCorrelated,
        DesignArg::Example => Design::ExampleModel,
    };
    let measure = match a.measure {
        MeasureArg::Vif => Measure::Vif,
        MeasureArg::Avif => Measure::Avif,
    };
    let mut config = ExperimentConfig::new(design, a.n, a.seed)
        .with_gamma(a.gamma)
        .with_measure(measure);
    if let Some(p) = a.max_predictors {
        config = config.with_max_predictors(p);
    }
    config.threshold = a.threshold;
    if a.additive_x32 {
        config.x32_form = X32Form::Additive;
    }
    if a.replicates == 1 {
        return emit_json(out, &find_threshold_k(&config)?);
    }
    let runs = replicate(&config, a.replicates as usize)?;
    let ks: Vec<Option<usize>> = runs.iter().map(|r| r.threshold_k).collect();
    let seeds: Vec<u64> = runs.iter().map(|r| r.seed).collect();
    emit_json(
        out,
        &json!({
            "config": config,
            "replicates": a.replicates,
            "seeds": seeds,
            "threshold_k": ks,
            "median_threshold_k": median_threshold_k(&ks),
        }),
    )
}

fn cmd_tables(a: TablesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let factor = match a.what {
        WhatArg::A => Factor::A,
        WhatArg::B => Factor::B,
        WhatArg::SqrtA => Factor::SqrtA,
    };
    out.write_all(format_grid(&standard_grid(factor)).as_bytes())?;
    Ok(())
}

fn cmd_figures(a: FiguresArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut config = ExperimentConfig::new(Design::IndependentNormals, a.n, a.seed);
    if let Some(p) = a.max_predictors {
        config = config.with_max_predictors(p);
    }
    let (vif, _) = run_figure_experiment(&config)?;
    write_series_csv(out, &vif)?;
    Ok(())
}

fn cmd_example(a: ExampleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let form = if a.additive_x32 {
        X32Form::Additive
    } else {
        X32Form::Product
    };
    emit_json(out, &run_example(a.n, a.seed, a.alpha, form)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("collin").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("diagnose"));
    }

    #[test]
    fn bad_value_names_the_flag() {
        let (code, _, err) = run_str(&["simulate", "--design", "gamma", "--n", "25", "--gamma", "1.5", "--seed", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("--gamma"));
    }

    #[test]
    fn alpha_range() {
        assert!(parse_alpha("0.05").is_ok());
        assert!(parse_alpha("0").is_err());
        assert!(parse_alpha("x").is_err());
    }
}
