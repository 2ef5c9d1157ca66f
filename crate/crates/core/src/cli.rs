//! Command-line front end: writes the survey figures as CSV tables with
//! companion gnuplot scripts, and runs free-form one-parameter sweeps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::condensate::{
    condensate_energy, critical_kappa, hole_threshold, robin_matching_residual, robin_thresholds,
    solve_delta, solve_hole, solve_robin,
};
use crate::ellipj::EllipticModulus;
use crate::error::Error;
use crate::forces::{condensate_force, total_force_with, Background};
use crate::meanfield::{bound_state, meanfield_energy};
use crate::models::{ModelConfig, PhysicalParams};
use crate::spectrum::{
    vacuum_energy_renormalized_with, vacuum_energy_subcritical, FluctuationPotential,
    SpectrumOptions,
};

#[derive(Debug, Parser)]
#[command(
    name = "gpcas",
    version,
    about = "Condensate solutions, vacuum energy, and forces for a 1-D field with an unstable mode"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Overrides {
    /// Field mass (default 1).
    #[arg(long, global = true)]
    m: Option<f64>,
    /// Self-coupling (default 1).
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Boundary or background strength.
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Interval length.
    #[arg(long = "L", global = true)]
    length: Option<f64>,
    /// Hole depth.
    #[arg(long = "U0", global = true)]
    depth: Option<f64>,
    /// Hole width.
    #[arg(long = "R", global = true)]
    width: Option<f64>,
    /// Absolute tolerance of the frequency quadrature.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Frequency cutoff in units of m.
    #[arg(long, global = true)]
    cutoff: Option<f64>,
    /// Directory for CSV and plot-script output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with keys model, m, lambda, kappa, L, U0, R; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cap on concurrent grid evaluations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the CSV tables and plot scripts behind one survey figure.
    Figure {
        /// One of 1, 2, 3, 4a, 5, 7, Y, fluc, fluc2, or a single panel
        /// such as 3-right or fluc2-left.
        id: String,
    },
    /// Tabulate solution quantities along a one-parameter grid.
    Sweep {
        /// Parameter to vary: kappa, L, or U0.
        #[arg(long)]
        var: String,
        /// First grid value.
        #[arg(long)]
        from: f64,
        /// Last grid value, included.
        #[arg(long)]
        to: f64,
        /// Number of grid points.
        #[arg(long)]
        points: usize,
        /// Comma-separated subset of E_bs, E_cond, k, E0_ren, F_cond,
        /// F_fluct, F_total.
        #[arg(long, default_value = "E_bs,E_cond,k")]
        outputs: String,
    },
}

enum CliFailure {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        CliFailure::Run(e)
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::Run(Error::from(e))
    }
}

type CliResult<T> = std::result::Result<T, CliFailure>;

pub fn run() -> ExitCode {
    ExitCode::from(run_from(std::env::args_os()))
}

/// Testable entry point; returns the process exit code (0 success,
/// 1 computational failure, 2 usage error).
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(CliFailure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliFailure::Run(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let settings = resolve(&cli.overrides)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.overrides.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliFailure::Usage(format!("cannot size the worker pool: {e}")))?;
    let out = cli.overrides.out.as_deref();
    pool.install(|| match &cli.command {
        Command::Figure { id } => run_figure(id, &settings, out),
        Command::Sweep {
            var,
            from,
            to,
            points,
            outputs,
        } => run_sweep(var, *from, *to, *points, outputs, &settings, out),
    })
}

// ---------------------------------------------------------------- settings

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ModelChoice {
    Delta,
    Robin,
    Hole,
}

#[derive(Debug, Clone, Copy)]
struct Settings {
    m: f64,
    lambda: f64,
    kappa: Option<f64>,
    length: Option<f64>,
    depth: Option<f64>,
    width: Option<f64>,
    model: Option<ModelChoice>,
    spectrum: SpectrumOptions,
}

impl Settings {
    fn params(&self) -> CliResult<PhysicalParams> {
        PhysicalParams::new(self.m, self.lambda).map_err(CliFailure::from)
    }
}

#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<String>,
    m: Option<f64>,
    lambda: Option<f64>,
    kappa: Option<f64>,
    #[serde(rename = "L")]
    length: Option<f64>,
    #[serde(rename = "U0")]
    depth: Option<f64>,
    #[serde(rename = "R")]
    width: Option<f64>,
}

fn resolve(o: &Overrides) -> CliResult<Settings> {
    let file = match &o.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliFailure::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str::<FileConfig>(&text).map_err(|e| {
                CliFailure::Usage(format!("invalid config {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };
    let model = file
        .model
        .as_deref()
        .map(|name| match name {
            "delta" => Ok(ModelChoice::Delta),
            "robin" => Ok(ModelChoice::Robin),
            "hole" => Ok(ModelChoice::Hole),
            other => Err(CliFailure::Usage(format!("unknown model '{other}'"))),
        })
        .transpose()?;
    let mut spectrum = SpectrumOptions::default();
    if let Some(cutoff) = o.cutoff {
        spectrum.cutoff = cutoff;
    }
    if let Some(tol) = o.tol {
        spectrum.tol = tol;
    }
    let settings = Settings {
        m: o.m.or(file.m).unwrap_or(1.0),
        lambda: o.lambda.or(file.lambda).unwrap_or(1.0),
        kappa: o.kappa.or(file.kappa),
        length: o.length.or(file.length),
        depth: o.depth.or(file.depth),
        width: o.width.or(file.width),
        model,
        spectrum,
    };
    settings.params()?;
    Ok(settings)
}

// ------------------------------------------------------------------ tables

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Subcritical,
    KGap,
    Failed,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Subcritical => "subcritical",
            Status::KGap => "kgap",
            Status::Failed => "error",
        }
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::KGap(_) => Status::KGap,
        Error::NoCriticalMode(_) | Error::CriticalWithoutCondensate(_) => Status::Subcritical,
        _ => Status::Failed,
    }
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

fn cell(v: Option<f64>) -> String {
    v.map(num).unwrap_or_else(|| "NA".to_string())
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn csv(&self) -> String {
        let mut text = self.header.join(",");
        text.push('\n');
        for row in &self.rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        text
    }
}

fn headers(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Turns a whole-row result into CSV cells plus the status column.
fn finish_row(r: Result<Vec<Option<f64>>, Error>, width: usize) -> Vec<String> {
    match r {
        Ok(cells) => {
            let mut row: Vec<String> = cells.into_iter().map(cell).collect();
            row.push(Status::Ok.label().to_string());
            row
        }
        Err(e) => {
            let mut row = vec!["NA".to_string(); width];
            row.push(status_of(&e).label().to_string());
            row
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn plot_script(stem: &str, xlabel: &str, ylabel: &str, table: &Table) -> String {
    let ncols = table.header.len();
    let last = if table.header.last().map(String::as_str) == Some("status") {
        ncols - 1
    } else {
        ncols
    };
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile missing 'NA'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{xlabel}'\n"));
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    s.push_str("plot ");
    for (i, col) in (2..=last).enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&format!("'{stem}.csv' using 1:{col} with lines"));
    }
    s.push('\n');
    s
}

// ----------------------------------------------------------------- figures

struct Panel {
    xlabel: &'static str,
    ylabel: &'static str,
    table: Table,
}

fn panel_list(raw: &str) -> Option<Vec<&'static str>> {
    let low = raw.trim().to_ascii_lowercase();
    let id = low.strip_prefix("fig").unwrap_or(&low);
    let list = |v: &[&'static str]| Some(v.to_vec());
    match id {
        "1" => list(&["fig1"]),
        "2" => list(&["fig2-left", "fig2-right"]),
        "2-left" => list(&["fig2-left"]),
        "2-right" => list(&["fig2-right"]),
        "3" => list(&["fig3-left", "fig3-right"]),
        "3-left" => list(&["fig3-left"]),
        "3-right" => list(&["fig3-right"]),
        "4a" => list(&["fig4a-left", "fig4a-right"]),
        "4a-left" => list(&["fig4a-left"]),
        "4a-right" => list(&["fig4a-right"]),
        "5" => list(&["fig5-left", "fig5-right"]),
        "5-left" => list(&["fig5-left"]),
        "5-right" => list(&["fig5-right"]),
        "7" => list(&["fig7-left", "fig7-right"]),
        "7-left" => list(&["fig7-left"]),
        "7-right" => list(&["fig7-right"]),
        "y" => list(&["figY"]),
        "fluc" => list(&[
            "fluc-upper-left",
            "fluc-upper-right",
            "fluc-lower-left",
            "fluc-lower-right",
        ]),
        "fluc-upper-left" => list(&["fluc-upper-left"]),
        "fluc-upper-right" => list(&["fluc-upper-right"]),
        "fluc-lower-left" => list(&["fluc-lower-left"]),
        "fluc-lower-right" => list(&["fluc-lower-right"]),
        "fluc2" => list(&["fluc2-left", "fluc2-right"]),
        "fluc2-left" => list(&["fluc2-left"]),
        "fluc2-right" => list(&["fluc2-right"]),
        _ => None,
    }
}

fn run_figure(id: &str, s: &Settings, out: Option<&Path>) -> CliResult<()> {
    let stems =
        panel_list(id).ok_or_else(|| CliFailure::Usage(format!("unknown figure id '{id}'")))?;
    let dir = out.unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir).map_err(Error::from)?;
    for stem in stems {
        let panel = render_panel(stem, s)?;
        let csv_path = dir.join(format!("{stem}.csv"));
        std::fs::write(&csv_path, panel.table.csv()).map_err(Error::from)?;
        let gp_path = dir.join(format!("{stem}.gp"));
        std::fs::write(
            &gp_path,
            plot_script(stem, panel.xlabel, panel.ylabel, &panel.table),
        )
        .map_err(Error::from)?;
        println!("wrote {}", csv_path.display());
        println!("wrote {}", gp_path.display());
    }
    Ok(())
}

fn render_panel(stem: &str, s: &Settings) -> CliResult<Panel> {
    let params = s.params()?;
    match stem {
        "fig1" => fig1(s, params),
        "fig2-left" => fig2_left(s, params),
        "fig2-right" => fig2_right(s, params),
        "fig3-left" => residual_curves(s, params, GapSide::Lower),
        "fig3-right" => fig3_right(s, params),
        "fig4a-left" => fig4a_left(s, params),
        "fig4a-right" => fig4a_right(s, params),
        "fig5-left" => residual_curves(s, params, GapSide::Upper),
        "fig5-right" => fig5_right(s, params),
        "fig7-left" => fig7_left(s, params),
        "fig7-right" => fig7_right(s, params),
        "figY" => fig_y(s, params),
        "fluc-upper-left" => fluc_upper_left(s, params),
        "fluc-upper-right" => fluc_upper_right(s, params),
        "fluc-lower-left" => fluc_lower_left(s, params),
        "fluc-lower-right" => fluc_lower_right(s, params),
        "fluc2-left" => fluc2_left(s, params),
        "fluc2-right" => fluc2_right(s, params),
        other => Err(CliFailure::Usage(format!("unknown panel '{other}'"))),
    }
}

fn fig1(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let grid = linspace(1.02 * s.m, 3.0 * s.m, 50);
    let rows = grid
        .par_iter()
        .map(|&kappa| -> Result<Vec<String>, Error> {
            let cfg = ModelConfig::Delta { kappa };
            let e_bs = meanfield_energy(&bound_state(cfg, params)?);
            let e_cond = condensate_energy(&solve_delta(cfg, params)?);
            Ok(vec![num(kappa), num(e_bs), num(e_cond)])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Panel {
        xlabel: "kappa",
        ylabel: "energy",
        table: Table {
            header: headers(&["kappa", "E_bs", "E_cond"]),
            rows,
        },
    })
}

fn fig2_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let upper = upper_window(kappa, s.m)?;
    let rows = upper
        .par_iter()
        .map(|&length| {
            let r = condensate_force(ModelConfig::RobinDirichlet { kappa, length }, params)
                .map(|rep| vec![Some(rep.f_cond)]);
            let mut row = vec![num(length)];
            row.extend(finish_row(r, 1));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "force",
        table: Table {
            header: headers(&["L", "F_cond", "status"]),
            rows,
        },
    })
}

fn fig2_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let width = s.width.unwrap_or(1.0 / s.m);
    let u0c = hole_threshold(width, s.m)?;
    let grid = linspace(u0c + 0.05 * s.m * s.m, 10.0 * s.m * s.m, 40);
    let rows = grid
        .par_iter()
        .map(|&depth| {
            let r = solve_hole(ModelConfig::PotentialHole { depth, width }, params)
                .map(|sol| vec![sol.modulus()]);
            let mut row = vec![num(depth)];
            row.extend(finish_row(r, 1));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "U0",
        ylabel: "k",
        table: Table {
            header: headers(&["U0", "k", "status"]),
            rows,
        },
    })
}

#[derive(Clone, Copy)]
enum GapSide {
    /// Lengths straddling the first solution window (L0, L1).
    Lower,
    /// Lengths inside the gap (L1, L2), where the residual has no zero.
    Upper,
}

fn residual_curves(s: &Settings, params: PhysicalParams, side: GapSide) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let th = robin_thresholds(kappa, s.m)?;
    let (l1, l2) = both_gap_edges(&th, kappa)?;
    let lengths: Vec<f64> = match side {
        GapSide::Lower => {
            let span = l1 - th.l0;
            [-0.22, 0.05, 0.28, 0.52, 0.75, 1.10]
                .iter()
                .map(|f| th.l0 + f * span)
                .collect()
        }
        GapSide::Upper => {
            let span = l2 - l1;
            [0.13, 0.31, 0.49, 0.67, 0.85, 0.995]
                .iter()
                .map(|f| l1 + f * span)
                .collect()
        }
    };
    let mut header = vec!["k".to_string()];
    header.extend(lengths.iter().map(|l| format!("res_L{l:.6}")));
    let ks = linspace(0.0, 1.0, 200);
    let rows = ks
        .par_iter()
        .map(|&k| -> Result<Vec<String>, Error> {
            let modulus = EllipticModulus::new(k)?;
            let mut row = vec![num(k)];
            for &length in &lengths {
                let cfg = ModelConfig::RobinDirichlet { kappa, length };
                row.push(cell(robin_matching_residual(modulus, cfg, params).ok()));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Panel {
        xlabel: "k",
        ylabel: "matching residual",
        table: Table { header, rows },
    })
}

fn both_gap_edges(th: &crate::condensate::RobinThresholds, kappa: f64) -> CliResult<(f64, f64)> {
    match (th.l1, th.l2) {
        (Some(l1), Some(l2)) => Ok((l1, l2)),
        _ => Err(CliFailure::Run(Error::NoSolution(format!(
            "kappa = {kappa} is below sqrt(2) m: the solution windows do not split"
        )))),
    }
}

fn lower_window(s: &Settings, kappa: f64) -> CliResult<Vec<f64>> {
    let th = robin_thresholds(kappa, s.m)?;
    let (l1, _) = both_gap_edges(&th, kappa)?;
    let span = l1 - th.l0;
    Ok(linspace(th.l0 + 0.03 * span, l1 - 0.03 * span, 30))
}

fn upper_window(kappa: f64, m: f64) -> CliResult<Vec<f64>> {
    let th = robin_thresholds(kappa, m)?;
    let (_, l2) = both_gap_edges(&th, kappa)?;
    let hi = 3.0 / m;
    if l2 + 0.06 / m >= hi {
        return Err(CliFailure::Run(Error::NoSolution(format!(
            "the window above L2 = {l2} is empty before L = {hi}"
        ))));
    }
    Ok(linspace(l2 + 0.035 / m, hi, 30))
}

fn condensate_row<F>(length: f64, compute: F, width: usize) -> Vec<String>
where
    F: FnOnce() -> Result<Vec<Option<f64>>, Error>,
{
    let mut row = vec![num(length)];
    row.extend(finish_row(compute(), width));
    row
}

fn fig3_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let rows = lower_window(s, kappa)?
        .par_iter()
        .map(|&length| {
            condensate_row(
                length,
                || {
                    let sol = solve_robin(ModelConfig::RobinDirichlet { kappa, length }, params)?;
                    Ok(vec![sol.modulus()])
                },
                1,
            )
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "k",
        table: Table {
            header: headers(&["L", "k", "status"]),
            rows,
        },
    })
}

fn fig4a_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let rows = lower_window(s, kappa)?
        .par_iter()
        .map(|&length| {
            condensate_row(
                length,
                || {
                    let sol = solve_robin(ModelConfig::RobinDirichlet { kappa, length }, params)?;
                    Ok(vec![Some(condensate_energy(&sol))])
                },
                1,
            )
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "energy",
        table: Table {
            header: headers(&["L", "E_cond", "status"]),
            rows,
        },
    })
}

fn fig4a_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let rows = lower_window(s, kappa)?
        .par_iter()
        .map(|&length| {
            condensate_row(
                length,
                || {
                    let cfg = ModelConfig::RobinDirichlet { kappa, length };
                    let e_bs = meanfield_energy(&bound_state(cfg, params)?);
                    let e_cond = condensate_energy(&solve_robin(cfg, params)?);
                    Ok(vec![Some(e_bs - e_cond)])
                },
                1,
            )
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "energy difference",
        table: Table {
            header: headers(&["L", "E_diff", "status"]),
            rows,
        },
    })
}

fn fig5_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let rows = upper_window(kappa, s.m)?
        .par_iter()
        .map(|&length| {
            condensate_row(
                length,
                || {
                    let sol = solve_robin(ModelConfig::RobinDirichlet { kappa, length }, params)?;
                    Ok(vec![sol.modulus()])
                },
                1,
            )
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "k",
        table: Table {
            header: headers(&["L", "k", "status"]),
            rows,
        },
    })
}

fn fig7_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(2.0 * s.m);
    let rows = upper_window(kappa, s.m)?
        .par_iter()
        .map(|&length| {
            condensate_row(
                length,
                || {
                    let cfg = ModelConfig::RobinDirichlet { kappa, length };
                    let e_bs = meanfield_energy(&bound_state(cfg, params)?);
                    let e_cond = condensate_energy(&solve_robin(cfg, params)?);
                    Ok(vec![Some(e_bs), Some(e_cond)])
                },
                2,
            )
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "energy",
        table: Table {
            header: headers(&["L", "E_bs", "E_cond", "status"]),
            rows,
        },
    })
}

fn fig7_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let grid = linspace(1.05 * s.m, 3.0 * s.m, 40);
    let rows = grid
        .par_iter()
        .map(|&kappa| -> Result<Vec<String>, Error> {
            let th = robin_thresholds(kappa, params.m)?;
            Ok(vec![num(kappa), num(th.l0), cell(th.l1), cell(th.l2)])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Panel {
        xlabel: "kappa",
        ylabel: "L",
        table: Table {
            header: headers(&["kappa", "L0", "L1", "L2"]),
            rows,
        },
    })
}

fn fig_y(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let width = s.width.unwrap_or(1.0 / s.m);
    let u0c = hole_threshold(width, s.m)?;
    let grid = linspace(u0c + 0.05 * s.m * s.m, 10.0 * s.m * s.m, 40);
    let rows = grid
        .par_iter()
        .map(|&depth| {
            let cfg = ModelConfig::PotentialHole { depth, width };
            let r = (|| {
                let e_bs = meanfield_energy(&bound_state(cfg, params)?);
                let e_cond = condensate_energy(&solve_hole(cfg, params)?);
                Ok(vec![Some(e_bs), Some(e_cond)])
            })();
            let mut row = vec![num(depth)];
            row.extend(finish_row(r, 2));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "U0",
        ylabel: "energy",
        table: Table {
            header: headers(&["U0", "E_bs", "E_cond", "status"]),
            rows,
        },
    })
}

// ------------------------------------------------------------- fluc panels

#[derive(Clone, Copy, PartialEq)]
enum Regime {
    Subcritical,
    Marginal,
    Critical,
}

fn robin_regime(kappa: f64, length: f64, m: f64) -> Regime {
    if kappa < m {
        Regime::Subcritical
    } else if kappa <= critical_kappa(length, m) {
        Regime::Marginal
    } else {
        Regime::Critical
    }
}

fn marginal(kappa: f64, length: f64) -> Error {
    Error::NoCriticalMode(format!(
        "kappa = {kappa} has not yet reached the critical coupling at L = {length}"
    ))
}

/// Renormalized vacuum energy and condensate energy over the exact
/// condensate background.
fn critical_energies(
    params: PhysicalParams,
    kappa: f64,
    length: f64,
    opts: &SpectrumOptions,
) -> Result<(f64, f64), Error> {
    let sol = solve_robin(ModelConfig::RobinDirichlet { kappa, length }, params)?;
    let e_cond = condensate_energy(&sol);
    let v = FluctuationPotential::from_condensate(sol)?;
    let e0 = vacuum_energy_renormalized_with(&v, params, kappa, length, opts)?.e0_ren;
    Ok((e0, e_cond))
}

fn fluc_upper_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let length = s.length.unwrap_or(2.2 / s.m);
    let grid = linspace(0.2 * s.m, 2.0 * s.m, 37);
    let opts = s.spectrum;
    let rows = grid
        .par_iter()
        .map(|&kappa| {
            let r = match robin_regime(kappa, length, params.m) {
                Regime::Subcritical => vacuum_energy_subcritical(params, kappa, length)
                    .map(|rep| vec![Some(rep.e0_ren), None, None]),
                Regime::Marginal => Err(marginal(kappa, length)),
                Regime::Critical => critical_energies(params, kappa, length, &opts)
                    .map(|(e0, e_cond)| vec![None, Some(e0), Some(e_cond)]),
            };
            let mut row = vec![num(kappa)];
            row.extend(finish_row(r, 3));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "kappa",
        ylabel: "energy",
        table: Table {
            header: headers(&["kappa", "E0_sub", "E0_crit", "E_cond", "status"]),
            rows,
        },
    })
}

fn fluc_upper_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let length = s.length.unwrap_or(2.2 / s.m);
    let grid = linspace(0.2 * s.m, 2.0 * s.m, 37);
    let opts = s.spectrum;
    let rows = grid
        .par_iter()
        .map(|&kappa| {
            let cfg = ModelConfig::RobinDirichlet { kappa, length };
            let r = match robin_regime(kappa, length, params.m) {
                Regime::Subcritical => total_force_with(cfg, params, Background::Exact, &opts)
                    .map(|rep| vec![Some(rep.f_total), None, None, None]),
                Regime::Marginal => Err(marginal(kappa, length)),
                Regime::Critical => total_force_with(cfg, params, Background::Exact, &opts)
                    .map(|rep| {
                        vec![None, Some(rep.f_cond), Some(rep.f_fluct), Some(rep.f_total)]
                    }),
            };
            let mut row = vec![num(kappa)];
            row.extend(finish_row(r, 4));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "kappa",
        ylabel: "force",
        table: Table {
            header: headers(&["kappa", "F_sub", "F_cond", "F_fluct", "F_total", "status"]),
            rows,
        },
    })
}

fn fluc_lower_grid(s: &Settings) -> (Vec<f64>, f64, f64) {
    let grid = linspace(1.1 / s.m, 3.2 / s.m, 22);
    let kappa_sub = 0.5 * s.m;
    let kappa_crit = s.kappa.unwrap_or(1.3 * s.m);
    (grid, kappa_sub, kappa_crit)
}

fn fluc_lower_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let (grid, kappa_sub, kappa_crit) = fluc_lower_grid(s);
    let opts = s.spectrum;
    let rows = grid
        .par_iter()
        .map(|&length| {
            let mut status = Status::Ok;
            let e0_sub = match vacuum_energy_subcritical(params, kappa_sub, length) {
                Ok(rep) => Some(rep.e0_ren),
                Err(e) => {
                    status = status.max(status_of(&e));
                    None
                }
            };
            let crit = match robin_regime(kappa_crit, length, params.m) {
                Regime::Critical => critical_energies(params, kappa_crit, length, &opts),
                _ => Err(marginal(kappa_crit, length)),
            };
            let (e0_crit, e_cond) = match crit {
                Ok((e0, ec)) => (Some(e0), Some(ec)),
                Err(e) => {
                    status = status.max(status_of(&e));
                    (None, None)
                }
            };
            vec![
                num(length),
                cell(e0_sub),
                cell(e0_crit),
                cell(e_cond),
                status.label().to_string(),
            ]
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "energy",
        table: Table {
            header: headers(&["L", "E0_sub", "E0_crit", "E_cond", "status"]),
            rows,
        },
    })
}

fn fluc_lower_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let (grid, kappa_sub, kappa_crit) = fluc_lower_grid(s);
    let opts = s.spectrum;
    let rows = grid
        .par_iter()
        .map(|&length| {
            let mut status = Status::Ok;
            let sub_cfg = ModelConfig::RobinDirichlet {
                kappa: kappa_sub,
                length,
            };
            let f_sub = match total_force_with(sub_cfg, params, Background::Exact, &opts) {
                Ok(rep) => Some(rep.f_total),
                Err(e) => {
                    status = status.max(status_of(&e));
                    None
                }
            };
            let crit_cfg = ModelConfig::RobinDirichlet {
                kappa: kappa_crit,
                length,
            };
            let crit = match robin_regime(kappa_crit, length, params.m) {
                Regime::Critical => total_force_with(crit_cfg, params, Background::Exact, &opts),
                _ => Err(marginal(kappa_crit, length)),
            };
            let (f_cond, f_fluct, f_total) = match crit {
                Ok(rep) => (Some(rep.f_cond), Some(rep.f_fluct), Some(rep.f_total)),
                Err(e) => {
                    status = status.max(status_of(&e));
                    (None, None, None)
                }
            };
            vec![
                num(length),
                cell(f_sub),
                cell(f_cond),
                cell(f_fluct),
                cell(f_total),
                status.label().to_string(),
            ]
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "force",
        table: Table {
            header: headers(&["L", "F_sub", "F_cond", "F_fluct", "F_total", "status"]),
            rows,
        },
    })
}

fn fluc2_left(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(1.3 * s.m);
    let length = s.length.unwrap_or(3.0 / s.m);
    let cfg = ModelConfig::RobinDirichlet { kappa, length };
    let exact = FluctuationPotential::from_condensate(solve_robin(cfg, params)?)?;
    let approx = FluctuationPotential::from_bound_state(bound_state(cfg, params)?)?;
    let rows = linspace(0.0, length, 121)
        .iter()
        .map(|&x| vec![num(x), num(exact.eval(x)), num(approx.eval(x))])
        .collect();
    Ok(Panel {
        xlabel: "x",
        ylabel: "potential",
        table: Table {
            header: headers(&["x", "V_exact", "V_approx"]),
            rows,
        },
    })
}

fn fluc2_right(s: &Settings, params: PhysicalParams) -> CliResult<Panel> {
    let kappa = s.kappa.unwrap_or(1.3 * s.m);
    let grid = linspace(2.2 / s.m, 3.4 / s.m, 13);
    let opts = s.spectrum;
    let rows = grid
        .par_iter()
        .map(|&length| {
            let cfg = ModelConfig::RobinDirichlet { kappa, length };
            let r = (|| {
                let exact = FluctuationPotential::from_condensate(solve_robin(cfg, params)?);
                let e_exact =
                    vacuum_energy_renormalized_with(&exact?, params, kappa, length, &opts)?.e0_ren;
                let approx = FluctuationPotential::from_bound_state(bound_state(cfg, params)?)?;
                let e_approx =
                    vacuum_energy_renormalized_with(&approx, params, kappa, length, &opts)?.e0_ren;
                Ok(vec![Some(e_exact), Some(e_approx)])
            })();
            let mut row = vec![num(length)];
            row.extend(finish_row(r, 2));
            row
        })
        .collect();
    Ok(Panel {
        xlabel: "L",
        ylabel: "energy",
        table: Table {
            header: headers(&["L", "E0_exact", "E0_approx", "status"]),
            rows,
        },
    })
}

// ------------------------------------------------------------------ sweeps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Kappa,
    Length,
    Depth,
}

impl Var {
    fn label(self) -> &'static str {
        match self {
            Var::Kappa => "kappa",
            Var::Length => "L",
            Var::Depth => "U0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Output {
    EBs,
    ECond,
    K,
    E0Ren,
    FCond,
    FFluct,
    FTotal,
}

impl Output {
    fn header(self) -> &'static str {
        match self {
            Output::EBs => "E_bs",
            Output::ECond => "E_cond",
            Output::K => "k",
            Output::E0Ren => "E0_ren",
            Output::FCond => "F_cond",
            Output::FFluct => "F_fluct",
            Output::FTotal => "F_total",
        }
    }
}

fn parse_var(raw: &str) -> CliResult<Var> {
    match raw.to_ascii_lowercase().as_str() {
        "kappa" => Ok(Var::Kappa),
        "l" => Ok(Var::Length),
        "u0" => Ok(Var::Depth),
        other => Err(CliFailure::Usage(format!(
            "unknown sweep variable '{other}'; use kappa, L, or U0"
        ))),
    }
}

fn parse_outputs(raw: &str) -> CliResult<Vec<Output>> {
    let mut outputs = Vec::new();
    for token in raw.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let output = match token.to_ascii_lowercase().as_str() {
            "e_bs" => Output::EBs,
            "e_cond" => Output::ECond,
            "k" => Output::K,
            "e0_ren" => Output::E0Ren,
            "f_cond" => Output::FCond,
            "f_fluct" => Output::FFluct,
            "f_total" => Output::FTotal,
            other => {
                return Err(CliFailure::Usage(format!(
                    "unknown output '{other}'; use E_bs, E_cond, k, E0_ren, F_cond, F_fluct, F_total"
                )))
            }
        };
        if !outputs.contains(&output) {
            outputs.push(output);
        }
    }
    if outputs.is_empty() {
        return Err(CliFailure::Usage("no outputs requested".to_string()));
    }
    Ok(outputs)
}

fn infer_model(s: &Settings, var: Var) -> ModelChoice {
    s.model.unwrap_or({
        if s.depth.is_some() || s.width.is_some() || var == Var::Depth {
            ModelChoice::Hole
        } else if s.length.is_some() || var == Var::Length {
            ModelChoice::Robin
        } else {
            ModelChoice::Delta
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    var: &str,
    from: f64,
    to: f64,
    points: usize,
    outputs: &str,
    s: &Settings,
    out: Option<&Path>,
) -> CliResult<()> {
    let var = parse_var(var)?;
    let outputs = parse_outputs(outputs)?;
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(CliFailure::Usage(format!(
            "sweep range must satisfy from < to, got {from} .. {to}"
        )));
    }
    if points < 2 {
        return Err(CliFailure::Usage(format!(
            "a sweep needs at least 2 points, got {points}"
        )));
    }
    let model = infer_model(s, var);
    match (model, var) {
        (ModelChoice::Delta, Var::Length | Var::Depth) => {
            return Err(CliFailure::Usage(
                "the delta model only sweeps kappa".to_string(),
            ))
        }
        (ModelChoice::Robin, Var::Depth) => {
            return Err(CliFailure::Usage(
                "the interval model sweeps kappa or L, not U0".to_string(),
            ))
        }
        (ModelChoice::Hole, Var::Kappa | Var::Length) => {
            return Err(CliFailure::Usage(
                "the hole model only sweeps U0".to_string(),
            ))
        }
        _ => {}
    }
    if model == ModelChoice::Robin {
        if var == Var::Kappa && s.length.is_none() {
            return Err(CliFailure::Usage(
                "sweeping kappa on the interval needs --L".to_string(),
            ));
        }
        if var == Var::Length && s.kappa.is_none() {
            return Err(CliFailure::Usage(
                "sweeping L on the interval needs --kappa".to_string(),
            ));
        }
    }
    let params = s.params()?;
    let grid = linspace(from, to, points);
    let rows: Vec<Vec<String>> = grid
        .par_iter()
        .map(|&x| sweep_row(model, s, var, x, &outputs, params))
        .collect();
    let mut header = vec![var.label().to_string()];
    header.extend(outputs.iter().map(|o| o.header().to_string()));
    header.push("status".to_string());
    let table = Table { header, rows };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(Error::from)?;
            let name = format!("sweep-{}", var.label());
            let csv_path = dir.join(format!("{name}.csv"));
            std::fs::write(&csv_path, table.csv()).map_err(Error::from)?;
            std::fs::write(
                dir.join(format!("{name}.gp")),
                plot_script(&name, var.label(), "value", &table),
            )
            .map_err(Error::from)?;
            println!("wrote {}", csv_path.display());
        }
        None => print!("{}", table.csv()),
    }
    Ok(())
}

fn sweep_row(
    model: ModelChoice,
    s: &Settings,
    var: Var,
    x: f64,
    outputs: &[Output],
    params: PhysicalParams,
) -> Vec<String> {
    let mut cells: Vec<Option<f64>> = vec![None; outputs.len()];
    let mut status = Status::Ok;
    let pos = |o: Output| outputs.iter().position(|&p| p == o);
    let wants = |o: Output| outputs.contains(&o);
    let set = |cells: &mut Vec<Option<f64>>, o: Output, v: f64| {
        if let Some(i) = pos(o) {
            cells[i] = Some(v);
        }
    };
    let mark = |status: &mut Status, s: Status| *status = (*status).max(s);

    match model {
        ModelChoice::Delta => {
            let kappa = x;
            let cfg = ModelConfig::Delta { kappa };
            if wants(Output::EBs) || wants(Output::ECond) || wants(Output::K) {
                if kappa > params.m {
                    if wants(Output::EBs) {
                        match bound_state(cfg, params) {
                            Ok(bs) => set(&mut cells, Output::EBs, meanfield_energy(&bs)),
                            Err(e) => mark(&mut status, status_of(&e)),
                        }
                    }
                    if wants(Output::ECond) || wants(Output::K) {
                        match solve_delta(cfg, params) {
                            Ok(sol) => {
                                set(&mut cells, Output::ECond, condensate_energy(&sol));
                                if let Some(k) = sol.modulus() {
                                    set(&mut cells, Output::K, k);
                                }
                            }
                            Err(e) => mark(&mut status, status_of(&e)),
                        }
                    }
                } else {
                    mark(&mut status, Status::Subcritical);
                }
            }
        }
        ModelChoice::Robin => {
            let (kappa, length) = match var {
                Var::Kappa => (x, s.length.unwrap_or(2.2 / s.m)),
                _ => (s.kappa.unwrap_or(2.0 * s.m), x),
            };
            let cfg = ModelConfig::RobinDirichlet { kappa, length };
            let regime = robin_regime(kappa, length, params.m);
            if wants(Output::EBs) || wants(Output::ECond) || wants(Output::K) {
                if regime == Regime::Critical {
                    if wants(Output::EBs) {
                        match bound_state(cfg, params) {
                            Ok(bs) => set(&mut cells, Output::EBs, meanfield_energy(&bs)),
                            Err(e) => mark(&mut status, status_of(&e)),
                        }
                    }
                    if wants(Output::ECond) || wants(Output::K) {
                        match solve_robin(cfg, params) {
                            Ok(sol) => {
                                set(&mut cells, Output::ECond, condensate_energy(&sol));
                                if let Some(k) = sol.modulus() {
                                    set(&mut cells, Output::K, k);
                                }
                            }
                            Err(e) => mark(&mut status, status_of(&e)),
                        }
                    }
                } else {
                    mark(&mut status, Status::Subcritical);
                }
            }
            if wants(Output::E0Ren) {
                let r = match regime {
                    Regime::Subcritical => {
                        vacuum_energy_subcritical(params, kappa, length).map(|rep| rep.e0_ren)
                    }
                    Regime::Marginal => Err(marginal(kappa, length)),
                    Regime::Critical => {
                        critical_energies(params, kappa, length, &s.spectrum).map(|(e0, _)| e0)
                    }
                };
                match r {
                    Ok(e0) => set(&mut cells, Output::E0Ren, e0),
                    Err(e) => mark(&mut status, status_of(&e)),
                }
            }
            if wants(Output::FCond) || wants(Output::FFluct) || wants(Output::FTotal) {
                match regime {
                    Regime::Subcritical => {
                        match total_force_with(cfg, params, Background::Exact, &s.spectrum) {
                            Ok(rep) => {
                                set(&mut cells, Output::FFluct, rep.f_fluct);
                                set(&mut cells, Output::FTotal, rep.f_total);
                                if wants(Output::FCond) {
                                    mark(&mut status, Status::Subcritical);
                                }
                            }
                            Err(e) => mark(&mut status, status_of(&e)),
                        }
                    }
                    Regime::Marginal => mark(&mut status, Status::Subcritical),
                    Regime::Critical => {
                        if wants(Output::FFluct) || wants(Output::FTotal) {
                            match total_force_with(cfg, params, Background::Exact, &s.spectrum) {
                                Ok(rep) => {
                                    set(&mut cells, Output::FCond, rep.f_cond);
                                    set(&mut cells, Output::FFluct, rep.f_fluct);
                                    set(&mut cells, Output::FTotal, rep.f_total);
                                }
                                Err(e) => mark(&mut status, status_of(&e)),
                            }
                        } else {
                            match condensate_force(cfg, params) {
                                Ok(rep) => set(&mut cells, Output::FCond, rep.f_cond),
                                Err(e) => mark(&mut status, status_of(&e)),
                            }
                        }
                    }
                }
            }
        }
        ModelChoice::Hole => {
            let depth = x;
            let width = s.width.unwrap_or(1.0 / s.m);
            let cfg = ModelConfig::PotentialHole { depth, width };
            if wants(Output::EBs) || wants(Output::ECond) || wants(Output::K) {
                match hole_threshold(width, params.m) {
                    Ok(u0c) if depth > u0c => {
                        if wants(Output::EBs) {
                            match bound_state(cfg, params) {
                                Ok(bs) => set(&mut cells, Output::EBs, meanfield_energy(&bs)),
                                Err(e) => mark(&mut status, status_of(&e)),
                            }
                        }
                        if wants(Output::ECond) || wants(Output::K) {
                            match solve_hole(cfg, params) {
                                Ok(sol) => {
                                    set(&mut cells, Output::ECond, condensate_energy(&sol));
                                    if let Some(k) = sol.modulus() {
                                        set(&mut cells, Output::K, k);
                                    }
                                }
                                Err(e) => mark(&mut status, status_of(&e)),
                            }
                        }
                    }
                    Ok(_) => mark(&mut status, Status::Subcritical),
                    Err(e) => mark(&mut status, status_of(&e)),
                }
            }
        }
    }

    let mut row = vec![num(x)];
    row.extend(cells.into_iter().map(cell));
    row.push(status.label().to_string());
    row
}
