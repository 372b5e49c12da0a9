//! Bell-violation benchmark CLI.
//!
//! Each inequality subcommand evaluates its noisy state family in one of
//! three modes: a single purity (`--point`), a purity grid (`--sweep`), or
//! a search for the violation threshold (`--threshold`). `--fixed-angles`
//! skips the angle optimization and evaluates the operator as given.
//! `figure` emits the prebuilt datasets behind the four standard plots.
//!
//! Tables use fixed six-decimal formatting, so a given invocation always
//! produces identical bytes.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use bellcore::{
    critical_purity, evaluate, make_expression, maximize, state_for, sweep, Angles64, BellKind,
    NoiseKind, OptimizationResult, OptimizerConfig, Purity, Threshold,
};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "bellbench",
    version,
    about = "Bell inequality violations for noisy entangled photon states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-qubit CHSH inequality on a polarization singlet
    Chsh2(RunArgs),
    /// Three-qubit Mermin inequality on a GHZ state
    Mermin3(RunArgs),
    /// Four-qubit Mermin-Klyshko inequality on a GHZ state
    Mk4(RunArgs),
    /// CHSH-like two-qutrit inequality on a four-photon singlet
    QutritChsh(RunArgs),
    /// Prebuilt dataset behind one of the four standard plots
    Figure(FigureArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("mode").required(true).args(["point", "sweep", "threshold"]))]
struct RunArgs {
    /// Noise admixed into the pure state
    #[arg(long, value_enum)]
    noise: NoiseArg,

    /// Evaluate at one purity
    #[arg(long, value_name = "P")]
    point: Option<f64>,

    /// Evaluate on a purity grid given as start:stop:step
    #[arg(long, value_name = "START:STOP:STEP")]
    sweep: Option<String>,

    /// Find the smallest purity whose optimum violates the inequality
    #[arg(long)]
    threshold: bool,

    /// Skip optimization and evaluate at "theta,phi" (radians)
    #[arg(long, value_name = "THETA,PHI", conflicts_with = "threshold")]
    fixed_angles: Option<String>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Which dataset: fig1 or fig3 (violation curves), fig2 or fig4 (angles)
    #[arg(value_name = "NAME")]
    name: FigureName,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Table format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Coarse search grid points per angle axis
    #[arg(long, value_name = "N", default_value_t = 181)]
    grid: usize,

    /// Refinement convergence tolerance on the objective value
    #[arg(long, value_name = "EPS", default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    /// Uniform admixture of the maximally mixed state
    White,
    /// Admixture diagonal in the preferred polarization basis
    Colored,
}

impl From<NoiseArg> for NoiseKind {
    fn from(n: NoiseArg) -> NoiseKind {
        match n {
            NoiseArg::White => NoiseKind::White,
            NoiseArg::Colored => NoiseKind::Colored,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

/// Anything that aborts a run: bad arguments exit 2, failures after
/// argument validation exit 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Chsh2(args) => run_family(BellKind::Chsh2, args),
        Command::Mermin3(args) => run_family(BellKind::Mermin3, args),
        Command::Mk4(args) => run_family(BellKind::Mk4, args),
        Command::QutritChsh(args) => run_family(BellKind::QutritChsh, args),
        Command::Figure(args) => run_figure(args),
    }
}

fn run_family(kind: BellKind, args: RunArgs) -> Result<(), Failure> {
    let config = args.output.config()?;
    let noise = args.noise.into();
    let angles = args.fixed_angles.as_deref().map(parse_angles).transpose()?;

    let table = if args.threshold {
        threshold_table(kind, noise, &config)
    } else if let Some(p) = args.point {
        match angles {
            Some((theta, phi)) => fixed_angle_table(kind, noise, &[p], theta, phi)?,
            None => optimum_table(&[run_point(kind, noise, p, &config)?]),
        }
    } else {
        let spec = args.sweep.as_deref().expect("mode group guarantees one mode");
        let (start, stop, step) = parse_range(spec)?;
        match angles {
            Some((theta, phi)) => {
                let ps = purity_grid(start, stop, step)?;
                fixed_angle_table(kind, noise, &ps, theta, phi)?
            }
            None => {
                let record = sweep(kind, noise, start, stop, step, &config)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                optimum_table(record.points())
            }
        }
    };
    emit(&table, &args.output)
}

fn run_figure(args: FigureArgs) -> Result<(), Failure> {
    let config = args.output.config()?;
    let table = match args.name {
        FigureName::Fig1 => violation_curves(BellKind::Chsh2, &config),
        FigureName::Fig2 => angle_curves(BellKind::Chsh2, &config),
        FigureName::Fig3 => violation_curves(BellKind::QutritChsh, &config),
        FigureName::Fig4 => angle_curves(BellKind::QutritChsh, &config),
    };
    emit(&table, &args.output)
}

fn run_point(
    kind: BellKind,
    noise: NoiseKind,
    p: f64,
    config: &OptimizerConfig<f64>,
) -> Result<OptimizationResult<f64>, Failure> {
    let purity = Purity::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(maximize(kind, noise, purity, config))
}

fn optimum_table(points: &[OptimizationResult<f64>]) -> Table {
    let rows = points
        .iter()
        .map(|r| {
            vec![
                Cell::Num(r.p.value()),
                Cell::Num(r.beta_max),
                Cell::Num(r.theta_star),
                Cell::Num(r.phi_star),
                Cell::Flag(r.violated),
            ]
        })
        .collect();
    Table {
        columns: &["p", "beta_max", "theta_opt", "phi_opt", "violated"],
        rows,
    }
}

fn fixed_angle_table(
    kind: BellKind,
    noise: NoiseKind,
    ps: &[f64],
    theta: f64,
    phi: f64,
) -> Result<Table, Failure> {
    let expr = make_expression::<f64>(kind);
    let angles = Angles64::new(theta, phi);
    let mut rows = Vec::with_capacity(ps.len());
    for &p in ps {
        let purity = Purity::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
        let rho = state_for(kind, noise, purity);
        let value = evaluate(&expr, &rho, &angles)
            .expect("state and expression sizes agree by construction");
        rows.push(vec![
            Cell::Num(p),
            Cell::Num(value.value),
            Cell::Flag(value.violated),
        ]);
    }
    Ok(Table {
        columns: &["p", "value", "violated"],
        rows,
    })
}

fn threshold_table(kind: BellKind, noise: NoiseKind, config: &OptimizerConfig<f64>) -> Table {
    let cell = match critical_purity(kind, noise, config) {
        Threshold::At(p) => Cell::Num(p),
        Threshold::NoThreshold => Cell::Absent,
    };
    Table {
        columns: &["p_critical"],
        rows: vec![vec![cell]],
    }
}

/// Optimal colored- and white-noise violations on the standard 101-point grid.
fn violation_curves(kind: BellKind, config: &OptimizerConfig<f64>) -> Table {
    let rows = figure_grid()
        .map(|p| {
            let purity = Purity::new(p).expect("figure grid stays in [0, 1]");
            let colored = maximize(kind, NoiseKind::Colored, purity, config).beta_max;
            let white = maximize(kind, NoiseKind::White, purity, config).beta_max;
            vec![Cell::Num(p), Cell::Num(colored), Cell::Num(white)]
        })
        .collect();
    Table {
        columns: &["p", "value_colored", "value_white"],
        rows,
    }
}

/// Optimal colored-noise measurement angles on the standard grid.
fn angle_curves(kind: BellKind, config: &OptimizerConfig<f64>) -> Table {
    let rows = figure_grid()
        .map(|p| {
            let purity = Purity::new(p).expect("figure grid stays in [0, 1]");
            let r = maximize(kind, NoiseKind::Colored, purity, config);
            vec![
                Cell::Num(p),
                Cell::Num(r.theta_star),
                Cell::Num(r.phi_star),
            ]
        })
        .collect();
    Table {
        columns: &["p", "theta_opt", "phi_opt"],
        rows,
    }
}

fn figure_grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|i| f64::from(i) / 100.0)
}

/// Parses "start:stop:step" into three numbers; range checks happen later.
fn parse_range(spec: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!(
            "expected start:stop:step, got \"{spec}\""
        )));
    }
    let mut nums = [0.0_f64; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("not a number: \"{part}\"")))?;
    }
    Ok((nums[0], nums[1], nums[2]))
}

/// Parses "theta,phi" in radians.
fn parse_angles(spec: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::Usage(format!(
            "expected theta,phi in radians, got \"{spec}\""
        )));
    }
    let mut nums = [0.0_f64; 2];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("not a number: \"{part}\"")))?;
        if !slot.is_finite() {
            return Err(Failure::Usage(format!("angle is not finite: \"{part}\"")));
        }
    }
    Ok((nums[0], nums[1]))
}

/// Purity grid with the same count and endpoint-snap rules as `sweep`,
/// for fixed-angle runs that skip the optimizer.
fn purity_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, Failure> {
    let in_order = start >= 0.0 && start <= stop && stop <= 1.0;
    if !in_order || !(step > 0.0) || !step.is_finite() {
        return Err(Failure::Usage(format!(
            "bad purity range {start}:{stop}:{step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let mut ps = Vec::with_capacity(count);
    for k in 0..count {
        let mut p = start + step * k as f64;
        if (p - stop).abs() <= step * 1e-6 {
            p = stop;
        }
        ps.push(p);
    }
    Ok(ps)
}

impl OutputArgs {
    fn config(&self) -> Result<OptimizerConfig<f64>, Failure> {
        if self.grid < 8 {
            return Err(Failure::Usage("--grid must be at least 8".into()));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Failure::Usage("--tol must be a positive finite number".into()));
        }
        Ok(OptimizerConfig {
            grid: self.grid,
            tol: self.tol,
            ..OptimizerConfig::default()
        })
    }
}

fn emit(table: &Table, output: &OutputArgs) -> Result<(), Failure> {
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &output.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Copy)]
enum Cell {
    Num(f64),
    Flag(bool),
    /// No value to report (threshold search found none).
    Absent,
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Num(x) => format_num(x),
            Cell::Flag(b) => b.to_string(),
            Cell::Absent => "none".into(),
        }
    }

    fn json(self) -> String {
        match self {
            Cell::Num(x) => format_num(x),
            Cell::Flag(b) => b.to_string(),
            Cell::Absent => "null".into(),
        }
    }
}

/// Fixed six decimals; collapses negative zero so reruns are byte-identical.
fn format_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

impl Table {
    fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn to_json(&self) -> String {
        let mut s = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str("  {");
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                s.push('"');
                s.push_str(name);
                s.push_str("\": ");
                s.push_str(&cell.json());
            }
            s.push('}');
            if i + 1 < self.rows.len() {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("]\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn purity_grid_matches_sweep_grid() {
        let config = OptimizerConfig {
            grid: 8,
            stages: 1,
            ..OptimizerConfig::default()
        };
        for &(a, b, s) in &[(0.0, 1.0, 0.1), (0.0, 1.0, 0.3), (0.2, 0.2, 0.5)] {
            let ps = purity_grid(a, b, s).unwrap();
            let record = sweep(BellKind::Chsh2, NoiseKind::White, a, b, s, &config).unwrap();
            let qs: Vec<f64> = record.points().iter().map(|r| r.p.value()).collect();
            assert_eq!(ps, qs, "grid mismatch for {a}:{b}:{s}");
        }
    }

    #[test]
    fn range_and_angle_parsing() {
        assert_eq!(parse_range("0:1:0.1").unwrap(), (0.0, 1.0, 0.1));
        assert_eq!(parse_angles("1.5,0.75").unwrap(), (1.5, 0.75));
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:one:0.1").is_err());
        assert!(parse_angles("1.5").is_err());
        assert!(parse_angles("nan,0").is_err());
    }

    #[test]
    fn purity_grid_rejects_bad_ranges() {
        assert!(purity_grid(-0.1, 1.0, 0.1).is_err());
        assert!(purity_grid(0.0, 1.1, 0.1).is_err());
        assert!(purity_grid(0.5, 0.4, 0.1).is_err());
        assert!(purity_grid(0.0, 1.0, 0.0).is_err());
        assert!(purity_grid(0.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn formatting_is_fixed_width_and_signless_at_zero() {
        assert_eq!(format_num(2.0_f64.sqrt()), "1.414214");
        assert_eq!(format_num(-0.0), "0.000000");
        assert_eq!(format_num(2.0), "2.000000");
    }

    #[test]
    fn tables_render_with_header_and_lf_endings() {
        let table = Table {
            columns: &["p", "value", "violated"],
            rows: vec![
                vec![Cell::Num(0.5), Cell::Num(2.121320), Cell::Flag(true)],
                vec![Cell::Num(1.0), Cell::Absent, Cell::Flag(false)],
            ],
        };
        assert_eq!(
            table.to_csv(),
            "p,value,violated\n0.500000,2.121320,true\n1.000000,none,false\n"
        );
        assert_eq!(
            table.to_json(),
            "[\n  {\"p\": 0.500000, \"value\": 2.121320, \"violated\": true},\n  \
             {\"p\": 1.000000, \"value\": null, \"violated\": false}\n]\n"
        );
    }
}
