use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use dlop_cli::compare::{run_comparison, CompareConfig, DEFAULT_GRID};
use dlop_cli::convergence::{run_convergence, ConvergenceConfig, Quantity};
use dlop_cli::equilibrium::run_equilibrium;
use dlop_cli::matching::run_matching;
use dlop_cli::oracle::{run_recurrence, run_zeros, OracleConfig};
use dlop_cli::table1::run_table1;
use dlop_cli::{Format, Outer, Report};
use dlop_core::asymptotics::RegimeTag;
use dlop_core::exec::{init_threads, THREADS_ENV};
use dlop_core::Exec;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dlop",
    version,
    about = "Discrete Laguerre polynomials on a quadratic lattice"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (falls back to the DLOP_THREADS variable, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Evaluate point grids on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Endpoints, residuals, edge constants and the Lagrange constant.
    Equilibrium {
        /// Rate c in the weight `e^{-c x}`.
        #[arg(long)]
        c: f64,
        /// Tolerance for the endpoint solve.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Extended-precision recurrence tables and zeros.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Oracle against the asymptotic formula of one region.
    Compare {
        /// Region: void, band, saturated, origin, edge-a or edge-b.
        #[arg(long, value_parser = parse_regime)]
        regime: RegimeTag,
        #[command(flatten)]
        model: ModelArgs,
        /// Sample points in the region.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Region half-width; defaults to `0.1 min(a, b - a)`.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Edge formulas against their neighbours on the edge circles.
    Matching {
        #[command(flatten)]
        model: ModelArgs,
        /// Region half-width; defaults to `0.1 min(a, b - a)`.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Zeros of the degree-10 discrete and continuous polynomials against the reference table.
    Table1 {
        /// MPFR working precision in bits.
        #[arg(long, default_value_t = dlop_oracle::DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
    /// Relative error against n with a fitted log-log slope.
    Convergence {
        /// Quantity to track.
        #[arg(long, value_enum)]
        quantity: Quantity,
        /// Degrees, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [16u32, 32, 64])]
        n_list: Vec<u32>,
        /// Rate c in the weight `e^{-c x}`.
        #[arg(long, default_value_t = 4.0)]
        c: f64,
        /// Laguerre parameter alpha.
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Evaluation point for `pn`; defaults to b + 1.
        #[arg(long)]
        x: Option<f64>,
        /// Outer model for the asymptotic formulas.
        #[arg(long, value_enum, default_value_t = Outer::Literal)]
        outer: Outer,
        /// Add the lattice node at 0.
        #[arg(long)]
        include_origin_node: bool,
        /// MPFR working precision in bits.
        #[arg(long, default_value_t = dlop_oracle::DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// `(B_k, A2_k, h_k)` for `k <= n`.
    Recurrence(OracleArgs),
    /// Sorted zeros of `P_n`.
    Zeros(OracleArgs),
}

#[derive(Args)]
struct OracleArgs {
    /// Degree n.
    #[arg(long)]
    n: u32,
    /// Rate c in the weight `e^{-c x}`.
    #[arg(long)]
    c: f64,
    /// Laguerre parameter alpha.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Lattice scale; defaults to n.
    #[arg(long = "bigN")]
    big_n: Option<u32>,
    /// MPFR working precision in bits.
    #[arg(long, default_value_t = dlop_oracle::DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    /// Add the lattice node at 0.
    #[arg(long)]
    include_origin_node: bool,
}

#[derive(Args)]
struct ModelArgs {
    /// Degree n.
    #[arg(long)]
    n: u32,
    /// Rate c in the weight `e^{-c x}`.
    #[arg(long)]
    c: f64,
    /// Laguerre parameter alpha.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Outer model for the asymptotic formulas.
    #[arg(long, value_enum, default_value_t = Outer::Literal)]
    outer: Outer,
    /// Add the lattice node at 0.
    #[arg(long)]
    include_origin_node: bool,
    /// MPFR working precision in bits.
    #[arg(long, default_value_t = dlop_oracle::DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
}

fn parse_regime(s: &str) -> std::result::Result<RegimeTag, String> {
    s.replace('_', "-").parse().map_err(|e: dlop_core::Error| e.to_string())
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            n: self.n,
            c: self.c,
            alpha: self.alpha,
            big_n: self.big_n.unwrap_or(self.n),
            precision_bits: self.precision_bits,
            include_origin_node: self.include_origin_node,
        }
    }
}

fn emit<R: Report>(r: &R, format: Format) -> Result<bool> {
    print!("{}", r.render(format)?);
    Ok(r.passed())
}

fn run(cli: Cli) -> Result<bool> {
    let threads = init_threads(cli.threads);
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    if std::env::var_os("DLOP_VERBOSE").is_some() {
        eprintln!("threads: {threads} ({THREADS_ENV}), exec: {exec:?}");
    }
    let f = cli.format;
    match cli.command {
        Command::Equilibrium { c, tol } => emit(&run_equilibrium(c, tol)?, f),
        Command::Oracle { what } => match what {
            OracleCommand::Recurrence(a) => emit(&run_recurrence(&a.config())?, f),
            OracleCommand::Zeros(a) => emit(&run_zeros(&a.config())?, f),
        },
        Command::Compare {
            regime,
            model,
            grid,
            delta,
        } => {
            let mut cfg = CompareConfig::new(regime, model.n, model.c, model.alpha)
                .with_model(model.outer.model(model.include_origin_node));
            cfg.grid = grid;
            cfg.delta = delta;
            cfg.precision_bits = model.precision_bits;
            cfg.exec = exec;
            emit(&run_comparison(&cfg)?, f)
        }
        Command::Matching { model, delta } => emit(
            &run_matching(
                model.c,
                model.alpha,
                model.n,
                model.outer.model(model.include_origin_node),
                delta,
            )?,
            f,
        ),
        Command::Table1 { precision_bits } => emit(&run_table1(precision_bits)?, f),
        Command::Convergence {
            quantity,
            n_list,
            c,
            alpha,
            x,
            outer,
            include_origin_node,
            precision_bits,
        } => {
            let mut cfg =
                ConvergenceConfig::new(quantity, n_list, c, alpha).with_model(outer.model(include_origin_node));
            cfg.precision_bits = precision_bits;
            cfg.exec = exec;
            cfg.x = match x {
                Some(x) => x,
                None => dlop_core::equilibrium::support(c, 1e-12)?.b + 1.0,
            };
            emit(&run_convergence(&cfg)?, f)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
