use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rectadd::{
    cmd_counterexample, cmd_decompose, cmd_dyadic_approx, cmd_probe, cmd_proptest, CounterexampleParams, Report, Suite,
};
use rectadd_core::numeric::parse_rational_literal;
use rectadd_core::{ProbeParams, QNum, Rational, Rect, RectFunction};

/// Exact reports on additive rectangle functions.
#[derive(Debug, Parser)]
#[command(name = "rectadd", version)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Dyadic positivity against the negative rectangle [0,1]x[1,sqrt2].
    Counterexample {
        #[arg(long, default_value = "counterexample")]
        function: RectFunction,
        #[arg(long, default_value_t = 0)]
        min_order: u32,
        #[arg(long, default_value_t = 12)]
        max_order: u32,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Mesh indices are drawn from -B..=B.
        #[arg(long, default_value_t = 1 << 15)]
        index_bound: i64,
        /// Length of the strong-continuity witness family.
        #[arg(long, default_value_t = 20)]
        depth: u32,
    },
    /// Greedy square decomposition with tiling, halving and telescoping checks.
    Decompose {
        #[arg(long)]
        rect: Rect,
        #[arg(long, default_value_t = 20)]
        max_steps: usize,
        /// Write the decomposition figure here.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Sums over inner dyadic covers, order by order.
    DyadicApprox {
        #[arg(long, default_value = "[0,1]x[1,sqrt2]")]
        rect: Rect,
        #[arg(long, default_value = "counterexample")]
        function: RectFunction,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        min_order: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_order: u32,
    },
    /// Sampled F(Q)/|Q|^alpha over shrinking squares at a point.
    Probe {
        #[arg(long, default_value = "counterexample")]
        function: RectFunction,
        /// `x,y` with Q(sqrt2) literals.
        #[arg(long, default_value = "1/2,1/2", value_parser = parse_point)]
        point: (QNum, QNum),
        #[arg(long, default_value = "1", value_parser = parse_alpha)]
        alpha: Rational,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        offsets: u32,
        /// Record whether each sampled square lies inside this rectangle.
        #[arg(long)]
        region: Option<Rect>,
    },
    /// Seeded property suite.
    Proptest {
        /// additivity, tiling, halving, oracle, telescope or field.
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(1..))]
        cases: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_point(s: &str) -> Result<(QNum, QNum), String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let x = x.trim().parse().map_err(|e| format!("{e}"))?;
    let y = y.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((x, y))
}

fn parse_alpha(s: &str) -> Result<Rational, String> {
    parse_rational_literal(s.trim()).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let report = match cli.command {
        Command::Counterexample {
            function,
            min_order,
            max_order,
            samples,
            seed,
            index_bound,
            depth,
        } => {
            anyhow::ensure!(min_order <= max_order, "--min-order exceeds --max-order");
            anyhow::ensure!(index_bound >= 0, "--index-bound must be nonnegative");
            cmd_counterexample(&CounterexampleParams {
                function,
                orders: min_order..=max_order,
                samples: samples as usize,
                seed,
                index_bound,
                witness_depth: depth,
            })
        }
        Command::Decompose { rect, max_steps, svg } => cmd_decompose(&rect, max_steps, svg.as_deref())?,
        Command::DyadicApprox {
            rect,
            function,
            min_order,
            max_order,
        } => {
            anyhow::ensure!(min_order <= max_order, "--min-order exceeds --max-order");
            cmd_dyadic_approx(&rect, &function, min_order, max_order)
        }
        Command::Probe {
            function,
            point,
            alpha,
            depth,
            offsets,
            region,
        } => cmd_probe(
            &function,
            &ProbeParams {
                point,
                alpha,
                depth,
                offsets_per_scale: offsets,
                region,
            },
        )?,
        Command::Proptest { suite, cases, seed } => cmd_proptest(suite, cases, seed),
    };
    if let Some(path) = &cli.json {
        std::fs::write(path, report.to_json() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::from(report.exit_status.clamp(0, 255) as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
