use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use relsim_core::formats::{format_events, parse_vector, read_events, read_group_element, read_relation};
use relsim_core::relations::classify_subgroup;
use relsim_core::suite::{any_failed, json_report, run_suite, text_report, ReportFormat};
use relsim_core::{InertialCoords, RealSubgroupSpec, RelationSpec, Scalar, SuiteConfig, Vec3};

#[derive(Parser)]
#[command(name = "relsim", version, about = "Exact checks for invariant simultaneity relations on R⁴")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the theorem verifiers.
    Verify {
        /// `all` or a comma-separated list of ids / id prefixes.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lattice operations on two relations over one event file.
    Partition {
        #[arg(value_enum)]
        op: LatticeOp,
        #[arg(long)]
        events: PathBuf,
        #[arg(long)]
        rel1: PathBuf,
        #[arg(long)]
        rel2: PathBuf,
    },
    /// Apply an affine map to every event.
    Transform {
        #[arg(long)]
        group_element: PathBuf,
        #[arg(long)]
        events: PathBuf,
    },
    /// Classify the subgroup of R generated by `;`-separated scalars.
    ClassifySubgroup {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Operations on a single relation spec.
    Relation {
        #[command(subcommand)]
        command: RelationCommand,
    },
    /// Light propagation in a synchrony coordinate system.
    Synchrony {
        #[arg(value_enum)]
        op: SynchronyOp,
        #[arg(long)]
        coords: String,
        /// Unit direction for `speed`.
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
    },
}

#[derive(Subcommand)]
enum RelationCommand {
    /// Print the blocks of a relation restricted to an event file.
    Restrict {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        events: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeOp {
    Meet,
    Join,
    Finer,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynchronyOp {
    Speed,
    Witness,
    Cone,
}

/// Runs a command; `Ok(false)` means a verifier failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify { suite, seed, report, format } => {
            let selection = match suite.trim() {
                "all" | "" => Vec::new(),
                list => list.split(',').map(|s| s.trim().to_string()).collect(),
            };
            let format = match format {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            };
            let reports = run_suite(&SuiteConfig { selection, seed, report, format })?;
            match format {
                ReportFormat::Text => print!("{}", text_report(&reports)),
                ReportFormat::Json => print!("{}", json_report(&reports, true)),
            }
            return Ok(!any_failed(&reports));
        }
        Command::Partition { op, events, rel1, rel2 } => {
            let base = Arc::new(read_events(&events)?);
            let r1 = read_relation(&rel1, &base)?;
            let r2 = read_relation(&rel2, &base)?;
            match op {
                LatticeOp::Meet => print!("{}", r1.meet(&r2)?),
                LatticeOp::Join => print!("{}", r1.join(&r2)?),
                LatticeOp::Finer => println!("{}", r1.finer_than(&r2)?),
            }
        }
        Command::Transform { group_element, events } => {
            let g = read_group_element(&group_element)?;
            let set = read_events(&events)?;
            let moved = relsim_core::EventSet::new(set.iter().map(|(id, e)| (id.to_string(), g.apply(e))).collect())?;
            print!("{}", format_events(&moved));
        }
        Command::ClassifySubgroup { gens } => {
            let gens = gens
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse::<Scalar>().with_context(|| format!("generator `{}`", s.trim())))
                .collect::<anyhow::Result<Vec<_>>>()?;
            println!("{}", classify_subgroup(&RealSubgroupSpec::generated(gens)));
        }
        Command::Relation { command: RelationCommand::Restrict { spec, events } } => {
            let spec: RelationSpec = spec.parse()?;
            let base = Arc::new(read_events(&events)?);
            print!("{}", spec.restrict(&base)?);
        }
        Command::Synchrony { op, coords, dir } => {
            let phi: InertialCoords = coords.parse()?;
            match op {
                SynchronyOp::Speed => {
                    let Some(dir) = dir else { bail!("`speed` needs --dir") };
                    let n: Vec3 = parse_vector(&dir)?;
                    println!("one-way {}", phi.one_way_speed(&n)?);
                    println!("two-way {}", phi.two_way_speed(&n)?);
                }
                SynchronyOp::Witness => match phi.causality_witness() {
                    Some(v) => println!("{v}"),
                    None => println!("none"),
                },
                SynchronyOp::Cone => println!("{}", phi.lightcone_image()),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
