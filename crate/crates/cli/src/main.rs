//! Command-line surface: monoid inspection, nerve homology tables, and the
//! verification suite. Exit codes: 0 all pass, 1 any failure, 2 usage or
//! parse error, 3 inconclusive under --strict.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use repbar::homology::normalized_chains;
use repbar::monoid::AffineMonoid;
use repbar::nerves::{
    dihedral_nerve, real_nerve, replete_nerve, tensor_interval, WindowSpec,
};
use repbar::verify::{run, VerifyConfig};
use repbar::Status;

#[derive(Parser)]
#[command(name = "repbar", version, about = "Nerve constructions and homology of affine monoids with involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct ConfigArgs {
    /// Truncation degree for simplicial tables
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: usize,
    /// Weight or budget window for nerve enumeration
    #[arg(long, global = true, default_value_t = 3)]
    weight_window: i64,
    /// Coordinate window for monoid isomorphism checks
    #[arg(long, global = true, default_value_t = 5)]
    coord_window: i64,
    /// Ambient rank cap for saturation checks
    #[arg(long, global = true, default_value_t = 4)]
    rank_cap: usize,
    /// Seed for randomized instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for the verification suite (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Treat inconclusive results as a distinct non-zero exit
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NerveKind {
    Dihedral,
    Replete,
    Real,
    TensorInterval,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a monoid description file
    MonoidInfo { path: PathBuf },
    /// Homology table of a nerve construction
    NerveHomology {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: NerveKind,
        /// Target weight (comma-separated coordinates); dihedral and
        /// tensor-interval kinds
        #[arg(long)]
        weight: Option<String>,
        /// Coordinate budget; replete and real kinds require it explicitly
        #[arg(long)]
        budget: Option<i64>,
    },
    /// Run registered checks ("all" or specific ids)
    Verify {
        #[arg(default_value = "all")]
        ids: Vec<String>,
    },
}

fn load_monoid(path: &PathBuf) -> Result<AffineMonoid, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let m: AffineMonoid =
        serde_json::from_str(&text).map_err(|e| format!("invalid monoid JSON: {e}"))?;
    m.validate().map_err(|e| format!("invalid monoid: {e}"))?;
    Ok(m)
}

fn parse_weight(s: &str, rank: usize) -> Result<Vec<i64>, String> {
    let v: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let v = v.map_err(|e| format!("invalid weight: {e}"))?;
    if v.len() != rank {
        return Err(format!("weight has {} coordinates, monoid has rank {}", v.len(), rank));
    }
    Ok(v)
}

fn monoid_info(m: &AffineMonoid, cfg: &ConfigArgs) -> serde_json::Value {
    let units = m.units();
    let saturated = match m.is_saturated(cfg.rank_cap) {
        Ok(b) => serde_json::json!(b),
        Err(e) => serde_json::json!({"skipped": e.to_string()}),
    };
    serde_json::json!({
        "ambient_rank": m.ambient_rank,
        "generators": m.generators,
        "unit_generators": units.generators,
        "sharp": m.is_sharp(),
        "group": m.is_group(),
        "saturated": saturated,
        "involution": m.involution,
    })
}

fn real_main() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let vconfig = VerifyConfig {
        max_degree: cfg.max_degree,
        weight_window: cfg.weight_window,
        coord_window: cfg.coord_window,
        rank_cap: cfg.rank_cap,
        seed: cfg.seed,
    };
    vconfig.validate().map_err(|e| e.to_string())?;

    match &cli.command {
        Command::MonoidInfo { path } => {
            let m = load_monoid(path)?;
            let info = monoid_info(&m, cfg);
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&info).unwrap()),
                Format::Table => {
                    println!("ambient rank : {}", m.ambient_rank);
                    println!("generators   : {:?}", m.generators);
                    println!("units        : {:?}", m.units().generators);
                    println!("sharp        : {}", m.is_sharp());
                    println!("group        : {}", m.is_group());
                    println!("saturated    : {}", info["saturated"]);
                    println!("involution   : {:?}", m.involution);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::NerveHomology { path, kind, weight, budget } => {
            let m = load_monoid(path)?;
            let depth = cfg.max_degree + 1;
            let set = match kind {
                NerveKind::Dihedral | NerveKind::TensorInterval => {
                    let window = match weight {
                        Some(s) => WindowSpec::Weights(vec![parse_weight(s, m.ambient_rank)?]),
                        None => WindowSpec::Budget(cfg.weight_window),
                    };
                    let r = if *kind == NerveKind::Dihedral {
                        dihedral_nerve(&m, depth, &window)
                    } else {
                        tensor_interval(&m, depth, &window)
                    };
                    r.map_err(|e| e.to_string())?
                }
                NerveKind::Replete | NerveKind::Real => {
                    let b = budget.ok_or_else(|| {
                        "this nerve kind enumerates over the completion; pass an explicit --budget"
                            .to_string()
                    })?;
                    let r = if *kind == NerveKind::Replete {
                        replete_nerve(&m, depth, b)
                    } else {
                        real_nerve(&m, depth, b)
                    };
                    r.map_err(|e| e.to_string())?
                }
            };
            set.verify_relations().map_err(|e| format!("construction is inconsistent: {e}"))?;
            let (chains, _) = normalized_chains(&set, false).map_err(|e| e.to_string())?;
            let table = chains.homology_table(cfg.max_degree).map_err(|e| e.to_string())?;
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
                Format::Table => print!("{table}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { ids } => {
            let exec = || -> Result<Vec<repbar::CheckReport>, repbar::Error> {
                let mut reports = Vec::new();
                for id in ids {
                    reports.extend(run(id, &vconfig)?);
                }
                reports.sort_by(|a, b| a.check.cmp(&b.check));
                Ok(reports)
            };
            let reports = match cfg.threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| e.to_string())?
                    .install(exec),
                None => exec(),
            }
            .map_err(|e| e.to_string())?;
            match cfg.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&reports).unwrap())
                }
                Format::Table => {
                    for r in &reports {
                        println!("{:<64} {}", r.check, r.status);
                    }
                }
            }
            let any_fail = reports.iter().any(|r| r.status == Status::Fail);
            let any_inconclusive = reports.iter().any(|r| r.status == Status::Inconclusive);
            if any_fail {
                Ok(ExitCode::from(1))
            } else if cfg.strict && any_inconclusive {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
