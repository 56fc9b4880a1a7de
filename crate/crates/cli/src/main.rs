mod script;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pi1_core::cover::GroupRef;
use pi1_core::group::catalog::Catalog;
use pi1_core::oracle::{census_text, enumerate_connected_covers_with, quotient_census, selftest, SelftestOptions};
use pi1_core::realizability::{affine_realizable_config, projective_realizable, tame_realizable_config};
use pi1_core::{CoverFile, CurveConfiguration, Error, PermutationGroup, Result};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "pi1", version, about = "Fundamental-group invariants and Galois covers of seminormal curves")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; all outputs are independent of this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Affine,
    Projective,
    Tame,
}

#[derive(Subcommand)]
enum Command {
    /// Report every invariant violation of a configuration.
    Validate { config: PathBuf },
    /// δ and the rank bounds of a configuration.
    Invariants { config: PathBuf },
    /// Decide whether a group is a quotient of the fundamental group.
    Realizable {
        config: PathBuf,
        /// Catalog name or group file.
        #[arg(long)]
        group: String,
        #[arg(long = "char")]
        characteristic: u64,
        /// Defaults to projective for projective configurations, else affine.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Run a gluing script and print the resulting cover.
    Glue { script: PathBuf },
    /// Count connected covers of a genus-0 configuration, or list every
    /// catalog group that occurs when no group is given.
    Enumerate {
        config: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// Largest catalog order in the census.
        #[arg(long, default_value_t = 24)]
        max_order: u64,
        #[arg(long, default_value_t = 4)]
        witnesses: usize,
        /// Plain-text census table instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Graphviz rendering of a configuration or a cover file.
    ExportDot { file: PathBuf },
    /// Run the built-in oracle suites.
    Selftest {
        #[arg(long, default_value_t = 12)]
        max_order: u64,
        #[arg(long, default_value_t = 100)]
        configs: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A catalog name, or a path to a group file.
fn group_arg(arg: &str) -> Result<PermutationGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        let r: GroupRef = serde_json::from_str(&read(path)?)?;
        return r.resolve();
    }
    Catalog::load()?.group(arg)
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", s.expect("serializable"));
}

/// `Ok(false)` means the command ran but the answer is a domain failure.
fn run(cli: &Cli) -> Result<bool> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Validate { config } => {
            let c = CurveConfiguration::from_json(&read(config)?)?;
            let report = c.validate();
            emit(&json!({"valid": report.is_valid(), "violations": report.violations}), pretty);
            Ok(report.is_valid())
        }
        Command::Invariants { config } => {
            emit(&CurveConfiguration::from_path(config)?.rank_report()?, pretty);
            Ok(true)
        }
        Command::Realizable {
            config,
            group,
            characteristic,
            mode,
        } => {
            let c = CurveConfiguration::from_path(config)?;
            let g = group_arg(group)?;
            let mode = mode.unwrap_or(if c.is_projective() { Mode::Projective } else { Mode::Affine });
            let v = match mode {
                Mode::Affine => affine_realizable_config(&g, *characteristic, &c)?,
                Mode::Projective => projective_realizable(&g, *characteristic, &c)?,
                Mode::Tame => tame_realizable_config(&g, *characteristic, &c)?,
            };
            emit(&v, pretty);
            Ok(true)
        }
        Command::Glue { script } => {
            let (s, dir) = script::Script::load(script)?;
            let cover = s.run(dir)?;
            emit(
                &json!({
                    "connected": cover.is_connected()?,
                    "galois": cover.is_galois()?,
                    "cover": CoverFile::from_descriptor(&cover),
                }),
                pretty,
            );
            Ok(true)
        }
        Command::Enumerate {
            config,
            group,
            max_order,
            witnesses,
            text,
        } => {
            let c = CurveConfiguration::from_path(config)?;
            match group {
                Some(name) => {
                    let g = group_arg(name)?;
                    let e = enumerate_connected_covers_with(&g, &c, *witnesses)?;
                    emit(
                        &json!({
                            "order": g.order() as u64,
                            "delta": c.delta()?,
                            "tuples": e.tuples as u64,
                            "connected": e.count as u64,
                            "witnesses": e.witnesses,
                        }),
                        pretty,
                    );
                }
                None => {
                    let census = quotient_census(&Catalog::load()?, &c, *max_order)?;
                    if *text {
                        print!("{}", census_text(&census));
                    } else {
                        emit(&census, pretty);
                    }
                }
            }
            Ok(true)
        }
        Command::ExportDot { file } => {
            let text = read(file)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let dot = if value.get("group").is_some() {
                CoverFile::from_json(&text)?.resolve(file.parent())?.to_dot()?
            } else {
                CurveConfiguration::from_json(&text)?.to_dot()?
            };
            print!("{dot}");
            Ok(true)
        }
        Command::Selftest { max_order, configs } => {
            let report = selftest(&SelftestOptions {
                seed: cli.seed,
                max_order: *max_order,
                random_configs: *configs,
            })?;
            println!("{}", report.to_json(pretty));
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
