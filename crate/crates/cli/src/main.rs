//! `efa`: inspect, construct and verify finite effect algebras stored in
//! the `.efa` text format.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use efa_core::construct::{self, catalog};
use efa_core::families::{closure, find_cover};
use efa_core::structure::{self, classification_report, StructureError};
use efa_core::verify::{self, SearchOutcome, SuiteConfig, WitnessRecord};
use efa_core::{dot, format, Budget, EffectAlgebra, ElementSet, SearchError};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "efa", version, about = "Finite effect algebra toolkit")]
struct Cli {
    /// Node limit for exponential searches; 0 means unlimited.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_NODES)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a file against the effect algebra axioms.
    Check { file: PathBuf },
    /// Class memberships, blocks, sharp elements and centers.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Blocks, one per line.
    Blocks {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sharp elements.
    Sharp {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Central elements.
    Center {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compatibility center: the intersection of all blocks.
    Kcenter {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Closure of a set of elements.
    Closure {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Orthogonal cover of a set with range inside another set.
    Cover {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        /// Defaults to the whole carrier.
        #[arg(long, value_delimiter = ',')]
        within: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Direct product.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Horizontal sum (0,1-pasting).
    Hsum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Interval algebra `[0, top]`.
    Interval {
        file: PathBuf,
        #[arg(long)]
        top: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A named catalog algebra: trivial, chain N, boolean K, mo K, r6, l18,
    /// gen18, wright.
    Catalog {
        name: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every theorem check on one algebra.
    Suite {
        file: PathBuf,
        /// Largest subset size for subset-quantified checks.
        #[arg(long, default_value_t = 3)]
        subset_cap: usize,
    },
    /// Run the suite over the enumeration, the catalog and constructions.
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        subset_cap: usize,
        #[arg(long)]
        json: bool,
        /// Directory receiving one witness file per failure.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Counterexample search: compatible-embeds-in-block, k-rdp or
    /// cb-block-of-es.
    Question {
        name: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        subset_cap: usize,
        #[arg(long)]
        json: bool,
        /// Write the counterexample record here, if one is found.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Re-run the check recorded in a witness file.
    Replay { witness: PathBuf },
    /// Hasse diagram in DOT.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(err: SearchError) -> Self {
        CliError::Budget(err.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(err: StructureError) -> Self {
        match err {
            StructureError::Search(s) => s.into(),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = if cli.budget == 0 {
        Budget::unlimited()
    } else {
        Budget::nodes(cli.budget)
    };
    match run(cli.command, budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("efa: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))
}

fn load(path: &Path) -> Result<EffectAlgebra, CliError> {
    format::parse(&read(path)?).map_err(|err| CliError::Failure(format!("{}: {err}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|err| CliError::Failure(format!("{}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn names_to_set(e: &EffectAlgebra, names: &[String]) -> Result<ElementSet, CliError> {
    names
        .iter()
        .map(|n| e.id(n).ok_or_else(|| CliError::Usage(format!("unknown element `{n}`"))))
        .collect()
}

fn print_set(e: &EffectAlgebra, set: &ElementSet, as_json: bool) {
    if as_json {
        print!("{}", json(&e.set_names(set)));
    } else {
        for name in e.set_names(set) {
            println!("{name}");
        }
    }
}

fn config(budget: Budget, subset_cap: usize) -> SuiteConfig {
    SuiteConfig {
        budget,
        subset_cap,
        ignore_hypotheses: false,
    }
}

fn run(command: Command, budget: Budget) -> Result<(), CliError> {
    match command {
        Command::Check { file } => {
            let doc = format::parse_document(&read(&file)?)
                .map_err(|err| CliError::Failure(format!("{}: {err}", file.display())))?;
            match doc.to_algebra() {
                Ok(e) => {
                    println!("valid effect algebra with {} elements", e.len());
                    Ok(())
                }
                Err(err) => {
                    for v in err.violations() {
                        println!("{v}");
                    }
                    Err(CliError::Failure(err.to_string()))
                }
            }
        }
        Command::Classify { file, json: as_json } => {
            let e = load(&file)?;
            let report = classification_report(&e, budget)?.to_json(&e);
            if as_json {
                print!("{}", json(&report));
            } else {
                let yes = |b: bool| if b { "true" } else { "false" };
                println!("elements: {}", report.elements);
                for (what, v) in [
                    ("orthoalgebra", &report.orthoalgebra),
                    ("omp", &report.omp),
                    ("lattice", &report.lattice),
                    ("mv", &report.mv),
                    ("boolean", &report.boolean),
                    ("rdp", &report.rdp),
                    ("homogeneous", &report.homogeneous),
                ] {
                    match &v.witness {
                        Some(w) => println!("{what}: false ({} {})", w.kind, w.elements.join(" ")),
                        None => println!("{what}: {}", yes(v.holds)),
                    }
                }
                println!("compatible: {}", yes(report.compatible));
                println!("homogeneous (via blocks): {}", yes(report.homogeneous_via_blocks));
                for b in &report.blocks {
                    println!("block: {}", b.join(" "));
                }
                println!("sharp: {}", report.sharp.join(" "));
                println!("principal: {}", report.principal.join(" "));
                println!("center: {}", report.central.join(" "));
                println!("kcenter: {}", report.k_center.join(" "));
                println!("sharp is sub-effect algebra: {}", yes(report.sharp_is_subalgebra));
            }
            Ok(())
        }
        Command::Blocks { file, json: as_json } => {
            let e = load(&file)?;
            let blocks = structure::blocks(&e, budget)?;
            let named: Vec<Vec<String>> = blocks.blocks.iter().map(|b| e.set_names(b)).collect();
            if as_json {
                print!("{}", json(&named));
            } else {
                for b in named {
                    println!("{}", b.join(" "));
                }
            }
            Ok(())
        }
        Command::Sharp { file, json: as_json } => {
            let e = load(&file)?;
            print_set(&e, &structure::sharp_elements(&e), as_json);
            Ok(())
        }
        Command::Center { file, json: as_json } => {
            let e = load(&file)?;
            print_set(&e, &structure::central_elements(&e), as_json);
            Ok(())
        }
        Command::Kcenter { file, json: as_json } => {
            let e = load(&file)?;
            let blocks = structure::blocks(&e, budget)?;
            print_set(&e, &structure::compatibility_center(&blocks), as_json);
            Ok(())
        }
        Command::Closure { file, set } => {
            let e = load(&file)?;
            let m = names_to_set(&e, &set)?;
            print_set(&e, &closure(&e, &m), false);
            Ok(())
        }
        Command::Cover {
            file,
            set,
            within,
            json: as_json,
        } => {
            let e = load(&file)?;
            let m = names_to_set(&e, &set)?;
            let within = match within {
                Some(w) => names_to_set(&e, &w)?,
                None => e.carrier(),
            };
            match find_cover(&e, &m, &within, budget)? {
                Some(cert) if as_json => print!("{}", json(&cert.to_json(&e))),
                Some(cert) => {
                    println!("family: {}", cert.family.names(&e).join(" "));
                    for (x, idx) in &cert.assignment {
                        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                        println!("{} <- {{{}}}", e.name(*x), parts.join(","));
                    }
                }
                None if as_json => println!("null"),
                None => println!("none"),
            }
            Ok(())
        }
        Command::Product { a, b, output } => {
            let p = construct::direct_product(&load(&a)?, &load(&b)?).map_err(|err| CliError::Failure(err.to_string()))?;
            emit(&format::serialize(&p), output.as_deref())
        }
        Command::Hsum { a, b, output } => {
            let h = construct::horizontal_sum(&load(&a)?, &load(&b)?).map_err(|err| CliError::Failure(err.to_string()))?;
            emit(&format::serialize(&h), output.as_deref())
        }
        Command::Interval { file, top, output } => {
            let e = load(&file)?;
            let a = e.id(&top).ok_or_else(|| CliError::Usage(format!("unknown element `{top}`")))?;
            let sub = construct::interval_algebra(&e, a).map_err(|err| CliError::Failure(err.to_string()))?;
            emit(&format::serialize(&sub), output.as_deref())
        }
        Command::Catalog { name, params, output } => {
            let e = catalog::catalog(&name, &params).map_err(|err| CliError::Usage(err.to_string()))?;
            emit(&format::serialize(&e), output.as_deref())
        }
        Command::Suite { file, subset_cap } => {
            let e = load(&file)?;
            let cfg = config(budget, subset_cap);
            let checks = verify::run_suite_with(&e, &cfg);
            let mut failed = 0;
            let mut skipped = 0;
            for c in &checks {
                match &c.outcome {
                    verify::Outcome::Pass => println!("{:<18} pass", c.id),
                    verify::Outcome::NotApplicable(why) => println!("{:<18} n/a ({why})", c.id),
                    verify::Outcome::Skipped(why) => {
                        skipped += 1;
                        println!("{:<18} skipped ({why})", c.id);
                    }
                    verify::Outcome::Fail(f) => {
                        failed += 1;
                        let names: Vec<&str> = f.elements.iter().map(|&x| e.name(x)).collect();
                        println!("{:<18} FAIL {} [{}]", c.id, f.detail, names.join(", "));
                    }
                }
            }
            if failed > 0 {
                Err(CliError::Failure(format!("{failed} check(s) failed")))
            } else if skipped > 0 {
                Err(CliError::Budget(format!("{skipped} check(s) exceeded the search budget")))
            } else {
                Ok(())
            }
        }
        Command::Sweep {
            max_n,
            subset_cap,
            json: as_json,
            witnesses,
        } => {
            let summary =
                verify::sweep(max_n, &config(budget, subset_cap)).map_err(|err| CliError::Usage(err.to_string()))?;
            if as_json {
                print!("{}", json(&summary));
            } else {
                print!("{}", summary.render());
            }
            if let Some(dir) = witnesses {
                fs::create_dir_all(&dir).map_err(|err| CliError::Failure(format!("{}: {err}", dir.display())))?;
                for (k, record) in summary.failures.iter().enumerate() {
                    let path = dir.join(format!("witness-{k}-{}.json", record.check));
                    emit(&json(record), Some(&path))?;
                }
            }
            if !summary.is_clean() {
                Err(CliError::Failure(format!("{} failure(s)", summary.failures.len())))
            } else if !summary.skipped.is_empty() {
                Err(CliError::Budget(format!("{} check(s) exceeded the search budget", summary.skipped.len())))
            } else {
                Ok(())
            }
        }
        Command::Question {
            name,
            max_n,
            subset_cap,
            json: as_json,
            witness,
        } => {
            let report = verify::search_question(&name, max_n, &config(budget, subset_cap)).map_err(|err| match err {
                verify::VerifyError::UnknownQuestion(_) => CliError::Usage(err.to_string()),
                other => CliError::Failure(other.to_string()),
            })?;
            if as_json {
                print!("{}", json(&report));
            } else {
                print!("{}", report.render());
            }
            if let (Some(path), SearchOutcome::Counterexample(record)) = (witness, &report.outcome) {
                emit(&json(record), Some(&path))?;
            }
            report
                .replay()
                .map_err(|err| CliError::Failure(format!("counterexample does not replay: {err}")))?;
            if report.notes.is_empty() {
                Ok(())
            } else {
                Err(CliError::Budget(format!("{} instance(s) exceeded the search budget", report.notes.len())))
            }
        }
        Command::Replay { witness } => {
            let record: WitnessRecord =
                serde_json::from_str(&read(&witness)?).map_err(|err| CliError::Usage(format!("{}: {err}", witness.display())))?;
            verify::replay_witness(&record).map_err(|err| CliError::Failure(err.to_string()))?;
            println!("reproduced: {} on {} [{}]", record.check, record.instance, record.elements.join(", "));
            Ok(())
        }
        Command::ExportDot { file, output } => {
            let e = load(&file)?;
            emit(&dot::to_dot(&e), output.as_deref())
        }
    }
}
