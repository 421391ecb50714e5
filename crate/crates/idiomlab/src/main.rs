use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use idiomlab::catalog::{catalog, catalog_get, parse_instance, InstanceSpec};
use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache};
use idiomlab::report::{build_report, export_dot, Report};
use idiomlab::theory::{classify, theorem_audit_with, ModuleAnalysis};
use idiomlab::{Error, Limits};

#[derive(Parser)]
#[command(name = "idiomlab", version, about = "Spectral invariants of finite rings and modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a JSON instance file or a built-in catalog entry.
    Analyze {
        /// Path to an instance file, or a catalog name.
        target: String,
        /// "all" runs the derived-module audits too; "basic" skips them.
        #[arg(long, default_value = "all")]
        audit: String,
        /// Directory to write DOT graph exports into.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// File to write the JSON report to (stdout gets a summary line).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the analysis size cap.
        #[arg(long)]
        max_size: Option<usize>,
        /// Worker threads for the audit pipeline.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List the built-in instances, or print one as JSON.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },
    /// Analyze the whole catalog with full audits and report violations.
    Selftest {
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get { name: String },
}

fn effective_limits(spec: &InstanceSpec, flag: Option<usize>) -> Limits {
    let mut limits = Limits::default();
    let from_env = std::env::var("IDIOMLAB_MAX_SIZE")
        .ok()
        .and_then(|v| v.parse().ok());
    let from_spec = spec.options.as_ref().and_then(|o| o.max_size);
    if let Some(n) = flag.or(from_env).or(from_spec) {
        limits.max_analysis_size = n;
    }
    limits
}

fn run_one(spec: &InstanceSpec, limits: &Limits, audit_all: bool) -> Result<Report, Error> {
    let ring = Arc::new(FiniteRing::construct(&spec.ring, limits)?);
    let module = FiniteModule::construct(&ring, &spec.module, limits)?;
    let cache = HomCache::new();
    let analysis = ModuleAnalysis::compute(&module, &cache, limits)?;
    let classes = classify(&analysis);
    let audit = theorem_audit_with(&analysis, &cache, limits, audit_all)?;
    Ok(build_report(spec, &analysis, &classes, &audit))
}

fn write_dot(spec: &InstanceSpec, limits: &Limits, dir: &Path) -> Result<(), Error> {
    let ring = Arc::new(FiniteRing::construct(&spec.ring, limits)?);
    let module = FiniteModule::construct(&ring, &spec.module, limits)?;
    let cache = HomCache::new();
    let analysis = ModuleAnalysis::compute(&module, &cache, limits)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::SchemaError {
        path: dir.display().to_string(),
        reason: e.to_string(),
    })?;
    for (name, content) in export_dot(&analysis) {
        let path = dir.join(name);
        std::fs::write(&path, content).map_err(|e| Error::SchemaError {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
    }
    Ok(())
}

fn load_target(target: &str) -> Result<InstanceSpec, Error> {
    let path = Path::new(target);
    if path.is_file() {
        parse_instance(path)
    } else {
        catalog_get(target)
    }
}

fn summary_line(r: &Report) -> String {
    format!(
        "{}: |Lambda|={} |Lambda^fi|={} |Spec|={} |mx|={} |mx^fi|={} SH={} Gelfand={} quasi-duo={} pm={} audit: {} pass / {} unmet / {} violated",
        r.instance,
        r.lattice.full_size,
        r.lattice.fi_size,
        r.spectra.spec.len(),
        r.spectra.mx.len(),
        r.spectra.mx_fi.len(),
        r.classes.strongly_harmonic.holds,
        r.classes.gelfand.holds,
        r.classes.quasi_duo.holds,
        r.classes.pm.holds,
        r.passed,
        r.hypotheses_unmet,
        r.violated,
    )
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(k) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

fn fail(e: Error) -> ExitCode {
    let payload = serde_json::json!({
        "error": e.to_string(),
        "exit_code": e.exit_code(),
    });
    eprintln!("{payload}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            target,
            audit,
            dot,
            json,
            max_size,
            jobs,
        } => {
            configure_jobs(jobs);
            if audit != "all" && audit != "basic" {
                return fail(Error::ParseError(format!(
                    "--audit must be \"all\" or \"basic\", got {audit:?}"
                )));
            }
            let spec = match load_target(&target) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let limits = effective_limits(&spec, max_size);
            let report = match run_one(&spec, &limits, audit == "all") {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Some(path) = &json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    return fail(Error::SchemaError {
                        path: path.display().to_string(),
                        reason: e.to_string(),
                    });
                }
            }
            if let Some(dir) = &dot {
                if let Err(e) = write_dot(&spec, &limits, dir) {
                    return fail(e);
                }
            }
            if json.is_none() {
                print!("{}", report.to_json());
            } else {
                println!("{}", summary_line(&report));
            }
            if report.clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Catalog { action } => match action {
            None | Some(CatalogAction::List) => {
                for spec in catalog() {
                    println!("{}", spec.display_name());
                }
                ExitCode::SUCCESS
            }
            Some(CatalogAction::Get { name }) => match catalog_get(&name) {
                Ok(spec) => {
                    println!("{}", serde_json::to_string_pretty(&spec).unwrap());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            },
        },
        Command::Selftest { jobs } => {
            configure_jobs(jobs);
            let specs = catalog();
            let results: Vec<(String, Result<Report, Error>)> = specs
                .par_iter()
                .map(|spec| {
                    let limits = effective_limits(spec, None);
                    (spec.display_name(), run_one(spec, &limits, true))
                })
                .collect();
            let mut violations = 0usize;
            for (name, result) in &results {
                match result {
                    Ok(report) => {
                        println!("{}", summary_line(report));
                        violations += report.violated;
                    }
                    Err(e) => {
                        println!("{name}: error: {e}");
                        return fail(Error::ParseError(format!("selftest failed on {name}: {e}")));
                    }
                }
            }
            if violations == 0 {
                println!("selftest: all catalog audits clean");
                ExitCode::SUCCESS
            } else {
                println!("selftest: {violations} violated audit entries");
                ExitCode::from(1)
            }
        }
    }
}
