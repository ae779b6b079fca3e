use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modcheck::catalog::{generate, standard_fixtures, FixtureSpec};
use modcheck::characters::DEFAULT_TRUNCATION;
use modcheck::io::{load_dir, read_modular_data, to_json, write_fixture, FusionDoc};
use modcheck::pipeline::{run, run_with_flipped_s, RunConfig};
use modcheck::report::report_json_schema;
use modcheck::verlinde::verlinde_fusion;
use modcheck::{Error, ModularData, VerificationReport};

/// Verify modular data, fusing/braiding data and characters.
#[derive(Parser)]
#[command(name = "modcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check on a fixture directory.
    Verify {
        dir: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
        /// Test hook: flip the sign of one seeded-random entry of S.
        #[arg(long = "break", value_name = "S", hide = true)]
        mutate: Option<String>,
    },
    /// Print the fusion table obtained from S by the Verlinde formula.
    Fusion {
        md: PathBuf,
        #[arg(long, default_value = "human")]
        format: Format,
        /// Integrality tolerance.
        #[arg(long, default_value_t = modcheck::verlinde::DEFAULT_INTEGRALITY_TOLERANCE)]
        integrality: f64,
    },
    /// Generate fixture documents.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the JSON schema of verification reports.
    ReportSchema,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Write one fixture: `emit su2_level_k 3 --out dir`.
    Emit {
        family: String,
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write every standard fixture into subdirectories of `--out`.
    Standard {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunOpts {
    /// Tolerance override `name=value`; name is a check or a class
    /// (residual, integrality, threshold, character).
    #[arg(long = "tol", value_name = "NAME=VAL", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Sample point `re,im` for the character check (repeatable).
    #[arg(long = "tau", value_name = "RE,IM", value_parser = parse_tau, allow_hyphen_values = true)]
    tau: Vec<(f64, f64)>,
    /// Character truncation order.
    #[arg(short = 'L', default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    #[arg(long, default_value = "human")]
    format: Format,
    /// Seed for eigenspace splitting and mutations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, val) = s.split_once('=').ok_or("expected NAME=VAL")?;
    let v: f64 = val
        .trim()
        .parse()
        .map_err(|_| format!("'{val}' is not a number"))?;
    Ok((name.trim().to_string(), v))
}

fn parse_tau(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s.split_once(',').ok_or("expected RE,IM")?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("'{re}' is not a number"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| format!("'{im}' is not a number"))?;
    Ok((re, im))
}

impl RunOpts {
    fn config(&self) -> RunConfig {
        let mut config = RunConfig {
            tolerances: self.tol.iter().cloned().collect::<BTreeMap<_, _>>(),
            truncation: self.truncation,
            seed: self.seed,
            ..RunConfig::default()
        };
        if !self.tau.is_empty() {
            config.taus = self.tau.clone();
        }
        config
    }
}

fn print_report(report: &VerificationReport, format: Format) {
    match format {
        Format::Human => print!("{}", report.to_human()),
        Format::Json => println!("{}", report.to_json()),
    }
}

fn verify(dir: &Path, opts: &RunOpts, mutate: Option<&str>) -> Result<u8, Error> {
    let bundle = load_dir::<f64>(dir)?;
    let config = opts.config();
    let report = match mutate {
        None => run(&bundle, &config)?,
        Some("S") => run_with_flipped_s(&bundle, &config, opts.seed)?.0,
        Some(other) => {
            return Err(Error::Parse(format!(
                "--break supports only S, got '{other}'"
            )))
        }
    };
    print_report(&report, opts.format);
    Ok(report.exit_code() as u8)
}

fn fusion(path: &Path, format: Format, integrality: f64) -> Result<u8, Error> {
    let md: ModularData = read_modular_data(path)?;
    let v = verlinde_fusion(&md, integrality)?;
    let labels = md.labels();
    match format {
        Format::Json => print!("{}", to_json(&FusionDoc::from_tensor(&v.tensor, labels))),
        Format::Human => {
            for a in 0..md.rank() {
                for b in 0..md.rank() {
                    let terms: Vec<String> = (0..md.rank())
                        .filter(|&c| v.tensor.get(a, b, c) > 0)
                        .map(|c| match v.tensor.get(a, b, c) {
                            1 => labels.name(c).to_string(),
                            n => format!("{n} {}", labels.name(c)),
                        })
                        .collect();
                    println!(
                        "{} x {} = {}",
                        labels.name(a),
                        labels.name(b),
                        terms.join(" + ")
                    );
                }
            }
            println!("max deviation from integers: {:.3e}", v.max_deviation);
        }
    }
    Ok(0)
}

fn catalog(action: &CatalogAction) -> Result<u8, Error> {
    match action {
        CatalogAction::Emit {
            family,
            params,
            out,
        } => {
            let spec = FixtureSpec::parse(family, params)?;
            write_fixture(&generate::<f64>(&spec)?, out)?;
        }
        CatalogAction::Standard { out } => {
            for spec in standard_fixtures() {
                write_fixture(&generate::<f64>(&spec)?, &out.join(spec.name()))?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { dir, opts, mutate } => verify(dir, opts, mutate.as_deref()),
        Command::Fusion {
            md,
            format,
            integrality,
        } => fusion(md, *format, *integrality),
        Command::Catalog { action } => catalog(action),
        Command::ReportSchema => {
            print!("{}", to_json(&report_json_schema()));
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("modcheck: {e}");
            ExitCode::from(2)
        }
    }
}
