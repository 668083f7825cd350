//! `marc` — source-channel rate computations for multiple-access relay
//! channels with correlated sources and side information.
//!
//! All subcommands read a JSON config, print a JSON report on stdout (CSV
//! with `--csv` where supported), and emit a one-line run manifest on stderr
//! with a digest of the output for reproducibility audits.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use marc_core::{
    df_achievable_region, kappa_star, mabrc_entropy_check, mabrc_kappa_star,
    mabrc_necessary_region, marc_necessary_region, minimize_necessary_kappa, phase_conditions,
    phase_necessary_kappa, phase_region, rayleigh_conditions, rayleigh_region,
    regular_encoding_region, run_scheme, threshold_sweep, verify_regular_vs_irregular,
    ChannelJson, ConditionCheck, ConverseSearchResult, EntropyVector, FactoredInputDist,
    FadingKind, FadingMarcConfig, FadingRegion, MonteCarloEstimate, RegionReport, Scenario,
    SchemeConfigJson, SourcesJson,
};

const EXIT_PARSE: i32 = 2;
const EXIT_VALIDATION: i32 = 3;
const EXIT_CAP: i32 = 4;

#[derive(Parser)]
#[command(name = "marc", version, about = "Rate regions and separation checks for multiple-access relay channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap the number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the run manifest to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Dm,
    Phase,
    Rayleigh,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Marc,
    Mabrc,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Irregular,
    Regular,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional source entropies of a joint source instance.
    Entropy {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rate region, condition slacks, and kappa* for a channel model.
    Region {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "marc")]
        scenario: ScenarioArg,
        /// Bin-rate policy for the discrete-memoryless achievable region.
        #[arg(long, value_enum, default_value = "irregular")]
        encoding: EncodingArg,
        /// Monte-Carlo samples (rayleigh model).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Restarts for the necessary-bound input search (dm model); 0 skips it.
        #[arg(long, default_value_t = 0)]
        search_budget: usize,
        /// Emit the region as a flat CSV row instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Run the Slepian-Wolf / decode-and-forward binning simulator.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep the destination bin rate of user 1 and tabulate error rates.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma list ("0.2,0.4,0.6") or range ("0.2:1.4:0.2").
        #[arg(long)]
        rates: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Compare irregular against regular (tied) bin-rate policies.
    CompareEncoding {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    Read(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Arg(String),
    Core(marc_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Read(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            CliError::Json(p, e) => write!(f, "cannot parse {}: {e}", p.display()),
            CliError::Arg(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Read(..) | CliError::Json(..) | CliError::Arg(_) => EXIT_PARSE,
            CliError::Core(e) if e.is_cap_exceeded() => EXIT_CAP,
            CliError::Core(_) => EXIT_VALIDATION,
        }
    }
}

impl From<marc_core::Error> for CliError {
    fn from(e: marc_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn read_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

#[derive(Serialize)]
struct RunManifest<'a> {
    subcommand: &'a str,
    config: String,
    seed: Option<u64>,
    version: &'a str,
    wall_ms: u128,
    output_sha256: String,
}

struct Outcome {
    subcommand: &'static str,
    config: PathBuf,
    seed: Option<u64>,
    output: String,
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Ignored if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let started = Instant::now();
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.output);
            let manifest = RunManifest {
                subcommand: outcome.subcommand,
                config: outcome.config.display().to_string(),
                seed: outcome.seed,
                version: env!("CARGO_PKG_VERSION"),
                wall_ms: started.elapsed().as_millis(),
                output_sha256: hex_digest(outcome.output.as_bytes()),
            };
            let line = serde_json::to_string(&manifest).expect("manifest serializes");
            eprintln!("{line}");
            if let Some(path) = cli.manifest {
                if let Err(e) = std::fs::write(&path, format!("{line}\n")) {
                    eprintln!("cannot write manifest {}: {e}", path.display());
                    std::process::exit(1);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Entropy { config } => {
            let sources = read_config::<SourcesJson>(&config)?.build()?;
            let ev = EntropyVector::from_sources(&sources)?;
            Ok(Outcome {
                subcommand: "entropy",
                config,
                seed: None,
                output: to_json(&ev),
            })
        }
        Command::Region {
            config,
            model,
            scenario,
            encoding,
            samples,
            seed,
            search_budget,
            csv,
        } => region_command(config, model, scenario, encoding, samples, seed, search_budget, csv),
        Command::Simulate { config, trials, seed } => {
            let scheme = read_config::<SchemeConfigJson>(&config)?.build()?;
            let report = run_scheme(&scheme, trials, seed)?;
            Ok(Outcome {
                subcommand: "simulate",
                config,
                seed: Some(seed),
                output: to_json(&report),
            })
        }
        Command::Sweep {
            config,
            rates,
            trials,
            seed,
            csv,
        } => {
            let scheme = read_config::<SchemeConfigJson>(&config)?.build()?;
            let grid = parse_rates(&rates)?;
            let table = threshold_sweep(&scheme, &grid, trials, seed)?;
            let output = if csv {
                format!("{}\n{}", marc_core::SweepTable::csv_header(), table.csv_rows())
            } else {
                to_json(&table)
            };
            Ok(Outcome {
                subcommand: "sweep",
                config,
                seed: Some(seed),
                output,
            })
        }
        Command::CompareEncoding { config, trials, seed } => {
            #[derive(Deserialize)]
            struct CompareConfig {
                irregular: SchemeConfigJson,
                regular: SchemeConfigJson,
                target_error: f64,
            }
            let cmp: CompareConfig = read_config(&config)?;
            let irregular = cmp.irregular.build()?;
            let regular = cmp.regular.build()?;
            let report =
                verify_regular_vs_irregular(&irregular, &regular, cmp.target_error, trials, seed)?;
            Ok(Outcome {
                subcommand: "compare-encoding",
                config,
                seed: Some(seed),
                output: to_json(&report),
            })
        }
    }
}

fn parse_rates(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |s: &str| CliError::Arg(format!("cannot parse rate list `{s}`"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(spec));
        }
        let lo: f64 = parts[0].parse().map_err(|_| bad(spec))?;
        let hi: f64 = parts[1].parse().map_err(|_| bad(spec))?;
        let step: f64 = parts[2].parse().map_err(|_| bad(spec))?;
        if step <= 0.0 || hi < lo {
            return Err(bad(spec));
        }
        let mut out = Vec::new();
        let mut r = lo;
        while r <= hi + 1e-12 {
            out.push(r);
            r += step;
        }
        Ok(out)
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad(spec)))
            .collect()
    }
}

#[derive(Deserialize)]
struct DmRegionConfig {
    sources: SourcesJson,
    channel: ChannelJson,
    /// Defaults to all-uniform factors with |Vi| = |Xi|.
    input: Option<FactoredInputDist>,
    /// Joint input pmf for the necessary bounds, row-major over (x1,x2,x3).
    input_joint: Option<Vec<f64>>,
}

#[derive(Deserialize)]
struct AttenuationsJson {
    a11: f64,
    a21: f64,
    a31: f64,
    a13: f64,
    a23: f64,
}

#[derive(Deserialize)]
struct FadingConfigJson {
    sources: SourcesJson,
    attenuations: AttenuationsJson,
    powers: [f64; 3],
    kind: Option<FadingKind>,
    samples: Option<u64>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct DmRegionOutput {
    model: &'static str,
    scenario: Scenario,
    encoding: &'static str,
    achievable: RegionReport,
    kappa_star: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    necessary: Option<RegionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    necessary_search: Option<ConverseSearchResult>,
}

#[derive(Serialize)]
struct MabrcOutput {
    entropy_conditions: ConditionCheck,
    kappa_star: f64,
}

#[derive(Serialize)]
struct FadingRegionOutput {
    model: &'static str,
    scenario: Scenario,
    entropies: EntropyVector,
    region: FadingRegion,
    conditions: ConditionCheck,
    kappa_star: f64,
    /// Necessary-side bound from the same closed forms (phase model).
    #[serde(skip_serializing_if = "Option::is_none")]
    necessary_kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimates: Option<[MonteCarloEstimate; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mabrc: Option<MabrcOutput>,
}

#[allow(clippy::too_many_arguments)]
fn region_command(
    config: PathBuf,
    model: ModelArg,
    scenario: ScenarioArg,
    encoding: EncodingArg,
    samples: Option<u64>,
    seed: Option<u64>,
    search_budget: usize,
    csv: bool,
) -> Result<Outcome, CliError> {
    let scenario_val = match scenario {
        ScenarioArg::Marc => Scenario::Marc,
        ScenarioArg::Mabrc => Scenario::Mabrc,
    };
    match model {
        ModelArg::Dm => {
            let cfg: DmRegionConfig = read_config(&config)?;
            let sources = cfg.sources.build()?;
            let channel = cfg.channel.build()?;
            let input = cfg
                .input
                .unwrap_or_else(|| FactoredInputDist::uniform_for(&channel));
            let achievable = match encoding {
                EncodingArg::Irregular => df_achievable_region(&sources, &channel, &input)?,
                EncodingArg::Regular => {
                    regular_encoding_region(&sources, &channel, &input, scenario_val)?
                }
            };
            let necessary = match &cfg.input_joint {
                Some(joint) => Some(match scenario_val {
                    Scenario::Marc => marc_necessary_region(&sources, &channel, joint)?,
                    Scenario::Mabrc => mabrc_necessary_region(&sources, &channel, joint)?,
                }),
                None => None,
            };
            let necessary_search = if search_budget > 0 {
                Some(minimize_necessary_kappa(
                    &sources,
                    &channel,
                    scenario_val,
                    search_budget,
                    seed.unwrap_or(0),
                )?)
            } else {
                None
            };
            let output = if csv {
                format!("{}\n{}", achievable.csv_header(), achievable.csv_row())
            } else {
                to_json(&DmRegionOutput {
                    model: "dm",
                    scenario: scenario_val,
                    encoding: match encoding {
                        EncodingArg::Irregular => "irregular",
                        EncodingArg::Regular => "regular",
                    },
                    kappa_star: achievable.kappa_star,
                    achievable,
                    necessary,
                    necessary_search,
                })
            };
            Ok(Outcome {
                subcommand: "region",
                config,
                seed,
                output,
            })
        }
        ModelArg::Phase | ModelArg::Rayleigh => {
            let cfg: FadingConfigJson = read_config(&config)?;
            let kind = match model {
                ModelArg::Phase => FadingKind::Phase,
                ModelArg::Rayleigh => FadingKind::Rayleigh,
                ModelArg::Dm => unreachable!(),
            };
            if let Some(file_kind) = cfg.kind {
                if file_kind != kind {
                    return Err(CliError::Arg(format!(
                        "config kind {file_kind:?} does not match --model"
                    )));
                }
            }
            let fading = FadingMarcConfig {
                a11: cfg.attenuations.a11,
                a21: cfg.attenuations.a21,
                a31: cfg.attenuations.a31,
                a13: cfg.attenuations.a13,
                a23: cfg.attenuations.a23,
                p1: cfg.powers[0],
                p2: cfg.powers[1],
                p3: cfg.powers[2],
                kind,
            };
            let sources = cfg.sources.build()?;
            let ev = EntropyVector::from_sources(&sources)?;
            let dest = ev.destination_triple();
            let seed_val = seed.or(cfg.seed).unwrap_or(0);
            let (region, conditions, estimates, necessary_kappa) = match kind {
                FadingKind::Phase => {
                    let region = phase_region(&fading)?;
                    let conditions = phase_conditions(&fading)?;
                    let necessary = phase_necessary_kappa(&fading, dest)?;
                    (region, conditions, None, Some(necessary))
                }
                FadingKind::Rayleigh => {
                    let n = samples.or(cfg.samples).unwrap_or(1_000_000);
                    let conditions = rayleigh_conditions(&fading)?;
                    let (region, est) = rayleigh_region(&fading, n, seed_val)?;
                    (region, conditions, Some(est), None)
                }
            };
            let mabrc = match scenario_val {
                Scenario::Mabrc => Some(MabrcOutput {
                    entropy_conditions: mabrc_entropy_check(&sources)?,
                    kappa_star: mabrc_kappa_star(&region, &ev),
                }),
                Scenario::Marc => None,
            };
            let out = FadingRegionOutput {
                model: match kind {
                    FadingKind::Phase => "phase",
                    FadingKind::Rayleigh => "rayleigh",
                },
                scenario: scenario_val,
                entropies: ev,
                kappa_star: kappa_star(&region, dest),
                region,
                conditions,
                necessary_kappa,
                estimates,
                mabrc,
            };
            if csv {
                return Err(CliError::Arg(
                    "--csv applies to the dm model only".into(),
                ));
            }
            Ok(Outcome {
                subcommand: "region",
                config,
                seed: Some(seed_val),
                output: to_json(&out),
            })
        }
    }
}
