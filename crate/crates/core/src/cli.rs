//! Command-line frontend. The binary only forwards `std::env::args` to [`run`].
//!
//! Exit codes: 0 success or equilibrium, 2 refutation, 1 any error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::beliefs::InfoSet;
use crate::equilibrium::{
    critical_psi, iterated_elimination, threshold_bounds, verify, verify_at_depth,
    EquilibriumError, Mode,
};
use crate::model::{
    fmt_rational, parse_rational, pow, to_decimal, validate, GameParams, ParamError, Rational,
};
use crate::montecarlo::{convergence_check, simulate, SimConfig};
use crate::protocol::{signal_distribution, ProtocolError};
use crate::strategies::{Lead, ProfileFamily, StrategyError, StrategyProfile};
use crate::welfare::{compare, loss_exact};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("invalid params file: {0}")]
    ParamsFile(String),
    #[error("invalid value for --{flag}: {value}")]
    BadValue { flag: &'static str, value: String },
    #[error("invalid grid {0:?}")]
    BadGrid(String),
    #[error("grid {0} is empty")]
    EmptyGrid(&'static str),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
}

#[derive(Debug, Parser)]
#[command(
    name = "emailgame",
    about = "Exact equilibrium checks for the electronic mail game with secondary signals"
)]
pub struct Cli {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Add decimal renderings (30 significant digits) next to exact values.
    #[arg(long, global = true)]
    pub decimals: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// JSON file with p, epsilon, psi, L, M, rho; the reference point is used otherwise.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    #[arg(long, global = true)]
    pub p: Option<String>,
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    #[arg(long, global = true)]
    pub psi: Option<String>,
    #[arg(long = "L", global = true)]
    pub loss: Option<String>,
    #[arg(long = "M", global = true)]
    pub gain: Option<String>,
    #[arg(long, global = true)]
    pub rho: Option<String>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// all_a, all_b, asym, mirror-asym, sym, sym-shifted or rubinstein.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Lead of player 1 for the asymmetric family.
    #[arg(long)]
    pub lead: Option<String>,
    /// Profile JSON file; overrides --family.
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Weak,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify or refute a profile; exit 2 on refutation.
    Verify {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_enum, default_value = "weak")]
        mode: ModeArg,
        /// Enumeration depth; chosen from the strategy tables when absent.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Verify families over an (epsilon, psi, n) grid and write CSV rows.
    Sweep {
        /// Comma list of rationals or geom:start:ratio:count.
        #[arg(long = "eps-grid")]
        eps_grid: String,
        #[arg(long = "psi-grid")]
        psi_grid: String,
        /// Cutoffs: comma list or a..b.
        #[arg(long, default_value = "1")]
        n: String,
        #[arg(long, default_value = "asym,sym")]
        families: String,
        #[arg(long, value_enum, default_value = "weak")]
        mode: ModeArg,
    },
    /// Exact welfare loss of asymmetric and symmetric profiles.
    Welfare {
        #[arg(long, default_value = "1..5")]
        n: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Closed-form noise bounds.
    Bounds {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monte Carlo run checked against the exact engine.
    Simulate {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Standard-error band for the comparison.
        #[arg(long, default_value_t = 4.0)]
        sigma: f64,
    },
    /// Iterated interim dominance without secondary signals.
    Eliminate {
        #[arg(long, default_value_t = 64)]
        depth: u32,
    },
    /// Bracket the largest noise level at which a family still verifies.
    Critical {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value_t = 20)]
        resolution: u32,
    },
    /// Dump the enumerated signal distribution as CSV.
    Atoms {
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {}", CliError::Write(e));
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn rational_flag(flag: &'static str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value).map_err(|_| CliError::BadValue {
        flag,
        value: value.to_string(),
    })
}

pub fn resolve_params(args: &ParamArgs) -> Result<GameParams, CliError> {
    let mut params = match &args.params {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            serde_json::from_str::<GameParams>(&text)
                .map_err(|e| CliError::ParamsFile(e.to_string()))?
        }
        None => GameParams::reference(),
    };
    let overrides: [(&'static str, &Option<String>, &mut Rational); 6] = [
        ("p", &args.p, &mut params.p),
        ("epsilon", &args.epsilon, &mut params.eps),
        ("psi", &args.psi, &mut params.psi),
        ("L", &args.loss, &mut params.loss),
        ("M", &args.gain, &mut params.gain),
        ("rho", &args.rho, &mut params.rho),
    ];
    for (flag, value, slot) in overrides {
        if let Some(v) = value {
            *slot = rational_flag(flag, v)?;
        }
    }
    validate(&params)?;
    Ok(params)
}

fn resolve_profile(
    args: &ProfileArgs,
    default: Option<&str>,
) -> Result<(StrategyProfile, String), CliError> {
    if let Some(path) = &args.profile {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.clone(),
            source,
        })?;
        return Ok((StrategyProfile::from_json(&text)?, "custom".to_string()));
    }
    let (family, _) = resolve_family(args, default)?;
    Ok((family.profile(args.n)?, family.name().to_string()))
}

fn resolve_family(
    args: &ProfileArgs,
    default: Option<&str>,
) -> Result<(ProfileFamily, u32), CliError> {
    let name =
        args.family.as_deref().or(default).ok_or_else(|| {
            CliError::Usage("either --family or --profile is required".to_string())
        })?;
    let lead = args.lead.as_deref().map(str::parse::<Lead>).transpose()?;
    Ok((ProfileFamily::parse(name, lead)?, args.n))
}

/// `# params p=.. epsilon=.. psi=.. L=.. M=.. rho=..`
pub fn params_comment(params: &GameParams) -> String {
    format!(
        "# params p={} epsilon={} psi={} L={} M={} rho={}",
        params.p, params.eps, params.psi, params.loss, params.gain, params.rho
    )
}

/// Parses `a,b,c` or `geom:start:ratio:count` into rationals.
pub fn parse_rational_grid(spec: &str) -> Result<Vec<Rational>, CliError> {
    let bad = || CliError::BadGrid(spec.to_string());
    if let Some(rest) = spec.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [start, ratio, count] = parts.as_slice() else {
            return Err(bad());
        };
        let start = parse_rational(start).map_err(|_| bad())?;
        let ratio = parse_rational(ratio).map_err(|_| bad())?;
        let count: u32 = count.parse().map_err(|_| bad())?;
        return Ok((0..count).map(|k| &start * pow(&ratio, k)).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rational(s).map_err(|_| bad()))
        .collect()
}

/// Parses `a..b` (inclusive) or `a,b,c`.
pub fn parse_int_grid(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::BadGrid(spec.to_string());
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn non_empty<T>(name: &'static str, grid: Vec<T>) -> Result<Vec<T>, CliError> {
    if grid.is_empty() {
        Err(CliError::EmptyGrid(name))
    } else {
        Ok(grid)
    }
}

fn info_label(info: &InfoSet) -> String {
    format!("P{}(t={};z={})", info.player.id(), info.t, info.z)
}

fn json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    text
}

fn mode(arg: ModeArg) -> Mode {
    match arg {
        ModeArg::Weak => Mode::Weak,
        ModeArg::Strict => Mode::Strict,
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(&cli.params)?;
    match &cli.command {
        Command::Verify {
            profile,
            mode: m,
            depth,
        } => {
            let (profile, name) = resolve_profile(profile, None)?;
            let cert = match depth {
                Some(d) => verify_at_depth(&params, &profile, mode(*m), *d)?,
                None => verify(&params, &profile, mode(*m))?,
            };
            let mut value = cert.to_json(&params);
            value["family"] = name.into();
            value["profile"] = serde_json::from_str(&profile.to_json()).expect("profile json");
            if cli.decimals {
                value["min_slack_decimal"] = to_decimal(&cert.min_slack, 30).into();
            }
            let code = if cert.is_equilibrium() {
                EXIT_OK
            } else {
                EXIT_REFUTED
            };
            Ok((json_text(&value), code))
        }
        Command::Sweep {
            eps_grid,
            psi_grid,
            n,
            families,
            mode: m,
        } => {
            let eps = non_empty("eps-grid", parse_rational_grid(eps_grid)?)?;
            let psi = non_empty("psi-grid", parse_rational_grid(psi_grid)?)?;
            let ns = non_empty("n", parse_int_grid(n)?)?;
            let fams = non_empty(
                "families",
                families
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| ProfileFamily::parse(s.trim(), None))
                    .collect::<Result<Vec<_>, _>>()?,
            )?;
            let mut points = Vec::new();
            for e in &eps {
                for s in &psi {
                    let point = params.with_eps(e.clone()).with_psi(s.clone());
                    validate(&point)?;
                    for f in &fams {
                        for n in &ns {
                            points.push((point.clone(), *f, *n));
                        }
                    }
                }
            }
            let rows = points
                .par_iter()
                .map(|(point, family, n)| {
                    let cert = verify(point, &family.profile(*n)?, mode(*m))?;
                    let mut row = format!(
                        "{},{},{},{},{},{},{}",
                        point.eps,
                        point.psi,
                        family.name(),
                        n,
                        cert.verdict,
                        fmt_rational(&cert.min_slack),
                        info_label(&cert.binding)
                    );
                    if cli.decimals {
                        let _ = write!(row, ",{}", to_decimal(&cert.min_slack, 30));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<String>, CliError>>()?;
            let mut text = params_comment(&params);
            text.push_str("\nepsilon,psi,family,n,verdict,min_slack,binding_info_set");
            if cli.decimals {
                text.push_str(",min_slack_decimal");
            }
            text.push('\n');
            for row in rows {
                text.push_str(&row);
                text.push('\n');
            }
            Ok((text, EXIT_OK))
        }
        Command::Welfare { n, format } => {
            let ns = non_empty("n", parse_int_grid(n)?)?;
            let table = compare(&params, &ns)?;
            let text = match format {
                Format::Csv => table.to_csv(cli.decimals),
                Format::Json => {
                    json_text(&serde_json::to_value(&table).expect("welfare serializes"))
                }
            };
            Ok((text, EXIT_OK))
        }
        Command::Bounds { format } => {
            let bounds = threshold_bounds(&params);
            let text = match format {
                Format::Json => {
                    let mut value = serde_json::to_value(&bounds).expect("bounds serialize");
                    value["params"] = serde_json::to_value(&params).expect("params serialize");
                    if cli.decimals {
                        for key in ["psi1", "psi2", "psi3", "psibar2"] {
                            let exact = parse_rational(value[key].as_str().expect("string"))
                                .expect("rational");
                            value[format!("{key}_decimal")] = to_decimal(&exact, 30).into();
                        }
                    }
                    json_text(&value)
                }
                Format::Csv => format!(
                    "{}\npsi1,psi2,psi3,psibar2\n{},{},{},{}\n",
                    params_comment(&params),
                    bounds.psi1,
                    bounds.psi2,
                    bounds.psi3,
                    bounds.psibar2
                ),
            };
            Ok((text, EXIT_OK))
        }
        Command::Simulate {
            profile,
            samples,
            seed,
            sigma,
        } => {
            if *samples == 0 {
                return Err(CliError::BadValue {
                    flag: "samples",
                    value: "0".to_string(),
                });
            }
            let (profile, name) = resolve_profile(profile, Some("asym"))?;
            let exact = loss_exact(&params, &profile)?;
            let config = SimConfig {
                samples: *samples,
                seed: *seed,
                params: params.clone(),
                profile,
            };
            let result = simulate(&config)?;
            let check = convergence_check(&result, &exact, *sigma);
            let value = serde_json::json!({
                "family": name,
                "seed": seed,
                "result": result,
                "check": check,
            });
            Ok((json_text(&value), EXIT_OK))
        }
        Command::Eliminate { depth } => {
            let report = iterated_elimination(&params, *depth)?;
            Ok((
                json_text(&serde_json::to_value(&report).expect("report serializes")),
                EXIT_OK,
            ))
        }
        Command::Critical {
            profile,
            resolution,
        } => {
            let (family, n) = resolve_family(profile, Some("asym"))?;
            let report = critical_psi(&params, family, n, *resolution)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["params"] = serde_json::to_value(&params).expect("params serialize");
            Ok((json_text(&value), EXIT_OK))
        }
        Command::Atoms { depth } => {
            let dist = signal_distribution(&params, *depth)?;
            let mut text = params_comment(&params);
            text.push('\n');
            text.push_str(&dist.to_csv());
            Ok((text, EXIT_OK))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ratio;

    #[test]
    fn grids() {
        assert_eq!(
            parse_rational_grid("1/100,1/20").unwrap(),
            vec![ratio(1, 100), ratio(1, 20)]
        );
        assert_eq!(
            parse_rational_grid("geom:1/2:1/2:3").unwrap(),
            vec![ratio(1, 2), ratio(1, 4), ratio(1, 8)]
        );
        assert_eq!(parse_int_grid("1..3").unwrap(), vec![1, 2, 3]);
        assert!(parse_int_grid("x").is_err());
        assert!(parse_rational_grid("geom:1").is_err());
        assert!(parse_rational_grid("").unwrap().is_empty());
    }

    #[test]
    fn params_comment_lists_everything() {
        assert_eq!(
            params_comment(&GameParams::reference()),
            "# params p=1/4 epsilon=1/10 psi=1/100 L=2 M=1 rho=1/2"
        );
    }
}
