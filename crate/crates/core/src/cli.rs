//! Command-line front end. Every report is JSON (compact by default, pretty
//! with `--human`); distributions use the format of [`crate::probtab::io`].
//!
//! Exit codes: 0 success, 1 a check came out negative (no certificate, not
//! chain-compatible, a failing criterion), 2 bad input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::bayesnet::build_dag;
use crate::inflation::{certify_triangle_incompatibility, certify_triangle_incompatibility_paired, InflationVerdict};
use crate::optimize::{
    delta_indicator, extremize_under_local_channels, i_min_network, Direction, NetworkFamily, OptimizerConfig,
};
use crate::probtab::{families, io, JointDistribution};
use crate::quantum::{
    born_distribution, canonical_tripartite_state, chain_realization, star_network_distribution, tripartite_spec,
    CanonicalFamily, MeasurementSet, NetworkSpec,
};
use crate::shannon::{conditional_mutual_information, entropy, mutual_information, EntropyProfile};
use crate::witness::{
    chain_compatible, classify_case, evaluate_inequalities, scan_mixture_threshold, triangle_decomposition_search,
    ScanKind,
};
use crate::{Error, Result};

const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "infonet", version, about = "Tripartite information, network compatibility and quantum network tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Input file, `-` for standard input.
    #[arg(long = "in", value_name = "PATH", default_value = "-")]
    input: String,
    /// Output file, `-` for standard output.
    #[arg(long, value_name = "PATH", default_value = "-")]
    out: String,
    /// Pretty-printed output.
    #[arg(long)]
    human: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropies and every mutual information of a distribution.
    Info {
        #[command(flatten)]
        io: Common,
    },
    /// Entropic and Finner-type witnesses for the triangle and single-source networks.
    Witness {
        #[command(flatten)]
        io: Common,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Bayesian DAG from Markovian parents along an ordering.
    Bayes {
        #[command(flatten)]
        io: Common,
        /// Comma-separated variable ordering.
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Inflation certificate of triangle incompatibility (binary variables).
    Inflate {
        #[command(flatten)]
        io: Common,
        /// Treat copies sharing a source as correlated.
        #[arg(long)]
        paired: bool,
    },
    /// Chain model of a distribution with independent ends.
    ChainRealize {
        #[command(flatten)]
        io: Common,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Split into a shared pair times a chain-compatible factor.
    Decompose {
        #[command(flatten)]
        io: Common,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Largest factor cardinality to try.
        #[arg(long, default_value_t = 4)]
        max_card: usize,
    },
    /// Born-rule distribution of a quantum network: star, e4|e5|e6, chain or spec.
    Quantum {
        family: String,
        #[command(flatten)]
        io: Common,
        #[arg(long, value_delimiter = ',')]
        params: Vec<f64>,
        /// Star measurement mode: fourier or ghz_swap.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Numeric extremization: `channels` (local mixers) or `network` (I_min).
    Optimize {
        target: String,
        #[command(flatten)]
        io: Common,
        /// channels: max or min.
        #[arg(long, default_value = "max")]
        kind: String,
        /// network: e4, e5, e6, chain or spec (spec read from --in).
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid points per axis for `channels`.
        #[arg(long, default_value_t = 33)]
        steps: usize,
    },
    /// Threshold scan along the GHZ/W mixture.
    Scan {
        /// What to scan; only `mixture`.
        target: String,
        #[command(flatten)]
        io: Common,
        /// info_sign or witness.
        #[arg(long, default_value = "witness")]
        kind: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// A named distribution family.
    Generate {
        family: String,
        #[command(flatten)]
        io: Common,
        #[arg(long, value_delimiter = ',')]
        params: Vec<f64>,
        #[arg(long)]
        kind: Option<String>,
    },
    /// Runs every acceptance criterion and reports one line each.
    Examples {
        #[command(flatten)]
        io: Common,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Info { io }
            | Command::Witness { io, .. }
            | Command::Bayes { io, .. }
            | Command::Inflate { io, .. }
            | Command::ChainRealize { io, .. }
            | Command::Decompose { io, .. }
            | Command::Quantum { io, .. }
            | Command::Optimize { io, .. }
            | Command::Scan { io, .. }
            | Command::Generate { io, .. }
            | Command::Examples { io, .. } => io,
        }
    }
}

/// A finished command: its report and exit status.
struct Outcome {
    report: Report,
    code: i32,
}

enum Report {
    Json(Value),
    /// Already-serialized JSON whose field order matters.
    Raw(String),
    Text(String),
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self { report, code: 0 }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Output goes to `stdout` or the `--out` file.
pub fn run(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let common = cli.command.common();
    let (human, out) = (common.human, common.out.clone());
    let outcome = match execute(&cli.command, stdin) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = match outcome.report {
        Report::Json(v) if human => serde_json::to_string_pretty(&v).expect("json"),
        Report::Json(v) => v.to_string(),
        Report::Raw(s) if human => serde_json::from_str::<Value>(&s)
            .ok()
            .and_then(|v| serde_json::to_string_pretty(&v).ok())
            .unwrap_or(s),
        Report::Raw(s) | Report::Text(s) => s,
    };
    let written = if out == "-" {
        writeln!(stdout, "{text}").map_err(Error::from)
    } else {
        fs::write(PathBuf::from(&out), format!("{text}\n")).map_err(Error::from)
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing {out}: {e}");
        return 2;
    }
    outcome.code
}

fn read_text(path: &str, stdin: &mut dyn Read) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Format {
            context: path.to_string(),
            message: e.to_string(),
        })
    }
}

fn read_dist(path: &str, stdin: &mut dyn Read) -> Result<JointDistribution> {
    let text = read_text(path, stdin)?;
    io::from_json_str(&text).map_err(|e| match e {
        Error::Format { context, message } => Error::Format {
            context: format!("{path}: {context}"),
            message,
        },
        other => Error::Format {
            context: path.to_string(),
            message: other.to_string(),
        },
    })
}

fn dist_report(p: &JointDistribution) -> Report {
    Report::Raw(io::to_json_string(p))
}

fn info(p: &JointDistribution) -> Result<Value> {
    let names: Vec<&str> = p.names().iter().map(String::as_str).collect();
    let mut ent = Map::new();
    for n in &names {
        ent.insert(format!("H({n})"), json!(entropy(p, &[n])?.value()));
    }
    ent.insert(format!("H({})", names.join(",")), json!(entropy(p, &names)?.value()));
    let mut mi = Map::new();
    let mut cmi = Map::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let (a, b) = (names[i], names[j]);
            ent.insert(format!("H({a},{b})"), json!(entropy(p, &[a, b])?.value()));
            mi.insert(format!("I({a};{b})"), json!(mutual_information(p, &[a], &[b])?.value()));
            for c in names.iter().filter(|c| **c != a && **c != b) {
                cmi.insert(
                    format!("I({a};{b}|{c})"),
                    json!(conditional_mutual_information(p, &[a], &[b], &[c])?.value()),
                );
            }
        }
    }
    let mut report = json!({
        "variables": names,
        "entropies": ent,
        "mutual_information": mi,
        "conditional_mutual_information": cmi,
    });
    if names.len() == 3 {
        let e = EntropyProfile::of(p)?;
        report["tripartite_information"] = json!({
            format!("I({};{};{})", names[0], names[1], names[2]): e.tripartite()
        });
        report["case"] = json!(classify_case(p, DEFAULT_TOL)?);
    }
    Ok(report)
}

fn channel_config(restarts: usize, seed: u64, steps: usize) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed,
        grid_resolution: steps,
        ..Default::default()
    }
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Outcome> {
    let input = &cmd.common().input;
    Ok(match cmd {
        Command::Info { .. } => Outcome::ok(Report::Json(info(&read_dist(input, stdin)?)?)),
        Command::Witness { tol, .. } => {
            let r = evaluate_inequalities(&read_dist(input, stdin)?, *tol)?;
            Outcome::ok(Report::Raw(serde_json::to_string(&r).expect("json")))
        }
        Command::Bayes { order, tol, .. } => {
            let p = read_dist(input, stdin)?;
            let order: Vec<&str> = order.iter().map(String::as_str).collect();
            Outcome::ok(Report::Raw(build_dag(&p, &order, *tol)?.to_json_string()))
        }
        Command::Inflate { paired, .. } => {
            let p = read_dist(input, stdin)?;
            let v = if *paired {
                certify_triangle_incompatibility_paired(&p)?
            } else {
                certify_triangle_incompatibility(&p)?
            };
            let code = i32::from(v == InflationVerdict::Inconclusive);
            Outcome {
                report: Report::Json(v.to_json()),
                code,
            }
        }
        Command::ChainRealize { tol, .. } => {
            let p = read_dist(input, stdin)?;
            match chain_compatible(&p, *tol) {
                Ok(plan) => {
                    let q = born_distribution(&chain_realization(&p, *tol)?)?;
                    Outcome::ok(Report::Json(json!({
                        "compatible": true,
                        "plan": plan.to_json(),
                        "round_trip_error": plan.round_trip_error(&p)?,
                        "quantum_round_trip_error": q.linf_distance(&p)?,
                    })))
                }
                Err(Error::NotApplicable(reason)) => Outcome {
                    report: Report::Json(json!({"compatible": false, "reason": reason})),
                    code: 1,
                },
                Err(e) => return Err(e),
            }
        }
        Command::Decompose { tol, max_card, .. } => {
            let p = read_dist(input, stdin)?;
            match triangle_decomposition_search(&p, *max_card, *tol)? {
                Some(d) => Outcome::ok(Report::Json(json!({"found": true, "decomposition": d.to_json()}))),
                None => Outcome {
                    report: Report::Json(json!({"found": false})),
                    code: 1,
                },
            }
        }
        Command::Quantum {
            family,
            params,
            kind,
            tol,
            ..
        } => Outcome::ok(dist_report(&quantum(family, params, kind.as_deref(), *tol, input, stdin)?)),
        Command::Optimize {
            target,
            kind,
            family,
            params,
            restarts,
            seed,
            steps,
            ..
        } => {
            let cfg = channel_config(*restarts, *seed, *steps);
            match target.as_str() {
                "channels" => {
                    let p = read_dist(input, stdin)?;
                    let r = extremize_under_local_channels(&p, kind.parse::<Direction>()?, &cfg)?;
                    Outcome::ok(Report::Raw(r.to_json_string()))
                }
                "network" => {
                    let fam = network_family(family.as_deref(), params, input, stdin)?;
                    let r = i_min_network(&fam, &cfg)?;
                    let delta = delta_indicator(&r);
                    Outcome::ok(Report::Json(json!({
                        "value": r.value,
                        "argument": r.argument,
                        "trace": r.trace,
                        "delta": delta,
                    })))
                }
                other => return Err(Error::InvalidParameter(format!("unknown optimize target `{other}`"))),
            }
        }
        Command::Scan { target, kind, steps, tol, .. } => {
            if target != "mixture" {
                return Err(Error::InvalidParameter(format!("unknown scan target `{target}`")));
            }
            let r = scan_mixture_threshold(kind.parse::<ScanKind>()?, *steps, *tol)?;
            Outcome::ok(Report::Raw(serde_json::to_string(&r).expect("json")))
        }
        Command::Generate { family, params, kind, .. } => {
            Outcome::ok(dist_report(&families::generate(family, params, kind.as_deref())?))
        }
        Command::Examples { only, io } => {
            let reports = match only {
                Some(id) => vec![acceptance::run_criterion(*id)],
                None => acceptance::run_all(),
            };
            let code = i32::from(reports.iter().any(|r| !r.passed));
            let report = if io.human {
                Report::Text(reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))
            } else {
                Report::Raw(serde_json::to_string(&reports).expect("json"))
            };
            Outcome { report, code }
        }
    })
}

fn quantum(
    family: &str,
    params: &[f64],
    kind: Option<&str>,
    tol: f64,
    input: &str,
    stdin: &mut dyn Read,
) -> Result<JointDistribution> {
    match family.to_ascii_lowercase().as_str() {
        "star" => {
            let thetas: [f64; 3] = params
                .try_into()
                .map_err(|_| Error::InvalidParameter("star takes three angles".into()))?;
            star_network_distribution(thetas, kind.unwrap_or("fourier").parse()?)
        }
        "chain" => born_distribution(&chain_realization(&read_dist(input, stdin)?, tol)?),
        "spec" => born_distribution(&NetworkSpec::from_json_str(&read_text(input, stdin)?)?),
        other => {
            let fam: CanonicalFamily = other.parse()?;
            let state = canonical_tripartite_state(fam, params)?;
            born_distribution(&tripartite_spec(
                &state,
                std::array::from_fn(|_| MeasurementSet::computational(vec![2])),
            )?)
        }
    }
}

fn network_family(family: Option<&str>, params: &[f64], input: &str, stdin: &mut dyn Read) -> Result<NetworkFamily> {
    let family = family.ok_or_else(|| Error::InvalidParameter("--family is required for network".into()))?;
    match family.to_ascii_lowercase().as_str() {
        "chain" => Ok(NetworkFamily::Chain {
            seed: params.first().map_or(0, |s| *s as u64),
        }),
        "spec" => Ok(NetworkFamily::Custom(NetworkSpec::from_json_str(&read_text(input, stdin)?)?)),
        other => Ok(NetworkFamily::Canonical {
            family: other.parse()?,
            params: params.to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("infonet").chain(args.iter().copied()).map(String::from).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_then_info() {
        let (code, dist, _) = call(&["generate", "fig1"], "");
        assert_eq!(code, 0);
        let (code, report, _) = call(&["info"], &dist);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&report).unwrap();
        assert!(v["mutual_information"]["I(X;Y)"].as_f64().unwrap().abs() < 1e-12);
        assert!((v["conditional_mutual_information"]["I(X;Y|Z)"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!((v["tripartite_information"]["I(X;Y;Z)"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn inflate_exit_codes() {
        let (_, w4, _) = call(&["generate", "w4", "--kind", "EE0a", "--params", "0.25,0.25,0.25,0.25"], "");
        let (code, out, _) = call(&["inflate"], &w4);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("incompatible"));
        let (_, u, _) = call(&["generate", "ghz_w_mixture", "--params", "0.5"], "");
        assert_eq!(call(&["inflate"], &u).0, 1);
    }

    #[test]
    fn bad_input_exits_two() {
        let half = r#"{"variables":["X"],"cardinalities":[2],"entries":[{"outcome":[0],"p":0.5}]}"#;
        let (code, _, err) = call(&["info"], half);
        assert_eq!(code, 2);
        assert!(err.contains("sum"), "{err}");
        assert_eq!(call(&["frobnicate"], "").0, 2);
        let (code, _, err) = call(&["info"], "{\"variables\": [\"X\"],\n \"cardinalities\": 2}");
        assert_eq!(code, 2);
        assert!(err.contains("cardinalities"), "{err}");
    }

    #[test]
    fn chain_realize_negative_is_one() {
        let (_, g, _) = call(&["generate", "ghz_type", "--params", "0.5"], "");
        assert_eq!(call(&["chain-realize"], &g).0, 1);
        let (_, f, _) = call(&["generate", "fig1"], "");
        let (code, out, _) = call(&["chain-realize"], &f);
        assert_eq!(code, 0);
        assert!(out.contains("round_trip_error"));
    }
}
