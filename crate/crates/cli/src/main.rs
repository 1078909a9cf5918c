//! `hecke`: command-line front end for `hecke-core`.
//!
//! Exit codes: 0 on success, 2 on parameter errors, 3 when `--require-stable`
//! is set and an orbit partition did not stabilize, 1 on anything else.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hecke_core::bounds::write_csv;
use hecke_core::divergence::DEFAULT_CAP_FACTOR;
use hecke_core::reduction::StepKind;
use hecke_core::{
    bound_report, distinct_orbit_certificates, enumerate_b, export_graph, orbit_partition,
    reduce_to_b, survey, theorem_bound, verify_action, Error, ExplorationConfig, GroupWord, Triple,
};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke group actions on quadratic irrationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Args)]
struct Explore {
    /// Initial exploration cap on max(|a|,|b|,|c|); defaults to 4·max(n², 16)
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long, default_value_t = 8)]
    max_doublings: u32,
    #[arg(long, default_value_t = 2)]
    stability_rounds: u32,
    /// Exit with status 3 if a partition does not stabilize
    #[arg(long)]
    require_stable: bool,
}

impl Explore {
    fn config(&self, n: i64) -> ExplorationConfig {
        let base = ExplorationConfig::for_n(n);
        ExplorationConfig {
            initial_cap: self.cap.unwrap_or(base.initial_cap),
            max_doublings: self.max_doublings,
            stability_rounds: self.stability_rounds,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Apply a word to a triple
    Act {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Triple "a,b,c"
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        /// Word such as "w:-2,x,w:-2"; the rightmost token acts first
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 1)]
        lambda: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduce a triple into B(n) with a certificate word
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        lambda: i64,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List B(n)
    EnumerateB {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orbit partition of B(n) under H(lambda), lambda in {1, 2}
    Orbits {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        lambda: i64,
        #[command(flatten)]
        explore: Explore,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Divisor-sum bound on the number of H(2)-orbits
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Also compute the orbit count and compare
        #[arg(long)]
        report: bool,
        #[arg(long, default_value_t = 2)]
        lambda: i64,
        #[command(flatten)]
        explore: Explore,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bound reports over a range of n; non-square-free values are skipped
    Survey {
        /// Inclusive range such as "-10..10"
        #[arg(long, allow_hyphen_values = true)]
        n_range: String,
        #[arg(long, default_value_t = 2)]
        lambda: i64,
        #[command(flatten)]
        explore: Explore,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Distinct-orbit certificates for lambda >= 3
    Family {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        lambda: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// BFS cap as a multiple of a_s
        #[arg(long, default_value_t = DEFAULT_CAP_FACTOR)]
        cap_factor: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Capped action graph reachable from B(n), as DOT
    ExportGraph {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        lambda: i64,
        #[arg(long)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

enum Failure {
    Param(String),
    Unstable(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parameter_error() {
            Failure::Param(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

type Outcome = Result<String, (String, Failure)>;

fn unsupported(format: Format) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_owned());
    Failure::Param(format!(
        "format {} is not supported by this command",
        name.unwrap_or_default()
    ))
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, Failure> {
    let (lo, hi) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| Failure::Param(format!("expected a range like -10..10, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| Failure::Param(format!("bad range bound {s:?}")))
    };
    Ok(parse(lo)?..=parse(hi)?)
}

fn no_partial(f: Failure) -> (String, Failure) {
    (String::new(), f)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Act {
            n,
            triple,
            word,
            lambda,
            format,
        } => {
            let t = Triple::parse(n, &triple).map_err(|e| no_partial(e.into()))?;
            let w = GroupWord::parse(lambda, &word).map_err(|e| no_partial(e.into()))?;
            let image = t.apply_word(&w).map_err(|e| no_partial(e.into()))?;
            let m = w.to_matrix().map_err(|e| no_partial(e.into()))?;
            let ok = verify_action(&m, &t, &image).map_err(|e| no_partial(e.into()))?;
            match format {
                Format::Text => Ok(format!("{image}\nmatrix {m}\nverified {ok}\n")),
                Format::Json => Ok(json!({
                    "triple": image,
                    "matrix": [[m.p, m.q], [m.r, m.s]],
                    "verified": ok,
                })
                .to_string()
                    + "\n"),
                f => Err(no_partial(unsupported(f))),
            }
        }
        Command::Reduce {
            n,
            lambda,
            triple,
            format,
        } => {
            let t = Triple::parse(n, &triple).map_err(|e| no_partial(e.into()))?;
            let r = reduce_to_b(&t, lambda).map_err(|e| no_partial(e.into()))?;
            match format {
                Format::Text => {
                    let mut out = format!("reduced {}\ncertificate {}\n", r.reduced, r.certificate);
                    for (i, step) in r.steps.iter().enumerate() {
                        let kind = match step.kind {
                            StepKind::Translate => "translate",
                            StepKind::Swap => "swap",
                        };
                        let _ = writeln!(out, "step {} {kind} {}", i + 1, step.after);
                    }
                    Ok(out)
                }
                Format::Json => Ok(json!({
                    "input": r.input,
                    "reduced": r.reduced,
                    "certificate": r.certificate.to_string(),
                    "steps": r.steps,
                })
                .to_string()
                    + "\n"),
                f => Err(no_partial(unsupported(f))),
            }
        }
        Command::EnumerateB { n, format } => {
            let bset = enumerate_b(n).map_err(|e| no_partial(e.into()))?;
            match format {
                Format::Json => Ok(bset.to_json() + "\n"),
                Format::Text | Format::Csv => {
                    let mut out = String::new();
                    for t in &bset.members {
                        let _ = writeln!(out, "{t}");
                    }
                    Ok(out)
                }
                f => Err(no_partial(unsupported(f))),
            }
        }
        Command::Orbits {
            n,
            lambda,
            explore,
            format,
        } => {
            let p = orbit_partition(n, lambda, &explore.config(n)).map_err(|e| no_partial(e.into()))?;
            let out = match format {
                Format::Json => p.to_json() + "\n",
                Format::Text => {
                    let mut out = format!("count {} {} cap {}\n", p.count(), p.label(), p.cap_used);
                    for (i, (cls, rep)) in p.classes.iter().zip(&p.representatives).enumerate() {
                        let members: Vec<String> = cls.iter().map(Triple::to_string).collect();
                        let _ = writeln!(out, "class {} rep {rep}: {}", i + 1, members.join(" "));
                    }
                    out
                }
                f => return Err(no_partial(unsupported(f))),
            };
            if explore.require_stable && !p.stable {
                return Err((
                    out,
                    Failure::Unstable(format!("partition for n = {n} did not stabilize")),
                ));
            }
            Ok(out)
        }
        Command::Bound {
            n,
            report,
            lambda,
            explore,
            format,
        } => {
            if !report {
                let b = theorem_bound(n).map_err(|e| no_partial(e.into()))?;
                return match format {
                    Format::Text => Ok(format!("{b}\n")),
                    Format::Json => Ok(json!({ "n": n, "bound": b }).to_string() + "\n"),
                    f => Err(no_partial(unsupported(f))),
                };
            }
            let r = bound_report(n, lambda, &explore.config(n)).map_err(|e| no_partial(e.into()))?;
            let out = match format {
                Format::Json => r.to_json() + "\n",
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&mut buf, std::slice::from_ref(&r))
                        .map_err(|e| no_partial(Failure::Other(e.to_string())))?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
                Format::Text => format!(
                    "n {}\nbound {}\nbplus {}\nbzero {}\ncount {}\nstable {}\nstrict {}\n",
                    r.n,
                    r.bound_value,
                    r.bplus_size,
                    r.bzero_size,
                    r.computed_count,
                    r.computed_stable,
                    r.strict
                ),
                f => return Err(no_partial(unsupported(f))),
            };
            if explore.require_stable && !r.computed_stable {
                return Err((out, Failure::Unstable(format!("partition for n = {n} did not stabilize"))));
            }
            Ok(out)
        }
        Command::Survey {
            n_range,
            lambda,
            explore,
            format,
        } => {
            let range = parse_range(&n_range).map_err(no_partial)?;
            let reports = survey(range, lambda, |n| explore.config(n)).map_err(|e| no_partial(e.into()))?;
            let out = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&mut buf, &reports).map_err(|e| no_partial(Failure::Other(e.to_string())))?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
                Format::Json => serde_json::to_string(&reports).expect("reports serialize") + "\n",
                f => return Err(no_partial(unsupported(f))),
            };
            let unstable: Vec<String> = reports
                .iter()
                .filter(|r| !r.computed_stable)
                .map(|r| r.n.to_string())
                .collect();
            if explore.require_stable && !unstable.is_empty() {
                return Err((
                    out,
                    Failure::Unstable(format!("unstable partitions for n = {}", unstable.join(", "))),
                ));
            }
            Ok(out)
        }
        Command::Family {
            n,
            lambda,
            count,
            cap_factor,
            format,
        } => {
            let certs = distinct_orbit_certificates(n, lambda, count, cap_factor)
                .map_err(|e| no_partial(e.into()))?;
            match format {
                Format::Json => Ok(serde_json::to_string(&certs).expect("certificates serialize") + "\n"),
                Format::Text => {
                    let mut out = String::new();
                    for c in &certs {
                        let _ = writeln!(
                            out,
                            "s {} triple {} preconds_ok {} empirical_min_norm {} cap {}",
                            c.s, c.triple, c.preconds_ok, c.empirical_min_norm, c.cap_used
                        );
                    }
                    Ok(out)
                }
                f => Err(no_partial(unsupported(f))),
            }
        }
        Command::ExportGraph {
            n,
            lambda,
            cap,
            format,
        } => {
            if format != Format::Dot {
                return Err(no_partial(unsupported(format)));
            }
            let g = export_graph(n, lambda, cap).map_err(|e| no_partial(e.into()))?;
            Ok(g.to_dot())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((partial, failure)) => {
            print!("{partial}");
            let (code, msg) = match failure {
                Failure::Param(m) => (2, m),
                Failure::Unstable(m) => (3, m),
                Failure::Other(m) => (1, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
