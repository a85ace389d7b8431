//! The `rigid` command line. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage or parse error,
//! 3 resource cap exceeded. `verify` exits 1 when a check fails.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equations::{solve_ball, SearchConfig, System, DEFAULT_MAX_ASSIGNMENTS};
use crate::error::{Error, Result};
use crate::free_solvable::{FreeSolvable, SolvableElement, DEFAULT_BALL_CAP};
use crate::group::Group;
use crate::linalg::{
    closed_form_dimension, principal_dimension_metabelian, smith_form, Family, LaurentMatrix,
};
use crate::magnus::{bar_minus_one, SplitMatrix};
use crate::verify::{reports_to_json, run_all, VerifyConfig};
use crate::word::Word;
use crate::wreath::embed_free_solvable;

#[derive(Debug, Parser)]
#[command(name = "rigid", version, about = "Exact computation in free solvable groups and wreath products")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, clap::Args)]
struct GroupArgs {
    /// Number of generators.
    #[arg(short, default_value_t = 2)]
    m: usize,
    /// Solvability class.
    #[arg(short, default_value_t = 2)]
    n: usize,
}

impl GroupArgs {
    fn group(&self) -> FreeSolvable {
        FreeSolvable::new(self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Projection,
    Commutator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    FreeSolvable,
    Wreath,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical form of a word in S(m,n).
    Normalize {
        #[command(flatten)]
        g: GroupArgs,
        word: String,
    },
    /// Product of two words.
    Mul {
        #[command(flatten)]
        g: GroupArgs,
        u: String,
        v: String,
    },
    /// Commutator [u,v] = u^-1 v^-1 u v.
    Comm {
        #[command(flatten)]
        g: GroupArgs,
        u: String,
        v: String,
    },
    /// Image in S(m,k).
    Project {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(short)]
        k: usize,
        word: String,
    },
    /// Membership in the i-th term of the principal series.
    Member {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(short)]
        i: usize,
        #[arg(long, value_enum, default_value = "projection")]
        method: Method,
        word: String,
    },
    /// Magnus coordinates (Fox derivatives) over S(m,n-1).
    Fox {
        #[command(flatten)]
        g: GroupArgs,
        word: String,
    },
    /// sigma of the Magnus coordinates next to w-bar - 1.
    Sigma {
        #[command(flatten)]
        g: GroupArgs,
        word: String,
    },
    /// Image of S(m,n) in the wreath product W(m,n-1).
    WreathEmbed {
        #[command(flatten)]
        g: GroupArgs,
        word: String,
    },
    /// Principal dimension of a subgroup of S(m,2), or of a whole family.
    Pdim {
        #[arg(short, default_value_t = 2)]
        m: usize,
        /// Closed form for a family instead of a subgroup.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(short)]
        n: Option<usize>,
        /// Subgroup generators.
        gens: Vec<String>,
    },
    /// Rank of a matrix file: integer rows, or Laurent polynomial rows.
    Rank { file: PathBuf },
    /// Solutions of a system inside the ball of given radius.
    Solve {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(short, long, default_value_t = 2)]
        radius: usize,
        /// Number of variables (default: largest index used).
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        ball_cap: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_ASSIGNMENTS)]
        max_assignments: u128,
        file: PathBuf,
    },
    /// Randomized checks of the structural identities.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Report elapsed_ms as 0 for byte-identical output.
        #[arg(long)]
        no_timing: bool,
    },
}

enum Output {
    Text(String),
    Json(Value),
}

enum Failure {
    Lib(Error),
    Io(String),
    /// Output already produced, but the command reports failure.
    Status(Output, i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs one command. `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let json = cli.json;
    let emit = |o: &Output, out: &mut dyn Write| {
        let _ = match o {
            Output::Text(s) => writeln!(out, "{s}"),
            Output::Json(v) => writeln!(out, "{}", serde_json::to_string(v).expect("json")),
        };
    };
    match dispatch(cli.command, json) {
        Ok(o) => {
            emit(&o, out);
            0
        }
        Err(Failure::Status(o, code)) => {
            emit(&o, out);
            code
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                _ if e.is_cap_exceeded() => 3,
                Error::Parse { .. } | Error::Json(_) => 2,
                _ => 1,
            }
        }
    }
}

fn word(text: &str) -> Result<Word> {
    text.parse()
}

fn element(g: &GroupArgs, text: &str) -> Result<SolvableElement> {
    g.group().normalize(&word(text)?)
}

fn show(json: bool, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> Output {
    if json {
        Output::Json(value())
    } else {
        Output::Text(text())
    }
}

fn elem_out(json: bool, e: &SolvableElement) -> Output {
    show(json, || e.to_string(), || e.to_json())
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn magnus(g: &GroupArgs, text: &str) -> Result<SplitMatrix<FreeSolvable>> {
    if g.n == 0 {
        return Err(Error::OutOfRange { what: "n", value: 0, lo: 1, hi: i64::MAX });
    }
    SplitMatrix::eval_word(&word(text)?, &FreeSolvable::new(g.m, g.n - 1))
}

fn dispatch(cmd: Command, json: bool) -> std::result::Result<Output, Failure> {
    Ok(match cmd {
        Command::Normalize { g, word } => elem_out(json, &element(&g, &word)?),
        Command::Mul { g, u, v } => {
            let grp = g.group();
            elem_out(json, &grp.mul(&element(&g, &u)?, &element(&g, &v)?))
        }
        Command::Comm { g, u, v } => {
            let grp = g.group();
            elem_out(json, &grp.commutator(&element(&g, &u)?, &element(&g, &v)?))
        }
        Command::Project { g, k, word } => elem_out(json, &element(&g, &word)?.project(k)?),
        Command::Member { g, i, method, word } => {
            let grp = g.group();
            let x = element(&g, &word)?;
            let answer = match method {
                Method::Projection => grp.member_by_projection(&x, i)?,
                Method::Commutator => {
                    let w = grp.standard_witnesses()?;
                    let from = i.clamp(1, w.len() + 1) - 1;
                    grp.member_by_commutator(&x, i, &w[from..])?
                }
            };
            show(json, || answer.to_string(), || json!(answer))
        }
        Command::Fox { g, word } => {
            let p = magnus(&g, &word)?;
            show(
                json,
                || p.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
                || p.to_json_with(SolvableElement::to_json)["coords"].clone(),
            )
        }
        Command::Sigma { g, word: text } => {
            let p = magnus(&g, &text)?;
            let s = p.sigma();
            let expected = bar_minus_one(&word(&text)?, &FreeSolvable::new(g.m, g.n - 1))?;
            let ok = s == expected;
            show(
                json,
                || format!("{s}\n{}", if ok { "= w-bar - 1" } else { "!= w-bar - 1" }),
                || json!({ "sigma": s.to_json_with(SolvableElement::to_json), "identity_holds": ok }),
            )
        }
        Command::WreathEmbed { g, word } => {
            let e = embed_free_solvable(&element(&g, &word)?);
            show(json, || e.to_string(), || e.to_json())
        }
        Command::Pdim { m, family, n, gens } => {
            let r = match family {
                Some(f) => {
                    let n = n.ok_or_else(|| Failure::Io("--family requires -n".into()))?;
                    closed_form_dimension(match f {
                        FamilyArg::FreeSolvable => Family::FreeSolvable { m, n },
                        FamilyArg::Wreath => Family::Wreath { m, n },
                    })?
                }
                None => {
                    let words = gens.iter().map(|s| word(s)).collect::<Result<Vec<_>>>()?;
                    principal_dimension_metabelian(&words, m)?
                }
            };
            show(json, || r.to_string(), || json!(r.0))
        }
        Command::Rank { file } => {
            let text = read(&file)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            rank_of(&v, json)?
        }
        Command::Solve { g, radius, vars, ball_cap, max_assignments, file } => {
            let system = System::parse(&read(&file)?, vars)?;
            let sols = solve_ball(&system, g.m, g.n, radius, &SearchConfig { ball_cap, max_assignments })?;
            show(
                json,
                || {
                    let mut lines = vec![format!("{} solutions", sols.len())];
                    for a in &sols.assignments {
                        lines.push(a.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; "));
                    }
                    lines.join("\n")
                },
                || sols.to_json(),
            )
        }
        Command::Verify { seed, samples, only, max_len, no_timing } => {
            let mut reports = run_all(&VerifyConfig { seed, samples, max_len }, only.as_deref())?;
            if no_timing {
                reports.iter_mut().for_each(|r| r.elapsed_ms = 0);
            }
            let all = reports.iter().all(|r| r.passed());
            let o = show(
                json,
                || {
                    reports
                        .iter()
                        .map(|r| {
                            let verdict = if r.passed() { "PASS" } else { "FAIL" };
                            let mut s = format!(
                                "{verdict} {} ({} samples, {} skipped, {} ms): {}",
                                r.name, r.samples, r.skipped, r.elapsed_ms, r.statement
                            );
                            for f in &r.failures {
                                s.push_str(&format!("\n  seed {}: {}: {}", f.sample_seed, f.case, f.detail));
                            }
                            s
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || reports_to_json(&reports),
            );
            if !all {
                return Err(Failure::Status(o, 1));
            }
            o
        }
    })
}

fn rank_of(v: &Value, json: bool) -> Result<Output> {
    let rows = v.as_array().ok_or_else(|| Error::json("matrix must be an array of rows"))?;
    let integer = rows.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(Value::is_number)));
    if integer {
        let m = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.to_string().parse().map_err(|_| Error::json(format!("not an integer: {x}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let s = smith_form(&m);
        let factors: Vec<String> = s.invariant_factors.iter().map(ToString::to_string).collect();
        return Ok(show(
            json,
            || format!("rank {}\ninvariant factors ({})", s.rank, factors.join(",")),
            || {
                json!({
                    "rank": s.rank,
                    "invariant_factors": s.invariant_factors.iter()
                        .map(|f| serde_json::from_str::<Value>(&f.to_string()).unwrap())
                        .collect::<Vec<_>>(),
                })
            },
        ));
    }
    let r = LaurentMatrix::from_json(v)?.rank()?;
    Ok(show(json, || format!("rank {r}"), || json!({ "rank": r })))
}
