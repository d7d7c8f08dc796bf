//! Command-line front end: one subcommand per operation, text or JSON
//! output, deterministic bytes for identical invocations.
//!
//! Exit codes: 0 on success (for `verify`, only when every relator
//! passes), 1 when a verification finds a failing relator, 2 on any input
//! or usage error, which is reported as a one-line diagnostic.

use std::collections::BTreeMap;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::burau::{self, BurauParams};
use crate::fox::{fox_action_matrix, fox_derivative};
use crate::galgebra::{AlgMatrix, PolyMatrix};
use crate::gassner::{delete_rows_cols, gassner_evaluated, gassner_symbolic, iterate, IterationSpec};
use crate::laurent::{LaurentPoly, Param};
use crate::presentations::{expand_xi_word, relators, GroupFamily};
use crate::verify::{parse_substitution, verify_rep, RepTag};
use crate::words::{word_to_auto, Word};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "braidrep", version, about = "Exact matrix representations of virtual and welded braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Evaluated,
}

#[derive(Subcommand)]
enum Command {
    /// Print the defining relators of a group family.
    Relators {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print the free-group automorphism of a braid-symmetric word.
    Artin {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Differentiate a free word with respect to one generator.
    Fox {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        wrt: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print the augmentation-ideal action matrix of a ξ/x word.
    Foxmat {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the Burau-variant matrix of a σ/τ word.
    Burau {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        subst: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the closed-form matrix of one conjugating generator.
    Gassner {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Print an iterated-construction matrix, optionally reduced.
    Iterate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        /// Comma-separated 1-based rows/columns to delete, e.g. 4,8,12.
        #[arg(long)]
        reduce: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check every relator of a family under a representation.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        subst: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_family(text: &str) -> Result<GroupFamily> {
    match text {
        "braid" => Ok(GroupFamily::Braid),
        "sym" => Ok(GroupFamily::Symmetric),
        "vb" => Ok(GroupFamily::Virtual),
        "wb" => Ok(GroupFamily::Welded),
        "twb" => Ok(GroupFamily::TwinWelded),
        "pwb" => Ok(GroupFamily::PureWelded),
        _ => Err(Error::Parse(format!("unknown group family {text:?}"))),
    }
}

fn parse_substitutions(list: &[String]) -> Result<BTreeMap<Param, LaurentPoly>> {
    let mut map = BTreeMap::new();
    for item in list {
        let (param, value) = parse_substitution(item)?;
        map.insert(param, value);
    }
    Ok(map)
}

fn parse_reduce(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {part:?} in reduction list")))
        })
        .collect()
}

fn emit_json<W: Write>(out: &mut W, value: &serde_json::Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"))
}

fn print_alg_matrix<W: Write>(out: &mut W, m: &AlgMatrix, json: bool) -> std::io::Result<()> {
    if json {
        emit_json(out, &m.to_json())
    } else {
        write!(out, "{}", m.render_grid())
    }
}

fn print_poly_matrix<W: Write>(out: &mut W, m: &PolyMatrix, json: bool) -> std::io::Result<()> {
    if json {
        emit_json(out, &m.to_json())
    } else {
        write!(out, "{}", m.render_grid())
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32> {
    let io_err = |e: std::io::Error| Error::Parse(format!("output failure: {e}"));
    match command {
        Command::Relators { group, n, json } => {
            let family = parse_family(&group)?;
            let catalog = relators(family, n)?;
            if json {
                let value: Vec<serde_json::Value> = catalog
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "label": r.label,
                            "lhs": r.lhs.to_string(),
                            "rhs": r.rhs.to_string(),
                        })
                    })
                    .collect();
                emit_json(out, &serde_json::Value::Array(value)).map_err(io_err)?;
            } else {
                for r in &catalog {
                    writeln!(out, "{}: {} = {}", r.label, r.lhs, r.rhs).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Artin { n, word, json } => {
            let w = Word::parse(&word, n)?;
            let auto = word_to_auto(&expand_xi_word(&w)?)?;
            if json {
                let images: Vec<serde_json::Value> = (1..=auto.rank())
                    .map(|k| {
                        serde_json::json!({
                            "generator": format!("x{k}"),
                            "image": auto.image_of(k).to_string(),
                        })
                    })
                    .collect();
                emit_json(
                    out,
                    &serde_json::json!({ "rank": auto.rank(), "images": images }),
                )
                .map_err(io_err)?;
            } else {
                for k in 1..=auto.rank() {
                    writeln!(out, "x{k} -> {}", auto.image_of(k)).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Fox { n, word, wrt, json } => {
            let w = Word::parse(&word, n)?;
            let derivative = fox_derivative(&w, wrt)?;
            if json {
                emit_json(out, &derivative.to_json()).map_err(io_err)?;
            } else {
                writeln!(out, "{derivative}").map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Foxmat { n, elem, json } => {
            let w = Word::parse(&elem, n)?;
            let m = fox_action_matrix(&w)?;
            print_alg_matrix(out, &m, json).map_err(io_err)?;
            Ok(0)
        }
        Command::Burau { n, word, mode, subst, json } => {
            let p = BurauParams::standard(n)?;
            let w = Word::parse(&word, n)?;
            let subs = parse_substitutions(&subst)?;
            match mode {
                Mode::Symbolic => {
                    let m = burau::word_matrix_symbolic(&w, &p)?.substitute(&subs)?;
                    print_alg_matrix(out, &m, json).map_err(io_err)?;
                }
                Mode::Evaluated => {
                    let m = burau::word_matrix_evaluated(&w, &p)?.substitute(&subs)?;
                    print_poly_matrix(out, &m, json).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Gassner { n, i, j, mode, json } => {
            match mode {
                Mode::Symbolic => {
                    let m = gassner_symbolic(i, j, n)?;
                    print_alg_matrix(out, &m, json).map_err(io_err)?;
                }
                Mode::Evaluated => {
                    let m = gassner_evaluated(i, j, n)?;
                    print_poly_matrix(out, &m, json).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Iterate { n, r, i, j, reduce, json } => {
            let spec = IterationSpec::new(n, r)?;
            let mut m = iterate(&spec, i, j)?;
            if let Some(list) = reduce {
                m = delete_rows_cols(&m, &parse_reduce(&list)?)?;
            }
            print_poly_matrix(out, &m, json).map_err(io_err)?;
            Ok(0)
        }
        Command::Verify { group, n, rep, subst, json } => {
            let family = parse_family(&group)?;
            let tag = RepTag::parse(&rep)?;
            let subs = parse_substitutions(&subst)?;
            let report = verify_rep(family, n, tag, &subs)?;
            if json {
                emit_json(out, &report.to_json()).map_err(io_err)?;
            } else {
                writeln!(out, "{report}").map_err(io_err)?;
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
    }
}

/// Parses and runs one invocation; `argv` includes the program name.
/// Returns the process exit code and writes all output to `out`.
pub fn run<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("error");
                    let _ = writeln!(out, "{first}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(out, "error: {err}");
            2
        }
    }
}
