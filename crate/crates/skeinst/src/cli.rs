//! Command-line front end.

use std::cmp::Ordering;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braid::{parse_word, Gen, MixedBraidWord};
use crate::budget::Budget;
use crate::coeffring::LaurentRational;
use crate::hecke::{self, compare_order, LoopMonomial};
use crate::kbsm::{self, Normalization};
use crate::trace::{self, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "skeinst",
    version,
    about = "Skein module of the solid torus: traces, invariants and normal forms",
    after_help = "The rewrite budget defaults to 1000000 steps; override with SKEINST_BUDGET or --budget."
)]
struct Cli {
    /// Rewrite step budget (overrides the environment variable)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Specialize {
    Tl,
    None,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Normalize {
    Raw,
    Bracket,
}

#[derive(Args, Debug)]
struct WordArgs {
    /// Number of moving strands
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Mixed braid word, e.g. "t s1^-1 t^2"
    word: String,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Markov trace of the projected word
    Trace {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_enum, default_value_t = Specialize::None)]
        specialize: Specialize,
        /// Largest |k| for which s_k is specialized
        #[arg(long, default_value_t = 8)]
        smax: u32,
    },
    /// Normalized invariant of the closure
    Invariant {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_enum, default_value_t = Specialize::None)]
        specialize: Specialize,
        #[arg(long, default_value_t = 8)]
        smax: u32,
    },
    /// Expansion of the closure in the basis {t^n}
    NormalForm {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_enum, default_value_t = Normalize::Raw)]
        normalize: Normalize,
    },
    /// Change of basis from the Turaev basis, rows 0..=max
    BasisMatrix {
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Normalize::Raw)]
        normalize: Normalize,
    },
    /// Compare two loop monomials, e.g. "t^2 t1" "t t1 t2"
    Compare { left: String, right: String },
    /// Parse a word and print its merged form
    Parse {
        #[command(flatten)]
        w: WordArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn value_out(v: &LaurentRational, f: Format) -> String {
    match f {
        Format::Text => v.to_string(),
        Format::Json => json!({ "value": v.to_string() }).to_string(),
        Format::Latex => v.to_latex(),
    }
}

fn word(w: &WordArgs) -> Result<MixedBraidWord, Failure> {
    parse_word(&w.word, w.n).map_err(usage)
}

fn norm(n: Normalize) -> Normalization {
    match n {
        Normalize::Raw => Normalization::Raw,
        Normalize::Bracket => Normalization::Bracket,
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let budget = match cli.budget {
        Some(b) => Budget::new(b),
        None => Budget::from_env(),
    };
    let f = cli.format;
    match &cli.verb {
        Verb::Trace { w, specialize, smax } => {
            let w = word(w)?;
            let v = trace::markov_trace_with(&hecke::project(&w), &budget).map_err(domain)?;
            let v = match specialize {
                Specialize::None => v,
                Specialize::Tl => trace::tl_specialize(&v, *smax).map_err(domain)?,
            };
            Ok(value_out(&v.0, f))
        }
        Verb::Invariant { w, specialize, smax } => {
            let w = word(w)?;
            let v = trace::invariant_v_with(&w, Mode::Symbolic, &budget).map_err(domain)?;
            let v = match specialize {
                Specialize::None => v,
                Specialize::Tl => trace::tl_specialize(&v, *smax).map_err(domain)?,
            };
            Ok(value_out(&v.0, f))
        }
        Verb::NormalForm { w, normalize } => {
            let w = word(w)?;
            let v = kbsm::kbsm_normal_form_with(&w, norm(*normalize), &budget).map_err(domain)?;
            Ok(match f {
                Format::Text => v.to_string(),
                Format::Json => v.to_json().to_string(),
                Format::Latex => v.to_latex(),
            })
        }
        Verb::BasisMatrix { max, normalize } => {
            let m = kbsm::change_of_basis_with(*max, norm(*normalize), &budget).map_err(domain)?;
            Ok(match f {
                Format::Text => m.rows.iter().enumerate().map(|(n, r)| format!("{n}: {r}")).collect::<Vec<_>>().join("\n"),
                Format::Json => m.to_json().to_string(),
                Format::Latex => {
                    let rows: Vec<String> = m.rows.iter().enumerate().map(|(n, r)| format!("\\tau'_{{{n}}} &\\mapsto {}", r.to_latex())).collect();
                    format!("\\begin{{aligned}}\n{}\n\\end{{aligned}}", rows.join(" \\\\\n"))
                }
            })
        }
        Verb::Compare { left, right } => {
            let a = LoopMonomial::parse(left).map_err(usage)?;
            let b = LoopMonomial::parse(right).map_err(usage)?;
            let o = match compare_order(&a, &b).map_err(domain)? {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            Ok(match f {
                Format::Json => json!({"left": a.to_string(), "right": b.to_string(), "order": o}).to_string(),
                _ => format!("{a} {o} {b}"),
            })
        }
        Verb::Parse { w } => {
            let w = word(w)?;
            Ok(match f {
                Format::Json => {
                    let letters: Vec<_> = w
                        .letters()
                        .iter()
                        .map(|l| {
                            let g = match l.gen {
                                Gen::T => "t".to_string(),
                                Gen::S(i) => format!("s{i}"),
                            };
                            json!([g, l.exp])
                        })
                        .collect();
                    json!({"moving": w.moving(), "letters": letters}).to_string()
                }
                _ => w.to_string(),
            })
        }
    }
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(s) => Outcome { code: 0, stdout: s + "\n", stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("skeinst").chain(args.iter().copied()))
    }

    #[test]
    fn examples() {
        assert_eq!(go(&["trace", "--n", "2", "t s1"]).stdout, "z*s1\n");
        assert_eq!(go(&["invariant", "--n", "2", "--specialize", "tl", "s1"]).stdout, "1\n");
        let o = go(&["basis-matrix", "--max", "1", "--normalize", "raw", "--format", "json"]);
        assert_eq!(o.code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["rows"][0]["coeffs"]["1"], "1");
        assert_eq!(v["rows"][1]["coeffs"]["2"], "-u*z");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["trace", "--bogus", "t"]).code, 2);
        assert_eq!(go(&["trace", "--n", "2", "s3"]).code, 2);
        assert_eq!(go(&["--budget", "1", "normal-form", "--n", "3", "t s1 t s1^-1 s2 s1 t s1^-1 s2^-1"]).code, 1);
        assert_eq!(go(&["compare", "t t1", "t^2"]).stdout, "t t1 > t^2\n");
        assert_eq!(go(&["parse", "--n", "2", "t t s1 s1^-1"]).stdout, "t^2\n");
    }
}
