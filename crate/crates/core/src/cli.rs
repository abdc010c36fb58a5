//! The `redword` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gc::{classify_gc, gc_poset_of_delta, gc_table, syt_count_oracle, thrall_g, Budget, StrictPartition, TableRow};
use crate::indices::{delta_index, full_profile, index, word_chains, DeltaSeq, Side};
use crate::poset::{WordPoset, MAX_ELEMENTS};
use crate::verify::{self, CHECKS};
use crate::wiring::WiringDiagram;
use crate::words::{commutation_classes, reduced_words, Permutation, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "redword", version, about = "Reduced words of the longest permutation and their word posets")]
pub struct Cli {
    /// Output format; `json` writes one JSON object per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Lift the brute-force budget (REDWORD_BUDGET, default 5).
    #[arg(long, global = true)]
    pub unbounded: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced words of a permutation (`[3,1,2]`) or of w0 (`w0 <n>`).
    Words {
        #[arg(required = true, num_args = 1..=2, value_name = "PERM | w0 N")]
        target: Vec<String>,
        /// Print only the number of words.
        #[arg(long)]
        count: bool,
    },
    /// Commutation classes of w0 in S_{n+1}.
    Classes {
        n: usize,
        /// One line per class: its smallest word and class size.
        #[arg(long)]
        list: bool,
    },
    /// Word poset of a reduced word.
    Poset {
        word: String,
        #[arg(long)]
        dot: bool,
    },
    /// Wiring diagram of a word.
    Wiring {
        word: String,
        #[arg(long, conflicts_with = "dot")]
        ascii: bool,
        #[arg(long)]
        dot: bool,
    },
    /// A- and D-indices, or a delta-index with `--delta`.
    Index {
        word: String,
        #[arg(long, value_name = "DELTA")]
        delta: Option<String>,
    },
    /// Every delta-index of a word.
    Profile { word: String },
    /// Gelfand-Cetlin type classification.
    Classify { word: String },
    /// The GC-type poset attached to a delta.
    GcPoset {
        delta: String,
        #[arg(long)]
        dot: bool,
    },
    /// gc(n) by recurrence and by linear extensions, with class counts.
    GcTable { n_max: usize },
    /// Shifted standard Young tableaux of a strict partition.
    Syt { partition: String },
    /// Run verification checks (all by default).
    Verify {
        checks: Vec<String>,
        #[arg(long)]
        scale: Option<usize>,
        /// Report elapsed_ms as 0 for reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse()
}

fn parse_reduced(s: &str) -> Result<WordPoset> {
    WordPoset::from_word(&parse_word(s)?)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::NotStrict(_) | Error::InvalidPermutation { .. } | Error::LetterOutOfRange { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let budget = match Budget::from_env(cli.unbounded) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut out = Vec::new();
    let code = match execute(&cli, &budget, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out),
        None => stdout.write_all(&out),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_DOMAIN;
    }
    code
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn line(out: &mut Vec<u8>, s: impl std::fmt::Display) {
    writeln!(out, "{s}").expect("writing to memory");
}

fn execute(cli: &Cli, budget: &Budget, out: &mut Vec<u8>) -> Result<i32> {
    let json = cli.format == Format::Json;
    let dot_format = cli.format == Format::Dot;
    match &cli.command {
        Command::Words { target, count } => {
            let perm = match target.as_slice() {
                [w0, n] if w0 == "w0" => {
                    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad rank {n:?}")))?;
                    Permutation::longest_element(n + 1)
                }
                [p] => p.parse()?,
                _ => return Err(Error::Parse("expected a permutation or `w0 <n>`".into())),
            };
            budget.check("reduced-word enumeration", perm.degree().saturating_sub(1))?;
            if *count {
                let c = reduced_words(&perm).count();
                line(out, if json { json!({ "count": c }).to_string() } else { c.to_string() });
            } else {
                for w in reduced_words(&perm) {
                    line(out, if json { json!({ "word": w.to_string() }).to_string() } else { w.to_string() });
                }
            }
        }
        Command::Classes { n, list } => {
            budget.check("class enumeration", *n)?;
            if *list {
                let mut rows: Vec<(Word, String)> = commutation_classes(*n)
                    .map(|p| (p.lexmin_word(), p.count_linear_extensions().to_string()))
                    .collect();
                rows.sort();
                for (w, e) in rows {
                    line(
                        out,
                        if json {
                            json!({ "word": w.to_string(), "size": e.parse::<serde_json::Number>().expect("decimal") })
                                .to_string()
                        } else {
                            format!("{w} {e}")
                        },
                    );
                }
            } else {
                let c = commutation_classes(*n).count();
                line(out, if json { json!({ "n": n, "classes": c }).to_string() } else { c.to_string() });
            }
        }
        Command::Poset { word, dot } => {
            let p = parse_reduced(word)?;
            write_poset(out, &p, *dot || dot_format, json);
        }
        Command::Wiring { word, ascii: _, dot } => {
            let w = parse_word(word)?;
            let d = WiringDiagram::from_word(&w);
            if *dot || dot_format {
                out.extend_from_slice(d.render_dot().as_bytes());
            } else if json {
                let wires: Vec<_> = (1..=d.wire_count()).map(|j| d.wire_rows(j).to_vec()).collect();
                let ends: Vec<_> = (1..=d.wire_count()).map(|j| d.endpoint(j)).collect();
                line(out, json!({ "word": w.to_string(), "wire_rows": wires, "endpoints": ends }));
            } else {
                out.extend_from_slice(d.render_ascii().as_bytes());
            }
        }
        Command::Index { word, delta } => {
            let w = parse_word(word)?;
            let p = WordPoset::from_word(&w)?;
            let (a, d) = word_chains(&w)?;
            match delta {
                Some(delta) => {
                    let delta: DeltaSeq = delta.parse()?;
                    let v = delta_index(&p, &delta)?;
                    line(
                        out,
                        if json {
                            json!({ "delta": delta.to_string(), "index": v.0 }).to_string()
                        } else {
                            format!("ind_{delta}={v}")
                        },
                    );
                }
                None => {
                    let (ia, id) = (index(&p, Side::A)?, index(&p, Side::D)?);
                    line(
                        out,
                        if json {
                            json!({ "ind_A": ia, "ind_D": id, "A": a.labels(), "D": d.labels() }).to_string()
                        } else {
                            format!("ind_A={ia} ind_D={id}")
                        },
                    );
                }
            }
        }
        Command::Profile { word } => {
            let p = parse_reduced(word)?;
            for (delta, v) in full_profile(&p)?.iter() {
                line(
                    out,
                    if json {
                        json!({ "delta": delta.to_string(), "index": v.0 }).to_string()
                    } else {
                        format!("{delta} {v}")
                    },
                );
            }
        }
        Command::Classify { word } => {
            let p = parse_reduced(word)?;
            let class = classify_gc(&p)?;
            line(
                out,
                match (&class, json) {
                    (Some(d), true) => json!({ "gc": true, "delta": d.to_string() }).to_string(),
                    (None, true) => json!({ "gc": false }).to_string(),
                    (Some(d), false) => format!("GC {d}"),
                    (None, false) => "not GC".to_string(),
                },
            );
        }
        Command::GcPoset { delta, dot } => {
            let delta: DeltaSeq = delta.parse()?;
            let p = gc_poset_of_delta(&delta)?;
            write_poset(out, &p, *dot || dot_format, json);
        }
        Command::GcTable { n_max } => {
            let rows = gc_table(*n_max, budget)?;
            if json {
                for r in &rows {
                    line(out, serde_json::to_string(r).expect("rows serialize"));
                }
            } else {
                line(out, TableRow::CSV_HEADER);
                for r in &rows {
                    line(out, r.to_csv());
                }
            }
        }
        Command::Syt { partition } => {
            let mu: StrictPartition = partition.parse()?;
            let g = thrall_g(&mu);
            let oracle = if mu.size() <= MAX_ELEMENTS {
                Some(syt_count_oracle(&mu)?)
            } else {
                None
            };
            let number = |v: &num_bigint::BigUint| v.to_string().parse::<serde_json::Number>().expect("decimal");
            line(
                out,
                if json {
                    json!({
                        "partition": mu.to_string(),
                        "thrall": number(&g),
                        "oracle": oracle.as_ref().map(number),
                    })
                    .to_string()
                } else {
                    match &oracle {
                        Some(o) => format!("g={g} oracle={o}"),
                        None => format!("g={g}"),
                    }
                },
            );
            if oracle.is_some_and(|o| o != g) {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Verify {
            checks,
            scale,
            no_timing,
        } => {
            let names: Vec<&str> = if checks.is_empty() {
                CHECKS.iter().map(|c| c.name).collect()
            } else {
                checks.iter().map(String::as_str).collect()
            };
            let mut all_pass = true;
            for name in names {
                let mut report = verify::run(name, *scale, budget)?;
                if *no_timing {
                    report = report.without_timing();
                }
                all_pass &= report.pass;
                line(
                    out,
                    if json {
                        serde_json::to_string(&report).expect("reports serialize")
                    } else {
                        report.summary_line()
                    },
                );
            }
            if !all_pass {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_poset(out: &mut Vec<u8>, p: &WordPoset, dot: bool, json: bool) {
    if dot {
        out.extend_from_slice(p.to_dot(true).as_bytes());
    } else if json {
        let covers: Vec<[usize; 2]> = p.covers().into_iter().map(|(x, y)| [x + 1, y + 1]).collect();
        line(
            out,
            json!({
                "word": p.lexmin_word().to_string(),
                "columns": p.columns(),
                "covers": covers,
            }),
        );
    } else {
        line(out, p);
    }
}
