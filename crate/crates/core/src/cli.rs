//! The `conjfree` command line.
//!
//! Exit status: 0 on success or when a check holds, 1 when it fails, 2 when
//! reversing ran out of budget, 3 on input errors. The data stream carries
//! only the report; progress goes to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Result;
use crate::fan_graph::{certify_graph, FanGraph};
use crate::geometry::{Arrangement, IncidenceLattice};
use crate::monoid;
use crate::presentation::{Gen, Presentation};
use crate::reversing::{
    self, Completeness, Outcome, SignedWord, Strategy, TraceStatus, WordProblem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Random,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "conjfree",
    version,
    about = "Conjugation-free presentations of line arrangements"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Maximum number of reversing steps per reversing run.
    #[arg(long, global = true, default_value_t = reversing::DEFAULT_BUDGET, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub budget: usize,
    /// Maximum word length for monoid enumeration.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub max_length: usize,
    /// Seed for randomized strategies.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit the full reversing trace.
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Intersection points with their lines.
    Lattice {
        input: PathBuf,
    },
    /// Graph of multiple points as JSON.
    Graph {
        input: PathBuf,
    },
    /// Graph classification and cycle-tree certificate.
    Classify {
        input: PathBuf,
    },
    /// Presentation JSON.
    Present {
        input: PathBuf,
    },
    CheckComplemented {
        input: PathBuf,
    },
    /// Cube condition on all generator triples.
    CheckComplete {
        input: PathBuf,
    },
    /// Reverse a signed word such as `x0 x1^-1 x2`.
    Reverse {
        input: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
    },
    WordProblem {
        input: PathBuf,
        w: String,
        w2: String,
    },
    /// Class counts by length, with left-cancellativity and lcm checks.
    MonoidExplore {
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    Fails,
    Undetermined,
    InputError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Fails => 1,
            ExitStatus::Undetermined => 2,
            ExitStatus::InputError => 3,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            ExitStatus::Ok
        } else {
            ExitStatus::Fails
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub status: ExitStatus,
    pub output: String,
}

struct Body {
    status: ExitStatus,
    json: Value,
    text: String,
}

pub fn run(config: &RunConfig) -> Report {
    match dispatch(config) {
        Ok(body) => Report {
            status: body.status,
            output: match config.format {
                Format::Json => serde_json::to_string_pretty(&body.json).expect("json"),
                Format::Text => body.text,
            },
        },
        Err(e) => {
            let message = e.to_string();
            Report {
                status: ExitStatus::InputError,
                output: match config.format {
                    Format::Json => json!({ "error": message }).to_string(),
                    Format::Text => format!("error: {message}"),
                },
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    Arrangement::parse(&read(path)?)
}

/// Presentation from either a presentation JSON file or an arrangement file,
/// with the cycle-tree certificate for arrangements.
pub fn load_presentation(path: &Path) -> Result<(Presentation, Option<bool>)> {
    let text = read(path)?;
    let is_json =
        path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        return Ok((Presentation::from_json(&text)?, None));
    }
    let lat = IncidenceLattice::build(&Arrangement::parse(&text)?);
    let certified = certify_graph(&FanGraph::build(&lat).classify()).applicable;
    Ok((Presentation::from_lattice(&lat), Some(certified)))
}

fn names(p: &Presentation, w: &[Gen]) -> Vec<String> {
    w.iter().map(|&g| p.name(g).to_string()).collect()
}

fn dispatch(config: &RunConfig) -> Result<Body> {
    match &config.command {
        Command::Lattice { input } => lattice(&load_arrangement(input)?),
        Command::Graph { input } => {
            let g = FanGraph::build(&IncidenceLattice::build(&load_arrangement(input)?));
            let text = g
                .edges
                .iter()
                .map(|e| format!("{} -- {} (line {})", e.a, e.b, e.line))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Body {
                status: ExitStatus::Ok,
                text: format!(
                    "{} vertices, {} edges\n{text}",
                    g.vertices.len(),
                    g.edges.len()
                ),
                json: serde_json::to_value(&g)?,
            })
        }
        Command::Classify { input } => {
            let g = FanGraph::build(&IncidenceLattice::build(&load_arrangement(input)?));
            let class = g.classify();
            let cert = certify_graph(&class);
            let mut json = serde_json::to_value(&class)?;
            json["certified"] = json!(cert.applicable);
            json["reason"] = json!(cert.reason);
            Ok(Body {
                status: ExitStatus::from_ok(cert.applicable),
                text: format!(
                    "no edges: {}\nunion of cycles: {}\nunion of cycle-trees: {}\ncertified: {} ({})",
                    class.has_no_edges,
                    class.is_union_of_cycles,
                    class.is_union_of_cycle_trees,
                    cert.applicable,
                    cert.reason
                ),
                json,
            })
        }
        Command::Present { input } => {
            let (p, certified) = load_presentation(input)?;
            Ok(Body {
                status: ExitStatus::Ok,
                json: serde_json::to_value(p.to_file(certified))?,
                text: p.to_string(),
            })
        }
        Command::CheckComplemented { input } => {
            let (p, _) = load_presentation(input)?;
            let rep = p.is_complemented();
            Ok(Body {
                status: ExitStatus::from_ok(rep.ok),
                text: format!(
                    "complemented: {} ({} violations)",
                    rep.ok,
                    rep.violations.len()
                ),
                json: serde_json::to_value(&rep)?,
            })
        }
        Command::CheckComplete { input } => check_complete(config, input),
        Command::Reverse {
            input,
            word,
            strategy,
        } => reverse(config, input, word, *strategy),
        Command::WordProblem { input, w, w2 } => {
            let (p, _) = load_presentation(input)?;
            let (a, b) = (p.parse_positive_word(w)?, p.parse_positive_word(w2)?);
            let answer = reversing::word_problem(&p, &a.0, &b.0, config.budget);
            let status = match answer {
                WordProblem::Equal => ExitStatus::Ok,
                WordProblem::Distinct => ExitStatus::Fails,
                WordProblem::Undetermined => ExitStatus::Undetermined,
            };
            Ok(Body {
                status,
                text: serde_json::to_value(answer)?
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                json: json!({ "result": answer }),
            })
        }
        Command::MonoidExplore { input } => {
            let (p, _) = load_presentation(input)?;
            let gc = monoid::enumerate_classes(&p, config.max_length, monoid::DEFAULT_SIZE_CAP)?;
            let cancel = monoid::check_left_cancellativity(&gc);
            let lcm = monoid::check_lcm_existence(&gc, &p);
            let counts = gc.class_counts();
            Ok(Body {
                status: ExitStatus::from_ok(cancel.ok && lcm.ok),
                text: format!(
                    "class counts by length: {counts:?}\nleft-cancellative up to {}: {}\nlcm up to {}: {}",
                    cancel.verified_up_to, cancel.ok, lcm.verified_up_to, lcm.ok
                ),
                json: json!({
                    "max_length": gc.max_length(),
                    "class_counts": counts,
                    "cancellativity": cancel,
                    "lcm": lcm,
                }),
            })
        }
    }
}

fn lattice(arr: &Arrangement) -> Result<Body> {
    let lat = IncidenceLattice::build(arr);
    let points: Vec<Value> = lat
        .points()
        .iter()
        .map(|pt| json!({ "location": pt.location, "lines": pt.lines, "multiplicity": pt.multiplicity() }))
        .collect();
    let per_line: Vec<&[usize]> = (0..lat.line_count())
        .map(|l| lat.points_on_line(l))
        .collect();
    let text = lat
        .points()
        .iter()
        .map(|pt| format!("{} lines {:?}", pt.location, pt.lines))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Body {
        status: ExitStatus::Ok,
        json: json!({
            "lines": lat.line_count(),
            "points": points,
            "per_line": per_line,
            "parallel_pairs": lat.parallel_pairs(),
        }),
        text,
    })
}

fn check_complete(config: &RunConfig, input: &Path) -> Result<Body> {
    let (p, certified) = load_presentation(input)?;
    let mut stderr = std::io::stderr();
    let rep = reversing::is_complete_with_progress(&p, config.budget, |done, total| {
        if done == total || done % 64 == 0 {
            let _ = write!(stderr, "\rtriples checked: {done}/{total}");
            if done == total {
                let _ = writeln!(stderr);
            }
        }
    })?;
    let (status, verdict, triple) = match rep.verdict {
        Completeness::Complete => (ExitStatus::Ok, "complete", None),
        Completeness::Incomplete { witness } => (ExitStatus::Fails, "incomplete", Some(witness)),
        Completeness::Undetermined { triple } => {
            (ExitStatus::Undetermined, "undetermined", Some(triple))
        }
    };
    let mut json = json!({
        "verdict": verdict,
        "triples_checked": rep.triples_checked,
        "triples_total": rep.triples_total,
    });
    if let Some(t) = triple {
        json["witness"] = json!(names(&p, &t));
    }
    if let Some(c) = certified {
        json["certified"] = json!(c);
    }
    let text = match triple {
        Some(t) => format!("{verdict}: {}", names(&p, &t).join(" ")),
        None => verdict.to_string(),
    };
    Ok(Body { status, json, text })
}

fn reverse(config: &RunConfig, input: &Path, word: &str, strategy: StrategyArg) -> Result<Body> {
    let (p, _) = load_presentation(input)?;
    let w = SignedWord::parse(&p, word)?;
    if config.trace && strategy == StrategyArg::Leftmost {
        let trace = reversing::reverse(&p, &w, config.budget);
        let status = match trace.status {
            TraceStatus::Terminal => ExitStatus::Ok,
            TraceStatus::Stuck { .. } => ExitStatus::Fails,
            TraceStatus::ExhaustedBudget => ExitStatus::Undetermined,
        };
        let text = trace
            .steps
            .iter()
            .map(|s| s.word.display(&p).to_string())
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Body {
            status,
            json: trace.to_json(&p),
            text,
        });
    }
    let strategy = match strategy {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Random => Strategy::Random { seed: config.seed },
    };
    let (status, label, word) = match reversing::reverse_with(&p, w, config.budget, strategy) {
        Outcome::Terminal(t) => (ExitStatus::Ok, "terminal", t),
        Outcome::Stuck { word, .. } => (ExitStatus::Fails, "stuck", word),
        Outcome::ExhaustedBudget(word) => (ExitStatus::Undetermined, "exhausted-budget", word),
    };
    let mut json = json!({ "status": label, "word": word.to_names(&p) });
    if let Some((num, den)) = word.split_terminal().filter(|_| label == "terminal") {
        json["numerator"] = json!(names(&p, &num.0));
        json["denominator"] = json!(names(&p, &den.0));
    }
    Ok(Body {
        status,
        text: format!("{label}: {}", word.display(&p)),
        json,
    })
}
