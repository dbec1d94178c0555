//! `bsigma1`: command-line front end.
//!
//! Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for input
//! errors and 3 when an automaton exceeds the state limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bsigma1::automata::{AutomataError, Dfa, Nfa};
use bsigma1::ceiling::{pi1_ceiling_language, CeilingError};
use bsigma1::decompose::{decompose, search, DecomposeError};
use bsigma1::hausdorff::{atom_names, normal_form, BoolFunc};
use bsigma1::logic::{compile_sentence, eval_sentence, parse_sentence_file, LogicError, Sentence};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bsigma1", version, about = "Decide iterated-difference definability of regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the main output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the universal ceiling language of an automaton.
    Ceiling {
        automaton: PathBuf,
        #[arg(long = "vars", value_name = "D")]
        vars: usize,
        #[command(flatten)]
        output: Output,
        /// Also write the result as Graphviz.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Decide whether the language is a K-term difference of universal
    /// sentences with D variables.
    Decompose {
        automaton: PathBuf,
        #[arg(long = "vars", value_name = "D")]
        vars: usize,
        #[arg(long = "terms", value_name = "K")]
        terms: usize,
        /// Write the JSON report here; `-` for stdout.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Find the smallest (terms, vars) that succeeds.
    Search {
        automaton: PathBuf,
        #[arg(long = "max-vars", value_name = "D")]
        max_vars: usize,
        #[arg(long = "max-terms", value_name = "K")]
        max_terms: usize,
        /// Write the JSON report here; `-` for stdout.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Print the monotone normal form of a truth table.
    Hausdorff {
        table: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Compile a sentence file to an automaton.
    Compile {
        sentence: PathBuf,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Evaluate a sentence on a word by brute force.
    Eval { sentence: PathBuf, word: String },
    /// Compare two languages, each given as an automaton or a sentence file.
    Equiv { left: PathBuf, right: PathBuf },
    /// Print an automaton as Graphviz.
    Dot {
        automaton: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<AutomataError> for Failure {
    fn from(e: AutomataError) -> Self {
        match e {
            AutomataError::StateLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<CeilingError> for Failure {
    fn from(e: CeilingError) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<E: Into<Failure>>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| match e.into() {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_automaton(path: &Path) -> Result<Dfa, Failure> {
    let nfa: Nfa = read(path)?.parse().map_err(with_path::<AutomataError>(path))?;
    Ok(nfa.determinize().map_err(with_path::<AutomataError>(path))?.minimize())
}

fn load_sentence(path: &Path) -> Result<Sentence, Failure> {
    parse_sentence_file(&read(path)?).map_err(with_path::<LogicError>(path))
}

/// An automaton file starts with `alphabet:` and has a `states:` line;
/// anything else is read as a sentence.
fn load_language(path: &Path) -> Result<Dfa, Failure> {
    let text = read(path)?;
    let is_automaton = text
        .lines()
        .any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("states:"));
    if is_automaton {
        load_automaton(path)
    } else {
        Ok(compile_sentence(&load_sentence(path)?).map_err(with_path::<LogicError>(path))?)
    }
}

fn emit(target: Option<&Path>, text: &str) -> Result<(), Failure> {
    match target {
        Some(p) if p != Path::new("-") => fs::write(p, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn positive(name: &str, value: usize) -> Result<(), Failure> {
    if value == 0 {
        return Err(Failure::Input(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Ceiling {
            automaton,
            vars,
            output,
            dot,
        } => {
            positive("vars", vars)?;
            let l = load_automaton(&automaton)?;
            let up = pi1_ceiling_language(&l, vars)?;
            emit(output.out.as_deref(), &up.to_string())?;
            if let Some(dot) = dot {
                emit(Some(&dot), &up.to_dot())?;
            }
            Ok(true)
        }
        Command::Decompose {
            automaton,
            vars,
            terms,
            json,
        } => {
            positive("vars", vars)?;
            positive("terms", terms)?;
            let l = load_automaton(&automaton)?;
            let report = decompose(&l, vars, terms)?;
            let mut summary = format!("{} d={vars} k={terms}\n", report.verdict);
            if report.is_success() {
                for (i, c) in report.chain.iter().enumerate() {
                    summary.push_str(&format!("# term {}\n{c}", i + 1));
                }
            } else {
                let w = report.witness_text().unwrap_or_default();
                summary.push_str(&format!("witness: \"{w}\"\n"));
                if report.epsilon_note {
                    summary.push_str("note: the residual is exactly the empty word\n");
                }
            }
            match json {
                Some(p) if p == Path::new("-") => emit(None, &json_text(&report.to_json()))?,
                Some(p) => {
                    emit(Some(&p), &json_text(&report.to_json()))?;
                    emit(None, &summary)?;
                }
                None => emit(None, &summary)?,
            }
            Ok(report.is_success())
        }
        Command::Search {
            automaton,
            max_vars,
            max_terms,
            json,
        } => {
            positive("max-vars", max_vars)?;
            positive("max-terms", max_terms)?;
            let l = load_automaton(&automaton)?;
            let r = search(&l, max_vars, max_terms)?;
            let value = r.to_json(l.alphabet());
            let summary = match r.found {
                Some((d, k)) => format!("found d={d} k={k}\n"),
                None => format!("exhausted d<={max_vars} k<={max_terms}\n"),
            };
            match json {
                Some(p) if p == Path::new("-") => emit(None, &json_text(&value))?,
                Some(p) => {
                    emit(Some(&p), &json_text(&value))?;
                    emit(None, &summary)?;
                }
                None => emit(None, &summary)?,
            }
            Ok(r.found.is_some())
        }
        Command::Hausdorff { table, output } => {
            let f: BoolFunc = read(&table)?
                .parse()
                .map_err(|e: bsigma1::hausdorff::HausdorffError| {
                    Failure::Input(format!("{}: {e}", table.display()))
                })?;
            let names = atom_names(f.arity());
            let mut text = String::new();
            for (i, link) in normal_form(&f).links().iter().enumerate() {
                text.push_str(&format!("link {}: {link}\n", i + 1));
                text.push_str(&format!("  dnf: {}\n", link.to_dnf(&names)));
            }
            emit(output.out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Compile {
            sentence,
            output,
            dot,
        } => {
            let s = load_sentence(&sentence)?;
            let dfa = compile_sentence(&s).map_err(with_path::<LogicError>(&sentence))?;
            emit(output.out.as_deref(), &dfa.to_string())?;
            if let Some(dot) = dot {
                emit(Some(&dot), &dfa.to_dot())?;
            }
            Ok(true)
        }
        Command::Eval { sentence, word } => {
            let s = load_sentence(&sentence)?;
            let w = s.alphabet().parse_word(&word)?;
            let holds = eval_sentence(&s, &w);
            println!("{holds}");
            Ok(holds)
        }
        Command::Equiv { left, right } => {
            let (l, r) = (load_language(&left)?, load_language(&right)?);
            let decision = l.decide_equiv(&r)?;
            if decision.holds {
                println!("equivalent");
            } else {
                let w = decision.witness.unwrap_or_default();
                let side = if l.accepts(&w) { "left" } else { "right" };
                println!("not equivalent");
                println!("witness: \"{}\" (accepted by {side} only)", l.alphabet().render_word(&w));
            }
            Ok(decision.holds)
        }
        Command::Dot { automaton, output } => {
            let d = load_automaton(&automaton)?;
            emit(output.out.as_deref(), &d.to_dot())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(3)
        }
    }
}
