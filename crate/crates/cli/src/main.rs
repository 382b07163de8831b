//! `rsep`: closure membership, R-separability and R-pointlike subsets.
//!
//! Exit status: 0 positive verdict, 1 negative verdict, 2 input error,
//! 3 capacity exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use rsep_core::recognize::{
    brute_force_separator, certify, generate, idempotent_pointlike, parse_sgp, pointlike, separate,
    size_bound, GenOptions, Outcome, DEFAULT_CAP, DEFAULT_SAMPLES,
};
use rsep_core::term::{eval_nu_bracket, parse_term};
use rsep_core::{parse_automaton, regex_to_automaton, Alphabet, Automaton, Error};

#[derive(Parser)]
#[command(
    name = "rsep",
    version,
    about = "Decide closure membership and separability for finite R-trivial semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Stop when the generated semigroup exceeds this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Generate on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Report elapsed time in the stats line.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct LanguageInput {
    /// Read the automaton arguments as regular expressions instead of files.
    #[arg(long, requires = "alphabet")]
    regex: bool,
    /// Alphabet for regular expressions, e.g. `ab`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the ω-semigroup of an automaton and report its size.
    Build {
        automaton: String,
        /// Print every element in canonical order.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        input: LanguageInput,
    },
    /// Decide whether an ω-term lies in the closure of a language.
    Member {
        automaton: String,
        term: String,
        /// Print a certificate for a positive answer and verify it.
        #[arg(long)]
        certify: bool,
        /// Number of instantiations checked during verification.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[command(flatten)]
        input: LanguageInput,
    },
    /// Decide whether the closures of the languages have a common point.
    Separate {
        #[arg(required = true, num_args = 1..)]
        automata: Vec<String>,
        /// Also search for a separator with at most this many elements.
        #[arg(long, value_name = "MAX_SIZE")]
        oracle: Option<usize>,
        /// Print a verified certificate per language for the witness.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[command(flatten)]
        input: LanguageInput,
    },
    /// Decide whether a subset of a finite semigroup is R-pointlike.
    Pointlike {
        semigroup: PathBuf,
        /// Element names, separated by spaces or given as several arguments.
        #[arg(required = true, num_args = 1..)]
        subset: Vec<String>,
        /// Require the common point to be idempotent.
        #[arg(long)]
        idempotent: bool,
    },
}

enum Failure {
    Input(String),
    Capacity(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapacityExceeded(cap) => Failure::Capacity(cap),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Report {
    out: String,
    positive: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_language(arg: &str, input: &LanguageInput) -> Result<Automaton, Failure> {
    if input.regex {
        let al = Alphabet::from_str_symbols(input.alphabet.as_deref().unwrap_or_default())?;
        let aut = regex_to_automaton(arg, &al)?;
        if aut.accepts_empty() {
            return Err(Failure::Input(format!(
                "{arg}: the language contains the empty word; languages must lie in A+"
            )));
        }
        Ok(aut)
    } else {
        let path = Path::new(arg);
        parse_automaton(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn stats(common: &Common, start: Instant, fields: &[(&str, String)]) -> String {
    let mut line = String::from("# stats:");
    for (k, v) in fields {
        write!(line, " {k}={v}").unwrap();
    }
    if common.timing {
        write!(line, " elapsed_ms={}", start.elapsed().as_millis()).unwrap();
    }
    line.push('\n');
    line
}

fn outcome_stats(o: &Outcome) -> Vec<(&'static str, String)> {
    vec![
        ("generated", o.generated.to_string()),
        ("states", o.states.to_string()),
        ("letters", o.letters.to_string()),
    ]
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let start = Instant::now();
    let common = &cli.common;
    let opts = GenOptions {
        cap: common.cap,
        parallel: !common.sequential,
    };
    let mut out = String::new();
    let positive;

    match &cli.command {
        Command::Build {
            automaton,
            dump,
            input,
        } => {
            let aut = load_language(automaton, input)?;
            let g = &aut.graph;
            let s = generate(g, opts)?;
            let bound = size_bound(g.states(), g.alphabet().len());
            writeln!(out, "size: {}", s.len()).unwrap();
            writeln!(out, "bound: {bound}").unwrap();
            if *dump {
                for (i, e) in s.elements().iter().enumerate() {
                    writeln!(
                        out,
                        "{i}: {} | {}",
                        e.witness,
                        e.triple.display(g.alphabet())
                    )
                    .unwrap();
                }
            }
            out += &stats(
                common,
                start,
                &[
                    ("states", g.states().to_string()),
                    ("letters", g.alphabet().len().to_string()),
                ],
            );
            positive = true;
        }
        Command::Member {
            automaton,
            term,
            certify: want_cert,
            samples,
            input,
        } => {
            let aut = load_language(automaton, input)?;
            let t = parse_term(term, aut.alphabet())?;
            let x = eval_nu_bracket(&t, &aut.graph)?;
            positive = x.xi().meets(aut.initial, aut.terminal);
            writeln!(out, "{}", if positive { "MEMBER" } else { "NOT_MEMBER" }).unwrap();
            let mut fields = vec![("term_size", t.size().to_string())];
            if positive && *want_cert {
                writeln!(out, "witness: {t}").unwrap();
                if let Some(c) = certify(&t, &aut, *samples)? {
                    writeln!(out, "certificate: {} verified={}", c.term, c.verified).unwrap();
                    fields.push(("pair", format!("({},{})", c.pair.0, c.pair.1)));
                }
            }
            out += &stats(common, start, &fields);
        }
        Command::Separate {
            automata,
            oracle,
            certify: want_cert,
            samples,
            input,
        } => {
            if automata.len() < 2 {
                return Err(Failure::Input(
                    "separate needs at least two automata".into(),
                ));
            }
            if oracle.is_some() && automata.len() != 2 {
                return Err(Failure::Input(
                    "--oracle compares exactly two languages".into(),
                ));
            }
            let auts = automata
                .iter()
                .map(|a| load_language(a, input))
                .collect::<Result<Vec<_>, _>>()?;
            let o = separate(&auts, opts)?;
            positive = o.common.is_none();
            writeln!(
                out,
                "{}",
                if positive {
                    "SEPARABLE"
                } else {
                    "NOT_SEPARABLE"
                }
            )
            .unwrap();
            if let Some(w) = o.witness() {
                writeln!(out, "witness: {w}").unwrap();
                if *want_cert {
                    for aut in &auts {
                        match certify(w, aut, *samples)? {
                            Some(c) => {
                                writeln!(out, "certificate: {} verified={}", c.term, c.verified)
                                    .unwrap()
                            }
                            None => writeln!(out, "certificate: none verified=false").unwrap(),
                        }
                    }
                }
            }
            out += &stats(common, start, &outcome_stats(&o));
            if let Some(max) = oracle {
                let sep = brute_force_separator(&auts[0], &auts[1], *max)?;
                let agrees = sep.is_none() || positive;
                match sep {
                    Some(s) => writeln!(
                        out,
                        "# oracle: separator with {} elements, {}",
                        s.semigroup.size(),
                        if agrees { "agrees" } else { "DISAGREES" }
                    )
                    .unwrap(),
                    None => {
                        writeln!(out, "# oracle: no separator with at most {max} elements").unwrap()
                    }
                }
            }
        }
        Command::Pointlike {
            semigroup,
            subset,
            idempotent,
        } => {
            let path = semigroup.as_path();
            let s = parse_sgp(&read(path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let mut elements = Vec::new();
            for name in subset.iter().flat_map(|a| a.split_whitespace()) {
                let e = s.element(name)?;
                if !elements.contains(&e) {
                    elements.push(e);
                }
            }
            let o = if *idempotent {
                idempotent_pointlike(&s, &elements, opts)?
            } else {
                pointlike(&s, &elements, opts)?
            };
            positive = o.common.is_some();
            let verdict = match (idempotent, positive) {
                (false, true) => "POINTLIKE",
                (false, false) => "NOT_POINTLIKE",
                (true, true) => "IDEMPOTENT_POINTLIKE",
                (true, false) => "NOT_IDEMPOTENT_POINTLIKE",
            };
            writeln!(out, "{verdict}").unwrap();
            if let Some(w) = o.witness() {
                writeln!(out, "witness: {w}").unwrap();
            }
            out += &stats(common, start, &outcome_stats(&o));
        }
    }
    Ok(Report { out, positive })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.out);
            ExitCode::from(if r.positive { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(cap)) => {
            eprintln!("error: the generated semigroup exceeded {cap} elements");
            ExitCode::from(3)
        }
    }
}
