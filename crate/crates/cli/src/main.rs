use std::io::Read;
use std::process::ExitCode;

use altbase::coding::{base_from_directive, faithful_coding, CodingError, Directive, Letter};
use altbase::expansion::ExpansionError;
use altbase::numerics::IntervalJson;
use altbase::synthesis::{
    certify, synthesize_general, synthesize_periodic, AlternateBase, SynthesisError,
};
use altbase::words::{check_parry, ExpansionList, UPWord};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DEPTH: u8 = 3;
const EXIT_UNDECIDABLE: u8 = 4;

#[derive(Parser)]
#[command(name = "altbase", version, about = "Expansions of 1 and B-integer codings for alternate bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lexicographic conditions on a list of expansions of 1.
    Validate(ListArgs),
    /// Build the alternate base whose expansions of 1 are the given words.
    Synthesize {
        #[command(flatten)]
        list: ListArgs,
        /// Target width 2^-TOL for every β.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(i64).range(8..))]
        tol: i64,
        /// Use truncations `a_1⋯a_N 1^ω` up to this depth instead of the
        /// exact fixed point.
        #[arg(long)]
        depth: Option<usize>,
        /// Synthesize even when the lexicographic conditions fail.
        #[arg(long)]
        skip_parry: bool,
    },
    /// Print the faithful coding of the B-integers.
    Code(CodeArgs),
}

#[derive(Args)]
struct ListArgs {
    /// Number of entries; must match the word count when given.
    #[arg(short = 'p')]
    p: Option<usize>,
    /// Words `a_0 … a_{p−1}` like `2(01)`, or `-` to read them from stdin.
    #[arg(required = true)]
    words: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CodeArgs {
    /// Periodic directive `c_1,…,c_k;…`, one tuple per substitution.
    #[arg(long, conflicts_with = "base", required_unless_present = "base")]
    directive: Option<String>,
    /// Quasi-greedy expansions of 1 `d_0 … d_{p−1}` defining the base.
    #[arg(long, num_args = 1..)]
    base: Option<Vec<String>>,
    #[arg(long, default_value_t = 100)]
    len: usize,
    /// Also report whether the gap coding and the S-adic limit agree.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value = "")]
    sep: String,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(i64).range(8..))]
    tol: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn synthesis_failure(e: SynthesisError) -> Failure {
    let code = match &e {
        SynthesisError::DepthExhausted(_) => EXIT_DEPTH,
        SynthesisError::Expansion(_) => EXIT_UNDECIDABLE,
        SynthesisError::Words(_) => EXIT_PARSE,
        _ => EXIT_VIOLATION,
    };
    Failure::new(code, e.to_string())
}

fn coding_failure(e: CodingError) -> Failure {
    let code = match &e {
        CodingError::ClassingUndecidable { .. }
        | CodingError::GapNotInTable { .. }
        | CodingError::Undecidable(_)
        | CodingError::Expansion(ExpansionError::FloorUndecidable { .. })
        | CodingError::Expansion(ExpansionError::Undecidable(_)) => EXIT_UNDECIDABLE,
        CodingError::Parse(_)
        | CodingError::Words(_)
        | CodingError::NotMonotone { .. }
        | CodingError::ArityMismatch { .. }
        | CodingError::ArityTooSmall { .. }
        | CodingError::ZeroParameter { .. }
        | CodingError::EmptyDirective => EXIT_PARSE,
        CodingError::Synthesis(SynthesisError::DepthExhausted(_)) => EXIT_DEPTH,
        _ => EXIT_VIOLATION,
    };
    Failure::new(code, e.to_string())
}

/// Expands a lone `-` into whitespace-separated words from stdin.
fn read_words(raw: &[String]) -> Result<Vec<UPWord>, Failure> {
    let mut tokens = Vec::new();
    for w in raw {
        if w == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            tokens.extend(s.split_whitespace().map(str::to_string));
        } else {
            tokens.push(w.clone());
        }
    }
    tokens
        .iter()
        .map(|t| t.parse::<UPWord>().map_err(|e| Failure::new(EXIT_PARSE, format!("{t}: {e}"))))
        .collect()
}

fn read_list(args: &ListArgs) -> Result<ExpansionList, Failure> {
    let words = read_words(&args.words)?;
    if let Some(p) = args.p {
        if p != words.len() {
            return Err(Failure::new(
                EXIT_PARSE,
                format!("-p {p} given with {} words", words.len()),
            ));
        }
    }
    ExpansionList::from_up(words).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("valid json")),
        Format::Text => println!("{}", text()),
    }
}

fn validate(args: &ListArgs) -> Result<u8, Failure> {
    let list = read_list(args)?;
    let report = check_parry(&list);
    let value = json!({ "command": "validate", "parry": report });
    emit(args.format, &value, || {
        if report.ok {
            return "ok".into();
        }
        report
            .violations
            .iter()
            .map(|v| format!("violation i={} j={}", v.i, v.j))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if report.ok { 0 } else { EXIT_VIOLATION })
}

fn beta_lines(base: &AlternateBase) -> String {
    let p = base.p();
    base.betas_display()
        .iter()
        .enumerate()
        .map(|(t, b)| format!("beta_{} = {}", p - 1 - t, b))
        .collect::<Vec<_>>()
        .join("\n")
}

fn synthesize(
    args: &ListArgs,
    tol: i64,
    depth: Option<usize>,
    skip_parry: bool,
) -> Result<u8, Failure> {
    let list = read_list(args)?;
    if !skip_parry {
        let report = check_parry(&list);
        if !report.ok {
            let value = json!({ "command": "validate", "parry": report });
            emit(args.format, &value, || "lexicographic conditions fail; see --skip-parry".into());
            return Ok(EXIT_VIOLATION);
        }
    }
    let (base, general) = match depth {
        None => (synthesize_periodic(&list, tol).map_err(synthesis_failure)?.base, None),
        Some(d) => match synthesize_general(&list, tol, d) {
            Ok(g) => (g.base.clone(), Some(g)),
            Err(SynthesisError::DepthExhausted(g)) => {
                let value = json!({ "command": "synthesize", "base": g.base.to_json(), "general": g.to_json() });
                emit(args.format, &value, || format!("depth exhausted\n{}", beta_lines(&g.base)));
                return Ok(EXIT_DEPTH);
            }
            Err(e) => return Err(synthesis_failure(e)),
        },
    };
    let cert = certify(&list, &base);
    let mut value = json!({
        "command": "synthesize",
        "base": base.to_json(),
        "width_log2": base.width_msb(),
        "certificate": cert.to_json(),
    });
    if let Some(g) = &general {
        value["general"] = g.to_json();
    }
    emit(args.format, &value, || {
        format!("{}\nuniqueness = {:?}", beta_lines(&base), cert.uniqueness)
    });
    Ok(if cert.ok() { 0 } else { EXIT_VIOLATION })
}

fn render(word: &[Letter], sep: &str) -> String {
    word.iter().map(Letter::to_string).collect::<Vec<_>>().join(sep)
}

fn code(args: &CodeArgs) -> Result<u8, Failure> {
    let base = match (&args.directive, &args.base) {
        (Some(d), _) => {
            let d: Directive = d.parse().map_err(coding_failure)?;
            base_from_directive(&d, args.tol)
                .map_err(coding_failure)?
                .base
                .expect("periodic directive")
        }
        (None, Some(words)) => {
            let words = read_words(words)?;
            let list = ExpansionList::from_up(words).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            synthesize_periodic(&list, args.tol).map_err(synthesis_failure)?.base
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let coding = faithful_coding(&base, args.len).map_err(coding_failure)?;
    let agree = coding.agree();
    let mut value = json!({
        "command": "code",
        "betas": base.betas_display().iter().map(IntervalJson::from).collect::<Vec<_>>(),
        "word": render(&coding.sadic, &args.sep),
        "length": coding.sadic.len(),
        "gap_table": coding.table.to_json(),
    });
    if args.check {
        value["agree"] = json!(agree);
        value["first_mismatch"] = json!(coding.first_mismatch());
    }
    emit(args.format, &value, || {
        let mut s = render(&coding.sadic, &args.sep);
        if args.check {
            s.push_str(if agree { "\nagree" } else { "\ndisagree" });
        }
        s
    });
    Ok(if args.check && !agree { EXIT_VIOLATION } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(args) => validate(args),
        Command::Synthesize { list, tol, depth, skip_parry } => synthesize(list, *tol, *depth, *skip_parry),
        Command::Code(args) => code(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("altbase: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

