use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use howe_core::cores::core_report;
use howe_core::error::Error;
use howe_core::invariants::{run_suite, Suite};
use howe_core::par::Execution;
use howe_core::relations::{HowePair, RelationKind, Sign};
use howe_core::special::SpecialSymbol;
use howe_core::sweep::{self, SweepParams};
use howe_core::symbol::Symbol;

const EXIT_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_CROSS_CHECK: u8 = 4;
const EXIT_CORE: u8 = 5;

/// Symbols, Howe relations and the uniform projection of the unipotent
/// Weil character for (Sp_2n, O^ε_2n′).
#[derive(Parser)]
#[command(name = "howe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List reduced symbols (or special symbols) of a rank and defect.
    Enumerate {
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_hyphen_values = true)]
        defect: i32,
        /// Only special symbols; the defect must be 0 or 1.
        #[arg(long)]
        special: bool,
        /// Print a JSON array instead of one literal per line.
        #[arg(long)]
        json: bool,
    },
    /// Print the relation table of a pair.
    Relation {
        z: String,
        zp: String,
        /// `D`, `B` or `bar`.
        kind: String,
        /// `+` or `-`; ignored for `D`.
        #[arg(default_value = "+", allow_hyphen_values = true)]
        sign: String,
        /// Also compare the inequality test with the definition on every pair.
        #[arg(long)]
        cross_check: bool,
    },
    /// Core analysis of a pair.
    Cores { z: String, zp: String },
    /// Check the main identity on every special pair in range.
    Verify {
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        #[arg(long, default_value_t = 5)]
        npmax: u32,
        /// Comma-separated signs, e.g. `+,-`.
        #[arg(long, default_value = "+,-", allow_hyphen_values = true)]
        signs: String,
        /// Also compare the whole-rank AMR expansion with the block sum.
        #[arg(long)]
        amr: bool,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Run a seeded invariant suite.
    Proptest {
        /// partitions, symbols, special, relations, cores, maps, uniform or all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per check.
        #[arg(long, default_value_t = 32)]
        cases: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Domain(_) => EXIT_DOMAIN,
            Error::Core(_) => EXIT_CORE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

// a closed pipe downstream (e.g. `| head`) is not an error worth a panic
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_json<T: Serialize>(value: &T) {
    emit(&serde_json::to_string_pretty(value).expect("serializable"));
}

fn parse_sign(s: &str) -> Result<Sign, Failure> {
    s.parse().map_err(|_| fail(EXIT_PARSE, format!("bad sign `{s}`")))
}

fn parse_kind(kind: &str, sign: Sign) -> Result<RelationKind, Failure> {
    match kind {
        "D" | "d" => Ok(RelationKind::D),
        "B" | "b" => Ok(RelationKind::B(sign)),
        "bar" | "Bbar" => Ok(RelationKind::Bar(sign)),
        _ => Err(fail(EXIT_PARSE, format!("unknown relation kind `{kind}`"))),
    }
}

fn enumerate(rank: u32, defect: i32, special: bool, json: bool) -> Result<(), Failure> {
    let syms: Vec<String> = if special {
        if !(defect == 0 || defect == 1) {
            return Err(fail(EXIT_DOMAIN, format!("special symbols have defect 0 or 1, not {defect}")));
        }
        SpecialSymbol::enumerate(rank, defect).iter().map(ToString::to_string).collect()
    } else {
        Symbol::enumerate(rank, defect).iter().map(ToString::to_string).collect()
    };
    if json {
        print_json(&syms);
    } else {
        for s in syms {
            emit(&s);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CrossCheck {
    sign: Sign,
    checked: usize,
    mismatches: Vec<(Symbol, Symbol)>,
}

#[derive(Serialize)]
struct CheckedRelation {
    relation: howe_core::relations::RelationTable,
    cross_check: CrossCheck,
}

fn relation(z: &str, zp: &str, kind: &str, sign: &str, cross_check: bool) -> Result<(), Failure> {
    let sign = parse_sign(sign)?;
    let kind = parse_kind(kind, sign)?;
    let p = HowePair::parse(z, zp)?;
    let table = p.relation(kind);
    if !cross_check {
        print_json(&table);
        return Ok(());
    }
    let mismatches = p.ineq_mismatches(kind.sign());
    let checked = (1usize << p.z().num_singles()) * (1usize << p.zp().num_singles());
    let clean = mismatches.is_empty();
    print_json(&CheckedRelation {
        relation: table,
        cross_check: CrossCheck { sign: kind.sign(), checked, mismatches },
    });
    if clean {
        Ok(())
    } else {
        Err(fail(EXIT_CROSS_CHECK, "inequality test disagrees with the definition"))
    }
}

fn cores(z: &str, zp: &str) -> Result<(), Failure> {
    let p = HowePair::parse(z, zp)?;
    let report = core_report(&p).map_err(Error::from)?;
    print_json(&report);
    Ok(())
}

fn verify(nmax: u32, npmax: u32, signs: &str, amr: bool, sequential: bool) -> Result<(), Failure> {
    let envelope = sweep::max_rank_envelope();
    if nmax > envelope || npmax > envelope {
        return Err(fail(
            EXIT_DOMAIN,
            format!("ranks above {envelope} need {}=<rank>", sweep::MAX_RANK_VAR),
        ));
    }
    let mut parsed = Vec::new();
    for s in signs.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let sign = parse_sign(s)?;
        if !parsed.contains(&sign) {
            parsed.push(sign);
        }
    }
    parsed.sort();
    let params = SweepParams { nmax, npmax, signs: parsed, amr };
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let report = sweep::run(&params, exec);
    print_json(&report);
    if report.passed() {
        return Ok(());
    }
    for f in &report.failures {
        eprintln!("identity fails at ({}, {}, {}) with {} nonzero difference terms", f.z, f.zp, f.sign, f.diff.len());
    }
    for a in report.amr.iter().filter(|a| !a.equal) {
        eprintln!("AMR consistency fails at ({}, {}, {})", a.n, a.n_prime, a.sign);
    }
    Err(fail(EXIT_FAILED, "verification failed"))
}

fn proptest(suite: &str, seed: u64, cases: usize) -> Result<(), Failure> {
    let suite: Suite = suite.parse().map_err(|e: String| fail(EXIT_PARSE, e))?;
    let report = run_suite(suite, seed, cases);
    print_json(&report);
    if report.passed {
        Ok(())
    } else {
        Err(fail(EXIT_FAILED, "property violations found"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate { rank, defect, special, json } => enumerate(*rank, *defect, *special, *json),
        Command::Relation { z, zp, kind, sign, cross_check } => relation(z, zp, kind, sign, *cross_check),
        Command::Cores { z, zp } => cores(z, zp),
        Command::Verify { nmax, npmax, signs, amr, sequential } => verify(*nmax, *npmax, signs, *amr, *sequential),
        Command::Proptest { suite, seed, cases } => proptest(suite, *seed, *cases),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
