//! Command-line front end: encode and decode values, list languages and
//! permutation classes in plain or Gray order, and run the brute-force
//! verification oracles.
//!
//! Exit codes:
//!   0  success
//!   1  verification found a disagreement, or a runtime failure
//!   2  usage error (bad flags, unsupported combination, malformed input)
//!   3  a digit exceeds its positional bound
//!   4  --strict rejected a non-canonical representation
//!   5  refused by the size guard (see --force / --max-elements)
//!   6  --check found a defect in a listing

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graynum::basis::SequenceSpec;
use graynum::codec::{decode, encode, is_valid, CodecError, DigitString};
use graynum::graycode::{brgc_cursor, gray_language, hamming};
use graynum::oracle::{
    check_gray, check_perms, check_strings, oracle_unique_representation, OracleError,
    OracleReport, SizeGuard,
};
use graynum::perm::{
    adjacent_transposition_delta, gray_perms_cursor, perm_set, string_from_perm, Permutation,
};
use graynum::{Natural, NumerationBasis};

#[derive(Parser)]
#[command(name = "graynum", version, about = "Numeration systems, their string languages, and Gray codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy digit string of a natural number
    Encode {
        #[command(flatten)]
        seq: SeqArgs,
        /// The number to encode, in decimal
        value: String,
    },
    /// Value of a digit string
    Decode {
        #[command(flatten)]
        seq: SeqArgs,
        /// Reject strings that are not the canonical greedy form
        #[arg(long)]
        strict: bool,
        /// Digits, most significant first; use '.' between digits above 9
        digits: String,
    },
    /// All valid strings of a given length, in increasing order of value
    List {
        #[command(flatten)]
        seq: SeqArgs,
        /// String length
        #[arg(long)]
        len: usize,
        /// Emit a JSON object instead of one line per string
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// The same strings in Gray order: consecutive lines differ in one digit
    Gray {
        #[command(flatten)]
        seq: SeqArgs,
        /// String length
        #[arg(long)]
        len: usize,
        /// Verify the one-digit-change property while listing
        #[arg(long)]
        check: bool,
        /// Emit a JSON object instead of one line per string
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Pattern-avoiding permutations, in recursive or Gray order
    Perms {
        /// Class parameter; patterns are 321, 312, and 23..(k+1)1
        #[arg(long)]
        k: u64,
        /// Permutation length
        #[arg(long)]
        len: usize,
        /// List in Gray order (consecutive permutations differ by one
        /// adjacent transposition) instead of recursive order
        #[arg(long)]
        gray: bool,
        /// Append each permutation's inversion-count string
        #[arg(long)]
        strings: bool,
        /// Verify the adjacent-transposition property while listing
        #[arg(long, requires = "gray")]
        check: bool,
        /// Emit a JSON object instead of one line per permutation
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Cross-check the fast constructions against brute-force enumeration
    Verify {
        #[command(flatten)]
        seq: SeqArgs,
        /// Check every length from 0 up to this one
        #[arg(long)]
        max_len: usize,
        /// Which checks to run
        suite: Suite,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeqName {
    /// Each term is the sum of the k preceding terms
    Kbonacci,
    /// 1, 2, 5, 12, 29, ...
    Pell,
    /// 1, 2, 4, 8, 16, ...
    Pow2,
    /// a(m) = k a(m-1) + h a(m-2)
    Linplus,
    /// a(m) = k a(m-1) - h a(m-2)
    Linminus,
}

#[derive(Args)]
struct SeqArgs {
    /// Sequence family
    #[arg(long, value_enum)]
    seq: SeqName,
    /// Order (kbonacci) or leading coefficient (linplus, linminus)
    #[arg(long)]
    k: Option<u64>,
    /// Trailing coefficient (linplus, linminus)
    #[arg(long)]
    h: Option<u64>,
}

impl SeqArgs {
    fn to_spec(&self) -> Result<SequenceSpec, CliError> {
        let need_k = || {
            self.k
                .ok_or_else(|| CliError::usage(format!("--seq {} requires --k", self.name())))
        };
        let need_h = || {
            self.h
                .ok_or_else(|| CliError::usage(format!("--seq {} requires --h", self.name())))
        };
        let no_params = |spec: SequenceSpec| {
            if self.k.is_some() || self.h.is_some() {
                Err(CliError::usage(format!(
                    "--seq {} takes neither --k nor --h",
                    self.name()
                )))
            } else {
                Ok(spec)
            }
        };
        let spec = match self.seq {
            SeqName::Kbonacci => {
                if self.h.is_some() {
                    return Err(CliError::usage("--seq kbonacci takes no --h"));
                }
                SequenceSpec::KBonacci { k: need_k()? }
            }
            SeqName::Pell => no_params(SequenceSpec::Pell)?,
            SeqName::Pow2 => no_params(SequenceSpec::PowersOfTwo)?,
            SeqName::Linplus => SequenceSpec::LinearPlus {
                k: need_k()?,
                h: need_h()?,
            },
            SeqName::Linminus => SequenceSpec::LinearMinus {
                k: need_k()?,
                h: need_h()?,
            },
        };
        spec.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(spec)
    }

    fn name(&self) -> &'static str {
        match self.seq {
            SeqName::Kbonacci => "kbonacci",
            SeqName::Pell => "pell",
            SeqName::Pow2 => "pow2",
            SeqName::Linplus => "linplus",
            SeqName::Linminus => "linminus",
        }
    }
}

#[derive(Args)]
struct GuardArgs {
    /// Refuse to list more elements than this
    #[arg(long, env = "GRAYNUM_MAX_ELEMENTS")]
    max_elements: Option<u64>,
    /// List regardless of size
    #[arg(long)]
    force: bool,
}

impl GuardArgs {
    fn check(&self, count: &Natural) -> Result<(), CliError> {
        if self.force {
            return Ok(());
        }
        let limit = self
            .max_elements
            .unwrap_or(SizeGuard::default().max_set_elements);
        if *count > Natural::from(limit) {
            return Err(CliError::new(
                5,
                format!("refusing to list {count} elements (limit {limit}); pass --force or raise --max-elements"),
            ));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Every value has exactly one valid representation
    Uniqueness,
    /// The language equals the run-filtered binary strings (kbonacci only)
    Strings,
    /// The permutation class equals the pattern filter (kbonacci only)
    Perms,
    /// The Gray listing covers the language with one-digit steps (kbonacci only)
    Gray,
    /// Every check that applies to the chosen sequence
    All,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new(2, message)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::SizeGuard { .. } => 5,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}

/// Writes every line the iterator yields; a closed pipe is a success.
fn stream_lines<I>(lines: I) -> Result<(), CliError>
where
    I: Iterator<Item = Result<String, CliError>>,
{
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for line in lines {
        match writeln!(out, "{}", line?) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
            Err(e) => return Err(CliError::new(1, format!("i/o: {e}"))),
        }
    }
    match out.flush() {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::new(1, format!("i/o: {e}"))),
    }
}

fn emit_json(kind: &str, params: serde_json::Value, items: Vec<String>) -> Result<(), CliError> {
    let doc = serde_json::json!({
        "kind": kind,
        "params": params,
        "count": items.len(),
        "items": items,
    });
    stream_lines(std::iter::once(Ok(doc.to_string())))
}

fn basis_for(spec: SequenceSpec) -> Result<NumerationBasis, CliError> {
    NumerationBasis::new(spec).map_err(|e| CliError::usage(e.to_string()))
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Encode { seq, value } => cmd_encode(&seq, &value),
        Command::Decode {
            seq,
            strict,
            digits,
        } => cmd_decode(&seq, strict, &digits),
        Command::List {
            seq,
            len,
            json,
            guard,
        } => cmd_list(&seq, len, json, &guard),
        Command::Gray {
            seq,
            len,
            check,
            json,
            guard,
        } => cmd_gray(&seq, len, check, json, &guard),
        Command::Perms {
            k,
            len,
            gray,
            strings,
            check,
            json,
            guard,
        } => cmd_perms(k, len, gray, strings, check, json, &guard),
        Command::Verify { seq, max_len, suite } => cmd_verify(&seq, max_len, suite),
    }
}

fn cmd_encode(seq: &SeqArgs, value: &str) -> Result<(), CliError> {
    let basis = basis_for(seq.to_spec()?)?;
    let n: Natural = value
        .parse()
        .map_err(|_| CliError::usage(format!("not a natural number: {value:?}")))?;
    stream_lines(std::iter::once(Ok(encode(&basis, &n).to_string())))
}

fn cmd_decode(seq: &SeqArgs, strict: bool, digits: &str) -> Result<(), CliError> {
    let basis = basis_for(seq.to_spec()?)?;
    let s: DigitString = digits
        .parse()
        .map_err(|e| CliError::usage(format!("{e}")))?;
    if strict && !is_valid(&basis, &s) {
        return Err(CliError::new(
            4,
            format!("{s} is not the canonical form of any value in {}", basis.spec()),
        ));
    }
    let n = decode(&basis, &s).map_err(|e| match e {
        CodecError::DigitOutOfRange { .. } => CliError::new(3, e.to_string()),
        other => CliError::usage(other.to_string()),
    })?;
    stream_lines(std::iter::once(Ok(n.to_string())))
}

fn cmd_list(seq: &SeqArgs, len: usize, json: bool, guard: &GuardArgs) -> Result<(), CliError> {
    let basis = basis_for(seq.to_spec()?)?;
    let count = basis.term(len);
    guard.check(&count)?;
    // Count through the values rather than materializing the language set;
    // the strings come out in increasing order of value.
    let lines = ValueCounter::new(&basis, len, count);
    if json {
        let items = lines.collect::<Result<Vec<_>, _>>()?;
        emit_json(
            "list",
            serde_json::json!({ "seq": basis.spec().to_string(), "len": len }),
            items,
        )
    } else {
        stream_lines(lines)
    }
}

struct ValueCounter<'a> {
    basis: &'a NumerationBasis,
    len: usize,
    next: Natural,
    remaining: Natural,
}

impl<'a> ValueCounter<'a> {
    fn new(basis: &'a NumerationBasis, len: usize, count: Natural) -> Self {
        ValueCounter {
            basis,
            len,
            next: Natural::from(0u32),
            remaining: count,
        }
    }
}

impl Iterator for ValueCounter<'_> {
    type Item = Result<String, CliError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == Natural::from(0u32) {
            return None;
        }
        self.remaining -= 1u32;
        let s = encode(self.basis, &self.next);
        self.next += 1u32;
        Some(
            graynum::codec::pad(&s, self.len)
                .map(|padded| padded.to_string())
                .map_err(|e| CliError::new(1, e.to_string())),
        )
    }
}

fn cmd_gray(
    seq: &SeqArgs,
    len: usize,
    check: bool,
    json: bool,
    guard: &GuardArgs,
) -> Result<(), CliError> {
    let spec = seq.to_spec()?;
    let basis = basis_for(spec)?;
    guard.check(&basis.term(len))?;
    let cursor: Box<dyn Iterator<Item = DigitString>> = match spec {
        SequenceSpec::KBonacci { k } => Box::new(gray_language(k, len)),
        SequenceSpec::PowersOfTwo => Box::new(brgc_cursor(len)),
        other => {
            return Err(CliError::usage(format!(
                "gray listing supports --seq kbonacci and --seq pow2, not {other}"
            )))
        }
    };
    let mut prev: Option<DigitString> = None;
    let lines = cursor.map(move |s| {
        if check {
            if let Some(p) = &prev {
                let d = hamming(p, &s).expect("cursor emits fixed-length strings");
                if d != 1 {
                    return Err(CliError::new(
                        6,
                        format!("check failed: {p} -> {s} changes {d} digits"),
                    ));
                }
            }
            prev = Some(s.clone());
        }
        Ok(s.to_string())
    });
    if json {
        let items = lines.collect::<Result<Vec<_>, _>>()?;
        emit_json(
            "gray",
            serde_json::json!({ "seq": spec.to_string(), "len": len }),
            items,
        )
    } else {
        stream_lines(lines)
    }
}

fn cmd_perms(
    k: u64,
    len: usize,
    gray: bool,
    strings: bool,
    check: bool,
    json: bool,
    guard: &GuardArgs,
) -> Result<(), CliError> {
    if k < 2 {
        return Err(CliError::usage("--k must be at least 2"));
    }
    let count = if len == 0 {
        Natural::from(1u32)
    } else {
        basis_for(SequenceSpec::KBonacci { k })?.term(len - 1)
    };
    guard.check(&count)?;
    let render = move |p: &Permutation| {
        if strings {
            let s = string_from_perm(p).to_digit_string().to_string();
            if s.is_empty() {
                p.to_string()
            } else {
                format!("{p} {s}")
            }
        } else {
            p.to_string()
        }
    };
    let mut prev: Option<Permutation> = None;
    let lines: Box<dyn Iterator<Item = Result<String, CliError>>> = if gray {
        Box::new(gray_perms_cursor(k, len).map(move |p| {
            if check {
                if let Some(q) = &prev {
                    let step = adjacent_transposition_delta(q, &p)
                        .expect("cursor emits fixed-length permutations");
                    if step.is_none() {
                        return Err(CliError::new(
                            6,
                            format!("check failed: {q} -> {p} is not one adjacent swap"),
                        ));
                    }
                }
                prev = Some(p.clone());
            }
            Ok(render(&p))
        }))
    } else {
        Box::new(perm_set(k, len).into_iter().map(move |p| Ok(render(&p))))
    };
    if json {
        let items = lines.collect::<Result<Vec<_>, _>>()?;
        emit_json(
            "perms",
            serde_json::json!({ "k": k, "len": len, "gray": gray, "strings": strings }),
            items,
        )
    } else {
        stream_lines(lines)
    }
}

fn cmd_verify(seq: &SeqArgs, max_len: usize, suite: Suite) -> Result<(), CliError> {
    let spec = seq.to_spec()?;
    let basis = basis_for(spec)?;
    let kbonacci_k = match spec {
        SequenceSpec::KBonacci { k } => Some(k),
        _ => None,
    };
    if kbonacci_k.is_none() && matches!(suite, Suite::Strings | Suite::Perms | Suite::Gray) {
        return Err(CliError::usage(format!(
            "that suite compares against the run-filtered binary language, which needs --seq kbonacci, not {spec}"
        )));
    }
    let limits = SizeGuard::default();
    let mut reports: Vec<OracleReport> = Vec::new();
    let mut run_check =
        |result: Result<OracleReport, OracleError>| -> Result<(), CliError> {
            match result {
                Ok(report) => {
                    println!("{report}");
                    reports.push(report);
                    Ok(())
                }
                // An out-of-budget length is reported, not fatal: the
                // smaller lengths have already been checked.
                Err(e @ OracleError::SizeGuard { .. }) => {
                    eprintln!("skipped: {e}");
                    Ok(())
                }
            }
        };
    for m in 0..=max_len {
        let uniqueness = matches!(suite, Suite::Uniqueness | Suite::All);
        if uniqueness {
            run_check(oracle_unique_representation(&basis, m, &limits))?;
        }
        if let Some(k) = kbonacci_k {
            if matches!(suite, Suite::Strings | Suite::All) {
                run_check(check_strings(k, m, &limits))?;
            }
            if matches!(suite, Suite::Perms | Suite::All) {
                run_check(check_perms(k, m, &limits))?;
            }
            if matches!(suite, Suite::Gray | Suite::All) {
                run_check(check_gray(k, m, &limits))?;
            }
        }
    }
    let disagreed = reports.iter().filter(|r| !r.agreed()).count();
    if disagreed > 0 {
        return Err(CliError::new(
            1,
            format!("{disagreed} of {} checks disagreed", reports.len()),
        ));
    }
    Ok(())
}
