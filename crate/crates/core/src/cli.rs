//! Command-line front end. `run` is the whole program minus process exit, so
//! it can be driven from tests with in-memory streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::decision::{decide, ExpertPanel};
use crate::enumerate::{enumerate_pes, r2es_size, R2esIter};
use crate::error::Error;
use crate::frame::Frame;
use crate::fusion::{chain, combine, Rule};
use crate::io::{parse_document, render_mass_document, EvidenceDocument, Precision, Render};
use crate::laws::{check_associativity, check_consistency, check_pseudo_matthew, PropertyReport};
use crate::mass::MassFunction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CONFLICT: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Largest source count for which the n! ordering checks are attempted.
const MAX_ORDERING_SOURCES: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "r2ps",
    version,
    about = "Combine and decide with repeatable permutation evidence"
)]
struct Cli {
    /// Digits after the decimal point in printed masses (1-17).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
    /// Tolerance for mass totals when reading files and for equality in checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an evidence file.
    Validate { file: PathBuf },
    /// List the events of a frame up to a length bound.
    Enumerate {
        /// Whitespace-separated element labels.
        #[arg(long)]
        frame: String,
        /// Longest event to list; defaults to the frame size.
        #[arg(long)]
        max_len: Option<usize>,
        /// Print only the number of events.
        #[arg(long)]
        count_only: bool,
        /// List repetition-free arrangements (including the empty event) instead.
        #[arg(long)]
        pes: bool,
    },
    /// Project one source onto element sets.
    Project {
        file: PathBuf,
        #[arg(long)]
        source: String,
    },
    /// Combine two sources with one junctional sum.
    Combine {
        #[arg(long)]
        rule: Rule,
        file: PathBuf,
        /// Exactly two source names, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sources: Vec<String>,
    },
    /// Fold several sources left to right with one rule.
    Chain {
        #[arg(long)]
        rule: Rule,
        file: PathBuf,
        /// Source names in fold order; defaults to file order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Treat every source as an expert and take the winner-take-all decision.
    Decide { file: PathBuf },
    /// Run algebraic property checks over the sources of a file.
    Check {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<Property>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Consistency,
    Matthew,
    Associativity,
}

impl clap::ValueEnum for Rule {
    fn value_variants<'a>() -> &'a [Self] {
        &Rule::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    Conflict(String),
    CheckFailed,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Conflict(_) => EXIT_CONFLICT,
            Failure::CheckFailed => EXIT_CHECK_FAILED,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TotalConflict { .. } | Error::OrderingConflict { .. } => {
                Failure::Conflict(e.to_string())
            }
            other => Failure::Invalid(other.to_string()),
        }
    }
}

struct Context {
    precision: Precision,
    tol: f64,
}

/// Run the CLI and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        let _ = writeln!(err, "error: --tol must be a non-negative number");
        return EXIT_USAGE;
    }
    let ctx = Context {
        precision: Precision::new(cli.precision).expect("range checked by clap"),
        tol: cli.tol,
    };

    let mut text = String::new();
    let result = match &cli.command {
        Command::Validate { file } => validate(&ctx, file, &mut text),
        Command::Enumerate {
            frame,
            max_len,
            count_only,
            pes,
        } => enumerate(frame, *max_len, *count_only, *pes, &mut text),
        Command::Project { file, source } => project(&ctx, file, source, &mut text),
        Command::Combine {
            rule,
            file,
            sources,
        } => combine_cmd(&ctx, *rule, file, sources, &mut text),
        Command::Chain { rule, file, order } => {
            chain_cmd(&ctx, *rule, file, order.as_deref(), &mut text)
        }
        Command::Decide { file } => decide_cmd(&ctx, file, &mut text),
        Command::Check { file, properties } => {
            check_cmd(&ctx, file, properties.as_deref(), &mut text)
        }
    };
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            match &failure {
                Failure::Usage(m) | Failure::Invalid(m) | Failure::Conflict(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::CheckFailed => {
                    let _ = writeln!(err, "error: property check failed");
                }
            }
            failure.code()
        }
    }
}

fn load(ctx: &Context, path: &Path) -> Result<EvidenceDocument, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse_document(&bytes, ctx.tol)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn lookup<'d>(doc: &'d EvidenceDocument, name: &str) -> Result<&'d MassFunction, Failure> {
    doc.source(name).ok_or_else(|| {
        Failure::Usage(format!(
            "no source named '{name}' (available: {})",
            doc.names().join(", ")
        ))
    })
}

fn validate(ctx: &Context, file: &Path, out: &mut String) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    out.push_str(&format!(
        "ok: frame {} with {} sources\n",
        doc.frame(),
        doc.sources().len()
    ));
    for s in doc.sources() {
        let kind = if s.mass.is_rps() {
            "repetition-free"
        } else {
            "with repetition"
        };
        out.push_str(&format!(
            "source {}: {} focal events, {kind}\n",
            s.name,
            s.mass.len()
        ));
    }
    Ok(())
}

fn enumerate(
    labels: &str,
    max_len: Option<usize>,
    count_only: bool,
    pes: bool,
    out: &mut String,
) -> Result<(), Failure> {
    let frame =
        Frame::new(labels.split_whitespace()).map_err(|e| Failure::Invalid(e.to_string()))?;
    if pes {
        if max_len.is_some() {
            return Err(Failure::Usage("--max-len does not apply with --pes".into()));
        }
        let events = enumerate_pes(&frame);
        if count_only {
            out.push_str(&format!("{}\n", events.len()));
        } else {
            for e in events {
                out.push_str(&format!("{e}\n"));
            }
        }
        return Ok(());
    }
    let max_len = max_len.unwrap_or(frame.len());
    if max_len == 0 {
        return Err(Failure::Usage("--max-len must be at least 1".into()));
    }
    if count_only {
        let count = r2es_size(frame.len(), max_len)
            .ok_or_else(|| Failure::Usage("event count overflows".into()))?;
        out.push_str(&format!("{count}\n"));
    } else {
        for e in R2esIter::new(&frame, max_len)? {
            out.push_str(&format!("{e}\n"));
        }
    }
    Ok(())
}

fn project(ctx: &Context, file: &Path, source: &str, out: &mut String) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    let m = lookup(&doc, source)?;
    out.push_str(&format!("# projection of {source}\n"));
    out.push_str(&m.project().render(ctx.precision));
    Ok(())
}

fn combine_cmd(
    ctx: &Context,
    rule: Rule,
    file: &Path,
    sources: &[String],
    out: &mut String,
) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    let [a, b] = sources else {
        return Err(Failure::Usage(format!(
            "--sources needs exactly two names, got {}",
            sources.len()
        )));
    };
    let outcome = combine(rule, lookup(&doc, a)?, lookup(&doc, b)?)?;
    out.push_str(&format!("# {rule} junctional sum of {a}, {b}\n"));
    out.push_str(&format!(
        "# conflict {}\n",
        crate::io::format_mass(outcome.conflict, ctx.precision)
    ));
    out.push_str(&render_mass_document(
        doc.frame(),
        &format!("{rule}({a},{b})"),
        &outcome.result,
        ctx.precision,
    ));
    Ok(())
}

fn chain_cmd(
    ctx: &Context,
    rule: Rule,
    file: &Path,
    order: Option<&[String]>,
    out: &mut String,
) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    let names: Vec<String> = match order {
        Some(names) => names.to_vec(),
        None => doc.names().map(String::from).collect(),
    };
    if names.is_empty() {
        return Err(Failure::Usage("nothing to chain".into()));
    }
    let sources = names
        .iter()
        .map(|n| lookup(&doc, n))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = chain(rule, &sources)?;
    out.push_str(&format!("# {rule} chain over {}\n", names.join(", ")));
    out.push_str(&format!(
        "# cumulative conflict {}\n",
        crate::io::format_mass(outcome.conflict, ctx.precision)
    ));
    out.push_str(&render_mass_document(
        doc.frame(),
        &format!("{rule}({})", names.join(",")),
        &outcome.result,
        ctx.precision,
    ));
    Ok(())
}

fn decide_cmd(ctx: &Context, file: &Path, out: &mut String) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    let experts = doc
        .sources()
        .iter()
        .map(|s| (s.name.clone(), s.mass.clone()))
        .collect();
    let panel = ExpertPanel::new(doc.frame(), experts)?;
    out.push_str(&decide(&panel)?.render(ctx.precision));
    Ok(())
}

fn check_cmd(
    ctx: &Context,
    file: &Path,
    properties: Option<&[Property]>,
    out: &mut String,
) -> Result<(), Failure> {
    let doc = load(ctx, file)?;
    let wanted = properties.unwrap_or(&[
        Property::Consistency,
        Property::Matthew,
        Property::Associativity,
    ]);
    let names: Vec<&str> = doc.names().collect();
    let masses: Vec<&MassFunction> = doc.sources().iter().map(|s| &s.mass).collect();
    let mut failed = false;
    let mut emit = |report: PropertyReport, out: &mut String| {
        failed |= !report.passed;
        out.push_str(&report.render(ctx.precision));
    };

    if wanted.contains(&Property::Consistency) {
        for (i, j) in (0..masses.len()).tuple_combinations() {
            let mut report = check_consistency(masses[i], masses[j], ctx.tol);
            report.name = format!("{}({},{})", report.name, names[i], names[j]);
            emit(report, out);
        }
    }
    if wanted.contains(&Property::Matthew) {
        if masses.len() > MAX_ORDERING_SOURCES {
            return Err(Failure::Usage(format!(
                "the pseudo-matthew check enumerates every ordering; at most {MAX_ORDERING_SOURCES} sources"
            )));
        }
        for rule in Rule::ALL {
            let mut report = check_pseudo_matthew(rule, &masses, ctx.tol);
            report.name = format!("{}({})", report.name, names.join(","));
            emit(report, out);
        }
    }
    if wanted.contains(&Property::Associativity) {
        for (i, j, k) in (0..masses.len()).tuple_combinations() {
            let operands = format!("({},{},{})", names[i], names[j], names[k]);
            for (r1, r2) in Rule::ALL.into_iter().cartesian_product(Rule::ALL) {
                let mut report =
                    check_associativity(r1, r2, masses[i], masses[j], masses[k], ctx.tol)?;
                report.name = format!("{}{operands}", report.name);
                if r1 == r2 {
                    emit(report, out);
                } else if report.passed {
                    out.push_str(&report.render(ctx.precision));
                } else {
                    // Mixed directions need not associate; list the counterexample without failing.
                    let text = report.render(ctx.precision).replacen("FAIL", "DIFF", 1);
                    out.push_str(&text);
                }
            }
        }
    }
    if failed {
        Err(Failure::CheckFailed)
    } else {
        Ok(())
    }
}
