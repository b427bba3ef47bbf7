//! Command-line front end for the `hocat` library.
//!
//! Every subcommand produces a [`Report`]. Exit codes: 0 when every check
//! passes, 1 when a check fails on valid input, 2 for malformed input and
//! 3 when a search exceeds its budget.

pub mod commands;
pub mod doc;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use doc::{load, parse, Document, InputError};
pub use report::{emit_report, parse_report, Format, Report, Status};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hocat", version, about = "Exhaustive checks for finite categories, homotopy monoids and the loop-space comonoid")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Candidate budget for equivalence searches.
    #[arg(long, global = true, default_value_t = hocat::equivalences::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Shuffle search candidates with this seed (choice-independence testing).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the produced document, if any, to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document of any kind.
    Validate { file: PathBuf },
    /// List the simplex maps from `m` to `n`.
    DeltaHom { m: usize, n: usize },
    /// Check hom-set counts and the category laws of the truncated simplex category.
    DeltaCheck { bound: usize },
    /// Search a pseudo-inverse of a functor and promote it to an adjoint equivalence.
    FindEquivalence { file: PathBuf },
    /// Build the monoidal structure on level one of a homotopy monoid in categories.
    BuildMoncat {
        file: PathBuf,
        /// Skip adjoint promotion (diagnostic; the pentagon may fail).
        #[arg(long)]
        no_promote: bool,
    },
    /// Recover the monoid from a homotopy monoid in sets.
    ExtractMonoid { file: PathBuf },
    /// Generate a homotopy monoid from a monoid.
    Fixture {
        /// `trivial`, `cyclic:N`, `enum:N:I` (the I-th monoid of size N) or a monoid document.
        #[arg(long)]
        monoid: String,
        /// `none`, `const:B` or `vertex:B`, optionally with `,twist:K`.
        #[arg(long, default_value = "const:2")]
        inflate: String,
        #[arg(long, value_enum, default_value_t = FixtureKind::Cat)]
        kind: FixtureKind,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
    /// Describe the complex `W(n)`.
    WComplex { n: usize },
    /// Integer homology of a complex document or of `W(n)`.
    Homology {
        #[arg(long, conflicts_with = "w", required_unless_present = "w")]
        complex: Option<PathBuf>,
        #[arg(long = "W", value_name = "N")]
        w: Option<usize>,
    },
    /// Verify the comonoid laws of `n ↦ W(n)` up to a level.
    VerifyLoopComonoid {
        #[arg(long, default_value_t = 4)]
        maxlevel: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FixtureKind {
    Set,
    Cat,
}

/// What a run produced: the report, an exit code, and an optional document
/// destined for `--out`.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
    pub document: Option<String>,
}

/// Parse arguments and run. Returns the bytes for stdout and stderr and the
/// exit code. Nothing is written to stdout on an input error.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return if code == EXIT_PASS {
                (e.to_string(), String::new(), code)
            } else {
                (String::new(), e.to_string(), code)
            };
        }
    };
    let outcome = commands::execute(&cli);
    match outcome {
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
        Ok(o) => {
            if let (Some(path), Some(doc)) = (&cli.out, &o.document) {
                if let Err(e) = std::fs::write(path, doc) {
                    return (
                        String::new(),
                        format!("error: cannot write {}: {e}\n", path.display()),
                        EXIT_INPUT,
                    );
                }
            }
            (emit_report(&o.report, cli.format), String::new(), o.exit_code)
        }
    }
}
