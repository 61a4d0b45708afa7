use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod render;

use render::Format;

/// Invariants of stable equivalence of Morita type for algebras of dihedral,
/// semidihedral and quaternion type.
///
/// Exit codes: 0 success (compare: distinguished or identical), 1 selftest or
/// section7 failure, 2 invalid input or violated parameter constraint,
/// 3 compare: not distinguished and recorded as open, 4 compare: not
/// distinguished and not recorded as open, or an internal error.
#[derive(Parser)]
#[command(name = "tamesym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct FieldArgs {
    /// Characteristic (0 for the rationals).
    #[arg(long = "char")]
    pub characteristic: Option<u32>,
    /// Field order p^m for an extension field.
    #[arg(long)]
    pub field_order: Option<u64>,
    /// Defining polynomial of the extension, e.g. `x^2+x+1`.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Args, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
    /// Accept parameters outside the classification inequalities (block
    /// representatives such as D2B with k < s need this).
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one algebra.
    Invariants {
        #[arg(long, required_unless_present = "presentation_file")]
        family: Option<String>,
        /// `k=2,s=3,c=1` or positional `2,3,1`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, conflicts_with = "family")]
        presentation_file: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerates an invariant table.
    Table {
        #[arg(long, value_parser = ["dihedral-1", "blocks-dihedral", "blocks-semidihedral", "blocks-quaternion"])]
        section: String,
        /// Defect range `a..b` for the block tables.
        #[arg(long)]
        defect: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Compares two algebras. Each is `CODE:params` (or `CODE`) or
    /// `@path` for a presentation file.
    Compare {
        left: String,
        right: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Block representatives of one defect with their pairwise verdicts.
    Blocks {
        #[arg(long, value_parser = ["dihedral", "semidihedral", "quaternion"])]
        rep_type: String,
        #[arg(long)]
        defect: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Checks that algebras with different numbers of simples are separated.
    Section7 {
        #[arg(long, value_parser = ["semidihedral", "quaternion"])]
        rep_type: String,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the acceptance criteria.
    Selftest {
        #[arg(long)]
        quick: bool,
        /// Run only these criteria.
        #[arg(long = "criterion")]
        criteria: Vec<u32>,
        /// Deliberately wrong expectation, to check that failures are reported.
        #[arg(long, value_parser = ["wrong-cartan"])]
        inject_fault: Option<String>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Parses a presentation file and optionally builds the algebra.
    ParseCheck {
        path: PathBuf,
        #[arg(long)]
        build: bool,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants { family, params, presentation_file, field, common } => {
            commands::invariants(family.as_deref(), &params, presentation_file.as_deref(), &field, &common)
        }
        Command::Table { section, defect, field, common } => commands::table(&section, defect.as_deref(), &field, &common),
        Command::Compare { left, right, field, common } => commands::compare(&left, &right, &field, &common),
        Command::Blocks { rep_type, defect, common } => commands::blocks(&rep_type, defect, &common),
        Command::Section7 { rep_type, bound, field, common } => commands::section7(&rep_type, bound, &field, &common),
        Command::Selftest { quick, criteria, inject_fault, format } => commands::selftest(quick, &criteria, inject_fault.is_some(), format),
        Command::ParseCheck { path, build, field, format } => commands::parse_check(&path, build, &field, format),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
