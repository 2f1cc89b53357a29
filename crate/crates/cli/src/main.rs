use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qk1_core::genus0::Convention;

mod commands;

/// Exact genus-one quantum K-theory of the point.
#[derive(Parser, Debug)]
#[command(name = "qk1", version)]
struct Cli {
    /// Truncation order D (the computations are exact modulo I^{D+1}).
    #[arg(long, global = true, default_value_t = 3)]
    order: u32,
    /// N: residues at roots of unity are taken in Q(ζ_N).
    #[arg(long, global = true, env = "QK1_CYCLOTOMIC_ORDER", default_value_t = 12)]
    cyclotomic_order: u32,
    /// How the coordinates t_n assemble into t(q).
    #[arg(long, global = true, default_value = "monomial")]
    convention: Convention,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full verification suite.
    Verify,
    /// Print τ(t) to the truncation order.
    Tau,
    /// Reconstructed two-point function, the reference form, and their difference.
    TwoPoint,
    /// Partial fractions of an expression: grouped by cyclotomic factor, then split over Q(ζ_N).
    Pf { expr: String },
    /// Residues of the differential `expr d(var)` at every pole and at infinity.
    Residues { expr: String },
    /// Both sides of the one-point formula to order M in τ.
    Prop31 {
        #[arg(long, default_value_t = 4)]
        tau_order: u32,
    },
}

/// Outcome of a command: text, JSON, and whether every check held.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match &cli.command {
        Command::Verify => commands::verify(&cli),
        Command::Tau => commands::tau(&cli),
        Command::TwoPoint => commands::two_point(&cli),
        Command::Pf { expr } => commands::pf(&cli, expr),
        Command::Residues { expr } => commands::residues(&cli, expr),
        Command::Prop31 { tau_order } => commands::prop31(&cli, *tau_order),
    };
    let out = match res {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let pretty = serde_json::to_string_pretty(&out.json).expect("serializable");
    if cli.json {
        println!("{pretty}");
    } else {
        println!("{}", out.text.trim_end());
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{pretty}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(if out.ok { 0 } else { 1 })
}
