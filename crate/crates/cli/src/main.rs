mod commands;
mod report;
mod reproduce;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use burnside_core::permgrp::DEFAULT_ORDER_BOUND;
use burnside_core::Result;
use clap::{Parser, Subcommand};

use commands::Context;
use report::{Format, Report};

/// Burnside rings of finite permutation groups, the filtration of their
/// augmentation ideals, and the finite global Burnside category.
///
/// Groups are written as Sym(n), Alt(n), Cyclic(n), Dihedral(n) or
/// Perm(d; (1 2 3), (1 2)).
#[derive(Parser)]
#[command(name = "burnside", version)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of subgroups.
    Subgroups { spec: String },
    /// Table of marks, or a transitive G-set with --sub.
    Burnside {
        spec: String,
        /// `classN` or `gens:(1 2),(3 4)`.
        #[arg(long)]
        sub: Option<String>,
    },
    /// Compare the double coset formula with orbit decomposition on all class pairs.
    DoublecosetCheck { spec: String },
    /// Quotients A(G)/I_n(G) for n = 1..max-n.
    Filtration {
        spec: String,
        /// Last stage; defaults to |G|.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Invariants of A(G)/I_n(G); n may be `inf`.
    Sp { spec: String, n: String },
    /// Whether a coefficient vector lies in I_n(G).
    Member {
        spec: String,
        n: String,
        /// JSON integer array in class order.
        #[arg(long)]
        elem: String,
    },
    /// Whether a coefficient vector lies in the saturation of I_n(G).
    Saturation {
        spec: String,
        n: String,
        /// JSON integer array in class order.
        #[arg(long)]
        elem: String,
    },
    /// Basis pairs (L, α) of A(G, K).
    CatBasis { spec_g: String, spec_k: String },
    /// Compose all basis pairs of A(K, L) and A(G, K) and check the category laws.
    ComposeCheck { spec_g: String, spec_k: String, spec_l: String },
    /// Rerun a worked example: s2, s3, s4, a5, s5 or pgroups.
    Reproduce { id: String },
}

fn run(cli: &Cli) -> Result<Report> {
    let ctx = Context { bound: cli.bound, seed: cli.seed };
    match &cli.command {
        Command::Subgroups { spec } => commands::subgroups(&ctx, spec),
        Command::Burnside { spec, sub } => commands::burnside(&ctx, spec, sub.as_deref()),
        Command::DoublecosetCheck { spec } => commands::doublecoset_check(&ctx, spec),
        Command::Filtration { spec, max_n } => commands::filtration(&ctx, spec, *max_n),
        Command::Sp { spec, n } => commands::sp(&ctx, spec, n),
        Command::Member { spec, n, elem } => commands::membership(&ctx, spec, n, elem, false),
        Command::Saturation { spec, n, elem } => commands::membership(&ctx, spec, n, elem, true),
        Command::CatBasis { spec_g, spec_k } => commands::cat_basis(&ctx, spec_g, spec_k),
        Command::ComposeCheck { spec_g, spec_k, spec_l } => commands::compose_check(&ctx, spec_g, spec_k, spec_l),
        Command::Reproduce { id } => reproduce::reproduce(&ctx, id),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| run(&cli).and_then(|r| Ok((r.render(format)?, r.exit_code)))));
    match outcome {
        Ok(Ok((out, code))) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        // the panic hook has already printed the message
        Err(_) => ExitCode::from(1),
    }
}
