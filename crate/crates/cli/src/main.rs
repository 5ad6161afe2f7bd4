//! `heyq`: divisor-lattice Heyting algebra tables, quantum subsystem
//! probabilities, and logical Bell inequality checks.
//!
//! Exit codes for `bell` and `search`: 0 when the inequality holds, 2
//! when it is violated, 1 on input errors. Other commands use 0/1.

mod expr;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use heyq_core::contextuality::{
    bell_check, search_rows_csv, search_violation, witness_diagonal, BellReport, SearchConfig,
};
use heyq_core::divisor::{hasse_dot, truth_table_csv, Connective, Modulus};
use heyq_core::quantum::{density_from_json, DensityMatrix};
use heyq_core::supernatural::render_group;

#[derive(Parser)]
#[command(name = "heyq", version, about = "Heyting algebras of divisors and quantum subsystems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a lattice expression (supernaturals by default, the
    /// divisor lattice of `--n` when given)
    Eval {
        /// Expression, e.g. "neg 10" or "2 => (3 v 5)"
        expr: String,
        /// Evaluate in the divisor lattice of this modulus
        #[arg(long)]
        n: Option<u64>,
        /// Also print the groups labelled by the result
        #[arg(long)]
        as_group: bool,
    },
    /// Print a CSV truth table of binary connectives over D(n) x D(n)
    Table {
        #[arg(long)]
        n: u64,
        /// Restrict to one connective: meet, join, implies, or equiv
        #[arg(long)]
        op: Option<String>,
        /// Write to a file instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export the covering relations of D(n) as a DOT digraph
    Hasse {
        #[arg(long)]
        n: u64,
        /// Write to a file instead of stdout
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the logical Bell inequality for a divisor tuple and a state
    Bell {
        #[arg(long)]
        n: u64,
        /// Tuple members, comma separated, e.g. --m 10,75,36
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Density matrix JSON file ({"n":..,"diag":[..]} or re/im form)
        #[arg(long, conflicts_with_all = ["a", "b"])]
        rho: Option<PathBuf>,
        /// Diagonal witness weight on the sector of m1 ^ m2
        #[arg(long, requires = "m")]
        a: Option<f64>,
        /// Diagonal witness weight on the sector of m3 (default 0)
        #[arg(long, requires = "a")]
        b: Option<f64>,
    },
    /// Search for Bell violations over divisor tuples and diagonal grids
    Search {
        #[arg(long)]
        n: u64,
        /// RNG seed (required: searches are reproducible)
        #[arg(long)]
        seed: u64,
        /// Grid resolution per probability weight
        #[arg(long, default_value_t = 20)]
        grid: u32,
        /// Number of random density matrices
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        /// Largest tuple size (2..=4)
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Write per-tuple summary rows to a CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { expr, n, as_group } => cmd_eval(&expr, n, as_group),
        Command::Table { n, op, csv } => cmd_table(n, op.as_deref(), csv.as_deref()),
        Command::Hasse { n, dot } => cmd_hasse(n, dot.as_deref()),
        Command::Bell { n, m, rho, a, b } => cmd_bell(n, &m, rho.as_deref(), a, b),
        Command::Search { n, seed, grid, samples, max_len, csv } => {
            cmd_search(n, seed, grid, samples, max_len, csv.as_deref())
        }
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn fail_at(expr: &str, msg: &str, pos: usize) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("  {expr}");
    eprintln!("  {}^", " ".repeat(pos.min(expr.len())));
    ExitCode::from(1)
}

fn cmd_eval(input: &str, n: Option<u64>, as_group: bool) -> ExitCode {
    let parsed = match expr::parse(input) {
        Ok(e) => e,
        Err(e) => return fail_at(input, &e.msg, e.pos),
    };
    let modulus = match n.map(Modulus::new).transpose() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let value = match expr::eval(&parsed, modulus.as_ref()) {
        Ok(v) => v,
        Err(e) => {
            return match e.pos {
                Some(pos) => fail_at(input, &e.msg, pos),
                None => fail(e.msg),
            }
        }
    };
    println!("{value}");
    if as_group {
        let sn = value.as_supernatural();
        println!("group: {}", render_group(&sn, false));
        println!("dual: {}", render_group(&sn, true));
    }
    ExitCode::SUCCESS
}

fn cmd_table(n: u64, op: Option<&str>, csv: Option<&Path>) -> ExitCode {
    let modulus = match Modulus::new(n) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let text = match op {
        None => truth_table_csv(&modulus),
        Some(name) => {
            let connective: Connective = match name.parse() {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let mut out = format!("a,b,{}\n", connective.name());
            for a in modulus.elements() {
                for b in modulus.elements() {
                    let value = connective.apply(&a, &b).expect("same modulus");
                    out.push_str(&format!("{},{},{}\n", a.value(), b.value(), value.value()));
                }
            }
            out
        }
    };
    emit(&text, csv)
}

fn cmd_hasse(n: u64, dot: Option<&Path>) -> ExitCode {
    let modulus = match Modulus::new(n) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    emit(&hasse_dot(&modulus), dot)
}

fn emit(text: &str, path: Option<&Path>) -> ExitCode {
    match path {
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
        {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn cmd_bell(
    n: u64,
    tuple: &[u64],
    rho_path: Option<&Path>,
    a: Option<f64>,
    b: Option<f64>,
) -> ExitCode {
    let modulus = match Modulus::new(n) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let mut members = Vec::new();
    for &value in tuple {
        match modulus.element(value) {
            Ok(element) => members.push(element),
            Err(e) => return fail(e),
        }
    }
    let rho = match (rho_path, a) {
        (Some(path), None) => match load_density(path) {
            Ok(rho) => rho,
            Err(e) => return fail(e),
        },
        (None, Some(a)) => match witness_diagonal(&members, a, b.unwrap_or(0.0)) {
            Ok(rho) => rho,
            Err(e) => return fail(e),
        },
        (None, None) => return fail("provide a state: --rho FILE or --a A [--b B]"),
        (Some(_), Some(_)) => unreachable!("clap rejects --rho with --a"),
    };
    let report = match bell_check(&members, &rho) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    print_report(&report);
    if report.violated {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_search(
    n: u64,
    seed: u64,
    grid: u32,
    samples: u32,
    max_len: usize,
    csv: Option<&Path>,
) -> ExitCode {
    let config = SearchConfig { max_tuple_len: max_len, grid_resolution: grid, samples, seed };
    let outcome = match search_violation(n, &config) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    if let Some(path) = csv {
        let text = search_rows_csv(&outcome.rows);
        if let Err(e) =
            std::fs::File::create(path).and_then(|mut f| f.write_all(text.as_bytes()))
        {
            return fail(format!("cannot write {}: {e}", path.display()));
        }
    }
    match &outcome.best {
        None => {
            println!("null");
            ExitCode::SUCCESS
        }
        Some(report) => {
            print_report(report);
            if report.violated {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn print_report(report: &BellReport) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports always serialize")
    );
}

fn load_density(path: &Path) -> Result<DensityMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    density_from_json(&text).map_err(|e| e.to_string())
}
