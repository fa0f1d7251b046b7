use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qfock::canonical::{BklSolver, Mode};
use qfock::qsym::{qsym_canonical_with, qsym_dual_canonical_with, BasisKind, DualImage, QsymExpansion};
use qfock::reports::{quiver_presentation, simple_character, tilting_character, whittaker_decomposition, CharTable, Meaning};
use qfock::verify::{run_suite, Limits, Suite};
use qfock::weightlat::{GlWeight, Parabolic, Shape, SignedTuple, Window};
use qfock::Error;

#[derive(Parser)]
#[command(name = "qfock", version, about = "Canonical bases of the super Fock space and gl(m|n) character reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Canonical,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "N")]
    N,
    #[value(name = "Ntilde")]
    Ntilde,
    #[value(name = "Mtilde")]
    Mtilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharKind {
    Simple,
    Tilting,
    Whittaker,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hecke,
    Bar,
    Canonical,
    Qsym,
    Bgg,
    Inverse,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical or dual canonical basis element of a tuple.
    Bkl {
        #[arg(long)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long, value_enum, default_value = "canonical")]
        mode: ModeArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Symmetrized canonical (or dual canonical) basis element.
    Qsym {
        #[arg(long)]
        shape: Shape,
        /// Generators such as "s1,s3"; empty or "e" for the trivial parabolic.
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long, value_enum, default_value = "N")]
        basis: BasisArg,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        json: bool,
    },
    /// Character rows for a gl(m|n) weight.
    Char {
        /// Written as gl(m|n).
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long, value_enum)]
        kind: CharKind,
        /// Parabolic for Whittaker rows; defaults to the full Weyl group.
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run an identity-checking suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Largest m + n.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0..3")]
        window: Window,
    },
    /// Quiver presentation of the gl(1|n) Whittaker category.
    Quiver {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "-3..3")]
        vertices: Window,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::WindowEscape { .. } => 3,
        Error::NoSolution(_)
        | Error::NonUnique(_)
        | Error::AntisymmetryViolation { .. }
        | Error::ReexpressionFailure(_)
        | Error::IdentityViolation(_) => 2,
        _ => 1,
    }
}

fn parse_algebra(text: &str) -> Result<Shape, Error> {
    text.trim()
        .strip_prefix("gl(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected gl(m|n), got {text:?}")))?
        .parse()
}

fn print_table(table: &CharTable, json: bool, csv: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&table.to_json()).expect("json value"));
    } else if csv {
        print!("{}", table.to_csv());
    } else {
        print!("{table}");
    }
}

fn print_qsym(e: &QsymExpansion, json: bool) {
    if json {
        let coefficients: serde_json::Map<String, serde_json::Value> =
            e.coefficients.iter().map(|(g, p)| (g.to_string(), json!(p))).collect();
        let value = json!({
            "target": e.target.to_string(),
            "parabolic": e.parabolic.to_string(),
            "basis": e.basis.to_string(),
            "window": e.window.to_string(),
            "coefficients": coefficients,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json value"));
    } else {
        println!("{e}");
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Bkl { shape, tuple, window, mode, json, csv } => {
            let f = SignedTuple::parse(shape, &tuple)?;
            let mode = match mode {
                ModeArg::Canonical => Mode::Canonical,
                ModeArg::Dual => Mode::Dual,
            };
            let solver = BklSolver::new(window);
            let e = solver.expansion(&f, mode)?;
            if e.touches_floor() && solver.floor_sensitive(&f, mode)? {
                eprintln!(
                    "warning: the expansion changes when the window floor is lowered below {}; it is truncated",
                    window.lo
                );
            }
            if json {
                let value = json!({
                    "target": f.to_string(),
                    "mode": mode.to_string(),
                    "window": window.to_string(),
                    "expansion": e.to_fock().to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("json value"));
            } else if csv {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                let io = |e: csv::Error| Error::Output(e.to_string());
                w.write_record(["tuple", "coefficient"]).map_err(io)?;
                for (g, p) in &e.coefficients {
                    w.write_record([g.to_string(), p.to_string()]).map_err(io)?;
                }
                w.flush().map_err(|e| Error::Output(e.to_string()))?;
            } else {
                for (g, p) in e.coefficients.iter().rev() {
                    println!("({p}) M[{g}]");
                }
            }
            Ok(0)
        }
        Command::Qsym { shape, parabolic, tuple, window, basis, dual, json } => {
            let p = Parabolic::parse(shape, &parabolic)?;
            let f = SignedTuple::parse(shape, &tuple)?;
            let kind = match basis {
                BasisArg::N => BasisKind::N,
                BasisArg::Ntilde => BasisKind::Ntilde,
                BasisArg::Mtilde => BasisKind::Mtilde,
            };
            let bkl = BklSolver::new(window);
            let e = if dual {
                match qsym_dual_canonical_with(&bkl, &f, &p)? {
                    DualImage::Zero => {
                        println!("0");
                        return Ok(0);
                    }
                    DualImage::Expansion(e) => e,
                }
            } else {
                qsym_canonical_with(&bkl, &f, &p)?
            };
            print_qsym(&e.in_basis(kind)?, json);
            Ok(0)
        }
        Command::Char { algebra, weight, window, kind, parabolic, json, csv } => {
            let shape = parse_algebra(&algebra)?;
            let lambda = GlWeight::parse(shape, &weight)?;
            let bkl = BklSolver::new(window);
            let table = match kind {
                CharKind::Simple | CharKind::Tilting => {
                    let (row, meaning) = match kind {
                        CharKind::Simple => (simple_character(&bkl, &lambda)?, Meaning::SimpleInVerma),
                        _ => (tilting_character(&bkl, &lambda)?, Meaning::TiltingInVerma),
                    };
                    CharTable { shape, meaning, window, rows: vec![row] }
                }
                CharKind::Whittaker => {
                    let p = match parabolic {
                        Some(text) => Parabolic::parse(shape, &text)?,
                        None => Parabolic::full(shape),
                    };
                    whittaker_decomposition(&bkl, &lambda, &p)?
                }
            };
            print_table(&table, json, csv);
            Ok(0)
        }
        Command::Verify { suite, max_size, window } => {
            let suite = match suite {
                SuiteArg::Hecke => Suite::Hecke,
                SuiteArg::Bar => Suite::Bar,
                SuiteArg::Canonical => Suite::Canonical,
                SuiteArg::Qsym => Suite::Qsym,
                SuiteArg::Bgg => Suite::Bgg,
                SuiteArg::Inverse => Suite::Inverse,
            };
            let outcomes = run_suite(suite, &Limits::new(max_size, window));
            for o in &outcomes {
                println!("{o}");
            }
            let code = if outcomes.iter().any(|o| o.window_escaped()) {
                3
            } else if outcomes.iter().all(|o| o.passed()) {
                0
            } else {
                2
            };
            Ok(code)
        }
        Command::Quiver { n, vertices } => {
            print!("{}", quiver_presentation(n, vertices)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
