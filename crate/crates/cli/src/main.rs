//! `composet`: command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 usage error, 3 failed check.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use composet::automata::{build_mobius_automaton, build_zeta_automaton, PairAutomaton};
use composet::embedding::{all_embeddings, count_d_normal, d_normal_embeddings, mobius_formula};
use composet::genfun::{mobius_genfun, series_coeffs, zeta_genfun};
use composet::ncseries::{build_m, build_z, expand};
use composet::poset::{mobius_recursive, Interval};
use composet::selftest::{self, check_automaton, Kind as CheckKind, Mode};
use composet::shelling::{labeled_chains, labeled_hasse_dot};
use composet::{Composition, Error, RunBound, Word};

#[derive(Parser, Debug)]
#[command(
    name = "composet",
    version,
    about = "Subword order on run-restricted words"
)]
struct Cli {
    /// Largest allowed run of b's.
    #[arg(long, global = true, default_value_t = 3)]
    d: u32,

    /// Longest word to expand or sweep.
    #[arg(long = "max-len", global = true, default_value_t = 8)]
    max_len: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Zeta,
    Mobius,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Möbius value by formula and by recursion, with the normal count.
    Mobius {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Elements of the interval [u, w].
    Interval {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Maximal chains of [u, w] with labels and A/D/N tags.
    Chains {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Embeddings of u in w.
    Embeddings {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        /// Only the d-normal embeddings.
        #[arg(long)]
        normal: bool,
    },
    /// Expansion of the zeta or Möbius series of u.
    Series {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        u: String,
    },
    /// The zeta or Möbius automaton.
    Automaton {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Compare accepted coefficients with brute force up to --max-len.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Norm generating function of a composition.
    Genfun {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated parts, e.g. 1,3,2.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Run every acceptance sweep.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

enum Failure {
    Invalid(String),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn restricted_word(s: &str, d: RunBound) -> Result<Word, Failure> {
    let w: Word = s.parse()?;
    w.ensure_restricted(d)?;
    Ok(w)
}

fn bigint_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn no_dot(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Dot {
        Err(Failure::Usage(format!(
            "--format dot is not available for {command}"
        )))
    } else {
        Ok(())
    }
}

fn mobius(cli: &Cli, d: RunBound, u: &str, w: &str) -> Outcome {
    no_dot(cli.format, "mobius")?;
    let (u, w) = (restricted_word(u, d)?, restricted_word(w, d)?);
    let mu = mobius_formula(&u, &w, d);
    let normal = count_d_normal(&u, &w, d);
    let oracle = mobius_recursive(&u, &w, d)?;
    Ok(match cli.format {
        Format::Json => pretty(&json!({"mu": mu, "normal": normal, "oracle": oracle})),
        _ => format!("mu={mu} normal={normal} oracle={oracle}\n"),
    })
}

fn interval(cli: &Cli, d: RunBound, u: &str, w: &str) -> Outcome {
    let (u, w) = (restricted_word(u, d)?, restricted_word(w, d)?);
    let iv = Interval::new(&u, &w, d)?;
    Ok(match cli.format {
        Format::Json => pretty(&iv.to_json()),
        Format::Dot => iv.to_dot(),
        Format::Text => iv.elements.iter().map(|v| format!("{v}\n")).collect(),
    })
}

fn chains(cli: &Cli, d: RunBound, u: &str, w: &str) -> Outcome {
    let (u, w) = (restricted_word(u, d)?, restricted_word(w, d)?);
    let iv = Interval::new(&u, &w, d)?;
    if cli.format == Format::Dot {
        return Ok(labeled_hasse_dot(&iv)?);
    }
    let labeled = labeled_chains(&iv)?;
    Ok(match cli.format {
        Format::Json => {
            let items: Vec<Value> = labeled
                .iter()
                .map(|(c, l)| json!({"chain": c, "labels": l, "tag": l.shape().tag()}))
                .collect();
            pretty(&Value::Array(items))
        }
        _ => {
            let mut out = String::new();
            for (c, l) in &labeled {
                let _ = writeln!(out, "{}\t{}\t{}", l.shape().tag(), c, l);
            }
            out
        }
    })
}

fn embeddings(cli: &Cli, d: RunBound, u: &str, w: &str, normal: bool) -> Outcome {
    no_dot(cli.format, "embeddings")?;
    let (u, w) = (restricted_word(u, d)?, restricted_word(w, d)?);
    let list = if normal {
        d_normal_embeddings(&u, &w, d)
    } else {
        all_embeddings(&u, &w)
    };
    Ok(match cli.format {
        Format::Json => pretty(&serde_json::to_value(&list).expect("json serializes")),
        _ => list.iter().map(|e| format!("{e}\n")).collect(),
    })
}

fn series(cli: &Cli, d: RunBound, kind: Kind, u: &str) -> Outcome {
    no_dot(cli.format, "series")?;
    let u = restricted_word(u, d)?;
    let expr = match kind {
        Kind::Zeta => build_z(&u, d)?,
        Kind::Mobius => build_m(&u, d)?,
    };
    let s = expand(&expr, cli.max_len)?;
    Ok(match cli.format {
        Format::Json => {
            let items: Vec<Value> = s
                .terms()
                .map(|(w, c)| json!([w.to_letters_string(), bigint_json(c)]))
                .collect();
            pretty(&Value::Array(items))
        }
        _ => s.terms().map(|(w, c)| format!("{w}\t{c}\n")).collect(),
    })
}

fn automaton(cli: &Cli, d: RunBound, kind: Kind, check: bool, emit: Option<Emit>) -> Outcome {
    let aut: PairAutomaton = match kind {
        Kind::Zeta => build_zeta_automaton(d),
        Kind::Mobius => build_mobius_automaton(d),
    };
    let mut out = if emit == Some(Emit::Dot) || cli.format == Format::Dot {
        aut.to_dot()
    } else if cli.format == Format::Json {
        let arcs: Vec<Value> = aut
            .arcs()
            .iter()
            .map(|a| {
                json!({
                    "from": aut.names()[a.from],
                    "to": aut.names()[a.to],
                    "coeff": a.label.coeff,
                    "u": a.label.u_part.to_letters_string(),
                    "w": a.label.w_part.to_letters_string(),
                })
            })
            .collect();
        pretty(&json!({
            "vertices": aut.names(),
            "initial": aut.names()[aut.initial()],
            "final": aut.names()[aut.accepting()],
            "arcs": arcs,
        }))
    } else {
        let mut text = format!(
            "vertices={} arcs={}\n",
            aut.vertex_count(),
            aut.arcs().len()
        );
        for a in aut.arcs() {
            let _ = writeln!(
                text,
                "{} -> {}\t{}",
                aut.names()[a.from],
                aut.names()[a.to],
                a.label
            );
        }
        text
    };
    if check {
        let kind = match kind {
            Kind::Zeta => CheckKind::Zeta,
            Kind::Mobius => CheckKind::Mobius,
        };
        let report = check_automaton(kind, d, cli.max_len)?;
        if !report.passed {
            return Err(Failure::Check(format!(
                "automaton check failed: {}",
                report.detail
            )));
        }
        if emit.is_none() && cli.format == Format::Text {
            let _ = writeln!(out, "check passed: {}", report.detail);
        } else {
            eprintln!("check passed: {}", report.detail);
        }
    }
    Ok(out)
}

fn genfun(cli: &Cli, d: RunBound, kind: Kind, alpha: &str, terms: usize) -> Outcome {
    no_dot(cli.format, "genfun")?;
    let alpha: Composition = alpha.parse()?;
    let f = match kind {
        Kind::Zeta => zeta_genfun(&alpha, d)?,
        Kind::Mobius => mobius_genfun(&alpha, d)?,
    };
    let coeffs = series_coeffs(&f, terms)?;
    Ok(match cli.format {
        Format::Json => pretty(&json!({
            "num": f.num().coeffs().iter().map(bigint_json).collect::<Vec<_>>(),
            "den": f.den().coeffs().iter().map(bigint_json).collect::<Vec<_>>(),
            "coeffs": coeffs.iter().map(bigint_json).collect::<Vec<_>>(),
        })),
        _ => {
            let join = |v: &[BigInt]| {
                v.iter()
                    .map(BigInt::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!(
                "num: {}\nden: {}\ncoeffs: {}\n",
                join(f.num().coeffs()),
                join(f.den().coeffs()),
                join(&coeffs)
            )
        }
    })
}

fn run_selftest(cli: &Cli, quick: bool) -> Outcome {
    no_dot(cli.format, "selftest")?;
    let mode = if quick { Mode::Quick } else { Mode::Full };
    let reports = selftest::run_all(mode);
    let out = match cli.format {
        Format::Json => pretty(&Value::Array(
            reports
                .iter()
                .map(|r| json!({"criterion": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                .collect(),
        )),
        _ => reports.iter().map(|r| format!("{}\n", r.line())).collect(),
    };
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Check(format!("{failed} criteria failed")));
    }
    Ok(out)
}

fn run(cli: &Cli) -> Outcome {
    let d = RunBound::new(cli.d)?;
    match &cli.command {
        Command::Mobius { u, w } => mobius(cli, d, u, w),
        Command::Interval { u, w } => interval(cli, d, u, w),
        Command::Chains { u, w } => chains(cli, d, u, w),
        Command::Embeddings { u, w, normal } => embeddings(cli, d, u, w, *normal),
        Command::Series { kind, u } => series(cli, d, *kind, u),
        Command::Automaton { kind, check, emit } => automaton(cli, d, *kind, *check, *emit),
        Command::Genfun { kind, alpha, terms } => genfun(cli, d, *kind, alpha, *terms),
        Command::Selftest { quick } => run_selftest(cli, *quick),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
