//! Command-line front end for the meadow library.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use meadow::decide::{Decider, Decision, Evidence};
use meadow::eval::{eval_total, parse_assignment, Assignment, Carrier};
use meadow::normalize::{zero_elim, Normalizer, ZeroElim};
use meadow::partial::{classify_def_with, eval_punched, NzRule, PartialValue, PunchId};
use meadow::poly::DEFAULT_MAX_MONOMIALS;
use meadow::serial::to_json;
use meadow::syntax::{parse, print_with, Numerals};
use meadow::term::{check_signature, conforms, SignatureId, Term};
use meadow::translate::{div_to_inv, inv_to_div};
use meadow::{Error, TheoryId};

const GRAMMAR: &str = "\
Expression grammar, loosest binding first:
  e + e          addition, left-associative
  e * e, e / e   multiplication and division, same level, left-associative
  -e             prefix minus
  e^-1, e^n      inverse and natural power (postfix, tightest); inv(e) = e^-1
  0 1 2 ...      decimal literals stand for numerals 1 + 1 + ... + 1
  x, y1, a_b     variables: [a-z][a-z0-9_]*
so -x^-1 is -(x^-1) and x / y / z is (x / y) / z.";

#[derive(Parser)]
#[command(name = "meadow", version, about = "Terms, normal forms and decisions for arithmetical meadows", after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// How numerals are printed.
    #[arg(long, global = true, default_value = "decimal", value_parser = parse_numerals)]
    numerals: Numerals,
    /// Abort normalization once a polynomial has more monomials than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MONOMIALS)]
    max_monomials: usize,
    /// Seed for counterexample search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Inv,
    Div,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and echo its canonical form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Require the term to lie in this signature.
        #[arg(long)]
        sig: Option<SignatureId>,
    },
    /// Normal form: a reduced fraction for closed terms, p / q otherwise.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        sig: SignatureId,
    },
    /// Exact value under an assignment.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Comma-separated bindings such as x=1/2,y=3.
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long)]
        carrier: Option<Carrier>,
        /// Leave inverse or division of zero undefined.
        #[arg(long)]
        punch: Option<PunchId>,
    },
    /// Decide an equation: iamd, damd, ratiaz-gil, ratdaz-gil or closed:SIG.
    Decide {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_parser = parse_theory)]
        theory: TheoryArg,
    },
    /// Classify as nz (defined, nonzero), def (defined) or outside.
    Defined {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Use the unguarded additive rule for nz.
        #[arg(long)]
        literal_nz: bool,
    },
    /// Rewrite division as inverse or back.
    Translate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        to: Direction,
    },
}

#[derive(Clone, Copy)]
enum TheoryArg {
    Theory(TheoryId),
    Closed(SignatureId),
}

fn parse_numerals(s: &str) -> Result<Numerals, String> {
    s.parse()
}

fn parse_theory(s: &str) -> Result<TheoryArg, String> {
    if let Some(sig) = s.strip_prefix("closed:") {
        return sig.parse().map(TheoryArg::Closed);
    }
    match s.parse::<TheoryId>() {
        Ok(
            id @ (TheoryId::EIamd | TheoryId::EDamd | TheoryId::RatiazGil | TheoryId::RatdazGil),
        ) => Ok(TheoryArg::Theory(id)),
        Ok(id) => Err(format!("no decision procedure for `{id}`")),
        Err(e) => Err(e.to_string()),
    }
}

/// What a subcommand produced: text and structured renderings plus exit code.
struct Report {
    text: String,
    data: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, data: Value) -> Report {
        Report {
            text,
            data,
            code: 0,
        }
    }
}

fn read_term(text: &str) -> Result<Term, String> {
    parse(text)
        .map(|p| p.term)
        .map_err(|e| format!("{text:?}: {e}"))
}

fn show_env(env: &Assignment) -> String {
    env.iter()
        .map(|(x, q)| format!("{x}={q}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn env_json(env: &Assignment) -> Value {
    env.iter()
        .map(|(x, q)| (x.clone(), json!(q.to_string())))
        .collect()
}

fn run(cmd: Command, opts: &GlobalOpts) -> Result<Report, String> {
    let show = |t: &Term| print_with(t, opts.numerals);
    let normalizer = Normalizer::new(opts.max_monomials);
    let err = |e: Error| e.to_string();
    match cmd {
        Command::Parse { expr, sig } => {
            let t = read_term(&expr)?;
            if let Some(sig) = sig {
                check_signature(&t, sig).map_err(err)?;
            }
            let sigs: Vec<&str> = SignatureId::ALL
                .into_iter()
                .filter(|s| conforms(&t, *s))
                .map(SignatureId::name)
                .collect();
            let data = json!({ "printed": show(&t), "term": to_json(&t), "signatures": sigs });
            Ok(Report::ok(show(&t), data))
        }
        Command::Normalize { expr, sig } => {
            let t = read_term(&expr)?;
            check_signature(&t, sig).map_err(err)?;
            let (kind, form) = normal_form(&normalizer, &t, sig).map_err(err)?;
            Ok(Report::ok(
                form.clone(),
                json!({ "kind": kind, "normal": form }),
            ))
        }
        Command::Eval {
            expr,
            assign,
            carrier,
            punch,
        } => {
            let t = read_term(&expr)?;
            let carrier = carrier.unwrap_or(if punch.is_some() {
                Carrier::NonNegativeRationals
            } else {
                Carrier::AllRationals
            });
            let env = parse_assignment(&assign, carrier)?;
            let value = match punch {
                Some(p) => eval_punched(&t, &env, p).map_err(err)?,
                None => PartialValue::Defined(eval_total(&t, &env, carrier).map_err(err)?),
            };
            let code = if value.is_defined() { 0 } else { 3 };
            let data = match &value {
                PartialValue::Defined(q) => json!({ "defined": true, "value": q.to_string() }),
                PartialValue::Undefined => json!({ "defined": false }),
            };
            Ok(Report {
                text: value.to_string(),
                data,
                code,
            })
        }
        Command::Decide { lhs, rhs, theory } => {
            let (t, u) = (read_term(&lhs)?, read_term(&rhs)?);
            let decider = Decider::new(normalizer, opts.seed);
            let decision = match theory {
                TheoryArg::Closed(sig) => decider.decide_closed(&t, &u, sig),
                TheoryArg::Theory(TheoryId::EIamd) => decider.decide_iamd(&t, &u),
                TheoryArg::Theory(TheoryId::RatiazGil) => decider.decide_iamdz_gil(&t, &u),
                TheoryArg::Theory(id) => decider.decide_divisive(&t, &u, id),
            }
            .map_err(err)?;
            let mut text = decision.verdict.to_string();
            describe(&decision, 0, &mut text);
            let data = json!({ "verdict": decision.verdict, "evidence": evidence_json(&decision.evidence) });
            Ok(Report {
                text,
                data,
                code: if decision.verdict { 0 } else { 1 },
            })
        }
        Command::Defined { expr, literal_nz } => {
            let t = read_term(&expr)?;
            let rule = if literal_nz {
                NzRule::Literal
            } else {
                NzRule::Guarded
            };
            let class = classify_def_with(&t, rule).map_err(err)?;
            Ok(Report::ok(
                class.to_string(),
                json!({ "class": class.name() }),
            ))
        }
        Command::Translate { expr, to } => {
            let t = read_term(&expr)?;
            let out = match to {
                Direction::Inv => div_to_inv(&t),
                Direction::Div => inv_to_div(&t),
            }
            .map_err(err)?;
            Ok(Report::ok(
                show(&out),
                json!({ "printed": show(&out), "term": to_json(&out) }),
            ))
        }
    }
}

fn normal_form(
    n: &Normalizer,
    t: &Term,
    sig: SignatureId,
) -> Result<(&'static str, String), Error> {
    use SignatureId::*;
    let t = if sig.is_divisive() {
        div_to_inv(t)?
    } else {
        t.clone()
    };
    match sig {
        Imd | Dmd | Cr => {
            let q = meadow::normalize::closed_normal_full(&t)?;
            Ok(("closed", q.to_string()))
        }
        _ if t.is_closed() => Ok(("closed", n.closed_normal_iamdz(&t)?.to_string())),
        _ => match zero_elim(&t)? {
            ZeroElim::Zero => Ok(("zero", "0".into())),
            ZeroElim::Term(s) => Ok(("fraction", n.split_inverse(&s)?.to_string())),
        },
    }
}

fn describe(d: &Decision, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    match &d.evidence {
        Evidence::MatchedNormals { lhs, rhs } => {
            let _ = write!(out, "\n{pad}lhs: {lhs}\n{pad}rhs: {rhs}");
        }
        Evidence::Counterexample(env) => {
            let _ = write!(out, "\n{pad}counterexample: {}", show_env(env));
        }
        Evidence::RecursionTrace(steps) => {
            for step in steps {
                let _ = write!(out, "\n{pad}{}: {}", step.label, step.decision.verdict);
                describe(&step.decision, depth + 1, out);
            }
        }
    }
}

fn evidence_json(e: &Evidence) -> Value {
    match e {
        Evidence::MatchedNormals { lhs, rhs } => {
            json!({ "kind": "normals", "lhs": lhs.to_string(), "rhs": rhs.to_string() })
        }
        Evidence::Counterexample(env) => {
            json!({ "kind": "counterexample", "assignment": env_json(env) })
        }
        Evidence::RecursionTrace(steps) => json!({
            "kind": "cases",
            "cases": steps.iter().map(|s| json!({
                "case": s.label,
                "verdict": s.decision.verdict,
                "evidence": evidence_json(&s.decision.evidence),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.opts.format;
    match run(cli.command, &cli.opts) {
        Ok(report) => {
            match format {
                Format::Text => println!("{}", report.text),
                Format::Structured => println!("{}", report.data),
            }
            ExitCode::from(report.code)
        }
        Err(message) => {
            match format {
                Format::Text => eprintln!("error: {message}"),
                Format::Structured => println!("{}", json!({ "error": message })),
            }
            ExitCode::from(2)
        }
    }
}
