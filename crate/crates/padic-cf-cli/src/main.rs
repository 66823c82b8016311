//! Command-line front end: expansion, condition checking, counterexample
//! generation and p-adic square-root digits, with exact JSON output.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;

use padic_cf_cli::document::{
    counterexample_document, parse_quad_spec, parse_quotient_list, table_fraction,
    table_valuation, CheckDocument, SqrtDocument, TraceDocument, ValueDescriptor, SCHEMA_VERSION,
};
use padic_cf::{
    build_counterexample, check_3step_hypotheses, check_pair_condition, check_rstep_hypotheses,
    expand, is_odd_prime, parse_rational, verify_seqden, ExpansionStatus, PQSequence, QuadIrr,
    Scheme,
};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(name = "padic-cf", version, about = "Exact p-adic continued fraction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a rational or quadratic irrational and print the trace
    Expand(ExpandArgs),
    /// Check a convergence condition on quotients or a trace file
    Check(CheckArgs),
    /// Generate the bounded-valuation counterexample sequence
    Counterexample(CounterexampleArgs),
    /// Balanced digits of the canonical square root of D in Q_p
    Sqrt(SqrtArgs),
}

#[derive(Args)]
struct ExpandArgs {
    /// Odd prime
    #[arg(long)]
    p: u64,
    /// Algorithm: browkin1 | browkin2 | new1 | new2 | ruban
    #[arg(long)]
    alg: String,
    /// Rational input "a/b"
    #[arg(long, allow_hyphen_values = true)]
    rational: Option<String>,
    /// Quadratic input "P,Q,D,R" meaning (P + Q√D)/R
    #[arg(long, allow_hyphen_values = true)]
    quad: Option<String>,
    #[arg(long, default_value_t = 200)]
    max_steps: usize,
    /// Output format: table | json
    #[arg(long, default_value = "table")]
    format: String,
    /// Square-root branch: plus (canonical) | minus
    #[arg(long, default_value = "plus")]
    branch: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Condition: pair | threestep | rstep | seqden
    #[arg(long)]
    condition: String,
    /// Block length for the rstep condition
    #[arg(long)]
    r: Option<usize>,
    /// Trace document to read quotients from
    #[arg(long)]
    trace: Option<String>,
    /// Inline quotients "b0,b1,..."
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Odd prime (required with --b)
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    blocks: usize,
    /// Output format: table | json
    #[arg(long, default_value = "table")]
    format: String,
}

#[derive(Args)]
struct SqrtArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Number of digits to print
    #[arg(long)]
    precision: usize,
    /// Output format: table | json
    #[arg(long, default_value = "table")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Expand(args) => cmd_expand(args),
        Command::Check(args) => cmd_check(args),
        Command::Counterexample(args) => cmd_counterexample(args),
        Command::Sqrt(args) => cmd_sqrt(args),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn parse_format(s: &str) -> Result<bool, String> {
    match s {
        "json" => Ok(true),
        "table" => Ok(false),
        other => Err(format!("unknown format `{other}` (expected table or json)")),
    }
}

fn cmd_expand(args: ExpandArgs) -> Result<u8, String> {
    let json = parse_format(&args.format)?;
    let scheme: Scheme = args.alg.parse().map_err(|e: padic_cf::Error| e.to_string())?;
    let input = match (&args.rational, &args.quad) {
        (Some(r), None) => {
            let q = parse_rational(r).map_err(|e| e.to_string())?;
            QuadIrr::from_rational(&q, args.p).map_err(|e| e.to_string())?
        }
        (None, Some(spec)) => {
            let (pc, mut qc, d, r) = parse_quad_spec(spec)?;
            match args.branch.as_str() {
                "plus" => {}
                // The other p-adic root of D is −√D: flip the surd coefficient.
                "minus" => qc = -qc,
                other => return Err(format!("unknown branch `{other}`")),
            }
            QuadIrr::new(pc, qc, d, r, args.p).map_err(|e| e.to_string())?
        }
        _ => return Err("provide exactly one of --rational or --quad".into()),
    };
    let trace = expand(&input, scheme, args.max_steps).map_err(|e| e.to_string())?;
    let doc = TraceDocument::from_trace(&trace);
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print_trace_table(&doc);
    }
    Ok(match trace.status {
        ExpansionStatus::Truncated => EXIT_TRUNCATED,
        _ => EXIT_OK,
    })
}

fn print_trace_table(doc: &TraceDocument) {
    println!("p: {}", doc.p);
    println!("algorithm: {}", doc.algorithm);
    if let Some(input) = &doc.input {
        println!("input: {}", describe_value(input));
    }
    if let Some(status) = &doc.status {
        match (doc.preperiod, doc.period) {
            (Some(pre), Some(per)) => println!("status: {status} (preperiod {pre}, period {per})"),
            _ => println!("status: {status}"),
        }
    }
    println!(
        "{:>4} {:>16} {:>6} {:>24} {:>24} {:>6}  alpha",
        "n", "b", "v(b)", "A", "B", "v(B)"
    );
    for s in &doc.steps {
        println!(
            "{:>4} {:>16} {:>6} {:>24} {:>24} {:>6}  {}",
            s.n,
            table_fraction(&s.b),
            table_valuation(s.vp_b),
            table_fraction(&s.conv_num),
            table_fraction(&s.conv_den),
            table_valuation(s.vp_den),
            s.alpha.as_ref().map_or(String::new(), describe_value),
        );
    }
    if let Some(cert) = &doc.certification {
        println!(
            "certified: v(B_n) >= {} for all n: {} (min {})",
            cert.bound, cert.certified, cert.min_vp_den
        );
        println!(
            "pattern holds: {}; side condition holds: {}; pair condition holds: {}",
            cert.pattern_holds, cert.side_condition_holds, cert.pair_condition_holds
        );
    }
}

fn describe_value(v: &ValueDescriptor) -> String {
    match v {
        ValueDescriptor::Rational { num, den } => {
            if den == "1" {
                num.clone()
            } else {
                format!("{num}/{den}")
            }
        }
        ValueDescriptor::Quadratic {
            p_coeff,
            q_coeff,
            discriminant,
            denom,
        } => format!("({p_coeff} + {q_coeff}*sqrt({discriminant}))/{denom}"),
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8, String> {
    let seq = match (&args.trace, &args.b) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let doc: TraceDocument =
                serde_json::from_str(&text).map_err(|e| format!("malformed trace file: {e}"))?;
            doc.to_sequence()?
        }
        (None, Some(list)) => {
            let p = args.p.ok_or("--b requires --p")?;
            PQSequence::new(p, parse_quotient_list(list)?).map_err(|e| e.to_string())?
        }
        _ => return Err("provide exactly one of --trace or --b".into()),
    };
    let p = seq.p();

    let (holds, first_violation, details, r) = match args.condition.as_str() {
        "pair" => {
            let report = check_pair_condition(&seq);
            (
                report.holds,
                report.first_violation,
                serde_json::json!({ "checked": report.checked }),
                None,
            )
        }
        "threestep" => {
            let report = check_3step_hypotheses(&seq);
            (
                report.holds(),
                report.first_violation,
                serde_json::json!({
                    "pattern_holds": report.pattern_holds,
                    "side_condition_holds": report.side_condition_holds,
                    "complete_triples": report.complete_triples,
                    "plateau_verified": report.plateau_verified,
                    "products_descend": report.products_descend,
                }),
                None,
            )
        }
        "rstep" => {
            let r = args.r.ok_or("--condition rstep requires --r")?;
            let report = check_rstep_hypotheses(&seq, r).map_err(|e| e.to_string())?;
            (
                report.holds(),
                report.first_violation,
                serde_json::json!({
                    "pattern_holds": report.pattern_holds,
                    "u_conditions_hold": report.u_conditions_hold,
                    "complete_blocks": report.complete_blocks,
                    "plateau_verified": report.plateau_verified,
                    "reduces_to_three_step": report.reduces_to_three_step,
                }),
                Some(r),
            )
        }
        "seqden" => {
            let mut checked = 0usize;
            let mut holds = true;
            let mut first_violation = None;
            'outer: for k in 0..seq.len().saturating_sub(2) {
                for n in 2..seq.len() - k {
                    checked += 1;
                    if !verify_seqden(&seq, k, n).map_err(|e| e.to_string())? {
                        holds = false;
                        first_violation = Some(k + n);
                        break 'outer;
                    }
                }
            }
            (
                holds,
                first_violation,
                serde_json::json!({ "checked_identities": checked }),
                None,
            )
        }
        other => return Err(format!("unknown condition `{other}`")),
    };

    let doc = CheckDocument {
        schema_version: SCHEMA_VERSION,
        condition: args.condition.clone(),
        p,
        holds,
        r,
        first_violation,
        details,
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(if holds { EXIT_OK } else { EXIT_VIOLATED })
}

fn cmd_counterexample(args: CounterexampleArgs) -> Result<u8, String> {
    let json = parse_format(&args.format)?;
    let seq = build_counterexample(args.p, args.blocks).map_err(|e| e.to_string())?;
    let doc = counterexample_document(args.p, args.blocks, &seq);
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print_trace_table(&doc);
    }
    Ok(EXIT_OK)
}

fn cmd_sqrt(args: SqrtArgs) -> Result<u8, String> {
    let json = parse_format(&args.format)?;
    if !is_odd_prime(args.p) {
        return Err(format!("p = {} is not an odd prime", args.p));
    }
    if args.precision == 0 {
        return Err("precision must be positive".into());
    }
    let d: BigInt = args.d.parse().map_err(|_| format!("bad integer `{}`", args.d))?;
    if d == BigInt::from(0) {
        return Err("D = 0 has no digit expansion".into());
    }

    // Perfect squares have rational roots; pick the branch whose leading
    // balanced digit is positive, matching the canonical Hensel branch.
    let window = if !d.is_negative() && &d.sqrt() * &d.sqrt() == d {
        let root = padic_cf::Rational::from(d.sqrt());
        let w = padic_cf::balanced_digits(&root, args.p, args.precision)
            .map_err(|e| e.to_string())?;
        if w.digits()[0] < 0 {
            padic_cf::balanced_digits(&(-root), args.p, args.precision)
                .map_err(|e| e.to_string())?
        } else {
            w
        }
    } else {
        match QuadIrr::new(0.into(), 1.into(), d.clone(), 1.into(), args.p) {
            Ok(alpha) => alpha.digits(args.precision).map_err(|e| e.to_string())?,
            Err(e) => {
                // No root in Q_p is a result, not a usage error.
                eprintln!("error: {e}");
                return Ok(EXIT_VIOLATED);
            }
        }
    };

    let root = (window.start() == 0)
        .then(|| {
            padic_cf::hensel_sqrt(&d, args.p, args.precision as u32)
                .ok()
                .map(|r| r.to_string())
        })
        .flatten();
    let doc = SqrtDocument {
        schema_version: SCHEMA_VERSION,
        p: args.p,
        d: d.to_string(),
        precision: args.precision,
        start: window.start(),
        digits: window.digits().to_vec(),
        root,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!(
            "sqrt({}) in Q_{}: start {}, digits {:?}",
            doc.d, doc.p, doc.start, doc.digits
        );
        if let Some(root) = &doc.root {
            println!("canonical root mod {}^{}: {}", doc.p, doc.precision, root);
        }
    }
    Ok(EXIT_OK)
}
