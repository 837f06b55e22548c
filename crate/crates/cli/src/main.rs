use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use heckoid::decide::{DecideOptions, Decider};
use heckoid::farey::{normalize_with_budget, HeckoidContext, DEFAULT_MAX_STEPS};
use heckoid::kleinian::{solve_representations, trace_of_slope, DEFAULT_TOL};
use heckoid::presentation::{
    cyclic_t_sequence, relator, riley_word, s1_s2_decomposition, slope_cyclic_s_sequence, slope_s_sequence, summarize,
    t_sequence,
};
use heckoid::rational::{canonicalize_slope, to_continued_fraction};
use heckoid::smallcancel::{compute_pieces, min_piece_count, symmetrize, verify_c, verify_t4};
use heckoid::verify::{run_suite, Suite, SweepOptions};
use heckoid::{Error, Slope, Word, SCHEMA};

/// Even Heckoid groups of 2-bridge links: words, Farey normal forms, small
/// cancellation and trace certificates.
#[derive(Parser, Debug)]
#[command(name = "heckoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Render a plain table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Numeric tolerance for representations and certificates.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Normalization step budget.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riley word u_s and its continued fraction.
    Word { s: Slope },
    /// S-sequence and cyclic S-sequence of a slope.
    Sseq { r: Slope },
    /// (S1, S2, S1, S2) decomposition.
    Decomp { r: Slope },
    /// T-sequence and reduced slope.
    Tseq { r: Slope },
    /// Fundamental intervals of H(r;n).
    Intervals { r: Slope, n: u64 },
    /// Normal form of s under the Farey action of H(r;n).
    Normalize { r: Slope, n: u64, s: Slope },
    /// Whether the loop of slope s is null-homotopic in H(r;n).
    Trivial { r: Slope, n: u64, s: Slope },
    /// Whether the loops of slopes s and t are homotopic in H(r;n).
    Conjugate { r: Slope, n: u64, s: Slope, t: Slope },
    /// Whether the loop of slope s is peripheral in H(r;n).
    Peripheral { r: Slope, n: u64, s: Slope },
    /// Whether the loop of slope s is torsion in H(r;n).
    Torsion { r: Slope, n: u64, s: Slope },
    /// C(4n) and T(4) for the symmetrized relator set.
    Smallcancel { r: Slope, n: u64 },
    /// Piece dictionary, and the least piece count of an optional word.
    Pieces { r: Slope, n: u64, word: Option<Word> },
    /// Parabolic representations and traces of optional slopes.
    Rep { r: Slope, n: u64, slopes: Vec<Slope> },
    /// Runs a property suite over a range of slopes.
    Verify {
        suite: String,
        #[arg(long)]
        max_denom: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn document(value: impl serde::Serialize) -> Result<Value, Error> {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    match serde_json::to_value(value).expect("serializable") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok(Value::Object(out))
}

fn decider(r: &Slope, n: u64, cli: &Cli) -> Result<Decider, Error> {
    let ctx = HeckoidContext::new(r, n)?;
    let options = DecideOptions { tol: cli.tol, max_steps: cli.budget, ..DecideOptions::default() };
    Ok(Decider::new(ctx, options))
}

fn run(cli: &Cli) -> Result<(Value, bool), Error> {
    let ok = |v: Result<Value, Error>| v.map(|v| (v, true));
    match &cli.command {
        Command::Word { s } => {
            let w = riley_word(s)?;
            let cf = if s.is_infinite() || s.is_zero() { None } else { Some(to_continued_fraction(s)?) };
            ok(document(json!({
                "slope": s,
                "continued_fraction": cf,
                "word": w.word,
                "hat_word": w.hat_word,
                "length": w.word.len(),
                "canonical": canonicalize_slope(s),
            })))
        }
        Command::Sseq { r } => ok(document(json!({
            "slope": r,
            "s_sequence": slope_s_sequence(r)?,
            "cyclic_s_sequence": slope_cyclic_s_sequence(r)?,
        }))),
        Command::Decomp { r } => {
            let d = s1_s2_decomposition(r)?;
            ok(document(json!({ "slope": r, "s1": d.s1, "s2": d.s2, "s_sequence": d.expand() })))
        }
        Command::Tseq { r } => {
            let t = t_sequence(r)?;
            let summary = summarize(r)?;
            ok(document(json!({
                "slope": r,
                "t_sequence": t,
                "cyclic_t_sequence": cyclic_t_sequence(r)?,
                "reduced_slope": summary.reduced_slope,
            })))
        }
        Command::Intervals { r, n } => {
            let ctx = HeckoidContext::new(r, *n)?;
            ok(document(json!({
                "r": r,
                "n": n,
                "intervals": ctx.intervals.to_string(),
                "r1": ctx.intervals.r1,
                "r2": ctx.intervals.r2,
                "r1_continued_fraction": ctx.intervals.r1_continued_fraction,
                "r2_continued_fraction": ctx.intervals.r2_continued_fraction,
                "excluded": ctx.intervals.excluded_endpoint(),
                "parabolic": ctx.parabolic,
            })))
        }
        Command::Normalize { r, n, s } => {
            let ctx = HeckoidContext::new(r, *n)?;
            ok(document(normalize_with_budget(s, &ctx, cli.budget)?))
        }
        Command::Trivial { r, n, s } => {
            let c = decider(r, *n, cli)?.classify(s)?;
            let trivial = c.kind == heckoid::decide::LoopKind::Trivial;
            ok(document(json!({ "trivial": trivial, "class": c })))
        }
        Command::Conjugate { r, n, s, t } => ok(document(decider(r, *n, cli)?.conjugate(s, t)?)),
        Command::Peripheral { r, n, s } => ok(document(decider(r, *n, cli)?.is_peripheral(s)?)),
        Command::Torsion { r, n, s } => ok(document(decider(r, *n, cli)?.is_torsion(s)?)),
        Command::Smallcancel { r, n } => {
            let set = symmetrize(&relator(r, *n as usize)?);
            let c = verify_c(&set, 4 * *n as usize);
            let t = verify_t4(&set);
            ok(document(json!({
                "r": r,
                "n": n,
                "elements": set.len(),
                "c": c,
                "t4": t,
            })))
        }
        Command::Pieces { r, n, word } => {
            let set = symmetrize(&relator(r, *n as usize)?);
            let dict = compute_pieces(&set);
            let count = match word {
                Some(w) => Some(json!({ "word": w, "min_piece_count": min_piece_count(w, &set)? })),
                None => None,
            };
            ok(document(json!({
                "r": r,
                "n": n,
                "max_piece_length": dict.max_piece_length,
                "pieces": dict.pieces(),
                "query": count,
            })))
        }
        Command::Rep { r, n, slopes } => {
            let reps = solve_representations(r, *n, cli.tol)?;
            let mut rows = Vec::new();
            for rep in &reps.representations {
                let mut traces = Map::new();
                for s in slopes {
                    let t = trace_of_slope(s, rep)?;
                    traces.insert(s.to_string(), json!([t.re, t.im]));
                }
                rows.push(json!({
                    "omega": [rep.omega.re, rep.omega.im],
                    "residual": rep.residual,
                    "power_residual": rep.power_residual,
                    "traces": traces,
                }));
            }
            ok(document(json!({
                "r": r,
                "n": n,
                "polynomial": reps.polynomial.to_string(),
                "target_trace": reps.representations.first().map(|x| x.target_trace),
                "representations": rows,
                "failures": reps.failures,
            })))
        }
        Command::Verify { suite, max_denom, n, seed } => {
            let suite: Suite = suite.parse()?;
            let mut opts = SweepOptions::for_suite(suite);
            if let Some(d) = max_denom {
                opts.max_denom = *d;
            }
            if let Some(n) = n {
                opts = opts.with_n(*n);
            }
            if let Some(s) = seed {
                opts.seed = *s;
            }
            let rep = run_suite(suite, &opts)?;
            let passed = rep.ok();
            Ok((document(rep)?, passed))
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(v: &Value) -> String {
    let Value::Object(m) = v else { return cell(v) };
    let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
    m.iter().map(|(k, v)| format!("{k:<width$}  {}\n", cell(v))).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = std::env::var("HECKOID_WORKERS").ok().and_then(|w| w.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().ok();
    }
    match run(&cli) {
        Ok((value, passed)) => {
            let text = if cli.table {
                table(&value)
            } else {
                serde_json::to_string_pretty(&value).expect("valid json") + "\n"
            };
            // A closed pipe is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::UnknownSuite(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
