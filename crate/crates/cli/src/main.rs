use std::path::PathBuf;
use std::process::ExitCode;

use braidcover::burau::{alexander_of_closure, knot_determinant};
use braidcover::cover::cover_form;
use braidcover::factorization::{hurwitz_search, HurwitzOutcome, HurwitzSearchOptions};
use braidcover::pin::pin_arcs;
use braidcover::presentation::{
    abelianization, canonical_multiset, family_relators, tietze_simplify, vk_presentation, VkMode,
};
use braidcover::qform;
use braidcover::report::{self, expected_det, expected_gram1};
use braidcover::{beta_family, BraidWord, Error, Factorization, Fixtures};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "braidcover", version, about = "Braided surfaces, their complements and double branched covers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    emit: Emit,
    /// Arc fixture file (defaults to the shipped one).
    #[arg(long, value_name = "PATH", global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct Input {
    /// Factorization file: header "m k", then one "i : w" line per factor.
    file: Option<PathBuf>,
    /// Use the family member β(n) instead of a file.
    #[arg(long)]
    n: Option<usize>,
    /// Family variant, 1 or 2.
    #[arg(long, default_value_t = 1)]
    variant: u8,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full ledger for n in FROM..=TO (or a single --n).
    Family {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 16)]
        to: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Complement group presentation and its Tietze simplification.
    Pi1 {
        #[command(flatten)]
        input: Input,
        /// Relators per factor: one (single) or one per generator (full).
        #[arg(long, default_value = "single")]
        mode: String,
        /// Maximum number of Tietze eliminations.
        #[arg(long, default_value_t = report::TIETZE_BUDGET)]
        budget: usize,
    },
    /// Homology and intersection form of the double branched cover.
    CoverForm {
        #[command(flatten)]
        input: Input,
    },
    /// Alexander polynomial and determinant of a braid closure.
    Alexander {
        /// Braid word, e.g. "1 1 1" or "1 -2 1 -2".
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        /// Strand count for --word.
        #[arg(long)]
        strands: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Bounded search for Hurwitz moves between two factorizations.
    HurwitzSearch {
        /// Source and target files; with --n, β₁(n) and β₂(n) are used.
        files: Vec<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Also allow global conjugation by a generator.
        #[arg(long)]
        conjugation: bool,
    },
    /// Recover the arc words from the printed relators and check the fixture.
    ArcPin {
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Maximum conjugator length searched.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

/// Exit status 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    json: Value,
    text: String,
    /// Some claim checked by the command failed.
    failed: bool,
}

enum Source {
    File(PathBuf),
    Family(usize, u8),
}

impl Input {
    fn source(&self) -> Result<Source, InputError> {
        match (&self.file, self.n) {
            (Some(_), Some(_)) => Err(InputError("give either a file or --n, not both".into())),
            (Some(p), None) => Ok(Source::File(p.clone())),
            (None, Some(n)) => {
                if self.variant != 1 && self.variant != 2 {
                    return Err(InputError(format!("--variant must be 1 or 2, got {}", self.variant)));
                }
                Ok(Source::Family(n, self.variant))
            }
            (None, None) => Err(InputError("missing input: a factorization file or --n".into())),
        }
    }

    fn load(&self, fx: &Fixtures) -> Result<(Factorization, Source), InputError> {
        let src = self.source()?;
        let f = match &src {
            Source::File(p) => read_factorization(p)?,
            Source::Family(n, v) => beta_family(*n, *v, fx)?,
        };
        Ok((f, src))
    }
}

fn read_factorization(p: &PathBuf) -> Result<Factorization, InputError> {
    let text = std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
    Factorization::parse(&text).map_err(|e| InputError(format!("{}: {e}", p.display())))
}

fn big(x: &BigInt) -> Value {
    braidcover::intlinalg::big_to_json(x)
}

fn run_pi1(input: &Input, mode: &str, budget: usize, fx: &Fixtures) -> Result<Outcome, InputError> {
    let mode = match mode {
        "single" => VkMode::Single,
        "full" => VkMode::Full,
        m => return Err(InputError(format!("--mode must be single or full, got {m:?}"))),
    };
    let (f, src) = input.load(fx)?;
    let vk = vk_presentation(&f, mode);
    let t = tietze_simplify(&vk, budget);
    let ab = abelianization(&vk);
    let mut failed = false;
    let mut matches = Value::Null;
    if let Source::Family(n, v) = src {
        let printed = family_relators(n, v)?;
        let ok = mode == VkMode::Full || vk.canonical_relators() == canonical_multiset(&printed);
        matches = Value::Bool(ok);
        failed = !ok || !t.proves_infinite_cyclic();
    }
    let relators: Vec<String> = vk.relators().iter().map(|r| r.to_string()).collect();
    let mut text = format!("relators ({}):\n", relators.len());
    for r in &relators {
        text.push_str(&format!("  {r}\n"));
    }
    text.push_str(&format!(
        "simplified: {}{}\nabelianization: {ab}\n",
        t.presentation,
        if t.is_final { "" } else { "  (budget exhausted)" }
    ));
    Ok(Outcome {
        json: json!({
            "relators": relators,
            "relators_match_printed": matches,
            "simplified": t.presentation.to_string(),
            "is_final": t.is_final,
            "steps": t.steps,
            "infinite_cyclic": t.proves_infinite_cyclic(),
            "abelianization": ab.to_string(),
        }),
        text,
        failed,
    })
}

fn run_cover_form(input: &Input, fx: &Fixtures) -> Result<Outcome, InputError> {
    let (f, src) = input.load(fx)?;
    let c = cover_form(&f, fx.epsilon)?;
    let mut failed = false;
    if let Source::Family(n, v) = src {
        let det_ok = c.det().magnitude() == expected_det(n).magnitude();
        let rep_ok = c.represents_minus_two() == Some(v == 2);
        let gram_ok = v != 1 || qform::equivalent(&c.gram, &expected_gram1(n)).unwrap_or(false);
        failed = !(det_ok && rep_ok && gram_ok && c.h1.is_trivial() && c.h2_rank() == 2);
    }
    let def = qform::definiteness(&c.gram);
    let text = format!(
        "fiber: genus {}, {} boundary component(s)\nboundary map: {}\nH2 rank {}, basis {}\ngram: {} ({def})\ndet: {}\nH1: {}\nboundary H1 order: {}\nrepresents -2: {}\n",
        c.fiber.genus,
        c.fiber.boundary_components,
        c.boundary_map,
        c.h2_rank(),
        c.h2_basis,
        c.gram,
        c.det(),
        c.h1,
        c.boundary_h1_order.as_ref().map_or("unsupported".into(), |o| o.to_string()),
        c.represents_minus_two().map_or("unsupported".into(), |b| b.to_string()),
    );
    let mut json = c.to_json();
    json["definiteness"] = json!(def);
    Ok(Outcome { json, text, failed })
}

fn run_alexander(
    word: &Option<String>,
    strands: Option<usize>,
    input: &Input,
    fx: &Fixtures,
) -> Result<Outcome, InputError> {
    let mut expected = None;
    let b = match word {
        Some(w) => {
            if input.file.is_some() || input.n.is_some() {
                return Err(InputError("give either --word or a factorization, not both".into()));
            }
            // parse once without a strand bound to find the default
            let letters = BraidWord::parse(i32::MAX as usize, w)?;
            let needed = letters.letters().iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
            let m = strands.unwrap_or(needed);
            BraidWord::parse(m, w)?
        }
        None => {
            let (f, src) = input.load(fx)?;
            if let Source::Family(n, _) = src {
                expected = Some(expected_det(n));
            }
            f.product()
        }
    };
    let delta = if b.strands() >= 2 {
        alexander_of_closure(&b)?
    } else {
        braidcover::intlinalg::LaurentPoly::one()
    };
    let components = b.permutation().cycle_count();
    let det = knot_determinant(&b).ok();
    let failed = expected.is_some_and(|e| det.as_ref() != Some(&e));
    let text = format!(
        "closure of {} ({} strands): {} component(s)\nalexander: {}\ndeterminant: {}\n",
        b,
        b.strands(),
        components,
        delta,
        det.as_ref().map_or("n/a (not a knot)".into(), |d| d.to_string()),
    );
    Ok(Outcome {
        json: json!({
            "braid": b.to_text(),
            "strands": b.strands(),
            "components": components,
            "alexander": delta,
            "alexander_text": delta.to_string(),
            "determinant": det.as_ref().map(big),
        }),
        text,
        failed,
    })
}

fn run_hurwitz(
    files: &[PathBuf],
    n: Option<usize>,
    opts: HurwitzSearchOptions,
    fx: &Fixtures,
) -> Result<Outcome, InputError> {
    let (f, g) = match (files, n) {
        ([a, b], None) => (read_factorization(a)?, read_factorization(b)?),
        ([], Some(n)) => (beta_family(n, 1, fx)?, beta_family(n, 2, fx)?),
        _ => return Err(InputError("give two factorization files or --n".into())),
    };
    let outcome = hurwitz_search(&f, &g, opts)?;
    let same_product = f.product().braids_equal(&g.product())?;
    let text = match &outcome {
        HurwitzOutcome::Connected(path) => {
            let steps: Vec<String> = path.iter().map(|s| format!("{s:?}")).collect();
            format!("connected in {} step(s): {}\n", path.len(), steps.join(", "))
        }
        HurwitzOutcome::Exhausted { visited } => {
            format!("not connected within depth {} ({visited} nodes)\n", opts.depth)
        }
        HurwitzOutcome::BudgetExceeded { visited } => format!("budget exhausted after {visited} nodes\n"),
    };
    let text = format!("{text}products equal: {same_product}\n");
    Ok(Outcome {
        json: json!({ "outcome": outcome, "products_equal": same_product }),
        failed: !matches!(outcome, HurwitzOutcome::Connected(_)),
        text,
    })
}

fn run_arc_pin(n: usize, depth: usize, fx: &Fixtures) -> Result<Outcome, InputError> {
    let r = pin_arcs(n, depth, fx)?;
    let mut text = format!("n = {n}, conjugators up to length {depth}\n");
    text.push_str(&format!("a: {}\n", r.a_candidates.join(" | ")));
    text.push_str(&format!("b: {}\n", r.b_candidates.join(" | ")));
    text.push_str(&format!("c: {}\n", r.c_candidates.join(" | ")));
    for (a, b) in &r.accepted_pairs {
        text.push_str(&format!("accepted: a = {a}, b = {b}\n"));
    }
    text.push_str(&format!(
        "fixture {} matches: {}\nboundary braids equal: {}\n",
        fx.short_hash(),
        r.fixture_matches,
        r.boundary_equal
    ));
    Ok(Outcome {
        json: serde_json::to_value(&r).expect("serializable"),
        failed: !(r.fixture_matches && r.boundary_equal),
        text,
    })
}

fn run_family(ns: std::ops::Range<usize>, emit: Emit, fx: &Fixtures) -> Result<(String, bool), InputError> {
    let reports = report::family_report(ns, fx)?;
    let out = match emit {
        Emit::Json => report::to_json(&reports, fx),
        Emit::Csv => report::to_csv(&reports, fx),
        Emit::Text => report::to_text(&reports, fx),
    };
    Ok((out, report::all_passed(&reports)))
}

/// Flat two-row CSV of the top-level fields; nested values as JSON.
fn csv_of(v: &Value) -> String {
    let mut header = Vec::new();
    let mut row = Vec::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            header.push(k.clone());
            row.push(match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            });
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    w.write_record(&row).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn run(cli: &Cli) -> Result<(String, bool), InputError> {
    let fx = match &cli.fixtures {
        Some(p) => Fixtures::load(p)?,
        None => Fixtures::default(),
    };
    let outcome = match &cli.cmd {
        Cmd::Family { from, to, n } => {
            let ns = match n {
                Some(n) => *n..*n + 1,
                None => *from..to.saturating_add(1).max(*from),
            };
            return run_family(ns, cli.emit, &fx);
        }
        Cmd::Pi1 { input, mode, budget } => run_pi1(input, mode, *budget, &fx)?,
        Cmd::CoverForm { input } => run_cover_form(input, &fx)?,
        Cmd::Alexander { word, strands, input } => run_alexander(word, *strands, input, &fx)?,
        Cmd::HurwitzSearch {
            files,
            n,
            depth,
            budget,
            conjugation,
        } => {
            let opts = HurwitzSearchOptions {
                depth: *depth,
                budget: *budget,
                allow_conjugation: *conjugation,
            };
            run_hurwitz(files, *n, opts, &fx)?
        }
        Cmd::ArcPin { n, depth } => run_arc_pin(*n, *depth, &fx)?,
    };
    let out = match cli.emit {
        Emit::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
        Emit::Csv => csv_of(&outcome.json),
        Emit::Text => outcome.text,
    };
    Ok((out, !outcome.failed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
