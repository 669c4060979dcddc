mod operand;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use shuffle_core::algebra::LinComb;
use shuffle_core::biword::{self, Biword};
use shuffle_core::descent::{self, Columns, Cutoffs, PiRoute};
use shuffle_core::rigidity::{sh_presentation, Presentation, ShuffleBialgebra};
use shuffle_core::verify::{run_suite, SuiteReport, SUITES};
use shuffle_core::words::{self, Alphabet};
use shuffle_core::Error;

use operand::{parse_biwords, parse_words, render_biword_tensors, render_biwords, render_word_tensors, render_words};

/// Products, coproducts and idempotents of biwords and words, dimension
/// tables, invariant suites and shuffle-bialgebra presentations.
#[derive(Parser)]
#[command(name = "shuffle", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// TOML file with a `[cutoffs]` table.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(flatten)]
    cutoffs: CutoffFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CutoffFlags {
    /// Default weight for `verify`.
    #[arg(long, global = true, value_name = "N")]
    exhaustive_cutoff: Option<usize>,
    /// Largest weight for exact descent-algebra ranks.
    #[arg(long, global = true, value_name = "N")]
    rank_cutoff: Option<usize>,
    /// Largest weight for exact primitive kernels.
    #[arg(long, global = true, value_name = "N")]
    prim_cutoff: Option<usize>,
    /// Largest series coefficient.
    #[arg(long, global = true, value_name = "N")]
    series_cutoff: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two operands.
    Product {
        kind: ProductKind,
        lhs: String,
        rhs: String,
    },
    /// Coproducts of a biword combination, or deconcatenation of words.
    Coproduct { kind: CoproductKind, x: String },
    /// The idempotent `(1/n)`, or `π_{n1..nk}` for a comma-separated composition.
    Pi {
        #[arg(value_name = "N|COMPOSITION")]
        weights: String,
        #[arg(long, value_enum, default_value = "closed")]
        route: RouteArg,
    },
    /// Dimension table for weights `1..=max_n`; no column flag means all columns.
    Dims {
        max_n: usize,
        #[arg(long)]
        biwords: bool,
        #[arg(long)]
        descd: bool,
        #[arg(long)]
        prim: bool,
        #[arg(long)]
        series: bool,
    },
    /// Run an invariant suite, or `all`.
    Verify { suite: String, max_weight: Option<usize> },
    /// Test whether a biword combination lies in the weight-`n` descent algebra.
    Membership { n: usize, x: String },
    /// Primitive decomposition of a basis label of a presentation file.
    Decompose {
        file: PathBuf,
        label: String,
        /// Re-evaluate the decomposition and compare.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Check the shuffle-bialgebra axioms of a presentation file.
    Validate { file: PathBuf },
    /// Print the presentation of the shuffle algebra on an alphabet.
    ShPresentation {
        /// Letters per weight, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    WordPrec,
    WordSucc,
    Shuffle,
    BiwordPrec,
    BiwordSucc,
    Star,
    Internal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoproductKind {
    Prec,
    Succ,
    Full,
    Reduced,
    Deconcat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Closed,
    Alternating,
    Recursive,
    All,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    cutoffs: Cutoffs,
}

/// A command failure with its exit code.
enum Failure {
    /// Verification failed; the report has already been printed.
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parse errors carry the operand so the position can be pointed at.
fn operand_error(input: &str, e: Error) -> Failure {
    match &e {
        Error::Parse { position, .. } => {
            let col = input[..(*position).min(input.len())].chars().count();
            Failure::Usage(format!("{}\n  {}\n  {}^", e, input, " ".repeat(col)))
        }
        _ => Failure::Usage(e.to_string()),
    }
}

fn load_cutoffs(cli: &Cli) -> std::result::Result<Cutoffs, Failure> {
    let mut c = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            toml::from_str::<ConfigFile>(&text)
                .map_err(|e| Failure::Usage(format!("bad config {}: {}", path.display(), e)))?
                .cutoffs
        }
        None => Cutoffs::default(),
    };
    let f = &cli.cutoffs;
    c.exhaustive = f.exhaustive_cutoff.unwrap_or(c.exhaustive);
    c.rank = f.rank_cutoff.unwrap_or(c.rank);
    c.prim = f.prim_cutoff.unwrap_or(c.prim);
    c.series = f.series_cutoff.unwrap_or(c.series);
    Ok(c)
}

fn emit(json_mode: bool, text: impl AsRef<str>, value: impl FnOnce() -> Value) {
    if json_mode {
        println!(
            "{}",
            serde_json::to_string_pretty(&value()).expect("JSON values serialize")
        );
    } else {
        println!("{}", text.as_ref());
    }
}

fn product(json_mode: bool, kind: ProductKind, lhs: &str, rhs: &str) -> Outcome {
    let kind_name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    match kind {
        ProductKind::WordPrec | ProductKind::WordSucc | ProductKind::Shuffle => {
            let x = parse_words(lhs).map_err(|e| operand_error(lhs, e))?;
            let y = parse_words(rhs).map_err(|e| operand_error(rhs, e))?;
            let r = match kind {
                ProductKind::WordPrec => words::prec(&x, &y),
                ProductKind::WordSucc => words::succ(&x, &y),
                _ => words::shuffle(&x, &y),
            };
            emit(
                json_mode,
                render_words(&r),
                || json!({ "product": kind_name, "result": r.to_json(), "rendered": render_words(&r) }),
            );
        }
        _ => {
            let (x, sx) = parse_biwords(lhs).map_err(|e| operand_error(lhs, e))?;
            let (y, sy) = parse_biwords(rhs).map_err(|e| operand_error(rhs, e))?;
            let style = if x.keys().all(Biword::is_unit) { sy } else { sx };
            let r = match kind {
                ProductKind::BiwordPrec => biword::prec(&x, &y),
                ProductKind::BiwordSucc => biword::succ(&x, &y),
                ProductKind::Star => biword::star(&x, &y),
                _ => biword::compose(&x, &y),
            };
            let text = render_biwords(&r, style);
            emit(
                json_mode,
                &text,
                || json!({ "product": kind_name, "result": r.to_json(), "rendered": text }),
            );
        }
    }
    Ok(())
}

fn coproduct(json_mode: bool, kind: CoproductKind, input: &str) -> Outcome {
    let kind_name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    if let CoproductKind::Deconcat = kind {
        let x = parse_words(input).map_err(|e| operand_error(input, e))?;
        let r = words::coproduct(&x);
        let text = render_word_tensors(&r);
        emit(
            json_mode,
            &text,
            || json!({ "coproduct": kind_name, "result": r.to_json(), "rendered": text }),
        );
        return Ok(());
    }
    let (x, style) = parse_biwords(input).map_err(|e| operand_error(input, e))?;
    let r = match kind {
        CoproductKind::Prec => biword::delta_prec(&x),
        CoproductKind::Succ => biword::delta_succ(&x),
        CoproductKind::Full => biword::hopf_coproduct(&x),
        _ => biword::delta_reduced(&x),
    };
    let text = render_biword_tensors(&r, style);
    emit(
        json_mode,
        &text,
        || json!({ "coproduct": kind_name, "result": r.to_json(), "rendered": text }),
    );
    Ok(())
}

fn pi(json_mode: bool, arg: &str, route: RouteArg) -> Outcome {
    let parts: Vec<usize> = arg
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| {
            Failure::Usage(format!(
                "expected a weight or a comma-separated composition, got `{}`",
                arg
            ))
        })?;
    if parts.len() > 1 {
        if route != RouteArg::Closed {
            return Err(Failure::Usage("--route applies to a single weight only".into()));
        }
        let r = descent::pi_composite(&parts)?;
        emit(
            json_mode,
            r.to_string(),
            || json!({ "composition": parts, "result": r.to_json() }),
        );
        return Ok(());
    }
    let n = parts[0];
    let routes: Vec<(&str, PiRoute)> = match route {
        RouteArg::Closed => vec![("closed", PiRoute::Closed)],
        RouteArg::Alternating => vec![("alternating", PiRoute::Alternating)],
        RouteArg::Recursive => vec![("recursive", PiRoute::Recursive)],
        RouteArg::All => vec![
            ("closed", PiRoute::Closed),
            ("alternating", PiRoute::Alternating),
            ("recursive", PiRoute::Recursive),
        ],
    };
    let mut values = Vec::new();
    for (name, r) in &routes {
        values.push((*name, descent::pi_n(n, *r)?));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    if json_mode {
        let per_route: serde_json::Map<String, Value> =
            values.iter().map(|(name, v)| (name.to_string(), v.to_json())).collect();
        emit(true, "", || json!({ "n": n, "routes": per_route, "agree": agree }));
    } else if agree {
        println!("{}", values[0].1);
    } else {
        for (name, v) in &values {
            println!("{}: {}", name, v);
        }
        println!("routes disagree");
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn dims(json_mode: bool, max_n: usize, flags: [bool; 4], cutoffs: &Cutoffs) -> Outcome {
    let [biwords, descd, prim, series] = flags;
    let all = !flags.iter().any(|&f| f);
    let strict = |on: bool, cutoff: usize| -> Outcome {
        if on && max_n > cutoff {
            return Err(Error::CutoffExceeded {
                requested: max_n,
                cutoff,
            }
            .into());
        }
        Ok(())
    };
    strict(biwords, cutoffs.rank)?;
    strict(descd, cutoffs.rank)?;
    strict(prim, cutoffs.prim)?;
    let columns = Columns {
        biwords: all || biwords,
        descd: all || descd,
        prim: all || prim,
    };
    let report = descent::dimension_report_columns(max_n, cutoffs, columns)?;
    if json_mode {
        emit(true, "", || report.to_json());
    } else {
        let mut header = vec!["n"];
        if all || biwords {
            header.push("biwords");
        }
        if all || descd {
            header.push("descd");
        }
        if all || prim {
            header.push("prim");
        }
        if all || series {
            header.extend(["R(x)", "descd(x)", "catalan", "P(x)"]);
        }
        let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
        for r in &report.rows {
            let mut row = vec![r.n.to_string()];
            if all || biwords {
                row.push(cell(r.biwords));
            }
            if all || descd {
                row.push(cell(r.descd_rank));
            }
            if all || prim {
                row.push(cell(r.prim_full));
            }
            if all || series {
                row.extend([
                    r.r_series.to_string(),
                    r.descd_closed.to_string(),
                    r.descd_catalan.to_string(),
                    r.p_series.to_string(),
                ]);
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:>w$}", c, w = w))
                .collect();
            println!("{}", line.join("  "));
        }
        for flag in &report.flags {
            println!("FLAG {}", flag);
        }
    }
    if report.is_consistent() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(json_mode: bool, suite: &str, max_weight: Option<usize>, cutoffs: &Cutoffs) -> Outcome {
    let weight = max_weight.unwrap_or(cutoffs.exhaustive);
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Usage(format!(
            "unknown suite `{}` (expected one of {}, all)",
            suite,
            SUITES.join(", ")
        )));
    };
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || run_suite(n, weight))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect::<shuffle_core::Result<_>>()
    })?;
    let ok = reports.iter().all(SuiteReport::passed);
    if json_mode {
        let list: Vec<Value> = reports.iter().map(SuiteReport::to_json).collect();
        emit(true, "", || json!({ "passed": ok, "suites": list }));
    } else {
        for r in &reports {
            println!(
                "{} {} (weight {}, {} checks, {} failures)",
                if r.passed() { "PASS" } else { "FAIL" },
                r.name,
                r.max_weight,
                r.checks,
                r.failures.len()
            );
            for f in r.failures.iter().take(10) {
                println!("  {}", f);
            }
            if r.failures.len() > 10 {
                println!("  ... {} more", r.failures.len() - 10);
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn membership(json_mode: bool, n: usize, input: &str, cutoffs: &Cutoffs) -> Outcome {
    if n > cutoffs.rank {
        return Err(Error::CutoffExceeded {
            requested: n,
            cutoff: cutoffs.rank,
        }
        .into());
    }
    let (x, _) = parse_biwords(input).map_err(|e| operand_error(input, e))?;
    let member = descent::descd_membership(&x, n)?;
    emit(
        json_mode,
        if member { "member" } else { "not a member" },
        || json!({ "n": n, "input": x.to_json(), "member": member }),
    );
    Ok(())
}

fn read_presentation(path: &Path) -> std::result::Result<Presentation, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(Presentation::from_json(&text)?)
}

fn print_violations(json_mode: bool, pres: &Presentation, extra: Value) {
    let violations = pres.validate();
    if json_mode {
        let mut v = json!({ "valid": violations.is_empty(), "violations": violations });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        emit(true, "", || v);
    } else if violations.is_empty() {
        println!("valid");
    } else {
        println!("{} violation(s)", violations.len());
        for v in &violations {
            println!("  {}", v);
        }
    }
}

fn validate(json_mode: bool, path: &Path) -> Outcome {
    let pres = read_presentation(path)?;
    let ok = pres.validate().is_empty();
    print_violations(json_mode, &pres, json!({}));
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn decompose(json_mode: bool, path: &Path, label: &str, roundtrip: bool) -> Outcome {
    let pres = read_presentation(path)?;
    if pres.elem(label).is_none() {
        return Err(Failure::Usage(format!("unknown label `{}`", label)));
    }
    if !pres.validate().is_empty() {
        let attempt = ShuffleBialgebra::new_unchecked(pres.clone()).primitive_decomposition(label);
        let rigidity = match &attempt {
            Ok(d) => format!("decomposition without validation: {}", d),
            Err(e) => e.to_string(),
        };
        print_violations(json_mode, &pres, json!({ "rigidity": rigidity }));
        if !json_mode {
            println!("{}", rigidity);
        }
        return Err(Failure::Verification);
    }
    let alg = ShuffleBialgebra::new(pres)?;
    let d = match alg.primitive_decomposition(label) {
        Ok(d) => d,
        Err(e @ Error::RigidityFailure { .. }) => {
            emit(
                json_mode,
                e.to_string(),
                || json!({ "label": label, "error": e.to_string() }),
            );
            return Err(Failure::Verification);
        }
        Err(e) => return Err(e.into()),
    };
    let back = alg.evaluate_decomposition(&d);
    let holds = alg.presentation().elem(label).map(LinComb::basis) == Some(back.clone());
    if json_mode {
        let mut v = d.to_json();
        if roundtrip {
            v["roundtrip"] = json!(holds);
        }
        emit(true, "", || v);
    } else {
        println!("{}", d);
        if roundtrip {
            if holds {
                println!("roundtrip ok");
            } else {
                println!("roundtrip failed: evaluates to {}", alg.presentation().render(&back));
            }
        }
    }
    if roundtrip && !holds {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn sh(sizes: Vec<usize>, max_weight: usize) -> Outcome {
    if max_weight == 0 {
        return Err(Failure::Usage("--max-weight must be positive".into()));
    }
    let p = sh_presentation(&Alphabet::new(sizes), max_weight);
    emit(true, "", || p.to_json());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let cutoffs = load_cutoffs(&cli)?;
    let j = cli.json;
    match cli.command {
        Command::Product { kind, lhs, rhs } => product(j, kind, &lhs, &rhs),
        Command::Coproduct { kind, x } => coproduct(j, kind, &x),
        Command::Pi { weights, route } => pi(j, &weights, route),
        Command::Dims {
            max_n,
            biwords,
            descd,
            prim,
            series,
        } => dims(j, max_n, [biwords, descd, prim, series], &cutoffs),
        Command::Verify { suite, max_weight } => verify(j, &suite, max_weight, &cutoffs),
        Command::Membership { n, x } => membership(j, n, &x, &cutoffs),
        Command::Decompose { file, label, roundtrip } => decompose(j, &file, &label, roundtrip),
        Command::Validate { file } => validate(j, &file),
        Command::ShPresentation { sizes, max_weight } => sh(sizes, max_weight),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
