//! Command dispatch and JSON reports for the `paradd` binary.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use paradd::conversion::{
    apply_rule, conjugate_transfer, lint_rule, parallel_add, search_rule, test_rule, verify_certificate,
    Refutation, SearchLimits,
};
use paradd::format::{parse_json, parse_rational, RuleFile, SystemFile, WordFile};
use paradd::numsystem::{
    aligned_equal, analyze, k_block, member_representation, ring_equality, value_of_word, word_value, Coverage,
    ExtremalCheck, RingEquality,
};
use paradd::{CarryCertificate, CongruenceStructure, LocalRule, NumerationSystem, PositionedWord, RingElement, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

/// Classes listed per modulus in reports unless `--limit` says otherwise.
const DEFAULT_CLASS_LIMIT: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "paradd", version, about = "Parallel addition in algebraic-integer bases")]
pub struct Cli {
    /// Root enclosure half-width, e.g. 1/1000000 or 1e-6.
    #[arg(long, global = true)]
    pub precision: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Numeration system file.
    pub system: PathBuf,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    pub system: PathBuf,
    /// Local rule file.
    pub rule: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Necessary conditions for parallel addition.
    Analyze(SystemArg),
    /// Congruence classes modulo the base and the base minus one, or `--modulus`.
    Classes {
        system: PathBuf,
        /// Modulus coordinates, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        modulus: Option<Vec<BigInt>>,
        #[arg(long, default_value_t = DEFAULT_CLASS_LIMIT)]
        limit: usize,
    },
    /// Check a rule's carry certificate window by window.
    VerifyRule(RuleArgs),
    /// Exhaustive short words, then random longer ones.
    TestRule {
        #[command(flatten)]
        files: RuleArgs,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    LintRule(RuleArgs),
    /// Look for a certified rule from A + A to A.
    SearchRule {
        system: PathBuf,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
        #[arg(long, default_value_t = 2)]
        t_max: usize,
        #[arg(long, default_value_t = 1)]
        carry_bound: u32,
        /// Also write the rule file here.
        #[arg(long)]
        rule_out: Option<PathBuf>,
    },
    /// Parallel addition of two words.
    Add {
        #[command(flatten)]
        files: RuleArgs,
        x: PathBuf,
        y: PathBuf,
    },
    /// Apply a rule to a word over its input alphabet.
    Convert {
        #[command(flatten)]
        files: RuleArgs,
        word: PathBuf,
    },
    /// Block system `(β^k, A_(k))`, and a regrouped word if given.
    Kblock {
        system: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        word: Option<PathBuf>,
    },
    /// Finite representation of a ring element with nonnegative powers.
    Member {
        system: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        element: Vec<BigInt>,
    },
    /// Decide whether every ring element has a finite representation.
    RingEq(SystemArg),
    /// Move a rule to another embedding of the same ring.
    Transfer {
        #[command(flatten)]
        files: RuleArgs,
        #[arg(long)]
        embedding: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Classes { .. } => "classes",
            Command::VerifyRule(_) => "verify-rule",
            Command::TestRule { .. } => "test-rule",
            Command::LintRule(_) => "lint-rule",
            Command::SearchRule { .. } => "search-rule",
            Command::Add { .. } => "add",
            Command::Convert { .. } => "convert",
            Command::Kblock { .. } => "kblock",
            Command::Member { .. } => "member",
            Command::RingEq(_) => "ring-eq",
            Command::Transfer { .. } => "transfer",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub exit_code: i32,
    pub details: Value,
    pub warnings: Vec<String>,
    pub timing_micros: u64,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error(transparent)]
    Core(#[from] paradd::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(paradd::Error::PrecisionExhausted) => EXIT_PRECISION,
            _ => EXIT_INVALID,
        }
    }

    fn details(&self) -> Value {
        match self {
            Failure::Io { file, message } => json!({"error": "Io", "file": file, "message": message}),
            Failure::Core(e) => {
                let kind = format!("{e:?}");
                let kind = kind.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string();
                match e {
                    paradd::Error::Parse { file, offset, .. } => {
                        json!({"error": kind, "message": e.to_string(), "file": file, "offset": offset})
                    }
                    _ => json!({"error": kind, "message": e.to_string()}),
                }
            }
        }
    }
}

struct Outcome {
    pass: bool,
    verdict: String,
    details: Value,
    warnings: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, verdict: impl Into<String>, details: Value, warnings: Vec<String>) -> Self {
        Outcome { pass, verdict: verdict.into(), details, warnings }
    }
}

/// Runs one command. Never panics on bad input; the exit code is in the report.
pub fn execute(cli: &Cli) -> Report {
    let start = Instant::now();
    let result = run(cli);
    let timing_micros = start.elapsed().as_micros() as u64;
    let (verdict, exit_code, details, warnings) = match result {
        Ok(o) => (o.verdict, if o.pass { EXIT_PASS } else { EXIT_FAIL }, o.details, o.warnings),
        Err(f) => {
            let code = f.exit_code();
            let verdict = if code == EXIT_PRECISION { "precision_exhausted" } else { "invalid_input" };
            (verdict.to_string(), code, f.details(), Vec::new())
        }
    };
    Report {
        command: cli.command.name().to_string(),
        verdict,
        exit_code,
        details,
        warnings,
        timing_micros,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn read(path: &Path) -> Result<(String, String), Failure> {
    let file = path.display().to_string();
    std::fs::read_to_string(path)
        .map(|text| (text, file.clone()))
        .map_err(|e| Failure::Io { file, message: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io { file: path.display().to_string(), message: e.to_string() })
}

fn load_system(path: &Path, cli: &Cli) -> Result<NumerationSystem, Failure> {
    let (text, file) = read(path)?;
    let f: SystemFile = parse_json(&text, &file)?;
    let precision = cli.precision.as_deref().map(parse_rational).transpose()?;
    if let Some(p) = &precision {
        if p <= &num_rational::BigRational::default() {
            return Err(paradd::Error::Invalid("precision must be positive".into()).into());
        }
    }
    Ok(f.to_system_with(precision)?)
}

fn load_rule(path: &Path) -> Result<(LocalRule, Option<CarryCertificate>), Failure> {
    let (text, file) = read(path)?;
    let f: RuleFile = parse_json(&text, &file)?;
    Ok(f.to_rule()?)
}

fn load_word(path: &Path) -> Result<PositionedWord, Failure> {
    let (text, file) = read(path)?;
    let f: WordFile = parse_json(&text, &file)?;
    Ok(f.to_word()?)
}

fn coords(e: &RingElement) -> Value {
    json!(e.coords().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn word_json(w: &PositionedWord) -> Value {
    serde_json::to_value(WordFile::from_word(w)).expect("words serialize")
}

fn value_json((v, m): &(RingElement, u32)) -> Value {
    json!({"numerator": coords(v), "base_power": m})
}

fn check_rule_ring(rule: &LocalRule, sys: &NumerationSystem) -> Result<(), Failure> {
    let d = sys.context().degree();
    for digit in rule.input_alphabet().iter().chain(rule.output_alphabet()) {
        if digit.dim() != d {
            return Err(paradd::Error::ContextMismatch { left: digit.dim(), right: d }.into());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(&load_system(&a.system, cli)?),
        Command::Classes { system, modulus, limit } => cmd_classes(&load_system(system, cli)?, modulus.as_deref(), *limit),
        Command::VerifyRule(f) => {
            let sys = load_system(&f.system, cli)?;
            let (rule, cert) = load_rule(&f.rule)?;
            check_rule_ring(&rule, &sys)?;
            let Some(cert) = cert else {
                return Err(paradd::Error::Invalid("rule file has no certificate; use test-rule".into()).into());
            };
            let v = verify_certificate(&rule, &cert, sys.context(), sys.base())?;
            Ok(verdict_outcome(&v, &rule, &sys, sys.warnings()))
        }
        Command::TestRule { files, max_len, samples, seed } => {
            let sys = load_system(&files.system, cli)?;
            let (rule, _) = load_rule(&files.rule)?;
            check_rule_ring(&rule, &sys)?;
            let v = test_rule(&rule, sys.context(), sys.base(), *max_len, *samples, *seed)?;
            let mut warnings = sys.warnings();
            if !v.is_refuted() {
                warnings.push(format!(
                    "bounded test only: words up to length {max_len} and {samples} random words"
                ));
            }
            Ok(verdict_outcome(&v, &rule, &sys, warnings))
        }
        Command::LintRule(f) => {
            let sys = load_system(&f.system, cli)?;
            let (rule, _) = load_rule(&f.rule)?;
            check_rule_ring(&rule, &sys)?;
            let report = lint_rule(&rule, &sys)?;
            let findings: Vec<Value> = report
                .findings
                .iter()
                .map(|x| json!({"kind": x.kind(), "digit": x.digit(), "value": coords(&rule.input_alphabet()[x.digit()])}))
                .collect();
            let mut warnings = sys.warnings();
            warnings.extend(report.notices.iter().cloned());
            let pass = findings.is_empty();
            Ok(Outcome::new(pass, if pass { "clean" } else { "findings" }, json!({"findings": findings}), warnings))
        }
        Command::SearchRule { system, r_max, t_max, carry_bound, rule_out } => {
            let sys = load_system(system, cli)?;
            let limits = SearchLimits { r_max: *r_max, t_max: *t_max, carry_bound: *carry_bound };
            let bounds = json!({"r_max": r_max, "t_max": t_max, "carry_bound": carry_bound});
            match search_rule(&sys, limits)? {
                Some((rule, cert)) => {
                    let file = RuleFile::from_rule(&rule, Some(&cert));
                    if let Some(path) = rule_out {
                        write(path, &(serde_json::to_string_pretty(&file).expect("rules serialize") + "\n"))?;
                    }
                    Ok(Outcome::new(
                        true,
                        "found",
                        json!({"bounds": bounds, "r": rule.memory(), "t": rule.anticipation(), "rule": file}),
                        sys.warnings(),
                    ))
                }
                None => {
                    let mut warnings = sys.warnings();
                    warnings.push("no rule within the bounds; this says nothing about larger bounds".into());
                    Ok(Outcome::new(false, "not_found", json!({"bounds": bounds}), warnings))
                }
            }
        }
        Command::Add { files, x, y } => {
            let sys = load_system(&files.system, cli)?;
            let (rule, _) = load_rule(&files.rule)?;
            check_rule_ring(&rule, &sys)?;
            let (x, y) = (load_word(x)?, load_word(y)?);
            let z = parallel_add(&rule, &sys, &x, &y)?;
            let (ctx, base) = (sys.context(), sys.base());
            let (vx, vy) = (value_of_word(&x, &sys)?, value_of_word(&y, &sys)?);
            let m = vx.1.max(vy.1);
            let shift = |(v, k): &(RingElement, u32)| ctx.product(v, &ctx.pow(base, m - k));
            let sum = (&shift(&vx) + &shift(&vy), m);
            let vz = word_value(ctx, base, rule.output_alphabet(), &z)?;
            let pass = aligned_equal(ctx, base, &sum, &vz);
            Ok(Outcome::new(
                pass,
                if pass { "sum_correct" } else { "sum_incorrect" },
                json!({"sum": word_json(&z), "expected_value": value_json(&sum), "value": value_json(&vz)}),
                sys.warnings(),
            ))
        }
        Command::Convert { files, word } => {
            let sys = load_system(&files.system, cli)?;
            let (rule, _) = load_rule(&files.rule)?;
            check_rule_ring(&rule, &sys)?;
            let w = load_word(word)?;
            let z = apply_rule(&rule, &w)?;
            let (ctx, base) = (sys.context(), sys.base());
            let vw = word_value(ctx, base, rule.input_alphabet(), &w)?;
            let vz = word_value(ctx, base, rule.output_alphabet(), &z)?;
            let pass = aligned_equal(ctx, base, &vw, &vz);
            Ok(Outcome::new(
                pass,
                if pass { "value_preserved" } else { "value_changed" },
                json!({"output": word_json(&z), "input_value": value_json(&vw), "output_value": value_json(&vz)}),
                sys.warnings(),
            ))
        }
        Command::Kblock { system, k, word } => {
            let sys = load_system(system, cli)?;
            let block = k_block(&sys, *k)?;
            let mut details = json!({"k": k, "system": SystemFile::from_system(&block.system)});
            if let Some(path) = word {
                let w = load_word(path)?;
                details["word"] = word_json(&block.block_word(&w, &sys)?);
            }
            Ok(Outcome::new(true, "ok", details, block.system.warnings()))
        }
        Command::Member { system, element } => {
            let sys = load_system(system, cli)?;
            let x = sys.context().element(element.clone())?;
            let found = member_representation(&sys, &x)?;
            let pass = found.is_some();
            Ok(Outcome::new(
                pass,
                if pass { "representable" } else { "not_representable" },
                json!({"element": coords(&x), "word": found.as_ref().map(word_json)}),
                sys.warnings(),
            ))
        }
        Command::RingEq(a) => {
            let sys = load_system(&a.system, cli)?;
            let (verdict, details) = match ring_equality(&sys)? {
                RingEquality::Equal => ("equal", json!({})),
                RingEquality::UncoveredClass(c) => ("uncovered_class", json!({"witness": coords(&c)})),
                RingEquality::Unreachable(c) => ("unreachable", json!({"witness": coords(&c)})),
            };
            Ok(Outcome::new(verdict == "equal", verdict, details, sys.warnings()))
        }
        Command::Transfer { files, embedding } => {
            let sys = load_system(&files.system, cli)?;
            let (rule, cert) = load_rule(&files.rule)?;
            check_rule_ring(&rule, &sys)?;
            let (moved_rule, moved) = conjugate_transfer(&rule, &sys, *embedding)?;
            let mut details = json!({
                "system": SystemFile::from_system(&moved),
                "rule": RuleFile::from_rule(&moved_rule, cert.as_ref()),
            });
            let mut warnings = moved.warnings();
            let pass = match &cert {
                Some(c) => {
                    let v = verify_certificate(&moved_rule, c, moved.context(), moved.base())?;
                    details["certificate"] = json!(verdict_name(&v));
                    !v.is_refuted()
                }
                None => {
                    warnings.push("rule has no certificate; the transferred rule is unverified".into());
                    true
                }
            };
            Ok(Outcome::new(pass, if pass { "transferred" } else { "refuted" }, details, warnings))
        }
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::CertifiedCorrect { .. } => "certified_correct",
        Verdict::PassedBoundedTests { .. } => "passed_bounded_tests",
        Verdict::Refuted(_) => "refuted",
    }
}

fn verdict_outcome(v: &Verdict, rule: &LocalRule, sys: &NumerationSystem, warnings: Vec<String>) -> Outcome {
    let details = match v {
        Verdict::CertifiedCorrect { windows_checked } => json!({"windows_checked": windows_checked}),
        Verdict::PassedBoundedTests { exhaustive_words, random_words } => {
            json!({"exhaustive_words": exhaustive_words.to_string(), "random_words": random_words})
        }
        Verdict::Refuted(Refutation::Window { window, table_output, certified_output }) => json!({
            "window": window,
            "table_output": coords(table_output),
            "certified_output": coords(certified_output),
        }),
        Verdict::Refuted(Refutation::ZeroCarry) => json!({"reason": "carry of the zero window is not zero"}),
        Verdict::Refuted(Refutation::Word(w)) => {
            let mut d = json!({"witness": word_json(w)});
            if let Ok(z) = apply_rule(rule, w) {
                d["converted"] = word_json(&z);
                let (ctx, base) = (sys.context(), sys.base());
                if let (Ok(a), Ok(b)) = (
                    word_value(ctx, base, rule.input_alphabet(), w),
                    word_value(ctx, base, rule.output_alphabet(), &z),
                ) {
                    d["input_value"] = value_json(&a);
                    d["output_value"] = value_json(&b);
                }
            }
            d
        }
    };
    Outcome::new(!v.is_refuted(), verdict_name(v), details, warnings)
}

fn coverage_json(c: &Coverage, limit: usize) -> Value {
    let empty: Vec<Value> = c.empty_classes().into_iter().take(limit).map(coords).collect();
    json!({
        "modulus": coords(&c.modulus),
        "class_count": c.class_count.to_string(),
        "hit": c.hit,
        "missing": c.missing().to_string(),
        "pass": c.pass(),
        "empty_classes": empty,
    })
}

fn cmd_analyze(sys: &NumerationSystem) -> Result<Outcome, Failure> {
    let r = analyze(sys)?;
    let extremal = match &r.extremal_check {
        ExtremalCheck::NotApplicable(why) => json!({"applicable": false, "reason": why}),
        ExtremalCheck::Checked { embedding_index, min_digit, max_digit, same_class, witnesses, pass } => json!({
            "applicable": true,
            "embedding_index": embedding_index,
            "min_digit": coords(&sys.alphabet()[*min_digit]),
            "max_digit": coords(&sys.alphabet()[*max_digit]),
            "same_class": same_class,
            "witnesses": witnesses.iter().map(|&i| coords(&sys.alphabet()[i])).collect::<Vec<_>>(),
            "pass": pass,
        }),
    };
    let details = json!({
        "base_min_poly": sys.base_min_poly().coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "expanding": r.expanding,
        "unit_modulus_conjugate": r.unit_modulus_conjugate,
        "positive_real_conjugate": r.positive_real_conjugate,
        "class_count_base": r.class_count_base.to_string(),
        "class_count_base_minus_one": r.class_count_base_minus_one.to_string(),
        "alphabet_size": sys.alphabet().len(),
        "lower_bound": r.lower_bound.bound.to_string(),
        "lower_bound_terms": {
            "m_at_zero": r.lower_bound.m_at_zero.to_string(),
            "m_at_one": r.lower_bound.m_at_one.to_string(),
        },
        "coverage_base": coverage_json(&r.coverage_base, 64),
        "coverage_base_minus_one": coverage_json(&r.coverage_base_minus_one, 64),
        "extremal_conditions": extremal,
    });
    let pass = r.pass();
    Ok(Outcome::new(pass, if pass { "pass" } else { "fail" }, details, r.warnings.clone()))
}

fn cmd_classes(sys: &NumerationSystem, modulus: Option<&[BigInt]>, limit: usize) -> Result<Outcome, Failure> {
    let ctx = sys.context();
    let moduli = match modulus {
        Some(m) => vec![ctx.element(m.to_vec())?],
        None => vec![sys.base().clone(), sys.base_minus_one()],
    };
    let mut listed = Vec::new();
    let mut warnings = sys.warnings();
    for m in &moduli {
        let cs = CongruenceStructure::new(ctx, m)?;
        let reps = cs.representatives_bounded(limit);
        if reps.is_none() {
            warnings.push(format!("{} classes modulo {m}; listing omitted above {limit}", cs.class_count()));
        }
        let classes: Vec<Value> = reps
            .unwrap_or_default()
            .iter()
            .map(|r| -> Result<Value, Failure> {
                let digits: Vec<Value> = sys
                    .alphabet()
                    .iter()
                    .filter_map(|a| match cs.congruent(a, r) {
                        Ok(true) => Some(Ok(coords(a))),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    })
                    .collect::<Result<_, _>>()?;
                let form: Vec<String> = cs.canonical_form(r)?.iter().map(ToString::to_string).collect();
                Ok(json!({"representative": coords(r), "canonical_form": form, "digits": digits}))
            })
            .collect::<Result<_, _>>()?;
        listed.push(json!({
            "modulus": coords(m),
            "diagonal": cs.diagonal().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "class_count": cs.class_count().to_string(),
            "classes": classes,
        }));
    }
    Ok(Outcome::new(true, "ok", json!({"moduli": listed}), warnings))
}
