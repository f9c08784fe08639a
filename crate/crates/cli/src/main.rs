//! `lorentz`: exact checkers, mixed volumes, fuzz suites and reproductions
//! behind one command line. Reports are JSON; every rational is a string.
//!
//! Exit codes: 0 when every checked inequality holds (or a computation
//! succeeds), 1 when a violation is found, 2 on malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lorentz_core::convgeom::{mixed_volume, volume_polynomial, MixedVolumeSpec};
use lorentz_core::harness::{reproduce, run_suite, REPRODUCTIONS, SUITES};
use lorentz_core::ineq::{af_form_check, pr_check, rkt_sweep, supermodularity_check, RktConstant, Sweep};
use lorentz_core::io::{
    self, array, get, object, parse_ground_set, parse_instance, parse_partition, parse_poly, parse_sym_matrix,
    parse_valuation, poly_to_json, polytopes, rational, uint, vectors, Instance, Mode,
};
use lorentz_core::lorentz::{c_rayleigh_check, inertia, is_lorentzian, lorentzian_rayleigh_constant};
use lorentz_core::matroid::{check_polymatroid, RankOracle};
use lorentz_core::rational::fmt_rat;
use lorentz_core::schurmix::{
    derived_schur, md_hodge_form, mixed_discriminant_with_multiplicities, schur, schur_af_check, schur_valuation,
};
use lorentz_core::{Error, HomPoly, Rat, Verdict};

/// Environment variable fixing the worker-pool size.
const WORKERS_ENV: &str = "LORENTZ_WORKERS";

#[derive(Parser)]
#[command(name = "lorentz", version, about = "Exact checkers for Lorentzian polynomials and mixed volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for fuzz streams and sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of fuzz trials.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Splitting sweep for rKT checks: `full`, `auto` or `sample:N`.
    #[arg(long, global = true, value_parser = parse_sweep_arg)]
    sweep: Option<SweepArg>,
    /// Wall-clock budget for fuzz runs; trials not started in time are skipped.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
enum SweepArg {
    Full,
    Auto,
    Sample(usize),
}

fn parse_sweep_arg(s: &str) -> Result<SweepArg, String> {
    match s {
        "full" => Ok(SweepArg::Full),
        "auto" => Ok(SweepArg::Auto),
        _ => s
            .strip_prefix("sample:")
            .and_then(|n| n.parse().ok())
            .filter(|&n: &usize| n > 0)
            .map(SweepArg::Sample)
            .ok_or_else(|| format!("expected full, auto or sample:N with N >= 1, got `{s}`")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a polynomial is Lorentzian.
    CheckLorentzian { input: PathBuf },
    /// c-Rayleigh check at the given points; `c` defaults to 2(1 - 1/d).
    CheckRayleigh {
        input: PathBuf,
        #[arg(long)]
        c: Option<String>,
    },
    /// Reverse Khovanskii-Teissier inequality over (beta, gamma) splittings.
    CheckRkt {
        input: PathBuf,
        /// Use the conjectured optimal constant instead of the proven one.
        #[arg(long)]
        optimal: bool,
    },
    /// Plunnecke-Ruzsa inequality on triples.
    CheckPr { input: PathBuf },
    /// Higher-order supermodularity on triples.
    CheckSupermod { input: PathBuf },
    /// Hodge-index form inequality for the polarization.
    CheckAfForm { input: PathBuf },
    /// Mixed volume of bodies with multiplicities.
    MixedVolume { input: PathBuf },
    /// Volume polynomial of a list of bodies.
    VolumePoly { input: PathBuf },
    /// Schur polynomial of a partition.
    Schur { input: PathBuf },
    /// Derived Schur polynomial of a partition.
    DerivedSchur {
        input: PathBuf,
        #[arg(long)]
        index: u32,
    },
    /// Mixed discriminant, and optionally the inertia of the Hodge form.
    MixedDisc { input: PathBuf },
    /// Alexandrov-Fenchel inequality for a Schur-type valuation.
    SchurAf { input: PathBuf },
    /// Polymatroid axioms for the numerical-dimension rank function.
    Polymatroid { input: PathBuf },
    /// Run a property suite over the seeded fuzz corpus.
    Fuzz { suite: String },
    /// Reproduce a named example.
    Reproduce { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLorentzian { .. } => "check-lorentzian",
            Command::CheckRayleigh { .. } => "check-rayleigh",
            Command::CheckRkt { .. } => "check-rkt",
            Command::CheckPr { .. } => "check-pr",
            Command::CheckSupermod { .. } => "check-supermod",
            Command::CheckAfForm { .. } => "check-af-form",
            Command::MixedVolume { .. } => "mixed-volume",
            Command::VolumePoly { .. } => "volume-poly",
            Command::Schur { .. } => "schur",
            Command::DerivedSchur { .. } => "derived-schur",
            Command::MixedDisc { .. } => "mixed-disc",
            Command::SchurAf { .. } => "schur-af",
            Command::Polymatroid { .. } => "polymatroid",
            Command::Fuzz { .. } => "fuzz",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

/// What a command produced: the report body and whether it found a violation.
struct Outcome {
    result: Value,
    violation: bool,
    header: Value,
}

impl Outcome {
    fn verdict(v: &Verdict) -> Self {
        Outcome { result: v.to_json(), violation: !v.holds, header: json!({}) }
    }

    fn computed(result: Value) -> Self {
        Outcome { result, violation: false, header: json!({}) }
    }
}

/// Input documents read so far, with their digests.
#[derive(Default)]
struct Inputs {
    digests: Vec<Value>,
}

impl Inputs {
    fn load(&mut self, path: &Path) -> Result<Value, Error> {
        let bytes = std::fs::read(path).map_err(|e| Error::input(format!("{}: cannot read: {e}", path.display())))?;
        self.digests.push(json!({
            "path": path.display().to_string(),
            "sha256": hex::encode(Sha256::digest(&bytes)),
        }));
        serde_json::from_slice(&bytes).map_err(|e| Error::input(format!("{}: malformed JSON: {e}", path.display())))
    }
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

/// A bare polynomial document or one wrapped as `{"poly": ...}`.
fn poly_document(v: &Value) -> Result<HomPoly, Error> {
    match v.get("poly") {
        Some(p) => parse_poly(p, "poly"),
        None => parse_poly(v, "poly"),
    }
}

fn sweep_from(arg: Option<SweepArg>, seed: u64, fallback: Sweep) -> Sweep {
    match arg {
        None => fallback,
        Some(SweepArg::Full) => Sweep::Full,
        Some(SweepArg::Auto) => Sweep::Auto { seed },
        Some(SweepArg::Sample(samples)) => Sweep::Sample { samples, seed },
    }
}

fn sweep_json(s: &Sweep) -> Value {
    match s {
        Sweep::Full => json!("full"),
        Sweep::Auto { seed } => json!({"auto": {"seed": seed}}),
        Sweep::Sample { samples, seed } => json!({"samples": samples, "seed": seed}),
    }
}

type TripleCheck = fn(&HomPoly, &[Rat], &[Rat], &[Rat]) -> lorentz_core::Result<Verdict>;

fn triple_checks(inst: &Instance, check: TripleCheck) -> Result<Outcome, Error> {
    let mut verdicts = Vec::new();
    let mut violations = 0u64;
    for t in &inst.points {
        let v = check(&inst.poly, &t[0], &t[1], &t[2])?;
        violations += u64::from(!v.holds);
        verdicts.push(v.to_json());
    }
    Ok(Outcome {
        result: json!({"mode": inst.mode.name(), "checked": verdicts.len(), "violations": violations, "verdicts": verdicts}),
        violation: violations > 0,
        header: json!({}),
    })
}

fn instance(inputs: &mut Inputs, path: &Path, default: Mode, allowed: &[Mode]) -> Result<Instance, Error> {
    let inst = parse_instance(&inputs.load(path)?, Some(default))?;
    if !allowed.contains(&inst.mode) {
        return Err(Error::input(format!("mode: `{}` does not fit this command", inst.mode.name())));
    }
    Ok(inst)
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, Error> {
    match &cli.command {
        Command::CheckLorentzian { input } => {
            let f = poly_document(&inputs.load(input)?)?;
            Ok(Outcome::verdict(&is_lorentzian(&f)))
        }
        Command::CheckRayleigh { input, c } => {
            let doc = inputs.load(input)?;
            let f = poly_document(&doc)?;
            let obj = object(&doc, "document")?;
            let points = vectors(get(obj, "points", "")?, "points")?;
            let c = match (c, obj.get("c")) {
                (Some(s), _) => rational(&json!(s), "--c")?,
                (None, Some(v)) => rational(v, "c")?,
                (None, None) => lorentzian_rayleigh_constant(f.degree()),
            };
            let v = c_rayleigh_check(&f, &c, &points)?;
            let mut out = Outcome::verdict(&v);
            out.result["c"] = json!(fmt_rat(&c));
            Ok(out)
        }
        Command::CheckRkt { input, optimal } => {
            let default = if *optimal { Mode::RktOptimal } else { Mode::Rkt };
            let inst = instance(inputs, input, default, &[Mode::Rkt, Mode::RktOptimal])?;
            let which = if *optimal || inst.mode == Mode::RktOptimal { RktConstant::Optimal } else { RktConstant::Proven };
            let sweep = sweep_from(cli.sweep, cli.seed, inst.sweep);
            let points: Vec<_> = inst.points.iter().map(|p| p[0].clone()).collect();
            let rep = rkt_sweep(&inst.poly, &points, which, sweep)?;
            Ok(Outcome {
                result: json!({
                    "constant": if which == RktConstant::Optimal { "optimal" } else { "proven" },
                    "sweep": sweep_json(&sweep),
                    "sampled": rep.sampled,
                    "checked": rep.checked,
                    "violations": rep.violations,
                    "verdict": rep.verdict.to_json(),
                }),
                violation: !rep.verdict.holds,
                header: json!({}),
            })
        }
        Command::CheckPr { input } => triple_checks(&instance(inputs, input, Mode::Pr, &[Mode::Pr])?, pr_check),
        Command::CheckSupermod { input } => {
            triple_checks(&instance(inputs, input, Mode::Supermod, &[Mode::Supermod])?, supermodularity_check)
        }
        Command::CheckAfForm { input } => {
            let inst = instance(inputs, input, Mode::AfForm, &[Mode::AfForm])?;
            let mut verdicts = Vec::new();
            let mut violations = 0u64;
            for vs in &inst.points {
                let v = af_form_check(&inst.poly, vs)?;
                violations += u64::from(!v.holds);
                verdicts.push(v.to_json());
            }
            Ok(Outcome {
                result: json!({"checked": verdicts.len(), "violations": violations, "verdicts": verdicts}),
                violation: violations > 0,
                header: json!({}),
            })
        }
        Command::MixedVolume { input } => {
            let doc = inputs.load(input)?;
            let obj = object(&doc, "document")?;
            let bodies = polytopes(get(obj, "bodies", "")?, "bodies", base_dir(input))?;
            let mults: Vec<u32> = array(get(obj, "multiplicities", "")?, "multiplicities")?
                .iter()
                .enumerate()
                .map(|(i, m)| uint(m, &format!("multiplicities[{i}]")).map(|m| m as u32))
                .collect::<Result<_, _>>()?;
            let spec = MixedVolumeSpec::new(bodies, mults)?;
            Ok(Outcome::computed(json!({"mixed_volume": fmt_rat(&mixed_volume(&spec)?)})))
        }
        Command::VolumePoly { input } => {
            let doc = inputs.load(input)?;
            let obj = object(&doc, "document")?;
            let bodies = polytopes(get(obj, "bodies", "")?, "bodies", base_dir(input))?;
            let f = volume_polynomial(&bodies)?;
            Ok(Outcome::computed(json!({"volume_polynomial": poly_to_json(&f), "display": f.to_string()})))
        }
        Command::Schur { input } => {
            let lambda = parse_partition(&inputs.load(input)?, "partition")?;
            let s = schur(&lambda, lambda.e())?;
            Ok(Outcome::computed(json!({
                "partition": lambda.to_json(),
                "schur": poly_to_json(&s),
                "display": s.to_string(),
            })))
        }
        Command::DerivedSchur { input, index } => {
            let lambda = parse_partition(&inputs.load(input)?, "partition")?;
            let s = derived_schur(&lambda, lambda.e(), *index)?;
            Ok(Outcome::computed(json!({
                "partition": lambda.to_json(),
                "index": index,
                "derived_schur": poly_to_json(&s),
                "display": s.to_string(),
            })))
        }
        Command::MixedDisc { input } => mixed_disc(&inputs.load(input)?),
        Command::SchurAf { input } => {
            let doc = inputs.load(input)?;
            let (spec, m, n) = parse_valuation(&doc, base_dir(input))?;
            let v = schur_af_check(&spec, &m, &n)?;
            let mut out = Outcome::verdict(&v);
            out.result["theta_MN"] = json!(fmt_rat(&schur_valuation(&spec, &m, &n)?));
            Ok(out)
        }
        Command::Polymatroid { input } => {
            let doc = inputs.load(input)?;
            let ground = parse_ground_set(&doc, "ground", base_dir(input))?;
            let mut oracle = RankOracle::new(ground);
            let v = check_polymatroid(&mut oracle)?;
            let ranks = oracle.all_ranks()?;
            let mut out = Outcome::verdict(&v);
            out.result["ranks"] = json!(ranks);
            Ok(out)
        }
        Command::Fuzz { suite } => {
            let deadline = cli.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
            let rep = run_suite(suite, cli.seed, cli.trials, deadline)?;
            Ok(Outcome {
                result: rep.to_json(),
                violation: rep.violations > 0,
                header: json!({"suites": SUITES}),
            })
        }
        Command::Reproduce { name } => {
            let r = reproduce(name)?;
            Ok(Outcome {
                violation: !r.confirmed,
                header: json!({"expected-violation": r.expected_violation, "reproductions": REPRODUCTIONS}),
                result: r.to_json(),
            })
        }
    }
}

/// `{"matrices": [...], "multiplicities"?: [...], "hodge"?: {"hypotheses", "W", "m"}}`.
fn mixed_disc(doc: &Value) -> Result<Outcome, Error> {
    let obj = object(doc, "document")?;
    let mats = array(get(obj, "matrices", "")?, "matrices")?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_sym_matrix(m, &format!("matrices[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mults: Vec<u32> = match obj.get("multiplicities") {
        Some(v) => array(v, "multiplicities")?
            .iter()
            .enumerate()
            .map(|(i, m)| uint(m, &format!("multiplicities[{i}]")).map(|m| m as u32))
            .collect::<Result<_, _>>()?,
        None => vec![1; mats.len()],
    };
    let refs: Vec<_> = mats.iter().collect();
    let d = mixed_discriminant_with_multiplicities(&refs, &mults)?;
    let mut result = json!({"mixed_discriminant": fmt_rat(&d)});
    if let Some(h) = obj.get("hodge") {
        let ho = object(h, "hodge")?;
        let hyps = array(get(ho, "hypotheses", "hodge")?, "hodge.hypotheses")?
            .iter()
            .enumerate()
            .map(|(i, m)| parse_sym_matrix(m, &format!("hodge.hypotheses[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let w = parse_sym_matrix(get(ho, "W", "hodge")?, "hodge.W")?;
        let m = uint(get(ho, "m", "hodge")?, "hodge.m")? as usize;
        let g = md_hodge_form(&hyps, &w, m)?;
        result["hodge_form"] = io::sym_matrix_to_json(&g);
        result["inertia"] = inertia(&g).to_json();
    }
    Ok(Outcome::computed(result))
}

fn config_json(cli: &Cli) -> Value {
    match &cli.command {
        Command::Fuzz { suite } => json!({
            "suite": suite,
            "seed": cli.seed,
            "trials": cli.trials,
            "budget_ms": cli.budget_ms,
        }),
        Command::CheckRkt { optimal, .. } => json!({"seed": cli.seed, "optimal": optimal}),
        _ => json!({}),
    }
}

fn workers() -> Result<Option<usize>, String> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => s
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| format!("{WORKERS_ENV}: expected a positive integer, got `{s}`")),
    }
}

fn emit(report: &Value, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: cannot write: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    match workers() {
        Ok(Some(n)) => pool = pool.num_threads(n),
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = pool.install(|| run(&cli, &mut inputs));
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let code: u8 = if outcome.violation { 1 } else { 0 };
    let mut report = json!({
        "command": cli.command.name(),
        "config": config_json(&cli),
        "inputs": inputs.digests,
        "exit_code": code,
        "result": outcome.result,
        "timing": {"elapsed_us": elapsed.as_micros() as u64},
    });
    if let Value::Object(h) = outcome.header {
        for (k, v) in h {
            report[k] = v;
        }
    }
    if let Err(msg) = emit(&report, cli.out.as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if cli.out.is_some() {
        let status = if code == 0 { "ok" } else { "violation" };
        println!("{}: {status} (exit {code})", cli.command.name());
    }
    ExitCode::from(code)
}
