use std::fmt::Write as _;

use serde_json::{json, Value};
use walgebra_core::diffpoly::monomials_of_weight;
use walgebra_core::lambda::LambdaPoly;
use walgebra_core::liealg::{check_condition_f, default_y, parse_y, render_elem, triple_from_spec, FReport};
use walgebra_core::loopgeo::{verify_lemma_3_1_all, verify_lemma_4_2, verify_main2, IdentityReport, LoopSetup};
use walgebra_core::pva::{affine_pva, Pva};
use walgebra_core::sample;
use walgebra_core::screening::{hamiltonians, Screening};
use walgebra_core::{grade, named_algebra, AdxGrading, Error, HalfInt, RatFunc, SimpleLieAlgebra, Sl2Triple, Q};

use crate::args::{Cli, Command, Job, Suite};

pub const SCHEMA_VERSION: u32 = 1;

pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedType(_)
            | Error::InvalidAlgebra(_)
            | Error::InvalidNilpotent(_)
            | Error::InvalidY(_)
            | Error::UnknownGenerator(_)
            | Error::Parse(_)
            | Error::Invalid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let job = &cli.job;
    let (name, mut out) = match &cli.command {
        Command::Algebra => ("algebra", algebra(job)?),
        Command::Wgen => ("wgen", wgen(job)?),
        Command::Bracket { left, right } => ("bracket", bracket(job, left, right)?),
        Command::Verify { suite } => {
            let out = match suite {
                Suite::Axioms => verify_axioms(job)?,
                Suite::Geometry => verify_geometry(job)?,
                Suite::Hierarchy => hierarchy(job)?,
            };
            ("verify", out)
        }
        Command::Hier => {
            let mut out = hierarchy(job)?;
            out.passed = true;
            ("hier", out)
        }
    };
    if let Value::Object(map) = &mut out.json {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(name));
    }
    Ok(out)
}

fn parse_level(text: &str) -> CliResult<RatFunc> {
    let level = RatFunc::parse(text, "k").map_err(|e| CliError::Usage(format!("bad level '{text}': {e}")))?;
    if level.num().is_zero() {
        return Err(CliError::Usage("level must be nonzero".into()));
    }
    Ok(level)
}

fn parse_weight(text: &str) -> CliResult<HalfInt> {
    let w: HalfInt = text.trim().parse().map_err(|_| CliError::Usage(format!("bad weight '{text}'")))?;
    if w < HalfInt::ZERO {
        return Err(CliError::Usage("weights must be nonnegative".into()));
    }
    Ok(w)
}

struct Setting {
    alg: SimpleLieAlgebra,
    triple: Sl2Triple,
    grading: AdxGrading,
}

fn setting(job: &Job) -> CliResult<Setting> {
    let alg = SimpleLieAlgebra::build(&job.type_label)?;
    let triple = triple_from_spec(&alg, &job.nilpotent)?;
    let grading = grade(&alg, &triple)?;
    Ok(Setting { alg, triple, grading })
}

fn choose_y(job: &Job, s: &Setting) -> CliResult<Vec<Q>> {
    if job.y.trim() == "default" {
        Ok(default_y(&s.alg, &s.triple, &s.grading)?)
    } else {
        Ok(parse_y(s.alg.lie(), &job.y)?)
    }
}

fn labels(s: &Setting, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&a| s.alg.lie().label(a).to_string()).collect()
}

fn f_json(r: &FReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn algebra(job: &Job) -> CliResult<Outcome> {
    let s = setting(job)?;
    let lie = s.alg.lie();
    let y = choose_y(job, &s)?;
    let report = check_condition_f(&s.alg, &s.triple, &s.grading, &y)?;
    let pieces: Vec<Value> = s
        .grading
        .pieces
        .iter()
        .map(|(j, idx)| json!({"degree": j.to_string(), "basis": labels(&s, idx)}))
        .collect();
    let json = json!({
        "type": s.alg.cartan_type().map(|c| c.to_string()),
        "dim": lie.dim(),
        "rank": s.alg.rank(),
        "triple": {
            "kind": s.triple.kind,
            "e": render_elem(lie, &s.triple.e),
            "h": render_elem(lie, &s.triple.h),
            "f": render_elem(lie, &s.triple.f),
        },
        "depth": s.grading.depth.to_string(),
        "integral": s.grading.integral,
        "pieces": pieces,
        "pi": labels(&s, &s.grading.pi),
        "pi_half": labels(&s, &s.grading.pi_half),
        "pi_1": labels(&s, &s.grading.pi_1),
        "y": render_elem(lie, &y),
        "condition_f": f_json(&report),
    });
    let mut text = String::new();
    let _ = writeln!(text, "algebra {} (dim {}, rank {})", job.type_label, lie.dim(), s.alg.rank());
    let _ = writeln!(text, "triple {}: f = {}", s.triple.kind, render_elem(lie, &s.triple.f));
    let _ = writeln!(text, "depth d = {}{}", s.grading.depth, if s.grading.integral { "" } else { " (half-integral grading)" });
    for (j, idx) in &s.grading.pieces {
        let _ = writeln!(text, "  g_{j}: {}", labels(&s, idx).join(" "));
    }
    let _ = writeln!(text, "Pi = {{{}}}", labels(&s, &s.grading.pi).join(", "));
    let _ = writeln!(text, "y = {}", render_elem(lie, &y));
    let _ = writeln!(text, "minimal polynomial of ad s: {}", report.minimal_polynomial);
    let mark = |b: bool| if b { "pass" } else { "fail" };
    let _ = writeln!(text, "(F1) {}  (F2) {}  (F3) {}", mark(report.f1), mark(report.f2), mark(report.f3));
    let _ = writeln!(text, "condition (F): {}", mark(report.holds()));
    Ok(Outcome { json, text, passed: true })
}

fn screening_for(job: &Job, s: &Setting) -> CliResult<Screening> {
    Ok(Screening::new(&s.alg, &s.triple, &s.grading, parse_level(&job.level)?)?)
}

fn check_budget(job: &Job, sc: &Screening, weight_max: HalfInt) -> CliResult<()> {
    let vars = sc.vars();
    let mut w = HalfInt::ZERO;
    while w <= weight_max {
        let n = monomials_of_weight(&vars, w).len();
        if n > job.max_monomials {
            return Err(Error::Resource(format!("{n} monomials in weight {w} exceed --max-monomials {}", job.max_monomials)).into());
        }
        w = w + HalfInt::HALF;
    }
    Ok(())
}

fn wgen(job: &Job) -> CliResult<Outcome> {
    let s = setting(job)?;
    let weight_max = parse_weight(&job.weight_max)?;
    let sc = screening_for(job, &s)?;
    check_budget(job, &sc, weight_max)?;
    let kb = sc.joint_kernel(weight_max);
    let render = |p| sc.pva.render(p);
    let mut pieces = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "W-algebra of {} with {} nilpotent, level {}", job.type_label, s.triple.kind, job.level);
    for (w, piece) in &kb.pieces {
        let gens: Vec<String> = piece.generators.iter().map(render).collect();
        let bad: Vec<String> = piece.bad_k.iter().map(|p| p.render("k")).collect();
        let _ = writeln!(text, "weight {w}: dim {}, {} new generator(s)", piece.basis.len(), gens.len());
        for g in &gens {
            let _ = writeln!(text, "  {g}");
        }
        if !bad.is_empty() {
            let _ = writeln!(text, "  non-generic at roots of: {}", bad.join(", "));
        }
        pieces.push(json!({
            "weight": w.to_string(),
            "dim": piece.basis.len(),
            "generators": gens,
            "bad_k": bad,
        }));
    }
    let gw: Vec<String> = kb.generator_weights().iter().map(|w| w.to_string()).collect();
    let _ = writeln!(text, "generator weights: {}", if gw.is_empty() { "none".into() } else { gw.join(", ") });
    let json = json!({
        "type": job.type_label,
        "nilpotent": s.triple.kind,
        "level": job.level,
        "weight_max": weight_max.to_string(),
        "generators": sc.vars().iter().map(|v| sc.pva.vars().name(v).to_string()).collect::<Vec<_>>(),
        "pieces": pieces,
        "generator_weights": gw,
    });
    Ok(Outcome { json, text, passed: true })
}

fn affine_for(job: &Job) -> CliResult<Pva> {
    let lie = named_algebra(&job.type_label)?;
    Ok(affine_pva(&lie, &parse_level(&job.level)?, &job.type_label)?)
}

fn bracket(job: &Job, left: &str, right: &str) -> CliResult<Outcome> {
    let pva = affine_for(job)?;
    let f = pva.parse(left)?;
    let g = pva.parse(right)?;
    let b: LambdaPoly = pva.bracket(&f, &g)?;
    let rendered = b.render(pva.vars());
    let coeffs: Vec<Value> = b
        .coeffs()
        .map(|(n, p)| json!({"power": n, "coefficient": pva.render(p)}))
        .collect();
    let json = json!({
        "type": job.type_label,
        "level": job.level,
        "left": pva.render(&f),
        "right": pva.render(&g),
        "bracket": rendered,
        "coefficients": coeffs,
    });
    let text = format!("{{{} λ {}}} = {}\n", pva.render(&f), pva.render(&g), rendered);
    Ok(Outcome { json, text, passed: true })
}

struct Check {
    name: String,
    passed: bool,
    detail: Value,
    counterexample: Option<String>,
}

fn suite_outcome(title: &str, job: &Job, checks: Vec<Check>, extra: Value) -> Outcome {
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    let _ = writeln!(text, "{title} on {}", job.type_label);
    for c in &checks {
        let _ = writeln!(text, "  {}: {}", c.name, if c.passed { "pass" } else { "FAIL" });
        if let Some(ce) = &c.counterexample {
            let _ = writeln!(text, "    counterexample: {ce}");
        }
    }
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "verification failed" });
    let list: Vec<Value> = checks
        .into_iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "counterexample": c.counterexample, "detail": c.detail}))
        .collect();
    let json = json!({
        "suite": title,
        "type": job.type_label,
        "passed": passed,
        "checks": list,
        "parameters": extra,
    });
    Outcome { json, text, passed }
}

fn verify_axioms(job: &Job) -> CliResult<Outcome> {
    let pva = affine_for(job)?;
    let mut checks = Vec::new();
    let skew = pva.table.check_skew();
    checks.push(Check {
        name: "skew-symmetry on generators".into(),
        passed: skew.is_ok(),
        detail: json!(pva.vars().len()),
        counterexample: skew.err().map(|c| format!("{:?}: {}", c.generators, c.difference)),
    });
    let jac = pva.table.check_jacobi();
    checks.push(Check {
        name: "Jacobi identity on generators".into(),
        passed: jac.is_ok(),
        detail: json!(pva.vars().len()),
        counterexample: jac.err().map(|c| format!("{:?}: {}", c.generators, c.difference)),
    });
    let vars = pva.vars().vars();
    let mut rng = sample::rng(job.seed);
    let mut bad_skew = None;
    let mut bad_jacobi = None;
    for _ in 0..job.samples {
        let f = sample::poly(&mut rng, &vars, HalfInt::from_int(2), 3);
        let g = sample::poly(&mut rng, &vars, HalfInt::from_int(2), 3);
        let h = sample::poly(&mut rng, &vars, HalfInt::from_int(2), 2);
        if bad_skew.is_none() && !pva.table.skew_defect(&f, &g).is_zero() {
            bad_skew = Some(format!("f = {}, g = {}", pva.render(&f), pva.render(&g)));
        }
        if bad_jacobi.is_none() && !pva.table.jacobi_defect(&f, &g, &h).is_empty() {
            bad_jacobi = Some(format!("f = {}, g = {}, h = {}", pva.render(&f), pva.render(&g), pva.render(&h)));
        }
    }
    checks.push(Check {
        name: "skew-symmetry on random elements".into(),
        passed: bad_skew.is_none(),
        detail: json!(job.samples),
        counterexample: bad_skew,
    });
    checks.push(Check {
        name: "Jacobi identity on random elements".into(),
        passed: bad_jacobi.is_none(),
        detail: json!(job.samples),
        counterexample: bad_jacobi,
    });
    Ok(suite_outcome("axioms", job, checks, json!({"level": job.level, "seed": job.seed, "samples": job.samples})))
}

fn identity_check(r: IdentityReport) -> Check {
    Check {
        name: r.name.clone(),
        passed: r.passed,
        detail: json!({"truncation": r.truncation, "window": r.window, "checked": r.checked}),
        counterexample: r.counterexample,
    }
}

fn verify_geometry(job: &Job) -> CliResult<Outcome> {
    let s = setting(job)?;
    let y = choose_y(job, &s)?;
    let n = job.truncation;
    let setup = LoopSetup::new(&s.alg, &s.triple, &s.grading, &y, n, RatFunc::var())?;
    let mut checks = vec![identity_check(verify_lemma_3_1_all(&setup)?)];
    let main = verify_main2(&s.alg, &s.triple, &s.grading, &y, n)?;
    checks.extend(main.checks.into_iter().map(identity_check));
    checks.push(identity_check(verify_lemma_4_2(&s.alg, &s.triple, &y, n)?));
    let extra = json!({"nilpotent": s.triple.kind, "y": render_elem(s.alg.lie(), &y), "N": n});
    Ok(suite_outcome("geometry", job, checks, extra))
}

fn hierarchy(job: &Job) -> CliResult<Outcome> {
    let s = setting(job)?;
    let weights: Vec<HalfInt> = job.weights.iter().map(|w| parse_weight(w)).collect::<CliResult<_>>()?;
    let top = weights.iter().copied().max().ok_or_else(|| CliError::Usage("no weights given".into()))?;
    let sc = screening_for(job, &s)?;
    check_budget(job, &sc, top)?;
    let kb = sc.joint_kernel(top);
    let h = hamiltonians(&kb, &sc, &weights)?;
    let vars = sc.pva.vars();
    let functionals: Vec<Value> = h
        .functionals
        .iter()
        .enumerate()
        .map(|(i, (w, f))| json!({"index": i, "weight": w.to_string(), "functional": f.render(vars)}))
        .collect();
    let brackets: Vec<Value> = h
        .brackets
        .iter()
        .map(|(i, j, b)| json!({"left": i, "right": j, "bracket": b.render(vars), "zero": b.is_zero()}))
        .collect();
    let commuting = h.commuting();
    let mut text = String::new();
    let _ = writeln!(text, "hierarchy of {} with {} nilpotent, level {}", job.type_label, s.triple.kind, job.level);
    for (i, (w, f)) in h.functionals.iter().enumerate() {
        let _ = writeln!(text, "  H{i} (weight {w}) = {}", f.render(vars));
    }
    for (i, j, b) in &h.brackets {
        let value = if b.is_zero() { "0".to_string() } else { b.render(vars) };
        let _ = writeln!(text, "  {{H{i}, H{j}}} = {value}");
    }
    let _ = writeln!(text, "{}", if commuting { "pairwise commuting" } else { "not commuting" });
    let json = json!({
        "type": job.type_label,
        "nilpotent": s.triple.kind,
        "level": job.level,
        "weights": weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "functionals": functionals,
        "brackets": brackets,
        "commuting": commuting,
        "passed": commuting,
    });
    Ok(Outcome { json, text, passed: commuting && !h.functionals.is_empty() })
}
