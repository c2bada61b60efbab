//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use walgebra_core::diffpoly::VarTable;
use walgebra_core::linalg::Matrix;
use walgebra_core::liealg::{check_condition_f, default_y, parse_y, triple_from_spec};
use walgebra_core::loopgeo::{verify_lemma_3_1_all, verify_lemma_4_2, verify_main2, LoopSetup};
use walgebra_core::pva::{affine_pva, eta_kernel, functional, local_bracket, LocalFunctional, Pva};
use walgebra_core::sample;
use walgebra_core::screening::{check_subalgebra, hamiltonians, Screening};
use walgebra_core::{grade, named_algebra, DiffPoly, Field, HalfInt, Monomial, RatFunc, SimpleLieAlgebra, Q};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn affine(name: &str) -> Result<Pva, String> {
    let lie = named_algebra(name).map_err(err)?;
    affine_pva(&lie, &RatFunc::var(), name).map_err(err)
}

struct Principal {
    alg: SimpleLieAlgebra,
    triple: walgebra_core::Sl2Triple,
    grading: walgebra_core::AdxGrading,
}

fn principal(ty: &str) -> Result<Principal, String> {
    nilpotent(ty, "principal")
}

fn nilpotent(ty: &str, spec: &str) -> Result<Principal, String> {
    let alg = SimpleLieAlgebra::build(ty).map_err(err)?;
    let triple = triple_from_spec(&alg, spec).map_err(err)?;
    let grading = grade(&alg, &triple).map_err(err)?;
    Ok(Principal { alg, triple, grading })
}

fn criterion_axioms() -> Outcome {
    for name in ["gl1", "sl2", "sl3", "sp4"] {
        let pva = affine(name)?;
        pva.check_axioms().map_err(|c| format!("{name}: {:?} {}", c.generators, c.difference))?;
    }
    Ok("skew-symmetry and Jacobi exact for V^k(g), g in gl1 sl2 sl3 sp4".into())
}

fn rank(fs: &[LocalFunctional]) -> usize {
    let mut monos: Vec<Monomial> = fs.iter().flat_map(|f| f.rep().terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<RatFunc>> = fs.iter().map(|f| monos.iter().map(|m| f.rep().coeff(m)).collect()).collect();
    Matrix::from_rows(rows, monos.len()).rank()
}

fn criterion_eta_kernel() -> Outcome {
    for name in ["gl1", "sl2", "gl2"] {
        let lie = named_algebra(name).map_err(err)?;
        let pva = affine_pva(&lie, &RatFunc::var(), name).map_err(err)?;
        let kernel = eta_kernel(&pva, HalfInt::from_int(3)).map_err(err)?;
        let vars = pva.vars().vars();
        let mut expected = vec![functional(&DiffPoly::one())];
        for z in lie.center() {
            let mut p = DiffPoly::zero();
            for (a, c) in z.iter().enumerate() {
                p.add_assign(&DiffPoly::var(vars[a]).scale_q(c));
            }
            expected.push(functional(&p));
        }
        let both: Vec<LocalFunctional> = kernel.iter().chain(&expected).cloned().collect();
        let (rk, re, rb) = (rank(&kernel), rank(&expected), rank(&both));
        ensure(rk == kernel.len() && rk == re && rb == re, || {
            format!("{name}: kernel rank {rk}, expected span rank {re}, joint rank {rb}")
        })?;
    }
    Ok("Ker eta up to weight 3 is span{∫1, ∫Z(L)} for gl1 sl2 gl2".into())
}

fn criterion_recursion() -> Outcome {
    let mut count = 0;
    for ty in ["A1", "A2"] {
        let p = principal(ty)?;
        let s = Screening::new(&p.alg, &p.triple, &p.grading, RatFunc::var()).map_err(err)?;
        let l = s.sugawara().ok_or("no Sugawara element")?.clone();
        let d = |x: &DiffPoly| s.pva.table.bracket_at_zero(&l, x).map_err(err);
        let vars = s.vars();
        let mut samples: Vec<DiffPoly> = Vec::new();
        for v in &vars {
            for n in 0..4 {
                samples.push(DiffPoly::factor(walgebra_core::Factor::new(*v, n)));
            }
        }
        let mut rng = sample::rng(2024);
        for _ in 0..100 {
            samples.push(sample::poly(&mut rng, &vars, HalfInt::from_int(4), 5));
        }
        for x in &samples {
            let dx = d(x)?;
            ensure(dx == x.d(), || format!("{ty}: L(0) differs from the derivative on {}", s.pva.render(x)))?;
            for &g in s.members() {
                let defect = s.commutator_defect(g, x).map_err(err)?;
                ensure(defect.is_zero(), || format!("{ty}: recursion fails for Q_{} on {}", s.label(g), s.pva.render(x)))?;
                // the same identity with ∂ computed as the λ = 0 bracket with L
                let lhs = s.apply(g, &dx).map_err(err)?.sub(&d(&s.apply(g, x).map_err(err)?)?);
                let mut rhs = DiffPoly::zero();
                for (g2, c) in s.commutator_terms(g) {
                    rhs.add_assign(&c.mul(&s.apply(*g2, x).map_err(err)?));
                }
                ensure(lhs == rhs, || format!("{ty}: [Q_{}, L(0)] mismatch on {}", s.label(g), s.pva.render(x)))?;
                count += 1;
            }
        }
    }
    Ok(format!("commutator identity exact on {count} operator/element pairs (sl2, sl3)"))
}

fn criterion_kernel() -> Outcome {
    let p = principal("A1")?;
    let s = Screening::new(&p.alg, &p.triple, &p.grading, RatFunc::var()).map_err(err)?;
    let two = HalfInt::from_int(2);
    let kb = s.joint_kernel(two);
    ensure(kb.dim(two) == 1, || format!("sl2 weight-2 kernel has dimension {}", kb.dim(two)))?;
    check_subalgebra(&kb, &s, two)
        .map_err(err)?
        .map_err(|c| format!("sl2 closure fails: {{{} λ {}}} via {}", c.left, c.right, c.operator))?;
    let p = principal("A2")?;
    let s = Screening::new(&p.alg, &p.triple, &p.grading, RatFunc::var()).map_err(err)?;
    let kb = s.joint_kernel(HalfInt::from_int(3));
    let weights = kb.generator_weights();
    ensure(weights == vec![two, HalfInt::from_int(3)], || format!("sl3 generator weights {weights:?}"))?;
    Ok("sl2: dim K_2 = 1 and closed; sl3: generators exactly at weights 2, 3".into())
}

fn criterion_geometry() -> Outcome {
    for (ty, n) in [("A1", 4usize), ("A2", 3)] {
        let p = principal(ty)?;
        let y = default_y(&p.alg, &p.triple, &p.grading).map_err(err)?;
        let setup = LoopSetup::new(&p.alg, &p.triple, &p.grading, &y, n, RatFunc::var()).map_err(err)?;
        let r = verify_lemma_3_1_all(&setup).map_err(err)?;
        ensure(r.passed, || format!("{ty}: {:?}", r.counterexample))?;
        let m = verify_main2(&p.alg, &p.triple, &p.grading, &y, n).map_err(err)?;
        for c in &m.checks {
            ensure(c.passed && !c.checked.is_empty(), || format!("{ty} {}: {:?}", c.name, c.counterexample))?;
        }
        let r = verify_lemma_4_2(&p.alg, &p.triple, &y, n).map_err(err)?;
        ensure(r.passed, || format!("{ty}: {:?}", r.counterexample))?;
    }
    Ok("all loop-group identities exact for sl2 N=4 and sl3 N=3".into())
}

fn criterion_condition_f() -> Outcome {
    for ty in ["A1", "A2"] {
        let p = principal(ty)?;
        let theta = p.alg.lie().basis_vec(p.alg.highest_root_index());
        let r = check_condition_f(&p.alg, &p.triple, &p.grading, &theta).map_err(err)?;
        ensure(r.holds(), || format!("{ty} principal with e_theta: {r:?}"))?;
        let zero = vec![Q::zero(); p.alg.dim()];
        let r = check_condition_f(&p.alg, &p.triple, &p.grading, &zero).map_err(err)?;
        ensure(!r.holds() && !r.f2, || format!("{ty} with y = 0 passed"))?;
    }
    let p = nilpotent("C2", "2,2")?;
    let y = parse_y(p.alg.lie(), "e11=1").map_err(err)?;
    let r = check_condition_f(&p.alg, &p.triple, &p.grading, &y).map_err(err)?;
    ensure(r.holds(), || format!("sp4 (2,2): {r:?}"))?;
    let zero = vec![Q::zero(); p.alg.dim()];
    let r = check_condition_f(&p.alg, &p.triple, &p.grading, &zero).map_err(err)?;
    ensure(!r.holds(), || "sp4 (2,2) with y = 0 passed".into())?;
    Ok("(F) holds for sl2, sl3 principal and sp4 (2,2); fails for y = 0".into())
}

fn criterion_hierarchy() -> Outcome {
    for (ty, weights) in [("A1", [2, 4]), ("A2", [2, 3])] {
        let p = principal(ty)?;
        let s = Screening::new(&p.alg, &p.triple, &p.grading, RatFunc::var()).map_err(err)?;
        let ws: Vec<HalfInt> = weights.iter().map(|&w| HalfInt::from_int(w)).collect();
        let kb = s.joint_kernel(ws[1]);
        let h = hamiltonians(&kb, &s, &ws).map_err(err)?;
        for w in &ws {
            ensure(h.functionals.iter().any(|(v, f)| v == w && !f.is_zero()), || format!("{ty}: no functional of weight {w}"))?;
        }
        ensure(h.commuting(), || format!("{ty}: brackets {:?}", h.brackets.iter().map(|b| b.2.render(s.pva.vars())).collect::<Vec<_>>()))?;
        for (_, f) in &h.functionals {
            for (_, g) in &h.functionals {
                ensure(local_bracket(f, g, &s.pva).map_err(err)?.is_zero(), || format!("{ty}: nonzero bracket"))?;
            }
        }
    }
    Ok("sl2: {∫W2, ∫W2^2} = 0; sl3: {∫W2, ∫W3} = 0".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_walgebra")).args(args).output().map_err(err)?;
    ensure(out.status.success(), || format!("walgebra {args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn criterion_infrastructure() -> Outcome {
    let mut vars = VarTable::new();
    vars.push("u", HalfInt::ONE, false);
    vars.push("v", HalfInt::from_int(2), false);
    vars.push("w_1", HalfInt::HALF, false);
    vars.push("psi", HalfInt::HALF, true);
    let list = vars.vars();
    let mut rng = sample::rng(99);
    for i in 0..1000 {
        let p = sample::poly(&mut rng, &list, HalfInt::from_int(4), 1 + i % 7);
        let text = vars.render(&p);
        let back = vars.parse(&text).map_err(|e| format!("cannot parse '{text}': {e}"))?;
        ensure(back == p, || format!("round trip changed '{text}' into '{}'", vars.render(&back)))?;
    }
    for args in [
        &["--format", "json", "wgen", "--type", "A2", "--weight-max", "3"][..],
        &["--format", "json", "verify", "geometry", "--type", "A1", "-N", "4"][..],
        &["--format", "json", "algebra", "--type", "C2", "--nilpotent", "2,2"][..],
    ] {
        let a = run_cli(args)?;
        let b = run_cli(args)?;
        ensure(a == b, || format!("walgebra {args:?} output differs between runs"))?;
        let v: serde_json::Value = serde_json::from_slice(&a).map_err(err)?;
        ensure(v.get("schema_version").is_some(), || "missing schema_version".into())?;
    }
    Ok("1000 parse/render round trips; CLI JSON byte-identical across runs".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 PVA axioms", criterion_axioms, Duration::from_secs(30)),
        ("2 kernel of eta", criterion_eta_kernel, Duration::from_secs(10)),
        ("3 screening recursion", criterion_recursion, Duration::from_secs(60)),
        ("4 W-algebra kernel", criterion_kernel, Duration::from_secs(300)),
        ("5 loop-group identities", criterion_geometry, Duration::from_secs(300)),
        ("6 condition (F)", criterion_condition_f, Duration::from_secs(60)),
        ("7 commuting hierarchy", criterion_hierarchy, Duration::from_secs(600)),
        ("8 infrastructure", criterion_infrastructure, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > budget => Err(format!("{msg}, but took {elapsed:.1?} (budget {budget:?})")),
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({:.2}s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({:.2}s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
