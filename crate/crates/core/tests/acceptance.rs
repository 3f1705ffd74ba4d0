//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcpkit::classes::{check_witness, classify, implication_audit, ClassId, Method, Status};
use tcpkit::io::read_tensor;
use tcpkit::spectra::{h_eigenpairs, z_eigenpairs};
use tcpkit::tcp::{enumerate_solutions, extract_er_witness, random_q, solve, solve_multi, DivergenceTrace, TcpInstance};
use tcpkit::{Budget, Tensor};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn fixture(name: &str) -> Tensor {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    read_tensor(&path).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_tensor(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: f64, hi: f64) -> Tensor {
    let c = (0..n.pow(m as u32)).map(|_| rng.random_range(lo..=hi)).collect();
    Tensor::new(m, n, c).unwrap()
}

fn close(x: &[f64], y: &[f64], tol: f64) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn cubic(x: f64) -> f64 {
    x.powi(3) + 2.0 * x * x - 15.0 * x + 1.0
}

fn example_31() -> Outcome {
    let a = fixture("ex31.json");
    let b = Budget::default();
    let r = classify(&a, ClassId::R, &b).unwrap();
    ensure(r.status == Status::Member && r.method == Method::ExhaustiveN2, || format!("R verdict {r:?}"))?;
    let er = classify(&a, ClassId::ER, &b).unwrap();
    ensure(er.status == Status::NonMember, || format!("ER verdict {:?}", er.status))?;
    let w = er.witness.ok_or("ER NonMember without witness")?;
    let t = w.t.ok_or("ER witness without t")?;
    let (x1, x2) = (w.x[0] / t, w.x[1] / t);
    ensure(cubic(x1).abs() <= 1e-8, || format!("cubic residual {} at x1 = {x1}", cubic(x1)))?;
    ensure(x1 > 5.0 / 3.0, || format!("x1 = {x1} not beyond 5/3"))?;
    let c = check_witness(&a, ClassId::ER, &[x1, x2], Some(1.0), 1e-8).unwrap();
    ensure(c.valid, || format!("t = 1 slice point fails the ER system: {c:?}"))?;
    let r53 = Rational64::new(5, 3);
    let f = r53 * r53 * r53 + Rational64::from_integer(2) * r53 * r53 - Rational64::from_integer(15) * r53
        + Rational64::from_integer(1);
    ensure(f == Rational64::new(-373, 27), || format!("f(5/3) = {f}"))?;
    ensure((cubic(5.0 / 3.0) + 373.0 / 27.0).abs() <= 1e-12, || "float f(5/3)".into())?;
    Ok(format!("x1 = {x1:.12}, x2 = {x2:.12}, f(5/3) = {f}"))
}

fn example_32() -> Outcome {
    let a = fixture("ex32.json");
    let b = Budget::default();
    let er = classify(&a, ClassId::ER, &b).unwrap();
    ensure(er.status == Status::Member && er.method == Method::ExhaustiveN2, || format!("ER verdict {er:?}"))?;
    let r = classify(&a, ClassId::R, &b).unwrap();
    ensure(r.status == Status::NonMember, || format!("R verdict {:?}", r.status))?;
    let rw = r.witness.ok_or("R NonMember without witness")?;
    ensure(close(&rw.x, &[0.0, 1.0], 0.0) && rw.t == Some(1.0), || format!("R witness {rw:?}"))?;
    let c = check_witness(&a, ClassId::R, &rw.x, rw.t, 1e-8).unwrap();
    ensure(c.valid && c.residual <= 1e-12 && rw.residual <= 1e-12, || format!("R residual {c:?}"))?;
    let wp = classify(&a, ClassId::WP, &b).unwrap();
    ensure(wp.status == Status::NonMember, || format!("WP verdict {:?}", wp.status))?;
    let ww = wp.witness.ok_or("WP NonMember without witness")?;
    ensure(close(&ww.x, &[0.0, 1.0], 0.0), || format!("WP witness {:?}", ww.x))?;
    let v = ww.x[1].powi(2) * a.apply(&ww.x).unwrap()[1];
    ensure(v == -1.0, || format!("x2^2 (A x^2)_2 = {v}"))?;
    Ok(format!("R witness (x = {:?}, t = 1), x2^2 (A x^2)_2 = {v}", rw.x))
}

fn implication_suite() -> Outcome {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20_003);
    let mut tensors: Vec<Tensor> = (0..200).map(|_| random_tensor(&mut rng, 3, 2, -2.0, 2.0)).collect();
    tensors.push(fixture("ex31.json"));
    tensors.push(fixture("ex32.json"));
    let mut definite = 0;
    for (k, a) in tensors.iter().enumerate() {
        let verdicts: BTreeMap<ClassId, _> = ClassId::ALL.iter().map(|&c| (c, classify(a, c, &b).unwrap())).collect();
        definite += verdicts.values().filter(|v| v.status != Status::Unknown).count();
        let bad = implication_audit(a, &verdicts);
        ensure(bad.is_empty(), || format!("tensor {k} {:?}: {bad:?}", a.coeffs()))?;
    }
    Ok(format!("{} tensors, {definite} definite verdicts, 0 violations", tensors.len()))
}

fn tcp_oracle() -> Outcome {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(40_001);
    let (mut solved, mut listed) = (0, 0);
    for k in 0..50 {
        let a = random_tensor(&mut rng, 3, 2, -2.0, 2.0);
        let q = vec![rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0)];
        let inst = TcpInstance::new(a, q.clone()).unwrap();
        let en = enumerate_solutions(&inst, &b).unwrap();
        listed += en.solutions.len();
        let contract = |s: &tcpkit::TcpSolution| s.feas_residual <= 1e-8 && s.comp_residual <= 1e-8;
        ensure(en.solutions.iter().all(contract), || format!("instance {k}: enumeration residuals"))?;
        let out = solve(&inst, &b).unwrap();
        if let Some(s) = &out.solution {
            solved += 1;
            ensure(contract(s), || format!("instance {k}: solve residuals {s:?}"))?;
            ensure(en.solutions.iter().any(|e| close(&e.x, &s.x, 1e-6)), || {
                format!("instance {k} q = {q:?}: {:?} not enumerated", s.x)
            })?;
        } else {
            ensure(en.solutions.is_empty() || !en.complete, || format!("instance {k} q = {q:?}: solve failed but enumeration is nonempty"))?;
        }
        let (multi, _) = solve_multi(&inst, &b).unwrap();
        for s in &multi {
            ensure(contract(s), || format!("instance {k}: multistart residuals"))?;
            ensure(en.solutions.iter().any(|e| close(&e.x, &s.x, 1e-6)), || {
                format!("instance {k}: multistart solution {:?} not enumerated", s.x)
            })?;
        }
    }
    Ok(format!("50 instances, {solved} solved, {listed} enumerated solutions"))
}

fn batch_report(a: &Tensor, b: &Budget) -> Result<(String, f64, f64), String> {
    let mut lines = String::new();
    let (mut max_norm, mut bound) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let q = random_q(2, 2.0, b, 0xacce, k);
        let inst = TcpInstance::new(a.clone(), q.clone()).unwrap();
        let out = solve(&inst, b).unwrap();
        let s = out.solution.ok_or_else(|| format!("no solution for q = {q:?}"))?;
        max_norm = max_norm.max(norm(&s.x));
        let en = enumerate_solutions(&inst, b).unwrap();
        bound = bound.max(en.solutions.iter().map(|e| norm(&e.x)).fold(0.0, f64::max));
        lines.push_str(&serde_json::to_string(&s).unwrap());
        lines.push('\n');
    }
    lines.push_str(&format!("max_norm {max_norm:e}\n"));
    Ok((lines, max_norm, bound))
}

fn desk_scale() -> Outcome {
    let b = Budget::with_seed(7);
    let mut summary = Vec::new();
    for (name, file) in [("Ex 3.1", "ex31.json"), ("Ex 3.2", "ex32.json")] {
        let a = fixture(file);
        let (first, max_norm, bound) = batch_report(&a, &b)?;
        let (second, _, _) = batch_report(&a, &b)?;
        ensure(first == second, || format!("{name}: reports differ between runs"))?;
        ensure(max_norm.is_finite(), || format!("{name}: max norm {max_norm}"))?;
        ensure(max_norm <= 2.0 * bound, || format!("{name}: max norm {max_norm} above twice the bound {bound}"))?;
        summary.push(format!("{name} max |x| = {max_norm:.6}"));
    }
    Ok(summary.join(", "))
}

fn eigen_signs() -> Outcome {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(60_007);
    let mut checked = 0;
    for k in 0..50 {
        let m = if k % 2 == 0 { 3 } else { 4 };
        let a = random_tensor(&mut rng, m, 2, 0.01, 2.0);
        let pairs = h_eigenpairs(&a, &b).unwrap().into_iter().chain(z_eigenpairs(&a, &b).unwrap());
        for p in pairs.filter(|p| p.is_nonnegative()) {
            checked += 1;
            ensure(p.lambda > 1e-8, || format!("tensor {k}: {p:?}"))?;
        }
    }
    let a = fixture("ex32.json");
    let z = z_eigenpairs(&a, &b).unwrap();
    let signed: Vec<_> = z.iter().filter(|p| p.is_nonnegative()).collect();
    for p in &signed {
        ensure(p.lambda > 0.0, || format!("Ex 3.2: {p:?}"))?;
    }
    Ok(format!("{checked} nonnegative pairs over 50 tensors; Ex 3.2 has {} Z-pairs, {} nonnegative", z.len(), signed.len()))
}

fn divergence_witness() -> Outcome {
    let a = fixture("ex31.json");
    let w = classify(&a, ClassId::ER, &Budget::default()).unwrap().witness.ok_or("no ER witness")?;
    let t = w.t.unwrap();
    let xbar: Vec<f64> = w.x.iter().map(|v| v / t).collect();
    let trace = DivergenceTrace {
        q: vec![0.0, 0.0],
        points: (1..=8).map(|k| xbar.iter().map(|v| v * k as f64).collect()).collect(),
        multipliers: (1..=8).map(|k| k as f64).collect(),
    };
    let got = extract_er_witness(&trace, &a).map_err(|e| e.to_string())?.ok_or("nothing recovered")?;
    ensure(got.residual <= 1e-8, || format!("residual {}", got.residual))?;
    let c = check_witness(&a, ClassId::ER, &got.x, got.t, 1e-8).unwrap();
    ensure(c.valid, || format!("recovered point fails: {c:?}"))?;
    ensure(close(&got.x, &w.x, 1e-9), || format!("recovered {:?}, expected {:?}", got.x, w.x))?;
    Ok(format!("x = {:?}, t = {:?}, residual {:e}", got.x, got.t.unwrap(), got.residual))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("example-3.1 R but not ER", example_31, 1),
        ("example-3.2 ER but not R nor wP", example_32, 1),
        ("implication suite", implication_suite, 30),
        ("tcp oracle equivalence", tcp_oracle, 30),
        ("desk-scale solvability", desk_scale, 60),
        ("eigenvalue sign suite", eigen_signs, 30),
        ("divergence to witness", divergence_witness, 1),
    ];
    let mut failed = 0;
    for (name, run, secs) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|s| {
            if took <= Duration::from_secs(secs) {
                Ok(s)
            } else {
                Err(format!("{s}; runtime {took:.2?} over {secs} s"))
            }
        });
        match outcome {
            Ok(s) => println!("PASS {name} ({took:.2?}): {s}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name} ({took:.2?}): {e}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
