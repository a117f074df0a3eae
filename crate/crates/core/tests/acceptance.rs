//! Acceptance criteria, one pass/fail line each. Expected values are computed
//! here from closed forms or brute-force oracles, never from the code under test.

use std::process::ExitCode;
use std::time::Instant;

use multiconc::bounds::{
    analyze, bound_coefficients, gme_threshold, pure_concurrence_purity, pure_concurrence_tensor, AnalysisOptions,
    BoundsReport, Verdict,
};
use multiconc::cli::cmd_scan;
use multiconc::density::{apply_local_unitaries, validate_density, DensityMatrix, PartitionContext, SubsetMask};
use multiconc::generators::su_generators;
use multiconc::matrix::{kron, ComplexMatrix};
use multiconc::roof::convex_roof_upper_estimate;
use multiconc::states::{
    ghz3_with_noise, haar_random_ket, haar_random_pure, product_state, random_local_unitaries, random_mixed,
};
use multiconc::tensors::{all_tensors, purity_from_tensors, reduced_purity_from_tensors, CorrelationTensorSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ctx(n: usize, d: usize) -> PartitionContext {
    PartitionContext::new(n, d).unwrap()
}

fn tensors(rho: &DensityMatrix) -> CorrelationTensorSet {
    all_tensors(rho, &su_generators(rho.ctx().local_dim()).unwrap()).unwrap()
}

fn report(rho: &DensityMatrix) -> BoundsReport {
    analyze(rho, &AnalysisOptions::default()).unwrap()
}

/// Brute-force Tr ρ².
fn oracle_purity(m: &ComplexMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Brute-force partial trace keeping the 1-based `keep` parties (ascending).
fn oracle_reduce(m: &ComplexMatrix, n: usize, d: usize, keep: &[usize]) -> ComplexMatrix {
    let digits = |mut i: usize| {
        let mut out = vec![0; n];
        for p in (0..n).rev() {
            out[p] = i % d;
            i /= d;
        }
        out
    };
    let dk = d.pow(keep.len() as u32);
    let mut out = ComplexMatrix::zeros(dk, dk);
    let full = d.pow(n as u32);
    for i in 0..full {
        let di = digits(i);
        for j in 0..full {
            let dj = digits(j);
            let traced_equal = (0..n).all(|p| keep.contains(&(p + 1)) || di[p] == dj[p]);
            if !traced_equal {
                continue;
            }
            let idx = |dg: &[usize]| keep.iter().fold(0, |acc, &p| acc * d + dg[p - 1]);
            out[(idx(&di), idx(&dj))] += m[(i, j)];
        }
    }
    out
}

fn ghz_closed_form(x: f64) -> f64 {
    0.5 * (6.0 - 25.0 * x + 12.5 * x * x).sqrt()
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (i, &(n, d)) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)].iter().enumerate() {
        let c = ctx(n, d);
        let coeffs = bound_coefficients(c).unwrap();
        for k in 0..200u64 {
            let psi = haar_random_pure(c, 1_000 * i as u64 + k);
            let a = pure_concurrence_purity(&psi).unwrap();
            let b = pure_concurrence_tensor(&tensors(&psi), &coeffs).unwrap();
            worst = worst.max((a - b).abs());
            count += 1;
        }
    }
    let msg = format!("{count} pure states, max |purity form - tensor form| = {worst:.2e} (tol 1e-8)");
    if worst <= 1e-8 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..=15 {
        let x = 0.02 * k as f64;
        let raw = report(&ghz3_with_noise(x).unwrap()).concurrence_lower_raw;
        worst = worst.max((raw - ghz_closed_form(x)).abs());
    }
    let msg = format!("16 noise weights in [0, 0.30], max deviation from closed form = {worst:.2e} (tol 1e-9)");
    if worst <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn scan(predicate: &str) -> f64 {
    let out = cmd_scan(None, predicate, 1e-6);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    v["crossing_x"].as_f64().unwrap()
}

fn criterion_3() -> Outcome {
    let gme = scan("gme");
    let ent = scan("entangled");
    let verdicts: Vec<Verdict> = [0.05, 0.2, 0.5]
        .iter()
        .map(|&x| report(&ghz3_with_noise(x).unwrap()).verdict)
        .collect();
    let expected = [
        Verdict::GenuineMultipartiteEntangled,
        Verdict::Entangled,
        Verdict::Inconclusive,
    ];
    let msg = format!(
        "gme crossing {gme:.6} (want 0.08349), entangled crossing {ent:.6} (want 0.27889), verdicts {:?}",
        verdicts.iter().map(Verdict::as_str).collect::<Vec<_>>()
    );
    if (gme - 0.08349).abs() <= 1e-4 && (ent - 0.27889).abs() <= 1e-4 && verdicts == expected {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=4 {
        let expected = (2.0 - 2.0 / d as f64).sqrt();
        worst = worst.max((gme_threshold(ctx(3, d)).unwrap() - expected).abs());
    }
    worst = worst.max((gme_threshold(ctx(4, 2)).unwrap() - 0.5 * 7.5f64.sqrt()).abs());
    let msg = format!("N=3 d=2..4 and N=4 d=2, max deviation = {worst:.2e} (tol 1e-12)");
    if worst <= 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

const MIXED_SHAPES: [(usize, usize); 5] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)];

fn mixed(k: u64, base: u64) -> DensityMatrix {
    let (n, d) = MIXED_SHAPES[k as usize % MIXED_SHAPES.len()];
    let c = ctx(n, d);
    let rank = 1 + (k as usize * 7) % c.dim();
    random_mixed(c, rank, base + k).unwrap()
}

fn criterion_5() -> Outcome {
    let (mut worst_full, mut worst_reduced) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let rho = mixed(k, 5_000);
        let c = rho.ctx();
        let ts = tensors(&rho);
        worst_full = worst_full.max((purity_from_tensors(&ts) - oracle_purity(rho.matrix())).abs());
        for s in SubsetMask::all_proper(c.n_parties()) {
            let reduced = oracle_reduce(rho.matrix(), c.n_parties(), c.local_dim(), &s.parties());
            let direct = oracle_purity(&reduced);
            worst_reduced = worst_reduced.max((reduced_purity_from_tensors(&ts, s) - direct).abs());
        }
    }
    let msg = format!("100 mixed states, max full-purity residual {worst_full:.2e}, max reduced-purity residual {worst_reduced:.2e} (tol 1e-10)");
    if worst_full <= 1e-10 && worst_reduced <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_6() -> Outcome {
    let (mut gap, mut vs_square) = (0.0f64, 0.0f64);
    for k in 0..100u64 {
        let (n, d) = MIXED_SHAPES[k as usize % MIXED_SHAPES.len()];
        let psi = haar_random_pure(ctx(n, d), 6_000 + k);
        let r = report(&psi);
        let c2 = pure_concurrence_purity(&psi).unwrap().powi(2);
        gap = gap.max((r.tangle_lower - r.tangle_upper).abs());
        vs_square = vs_square
            .max((r.tangle_lower - c2).abs())
            .max((r.tangle_upper - c2).abs());
    }
    let mut violation = f64::NEG_INFINITY;
    for k in 0..100 {
        let r = report(&mixed(k, 6_500));
        violation = violation.max(r.tangle_lower - r.tangle_upper);
    }
    let msg = format!(
        "pure: max |lower - upper| {gap:.2e}, max |bound - C^2| {vs_square:.2e}; mixed: max (lower - upper) {violation:.2e} (tol 1e-9)"
    );
    if gap <= 1e-9 && vs_square <= 1e-9 && violation <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_7() -> Outcome {
    let c = ctx(3, 2);
    let mut violation = f64::NEG_INFINITY;
    let mut positive = 0;
    for k in 0..100u64 {
        let rho = random_mixed(c, 1 + (k as usize % 4), 7_000 + k).unwrap();
        let lower = report(&rho).concurrence_lower;
        let upper = convex_roof_upper_estimate(&rho, 200, 7_500 + k).unwrap();
        positive += usize::from(lower > 0.0);
        violation = violation.max(lower - upper);
    }
    let msg = format!(
        "100 three-qubit states of rank <= 4 ({positive} with nonzero bound), max (lower - roof estimate) {violation:.2e} (tol 1e-9)"
    );
    if violation <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    let mut verdicts_match = true;
    for k in 0..50u64 {
        let rho = if k % 2 == 0 {
            mixed(k, 8_000)
        } else {
            let (n, d) = MIXED_SHAPES[k as usize % MIXED_SHAPES.len()];
            haar_random_pure(ctx(n, d), 8_000 + k)
        };
        let us = random_local_unitaries(rho.ctx(), 8_500 + k);
        let rotated = apply_local_unitaries(&rho, &us).unwrap();
        let (ta, tb) = (tensors(&rho), tensors(&rotated));
        for s in SubsetMask::all_nonempty(rho.ctx().n_parties()) {
            worst = worst.max((ta.norm_sq(s) - tb.norm_sq(s)).abs());
        }
        let (a, b) = (report(&rho), report(&rotated));
        for (x, y) in [
            (a.concurrence_lower_raw, b.concurrence_lower_raw),
            (a.concurrence_lower, b.concurrence_lower),
            (a.concurrence_lower_split_raw, b.concurrence_lower_split_raw),
            (a.tangle_lower_raw, b.tangle_lower_raw),
            (a.tangle_upper, b.tangle_upper),
            (a.sum_reduced_purities, b.sum_reduced_purities),
        ] {
            worst = worst.max((x - y).abs());
        }
        verdicts_match &= a.verdict == b.verdict;
    }
    let msg = format!(
        "50 states, max change in sector norms and bounds {worst:.2e} (tol 1e-9), verdicts unchanged: {verdicts_match}"
    );
    if worst <= 1e-9 && verdicts_match {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_9() -> Outcome {
    let mut states = Vec::new();
    for &(n, d) in &MIXED_SHAPES {
        let c = ctx(n, d);
        states.push(DensityMatrix::maximally_mixed(c));
        let local = ctx(1, d);
        for k in 0..4u64 {
            let seed = 9_000 + 100 * (n * 10 + d) as u64 + 10 * k;
            let kets: Vec<_> = (0..n).map(|p| haar_random_ket(local, seed + p as u64)).collect();
            states.push(product_state(c, &kets).unwrap());
            let mut m = ComplexMatrix::identity(1);
            for p in 0..n {
                let rank = 1 + (p + k as usize) % d;
                let r = random_mixed(local, rank, seed + 50 + p as u64).unwrap();
                m = kron(&m, r.matrix()).unwrap();
            }
            states.push(validate_density(m, c).unwrap());
        }
    }
    let failures: Vec<String> = states
        .iter()
        .enumerate()
        .filter_map(|(i, rho)| {
            let r = report(rho);
            let ok = r.concurrence_lower == 0.0 && r.tangle_lower == 0.0 && r.verdict == Verdict::Inconclusive;
            (!ok).then(|| {
                format!(
                    "#{i}: C={:e} tau={:e} {}",
                    r.concurrence_lower,
                    r.tangle_lower,
                    r.verdict.as_str()
                )
            })
        })
        .collect();
    let msg = format!(
        "{} separable states, {} with nonzero clamped bound or non-inconclusive verdict",
        states.len(),
        failures.len()
    );
    if failures.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}: {}", failures.join("; ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("pure-state formula equivalence", criterion_1),
        ("noisy GHZ closed form", criterion_2),
        ("noisy GHZ detection windows", criterion_3),
        ("GME threshold values", criterion_4),
        ("purity identities", criterion_5),
        ("tangle tightness", criterion_6),
        ("concurrence sandwich", criterion_7),
        ("local-unitary invariance", criterion_8),
        ("separable baseline", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} [PASS] {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
