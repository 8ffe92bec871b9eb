//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` print FAIL without failing the run; any other
//! FAIL exits nonzero.

mod common;

use std::time::Instant;

use ffda::algebra::Fq;
use ffda::diophantine::{
    count_solutions, count_solutions_directional, expected_count, measure_e, measure_e_directional, measure_f,
    precision_required, Cylinder, RegionSpec, Side,
};
use ffda::dynamics::{comparison_bounds_hold, sandwich_counts, siegel_count, ua_basis, OrbitWalker, Weights};
use ffda::experiments::{
    exhaustive_average, good_function_check, grid_depth_needed, grid_measure_oracle, run_count_experiment,
    run_orbit_experiment, sample_matrix, summarize_counts, summarize_orbits, trial_seed, ExperimentConfig,
    MultiPoly, OrbitTarget,
};
use ffda::lattice::{alpha_value, delta_shortest, weak_popov_reduce};
use ffda::{Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// 4: the two volumes differ by a constant when the blocks have different sizes.
/// 10: the averages converge to the Siegel mean value `(T + 1) c`, not `T c`; see the
/// corrected-target line printed alongside.
const KNOWN_FAILURES: &[u32] = &[4, 10];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn w(s: &str) -> Weights {
    s.parse().unwrap()
}

/// `q`, weights, `R`, `T` over the small grid shared by several criteria.
fn small_grid() -> Vec<(u32, Weights, i64, u32)> {
    let mut out = Vec::new();
    for q in [2u32, 3] {
        for ws in ["(1;1)", "(2;1,1)"] {
            for r in -1..=1 {
                for t in 0..=3 {
                    out.push((q, w(ws), r, t));
                }
            }
        }
    }
    out
}

fn correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let shapes = ["(1;1)", "(2;1,1)", "(1,1;2)", "(1,1;1,1)", "(3;1,2)", "(1,2;3)", "(2,1;1,2)"];
    let mut checked = 0;
    while checked < 120 {
        let q = [2u32, 3][rng.gen_range(0..2)];
        let ws = w(shapes[rng.gen_range(0..shapes.len())]);
        let r = rng.gen_range(-1..=1);
        let t = rng.gen_range(0..=10u32);
        // keep the denominator box small enough to scan quickly
        let box_digits: u32 = ws.beta().iter().map(|&b| t * b + 1).sum();
        if (q as f64).powi(box_digits as i32) > 4.0e4 {
            continue;
        }
        let f = Fq::new(q).unwrap();
        let depth = precision_required(&ws, r, t);
        let a = sample_matrix(f, ws.m(), ws.n(), depth, rng.gen());
        let n = count_solutions(&a, &ws, r, t).unwrap().count;
        let s = siegel_count(&RegionSpec::E { t, r }, &ua_basis(&a), &ws, 1 << 26).unwrap();
        if n != s {
            return outcome(false, format!("q={q} w={ws} R={r} T={t} A={a}: count {n}, lattice {s}"));
        }
        checked += 1;
    }
    outcome(true, format!("{checked} sampled instances agree"))
}

fn volume_vs_grid() -> Outcome {
    let mut n = 0;
    for (q, ws, r, t) in small_grid() {
        let e = RegionSpec::E { t, r };
        let depth = grid_depth_needed(&ws, &e);
        if depth > 6 {
            return outcome(false, format!("grid depth {depth} for {ws} T={t}"));
        }
        let grid = grid_measure_oracle(q, &ws, &e, depth, 1 << 24).unwrap();
        let formula = measure_e::<Rational>(q, &ws, r, t);
        if grid != formula {
            return outcome(false, format!("q={q} w={ws} R={r} T={t}: formula {formula}, grid {grid}"));
        }
        n += 1;
    }
    outcome(true, format!("{n} grid points, oracle depth <= 6"))
}

fn expectation_oracle() -> Outcome {
    let (mut n, mut skipped) = (0, 0);
    for (q, ws, r, t) in small_grid() {
        let digits = (ws.m() * ws.n()) as f64 * precision_required(&ws, r, t) as f64;
        if digits * (q as f64).log2() > 20.0 {
            skipped += 1;
            continue;
        }
        let avg = exhaustive_average(q, &ws, r, t, 1 << 20).unwrap();
        let e = expected_count::<Rational>(q, &ws, r, t);
        if avg != e {
            return outcome(false, format!("q={q} w={ws} R={r} T={t}: average {avg}, expectation {e}"));
        }
        n += 1;
    }
    outcome(true, format!("{n} grid points exhaustively averaged ({skipped} above 2^20 matrices)"))
}

fn symmetry() -> Outcome {
    let (mut equal, mut unequal, mut increments_agree) = (0, Vec::new(), true);
    for (q, ws, r, t) in small_grid() {
        let (e, f) = (measure_e::<Rational>(q, &ws, r, t), measure_f::<Rational>(q, &ws, r, t));
        if e == f {
            equal += 1;
        } else {
            unequal.push(format!("{ws}"));
        }
        if t >= 1 {
            let de = e - measure_e::<Rational>(q, &ws, r, t - 1);
            let df = f - measure_f::<Rational>(q, &ws, r, t - 1);
            increments_agree &= de == df;
        }
    }
    unequal.dedup();
    outcome(
        unequal.is_empty(),
        format!(
            "equal on {equal} of 48 points; differs for weights {unequal:?} (m != n); per-shell increments agree everywhere: {increments_agree}"
        ),
    )
}

fn shell_differences() -> Outcome {
    let mut notes = Vec::new();
    for q in [2u32, 3] {
        for ws in ["(1;1)", "(2;1,1)"] {
            let ws = w(ws);
            for r in -1..=1 {
                let m = |t| measure_e::<Rational>(q, &ws, r, t);
                let first = m(1) - m(0);
                for t in 2..=12 {
                    if m(t) - m(t - 1) != first {
                        return outcome(false, format!("q={q} w={ws} R={r} T={t}"));
                    }
                }
                if m(12) != Rational::from_i64(12) * m(1) {
                    notes.push(format!("q={q},w={ws},R={r}"));
                }
            }
        }
    }
    outcome(
        true,
        format!("constant for T=1..12; measure(T) != T*measure(1) on {} of 12 sets", notes.len()),
    )
}

fn counting_law() -> Outcome {
    let cfg = ExperimentConfig {
        t_values: (4..=12).collect(),
        trials: 200,
        master_seed: 7,
        ..Default::default()
    };
    let records = run_count_experiment(&cfg).unwrap();
    let summary = summarize_counts(&records).unwrap();
    let ratio = summary.mean_ratio.iter().find(|(t, _)| *t == 12).unwrap().1.to_f64();
    let slope = summary.slope.unwrap_or(f64::INFINITY);
    outcome(
        (0.98..=1.02).contains(&ratio) && slope <= 0.6,
        format!("mean N/E at T=12 = {ratio:.4}, error slope = {slope:.3}"),
    )
}

fn reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for i in 0..500 {
        let d = rng.gen_range(1..=3);
        let q = if d == 3 { 2 } else { [2u32, 3][rng.gen_range(0..2)] };
        let b = random_poly_basis(Fq::new(q).unwrap(), d, 2, &mut rng);
        let fast = delta_shortest(&weak_popov_reduce(&b).unwrap());
        let slow = brute_delta(&b);
        if fast != slow {
            return outcome(false, format!("delta case {i}: {fast} vs {slow} on {b}"));
        }
    }
    for i in 0..100 {
        let d = rng.gen_range(2..=3);
        let b = random_unimodular(Fq::new(2).unwrap(), d, 2, &mut rng);
        let fast = alpha_value(&weak_popov_reduce(&b).unwrap()).unwrap();
        let slow = brute_alpha(&b);
        if fast != slow {
            return outcome(false, format!("alpha case {i}: {fast} vs {slow} on {b}"));
        }
    }
    outcome(true, "500 shortest vectors, 100 heights match brute force")
}

fn comparison() -> Outcome {
    let shapes = ["(1;1)", "(2;1,1)", "(1,1;2)"];
    let mut visited = 0;
    for trial in 0..10u64 {
        let ws = w(shapes[trial as usize % 3]);
        let q = [2u32, 3][trial as usize % 2];
        let a = sample_matrix(Fq::new(q).unwrap(), ws.m(), ws.n(), 1100, trial_seed(8, trial));
        let mut walker = OrbitWalker::new(&a, &ws).unwrap();
        for _ in 0..512 {
            for r in [1, 2] {
                if !comparison_bounds_hold(walker.lattice(), r).unwrap() {
                    return outcome(false, format!("trial {trial} step {} r={r}", walker.step()));
                }
            }
            visited += 1;
            walker.advance().unwrap();
        }
    }
    outcome(true, format!("{visited} orbit lattices, r in {{1, 2}}"))
}

fn sandwich() -> Outcome {
    let mut literal_failures = 0;
    let mut cross_checked = 0;
    for trial in 0..20u64 {
        let (q, ws) = if trial % 2 == 0 { (2, w("(1;1)")) } else { (3, w("(2;1,1)")) };
        let t = 1 + (trial % 4 >= 2) as u32;
        let steps = if q == 2 { 64 } else { 24 };
        let r = 0;
        let a = sample_matrix(Fq::new(q).unwrap(), ws.m(), ws.n(), precision_required(&ws, r, steps + 2 * t), trial_seed(9, trial));
        let b = ua_basis(&a);
        let s = sandwich_counts(&b, &ws, r, t, steps, 1 << 28).unwrap();
        if !s.holds() {
            return outcome(false, format!("trial {trial}: {s:?}"));
        }
        literal_failures += !s.literal_holds() as u32;
        // the level bookkeeping against direct counts on the first few regions
        if trial < 4 {
            for k in 0..=4 {
                let direct = siegel_count(&RegionSpec::E { t: k, r }, &b, &ws, 1 << 28).unwrap();
                if direct != s.count_upto(k) {
                    return outcome(false, format!("trial {trial}: #E_{k} {direct} vs {}", s.count_upto(k)));
                }
                cross_checked += 1;
            }
        }
    }
    outcome(
        true,
        format!(
            "T#(E_(N-1)\\E_T) <= S <= (T+1)#E_(N+T-1) on 20 orbits; literal (E_N, T#E_(N+T)) form fails on {literal_failures}; {cross_checked} level counts cross-checked"
        ),
    )
}

fn equidistribution() -> (Outcome, Outcome) {
    let base = ExperimentConfig {
        t_values: vec![2],
        steps: 1024,
        trials: 20,
        master_seed: 10,
        observable: "siegel:E".into(),
        ..Default::default()
    };
    let judge = |target: OrbitTarget| {
        let cfg = ExperimentConfig { target, ..base.clone() };
        let records = run_orbit_experiment(&cfg).unwrap();
        let target = records[0].centering.to_f64();
        let summaries = summarize_orbits(&records);
        let close = summaries
            .iter()
            .all(|s| (s.final_average.to_f64() - target).abs() <= 0.1 * target);
        let fast = summaries.iter().filter(|s| s.slope.is_some_and(|x| x <= -0.4)).count();
        let mean: f64 = summaries.iter().map(|s| s.final_average.to_f64()).sum::<f64>() / summaries.len() as f64;
        (close && fast >= 16, format!("target {target}, mean average {mean:.4}, {fast}/20 slopes <= -0.4, all within 10%: {close}"))
    };
    let (p, d) = judge(OrbitTarget::ShellSlope { n0: 8 });
    let (pc, dc) = judge(OrbitTarget::MeanValue);
    (outcome(p, format!("T*c: {d}")), outcome(pc, format!("(T+1)*c: {dc}")))
}

fn directional() -> Outcome {
    let (q, ws, r, t) = (3u32, w("(1;1)"), 1i64, 12u32);
    let alpha = Cylinder::leading_digit_partition(Side::Alpha, q);
    let beta = Cylinder::leading_digit_partition(Side::Beta, q);
    let mut worst = 1.0f64;
    for c1 in &alpha {
        for c2 in &beta {
            let cfg = ExperimentConfig {
                q,
                weights: ws.clone(),
                r,
                t_values: vec![t],
                trials: 50,
                master_seed: 11,
                c1: c1.clone(),
                c2: c2.clone(),
                ..Default::default()
            };
            let records = run_count_experiment(&cfg).unwrap();
            let ratio = summarize_counts(&records).unwrap().mean_ratio[0].1.to_f64();
            if (ratio - 1.0).abs() > (worst - 1.0).abs() {
                worst = ratio;
            }
        }
    }
    // partition additivity on the same matrices
    let f = Fq::new(q).unwrap();
    let depth = precision_required(&ws, r, t);
    for trial in 0..50u64 {
        let a = sample_matrix(f, 1, 1, depth, trial_seed(11, trial));
        let full = count_solutions(&a, &ws, r, t).unwrap().count;
        let whole = count_solutions_directional(&a, &ws, r, t, &Cylinder::Full, &Cylinder::Full).unwrap();
        let mut parts = 0;
        for c1 in &alpha {
            for c2 in &beta {
                parts += count_solutions_directional(&a, &ws, r, t, c1, c2).unwrap().count;
            }
        }
        if parts != whole.count || whole.count + whole.degenerate != full {
            return outcome(false, format!("trial {trial}: parts {parts}, whole {whole:?}, count {full}"));
        }
    }
    let per_pair = Rational::int_pow(q, 2)
        * measure_e_directional::<Rational>(q, &ws, r, t, &alpha[0], &beta[0]);
    outcome(
        (0.9..=1.1).contains(&worst),
        format!("worst mean ratio {worst:.4} over 4 cylinder pairs (target {} each); additivity exact on 50 matrices", per_pair.to_f64()),
    )
}

fn good_functions() -> Outcome {
    let mut checked = 0;
    let mut worst_margin = f64::INFINITY;
    let mut run = |f: &MultiPoly, eps: &[i64], depth: u32| -> Result<(), String> {
        let rep = good_function_check(f, eps, depth, 1 << 22).map_err(|e| e.to_string())?;
        let slope = rep.slope.ok_or(format!("{f}: no positive ratios"))?;
        if !rep.constant.is_finite() || slope < rep.exponent - 0.05 {
            return Err(format!("{f}: C={} slope={slope} exponent={}", rep.constant, rep.exponent));
        }
        worst_margin = worst_margin.min(slope - rep.exponent);
        checked += 1;
        Ok(())
    };
    let eps2: Vec<i64> = (1..=6).map(|j| -j).collect();
    let eps3: Vec<i64> = (1..=4).map(|j| -j).collect();
    for q in [2u32, 3] {
        let f = Fq::new(q).unwrap();
        let (eps, depth) = if q == 2 { (&eps2, 7) } else { (&eps3, 5) };
        for (vars, mono) in [(1, "x0"), (1, "x0^2"), (2, "x0"), (2, "x0*x1"), (2, "x1^2")] {
            if let Err(e) = run(&MultiPoly::parse(f, vars, mono).unwrap(), eps, depth) {
                return outcome(false, e);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let f2 = Fq::new(2).unwrap();
    let mut random = 0;
    while random < 10 {
        let vars = rng.gen_range(1..=2usize);
        let s = rng.gen_range(1..=2u32);
        // monomials of total degree 1..=s; no constant term, so the sublevel sets are nonempty
        let mut terms = Vec::new();
        for e0 in 0..=s {
            for e1 in 0..=(if vars == 2 { s - e0 } else { 0 }) {
                if e0 + e1 >= 1 && rng.gen_bool(0.6) {
                    terms.push((if vars == 2 { vec![e0, e1] } else { vec![e0] }, 1));
                }
            }
        }
        let p = MultiPoly::new(f2, vars, terms).unwrap();
        if p.is_zero() {
            continue;
        }
        if let Err(e) = run(&p, &eps2, 7) {
            return outcome(false, e);
        }
        random += 1;
    }
    outcome(true, format!("{checked} polynomials; smallest slope margin over 1/(rs): {worst_margin:.3}"))
}

fn main() {
    let mut unexpected = Vec::new();
    let mut report = |id: u32, name: &str, start: Instant, o: Outcome| {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{id:>2}] {status} {name} ({:.1}s): {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    };
    let s = Instant::now();
    report(1, "count = lattice count", s, correspondence());
    let s = Instant::now();
    report(2, "volume formula = grid oracle", s, volume_vs_grid());
    let s = Instant::now();
    report(3, "expectation = exhaustive average", s, expectation_oracle());
    let s = Instant::now();
    report(4, "E/F volume symmetry", s, symmetry());
    let s = Instant::now();
    report(5, "shell-difference invariance", s, shell_differences());
    let s = Instant::now();
    report(6, "counting law at desk scale", s, counting_law());
    let s = Instant::now();
    report(7, "reduction vs brute force", s, reduction());
    let s = Instant::now();
    report(8, "ball counts bracket alpha", s, comparison());
    let s = Instant::now();
    report(9, "orbit sandwich", s, sandwich());
    let s = Instant::now();
    let (literal, corrected) = equidistribution();
    report(10, "pointwise equidistribution", s, literal);
    println!("     note  corrected target for [10]: {} {}", if corrected.pass { "PASS" } else { "FAIL" }, corrected.detail);
    let s = Instant::now();
    report(11, "directional counting", s, directional());
    let s = Instant::now();
    report(12, "good-function checker", s, good_functions());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
