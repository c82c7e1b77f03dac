//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 10 is
//! informational and never fails the run.

use std::time::{Duration, Instant};

use cmlt::arith::{is_prime, prime_count};
use cmlt::constants::{c_d_r, h_d_r, varpi, Method};
use cmlt::counts::{count_ed, count_fixed_trace, count_gd, count_trace, count_traces};
use cmlt::eisenstein::UnitW6;
use cmlt::frobenius::CurveSpec;
use cmlt::gaussian::UnitI4;
use cmlt::verify::{run_suite, PropertyResult, Scale, Suite};
use cmlt::CM_DISCRIMINANTS;

struct Outcome {
    id: u8,
    pass: bool,
    gating: bool,
    detail: String,
}

fn report(id: u8, pass: bool, elapsed: Duration, budget: Duration, detail: String) -> Outcome {
    let in_time = elapsed <= budget;
    Outcome {
        id,
        pass: pass && in_time,
        gating: true,
        detail: format!("{detail}; {:.1}s of {}s", elapsed.as_secs_f64(), budget.as_secs()),
    }
}

fn suite_criterion(id: u8, suites: &[Suite], budget_s: u64, filter: impl Fn(&PropertyResult) -> bool) -> Outcome {
    let t = Instant::now();
    let results: Vec<_> = suites
        .iter()
        .flat_map(|&s| run_suite(s, Scale::full()))
        .filter(|r| filter(r))
        .collect();
    let pass = results.iter().all(|r| r.passed && r.cases > 0);
    let detail = results
        .iter()
        .map(|r| match &r.failure {
            None => format!("{}: {} cases", r.property, r.cases),
            Some(f) => format!("{}: {} cases, FAILED at {f}", r.property, r.cases),
        })
        .collect::<Vec<_>>()
        .join("; ");
    report(id, pass, t.elapsed(), Duration::from_secs(budget_s), detail)
}

fn deuring() -> Outcome {
    let t = Instant::now();
    let x = 10_000_000;
    let curve = CurveSpec::new(1, -4).unwrap();
    let hist = count_traces(&curve, x, 0, 0).unwrap();
    let zero = hist.counts.get(&0).copied().unwrap_or(0);
    let ratio = zero as f64 / prime_count(x) as f64;
    let pass = (ratio - 0.5).abs() < 0.005;
    report(5, pass, t.elapsed(), Duration::from_secs(60), format!("π_{{E,0}}/π = {zero}/{} = {ratio:.5}", prime_count(x)))
}

fn constant_identity() -> Outcome {
    let t = Instant::now();
    let cutoff = 10_000_000;
    let (mut worst_c, mut worst_m, mut cases) = (0f64, 0f64, 0);
    for d in CM_DISCRIMINANTS {
        for r in (-12..=12i64).filter(|&r| r != 0) {
            let h = h_d_r(d, r, cutoff, Method::Direct).unwrap();
            if h == 0.0 {
                continue;
            }
            cases += 1;
            let c = c_d_r(d, r, cutoff).unwrap();
            let a = h_d_r(d, r, cutoff, Method::Accelerated).unwrap();
            worst_c = worst_c.max((c / h - 1.0).abs());
            worst_m = worst_m.max((a / h - 1.0).abs());
        }
    }
    let pass = worst_c < 5e-3 && worst_m < 5e-3 && cases > 0;
    report(
        7,
        pass,
        t.elapsed(),
        Duration::from_secs(120),
        format!("{cases} (D, r); max |c/h - 1| = {worst_c:.2e}, max |accelerated/direct - 1| = {worst_m:.2e}"),
    )
}

/// Elements `a + bi` with `2a = r` and prime norm, counted directly.
fn gaussian_elements_with_trace(r: i64, x: u64) -> u64 {
    if r % 2 != 0 {
        return 0;
    }
    let a = (r / 2) as i128;
    let mut n = 0;
    let mut b = 0i128;
    while a * a + b * b <= x as i128 {
        let v = (a * a + b * b) as u64;
        if is_prime(v) {
            n += if b == 0 { 1 } else { 2 };
        }
        b += 1;
    }
    n
}

/// Elements `a + bω` with `2a - b = r` and prime norm, counted directly.
fn eisenstein_elements_with_trace(r: i64, x: u64) -> u64 {
    let r = r as i128;
    let mut n = 0;
    let lim = 2 * ((x as f64).sqrt() as i128) + 2 + r.abs();
    for a in -lim..=lim {
        let v = 3 * a * a - 3 * a * r + r * r;
        if v <= x as i128 && v > 0 && is_prime(v as u64) {
            n += 1;
        }
    }
    n
}

fn structural() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;

    let mut worst = 0;
    for d in [2, 7, 11, 19] {
        for r in 1..=4 {
            match count_fixed_trace(d, r, 1_000_000) {
                Ok((e, p)) => worst = worst.max(e.abs_diff(p)),
                Err(_) => continue,
            }
        }
    }
    pass &= worst <= 10;
    notes.push(format!("fixed-trace routes max difference {worst}"));

    let x = 100_000;
    let mut worst_g = 0;
    for r in [2i64, -2, 4, 6, 10, 14, 20, -30] {
        let mut sum = 0;
        for d in 0..4 {
            for b in 0..4 {
                for g1 in 0..8u8 {
                    for g2 in (0..8u8).filter(|g2| g2 % 2 == g1 % 2) {
                        sum += count_gd(x, r, 3, UnitI4(b), (g1, g2), d).unwrap();
                    }
                }
            }
        }
        worst_g = worst_g.max(sum.abs_diff(gaussian_elements_with_trace(r, x)));
    }
    pass &= worst_g <= 4;
    notes.push(format!("Σ𝒢_d vs 2π_(1,r) max difference {worst_g}"));

    let mut worst_e = 0;
    for r in [1i64, -1, 2, 5, -7, 8, 13, 16] {
        let mut sum = 0;
        for d in 0..3 {
            for beta in UnitW6::all() {
                for gamma in 0..3 {
                    for k in 0..4 {
                        for eps in [1, -1] {
                            sum += count_ed(x, r, 5, beta, gamma, d, k, eps).unwrap();
                        }
                    }
                }
            }
        }
        worst_e = worst_e.max(sum.abs_diff(eisenstein_elements_with_trace(r, x)));
    }
    pass &= worst_e <= 6;
    notes.push(format!("Σℰ vs 2π_(3,r) max difference {worst_e}"));

    let x = 10_000_000u64;
    let scale = (x as f64).sqrt() / (x as f64).ln();
    let mut worst_margin = f64::INFINITY;
    let mut cases = 0;
    for d in CM_DISCRIMINANTS {
        for g in [1i64, -1, 2, 3, -5] {
            let curve = CurveSpec::new(d, g).unwrap();
            for r in 1..=6i64 {
                let h = h_d_r(d, r, 1_000_000, Method::Direct).unwrap();
                let n = count_trace(&curve, r, x).unwrap().0 + count_trace(&curve, -r, x).unwrap().0;
                let bound = 3.51 * h * scale + 50.0;
                worst_margin = worst_margin.min(bound - n as f64);
                cases += 1;
            }
        }
    }
    pass &= worst_margin >= 0.0;
    notes.push(format!("upper bound on {cases} (D, g, r), smallest margin {worst_margin:.1}"));

    report(9, pass, t.elapsed(), Duration::from_secs(300), notes.join("; "))
}

fn ratio(d: i64, g: i64, r: i64, x: u64) -> (u64, f64) {
    let curve = CurveSpec::new(d, g).unwrap();
    let n = count_trace(&curve, r, x).unwrap().0;
    let w = varpi(d, g, r, 100_000, Method::Accelerated).unwrap().varpi;
    let pred = w * (x as f64).sqrt() / (x as f64).ln();
    (n, n as f64 / pred)
}

fn smoke() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for (d, g, r) in [(3, -432, 2), (3, -432, -1), (3, -432, 5), (1, -4, 2), (1, -4, -2)] {
        let (n, q) = ratio(d, g, r, 100_000_000);
        pass &= (0.6..=1.5).contains(&q);
        notes.push(format!("D={d} g={g} r={r}: π={n} ratio {q:.4}"));
    }
    for (d, g, r) in [(3, -432, 3), (3, -432, 1), (1, -4, 1), (1, -4, 8), (2, 1, 1), (7, 1, 7)] {
        let v = varpi(d, g, r, 100_000, Method::Accelerated).unwrap();
        let n = count_trace(&CurveSpec::new(d, g).unwrap(), r, 10_000_000).unwrap().0;
        pass &= !v.vanishes || n <= 3;
        notes.push(format!("D={d} g={g} r={r}: ϖ vanishes {} π={n}", v.vanishes));
    }
    for r in [8i64, 16, 32, 40] {
        let x = 100_000_000;
        let n = count_trace(&CurveSpec::new(3, 2).unwrap(), r, x).unwrap().0;
        let w = varpi(3, 2, r, 100_000, Method::Accelerated).unwrap().varpi;
        notes.push(format!("y²=x³+2 r={r} (r mod 24 = {}): π={n} ϖ={w:.4}", r % 24));
    }
    Outcome {
        id: 10,
        pass,
        gating: false,
        detail: format!("{}; {:.1}s of 600s", notes.join("; "), t.elapsed().as_secs_f64()),
    }
}

#[test]
fn acceptance() {
    let outcomes = vec![
        suite_criterion(1, &[Suite::Symbols], 30, |_| true),
        suite_criterion(2, &[Suite::GaussSums], 120, |r| r.property.contains("closed form")),
        suite_criterion(3, &[Suite::GaussSums], 60, |r| !r.property.contains("closed form")),
        suite_criterion(4, &[Suite::Frobenius], 180, |_| true),
        deuring(),
        suite_criterion(6, &[Suite::Classifiers], 300, |_| true),
        constant_identity(),
        suite_criterion(8, &[Suite::ResidueCounts], 60, |_| true),
        structural(),
        smoke(),
    ];
    for o in &outcomes {
        let tag = if o.gating { "" } else { " (informational)" };
        println!("criterion {:2}: {}{tag} -- {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| o.gating && !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
