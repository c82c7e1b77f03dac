//! Oracle suites: each property compares two independent computations over
//! a deterministic grid and reports how many cases were checked.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{cornacchia, gcd, is_prime, jacobi, small_primes};
use crate::classify::{
    anomalous_condition_form, anomalous_set_form, classify_anomalous, classify_positivity,
    classify_symmetry, Outcome,
};
use crate::constants::{finite_factor, varpi_vanishes, xi};
use crate::counts::{residue_counts_brute, residue_counts_closed, rho_counts, rho_d_mod8_closed, QuadPoly};
use crate::eisenstein::{
    c_bruteforce_table, c_closed, cubic_symbol_jacobi, cubic_symbol_prime, cubic_symbol_rational,
    gauss_sum_cubic, EisInt, UnitW6,
};
use crate::frobenius::{ap_bruteforce, ap_formula, is_good, split_type, CurveSpec, SplitType};
use crate::gaussian::{
    gauss_sum_quartic, q_bruteforce_table, q_closed, quartic_symbol_jacobi, quartic_symbol_prime,
    quartic_symbol_rational, GaussInt, UnitI4,
};
use crate::{Error, Result, CM_DISCRIMINANTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Symbols,
    GaussSums,
    Frobenius,
    ResidueCounts,
    Classifiers,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Symbols,
        Suite::GaussSums,
        Suite::Frobenius,
        Suite::ResidueCounts,
        Suite::Classifiers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symbols => "symbols",
            Suite::GaussSums => "gauss-sums",
            Suite::Frobenius => "frobenius",
            Suite::ResidueCounts => "residue-counts",
            Suite::Classifiers => "classifiers",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: String,
    pub passed: bool,
    pub cases: u64,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyResult {
    fn new(suite: Suite, property: &str) -> Self {
        PropertyResult { suite, property: property.into(), passed: true, cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(msg());
        }
    }

    fn error(&mut self, e: Error, ctx: impl FnOnce() -> String) {
        self.check(false, || format!("{}: {e}", ctx()));
    }
}

/// Grid sizes. `full` matches the acceptance criteria; `quick` is for
/// interactive use.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub symbol_pairs: u64,
    pub q_max: u64,
    pub c_max: u64,
    pub gauss_prime_max: u64,
    pub ap_prime_max: u64,
    pub residue_q_max: u64,
    pub classifier_g: i64,
    pub classifier_r: i64,
    pub anomalous_g: i64,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            symbol_pairs: 10_000,
            q_max: 99,
            c_max: 91,
            gauss_prime_max: 300,
            ap_prime_max: 10_000,
            residue_q_max: 99,
            classifier_g: 1000,
            classifier_r: 60,
            anomalous_g: 1_000_000,
        }
    }

    pub fn quick() -> Self {
        Scale {
            symbol_pairs: 2000,
            q_max: 45,
            c_max: 49,
            gauss_prime_max: 100,
            ap_prime_max: 2000,
            residue_q_max: 45,
            classifier_g: 100,
            classifier_r: 24,
            anomalous_g: 20_000,
        }
    }
}

pub fn run_suite(suite: Suite, scale: Scale) -> Vec<PropertyResult> {
    match suite {
        Suite::Symbols => symbols(scale),
        Suite::GaussSums => gauss_sums(scale),
        Suite::Frobenius => frobenius(scale),
        Suite::ResidueCounts => residue_counts(scale),
        Suite::Classifiers => classifiers(scale),
    }
}

/// Gaussian primes of odd norm up to `limit`: `a+bi` for split `p`, `p` itself
/// for inert `p`.
pub fn gaussian_primes(limit: u64) -> Vec<GaussInt> {
    let mut out = Vec::new();
    for p in small_primes(limit).into_iter().filter(|&p| p > 2) {
        if p % 4 == 1 {
            let (a, b) = cornacchia(1, p).expect("p ≡ 1 mod 4");
            out.push(GaussInt::new(a as i64, b as i64));
            out.push(GaussInt::new(a as i64, -(b as i64)));
        } else if p * p <= limit {
            out.push(GaussInt::new(p as i64, 0));
        }
    }
    out
}

/// Eisenstein primes with norm coprime to 3 up to `limit`.
pub fn eisenstein_primes(limit: u64) -> Vec<EisInt> {
    let mut out = Vec::new();
    for p in small_primes(limit).into_iter().filter(|&p| p > 3) {
        if p % 3 == 1 {
            // p = a² - ab + b² from 4p = t² + 3s².
            let (t, s) = crate::arith::cornacchia4(3, p).expect("p ≡ 1 mod 3");
            let (t, s) = (t as i64, s as i64);
            let a = (t + s) / 2;
            out.push(EisInt::new(a, s));
            out.push(EisInt::new(a, s).conj());
        } else if p * p <= limit {
            out.push(EisInt::new(p as i64, 0));
        }
    }
    out
}

fn symbols(scale: Scale) -> Vec<PropertyResult> {
    let s = Suite::Symbols;
    let mut rng = StdRng::seed_from_u64(1);
    let gp = gaussian_primes(200_000);
    let ep = eisenstein_primes(200_000);

    let mut quartic = PropertyResult::new(s, "quartic reciprocity chain = exponentiation");
    let mut done = 0;
    while done < scale.symbol_pairs {
        let pi = *gp.choose(&mut rng).unwrap();
        let alpha = GaussInt::new(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(-1_000_000..=1_000_000));
        let (Ok(a), Ok(b)) = (quartic_symbol_jacobi(alpha, pi), quartic_symbol_prime(alpha, pi)) else {
            quartic.error(Error::NotOdd, || format!("α = {alpha}, π = {pi}"));
            break;
        };
        if a.is_none() && b.is_none() {
            continue;
        }
        quartic.check(a == b, || format!("α = {alpha}, π = {pi}: chain {a:?}, power {b:?}"));
        done += 1;
    }

    let mut cubic = PropertyResult::new(s, "cubic reciprocity chain = exponentiation");
    let mut done = 0;
    while done < scale.symbol_pairs {
        let pi = *ep.choose(&mut rng).unwrap();
        let alpha = EisInt::new(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(-1_000_000..=1_000_000));
        let (Ok(a), Ok(b)) = (cubic_symbol_jacobi(alpha, pi), cubic_symbol_prime(alpha, pi)) else {
            cubic.error(Error::NotCoprimeTo3, || format!("α = {alpha}, π = {pi}"));
            break;
        };
        if a.is_none() && b.is_none() {
            continue;
        }
        cubic.check(a == b, || format!("α = {alpha}, π = {pi}: chain {a:?}, power {b:?}"));
        done += 1;
    }

    let n = scale.symbol_pairs / 10;
    let odd_primes: Vec<u64> = small_primes(10_000).into_iter().filter(|&p| p > 2).collect();
    let mut sun = PropertyResult::new(s, "(ξ/p)_4^2 = (N(ξ)/p)");
    for _ in 0..n {
        let p = *odd_primes.choose(&mut rng).unwrap();
        let z = GaussInt::new(rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000));
        match quartic_symbol_rational(z, p) {
            Ok(v) => {
                let lhs = v.map_or(0, |u| u.pow(2).re());
                let rhs = jacobi((z.norm() % p as i128) as i64, p) as i64;
                sun.check(lhs == rhs, || format!("ξ = {z}, p = {p}"));
            }
            Err(e) => sun.error(e, || format!("ξ = {z}, p = {p}")),
        }
    }

    let mut rat4 = PropertyResult::new(s, "(a/q)_4 = 1 for rational a");
    let mut rat3 = PropertyResult::new(s, "(a/q)_3 = 1 for rational a");
    while rat4.cases < n || rat3.cases < n {
        let q: u64 = rng.gen_range(1..=20_000);
        let a: i64 = rng.gen_range(-1_000_000..=1_000_000);
        if gcd(a, q as i64) != 1 {
            continue;
        }
        if q % 2 == 1 && rat4.cases < n {
            let v = quartic_symbol_rational(GaussInt::new(a, 0), q);
            rat4.check(v == Ok(Some(UnitI4::ONE)), || format!("a = {a}, q = {q}: {v:?}"));
        }
        if q % 3 != 0 && rat3.cases < n {
            let v = cubic_symbol_rational(EisInt::new(a, 0), q);
            rat3.check(v == Ok(Some(UnitW6::ONE)), || format!("a = {a}, q = {q}: {v:?}"));
        }
    }
    vec![quartic, cubic, sun, rat4, rat3]
}

fn gauss_sums(scale: Scale) -> Vec<PropertyResult> {
    let s = Suite::GaussSums;
    let mut qp = PropertyResult::new(s, "Q_β closed form = brute force");
    for q in (1..=scale.q_max).step_by(2) {
        let table = match q_bruteforce_table(q) {
            Ok(t) => t,
            Err(e) => {
                qp.error(e, || format!("q = {q}"));
                continue;
            }
        };
        for (t, row) in table.iter().enumerate() {
            for k in 0..4u8 {
                let closed = q_closed(q, t as i64, UnitI4(k)).map(|v| v.to_gauss());
                qp.check(closed == Ok(Some(row[k as usize])), || {
                    format!("q = {q}, t = {t}, β = i^{k}: closed {closed:?}, brute {}", row[k as usize])
                });
            }
        }
    }

    let mut cp = PropertyResult::new(s, "C_β closed form = brute force");
    for q in (1..=scale.c_max).filter(|q| q % 2 == 1 && q % 3 != 0) {
        for kappa in 0..2u8 {
            let table = match c_bruteforce_table(q, kappa) {
                Ok(t) => t,
                Err(e) => {
                    cp.error(e, || format!("q = {q}"));
                    continue;
                }
            };
            for (t, row) in table.iter().enumerate() {
                for (i, beta) in UnitW6::all().into_iter().enumerate() {
                    let closed = c_closed(q, t as i64, beta, kappa).map(|v| v.to_eis());
                    cp.check(closed == Ok(Some(row[i])), || {
                        format!("q = {q}, t = {t}, β = {beta:?}, κ = {kappa}: closed {closed:?}, brute {}", row[i])
                    });
                }
            }
        }
    }

    let mut gq = PropertyResult::new(s, "𝔊(p) = p·(i/p)_4");
    let mut gc = PropertyResult::new(s, "ℭ(p,κ) = p·(3/p)^κ");
    for p in small_primes(scale.gauss_prime_max - 1).into_iter().filter(|&p| p > 2) {
        let pi = p as i64;
        match (gauss_sum_quartic(p), quartic_symbol_rational(GaussInt::I, p)) {
            (Ok(g), Ok(Some(u))) => {
                let want = GaussInt::new(pi, 0).times_unit(u);
                gq.check(g == want, || format!("p = {p}: {g} vs {want}"));
            }
            (Err(e), _) | (_, Err(e)) => gq.error(e, || format!("p = {p}")),
            (_, Ok(None)) => gq.check(false, || format!("p = {p}: (i/p)_4 = 0")),
        }
        if p > 3 {
            for kappa in 0..2u8 {
                let want = EisInt::new(pi * if kappa == 1 { jacobi(3, p) as i64 } else { 1 }, 0);
                match gauss_sum_cubic(p, kappa) {
                    Ok(g) => gc.check(g == want, || format!("p = {p}, κ = {kappa}: {g} vs {want}")),
                    Err(e) => gc.error(e, || format!("p = {p}, κ = {kappa}")),
                }
            }
        }
    }
    vec![qp, cp, gq, gc]
}

pub const FROBENIUS_TWISTS: [i64; 12] = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7];

fn frobenius(scale: Scale) -> Vec<PropertyResult> {
    let s = Suite::Frobenius;
    let mut split = PropertyResult::new(s, "ap_formula = ap_bruteforce on good split primes");
    let mut inert = PropertyResult::new(s, "a_p = 0 on good inert primes");
    let mut hasse = PropertyResult::new(s, "Hasse bound");
    let primes = small_primes(scale.ap_prime_max - 1);
    let jobs: Vec<(i64, i64)> = CM_DISCRIMINANTS
        .iter()
        .flat_map(|&d| FROBENIUS_TWISTS.iter().map(move |&g| (d, g)))
        .collect();
    let one = |&(d, g): &(i64, i64)| -> Vec<(u8, bool, String)> {
        let curve = CurveSpec::new(d, g).expect("valid curve");
        let mut out = Vec::new();
        for &p in &primes {
            if !is_good(&curve, p) {
                continue;
            }
            let brute = match ap_bruteforce(&curve, p) {
                Ok(v) => v,
                Err(e) => {
                    out.push((2, false, format!("D = {d}, g = {g}, p = {p}: {e}")));
                    continue;
                }
            };
            out.push((2, (brute * brute) < 4 * p as i64, format!("D = {d}, g = {g}, p = {p}: a_p = {brute}")));
            match split_type(d, p) {
                Ok(SplitType::Split) => {
                    let f = ap_formula(&curve, p);
                    out.push((0, f == Ok(brute), format!("D = {d}, g = {g}, p = {p}: formula {f:?}, brute {brute}")));
                }
                Ok(SplitType::Inert) => out.push((1, brute == 0, format!("D = {d}, g = {g}, p = {p}: a_p = {brute}"))),
                _ => {}
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    let all: Vec<_> = {
        use rayon::prelude::*;
        jobs.par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let all: Vec<_> = jobs.iter().map(one).collect();
    for (kind, ok, msg) in all.into_iter().flatten() {
        let target = match kind {
            0 => &mut split,
            1 => &mut inert,
            _ => &mut hasse,
        };
        target.check(ok, || msg);
    }

    let mut spot = PropertyResult::new(s, "spot values");
    for (d, g, p, want) in [(1, -4, 5, -2), (3, 2, 7, -1), (11, 1, 5, -3), (2, 1, 3, 2)] {
        let got = CurveSpec::new(d, g).and_then(|c| ap_bruteforce(&c, p));
        spot.check(got == Ok(want), || format!("a_{p}(D = {d}, g = {g}) = {got:?}, expected {want}"));
    }
    vec![split, inert, hasse, spot]
}

fn residue_counts(scale: Scale) -> Vec<PropertyResult> {
    let s = Suite::ResidueCounts;
    let mut closed = PropertyResult::new(s, "N₀, N₁, N₂, N₊, N₋ closed form = brute force");
    for q in (1..=scale.residue_q_max).step_by(2) {
        for a in -6..=6i64 {
            if a == 0 || gcd(2 * a, q as i64) != 1 {
                continue;
            }
            for b in -6..=6 {
                for c in -6..=6 {
                    let f = QuadPoly::new(a, b, c);
                    if f.discriminant() == 0 || !f.is_primitive() {
                        continue;
                    }
                    let x = residue_counts_closed(&f, q);
                    let y = residue_counts_brute(&f, q);
                    closed.check(x.is_ok() && x == y, || format!("f = {f:?}, q = {q}: {x:?} vs {y:?}"));
                }
            }
        }
    }

    let mut rho = PropertyResult::new(s, "ρ_D(r, 8, 2k+1) closed form = brute force");
    for d in CM_DISCRIMINANTS.into_iter().filter(|&d| d >= 7) {
        for r in -24..=24i64 {
            for k in 0..4u8 {
                let brute = rho_counts(d, r, 8, 2 * k as i64 + 1).map(|v| v.1);
                let want = rho_d_mod8_closed(d, r, k);
                rho.check(brute == Ok(Some(want)), || format!("D = {d}, r = {r}, k = {k}: {brute:?} vs {want}"));
            }
        }
    }
    vec![closed, rho]
}

fn classifiers(scale: Scale) -> Vec<PropertyResult> {
    let s = Suite::Classifiers;
    let jobs: Vec<(i64, i64)> = CM_DISCRIMINANTS
        .iter()
        .flat_map(|&d| (-scale.classifier_g..=scale.classifier_g).filter(|&g| g != 0).map(move |g| (d, g)))
        .collect();
    let r_max = scale.classifier_r;
    let one = |&(d, g): &(i64, i64)| -> Vec<(u8, bool, String)> {
        let mut out = Vec::new();
        let mut ffs = std::collections::HashMap::new();
        for r in (-r_max..=r_max).filter(|&r| r != 0) {
            ffs.insert(r, finite_factor(d, g, r).map(|v| v.0));
        }
        for r in (-r_max..=r_max).filter(|&r| r != 0) {
            let ctx = format!("D = {d}, g = {g}, r = {r}");
            let vanishes = match (&ffs[&r], xi(d, r)) {
                (Ok(ff), x) => Ok(x == 0 || ff.is_zero()),
                (Err(e), _) => Err(e.clone()),
            };
            let pos = classify_positivity(d, g, r);
            match (pos, vanishes) {
                (Ok(v), Ok(z)) => out.push((0, (v.result == Outcome::Vanishes) == z, format!("{ctx}: {v:?}, exact vanishing {z}"))),
                (a, b) => out.push((0, false, format!("{ctx}: {a:?} / {b:?}"))),
            }
            let symmetric = match (&ffs[&r], &ffs[&-r]) {
                _ if xi(d, r) == 0 => Ok(true),
                (Ok(a), Ok(b)) => Ok(a == b),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            match (classify_symmetry(d, g, r), symmetric) {
                (Ok(v), Ok(z)) => out.push((1, (v.result == Outcome::Symmetric) == z, format!("{ctx}: {v:?}, exact symmetry {z}"))),
                (a, b) => out.push((1, false, format!("{ctx}: {a:?} / {b:?}"))),
            }
        }
        let at1 = varpi_vanishes(d, g, 1);
        match (classify_anomalous(d, g), at1) {
            (Ok(v), Ok(z)) => out.push((2, (v.result == Outcome::Finite) == z, format!("D = {d}, g = {g}: {v:?}, vanishing at r = 1 {z}"))),
            (a, b) => out.push((2, false, format!("D = {d}, g = {g}: {a:?} / {b:?}"))),
        }
        out
    };
    #[cfg(feature = "parallel")]
    let all: Vec<_> = {
        use rayon::prelude::*;
        jobs.par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let all: Vec<_> = jobs.iter().map(one).collect();

    let mut pos = PropertyResult::new(s, "classify_positivity ⇔ exact vanishing of ϖ");
    let mut sym = PropertyResult::new(s, "classify_symmetry ⇔ equal ±r finite factors");
    let mut anom = PropertyResult::new(s, "classify_anomalous ⇔ vanishing at r = 1");
    for (kind, ok, msg) in all.into_iter().flatten() {
        let target = match kind {
            0 => &mut pos,
            1 => &mut sym,
            _ => &mut anom,
        };
        target.check(ok, || msg);
    }

    let mut forms = PropertyResult::new(s, "anomalous set form ⇔ condition form");
    for d in [3, 11] {
        for g in (-scale.anomalous_g..=scale.anomalous_g).filter(|&g| g != 0) {
            let a = anomalous_set_form(d, g).map(|v| v.is_some());
            let b = anomalous_condition_form(d, g).map(|v| v.is_some());
            forms.check(a.is_ok() && a == b, || format!("D = {d}, g = {g}: set {a:?}, condition {b:?}"));
        }
    }
    vec![pos, sym, anom, forms]
}

/// Runs `ap_formula` against brute force for one prime; used by callers that
/// want a single comparison.
pub fn ap_agrees(d: i64, g: i64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    let curve = CurveSpec::new(d, g)?;
    Ok(ap_formula(&curve, p)? == ap_bruteforce(&curve, p)?)
}
