//! Prime counting by Frobenius trace, by fixed trace of prime elements, by
//! quadratic polynomials, and residue-class solution counts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{cornacchia, cornacchia4, factorize, fold_primes, gcd, is_prime, isqrt, jacobi, kronecker};
use crate::eisenstein::{cubic_symbol_prime, EisInt, UnitW6};
use crate::frobenius::{ap_formula, is_good, split_type, CurveSpec, SplitType};
use crate::gaussian::{quartic_symbol_prime, GaussInt, UnitI4};
use crate::{check_discriminant, Error, Result};

/// `a m² + b m + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadPoly {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadPoly {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadPoly { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, m: i64) -> i128 {
        let m = m as i128;
        (self.a as i128 * m + self.b as i128) * m + self.c as i128
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// `𝔥_{D,r}`, when defined.
    pub fn fixed_trace(d: i64, r: i64) -> Option<QuadPoly> {
        if d % 4 == 3 {
            Some(QuadPoly::new(d, -d * r, (d + 1) / 4 * r * r))
        } else if r % 2 == 0 {
            Some(QuadPoly::new(d, 0, r * r / 4))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceHistogram {
    pub curve: CurveSpec,
    pub x: u64,
    pub r_min: i64,
    pub r_max: i64,
    pub counts: BTreeMap<i64, u64>,
    /// Good primes whose trace falls outside the window.
    pub overflow: u64,
    pub good_primes: u64,
    pub bad_primes_skipped: Vec<u64>,
}

#[derive(Clone, Default)]
struct HistAcc {
    counts: Vec<u64>,
    overflow: u64,
    good: u64,
    bad: Vec<u64>,
}

/// Histogram of `a_p` over good primes `p ≤ x`.
pub fn count_traces(curve: &CurveSpec, x: u64, r_min: i64, r_max: i64) -> Result<TraceHistogram> {
    if r_min > r_max {
        return Err(Error::BadParams("r_min > r_max".into()));
    }
    let width = (r_max - r_min + 1) as usize;
    let init = HistAcc { counts: vec![0; width], ..Default::default() };
    let acc = if x < 2 {
        init
    } else {
        fold_primes(
            2,
            x + 1,
            init,
            |acc, p| {
                if !is_good(curve, p) {
                    acc.bad.push(p);
                    return;
                }
                acc.good += 1;
                let a = ap_formula(curve, p).expect("good prime");
                if (r_min..=r_max).contains(&a) {
                    acc.counts[(a - r_min) as usize] += 1;
                } else {
                    acc.overflow += 1;
                }
            },
            |mut a, b| {
                for (x, y) in a.counts.iter_mut().zip(&b.counts) {
                    *x += y;
                }
                a.overflow += b.overflow;
                a.good += b.good;
                a.bad.extend(b.bad);
                a
            },
        )
    };
    let mut bad = acc.bad;
    bad.sort_unstable();
    Ok(TraceHistogram {
        curve: *curve,
        x,
        r_min,
        r_max,
        counts: (r_min..=r_max).zip(acc.counts).collect(),
        overflow: acc.overflow,
        good_primes: acc.good,
        bad_primes_skipped: bad,
    })
}

/// Integers `(r² + Ds²)/4 ≤ x` for `s > 0`: the norms of elements of trace
/// `r`, with `s` even when `D ≡ 1, 2 mod 4`. Ascending in `s`.
pub fn trace_norm_candidates(d: i64, r: i64, x: u64) -> Vec<u64> {
    let even_only = d % 4 != 3;
    if even_only && r % 2 != 0 {
        return Vec::new();
    }
    let r2 = (r as i128) * (r as i128);
    let mut out = Vec::new();
    let mut s: i128 = if r.rem_euclid(2) == 0 { 2 } else { 1 };
    loop {
        let v = (r2 + d as i128 * s * s) / 4;
        if v > x as i128 {
            break;
        }
        out.push(v as u64);
        s += 2;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Sieve all primes and evaluate `a_p`.
    Sieve,
    /// Evaluate `a_p` only on primes with an element of trace `±r`.
    Candidates,
}

/// Above this bound single-trace counts use the candidate route.
pub const SIEVE_ROUTE_LIMIT: u64 = 1_000_000;

/// `π_{E,r}(x)` via the candidate norms `(r² + Ds²)/4`; exact for every `D`
/// since each candidate's trace is checked with the formula.
pub fn count_trace_candidates(curve: &CurveSpec, r: i64, x: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let cands = trace_norm_candidates(curve.d, r, x);
    let test = |&p: &u64| is_prime(p) && is_good(curve, p) && ap_formula(curve, p).ok() == Some(r);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(cands.par_iter().filter(|p| test(p)).count() as u64)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(cands.iter().filter(|p| test(p)).count() as u64)
    }
}

pub fn count_trace_sieve(curve: &CurveSpec, r: i64, x: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    Ok(count_traces(curve, x, r, r)?.counts[&r])
}

/// `π_{E,r}(x)`, choosing the route by the size of `x`.
pub fn count_trace(curve: &CurveSpec, r: i64, x: u64) -> Result<(u64, Route)> {
    if x <= SIEVE_ROUTE_LIMIT {
        Ok((count_trace_sieve(curve, r, x)?, Route::Sieve))
    } else {
        Ok((count_trace_candidates(curve, r, x)?, Route::Candidates))
    }
}

/// Traces of all prime elements of norm `p` (split or ramified), up to sign.
pub fn element_traces(d: i64, p: u64) -> Vec<i64> {
    let st = match split_type(d, p) {
        Ok(st) => st,
        Err(_) => return Vec::new(),
    };
    if st == SplitType::Inert {
        return Vec::new();
    }
    match d {
        1 => match cornacchia(1, p) {
            Some((m, n)) => vec![2 * m as i64, 2 * n as i64],
            None => Vec::new(),
        },
        3 => {
            let Some((t, s)) = cornacchia4(3, p) else { return Vec::new() };
            let pi = EisInt::new(((t + s) / 2) as i64, s as i64);
            UnitW6::all().iter().map(|&u| pi.times_unit(u).trace().abs()).collect()
        }
        _ if st == SplitType::Ramified => vec![0],
        2 => cornacchia(2, p).map(|(m, _)| vec![2 * m as i64]).unwrap_or_default(),
        _ => cornacchia4(d as u64, p).map(|(t, _)| vec![t as i64]).unwrap_or_default(),
    }
}

/// Distinct primes `≤ x` among `poly(m)`, `m ≥ 1`, with `m ≡ u mod q` when given.
fn poly_primes(poly: &QuadPoly, x: u64, step: Option<(u64, i64)>) -> Vec<u64> {
    if poly.a <= 0 {
        return Vec::new();
    }
    let (q, u) = step.unwrap_or((1, 0));
    let q = q.max(1) as i64;
    let mut m = u.rem_euclid(q);
    if m == 0 {
        m = q;
    }
    // beyond the vertex the values increase
    let vertex = (-poly.b as f64 / (2.0 * poly.a as f64)).max(0.0) as i64 + 1;
    let mut out = Vec::new();
    loop {
        let v = poly.eval(m);
        if v > x as i128 && m > vertex {
            break;
        }
        if v >= 2 && v <= x as i128 && is_prime(v as u64) {
            out.push(v as u64);
        }
        m += q;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `π_{a,b,c}(x)`: primes `≤ x` of the form `am² + bm + c`, `m ≥ 1`.
pub fn count_hl(poly: &QuadPoly, x: u64) -> u64 {
    poly_primes(poly, x, None).len() as u64
}

/// `π_{a,b,c}(x; q, u)`: as `count_hl` with `m ≡ u mod q`.
pub fn count_hl_ap(poly: &QuadPoly, x: u64, q: u64, u: i64) -> u64 {
    poly_primes(poly, x, Some((q, u))).len() as u64
}

/// Unordered pairs `{π, π̄}` of prime elements with norm `≤ x` and trace `r`,
/// counted by scanning prime norms, and primes `𝔥_{D,r}(n) ≤ x`, `n ≥ 1`.
pub fn count_fixed_trace(d: i64, r: i64, x: u64) -> Result<(u64, u64)> {
    check_discriminant(d)?;
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let target = r.abs();
    let elements = if x < 2 {
        0
    } else {
        fold_primes(2, x + 1, 0u64, |c, p| *c += element_traces(d, p).contains(&target) as u64, |a, b| a + b)
    };
    let poly = QuadPoly::fixed_trace(d, r).map_or(0, |h| count_hl(&h, x));
    Ok((elements, poly))
}

/// `Π_D(x; r, q, a)`: unordered pairs of prime elements with trace `r`,
/// norm `≤ x` and norm `≡ a mod q`.
pub fn count_pi_d(d: i64, x: u64, r: i64, q: u64, a: i64) -> Result<u64> {
    check_discriminant(d)?;
    if r == 0 {
        return Err(Error::ZeroR);
    }
    if q == 0 || gcd(q as i64, a) != 1 {
        return Err(Error::BadResidue);
    }
    let mut ps: Vec<u64> = trace_norm_candidates(d, r, x)
        .into_iter()
        .filter(|&p| (p as i64 - a).rem_euclid(q as i64) == 0 && is_prime(p))
        .collect();
    ps.dedup();
    Ok(ps.len() as u64)
}

fn gd_params_ok(alpha: u64, gamma: (u8, u8), d: u8) -> bool {
    alpha % 2 == 1 && d <= 3 && gamma.0 <= 7 && gamma.1 <= 7 && gamma.0 % 2 == gamma.1 % 2
}

/// `𝒢_d(x; r, α, β, γ)`: Gaussian elements of prime norm `≤ x` with
/// `Tr(βπ) = r`, `(α/π)_4 = i^d` and `π ≡ 2γ₁ + 1 + 2γ₂ i mod 16`.
pub fn count_gd(x: u64, r: i64, alpha: u64, beta: UnitI4, gamma: (u8, u8), d: u8) -> Result<u64> {
    if !gd_params_ok(alpha, gamma, d) {
        return Err(Error::BadParams("need α odd, d ≤ 3, γ₁ ≡ γ₂ mod 2 in 0..8".into()));
    }
    if r == 0 {
        return Err(Error::ZeroR);
    }
    if r % 2 != 0 {
        return Ok(0);
    }
    let (ga, gb) = (2 * gamma.0 as i64 + 1, 2 * gamma.1 as i64);
    let h = r / 2;
    let bound = isqrt(x) as i64 + 1;
    let alpha_g = GaussInt::new(alpha as i64, 0);
    let mut count = 0;
    for v in -bound..=bound {
        // Re(βπ) = r/2 fixes one coordinate of π = a + bi.
        let (a, b) = match beta.0 {
            0 => (h, v),
            1 => (v, -h),
            2 => (-h, v),
            _ => (v, h),
        };
        if (a - ga).rem_euclid(16) != 0 || (b - gb).rem_euclid(16) != 0 {
            continue;
        }
        let pi = GaussInt::new(a, b);
        let n = pi.norm();
        if n > x as i128 || !is_prime(n as u64) {
            continue;
        }
        if quartic_symbol_prime(alpha_g, pi)? == Some(UnitI4(d)) {
            count += 1;
        }
    }
    Ok(count)
}

/// `ℰ_{d,k,ε}(x; r, α, β, γ)`: primary Eisenstein elements of prime norm
/// `≤ x` with `Tr(βπ) = r`, `N(π) ≡ 2k+1 mod 8`, `(α/π)_3 = ω^d`,
/// `(α/N(π)) = ε` and `π ≡ ω^γ mod 2`.
#[allow(clippy::too_many_arguments)]
pub fn count_ed(x: u64, r: i64, alpha: u64, beta: UnitW6, gamma: u8, d: u8, k: u8, eps: i8) -> Result<u64> {
    if gcd(alpha as i64, 6) != 1 || d > 2 || k > 3 || gamma > 2 || (eps != 1 && eps != -1) {
        return Err(Error::BadParams("need (α,6)=1, d ≤ 2, k ≤ 3, γ ∈ 0..3, ε = ±1".into()));
    }
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let gamma_par = [(1, 0), (0, 1), (1, 1)][gamma as usize];
    let bound = 2 * isqrt(x) as i64 + 2;
    let alpha_e = EisInt::new(alpha as i64, 0);
    let want = UnitW6::omega_pow(d as i64);
    let mut count = 0;
    for v in -bound..=bound {
        // Tr(±ω^j π) = ±L_j(a, b) with L_0 = 2a-b, L_1 = -a-b, L_2 = 2b-a.
        let t = if beta.sign < 0 { -r } else { r };
        let (a, b) = match beta.k % 3 {
            0 => (v, 2 * v - t),
            1 => (v, -v - t),
            _ => (2 * v - t, v),
        };
        let pi = EisInt::new(a, b);
        if !pi.is_primary() || (a.rem_euclid(2), b.rem_euclid(2)) != gamma_par {
            continue;
        }
        let n = pi.norm();
        if n > x as i128 || n % 8 != 2 * k as i128 + 1 || !is_prime(n as u64) {
            continue;
        }
        let p = n as u64;
        if jacobi(alpha as i64, p) != eps as i32 {
            continue;
        }
        if cubic_symbol_prime(alpha_e, pi)? == Some(want) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCounts {
    pub n0: u64,
    pub n1: u64,
    pub n2: i64,
    pub n_plus: u64,
    pub n_minus: u64,
}

impl ResidueCounts {
    fn from_parts(n0: u64, n1: u64, n2: i64) -> Self {
        ResidueCounts {
            n0,
            n1,
            n2,
            n_plus: ((n1 as i64 + n2) / 2) as u64,
            n_minus: ((n1 as i64 - n2) / 2) as u64,
        }
    }
}

fn check_odd(q: u64) -> Result<()> {
    if q == 0 || q % 2 == 0 {
        Err(Error::BadModulus(format!("{q} is not odd")))
    } else {
        Ok(())
    }
}

fn poly_mod(poly: &QuadPoly, t: i64, m: i64) -> i64 {
    poly.eval(t).rem_euclid(m as i128) as i64
}

/// `(N₀, N₁, N₂, N₊, N₋)` for `f` modulo odd `q`, by enumerating `t mod q`.
pub fn residue_counts_brute(poly: &QuadPoly, q: u64) -> Result<ResidueCounts> {
    check_odd(q)?;
    let qi = q as i64;
    let (mut n0, mut n1, mut n2) = (0, 0, 0i64);
    for t in 0..qi {
        let v = poly_mod(poly, t, qi);
        if v == 0 {
            n0 += 1;
        }
        if gcd(v, qi) == 1 {
            n1 += 1;
        }
        n2 += jacobi(v, q) as i64;
    }
    Ok(ResidueCounts::from_parts(n0, n1, n2))
}

/// Closed form, prime by prime. Refuses a zero discriminant or a
/// non-primitive `f`.
pub fn residue_counts_closed(poly: &QuadPoly, q: u64) -> Result<ResidueCounts> {
    check_odd(q)?;
    let disc = poly.discriminant();
    if disc == 0 {
        return Err(Error::Undefined("zero discriminant".into()));
    }
    if !poly.is_primitive() {
        return Err(Error::Undefined("f is not primitive".into()));
    }
    let QuadPoly { a, b, c } = *poly;
    let (mut n0, mut n1, mut n2) = (1u64, 1u64, 1i64);
    for (p, nu) in factorize(q).factors {
        let pi = p as i64;
        let pnu = p.pow(nu);
        let pnu1 = pnu / p;
        let leg = |v: i64| jacobi(v, p) as i64;
        let (z0, z2p) = if a % pi == 0 && b % pi == 0 {
            (0, pi * leg(c))
        } else if a % pi == 0 {
            (1, 0)
        } else if disc % pi == 0 {
            let m = pnu as i64;
            let z = (0..m).filter(|&t| poly_mod(poly, t, m) == 0).count() as u64;
            (z, (pi - 1) * leg(a))
        } else {
            ((1 + kronecker(disc, pi)) as u64, -leg(a))
        };
        // N₀(p) is needed for N₁; at ramified p the brute count above is N₀(p^ν).
        let z0p = if a % pi != 0 && disc % pi == 0 { 1 } else { z0 };
        n0 *= z0;
        let z1 = pnu - pnu1 * z0p;
        n1 *= z1;
        n2 *= if nu % 2 == 0 { z1 as i64 } else { pnu1 as i64 * z2p };
    }
    Ok(ResidueCounts::from_parts(n0, n1, n2))
}

/// `ρ(r, q, a)` (defined for even `r`) and `ρ_D(r, q, a)` (for `D ≡ 3 mod 4`).
pub fn rho_counts(d: i64, r: i64, q: u64, a: i64) -> Result<(Option<u64>, Option<u64>)> {
    if q == 0 {
        return Err(Error::BadModulus("q must be positive".into()));
    }
    let qi = q as i64;
    let count = |poly: QuadPoly| (0..qi).filter(|&t| (poly.eval(t) - a as i128).rem_euclid(qi as i128) == 0).count() as u64;
    let rho = (r % 2 == 0).then(|| count(QuadPoly::new(2, 0, r * r / 4)));
    let rho_d = (d % 4 == 3).then(|| count(QuadPoly::new(d, -d * r, (d + 1) / 4 * r * r)));
    if rho.is_none() && rho_d.is_none() {
        return Err(Error::Undefined(format!("r²/4 is not integral for D = {d}, r = {r}")));
    }
    Ok((rho, rho_d))
}

/// `ρ_D(r, 8, 2k+1)` in closed form.
pub fn rho_d_mod8_closed(d: i64, r: i64, k: u8) -> u64 {
    let k = k as i64 % 4;
    let r2 = r * r;
    if r % 2 != 0 {
        if d.rem_euclid(8) == 3 {
            2
        } else {
            0
        }
    } else if r % 4 != 0 {
        if k == ((r2 - 4) / 8).rem_euclid(4) || k == ((r2 + 12) / 8).rem_euclid(4) {
            2
        } else {
            0
        }
    } else if k == (r2 / 8 + (d - 1) / 2).rem_euclid(4) {
        4
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hl_examples() {
        let f = QuadPoly::new(1, 0, 1);
        assert_eq!(count_hl(&f, 100), 4);
        assert_eq!(count_hl_ap(&f, 100, 2, 1), 1);
    }

    #[test]
    fn residue_example() {
        let r = residue_counts_brute(&QuadPoly::new(1, 0, 1), 5).unwrap();
        assert_eq!(r.n2, -1);
        assert_eq!(residue_counts_closed(&QuadPoly::new(1, 0, 1), 5).unwrap(), r);
        assert!(residue_counts_closed(&QuadPoly::new(1, 0, 0), 5).is_err());
        assert!(residue_counts_brute(&QuadPoly::new(1, 0, 1), 4).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_counts(11, 1, 8, 1).unwrap().1, Some(2));
        for a in (1..8).step_by(2) {
            assert_eq!(rho_counts(7, 1, 8, a).unwrap().1, Some(0));
        }
        assert!(rho_counts(2, 1, 8, 1).is_err());
    }

    #[test]
    fn fixed_trace_d2() {
        let (e, p) = count_fixed_trace(2, 2, 1000).unwrap();
        let direct = (1..=22).filter(|n| 2 * n * n < 1000 && is_prime(2 * n * n + 1)).count() as u64;
        assert_eq!(p, direct);
        assert!(e.abs_diff(p) <= 1);
        assert_eq!(count_pi_d(2, 1000, 2, 1, 0).unwrap(), direct);
        assert_eq!(count_fixed_trace(1, 1, 1000).unwrap().1, 0);
    }

    #[test]
    fn small_histogram() {
        let c = CurveSpec::new(1, -4).unwrap();
        let h = count_traces(&c, 100, -20, 20).unwrap();
        assert_eq!(h.good_primes, 24);
        assert_eq!(h.counts.values().sum::<u64>() + h.overflow, 24);
        assert!(h.counts.iter().all(|(r, &n)| r % 2 == 0 || n == 0));
        assert_eq!(h.counts[&0], 13);
        assert!(count_traces(&c, 1, -2, 2).unwrap().counts.values().all(|&n| n == 0));
    }
}
