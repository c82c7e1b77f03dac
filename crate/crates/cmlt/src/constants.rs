//! Density constants for primes of fixed Frobenius trace: the finite factors
//! `Ω_j`, `𝔄_j`, `ξ`, `θ`, the Euler products `h_{D,r}` and `c_{D,r}`, the
//! Hardy-Littlewood constants, and the exact-rational finite part of `ϖ_{E,r}`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::arith::{euler_phi, factorize, gcd, is_square, jacobi, kronecker, neg_one_pow, odd_part, ord_p, small_primes, Rational};
use crate::counts::{rho_counts, QuadPoly};
use crate::eisenstein::{cubic_symbol_rational, UnitW6};
use crate::gaussian::{quartic_symbol_rational, UnitI4};
use crate::{check_discriminant, Error, Result};

/// `g = (-1)^δ 2^λ D^μ g1` with `(2D, g1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GFactorization {
    pub delta: u8,
    pub lambda: u32,
    pub mu: u32,
    pub g1: u64,
}

impl GFactorization {
    pub fn reassemble(&self, d: i64) -> i128 {
        let sign = if self.delta == 1 { -1 } else { 1 };
        let dpow = if d <= 2 { 1 } else { (d as i128).pow(self.mu) };
        sign * (1i128 << self.lambda) * dpow * self.g1 as i128
    }
}

pub fn g_factorize(d: i64, g: i64) -> Result<GFactorization> {
    check_discriminant(d)?;
    if g == 0 {
        return Err(Error::BadParams("g must be nonzero".into()));
    }
    let delta = (g < 0) as u8;
    let mut m = g.unsigned_abs();
    let lambda = m.trailing_zeros();
    m >>= lambda;
    let mut mu = 0;
    if d > 2 {
        let du = d as u64;
        while m % du == 0 {
            m /= du;
            mu += 1;
        }
    }
    Ok(GFactorization { delta, lambda, mu, g1: m })
}

/// `∏_{p^ν ∥ q, p ∤ r, j ∤ ν} -1/(p - 1 - (-D/p))`.
pub fn omega_j(d: i64, q: u64, r: i64, j: u32) -> Result<Rational> {
    if q == 0 || q % 2 == 0 {
        return Err(Error::BadModulus(format!("{q} is not odd")));
    }
    if j == 0 {
        return Err(Error::BadParams("j must be positive".into()));
    }
    let mut out = Rational::ONE;
    for &(p, nu) in &factorize(q).factors {
        if r.rem_euclid(p as i64) == 0 || nu % j == 0 {
            continue;
        }
        let sigma = p as i128 - 1 - kronecker(-d, p as i64) as i128;
        out = out * Rational::frac(-1, sigma);
    }
    Ok(out)
}

/// `σ_D(p) = p - 1 - (-D/p)`.
pub fn sigma(d: i64, p: u64) -> i64 {
    p as i64 - 1 - kronecker(-d, p as i64) as i64
}

/// Product of the primes whose exponent in `q` is not divisible by `j`.
pub fn frak_a(q: u64, j: u32) -> u64 {
    factorize(q)
        .factors
        .iter()
        .filter(|&&(_, nu)| nu % j != 0)
        .map(|&(p, _)| p)
        .product()
}

/// Membership of `p` in the auxiliary set `𝒥_j(g, r)`.
pub fn j_member(p: u64, d: i64, g: i64, r: i64, j: u32) -> Result<bool> {
    let f = g_factorize(d, g)?;
    Ok(j_member_g1(p, f.g1, r, j))
}

pub(crate) fn j_member_g1(p: u64, g1: u64, r: i64, j: u32) -> bool {
    let pr = p as u128 * r.unsigned_abs() as u128;
    ord_p(g1 as i64, p) % j != 0 && r.rem_euclid(p as i64) != 0 && pr % frak_a(g1, j) as u128 == 0
}

/// `ξ(D, r) ∈ {0, 1, 2}`.
pub fn xi(d: i64, r: i64) -> u8 {
    let even = r % 2 == 0;
    let coprime = gcd(d, r) == 1;
    match d.rem_euclid(4) {
        1 if even && coprime => 1,
        2 if even && gcd(d, r / 2) == 1 => 1,
        3 if even && coprime => 1,
        3 if d % 8 == 3 && !even && coprime => 2,
        _ => 0,
    }
}

/// `θ(D, r) ∈ {0, 1}`.
pub fn theta(d: i64, r: i64) -> u8 {
    let even = r % 2 == 0;
    let coprime = gcd(d, r) == 1;
    if d == 2 {
        return (r.rem_euclid(4) == 2) as u8;
    }
    match d.rem_euclid(8) {
        3 | 7 if even && coprime => 1,
        3 if coprime => 1,
        _ => 0,
    }
}

pub fn xi_theta(d: i64, r: i64) -> (u8, u8) {
    (xi(d, r), theta(d, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Accelerated,
}

impl Method {
    pub fn default_cutoff(self) -> u64 {
        match self {
            Method::Direct => 1_000_000,
            Method::Accelerated => 100_000,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "accelerated" => Ok(Method::Accelerated),
            _ => Err(Error::BadParams(format!("unknown method {s}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Accelerated => "accelerated",
        })
    }
}

/// Full products over odd `p ≤ cutoff`, cached per `(D, cutoff)`.
#[derive(Clone, Copy, Debug)]
struct Products {
    direct: f64,
    corrected: f64,
    second: f64,
}

fn chi(d: i64, p: u64) -> i64 {
    kronecker(-d, p as i64) as i64
}

fn direct_factor(d: i64, p: u64) -> f64 {
    1.0 - chi(d, p) as f64 / (p - 1) as f64
}

fn corrected_factor(d: i64, p: u64) -> f64 {
    let c = chi(d, p) as f64;
    let pf = p as f64;
    1.0 - c / ((pf - 1.0) * (pf - c))
}

fn second_factor(d: i64, p: u64) -> f64 {
    let pf = p as f64;
    match chi(d, p) {
        0 => pf / (pf - 1.0),
        1 => (1.0 - 2.0 / pf) / (1.0 - 1.0 / pf).powi(2),
        _ => 1.0 / (1.0 - 1.0 / (pf * pf)),
    }
}

fn products(d: i64, cutoff: u64) -> Products {
    static CACHE: OnceLock<Mutex<HashMap<(i64, u64), Products>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(d, cutoff)) {
        return *p;
    }
    let mut out = Products { direct: 1.0, corrected: 1.0, second: 1.0 };
    for p in small_primes(cutoff).into_iter().filter(|&p| p > 2) {
        out.direct *= direct_factor(d, p);
        out.corrected *= corrected_factor(d, p);
        out.second *= second_factor(d, p);
    }
    cache.lock().unwrap().insert((d, cutoff), out);
    out
}

fn odd_primes_of(r: i64) -> Vec<u64> {
    factorize(r.unsigned_abs()).primes().filter(|&p| p > 2).collect()
}

/// `w_D`, the number of units.
pub fn units(d: i64) -> u32 {
    match d {
        1 => 4,
        3 => 6,
        _ => 2,
    }
}

/// `|disc Q(√-D)|`.
pub fn field_discriminant(d: i64) -> u64 {
    if d % 4 == 3 {
        d as u64
    } else {
        4 * d as u64
    }
}

/// `L(1, χ_D)` from the class number formula (class number one).
pub fn l_value(d: i64) -> f64 {
    2.0 * PI / (units(d) as f64 * (field_discriminant(d) as f64).sqrt())
}

/// `1 - χ_D(2)/2`.
pub fn eta(d: i64) -> f64 {
    match d.rem_euclid(8) {
        3 => 1.5,
        7 => 0.5,
        _ => 1.0,
    }
}

/// `∏_{p ∤ 2r} (1 - (-D/p)/(p-1))`, truncated at `cutoff`.
pub fn euler_product(d: i64, r: i64, cutoff: u64, method: Method) -> Result<f64> {
    check_discriminant(d)?;
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let full = products(d, cutoff);
    let rp = odd_primes_of(r);
    Ok(match method {
        Method::Direct => rp
            .iter()
            .filter(|&&p| p <= cutoff)
            .fold(full.direct, |acc, &p| acc / direct_factor(d, p)),
        Method::Accelerated => {
            let mut v = full.corrected / (eta(d) * l_value(d));
            for &p in &rp {
                v /= 1.0 - chi(d, p) as f64 / p as f64;
                if p <= cutoff {
                    v /= corrected_factor(d, p);
                }
            }
            v
        }
    })
}

/// `h_{D,r} = ξ(D,r) √D/φ(D) ∏_{p ∤ 2r}(1 - (-D/p)/(p-1))`.
pub fn h_d_r(d: i64, r: i64, cutoff: u64, method: Method) -> Result<f64> {
    let x = xi(d, r);
    if x == 0 {
        check_discriminant(d)?;
        return Ok(0.0);
    }
    let e = euler_product(d, r, cutoff, method)?;
    Ok(x as f64 * (d as f64).sqrt() / euler_phi(d as u64) as f64 * e)
}

/// The `F_4(D, r)` table, indexed by `r mod 4`.
pub fn f4(d: i64, r: i64) -> Rational {
    let col = r.rem_euclid(4) as usize;
    let row: [(i128, i128); 4] = match d.rem_euclid(8) {
        1 | 5 => [(2, 1), (0, 1), (2, 1), (0, 1)],
        2 | 6 => [(0, 1), (0, 1), (4, 1), (0, 1)],
        3 => [(2, 3), (4, 3), (2, 3), (4, 3)],
        _ => [(2, 1), (0, 1), (2, 1), (0, 1)],
    };
    Rational::frac(row[col].0, row[col].1)
}

/// The second form `c_{D,r}` of the constant, via the local factors
/// `𝒜_p` (`p | r`) and `ℬ_p` (`p ∤ r`).
pub fn c_d_r(d: i64, r: i64, cutoff: u64) -> Result<f64> {
    check_discriminant(d)?;
    if r == 0 {
        return Err(Error::ZeroR);
    }
    if odd_part(gcd(d, r) as u64) > 1 {
        return Ok(0.0);
    }
    let f = f4(d, r);
    if f.is_zero() {
        return Ok(0.0);
    }
    let mut v = units(d) as f64 / (2.0 * PI) * f.to_f64() * products(d, cutoff).second;
    for p in odd_primes_of(r) {
        let pf = p as f64;
        v *= match chi(d, p) {
            1 => 1.0 / (1.0 - 1.0 / pf),
            _ => 1.0 / (1.0 + 1.0 / pf),
        };
        if p <= cutoff {
            v /= second_factor(d, p);
        }
    }
    Ok(v)
}

fn hl_product(disc: i64, skip: u64, cutoff: u64) -> f64 {
    small_primes(cutoff)
        .into_iter()
        .filter(|&p| p > 2 && skip % p != 0)
        .map(|p| 1.0 - kronecker(disc, p as i64) as f64 / (p - 1) as f64)
        .product()
}

fn check_hl(poly: &QuadPoly) -> Result<()> {
    let QuadPoly { a, b, c } = *poly;
    if a <= 0 {
        return Err(Error::HypothesisFail("a must be positive".into()));
    }
    let disc = poly.discriminant();
    if disc >= 0 && is_square(disc) {
        return Err(Error::HypothesisFail(format!("discriminant {disc} is a square")));
    }
    if gcd(gcd(a, b), c) != 1 {
        return Err(Error::HypothesisFail("(a, b, c) is not 1".into()));
    }
    Ok(())
}

/// Hardy-Littlewood constant for primes `am² + bm + c`.
pub fn hl_constant(poly: &QuadPoly, cutoff: u64) -> Result<f64> {
    check_hl(poly)?;
    let QuadPoly { a, b, c } = *poly;
    if (a + b) % 2 == 0 && c % 2 == 0 {
        return Err(Error::HypothesisFail("a+b and c are both even".into()));
    }
    let two = if (a + b) % 2 == 0 { 2.0 } else { 1.0 };
    let delta = odd_part(gcd(a, b) as u64);
    let pre = two / (a as f64).sqrt() * delta as f64 / euler_phi(delta) as f64;
    Ok(pre * hl_product(poly.discriminant(), a as u64, cutoff))
}

/// Hardy-Littlewood constant restricted to `m ≡ u mod q`.
pub fn hl_constant_ap(poly: &QuadPoly, q: u64, u: i64, cutoff: u64) -> Result<f64> {
    check_hl(poly)?;
    if q == 0 {
        return Err(Error::HypothesisFail("q must be positive".into()));
    }
    let QuadPoly { a, b, c } = *poly;
    let qi = q as i64;
    let (a_, b_, c_) = (a as i128, b as i128, c as i128);
    let fu = a_ * (u as i128).pow(2) + b_ * u as i128 + c_;
    if gcd((fu % qi as i128) as i64, qi) != 1 {
        return Err(Error::HypothesisFail("(q, f(u)) is not 1".into()));
    }
    let s = (a_ + b_) * q as i128;
    let t = (a_ + b_) * u as i128 + c_;
    if s % 2 == 0 && t % 2 == 0 {
        return Err(Error::HypothesisFail("(a+b)q and (a+b)u+c are both even".into()));
    }
    let two = if s % 2 == 0 { 2.0 } else { 1.0 };
    let inner = gcd(a.checked_mul(qi).ok_or(Error::Overflow)?, 2 * a * u + b);
    let big = odd_part(q * inner as u64);
    let pre = two / (q as f64 * (a as f64).sqrt()) * big as f64 / euler_phi(big) as f64;
    Ok(pre * hl_product(poly.discriminant(), a as u64 * q, cutoff))
}

/// `Re(ω^k)` as a rational.
pub fn re_omega(k: i64) -> Rational {
    if k.rem_euclid(3) == 0 {
        Rational::ONE
    } else {
        Rational::frac(-1, 2)
    }
}

fn sgn(e: i128) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

fn half(e: i128) -> i128 {
    debug_assert!(e % 2 == 0);
    e / 2
}

/// Named intermediate values of a finite-factor evaluation.
pub type Breakdown = Vec<(String, Rational)>;

fn entry(name: &str, v: Rational) -> (String, Rational) {
    (name.to_string(), v)
}

/// The exact finite factor multiplying `h_{D,r}` in `ϖ_{E,r}`.
pub fn finite_factor(d: i64, g: i64, r: i64) -> Result<(Rational, Breakdown)> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let f = g_factorize(d, g)?;
    match d {
        1 => Ok(finite_factor_d1(&f, r)),
        2 => Ok(finite_factor_d2(&f, r)),
        3 => Ok(finite_factor_d3(&f, r)),
        _ => Ok(finite_factor_large(d, &f, r)),
    }
}

fn omegas(d: i64, g1: u64, r: i64, js: &[u32], bd: &mut Breakdown) -> Vec<Rational> {
    js.iter()
        .map(|&j| {
            let v = omega_j(d, g1, r, j).expect("g1 is odd");
            bd.push(entry(&format!("omega{j}"), v));
            v
        })
        .collect()
}

fn finite_factor_d1(f: &GFactorization, r: i64) -> (Rational, Breakdown) {
    let mut bd = Breakdown::new();
    if r % 2 != 0 {
        return (Rational::ZERO, bd);
    }
    let (delta, lambda, g1) = (f.delta as i128, f.lambda as i128, f.g1 as i128);
    let r_ = r as i128;
    let om = omegas(1, f.g1, r, &[2, 4], &mut bd);
    let kappa = if r % 4 == 0 {
        Rational::ONE - sgn(lambda * r_ / 4) * om[0]
    } else if lambda % 2 == 0 {
        let s = sgn((r_ - 2) / 4 + (g1 * g1 - 1) / 8);
        let t = Rational::ONE - sgn(delta + half(lambda + g1 - 1));
        Rational::ONE + om[0] + s * t * om[1]
    } else {
        Rational::ONE
    };
    bd.push(entry("kappa", kappa));
    (kappa / Rational::int(4), bd)
}

fn finite_factor_d2(f: &GFactorization, r: i64) -> (Rational, Breakdown) {
    let mut bd = Breakdown::new();
    if r.rem_euclid(4) != 2 {
        return (Rational::ZERO, bd);
    }
    let (delta, lambda, g1) = (f.delta as i128, f.lambda as i128, f.g1 as i128);
    let r_ = r as i128;
    let om = omegas(2, f.g1, r, &[2], &mut bd);
    let e = (r_ - 2) * (r_ + 10) / 32 + delta + lambda + (g1 - 1) / 2;
    let chi2 = jacobi(2, f.g1) as i64;
    let bracket = Rational::ONE + Rational::frac(1, 2) * sgn(e) * Rational::from(chi2) * om[0];
    bd.push(entry("bracket", bracket));
    (bracket / Rational::int(2), bd)
}

/// `ς₁` for `D = 3`.
pub fn varsigma1(f: &GFactorization, r: i64) -> Rational {
    let (lambda, mu) = (f.lambda as i64, f.mu as i64);
    let g1 = f.g1 as i128;
    let s = ((g1 * g1 - 1) / 3).rem_euclid(3) as i64;
    let rm = re_omega(mu);
    if r % 2 == 0 {
        Rational::ONE + Rational::int(2) * rm * re_omega(lambda + s)
    } else {
        re_omega(1 + s) + rm * (re_omega(2 - lambda + s) + re_omega(2 + lambda))
    }
}

/// `ς₂` for `D = 3`, `3 ∤ r`.
pub fn varsigma2(f: &GFactorization, r: i64) -> Rational {
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let h = (f.g1 as i128 - 1) / 2;
    let lam_even = if lambda % 2 == 0 { Rational::ONE } else { Rational::ZERO };
    let dm_even = if (delta + mu + h) % 2 == 0 { Rational::ONE } else { Rational::ZERO };
    match (r.rem_euclid(24), r.rem_euclid(12), r.rem_euclid(6)) {
        (8, _, _) => sgn(delta + lambda + mu + h),
        (16, _, _) => -sgn(delta + lambda + mu + h),
        (20, _, _) => sgn(delta + mu + h),
        (4, _, _) => -sgn(delta + mu + h),
        (_, 2, _) => lam_even,
        (_, 10, _) => -lam_even,
        (_, _, 5) => lam_even * dm_even,
        (_, _, 1) => -(lam_even * dm_even),
        _ => Rational::ZERO,
    }
}

fn finite_factor_d3(f: &GFactorization, r: i64) -> (Rational, Breakdown) {
    let mut bd = Breakdown::new();
    if r % 3 == 0 {
        return (Rational::ZERO, bd);
    }
    let s1 = varsigma1(f, r);
    let s2 = varsigma2(f, r);
    bd.push(entry("varsigma1", s1));
    bd.push(entry("varsigma2", s2));
    let om = omegas(3, f.g1, r, &[2, 3, 6], &mut bd);
    let two3 = Rational::frac(2, 3);
    let chi3 = Rational::from(jacobi(3, f.g1));
    let bracket = Rational::ONE + two3 * s1 * om[1] + s2 * chi3 * (om[0] + two3 * s1 * om[2]);
    bd.push(entry("bracket", bracket));
    (bracket / Rational::int(6), bd)
}

/// `ε_D` for `D ≥ 7`.
pub fn epsilon_d(f: &GFactorization, r: i64) -> Rational {
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let h = (f.g1 as i128 - 1) / 2;
    let lam = Rational::ONE + sgn(lambda);
    if r.rem_euclid(4) == 2 {
        Rational::frac(1, 2) * sgn(h) * lam
    } else if r % 4 == 0 {
        sgn(delta + mu + lambda * (r as i128 / 4))
    } else {
        Rational::frac(1, 4) * lam * (sgn(h) + sgn(delta + mu))
    }
}

fn finite_factor_large(d: i64, f: &GFactorization, r: i64) -> (Rational, Breakdown) {
    let mut bd = Breakdown::new();
    if r % d == 0 {
        return (Rational::ZERO, bd);
    }
    let eps = epsilon_d(f, r);
    bd.push(entry("epsilon", eps));
    let om = omegas(d, f.g1, r, &[2], &mut bd);
    let du = d as u64;
    let sym = jacobi(2, du).pow(f.lambda + 1) * jacobi(f.g1 as i64 % d, du) * jacobi(r, du);
    let bracket = Rational::ONE + eps * Rational::from(sym) * om[0];
    bd.push(entry("bracket", bracket));
    (bracket / Rational::int(2), bd)
}

/// Everything known about `ϖ_{E,r}` for `E` given by `(D, g)`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub factorization: GFactorization,
    pub xi: u8,
    pub finite_factor: Rational,
    pub euler_value: f64,
    pub method: Method,
    pub cutoff: u64,
    pub h: f64,
    pub varpi: f64,
    pub vanishes: bool,
    pub reason: Option<String>,
    pub breakdown: Vec<(String, Rational)>,
}

pub fn varpi(d: i64, g: i64, r: i64, cutoff: u64, method: Method) -> Result<ConstantReport> {
    let factorization = g_factorize(d, g)?;
    let (ff, breakdown) = finite_factor(d, g, r)?;
    let x = xi(d, r);
    let euler_value = euler_product(d, r, cutoff, method)?;
    let h = h_d_r(d, r, cutoff, method)?;
    let vanishes = x == 0 || ff.is_zero();
    let reason = if x == 0 {
        Some("ξ = 0".to_string())
    } else if ff.is_zero() {
        Some("finite factor = 0".to_string())
    } else {
        None
    };
    Ok(ConstantReport {
        d,
        g,
        r,
        factorization,
        xi: x,
        finite_factor: ff,
        euler_value,
        method,
        cutoff,
        h,
        varpi: if vanishes { 0.0 } else { h * ff.to_f64() },
        vanishes,
        reason,
        breakdown,
    })
}

/// Exact vanishing of `ϖ_{E,r}`, without any Euler product.
pub fn varpi_vanishes(d: i64, g: i64, r: i64) -> Result<bool> {
    Ok(xi(d, r) == 0 || finite_factor(d, g, r)?.0.is_zero())
}

/// `Δ_G · G_d` for the Gaussian counting function; the density is this
/// value times `h_{1,r}/16`.
pub fn predicted_density_gd(r: i64, alpha: u64, beta: UnitI4, gamma: (u8, u8), d: u8) -> Result<Rational> {
    if alpha % 2 == 0 || d > 3 || gamma.0 > 7 || gamma.1 > 7 || gamma.0 % 2 != gamma.1 % 2 {
        return Err(Error::BadParams("need α odd, d ≤ 3, γ₁ ≡ γ₂ mod 2 in 0..8".into()));
    }
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let (r, beta) = if beta.0 >= 2 { (-r, UnitI4((beta.0 + 2) % 4)) } else { (r, beta) };
    let (g1, g2) = (gamma.0 as i64, gamma.1 as i64);
    let delta_g = match beta.0 {
        0 => (r - 4 * g1 - 2).rem_euclid(32) == 0,
        _ => (r + 4 * g2).rem_euclid(32) == 0,
    };
    if !delta_g {
        return Ok(Rational::ZERO);
    }
    let eta = if alpha % 4 == 1 { 0 } else { 1 };
    let sym = quartic_symbol_rational(UnitI4::I.to_gauss().times_unit(beta), alpha)?
        .expect("units are coprime to α");
    let om2 = omega_j(1, alpha, r, 2)?;
    let om4 = omega_j(1, alpha, r, 4)?;
    let re_d = UnitI4(d).re();
    let term = Rational::from(2 * re_d * neg_one_pow(eta * g2) * sym.re()) * om4;
    Ok(Rational::ONE + term + Rational::from(neg_one_pow(d as i64)) * om2)
}

/// `Δ_E(r, k, γ, β)`, with `γ = ω^c mod 2`.
pub fn delta_e(r: i64, k: u8, gamma: u8, beta: UnitW6) -> u8 {
    let (r, beta) = if beta.sign < 0 { (-r, -beta) } else { (r, beta) };
    let sq = (2 * beta.k) % 3;
    let c = gamma % 3;
    if c == sq && ((r.rem_euclid(24) == 16 && k % 4 == 1) || (r.rem_euclid(24) == 4 && k % 4 == 3)) {
        8
    } else if r.rem_euclid(12) == 10 && k % 2 == 0 && c == sq {
        4
    } else if r.rem_euclid(6) == 1 && c != sq {
        1
    } else {
        0
    }
}

/// `Δ_E · E_{d,k,ε}` for the Eisenstein counting function; the density is
/// this value times `h_{3,r}/72`.
pub fn predicted_density_ed(
    r: i64,
    alpha: u64,
    beta: UnitW6,
    gamma: u8,
    d: u8,
    k: u8,
    eps: i8,
) -> Result<Rational> {
    if gcd(alpha as i64, 6) != 1 || d > 2 || k > 3 || gamma > 2 || (eps != 1 && eps != -1) {
        return Err(Error::BadParams("need (α,6)=1, d ≤ 2, k ≤ 3, γ ∈ 0..3, ε = ±1".into()));
    }
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let de = delta_e(r, k, gamma, beta);
    if de == 0 {
        return Ok(Rational::ZERO);
    }
    let a = alpha as i64;
    let om2 = omega_j(3, alpha, r, 2)?;
    let om3 = omega_j(3, alpha, r, 3)?;
    let om6 = omega_j(3, alpha, r, 6)?;
    let s = Rational::from(eps as i64 * neg_one_pow(k as i64 * (a - 1) / 2) * jacobi(3, alpha) as i64);
    let cub = cubic_symbol_rational(beta.to_eis(), alpha)?.expect("units are coprime to α");
    let cub_k = if cub.sign < 0 { -cub } else { cub }.k as i64;
    let re = re_omega(d as i64 + cub_k);
    let e = Rational::ONE + s * om2 + Rational::int(2) * re * (om3 + s * om6);
    Ok(Rational::from(de as i64) * e)
}

/// Conjectured `Π_D(x; r, q, a) ~ value · √x / log x`, counting unordered
/// pairs `{π, π̄}`.
pub fn predicted_pi_d(d: i64, r: i64, q: u64, a: i64, cutoff: u64) -> Result<f64> {
    check_discriminant(d)?;
    if d == 1 {
        return Err(Error::BadDiscriminant(d));
    }
    if r == 0 {
        return Err(Error::ZeroR);
    }
    if q == 0 || gcd(q as i64, a) != 1 {
        return Err(Error::BadResidue);
    }
    let th = theta(d, r);
    if th == 0 {
        return Ok(0.0);
    }
    let (rho, rho_d) = rho_counts(d, r, q, a)?;
    let qs = odd_part(q);
    let skip = q * r.unsigned_abs();
    let prod: f64 = small_primes(cutoff)
        .into_iter()
        .filter(|&p| p > 2 && skip % p != 0)
        .map(|p| direct_factor(d, p))
        .product();
    let qf = q as f64;
    let pre = if d == 2 {
        rho.unwrap_or(0) as f64 * 2.0 * 2f64.sqrt() / qf * qs as f64 / euler_phi(qs) as f64
    } else {
        let two = if (q as i128 * (r as i128 + 1)) % 2 == 0 { 2.0 } else { 1.0 };
        rho_d.unwrap_or(0) as f64 * 2.0 * two / qf * (d as f64).sqrt() * qs as f64
            / euler_phi(d as u64 * qs) as f64
    };
    Ok(th as f64 * pre * prod / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_examples() {
        let f = g_factorize(3, -432).unwrap();
        assert_eq!((f.delta, f.lambda, f.mu, f.g1), (1, 4, 3, 1));
        let f = g_factorize(7, -98).unwrap();
        assert_eq!((f.delta, f.lambda, f.mu, f.g1), (1, 1, 2, 1));
        let f = g_factorize(2, 12).unwrap();
        assert_eq!((f.delta, f.lambda, f.mu, f.g1), (0, 2, 0, 3));
        assert_eq!(f.reassemble(2), 12);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_j(1, 3, 2, 2).unwrap(), Rational::frac(-1, 3));
        assert_eq!(omega_j(1, 9, 1, 2).unwrap(), Rational::ONE);
        assert_eq!(omega_j(3, 5, 1, 3).unwrap(), Rational::frac(-1, 5));
        assert!(omega_j(1, 4, 1, 2).is_err());
    }

    #[test]
    fn sigma_table() {
        assert_eq!(sigma(1, 3), 3);
        assert_eq!(sigma(1, 5), 3);
        assert_eq!(sigma(2, 3), 1);
        assert_eq!(sigma(3, 5), 5);
        assert_eq!(sigma(3, 7), 5);
        assert_eq!(sigma(11, 3), 1);
    }

    #[test]
    fn frak_a_examples() {
        assert_eq!(frak_a(45, 2), 5);
        assert_eq!(frak_a(36, 2), 1);
        assert_eq!(frak_a(24, 3), 3);
    }

    #[test]
    fn j_examples() {
        assert!(j_member(5, 3, 5 * 7i64.pow(6), 1, 2).unwrap());
        assert!(j_member(3, 11, 3, 2, 2).unwrap());
        assert!(!j_member(3, 11, 3, 3, 2).unwrap());
    }

    #[test]
    fn xi_theta_examples() {
        assert_eq!(xi_theta(1, 2), (1, 0));
        assert_eq!(xi(3, 5), 2);
        assert_eq!(xi_theta(7, 3), (0, 0));
        assert_eq!(xi(2, 3), 0);
        assert_eq!(xi(3, 3), 0);
    }

    #[test]
    fn f4_examples() {
        assert_eq!(f4(2, 2), Rational::int(4));
        assert_eq!(f4(2, 1), Rational::ZERO);
        assert_eq!(f4(11, 1), Rational::frac(4, 3));
    }

    #[test]
    fn finite_factor_examples() {
        assert_eq!(finite_factor(1, 1, 6).unwrap().0, Rational::frac(1, 2));
        assert_eq!(finite_factor(1, 1, 8).unwrap().0, Rational::ZERO);
        assert_eq!(finite_factor(3, -432, 1).unwrap().0, Rational::ZERO);
        assert_eq!(finite_factor(3, -432, 2).unwrap().0, Rational::frac(1, 3));
        let rep = varpi(2, 5, 3, 1000, Method::Direct).unwrap();
        assert!(rep.vanishes && rep.xi == 0);
    }

    #[test]
    fn density_gd_plug_in() {
        let v = predicted_density_gd(2, 1, UnitI4::ONE, (0, 0), 0).unwrap();
        assert_eq!(v, Rational::int(4));
        assert_eq!(predicted_density_gd(4, 1, UnitI4::ONE, (0, 0), 0).unwrap(), Rational::ZERO);
    }

    #[test]
    fn delta_e_example() {
        assert_eq!(delta_e(16, 1, 0, UnitW6::ONE), 8);
        assert_eq!(delta_e(3, 1, 0, UnitW6::ONE), 0);
    }

    #[test]
    fn h_symmetric_in_support() {
        let a = h_d_r(1, 2, 10_000, Method::Direct).unwrap();
        let b = h_d_r(1, 4, 10_000, Method::Direct).unwrap();
        assert_eq!(a, b);
        assert_eq!(h_d_r(2, 3, 10_000, Method::Direct).unwrap(), 0.0);
    }

    #[test]
    fn c_matches_h_roughly() {
        for &d in &crate::CM_DISCRIMINANTS {
            for r in 1..=6 {
                let h = h_d_r(d, r, 100_000, Method::Accelerated).unwrap();
                let c = c_d_r(d, r, 100_000).unwrap();
                assert!((h - c).abs() < 1e-3 * h.max(1.0), "D={d} r={r} h={h} c={c}");
            }
        }
    }

    #[test]
    fn hl_hypotheses() {
        assert!(hl_constant(&QuadPoly::new(1, 0, -1), 1000).is_err());
        assert!(hl_constant(&QuadPoly::new(2, 0, 2), 1000).is_err());
        let a = hl_constant(&QuadPoly::new(1, 0, 1), 10_000).unwrap();
        let b = hl_constant_ap(&QuadPoly::new(1, 0, 1), 1, 0, 10_000).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
