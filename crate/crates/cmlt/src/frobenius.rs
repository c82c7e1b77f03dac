//! Frobenius traces of the CM curves with class number one, by the explicit
//! prime-element formulas and by direct Legendre-symbol point counting.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{cornacchia, cornacchia4, factorize, inv_mod, is_prime, jacobi, kronecker, reduce, Rational};
use crate::eisenstein::{primary_associate_eis, sextic_symbol_rational, EisInt};
use crate::gaussian::{primary_associate, quartic_symbol_prime, GaussInt};
use crate::{check_discriminant, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// Absolute discriminant of `Q(√-D)`.
pub fn disc(d: i64) -> i64 {
    if d % 4 == 3 {
        d
    } else {
        4 * d
    }
}

pub fn split_type(d: i64, p: u64) -> Result<SplitType> {
    check_discriminant(d)?;
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    Ok(match kronecker(-disc(d), p as i64) {
        0 => SplitType::Ramified,
        1 => SplitType::Split,
        _ => SplitType::Inert,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Element {
    Gauss(GaussInt),
    Eis(EisInt),
    /// `m + n√-D` for `D ≡ 1, 2 mod 4`, or `(t + s√-D)/2` for `D ≡ 3 mod 4`.
    Pair(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    PrimaryGauss,
    PrimaryEis,
    PositiveTrace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPrime {
    pub p: u64,
    pub element: Element,
    pub trace: i64,
    pub normalization: Normalization,
}

impl SplitPrime {
    /// Norm of the stored element, reassembled from its coordinates.
    pub fn norm(&self, d: i64) -> i128 {
        match self.element {
            Element::Gauss(z) => z.norm(),
            Element::Eis(z) => z.norm(),
            Element::Pair(a, b) => {
                let (a, b, d) = (a as i128, b as i128, d as i128);
                if d % 4 == 3 {
                    (a * a + d * b * b) / 4
                } else {
                    a * a + d * b * b
                }
            }
        }
    }
}

/// Canonical solution of `p = m² + Dn²` (`m > 0`, odd for `D = 1`) or
/// `4p = t² + Ds²` (`t > 0`, `t ≡ s mod 2`).
pub fn norm_form_solve(d: i64, p: u64) -> Result<SplitPrime> {
    if split_type(d, p)? != SplitType::Split {
        return Err(Error::NotSplit { d, p });
    }
    let du = d as u64;
    let (a, b) = if d % 4 == 3 {
        cornacchia4(du, p).ok_or(Error::NotSplit { d, p })?
    } else {
        let (m, n) = cornacchia(du, p).ok_or(Error::NotSplit { d, p })?;
        if d == 1 && m % 2 == 0 {
            (n, m)
        } else {
            (m, n)
        }
    };
    let trace = if d % 4 == 3 { a as i64 } else { 2 * a as i64 };
    Ok(SplitPrime {
        p,
        element: Element::Pair(a as i64, b as i64),
        trace,
        normalization: Normalization::PositiveTrace,
    })
}

/// The primary prime element above `p` used by the `D = 1, 3` formulas.
pub fn primary_prime(d: i64, p: u64) -> Result<SplitPrime> {
    let sp = norm_form_solve(d, p)?;
    let Element::Pair(a, b) = sp.element else { unreachable!() };
    match d {
        1 => {
            let pi = primary_associate(GaussInt::new(a, b))?;
            Ok(SplitPrime { p, element: Element::Gauss(pi), trace: pi.trace(), normalization: Normalization::PrimaryGauss })
        }
        3 => {
            let pi = primary_associate_eis(EisInt::new((a + b) / 2, b))?;
            Ok(SplitPrime { p, element: Element::Eis(pi), trace: pi.trace(), normalization: Normalization::PrimaryEis })
        }
        _ => Ok(sp),
    }
}

/// `E: y² = x³ - gx` (D = 1), `y² = x³ + g` (D = 3), or `y² = 4x³ + ax + b`
/// with the standard CM coefficients scaled by `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveSpec {
    #[serde(rename = "D")]
    pub d: i64,
    pub g: i64,
}

impl CurveSpec {
    pub fn new(d: i64, g: i64) -> Result<Self> {
        check_discriminant(d)?;
        if g == 0 {
            return Err(Error::BadParams("g must be nonzero".into()));
        }
        Ok(CurveSpec { d, g })
    }

    /// `(a, b)` in `y² = 4x³ + ax + b` for `D ≥ 2`, before scaling by `g², g³`.
    pub fn base_coefficients(d: i64) -> Option<(Rational, Rational)> {
        let r = Rational::frac;
        Some(match d {
            2 => (r(-40, 3), r(-224, 27)),
            7 => (r(-35, 4), r(-49, 8)),
            11 => (r(-88, 3), r(847, 27)),
            19 => (r(-152, 1), r(361, 1)),
            43 => (r(-80 * 43, 1), r(21 * 43 * 43, 1)),
            67 => (r(-440 * 67, 1), r(217 * 67 * 67, 1)),
            163 => (r(-53360 * 163, 1), r(185801 * 163 * 163, 1)),
            _ => return None,
        })
    }

    /// `a³ + 27b²` of the `g = 1` model.
    fn base_discriminant(d: i64) -> Option<Rational> {
        let (a, b) = Self::base_coefficients(d)?;
        Some(a.pow(3) + Rational::int(27) * b * b)
    }

    pub fn model(&self) -> String {
        match self.d {
            1 => format!("y^2 = x^3 - ({})x", self.g),
            3 => format!("y^2 = x^3 + ({})", self.g),
            d => {
                let (a, b) = Self::base_coefficients(d).unwrap();
                format!("y^2 = 4x^3 + ({a})g^2 x + ({b})g^3, g = {}", self.g)
            }
        }
    }
}

/// Primes dividing `2`, the model denominators, or the discriminant of the
/// `g = 1` model.
pub fn model_primes(d: i64) -> Vec<u64> {
    let mut out = vec![2];
    match d {
        1 | 2 => {}
        3 => out.push(3),
        d => {
            let disc = CurveSpec::base_discriminant(d).unwrap();
            let (a, b) = CurveSpec::base_coefficients(d).unwrap();
            for p in [3u64, d as u64] {
                let pp = p as i128;
                let hit = [disc.numer(), disc.denom(), a.denom(), b.denom()].iter().any(|v| v % pp == 0);
                if hit && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Primes of bad reduction together with those dividing model denominators.
pub fn bad_primes(curve: &CurveSpec) -> BTreeSet<u64> {
    let mut out: BTreeSet<u64> = factorize(curve.g.unsigned_abs()).primes().collect();
    out.extend(model_primes(curve.d));
    out
}

pub fn is_good(curve: &CurveSpec, p: u64) -> bool {
    let bad = match curve.d {
        1 | 2 => p == 2,
        3 => p <= 3,
        7 => p == 2 || p == 7,
        d => model_primes(d).contains(&p),
    };
    !bad && curve.g % p as i64 != 0
}

/// `a_p(E)` from the prime-element formulas.
pub fn ap_formula(curve: &CurveSpec, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    if !is_good(curve, p) {
        return Err(Error::BadPrime(p));
    }
    let d = curve.d;
    if split_type(d, p)? != SplitType::Split {
        return Ok(0);
    }
    let g = curve.g;
    Ok(match d {
        1 => {
            let Element::Gauss(pi) = primary_prime(1, p)?.element else { unreachable!() };
            let s = quartic_symbol_prime(GaussInt::new(g, 0), pi.conj())?.ok_or(Error::BadPrime(p))?;
            (s.to_gauss() * pi).trace()
        }
        3 => {
            let Element::Eis(pi) = primary_prime(3, p)?.element else { unreachable!() };
            let s = sextic_symbol_rational(4 * g, pi.conj())?.ok_or(Error::BadPrime(p))?;
            -(s.to_eis() * pi).trace()
        }
        2 => {
            let t = norm_form_solve(2, p)?.trace;
            let e = (p / 8) as i64 + (t - 2) / 4;
            jacobi(g, p) as i64 * crate::arith::neg_one_pow(e) * t
        }
        _ => {
            let t = norm_form_solve(d, p)?.trace;
            jacobi(g, p) as i64 * kronecker(2 * t, d) as i64 * t
        }
    })
}

pub const BRUTE_LIMIT: u64 = 100_000;

fn rat_mod(x: Rational, p: u64) -> Option<u64> {
    let n = reduce((x.numer() % p as i128) as i64, p);
    let d = inv_mod(reduce((x.denom() % p as i128) as i64, p), p)?;
    Some(crate::arith::mul_mod(n, d, p))
}

/// Quadratic character table of `F_p`.
fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[(x * x % p) as usize] = 1;
    }
    t
}

/// Coefficients `(c3, c2, c1, c0)` of the cubic in `y² = f(x)` over `F_p`.
fn cubic_mod(curve: &CurveSpec, p: u64) -> Option<[u64; 4]> {
    let g = reduce(curve.g, p);
    let m = |a, b| crate::arith::mul_mod(a, b, p);
    Some(match curve.d {
        1 => [1, 0, (p - g) % p, 0],
        3 => [1, 0, 0, g],
        2 => {
            // y² = x(x² - 4gx + 2g²)
            [1, (p - m(4 % p, g)) % p, m(2 % p, m(g, g)), 0]
        }
        d => {
            let (a, b) = CurveSpec::base_coefficients(d)?;
            let a = m(rat_mod(a, p)?, m(g, g));
            let b = m(rat_mod(b, p)?, m(g, m(g, g)));
            [4 % p, 0, a, b]
        }
    })
}

/// `-Σ_x (f(x)/p)` for the curve's cubic `f`.
pub fn ap_bruteforce(curve: &CurveSpec, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    if p > BRUTE_LIMIT {
        return Err(Error::TooLarge(BRUTE_LIMIT));
    }
    if !is_good(curve, p) {
        return Err(Error::BadPrime(p));
    }
    let c = cubic_mod(curve, p).ok_or(Error::BadPrime(p))?;
    Ok(legendre_sum(&c, p, &legendre_table(p)))
}

fn legendre_sum(c: &[u64; 4], p: u64, table: &[i8]) -> i64 {
    let mut s = 0i64;
    for x in 0..p {
        let v = ((((c[0] * x + c[1]) % p * x + c[2]) % p) * x + c[3]) % p;
        s += table[v as usize] as i64;
    }
    -s
}

/// `-Σ_x ((4x³ + ax + b)/p)` for the rational `D = 2` model, valid for `p > 3`.
pub fn ap_bruteforce_rational_model(g: i64, p: u64) -> Result<i64> {
    if p <= 3 || !is_prime(p) || g % p as i64 == 0 {
        return Err(Error::BadPrime(p));
    }
    let (a, b) = CurveSpec::base_coefficients(2).unwrap();
    let gm = reduce(g, p);
    let m = |x, y| crate::arith::mul_mod(x, y, p);
    let a = m(rat_mod(a, p).unwrap(), m(gm, gm));
    let b = m(rat_mod(b, p).unwrap(), m(gm, m(gm, gm)));
    Ok(legendre_sum(&[4 % p, 0, a, b], p, &legendre_table(p)))
}

/// `a_p` in the form stated for `y² = x(x² - 4gx + 2g²)`: the prime element
/// `m + n√-2` is normalised by `m ≡ 1 mod 4` and the sign is `(-1)^{⌊p/8⌋}`.
pub fn ap_formula_d2_original(g: i64, p: u64) -> Result<i64> {
    if p == 2 || g % p as i64 == 0 {
        return Err(Error::BadPrime(p));
    }
    if split_type(2, p)? != SplitType::Split {
        return Ok(0);
    }
    let Element::Pair(m, _) = norm_form_solve(2, p)?.element else { unreachable!() };
    let m = if m % 4 == 1 { m } else { -m };
    Ok(jacobi(g, p) as i64 * crate::arith::neg_one_pow((p / 8) as i64) * 2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(split_type(1, 5).unwrap(), SplitType::Split);
        assert_eq!(split_type(1, 7).unwrap(), SplitType::Inert);
        assert_eq!(split_type(11, 5).unwrap(), SplitType::Split);
        assert_eq!(split_type(7, 7).unwrap(), SplitType::Ramified);
        assert_eq!(split_type(2, 2).unwrap(), SplitType::Ramified);
    }

    #[test]
    fn norm_form_examples() {
        assert_eq!(norm_form_solve(1, 13).unwrap().element, Element::Pair(3, 2));
        assert_eq!(norm_form_solve(11, 5).unwrap().element, Element::Pair(3, 1));
        assert_eq!(norm_form_solve(2, 3).unwrap().element, Element::Pair(1, 1));
        assert!(matches!(norm_form_solve(1, 7), Err(Error::NotSplit { .. })));
    }

    #[test]
    fn ap_examples() {
        let c = |d, g| CurveSpec::new(d, g).unwrap();
        assert_eq!(ap_formula(&c(1, -4), 5).unwrap(), -2);
        assert_eq!(ap_formula(&c(3, 2), 7).unwrap(), -1);
        assert_eq!(ap_formula(&c(11, 1), 5).unwrap(), -3);
        assert_eq!(ap_formula(&c(2, 1), 3).unwrap(), 2);
        assert_eq!(ap_bruteforce(&c(1, -4), 5).unwrap(), -2);
        assert_eq!(ap_bruteforce(&c(3, 2), 7).unwrap(), -1);
        assert_eq!(ap_bruteforce(&c(3, -432), 7).unwrap(), -1);
        assert_eq!(ap_bruteforce(&c(11, 1), 5).unwrap(), -3);
        assert_eq!(ap_bruteforce(&c(2, 1), 3).unwrap(), 2);
        assert_eq!(ap_bruteforce(&c(1, 1), 5).unwrap(), -2);
    }

    #[test]
    fn bad_prime_examples() {
        let c = |d, g| CurveSpec::new(d, g).unwrap();
        assert_eq!(bad_primes(&c(1, -4)), [2].into());
        assert_eq!(bad_primes(&c(3, 2)), [2, 3].into());
        assert_eq!(bad_primes(&c(11, 1)), [2, 3, 11].into());
        for d in [2, 7, 11, 19, 43, 67, 163] {
            let disc = CurveSpec::base_discriminant(d).unwrap();
            for mut n in [disc.numer().abs(), disc.denom()] {
                for p in [2, 3, d as i128] {
                    while n % p == 0 {
                        n /= p;
                    }
                }
                assert_eq!(n, 1, "D = {d}");
            }
        }
        assert_eq!(model_primes(7), vec![2, 7]);
    }
}
