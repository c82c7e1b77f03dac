//! Eisenstein integers `a + bω`, cubic and sextic residue symbols and cubic
//! Gauss sums.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{self, cornacchia4, factorize, inv_mod, is_prime, jacobi, pow_mod, reduce, Rational};
use crate::constants::omega_j;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct EisInt {
    pub re: i64,
    pub om: i64,
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("Eisenstein integer overflow")
}

impl EisInt {
    pub const ZERO: EisInt = EisInt { re: 0, om: 0 };
    pub const ONE: EisInt = EisInt { re: 1, om: 0 };
    pub const OMEGA: EisInt = EisInt { re: 0, om: 1 };

    pub const fn new(re: i64, om: i64) -> Self {
        EisInt { re, om }
    }

    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.om as i128);
        a * a - a * b + b * b
    }

    pub fn trace(self) -> i64 {
        2 * self.re - self.om
    }

    pub fn conj(self) -> Self {
        EisInt::new(self.re - self.om, -self.om)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.om == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Not divisible by `1-ω`.
    pub fn is_coprime_to_3(self) -> bool {
        (self.re + self.om).rem_euclid(3) != 0
    }

    /// `a ≡ -1 (mod 3)` and `3 | b`.
    pub fn is_primary(self) -> bool {
        self.re.rem_euclid(3) == 2 && self.om.rem_euclid(3) == 0
    }

    pub fn times_unit(self, u: UnitW6) -> Self {
        let w = match u.k {
            0 => self,
            1 => EisInt::new(-self.om, self.re - self.om),
            _ => EisInt::new(self.om - self.re, -self.re),
        };
        if u.sign < 0 {
            -w
        } else {
            w
        }
    }

    /// Remainder of division with nearest-lattice-point quotient; ties go to
    /// the lexicographically smallest `(re, om)` remainder.
    pub fn rem_euclid(self, m: EisInt) -> EisInt {
        let n = m.norm();
        assert!(n > 0, "division by zero");
        let num = self * m.conj();
        let (nr, no) = (num.re as i128, num.om as i128);
        let fl = |v: i128| v.div_euclid(n);
        let mut best: Option<EisInt> = None;
        for qr in [fl(nr), fl(nr) + 1] {
            for qo in [fl(no), fl(no) + 1] {
                let r = self - EisInt::new(narrow(qr), narrow(qo)) * m;
                best = Some(match best {
                    Some(b) if (b.norm(), b.re, b.om) <= (r.norm(), r.re, r.om) => b,
                    _ => r,
                });
            }
        }
        best.unwrap()
    }

    pub fn div_exact(self, m: EisInt) -> Option<EisInt> {
        let n = m.norm();
        let num = self * m.conj();
        let (r, o) = (num.re as i128, num.om as i128);
        (r % n == 0 && o % n == 0).then(|| EisInt::new(narrow(r / n), narrow(o / n)))
    }

    /// Complex embedding with `ω = (-1 + i√3)/2`.
    pub fn to_complex(self) -> (f64, f64) {
        let s3 = 3f64.sqrt();
        (self.re as f64 - self.om as f64 / 2.0, self.om as f64 * s3 / 2.0)
    }
}

impl Add for EisInt {
    type Output = EisInt;
    fn add(self, o: Self) -> Self {
        EisInt::new(self.re + o.re, self.om + o.om)
    }
}

impl Sub for EisInt {
    type Output = EisInt;
    fn sub(self, o: Self) -> Self {
        EisInt::new(self.re - o.re, self.om - o.om)
    }
}

impl Neg for EisInt {
    type Output = EisInt;
    fn neg(self) -> Self {
        EisInt::new(-self.re, -self.om)
    }
}

impl Mul for EisInt {
    type Output = EisInt;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.re as i128, self.om as i128, o.re as i128, o.om as i128);
        EisInt::new(narrow(a * c - b * d), narrow(a * d + b * c - b * d))
    }
}

impl From<i64> for EisInt {
    fn from(n: i64) -> Self {
        EisInt::new(n, 0)
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.om) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ω"),
            (a, b) if b < 0 => write!(f, "{a}{b}ω"),
            (a, b) => write!(f, "{a}+{b}ω"),
        }
    }
}

/// `±ω^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct UnitW6 {
    pub sign: i8,
    pub k: u8,
}

impl std::ops::Neg for UnitW6 {
    type Output = Self;
    fn neg(self) -> Self {
        UnitW6 {
            sign: -self.sign,
            k: self.k,
        }
    }
}

impl Default for UnitW6 {
    fn default() -> Self {
        UnitW6::ONE
    }
}

impl UnitW6 {
    pub const ONE: UnitW6 = UnitW6 { sign: 1, k: 0 };
    pub const OMEGA: UnitW6 = UnitW6 { sign: 1, k: 1 };

    pub fn omega_pow(k: i64) -> Self {
        UnitW6 {
            sign: 1,
            k: k.rem_euclid(3) as u8,
        }
    }

    pub fn all() -> [UnitW6; 6] {
        let mut out = [UnitW6::ONE; 6];
        for (i, u) in out.iter_mut().enumerate() {
            *u = UnitW6 {
                sign: if i < 3 { 1 } else { -1 },
                k: (i % 3) as u8,
            };
        }
        out
    }

    pub fn pow(self, e: i64) -> Self {
        UnitW6 {
            sign: if self.sign < 0 && e.rem_euclid(2) == 1 { -1 } else { 1 },
            k: (self.k as i64 * e).rem_euclid(3) as u8,
        }
    }

    pub fn conj(self) -> Self {
        UnitW6 {
            sign: self.sign,
            k: (3 - self.k) % 3,
        }
    }


    pub fn to_eis(self) -> EisInt {
        EisInt::ONE.times_unit(self)
    }

    pub fn from_eis(z: EisInt) -> Option<Self> {
        UnitW6::all().into_iter().find(|u| u.to_eis() == z)
    }

    /// Real part of `ω^k` as a rational: `1` or `-1/2`, times the sign.
    pub fn re(self) -> Rational {
        let r = if self.k == 0 { Rational::ONE } else { Rational::frac(-1, 2) };
        r * Rational::from(self.sign as i64)
    }
}

impl Mul for UnitW6 {
    type Output = UnitW6;
    fn mul(self, o: Self) -> Self {
        UnitW6 {
            sign: self.sign * o.sign,
            k: (self.k + o.k) % 3,
        }
    }
}

/// Value of a cubic or sextic symbol; `None` stands for 0.
pub type Sym6 = Option<UnitW6>;

fn sym_as_eis(v: Sym6) -> EisInt {
    v.map_or(EisInt::ZERO, UnitW6::to_eis)
}

/// The unit multiple of `z` that is primary (units map to `-1`).
pub fn primary_associate_eis(z: EisInt) -> Result<EisInt> {
    if !z.is_coprime_to_3() {
        return Err(Error::NotCoprimeTo3);
    }
    Ok(UnitW6::all()
        .into_iter()
        .map(|u| z.times_unit(u))
        .find(|w| w.is_primary())
        .expect("element coprime to 3 has a primary associate"))
}

/// Residue field of an Eisenstein prime with norm coprime to 3.
#[derive(Clone, Copy, Debug)]
pub enum EisField {
    /// `Z[ω]/(π) ≅ F_p` with `ω ↦ w`.
    Split { p: u64, w: u64 },
    /// `Z[ω]/(p) ≅ F_{p^2}` for `p ≡ 2 mod 3`.
    Inert { p: u64 },
}

impl EisField {
    pub fn for_prime(pi: EisInt) -> Result<Self> {
        if !pi.is_coprime_to_3() {
            return Err(Error::NotCoprimeTo3);
        }
        let n = pi.norm() as u64;
        if is_prime(n) {
            let a = reduce(pi.re, n);
            let b = reduce(pi.om, n);
            let w = arith::mul_mod(n - a, inv_mod(b, n).expect("om unit mod p"), n);
            return Ok(EisField::Split { p: n, w });
        }
        for u in UnitW6::all() {
            let r = pi.times_unit(u);
            if r.om == 0 && r.re > 0 && r.re % 3 == 2 && is_prime(r.re as u64) {
                return Ok(EisField::Inert { p: r.re as u64 });
            }
        }
        Err(Error::NotPrime)
    }

    /// For `p ≡ 1 mod 3` returns the two conjugate fields, else the inert one.
    pub fn over_rational(p: u64) -> Vec<EisField> {
        if p % 3 == 1 {
            let (t, s) = cornacchia4(3, p).expect("p ≡ 1 mod 3 is represented by t^2+3s^2=4p");
            let pi = EisInt::new(((t + s) / 2) as i64, s as i64);
            vec![
                EisField::for_prime(pi).unwrap(),
                EisField::for_prime(pi.conj()).unwrap(),
            ]
        } else {
            vec![EisField::Inert { p }]
        }
    }

    pub fn norm(&self) -> u64 {
        match *self {
            EisField::Split { p, .. } => p,
            EisField::Inert { p } => p * p,
        }
    }

    /// `z^{(N-1)/k}` identified with a unit, for `k ∈ {3, 6}`.
    pub fn power_symbol(&self, z: EisInt, k: u64) -> Sym6 {
        let e = (self.norm() - 1) / k;
        match *self {
            EisField::Split { p, w } => {
                let v = (reduce(z.re, p) + arith::mul_mod(reduce(z.om, p), w, p)) % p;
                if v == 0 {
                    return None;
                }
                let r = pow_mod(v, e, p);
                let image = |u: UnitW6| {
                    let x = u.to_eis();
                    (reduce(x.re, p) + arith::mul_mod(reduce(x.om, p), w, p)) % p
                };
                Some(
                    UnitW6::all()
                        .into_iter()
                        .find(|&u| image(u) == r)
                        .expect("power is a sixth root of unity"),
                )
            }
            EisField::Inert { p } => {
                let x = (reduce(z.re, p), reduce(z.om, p));
                if x == (0, 0) {
                    return None;
                }
                let r = fp2w_pow(x, e, p);
                let image = |u: UnitW6| {
                    let x = u.to_eis();
                    (reduce(x.re, p), reduce(x.om, p))
                };
                Some(
                    UnitW6::all()
                        .into_iter()
                        .find(|&u| image(u) == r)
                        .expect("power is a sixth root of unity"),
                )
            }
        }
    }

    pub fn cubic(&self, z: EisInt) -> Sym6 {
        self.power_symbol(z, 3)
    }
}

fn fp2w_mul(x: (u64, u64), y: (u64, u64), p: u64) -> (u64, u64) {
    let m = |a, b| arith::mul_mod(a, b, p);
    let bd = m(x.1, y.1);
    let re = (m(x.0, y.0) + p - bd) % p;
    let om = (m(x.0, y.1) + m(x.1, y.0) + p - bd) % p;
    (re, om)
}

fn fp2w_pow(mut b: (u64, u64), mut e: u64, p: u64) -> (u64, u64) {
    let mut acc = (1, 0);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp2w_mul(acc, b, p);
        }
        b = fp2w_mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// `(α/π)_3` for a prime `π` with norm coprime to 3, by exponentiation.
pub fn cubic_symbol_prime(alpha: EisInt, pi: EisInt) -> Result<Sym6> {
    Ok(EisField::for_prime(pi)?.cubic(alpha))
}

/// Splits nonzero `a` as `u (1-ω)^m P` with `u` a unit and `P` primary.
fn decompose(mut a: EisInt) -> (UnitW6, u32, EisInt) {
    let mut m = 0;
    while !a.is_coprime_to_3() {
        // a / (1-ω) = a (2+ω) / 3
        a = (a * EisInt::new(2, 1)).div_exact(EisInt::new(3, 0)).unwrap();
        m += 1;
    }
    let v = UnitW6::all()
        .into_iter()
        .find(|&u| a.times_unit(u).is_primary())
        .unwrap();
    (v.pow(5), m, a.times_unit(v))
}

fn third(v: i128) -> i64 {
    debug_assert!(v.rem_euclid(3) == 0);
    v.div_euclid(3).rem_euclid(3) as i64
}

/// `(ω/ξ)_3 = ω^{(N(ξ)-1)/3}`.
pub fn cubic_symbol_omega(xi: EisInt) -> UnitW6 {
    UnitW6::omega_pow(third(xi.norm() - 1))
}

/// `((1-ω)/ξ)_3 = ω^{2(a+1)/3}` for primary `ξ = a+bω`.
pub fn cubic_symbol_one_minus_omega(xi: EisInt) -> UnitW6 {
    UnitW6::omega_pow(third(2 * (xi.re as i128 + 1)))
}

/// `(2/ξ)_3` for primary `ξ = a+bω`, from the parities of `a` and `b`.
pub fn cubic_symbol_two(xi: EisInt) -> UnitW6 {
    match (xi.re.rem_euclid(2), xi.om.rem_euclid(2)) {
        (1, 0) => UnitW6::omega_pow(0),
        (0, 1) => UnitW6::omega_pow(1),
        (1, 1) => UnitW6::omega_pow(2),
        _ => unreachable!("2 divides ξ"),
    }
}

/// `(3/ξ)_3 = ω^{2b/3}` for primary `ξ = a+bω`.
pub fn cubic_symbol_three(xi: EisInt) -> UnitW6 {
    UnitW6::omega_pow(third(2 * xi.om as i128))
}

/// `((1+2ω)/ξ)_3 = ω^{b/3}` for primary `ξ = a+bω`.
pub fn cubic_symbol_one_plus_two_omega(xi: EisInt) -> UnitW6 {
    UnitW6::omega_pow(third(xi.om as i128))
}

/// `(α/ξ)_3` for `ξ` coprime to 3, via cubic reciprocity.
pub fn cubic_symbol_jacobi(alpha: EisInt, xi: EisInt) -> Result<Sym6> {
    let mut x = primary_associate_eis(xi)?;
    let mut a = alpha;
    let mut acc = UnitW6::ONE;
    loop {
        if x.is_unit() {
            return Ok(Some(acc));
        }
        a = a.rem_euclid(x);
        if a.is_zero() {
            return Ok(None);
        }
        let (u, m, p) = decompose(a);
        acc = acc
            * cubic_symbol_omega(x).pow(u.k as i64)
            * cubic_symbol_one_minus_omega(x).pow(m as i64);
        if p.is_unit() {
            return Ok(Some(acc));
        }
        a = x;
        x = p;
    }
}

/// `(α/π)_6 ≡ α^{(N(π)-1)/6} mod π` for rational `α` and a prime `π` with
/// norm coprime to 6.
pub fn sextic_symbol_rational(alpha: i64, pi: EisInt) -> Result<Sym6> {
    let n = pi.norm();
    if n % 2 == 0 || n % 3 == 0 {
        return Err(Error::BadNorm);
    }
    Ok(EisField::for_prime(pi)?.power_symbol(EisInt::from(alpha), 6))
}

/// The cubic character modulo a rational integer coprime to 3.
#[derive(Clone, Debug)]
pub struct CubicModulus {
    pub q: u64,
    parts: Vec<(EisField, u32)>,
}

impl CubicModulus {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q % 3 == 0 {
            return Err(Error::BadModulus(format!("{q} is not coprime to 3")));
        }
        let mut parts = Vec::new();
        for (p, e) in factorize(q).factors {
            for f in EisField::over_rational(p) {
                parts.push((f, e));
            }
        }
        Ok(CubicModulus { q, parts })
    }

    pub fn symbol(&self, z: EisInt) -> Sym6 {
        let mut acc = UnitW6::ONE;
        for (f, e) in &self.parts {
            acc = acc * f.cubic(z)?.pow(*e as i64);
        }
        Some(acc)
    }
}

/// `(z/q)_3` for a positive rational integer `q` coprime to 3.
pub fn cubic_symbol_rational(z: EisInt, q: u64) -> Result<Sym6> {
    Ok(CubicModulus::new(q)?.symbol(z))
}

fn check_coprime_6(q: u64) -> Result<()> {
    if q == 0 || q % 2 == 0 || q % 3 == 0 {
        Err(Error::BadModulus(format!("{q} is not coprime to 6")))
    } else {
        Ok(())
    }
}

const ROUND_TOL: f64 = 1e-6;

/// `Σ_{z mod p} (z/p)_3 (N(z)/p)^κ e(Tr(z)/p)` for a prime `p > 3`, rounded to `Z[ω]`.
pub fn gauss_sum_cubic(p: u64, kappa: u8) -> Result<EisInt> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::NotPrime);
    }
    let m = CubicModulus::new(p)?;
    let (mut sr, mut si) = (0f64, 0f64);
    let pi = p as i64;
    for x in 0..pi {
        for y in 0..pi {
            let z = EisInt::new(x, y);
            let Some(u) = m.symbol(z) else { continue };
            let mut u = u;
            if kappa == 1 {
                let n = z.norm().rem_euclid(p as i128) as i64;
                if jacobi(n, p) < 0 {
                    u = -u;
                }
            }
            let (ur, ui) = u.to_eis().to_complex();
            let ang = 2.0 * std::f64::consts::PI * (z.trace().rem_euclid(pi) as f64) / p as f64;
            let (s, c) = ang.sin_cos();
            sr += ur * c - ui * s;
            si += ur * s + ui * c;
        }
    }
    let s3 = 3f64.sqrt();
    let b = 2.0 * si / s3;
    let br = b.round();
    let a = sr + br / 2.0;
    let ar = a.round();
    let res = (b - br).abs().max((a - ar).abs());
    if res > ROUND_TOL {
        return Err(Error::Nonconvergent(res));
    }
    Ok(EisInt::new(ar as i64, br as i64))
}

/// A rational multiple of a sixth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledUnitW6 {
    pub coeff: Rational,
    pub unit: UnitW6,
}

impl ScaledUnitW6 {
    pub fn to_eis(self) -> Option<EisInt> {
        if !self.coeff.is_integer() {
            return None;
        }
        Some(EisInt::new(self.coeff.numer() as i64, 0).times_unit(self.unit))
    }
}

/// Closed form of `C_β(q,t;κ) = Σ_{Tr(βz) ≡ t mod q} (z/q)_3 (N(z)/q)^κ`.
pub fn c_closed(q: u64, t: i64, beta: UnitW6, kappa: u8) -> Result<ScaledUnitW6> {
    check_coprime_6(q)?;
    let f = factorize(q);
    let phi: u64 = f.factors.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product();
    let mut unit = cubic_symbol_rational(beta.conj().to_eis(), q)?.expect("unit");
    let j = if kappa == 0 { 3 } else { 6 };
    if kappa == 1 && jacobi(3, q) < 0 {
        unit = -unit;
    }
    let mut coeff = Rational::from(phi as i64) * omega_j(3, q, t, j)?;
    for p in f.primes() {
        if t.rem_euclid(p as i64) != 0 {
            let chi = jacobi(-3, p) as i128;
            coeff = coeff * (Rational::ONE - Rational::frac(chi, p as i128 - 1));
        }
    }
    Ok(ScaledUnitW6 { coeff, unit })
}

pub const BRUTE_LIMIT: u64 = 1000;

/// `C_β(q,t;κ)` for all `t mod q` and all six units, as `table[t][i]` with
/// `β = UnitW6::all()[i]`.
pub fn c_bruteforce_table(q: u64, kappa: u8) -> Result<Vec<[EisInt; 6]>> {
    check_coprime_6(q)?;
    if q > BRUTE_LIMIT {
        return Err(Error::TooLarge(BRUTE_LIMIT));
    }
    let m = CubicModulus::new(q)?;
    let units = UnitW6::all();
    let mut table = vec![[EisInt::ZERO; 6]; q as usize];
    let qi = q as i64;
    for x in 0..qi {
        for y in 0..qi {
            let z = EisInt::new(x, y);
            let mut s = m.symbol(z);
            if kappa == 1 {
                if let Some(u) = s {
                    let n = z.norm().rem_euclid(q as i128) as i64;
                    s = match jacobi(n, q) {
                        0 => None,
                        1 => Some(u),
                        _ => Some(-u),
                    };
                }
            }
            let s = sym_as_eis(s);
            if s.is_zero() {
                continue;
            }
            for (i, b) in units.iter().enumerate() {
                let t = z.times_unit(*b).trace().rem_euclid(qi) as usize;
                table[t][i] = table[t][i] + s;
            }
        }
    }
    Ok(table)
}

pub fn c_bruteforce(q: u64, t: i64, beta: UnitW6, kappa: u8) -> Result<EisInt> {
    let table = c_bruteforce_table(q, kappa)?;
    let i = UnitW6::all().iter().position(|&u| u == beta).unwrap();
    Ok(table[t.rem_euclid(q as i64) as usize][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_examples() {
        assert_eq!(primary_associate_eis(EisInt::new(3, 1)).unwrap(), EisInt::new(2, 3));
        assert_eq!(primary_associate_eis(EisInt::new(2, 0)).unwrap(), EisInt::new(2, 0));
        assert_eq!(primary_associate_eis(EisInt::new(1, 1)).unwrap(), EisInt::new(-1, 0));
        assert_eq!(primary_associate_eis(EisInt::new(1, -1)), Err(Error::NotCoprimeTo3));
    }

    #[test]
    fn unit_algebra() {
        for u in UnitW6::all() {
            for v in UnitW6::all() {
                assert_eq!((u * v).to_eis(), u.to_eis() * v.to_eis());
            }
            assert_eq!(u.conj().to_eis(), u.to_eis().conj());
        }
    }

    #[test]
    fn cubic_examples() {
        let pi = EisInt::new(2, 3);
        assert_eq!(cubic_symbol_prime(EisInt::OMEGA, pi).unwrap(), Some(UnitW6::omega_pow(2)));
        assert_eq!(cubic_symbol_prime(pi, pi).unwrap(), None);
        assert_eq!(cubic_symbol_prime(EisInt::new(-1, 0), pi).unwrap(), Some(UnitW6::ONE));
        assert_eq!(cubic_symbol_jacobi(EisInt::new(3, 0), pi).unwrap(), Some(UnitW6::omega_pow(2)));
        assert_eq!(cubic_symbol_prime(EisInt::new(3, 0), pi).unwrap(), Some(UnitW6::omega_pow(2)));
        assert_eq!(cubic_symbol_jacobi(EisInt::new(4, 9), EisInt::new(-1, 0)).unwrap(), Some(UnitW6::ONE));
    }

    #[test]
    fn sextic_examples() {
        let pi = EisInt::new(2, 3);
        assert_eq!(sextic_symbol_rational(1, pi).unwrap(), Some(UnitW6::ONE));
        assert_eq!(sextic_symbol_rational(7, pi).unwrap(), None);
        let v = sextic_symbol_rational(2, pi).unwrap().unwrap();
        assert_eq!(v.pow(3), UnitW6::ONE);
        let cubic = cubic_symbol_prime(EisInt::new(2, 0), pi).unwrap().unwrap();
        assert_eq!(v.conj(), cubic);
        assert_eq!(sextic_symbol_rational(2, EisInt::new(2, 0)), Err(Error::BadNorm));
    }

    #[test]
    fn gauss_sum_examples() {
        assert_eq!(gauss_sum_cubic(7, 1).unwrap(), EisInt::new(-7, 0));
        assert_eq!(gauss_sum_cubic(7, 0).unwrap(), EisInt::new(7, 0));
        assert_eq!(gauss_sum_cubic(5, 0).unwrap(), EisInt::new(5, 0));
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_closed(7, 1, UnitW6::ONE, 0).unwrap().to_eis().unwrap(), EisInt::new(-1, 0));
        assert_eq!(c_bruteforce(7, 1, UnitW6::ONE, 0).unwrap(), EisInt::new(-1, 0));
        assert_eq!(c_closed(1, 3, UnitW6::OMEGA, 1).unwrap().to_eis().unwrap(), EisInt::ONE);
        assert_eq!(c_closed(5, 0, UnitW6::ONE, 0).unwrap().to_eis().unwrap(), EisInt::new(4, 0));
        assert_eq!(c_bruteforce(5, 0, UnitW6::ONE, 0).unwrap(), EisInt::new(4, 0));
    }
}
