//! Gaussian integers, the quartic residue symbol and quartic Gauss sums.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{self, cornacchia, factorize, inv_mod, is_prime, jacobi, pow_mod, reduce, Rational};
use crate::constants::omega_j;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("Gaussian integer overflow")
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }

    pub fn trace(self) -> i64 {
        2 * self.re
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Not divisible by `1+i`.
    pub fn is_odd(self) -> bool {
        (self.re + self.im).rem_euclid(2) == 1
    }

    /// `a + b ≡ 1 (mod 4)` and `b` even.
    pub fn is_primary(self) -> bool {
        self.im.rem_euclid(2) == 0 && (self.re + self.im).rem_euclid(4) == 1
    }

    pub fn times_unit(self, u: UnitI4) -> Self {
        match u.0 {
            0 => self,
            1 => GaussInt::new(-self.im, self.re),
            2 => -self,
            _ => GaussInt::new(self.im, -self.re),
        }
    }

    /// Remainder of Euclidean division minimizing the remainder norm; ties go
    /// to the lexicographically smallest `(re, im)`.
    pub fn rem_euclid(self, m: GaussInt) -> GaussInt {
        let n = m.norm();
        assert!(n > 0, "division by zero");
        let num = self * m.conj();
        let (nr, ni) = (num.re as i128, num.im as i128);
        let fl = |v: i128| v.div_euclid(n);
        let mut best: Option<GaussInt> = None;
        for qr in [fl(nr), fl(nr) + 1] {
            for qi in [fl(ni), fl(ni) + 1] {
                let q = GaussInt::new(narrow(qr), narrow(qi));
                let r = self - q * m;
                best = Some(match best {
                    None => r,
                    Some(b) => {
                        if (r.norm(), r.re, r.im) < (b.norm(), b.re, b.im) {
                            r
                        } else {
                            b
                        }
                    }
                });
            }
        }
        best.unwrap()
    }

    /// Exact division; `None` if `m` does not divide `self`.
    pub fn div_exact(self, m: GaussInt) -> Option<GaussInt> {
        let n = m.norm();
        let num = self * m.conj();
        let (r, i) = (num.re as i128, num.im as i128);
        (r % n == 0 && i % n == 0).then(|| GaussInt::new(narrow(r / n), narrow(i / n)))
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: Self) -> Self {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: Self) -> Self {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.re as i128, self.im as i128, o.re as i128, o.im as i128);
        GaussInt::new(narrow(a * c - b * d), narrow(a * d + b * c))
    }
}

impl From<i64> for GaussInt {
    fn from(n: i64) -> Self {
        GaussInt::new(n, 0)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}i"),
            (a, b) if b < 0 => write!(f, "{a}{b}i"),
            (a, b) => write!(f, "{a}+{b}i"),
        }
    }
}

/// `i^k` for `k` in `0..4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct UnitI4(pub u8);

impl UnitI4 {
    pub const ONE: UnitI4 = UnitI4(0);
    pub const I: UnitI4 = UnitI4(1);

    pub fn pow(self, e: i64) -> Self {
        UnitI4((self.0 as i64 * e).rem_euclid(4) as u8)
    }

    pub fn conj(self) -> Self {
        UnitI4((4 - self.0) % 4)
    }

    pub fn to_gauss(self) -> GaussInt {
        GaussInt::ONE.times_unit(self)
    }

    pub fn from_gauss(z: GaussInt) -> Option<Self> {
        (0..4).map(UnitI4).find(|u| u.to_gauss() == z)
    }

    /// Real part: `1, 0, -1, 0`.
    pub fn re(self) -> i64 {
        [1, 0, -1, 0][self.0 as usize]
    }
}

impl Mul for UnitI4 {
    type Output = UnitI4;
    fn mul(self, o: Self) -> Self {
        UnitI4((self.0 + o.0) % 4)
    }
}

/// Value of a quartic symbol: `None` stands for 0.
pub type Quartic = Option<UnitI4>;

pub fn quartic_mul(a: Quartic, b: Quartic) -> Quartic {
    Some(a? * b?)
}

fn quartic_as_gauss(v: Quartic) -> GaussInt {
    v.map_or(GaussInt::ZERO, UnitI4::to_gauss)
}

/// The unit multiple of `z` that is primary.
pub fn primary_associate(z: GaussInt) -> Result<GaussInt> {
    if !z.is_odd() {
        return Err(Error::NotOdd);
    }
    Ok((0..4)
        .map(|k| z.times_unit(UnitI4(k)))
        .find(|w| w.is_primary())
        .expect("odd element has a primary associate"))
}

/// Residue field of a Gaussian prime of odd norm.
#[derive(Clone, Copy, Debug)]
pub enum QuarticField {
    /// `Z[i]/(π) ≅ F_p` with `i ↦ iota`.
    Split { p: u64, iota: u64 },
    /// `Z[i]/(p) ≅ F_{p^2}` for `p ≡ 3 mod 4`.
    Inert { p: u64 },
}

impl QuarticField {
    pub fn for_prime(pi: GaussInt) -> Result<Self> {
        if !pi.is_odd() {
            return Err(Error::NotOdd);
        }
        let n = pi.norm() as u64;
        if is_prime(n) {
            let b = reduce(pi.im, n);
            let a = reduce(pi.re, n);
            let iota = arith::mul_mod(n - a, inv_mod(b, n).expect("im unit mod p"), n);
            return Ok(QuarticField::Split { p: n, iota });
        }
        let r = pi.re.unsigned_abs().max(pi.im.unsigned_abs());
        if (pi.re == 0 || pi.im == 0) && r % 4 == 3 && is_prime(r) {
            return Ok(QuarticField::Inert { p: r });
        }
        Err(Error::NotPrime)
    }

    /// For `p ≡ 1 mod 4` returns the two conjugate fields, else the inert one.
    pub fn over_rational(p: u64) -> Vec<QuarticField> {
        if p % 4 == 1 {
            let (a, b) = cornacchia(1, p).expect("p ≡ 1 mod 4 is a sum of two squares");
            let pi = GaussInt::new(a as i64, b as i64);
            vec![
                QuarticField::for_prime(pi).unwrap(),
                QuarticField::for_prime(pi.conj()).unwrap(),
            ]
        } else {
            vec![QuarticField::Inert { p }]
        }
    }

    pub fn symbol(&self, z: GaussInt) -> Quartic {
        match *self {
            QuarticField::Split { p, iota } => {
                let v = (reduce(z.re, p) + arith::mul_mod(reduce(z.im, p), iota, p)) % p;
                if v == 0 {
                    return None;
                }
                let w = pow_mod(v, (p - 1) / 4, p);
                let k = if w == 1 {
                    0
                } else if w == iota {
                    1
                } else if w == p - 1 {
                    2
                } else if w == p - iota {
                    3
                } else {
                    unreachable!("quartic power is a fourth root of unity")
                };
                Some(UnitI4(k))
            }
            QuarticField::Inert { p } => {
                let x = (reduce(z.re, p), reduce(z.im, p));
                if x == (0, 0) {
                    return None;
                }
                let w = fp2_pow(x, (p * p - 1) / 4, p);
                let k = match w {
                    (1, 0) => 0,
                    (0, 1) => 1,
                    (a, 0) if a == p - 1 => 2,
                    (0, b) if b == p - 1 => 3,
                    _ => unreachable!("quartic power is a fourth root of unity"),
                };
                Some(UnitI4(k))
            }
        }
    }
}

fn fp2_mul(x: (u64, u64), y: (u64, u64), p: u64) -> (u64, u64) {
    let m = |a, b| arith::mul_mod(a, b, p);
    let re = (m(x.0, y.0) + p - m(x.1, y.1)) % p;
    let im = (m(x.0, y.1) + m(x.1, y.0)) % p;
    (re, im)
}

fn fp2_pow(mut b: (u64, u64), mut e: u64, p: u64) -> (u64, u64) {
    let mut acc = (1, 0);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp2_mul(acc, b, p);
        }
        b = fp2_mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// `(α/π)_4` for a Gaussian prime `π` of odd norm, by exponentiation.
pub fn quartic_symbol_prime(alpha: GaussInt, pi: GaussInt) -> Result<Quartic> {
    Ok(QuarticField::for_prime(pi)?.symbol(alpha))
}

/// Splits an odd-or-even nonzero `a` as `i^k (1+i)^m P` with `P` primary.
fn decompose(mut a: GaussInt) -> (UnitI4, u32, GaussInt) {
    let mut m = 0;
    while !a.is_odd() {
        a = GaussInt::new((a.re + a.im) / 2, (a.im - a.re) / 2);
        m += 1;
    }
    let j = (0..4u8)
        .find(|&k| a.times_unit(UnitI4(k)).is_primary())
        .unwrap();
    (UnitI4(j).conj(), m, a.times_unit(UnitI4(j)))
}

fn quarter(v: i128) -> i64 {
    debug_assert!(v.rem_euclid(4) == 0);
    v.div_euclid(4).rem_euclid(4) as i64
}

/// `(i/ξ)_4 = i^{(N(ξ)-1)/4}` for primary `ξ`.
pub fn quartic_symbol_i(xi: GaussInt) -> UnitI4 {
    UnitI4::I.pow(quarter(xi.norm() - 1))
}

/// `((1+i)/ξ)_4 = i^{(a-b-b^2-1)/4}` for primary `ξ = a+bi`.
pub fn quartic_symbol_one_plus_i(xi: GaussInt) -> UnitI4 {
    let (a, b) = (xi.re as i128, xi.im as i128);
    UnitI4::I.pow(quarter(a - b - b * b - 1))
}

/// `(2/ξ)_4 = i^{(3a^2+b^2+2a-2b-5)/4}` for primary `ξ = a+bi`.
pub fn quartic_symbol_two(xi: GaussInt) -> UnitI4 {
    let (a, b) = (xi.re as i128, xi.im as i128);
    UnitI4::I.pow(quarter(3 * a * a + b * b + 2 * a - 2 * b - 5))
}

/// `(α/ξ)_4` for odd `ξ`, via reciprocity and the supplementary laws.
pub fn quartic_symbol_jacobi(alpha: GaussInt, xi: GaussInt) -> Result<Quartic> {
    let mut x = primary_associate(xi)?;
    let mut a = alpha;
    let mut acc = UnitI4::ONE;
    loop {
        if x.is_unit() {
            return Ok(Some(acc));
        }
        a = a.rem_euclid(x);
        if a.is_zero() {
            return Ok(None);
        }
        let (u, m, p) = decompose(a);
        acc = acc * quartic_symbol_i(x).pow(u.0 as i64) * quartic_symbol_one_plus_i(x).pow(m as i64);
        if p.is_unit() {
            return Ok(Some(acc));
        }
        let nx = (x.norm() - 1) / 4;
        let np = (p.norm() - 1) / 4;
        if nx % 2 == 1 && np % 2 == 1 {
            acc = acc * UnitI4(2);
        }
        a = x;
        x = p;
    }
}

/// The quartic character modulo an odd rational integer.
#[derive(Clone, Debug)]
pub struct QuarticModulus {
    pub q: u64,
    parts: Vec<(QuarticField, u32)>,
}

impl QuarticModulus {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q % 2 == 0 {
            return Err(Error::BadModulus(format!("{q} is not odd")));
        }
        let mut parts = Vec::new();
        for (p, e) in factorize(q).factors {
            for f in QuarticField::over_rational(p) {
                parts.push((f, e));
            }
        }
        Ok(QuarticModulus { q, parts })
    }

    pub fn symbol(&self, z: GaussInt) -> Quartic {
        let mut acc = UnitI4::ONE;
        for (f, e) in &self.parts {
            acc = acc * f.symbol(z)?.pow(*e as i64);
        }
        Some(acc)
    }
}

/// `(z/q)_4` for an odd positive rational integer `q`.
pub fn quartic_symbol_rational(z: GaussInt, q: u64) -> Result<Quartic> {
    Ok(QuarticModulus::new(q)?.symbol(z))
}

const ROUND_TOL: f64 = 1e-6;

fn round_checked(v: f64) -> Result<i64> {
    let r = v.round();
    let res = (v - r).abs();
    if res > ROUND_TOL {
        return Err(Error::Nonconvergent(res));
    }
    Ok(r as i64)
}

/// `Σ_{z mod p} (z/p)_4 e(Tr(z)/p)`, summed in floating point and rounded.
pub fn gauss_sum_quartic(p: u64) -> Result<GaussInt> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotPrime);
    }
    let m = QuarticModulus::new(p)?;
    let (mut sr, mut si) = (0f64, 0f64);
    for x in 0..p as i64 {
        let ang = 2.0 * std::f64::consts::PI * ((2 * x) as f64) / p as f64;
        let (s, c) = ang.sin_cos();
        let (mut ur, mut ui) = (0i64, 0i64);
        for y in 0..p as i64 {
            if let Some(u) = m.symbol(GaussInt::new(x, y)) {
                let g = u.to_gauss();
                ur += g.re;
                ui += g.im;
            }
        }
        sr += ur as f64 * c - ui as f64 * s;
        si += ur as f64 * s + ui as f64 * c;
    }
    Ok(GaussInt::new(round_checked(sr)?, round_checked(si)?))
}

/// A rational multiple of a fourth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledUnitI4 {
    pub coeff: Rational,
    pub unit: UnitI4,
}

impl ScaledUnitI4 {
    pub fn zero() -> Self {
        ScaledUnitI4 {
            coeff: Rational::ZERO,
            unit: UnitI4::ONE,
        }
    }

    /// The value as a Gaussian integer, if integral.
    pub fn to_gauss(self) -> Option<GaussInt> {
        if !self.coeff.is_integer() {
            return None;
        }
        let c = self.coeff.numer() as i64;
        Some(GaussInt::new(c, 0).times_unit(self.unit))
    }
}

fn check_odd_modulus(q: u64) -> Result<()> {
    if q == 0 || q % 2 == 0 {
        Err(Error::BadModulus(format!("{q} is not odd")))
    } else {
        Ok(())
    }
}

/// Closed form of `Q_β(q,t) = Σ_{Tr(βz) ≡ 2t mod q} (z/q)_4`.
pub fn q_closed(q: u64, t: i64, beta: UnitI4) -> Result<ScaledUnitI4> {
    check_odd_modulus(q)?;
    let f = factorize(q);
    let phi: u64 = f.factors.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product();
    let unit = quartic_symbol_rational(UnitI4::I.to_gauss().times_unit(beta), q)?
        .expect("units are coprime to q");
    let mut coeff = Rational::from(phi as i64) * omega_j(1, q, t, 4)?;
    for p in f.primes() {
        if t.rem_euclid(p as i64) != 0 {
            let chi = jacobi(-1, p) as i128;
            coeff = coeff * (Rational::ONE - Rational::frac(chi, p as i128 - 1));
        }
    }
    Ok(ScaledUnitI4 { coeff, unit })
}

pub const BRUTE_LIMIT: u64 = 1000;

/// `Q_β(q,t)` for every `t mod q` and `β = i^k`, as `table[t][k]`.
pub fn q_bruteforce_table(q: u64) -> Result<Vec<[GaussInt; 4]>> {
    check_odd_modulus(q)?;
    if q > BRUTE_LIMIT {
        return Err(Error::TooLarge(BRUTE_LIMIT));
    }
    let m = QuarticModulus::new(q)?;
    let mut table = vec![[GaussInt::ZERO; 4]; q as usize];
    let qi = q as i64;
    for x in 0..qi {
        for y in 0..qi {
            let s = quartic_as_gauss(m.symbol(GaussInt::new(x, y)));
            if s.is_zero() {
                continue;
            }
            // Re(i^k z) for k = 0..3, and Tr(βz) ≡ 2t ⇔ Re(βz) ≡ t.
            let res = [x, -y, -x, y];
            for (k, r) in res.iter().enumerate() {
                let t = r.rem_euclid(qi) as usize;
                table[t][k] = table[t][k] + s;
            }
        }
    }
    Ok(table)
}

/// Literal sum `Q_β(q,t)`.
pub fn q_bruteforce(q: u64, t: i64, beta: UnitI4) -> Result<GaussInt> {
    let table = q_bruteforce_table(q)?;
    Ok(table[t.rem_euclid(q as i64) as usize][beta.0 as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_examples() {
        assert_eq!(primary_associate(GaussInt::new(1, 2)).unwrap(), GaussInt::new(-1, -2));
        assert_eq!(primary_associate(GaussInt::new(3, 0)).unwrap(), GaussInt::new(-3, 0));
        assert_eq!(primary_associate(GaussInt::ONE).unwrap(), GaussInt::ONE);
        assert_eq!(primary_associate(GaussInt::I).unwrap(), GaussInt::ONE);
        assert_eq!(primary_associate(GaussInt::new(1, 1)), Err(Error::NotOdd));
    }

    #[test]
    fn prime_symbol_examples() {
        let pi = GaussInt::new(-1, 2);
        assert_eq!(quartic_symbol_prime(GaussInt::I, pi).unwrap(), Some(UnitI4::I));
        assert_eq!(quartic_symbol_prime(pi, pi).unwrap(), None);
        assert_eq!(quartic_symbol_prime(GaussInt::ONE, pi).unwrap(), Some(UnitI4::ONE));
        assert_eq!(quartic_symbol_prime(GaussInt::ONE, GaussInt::new(3, 4)), Err(Error::NotPrime));
    }

    #[test]
    fn jacobi_examples() {
        let xi = GaussInt::new(-1, -2);
        assert_eq!(quartic_symbol_jacobi(GaussInt::new(2, 0), xi).unwrap(), Some(UnitI4::I));
        assert_eq!(quartic_symbol_two(xi), UnitI4::I);
        assert_eq!(quartic_symbol_prime(GaussInt::new(2, 0), xi).unwrap(), Some(UnitI4::I));
        assert_eq!(
            quartic_symbol_jacobi(GaussInt::new(5, 7), GaussInt::ONE).unwrap(),
            Some(UnitI4::ONE)
        );
    }

    #[test]
    fn rational_examples() {
        assert_eq!(quartic_symbol_rational(GaussInt::new(7, 0), 15).unwrap(), Some(UnitI4::ONE));
        assert_eq!(quartic_symbol_rational(GaussInt::I, 3).unwrap(), Some(UnitI4(2)));
        assert_eq!(quartic_symbol_rational(GaussInt::new(1, 2), 3).unwrap(), Some(UnitI4::I));
    }

    #[test]
    fn gauss_sum_examples() {
        assert_eq!(gauss_sum_quartic(3).unwrap(), GaussInt::new(-3, 0));
        assert_eq!(gauss_sum_quartic(5).unwrap(), GaussInt::new(-5, 0));
        assert_eq!(gauss_sum_quartic(13).unwrap(), GaussInt::new(-13, 0));
    }

    #[test]
    fn q_examples() {
        let one = q_closed(3, 1, UnitI4::ONE).unwrap().to_gauss().unwrap();
        assert_eq!(one, GaussInt::ONE);
        assert_eq!(q_bruteforce(3, 1, UnitI4::ONE).unwrap(), GaussInt::ONE);
        assert_eq!(q_closed(3, 0, UnitI4::ONE).unwrap().to_gauss().unwrap(), GaussInt::new(-2, 0));
        assert_eq!(q_bruteforce(3, 0, UnitI4::ONE).unwrap(), GaussInt::new(-2, 0));
        assert_eq!(q_closed(1, 5, UnitI4::I).unwrap().to_gauss().unwrap(), GaussInt::ONE);
        assert_eq!(q_bruteforce(1, 5, UnitI4::I).unwrap(), GaussInt::ONE);
    }
}
