//! Integer utilities: primality, factorization, prime sieving, Kronecker
//! symbols, modular square roots and exact rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::Error;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as u64);
        r * r == n as u64
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 37 * 37 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Canonical prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn reassemble(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

fn rho(n: u64) -> u64 {
    // Brent's variant; deterministic sequence of increments.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q as i64, n as i64) as u64;
                k += 128;
            }
            r <<= 1;
            if r > 1 << 26 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys) as i64, n as i64) as u64;
                if g > 1 {
                    break;
                }
            }
        }
        if g != n && g > 1 {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factors `n >= 1` by trial division followed by Pollard rho.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut primes = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    let mut p = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while p <= 1000 && p * p <= m {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
        p += wheel[w];
        w = (w + 1) % 8;
    }
    if m > 1 {
        split_into(m, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization { value: n, factors }
}

/// Exponent of the prime `p` in `n != 0`.
pub fn ord_p(n: i64, p: u64) -> u32 {
    assert!(n != 0, "ord_p of zero");
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    e
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Odd part of `n`.
pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

/// Primes up to `limit` inclusive (simple sieve, used for base primes).
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Sieves `[lo, hi)` given all primes up to `sqrt(hi)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64], out: &mut Vec<u64>) {
    if hi <= lo {
        return;
    }
    if lo <= 2 && hi > 2 {
        out.push(2);
    }
    // Odd numbers only: index i <-> lo_odd + 2i.
    let lo_odd = (lo.max(3)) | 1;
    if lo_odd >= hi {
        return;
    }
    let len = (hi - lo_odd).div_ceil(2);
    let mut comp = vec![false; len as usize];
    for &p in base.iter().skip(1) {
        if p * p >= hi {
            break;
        }
        let mut start = (p * p).max(lo_odd.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut j = (start - lo_odd) / 2;
        while j < len {
            comp[j as usize] = true;
            j += p;
        }
    }
    out.extend(
        comp.iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo_odd + 2 * i as u64),
    );
}

pub const SEGMENT: u64 = 1 << 21;

/// Base primes sufficient to sieve any range below `hi`.
pub fn base_primes(hi: u64) -> Vec<u64> {
    small_primes(isqrt(hi) + 1)
}

/// Primes in `[lo, hi)`, ascending, by segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    let base = base_primes(hi);
    let mut out = Vec::new();
    let mut a = lo;
    while a < hi {
        let b = (a + SEGMENT).min(hi);
        sieve_segment(a, b, &base, &mut out);
        a = b;
    }
    out
}

/// Primes in `[lo, hi)` using precomputed base primes (all primes up to `sqrt(hi)`).
pub fn primes_in_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    sieve_segment(lo, hi, base, &mut out);
    out
}

/// Splits `[lo, hi)` into sieve-sized chunks.
pub fn segments(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    let mut a = lo;
    while a < hi {
        let b = (a + SEGMENT).min(hi);
        v.push((a, b));
        a = b;
    }
    v
}

/// Maps each prime in `[lo, hi)` through `f` and folds the results with `merge`,
/// in parallel when the `parallel` feature is on. `merge` must be associative
/// and commutative for the result to be schedule independent.
pub fn fold_primes<T, F, M>(lo: u64, hi: u64, init: T, f: F, merge: M) -> T
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, u64) + Send + Sync,
    M: Fn(T, T) -> T + Send + Sync,
{
    let base = base_primes(hi);
    let segs = segments(lo, hi);
    let run = |&(a, b): &(u64, u64)| {
        let mut acc = init.clone();
        for p in primes_in_segment(a, b, &base) {
            f(&mut acc, p);
        }
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        segs.par_iter()
            .map(run)
            .reduce(|| init.clone(), &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        segs.iter().map(run).fold(init.clone(), merge)
    }
}

pub fn prime_count(hi: u64) -> u64 {
    fold_primes(2, hi, 0u64, |c, _| *c += 1, |a, b| a + b)
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1;
    let mut n_abs = n.unsigned_abs();
    if n < 0 && a < 0 {
        sign = -1;
    }
    let v = n_abs.trailing_zeros();
    n_abs >>= v;
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    sign * jacobi_unsigned(reduce(a, n_abs), n_abs)
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi needs odd modulus");
    jacobi_unsigned(reduce(a, n), n)
}

fn jacobi_unsigned(mut a: u64, mut n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let mut t = 1;
    a %= n;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Square root of `a` modulo the prime `p`, the smaller of the two roots.
pub fn sqrt_mod(a: i64, p: u64) -> Option<u64> {
    let a = reduce(a, p);
    if p == 2 || a == 0 {
        return Some(a);
    }
    if jacobi_unsigned(a, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let mut z = 2;
        while jacobi_unsigned(z, p) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

/// Solves `x^2 + d*y^2 = p` for prime `p` and `d >= 1`, returning `(x, y)` with
/// `x, y >= 0`, or `None` when no solution exists.
pub fn cornacchia(d: u64, p: u64) -> Option<(u64, u64)> {
    if p < 64 {
        for y in 0..=isqrt(p / d.max(1)) {
            let rest = p.checked_sub(d * y * y)?;
            let x = isqrt(rest);
            if x * x == rest {
                return Some((x, y));
            }
        }
        return None;
    }
    let mut r0 = sqrt_mod(-(d as i64), p)?;
    if 2 * r0 < p {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    let bound = isqrt(p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    if rest % d != 0 {
        return None;
    }
    let y2 = rest / d;
    let y = isqrt(y2);
    (y * y == y2).then_some((b, y))
}

/// Solves `t^2 + d*s^2 = 4p` for prime `p` and `d ≡ 3 mod 4`, returning `(t, s)`
/// with `t, s >= 0`.
pub fn cornacchia4(d: u64, p: u64) -> Option<(u64, u64)> {
    let four_p = 4 * p;
    if p < 64 {
        for s in 0..=isqrt(four_p / d) {
            let rest = four_p - d * s * s;
            let t = isqrt(rest);
            if t * t == rest {
                return Some((t, s));
            }
        }
        return None;
    }
    let mut r0 = sqrt_mod(-(d as i64), p)?;
    if r0 % 2 != d % 2 {
        r0 = p - r0;
    }
    let (mut a, mut b) = (2 * p, r0);
    let bound = isqrt(four_p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = four_p - b * b;
    if rest % d != 0 {
        return None;
    }
    let s2 = rest / d;
    let s = isqrt(s2);
    (s * s == s2).then_some((b, s))
}

/// Exact rational in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().ok_or(Error::Overflow)?;
            d = d.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Rational { num: n, den: d })
    }

    pub fn int(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    /// `n/d`; panics on a zero denominator.
    pub fn frac(n: i128, d: i128) -> Self {
        Self::new(n, d).expect("invalid rational")
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(self, o: Self) -> Result<Self, Error> {
        let g = gcd_i128(self.den, o.den);
        let l = self.den / g;
        let n1 = self.num.checked_mul(o.den / g).ok_or(Error::Overflow)?;
        let n2 = o.num.checked_mul(l).ok_or(Error::Overflow)?;
        let n = n1.checked_add(n2).ok_or(Error::Overflow)?;
        let d = l.checked_mul(o.den).ok_or(Error::Overflow)?;
        Self::new(n, d)
    }

    pub fn checked_mul(self, o: Self) -> Result<Self, Error> {
        let g1 = gcd_i128(self.num, o.den).max(1);
        let g2 = gcd_i128(o.num, self.den).max(1);
        let n = (self.num / g1)
            .checked_mul(o.num / g2)
            .ok_or(Error::Overflow)?;
        let d = (self.den / g2)
            .checked_mul(o.den / g1)
            .ok_or(Error::Overflow)?;
        Self::new(n, d)
    }

    pub fn recip(self) -> Result<Self, Error> {
        Self::new(self.den, self.num)
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Rational::ONE, |acc, _| acc * self)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::int(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("rational overflow")
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Self) -> Self {
        self.checked_add(-o).expect("rational overflow")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("rational overflow")
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, o: Self) -> Self {
        self.checked_mul(o.recip().expect("division by zero"))
            .expect("rational overflow")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational {
            num: self.num.checked_neg().expect("rational overflow"),
            den: self.den,
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(-1)^e` for any integer exponent.
#[inline]
pub fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).factors.is_empty());
        assert_eq!(factorize(432).factors, vec![(2, 4), (3, 3)]);
        assert_eq!(factorize(7260624).factors, vec![(2, 4), (3, 3), (7, 5)]);
        let big = 4611686014132420609u64; // (2^31-1)^2
        assert_eq!(factorize(big).factors, vec![(2147483647, 2)]);
        let semi = 1000000007u64 * 998244353;
        assert_eq!(factorize(semi).factors, vec![(998244353, 1), (1000000007, 1)]);
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(is_prime(163));
        assert!(!is_prime(91));
        assert!(!is_prime(3215031751));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-1, 5), 1);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(-11, 3), 1);
        assert_eq!(kronecker(-8, 5), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(4, 7), Some(2));
        assert_eq!(sqrt_mod(-1, 13), Some(5));
        assert_eq!(sqrt_mod(3, 7), None);
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_p(432, 2), 4);
        assert_eq!(ord_p(5, 3), 0);
        assert_eq!(ord_p(-2160, 3), 3);
    }

    #[test]
    fn rational_basics() {
        let a = Rational::frac(2, -4);
        assert_eq!(a.numer(), -1);
        assert_eq!(a.denom(), 2);
        assert_eq!(a + Rational::frac(1, 2), Rational::ZERO);
        assert_eq!(a.to_string(), "-1/2");
        assert!(Rational::new(i128::MAX, 1)
            .unwrap()
            .checked_add(Rational::ONE)
            .is_err());
    }
}
