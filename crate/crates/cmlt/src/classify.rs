//! Decision procedures for vanishing, anomalous-prime finiteness and sign
//! symmetry of `ϖ_{E,r}`, stated as explicit condition lists.

use serde::Serialize;

use crate::arith::{factorize, is_square, jacobi, kronecker};
use crate::constants::{frak_a, g_factorize, j_member_g1, GFactorization};
use crate::{check_discriminant, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Vanishes,
    Positive,
    Finite,
    Infinite,
    Symmetric,
    NotSymmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub result: Outcome,
    /// The condition that fired, e.g. `"II.3"`, `"convention"` or a witness.
    pub condition: Option<String>,
}

impl Verdict {
    fn fired(result: Outcome, c: impl Into<String>) -> Self {
        Verdict { result, condition: Some(c.into()) }
    }

    fn none(result: Outcome) -> Self {
        Verdict { result, condition: None }
    }

    fn first(hit: Option<&str>, yes: Outcome, no: Outcome) -> Self {
        match hit {
            Some(c) => Verdict::fired(yes, c),
            None => Verdict::none(no),
        }
    }
}

fn even(n: i128) -> bool {
    n.rem_euclid(2) == 0
}

fn div3(n: i128) -> bool {
    n.rem_euclid(3) == 0
}

fn sign(e: i128) -> i32 {
    if even(e) {
        1
    } else {
        -1
    }
}

/// The first `(id, condition)` pair that holds.
fn first_hit(list: &[(&'static str, bool)]) -> Option<&'static str> {
    list.iter().find(|(_, c)| *c).map(|(id, _)| *id)
}

fn divides(m: u64, r: i64) -> bool {
    r.unsigned_abs() % m == 0
}

/// Vanishing of `ϖ_{E,r}` by the explicit condition lists.
pub fn classify_positivity(d: i64, g: i64, r: i64) -> Result<Verdict> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let f = g_factorize(d, g)?;
    let outside = match d {
        1 => r % 2 != 0,
        2 => r.rem_euclid(4) != 2,
        3 => r % 3 == 0,
        _ => r % d == 0,
    };
    if outside {
        return Ok(Verdict::fired(Outcome::Vanishes, "convention"));
    }
    let hit = match d {
        1 => positivity_d1(&f, r),
        2 => None,
        3 => positivity_d3(&f, r),
        _ => positivity_large(d, &f, r),
    };
    Ok(Verdict::first(hit, Outcome::Vanishes, Outcome::Positive))
}

fn positivity_d1(f: &GFactorization, r: i64) -> Option<&'static str> {
    let (delta, lambda, g1) = (f.delta as i128, f.lambda as i128, f.g1);
    let r8 = r.rem_euclid(8);
    let g8 = g1 % 8;
    let lam_even = even(lambda);
    let s = even(delta + lambda / 2);
    let a2 = divides(frak_a(g1, 2), r);
    let a4 = divides(frak_a(g1, 4), r);
    let j = [3, 5]
        .iter()
        .any(|&p| j_member_g1(p, g1, r, 2) && j_member_g1(p, g1, r, 4));
    first_hit(&[
        ("I.1", a2 && r8 == 0),
        ("I.2", a2 && r8 == 4 && lam_even),
        ("II.1", a4 && r8 == 2 && lam_even && s && g8 == 3),
        ("II.2", a4 && r8 == 2 && lam_even && !s && g8 == 5),
        ("II.3", a4 && r8 == 6 && lam_even && !s && g8 == 1),
        ("II.4", a4 && r8 == 6 && lam_even && s && g8 == 7),
        ("III.1", j && r8 == 2 && lam_even && !s && g8 == 1),
        ("III.2", j && r8 == 2 && lam_even && s && g8 == 7),
        ("III.3", j && r8 == 6 && lam_even && s && g8 == 3),
        ("III.4", j && r8 == 6 && lam_even && !s && g8 == 5),
    ])
}

fn positivity_d3(f: &GFactorization, r: i64) -> Option<&'static str> {
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let g1 = f.g1;
    let gi = g1 as i128;
    let t = (gi * gi - 1) / 3;
    let chi = jacobi(g1 as i64 % 3, 3);
    let chi_neg = -chi;
    let (r24, r12, r6) = (r.rem_euclid(24), r.rem_euclid(12), r.rem_euclid(6));
    let g12 = g1 % 12;
    let g9 = g1 % 9;
    let pm1 = g12 == 1 || g12 == 11;
    let pm5 = g12 == 5 || g12 == 7;
    let base = div3(mu) && div3(lambda + t);
    let odd_base = div3(mu) && div3(2 + lambda) && div3((gi * gi + 2) / 3);
    let par = even(lambda) && even(delta + mu + (gi - 1) / 2);
    let jset = [2u32, 3, 6].iter().all(|&j| j_member_g1(5, g1, r, j) || j_member_g1(7, g1, r, j));
    let a2 = divides(frak_a(g1, 2), r);
    let a3 = divides(frak_a(g1, 3), r);
    let s_dlm = sign(delta + lambda + mu);
    let s_dm = sign(delta + mu);
    first_hit(&[
        ("I.1", jset && r24 == 8 && base && s_dlm == chi),
        ("I.2", jset && r24 == 16 && base && s_dlm == chi_neg),
        ("I.3", jset && r24 == 20 && base && s_dm == chi),
        ("I.4", jset && r24 == 4 && base && s_dm == chi_neg),
        ("I.5", jset && r12 == 2 && pm1 && base && even(lambda)),
        ("I.6", jset && r12 == 10 && pm5 && base && even(lambda)),
        ("I.7", jset && r6 == 5 && pm1 && odd_base && par),
        ("I.8", jset && r6 == 1 && pm5 && odd_base && par),
        ("II.1", a2 && r24 == 8 && s_dlm == chi_neg),
        ("II.2", a2 && r24 == 16 && s_dlm == chi),
        ("II.3", a2 && r24 == 20 && s_dm == chi_neg),
        ("II.4", a2 && r24 == 4 && s_dm == chi),
        ("II.5", a2 && r12 == 2 && pm5 && even(lambda)),
        ("II.6", a2 && r12 == 10 && pm1 && even(lambda)),
        ("II.7", a2 && r6 == 5 && pm5 && par),
        ("II.8", a2 && r6 == 1 && pm1 && par),
        ("III.1", a3 && r % 2 != 0 && (g9 == 1 || g9 == 8) && div3(lambda) && div3(mu)),
        ("III.2", a3 && r % 2 != 0 && (g9 == 2 || g9 == 7) && div3(lambda + 1) && div3(mu)),
    ])
}

fn positivity_large(d: i64, f: &GFactorization, r: i64) -> Option<&'static str> {
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let g1 = f.g1;
    let gi = g1 as i128;
    let gm = (g1 % d as u64) as i64;
    let s2gr = kronecker(2, d) * kronecker(gm, d) * kronecker(r, d);
    let sgr = kronecker(gm, d) * kronecker(r, d);
    let a2 = divides(frak_a(g1, 2), r);
    let j3 = d == 11 && j_member_g1(3, g1, r, 2);
    let r4 = r.rem_euclid(4);
    let odd = r % 2 != 0;
    let lam_even = even(lambda);
    let par = lam_even && even(delta + mu + (gi - 1) / 2);
    let e_plus = sign((gi + 1) / 2);
    let e_minus = sign((gi - 1) / 2);
    let s_dm = sign(delta + mu);
    let s_dmr = sign(delta + mu + (r / 4) as i128);
    first_hit(&[
        ("1", r4 == 2 && e_plus == s2gr && lam_even && a2),
        ("2", r4 == 0 && s_dm == -s2gr && lam_even && a2),
        ("3", r4 == 0 && s_dmr == -sgr && !lam_even && a2),
        ("4", odd && e_plus == s2gr && par && a2),
        ("5", r4 == 2 && e_minus == s2gr && lam_even && j3),
        ("6", r4 == 0 && s_dm == s2gr && lam_even && j3),
        ("7", r4 == 0 && s_dmr == sgr && !lam_even && j3),
        ("8", odd && e_minus == s2gr && par && j3),
        ("9", odd && d == 7),
    ])
}

fn is_sixth_power(n: i64) -> bool {
    if n <= 0 {
        return false;
    }
    let f = factorize(n as u64);
    f.factors.iter().all(|&(_, e)| e % 6 == 0)
}

fn is_cube(n: i64) -> bool {
    let f = factorize(n.unsigned_abs());
    n != 0 && f.factors.iter().all(|&(_, e)| e % 3 == 0)
}

fn is_pos_square(n: i64) -> bool {
    n > 0 && is_square(n)
}

fn multiple_of(g: i64, c: i64, pred: impl Fn(i64) -> bool) -> bool {
    g % c == 0 && pred(g / c)
}

/// The set-membership form of the anomalous-prime criterion, returning the
/// matched shape.
pub fn anomalous_set_form(d: i64, g: i64) -> Result<Option<&'static str>> {
    check_discriminant(d)?;
    if g == 0 {
        return Err(Error::BadParams("g must be nonzero".into()));
    }
    if matches!(d, 1 | 2 | 7) {
        return Ok(Some("congruence"));
    }
    let shapes: Vec<(&'static str, bool)> = if d == 3 {
        vec![
            ("□", is_pos_square(g)),
            ("-3·□", multiple_of(g, -3, is_pos_square)),
            ("⬡", is_cube(g)),
            ("80·⬡²", multiple_of(g, 80, is_sixth_power)),
            ("-2160·⬡²", multiple_of(g, -2160, is_sixth_power)),
            ("-268912·⬡²", multiple_of(g, -268912, is_sixth_power)),
            ("7260624·⬡²", multiple_of(g, 7260624, is_sixth_power)),
        ]
    } else {
        let mut v = vec![("□", is_pos_square(g)), ("-D·□", multiple_of(g, -d, is_pos_square))];
        if d == 11 {
            v.push(("33·□", multiple_of(g, 33, is_pos_square)));
            v.push(("-3·□", multiple_of(g, -3, is_pos_square)));
        }
        v
    };
    Ok(shapes.into_iter().find(|(_, b)| *b).map(|(s, _)| s))
}

/// The same criterion phrased through `(δ, λ, μ, g1)`.
pub fn anomalous_condition_form(d: i64, g: i64) -> Result<Option<&'static str>> {
    let f = g_factorize(d, g)?;
    if matches!(d, 1 | 2 | 7) {
        return Ok(Some("congruence"));
    }
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let g1 = f.g1 as i64;
    let sq = |n: i64| is_pos_square(n);
    let hit = if d == 3 {
        let common = div3(mu) && div3(2 + lambda) && even(lambda);
        first_hit(&[
            ("g1 = 5a^6", multiple_of(g1, 5, is_sixth_power) && common && even(delta + mu)),
            ("g1 = 7^5 b^6", multiple_of(g1, 16807, is_sixth_power) && common && !even(delta + mu)),
            ("g1 = c^2", sq(g1) && even(lambda) && even(delta + mu)),
            ("g1 = d^3", is_cube(g1) && div3(lambda) && div3(mu)),
        ])
    } else {
        first_hit(&[
            ("g1 = c^2", sq(g1) && even(lambda) && even(delta + mu)),
            ("g1 = 3c^2", d == 11 && multiple_of(g1, 3, sq) && even(lambda) && !even(delta + mu)),
        ])
    };
    Ok(hit)
}

/// Finiteness of anomalous primes (`a_p = 1`); both forms are evaluated and
/// must agree.
pub fn classify_anomalous(d: i64, g: i64) -> Result<Verdict> {
    let set = anomalous_set_form(d, g)?;
    let cond = anomalous_condition_form(d, g)?;
    if set.is_some() != cond.is_some() {
        return Err(Error::Undefined(format!(
            "set form ({set:?}) and condition form ({cond:?}) disagree for D = {d}, g = {g}"
        )));
    }
    Ok(match set {
        Some(w) => Verdict::fired(Outcome::Finite, w),
        None => Verdict::none(Outcome::Infinite),
    })
}

/// Whether `ϖ_{E,r} = ϖ_{E,-r}`, by the explicit condition lists.
pub fn classify_symmetry(d: i64, g: i64, r: i64) -> Result<Verdict> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let f = g_factorize(d, g)?;
    let (delta, lambda, mu) = (f.delta as i128, f.lambda as i128, f.mu as i128);
    let g1 = f.g1;
    let gi = g1 as i128;
    let hit = match d {
        1 => {
            let restricted = r.rem_euclid(4) == 2 && even(lambda);
            if !restricted {
                Some("unrestricted")
            } else {
                first_hit(&[("restriction", even(delta + (lambda + gi - 1) / 2))])
            }
        }
        2 => first_hit(&[("r ≢ 2 mod 4", r.rem_euclid(4) != 2)]),
        3 => {
            let r6 = r.rem_euclid(6);
            let odd6 = r6 == 1 || r6 == 5;
            let a3 = divides(frak_a(even_exponent_part(g1), 3), r);
            let g9 = g1 % 9;
            first_hit(&[
                ("1", r % 3 == 0),
                ("2", r % 3 != 0 && r % 4 != 0 && !even(lambda)),
                ("3", odd6 && g1 % 4 == 1 && !even(delta + mu)),
                ("4", odd6 && g1 % 4 == 3 && even(delta + mu)),
                ("5", odd6 && (g9 == 1 || g9 == 8) && div3(lambda) && div3(mu) && a3),
                ("6", odd6 && (g9 == 2 || g9 == 7) && div3(lambda + 1) && div3(mu) && a3),
            ])
        }
        _ => {
            let dr = r % d == 0;
            first_hit(&[
                ("1", dr),
                ("2", d == 7 && r % 2 != 0 && r % 7 != 0),
                ("3", r.rem_euclid(4) == 2 && !even(lambda) && !dr),
                ("4", r % 2 != 0 && !even(lambda) && !dr),
                ("5", r % 2 != 0 && !even(delta + mu + (gi - 1) / 2) && !dr),
            ])
        }
    };
    Ok(Verdict::first(hit, Outcome::Symmetric, Outcome::NotSymmetric))
}

/// `∏ p^ν` over `p^ν ∥ n` with `ν` even.
pub fn even_exponent_part(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .filter(|&&(_, e)| e % 2 == 0)
        .map(|&(p, e)| p.pow(e))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positivity_examples() {
        assert_eq!(classify_positivity(1, 1, 8).unwrap(), Verdict::fired(Outcome::Vanishes, "I.1"));
        assert_eq!(classify_positivity(2, 5, 6).unwrap().result, Outcome::Positive);
        assert_eq!(classify_positivity(7, 1, 1).unwrap(), Verdict::fired(Outcome::Vanishes, "9"));
        assert_eq!(classify_positivity(1, 1, 3).unwrap().condition.as_deref(), Some("convention"));
        for d in crate::CM_DISCRIMINANTS {
            for g in [-7, -1, 1, 2, 3, 5, 80] {
                assert_eq!(classify_positivity(d, g, 2).unwrap().result, Outcome::Positive, "D={d} g={g}");
            }
        }
    }

    #[test]
    fn anomalous_examples() {
        assert_eq!(classify_anomalous(3, 80).unwrap(), Verdict::fired(Outcome::Finite, "80·⬡²"));
        assert_eq!(classify_anomalous(11, 33).unwrap().result, Outcome::Finite);
        assert_eq!(classify_anomalous(3, 2).unwrap().result, Outcome::Infinite);
        assert_eq!(classify_anomalous(7, 5).unwrap().result, Outcome::Finite);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(classify_symmetry(2, 3, 6).unwrap().result, Outcome::NotSymmetric);
        assert_eq!(classify_symmetry(1, 2, 6).unwrap().result, Outcome::Symmetric);
        assert_eq!(classify_symmetry(1, 1, 2).unwrap().result, Outcome::Symmetric);
    }
}
