use cmlt::arith::{is_prime, small_primes};
use cmlt::frobenius::{
    ap_bruteforce, ap_bruteforce_rational_model, ap_formula, ap_formula_d2_original, CurveSpec,
};

/// `p + 1 - #E(F_p)` by counting affine points on `y² = f(x)` pair by pair.
fn naive_ap(p: u64, f: impl Fn(u64) -> u64) -> i64 {
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[(y * y % p) as usize] += 1;
    }
    let affine: u64 = (0..p).map(|x| squares[f(x) as usize]).sum();
    p as i64 + 1 - (affine as i64 + 1)
}

#[test]
fn bruteforce_matches_point_count() {
    for p in small_primes(400).into_iter().filter(|&p| p > 3) {
        for g in [1i64, -1, 2, 3, -7] {
            if g.rem_euclid(p as i64) == 0 {
                continue;
            }
            let gm = g.rem_euclid(p as i64) as u64;
            let d1 = naive_ap(p, |x| (x * x % p * x + (p - gm) * x) % p);
            assert_eq!(ap_bruteforce(&CurveSpec::new(1, g).unwrap(), p).unwrap(), d1, "D=1 g={g} p={p}");
            let d3 = naive_ap(p, |x| (x * x % p * x + gm) % p);
            assert_eq!(ap_bruteforce(&CurveSpec::new(3, g).unwrap(), p).unwrap(), d3, "D=3 g={g} p={p}");
            let d2 = naive_ap(p, |x| (x * ((x * x + (p - 4 * gm % p) * x % p + 2 * gm * gm % p) % p)) % p);
            assert_eq!(ap_bruteforce(&CurveSpec::new(2, g).unwrap(), p).unwrap(), d2, "D=2 g={g} p={p}");
        }
    }
}

#[test]
fn d2_models_and_formulas_agree() {
    for p in small_primes(5000).into_iter().filter(|&p| p > 3) {
        for g in [1i64, -1, 2, -2, 3, 5, -6, 7] {
            if g % p as i64 == 0 {
                continue;
            }
            let c = CurveSpec::new(2, g).unwrap();
            let b = ap_bruteforce(&c, p).unwrap();
            assert_eq!(ap_bruteforce_rational_model(g, p).unwrap(), b, "g={g} p={p}");
            assert_eq!(ap_formula(&c, p).unwrap(), b, "g={g} p={p}");
            assert_eq!(ap_formula_d2_original(g, p).unwrap(), b, "original g={g} p={p}");
        }
    }
}

#[test]
fn large_prime_formula_is_consistent_with_hasse() {
    for d in cmlt::CM_DISCRIMINANTS {
        let c = CurveSpec::new(d, 5).unwrap();
        for p in (1_000_000_000u64..1_000_000_400).filter(|&p| is_prime(p)) {
            let a = ap_formula(&c, p).unwrap();
            assert!((a as i128).pow(2) < 4 * p as i128, "D={d} p={p} a={a}");
        }
    }
}
