use cmlt::arith::{factorize, is_prime, jacobi, kronecker, primes_in_range, Rational};
use cmlt::classify::{classify_anomalous, classify_positivity, classify_symmetry, Outcome};
use cmlt::constants::{euler_product, finite_factor, h_d_r, sigma, xi, Method};
use cmlt::counts::{count_traces, residue_counts_brute, residue_counts_closed, QuadPoly};
use cmlt::eisenstein::{cubic_symbol_jacobi, sextic_symbol_rational, EisInt};
use cmlt::frobenius::{ap_formula, is_good, norm_form_solve, primary_prime, split_type, CurveSpec, SplitType};
use cmlt::gaussian::{quartic_mul, quartic_symbol_jacobi, GaussInt};
use cmlt::verify::{eisenstein_primes, gaussian_primes};
use cmlt::CM_DISCRIMINANTS;
use std::sync::LazyLock;

use proptest::prelude::*;

fn odd_gauss() -> impl Strategy<Value = GaussInt> {
    (-5000i64..5000, -5000i64..5000)
        .prop_map(|(a, b)| GaussInt::new(a, b))
        .prop_filter("odd", |z| z.is_odd() && !z.is_unit())
}

fn gauss() -> impl Strategy<Value = GaussInt> {
    (-5000i64..5000, -5000i64..5000).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn eis_coprime_3() -> impl Strategy<Value = EisInt> {
    (-5000i64..5000, -5000i64..5000)
        .prop_map(|(a, b)| EisInt::new(a, b))
        .prop_filter("coprime to 3", |z| z.is_coprime_to_3() && !z.is_unit())
}

fn eis() -> impl Strategy<Value = EisInt> {
    (-5000i64..5000, -5000i64..5000).prop_map(|(a, b)| EisInt::new(a, b))
}

fn discriminant() -> impl Strategy<Value = i64> {
    prop::sample::select(CM_DISCRIMINANTS.to_vec())
}

static PRIMES: LazyLock<Vec<u64>> =
    LazyLock::new(|| cmlt::arith::small_primes(2_000_000).into_iter().filter(|&p| p >= 5).collect());
static GAUSS_PRIMES: LazyLock<Vec<GaussInt>> = LazyLock::new(|| gaussian_primes(100_000));
static EIS_PRIMES: LazyLock<Vec<EisInt>> = LazyLock::new(|| eisenstein_primes(100_000));

/// A discriminant from `ds` and a prime below `limit` that splits for it.
fn split_prime(ds: Vec<i64>, limit: u64) -> impl Strategy<Value = (i64, u64)> {
    prop::sample::select(ds).prop_flat_map(move |d| {
        let n = PRIMES.partition_point(|&p| p < limit);
        (Just(d), prop::sample::select(PRIMES[..n].to_vec()))
            .prop_filter("split", |&(d, p)| split_type(d, p).unwrap() == SplitType::Split)
    })
}

fn prime(limit: u64) -> impl Strategy<Value = u64> {
    let n = PRIMES.partition_point(|&p| p < limit);
    prop::sample::select(PRIMES[..n].to_vec())
}

fn nonzero(lo: i64, hi: i64) -> impl Strategy<Value = i64> {
    (lo..=hi).prop_filter("nonzero", |v| *v != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn jacobi_reciprocity(m in (0u64..50_000).prop_map(|v| 2 * v + 1), n in (0u64..50_000).prop_map(|v| 2 * v + 1)) {
        prop_assume!(cmlt::arith::gcd(m as i64, n as i64) == 1);
        let sign = if ((m - 1) / 2 * ((n - 1) / 2)) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(kronecker(m as i64, n as i64) * kronecker(n as i64, m as i64), sign);
    }

    #[test]
    fn factorization_reassembles(n in 1u64..1_000_000_000_000) {
        let f = factorize(n);
        prop_assert_eq!(f.reassemble(), n);
        prop_assert!(f.primes().all(is_prime));
    }

    #[test]
    fn rational_addition_is_associative_and_commutative(
        a in (-1000i128..1000, 1i128..1000), b in (-1000i128..1000, 1i128..1000), c in (-1000i128..1000, 1i128..1000)
    ) {
        let (x, y, z) = (Rational::frac(a.0, a.1), Rational::frac(b.0, b.1), Rational::frac(c.0, c.1));
        prop_assert_eq!((x + y) + z, x + (y + z));
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * y, y * x);
    }

    #[test]
    fn quartic_multiplicative(a in gauss(), b in gauss(), xi in odd_gauss()) {
        let ab = quartic_symbol_jacobi(a * b, xi).unwrap();
        let prod = quartic_mul(quartic_symbol_jacobi(a, xi).unwrap(), quartic_symbol_jacobi(b, xi).unwrap());
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn quartic_conjugation(a in gauss(), xi in odd_gauss()) {
        let s = quartic_symbol_jacobi(a, xi).unwrap().map(|u| u.conj());
        prop_assert_eq!(s, quartic_symbol_jacobi(a.conj(), xi.conj()).unwrap());
    }

    #[test]
    fn cubic_conjugation(a in eis(), xi in eis_coprime_3()) {
        let s = cubic_symbol_jacobi(a, xi).unwrap();
        prop_assert_eq!(s.map(|u| u.conj()), s.map(|u| u.pow(2)));
        prop_assert_eq!(s.map(|u| u.conj()), cubic_symbol_jacobi(a.conj(), xi.conj()).unwrap());
    }

    #[test]
    fn cubic_reciprocity(i in 0usize..5000, j in 0usize..5000) {
        let ps = &*EIS_PRIMES;
        let (x, y) = (ps[i % ps.len()], ps[j % ps.len()]);
        prop_assume!(x.norm() != y.norm());
        let px = cmlt::eisenstein::primary_associate_eis(x).unwrap();
        let py = cmlt::eisenstein::primary_associate_eis(y).unwrap();
        prop_assert_eq!(cubic_symbol_jacobi(px, py).unwrap(), cubic_symbol_jacobi(py, px).unwrap());
    }

    #[test]
    fn sextic_cube_is_quadratic(i in 0usize..5000, alpha in -100_000i64..100_000) {
        let ps = &*EIS_PRIMES;
        let pi = ps[i % ps.len()];
        let n = pi.norm() as u64;
        let s = sextic_symbol_rational(alpha, pi).unwrap();
        let want = jacobi(alpha, n);
        prop_assert_eq!(s.map_or(0, |u| if u.pow(3).sign > 0 { 1 } else { -1 }), want);
    }

    #[test]
    fn gaussian_prime_symbol_agrees_with_chain(i in 0usize..5000, a in gauss()) {
        let ps = &*GAUSS_PRIMES;
        let pi = ps[i % ps.len()];
        prop_assert_eq!(
            quartic_symbol_jacobi(a, pi).unwrap(),
            cmlt::gaussian::quartic_symbol_prime(a, pi).unwrap()
        );
    }

    #[test]
    fn residue_count_identities(a in -40i64..40, b in -40i64..40, c in -40i64..40, q in (0u64..500).prop_map(|v| 2 * v + 1)) {
        let f = QuadPoly::new(a, b, c);
        let r = residue_counts_brute(&f, q).unwrap();
        prop_assert_eq!(2 * r.n_plus as i64, r.n1 as i64 + r.n2);
        prop_assert_eq!(2 * r.n_minus as i64, r.n1 as i64 - r.n2);
        if a % 2 != 0 && cmlt::arith::gcd(a, q as i64) == 1 && f.discriminant() != 0 && f.is_primitive() {
            prop_assert_eq!(residue_counts_closed(&f, q).unwrap(), r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn norm_form_reassembles((d, p) in split_prime(CM_DISCRIMINANTS.to_vec(), 2_000_000)) {
        prop_assert_eq!(norm_form_solve(d, p).unwrap().norm(d), p as i128);
        prop_assert_eq!(primary_prime(d, p).unwrap().norm(d), p as i128);
    }

    #[test]
    fn twist_by_square_class_leaves_ap_unchanged(d in discriminant(), g in nonzero(-50, 50), u in 2i64..6, p in prime(200_000)) {
        let k = match d { 1 => 4, 3 => 6, _ => 2 };
        let gu = g * u.pow(k);
        let (a, b) = (CurveSpec::new(d, g).unwrap(), CurveSpec::new(d, gu).unwrap());
        prop_assume!(is_good(&a, p) && is_good(&b, p));
        prop_assert_eq!(ap_formula(&a, p).unwrap(), ap_formula(&b, p).unwrap());
    }

    #[test]
    fn congruence_obstructions((d, p) in split_prime(vec![1, 2], 200_000), g in nonzero(-50, 50)) {
        let c = CurveSpec::new(d, g).unwrap();
        prop_assume!(is_good(&c, p));
        let a = ap_formula(&c, p).unwrap();
        if d == 1 {
            prop_assert_eq!(a % 2, 0);
        } else {
            prop_assert_eq!(a.rem_euclid(4), 2);
        }
    }

    #[test]
    fn symmetry_verdict_matches_finite_factors(d in discriminant(), g in nonzero(-100_000, 100_000), r in nonzero(-500, 500)) {
        let v = classify_symmetry(d, g, r).unwrap();
        let exact = xi(d, r) == 0 || finite_factor(d, g, r).unwrap().0 == finite_factor(d, g, -r).unwrap().0;
        prop_assert_eq!(v.result == Outcome::Symmetric, exact);
    }

    #[test]
    fn positivity_verdict_matches_finite_factor(d in discriminant(), g in nonzero(-100_000, 100_000), r in nonzero(-500, 500)) {
        let v = classify_positivity(d, g, r).unwrap();
        let exact = xi(d, r) == 0 || finite_factor(d, g, r).unwrap().0.is_zero();
        prop_assert_eq!(v.result == Outcome::Vanishes, exact, "{:?}", v);
    }

    #[test]
    fn anomalous_is_the_r1_instance(d in discriminant(), g in nonzero(-1_000_000, 1_000_000)) {
        let finite = classify_anomalous(d, g).unwrap().result == Outcome::Finite;
        prop_assert_eq!(finite, classify_positivity(d, g, 1).unwrap().result == Outcome::Vanishes);
    }

    #[test]
    fn r2_finite_factor_is_positive(d in discriminant(), g in nonzero(-1_000_000, 1_000_000)) {
        prop_assert!(finite_factor(d, g, 2).unwrap().0.signum() > 0);
    }

    #[test]
    fn h_is_even_in_r(d in discriminant(), r in nonzero(-200, 200)) {
        let a = h_d_r(d, r, 100_000, Method::Accelerated).unwrap();
        let b = h_d_r(d, -r, 100_000, Method::Accelerated).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn primality_matches_sieve() {
    let sieve: std::collections::HashSet<u64> = primes_in_range(2, 100_001).into_iter().collect();
    for n in 2..=100_000 {
        assert_eq!(is_prime(n), sieve.contains(&n), "n = {n}");
    }
}

#[test]
fn euler_product_convergence() {
    for d in CM_DISCRIMINANTS {
        for r in [1, 2, 6, 15] {
            let a = euler_product(d, r, 1_000_000, Method::Direct).unwrap();
            let b = euler_product(d, r, 10_000_000, Method::Direct).unwrap();
            assert!((a - b).abs() < 1e-2, "direct D={d} r={r}");
            let a = euler_product(d, r, 100_000, Method::Accelerated).unwrap();
            let b = euler_product(d, r, 1_000_000, Method::Accelerated).unwrap();
            assert!((a - b).abs() < 1e-6, "accelerated D={d} r={r}: {a} vs {b}");
        }
    }
}

#[test]
fn sigma_matches_denominator() {
    for d in CM_DISCRIMINANTS {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            assert_eq!(sigma(d, p), p as i64 - 1 - kronecker(-d, p as i64) as i64);
        }
    }
    assert_eq!(sigma(3, 5), 5);
    assert_eq!(sigma(1, 5), 3);
}

#[test]
fn histogram_independent_of_chunking() {
    let c = CurveSpec::new(7, 3).unwrap();
    let whole = count_traces(&c, 3_000_000, -40, 40).unwrap();
    let mut direct = std::collections::BTreeMap::new();
    for p in primes_in_range(2, 3_000_001) {
        if is_good(&c, p) {
            let a = ap_formula(&c, p).unwrap();
            if (-40..=40).contains(&a) {
                *direct.entry(a).or_insert(0u64) += 1;
            }
        }
    }
    direct.retain(|_, v| *v > 0);
    let mut got = whole.counts.clone();
    got.retain(|_, v| *v > 0);
    assert_eq!(got, direct);
}
