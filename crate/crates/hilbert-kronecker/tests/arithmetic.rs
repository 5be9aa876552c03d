use hilbert_kronecker::arithmetic::*;
use hilbert_kronecker::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Legendre symbol by Euler's criterion.
fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut x = 1i64;
    for _ in 0..(p - 1) / 2 {
        x = x * a % p;
    }
    if x == 1 {
        1
    } else {
        -1
    }
}

/// Bernoulli numbers from the exponential generating function x/(e^x − 1),
/// by inverting the series Σ x^j/(j+1)!.
fn bernoulli_by_series(n: usize) -> Vec<BigRational> {
    let e: Vec<BigRational> = (0..=n)
        .map(|j| BigRational::from_integer(factorial(j as i64 + 1)).recip())
        .collect();
    let mut inv = vec![BigRational::zero(); n + 1];
    inv[0] = BigRational::one();
    for m in 1..=n {
        let mut s = BigRational::zero();
        for j in 1..=m {
            s += &e[j] * &inv[m - j];
        }
        inv[m] = -s;
    }
    inv.iter()
        .enumerate()
        .map(|(j, c)| c * BigRational::from_integer(factorial(j as i64)))
        .collect()
}

#[test]
fn bernoulli_small_values() {
    assert_eq!(bernoulli(0), r(1, 1));
    assert_eq!(bernoulli(1), r(-1, 2));
    assert_eq!(bernoulli(2), r(1, 6));
    assert_eq!(bernoulli(4), r(-1, 30));
    assert_eq!(bernoulli(12), r(-691, 2730));
}

#[test]
fn bernoulli_matches_generating_function() {
    let oracle = bernoulli_by_series(40);
    for (n, b) in oracle.iter().enumerate() {
        assert_eq!(&bernoulli(n), b, "B_{n}");
    }
}

#[test]
fn bernoulli_odd_vanish() {
    for n in (3..=30).step_by(2) {
        assert!(bernoulli(n).is_zero(), "B_{n}");
    }
}

#[test]
fn bernoulli_beyond_table() {
    let n = BERNOULLI_TABLE_SIZE + 2;
    assert_eq!(bernoulli(n), bernoulli_by_series(n)[n]);
}

#[test]
fn character_values() {
    assert_eq!(character(5, 1).unwrap(), 1);
    assert_eq!(character(5, 2).unwrap(), -1);
    assert_eq!(character(5, 10).unwrap(), 0);
    assert_eq!(character(1, 7).unwrap(), 1);
    assert!(matches!(character(6, 1), Err(Error::UnsupportedDiscriminant(6))));
}

#[test]
fn character_matches_legendre_for_prime_discriminants() {
    for d in [5i64, 13, 17, 29, 37, 41] {
        for a in 1..=2 * d {
            assert_eq!(character(d, a).unwrap(), legendre(a, d), "({d}/{a})");
        }
    }
}

#[test]
fn character_eight_is_the_mod_eight_symbol() {
    for a in -16i64..=16 {
        let want = match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
        assert_eq!(character(8, a).unwrap(), want, "(8/{a})");
    }
}

#[test]
fn character_multiplicative_and_periodic() {
    for d in [5i64, 8, 13] {
        for a in 1..=2 * d {
            assert_eq!(character(d, a).unwrap(), character(d, a + d).unwrap());
            for b in 1..=2 * d {
                assert_eq!(
                    character(d, a * b).unwrap(),
                    character(d, a).unwrap() * character(d, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn twisted_bernoulli_values() {
    assert_eq!(twisted_bernoulli(1, 5).unwrap(), r(0, 1));
    assert_eq!(twisted_bernoulli(2, 5).unwrap(), r(4, 5));
    assert_eq!(twisted_bernoulli(4, 5).unwrap(), r(-8, 1));
    assert!(twisted_bernoulli(2, 1).is_err());
    assert!(twisted_bernoulli(0, 5).is_err());
}

#[test]
fn twisted_bernoulli_low_index_sums() {
    for d in [5i64, 8, 13, 17] {
        let chi: Vec<i64> = (1..=d).map(|a| character(d, a).unwrap()).collect();
        let s1: i64 = (1..=d).zip(&chi).map(|(a, c)| a * c).sum();
        let s2: i64 = (1..=d).zip(&chi).map(|(a, c)| a * a * c).sum();
        assert_eq!(twisted_bernoulli(1, d).unwrap(), r(s1, d));
        assert_eq!(twisted_bernoulli(2, d).unwrap(), r(s2, d) - r(s1, 1));
    }
}

#[test]
fn twisted_bernoulli_odd_index_vanishes() {
    for d in [5i64, 8] {
        for n in (1..=9).step_by(2) {
            assert!(twisted_bernoulli(n, d).unwrap().is_zero(), "B_{{{n},χ_{d}}}");
        }
    }
}

#[test]
fn zeta_values() {
    assert_eq!(zeta_f_neg(2, 5).unwrap(), r(1, 30));
    assert_eq!(zeta_f_neg(4, 5).unwrap(), r(1, 60));
    assert_eq!(zeta_f_neg(6, 5).unwrap(), r(67, 630));
    assert_eq!(zeta_f_neg(8, 5).unwrap(), r(361, 120));
    assert_eq!(zeta_f_neg(2, 1).unwrap(), r(-1, 12));
    assert_eq!(zeta_f_neg(4, 1).unwrap(), r(1, 120));
    assert_eq!(zeta_f_neg(2, 8).unwrap(), r(1, 12));
    assert!(matches!(zeta_f_neg(3, 5), Err(Error::InvalidWeight(3, _))));
    assert!(matches!(zeta_f_neg(0, 5), Err(Error::InvalidWeight(0, _))));
}

#[test]
fn zeta_product_matches_closed_form() {
    for d in [5i64, 8, 13] {
        for k in (2..=12).step_by(2) {
            assert_eq!(
                zeta_f_neg(k, d).unwrap(),
                zeta_f_neg_siegel(k, d).unwrap(),
                "D={d} k={k}"
            );
        }
    }
}

#[test]
fn zeta_table_covers_even_weights() {
    let t = ZetaTable::new(5, 8).unwrap();
    assert_eq!(t.values.keys().copied().collect::<Vec<_>>(), vec![2, 4, 6, 8]);
    assert_eq!(t.get(4), Some(&r(1, 60)));
    assert_eq!(t.get(5), None);
}

#[test]
fn binomial_and_factorial() {
    assert_eq!(binomial(10, 3), BigInt::from(120));
    assert_eq!(binomial(3, 5), BigInt::zero());
    assert_eq!(binomial(5, -1), BigInt::zero());
    assert_eq!(factorial(0), BigInt::one());
    assert_eq!(factorial(10), BigInt::from(3_628_800));
}

proptest! {
    #[test]
    fn pascal_rule(n in 1i64..60, k in 0i64..60) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn bernoulli_poly_difference(n in 1usize..16, num in -20i64..20, den in 1i64..10) {
        // B_n(x + 1) − B_n(x) = n x^{n−1}
        let x = r(num, den);
        let lhs = bernoulli_poly(n, &(&x + BigRational::one())) - bernoulli_poly(n, &x);
        let mut rhs = BigRational::from_integer(BigInt::from(n));
        for _ in 0..n - 1 {
            rhs *= &x;
        }
        prop_assert_eq!(lhs, rhs);
    }
}
