//! Bernoulli numbers, the quadratic character, twisted Bernoulli numbers and
//! Dedekind zeta values ζ_F(1−k) at even k.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{check_disc, Error, Result};

/// Size of the memoized Bernoulli table.
pub const BERNOULLI_TABLE_SIZE: usize = 64;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient C(n, k) as a big integer; zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// n! as a big integer.
pub fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn bernoulli_upto(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial(m as i64 + 1, j as i64)) * bj;
        }
        b.push(-s / rat(m as i64 + 1));
    }
    b
}

fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_upto(BERNOULLI_TABLE_SIZE))
}

/// B_n with B₁ = −1/2.
pub fn bernoulli(n: usize) -> BigRational {
    let table = bernoulli_table();
    match table.get(n) {
        Some(b) => b.clone(),
        None => bernoulli_upto(n).pop().unwrap(),
    }
}

/// Bernoulli polynomial B_n(x) = Σ C(n,j) B_j x^{n−j}.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let mut s = BigRational::zero();
    let mut xp = BigRational::one();
    for j in (0..=n).rev() {
        s += BigRational::from_integer(binomial(n as i64, j as i64)) * bernoulli(j) * &xp;
        xp *= x;
    }
    s
}

fn jacobi(mut a: i64, mut n: i64) -> i64 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut r = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a %= n;
    }
    if n == 1 {
        r
    } else {
        0
    }
}

/// Kronecker symbol (D/a) for a supported discriminant; the trivial character
/// when D = 1.
pub fn character(disc: i64, a: i64) -> Result<i64> {
    check_disc(disc)?;
    if disc == 1 {
        return Ok(1);
    }
    if a == 0 {
        return Ok(0);
    }
    // D > 0, so (D/−1) = 1.
    let mut a = a.abs();
    let mut r = 1;
    let twos = a.trailing_zeros();
    a >>= twos;
    if twos > 0 {
        let c2 = match disc.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
        if twos % 2 == 1 {
            r *= c2;
        } else if c2 == 0 {
            r = 0;
        }
    }
    Ok(r * jacobi(disc, a))
}

/// B_{n,χ} = D^{n−1} Σ_{a=1}^{D} χ(a) B_n(a/D) for χ = (D/·), D > 1.
pub fn twisted_bernoulli(n: usize, disc: i64) -> Result<BigRational> {
    check_disc(disc)?;
    if disc == 1 {
        return Err(Error::UnsupportedDiscriminant(disc));
    }
    if n == 0 {
        return Err(Error::Precondition("twisted Bernoulli index must be positive".into()));
    }
    let mut s = BigRational::zero();
    for a in 1..=disc {
        let c = character(disc, a)?;
        if c != 0 {
            s += rat(c) * bernoulli_poly(n, &BigRational::new(a.into(), disc.into()));
        }
    }
    Ok(s * BigRational::from_integer(BigInt::from(disc).pow(n as u32 - 1)))
}

fn check_even_weight(k: i64) -> Result<()> {
    if k < 2 || k.is_odd() {
        Err(Error::InvalidWeight(k, "expected even k >= 2"))
    } else {
        Ok(())
    }
}

/// ζ_F(1−k) for even k ≥ 2, as the product ζ(1−k)·L(1−k, χ) with
/// ζ(1−k) = −B_k/k and L(1−k, χ) = −B_{k,χ}/k (just ζ(1−k) when D = 1).
pub fn zeta_f_neg(k: i64, disc: i64) -> Result<BigRational> {
    check_even_weight(k)?;
    check_disc(disc)?;
    let kk = rat(k);
    let zeta = -bernoulli(k as usize) / &kk;
    if disc == 1 {
        return Ok(zeta);
    }
    let l = -twisted_bernoulli(k as usize, disc)? / &kk;
    Ok(zeta * l)
}

/// The closed form B_k B_{k,χ}/k², an independent path to ζ_F(1−k), D > 1.
pub fn zeta_f_neg_siegel(k: i64, disc: i64) -> Result<BigRational> {
    check_even_weight(k)?;
    let kk = rat(k);
    Ok(bernoulli(k as usize) * twisted_bernoulli(k as usize, disc)? / (&kk * &kk))
}

/// ζ_F(1−k) for every even k in [2, k_max].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaTable {
    pub disc: i64,
    pub values: BTreeMap<i64, BigRational>,
}

impl ZetaTable {
    pub fn new(disc: i64, k_max: i64) -> Result<Self> {
        check_disc(disc)?;
        let mut values = BTreeMap::new();
        for k in (2..=k_max).step_by(2) {
            let v = zeta_f_neg(k, disc)?;
            debug_assert!(!v.is_zero());
            values.insert(k, v);
        }
        Ok(ZetaTable { disc, values })
    }

    pub fn get(&self, k: i64) -> Option<&BigRational> {
        self.values.get(&k)
    }
}
