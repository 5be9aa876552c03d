//! Exact arithmetic in F = ℚ(√D), Fourier indices ν ∈ 𝔇⁻¹, unit orbits and
//! ideal divisor sums σ_r(ν𝔇).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arithmetic::character;
use crate::{check_disc, Error, Result};

/// a + b√D with rational a, b. For D = 1, b is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub a: BigRational,
    pub b: BigRational,
    pub disc: i64,
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational, disc: i64) -> Self {
        debug_assert!(disc != 1 || b.is_zero());
        FieldElement { a, b, disc }
    }

    pub fn zero(disc: i64) -> Self {
        Self::new(BigRational::zero(), BigRational::zero(), disc)
    }

    pub fn one(disc: i64) -> Self {
        Self::from_rational(BigRational::one(), disc)
    }

    pub fn from_rational(a: BigRational, disc: i64) -> Self {
        Self::new(a, BigRational::zero(), disc)
    }

    pub fn from_int(a: i64, disc: i64) -> Self {
        Self::from_rational(BigRational::from_integer(a.into()), disc)
    }

    /// (a_num/a_den) + (b_num/b_den)√D from small integers.
    pub fn from_ratios(a: (i64, i64), b: (i64, i64), disc: i64) -> Self {
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            disc,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.disc)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.disc.into())
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.disc)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(&n.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.disc);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// Sign of the first real embedding (√D ↦ +√D), computed exactly.
    pub fn sign_first(&self) -> Ordering {
        sign_of_surd(&self.a, &self.b, self.disc)
    }

    /// Sign of the second real embedding (√D ↦ −√D).
    pub fn sign_second(&self) -> Ordering {
        sign_of_surd(&self.a, &(-&self.b), self.disc)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.sign_first() == Ordering::Greater && (self.disc == 1 || self.sign_second() == Ordering::Greater)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.disc, other.disc, "field elements from different fields");
    }
}

fn sign_of_surd(a: &BigRational, b: &BigRational, disc: i64) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if disc == 1 || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // Opposite signs: compare a² with b²D.
    let a2 = a * a;
    let b2d = b * b * BigRational::from_integer(disc.into());
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement::new(&self.a + &o.a, &self.b + &o.b, self.disc)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement::new(&self.a - &o.a, &self.b - &o.b, self.disc)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        if self.disc == 1 {
            return FieldElement::from_rational(&self.a * &o.a, 1);
        }
        let d = BigRational::from_integer(self.disc.into());
        FieldElement::new(
            &self.a * &o.a + &self.b * &o.b * d,
            &self.a * &o.b + &self.b * &o.a,
            self.disc,
        )
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-&self.a, -&self.b, self.disc)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        &self + &o
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        &self - &o
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        &self * &o
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})√{}", self.b, self.disc)
        } else {
            write!(f, "{} + ({})√{}", self.a, self.b, self.disc)
        }
    }
}

/// A totally positive ν ∈ 𝔇⁻¹, encoded as ν = (m + n√D)/(2√D) with
/// m ≡ nD (mod 2). Then tr(ν) = n and ν𝔇 = ((m + n√D)/2). For D = 1, ν = n
/// and m = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NuIndex {
    // Field order gives the lexicographic (n, m) ordering.
    pub n: i64,
    pub m: i64,
    pub disc: i64,
}

impl NuIndex {
    /// Builds and validates an index.
    pub fn new(m: i64, n: i64, disc: i64) -> Result<Self> {
        let nu = NuIndex { n, m, disc };
        if nu.is_valid() {
            Ok(nu)
        } else {
            Err(Error::Precondition(format!(
                "({m}, {n}) is not a totally positive index for D = {disc}"
            )))
        }
    }

    pub fn is_valid(&self) -> bool {
        if self.n < 1 {
            return false;
        }
        if self.disc == 1 {
            return self.m == 0;
        }
        (self.m - self.n * self.disc).is_even() && self.m * self.m < self.n * self.n * self.disc
    }

    pub fn trace(&self) -> i64 {
        self.n
    }

    /// ν as a field element: n/2 + (m/2D)√D.
    pub fn to_element(&self) -> FieldElement {
        if self.disc == 1 {
            return FieldElement::from_int(self.n, 1);
        }
        FieldElement::from_ratios((self.n, 2), (self.m, 2 * self.disc), self.disc)
    }

    /// Inverse of [`NuIndex::to_element`]; `None` if x is not a valid index.
    pub fn from_element(x: &FieldElement) -> Option<Self> {
        let n = (&x.a + &x.a).to_integer_exact()?;
        let m = if x.disc == 1 {
            if !x.b.is_zero() {
                return None;
            }
            0
        } else {
            (&x.b * BigRational::from_integer((2 * x.disc).into())).to_integer_exact()?
        };
        let nu = NuIndex { n, m, disc: x.disc };
        nu.is_valid().then_some(nu)
    }

    /// The generator (m + n√D)/2 of the integral ideal ν𝔇.
    pub fn ideal_generator(&self) -> FieldElement {
        if self.disc == 1 {
            return FieldElement::from_int(self.n, 1);
        }
        FieldElement::from_ratios((self.m, 2), (self.n, 2), self.disc)
    }

    /// 𝒩(ν𝔇) = (n²D − m²)/4, or n when D = 1.
    pub fn ideal_norm(&self) -> i64 {
        if self.disc == 1 {
            self.n
        } else {
            (self.n * self.n * self.disc - self.m * self.m) / 4
        }
    }

    /// The index whose ideal is generated by α, adjusted by a unit to be
    /// totally positive; returns its canonical orbit representative.
    pub fn from_ideal_generator(alpha: &FieldElement) -> Option<Self> {
        let disc = alpha.disc;
        if disc == 1 {
            let n = alpha.a.to_integer_exact()?.abs();
            return (n > 0).then_some(NuIndex { n, m: 0, disc });
        }
        let sqrt_d_inv = FieldElement::from_ratios((0, 1), (1, disc), disc);
        let eps = fundamental_unit(disc).ok()?;
        for u in [FieldElement::one(disc), eps.clone(), -FieldElement::one(disc), -eps] {
            let nu = &(alpha * &u) * &sqrt_d_inv;
            if nu.is_totally_positive() {
                return NuIndex::from_element(&nu).map(|v| canonical_rep(&v));
            }
        }
        None
    }
}

trait ToIntegerExact {
    fn to_integer_exact(&self) -> Option<i64>;
}

impl ToIntegerExact for BigRational {
    fn to_integer_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for NuIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.m, self.n)
    }
}

/// The unit group data of 𝒪_F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitData {
    pub fundamental_unit: FieldElement,
    pub norm_of_unit: i64,
    /// ε₀², generating the squared units modulo ±1.
    pub coefficient_orbit_generator: FieldElement,
}

/// The fundamental unit ε₀ > 1, found as the first convergent p/q of the
/// continued fraction of ω (𝒪 = ℤ[ω]) with 𝒩(p − qω) = ±1.
pub fn fundamental_unit(disc: i64) -> Result<FieldElement> {
    check_disc(disc)?;
    if disc == 1 {
        return Err(Error::UnsupportedDiscriminant(disc));
    }
    // ω = (P + √D)/Q; its trace and norm.
    let (p0, q0, tr_w, n_w) = if disc % 4 == 1 {
        (1i64, 2i64, 1i128, (1 - disc as i128) / 4)
    } else {
        (0, 2, 0, -(disc as i128) / 4)
    };
    let s = disc.sqrt();
    let (mut pp, mut qq) = (p0, q0);
    let (mut h1, mut h2) = (1i128, 0i128);
    let (mut k1, mut k2) = (0i128, 1i128);
    loop {
        let a = Integer::div_floor(&(pp + s), &qq);
        let (h, k) = (a as i128 * h1 + h2, a as i128 * k1 + k2);
        let norm = h * h - h * k * tr_w + k * k * n_w;
        if norm.abs() == 1 {
            // ε = p − q·ω̄ = p − q·tr(ω) + q·ω.
            let (wa, wb) = if disc % 4 == 1 {
                ((1, 2), (1, 2))
            } else {
                ((0, 1), (1, 2))
            };
            let hq = BigRational::from_integer(BigInt::from(h - k * tr_w));
            let kq = BigRational::from_integer(BigInt::from(k));
            let a_part = hq + &kq * BigRational::new(wa.0.into(), wa.1.into());
            let b_part = kq * BigRational::new(wb.0.into(), wb.1.into());
            return Ok(FieldElement::new(a_part, b_part, disc));
        }
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        pp = a * qq - pp;
        qq = (disc - pp * pp) / qq;
    }
}

pub fn unit_data(disc: i64) -> Result<UnitData> {
    let eps = fundamental_unit(disc)?;
    let norm = eps.norm().to_integer_exact().expect("unit norm is an integer");
    let sq = &eps * &eps;
    Ok(UnitData {
        fundamental_unit: eps,
        norm_of_unit: norm,
        coefficient_orbit_generator: sq,
    })
}

/// Every totally positive ν ∈ 𝔇⁻¹ with tr(ν) ≤ trace_bound, in (n, m) order.
pub fn enumerate_indices(disc: i64, trace_bound: i64) -> Vec<NuIndex> {
    let mut out = Vec::new();
    for n in 1..=trace_bound {
        if disc == 1 {
            out.push(NuIndex { n, m: 0, disc });
            continue;
        }
        let r = (n * n * disc).sqrt();
        for m in -r..=r {
            let nu = NuIndex { n, m, disc };
            if nu.is_valid() {
                out.push(nu);
            }
        }
    }
    out
}

/// The representative of {η²ν : η ∈ 𝒪*} with minimal trace, ties broken by
/// minimal m.
pub fn canonical_rep(nu: &NuIndex) -> NuIndex {
    if nu.disc == 1 {
        return *nu;
    }
    let eps = fundamental_unit(nu.disc).expect("supported discriminant");
    let up = &eps * &eps;
    let down = up.inv().expect("unit");
    let step = |x: &NuIndex, g: &FieldElement| {
        NuIndex::from_element(&(&x.to_element() * g)).expect("unit multiple stays an index")
    };
    let mut cur = *nu;
    for g in [&up, &down] {
        loop {
            let next = step(&cur, g);
            if next.n < cur.n {
                cur = next;
            } else {
                break;
            }
        }
    }
    let mut best = cur;
    for g in [&up, &down] {
        let cand = step(&cur, g);
        if cand.n == best.n && cand.m < best.m {
            best = cand;
        }
    }
    best
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn geometric(p: u64, r: u32, e: u32) -> BigInt {
    let q = BigInt::from(p).pow(r);
    let mut s = BigInt::zero();
    let mut term = BigInt::one();
    for _ in 0..=e {
        s += &term;
        term *= &q;
    }
    s
}

/// σ_r(ν𝔇) = Σ_{𝔠 | ν𝔇} 𝒩(𝔠)^r.
pub fn divisor_sum(nu: &NuIndex, r: u32) -> BigInt {
    let norm = nu.ideal_norm();
    debug_assert!(norm > 0);
    let mut res = BigInt::one();
    for (p, e) in factorize(norm as u64) {
        let pi = p as i64;
        let factor = if nu.disc == 1 {
            geometric(p, r, e)
        } else {
            match character(nu.disc, pi).expect("supported discriminant") {
                0 => geometric(p, r, e),
                -1 => geometric(p * p, r, e / 2),
                _ => {
                    // (p) = 𝔭𝔭'; the p-content c of the generator gives
                    // ν𝔇 ⊇ 𝔭^{e−c}𝔭'^{c} at p.
                    let (mut m, mut n, mut c) = (nu.m, nu.n, 0u32);
                    while m % pi == 0 && n % pi == 0 && (m / pi - (n / pi) * nu.disc).is_even() {
                        m /= pi;
                        n /= pi;
                        c += 1;
                    }
                    geometric(p, r, e - c) * geometric(p, r, c)
                }
            }
        };
        res *= factor;
    }
    res
}
