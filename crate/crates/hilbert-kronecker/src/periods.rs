//! Eisenstein period polynomials and Petersson norms, the Eisenstein part of
//! the layers C_k, cusp extraction, eigenform recovery and Rankin–Cohen
//! brackets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arithmetic::{binomial, factorial, zeta_f_neg};
use crate::kronecker::{parallel_exp, KroneckerSeries, PolySeries, SingularCross};
use crate::par;
use crate::qseries::{eisenstein, FourierSeries};
use crate::quadfield::{FieldElement, NuIndex};
use crate::{check_disc, degree, Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn check_even_weight(k: i64) -> Result<()> {
    if k < 2 || k.is_odd() {
        Err(Error::InvalidWeight(k, "expected even k >= 2"))
    } else {
        Ok(())
    }
}

/// Σ c_n 𝒩(X)^n, n ≥ −1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodPolynomial {
    pub coeffs: BTreeMap<i64, BigRational>,
}

impl PeriodPolynomial {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = PeriodPolynomial::default();
        for (n, c) in pairs {
            p.add(n, &c);
        }
        p
    }

    pub fn add(&mut self, n: i64, c: &BigRational) {
        let e = self.coeffs.entry(n).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> BigRational {
        self.coeffs.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn even_part(&self) -> Self {
        Self::from_pairs(
            self.coeffs
                .iter()
                .filter(|(n, _)| n.is_even())
                .map(|(n, c)| (*n, c.clone())),
        )
    }

    pub fn odd_part(&self) -> Self {
        Self::from_pairs(
            self.coeffs
                .iter()
                .filter(|(n, _)| n.is_odd())
                .map(|(n, c)| (*n, c.clone())),
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add(*n, c);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(n, x)| (*n, x * c)))
    }

    /// 𝒩(X)^{k−2} R(−1/X), using 𝒩(−1/X) = (−1)^t/𝒩(X).
    pub fn reflect(&self, k: i64, t: usize) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(n, c)| {
            let sign = if (t as i64 * n).is_odd() {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            (k - 2 - n, c * sign)
        }))
    }

    /// Scaled so the lowest-exponent coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for PeriodPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(n, c)| format!("({c})N^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign_t(t: usize) -> BigRational {
    if t % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// p_k^+(X) = 𝒩(X)^{k−2} + (−1)^t.
pub fn p_plus(k: i64, t: usize) -> Result<PeriodPolynomial> {
    check_even_weight(k)?;
    Ok(PeriodPolynomial::from_pairs([
        (k - 2, BigRational::one()),
        (0, sign_t(t)),
    ]))
}

/// a_j = ζ_F(1−j)/Γ(j)^t.
fn a_coeff(j: i64, disc: i64) -> Result<BigRational> {
    Ok(zeta_f_neg(j, disc)? / int(factorial(j - 1).pow(degree(disc) as u32)))
}

/// p_k^−(X) = Σ_{odd n} a_{n+1} a_{k−n−1} 𝒩(X)^n on 1 ≤ n ≤ k−3, with both
/// endpoints n = −1 and n = k−1 carrying (−1)^t a_k.
pub fn p_minus(k: i64, disc: i64) -> Result<PeriodPolynomial> {
    check_even_weight(k)?;
    check_disc(disc)?;
    let t = degree(disc);
    let mut p = PeriodPolynomial::default();
    for n in (1..=k - 3).step_by(2) {
        p.add(n, &(a_coeff(n + 1, disc)? * a_coeff(k - n - 1, disc)?));
    }
    let end = sign_t(t) * a_coeff(k, disc)?;
    p.add(-1, &end);
    p.add(k - 1, &end);
    Ok(p)
}

/// rational × √D^s × π^p × i^j × Π ζ_F(a)^{e_a}, with s, j ∈ {0, 1} after
/// normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicConstant {
    pub disc: i64,
    pub rational: BigRational,
    pub sqrt_d_power: i64,
    pub pi_power: i64,
    pub i_power: i64,
    pub zeta_factors: BTreeMap<i64, i64>,
}

impl SymbolicConstant {
    pub fn rational(disc: i64, r: BigRational) -> Self {
        SymbolicConstant {
            disc,
            rational: r,
            sqrt_d_power: 0,
            pi_power: 0,
            i_power: 0,
            zeta_factors: BTreeMap::new(),
        }
    }

    pub fn sqrt_d(disc: i64, power: i64) -> Self {
        Self {
            sqrt_d_power: power,
            ..Self::rational(disc, BigRational::one())
        }
        .normalize()
    }

    pub fn pi(disc: i64, power: i64) -> Self {
        Self {
            pi_power: power,
            ..Self::rational(disc, BigRational::one())
        }
    }

    pub fn i(disc: i64, power: i64) -> Self {
        Self {
            i_power: power,
            ..Self::rational(disc, BigRational::one())
        }
        .normalize()
    }

    /// ζ_F(s) at a positive argument, kept unevaluated.
    pub fn zeta(disc: i64, s: i64) -> Self {
        let mut c = Self::rational(disc, BigRational::one());
        c.zeta_factors.insert(s, 1);
        c
    }

    fn normalize(mut self) -> Self {
        let d = rat(self.disc);
        let half = Integer::div_floor(&self.sqrt_d_power, &2);
        self.rational *= pow_signed(&d, half);
        self.sqrt_d_power -= 2 * half;
        let j = self.i_power.rem_euclid(4);
        if j >= 2 {
            self.rational = -self.rational;
        }
        self.i_power = j % 2;
        self.zeta_factors.retain(|_, e| *e != 0);
        self
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut z = self.zeta_factors.clone();
        for (s, e) in &o.zeta_factors {
            *z.entry(*s).or_insert(0) += e;
        }
        SymbolicConstant {
            disc: self.disc,
            rational: &self.rational * &o.rational,
            sqrt_d_power: self.sqrt_d_power + o.sqrt_d_power,
            pi_power: self.pi_power + o.pi_power,
            i_power: self.i_power + o.i_power,
            zeta_factors: z,
        }
        .normalize()
    }

    pub fn inv(&self) -> Self {
        SymbolicConstant {
            disc: self.disc,
            rational: self.rational.recip(),
            sqrt_d_power: -self.sqrt_d_power,
            pi_power: -self.pi_power,
            i_power: -self.i_power,
            zeta_factors: self.zeta_factors.iter().map(|(s, e)| (*s, -e)).collect(),
        }
        .normalize()
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut r = Self::rational(self.disc, BigRational::one());
        let base = if e < 0 { self.inv() } else { self.clone() };
        for _ in 0..e.abs() {
            r = r.mul(&base);
        }
        r
    }

    /// The value, when every transcendental part has cancelled.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.sqrt_d_power == 0 && self.pi_power == 0 && self.i_power == 0 && self.zeta_factors.is_empty())
            .then(|| self.rational.clone())
    }
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e.abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        if self.sqrt_d_power != 0 {
            write!(f, "·√{}", self.disc)?;
        }
        if self.i_power != 0 {
            write!(f, "·i")?;
        }
        if self.pi_power != 0 {
            write!(f, "·π^{}", self.pi_power)?;
        }
        for (s, e) in &self.zeta_factors {
            write!(f, "·ζ_F({s})^{e}")?;
        }
        Ok(())
    }
}

/// ⟨G_{F,k}, G_{F,k}⟩ = Γ(k−1)^t ζ_F(k−1)/(4π)^{t(k−1)} · ζ_F(1−k)/2^t.
/// Rejects k = 2, where ζ_F(1) diverges.
pub fn eisenstein_petersson(k: i64, disc: i64) -> Result<SymbolicConstant> {
    check_even_weight(k)?;
    check_disc(disc)?;
    if k == 2 {
        return Err(Error::InvalidWeight(k, "ζ_F(1) diverges"));
    }
    let t = degree(disc) as i64;
    let gamma = int(factorial(k - 2).pow(t as u32));
    let r =
        gamma * zeta_f_neg(k, disc)? / int(BigInt::from(2).pow(t as u32) * BigInt::from(4).pow((t * (k - 1)) as u32));
    Ok(SymbolicConstant::rational(disc, r)
        .mul(&SymbolicConstant::pi(disc, -t * (k - 1)))
        .mul(&SymbolicConstant::zeta(disc, k - 1)))
}

/// ω⁻ = √D Γ(k−1)^t/2^t.
pub fn omega_minus(k: i64, disc: i64) -> Result<SymbolicConstant> {
    check_even_weight(k)?;
    let t = degree(disc) as u32;
    let r = int(factorial(k - 2).pow(t)) / int(BigInt::from(2).pow(t));
    Ok(SymbolicConstant::rational(disc, r).mul(&SymbolicConstant::sqrt_d(disc, 1)))
}

/// ω⁺ = D^{k−3/2} ζ_F(k−1)/(2πi)^{t(k−1)} · ω⁻.
pub fn omega_plus(k: i64, disc: i64) -> Result<SymbolicConstant> {
    let t = degree(disc) as i64;
    let two_pi_i = SymbolicConstant::rational(disc, rat(2))
        .mul(&SymbolicConstant::pi(disc, 1))
        .mul(&SymbolicConstant::i(disc, 1));
    Ok(SymbolicConstant::sqrt_d(disc, 2 * k - 3)
        .mul(&SymbolicConstant::zeta(disc, k - 1))
        .div(&two_pi_i.pow(t * (k - 1)))
        .mul(&omega_minus(k, disc)?))
}

/// (−1)^t ω⁺ω⁻/(D^{k−1/2}(2i)^{t(k−3)}⟨G,G⟩), the coefficient of
/// (p⁺(X)p⁻(Y) + p⁺(Y)p⁻(X))G_{F,k} in C_k^{Eis}, reduced symbolically.
pub fn eisenstein_prefactor_symbolic(k: i64, disc: i64) -> Result<SymbolicConstant> {
    let t = degree(disc) as i64;
    let two_i = SymbolicConstant::rational(disc, rat(2)).mul(&SymbolicConstant::i(disc, 1));
    let denom = SymbolicConstant::sqrt_d(disc, 2 * k - 1)
        .mul(&two_i.pow(t * (k - 3)))
        .mul(&eisenstein_petersson(k, disc)?);
    let sign = SymbolicConstant::rational(disc, sign_t(t as usize));
    Ok(sign.mul(&omega_plus(k, disc)?).mul(&omega_minus(k, disc)?).div(&denom))
}

/// The same coefficient in closed form, (−1)^t 2^t Γ(k−1)^t/ζ_F(1−k); valid
/// for k = 2 as well.
pub fn eisenstein_prefactor(k: i64, disc: i64) -> Result<BigRational> {
    check_even_weight(k)?;
    let t = degree(disc) as u32;
    Ok(sign_t(t as usize) * int(BigInt::from(2).pow(t) * factorial(k - 2).pow(t)) / zeta_f_neg(k, disc)?)
}

/// C_k^{Eis} = (−1)^t 2^tΓ(k−1)^t/ζ_F(1−k) · (p⁺(X)p⁻(Y) + p⁺(Y)p⁻(X)) G_{F,k},
/// with monomials beyond `xy_degree` dropped.
pub fn eisenstein_layer(k: i64, disc: i64, trace_bound: i64, xy_degree: i64) -> Result<PolySeries> {
    let t = degree(disc);
    let pref = eisenstein_prefactor(k, disc)?;
    let pp = p_plus(k, t)?;
    let pm = p_minus(k, disc)?;
    let mut coeffs: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
    for (i, ci) in &pp.coeffs {
        for (j, cj) in &pm.coeffs {
            let c = ci * cj;
            *coeffs.entry((*i, *j)).or_insert_with(BigRational::zero) += &c;
            *coeffs.entry((*j, *i)).or_insert_with(BigRational::zero) += &c;
        }
    }
    let g = eisenstein(k, disc, trace_bound)?;
    let mut out = PolySeries::new(k, disc, trace_bound);
    for ((i, j), c) in coeffs {
        if c.is_zero() || i > xy_degree || j > xy_degree {
            continue;
        }
        out.monomials
            .insert((parallel_exp(i, t), parallel_exp(j, t)), g.scale_rational(&(&pref * c)));
    }
    Ok(out)
}

/// b_k − C_k^{Eis}: the cusp part Σ_f R_f(X,Y) f(τ).
pub fn extract_cusp(ks: &KroneckerSeries, k: i64) -> Result<PolySeries> {
    check_even_weight(k)?;
    let layer = ks.default_layer(k)?;
    let eis = eisenstein_layer(k, ks.disc, ks.bounds.trace_bound, ks.bounds.xy_degree)?;
    layer.sub(&eis)
}

/// A cusp eigenform recovered from a rank-one cusp part, with its period
/// data R(X,Y) = c·(R^ev(X)R^od(Y) + R^ev(Y)R^od(X)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenform {
    pub k: i64,
    pub disc: i64,
    /// f normalized to coefficient 1 at `normalizing_index`.
    pub form: FourierSeries,
    pub normalizing_index: NuIndex,
    /// Coefficient of 𝒩(X)^p𝒩(Y)^q in R.
    pub period: BTreeMap<(i64, i64), BigRational>,
    /// Even factor, lowest coefficient 1.
    pub r_even: PeriodPolynomial,
    /// Odd factor, lowest coefficient 1.
    pub r_odd: PeriodPolynomial,
    /// c in R = c·(R^ev ⊗ R^od + R^od ⊗ R^ev), for the normalized factors.
    pub scalar: BigRational,
    /// Whether R actually equals that symmetrized product; when false the
    /// factors are read off the lowest odd column and lowest even row.
    pub factorizes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    /// Rank 0: no cusp forms at this weight and truncation.
    Empty,
    Eigenform(Box<Eigenform>),
}

/// Factors a rank-one cusp part as R(X,Y)·f(τ). Rank ≥ 2 is unsupported.
pub fn extract_eigenform(cusp: &PolySeries) -> Result<Extraction> {
    let rank = cusp.rank();
    if rank == 0 {
        return Ok(Extraction::Empty);
    }
    if rank >= 2 {
        return Err(Error::Unsupported(format!(
            "cusp part has rank {rank}; eigenforms are not separated"
        )));
    }
    if !cusp.non_parallel().is_empty() {
        return Err(Error::Precondition("cusp part has non-parallel monomials".into()));
    }
    if !cusp.irrational().is_empty() {
        return Err(Error::Unsupported("cusp part has irrational coefficients".into()));
    }
    let norm_part = cusp.norm_part();
    let (_, first) = norm_part.iter().find(|(_, s)| !s.is_zero()).expect("rank one");
    let (nu0, c0) = first
        .terms()
        .next()
        .map(|(nu, c)| (*nu, c.a.clone()))
        .ok_or_else(|| Error::Precondition("cusp part has only constant terms".into()))?;
    let form = first.scale_rational(&c0.recip());
    let mut period = BTreeMap::new();
    for (pq, s) in &norm_part {
        let c = s.coeff(&nu0).a;
        if s != &form.scale_rational(&c) {
            return Err(Error::Precondition(format!(
                "monomial {pq:?} is not proportional to the cusp form"
            )));
        }
        if !c.is_zero() {
            period.insert(*pq, c);
        }
    }
    let (r_even, r_odd, scalar, factorizes) = split_period(&period)?;
    Ok(Extraction::Eigenform(Box::new(Eigenform {
        k: cusp.k,
        disc: cusp.disc,
        form,
        normalizing_index: nu0,
        period,
        r_even,
        r_odd,
        scalar,
        factorizes,
    })))
}

/// Reads R^ev ⊗ R^od off the (even p, odd q) block and checks whether the
/// whole of R is the symmetrized product.
fn split_period(
    period: &BTreeMap<(i64, i64), BigRational>,
) -> Result<(PeriodPolynomial, PeriodPolynomial, BigRational, bool)> {
    let block: BTreeMap<(i64, i64), BigRational> = period
        .iter()
        .filter(|((p, q), _)| p.is_even() && q.is_odd())
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    let Some((&(p0, q0), c00)) = block.iter().next() else {
        return Err(Error::Precondition("period has no even×odd block".into()));
    };
    let r_even = PeriodPolynomial::from_pairs(
        block
            .iter()
            .filter(|((_, q), _)| *q == q0)
            .map(|((p, _), c)| (*p, c / c00)),
    );
    let r_odd = PeriodPolynomial::from_pairs(
        block
            .iter()
            .filter(|((p, _), _)| *p == p0)
            .map(|((_, q), c)| (*q, c / c00)),
    );
    let mut product: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
    for (p, e) in &r_even.coeffs {
        for (q, o) in &r_odd.coeffs {
            let c = c00 * e * o;
            product.insert((*p, *q), c.clone());
            product.insert((*q, *p), c);
        }
    }
    let factorizes = &product == period;
    Ok((r_even, r_odd, c00.clone(), factorizes))
}

/// [f,g]_p = Σ_{ℓ+ℓ′=(p,…,p)} (−1)^{|ℓ|} Π_i C(k₁+p−1, p−ℓ_i) C(k₂+p−1, ℓ_i)
/// · 𝔻^ℓ f · 𝔻^{ℓ′} g, with 𝔻 normalized by 1/(2πi).
pub fn rankin_cohen(f: &FourierSeries, g: &FourierSeries, k1: i64, k2: i64, p: i64) -> Result<FourierSeries> {
    if p < 0 {
        return Err(Error::Precondition("bracket order must be >= 0".into()));
    }
    if f.disc() != g.disc() {
        return Err(Error::DiscriminantMismatch(f.disc(), g.disc()));
    }
    let t = degree(f.disc());
    let mut ells: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..t {
        ells = ells
            .into_iter()
            .flat_map(|v| (0..=p).map(move |l| [v.clone(), vec![l]].concat()))
            .collect();
    }
    let terms = par::map(&ells, |ell| -> Result<FourierSeries> {
        let ell2: Vec<i64> = ell.iter().map(|l| p - l).collect();
        let mut c = BigInt::from(if ell.iter().sum::<i64>().is_odd() { -1 } else { 1 });
        for &l in ell {
            c *= binomial(k1 + p - 1, p - l) * binomial(k2 + p - 1, l);
        }
        Ok(f.nu_twist(ell)?.mul(&g.nu_twist(&ell2)?)?.scale_rational(&int(c)))
    });
    let mut acc = FourierSeries::zero(f.disc(), f.trace_bound().min(g.trace_bound()));
    for term in terms {
        acc = acc.add(&term?)?;
    }
    Ok(acc)
}

/// One (k, p, q) instance of the bracket identity for the 𝒩(X)^p𝒩(Y)^q
/// coefficient of the raw layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcReport {
    pub k: i64,
    pub p: i64,
    pub q: i64,
    pub lhs: FourierSeries,
    pub rhs: FourierSeries,
    pub diff: FourierSeries,
    /// The part of `lhs` coming from singular × twisted cross terms.
    pub singular_cross: FourierSeries,
}

impl RcReport {
    pub fn is_zero(&self) -> bool {
        self.diff.is_zero()
    }
}

/// Admissible (p, q): 0 ≤ p < q ≤ (k−2)/2 with p + q odd.
pub fn rc_pairs(k: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 0..=(k - 2) / 2 {
        for q in p + 1..=(k - 2) / 2 {
            if (p + q).is_odd() {
                out.push((p, q));
            }
        }
    }
    out
}

fn rc_rhs(disc: i64, trace_bound: i64, k: i64, p: i64, q: i64) -> Result<FourierSeries> {
    let t = degree(disc) as u32;
    let (k1, k2) = (k - 1 - q - p, q + 1 - p);
    let f = eisenstein(k1, disc, trace_bound)?;
    let g = eisenstein(k2, disc, trace_bound)?;
    let c = int(BigInt::from(2).pow(2 * t)) / int(factorial(q).pow(t) * factorial(k - q - 2).pow(t));
    Ok(rankin_cohen(&f, &g, k1, k2, p)?.scale_rational(&c))
}

/// Checks [𝒩(X)^p𝒩(Y)^q] of the raw layer k against
/// 2^{2t}/(Γ(q+1)^tΓ(k−q−1)^t) · [G_{k−1−q−p}, G_{q+1−p}]_p.
pub fn rc_consistency(ks: &KroneckerSeries, k: i64, p: i64, q: i64) -> Result<RcReport> {
    Ok(rc_sweep_pairs(ks, k, &[(p, q)])?.remove(0))
}

/// rc_consistency for every admissible (p, q) at weight k.
pub fn rc_sweep(ks: &KroneckerSeries, k: i64) -> Result<Vec<RcReport>> {
    rc_sweep_pairs(ks, k, &rc_pairs(k))
}

fn rc_sweep_pairs(ks: &KroneckerSeries, k: i64, pairs: &[(i64, i64)]) -> Result<Vec<RcReport>> {
    for &(p, q) in pairs {
        if !(0 <= p && p < q && 2 * q <= k - 2 && (p + q).is_odd()) {
            return Err(Error::Precondition(format!(
                "(p, q) = ({p}, {q}) is not admissible for k = {k}"
            )));
        }
    }
    let policy = SingularCross::for_disc(ks.disc);
    let layer = ks.raw_layer(k, policy)?;
    let full = ks.raw_layer(k, SingularCross::Full)?;
    let untwisted = ks.raw_layer(k, SingularCross::Untwisted)?;
    let tb = ks.bounds.trace_bound;
    par::map(pairs, |&(p, q)| -> Result<RcReport> {
        let lhs = layer.get_norm(p, q);
        let rhs = rc_rhs(ks.disc, tb, k, p, q)?;
        let diff = lhs.sub(&rhs)?;
        let singular_cross = full.get_norm(p, q).sub(&untwisted.get_norm(p, q))?;
        Ok(RcReport {
            k,
            p,
            q,
            lhs,
            rhs,
            diff,
            singular_cross,
        })
    })
    .into_iter()
    .collect()
}

/// Σ_{k} of the constant terms C_k^{Eis}(i∞)/Γ(k−1)^t, i.e. the q⁰ part of
/// the normalized layer: (−1)^t(p⁺(X)p⁻(Y) + p⁺(Y)p⁻(X)).
pub fn eisenstein_constant_layer(k: i64, disc: i64) -> Result<BTreeMap<(i64, i64), BigRational>> {
    let t = degree(disc);
    let pp = p_plus(k, t)?;
    let pm = p_minus(k, disc)?;
    let mut out: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
    for (i, ci) in &pp.coeffs {
        for (j, cj) in &pm.coeffs {
            let c = sign_t(t) * ci * cj;
            *out.entry((*i, *j)).or_insert_with(BigRational::zero) += &c;
            *out.entry((*j, *i)).or_insert_with(BigRational::zero) += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Embeds a rational as a field element of the given field.
pub fn fe(r: BigRational, disc: i64) -> FieldElement {
    FieldElement::from_rational(r, disc)
}
