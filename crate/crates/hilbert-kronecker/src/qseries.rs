//! Trace-truncated q-expansions Σ a(ν) q^ν over ν ∈ 𝔇⁻¹ totally positive,
//! with exact field-element coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arithmetic::zeta_f_neg;
use crate::par;
use crate::quadfield::{divisor_sum, enumerate_indices, FieldElement, NuIndex};
use crate::{check_disc, degree, Error, Result};

/// The indices of trace ≤ B with their addition table. Position 0 is the
/// constant term; position i ≥ 1 is `indices[i - 1]`.
#[derive(Debug)]
pub struct IndexSpace {
    pub disc: i64,
    pub trace_bound: i64,
    pub indices: Vec<NuIndex>,
    lookup: HashMap<(i64, i64), usize>,
    /// For each position, the pairs of positions summing to it.
    pairs: Vec<Vec<(u32, u32)>>,
}

type SpaceCache = HashMap<(i64, i64), Arc<IndexSpace>>;

impl IndexSpace {
    fn build(disc: i64, trace_bound: i64) -> Self {
        let indices = enumerate_indices(disc, trace_bound);
        let lookup: HashMap<(i64, i64), usize> = indices
            .iter()
            .enumerate()
            .map(|(i, nu)| ((nu.m, nu.n), i + 1))
            .collect();
        let len = indices.len() + 1;
        let mut pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); len];
        pairs[0].push((0, 0));
        for (o, row) in pairs.iter_mut().enumerate().skip(1) {
            row.push((0, o as u32));
            row.push((o as u32, 0));
        }
        for (i, a) in indices.iter().enumerate() {
            for (j, b) in indices.iter().enumerate() {
                if a.n + b.n > trace_bound {
                    continue;
                }
                if let Some(&o) = lookup.get(&(a.m + b.m, a.n + b.n)) {
                    pairs[o].push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
        IndexSpace {
            disc,
            trace_bound,
            indices,
            lookup,
            pairs,
        }
    }

    /// The shared, immutable space for (D, B).
    pub fn get(disc: i64, trace_bound: i64) -> Arc<IndexSpace> {
        static CACHE: OnceLock<Mutex<SpaceCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = cache.lock().unwrap().get(&(disc, trace_bound)) {
            return s.clone();
        }
        let space = Arc::new(IndexSpace::build(disc, trace_bound));
        cache
            .lock()
            .unwrap()
            .entry((disc, trace_bound))
            .or_insert(space)
            .clone()
    }

    /// Number of positions, constant term included.
    pub fn len(&self) -> usize {
        self.indices.len() + 1
    }

    /// Never empty: the constant slot is always present.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, nu: &NuIndex) -> Option<usize> {
        self.lookup.get(&(nu.m, nu.n)).copied()
    }
}

/// A q-expansion truncated at trace ≤ B.
#[derive(Clone, Debug)]
pub struct FourierSeries {
    space: Arc<IndexSpace>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for FourierSeries {
    fn eq(&self, other: &Self) -> bool {
        self.disc() == other.disc() && self.trace_bound() == other.trace_bound() && self.coeffs == other.coeffs
    }
}

impl Eq for FourierSeries {}

impl FourierSeries {
    pub fn zero(disc: i64, trace_bound: i64) -> Self {
        let space = IndexSpace::get(disc, trace_bound);
        let coeffs = vec![FieldElement::zero(disc); space.len()];
        FourierSeries { space, coeffs }
    }

    /// The constant series c.
    pub fn constant_series(c: FieldElement, trace_bound: i64) -> Self {
        let mut s = Self::zero(c.disc, trace_bound);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from a coefficient function over the index space.
    pub fn from_fn<F>(disc: i64, trace_bound: i64, constant: FieldElement, f: F) -> Self
    where
        F: Fn(&NuIndex) -> FieldElement + Sync + Send,
    {
        let space = IndexSpace::get(disc, trace_bound);
        let mut coeffs = Vec::with_capacity(space.len());
        coeffs.push(constant);
        coeffs.extend(par::map(&space.indices, f));
        FourierSeries { space, coeffs }
    }

    pub fn disc(&self) -> i64 {
        self.space.disc
    }

    pub fn trace_bound(&self) -> i64 {
        self.space.trace_bound
    }

    pub fn space(&self) -> &Arc<IndexSpace> {
        &self.space
    }

    pub fn indices(&self) -> &[NuIndex] {
        &self.space.indices
    }

    pub fn constant(&self) -> &FieldElement {
        &self.coeffs[0]
    }

    /// Coefficient at ν; zero when ν is outside the truncation.
    pub fn coeff(&self, nu: &NuIndex) -> FieldElement {
        match self.space.position(nu) {
            Some(i) => self.coeffs[i].clone(),
            None => FieldElement::zero(self.disc()),
        }
    }

    /// All coefficients, constant first, then in index order.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Nonzero (ν, a(ν)) pairs in index order, constant term excluded.
    pub fn terms(&self) -> impl Iterator<Item = (&NuIndex, &FieldElement)> {
        self.space
            .indices
            .iter()
            .zip(&self.coeffs[1..])
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn set(&mut self, nu: &NuIndex, c: FieldElement) -> Result<()> {
        let i = self
            .space
            .position(nu)
            .ok_or_else(|| Error::Precondition(format!("index {nu} outside truncation")))?;
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn set_constant(&mut self, c: FieldElement) {
        self.coeffs[0] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// True when every coefficient has zero √D-component.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_rational)
    }

    /// The same series truncated to trace ≤ B (B no larger than the current).
    pub fn truncate(&self, trace_bound: i64) -> Self {
        if trace_bound >= self.trace_bound() {
            return self.clone();
        }
        let space = IndexSpace::get(self.disc(), trace_bound);
        let coeffs = self.coeffs[..space.len()].to_vec();
        FourierSeries { space, coeffs }
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.disc() != other.disc() {
            return Err(Error::DiscriminantMismatch(self.disc(), other.disc()));
        }
        let b = self.trace_bound().min(other.trace_bound());
        Ok((self.truncate(b), other.truncate(b)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.aligned(other)?;
        let coeffs = f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a + b).collect();
        Ok(FourierSeries { space: f.space, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.aligned(other)?;
        let coeffs = f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a - b).collect();
        Ok(FourierSeries { space: f.space, coeffs })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.disc != self.disc() {
            return Err(Error::DiscriminantMismatch(self.disc(), c.disc));
        }
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Ok(FourierSeries {
            space: self.space.clone(),
            coeffs,
        })
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect();
        FourierSeries {
            space: self.space.clone(),
            coeffs,
        }
    }

    /// Convolution product, parallel over output indices.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (f, g) = self.aligned(other)?;
        let disc = f.disc();
        let space = f.space.clone();
        let coeffs = par::map_range(space.len(), |o| {
            let mut acc = FieldElement::zero(disc);
            for &(i, j) in &space.pairs[o] {
                let (a, b) = (&f.coeffs[i as usize], &g.coeffs[j as usize]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        });
        Ok(FourierSeries { space, coeffs })
    }

    /// 𝔻^ℓ f/(2πi)^{|ℓ|}: multiplies a(ν) by ν^{ℓ₁}(ν')^{ℓ₂}.
    pub fn nu_twist(&self, ell: &[i64]) -> Result<Self> {
        let t = degree(self.disc());
        if ell.len() != t {
            return Err(Error::Precondition(format!("twist exponent needs {t} entries")));
        }
        if ell.iter().any(|&l| l < 0) {
            return Err(Error::NegativeExponent);
        }
        if ell.iter().all(|&l| l == 0) {
            return Ok(self.clone());
        }
        let disc = self.disc();
        let space = self.space.clone();
        let mut coeffs = Vec::with_capacity(space.len());
        coeffs.push(FieldElement::zero(disc));
        let twisted = par::map_range(space.indices.len(), |i| {
            let c = &self.coeffs[i + 1];
            if c.is_zero() {
                return c.clone();
            }
            c * &twist_weight(&space.indices[i], ell)
        });
        coeffs.extend(twisted);
        Ok(FourierSeries { space, coeffs })
    }
}

/// ν^{ℓ₁}(ν')^{ℓ₂} (just ν^{ℓ₁} when t = 1).
pub fn twist_weight(nu: &NuIndex, ell: &[i64]) -> FieldElement {
    let x = nu.to_element();
    let mut w = x.pow(ell[0] as u32);
    if ell.len() > 1 {
        w = &w * &x.conjugate().pow(ell[1] as u32);
    }
    w
}

impl fmt::Display for FourierSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant())?;
        for (nu, c) in self.terms() {
            write!(f, " + ({c})q^{nu}")?;
        }
        Ok(())
    }
}

/// G_{F,k} = ζ_F(1−k)/2^t + Σ σ_{k−1}(ν𝔇) q^ν. Odd k ≥ 3 is accepted with
/// constant term 0.
pub fn eisenstein(k: i64, disc: i64, trace_bound: i64) -> Result<FourierSeries> {
    check_disc(disc)?;
    if k < 2 || (k % 2 == 1 && k < 3) {
        return Err(Error::InvalidWeight(k, "Eisenstein weight must be >= 2"));
    }
    let constant = if k % 2 == 0 {
        let t = degree(disc) as u32;
        zeta_f_neg(k, disc)? / BigRational::from_integer(BigInt::from(2).pow(t))
    } else {
        BigRational::zero()
    };
    let r = (k - 1) as u32;
    Ok(FourierSeries::from_fn(
        disc,
        trace_bound,
        FieldElement::from_rational(constant, disc),
        |nu| FieldElement::from_rational(BigRational::from_integer(divisor_sum(nu, r)), disc),
    ))
}
