//! The Kronecker series F_τ(u,v) assembled from the Kuznetsov lifting of
//! Eisenstein series, the product F_τ(T,−XYT)·F_τ(XT,YT) and its T-layers,
//! and the degree-one Jacobi theta oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arithmetic::{binomial, factorial};
use crate::par;
use crate::qseries::{eisenstein, FourierSeries};
use crate::quadfield::{FieldElement, NuIndex};
use crate::{check_disc, degree, linalg, Error, Result};

/// (x exponent vector, y exponent vector) of a monomial X^x Y^y.
pub type Monomial = (Vec<i64>, Vec<i64>);

/// Two term indices and whether their product enters with a minus sign.
type Pairing = (usize, usize, bool);

/// Truncation: q-expansions by trace, monomials by the largest X or Y
/// exponent entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub trace_bound: i64,
    pub xy_degree: i64,
}

/// How the singular part 1/𝒩(u) + 1/𝒩(v) pairs with the regular terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularCross {
    /// Every cross term of the literal product.
    Full,
    /// Cross terms with g_{h,ℓ}, ℓ ≥ 1 in every component, are omitted.
    Untwisted,
}

impl SingularCross {
    /// `Full` over ℚ, `Untwisted` over real quadratic fields.
    pub fn for_disc(disc: i64) -> Self {
        if degree(disc) == 1 {
            SingularCross::Full
        } else {
            SingularCross::Untwisted
        }
    }
}

/// g_{h,ℓ} = (−2)^t/(ℓ!(ℓ+h−1)!) · 𝔻^ℓ G_{F,h}/(2πi)^{|ℓ|}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCoefficient {
    pub h: i64,
    pub ell: Vec<i64>,
    pub series: FourierSeries,
}

fn vec_factorial(v: &[i64]) -> BigInt {
    v.iter().map(|&x| factorial(x)).product()
}

/// g_{h,ℓ}. Zero unless h ≥ 2 is even; (0, 0) gives the unit coefficient of
/// the singular part.
pub fn g_coefficient(h: i64, ell: &[i64], disc: i64, trace_bound: i64) -> Result<GCoefficient> {
    check_disc(disc)?;
    let t = degree(disc);
    if ell.len() != t {
        return Err(Error::Precondition(format!("ℓ needs {t} entries")));
    }
    let zero = || GCoefficient {
        h,
        ell: ell.to_vec(),
        series: FourierSeries::zero(disc, trace_bound),
    };
    if ell.iter().any(|&l| l < 0) {
        return Ok(zero());
    }
    if h == 0 {
        if ell.iter().all(|&l| l == 0) {
            let one = FourierSeries::constant_series(FieldElement::one(disc), trace_bound);
            return Ok(GCoefficient {
                h,
                ell: ell.to_vec(),
                series: one,
            });
        }
        return Ok(zero());
    }
    if h < 2 || h % 2 == 1 {
        return Ok(zero());
    }
    let shifted: Vec<i64> = ell.iter().map(|&l| l + h - 1).collect();
    let c = BigRational::new(
        BigInt::from(-2).pow(t as u32),
        vec_factorial(ell) * vec_factorial(&shifted),
    );
    let series = eisenstein(h, disc, trace_bound)?.nu_twist(ell)?.scale_rational(&c);
    Ok(GCoefficient {
        h,
        ell: ell.to_vec(),
        series,
    })
}

/// A polynomial in X, Y (exponent vectors, entries ≥ −2) with q-expansion
/// coefficients, for one T-grade k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    pub k: i64,
    pub disc: i64,
    pub trace_bound: i64,
    pub monomials: BTreeMap<Monomial, FourierSeries>,
}

/// (c, …, c) of length t.
pub fn parallel_exp(c: i64, t: usize) -> Vec<i64> {
    vec![c; t]
}

fn is_parallel(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

impl PolySeries {
    pub fn new(k: i64, disc: i64, trace_bound: i64) -> Self {
        PolySeries {
            k,
            disc,
            trace_bound,
            monomials: BTreeMap::new(),
        }
    }

    pub fn t(&self) -> usize {
        degree(self.disc)
    }

    /// Coefficient of X^x Y^y (zero when absent).
    pub fn get(&self, x: &[i64], y: &[i64]) -> FourierSeries {
        self.monomials
            .get(&(x.to_vec(), y.to_vec()))
            .cloned()
            .unwrap_or_else(|| FourierSeries::zero(self.disc, self.trace_bound))
    }

    /// Coefficient of 𝒩(X)^p 𝒩(Y)^q.
    pub fn get_norm(&self, p: i64, q: i64) -> FourierSeries {
        let t = self.t();
        self.get(&parallel_exp(p, t), &parallel_exp(q, t))
    }

    pub fn add_term(&mut self, mono: Monomial, s: &FourierSeries) -> Result<()> {
        let entry = match self.monomials.remove(&mono) {
            Some(cur) => cur.add(s)?,
            None => s.truncate(self.trace_bound),
        };
        if !entry.is_zero() {
            self.monomials.insert(mono, entry);
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.trace_bound = self.trace_bound.min(other.trace_bound);
        out.monomials = out
            .monomials
            .into_iter()
            .map(|(m, s)| (m, s.truncate(out.trace_bound)))
            .collect();
        for (m, s) in &other.monomials {
            out.add_term(m.clone(), &s.scale_rational(&-BigRational::one()))?;
        }
        Ok(out)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.monomials = self
            .monomials
            .iter()
            .map(|(m, s)| (m.clone(), s.scale_rational(c)))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.values().all(FourierSeries::is_zero)
    }

    /// The polynomial with X and Y exchanged.
    pub fn swap_xy(&self) -> Self {
        let mut out = self.clone();
        out.monomials = self
            .monomials
            .iter()
            .map(|((x, y), s)| ((y.clone(), x.clone()), s.clone()))
            .collect();
        out
    }

    /// Nonzero monomials whose X or Y exponent is not of the form (c, …, c).
    pub fn non_parallel(&self) -> Vec<&Monomial> {
        self.monomials
            .iter()
            .filter(|((x, y), s)| !s.is_zero() && (!is_parallel(x) || !is_parallel(y)))
            .map(|(m, _)| m)
            .collect()
    }

    /// Nonzero monomials with an irrational coefficient.
    pub fn irrational(&self) -> Vec<&Monomial> {
        self.monomials
            .iter()
            .filter(|(_, s)| !s.is_rational())
            .map(|(m, _)| m)
            .collect()
    }

    /// The parallel monomials as 𝒩(X)^p 𝒩(Y)^q ↦ series.
    pub fn norm_part(&self) -> BTreeMap<(i64, i64), FourierSeries> {
        self.monomials
            .iter()
            .filter(|((x, y), _)| is_parallel(x) && is_parallel(y))
            .map(|((x, y), s)| ((x[0], y[0]), s.clone()))
            .collect()
    }

    /// Rank over ℚ of the coefficient matrix (monomials × q-indices, the
    /// rational and √D components as separate columns).
    pub fn rank(&self) -> usize {
        linalg::rank(&self.coefficient_rows())
    }

    pub fn coefficient_rows(&self) -> Vec<Vec<BigRational>> {
        self.monomials
            .values()
            .map(|s| s.coeffs().iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect())
            .collect()
    }
}

#[derive(Debug)]
struct Term {
    a: Vec<i64>,
    b: Vec<i64>,
    series: Arc<FourierSeries>,
    singular: bool,
    /// ℓ ≥ 1 in every component.
    twisted: bool,
}

impl Term {
    fn grade(&self) -> Vec<i64> {
        self.a.iter().zip(&self.b).map(|(x, y)| x + y).collect()
    }
}

/// The Kronecker series F_τ(u,v) = 1/𝒩(u) + 1/𝒩(v) +
/// Σ g_{h,ℓ}(u^ℓ v^{ℓ+h−1} + u^{ℓ+h−1} v^ℓ), truncated to the terms that
/// reach T-layers k ≤ k_max.
#[derive(Debug)]
pub struct KroneckerSeries {
    pub disc: i64,
    pub bounds: Bounds,
    pub k_max: i64,
    terms: Vec<Term>,
    by_grade: HashMap<Vec<i64>, Vec<usize>>,
}

fn for_each_vector(t: usize, max: i64, f: &mut impl FnMut(Vec<i64>)) {
    let mut v = vec![0i64; t];
    loop {
        f(v.clone());
        let mut i = 0;
        loop {
            if i == t {
                return;
            }
            v[i] += 1;
            if v[i] <= max {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

impl KroneckerSeries {
    pub fn new(disc: i64, bounds: Bounds, k_max: i64) -> Result<Self> {
        check_disc(disc)?;
        if bounds.trace_bound < 1 {
            return Err(Error::Precondition("trace bound must be >= 1".into()));
        }
        let t = degree(disc);
        let one = Arc::new(FourierSeries::constant_series(
            FieldElement::one(disc),
            bounds.trace_bound,
        ));
        let mut terms = vec![
            Term {
                a: vec![0; t],
                b: vec![-1; t],
                series: one.clone(),
                singular: true,
                twisted: false,
            },
            Term {
                a: vec![-1; t],
                b: vec![0; t],
                series: one,
                singular: true,
                twisted: false,
            },
        ];
        let mut specs = Vec::new();
        for h in (2..=k_max).step_by(2) {
            for_each_vector(t, (k_max - h) / 2, &mut |ell| specs.push((h, ell)));
        }
        let gs = par::map(&specs, |(h, ell)| g_coefficient(*h, ell, disc, bounds.trace_bound));
        for ((h, ell), g) in specs.iter().zip(gs) {
            let g = g?;
            if g.series.is_zero() {
                continue;
            }
            let series = Arc::new(g.series);
            let a = ell.clone();
            let b: Vec<i64> = ell.iter().map(|l| l + h - 1).collect();
            let twisted = ell.iter().all(|&l| l >= 1);
            terms.push(Term {
                a: a.clone(),
                b: b.clone(),
                series: series.clone(),
                singular: false,
                twisted,
            });
            terms.push(Term {
                a: b,
                b: a,
                series,
                singular: false,
                twisted,
            });
        }
        let mut by_grade: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, term) in terms.iter().enumerate() {
            by_grade.entry(term.grade()).or_default().push(i);
        }
        Ok(KroneckerSeries {
            disc,
            bounds,
            k_max,
            terms,
            by_grade,
        })
    }

    pub fn t(&self) -> usize {
        degree(self.disc)
    }

    /// The coefficient of T^{(k−2, …, k−2)} in F_τ(T,−XYT)·F_τ(XT,YT),
    /// before the Γ(k−1)^t normalization. k = 0 gives the leading term.
    pub fn raw_layer(&self, k: i64, policy: SingularCross) -> Result<PolySeries> {
        if k > self.k_max {
            return Err(Error::Precondition(format!("layer {k} exceeds k_max {}", self.k_max)));
        }
        let t = self.t();
        let target = k - 2;
        let mut groups: BTreeMap<Monomial, Vec<Pairing>> = BTreeMap::new();
        for (i1, t1) in self.terms.iter().enumerate() {
            let need: Vec<i64> = t1.grade().iter().map(|g| target - g).collect();
            let Some(partners) = self.by_grade.get(&need) else {
                continue;
            };
            let negate = t1.b.iter().sum::<i64>() % 2 != 0;
            for &i2 in partners {
                let t2 = &self.terms[i2];
                if policy == SingularCross::Untwisted && t1.singular != t2.singular && (t1.twisted || t2.twisted) {
                    continue;
                }
                let x: Vec<i64> = (0..t).map(|j| t1.b[j] + t2.a[j]).collect();
                let y: Vec<i64> = (0..t).map(|j| t1.b[j] + t2.b[j]).collect();
                if x.iter().chain(&y).any(|&e| e > self.bounds.xy_degree) {
                    continue;
                }
                groups.entry((x, y)).or_default().push((i1, i2, negate));
            }
        }
        let groups: Vec<(Monomial, Vec<Pairing>)> = groups.into_iter().collect();
        let sums = par::map(&groups, |(_, pairs)| -> Result<FourierSeries> {
            let mut acc = FourierSeries::zero(self.disc, self.bounds.trace_bound);
            for &(i1, i2, negate) in pairs {
                let prod = self.terms[i1].series.mul(&self.terms[i2].series)?;
                acc = if negate { acc.sub(&prod)? } else { acc.add(&prod)? };
            }
            Ok(acc)
        });
        let mut out = PolySeries::new(k, self.disc, self.bounds.trace_bound);
        for ((mono, _), s) in groups.into_iter().zip(sums) {
            let s = s?;
            if !s.is_zero() {
                out.monomials.insert(mono, s);
            }
        }
        Ok(out)
    }

    /// b_k = Γ(k−1)^t × the raw layer, k ≥ 2.
    pub fn layer(&self, k: i64, policy: SingularCross) -> Result<PolySeries> {
        if k < 2 {
            return Err(Error::InvalidWeight(k, "layers are normalized for k >= 2"));
        }
        let g = BigRational::from_integer(factorial(k - 2).pow(self.t() as u32));
        Ok(self.raw_layer(k, policy)?.scale_rational(&g))
    }

    /// b_k with the default pairing for this field.
    pub fn default_layer(&self, k: i64) -> Result<PolySeries> {
        self.layer(k, SingularCross::for_disc(self.disc))
    }
}

/// b_k(X,Y;τ) over ℚ(√D) with the default singular pairing.
pub fn product_layer(k: i64, disc: i64, bounds: Bounds) -> Result<PolySeries> {
    KroneckerSeries::new(disc, bounds, k.max(2))?.default_layer(k)
}

/// A q-series Σ_{i ≤ order} c_i q^i with rational coefficients.
pub type QSeries = Vec<BigRational>;

fn q_mul(a: &QSeries, b: &QSeries, order: usize) -> QSeries {
    let mut r = vec![BigRational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            r[i + j] += x * y;
        }
    }
    r
}

fn q_inv(a: &QSeries, order: usize) -> QSeries {
    let a0 = a[0].clone();
    let mut r = vec![BigRational::zero(); order + 1];
    r[0] = a0.recip();
    for n in 1..=order {
        let mut s = BigRational::zero();
        for i in 1..=n.min(a.len() - 1) {
            s += &a[i] * &r[n - i];
        }
        r[n] = -s / &a0;
    }
    r
}

fn q_add(a: &mut QSeries, b: &QSeries) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// θ(u)/w, w = q^{1/8}, as Σ_j u^j c_j(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    pub q_order: usize,
    pub u_order: usize,
    /// coeffs[j][i]: coefficient of u^j q^i.
    pub coeffs: Vec<QSeries>,
}

/// θ(u) = Σ_n (−1)^n q^{(n+½)²/2} e^{(n+½)u}, divided by w = q^{1/8}, with
/// each exponential expanded as a power series in u.
pub fn theta(q_order: usize, u_order: usize) -> ThetaSeries {
    let mut coeffs = vec![vec![BigRational::zero(); q_order + 1]; u_order + 1];
    let mut n: i64 = 0;
    loop {
        // Indices n and −n−1 share q^{n(n+1)/2}.
        let e = (n * (n + 1) / 2) as usize;
        if e > q_order {
            break;
        }
        for m in [n, -n - 1] {
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            let half = BigRational::new(BigInt::from(2 * m + 1), BigInt::from(2));
            let mut pow = BigRational::one();
            for (j, row) in coeffs.iter_mut().enumerate() {
                row[e] +=
                    BigRational::from_integer(sign.into()) * &pow / BigRational::from_integer(factorial(j as i64));
                pow *= &half;
            }
        }
        n += 1;
    }
    ThetaSeries {
        q_order,
        u_order,
        coeffs,
    }
}

/// θ′(0)/w.
pub fn theta_prime_zero(q_order: usize) -> QSeries {
    theta(q_order, 1).coeffs[1].clone()
}

/// Σ c_{a,b}(q) u^a v^b with a, b ≥ −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    pub q_order: usize,
    pub coeffs: BTreeMap<(i64, i64), QSeries>,
}

impl BivariateSeries {
    fn add(&mut self, key: (i64, i64), s: &QSeries) {
        let q_order = self.q_order;
        let e = self
            .coeffs
            .entry(key)
            .or_insert_with(|| vec![BigRational::zero(); q_order + 1]);
        q_add(e, s);
        if e.iter().all(Zero::is_zero) {
            self.coeffs.remove(&key);
        }
    }

    /// The terms with total degree a + b ≤ d.
    pub fn restrict_total_degree(&self, d: i64) -> Self {
        BivariateSeries {
            q_order: self.q_order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((a, b), _)| a + b <= d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

/// F_τ(u,v) = θ′(0)θ(u+v)/(θ(u)θ(v)) for exponents a ≤ u_order, b ≤ v_order.
/// Writing θ(u)/w = u·A(u), F = (1/u + 1/v)·θ′(0)A(u+v)/(A(u)A(v)).
pub fn kronecker_via_theta(q_order: usize, u_order: usize, v_order: usize) -> BivariateSeries {
    let n = u_order + v_order + 2;
    let th = theta(q_order, n + 1);
    // A(u) = Σ_j c_{j+1} u^j.
    let a: Vec<QSeries> = (0..=n).map(|j| th.coeffs[j + 1].clone()).collect();
    let c0 = a[0].clone();
    // 1/A(u) as a power series in u.
    let c0_inv = q_inv(&c0, q_order);
    let mut a_inv: Vec<QSeries> = vec![c0_inv.clone()];
    for j in 1..=n {
        let mut s = vec![BigRational::zero(); q_order + 1];
        for i in 1..=j {
            q_add(&mut s, &q_mul(&a[i], &a_inv[j - i], q_order));
        }
        a_inv.push(q_mul(&s, &c0_inv, q_order).into_iter().map(|x| -x).collect());
    }
    let (hu, hv) = (u_order + 1, v_order + 1);
    // H = c0·A(u+v)·A(u)^{-1}·A(v)^{-1} on a ≤ hu, b ≤ hv.
    let mut sum_uv: BTreeMap<(usize, usize), QSeries> = BTreeMap::new();
    for (j, cj) in a.iter().enumerate() {
        for i in 0..=j {
            let (p, q) = (i, j - i);
            if p > hu || q > hv {
                continue;
            }
            let c = BigRational::from_integer(binomial(j as i64, i as i64));
            let term: QSeries = cj.iter().map(|x| x * &c).collect();
            let e = sum_uv
                .entry((p, q))
                .or_insert_with(|| vec![BigRational::zero(); q_order + 1]);
            q_add(e, &term);
        }
    }
    let mut h: BTreeMap<(usize, usize), QSeries> = BTreeMap::new();
    for ((p, q), s) in &sum_uv {
        for (i, ai) in a_inv.iter().enumerate() {
            if p + i > hu {
                break;
            }
            let s1 = q_mul(s, ai, q_order);
            for (j, aj) in a_inv.iter().enumerate() {
                if q + j > hv {
                    break;
                }
                let term = q_mul(&q_mul(&s1, aj, q_order), &c0, q_order);
                let e = h
                    .entry((p + i, q + j))
                    .or_insert_with(|| vec![BigRational::zero(); q_order + 1]);
                q_add(e, &term);
            }
        }
    }
    let mut out = BivariateSeries {
        q_order,
        coeffs: BTreeMap::new(),
    };
    for ((p, q), s) in &h {
        let (p, q) = (*p as i64, *q as i64);
        if p - 1 <= u_order as i64 && q <= v_order as i64 {
            out.add((p - 1, q), s);
        }
        if p <= u_order as i64 && q - 1 <= v_order as i64 {
            out.add((p, q - 1), s);
        }
    }
    out
}

/// F_τ(u,v) over ℚ assembled from the Kuznetsov lifting:
/// 1/u + 1/v + Σ_{h ≥ 2, ℓ ≥ 0} g_{h,ℓ}(u^ℓ v^{ℓ+h−1} + u^{ℓ+h−1} v^ℓ).
pub fn kronecker_via_lifting(q_order: usize, u_order: usize, v_order: usize) -> Result<BivariateSeries> {
    let mut out = BivariateSeries {
        q_order,
        coeffs: BTreeMap::new(),
    };
    let mut one = vec![BigRational::zero(); q_order + 1];
    one[0] = BigRational::one();
    out.add((-1, 0), &one);
    out.add((0, -1), &one);
    let max = u_order.max(v_order) as i64;
    for h in 1..=max + 1 {
        for l in 0..=max {
            let (a, b) = (l, l + h - 1);
            if b > max {
                break;
            }
            let g = g_coefficient(h, &[l], 1, q_order as i64)?;
            if g.series.is_zero() {
                continue;
            }
            let mut s = vec![BigRational::zero(); q_order + 1];
            s[0] = g.series.constant().a.clone();
            for (i, x) in s.iter_mut().enumerate().skip(1) {
                *x = g
                    .series
                    .coeff(&NuIndex {
                        n: i as i64,
                        m: 0,
                        disc: 1,
                    })
                    .a;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x <= u_order as i64 && y <= v_order as i64 {
                    out.add((x, y), &s);
                }
                if a == b {
                    break;
                }
            }
        }
    }
    Ok(out)
}
