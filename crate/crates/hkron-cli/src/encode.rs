//! Exact JSON encodings: rationals as "num/den", field elements as
//! ["a", "b"] for a + b√D, Fourier indices as [m, n].

use hilbert_kronecker::kronecker::PolySeries;
use hilbert_kronecker::periods::PeriodPolynomial;
use hilbert_kronecker::qseries::FourierSeries;
use hilbert_kronecker::quadfield::{FieldElement, NuIndex};
use num_rational::BigRational;
use serde_json::{json, Value};

pub fn rational(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn field(x: &FieldElement) -> Value {
    json!([rational(&x.a), rational(&x.b)])
}

pub fn nu(n: &NuIndex) -> Value {
    json!([n.m, n.n])
}

/// Constant term and every nonzero coefficient, in index order.
pub fn series(s: &FourierSeries) -> Value {
    let coeffs: Vec<Value> = s
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| json!({"nu": nu(n), "value": field(c)}))
        .collect();
    json!({"constant": field(s.constant()), "coefficients": coeffs})
}

pub fn poly_series(p: &PolySeries) -> Value {
    let monomials: Vec<Value> = p
        .monomials
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|((x, y), s)| json!({"x": x, "y": y, "series": series(s)}))
        .collect();
    Value::Array(monomials)
}

pub fn period_polynomial(p: &PeriodPolynomial) -> Value {
    Value::Array(p.coeffs.iter().map(|(n, c)| json!([n, rational(c)])).collect())
}
