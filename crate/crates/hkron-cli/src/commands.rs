//! The subcommands. Each returns JSON results, a text rendering and a status.

use hilbert_kronecker::arithmetic::zeta_f_neg;
use hilbert_kronecker::kronecker::{kronecker_via_lifting, kronecker_via_theta, Bounds, KroneckerSeries, PolySeries};
use hilbert_kronecker::periods::{
    eisenstein_layer, eisenstein_prefactor, eisenstein_prefactor_symbolic, extract_eigenform, rc_consistency, rc_sweep,
    Eigenform, Extraction, RcReport,
};
use hilbert_kronecker::qseries::{eisenstein, FourierSeries};
use hilbert_kronecker::quadfield::{enumerate_indices, NuIndex};
use hilbert_kronecker::{degree, Error};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::encode;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Unsupported,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::Unsupported => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub results: Vec<Value>,
    pub text: String,
    pub status: Status,
}

fn series_for(cfg: &RunConfig) -> Result<KroneckerSeries, CliError> {
    let bounds = Bounds {
        trace_bound: cfg.trace_bound,
        xy_degree: cfg.xy_degree,
    };
    Ok(KroneckerSeries::new(cfg.disc, bounds, cfg.kmax)?)
}

fn check_weight(k: i64) -> Result<(), CliError> {
    if k < 2 || k % 2 != 0 {
        return Err(CliError::Config(format!("weight must be even and >= 2, got {k}")));
    }
    Ok(())
}

fn even_weights(kmax: i64) -> impl Iterator<Item = i64> {
    (2..=kmax).step_by(2)
}

pub fn zeta(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut results = Vec::new();
    let mut text = format!("{:<4} zeta_F(1-k)\n", "k");
    for k in even_weights(cfg.kmax) {
        let z = zeta_f_neg(k, cfg.disc)?;
        text += &format!("{k:<4} {z}\n");
        results.push(json!({"k": k, "value": encode::rational(&z)}));
    }
    Ok(Outcome {
        results,
        text,
        status: Status::Ok,
    })
}

fn series_text(s: &FourierSeries) -> String {
    let mut out = format!("  constant  {}\n", s.constant());
    for (nu, c) in s.terms().filter(|(_, c)| !c.is_zero()) {
        out += &format!("  {:<10}{c}\n", nu.to_string());
    }
    out
}

pub fn eisenstein_cmd(cfg: &RunConfig, k: i64) -> Result<Outcome, CliError> {
    let g = eisenstein(k, cfg.disc, cfg.trace_bound)?;
    let text = format!(
        "G_{k} over disc {}, trace <= {}\n{}",
        cfg.disc,
        cfg.trace_bound,
        series_text(&g)
    );
    let mut v = json!({"k": k});
    if let (Value::Object(m), Value::Object(s)) = (&mut v, encode::series(&g)) {
        m.extend(s);
    }
    Ok(Outcome {
        results: vec![v],
        text,
        status: Status::Ok,
    })
}

fn layer_text(k: i64, layer: &PolySeries) -> String {
    let mut out = format!("k = {k}\n");
    for ((x, y), s) in layer.monomials.iter().filter(|(_, s)| !s.is_zero()) {
        out += &format!(" X^{x:?} Y^{y:?}\n{}", series_text(s));
    }
    out
}

pub fn kronecker_expand(cfg: &RunConfig, k: Option<i64>) -> Result<Outcome, CliError> {
    let ks = series_for(cfg)?;
    let weights: Vec<i64> = match k {
        Some(k) => {
            check_weight(k)?;
            vec![k]
        }
        None => even_weights(cfg.kmax).collect(),
    };
    let mut results = Vec::new();
    let mut text = String::new();
    for k in weights {
        let layer = ks.default_layer(k)?;
        text += &layer_text(k, &layer);
        results.push(json!({"k": k, "monomials": encode::poly_series(&layer)}));
    }
    Ok(Outcome {
        results,
        text,
        status: Status::Ok,
    })
}

/// Signed reflection (X, Y) ↦ (−1/Y, −1/X) on the norm part of a layer.
fn reflection_holds(layer: &PolySeries, k: i64, xy_degree: i64) -> bool {
    let t = degree(layer.disc) as i64;
    layer.norm_part().iter().all(|(&(p, q), s)| {
        let (p2, q2) = (k - 2 - q, k - 2 - p);
        if p2.max(q2) > xy_degree {
            return true;
        }
        let sign = if (t * (p + q)) % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        layer.get_norm(p2, q2) == s.scale_rational(&sign)
    })
}

/// a(αβ) = a(α)a(β) for coprime ideals within the truncation.
fn hecke_multiplicative(f: &FourierSeries) -> bool {
    let nus = enumerate_indices(f.disc(), f.trace_bound());
    for a in &nus {
        for b in &nus {
            if num_integer::gcd(a.ideal_norm(), b.ideal_norm()) != 1 {
                continue;
            }
            let Some(c) = NuIndex::from_ideal_generator(&(&a.ideal_generator() * &b.ideal_generator())) else {
                return false;
            };
            if c.n <= f.trace_bound() && f.coeff(&c) != &f.coeff(a) * &f.coeff(b) {
                return false;
            }
        }
    }
    true
}

fn prefactor_routes_agree(k: i64, disc: i64) -> Result<bool, CliError> {
    if k < 4 {
        return Ok(true);
    }
    Ok(eisenstein_prefactor_symbolic(k, disc)?.as_rational() == Some(eisenstein_prefactor(k, disc)?))
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ks = series_for(cfg)?;
    let mut results = Vec::new();
    let mut text = String::new();
    let mut ok_all = true;
    for k in even_weights(cfg.kmax) {
        let layer = ks.default_layer(k)?;
        let eis = eisenstein_layer(k, cfg.disc, cfg.trace_bound, cfg.xy_degree)?;
        let cusp = layer.sub(&eis)?;
        // A cusp part has no constant terms; any left over is an Eisenstein mismatch.
        let diffs: Vec<Value> = cusp
            .monomials
            .iter()
            .filter(|(_, s)| !s.constant().is_zero())
            .map(|((x, y), s)| json!({"x": x, "y": y, "nu": Value::Null, "value": encode::field(s.constant())}))
            .collect();
        let invariants = [
            ("parallel", layer.non_parallel().is_empty()),
            ("rational", layer.irrational().is_empty()),
            ("xy_symmetric", layer.swap_xy() == layer),
            ("reflection", reflection_holds(&layer, k, cfg.xy_degree)),
            ("prefactor_routes_agree", prefactor_routes_agree(k, cfg.disc)?),
        ];
        let rank = cusp.rank();
        let mut cusp_report = json!({"rank": rank});
        let mut cusp_ok = true;
        let mut cusp_text = format!("cusp rank {rank}");
        if rank == 1 {
            if let Extraction::Eigenform(f) = extract_eigenform(&cusp)? {
                cusp_ok = hecke_multiplicative(&f.form);
                cusp_report["hecke_multiplicative"] = json!(cusp_ok);
                cusp_report["factorizes"] = json!(f.factorizes);
                cusp_text += &format!(", hecke {}", if cusp_ok { "ok" } else { "FAILED" });
            }
        } else if rank >= 2 {
            cusp_text += " (not separated)";
        }
        let ok = diffs.is_empty() && cusp_ok && invariants.iter().all(|(_, v)| *v);
        ok_all &= ok;
        let failed: Vec<&str> = invariants.iter().filter(|(_, v)| !v).map(|(n, _)| *n).collect();
        text += &format!(
            "k={k:<3} {}  diffs {}  invariants {}  {cusp_text}\n",
            if ok { "ok      " } else { "MISMATCH" },
            diffs.len(),
            if failed.is_empty() {
                "ok".to_string()
            } else {
                failed.join(",")
            },
        );
        let inv: serde_json::Map<String, Value> = invariants.iter().map(|(n, v)| (n.to_string(), json!(v))).collect();
        results.push(json!({"k": k, "ok": ok, "diffs": diffs, "invariants": inv, "cusp": cusp_report}));
    }
    let status = if ok_all { Status::Ok } else { Status::Mismatch };
    Ok(Outcome { results, text, status })
}

fn eigenform_json(f: &Eigenform) -> Value {
    let period: Vec<Value> = f
        .period
        .iter()
        .map(|(&(p, q), c)| json!({"p": p, "q": q, "value": encode::rational(c)}))
        .collect();
    let mut v = json!({
        "k": f.k,
        "rank": 1,
        "normalizing_index": encode::nu(&f.normalizing_index),
    });
    if let (Value::Object(m), Value::Object(s)) = (&mut v, encode::series(&f.form)) {
        m.extend(s);
    }
    v["period"] = Value::Array(period);
    v["r_even"] = encode::period_polynomial(&f.r_even);
    v["r_odd"] = encode::period_polynomial(&f.r_odd);
    v["scalar"] = encode::rational(&f.scalar);
    v["factorizes"] = json!(f.factorizes);
    v
}

fn eigenform_text(f: &Eigenform) -> String {
    let mut out = format!("k = {}, rank 1, normalized at {}\n", f.k, f.normalizing_index);
    out += &series_text(&f.form);
    out += "period coefficients (p, q):\n";
    for ((p, q), c) in &f.period {
        out += &format!("  ({p}, {q})  {c}\n");
    }
    out += &format!(
        "R_even  {}\nR_odd   {}\nscalar  {}\nsingle product: {}\n",
        f.r_even, f.r_odd, f.scalar, f.factorizes
    );
    out
}

pub fn extract(cfg: &RunConfig, k: i64) -> Result<Outcome, CliError> {
    check_weight(k)?;
    let ks = series_for(cfg)?;
    let layer = ks.default_layer(k)?;
    let cusp = layer.sub(&eisenstein_layer(k, cfg.disc, cfg.trace_bound, cfg.xy_degree)?)?;
    match extract_eigenform(&cusp) {
        Ok(Extraction::Empty) => Ok(Outcome {
            results: vec![json!({"k": k, "rank": 0})],
            text: format!("k = {k}: no cusp forms at this truncation\n"),
            status: Status::Ok,
        }),
        Ok(Extraction::Eigenform(f)) => Ok(Outcome {
            results: vec![eigenform_json(&f)],
            text: eigenform_text(&f),
            status: Status::Ok,
        }),
        Err(Error::Unsupported(msg)) => Ok(Outcome {
            results: vec![json!({"k": k, "rank": cusp.rank(), "unsupported": msg})],
            text: format!("k = {k}: unsupported: {msg}\n"),
            status: Status::Unsupported,
        }),
        Err(e) => Err(e.into()),
    }
}

fn rc_json(r: &RcReport) -> Value {
    let diff: Vec<Value> = r
        .diff
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(nu, c)| json!({"nu": encode::nu(nu), "value": encode::field(c)}))
        .collect();
    json!({
        "k": r.k,
        "p": r.p,
        "q": r.q,
        "zero": r.is_zero(),
        "diff_constant": encode::field(r.diff.constant()),
        "diff": diff,
        "explained_by_singular_cross": !r.is_zero() && r.diff == r.singular_cross,
    })
}

pub fn rc_check(cfg: &RunConfig, k: i64, p: Option<i64>, q: Option<i64>) -> Result<Outcome, CliError> {
    check_weight(k)?;
    let ks = series_for(cfg)?;
    let reports = match (p, q) {
        (Some(p), Some(q)) => vec![rc_consistency(&ks, k, p, q)?],
        (None, None) => rc_sweep(&ks, k)?,
        _ => return Err(CliError::Config("give both --p and --q, or neither".into())),
    };
    let mut text = String::new();
    for r in &reports {
        let verdict = if r.is_zero() { "zero" } else { "NONZERO" };
        text += &format!("k={} p={} q={}  {verdict}\n", r.k, r.p, r.q);
    }
    let status = if reports.iter().all(RcReport::is_zero) {
        Status::Ok
    } else {
        Status::Mismatch
    };
    Ok(Outcome {
        results: reports.iter().map(rc_json).collect(),
        text,
        status,
    })
}

pub fn theta_oracle(order: usize) -> Result<Outcome, CliError> {
    let d = order as i64;
    let a = kronecker_via_theta(order, order, order).restrict_total_degree(d);
    let b = kronecker_via_lifting(order, order, order)?.restrict_total_degree(d);
    let equal = a == b && !a.coeffs.is_empty();
    let verdict = if equal { "EQUAL" } else { "DIFFERENT" };
    Ok(Outcome {
        results: vec![json!({"q_order": order, "total_degree": order, "result": verdict})],
        text: format!("{verdict}\n"),
        status: if equal { Status::Ok } else { Status::Mismatch },
    })
}
