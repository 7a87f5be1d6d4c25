use std::cmp::Ordering;

use ffield::{Fq, RatFunc};
use homology::{OrientedChain, Q};
use num_traits::{One, Signed, Zero};
use quotient::Quotient;
use scomplex::permutation_parity;

use crate::ModsymError;

/// Value of a relative class on a pointed top simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportRow {
    pub key: String,
    pub rotation: usize,
    pub value: Q,
}

/// For each core top simplex σ and each rotation j, the coefficient of σ in
/// `c` when σ is oriented by its chain order starting at the j-th vertex.
pub fn automorphic_export(q: &Quotient, c: &OrientedChain, alpha: i64) -> Vec<ExportRow> {
    let cx = q.complex();
    let d = q.d();
    let top = d - 1;
    let mut rows = Vec::new();
    for idx in q.core(top, alpha) {
        let s = &q.simplices[top][idx];
        let order: Vec<usize> = s.canon.canonical_order().iter().map(|k| cx.find_in(0, k).unwrap()).collect();
        let base = c.get(idx);
        for j in 0..d {
            let rotated: Vec<usize> = (0..d).map(|k| order[(j + k) % d]).collect();
            let sign = permutation_parity(&rotated);
            let value = if sign > 0 { base.clone() } else { -base.clone() };
            rows.push(ExportRow { key: s.key.clone(), rotation: j, value });
        }
    }
    rows.sort_by(|a, b| a.key.cmp(&b.key).then(a.rotation.cmp(&b.rotation)));
    rows
}

pub fn automorphic_csv(rows: &[ExportRow]) -> Result<String, ModsymError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| ModsymError::Internal(e.to_string());
    w.write_record(["key", "rotation", "numerator", "denominator"]).map_err(err)?;
    for r in rows {
        w.write_record([r.key.clone(), r.rotation.to_string(), r.value.numer().to_string(), r.value.denom().to_string()])
            .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| ModsymError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ModsymError::Internal(e.to_string()))
}

/// log_q of the semi-norm; `None` is -∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeminormExponent(pub Option<Q>);

impl PartialOrd for SeminormExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SeminormExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// max_i ( -val(f(v_i)) - 1/t_i ) over t_i > 0 with f(v_i) ≠ 0.
pub fn seminorm_exponent(vs: &[Vec<RatFunc>], t: &[Q], dual: &[RatFunc], f: &Fq) -> Result<SeminormExponent, ModsymError> {
    if t.len() != vs.len() || vs.is_empty() {
        return Err(ModsymError::BadSimplexPoint(format!("{} weights for {} vectors", t.len(), vs.len())));
    }
    if t.iter().any(|x| x.is_negative() || *x > Q::one()) || t.iter().fold(Q::zero(), |a, x| a + x) != Q::one() {
        return Err(ModsymError::BadSimplexPoint("weights must lie in [0, 1] and sum to 1".into()));
    }
    if vs.iter().any(|v| v.len() != dual.len()) {
        return Err(ModsymError::Shape("vector and functional lengths differ".into()));
    }
    let mut best: Option<Q> = None;
    for (v, ti) in vs.iter().zip(t) {
        if ti.is_zero() {
            continue;
        }
        let fv = v.iter().zip(dual).fold(RatFunc::zero(), |acc, (a, b)| acc.add(&a.mul(b, f), f));
        if fv.is_zero() {
            continue;
        }
        let e = Q::from_integer((-fv.val()).into()) - ti.recip();
        if best.as_ref().map_or(true, |b| e > *b) {
            best = Some(e);
        }
    }
    Ok(SeminormExponent(best))
}
