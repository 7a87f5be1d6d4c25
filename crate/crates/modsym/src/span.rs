use std::collections::{HashMap, HashSet};

use ffield::{Fq, Poly, RatFunc};
use homology::{canonical_map, closed_core_cells, homology_on, BMResult, OrientedChain, Q, STABLE_WINDOW};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use quotient::{level_group, level_identity, LevelMatrix, Quotient};
use serde::Serialize;
use serde_json::{json, Value};

use crate::modp::{crt, rational_reconstruction, reduce_q, solve_mod, ModEchelon, ModVec, PRIMES};
use crate::symbol::{SymbolOptions, SymbolPlan};
use crate::ModsymError;

/// Images of an H_{d-1}(closed core) basis. Since the building has no cells
/// above degree d-1, relative classes are relative cycles, so `cycles` are
/// already the images in cell coordinates; `columns` gives them in the
/// basis of the stabilized level at `alpha`.
#[derive(Clone, Debug)]
pub struct ImageMatrix {
    pub alpha: i64,
    pub cycles: Vec<OrientedChain>,
    pub columns: Vec<Vec<Q>>,
}

fn check_stable(q: &Quotient, bm: &BMResult, alpha: i64) -> Result<(), ModsymError> {
    let g = &bm.grid;
    let from = g[g.len().saturating_sub(STABLE_WINDOW)];
    if !bm.stabilized || !g.contains(&alpha) || alpha < from || alpha <= q.d() as i64 - 1 {
        return Err(ModsymError::NotStabilized(alpha));
    }
    Ok(())
}

fn image_cycles(q: &Quotient, alpha: i64) -> Vec<OrientedChain> {
    homology_on(q.complex(), closed_core_cells(&q.exhausted, alpha), q.d() - 1).basis
}

pub fn homology_image(q: &Quotient, bm: &BMResult, alpha: i64) -> Result<ImageMatrix, ModsymError> {
    check_stable(q, bm, alpha)?;
    let cycles = image_cycles(q, alpha);
    let mut columns = Vec::with_capacity(cycles.len());
    for z in &cycles {
        let coords = canonical_map(bm, &q.exhausted, z, alpha)?;
        columns.push(coords.into_iter().find(|(a, _)| *a == alpha).map(|x| x.1).unwrap_or_default());
    }
    Ok(ImageMatrix { alpha, cycles, columns })
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorPolicy {
    pub max_d_gen: u32,
    /// Pair every basis with every level datum in G_I.
    pub all_levels: bool,
    pub max_generators: usize,
    pub symbol: SymbolOptions,
}

impl Default for GeneratorPolicy {
    fn default() -> Self {
        GeneratorPolicy { max_d_gen: 2, all_levels: true, max_generators: 20_000_000, symbol: SymbolOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub basis: Vec<Vec<RatFunc>>,
    pub level: LevelMatrix,
    pub d_gen: u32,
}

/// Bases first available at generator degree `dgen`.
///
/// For d = 2 these are the rows (1, 0), (a, b) with b monic, deg a < deg b,
/// gcd(a, b) = 1 and 2(dgen-1) < deg b <= 2 dgen: every basis with entries of
/// degree at most dgen is moved to one of these by Γ, which is absorbed by
/// the level datum. Otherwise all matrices whose largest entry degree is dgen.
pub fn generators_of_degree(d: usize, dgen: u32, f: &Fq, ceiling: usize) -> Result<Vec<Vec<Vec<RatFunc>>>, ModsymError> {
    let rf = |p: &Poly| RatFunc::from_poly(p.clone());
    if d == 2 {
        let lo = if dgen == 0 { 0 } else { 2 * dgen as usize - 1 };
        let mut out = Vec::new();
        for k in lo..=2 * dgen as usize {
            for b in Poly::monics_of_degree(k, f) {
                let avail = if k == 0 { vec![Poly::zero()] } else { Poly::all_up_to(k as i64 - 1, f) };
                for a in avail.into_iter().filter(|a| a.gcd(&b, f).is_one()) {
                    out.push(vec![vec![RatFunc::one(), RatFunc::zero()], vec![rf(&a), rf(&b)]]);
                    if out.len() > ceiling {
                        return Err(ModsymError::GeneratorCeiling(ceiling));
                    }
                }
            }
        }
        return Ok(out);
    }
    let entries = Poly::all_up_to(dgen as i64, f);
    let n = d * d;
    let total = (entries.len() as u128).checked_pow(n as u32);
    if total.map_or(true, |t| t > ceiling as u128) {
        return Err(ModsymError::GeneratorCeiling(ceiling));
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        if digits.iter().any(|&i| entries[i].deg_i() == dgen as i64) {
            out.push((0..d).map(|r| (0..d).map(|c| rf(&entries[digits[r * d + c]])).collect()).collect());
        }
        let mut k = 0;
        while k < n && digits[k] + 1 == entries.len() {
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        digits[k] += 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanStatus {
    Contained,
    NotContainedWithGenerators,
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct SpanCertificate {
    pub status: SpanStatus,
    pub alpha: i64,
    /// Generator degree at which the search stopped.
    pub d_gen: u32,
    pub image: Vec<OrientedChain>,
    /// Independent symbols kept, the columns of the symbol matrix.
    pub symbols: Vec<OrientedChain>,
    pub generators: Vec<Generator>,
    /// Per image column, sparse coefficients on `symbols`; empty unless contained.
    pub coefficients: Vec<Vec<(usize, Q)>>,
    /// Image columns outside the span when the search ended.
    pub residual: usize,
    pub tried: usize,
    pub distinct: usize,
}

fn to_modvec(z: &OrientedChain, p: u64) -> ModVec {
    ModVec(z.coeffs.iter().map(|(k, v)| (*k as u32, reduce_q(v, p).expect("denominator prime to p"))).filter(|x| x.1 != 0).collect())
}

/// Σ_j x_j s_j = y, checked in integers after clearing denominators.
fn combination_equals(symbols: &[OrientedChain], x: &[(usize, Q)], y: &OrientedChain) -> bool {
    let l = x.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let scaled: Option<Vec<(usize, i128)>> = x.iter().map(|(j, v)| (v.numer() * (&l / v.denom())).to_i128().map(|c| (*j, c))).collect();
    let target: Option<HashMap<usize, i128>> =
        y.coeffs.iter().map(|(k, v)| (v * Q::from_integer(l.clone())).to_integer().to_i128().map(|c| (*k, c))).collect();
    if let (Some(scaled), Some(target)) = (scaled, target) {
        let mut acc: HashMap<usize, i128> = HashMap::new();
        for (j, c) in scaled {
            for (k, v) in &symbols[j].coeffs {
                let Some(s) = v.to_integer().to_i128() else { return slow_equals(symbols, x, y) };
                *acc.entry(*k).or_insert(0) += c * s;
            }
        }
        acc.retain(|_, v| *v != 0);
        return acc == target;
    }
    slow_equals(symbols, x, y)
}

fn slow_equals(symbols: &[OrientedChain], x: &[(usize, Q)], y: &OrientedChain) -> bool {
    let mut acc = OrientedChain::zero(y.degree);
    for (j, c) in x {
        acc = acc.add(&symbols[*j].scale(c));
    }
    acc == *y
}

impl SpanCertificate {
    /// symbol matrix · coefficients = image, exactly.
    pub fn verify(&self) -> bool {
        match self.status {
            SpanStatus::Vacuous => self.image.is_empty(),
            SpanStatus::NotContainedWithGenerators => self.residual > 0,
            SpanStatus::Contained => {
                self.coefficients.len() == self.image.len()
                    && self.image.iter().zip(&self.coefficients).all(|(y, x)| combination_equals(&self.symbols, x, y))
            }
        }
    }

    pub fn to_json(&self, q: &Quotient) -> Value {
        let generators: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                let b: Vec<Vec<String>> = g.basis.iter().map(|r| r.iter().map(|e| e.to_string_t()).collect()).collect();
                json!({ "basis": b, "level": q.level_label(&g.level), "d_gen": g.d_gen })
            })
            .collect();
        let coefficients: Vec<Value> = self
            .coefficients
            .iter()
            .map(|x| Value::Array(x.iter().map(|(j, v)| json!([j, v.numer().to_string(), v.denom().to_string()])).collect()))
            .collect();
        json!({
            "status": self.status,
            "alpha": self.alpha,
            "d_gen": self.d_gen,
            "image_dimension": self.image.len(),
            "symbols_used": self.symbols.len(),
            "generators_tried": self.tried,
            "distinct_symbols": self.distinct,
            "residual": self.residual,
            "verified": self.verify(),
            "generators": generators,
            "coefficients": coefficients,
        })
    }
}

/// Lifts solutions mod several primes to Q, accepting the first lift that
/// satisfies the system exactly.
fn exact_solution(symbols: &[OrientedChain], image: &[OrientedChain]) -> Result<Vec<Vec<(usize, Q)>>, ModsymError> {
    let mut residues: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); image.len()];
    let mut modulus = BigInt::one();
    for &p in &PRIMES {
        let s: Vec<ModVec> = symbols.iter().map(|z| to_modvec(z, p)).collect();
        let ys: Vec<ModVec> = image.iter().map(|z| to_modvec(z, p)).collect();
        let Ok(sol) = solve_mod(&s, &ys, p) else { continue };
        if sol.iter().any(|x| x.is_none()) {
            continue;
        }
        for (res, x) in residues.iter_mut().zip(&sol) {
            let xm: HashMap<usize, u64> = x.as_ref().unwrap().0.iter().map(|&(j, v)| (j as usize, v)).collect();
            let keys: HashSet<usize> = res.keys().chain(xm.keys()).copied().collect();
            for j in keys {
                let a = res.get(&j).cloned().unwrap_or_else(BigInt::zero);
                res.insert(j, crt(&a, &modulus, xm.get(&j).copied().unwrap_or(0), p));
            }
        }
        modulus *= BigInt::from(p);
        let lifted: Option<Vec<Vec<(usize, Q)>>> = residues
            .iter()
            .map(|res| {
                let mut v: Vec<(usize, Q)> = res
                    .iter()
                    .map(|(j, u)| rational_reconstruction(u, &modulus).map(|x| (*j, x)))
                    .collect::<Option<Vec<_>>>()?;
                v.retain(|(_, x)| !x.is_zero());
                v.sort_by_key(|e| e.0);
                Some(v)
            })
            .collect();
        if let Some(x) = lifted {
            if image.iter().zip(&x).all(|(y, c)| combination_equals(symbols, c, y)) {
                return Ok(x);
            }
        }
    }
    Err(ModsymError::Internal("no exact lift of the modular solution".into()))
}

/// Searches apartment symbols of increasing generator degree until the
/// image of H_{d-1} lies in their span.
pub fn span_test(q: &Quotient, bm: &BMResult, alpha: i64, policy: GeneratorPolicy) -> Result<SpanCertificate, ModsymError> {
    check_stable(q, bm, alpha)?;
    let image = image_cycles(q, alpha);
    let mut cert = SpanCertificate {
        status: SpanStatus::Vacuous,
        alpha,
        d_gen: 0,
        image,
        symbols: Vec::new(),
        generators: Vec::new(),
        coefficients: Vec::new(),
        residual: 0,
        tried: 0,
        distinct: 0,
    };
    if cert.image.is_empty() {
        return Ok(cert);
    }
    let d = q.d();
    let f = &q.canon.fq;
    let levels = if policy.all_levels && !q.canon.params.is_full_level() {
        level_group(d, &q.canon.ring, q.canon.params.enum_ceiling)?
    } else {
        vec![level_identity(d, &q.canon.ring)]
    };
    let p = PRIMES[0];
    let mut ech = ModEchelon::new(p, false);
    let mut resid: Vec<ModVec> = cert.image.iter().map(|z| to_modvec(z, p)).collect();
    let mut seen: HashSet<Vec<(usize, Q)>> = HashSet::new();
    for dgen in 0..=policy.max_d_gen {
        cert.d_gen = dgen;
        for basis in generators_of_degree(d, dgen, f, policy.max_generators)? {
            let plan = match SymbolPlan::new(q, &basis, alpha, policy.symbol) {
                Err(ModsymError::SingularBasis) => continue,
                r => r?,
            };
            for h in &levels {
                cert.tried += 1;
                if cert.tried > policy.max_generators {
                    return Err(ModsymError::GeneratorCeiling(policy.max_generators));
                }
                let z = plan.chain(q, h)?;
                if z.is_zero() || !seen.insert(z.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect()) {
                    continue;
                }
                if ech.insert(to_modvec(&z, p)).is_some() {
                    cert.symbols.push(z);
                    cert.generators.push(Generator { basis: basis.clone(), level: h.clone(), d_gen: dgen });
                }
            }
            if ech.rank() < resid.len() {
                continue;
            }
            for r in resid.iter_mut().filter(|r| !r.is_zero()) {
                *r = ech.reduce(std::mem::take(r)).0;
            }
            if resid.iter().all(|r| r.is_zero()) {
                cert.distinct = seen.len();
                cert.coefficients = exact_solution(&cert.symbols, &cert.image)?;
                cert.status = SpanStatus::Contained;
                return Ok(cert);
            }
        }
    }
    for r in resid.iter_mut().filter(|r| !r.is_zero()) {
        *r = ech.reduce(std::mem::take(r)).0;
    }
    cert.distinct = seen.len();
    cert.residual = resid.iter().filter(|r| !r.is_zero()).count();
    cert.status = if cert.residual == 0 {
        cert.coefficients = exact_solution(&cert.symbols, &cert.image)?;
        SpanStatus::Contained
    } else {
        SpanStatus::NotContainedWithGenerators
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_generator_counts() {
        let f = Fq::standard(2).unwrap();
        // dgen 0: the standard basis only
        assert_eq!(generators_of_degree(2, 0, &f, 1000).unwrap().len(), 1);
        // deg b in {1, 2}: b = t, t+1 with a = 1; b quadratic with a coprime of degree <= 1
        let g1 = generators_of_degree(2, 1, &f, 1000).unwrap();
        let quad: usize = Poly::monics_of_degree(2, &f)
            .iter()
            .map(|b| Poly::all_up_to(1, &f).iter().filter(|a| a.gcd(b, &f).is_one()).count())
            .sum();
        assert_eq!(g1.len(), 2 + quad);
        assert!(generators_of_degree(3, 1, &f, 10).is_err());
        assert_eq!(generators_of_degree(3, 0, &f, 1000).unwrap().len(), 511);
    }
}
