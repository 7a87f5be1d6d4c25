use std::collections::{BTreeMap, HashMap};

use building::{apartment_orientation, point_lattice, window_top_simplices, ApartmentPoint};
use ffield::{Fq, InfinityLattice, Poly, RatFunc};
use homology::{boundary, OrientedChain, Q};
use quotient::{level_identity, simplex_level, vertex_level, LevelMatrix, Quotient};
use scomplex::permutation_parity;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ModsymError;

#[derive(Clone, Copy, Debug)]
pub struct SymbolOptions {
    /// The collar grows by d until it passes this radius, then gives up.
    pub max_radius: i64,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        SymbolOptions { max_radius: 96 }
    }
}

/// What the enumeration checked: every apartment point at spread `radius`
/// has θ at least `required_theta`, and no window simplex touching that
/// shell lies in the core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollarCertificate {
    pub initial_radius: i64,
    pub radius: i64,
    pub required_theta: i64,
    pub shell_points: usize,
    pub shell_min_theta: i64,
    pub shell_core_hits: usize,
    pub window_simplices: usize,
    pub core_simplices: usize,
    pub relative_cycle: bool,
    pub valid: bool,
}

#[derive(Clone, Debug)]
pub struct ModularSymbol {
    pub basis: Vec<Vec<RatFunc>>,
    pub level: LevelMatrix,
    pub alpha: i64,
    pub chain: OrientedChain,
    pub certificate: CollarCertificate,
}

impl ModularSymbol {
    pub fn to_json(&self, q: &Quotient) -> Value {
        let basis: Vec<Vec<String>> = self.basis.iter().map(|r| r.iter().map(|e| e.to_string_t()).collect()).collect();
        json!({
            "basis": basis,
            "level": q.level_label(&self.level),
            "alpha": self.alpha,
            "chain": self.chain.to_json(q.complex()),
            "certificate": self.certificate,
        })
    }
}

/// Largest entry degree of V once each row is cleared of denominators.
pub fn basis_degree(basis: &[Vec<RatFunc>], f: &Fq) -> i64 {
    let mut best = 0i64;
    for row in basis {
        let mut l = Poly::one();
        for e in row.iter().filter(|e| !e.is_zero()) {
            let g = l.gcd(e.den(), f);
            l = l.mul(&e.den().div_exact(&g, f), f);
        }
        for e in row.iter().filter(|e| !e.is_zero()) {
            best = best.max(e.num().deg_i() + l.deg_i() - e.den().deg_i());
        }
    }
    best
}

#[derive(Clone, Debug)]
struct Cell {
    chain: Vec<InfinityLattice>,
    /// Lift positions in the order of the apartment orientation.
    order: Vec<usize>,
}

/// The part of a symbol computation that does not depend on the level datum:
/// the collar and the apartment simplices that land in core(alpha).
#[derive(Clone, Debug)]
pub struct SymbolPlan {
    pub basis: Vec<Vec<RatFunc>>,
    pub alpha: i64,
    pub certificate: CollarCertificate,
    cells: Vec<Cell>,
}

fn normalized_type(l: &InfinityLattice, f: &Fq) -> Result<Vec<i64>, ModsymError> {
    let n = l.splitting(f)?.n;
    let last = *n.last().unwrap();
    Ok(n.into_iter().map(|x| x - last).collect())
}

impl SymbolPlan {
    pub fn new(q: &Quotient, basis: &[Vec<RatFunc>], alpha: i64, opts: SymbolOptions) -> Result<SymbolPlan, ModsymError> {
        let d = q.d();
        let f = &q.canon.fq;
        if basis.len() != d || basis.iter().any(|r| r.len() != d) {
            return Err(ModsymError::Shape(format!("basis must be {d}x{d}")));
        }
        if alpha < 1 || alpha > q.alpha_max() {
            return Err(ModsymError::AlphaOutOfRange(alpha));
        }
        point_lattice(basis, &vec![0; d], f)?;
        let required = alpha + d as i64;
        let r0 = 2 * d as i64 * (1 + basis_degree(basis, f));
        let mut types: HashMap<ApartmentPoint, Vec<i64>> = HashMap::new();
        let mut r = r0;
        loop {
            let sims = window_top_simplices(d, r);
            let mut shell: BTreeMap<ApartmentPoint, i64> = BTreeMap::new();
            let mut kept = Vec::new();
            let mut shell_hits = 0;
            for pts in &sims {
                let mut ts = Vec::with_capacity(d);
                let mut on_shell = false;
                for x in pts {
                    let p = ApartmentPoint::new(x);
                    if !types.contains_key(&p) {
                        let n = normalized_type(&point_lattice(basis, x, f)?, f)?;
                        types.insert(p.clone(), n);
                    }
                    let n = &types[&p];
                    if p.spread() == r {
                        on_shell = true;
                        shell.insert(p.clone(), vertex_level(n));
                    }
                    ts.push(n.clone());
                }
                if simplex_level(&ts) < alpha {
                    if on_shell {
                        shell_hits += 1;
                    }
                    kept.push(pts);
                }
            }
            let min_theta = shell.values().copied().min().unwrap_or(i64::MAX);
            if min_theta >= required && shell_hits == 0 {
                let mut cells = Vec::with_capacity(kept.len());
                for pts in kept {
                    let chain = pts.iter().map(|x| point_lattice(basis, x, f)).collect::<Result<Vec<_>, _>>()?;
                    let o = apartment_orientation(pts)?;
                    let order = o
                        .ordering
                        .iter()
                        .map(|p| pts.iter().position(|x| ApartmentPoint::new(x) == *p).unwrap())
                        .collect();
                    cells.push(Cell { chain, order });
                }
                let certificate = CollarCertificate {
                    initial_radius: r0,
                    radius: r,
                    required_theta: required,
                    shell_points: shell.len(),
                    shell_min_theta: min_theta,
                    shell_core_hits: 0,
                    window_simplices: sims.len(),
                    core_simplices: cells.len(),
                    relative_cycle: false,
                    valid: false,
                };
                return Ok(SymbolPlan { basis: basis.to_vec(), alpha, certificate, cells });
            }
            if r + d as i64 > opts.max_radius {
                return Err(ModsymError::CollarCheckFailed { radius: r, min_theta, required });
            }
            r += d as i64;
        }
    }

    /// The pushed-forward chain for level datum `level`, before any checks.
    pub fn chain(&self, q: &Quotient, level: &[u16]) -> Result<OrientedChain, ModsymError> {
        let c = q.complex();
        let top = q.d() - 1;
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for cell in &self.cells {
            let s = q.canon.canon_simplex(&cell.chain, level)?;
            if simplex_level(&s.types) >= self.alpha {
                return Err(ModsymError::Internal(format!("{} left the core", s.key)));
            }
            let idx = c.find_in(top, &s.key).ok_or_else(|| ModsymError::Internal(format!("{} is not assembled", s.key)))?;
            let verts: Vec<usize> = cell.order.iter().map(|&k| c.find_in(0, &s.vertex_keys[k]).unwrap()).collect();
            *acc.entry(idx).or_insert(0) += permutation_parity(&verts) as i64;
        }
        Ok(OrientedChain {
            degree: top,
            coeffs: acc.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, Q::from_integer(v.into()))).collect(),
        })
    }

    pub fn symbol(&self, q: &Quotient, level: &[u16]) -> Result<ModularSymbol, ModsymError> {
        let chain = self.chain(q, level)?;
        if !is_relative_cycle(q, &chain, self.alpha)? {
            return Err(ModsymError::NotRelativeCycle(self.alpha));
        }
        let mut certificate = self.certificate.clone();
        certificate.relative_cycle = true;
        certificate.valid = true;
        Ok(ModularSymbol { basis: self.basis.clone(), level: level.to_vec(), alpha: self.alpha, chain, certificate })
    }
}

/// The boundary vanishes on every ridge of core(alpha).
pub(crate) fn is_relative_cycle(q: &Quotient, z: &OrientedChain, alpha: i64) -> Result<bool, ModsymError> {
    if z.degree == 0 {
        return Ok(true);
    }
    let b = boundary(q.complex(), z)?;
    Ok(b.coeffs.keys().all(|&k| !q.exhausted.in_core(z.degree - 1, k, alpha)))
}

/// The class of the apartment of `basis` with level datum `level` (identity
/// when absent), restricted to core(alpha).
pub fn modular_symbol(
    q: &Quotient,
    basis: &[Vec<RatFunc>],
    alpha: i64,
    level: Option<&[u16]>,
) -> Result<ModularSymbol, ModsymError> {
    let plan = SymbolPlan::new(q, basis, alpha, SymbolOptions::default())?;
    let id = level_identity(q.d(), &q.canon.ring);
    plan.symbol(q, level.unwrap_or(&id))
}
