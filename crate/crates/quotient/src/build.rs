use std::collections::{BTreeMap, HashMap, HashSet};

use building::{star_flags, sublattice};
use ffield::InfinityLattice;
use scomplex::{ComplexBuilder, ExhaustedComplex};
use serde_json::{json, Value};

use crate::canon::{CanonSimplex, Canonicalizer, QuotientParams};
use crate::hn::{BundleClass, HnPolygon};
use crate::level::{level_group, level_label, level_mul, LevelMatrix};
use crate::QuotientError;

/// A quotient simplex with a chain witness pointed at its canonical base.
#[derive(Clone, Debug)]
pub struct QuotientSimplex {
    pub key: String,
    pub canon: CanonSimplex,
    pub witness: Vec<InfinityLattice>,
    pub level: LevelMatrix,
    pub theta: i64,
}

#[derive(Clone, Debug)]
pub struct QuotientVertex {
    pub key: String,
    pub class: BundleClass,
    pub deltas: Vec<i64>,
    pub stabilizer: Option<u128>,
}

/// The finite part of Γ_I \ BT_• holding core(alpha_max), with its exhaustion.
pub struct Quotient {
    pub canon: Canonicalizer,
    pub exhausted: ExhaustedComplex,
    /// Aligned with the complex: `simplices[i][idx]`.
    pub simplices: Vec<Vec<QuotientSimplex>>,
    pub vertices: Vec<QuotientVertex>,
    pub self_identifications: usize,
}

/// θ(s) = max_i min_{v in s} Δp_v(i).
pub fn simplex_level(types: &[Vec<i64>]) -> i64 {
    let deltas: Vec<Vec<i64>> = types.iter().map(|n| HnPolygon::of_type(n).deltas()).collect();
    let d1 = deltas[0].len();
    (0..d1).map(|i| deltas.iter().map(|v| v[i]).min().unwrap()).max().unwrap_or(0)
}

/// Types n_1 >= ... >= n_d = 0 with every gap at most `max_gap`.
pub fn types_up_to(d: usize, max_gap: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64]];
    for _ in 1..d {
        out = out
            .into_iter()
            .flat_map(|n| (0..=max_gap).map(move |g| [vec![n[0] + g], n.clone()].concat()))
            .collect();
    }
    out.sort();
    out
}

struct Assembler<'a> {
    canon: &'a Canonicalizer,
    builder: ComplexBuilder,
    memo: HashMap<(Vec<InfinityLattice>, LevelMatrix), CanonSimplex>,
    found: BTreeMap<String, QuotientSimplex>,
}

impl Assembler<'_> {
    fn canon_of(&mut self, chain: &[InfinityLattice], level: &LevelMatrix) -> Result<CanonSimplex, QuotientError> {
        // chains are built deterministically, so equal members have equal rows
        let mk = (chain.to_vec(), level.clone());
        if let Some(c) = self.memo.get(&mk) {
            return Ok(c.clone());
        }
        let c = self.canon.canon_simplex(chain, level)?;
        self.memo.insert(mk, c.clone());
        Ok(c)
    }

    fn add(&mut self, chain: &[InfinityLattice], level: &LevelMatrix) -> Result<String, QuotientError> {
        let c = self.canon_of(chain, level)?;
        if self.found.contains_key(&c.key) {
            return Ok(c.key);
        }
        let n = chain.len();
        if n == 1 {
            self.builder.vertex(&c.key);
        } else {
            let mut faces = Vec::new();
            for m in 1..(1usize << n) - 1 {
                let sub: Vec<usize> = (0..n).filter(|p| m >> p & 1 == 1).collect();
                let subchain: Vec<InfinityLattice> = sub.iter().map(|&p| chain[p].clone()).collect();
                let fk = self.add(&subchain, level)?;
                faces.push((sub.iter().map(|&p| c.vertex_keys[p].clone()).collect(), fk));
            }
            self.builder.simplex(&c.key, c.vertex_keys.clone(), faces);
        }
        let witness = self.canon.rotate(chain, c.rotation);
        let theta = simplex_level(&c.types);
        self.found.insert(c.key.clone(), QuotientSimplex { key: c.key.clone(), canon: c.clone(), witness, level: level.clone(), theta });
        Ok(c.key)
    }
}

/// Level-orbit representatives of the vertices of type n.
pub fn vertex_levels(canon: &Canonicalizer, n: &[i64], group: &[LevelMatrix]) -> Result<Vec<LevelMatrix>, QuotientError> {
    let g = canon.group(n)?;
    let img: HashSet<&LevelMatrix> = g.elements.iter().map(|e| &e.1).collect();
    let d = canon.d();
    let mut seen: HashSet<LevelMatrix> = HashSet::new();
    let mut reps = Vec::new();
    for h in group {
        if seen.contains(h) {
            continue;
        }
        let orbit: Vec<LevelMatrix> = img.iter().map(|b| level_mul(h, b, d, &canon.ring)).collect();
        reps.push(orbit.iter().min().unwrap().clone());
        seen.extend(orbit);
    }
    Ok(reps)
}

/// Assembles every simplex with θ < alpha_max, with all faces. A vertex of such
/// a simplex has all Δp gaps at most alpha_max, since adjacent types interlace.
pub fn quotient_complex(params: &QuotientParams) -> Result<Quotient, QuotientError> {
    let canon = Canonicalizer::new(params)?;
    let d = params.d;
    let group = level_group(d, &canon.ring, params.enum_ceiling)?;
    let flags = star_flags(d, &canon.fq);
    let mut asm = Assembler { canon: &canon, builder: ComplexBuilder::new(), memo: HashMap::new(), found: BTreeMap::new() };
    let mut budget = params.enum_ceiling;
    for n in types_up_to(d, params.alpha_max) {
        let base = InfinityLattice::diagonal(&n);
        let chains: Vec<Vec<InfinityLattice>> = flags
            .iter()
            .map(|flag| [vec![base.clone()], flag.iter().map(|w| sublattice(&base, w, &canon.fq)).collect()].concat())
            .collect();
        for h in vertex_levels(&canon, &n, &group)? {
            for chain in &chains {
                let c = asm.canon_of(chain, &h)?;
                if simplex_level(&c.types) < params.alpha_max {
                    asm.add(chain, &h)?;
                }
                budget = budget.checked_sub(1).ok_or_else(|| QuotientError::Ceiling("quotient enumeration".into()))?;
            }
        }
    }
    let complex = asm.builder.build()?;
    let top = complex.dim().map_or(0, |x| x + 1);
    let mut simplices: Vec<Vec<QuotientSimplex>> = vec![Vec::new(); top];
    for (i, dim) in simplices.iter_mut().enumerate() {
        for s in complex.simplices(i) {
            dim.push(asm.found[&s.key].clone());
        }
    }
    let theta = simplices.iter().map(|v| v.iter().map(|s| s.theta).collect()).collect();
    let self_identifications = simplices.iter().flatten().map(|s| s.canon.self_identifications).sum();
    let mut vertices = Vec::new();
    for s in simplices.first().map_or(&[][..], |v| &v[..]) {
        let n = &s.canon.types[0];
        let label = if params.is_full_level() {
            String::new()
        } else {
            s.key.split('|').nth(1).unwrap_or_default().to_string()
        };
        vertices.push(QuotientVertex {
            key: s.key.clone(),
            class: BundleClass::new(n, &label),
            deltas: HnPolygon::of_type(n).deltas(),
            stabilizer: canon.stabilizer_order(n, &[])?,
        });
    }
    let grid = (1..=params.alpha_max).collect();
    let exhausted = ExhaustedComplex::new(complex, theta, grid)?;
    drop(asm);
    Ok(Quotient { canon, exhausted, simplices, vertices, self_identifications })
}

impl Quotient {
    pub fn d(&self) -> usize {
        self.canon.d()
    }

    pub fn alpha_max(&self) -> i64 {
        self.canon.params.alpha_max
    }

    pub fn complex(&self) -> &scomplex::Complex {
        &self.exhausted.complex
    }

    /// Indices of the degree-i simplices in core(alpha).
    pub fn core(&self, i: usize, alpha: i64) -> Vec<usize> {
        self.exhausted.core_indices(i, alpha)
    }

    /// Canonical key of a chain at this level; it need not lie in the window.
    pub fn key_of(&self, chain: &[InfinityLattice], level: &[u16]) -> Result<CanonSimplex, QuotientError> {
        self.canon.canon_simplex(chain, level)
    }

    pub fn level_label(&self, h: &[u16]) -> String {
        level_label(h, self.d(), &self.canon.ring)
    }

    /// Vertex and simplex records for export next to the complex text.
    pub fn sidecar(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| {
                json!({
                    "key": v.key,
                    "type": v.class.n,
                    "level_orbit": v.class.level_orbit,
                    "delta_p": v.deltas,
                    "stabilizer_order": v.stabilizer.map(|s| s.to_string()),
                })
            })
            .collect();
        let simplices: Vec<Value> = self
            .simplices
            .iter()
            .flatten()
            .map(|s| {
                let n = s.canon.pointed.len();
                let pointed: Vec<&String> = (0..n).map(|k| &s.canon.pointed[(s.canon.rotation + k) % n]).collect();
                json!({
                    "key": s.key,
                    "dim": n - 1,
                    "vertices": s.canon.canonical_order(),
                    "pointed_rotations": pointed,
                    "theta": s.theta,
                })
            })
            .collect();
        json!({
            "d": self.d(),
            "q": self.canon.fq.q(),
            "level": self.canon.params.level,
            "alpha_max": self.alpha_max(),
            "self_identifications": self.self_identifications,
            "vertices": vertices,
            "simplices": simplices,
        })
    }
}
