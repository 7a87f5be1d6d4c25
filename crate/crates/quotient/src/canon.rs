use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use ffield::{FieldSpec, Fq, InfinityLattice, Poly, RatFunc, Splitting};
use serde::{Deserialize, Serialize};

use crate::aut::{act_subspace, aut_order, EffectiveGroup};
use crate::level::{level_identity, level_label, level_mul, level_reduce, LevelMatrix, ResidueRing};
use crate::QuotientError;

pub const DEFAULT_AUT_CEILING: usize = 10_000_000;
pub const DEFAULT_ENUM_CEILING: usize = 2_000_000;

/// Parameters of the arithmetic quotient for the principal level (f).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientParams {
    pub field: FieldSpec,
    pub d: usize,
    /// Coefficients of the monic level polynomial, lowest first; [1] is full level.
    pub level: Vec<u32>,
    pub alpha_max: i64,
    #[serde(default = "default_aut")]
    pub aut_ceiling: usize,
    #[serde(default = "default_enum")]
    pub enum_ceiling: usize,
    #[serde(default = "default_series")]
    pub series_ceiling: i64,
}

fn default_aut() -> usize {
    DEFAULT_AUT_CEILING
}
fn default_enum() -> usize {
    DEFAULT_ENUM_CEILING
}
fn default_series() -> i64 {
    ffield::DEFAULT_SERIES_CEILING
}

impl QuotientParams {
    pub fn new(q: u32, d: usize, level: &[u32], alpha_max: i64) -> Result<QuotientParams, QuotientError> {
        let p = QuotientParams {
            field: FieldSpec::standard(q)?,
            d,
            level: level.to_vec(),
            alpha_max,
            aut_ceiling: DEFAULT_AUT_CEILING,
            enum_ceiling: DEFAULT_ENUM_CEILING,
            series_ceiling: ffield::DEFAULT_SERIES_CEILING,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), QuotientError> {
        self.field.validate()?;
        if self.d < 1 || self.d > ffield::MAX_DIM {
            return Err(QuotientError::BadParams(format!("d = {} outside 1..={}", self.d, ffield::MAX_DIM)));
        }
        if self.level.is_empty() || self.level.last() != Some(&1) || self.level.iter().any(|&c| c >= self.field.q()) {
            return Err(QuotientError::BadLevel(format!("{:?}", self.level)));
        }
        if self.level.len() > 4 {
            return Err(QuotientError::BadLevel("level degree exceeds 3".into()));
        }
        if self.alpha_max <= self.d as i64 - 1 {
            return Err(QuotientError::BadParams(format!("alpha_max = {} must exceed d - 1", self.alpha_max)));
        }
        if self.aut_ceiling == 0 || self.enum_ceiling == 0 || self.series_ceiling <= 0 {
            return Err(QuotientError::BadParams("ceilings must be positive".into()));
        }
        Ok(())
    }

    pub fn level_poly(&self) -> Poly {
        Poly::from_coeffs(self.level.iter().map(|&c| c as u8).collect())
    }

    pub fn is_full_level(&self) -> bool {
        self.level == [1]
    }
}

/// Canonical data of a quotient simplex computed from a pointed chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonSimplex {
    pub key: String,
    /// Pointed key with each chain member as base, in input order.
    pub pointed: Vec<String>,
    /// Quotient vertex key of each chain member, in input order.
    pub vertex_keys: Vec<String>,
    /// Splitting type (normalized) of each member, in input order.
    pub types: Vec<Vec<i64>>,
    /// Input position of the canonical base.
    pub rotation: usize,
    /// Rotations other than the canonical one with the same pointed key.
    pub self_identifications: usize,
}

impl CanonSimplex {
    pub fn dim(&self) -> usize {
        self.pointed.len() - 1
    }

    /// Vertex keys in chain order starting at the canonical base.
    pub fn canonical_order(&self) -> Vec<String> {
        let n = self.vertex_keys.len();
        (0..n).map(|k| self.vertex_keys[(self.rotation + k) % n].clone()).collect()
    }
}

/// The data of a pointed chain after moving its base to split form.
#[derive(Clone, Debug)]
pub struct Pointed {
    pub n: Vec<i64>,
    pub flag: Vec<Vec<Vec<u8>>>,
    pub level: LevelMatrix,
}

/// Γ-canonicalization of lattice chains with principal level data.
pub struct Canonicalizer {
    pub params: QuotientParams,
    pub fq: Fq,
    pub ring: ResidueRing,
    groups: Mutex<HashMap<Vec<i64>, Arc<EffectiveGroup>>>,
    splittings: Mutex<HashMap<InfinityLattice, Arc<Splitting>>>,
    /// Level-free part of `point` for every rotation of a chain:
    /// (type, flag, γ mod f).
    geometry: Mutex<HashMap<Vec<InfinityLattice>, Arc<Vec<Pointed>>>>,
}

fn hex(x: u8) -> char {
    char::from_digit(x as u32, 16).unwrap()
}

pub fn type_label(n: &[i64]) -> String {
    n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

pub fn flag_label(flag: &[Vec<Vec<u8>>]) -> String {
    flag.iter()
        .map(|w| w.iter().map(|r| r.iter().map(|&x| hex(x)).collect::<String>()).collect::<Vec<_>>().join(":"))
        .collect::<Vec<_>>()
        .join("/")
}

impl Canonicalizer {
    pub fn new(params: &QuotientParams) -> Result<Canonicalizer, QuotientError> {
        params.validate()?;
        let fq = Fq::new(params.field.clone())?;
        let ring = ResidueRing::new(&params.level_poly(), &fq)?;
        Ok(Canonicalizer { params: params.clone(), fq, ring, groups: Mutex::new(HashMap::new()), splittings: Mutex::new(HashMap::new()), geometry: Mutex::new(HashMap::new()) })
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn identity_level(&self) -> LevelMatrix {
        level_identity(self.d(), &self.ring)
    }

    /// The effective automorphism group of the split bundle of type n.
    pub fn group(&self, n: &[i64]) -> Result<Arc<EffectiveGroup>, QuotientError> {
        if let Some(g) = self.groups.lock().unwrap().get(n) {
            return Ok(g.clone());
        }
        let g = Arc::new(EffectiveGroup::new(n, &self.fq, &self.ring, self.params.aut_ceiling)?);
        self.groups.lock().unwrap().insert(n.to_vec(), g.clone());
        Ok(g)
    }

    fn splitting(&self, l: &InfinityLattice) -> Result<Arc<Splitting>, QuotientError> {
        if let Some(s) = self.splittings.lock().unwrap().get(l) {
            return Ok(s.clone());
        }
        let s = Arc::new(l.splitting(&self.fq)?);
        self.splittings.lock().unwrap().insert(l.clone(), s.clone());
        Ok(s)
    }

    /// Moves the base `chain[0]` to split form and reads off the flag in its
    /// fiber at ∞ together with the transported level.
    pub fn point(&self, chain: &[InfinityLattice], level: &[u16]) -> Result<Pointed, QuotientError> {
        Ok(self.with_level(&self.rotations(chain)?[0], level))
    }

    fn with_level(&self, geo: &Pointed, level: &[u16]) -> Pointed {
        let level = level_mul(level, &geo.level, self.d(), &self.ring);
        Pointed { n: geo.n.clone(), flag: geo.flag.clone(), level }
    }

    /// Level-free pointing of every rotation of the chain.
    fn rotations(&self, chain: &[InfinityLattice]) -> Result<Arc<Vec<Pointed>>, QuotientError> {
        if let Some(g) = self.geometry.lock().unwrap().get(chain) {
            return Ok(g.clone());
        }
        let g = Arc::new((0..chain.len()).map(|r| self.geometry_of(&self.rotate(chain, r))).collect::<Result<Vec<_>, _>>()?);
        self.geometry.lock().unwrap().insert(chain.to_vec(), g.clone());
        Ok(g)
    }

    /// `point` with the identity level, so that `level` holds γ mod f.
    fn geometry_of(&self, chain: &[InfinityLattice]) -> Result<Pointed, QuotientError> {
        let f = &self.fq;
        let d = self.d();
        let sp = self.splitting(&chain[0])?;
        let mut flag = Vec::with_capacity(chain.len() - 1);
        for m in &chain[1..] {
            let moved = m.act(&sp.gamma, f);
            let rows: Vec<Vec<u8>> = moved
                .rows()
                .iter()
                .map(|r| {
                    (0..d)
                        .map(|k| {
                            let y = r[k].mul(&RatFunc::t_pow(-sp.n[k]), f);
                            debug_assert!(y.is_zero() || y.val() >= 0);
                            y.value_at_infinity(f)
                        })
                        .collect()
                })
                .collect();
            flag.push(f.rref_basis(&rows));
        }
        let last = *sp.n.last().unwrap();
        Ok(Pointed { n: sp.n.iter().map(|x| x - last).collect(), flag, level: level_reduce(&sp.gamma, &self.ring, f) })
    }

    /// Minimum of the Aut-orbit of (flag, level), ordered by level then flag.
    /// The level minimum pins the level part, so only its fiber is scanned.
    pub fn minimize(&self, p: &Pointed) -> Result<(Vec<Vec<Vec<u8>>>, LevelMatrix), QuotientError> {
        let g = self.group(&p.n)?;
        let d = self.d();
        let (h, b) = g.coset_min(&p.level, &self.ring);
        if p.flag.is_empty() {
            return Ok((Vec::new(), h));
        }
        let w = g
            .fiber(&b)
            .iter()
            .map(|a| p.flag.iter().map(|w| act_subspace(w, a, d, &self.fq)).collect::<Vec<_>>())
            .min()
            .unwrap();
        Ok((w, h))
    }

    pub fn pointed_key(&self, n: &[i64], flag: &[Vec<Vec<u8>>], level: &[u16]) -> String {
        let mut key = type_label(n);
        if !self.params.is_full_level() {
            key.push('|');
            key.push_str(&level_label(level, self.d(), &self.ring));
        }
        if !flag.is_empty() {
            key.push('|');
            key.push_str(&flag_label(flag));
        }
        key
    }

    /// Quotient vertex key of a lattice with level structure.
    pub fn vertex_key(&self, l: &InfinityLattice, level: &[u16]) -> Result<String, QuotientError> {
        let p = self.point(std::slice::from_ref(l), level)?;
        let (w, h) = self.minimize(&p)?;
        Ok(self.pointed_key(&p.n, &w, &h))
    }

    /// The chain rotated to start at member r; earlier members move down by π.
    pub fn rotate(&self, chain: &[InfinityLattice], r: usize) -> Vec<InfinityLattice> {
        let n = chain.len();
        (0..n)
            .map(|k| {
                let j = (r + k) % n;
                if j < r {
                    chain[j].scale_t(-1, &self.fq)
                } else {
                    chain[j].clone()
                }
            })
            .collect()
    }

    /// Canonical key of the Γ_I-orbit of the chain L_0 ⊋ ... ⊋ L_i (⊋ πL_0)
    /// carrying the level structure `level`.
    pub fn canon_simplex(&self, chain: &[InfinityLattice], level: &[u16]) -> Result<CanonSimplex, QuotientError> {
        let n = chain.len();
        if n == 0 || n > self.d() {
            return Err(QuotientError::BadChain);
        }
        let mut pointed = Vec::with_capacity(n);
        let mut vertex_keys = Vec::with_capacity(n);
        let mut types = Vec::with_capacity(n);
        let geo = self.rotations(chain)?;
        for g in geo.iter() {
            let p = self.with_level(g, level);
            for w in p.flag.windows(2) {
                if w[0].len() <= w[1].len() {
                    return Err(QuotientError::BadChain);
                }
            }
            if p.flag.first().is_some_and(|w| w.len() >= self.d() || w.is_empty()) {
                return Err(QuotientError::BadChain);
            }
            let (w, h) = self.minimize(&p)?;
            pointed.push(self.pointed_key(&p.n, &w, &h));
            let vp = Pointed { n: p.n.clone(), flag: Vec::new(), level: p.level.clone() };
            let (_, vh) = self.minimize(&vp)?;
            vertex_keys.push(self.pointed_key(&p.n, &[], &vh));
            types.push(p.n);
        }
        let rotation = (0..n).min_by(|&a, &b| pointed[a].cmp(&pointed[b])).unwrap();
        let key = pointed[rotation].clone();
        let self_identifications = pointed.iter().filter(|k| **k == key).count() - 1;
        Ok(CanonSimplex { key, pointed, vertex_keys, types, rotation, self_identifications })
    }

    /// |Γ_I ∩ Stab(L_0, flag)| for the canonical data, given the full-level
    /// automorphism count.
    pub fn stabilizer_order(&self, n: &[i64], flag: &[Vec<Vec<u8>>]) -> Result<Option<u128>, QuotientError> {
        let g = self.group(n)?;
        let stab = g.flag_stabilizer(flag, &self.fq);
        let fiber: std::collections::HashSet<_> = g.elements.iter().map(|e| &e.0).collect();
        let fiber_stab: std::collections::HashSet<_> = stab.iter().map(|e| &e.0).collect();
        let level_img: std::collections::HashSet<_> = stab.iter().map(|e| &e.1).collect();
        let Some(aut) = aut_order(n, self.fq.q() as u32) else { return Ok(None) };
        let kernel = aut / fiber.len() as u128;
        Ok(Some(kernel * fiber_stab.len() as u128 / level_img.len() as u128))
    }
}
