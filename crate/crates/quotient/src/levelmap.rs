use std::collections::HashSet;

use homology::SignedAction;
use scomplex::{permutation_parity, SimplicialMap};

use crate::build::Quotient;
use crate::level::{level_mul, LevelMatrix};
use crate::QuotientError;

/// The projection from a finer level quotient to a coarser one, with the
/// ramification index of every source simplex.
#[derive(Clone, Debug)]
pub struct LevelMap {
    pub map: SimplicialMap,
    /// `ram[i][idx]` = e(σ') for the fine simplex σ' = (i, idx).
    pub ram: Vec<Vec<u64>>,
    /// |G_I'| / |G_I|
    pub degree: u64,
}

/// Reduces a fine level matrix to the coarse ring.
fn coarsen(fine: &Quotient, coarse: &Quotient, h: &[u16]) -> LevelMatrix {
    let f = &fine.canon.fq;
    h.iter().map(|&x| coarse.canon.ring.encode(&fine.canon.ring.decode(x), f)).collect()
}

pub fn level_map(fine: &Quotient, coarse: &Quotient) -> Result<LevelMap, QuotientError> {
    let (pf, pc) = (&fine.canon.params, &coarse.canon.params);
    let f = &fine.canon.fq;
    let fl = pf.level_poly();
    let cl = pc.level_poly();
    if pf.field != pc.field || pf.d != pc.d || pf.alpha_max != pc.alpha_max || !fl.rem(&cl, f).is_zero() {
        return Err(QuotientError::LevelsIncompatible(cl.to_string_t(), fl.to_string_t()));
    }
    let d = fine.d();
    let top = fine.simplices.len();
    let mut maps = vec![Vec::new(); top];
    let mut ram = vec![Vec::new(); top];
    for i in 0..top {
        for s in &fine.simplices[i] {
            let h = coarsen(fine, coarse, &s.level);
            let c = coarse.canon.canon_simplex(&s.witness, &h)?;
            let idx = coarse.complex().find_in(i, &c.key).ok_or_else(|| QuotientError::Internal(format!("{} missing at the coarse level", c.key)))?;
            maps[i].push(idx);
            // e = |image of the flag stabilizer mod I'| / |its image mod I|
            let p = fine.canon.point(&s.witness, &s.level)?;
            let g = fine.canon.group(&p.n)?;
            let stab = g.flag_stabilizer(&p.flag, f);
            let fine_img: HashSet<&LevelMatrix> = stab.iter().map(|e| &e.1).collect();
            let coarse_img: HashSet<LevelMatrix> = fine_img.iter().map(|b| coarsen(fine, coarse, b)).collect();
            ram[i].push((fine_img.len() / coarse_img.len()) as u64);
        }
    }
    let degree = (crate::level::level_group(d, &fine.canon.ring, pf.enum_ceiling)?.len()
        / crate::level::level_group(d, &coarse.canon.ring, pc.enum_ceiling)?.len()) as u64;
    Ok(LevelMap { map: SimplicialMap { maps }, ram, degree })
}

/// The action of k in G_I on the degree-i simplices by (σ, h) ↦ (σ, k h).
pub fn level_action(q: &Quotient, k: &[u16], i: usize) -> Result<SignedAction, QuotientError> {
    let c = q.complex();
    let d = q.d();
    let mut out = Vec::with_capacity(c.count(i));
    for (idx, s) in q.simplices[i].iter().enumerate() {
        let h = level_mul(k, &s.level, d, &q.canon.ring);
        let t = q.canon.canon_simplex(&s.witness, &h)?;
        let target = c.find_in(i, &t.key).ok_or_else(|| QuotientError::Internal(format!("{} left the window", t.key)))?;
        // vertices of the source in canonical order, followed to their images
        let order = s.canon.canonical_order();
        let images: Vec<usize> = c
            .simplex(i, idx)
            .vertices
            .iter()
            .map(|&v| {
                let pos = order.iter().position(|x| x == c.vertex_key(v)).unwrap();
                c.find_in(0, &t.vertex_keys[pos]).unwrap()
            })
            .collect();
        out.push((target, permutation_parity(&images)));
    }
    Ok(out)
}
