use std::collections::HashMap;

use num_traits::Zero;
use scomplex::{permutation_parity, Complex, OrientedSimplexRef, SimplicialMap};

use crate::chain::OrientedChain;
use crate::linalg::Q;
use crate::HomError;

/// Parity of f(σ) as oriented by the images of σ's vertices in canonical order.
pub fn image_parity(f: &SimplicialMap, src: &Complex, i: usize, idx: usize) -> i8 {
    let img: Vec<usize> = src.simplex(i, idx).vertices.iter().map(|&v| f.image(0, v).unwrap()).collect();
    permutation_parity(&img)
}

/// Pushforward of a chain along a map whose fibers (over the whole source) stay
/// within `fiber_ceiling`.
pub fn pushforward(
    f: &SimplicialMap,
    src: &Complex,
    z: &OrientedChain,
    fiber_ceiling: usize,
) -> Result<OrientedChain, HomError> {
    let i = z.degree;
    let mut fiber: HashMap<usize, usize> = HashMap::new();
    for idx in 0..src.count(i) {
        *fiber.entry(f.image(i, idx).ok_or(HomError::UnknownSimplex(idx))?).or_default() += 1;
    }
    let mut out = OrientedChain::zero(i);
    for (idx, c) in &z.coeffs {
        let t = f.image(i, *idx).ok_or(HomError::UnknownSimplex(*idx))?;
        if fiber[&t] > fiber_ceiling {
            return Err(HomError::NonFiniteFiber(t));
        }
        out.add_oriented(OrientedSimplexRef { dim: i, index: t, parity: image_parity(f, src, i, *idx) }, c);
    }
    Ok(out)
}

/// Pullback along a level map: the coefficient at σ' is `e(σ')` times the
/// coefficient of f(σ') read in the orientation induced from σ'.
/// `ram[i][idx]` holds `e` for the source simplices.
pub fn pullback_ramified(
    f: &SimplicialMap,
    fine: &Complex,
    ram: &[Vec<u64>],
    z: &OrientedChain,
) -> Result<OrientedChain, HomError> {
    let i = z.degree;
    let e = ram.get(i).filter(|r| r.len() == fine.count(i)).ok_or(HomError::MissingRamificationData(i))?;
    let mut out = OrientedChain::zero(i);
    for idx in 0..fine.count(i) {
        let t = f.image(i, idx).ok_or(HomError::UnknownSimplex(idx))?;
        let c = z.get(t);
        if c.is_zero() {
            continue;
        }
        let w = c * Q::from_integer(e[idx].into());
        let p = image_parity(f, fine, i, idx);
        out.add_oriented(OrientedSimplexRef { dim: i, index: idx, parity: p }, &w);
    }
    Ok(out)
}

/// A permutation of degree-i simplices with orientation signs: `act[k] = (k', ε)`.
pub type SignedAction = Vec<(usize, i8)>;

pub fn act(a: &SignedAction, z: &OrientedChain) -> OrientedChain {
    let mut out = OrientedChain::zero(z.degree);
    for (k, c) in &z.coeffs {
        let (t, s) = a[*k];
        out.add_oriented(OrientedSimplexRef { dim: z.degree, index: t, parity: s }, c);
    }
    out
}

/// The averaging projector `|G|^{-1} Σ_g g`.
pub fn average(group: &[SignedAction], z: &OrientedChain) -> OrientedChain {
    let mut out = OrientedChain::zero(z.degree);
    for g in group {
        out = out.add(&act(g, z));
    }
    out.scale(&Q::new(1.into(), (group.len() as i64).into()))
}
