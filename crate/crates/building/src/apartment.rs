use std::collections::HashMap;

use ffield::{Fq, InfinityLattice, RatFunc};
use homology::{pushforward, OrientedChain, Q};
use scomplex::{permutation_parity, Complex, ComplexBuilder, SimplicialMap};

use crate::{add_chain, vertex_canonical, BuildingError, BuildingSimplex, VertexKey};

/// A point of Z^d / Z(1,...,1), stored with minimum coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApartmentPoint(pub Vec<i64>);

impl ApartmentPoint {
    pub fn new(x: &[i64]) -> ApartmentPoint {
        let m = x.iter().copied().min().unwrap_or(0);
        ApartmentPoint(x.iter().map(|v| v - m).collect())
    }

    pub fn key(&self) -> String {
        let c: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        format!("p{}", c.join("."))
    }

    pub fn spread(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// A small lift x_0 ⪇ x_1 ⪇ ... ⪇ x_i ⪇ x_0 + (1,...,1) of a set of points,
/// starting at the lift of the first point.
pub fn small_lift(points: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, BuildingError> {
    let p0 = points.first().ok_or(BuildingError::NotSmall)?;
    let mut lifted = Vec::with_capacity(points.len());
    for y in points {
        if y.len() != p0.len() {
            return Err(BuildingError::NotSmall);
        }
        let diff: Vec<i64> = y.iter().zip(p0).map(|(a, b)| a - b).collect();
        let k = *diff.iter().min().unwrap();
        if diff.iter().any(|&x| x - k > 1) {
            return Err(BuildingError::NotSmall);
        }
        lifted.push(y.iter().map(|a| a - k).collect::<Vec<i64>>());
    }
    lifted.sort_by_key(|x| x.iter().sum::<i64>());
    for w in lifted.windows(2) {
        if w[0] == w[1] || w[0].iter().zip(&w[1]).any(|(a, b)| a > b) {
            return Err(BuildingError::NotSmall);
        }
    }
    Ok(lifted)
}

/// Lattice O π^{x_1} v_1 ⊕ ... ⊕ O π^{x_d} v_d.
pub fn point_lattice(basis: &[Vec<RatFunc>], x: &[i64], f: &Fq) -> Result<InfinityLattice, BuildingError> {
    let rows = basis
        .iter()
        .zip(x)
        .map(|(v, &n)| v.iter().map(|e| e.mul(&RatFunc::t_pow(-n), f)).collect())
        .collect();
    InfinityLattice::new(rows, f).map_err(|_| BuildingError::SingularBasis)
}

/// The image of a small subset of the apartment of `basis` in the building,
/// pointed at its canonical rotation.
pub fn apartment_simplex(basis: &[Vec<RatFunc>], sigma: &[Vec<i64>], f: &Fq) -> Result<BuildingSimplex, BuildingError> {
    let lift = small_lift(sigma)?;
    let chain = lift.iter().map(|x| point_lattice(basis, x, f)).collect::<Result<Vec<_>, _>>()?;
    Ok(BuildingSimplex::new(chain, f)?.canonical_rotation(f))
}

/// The orientation class of a top simplex: the vertex ordering together with
/// its parity relative to ascending point keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartmentOrientation {
    pub ordering: Vec<ApartmentPoint>,
    pub parity: i8,
}

/// For a small lift x_1 ⪇ ... ⪇ x_d with x_0 = x_d - (1,...,1), `w[i-1]` is the
/// coordinate raised by the step x_i - x_{i-1}.
pub fn step_permutation(lift: &[Vec<i64>]) -> Vec<usize> {
    let d = lift.len();
    let x0: Vec<i64> = lift[d - 1].iter().map(|v| v - 1).collect();
    (0..d)
        .map(|i| {
            let prev = if i == 0 { &x0 } else { &lift[i - 1] };
            lift[i].iter().zip(prev).position(|(a, b)| a != b).unwrap()
        })
        .collect()
}

pub fn apartment_orientation(sigma: &[Vec<i64>]) -> Result<ApartmentOrientation, BuildingError> {
    let d = sigma.first().map_or(0, |x| x.len());
    if sigma.len() != d {
        return Err(BuildingError::WrongDimension(sigma.len()));
    }
    let lift = small_lift(sigma)?;
    let w = step_permutation(&lift);
    // position i carries the point reached by the step in coordinate i
    let ordering: Vec<ApartmentPoint> = (0..d)
        .map(|i| ApartmentPoint::new(&lift[w.iter().position(|&c| c == i).unwrap()]))
        .collect();
    let keys: Vec<String> = ordering.iter().map(|p| p.key()).collect();
    Ok(ApartmentOrientation { parity: permutation_parity(&keys), ordering })
}

/// The finite window {x : max x - min x <= r} of the apartment as a complex
/// keyed by point keys, with the lattice point behind each vertex.
#[derive(Clone, Debug)]
pub struct ApartmentWindow {
    pub d: usize,
    pub radius: i64,
    pub complex: Complex,
    pub points: Vec<ApartmentPoint>,
}

fn for_each_permutation(d: usize, mut g: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..d).collect();
    // Heap's algorithm
    let mut c = vec![0usize; d];
    g(&p);
    let mut i = 0;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            g(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Top simplices of the apartment inside the window, as point lists in lift order.
pub fn window_top_simplices(d: usize, r: i64) -> Vec<Vec<Vec<i64>>> {
    let mut bases = vec![vec![]];
    for _ in 0..d {
        bases = bases
            .into_iter()
            .flat_map(|b: Vec<i64>| (0..=r).map(move |v| [b.clone(), vec![v]].concat()))
            .collect();
    }
    bases.retain(|b| b.iter().min() == Some(&0));
    let mut out = Vec::new();
    for base in bases {
        for_each_permutation(d, |w| {
            let mut pts = vec![base.clone()];
            for &c in &w[..d - 1] {
                let mut x = pts.last().unwrap().clone();
                x[c] += 1;
                pts.push(x);
            }
            if pts.iter().all(|x| ApartmentPoint::new(x).spread() <= r) {
                out.push(pts);
            }
        });
    }
    out
}

impl ApartmentWindow {
    pub fn new(d: usize, r: i64) -> ApartmentWindow {
        let mut b = ComplexBuilder::new();
        b.vertex(&ApartmentPoint(vec![0; d]).key());
        for pts in window_top_simplices(d, r) {
            let keys: Vec<String> = pts.iter().map(|x| ApartmentPoint::new(x).key()).collect();
            let refs: Vec<&str> = keys.iter().map(|s| s.as_str()).collect();
            b.strict(&refs);
        }
        let complex = b.build().expect("window complex");
        let points = complex.simplices(0).iter().map(|s| parse_point(&s.key)).collect();
        ApartmentWindow { d, radius: r, complex, points }
    }

    pub fn simplex_points(&self, i: usize, idx: usize) -> Vec<Vec<i64>> {
        self.complex.simplex(i, idx).vertices.iter().map(|&v| self.points[v].0.clone()).collect()
    }

    /// The restriction of β: every top simplex with coefficient ±1 from its orientation.
    pub fn beta(&self) -> OrientedChain {
        let top = self.d - 1;
        let mut z = OrientedChain::zero(top);
        for idx in 0..self.complex.count(top) {
            let o = apartment_orientation(&self.simplex_points(top, idx)).expect("top simplex");
            z.coeffs.insert(idx, Q::from_integer(o.parity.into()));
        }
        z
    }

    /// (d-2)-simplices with both of their top cofaces inside the window.
    pub fn interior_ridges(&self) -> Vec<usize> {
        if self.d < 2 {
            return Vec::new();
        }
        let (top, ridge) = (self.d - 1, self.d - 2);
        let mut count = vec![0usize; self.complex.count(ridge)];
        for idx in 0..self.complex.count(top) {
            for pos in 0..self.d {
                count[self.complex.drop_position(top, idx, pos)] += 1;
            }
        }
        (0..count.len()).filter(|&k| count[k] == 2).collect()
    }

    /// The image of the window under ι for `basis`, and the map onto it.
    pub fn image(&self, basis: &[Vec<RatFunc>], f: &Fq) -> Result<(Complex, SimplicialMap), BuildingError> {
        let mut keys: HashMap<&ApartmentPoint, VertexKey> = HashMap::new();
        for p in &self.points {
            keys.insert(p, vertex_canonical(&point_lattice(basis, &p.0, f)?, f));
        }
        let mut b = ComplexBuilder::new();
        let top = self.complex.dim().unwrap_or(0);
        let mut chain_keys: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        for i in 0..=top {
            for idx in 0..self.complex.count(i) {
                let lift = small_lift(&self.simplex_points(i, idx))?;
                let ks: Vec<VertexKey> = lift.iter().map(|x| keys[&ApartmentPoint::new(x)].clone()).collect();
                chain_keys[i].push(add_chain(&mut b, &ks));
            }
        }
        let image = b.build()?;
        let maps = chain_keys
            .iter()
            .enumerate()
            .map(|(i, ks)| ks.iter().map(|k| image.find_in(i, k).expect("added")).collect())
            .collect();
        Ok((image, SimplicialMap { maps }))
    }
}

pub fn parse_point(key: &str) -> ApartmentPoint {
    ApartmentPoint(key[1..].split('.').map(|v| v.parse().unwrap()).collect())
}

/// β on the window pushed into the building through ι; the complex returned is
/// the image of the window.
pub fn fundamental_chain(
    basis: &[Vec<RatFunc>],
    window: &ApartmentWindow,
    f: &Fq,
) -> Result<(Complex, OrientedChain), BuildingError> {
    let (image, map) = window.image(basis, f)?;
    let beta = window.beta();
    let z = pushforward(&map, &window.complex, &beta, 1).map_err(|_| BuildingError::NotInjective)?;
    Ok((image, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_and_smallness() {
        assert_eq!(small_lift(&[vec![1, 0], vec![0, 0]]).unwrap(), vec![vec![1, 0], vec![1, 1]]);
        assert!(small_lift(&[vec![2, 0], vec![0, 0]]).is_err());
        assert!(small_lift(&[vec![1, 1], vec![0, 0]]).is_err());
        assert!(small_lift(&[vec![1, 0, 0], vec![0, 1, 0]]).is_err());
    }

    #[test]
    fn edge_orientations_on_the_line() {
        // {(0,0),(1,0)}: steps (0,1) then (1,0), w = transposition
        let a = apartment_orientation(&[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(a.ordering, vec![ApartmentPoint(vec![1, 0]), ApartmentPoint(vec![0, 0])]);
        // {(0,0),(0,1)}: w = identity, ordering starts at the base point
        let b = apartment_orientation(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(b.ordering, vec![ApartmentPoint(vec![0, 0]), ApartmentPoint(vec![0, 1])]);
        // relative to "base point first" the two parities are opposite
        assert_ne!(a.ordering[0] == ApartmentPoint(vec![0, 0]), b.ordering[0] == ApartmentPoint(vec![0, 0]));
        assert!(apartment_orientation(&[vec![0, 0]]).is_err());
    }

    #[test]
    fn window_sizes() {
        // d = 2: the line segment of points with spread <= r has 2r+1 vertices
        let w = ApartmentWindow::new(2, 3);
        assert_eq!(w.complex.count(0), 7);
        assert_eq!(w.complex.count(1), 6);
        assert_eq!(w.interior_ridges().len(), 5);
        let w1 = ApartmentWindow::new(1, 2);
        assert_eq!(w1.complex.count(0), 1);
        assert_eq!(w1.beta().coeffs.len(), 1);
    }
}
