use serde::{Deserialize, Serialize};

use crate::{FfError, Fq, Poly};

pub const MAX_DIM: usize = 6;

/// Square matrix over F_q[t].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyMatrix {
    pub rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<Poly>>) -> Result<PolyMatrix, FfError> {
        let d = rows.len();
        if d == 0 || d > MAX_DIM {
            return Err(FfError::BadDimension(d));
        }
        if rows.iter().any(|r| r.len() != d) {
            return Err(FfError::Shape(format!("expected {d}x{d}")));
        }
        Ok(PolyMatrix { rows })
    }

    pub fn identity(d: usize) -> PolyMatrix {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect();
        PolyMatrix { rows }
    }

    pub fn from_fn(d: usize, mut g: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        PolyMatrix { rows: (0..d).map(|i| (0..d).map(|j| g(i, j)).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn max_degree(&self) -> i64 {
        self.rows.iter().flatten().map(|p| p.deg_i()).max().unwrap_or(-1)
    }

    pub fn row_degree(&self, i: usize) -> i64 {
        self.rows[i].iter().map(|p| p.deg_i()).max().unwrap_or(-1)
    }

    pub fn mul(&self, o: &PolyMatrix, f: &Fq) -> PolyMatrix {
        let n = self.rows.len();
        let m = o.rows[0].len();
        let k = o.rows.len();
        let rows = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..k).fold(Poly::zero(), |acc, l| {
                            acc.add(&self.rows[i][l].mul(&o.rows[l][j], f), f)
                        })
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { rows }
    }

    pub fn scale(&self, a: u8, f: &Fq) -> PolyMatrix {
        PolyMatrix { rows: self.rows.iter().map(|r| r.iter().map(|p| p.scale(a, f)).collect()).collect() }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let d = self.dim();
        PolyMatrix::from_fn(d, |i, j| self.rows[j][i].clone())
    }

    /// Reduce every entry modulo `m`.
    pub fn reduce_mod(&self, m: &Poly, f: &Fq) -> PolyMatrix {
        PolyMatrix { rows: self.rows.iter().map(|r| r.iter().map(|p| p.rem(m, f)).collect()).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self, f: &Fq) -> Poly {
        det_bareiss(self.rows.clone(), f)
    }

    pub fn adjugate(&self, f: &Fq) -> PolyMatrix {
        let d = self.dim();
        if d == 1 {
            return PolyMatrix::identity(1);
        }
        let mut adj = vec![vec![Poly::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let minor: Vec<Vec<Poly>> = (0..d)
                    .filter(|&r| r != i)
                    .map(|r| (0..d).filter(|&c| c != j).map(|c| self.rows[r][c].clone()).collect())
                    .collect();
                let m = det_bareiss(minor, f);
                adj[j][i] = if (i + j) % 2 == 1 { m.neg(f) } else { m };
            }
        }
        PolyMatrix { rows: adj }
    }

    /// Inverse of a matrix with determinant in F_q^x.
    pub fn inverse_unimodular(&self, f: &Fq) -> Result<PolyMatrix, FfError> {
        let det = self.det(f);
        if det.deg() != Some(0) {
            return Err(FfError::SingularMatrix);
        }
        Ok(self.adjugate(f).scale(f.inv(det.lead()), f))
    }

    pub fn is_unimodular(&self, f: &Fq) -> bool {
        self.det(f).deg() == Some(0)
    }
}

fn det_bareiss(mut m: Vec<Vec<Poly>>, f: &Fq) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign_neg = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, s);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k], f).sub(&m[i][k].mul(&m[k][j], f), f);
                m[i][j] = v.div_exact(&prev, f);
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        d.neg(f)
    } else {
        d
    }
}

/// Output of [`weak_popov`]: `r = u * m`, rows sorted by degree (descending)
/// then pivot column (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakPopov {
    pub r: PolyMatrix,
    pub u: PolyMatrix,
    pub degs: Vec<i64>,
}

/// Pivot of a nonzero row: rightmost column attaining the row degree.
fn pivot(row: &[Poly]) -> Option<(usize, usize)> {
    let deg = row.iter().filter_map(|p| p.deg()).max()?;
    let col = (0..row.len()).rev().find(|&j| row[j].deg() == Some(deg))?;
    Some((col, deg))
}

/// Row reduction to weak Popov form by simple transformations.
pub fn weak_popov(m: &PolyMatrix, f: &Fq) -> Result<WeakPopov, FfError> {
    let d = m.dim();
    let mut r = m.rows.clone();
    let mut u = PolyMatrix::identity(d).rows;
    loop {
        let mut piv = Vec::with_capacity(d);
        for row in &r {
            piv.push(pivot(row).ok_or(FfError::SingularMatrix)?);
        }
        let mut clash = None;
        'outer: for a in 0..d {
            for b in a + 1..d {
                if piv[a].0 == piv[b].0 {
                    clash = Some((a, b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = clash else { break };
        // reduce the row of larger pivot degree by the other
        let (hi, lo) = if piv[a].1 >= piv[b].1 { (a, b) } else { (b, a) };
        let col = piv[hi].0;
        let shift = piv[hi].1 - piv[lo].1;
        let c = f.div(r[hi][col].lead(), r[lo][col].lead());
        for j in 0..d {
            let s = r[lo][j].scale(c, f).shift(shift);
            r[hi][j] = r[hi][j].sub(&s, f);
            let s = u[lo][j].scale(c, f).shift(shift);
            u[hi][j] = u[hi][j].sub(&s, f);
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    let keys: Vec<(i64, usize)> =
        r.iter().map(|row| pivot(row).map(|(c, g)| (g as i64, c)).unwrap()).collect();
    order.sort_by(|&x, &y| keys[y].0.cmp(&keys[x].0).then(keys[x].1.cmp(&keys[y].1)));
    let degs = order.iter().map(|&i| keys[i].0).collect();
    let r = PolyMatrix { rows: order.iter().map(|&i| r[i].clone()).collect() };
    let u = PolyMatrix { rows: order.iter().map(|&i| u[i].clone()).collect() };
    Ok(WeakPopov { r, u, degs })
}

/// Whether the pivot columns of the rows are pairwise distinct.
pub fn is_weak_popov(m: &PolyMatrix) -> bool {
    let mut seen = Vec::new();
    for row in &m.rows {
        match pivot(row) {
            None => return false,
            Some((c, _)) if seen.contains(&c) => return false,
            Some((c, _)) => seen.push(c),
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[u8]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    fn random_poly(rng: &mut impl Rng, f: &Fq, max_deg: usize) -> Poly {
        Poly::from_coeffs((0..=max_deg).map(|_| rng.gen_range(0..f.q())).collect())
    }

    /// Product of random elementary matrices; entries of degree about `deg`.
    pub(crate) fn random_unimodular(rng: &mut impl Rng, f: &Fq, d: usize, deg: usize) -> PolyMatrix {
        let mut u = PolyMatrix::identity(d);
        for _ in 0..2 * d {
            let i = rng.gen_range(0..d);
            let j = rng.gen_range(0..d);
            let mut e = PolyMatrix::identity(d);
            if i == j {
                e.rows[i][i] = Poly::constant(rng.gen_range(1..f.q()));
            } else {
                e.rows[i][j] = random_poly(rng, f, deg);
            }
            u = e.mul(&u, f);
        }
        u
    }

    #[test]
    fn identity_is_reduced() {
        let f = Fq::standard(3).unwrap();
        let id = PolyMatrix::identity(3);
        let wp = weak_popov(&id, &f).unwrap();
        assert_eq!(wp.degs, vec![0, 0, 0]);
        assert!(wp.u.is_unimodular(&f));
        assert_eq!(wp.u.mul(&id, &f), wp.r);
    }

    #[test]
    fn two_by_two_over_f2() {
        let f = Fq::standard(2).unwrap();
        let m = PolyMatrix::new(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[])]]).unwrap();
        let wp = weak_popov(&m, &f).unwrap();
        assert_eq!(wp.degs, vec![0, 0]);
        let mut rows = wp.r.rows.clone();
        rows.sort();
        assert_eq!(rows, vec![vec![p(&[]), p(&[1])], vec![p(&[1]), p(&[])]]);
        assert_eq!(wp.u.mul(&m, &f), wp.r);
    }

    /// Oracle for the example above: search all U with entries of degree <= 2
    /// and det in F_2^x, and record the minimal achievable sorted row degrees.
    #[test]
    fn two_by_two_minimal_degrees_by_search() {
        let f = Fq::standard(2).unwrap();
        let m = PolyMatrix::new(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[])]]).unwrap();
        let polys = Poly::all_up_to(2, &f);
        let mut best: Option<Vec<i64>> = None;
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    for d in &polys {
                        let u = PolyMatrix::new(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
                        if !u.is_unimodular(&f) {
                            continue;
                        }
                        let r = u.mul(&m, &f);
                        let mut degs = vec![r.row_degree(0), r.row_degree(1)];
                        degs.sort_by(|x, y| y.cmp(x));
                        if best.as_ref().map_or(true, |b| degs < *b) {
                            best = Some(degs);
                        }
                    }
                }
            }
        }
        assert_eq!(best.unwrap(), vec![0, 0]);
    }

    #[test]
    fn singular_rejected() {
        let f = Fq::standard(2).unwrap();
        let m = PolyMatrix::new(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[0, 0, 1]), p(&[0, 1])]]).unwrap();
        assert_eq!(weak_popov(&m, &f), Err(FfError::SingularMatrix));
    }

    #[test]
    fn bareiss_matches_cofactor_on_3x3() {
        let f = Fq::standard(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = PolyMatrix::from_fn(3, |_, _| random_poly(&mut rng, &f, 2));
            let r = &m.rows;
            let mut cof = Poly::zero();
            for j in 0..3 {
                // cyclic minors carry a uniform sign
                let a = &r[1][(j + 1) % 3];
                let b = &r[1][(j + 2) % 3];
                let c = &r[2][(j + 1) % 3];
                let d = &r[2][(j + 2) % 3];
                let minor = a.mul(d, &f).sub(&b.mul(c, &f), &f);
                cof = cof.add(&r[0][j].mul(&minor, &f), &f);
            }
            assert_eq!(m.det(&f), cof);
            let adj = m.adjugate(&f);
            let prod = m.mul(&adj, &f);
            let det = m.det(&f);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(prod.rows[i][j], if i == j { det.clone() } else { Poly::zero() });
                }
            }
        }
    }

    #[test]
    fn scalar_multiple_keeps_degrees() {
        let f = Fq::standard(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = PolyMatrix::from_fn(3, |_, _| random_poly(&mut rng, &f, 2));
            let Ok(wp) = weak_popov(&m, &f) else { continue };
            let wp2 = weak_popov(&m.scale(2, &f), &f).unwrap();
            assert_eq!(wp.degs, wp2.degs);
        }
    }

    #[test]
    fn reduction_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2, 3, 4] {
            let f = Fq::standard(q).unwrap();
            for d in 1..=4 {
                for _ in 0..20 {
                    let m = PolyMatrix::from_fn(d, |_, _| random_poly(&mut rng, &f, 3));
                    let Ok(wp) = weak_popov(&m, &f) else {
                        assert!(m.det(&f).is_zero());
                        continue;
                    };
                    assert!(is_weak_popov(&wp.r));
                    assert!(wp.u.is_unimodular(&f));
                    assert_eq!(wp.u.mul(&m, &f), wp.r);
                    // sum of row degrees equals deg det for reduced forms
                    assert_eq!(wp.degs.iter().sum::<i64>(), m.det(&f).deg_i());
                    // idempotent
                    let again = weak_popov(&wp.r, &f).unwrap();
                    assert_eq!(again.degs, wp.degs);
                    assert_eq!(again.r, wp.r);
                }
            }
        }
    }

    #[test]
    fn degrees_invariant_under_all_small_unimodular() {
        let f = Fq::standard(2).unwrap();
        let m = PolyMatrix::new(vec![vec![p(&[1, 1, 1]), p(&[0, 1])], vec![p(&[1]), p(&[1, 0, 1])]]).unwrap();
        let base = weak_popov(&m, &f).unwrap().degs;
        let polys = Poly::all_up_to(3, &f);
        let mut checked = 0;
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    for d in &polys {
                        let u = PolyMatrix { rows: vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]] };
                        if !u.is_unimodular(&f) {
                            continue;
                        }
                        assert_eq!(weak_popov(&u.mul(&m, &f), &f).unwrap().degs, base);
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 384);
    }

    #[test]
    fn degrees_invariant_under_random_unimodular() {
        let f = Fq::standard(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = PolyMatrix::from_fn(3, |_, _| random_poly(&mut rng, &f, 2));
            let Ok(wp) = weak_popov(&m, &f) else { continue };
            let u = random_unimodular(&mut rng, &f, 3, 3);
            assert!(u.is_unimodular(&f));
            assert_eq!(weak_popov(&u.mul(&m, &f), &f).unwrap().degs, wp.degs);
        }
    }
}
