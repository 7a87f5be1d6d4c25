use crate::{Complex, ScError, Violation};

/// A finite window onto an exhausted complex. Every stored simplex carries a
/// level `theta`; it lies in `core(alpha)` exactly when `theta < alpha`, so the
/// cores are nested by construction. `complex` holds `core(max grid)` together
/// with whatever frontier simplices its members touch.
#[derive(Clone, Debug)]
pub struct ExhaustedComplex {
    pub complex: Complex,
    pub theta: Vec<Vec<i64>>,
    pub grid: Vec<i64>,
}

impl ExhaustedComplex {
    pub fn new(complex: Complex, theta: Vec<Vec<i64>>, mut grid: Vec<i64>) -> Result<Self, ScError> {
        let top = complex.dim().map_or(0, |d| d + 1);
        if theta.len() < top || (0..top).any(|i| theta[i].len() != complex.count(i)) {
            return Err(ScError::BadRecord("theta shape".into()));
        }
        grid.sort_unstable();
        grid.dedup();
        Ok(ExhaustedComplex { complex, theta, grid })
    }

    /// A finite complex seen as its own single core.
    pub fn finite(complex: Complex) -> Self {
        let top = complex.dim().map_or(0, |d| d + 1);
        let theta = (0..top).map(|i| vec![i64::MIN; complex.count(i)]).collect();
        ExhaustedComplex { complex, theta, grid: vec![0] }
    }

    pub fn alpha_max(&self) -> i64 {
        *self.grid.last().unwrap_or(&0)
    }

    pub fn in_core(&self, i: usize, idx: usize, alpha: i64) -> bool {
        self.theta[i][idx] < alpha
    }

    pub fn core_count(&self, i: usize, alpha: i64) -> usize {
        self.theta.get(i).map_or(0, |t| t.iter().filter(|&&x| x < alpha).count())
    }

    pub fn core_indices(&self, i: usize, alpha: i64) -> Vec<usize> {
        self.theta
            .get(i)
            .map_or(Vec::new(), |t| (0..t.len()).filter(|&k| t[k] < alpha).collect())
    }

    /// The frontier must be closed under faces: `theta(face) >= theta(σ)`.
    pub fn check_frontier_closed(&self) -> Vec<Violation> {
        let c = &self.complex;
        let mut out = Vec::new();
        for i in 1..=c.dim().unwrap_or(0) {
            for (idx, s) in c.simplices(i).iter().enumerate() {
                for m in 1..s.full_mask() {
                    let fd = m.count_ones() as usize - 1;
                    if self.theta[fd][s.faces[m]] < self.theta[i][idx] {
                        out.push(Violation {
                            simplex: s.key.clone(),
                            kind: crate::ViolationKind::MapFaces { mask: m },
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ComplexBuilder;

    #[test]
    fn ray_cores_are_nested() {
        let mut b = ComplexBuilder::new();
        for k in 0..6 {
            b.strict(&[&format!("v{k}"), &format!("v{}", k + 1)]);
        }
        let c = b.build().unwrap();
        let level = |k: &str| -> i64 { k.split('~').map(|v| v[1..].parse::<i64>().unwrap()).min().unwrap() };
        let theta = (0..2).map(|i| c.simplices(i).iter().map(|s| level(&s.key)).collect()).collect();
        let e = ExhaustedComplex::new(c, theta, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert!(e.check_frontier_closed().is_empty());
        for a in 1..6 {
            assert!(e.core_count(0, a) <= e.core_count(0, a + 1));
            assert_eq!(e.core_count(0, a), a as usize);
        }
    }
}
