use std::collections::BTreeMap;

use crate::{Complex, Violation, ViolationKind};

/// `maps[i][idx]` is the image of simplex `idx` of dimension `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub maps: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(c: &Complex) -> SimplicialMap {
        let top = c.dim().map_or(0, |d| d + 1);
        SimplicialMap { maps: (0..top).map(|i| (0..c.count(i)).collect()).collect() }
    }

    pub fn image(&self, i: usize, idx: usize) -> Option<usize> {
        self.maps.get(i).and_then(|m| m.get(idx)).copied()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| m.iter().map(|&x| g.image(i, x).unwrap_or(usize::MAX)).collect())
            .collect();
        SimplicialMap { maps }
    }
}

/// Checks the map axioms: vertices of σ go injectively onto the vertices of
/// f(σ), and f commutes with taking faces.
pub fn check_simplicial_map(f: &SimplicialMap, src: &Complex, tgt: &Complex) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..=src.dim().unwrap_or(0) {
        for (idx, s) in src.simplices(i).iter().enumerate() {
            let bad = |kind| Violation { simplex: s.key.clone(), kind };
            let Some(fi) = f.image(i, idx).filter(|&x| x < tgt.count(i)) else {
                out.push(bad(ViolationKind::MapUndefined));
                continue;
            };
            let img: Option<Vec<usize>> = s.vertices.iter().map(|&v| f.image(0, v)).collect();
            let Some(img) = img else {
                out.push(bad(ViolationKind::MapUndefined));
                continue;
            };
            let mut sorted = img.clone();
            sorted.sort_unstable();
            if sorted != tgt.simplex(i, fi).vertices {
                out.push(bad(ViolationKind::MapVertices));
                continue;
            }
            for m in 1..s.full_mask() {
                let fd = m.count_ones() as usize - 1;
                let sub: Vec<usize> = (0..img.len()).filter(|p| m >> p & 1 == 1).map(|p| img[p]).collect();
                let expect = tgt.face(i, fi, &sub).ok();
                if f.image(fd, s.faces[m]) != expect {
                    out.push(bad(ViolationKind::MapFaces { mask: m }));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    /// Preimage counts for each probe, in probe order.
    pub fibers: Vec<(String, usize)>,
    /// Probes whose fiber exceeded the ceiling.
    pub flagged: Vec<String>,
    pub scanned: usize,
    /// Whether the source enumeration ran to its end.
    pub exhausted: bool,
}

impl FiberReport {
    pub fn ok(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Counts preimages of the probe keys among `images` (the target key of each
/// source simplex, possibly an endless stream). Scanning stops after
/// `max_scan` items or once every probe is over the ceiling.
pub fn check_finite_map<I>(images: I, probes: &[String], ceiling: usize, max_scan: usize) -> FiberReport
where
    I: IntoIterator<Item = String>,
{
    let mut counts: BTreeMap<&str, usize> = probes.iter().map(|p| (p.as_str(), 0)).collect();
    let mut over = 0usize;
    let mut scanned = 0usize;
    let mut it = images.into_iter();
    let mut exhausted = false;
    while scanned < max_scan && over < counts.len() {
        let Some(k) = it.next() else {
            exhausted = true;
            break;
        };
        scanned += 1;
        if let Some(c) = counts.get_mut(k.as_str()) {
            *c += 1;
            if *c == ceiling + 1 {
                over += 1;
            }
        }
    }
    let fibers: Vec<(String, usize)> = probes.iter().map(|p| (p.clone(), counts[p.as_str()])).collect();
    let flagged = fibers.iter().filter(|(_, n)| *n > ceiling).map(|(p, _)| p.clone()).collect();
    FiberReport { fibers, flagged, scanned, exhausted }
}
