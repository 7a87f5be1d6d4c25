use std::collections::{BTreeMap, HashMap};

use crate::ScError;

/// A sealed simplex record. `vertices` holds vertex indices in ascending key
/// order; `faces[mask]` is the index (in dimension `popcount(mask) - 1`) of the
/// face spanned by the vertices selected by `mask`. `faces[0]` is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexRecord {
    pub key: String,
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
}

impl SimplexRecord {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn full_mask(&self) -> usize {
        (1 << self.vertices.len()) - 1
    }
}

/// A finite generalized simplicial complex. Distinct simplices may share a
/// vertex set; they are told apart by their keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    dims: Vec<Vec<SimplexRecord>>,
    index: HashMap<String, (usize, usize)>,
}

pub fn key_is_valid(k: &str) -> bool {
    !k.is_empty() && !k.contains([' ', '\t', '\n', '\r', ','])
}

impl Complex {
    pub fn empty() -> Complex {
        Complex::default()
    }

    /// Highest dimension with at least one simplex.
    pub fn dim(&self) -> Option<usize> {
        self.dims.iter().rposition(|v| !v.is_empty())
    }

    pub fn count(&self, i: usize) -> usize {
        self.dims.get(i).map_or(0, |v| v.len())
    }

    pub fn total(&self) -> usize {
        self.dims.iter().map(|v| v.len()).sum()
    }

    pub fn simplices(&self, i: usize) -> &[SimplexRecord] {
        self.dims.get(i).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, i: usize, idx: usize) -> &SimplexRecord {
        &self.dims[i][idx]
    }

    pub fn key(&self, i: usize, idx: usize) -> &str {
        &self.dims[i][idx].key
    }

    pub fn vertex_key(&self, v: usize) -> &str {
        &self.dims[0][v].key
    }

    /// `(dimension, index)` of a key.
    pub fn find(&self, key: &str) -> Option<(usize, usize)> {
        self.index.get(key).copied()
    }

    pub fn find_in(&self, i: usize, key: &str) -> Option<usize> {
        match self.find(key) {
            Some((j, idx)) if j == i => Some(idx),
            _ => None,
        }
    }

    /// Face of a simplex selected by a bit mask over its canonical vertex order.
    pub fn face_mask(&self, i: usize, idx: usize, mask: usize) -> usize {
        self.dims[i][idx].faces[mask]
    }

    /// The face spanned by a vertex subset.
    pub fn face(&self, i: usize, idx: usize, sub: &[usize]) -> Result<usize, ScError> {
        let s = &self.dims[i][idx];
        let mut mask = 0usize;
        for v in sub {
            let p = s
                .vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| ScError::NotASubset(s.key.clone()))?;
            mask |= 1 << p;
        }
        if mask == 0 {
            return Err(ScError::NotASubset(s.key.clone()));
        }
        Ok(s.faces[mask])
    }

    /// `face` addressed by keys.
    pub fn face_by_key(&self, key: &str, sub: &[&str]) -> Result<String, ScError> {
        let (i, idx) = self.find(key).ok_or_else(|| ScError::UnknownSimplex(key.to_string()))?;
        let vs = sub
            .iter()
            .map(|k| self.find_in(0, k).ok_or_else(|| ScError::NotASubset(key.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let f = self.face(i, idx, &vs)?;
        Ok(self.dims[vs.len() - 1][f].key.clone())
    }

    /// The codimension-one face missing the vertex at canonical position `pos`.
    pub fn drop_position(&self, i: usize, idx: usize, pos: usize) -> usize {
        let s = &self.dims[i][idx];
        s.faces[s.full_mask() & !(1 << pos)]
    }

    /// Line format: `dim key v1,v2,.. f1,f2,..` with faces listed for masks
    /// `1..full` in increasing order, `-` when there are none.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, layer) in self.dims.iter().enumerate() {
            for s in layer {
                let vs: Vec<&str> = s.vertices.iter().map(|&v| self.vertex_key(v)).collect();
                let fs: Vec<&str> = (1..s.full_mask())
                    .map(|m| self.key(m.count_ones() as usize - 1, s.faces[m]))
                    .collect();
                let fs = if fs.is_empty() { "-".to_string() } else { fs.join(",") };
                out.push_str(&format!("{i} {} {} {fs}\n", s.key, vs.join(",")));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Complex, ScError> {
        let mut b = ComplexBuilder::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || ScError::Parse(n + 1, line.to_string());
            if parts.len() != 4 {
                return Err(bad());
            }
            let dim: usize = parts[0].parse().map_err(|_| bad())?;
            let vs: Vec<&str> = parts[2].split(',').collect();
            if vs.len() != dim + 1 {
                return Err(bad());
            }
            if dim == 0 {
                if vs[0] != parts[1] {
                    return Err(bad());
                }
                b.vertex(parts[1]);
                continue;
            }
            let fs: Vec<&str> = parts[3].split(',').collect();
            let full = (1usize << vs.len()) - 1;
            if fs.len() != full - 1 {
                return Err(bad());
            }
            let faces = (1..full)
                .map(|m| {
                    let sub = (0..vs.len()).filter(|p| m >> p & 1 == 1).map(|p| vs[p].to_string()).collect();
                    (sub, fs[m - 1].to_string())
                })
                .collect();
            b.simplex(parts[1], vs.iter().map(|s| s.to_string()).collect(), faces);
        }
        b.build()
    }
}

#[derive(Clone, Debug)]
struct Pending {
    key: String,
    vertices: Vec<String>,
    faces: Vec<(Vec<String>, String)>,
}

/// Accumulates simplices by key, then resolves face tables in `build`.
/// Adding a key twice keeps the first record.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    pending: BTreeMap<String, Pending>,
}

impl ComplexBuilder {
    pub fn new() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.pending.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn vertex(&mut self, key: &str) -> &mut Self {
        self.pending.entry(key.to_string()).or_insert_with(|| Pending {
            key: key.to_string(),
            vertices: vec![key.to_string()],
            faces: Vec::new(),
        });
        self
    }

    /// `faces` lists `(vertex subset, face key)` for proper nonempty subsets.
    pub fn simplex(&mut self, key: &str, vertices: Vec<String>, faces: Vec<(Vec<String>, String)>) -> &mut Self {
        self.pending
            .entry(key.to_string())
            .or_insert_with(|| Pending { key: key.to_string(), vertices, faces });
        self
    }

    /// A simplex of a strict complex: keyed by its sorted vertex set, faces added as needed.
    pub fn strict(&mut self, vertices: &[&str]) -> String {
        let mut vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        vs.sort();
        vs.dedup();
        let key = strict_key(&vs);
        if self.contains(&key) {
            return key;
        }
        if vs.len() == 1 {
            self.vertex(&vs[0]);
            return key;
        }
        let n = vs.len();
        let mut faces = Vec::new();
        for m in 1..(1usize << n) - 1 {
            let sub: Vec<&str> = (0..n).filter(|p| m >> p & 1 == 1).map(|p| vs[p].as_str()).collect();
            let fk = self.strict(&sub);
            faces.push((sub.iter().map(|s| s.to_string()).collect(), fk));
        }
        self.simplex(&key.clone(), vs, faces);
        key
    }

    pub fn build(&self) -> Result<Complex, ScError> {
        let mut dims: Vec<Vec<SimplexRecord>> = Vec::new();
        let mut index = HashMap::new();
        // BTreeMap iteration gives key order within each dimension.
        for p in self.pending.values() {
            if !key_is_valid(&p.key) {
                return Err(ScError::BadKey(p.key.clone()));
            }
            if p.vertices.is_empty() {
                return Err(ScError::BadRecord(p.key.clone()));
            }
            let i = p.vertices.len() - 1;
            while dims.len() <= i {
                dims.push(Vec::new());
            }
            index.insert(p.key.clone(), (i, dims[i].len()));
            dims[i].push(SimplexRecord { key: p.key.clone(), vertices: Vec::new(), faces: Vec::new() });
        }
        for p in self.pending.values() {
            let (i, idx) = index[&p.key];
            let mut vs = Vec::with_capacity(p.vertices.len());
            for v in &p.vertices {
                match index.get(v) {
                    Some(&(0, j)) => vs.push(j),
                    _ => return Err(ScError::UnknownSimplex(v.clone())),
                }
            }
            // canonical order: ascending vertex key, i.e. ascending index
            let mut order: Vec<usize> = (0..vs.len()).collect();
            order.sort_by_key(|&k| vs[k]);
            let sorted: Vec<usize> = order.iter().map(|&k| vs[k]).collect();
            let n = sorted.len();
            let mut faces = vec![usize::MAX; 1 << n];
            faces[(1 << n) - 1] = idx;
            if i == 0 {
                dims[0][idx].vertices = sorted;
                dims[0][idx].faces = faces;
                continue;
            }
            for (sub, fk) in &p.faces {
                let mut mask = 0usize;
                for v in sub {
                    let pos = p
                        .vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| ScError::NotASubset(p.key.clone()))?;
                    let cpos = order.iter().position(|&k| k == pos).unwrap();
                    mask |= 1 << cpos;
                }
                let &(fd, fi) = index.get(fk).ok_or_else(|| ScError::UnknownSimplex(fk.clone()))?;
                if mask == 0 || fd + 1 != mask.count_ones() as usize {
                    return Err(ScError::BadRecord(p.key.clone()));
                }
                faces[mask] = fi;
            }
            if faces[1..].iter().any(|&x| x == usize::MAX) {
                return Err(ScError::MissingFace(p.key.clone()));
            }
            dims[i][idx].vertices = sorted;
            dims[i][idx].faces = faces;
        }
        Ok(Complex { dims, index })
    }
}

pub fn strict_key(sorted_vertices: &[String]) -> String {
    sorted_vertices.join("~")
}
