use std::fmt;

use crate::{orientation_face_sign, Complex, OrientedSimplexRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicateVertex,
    /// `face(σ, V')` has a vertex set different from `V'`.
    FaceVertices { mask: usize, face: String },
    SelfFace,
    Associativity { outer: usize, inner: usize },
    Anticommutation { v: String, w: String },
    MapUndefined,
    MapVertices,
    MapFaces { mask: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub simplex: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.simplex, self.kind)
    }
}

/// Checks the complex axioms; an empty list means the complex is valid.
pub fn validate_complex(c: &Complex) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..=c.dim().unwrap_or(0) {
        for (idx, s) in c.simplices(i).iter().enumerate() {
            let bad = |kind| Violation { simplex: s.key.clone(), kind };
            if s.vertices.windows(2).any(|w| w[0] == w[1]) {
                out.push(bad(ViolationKind::DuplicateVertex));
                continue;
            }
            if s.faces[s.full_mask()] != idx {
                out.push(bad(ViolationKind::SelfFace));
            }
            let mut consistent = vec![true; s.faces.len()];
            for m in 1..s.full_mask() {
                let f = c.simplex(m.count_ones() as usize - 1, s.faces[m]);
                let want: Vec<usize> = (0..s.vertices.len()).filter(|p| m >> p & 1 == 1).map(|p| s.vertices[p]).collect();
                if f.vertices != want {
                    consistent[m] = false;
                    out.push(bad(ViolationKind::FaceVertices { mask: m, face: f.key.clone() }));
                }
            }
            for outer in 1..s.full_mask() {
                if !consistent[outer] {
                    continue;
                }
                let fd = outer.count_ones() as usize - 1;
                let fi = s.faces[outer];
                let positions: Vec<usize> = (0..s.vertices.len()).filter(|p| outer >> p & 1 == 1).collect();
                let mut inner = (outer - 1) & outer;
                while inner > 0 {
                    let mut rel = 0usize;
                    for (k, p) in positions.iter().enumerate() {
                        if inner >> p & 1 == 1 {
                            rel |= 1 << k;
                        }
                    }
                    if c.face_mask(fd, fi, rel) != s.faces[inner] {
                        out.push(bad(ViolationKind::Associativity { outer, inner }));
                    }
                    inner = (inner - 1) & outer;
                }
            }
        }
    }
    out
}

/// `s_w ∘ s_v = -(s_v ∘ s_w)` for every pair of vertices of every simplex of
/// dimension ≥ 2, for both orientations.
pub fn check_anticommutation(c: &Complex) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 2..=c.dim().unwrap_or(0) {
        for (idx, s) in c.simplices(i).iter().enumerate() {
            for parity in [1i8, -1] {
                let nu = OrientedSimplexRef { dim: i, index: idx, parity };
                for (a, &v) in s.vertices.iter().enumerate() {
                    for &w in &s.vertices[a + 1..] {
                        let lhs = orientation_face_sign(c, nu, v).and_then(|x| orientation_face_sign(c, x, w));
                        let rhs = orientation_face_sign(c, nu, w).and_then(|x| orientation_face_sign(c, x, v));
                        let ok = matches!((lhs, rhs), (Ok(x), Ok(y)) if x == y.flip());
                        if !ok {
                            out.push(Violation {
                                simplex: s.key.clone(),
                                kind: ViolationKind::Anticommutation {
                                    v: c.vertex_key(v).to_string(),
                                    w: c.vertex_key(w).to_string(),
                                },
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ComplexBuilder;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn strict_triangle_is_valid() {
        let mut b = ComplexBuilder::new();
        b.strict(&["a", "b", "c"]);
        let c = b.build().unwrap();
        assert!(validate_complex(&c).is_empty());
        assert!(check_anticommutation(&c).is_empty());
    }

    #[test]
    fn parallel_edges_are_allowed() {
        let mut b = ComplexBuilder::new();
        b.vertex("a").vertex("b");
        for k in ["e1", "e2"] {
            b.simplex(k, vec![s("a"), s("b")], vec![(vec![s("a")], s("a")), (vec![s("b")], s("b"))]);
        }
        let c = b.build().unwrap();
        assert_eq!(c.count(1), 2);
        assert!(validate_complex(&c).is_empty());
    }

    #[test]
    fn wrong_face_vertices_reported() {
        let mut b = ComplexBuilder::new();
        b.strict(&["a", "b"]);
        b.strict(&["a", "c"]);
        b.strict(&["b", "c"]);
        let v = |x: &[&str]| x.iter().map(|y| s(y)).collect::<Vec<_>>();
        b.simplex(
            "t",
            v(&["a", "b", "c"]),
            vec![
                (v(&["a"]), s("a")),
                (v(&["b"]), s("b")),
                (v(&["c"]), s("c")),
                (v(&["a", "b"]), s("a~c")),
                (v(&["a", "c"]), s("a~c")),
                (v(&["b", "c"]), s("b~c")),
            ],
        );
        let c = b.build().unwrap();
        let viol = validate_complex(&c);
        assert!(viol.iter().any(|x| x.simplex == "t" && matches!(x.kind, ViolationKind::FaceVertices { .. })));
    }

    #[test]
    fn nonstrict_triangle_with_shared_edges_passes_anticommutation() {
        // two triangles on the same vertex set {a,b,c} with different edges on {a,b}
        let mut b = ComplexBuilder::new();
        b.vertex("a").vertex("b").vertex("c");
        let v = |x: &[&str]| x.iter().map(|y| s(y)).collect::<Vec<_>>();
        let pts = |x: &str| (v(&[x]), s(x));
        for e in ["ab1", "ab2"] {
            b.simplex(e, v(&["a", "b"]), vec![pts("a"), pts("b")]);
        }
        b.simplex("ac", v(&["a", "c"]), vec![pts("a"), pts("c")]);
        b.simplex("bc", v(&["b", "c"]), vec![pts("b"), pts("c")]);
        for (t, e) in [("t1", "ab1"), ("t2", "ab2")] {
            b.simplex(
                t,
                v(&["c", "a", "b"]),
                vec![pts("a"), pts("b"), pts("c"), (v(&["b", "a"]), s(e)), (v(&["a", "c"]), s("ac")), (v(&["b", "c"]), s("bc"))],
            );
        }
        let c = b.build().unwrap();
        assert!(validate_complex(&c).is_empty());
        assert!(check_anticommutation(&c).is_empty());
    }
}
