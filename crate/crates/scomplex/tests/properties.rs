use proptest::prelude::*;
use scomplex::*;

fn random_complex(cells: &[Vec<u8>]) -> Complex {
    let mut b = ComplexBuilder::new();
    for cell in cells {
        let names: Vec<String> = cell.iter().map(|v| format!("x{v}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        b.strict(&refs);
    }
    b.build().unwrap()
}

proptest! {
    #[test]
    fn strict_complexes_satisfy_axioms(cells in prop::collection::vec(prop::collection::btree_set(0u8..8, 1..5), 1..8)) {
        let cells: Vec<Vec<u8>> = cells.into_iter().map(|s| s.into_iter().collect()).collect();
        let c = random_complex(&cells);
        prop_assert!(validate_complex(&c).is_empty());
        prop_assert!(check_anticommutation(&c).is_empty());
        prop_assert_eq!(Complex::from_text(&c.to_text()).unwrap(), c.clone());
        let id = SimplicialMap::identity(&c);
        prop_assert!(check_simplicial_map(&id.then(&id), &c, &c).is_empty());
    }

    #[test]
    fn face_sign_is_equivariant(cells in prop::collection::vec(prop::collection::btree_set(0u8..6, 2..5), 1..5)) {
        let cells: Vec<Vec<u8>> = cells.into_iter().map(|s| s.into_iter().collect()).collect();
        let c = random_complex(&cells);
        for i in 1..=c.dim().unwrap() {
            for idx in 0..c.count(i) {
                let nu = OrientedSimplexRef::canonical(i, idx);
                for &v in &c.simplex(i, idx).vertices {
                    let a = orientation_face_sign(&c, nu, v).unwrap();
                    let b = orientation_face_sign(&c, nu.flip(), v).unwrap();
                    prop_assert_eq!(a, b.flip());
                }
            }
        }
    }
}
