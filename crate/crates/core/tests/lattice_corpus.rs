mod common;

use common::{corpus, oracle_dual_hilbert, oracle_hilbert, ORACLE_RADIUS};
use proptest::prelude::*;
use torified::lattice::{dual_cone, faces, hilbert_basis, Cone};
use torified::monoid::monoid_of_cone;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn corpus_is_large_enough() {
    let c = corpus();
    assert!(c.len() >= 20);
    assert!(c.iter().any(|x| x.rays() == [vec![1, 0], vec![1, 2]]));
}

#[test]
fn hilbert_basis_matches_brute_force() {
    for c in corpus() {
        let mut hb = hilbert_basis(&c).unwrap();
        hb.sort();
        assert!(
            hb.iter().flatten().all(|x| x.abs() <= ORACLE_RADIUS),
            "{c}: basis leaves the oracle box"
        );
        assert_eq!(hb, oracle_hilbert(&c), "{c}");
    }
}

#[test]
fn monoid_generators_match_brute_force() {
    for c in corpus().into_iter().filter(Cone::is_full_dimensional) {
        let a = monoid_of_cone(&c).unwrap();
        assert!(a.unit_basis().is_empty(), "{c}");
        let mut g = a.generators().to_vec();
        g.sort();
        assert_eq!(g, oracle_dual_hilbert(&c), "{c}");
    }
}

#[test]
fn monoid_generators_lie_in_the_dual() {
    for c in corpus() {
        let a = monoid_of_cone(&c).unwrap();
        for g in a.full_generators() {
            for r in c.rays() {
                assert!(dot(&g, r) >= 0, "{c}: {g:?}");
            }
        }
        for u in a.unit_basis() {
            assert!(c.rays().iter().all(|r| dot(u, r) == 0), "{c}: unit {u:?}");
        }
        assert_eq!(a.unit_basis().len(), c.ambient_dim() - c.dim(), "{c}");
    }
}

#[test]
fn hilbert_basis_is_minimal() {
    for c in corpus() {
        let hb = hilbert_basis(&c).unwrap();
        for h in &hb {
            for g in &hb {
                if g == h {
                    continue;
                }
                let rest: Vec<i64> = h.iter().zip(g).map(|(a, b)| a - b).collect();
                assert!(
                    !c.contains(&rest) || rest.iter().all(|&x| x == 0),
                    "{c}: {h:?} = {g:?} + {rest:?}"
                );
            }
        }
    }
}

#[test]
fn double_dual_is_identity() {
    for c in corpus().into_iter().filter(Cone::is_full_dimensional) {
        let d = dual_cone(&c).unwrap().into_cone().unwrap();
        let dd = dual_cone(&d).unwrap().into_cone().unwrap();
        assert_eq!(dd, c);
    }
}

#[test]
fn faces_are_faces() {
    for c in corpus() {
        let fs = faces(&c);
        assert_eq!(fs.first().map(Cone::dim), Some(0));
        assert_eq!(fs.last(), Some(&c));
        for f in &fs {
            assert!(f.is_face_of(&c), "{f} in {c}");
        }
    }
}

fn small_cone() -> impl Strategy<Value = Cone> {
    (2usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=4),
            )
        })
        .prop_filter_map("not a pointed cone", |(n, gens)| Cone::from_generators(n, &gens).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_pairs_nonnegatively(c in small_cone()) {
        let a = monoid_of_cone(&c).unwrap();
        for g in a.full_generators() {
            for r in c.rays() {
                prop_assert!(dot(&g, r) >= 0);
            }
        }
    }

    #[test]
    fn double_dual_of_random_cones(c in small_cone().prop_filter("full", Cone::is_full_dimensional)) {
        let d = dual_cone(&c).unwrap().into_cone().unwrap();
        prop_assert_eq!(dual_cone(&d).unwrap().into_cone().unwrap(), c);
    }

    #[test]
    fn hilbert_basis_generates_rays(c in small_cone()) {
        let hb = hilbert_basis(&c).unwrap();
        for r in c.rays() {
            prop_assert!(hb.contains(r));
        }
        for h in &hb {
            prop_assert!(c.contains(h));
        }
    }
}
