mod common;

use common::curve_preimage;
use periodic_motif::elementary::{join_quotient, scale_equivalent, ScaleVerdict};
use periodic_motif::{ElementaryLink, Family, Lattice};
use proptest::prelude::*;

fn link(family: Family, params: &[i64]) -> Option<ElementaryLink> {
    ElementaryLink::new(family, params).ok()
}

fn any_link() -> impl Strategy<Value = ElementaryLink> {
    (0usize..4, prop::collection::vec(-8i64..=8, 3)).prop_filter_map("zero tuple", |(f, p)| {
        let family = [Family::T0, Family::T1, Family::T2, Family::T3][f];
        let n = if family == Family::T3 { 3 } else { 2 };
        link(family, &p[..n])
    })
}

fn lattices(dim: usize, n: i64) -> Vec<Lattice> {
    (1..=n).flat_map(|k| Lattice::enumerate(dim, k).unwrap()).collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Lift of a solid-torus link by walking the preimage of its torus-knot
/// strands on the boundary torus; the core always lifts to one core.
fn solid_lift_oracle(e: &ElementaryLink, n: i64) -> ElementaryLink {
    let (p, q) = (e.params()[0], e.params()[1]);
    let mut params = vec![0, 0];
    if (p, q) != (0, 0) {
        let classes = curve_preimage(&[vec![n, 0], vec![0, 1]], &[p, q]);
        assert!(classes.windows(2).all(|w| w[0] == w[1]));
        let k = classes.len() as i64;
        params = vec![k * classes[0][0], k * classes[0][1]];
    }
    ElementaryLink::new(e.family(), &params).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_form_is_a_fixed_point(e in any_link()) {
        prop_assert_eq!(ElementaryLink::new(e.family(), e.params()).unwrap(), e.clone());
        prop_assert_eq!(e.to_string().parse::<ElementaryLink>().unwrap(), e.clone());
        let neg: Vec<i64> = e.params().iter().map(|x| -x).collect();
        prop_assert_eq!(ElementaryLink::new(e.family(), &neg).unwrap(), e.clone());
    }

    #[test]
    fn classes_count_components(e in any_link()) {
        prop_assert_eq!(e.homology_classes().len() as i64, e.components());
    }

    #[test]
    fn solid_lifts_match_the_preimage(e in any_link(), n in 1i64..=6) {
        prop_assume!(matches!(e.family(), Family::T0 | Family::T1));
        prop_assert_eq!(e.lift(&Lattice::cyclic(n).unwrap()).unwrap(), solid_lift_oracle(&e, n));
    }

    #[test]
    fn lifts_compose(e in any_link(), i in 0usize..33, j in 0usize..33) {
        let dim = e.ambient().dim();
        let ls = lattices(dim, if dim == 3 { 3 } else { 4 });
        let (l1, l2) = (&ls[i % ls.len()], &ls[j % ls.len()]);
        // l2 read in the basis of l1
        let composite = mul(l1.basis(), l2.basis());
        let direct = e.lift_with_basis(&composite).unwrap();
        prop_assert_eq!(e.lift(l1).unwrap().lift(l2).unwrap(), direct.clone());
        // the canonical basis differs from the composite by a twist
        let h = Lattice::hnf(&composite).unwrap();
        if dim == 1 {
            prop_assert_eq!(direct, e.lift(&h).unwrap());
            return Ok(());
        }
        let u = periodic_motif::intmat::left_divide(h.basis(), &composite).unwrap().unwrap();
        prop_assert_eq!(direct.dehn_twist(&u).unwrap(), e.lift(&h).unwrap());
    }

    #[test]
    fn common_covers_replay(a in any_link(), b in any_link()) {
        prop_assume!(a.ambient() == b.ambient());
        match scale_equivalent(&a, &b, 8).unwrap() {
            ScaleVerdict::Yes(w) => prop_assert!(w.replay(&a, &b).unwrap()),
            ScaleVerdict::No(sep) => {
                // no common cyclic cover of small degree either
                for n0 in 1..=12 {
                    for n1 in 1..=12 {
                        let (x, y) = (solid_lift_oracle(&a, n0), solid_lift_oracle(&b, n1));
                        prop_assert_ne!(x, y, "{} says {}", sep, "no");
                    }
                }
            }
            ScaleVerdict::Unknown => {}
        }
    }

    #[test]
    fn quotient_by_both_covers(e in any_link(), i in 0usize..33, j in 0usize..33) {
        prop_assume!(matches!(e.family(), Family::T2 | Family::T3));
        let dim = e.ambient().dim();
        let ls = lattices(dim, if dim == 3 { 3 } else { 4 });
        let (l0, l1) = (&ls[i % ls.len()], &ls[j % ls.len()]);
        let up = e.lift(&l0.meet(l1).unwrap()).unwrap();
        let (down, join) = join_quotient(&up, l0, l1).unwrap();
        prop_assert_eq!(down, e.lift(&join).unwrap());
    }
}

#[test]
fn t2_and_t3_lifts_match_the_preimage() {
    for p in -3i64..=3 {
        for q in -3i64..=3 {
            let Some(e) = link(Family::T2, &[p, q]) else { continue };
            for l in lattices(2, 4) {
                let mut got: Vec<Vec<i64>> = e.lift(&l).unwrap().homology_classes();
                got.sort();
                assert_eq!(got, curve_preimage(l.basis(), e.params()), "{e} over {l}");
            }
        }
    }
    for p in -2i64..=2 {
        for q in -2i64..=2 {
            for r in -2i64..=2 {
                let Some(e) = link(Family::T3, &[p, q, r]) else { continue };
                for l in lattices(3, 3) {
                    let mut got: Vec<Vec<i64>> = e.lift(&l).unwrap().homology_classes();
                    got.sort();
                    assert_eq!(got, curve_preimage(l.basis(), e.params()), "{e} over {l}");
                }
            }
        }
    }
}
