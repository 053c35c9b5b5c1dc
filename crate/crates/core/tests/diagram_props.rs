mod common;

use common::{faces_close_up, load_diagram, random_walk, relabel, scramble, seeds, strand_classes};
use periodic_motif::diagram::{equivalence_search, SearchConfig, SearchVerdict, TorusDiagram, Vec2};
use periodic_motif::{ElementaryLink, Lattice};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Linking entries keyed by the classes of the two components, so that
/// reordering parallel components does not matter.
fn linking_by_class(d: &TorusDiagram) -> Vec<(Vec2, Vec2, i64)> {
    let cls = d.component_classes().unwrap();
    let lk = d.linking_matrix().unwrap();
    let mut out = Vec::new();
    for i in 0..cls.len() {
        for j in i + 1..cls.len() {
            let (a, b) = if cls[i] <= cls[j] { (cls[i], cls[j]) } else { (cls[j], cls[i]) };
            out.push((a, b, lk[i][j]));
        }
    }
    out.sort();
    out
}

fn lattices_up_to(n: i64) -> Vec<Lattice> {
    (1..=n).flat_map(|k| Lattice::enumerate(2, k).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn moves_preserve_invariants(which in 0usize..6, steps in 1usize..=20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d0 = seeds().swap_remove(which);
        let classes = strand_classes(&d0);
        let count = d0.components().unwrap();
        let linking = linking_by_class(&d0);
        let mut cur = d0;
        for _ in 0..steps {
            let (path, next) = random_walk(&cur, 1, 6, &mut rng);
            if path.is_empty() {
                break;
            }
            prop_assert!(next.crossing_count() <= 6);
            prop_assert!(faces_close_up(&next), "{} after {}", next.to_json(), path[0]);
            prop_assert_eq!(strand_classes(&next), classes.clone());
            prop_assert_eq!(next.homology_multiset().unwrap(), classes.clone());
            prop_assert_eq!(next.components().unwrap(), count);
            prop_assert_eq!(linking_by_class(&next), linking.clone());
            cur = next;
        }
    }

    #[test]
    fn relabeling_keeps_the_hash(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let which = (seed % 6) as usize;
        let (_, d) = random_walk(&seeds()[which], 4, 6, &mut rng);
        let h = d.canonical_hash();
        for _ in 0..10 {
            let r = relabel(&d, &mut rng);
            prop_assert!(r.is_valid());
            prop_assert_eq!(r.canonical_hash(), h.clone());
        }
    }

    #[test]
    fn twists_act_on_classes(word in prop::collection::vec(0usize..4, 0..6), seed in any::<u64>()) {
        // words in the generators of SL(2,Z) and their inverses
        let gens = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [-1, 1]]];
        let mut a = [[1i64, 0], [0, 1]];
        for g in word.iter().map(|&i| gens[i]) {
            a = [
                [a[0][0] * g[0][0] + a[0][1] * g[1][0], a[0][0] * g[0][1] + a[0][1] * g[1][1]],
                [a[1][0] * g[0][0] + a[1][1] * g[1][0], a[1][0] * g[0][1] + a[1][1] * g[1][1]],
            ];
        }
        let m = vec![a[0].to_vec(), a[1].to_vec()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, d) = random_walk(&seeds()[(seed % 6) as usize], 3, 6, &mut rng);
        let t = d.dehn_twist(&m).unwrap();
        prop_assert!(faces_close_up(&t));
        let mut img: Vec<Vec2> = d
            .homology_multiset()
            .unwrap()
            .iter()
            .map(|v| periodic_motif::diagram::normalize_class([a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]))
            .collect();
        img.sort();
        prop_assert_eq!(t.homology_multiset().unwrap(), img);
    }
}

#[test]
fn ten_thousand_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let base = [load_diagram("motif_d.json"), load_diagram("motif_c.json"), common::weave()];
    let mut mismatches = 0;
    for i in 0..10_000 {
        let d = &base[i % base.len()];
        if relabel(d, &mut rng).canonical_hash() != d.canonical_hash() {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn distinct_diagrams_hash_apart() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = load_diagram("motif_d.json");
    let mut hashes = std::collections::HashMap::new();
    for (_, e) in d.enumerate_moves(6).unwrap() {
        let h = e.canonical_hash();
        let key = (e.crossing_count(), e.homology_multiset().unwrap(), linking_by_class(&e));
        // diagrams hashing alike must at least agree on these invariants
        if let Some(k) = hashes.insert(h, key.clone()) {
            assert_eq!(k, key);
        }
        assert_eq!(relabel(&e, &mut rng).canonical_hash(), e.canonical_hash());
    }
    assert!(hashes.len() > 1);
}

#[test]
fn lifts_multiply_crossings_and_match_elementary() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in -2i64..=2 {
        for q in -2i64..=2 {
            if (p, q) == (0, 0) {
                continue;
            }
            let e = ElementaryLink::t2(p, q).unwrap();
            let d = common::gcd_pair(p, q);
            let v = periodic_motif::diagram::normalize_class([p / d, q / d]);
            let plain = TorusDiagram::from_loops(&vec![v; d as usize]);
            // with two or more strands, finger them together so there are crossings to lift
            let diagram = if d > 1 { scramble(&plain, 1, &mut rng) } else { plain };
            for l in lattices_up_to(4) {
                let up = diagram.lift(&l).unwrap();
                assert_eq!(up.crossing_count(), diagram.crossing_count() * l.index() as usize);
                assert!(faces_close_up(&up));
                let el = e.lift(&l).unwrap();
                let mut want: Vec<Vec2> = el.homology_classes().iter().map(|c| [c[0], c[1]]).collect();
                want.sort();
                assert_eq!(up.homology_multiset().unwrap(), want, "T2({p},{q}) over {l}");
                assert_eq!(up.components().unwrap() as i64, el.components());
            }
        }
    }
}

#[test]
fn lifting_commutes_with_moves() {
    let cover = "[[2,0],[0,1]]".parse::<Lattice>().unwrap();
    let cfg = SearchConfig { max_depth: 2, max_crossings: Some(12), ..SearchConfig::default() };
    for d in [load_diagram("motif_e.json"), common::grid(), common::kink()] {
        let lifted = d.lift(&cover).unwrap();
        let moves = d.enumerate_moves(d.crossing_count() + 2).unwrap();
        for (m, e) in moves.into_iter().step_by(5).take(6) {
            // the move happens once in each of the two sheets
            let target = e.lift(&cover).unwrap();
            match equivalence_search(&lifted, &target, &cfg).unwrap() {
                SearchVerdict::Yes(c) => {
                    assert!(c.len() <= 2, "{m}: {} moves", c.len());
                    assert!(c.replay(&lifted, &target).unwrap());
                }
                v => panic!("{m} on {}: {v}", d.to_json()),
            }
        }
    }
}

#[test]
fn equivalent_lifts_come_from_equivalent_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cover = "[[1,0],[0,2]]".parse::<Lattice>().unwrap();
    let base = [load_diagram("motif_e.json"), load_diagram("weave_b.json"), common::grid()];
    let cfg = SearchConfig { max_depth: 4, ..SearchConfig::default() };
    let wide = SearchConfig { max_depth: 8, max_crossings: Some(8), ..SearchConfig::default() };
    let mut checked = 0;
    for d0 in &base {
        for d1 in [scramble(d0, 1, &mut rng), d0.clone(), base[2].clone()] {
            let verdict = equivalence_search(&d0.lift(&cover).unwrap(), &d1.lift(&cover).unwrap(), &cfg).unwrap();
            if let SearchVerdict::Yes(_) = verdict {
                checked += 1;
                match equivalence_search(d0, &d1, &wide).unwrap() {
                    SearchVerdict::Yes(c) => assert!(c.replay(d0, &d1).unwrap()),
                    v => panic!("lifts agree but the motifs gave {v}"),
                }
            }
        }
    }
    assert!(checked >= 6);
}
