//! The shipped fixtures are reproducible from this generator. Run with
//! `PERIODIC_MOTIF_WRITE_FIXTURES=1` to rewrite them after a format change.

mod common;

use common::{fixture_path, load_diagram, scramble, weave};
use periodic_motif::diagram::TorusDiagram;
use periodic_motif::Lattice;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TWIST_DE: [[i64; 2]; 2] = [[1, 1], [0, 1]];
const TWIST_BC: [[i64; 2]; 2] = [[1, 0], [1, 1]];

fn m(a: [[i64; 2]; 2]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.to_vec()).collect()
}

/// The motif chain: (a) covers (b) twice, (b) and (c) differ by a twist,
/// (c) covers (d) twice, (d) and (e) differ by a twist. Each step is
/// scrambled by a move or two so that the stored diagrams are not literal
/// images of each other.
fn chain() -> Vec<(&'static str, TorusDiagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = weave();
    let d = scramble(&e.dehn_twist(&m(TWIST_DE)).unwrap(), 1, &mut rng);
    let c = d.lift(&"[[2,0],[0,1]]".parse::<Lattice>().unwrap()).unwrap();
    let b = scramble(&c.dehn_twist(&m(TWIST_BC)).unwrap(), 1, &mut rng);
    let a = scramble(&b.lift(&"[[1,0],[0,2]]".parse::<Lattice>().unwrap()).unwrap(), 1, &mut rng);
    vec![("motif_a.json", a), ("motif_b.json", b), ("motif_c.json", c), ("motif_d.json", d), ("motif_e.json", e)]
}

fn others() -> Vec<(&'static str, TorusDiagram)> {
    let w = weave();
    vec![
        ("strand_3_4.json", TorusDiagram::from_loops(&[[3, 4]])),
        ("parallel_a.json", TorusDiagram::from_loops(&[[1, 0], [1, 0]])),
        ("parallel_b.json", TorusDiagram::from_loops(&[[1, 1], [1, 1]])),
        ("weave_a.json", w.clone()),
        ("weave_b.json", w.dehn_twist(&m(TWIST_DE)).unwrap()),
    ]
}

#[test]
fn fixtures_match_generator() {
    let write = std::env::var_os("PERIODIC_MOTIF_WRITE_FIXTURES").is_some();
    for (name, d) in chain().into_iter().chain(others()) {
        assert!(d.is_valid(), "{name}: {:?}", d.validate());
        if write {
            std::fs::write(fixture_path(name), d.to_json_pretty() + "\n").unwrap();
        }
        assert_eq!(load_diagram(name), d, "{name} differs from the generator");
    }
}

#[test]
fn chain_shapes() {
    let n: Vec<usize> = ["a", "b", "c", "d", "e"]
        .iter()
        .map(|x| load_diagram(&format!("motif_{x}.json")).crossing_count())
        .collect();
    // every stored motif is a genuine diagram, and the covers multiply
    assert!(n.iter().all(|&k| k >= 2), "{n:?}");
    assert!(n[0] >= 2 * n[1] && n[2] >= 2 * n[3] - 2, "{n:?}");
    let e = load_diagram("motif_e.json");
    assert_eq!(e.components().unwrap(), 2);
    assert_eq!(e.homology_multiset().unwrap(), vec![[1, -1], [1, 1]]);
}
