#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use periodic_motif::diagram::{Move, TorusDiagram, Vec2};
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load_diagram(name: &str) -> TorusDiagram {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    TorusDiagram::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

// ---------- lattices by brute force ----------

/// Subgroups of (Z/n)^2 of order n, as point sets. These correspond one to
/// one with the index-n sublattices of Z^2, since each contains nZ^2.
pub fn subgroups_of_index(n: i64) -> BTreeSet<BTreeSet<(i64, i64)>> {
    let pts: Vec<(i64, i64)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    for &u in &pts {
        for &v in &pts {
            let mut g = BTreeSet::new();
            for i in 0..n {
                for j in 0..n {
                    g.insert(((i * u.0 + j * v.0).rem_euclid(n), (i * u.1 + j * v.1).rem_euclid(n)));
                }
            }
            if g.len() as i64 == n {
                out.insert(g);
            }
        }
    }
    out
}

/// Whether `w` is an integer combination of the columns of `b`, by Cramer's
/// rule.
pub fn in_span2(b: &[Vec<i64>], w: [i64; 2]) -> bool {
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let x = w[0] * b[1][1] - b[0][1] * w[1];
    let y = b[0][0] * w[1] - w[0] * b[1][0];
    x % det == 0 && y % det == 0
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Coordinates of `w` in the columns of `b`, if integral.
pub fn coords(b: &[Vec<i64>], w: &[i64]) -> Option<Vec<i64>> {
    match w.len() {
        1 => (w[0] % b[0][0] == 0).then(|| vec![w[0] / b[0][0]]),
        2 => {
            let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
            let x = w[0] * b[1][1] - b[0][1] * w[1];
            let y = b[0][0] * w[1] - w[0] * b[1][0];
            (x % det == 0 && y % det == 0).then(|| vec![x / det, y / det])
        }
        3 => {
            let m = |c: usize| {
                let mut a = [[0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        a[i][j] = if j == c { w[i] } else { b[i][j] };
                    }
                }
                det3(a)
            };
            let det = m(usize::MAX);
            let xs: Vec<i64> = (0..3).map(m).collect();
            xs.iter().all(|x| x % det == 0).then(|| xs.iter().map(|x| x / det).collect())
        }
        _ => unreachable!(),
    }
}

fn normalize(v: Vec<i64>) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.into_iter().map(|y| -y).collect(),
        _ => v,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Preimage of `d` parallel closed curves of primitive class `v` in the torus
/// R^k / Z^k under the cover R^k / L, found by walking the lifts through the
/// cosets. Returns the classes of the lifted curves in the basis `b`.
pub fn curve_preimage(b: &[Vec<i64>], params: &[i64]) -> Vec<Vec<i64>> {
    let k = params.len();
    let d = params.iter().fold(0, |g, &x| gcd(g, x));
    let v: Vec<i64> = params.iter().map(|x| x / d).collect();
    // coset representatives: points of a box, merged by membership
    let n = coords_det(b);
    let box_pts: Vec<Vec<i64>> = match k {
        2 => (0..n).flat_map(|x| (0..n).map(move |y| vec![x, y])).collect(),
        3 => (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| vec![x, y, z]))).collect(),
        _ => unreachable!(),
    };
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for p in box_pts {
        if !reps.iter().any(|r| coords(b, &sub(&p, r)).is_some()) {
            reps.push(p);
        }
    }
    assert_eq!(reps.len() as i64, n);
    let class_of = |p: &[i64]| reps.iter().position(|r| coords(b, &sub(p, r)).is_some()).unwrap();
    let mut seen = vec![false; reps.len()];
    let mut out = Vec::new();
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        let mut m = 0;
        let mut cur = reps[start].clone();
        loop {
            seen[class_of(&cur)] = true;
            cur = cur.iter().zip(&v).map(|(a, b)| a + b).collect();
            m += 1;
            if class_of(&cur) == start {
                break;
            }
        }
        let mv: Vec<i64> = v.iter().map(|x| m * x).collect();
        out.push(normalize(coords(b, &mv).unwrap()));
    }
    let mut all = Vec::new();
    for _ in 0..d {
        all.extend(out.iter().cloned());
    }
    all.sort();
    all
}

fn coords_det(b: &[Vec<i64>]) -> i64 {
    match b.len() {
        2 => (b[0][0] * b[1][1] - b[0][1] * b[1][0]).abs(),
        3 => {
            let mut m = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = b[i][j];
                }
            }
            det3(m).abs()
        }
        _ => unreachable!(),
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn sigma(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

// ---------- diagrams ----------

/// Plain weave of a (1,1) strand and a (1,-1) strand with two crossings.
pub fn weave() -> TorusDiagram {
    TorusDiagram::new(vec![true, false], &[(0, 6, [0, 0]), (4, 2, [1, 1]), (3, 5, [0, -1]), (7, 1, [1, 0])], &[])
        .unwrap()
}

/// Orthogonal (1,0) and (0,1) strands through a single crossing.
pub fn grid() -> TorusDiagram {
    TorusDiagram::new(vec![true], &[(0, 2, [1, 0]), (1, 3, [0, 1])], &[]).unwrap()
}

/// A one-crossing kink on a null-homotopic loop.
pub fn kink() -> TorusDiagram {
    TorusDiagram::new(vec![true], &[(1, 2, [0, 0]), (3, 0, [0, 0])], &[]).unwrap()
}

pub fn seeds() -> Vec<TorusDiagram> {
    vec![
        grid(),
        kink(),
        weave(),
        TorusDiagram::from_loops(&[[1, 0], [1, 0]]),
        TorusDiagram::from_loops(&[[0, 0], [2, 1]]),
        TorusDiagram::from_loops(&[[0, 0], [0, 0]]),
    ]
}

fn face_next(d: &TorusDiagram, h: usize) -> usize {
    let p = d.partner(h);
    4 * (p / 4) + (p % 4 + 3) % 4
}

/// Displacement sums of all faces, walked directly from the public map, with
/// the crossing each face starts at.
pub fn face_sums(d: &TorusDiagram) -> Vec<(usize, Vec2)> {
    let n = 4 * d.crossing_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for h0 in 0..n {
        if seen[h0] {
            continue;
        }
        let mut s = [0, 0];
        let mut h = h0;
        while !seen[h] {
            seen[h] = true;
            let v = d.displacement(h);
            s = [s[0] + v[0], s[1] + v[1]];
            h = face_next(d, h);
        }
        out.push((h0 / 4, s));
    }
    out
}

/// Every disk face closes up. Faces of a graph component that fills the
/// torus are all disks; a component confined to an annulus has exactly two
/// annular faces, whose sums cancel; one confined to a disk has none.
pub fn faces_close_up(d: &TorusDiagram) -> bool {
    let n = d.crossing_count();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(r: &mut [usize], x: usize) -> usize {
        if r[x] == x {
            x
        } else {
            let y = find(r, r[x]);
            r[x] = y;
            y
        }
    }
    for h in 0..4 * n {
        let (a, b) = (find(&mut root, h / 4), find(&mut root, d.partner(h) / 4));
        root[a] = b;
    }
    let mut open: HashMap<usize, Vec<Vec2>> = HashMap::new();
    for (c, s) in face_sums(d) {
        if s != [0, 0] {
            open.entry(find(&mut root, c)).or_default().push(s);
        }
    }
    open.values().all(|v| v.len() == 2 && v[0] == [-v[1][0], -v[1][1]])
}

/// Component classes by walking strands straight through crossings.
pub fn strand_classes(d: &TorusDiagram) -> Vec<Vec2> {
    let n = 4 * d.crossing_count();
    let mut seen = vec![false; n];
    let mut out: Vec<Vec2> = d.loops().to_vec();
    for h0 in 0..n {
        if seen[h0] {
            continue;
        }
        let mut s = [0, 0];
        let mut h = h0;
        loop {
            // leave by h, arrive at p, continue through the opposite slot
            let p = d.partner(h);
            seen[h] = true;
            seen[p] = true;
            let v = d.displacement(h);
            s = [s[0] + v[0], s[1] + v[1]];
            h = 4 * (p / 4) + (p % 4 + 2) % 4;
            if h == h0 {
                break;
            }
        }
        out.push(if s[0] < 0 || (s[0] == 0 && s[1] < 0) { [-s[0], -s[1]] } else { s });
    }
    out.sort();
    out
}

/// The same diagram with crossings permuted, slot labels rotated and crossing
/// lifts shifted.
pub fn relabel(d: &TorusDiagram, rng: &mut impl Rng) -> TorusDiagram {
    let n = d.crossing_count();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let rot: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
    let shift: Vec<Vec2> = (0..n).map(|_| [rng.random_range(-3..=3), rng.random_range(-3..=3)]).collect();
    let image = |h: usize| 4 * perm[h / 4] + (h % 4 + 4 - rot[h / 4]) % 4;
    let mut over = vec![false; n];
    for c in 0..n {
        over[perm[c]] = d.over_even(c) ^ (rot[c] % 2 == 1);
    }
    let mut edges = Vec::new();
    for h in 0..4 * n {
        let p = d.partner(h);
        if h < p {
            let v = d.displacement(h);
            let (a, b) = (shift[h / 4], shift[p / 4]);
            edges.push((image(h), image(p), [v[0] + b[0] - a[0], v[1] + b[1] - a[1]]));
        }
    }
    TorusDiagram::new(over, &edges, d.loops()).unwrap()
}

/// A random walk of `steps` moves staying at or below `max` crossings.
pub fn random_walk(d: &TorusDiagram, steps: usize, max: usize, rng: &mut impl Rng) -> (Vec<Move>, TorusDiagram) {
    let mut cur = d.clone();
    let mut path = Vec::new();
    for _ in 0..steps {
        let moves = cur.candidate_moves(max);
        let Some(m) = moves.choose(rng) else { break };
        cur = cur.apply_move(m).unwrap_or_else(|e| panic!("{e} on {}", cur.to_json()));
        path.push(m.clone());
    }
    (path, cur)
}

/// Walk that only adds crossings or slides triangles, for scrambling fixtures.
pub fn scramble(d: &TorusDiagram, steps: usize, rng: &mut impl Rng) -> TorusDiagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let max = cur.crossing_count() + 2;
        let moves: Vec<Move> = cur.candidate_moves(max).into_iter().filter(|m| matches!(m.tag(), "R2+" | "R3")).collect();
        let r3: Vec<&Move> = moves.iter().filter(|m| m.tag() == "R3").collect();
        let m = if let Some(m) = r3.choose(rng) { (*m).clone() } else { moves.choose(rng).unwrap().clone() };
        cur = cur.apply_move(&m).unwrap();
    }
    cur
}

pub fn multiset<T: Ord + Clone + std::hash::Hash + Eq>(v: &[T]) -> HashMap<T, usize> {
    let mut m = HashMap::new();
    for x in v {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

pub fn gcd_pair(a: i64, b: i64) -> i64 {
    gcd(a, b)
}
