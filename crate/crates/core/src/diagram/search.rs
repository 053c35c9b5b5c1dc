//! Bounded bidirectional search for move sequences between two diagrams.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{det2, normalize_class, Move, TorusDiagram, Vec2};
use crate::elementary::Separation;
use crate::error::Result;
use crate::intmat::{self, gcd_all, Matrix};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest intermediate diagram; `None` means the larger input plus 4.
    pub max_crossings: Option<usize>,
    /// Total number of moves over both sides.
    pub max_depth: usize,
    pub allow_twists: bool,
    /// Stop after this many distinct diagrams per twist candidate.
    pub max_states: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_crossings: None, max_depth: 12, allow_twists: false, max_states: 200_000 }
    }
}

/// `twist(D0)` followed by `left` reaches the same canonical diagram as `D1`
/// followed by `right`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub twist: Option<Matrix>,
    pub left: Vec<Move>,
    pub right: Vec<Move>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replays every move through `apply_move` and compares canonical hashes.
    pub fn replay(&self, d0: &TorusDiagram, d1: &TorusDiagram) -> Result<bool> {
        let mut a = match &self.twist {
            Some(t) => d0.dehn_twist(t)?,
            None => d0.clone(),
        };
        for m in &self.left {
            a = a.apply_move(m)?;
        }
        let mut b = d1.clone();
        for m in &self.right {
            b = b.apply_move(m)?;
        }
        Ok(a.canonical_hash() == b.canonical_hash())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum SearchVerdict {
    Yes(Certificate),
    No(Separation),
    Unknown { explored: usize },
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchVerdict::Yes(c) => write!(f, "Yes({} moves)", c.len()),
            SearchVerdict::No(s) => write!(f, "No({s})"),
            SearchVerdict::Unknown { explored } => write!(f, "Unknown({explored} diagrams explored)"),
        }
    }
}

fn show<T: fmt::Debug>(x: &T) -> String {
    format!("{x:?}").replace(' ', "")
}

fn abs_linking(d: &TorusDiagram) -> Vec<i64> {
    let lk = d.linking_unchecked();
    let mut out: Vec<i64> = (0..lk.len()).flat_map(|i| (i + 1..lk.len()).map(move |j| (i, j))).map(|(i, j)| lk[i][j].abs()).collect();
    out.sort_unstable();
    out
}

fn act(a: &[Vec<i64>], v: Vec2) -> Option<Vec2> {
    let w = intmat::mul_vec(a, &v).ok()?;
    Some(normalize_class([w[0], w[1]]))
}

fn maps_onto(a: &[Vec<i64>], h0: &[Vec2], h1: &[Vec2]) -> bool {
    let mut img: Option<Vec<Vec2>> = h0.iter().map(|&v| act(a, v)).collect();
    match img.as_mut() {
        Some(img) => {
            img.sort_unstable();
            img.as_slice() == h1
        }
        None => false,
    }
}

fn shear(k: i64) -> Matrix {
    vec![vec![1, k], vec![0, 1]]
}

/// Twists carrying the homology multiset `h0` onto `h1`. Complete when `h0`
/// has two independent classes; otherwise the shear along the common
/// direction is limited to `|k| <= 3`. Empty means no twist exists.
pub(crate) fn twist_candidates(h0: &[Vec2], h1: &[Vec2]) -> Vec<Matrix> {
    let Some(&u) = h0.iter().find(|v| **v != [0, 0]) else {
        let gens = [
            intmat::identity(2),
            shear(1),
            shear(-1),
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![1, 0], vec![-1, 1]],
            vec![vec![0, -1], vec![1, 0]],
        ];
        return if h0 == h1 { gens.to_vec() } else { vec![] };
    };
    let g = gcd_all(&u);
    let mu = intmat::to_first_axis(&[u[0] / g, u[1] / g]).expect("primitive");
    let second = h0.iter().copied().find(|v| det2(u, *v) != 0);
    let mut out: Vec<Matrix> = Vec::new();
    for &w0 in h1 {
        for w in [w0, [-w0[0], -w0[1]]] {
            if w == [0, 0] || gcd_all(&w) != g {
                continue;
            }
            let mw = intmat::to_first_axis(&[w[0] / g, w[1] / g]).expect("primitive");
            let mw_inv = intmat::adj(&mw).expect("2x2");
            let ks: Vec<i64> = match second {
                None => (-3..=3).collect(),
                Some(u2) => {
                    let [a, b] = {
                        let t = intmat::mul_vec(&mu, &u2).expect("small");
                        [t[0], t[1]]
                    };
                    h1.iter()
                        .flat_map(|&w2| [w2, [-w2[0], -w2[1]]])
                        .filter_map(|w2| {
                            let t = intmat::mul_vec(&mw, &w2).ok()?;
                            (t[1] == b && (t[0] - a) % b == 0).then_some((t[0] - a) / b)
                        })
                        .collect()
                }
            };
            for k in ks {
                let Ok(a) = intmat::mul(&mw_inv, &shear(k)).and_then(|m| intmat::mul(&m, &mu)) else {
                    continue;
                };
                if !out.contains(&a) && maps_onto(&a, h0, h1) {
                    out.push(a);
                }
            }
        }
    }
    out
}

/// SL(2,Z)-invariants of a homology multiset: divisibilities and |det| of pairs.
fn sl_invariants(h: &[Vec2]) -> (Vec<i64>, Vec<i128>) {
    let mut gcds: Vec<i64> = h.iter().map(|v| gcd_all(v)).collect();
    gcds.sort_unstable();
    let mut dets: Vec<i128> =
        (0..h.len()).flat_map(|i| (i + 1..h.len()).map(move |j| (i, j))).map(|(i, j)| det2(h[i], h[j]).abs()).collect();
    dets.sort_unstable();
    (gcds, dets)
}

/// A computed invariant that differs between the two diagrams, if any.
pub(crate) fn separate(d0: &TorusDiagram, d1: &TorusDiagram, allow_twists: bool) -> Option<Separation> {
    let sep = |invariant: &str, l: String, r: String| Some(Separation { invariant: invariant.into(), left: l, right: r });
    let (c0, c1) = (d0.strands().len() + d0.loops.len(), d1.strands().len() + d1.loops.len());
    if c0 != c1 {
        return sep("components", c0.to_string(), c1.to_string());
    }
    let (h0, h1) = (d0.homology_unchecked(), d1.homology_unchecked());
    if !allow_twists && h0 != h1 {
        return sep("homology multiset", show(&h0), show(&h1));
    }
    if allow_twists {
        let (i0, i1) = (sl_invariants(&h0), sl_invariants(&h1));
        if i0.0 != i1.0 {
            return sep("class divisibilities", show(&i0.0), show(&i1.0));
        }
        if i0.1 != i1.1 {
            return sep("pairwise |det| of classes", show(&i0.1), show(&i1.1));
        }
        let independent = h0.iter().any(|u| h0.iter().any(|v| det2(*u, *v) != 0));
        if independent && twist_candidates(&h0, &h1).is_empty() {
            return sep("homology multiset up to SL(2,Z)", show(&h0), show(&h1));
        }
    }
    let (l0, l1) = (abs_linking(d0), abs_linking(d1));
    if l0 != l1 {
        return sep("pairwise |signed crossing count|", show(&l0), show(&l1));
    }
    None
}

struct Node {
    diagram: TorusDiagram,
    parent: Option<(String, Move)>,
}

fn path(map: &HashMap<String, Node>, mut at: String) -> Vec<Move> {
    let mut moves = Vec::new();
    while let Some((p, m)) = &map[&at].parent {
        moves.push(m.clone());
        at = p.clone();
    }
    moves.reverse();
    moves
}

enum Outcome {
    Met(Vec<Move>, Vec<Move>),
    Exhausted(usize),
}

fn bfs(d0: TorusDiagram, d1: TorusDiagram, max_crossings: usize, max_depth: usize, max_states: usize) -> Outcome {
    let roots = [d0, d1];
    let mut maps: [HashMap<String, Node>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [Vec<String>; 2] = [vec![], vec![]];
    for (side, d) in roots.into_iter().enumerate() {
        let h = d.canonical_hash();
        frontier[side].push(h.clone());
        maps[side].insert(h, Node { diagram: d, parent: None });
    }
    let met = |maps: &[HashMap<String, Node>; 2], h: &String| Outcome::Met(path(&maps[0], h.clone()), path(&maps[1], h.clone()));
    if maps[1].contains_key(&frontier[0][0]) {
        return met(&maps, &frontier[0][0]);
    }
    let mut depth = 0;
    while depth < max_depth {
        let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
            (true, true) => break,
            (false, true) => 0,
            (true, false) => 1,
            _ => usize::from(frontier[1].len() < frontier[0].len()),
        };
        let map = &maps[side];
        let children: Vec<(String, Move, TorusDiagram, String)> = frontier[side]
            .par_iter()
            .flat_map_iter(|h| {
                let d = &map[h].diagram;
                d.candidate_moves(max_crossings).into_iter().filter_map(move |m| {
                    let e = d.apply_unchecked(&m);
                    if !e.is_valid() {
                        return None;
                    }
                    let eh = e.canonical_hash();
                    Some((h.clone(), m, e, eh))
                })
            })
            .collect();
        let mut next = Vec::new();
        for (ph, m, e, eh) in children {
            if maps[side].contains_key(&eh) {
                continue;
            }
            maps[side].insert(eh.clone(), Node { diagram: e, parent: Some((ph, m)) });
            if maps[1 - side].contains_key(&eh) {
                return met(&maps, &eh);
            }
            next.push(eh);
        }
        frontier[side] = next;
        depth += 1;
        if maps[0].len() + maps[1].len() > max_states {
            break;
        }
    }
    Outcome::Exhausted(maps[0].len() + maps[1].len())
}

/// Semi-decision procedure for equivalence of torus diagrams under moves and,
/// optionally, twists. `No` is only ever backed by a differing invariant.
pub fn equivalence_search(d0: &TorusDiagram, d1: &TorusDiagram, config: &SearchConfig) -> Result<SearchVerdict> {
    d0.ensure_valid()?;
    d1.ensure_valid()?;
    if let Some(s) = separate(d0, d1, config.allow_twists) {
        return Ok(SearchVerdict::No(s));
    }
    let max_crossings = config.max_crossings.unwrap_or(d0.crossing_count().max(d1.crossing_count()) + 4);
    let twists: Vec<Option<Matrix>> = if config.allow_twists {
        let mut t: Vec<Option<Matrix>> =
            twist_candidates(&d0.homology_unchecked(), &d1.homology_unchecked()).into_iter().map(Some).collect();
        // try the identity first when it is a candidate
        t.sort_by_key(|a| a.as_ref() != Some(&intmat::identity(2)));
        t
    } else {
        vec![None]
    };
    let start: Vec<(Option<Matrix>, TorusDiagram)> = twists
        .into_iter()
        .map(|t| {
            let d = match &t {
                Some(a) => d0.twist_unchecked(a)?,
                None => d0.clone(),
            };
            Ok((t, d))
        })
        .collect::<Result<_>>()?;
    let h1 = d1.canonical_hash();
    if let Some((t, _)) = start.iter().find(|(_, d)| d.canonical_hash() == h1) {
        return Ok(SearchVerdict::Yes(Certificate { twist: t.clone(), left: vec![], right: vec![] }));
    }
    let mut explored = 0;
    for (t, d) in start {
        match bfs(d, d1.clone(), max_crossings, config.max_depth, config.max_states) {
            Outcome::Met(left, right) => return Ok(SearchVerdict::Yes(Certificate { twist: t, left, right })),
            Outcome::Exhausted(n) => explored += n,
        }
    }
    Ok(SearchVerdict::Unknown { explored })
}
