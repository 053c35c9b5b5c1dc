//! Link diagrams on the flat torus as combinatorial maps.
//!
//! A crossing has four slots numbered counter-clockwise; dart `4c + s` is slot
//! `s` of crossing `c`. Slots `s` and `s + 2` belong to the same strand. Each
//! dart is paired with the dart at the far end of its edge and carries the
//! displacement, in Z^2, from a fixed lift of its crossing to the lift of the
//! far crossing reached along the edge. Positions are never stored.

mod hash;
mod moves;
mod search;
mod transform;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{gcd, gcd_all};

pub use moves::{Move, Side};
pub use search::{equivalence_search, Certificate, SearchConfig, SearchVerdict};

pub type Vec2 = [i64; 2];

pub(crate) const UNPAIRED: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusDiagram {
    partner: Vec<usize>,
    disp: Vec<Vec2>,
    /// Whether the strand through slots 0 and 2 is the over strand.
    over_even: Vec<bool>,
    /// Crossing-free components, sign-normalized and sorted.
    loops: Vec<Vec2>,
}

#[inline]
pub(crate) fn dart(c: usize, s: usize) -> usize {
    4 * c + s % 4
}

#[inline]
pub(crate) fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub(crate) fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn neg(a: Vec2) -> Vec2 {
    [-a[0], -a[1]]
}

#[inline]
pub(crate) fn det2(a: Vec2, b: Vec2) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Representative of `±v` whose first nonzero entry is positive.
pub fn normalize_class(v: Vec2) -> Vec2 {
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        neg(v)
    } else {
        v
    }
}

#[derive(Serialize, Deserialize)]
struct CrossingJson {
    over: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: [usize; 2],
    to: [usize; 2],
    disp: Vec2,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    crossings: Vec<CrossingJson>,
    edges: Vec<EdgeJson>,
    #[serde(default)]
    loops: Vec<Vec2>,
}

/// Rank of the subgroup of Z^2 spanned by a component's cycles, with its
/// generator data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Span {
    Zero,
    /// `Z * v`, `v` normalized and nonzero.
    Line(Vec2),
    /// Full rank with the given index.
    Full(u64),
}

/// One connected piece of the underlying 4-valent graph.
#[derive(Clone, Debug)]
pub(crate) struct GraphComponent {
    pub crossings: Vec<usize>,
    /// Face orbits (lists of darts) belonging to this component.
    pub faces: Vec<usize>,
    pub span: Span,
    /// `2 - (V - E + F)` of the ribbon graph.
    pub genus_twice: i64,
}

/// Face structure of a diagram: orbits of `h -> (c(p(h)), s(p(h)) - 1)`.
/// Each face lies to the left of its boundary darts.
#[derive(Clone, Debug)]
pub(crate) struct Faces {
    pub orbits: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    pub sums: Vec<Vec2>,
}

impl TorusDiagram {
    /// Builds a diagram from crossing flags, edges given as dart pairs with the
    /// displacement from the first dart's crossing, and free loops.
    pub fn new(over_even: Vec<bool>, edges: &[(usize, usize, Vec2)], loops: &[Vec2]) -> Result<Self> {
        let n = over_even.len();
        let mut d = TorusDiagram {
            partner: vec![UNPAIRED; 4 * n],
            disp: vec![[0, 0]; 4 * n],
            over_even,
            loops: vec![],
        };
        for &(a, b, v) in edges {
            if a >= 4 * n || b >= 4 * n {
                return Err(Error::InvalidDiagram(format!("edge ({a}, {b}) names a missing slot")));
            }
            if a == b || d.partner[a] != UNPAIRED || d.partner[b] != UNPAIRED {
                return Err(Error::InvalidDiagram(format!(
                    "slot ({},{}) or ({},{}) is paired more than once",
                    a / 4,
                    a % 4,
                    b / 4,
                    b % 4
                )));
            }
            d.connect(a, b, v);
        }
        d.set_loops(loops.to_vec());
        Ok(d)
    }

    pub fn from_loops(loops: &[Vec2]) -> Self {
        let mut d = TorusDiagram { partner: vec![], disp: vec![], over_even: vec![], loops: vec![] };
        d.set_loops(loops.to_vec());
        d
    }

    pub(crate) fn connect(&mut self, a: usize, b: usize, v: Vec2) {
        self.partner[a] = b;
        self.partner[b] = a;
        self.disp[a] = v;
        self.disp[b] = neg(v);
    }

    pub(crate) fn set_loops(&mut self, mut loops: Vec<Vec2>) {
        for l in loops.iter_mut() {
            *l = normalize_class(*l);
        }
        loops.sort_unstable();
        self.loops = loops;
    }

    pub(crate) fn add_crossing(&mut self, over_even: bool) -> usize {
        self.over_even.push(over_even);
        self.partner.extend([UNPAIRED; 4]);
        self.disp.extend([[0, 0]; 4]);
        self.over_even.len() - 1
    }

    pub fn crossing_count(&self) -> usize {
        self.over_even.len()
    }

    pub fn loops(&self) -> &[Vec2] {
        &self.loops
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub fn displacement(&self, h: usize) -> Vec2 {
        self.disp[h]
    }

    pub fn over_even(&self, c: usize) -> bool {
        self.over_even[c]
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.crossings.len();
        let mut over_even = Vec::with_capacity(n);
        for (c, x) in raw.crossings.iter().enumerate() {
            let mut o = x.over;
            o.sort_unstable();
            match o {
                [0, 2] => over_even.push(true),
                [1, 3] => over_even.push(false),
                _ => {
                    return Err(Error::Parse(format!(
                        "crossing {c}: over strand must be [0,2] or [1,3], got {:?}",
                        x.over
                    )))
                }
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            for [c, s] in [e.from, e.to] {
                if c >= n || s >= 4 {
                    return Err(Error::Parse(format!("slot [{c},{s}] does not exist")));
                }
            }
            edges.push((dart(e.from[0], e.from[1]), dart(e.to[0], e.to[1]), e.disp));
        }
        TorusDiagram::new(over_even, &edges, &raw.loops).map_err(|e| match e {
            Error::InvalidDiagram(m) => Error::Parse(m),
            e => e,
        })
    }

    fn raw(&self) -> DiagramJson {
        DiagramJson {
            crossings: self
                .over_even
                .iter()
                .map(|&o| CrossingJson { over: if o { [0, 2] } else { [1, 3] } })
                .collect(),
            edges: (0..self.partner.len())
                .filter(|&h| self.partner[h] != UNPAIRED && h < self.partner[h])
                .map(|h| {
                    let p = self.partner[h];
                    EdgeJson { from: [h / 4, h % 4], to: [p / 4, p % 4], disp: self.disp[h] }
                })
                .collect(),
            loops: self.loops.clone(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.raw()).expect("diagram serializes")
    }

    /// Compact JSON with fields in file-format order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.raw()).expect("diagram serializes")
    }

    /// One crossing or edge per line, for files meant to be read by eye.
    pub fn to_json_pretty(&self) -> String {
        let raw = self.raw();
        let rows = |items: Vec<String>| {
            if items.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n    {}\n  ]", items.join(",\n    "))
            }
        };
        fn json<T: Serialize>(x: &T) -> String {
            serde_json::to_string(x).expect("diagram serializes")
        }
        format!(
            "{{\n  \"crossings\": {},\n  \"edges\": {},\n  \"loops\": {}\n}}",
            rows(raw.crossings.iter().map(json).collect()),
            rows(raw.edges.iter().map(json).collect()),
            serde_json::to_string(&raw.loops).expect("loops serialize"),
        )
    }

    pub(crate) fn faces(&self) -> Faces {
        let m = self.partner.len();
        let mut face_of = vec![usize::MAX; m];
        let mut orbits = Vec::new();
        let mut sums = Vec::new();
        for start in 0..m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut sum = [0, 0];
            let mut h = start;
            loop {
                face_of[h] = id;
                orbit.push(h);
                sum = add(sum, self.disp[h]);
                h = self.face_next(h);
                if h == start {
                    break;
                }
            }
            orbits.push(orbit);
            sums.push(sum);
        }
        Faces { orbits, face_of, sums }
    }

    #[inline]
    pub(crate) fn face_next(&self, h: usize) -> usize {
        let p = self.partner[h];
        dart(p / 4, p % 4 + 3)
    }

    pub fn face_count(&self) -> usize {
        self.faces().orbits.len()
    }

    /// Crossing sets of the connected pieces of the underlying graph, with a
    /// spanning-tree position for every crossing.
    pub(crate) fn graph_components(&self) -> (Vec<Vec<usize>>, Vec<usize>, Vec<Vec2>) {
        let n = self.crossing_count();
        let mut comp = vec![usize::MAX; n];
        let mut pos = vec![[0, 0]; n];
        let mut out = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[root] = id;
            let mut members = vec![root];
            let mut i = 0;
            while i < members.len() {
                let c = members[i];
                i += 1;
                for s in 0..4 {
                    let p = self.partner[dart(c, s)];
                    if p == UNPAIRED {
                        continue;
                    }
                    let c2 = p / 4;
                    if comp[c2] == usize::MAX {
                        comp[c2] = id;
                        pos[c2] = add(pos[c], self.disp[dart(c, s)]);
                        members.push(c2);
                    }
                }
            }
            out.push(members);
        }
        (out, comp, pos)
    }

    pub(crate) fn analyse(&self) -> (Vec<GraphComponent>, Vec<usize>, Vec<Vec2>, Faces) {
        let faces = self.faces();
        let (members, comp, pos) = self.graph_components();
        let mut gcs: Vec<GraphComponent> = members
            .into_iter()
            .map(|crossings| GraphComponent { crossings, faces: vec![], span: Span::Zero, genus_twice: 0 })
            .collect();
        for (f, orbit) in faces.orbits.iter().enumerate() {
            gcs[comp[orbit[0] / 4]].faces.push(f);
        }
        for g in gcs.iter_mut() {
            let mut cycles = Vec::new();
            for &c in &g.crossings {
                for s in 0..4 {
                    let h = dart(c, s);
                    let p = self.partner[h];
                    if h < p {
                        let v = sub(add(pos[c], self.disp[h]), pos[p / 4]);
                        if v != [0, 0] {
                            cycles.push(v);
                        }
                    }
                }
            }
            g.span = span_of(&cycles);
            let v = g.crossings.len() as i64;
            g.genus_twice = 2 - (v - 2 * v + g.faces.len() as i64);
        }
        (gcs, comp, pos, faces)
    }

    /// Violations of the diagram invariants; empty when the diagram is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (h, &p) in self.partner.iter().enumerate() {
            if p == UNPAIRED {
                out.push(format!("slot ({},{}) is unpaired", h / 4, h % 4));
            } else if p >= self.partner.len() || self.partner[p] != h || p == h {
                out.push(format!("slot ({},{}) has an inconsistent pairing", h / 4, h % 4));
            } else if self.disp[p] != neg(self.disp[h]) {
                out.push(format!("edge at ({},{}) has inconsistent displacements", h / 4, h % 4));
            }
        }
        for l in &self.loops {
            if gcd_all(l) > 1 {
                out.push(format!("free loop {l:?} is not primitive; use parallel copies"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let (gcs, _, _, faces) = self.analyse();
        let mut essential: Vec<Vec2> = self.loops.iter().copied().filter(|l| *l != [0, 0]).collect();
        let mut full = 0;
        for (i, g) in gcs.iter().enumerate() {
            let nonzero: Vec<Vec2> = g.faces.iter().map(|&f| faces.sums[f]).filter(|s| *s != [0, 0]).collect();
            let name = format!("graph component {i} (crossing {})", g.crossings[0]);
            match g.span {
                Span::Zero => {
                    if g.genus_twice != 0 || !nonzero.is_empty() {
                        out.push(format!("{name}: a null-homologous component must be planar with closed faces"));
                    }
                }
                Span::Line(v) => {
                    let ok = g.genus_twice == 0
                        && nonzero.len() == 2
                        && nonzero.iter().all(|s| normalize_class(*s) == v)
                        && add(nonzero[0], nonzero[1]) == [0, 0]
                        && gcd_all(&v) == 1;
                    if ok {
                        essential.push(v);
                    } else {
                        out.push(format!(
                            "{name}: an annular component needs genus 0 and two boundary faces of class ±v, v primitive"
                        ));
                    }
                }
                Span::Full(index) => {
                    full += 1;
                    if g.genus_twice != 2 || !nonzero.is_empty() || index != 1 {
                        out.push(format!(
                            "{name}: V - E + F = {} with face sums {:?} and span index {index}; \
                             a cellular component needs V - E + F = 0, zero face sums, index 1",
                            2 - g.genus_twice,
                            nonzero
                        ));
                    } else {
                        let area: i128 = g
                            .faces
                            .iter()
                            .map(|&f| {
                                let mut at = [0, 0];
                                let mut twice = 0i128;
                                for &h in &faces.orbits[f] {
                                    let next = add(at, self.disp[h]);
                                    twice += det2(at, next);
                                    at = next;
                                }
                                twice
                            })
                            .sum();
                        if area != 2 {
                            out.push(format!("{name}: displacements wrap the torus with degree {}/2, not 1", area));
                        }
                    }
                }
            }
        }
        if full > 1 {
            out.push("two cellular components cannot be disjoint on the torus".into());
        }
        if full == 1 && !essential.is_empty() {
            out.push("an essential curve cannot avoid a cellular component".into());
        }
        if essential.windows(2).any(|w| normalize_class(w[0]) != normalize_class(w[1])) {
            out.push(format!("disjoint essential curves must be parallel, got classes {essential:?}"));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(v.join("; ")))
        }
    }

    /// Link components through crossings, as lists of outgoing darts. Each is
    /// oriented so its class is normalized; null-homologous ones start at their
    /// least dart.
    pub(crate) fn strands(&self) -> Vec<(Vec<usize>, Vec2)> {
        let m = self.partner.len();
        let mut used = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if used[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut class = [0, 0];
            let mut h = start;
            loop {
                let p = self.partner[h];
                used[h] = true;
                used[p] = true;
                walk.push(h);
                class = add(class, self.disp[h]);
                h = dart(p / 4, p % 4 + 2);
                if h == start {
                    break;
                }
            }
            if normalize_class(class) != class {
                walk = walk.iter().rev().map(|&h| self.partner[h]).collect();
                class = neg(class);
            }
            out.push((walk, class));
        }
        out
    }

    /// Number of link components, counting free loops.
    pub fn components(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.strands().len() + self.loops.len())
    }

    /// Classes of the components in a fixed order: crossing components by least
    /// dart, then free loops.
    pub fn component_classes(&self) -> Result<Vec<Vec2>> {
        self.ensure_valid()?;
        Ok(self.classes_unchecked())
    }

    pub(crate) fn classes_unchecked(&self) -> Vec<Vec2> {
        self.strands().into_iter().map(|(_, c)| c).chain(self.loops.iter().copied()).collect()
    }

    /// Sorted multiset of sign-normalized component classes.
    pub fn homology_multiset(&self) -> Result<Vec<Vec2>> {
        self.ensure_valid()?;
        Ok(self.homology_unchecked())
    }

    pub(crate) fn homology_unchecked(&self) -> Vec<Vec2> {
        let mut h = self.classes_unchecked();
        h.sort_unstable();
        h
    }

    /// Signed crossing counts between components, in `component_classes` order.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>> {
        self.ensure_valid()?;
        Ok(self.linking_unchecked())
    }

    pub(crate) fn linking_unchecked(&self) -> Vec<Vec<i64>> {
        let strands = self.strands();
        let k = strands.len() + self.loops.len();
        let mut comp_of = vec![0; self.partner.len()];
        let mut outgoing = vec![false; self.partner.len()];
        for (i, (walk, _)) in strands.iter().enumerate() {
            for &h in walk {
                comp_of[h] = i;
                comp_of[self.partner[h]] = i;
                outgoing[h] = true;
            }
        }
        let mut lk = vec![vec![0i64; k]; k];
        for c in 0..self.crossing_count() {
            let exit = |a: usize| if outgoing[dart(c, a)] { a } else { a + 2 };
            let (even, odd) = (exit(0), exit(1));
            let (o, u) = if self.over_even[c] { (even, odd) } else { (odd, even) };
            let sign = if (u + 4 - o) % 4 == 1 { 1 } else { -1 };
            let (i, j) = (comp_of[dart(c, 0)], comp_of[dart(c, 1)]);
            if i != j {
                lk[i][j] += sign;
                lk[j][i] += sign;
            }
        }
        lk
    }

    /// The identity on the combinatorial map: positions are not stored.
    pub fn translate(&self, _v: Vec2) -> Self {
        self.clone()
    }

    /// Graphviz rendering for inspection.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph diagram {\n  node [shape=circle];\n");
        for (c, &o) in self.over_even.iter().enumerate() {
            let _ = writeln!(s, "  c{c} [label=\"{c}\\nover {}\"];", if o { "0-2" } else { "1-3" });
        }
        for h in 0..self.partner.len() {
            let p = self.partner[h];
            if p != UNPAIRED && h < p {
                let _ = writeln!(
                    s,
                    "  c{} -- c{} [taillabel=\"{}\", headlabel=\"{}\", label=\"{:?}\"];",
                    h / 4,
                    p / 4,
                    h % 4,
                    p % 4,
                    self.disp[h]
                );
            }
        }
        for (i, l) in self.loops.iter().enumerate() {
            let _ = writeln!(s, "  loop{i} [shape=plaintext, label=\"loop {l:?}\"];");
        }
        s.push_str("}\n");
        s
    }
}

fn span_of(cycles: &[Vec2]) -> Span {
    let Some(&first) = cycles.first() else {
        return Span::Zero;
    };
    let mut index = 0i128;
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            index = gcd128(index, det2(*a, *b));
        }
        index = gcd128(index, det2(first, *a));
    }
    if index != 0 {
        return Span::Full(index.unsigned_abs() as u64);
    }
    // all parallel: the gcd of the coefficients along the primitive direction
    let g = gcd_all(&first);
    let dir = normalize_class([first[0] / g, first[1] / g]);
    let coeff = cycles.iter().fold(0i64, |acc, c| {
        let k = if dir[0] != 0 { c[0] / dir[0] } else { c[1] / dir[1] };
        gcd(acc, k)
    });
    Span::Line([dir[0] * coeff, dir[1] * coeff])
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
