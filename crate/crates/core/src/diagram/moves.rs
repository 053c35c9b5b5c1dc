//! Reidemeister moves on torus diagrams.
//!
//! Insertions are generated from the face structure: an R2 finger runs from
//! one edge across a face it shares with another, and the displacement
//! `delta` records which lift of the target the finger reaches. Deletions and
//! R3 are read off bigon, monogon and triangle faces.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{add, dart, det2, neg, sub, Faces, GraphComponent, Span, TorusDiagram, Vec2, UNPAIRED};
use crate::error::{Error, Result};
use crate::intmat::ext_gcd;

/// An edge with a chosen direction; the face used by a move lies to its left.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Side {
    /// The edge leaving this dart.
    Dart { dart: usize },
    /// A free loop, by index into the sorted loop list.
    Loop { index: usize, reverse: bool },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Kink on `at`; the small loop sits on the right of the strand if `right`.
    R1Insert { at: Side, right: bool, over: bool },
    R1Delete { crossing: usize },
    /// Finger from `pusher` across a face to `target`, over it if `over`.
    R2Insert { pusher: Side, target: Side, delta: Vec2, over: bool },
    /// Bigon face containing `dart`.
    R2Delete { dart: usize },
    /// Triangle face containing `dart`.
    R3 { dart: usize },
}

impl Move {
    pub fn tag(&self) -> &'static str {
        match self {
            Move::R1Insert { .. } => "R1+",
            Move::R1Delete { .. } => "R1-",
            Move::R2Insert { .. } => "R2+",
            Move::R2Delete { .. } => "R2-",
            Move::R3 { .. } => "R3",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Dart { dart } => write!(f, "({},{})", dart / 4, dart % 4),
            Side::Loop { index, reverse } => write!(f, "loop{index}{}", if *reverse { "'" } else { "" }),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ou = |o: bool| if o { "over" } else { "under" };
        match self {
            Move::R1Insert { at, right, over } => {
                write!(f, "R1+ {at} {} {}", if *right { "right" } else { "left" }, ou(*over))
            }
            Move::R1Delete { crossing } => write!(f, "R1- crossing {crossing}"),
            Move::R2Insert { pusher, target, delta, over } => {
                write!(f, "R2+ {pusher} {} {target} delta {delta:?}", ou(*over))
            }
            Move::R2Delete { dart } => write!(f, "R2- bigon ({},{})", dart / 4, dart % 4),
            Move::R3 { dart } => write!(f, "R3 triangle ({},{})", dart / 4, dart % 4),
        }
    }
}

/// Face and component data shared by move generation.
pub(crate) struct Context {
    gcs: Vec<GraphComponent>,
    comp: Vec<usize>,
    pos: Vec<Vec2>,
    faces: Faces,
    essential: usize,
    direction: Option<Vec2>,
    has_full: bool,
}

impl Context {
    pub(crate) fn new(d: &TorusDiagram) -> Self {
        let (gcs, comp, pos, faces) = d.analyse();
        let mut essential = d.loops.iter().filter(|l| **l != [0, 0]).count();
        let mut direction = d.loops.iter().copied().find(|l| *l != [0, 0]);
        let mut has_full = false;
        for g in &gcs {
            match g.span {
                Span::Line(v) => {
                    essential += 1;
                    direction = Some(v);
                }
                Span::Full(_) => has_full = true,
                Span::Zero => {}
            }
        }
        Context { gcs, comp, pos, faces, essential, direction, has_full }
    }

    fn span_at(&self, h: usize) -> Span {
        self.gcs[self.comp[h / 4]].span
    }

    fn face_sum(&self, h: usize) -> Vec2 {
        self.faces.sums[self.faces.face_of[h]]
    }
}

fn side_vector(d: &TorusDiagram, s: Side) -> Vec2 {
    match s {
        Side::Loop { index, reverse: false } => d.loops[index],
        Side::Loop { index, reverse: true } => neg(d.loops[index]),
        Side::Dart { .. } => [0, 0],
    }
}

/// Direction of the boundary item on the far side of the face left of `s`,
/// when that face is an annulus between essential curves.
fn essential_sum(d: &TorusDiagram, ctx: &Context, s: Side) -> Option<Vec2> {
    match s {
        Side::Loop { .. } => Some(side_vector(d, s)).filter(|v| *v != [0, 0]),
        Side::Dart { dart } => match ctx.span_at(dart) {
            Span::Line(_) => Some(ctx.face_sum(dart)).filter(|v| *v != [0, 0]),
            _ => None,
        },
    }
}

fn is_local(d: &TorusDiagram, ctx: &Context, s: Side) -> bool {
    match s {
        Side::Loop { index, .. } => d.loops[index] == [0, 0],
        Side::Dart { dart } => ctx.span_at(dart) == Span::Zero,
    }
}

fn unit_square() -> impl Iterator<Item = Vec2> {
    (-1..=1).flat_map(|a| (-1..=1).map(move |b| [a, b]))
}

/// Lifts of `target` that a finger from `pusher` can reach across a shared
/// face, as displacements from the pusher's crossing to the target's.
pub(crate) fn r2_deltas(d: &TorusDiagram, ctx: &Context, pusher: Side, target: Side) -> Vec<Vec2> {
    match (pusher, target) {
        (Side::Loop { index: i, .. }, Side::Loop { index: j, .. }) if i == j => return vec![],
        (Side::Dart { dart: a }, Side::Dart { dart: b }) if a == b || d.partner[a] == b => return vec![],
        _ => {}
    }
    if let (Side::Dart { dart: fi }, Side::Dart { dart: fj }) = (pusher, target) {
        let g = ctx.comp[fi / 4];
        if g == ctx.comp[fj / 4] {
            let (fa, fb) = (ctx.faces.face_of[fi], ctx.faces.face_of[fj]);
            if fa == fb {
                let mut fwd = [0, 0];
                let mut h = fi;
                while h != fj {
                    fwd = add(fwd, d.disp[h]);
                    h = d.face_next(h);
                }
                let s = ctx.faces.sums[fa];
                return match ctx.gcs[g].span {
                    Span::Full(_) => vec![fwd],
                    Span::Line(_) if s != [0, 0] => vec![fwd, sub(fwd, s)],
                    Span::Line(_) => vec![fwd],
                    Span::Zero if ctx.has_full => vec![fwd],
                    Span::Zero => match ctx.direction {
                        Some(v) => (-1..=1).map(|k| [fwd[0] + k * v[0], fwd[1] + k * v[1]]).collect(),
                        None => unit_square().map(|w| add(fwd, w)).collect(),
                    },
                };
            }
            // across the complementary annulus of the only essential curve
            let (si, sj) = (ctx.faces.sums[fa], ctx.faces.sums[fb]);
            if let Span::Line(v) = ctx.gcs[g].span {
                if ctx.essential == 1 && si != [0, 0] && add(si, sj) == [0, 0] {
                    let (_, a, b) = ext_gcd(si[0] as i128, si[1] as i128);
                    let u = [-b as i64, a as i64];
                    debug_assert_eq!(det2(si, u), 1);
                    let base = add(sub(ctx.pos[fj / 4], ctx.pos[fi / 4]), u);
                    return (-1..=1).map(|k| [base[0] + k * v[0], base[1] + k * v[1]]).collect();
                }
            }
            return vec![];
        }
    }
    if is_local(d, ctx, pusher) || is_local(d, ctx, target) {
        return vec![[0, 0]];
    }
    match (essential_sum(d, ctx, pusher), essential_sum(d, ctx, target)) {
        (Some(a), Some(b)) if add(a, b) == [0, 0] => vec![[0, 0]],
        _ => vec![],
    }
}

impl TorusDiagram {
    fn remove_loops(&mut self, mut idx: Vec<usize>) {
        idx.sort_unstable();
        for i in idx.into_iter().rev() {
            self.loops.remove(i);
        }
    }

    fn r1_insert(&self, at: Side, right: bool, over: bool) -> Self {
        let mut out = self.clone();
        let k = out.add_crossing(over);
        let (back, exit) = if right { (3, 1) } else { (1, 3) };
        out.connect(dart(k, 2), dart(k, back), [0, 0]);
        match at {
            Side::Dart { dart: h } => {
                let (p, v) = (self.partner[h], self.disp[h]);
                out.connect(h, dart(k, 0), v);
                out.connect(dart(k, exit), p, [0, 0]);
            }
            Side::Loop { .. } => {
                out.connect(dart(k, exit), dart(k, 0), side_vector(self, at));
                if let Side::Loop { index, .. } = at {
                    out.remove_loops(vec![index]);
                }
            }
        }
        out
    }

    fn r2_insert(&self, pusher: Side, target: Side, delta: Vec2, over: bool) -> Self {
        let mut out = self.clone();
        let x = out.add_crossing(over);
        let y = out.add_crossing(over);
        let mut gone = Vec::new();
        match pusher {
            Side::Dart { dart: fi } => {
                let (gi, di) = (self.partner[fi], self.disp[fi]);
                out.connect(fi, dart(x, 0), [0, 0]);
                out.connect(dart(y, 2), gi, di);
            }
            Side::Loop { index, .. } => {
                out.connect(dart(y, 2), dart(x, 0), side_vector(self, pusher));
                gone.push(index);
            }
        }
        out.connect(dart(x, 2), dart(y, 0), [0, 0]);
        match target {
            Side::Dart { dart: fj } => {
                let (gj, dj) = (self.partner[fj], self.disp[fj]);
                out.connect(fj, dart(y, 3), neg(delta));
                out.connect(dart(x, 3), gj, add(delta, dj));
            }
            Side::Loop { index, .. } => {
                out.connect(dart(x, 3), dart(y, 3), side_vector(self, target));
                gone.push(index);
            }
        }
        out.connect(dart(y, 1), dart(x, 1), [0, 0]);
        out.remove_loops(gone);
        out
    }

    /// Removes `dead` crossings, letting each strand pass straight through.
    /// Strands that close up entirely inside `dead` become free loops.
    pub(crate) fn splice_out(&self, dead: &[usize]) -> Self {
        let n = self.crossing_count();
        let mut is_dead = vec![false; n];
        for &c in dead {
            is_dead[c] = true;
        }
        let mut new_index = vec![usize::MAX; n];
        let mut out = TorusDiagram { partner: vec![], disp: vec![], over_even: vec![], loops: vec![] };
        for c in 0..n {
            if !is_dead[c] {
                new_index[c] = out.add_crossing(self.over_even[c]);
            }
        }
        let nd = |h: usize| dart(new_index[h / 4], h % 4);
        let mut visited = vec![false; self.partner.len()];
        for h in 0..self.partner.len() {
            if is_dead[h / 4] {
                continue;
            }
            let mut acc = self.disp[h];
            let mut x = self.partner[h];
            while is_dead[x / 4] {
                visited[x] = true;
                let y = dart(x / 4, x % 4 + 2);
                visited[y] = true;
                acc = add(acc, self.disp[y]);
                x = self.partner[y];
            }
            out.connect(nd(h), nd(x), acc);
        }
        let mut loops = self.loops.clone();
        for start in 0..self.partner.len() {
            if !is_dead[start / 4] || visited[start] {
                continue;
            }
            let mut acc = [0, 0];
            let mut y = start;
            loop {
                visited[y] = true;
                acc = add(acc, self.disp[y]);
                let x = self.partner[y];
                visited[x] = true;
                y = dart(x / 4, x % 4 + 2);
                if y == start {
                    break;
                }
            }
            loops.push(acc);
        }
        out.set_loops(loops);
        out
    }

    fn is_kink(&self, c: usize) -> bool {
        (0..4).any(|a| {
            let h = dart(c, a);
            self.partner[h] == dart(c, a + 1) && self.disp[h] == [0, 0]
        })
    }

    /// Whether the edge leaving `x` is over at its start and at its end.
    fn over_at_ends(&self, x: usize) -> (bool, bool) {
        let y = self.partner[x];
        let at = |h: usize| self.over_even[h / 4] == (h % 2 == 0);
        (at(x), at(y))
    }

    /// The other dart of a removable bigon through `h1`.
    fn bigon(&self, h1: usize) -> Option<usize> {
        let h2 = self.face_next(h1);
        if h2 == h1 || self.face_next(h2) != h1 || h1 / 4 == h2 / 4 {
            return None;
        }
        if add(self.disp[h1], self.disp[h2]) != [0, 0] {
            return None;
        }
        let (a, b) = self.over_at_ends(h1);
        (a == b).then_some(h2)
    }

    /// Darts of an R3 triangle starting at `a0`.
    fn triangle(&self, a0: usize) -> Option<[usize; 3]> {
        let b1 = self.face_next(a0);
        let c2 = self.face_next(b1);
        if self.face_next(c2) != a0 {
            return None;
        }
        let (a, b, c) = (a0 / 4, b1 / 4, c2 / 4);
        if a == b || b == c || a == c {
            return None;
        }
        if add(add(self.disp[a0], self.disp[b1]), self.disp[c2]) != [0, 0] {
            return None;
        }
        let kinds: Vec<(bool, bool)> = [a0, b1, c2].iter().map(|&x| self.over_at_ends(x)).collect();
        let top = kinds.iter().any(|&k| k == (true, true));
        let bottom = kinds.iter().any(|&k| k == (false, false));
        (top && bottom).then_some([a0, b1, c2])
    }

    fn r3(&self, [a0, b1, c2]: [usize; 3]) -> Self {
        let (a, b, c) = (a0 / 4, b1 / 4, c2 / 4);
        let (sa, sb, sc) = (a0 % 4, b1 % 4, c2 % 4);
        let d0 = self.disp[a0];
        let d1 = self.disp[b1];
        let offset = |h: usize| match h / 4 {
            x if x == a => [0, 0],
            x if x == b => d0,
            x if x == c => add(d0, d1),
            _ => [0, 0],
        };
        let ext = [dart(a, sa + 2), dart(b, sb + 3), dart(b, sb + 2), dart(c, sc + 3), dart(c, sc + 2), dart(a, sa + 3)];
        let to = [dart(b, sb + 1), dart(a, sa), dart(c, sc + 1), dart(b, sb), dart(a, sa + 1), dart(c, sc)];
        let remap = |h: usize| ext.iter().position(|&e| e == h).map_or(h, |i| to[i]);
        let mut out = self.clone();
        for (i, &p) in ext.iter().enumerate() {
            let q = self.partner[p];
            let (p2, q2) = (to[i], remap(q));
            let v = add(sub(add(self.disp[p], offset(p)), offset(p2)), sub(offset(q2), offset(q)));
            out.connect(p2, q2, v);
        }
        out.connect(dart(b, sb + 3), dart(a, sa + 2), neg(d0));
        out.connect(dart(a, sa + 3), dart(c, sc + 2), add(d0, d1));
        out.connect(dart(c, sc + 3), dart(b, sb + 2), neg(d1));
        out
    }

    /// Distinct sides to start moves from: every dart and each distinct free
    /// loop in both directions.
    fn sides(&self) -> Vec<Side> {
        let mut out: Vec<Side> = (0..self.partner.len()).map(|h| Side::Dart { dart: h }).collect();
        for i in 0..self.loops.len() {
            if i == 0 || self.loops[i] != self.loops[i - 1] {
                out.push(Side::Loop { index: i, reverse: false });
                if self.loops[i] != [0, 0] {
                    out.push(Side::Loop { index: i, reverse: true });
                }
            }
        }
        out
    }

    /// Moves whose local pattern is present in a valid diagram and whose
    /// result has at most `max_crossings` crossings. Each one should pass
    /// `apply_move`; `enumerate_moves` is the filtered version.
    pub fn candidate_moves(&self, max_crossings: usize) -> Vec<Move> {
        let n = self.crossing_count();
        let mut out = Vec::new();
        for c in 0..n {
            if self.is_kink(c) {
                out.push(Move::R1Delete { crossing: c });
            }
        }
        for h in 0..self.partner.len() {
            if let Some(h2) = self.bigon(h) {
                if h < h2 {
                    out.push(Move::R2Delete { dart: h });
                }
            }
            if let Some(t) = self.triangle(h) {
                if t.iter().all(|&x| x >= h) {
                    out.push(Move::R3 { dart: h });
                }
            }
        }
        let sides = self.sides();
        if n < max_crossings {
            for &at in &sides {
                if matches!(at, Side::Loop { reverse: true, .. }) {
                    continue;
                }
                for right in [false, true] {
                    for over in [false, true] {
                        out.push(Move::R1Insert { at, right, over });
                    }
                }
            }
        }
        if n + 2 <= max_crossings {
            let ctx = Context::new(self);
            // equal loops are interchangeable, but a finger between two of
            // them needs the second copy as its target
            let mut targets = sides.clone();
            for i in 1..self.loops.len() {
                if self.loops[i] == self.loops[i - 1] && (i < 2 || self.loops[i - 2] != self.loops[i]) {
                    targets.push(Side::Loop { index: i, reverse: false });
                    if self.loops[i] != [0, 0] {
                        targets.push(Side::Loop { index: i, reverse: true });
                    }
                }
            }
            for &pusher in &sides {
                for &target in &targets {
                    for delta in r2_deltas(self, &ctx, pusher, target) {
                        for over in [false, true] {
                            out.push(Move::R2Insert { pusher, target, delta, over });
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies a move without checking that it is applicable.
    pub(crate) fn apply_unchecked(&self, m: &Move) -> Self {
        match *m {
            Move::R1Insert { at, right, over } => self.r1_insert(at, right, over),
            Move::R1Delete { crossing } => self.splice_out(&[crossing]),
            Move::R2Insert { pusher, target, delta, over } => self.r2_insert(pusher, target, delta, over),
            Move::R2Delete { dart } => self.splice_out(&[dart / 4, self.partner[dart] / 4]),
            Move::R3 { dart } => self.r3(self.triangle(dart).expect("checked triangle")),
        }
    }

    /// All moves with their results, suppressing results above `max_crossings`.
    pub fn enumerate_moves(&self, max_crossings: usize) -> Result<Vec<(Move, TorusDiagram)>> {
        self.ensure_valid()?;
        Ok(self
            .candidate_moves(max_crossings)
            .into_iter()
            .map(|m| {
                let d = self.apply_unchecked(&m);
                (m, d)
            })
            .filter(|(_, d)| d.is_valid())
            .collect())
    }

    /// Applies `m`, checking that it is one of the moves this diagram admits.
    pub fn apply_move(&self, m: &Move) -> Result<TorusDiagram> {
        self.ensure_valid()?;
        let bad = |why: &str| Err(Error::InvalidMove(format!("{m}: {why}")));
        let dart_ok = |h: usize| h < self.partner.len() && self.partner[h] != UNPAIRED;
        let side_ok = |s: Side| match s {
            Side::Dart { dart } => dart_ok(dart),
            Side::Loop { index, .. } => index < self.loops.len(),
        };
        match *m {
            Move::R1Insert { at, .. } if !side_ok(at) => return bad("no such edge"),
            Move::R1Delete { crossing } if crossing >= self.crossing_count() || !self.is_kink(crossing) => {
                return bad("not a kink")
            }
            Move::R2Insert { pusher, target, delta, .. } => {
                if !side_ok(pusher) || !side_ok(target) {
                    return bad("no such edge");
                }
                if !r2_deltas(self, &Context::new(self), pusher, target).contains(&delta) {
                    return bad("the edges do not share a face at this lift");
                }
            }
            Move::R2Delete { dart } if !dart_ok(dart) || self.bigon(dart).is_none() => {
                return bad("not a removable bigon")
            }
            Move::R3 { dart } if !dart_ok(dart) || self.triangle(dart).is_none() => {
                return bad("not a triangle with a top and a bottom strand")
            }
            _ => {}
        }
        let out = self.apply_unchecked(m);
        let v = out.validate();
        if v.is_empty() {
            Ok(out)
        } else {
            Err(Error::InvalidMove(format!("{m} produced an invalid diagram: {}", v.join("; "))))
        }
    }
}
