//! Symbolic motifs: split decomposition, layering sequences and JSJ data.

mod seifert;
mod text;

use std::fmt;

pub use seifert::{is_jsj_admissible, Admissibility, Exceptional, SeifertSymbol};

use crate::elementary::{self, Ambient, ElementaryLink, MinimalStatus};
use crate::error::{Error, Result};
use crate::intmat::{self, gcd, gcd_all};
use crate::lattice::Lattice;

pub const V_TET: f64 = 1.014_941_606_409_653_6;
pub const V_OCT: f64 = 3.663_862_376_708_876;
pub const VOLUME_TOLERANCE: f64 = 1e-9;

#[derive(Clone, PartialEq, Debug)]
pub enum Piece {
    Elementary(ElementaryLink),
    /// Opaque hyperbolic piece; equal iff identifiers match.
    Hyperbolic { id: String, volume: Option<f64> },
    Seifert(SeifertSymbol),
    /// Outermost piece `outer` with the solid-torus piece `inner` in each of
    /// its component neighbourhoods.
    Satellite { outer: ElementaryLink, inner: ElementaryLink },
}

#[derive(Clone, PartialEq, Debug)]
pub enum Body {
    Empty,
    Single(Piece),
    Layered(Vec<Piece>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct MotifDescriptor {
    ambient: Ambient,
    body: Body,
    local: Vec<String>,
    khb: u64,
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || "_.+-".contains(c))
        && s.parse::<f64>().is_err()
        && !matches!(s, "empty" | "layered" | "hyp" | "seifert" | "sat" | "vol")
}

fn check_piece(p: &Piece, layer: bool, ambient: Ambient) -> Result<()> {
    let want = if layer { Ambient::ThickenedTorus } else { ambient };
    match p {
        Piece::Elementary(e) if e.ambient() != want => Err(Error::AmbientMismatch(format!(
            "piece {e} lives in {}, expected {want}",
            e.ambient()
        ))),
        Piece::Hyperbolic { id, volume } => {
            if !valid_ident(id) {
                return Err(Error::InvalidParams(format!("bad piece identifier `{id}`")));
            }
            match volume {
                Some(v) if !(v.is_finite() && *v > 0.0) => {
                    Err(Error::InvalidParams(format!("volume {v} must be positive")))
                }
                _ => Ok(()),
            }
        }
        Piece::Satellite { outer, inner } => {
            if outer.ambient() != want || want == Ambient::SolidTorus {
                return Err(Error::AmbientMismatch(format!("satellite outer piece {outer} in {want}")));
            }
            if inner.ambient() != Ambient::SolidTorus || inner.params()[1] == 0 {
                return Err(Error::InvalidParams(format!(
                    "satellite inner piece must be T0/T1(p,q) with q != 0, got {inner}"
                )));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

impl MotifDescriptor {
    pub fn new(ambient: Ambient, body: Body, local: Vec<String>, khb: u64) -> Result<Self> {
        match &body {
            Body::Empty => {}
            Body::Single(p) => check_piece(p, false, ambient)?,
            Body::Layered(ps) => {
                if ambient == Ambient::SolidTorus {
                    return Err(Error::AmbientMismatch("layering tori exist only in T2xI and T3".into()));
                }
                if ps.is_empty() {
                    return Err(Error::InvalidParams("empty layering sequence".into()));
                }
                for p in ps {
                    check_piece(p, true, ambient)?;
                }
            }
        }
        if let Some(bad) = local.iter().find(|s| !valid_ident(s)) {
            return Err(Error::InvalidParams(format!("bad local link identifier `{bad}`")));
        }
        Ok(MotifDescriptor { ambient, body, local, khb })
    }

    pub fn elementary(e: ElementaryLink) -> Self {
        MotifDescriptor { ambient: e.ambient(), body: Body::Single(Piece::Elementary(e)), local: vec![], khb: 0 }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn local_links(&self) -> &[String] {
        &self.local
    }

    pub fn knotted_hole_balls(&self) -> u64 {
        self.khb
    }

    pub fn is_split(&self) -> bool {
        !self.local.is_empty()
    }

    /// The elementary link, when the descriptor is nothing more than that.
    pub fn as_bare_elementary(&self) -> Option<&ElementaryLink> {
        match (&self.body, self.local.is_empty(), self.khb) {
            (Body::Single(Piece::Elementary(e)), true, 0) => Some(e),
            _ => None,
        }
    }

    fn pieces(&self) -> &[Piece] {
        match &self.body {
            Body::Empty => &[],
            Body::Single(p) => std::slice::from_ref(p),
            Body::Layered(ps) => ps,
        }
    }

    /// Equality with volumes compared up to a relative tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let piece_eq = |a: &Piece, b: &Piece| match (a, b) {
            (Piece::Hyperbolic { id: i, volume: v }, Piece::Hyperbolic { id: j, volume: w }) => {
                i == j
                    && match (v, w) {
                        (Some(x), Some(y)) => (x - y).abs() <= VOLUME_TOLERANCE * x.abs().max(1.0),
                        (None, None) => true,
                        _ => false,
                    }
            }
            _ => a == b,
        };
        let bodies = match (&self.body, &other.body) {
            (Body::Empty, Body::Empty) => true,
            (Body::Single(a), Body::Single(b)) => piece_eq(a, b),
            (Body::Layered(a), Body::Layered(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| piece_eq(x, y)),
            _ => false,
        };
        bodies && self.ambient == other.ambient && self.local == other.local && self.khb == other.khb
    }
}

fn piece_equivalent(a: &Piece, b: &Piece) -> bool {
    match (a, b) {
        (Piece::Hyperbolic { id: i, .. }, Piece::Hyperbolic { id: j, .. }) => i == j,
        _ => a == b,
    }
}

fn sorted(v: &[String]) -> Vec<&String> {
    let mut s: Vec<&String> = v.iter().collect();
    s.sort();
    s
}

/// Equivalence of descriptors: local links as multisets, layers in order for
/// T2xI and up to cyclic rotation for T3.
pub fn descriptor_equivalent(d0: &MotifDescriptor, d1: &MotifDescriptor) -> Result<bool> {
    if d0.ambient != d1.ambient {
        return Err(Error::AmbientMismatch(format!("{} vs {}", d0.ambient, d1.ambient)));
    }
    if sorted(&d0.local) != sorted(&d1.local) || d0.khb != d1.khb {
        return Ok(false);
    }
    let seq_eq = |a: &[Piece], b: &[Piece]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| piece_equivalent(x, y));
    Ok(match (&d0.body, &d1.body) {
        (Body::Empty, Body::Empty) => true,
        (Body::Single(a), Body::Single(b)) => piece_equivalent(a, b),
        (Body::Layered(a), Body::Layered(b)) => {
            if d0.ambient == Ambient::ThreeTorus {
                a.len() == b.len() && (0..a.len().max(1)).any(|r| {
                    let rotated: Vec<Piece> = a[r..].iter().chain(&a[..r]).cloned().collect();
                    seq_eq(&rotated, b)
                })
            } else {
                seq_eq(a, b)
            }
        }
        _ => false,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegreeBound {
    Finite(u64),
    Unbounded,
    Unknown,
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::Finite(n) => write!(f, "Finite({n})"),
            DegreeBound::Unbounded => write!(f, "Unbounded"),
            DegreeBound::Unknown => write!(f, "Unknown"),
        }
    }
}

/// One applicable bound, with the rule that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundRule {
    pub rule: &'static str,
    pub value: u64,
}

/// Every covering-degree bound that applies to `d`.
pub fn degree_bound_rules(d: &MotifDescriptor) -> Vec<BoundRule> {
    let mut rules = Vec::new();
    let pieces = d.pieces();
    let hyperbolic: Vec<Option<f64>> = pieces
        .iter()
        .filter_map(|p| match p {
            Piece::Hyperbolic { volume, .. } => Some(*volume),
            _ => None,
        })
        .collect();
    if !hyperbolic.is_empty() && hyperbolic.iter().all(Option::is_some) {
        let vol: f64 = hyperbolic.iter().flatten().sum();
        // vol(L) = n vol(L') and every hyperbolic piece has volume >= 2 v_tet
        let n = (vol / (2.0 * V_TET) + VOLUME_TOLERANCE).floor().max(1.0) as u64;
        rules.push(BoundRule { rule: "volume", value: n });
    }
    if !d.local.is_empty() {
        rules.push(BoundRule { rule: "split", value: d.local.len() as u64 });
    }
    if d.khb > 0 {
        rules.push(BoundRule { rule: "knotted-hole-ball", value: d.khb });
    }
    for p in pieces {
        if let Piece::Satellite { outer, inner } = p {
            let n = gcd_all(outer.params()) as u64 * inner.params()[1].unsigned_abs();
            rules.push(BoundRule { rule: "satellite", value: n });
        }
    }
    if let Body::Layered(ps) = &d.body {
        let cyclic = d.ambient == Ambient::ThreeTorus && ps.len() > 1;
        let pairs = ps.len() - 1 + usize::from(cyclic);
        for i in 0..pairs {
            if let (Piece::Elementary(a), Piece::Elementary(b)) = (&ps[i], &ps[(i + 1) % ps.len()]) {
                let (x, y) = (a.params(), b.params());
                let det = (x[0] as i128 * y[1] as i128 - x[1] as i128 * y[0] as i128).unsigned_abs();
                if det > 0 {
                    rules.push(BoundRule { rule: "layer determinant", value: det as u64 });
                }
            }
        }
    }
    rules
}

/// Upper bound on the degree of a finite covering map from `d`.
pub fn cover_degree_bound(d: &MotifDescriptor) -> DegreeBound {
    if d.as_bare_elementary().is_some() {
        return DegreeBound::Unbounded;
    }
    match degree_bound_rules(d).iter().map(|r| r.value).min() {
        Some(n) => DegreeBound::Finite(n),
        None => DegreeBound::Unknown,
    }
}

/// Order of the primitive direction of `outer` modulo the lattice with basis `m`.
fn direction_order(outer: &ElementaryLink, m: &[Vec<i64>]) -> Result<i64> {
    let g = gcd_all(outer.params());
    let prim: Vec<i64> = outer.params().iter().map(|x| x / g).collect();
    let det = intmat::det(m)?.abs();
    let w = intmat::mul_vec(&intmat::adj(m)?, &prim)?;
    Ok(det / gcd(det, gcd_all(&w)))
}

fn lift_piece(p: &Piece, basis: &[Vec<i64>]) -> Result<Piece> {
    let n = intmat::det(basis)?.abs();
    Ok(match p {
        Piece::Elementary(e) => Piece::Elementary(e.lift_with_basis(basis)?),
        Piece::Hyperbolic { id, volume } => Piece::Hyperbolic { id: id.clone(), volume: volume.map(|v| v * n as f64) },
        // opaque: carried through unchanged
        Piece::Seifert(s) => Piece::Seifert(s.clone()),
        Piece::Satellite { outer, inner } => {
            let k = direction_order(outer, basis)?;
            Piece::Satellite { outer: outer.lift_with_basis(basis)?, inner: inner.lift(&Lattice::cyclic(k)?)? }
        }
    })
}

/// Preimage of `d` under the cover given by `cover`'s canonical basis.
pub fn lift_descriptor(d: &MotifDescriptor, cover: &Lattice) -> Result<MotifDescriptor> {
    if cover.dim() != d.ambient.dim() {
        return Err(Error::AmbientMismatch(format!(
            "{} needs a rank-{} lattice, got rank {}",
            d.ambient,
            d.ambient.dim(),
            cover.dim()
        )));
    }
    lift_descriptor_with_basis(d, cover.basis())
}

/// As [`lift_descriptor`] for an explicit basis. In T3 the first axis is the
/// layering direction, so the basis must have `B01 = B02 = 0`.
pub fn lift_descriptor_with_basis(d: &MotifDescriptor, basis: &[Vec<i64>]) -> Result<MotifDescriptor> {
    let dim = d.ambient.dim();
    if !intmat::is_square(basis, dim) {
        return Err(Error::AmbientMismatch(format!("{} needs a {dim}x{dim} basis", d.ambient)));
    }
    let n = intmat::det(basis)?.unsigned_abs();
    if n == 0 {
        return Err(Error::SingularBasis);
    }
    let body = match &d.body {
        Body::Empty => Body::Empty,
        Body::Single(p) => Body::Single(lift_piece(p, basis)?),
        Body::Layered(ps) if d.ambient == Ambient::ThickenedTorus => {
            Body::Layered(ps.iter().map(|p| lift_piece(p, basis)).collect::<Result<_>>()?)
        }
        Body::Layered(ps) => {
            if basis[0][1] != 0 || basis[0][2] != 0 {
                return Err(Error::InvalidParams("T3 layered lifts need a basis adapted to the layering axis".into()));
            }
            let k = basis[0][0].unsigned_abs() as usize;
            let inner: Vec<Vec<i64>> = (1..3).map(|i| (1..3).map(|j| basis[i][j]).collect()).collect();
            let layer: Vec<Piece> = ps.iter().map(|p| lift_piece(p, &inner)).collect::<Result<_>>()?;
            Body::Layered(layer.iter().cycle().take(k * layer.len()).cloned().collect())
        }
    };
    let local = d.local.iter().cycle().take(d.local.len() * n as usize).cloned().collect();
    Ok(MotifDescriptor { ambient: d.ambient, body, local, khb: d.khb * n })
}

#[derive(Clone, PartialEq, Debug)]
pub enum MinimalDescriptor {
    Exact(MotifDescriptor),
    /// Least element found without a uniqueness proof.
    BestKnown(MotifDescriptor),
    /// Minimal motifs are not unique; candidates are listed when known.
    NotUnique(Vec<MotifDescriptor>),
    BoundOnly(DegreeBound),
}

pub fn minimal_motif_descriptor(d: &MotifDescriptor) -> Result<MinimalDescriptor> {
    if let Some(e) = d.as_bare_elementary() {
        let m = elementary::minimal_motif(e)?;
        return Ok(match m.status {
            MinimalStatus::Unique => MinimalDescriptor::Exact(MotifDescriptor::elementary(m.link)),
            MinimalStatus::BestKnown => MinimalDescriptor::BestKnown(MotifDescriptor::elementary(m.link)),
            MinimalStatus::NotUnique(c) => {
                MinimalDescriptor::NotUnique(c.into_iter().map(MotifDescriptor::elementary).collect())
            }
        });
    }
    if d.is_split() {
        return Ok(MinimalDescriptor::NotUnique(vec![]));
    }
    Ok(MinimalDescriptor::BoundOnly(cover_degree_bound(d)))
}

/// The ambient a printed descriptor without an `ambient:` field denotes.
pub(crate) fn inferred_ambient(body: &Body) -> Option<Ambient> {
    match body {
        Body::Single(Piece::Elementary(e)) => Some(e.ambient()),
        Body::Single(Piece::Satellite { outer, .. }) => Some(outer.ambient()),
        Body::Layered(_) => Some(Ambient::ThickenedTorus),
        _ => None,
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Elementary(e) => write!(f, "{e}"),
            Piece::Hyperbolic { id, volume: None } => write!(f, "hyp({id})"),
            Piece::Hyperbolic { id, volume: Some(v) } => write!(f, "hyp({id}, vol={v})"),
            Piece::Seifert(s) => write!(f, "seifert({s})"),
            Piece::Satellite { outer, inner } => write!(f, "sat({outer}, {inner})"),
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Empty => write!(f, "empty"),
            Body::Single(p) => write!(f, "{p}"),
            Body::Layered(ps) => {
                write!(f, "layered[")?;
                for (i, p) in ps.iter().enumerate() {
                    write!(f, "{}{p}", if i == 0 { "" } else { ", " })?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for MotifDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{ ", if self.is_split() { "split" } else { "motif" })?;
        if inferred_ambient(&self.body) != Some(self.ambient) {
            write!(f, "ambient: {}, ", self.ambient)?;
        }
        write!(f, "body: {}, local: [{}], khb: {} }}", self.body, self.local.join(", "), self.khb)
    }
}

impl From<ElementaryLink> for MotifDescriptor {
    fn from(e: ElementaryLink) -> Self {
        MotifDescriptor::elementary(e)
    }
}
