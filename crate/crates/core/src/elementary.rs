//! Elementary links T0, T1 in the solid torus, T2 in the thickened torus and
//! T3 in the 3-torus.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::intmat::{self, gcd, gcd_all, Matrix};
use crate::lattice::Lattice;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ambient {
    SolidTorus,
    ThickenedTorus,
    ThreeTorus,
}

impl Ambient {
    /// Rank of the deck group of the universal cover.
    pub fn dim(self) -> usize {
        match self {
            Ambient::SolidTorus => 1,
            Ambient::ThickenedTorus => 2,
            Ambient::ThreeTorus => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ambient::SolidTorus => "S1xD2",
            Ambient::ThickenedTorus => "T2xI",
            Ambient::ThreeTorus => "T3",
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ambient {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S1xD2" | "SolidTorus" => Ok(Ambient::SolidTorus),
            "T2xI" | "ThickenedTorus" => Ok(Ambient::ThickenedTorus),
            "T3" | "ThreeTorus" => Ok(Ambient::ThreeTorus),
            other => Err(Error::Parse(format!("unknown ambient `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    T0,
    T1,
    T2,
    T3,
}

impl Family {
    pub fn ambient(self) -> Ambient {
        match self {
            Family::T0 | Family::T1 => Ambient::SolidTorus,
            Family::T2 => Ambient::ThickenedTorus,
            Family::T3 => Ambient::ThreeTorus,
        }
    }

    fn arity(self) -> usize {
        if self == Family::T3 {
            3
        } else {
            2
        }
    }
}

/// An elementary link, always stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementaryLink {
    family: Family,
    params: Vec<i64>,
}

fn sign(x: i64) -> i64 {
    x.signum()
}

fn checked_neg(v: &[i64]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.checked_neg().ok_or(Error::Overflow)).collect()
}

impl ElementaryLink {
    /// Canonical form: first nonzero coordinate positive, then T0(p,q) with
    /// `p >= 1` and `p | q` rewritten to T1(p-1, (p-1)q/p).
    pub fn new(family: Family, params: &[i64]) -> Result<Self> {
        if params.len() != family.arity() {
            return Err(Error::InvalidParams(format!(
                "{family:?} takes {} parameters, got {}",
                family.arity(),
                params.len()
            )));
        }
        let zero = params.iter().all(|&x| x == 0);
        if zero && family != Family::T1 {
            return Err(Error::InvalidParams(format!("{family:?} needs a nonzero parameter tuple")));
        }
        let mut params = params.to_vec();
        if params.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            params = checked_neg(&params)?;
        }
        let (p, q) = (params[0], params[1]);
        if family == Family::T0 && p >= 1 && q % p == 0 {
            let q1 = (q / p).checked_mul(p - 1).ok_or(Error::Overflow)?;
            return Ok(ElementaryLink { family: Family::T1, params: vec![p - 1, q1] });
        }
        Ok(ElementaryLink { family, params })
    }

    pub fn t0(p: i64, q: i64) -> Result<Self> {
        Self::new(Family::T0, &[p, q])
    }

    pub fn t1(p: i64, q: i64) -> Result<Self> {
        Self::new(Family::T1, &[p, q])
    }

    pub fn t2(p: i64, q: i64) -> Result<Self> {
        Self::new(Family::T2, &[p, q])
    }

    pub fn t3(p: i64, q: i64, r: i64) -> Result<Self> {
        Self::new(Family::T3, &[p, q, r])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ambient(&self) -> Ambient {
        self.family.ambient()
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn is_isotopic(&self, other: &Self) -> Result<bool> {
        same_ambient(self, other)?;
        Ok(self == other)
    }

    /// `d = gcd` of the parameters, plus the core circle for T1.
    pub fn components(&self) -> i64 {
        gcd_all(&self.params) + i64::from(self.family == Family::T1)
    }

    /// Classes of the components in H1 of the ambient, sorted.
    pub fn homology_classes(&self) -> Vec<Vec<i64>> {
        let d = gcd_all(&self.params);
        let mut out = Vec::new();
        if d > 0 {
            let prim: Vec<i64> = match self.family {
                Family::T0 | Family::T1 => vec![self.params[0] / d],
                _ => self.params.iter().map(|x| x / d).collect(),
            };
            out.extend(std::iter::repeat_n(prim, d as usize));
        }
        if self.family == Family::T1 {
            out.push(vec![1]);
        }
        out.sort();
        out
    }

    /// Lift along the cover given by the canonical basis of `cover`.
    pub fn lift(&self, cover: &Lattice) -> Result<Self> {
        if cover.dim() != self.ambient().dim() {
            return Err(Error::AmbientMismatch(format!(
                "{} needs a rank-{} lattice, got rank {}",
                self.ambient(),
                self.ambient().dim(),
                cover.dim()
            )));
        }
        self.lift_with_basis(cover.basis())
    }

    /// Lift along the cover whose deck lattice has the given basis columns.
    /// Lifts compose exactly when bases are transported (`B2 = B1 R`).
    pub fn lift_with_basis(&self, basis: &[Vec<i64>]) -> Result<Self> {
        let d = self.ambient().dim();
        if !intmat::is_square(basis, d) {
            return Err(Error::AmbientMismatch(format!("{} needs a {d}x{d} basis", self.ambient())));
        }
        let n = intmat::det(basis)?;
        if n == 0 {
            return Err(Error::SingularBasis);
        }
        match self.family {
            Family::T0 | Family::T1 => {
                let q = self.params[1].checked_mul(n.abs()).ok_or(Error::Overflow)?;
                Self::new(self.family, &[self.params[0], q])
            }
            _ => Self::new(self.family, &intmat::mul_vec(&intmat::adj(basis)?, &self.params)?),
        }
    }

    pub fn dehn_twist(&self, a: &[Vec<i64>]) -> Result<Self> {
        if self.ambient() == Ambient::SolidTorus {
            return Err(Error::NotAdmissible(
                "admissible maps of the solid torus are isotopic to the identity".into(),
            ));
        }
        let d = self.ambient().dim();
        if !intmat::is_square(a, d) {
            return Err(Error::AmbientMismatch(format!("{} twists are {d}x{d} matrices", self.ambient())));
        }
        let det = intmat::det(a)?;
        if det != 1 {
            return Err(Error::NotAdmissible(format!("twist has determinant {det}, expected 1")));
        }
        Self::new(self.family, &intmat::mul_vec(a, &self.params)?)
    }

    /// Total longitudinal winding, `p + l`; invariant under lifts.
    fn winding(&self) -> i64 {
        self.params[0] + i64::from(self.family == Family::T1)
    }

    fn twist_sign(&self) -> i64 {
        sign(self.params[1])
    }
}

fn same_ambient(a: &ElementaryLink, b: &ElementaryLink) -> Result<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(format!("{} vs {}", a.ambient(), b.ambient())));
    }
    Ok(())
}

impl fmt::Display for ElementaryLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(", self.family)?;
        for (i, x) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for ElementaryLink {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('\u{2212}', "-");
        let bad = || Error::Parse(format!("expected T0(p,q), T1(p,q), T2(p,q) or T3(p,q,r), got `{s}`"));
        let (head, rest) = t.split_at_checked(2).ok_or_else(bad)?;
        let family = match head {
            "T0" => Family::T0,
            "T1" => Family::T1,
            "T2" => Family::T2,
            "T3" => Family::T3,
            _ => return Err(bad()),
        };
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let params = inner
            .split(',')
            .map(|x| x.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        ElementaryLink::new(family, &params)
    }
}

/// Data realizing a common cover: twist each link (T2/T3 only), then lift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaleWitness {
    pub twist0: Option<Matrix>,
    pub cover0: Lattice,
    pub twist1: Option<Matrix>,
    pub cover1: Lattice,
    pub common: ElementaryLink,
}

impl ScaleWitness {
    pub fn degrees(&self) -> (i64, i64) {
        (self.cover0.index(), self.cover1.index())
    }

    fn side(e: &ElementaryLink, twist: &Option<Matrix>, cover: &Lattice) -> Result<ElementaryLink> {
        let e = match twist {
            Some(a) => e.dehn_twist(a)?,
            None => e.clone(),
        };
        e.lift(cover)
    }

    /// Recomputes both sides and checks they meet in `common`.
    pub fn replay(&self, e0: &ElementaryLink, e1: &ElementaryLink) -> Result<bool> {
        let a = Self::side(e0, &self.twist0, &self.cover0)?;
        let b = Self::side(e1, &self.twist1, &self.cover1)?;
        Ok(a == self.common && b == self.common)
    }

    fn swapped(self) -> Self {
        ScaleWitness {
            twist0: self.twist1,
            cover0: self.cover1,
            twist1: self.twist0,
            cover1: self.cover0,
            common: self.common,
        }
    }
}

/// Names the invariant that separates two links, with its two values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Separation {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.invariant, self.left, self.right)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScaleVerdict {
    Yes(ScaleWitness),
    No(Separation),
    Unknown,
}

impl fmt::Display for ScaleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleVerdict::Yes(w) => {
                let (a, b) = w.degrees();
                write!(f, "Yes({a},{b})")
            }
            ScaleVerdict::No(s) => write!(f, "No({s})"),
            ScaleVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

fn cyclic_witness(n0: i64, n1: i64, common: ElementaryLink) -> Result<ScaleVerdict> {
    Ok(ScaleVerdict::Yes(ScaleWitness {
        twist0: None,
        cover0: Lattice::cyclic(n0)?,
        twist1: None,
        cover1: Lattice::cyclic(n1)?,
        common,
    }))
}

/// Witness degrees for T_l(p,q0) against T_l(p,q1) with the same sign of q.
fn same_family_degrees(q0: i64, q1: i64) -> (i64, i64) {
    let g = gcd(q0, q1);
    (q1.abs() / g, q0.abs() / g)
}

fn solid_scale(e0: &ElementaryLink, e1: &ElementaryLink, bound: i64) -> Result<ScaleVerdict> {
    let (w0, w1) = (e0.winding(), e1.winding());
    if w0 != w1 {
        return Ok(ScaleVerdict::No(Separation {
            invariant: "winding".into(),
            left: w0.to_string(),
            right: w1.to_string(),
        }));
    }
    if w0 == 0 {
        // T0(0,q): not Seifert fibered, outside the exact case analysis
        return Ok(brute_force_solid(e0, e1, bound)?.unwrap_or(ScaleVerdict::Unknown));
    }
    let (s0, s1) = (e0.twist_sign(), e1.twist_sign());
    if s0 != s1 {
        return Ok(ScaleVerdict::No(Separation {
            invariant: "twist sign".into(),
            left: s0.to_string(),
            right: s1.to_string(),
        }));
    }
    if s0 == 0 {
        // both equal T1(w-1, 0), which only lifts to itself
        return cyclic_witness(1, 1, e0.clone());
    }
    match (e0.family, e1.family) {
        (a, b) if a == b => {
            let (n0, n1) = same_family_degrees(e0.params[1], e1.params[1]);
            let common = e0.lift(&Lattice::cyclic(n0)?)?;
            cyclic_witness(n0, n1, common)
        }
        (Family::T0, Family::T1) => {
            let (p0, q0) = (e0.params[0], e0.params[1]);
            let g0 = gcd(p0, q0);
            // lift(T0(p0,q0), k p0/g0) = T1(p0-1, (p0-1) k q0/g0); match against n1 q1
            let a = (p0 - 1) * (q0 / g0).abs();
            let b = e1.params[1].abs();
            let g = gcd(a, b);
            let (k, n1) = (b / g, a / g);
            let n0 = k * (p0 / g0);
            let common = e1.lift(&Lattice::cyclic(n1)?)?;
            cyclic_witness(n0, n1, common)
        }
        (Family::T1, Family::T0) => Ok(match solid_scale(e1, e0, bound)? {
            ScaleVerdict::Yes(w) => ScaleVerdict::Yes(w.swapped()),
            other => other,
        }),
        _ => unreachable!("solid torus families are T0 and T1"),
    }
}

fn brute_force_solid(e0: &ElementaryLink, e1: &ElementaryLink, bound: i64) -> Result<Option<ScaleVerdict>> {
    let lifts1: Vec<(i64, ElementaryLink)> =
        (1..=bound).map(|n| Ok((n, e1.lift(&Lattice::cyclic(n)?)?))).collect::<Result<_>>()?;
    for n0 in 1..=bound {
        let l0 = e0.lift(&Lattice::cyclic(n0)?)?;
        if let Some((n1, _)) = lifts1.iter().find(|(_, l)| *l == l0) {
            return Ok(Some(cyclic_witness(n0, *n1, l0)?));
        }
    }
    Ok(None)
}

/// Twist sending the primitive direction to the first axis, then a cover
/// along the last axis multiplying the component count by `m`.
fn reduce_to_axis(e: &ElementaryLink, m: i64) -> Result<(Option<Matrix>, Lattice)> {
    let d = gcd_all(&e.params);
    let prim: Vec<i64> = e.params.iter().map(|x| x / d).collect();
    let a = intmat::to_first_axis(&prim)?;
    let twist = (a != intmat::identity(prim.len())).then_some(a);
    let mut diag = vec![1; prim.len()];
    *diag.last_mut().unwrap() = m;
    Ok((twist, Lattice::diag(&diag)?))
}

/// Decides whether two elementary links have a common finite cover (after
/// admissible twists). `bound` limits the brute-force fallback.
pub fn scale_equivalent(e0: &ElementaryLink, e1: &ElementaryLink, bound: i64) -> Result<ScaleVerdict> {
    same_ambient(e0, e1)?;
    if e0.ambient() == Ambient::SolidTorus {
        return solid_scale(e0, e1, bound);
    }
    let (d0, d1) = (gcd_all(&e0.params), gcd_all(&e1.params));
    let (twist0, cover0) = reduce_to_axis(e0, d1)?;
    let (twist1, cover1) = reduce_to_axis(e1, d0)?;
    let mut common = vec![0; e0.params.len()];
    common[0] = d0.checked_mul(d1).ok_or(Error::Overflow)?;
    let common = ElementaryLink::new(e0.family, &common)?;
    Ok(ScaleVerdict::Yes(ScaleWitness { twist0, cover0, twist1, cover1, common }))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MinimalStatus {
    /// The unique minimal motif of the periodic tangle.
    Unique,
    /// Several pairwise non-isotopic minimal motifs; `link` is the first.
    NotUnique(Vec<ElementaryLink>),
    /// Least element found, without a uniqueness proof.
    BestKnown,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalMotif {
    pub link: ElementaryLink,
    pub status: MinimalStatus,
}

/// Minimal motif of the periodic tangle whose motif is `e`.
pub fn minimal_motif(e: &ElementaryLink) -> Result<MinimalMotif> {
    let unique = |link| Ok(MinimalMotif { link, status: MinimalStatus::Unique });
    match e.family {
        Family::T2 => unique(ElementaryLink::t2(1, 0)?),
        Family::T3 => unique(ElementaryLink::t3(1, 0, 0)?),
        Family::T0 | Family::T1 => {
            let (w, s) = (e.winding(), e.twist_sign());
            match (w, s) {
                (0, _) => Ok(MinimalMotif { link: ElementaryLink::t0(0, 1)?, status: MinimalStatus::BestKnown }),
                // T1(w-1, 0) is its own cover in every degree and covers nothing else
                (_, 0) => unique(e.clone()),
                (1, _) => unique(ElementaryLink::t1(0, 1)?),
                (2, _) => unique(ElementaryLink::t0(2, s)?),
                _ => {
                    let c = vec![ElementaryLink::t0(w, s)?, ElementaryLink::t1(w - 1, s)?];
                    Ok(MinimalMotif { link: c[0].clone(), status: MinimalStatus::NotUnique(c) })
                }
            }
        }
    }
}

/// Quotient of `etilde` (given on the cover `meet(l0, l1)`) by the deck
/// group generated by both covers, returned with `join(l0, l1)`.
///
/// Works through the density vector `B y / det B`, which every lift preserves.
pub fn join_quotient(etilde: &ElementaryLink, l0: &Lattice, l1: &Lattice) -> Result<(ElementaryLink, Lattice)> {
    if etilde.ambient() == Ambient::SolidTorus {
        return Err(Error::NoCommonQuotient("defined for T2xI and T3 only".into()));
    }
    let d = etilde.ambient().dim();
    if l0.dim() != d || l1.dim() != d {
        return Err(Error::AmbientMismatch(format!("{} needs rank-{d} lattices", etilde.ambient())));
    }
    let m = l0.meet(l1)?;
    let j = l0.join(l1)?;
    let t = intmat::mul_vec(m.basis(), etilde.params())?;
    let n = m.index();
    let quotient = |l: &Lattice| -> Result<Option<Vec<i64>>> {
        let v = intmat::mul_vec(&intmat::adj(l.basis())?, &t)?;
        Ok(v.iter().all(|x| x % n == 0).then(|| v.iter().map(|x| x / n).collect()))
    };
    for (name, l) in [("L0", l0), ("L1", l1)] {
        if quotient(l)?.is_none() {
            return Err(Error::NoCommonQuotient(format!("{etilde} on {m} is not a lift of a link on {name} = {l}")));
        }
    }
    let e = quotient(&j)?
        .ok_or_else(|| Error::NoCommonQuotient(format!("{etilde} does not descend to {j}")))?;
    Ok((ElementaryLink::new(etilde.family, &e)?, j))
}
