use std::fmt;

use crate::elementary::Ambient;
use crate::error::{Error, Result};
use crate::intmat::gcd;

/// The manifolds whose Seifert fibration is not unique.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Exceptional {
    SolidTorus,
    ThickenedTorus,
    TwistedIBundle,
}

/// `M(g, b; a1/b1, ...)`, kept in normal form: slopes reduced into `[0, 1)`,
/// integer slopes dropped, sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeifertSymbol {
    genus: i64,
    boundary: u32,
    slopes: Vec<(i64, i64)>,
}

impl SeifertSymbol {
    pub fn new(genus: i64, boundary: u32, slopes: &[(i64, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(slopes.len());
        for &(a, b) in slopes {
            if b == 0 {
                return Err(Error::InvalidParams(format!("slope {a}/0 has zero denominator")));
            }
            let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
            let g = gcd(a, b);
            let (a, b) = (a / g, b / g);
            let a = a.rem_euclid(b);
            if a != 0 {
                out.push((a, b));
            }
        }
        out.sort();
        Ok(SeifertSymbol { genus, boundary, slopes: out })
    }

    /// Already normal; kept as an explicit, idempotent operation.
    pub fn normalize(&self) -> Self {
        self.clone()
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn slopes(&self) -> &[(i64, i64)] {
        &self.slopes
    }

    pub fn exceptional(&self) -> Option<Exceptional> {
        match (self.genus, self.boundary, self.slopes.as_slice()) {
            (0, 1, s) if s.len() <= 1 => Some(Exceptional::SolidTorus),
            (0, 2, []) => Some(Exceptional::ThickenedTorus),
            (0, 1, [(1, 2), (1, 2)]) | (-1, 1, []) => Some(Exceptional::TwistedIBundle),
            _ => None,
        }
    }
}

impl fmt::Display for SeifertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{};", self.genus, self.boundary)?;
        for (i, (a, b)) in self.slopes.iter().enumerate() {
            write!(f, "{}{a}/{b}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: String,
    /// Set when the piece is admissible only under a stated condition.
    pub exception: Option<String>,
}

/// Whether a normalized symbol can occur as a Seifert fibered JSJ piece of a
/// non-split link complement in the given ambient.
pub fn is_jsj_admissible(s: &SeifertSymbol, ambient: Ambient) -> Admissibility {
    let n = s.boundary;
    let yes = |reason: &str| Admissibility { admissible: true, reason: reason.into(), exception: None };
    let no = |reason: String| Admissibility { admissible: false, reason, exception: None };
    match (s.genus, s.slopes.as_slice()) {
        (0, [(a1, b1), (a2, b2)]) => {
            let det = *a1 as i128 * *b2 as i128 - *a2 as i128 * *b1 as i128;
            if n >= 1 && det.abs() == 1 {
                yes("two singular fibers with a1*b2 - a2*b1 = ±1 and n >= 1")
            } else if n < 1 {
                no("two singular fibers need n >= 1".into())
            } else {
                no(format!("two singular fibers need a1*b2 - a2*b1 = ±1, got {det}"))
            }
        }
        (0, [_]) => {
            if n >= 2 {
                yes("one singular fiber with n >= 2")
            } else {
                no(format!("one singular fiber needs n >= 2, got {n}"))
            }
        }
        (0, []) => {
            let min = if ambient == Ambient::SolidTorus { 2 } else { 3 };
            if n >= min && !(ambient == Ambient::SolidTorus && n == 2) {
                yes(&format!("no singular fiber with n >= {min}"))
            } else if ambient == Ambient::SolidTorus && n == 2 {
                Admissibility {
                    admissible: true,
                    reason: "M(0,2;) in the solid torus".into(),
                    exception: Some("thickened torus, fibration not unique; occurs only for T1(0,0)".into()),
                }
            } else {
                no(format!("no singular fiber needs n >= {min} in {ambient}, got {n}"))
            }
        }
        (1, []) if ambient == Ambient::ThreeTorus => {
            if n >= 1 {
                yes("genus one base without singular fibers, n >= 1")
            } else {
                no("M(1,n;) needs n >= 1".into())
            }
        }
        _ => no(format!("{s} is not in the list for {ambient}")),
    }
}
