//! One function per subcommand, each producing a text line or block and the
//! matching JSON object.

use periodic_motif::descriptor::{
    cover_degree_bound, degree_bound_rules, descriptor_equivalent, is_jsj_admissible, lift_descriptor,
    minimal_motif_descriptor, MinimalDescriptor,
};
use periodic_motif::diagram::{equivalence_search, SearchConfig, SearchVerdict, TorusDiagram};
use periodic_motif::elementary::{minimal_motif, scale_equivalent, MinimalStatus, ScaleVerdict, Separation};
use periodic_motif::lattice::parse_matrix;
use periodic_motif::{Ambient, DegreeBound, ElementaryLink, Error, Lattice, MotifDescriptor, Result, SeifertSymbol};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::input::{self, Input};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok,
    Negative,
    Unknown,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Unknown => 2,
        }
    }
}

pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

fn ok(text: String, json: Value) -> Result<Report> {
    Ok(Report { status: Status::Ok, text, json })
}

pub fn error_json(command: &str, e: &Error) -> Value {
    let kind = match e {
        Error::SingularBasis => "singular_basis",
        Error::Overflow => "overflow",
        Error::DimensionMismatch(..) => "dimension_mismatch",
        Error::InvalidParams(_) => "invalid_params",
        Error::AmbientMismatch(_) => "ambient_mismatch",
        Error::NotAdmissible(_) => "not_admissible",
        Error::NoCommonQuotient(_) => "no_common_quotient",
        Error::InvalidDiagram(_) => "invalid_diagram",
        Error::InvalidMove(_) => "invalid_move",
        Error::Parse(_) => "parse",
    };
    json!({ "command": command, "error": { "kind": kind, "message": e.to_string() } })
}

fn link_json(e: &ElementaryLink) -> Value {
    json!({
        "canonical": e.to_string(),
        "family": format!("{:?}", e.family()),
        "ambient": e.ambient().name(),
        "params": e.params(),
        "components": e.components(),
        "homology": e.homology_classes(),
    })
}

fn separation_json(s: &Separation) -> Value {
    json!({ "invariant": s.invariant, "left": s.left, "right": s.right })
}

pub fn canon(arg: &str) -> Result<Report> {
    match input::parse(arg)? {
        Input::Link(e) => {
            let mut j = link_json(&e);
            j["kind"] = "link".into();
            ok(e.to_string(), j)
        }
        Input::Descriptor(d) => {
            let text = d.to_string();
            ok(text.clone(), json!({ "kind": "descriptor", "canonical": text, "ambient": d.ambient().name() }))
        }
        Input::Diagram(d) => {
            let h = d.canonical_hash();
            ok(h.clone(), json!({ "kind": "diagram", "canonical": h }))
        }
    }
}

pub fn lift(arg: &str, lattice: &str) -> Result<Report> {
    let l: Lattice = lattice.parse()?;
    let (kind, text, result) = match input::parse(arg)? {
        Input::Link(e) => {
            let up = e.lift(&l)?;
            ("link", up.to_string(), Value::String(up.to_string()))
        }
        Input::Descriptor(d) => {
            let up = lift_descriptor(&d, &l)?;
            ("descriptor", up.to_string(), Value::String(up.to_string()))
        }
        Input::Diagram(d) => {
            let up = d.lift(&l)?;
            ("diagram", up.to_json_pretty(), up.to_json_value())
        }
    };
    ok(text, json!({ "kind": kind, "lattice": l.to_string(), "index": l.index(), "result": result }))
}

pub fn twist(arg: &str, matrix: &str) -> Result<Report> {
    let a = parse_matrix(matrix)?;
    let (kind, text, result) = match input::parse(arg)? {
        Input::Link(e) => {
            let t = e.dehn_twist(&a)?;
            ("link", t.to_string(), Value::String(t.to_string()))
        }
        Input::Diagram(d) => {
            let t = d.dehn_twist(&a)?;
            ("diagram", t.to_json_pretty(), t.to_json_value())
        }
        Input::Descriptor(_) => return Err(Error::Parse("twist takes a link or a diagram file".into())),
    };
    ok(text, json!({ "kind": kind, "matrix": a, "result": result }))
}

fn verdict_report(status: Status, text: String, mut j: Value) -> Result<Report> {
    j["verdict"] = match status {
        Status::Ok => "yes",
        Status::Negative => "no",
        Status::Unknown => "unknown",
    }
    .into();
    Ok(Report { status, text, json: j })
}

fn ambient_separation(a: Ambient, b: Ambient) -> Separation {
    Separation { invariant: "ambient".into(), left: a.name().into(), right: b.name().into() }
}

pub fn equiv(a: &str, b: &str, bound: Option<u64>, twists: bool, budget: &Budget) -> Result<Report> {
    match (input::parse(a)?, input::parse(b)?) {
        (Input::Link(x), Input::Link(y)) => equiv_links(&x, &y, bound.unwrap_or(budget.bound)),
        (Input::Diagram(x), Input::Diagram(y)) => {
            let mut cfg = budget.search.clone();
            cfg.allow_twists = twists;
            if let Some(n) = bound {
                cfg.max_depth = n as usize;
            }
            equiv_diagrams(&x, &y, &cfg)
        }
        (Input::Diagram(_), _) | (_, Input::Diagram(_)) => {
            Err(Error::Parse("equiv compares two diagrams, or two links and descriptors".into()))
        }
        (x, y) => {
            let x = input::descriptor_of(x);
            let y = input::descriptor_of(y);
            equiv_descriptors(&x, &y)
        }
    }
}

fn equiv_links(x: &ElementaryLink, y: &ElementaryLink, bound: u64) -> Result<Report> {
    let base = json!({ "kind": "link", "left": x.to_string(), "right": y.to_string() });
    if x.ambient() != y.ambient() {
        let sep = ambient_separation(x.ambient(), y.ambient());
        return verdict_report(Status::Negative, format!("No({sep})"), with(base, "separation", separation_json(&sep)));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::Overflow)?;
    let v = scale_equivalent(x, y, bound)?;
    match &v {
        ScaleVerdict::Yes(w) => {
            let (n0, n1) = w.degrees();
            let witness = json!({
                "degrees": [n0, n1],
                "twist0": w.twist0,
                "cover0": w.cover0.to_string(),
                "twist1": w.twist1,
                "cover1": w.cover1.to_string(),
                "common": w.common.to_string(),
                "replayed": w.replay(x, y)?,
            });
            let text = format!("{v}\ncommon cover {} over {} and {}", w.common, w.cover0, w.cover1);
            verdict_report(Status::Ok, text, with(base, "witness", witness))
        }
        ScaleVerdict::No(sep) => verdict_report(Status::Negative, v.to_string(), with(base, "separation", separation_json(sep))),
        ScaleVerdict::Unknown => verdict_report(Status::Unknown, format!("{v} (no common cover up to degree {bound})"), base),
    }
}

fn equiv_diagrams(x: &TorusDiagram, y: &TorusDiagram, cfg: &SearchConfig) -> Result<Report> {
    let base = json!({ "kind": "diagram", "twists": cfg.allow_twists, "max_depth": cfg.max_depth });
    let v = equivalence_search(x, y, cfg)?;
    match &v {
        SearchVerdict::Yes(c) => {
            let mut text = v.to_string();
            if let Some(t) = &c.twist {
                text.push_str(&format!("\ntwist {t:?}"));
            }
            for m in &c.left {
                text.push_str(&format!("\nleft  {m}"));
            }
            for m in &c.right {
                text.push_str(&format!("\nright {m}"));
            }
            let mut j = with(base, "certificate", serde_json::to_value(c).expect("certificates serialize"));
            j["replayed"] = c.replay(x, y)?.into();
            verdict_report(Status::Ok, text, j)
        }
        SearchVerdict::No(sep) => verdict_report(Status::Negative, v.to_string(), with(base, "separation", separation_json(sep))),
        SearchVerdict::Unknown { explored } => {
            verdict_report(Status::Unknown, v.to_string(), with(base, "explored", (*explored).into()))
        }
    }
}

fn equiv_descriptors(x: &MotifDescriptor, y: &MotifDescriptor) -> Result<Report> {
    let base = json!({ "kind": "descriptor", "left": x.to_string(), "right": y.to_string() });
    if x.ambient() != y.ambient() {
        let sep = ambient_separation(x.ambient(), y.ambient());
        return verdict_report(Status::Negative, format!("No({sep})"), with(base, "separation", separation_json(&sep)));
    }
    if descriptor_equivalent(x, y)? {
        return verdict_report(Status::Ok, "Yes".into(), base);
    }
    let sorted = |d: &MotifDescriptor| {
        let mut l = d.local_links().to_vec();
        l.sort();
        format!("[{}]", l.join(", "))
    };
    let sep = if sorted(x) != sorted(y) {
        Separation { invariant: "local links".into(), left: sorted(x), right: sorted(y) }
    } else if x.knotted_hole_balls() != y.knotted_hole_balls() {
        let (l, r) = (x.knotted_hole_balls(), y.knotted_hole_balls());
        Separation { invariant: "knotted-hole balls".into(), left: l.to_string(), right: r.to_string() }
    } else {
        Separation { invariant: "body".into(), left: x.body().to_string(), right: y.body().to_string() }
    };
    verdict_report(Status::Negative, format!("No({sep})"), with(base, "separation", separation_json(&sep)))
}

fn with(mut j: Value, key: &str, v: Value) -> Value {
    j[key] = v;
    j
}

fn bound_json(b: DegreeBound) -> Value {
    match b {
        DegreeBound::Finite(n) => json!({ "kind": "finite", "value": n }),
        DegreeBound::Unbounded => json!({ "kind": "unbounded", "value": null }),
        DegreeBound::Unknown => json!({ "kind": "unknown", "value": null }),
    }
}

pub fn minimal(arg: &str) -> Result<Report> {
    match input::parse(arg)? {
        Input::Link(e) => {
            let m = minimal_motif(&e)?;
            let (status, candidates) = match &m.status {
                MinimalStatus::Unique => ("exact", vec![]),
                MinimalStatus::BestKnown => ("best_known", vec![]),
                MinimalStatus::NotUnique(c) => ("not_unique", c.iter().map(ToString::to_string).collect()),
            };
            let text = match status {
                "exact" => m.link.to_string(),
                "best_known" => format!("{} (best known)", m.link),
                _ => format!("not unique: {}", candidates.join(", ")),
            };
            ok(text, json!({ "kind": "link", "status": status, "result": m.link.to_string(), "candidates": candidates }))
        }
        Input::Descriptor(d) => {
            let (status, result, candidates, bound, text) = match minimal_motif_descriptor(&d)? {
                MinimalDescriptor::Exact(m) => ("exact", Some(m.to_string()), vec![], None, m.to_string()),
                MinimalDescriptor::BestKnown(m) => {
                    ("best_known", Some(m.to_string()), vec![], None, format!("{m} (best known)"))
                }
                MinimalDescriptor::NotUnique(c) => {
                    let c: Vec<String> = c.iter().map(ToString::to_string).collect();
                    let text = if c.is_empty() { "not unique".to_string() } else { format!("not unique: {}", c.join(", ")) };
                    ("not_unique", None, c, None, text)
                }
                MinimalDescriptor::BoundOnly(b) => {
                    ("bound_only", None, vec![], Some(b), format!("bound only: {b}"))
                }
            };
            let mut j = json!({ "kind": "descriptor", "status": status, "result": result, "candidates": candidates });
            j["bound"] = bound.map_or(Value::Null, bound_json);
            let unknown = bound == Some(DegreeBound::Unknown);
            Ok(Report { status: if unknown { Status::Unknown } else { Status::Ok }, text, json: j })
        }
        Input::Diagram(_) => Err(Error::Parse("minimal takes a link or a descriptor".into())),
    }
}

pub fn bound(arg: &str) -> Result<Report> {
    let d = input::descriptor(arg)?;
    let b = cover_degree_bound(&d);
    let rules: Vec<Value> = degree_bound_rules(&d).iter().map(|r| json!({ "rule": r.rule, "value": r.value })).collect();
    let mut text = b.to_string();
    for r in degree_bound_rules(&d) {
        text.push_str(&format!("\n  {}: {}", r.rule, r.value));
    }
    let j = json!({ "input": d.to_string(), "bound": bound_json(b), "rules": rules });
    let status = if b == DegreeBound::Unknown { Status::Unknown } else { Status::Ok };
    Ok(Report { status, text, json: j })
}

pub fn lattices(dim: usize, index: i64) -> Result<Report> {
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidParams(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    let ls = Lattice::enumerate(dim, index)?;
    let names: Vec<String> = ls.iter().map(ToString::to_string).collect();
    ok(names.join("\n"), json!({ "dim": dim, "index": index, "count": names.len(), "lattices": names }))
}

pub fn invariants(arg: &str) -> Result<Report> {
    let d = input::diagram(arg)?;
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations.join("; ")));
    }
    let classes = d.component_classes()?;
    let linking = d.linking_matrix()?;
    let hash = d.canonical_hash();
    let text = format!(
        "crossings {}\nfaces {}\ncomponents {}\nclasses {:?}\nlinking {:?}\nhash {}",
        d.crossing_count(),
        d.face_count(),
        classes.len(),
        classes,
        linking,
        hash
    );
    ok(
        text,
        json!({
            "valid": true,
            "crossings": d.crossing_count(),
            "loops": d.loops().len(),
            "faces": d.face_count(),
            "components": classes.len(),
            "classes": classes,
            "homology": d.homology_multiset()?,
            "linking": linking,
            "hash": hash,
        }),
    )
}

pub fn dot(arg: &str) -> Result<Report> {
    let d = input::diagram(arg)?;
    let dot = d.to_dot();
    ok(dot.trim_end().to_string(), json!({ "dot": dot }))
}

pub fn admissible(symbol: &str, ambient: &str) -> Result<Report> {
    let s: SeifertSymbol = symbol.parse()?;
    let ambient: Ambient = ambient.parse()?;
    let a = is_jsj_admissible(&s, ambient);
    let mut text = format!("{} in {ambient}: {}", s.normalize(), if a.admissible { "admissible" } else { "not admissible" });
    text.push_str(&format!("\n  {}", a.reason));
    if let Some(x) = &a.exception {
        text.push_str(&format!("\n  exception: {x}"));
    }
    // bounded symbols are compared with slopes reduced mod 1, a convention
    // rather than a stated equality, so it is reported
    let convention = (s.boundary() > 0).then_some("slopes reduced mod 1");
    if let Some(c) = convention {
        text.push_str(&format!("\n  convention: {c}"));
    }
    let j = json!({
        "convention": convention,
        "symbol": s.normalize().to_string(),
        "ambient": ambient.name(),
        "admissible": a.admissible,
        "reason": a.reason,
        "exception": a.exception,
    });
    Ok(Report { status: if a.admissible { Status::Ok } else { Status::Negative }, text, json: j })
}
