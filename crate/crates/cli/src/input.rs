//! Turning command-line arguments into links, descriptors and diagrams.

use std::path::Path;

use periodic_motif::diagram::TorusDiagram;
use periodic_motif::{ElementaryLink, Error, MotifDescriptor, Result};

pub enum Input {
    Link(ElementaryLink),
    Descriptor(MotifDescriptor),
    Diagram(TorusDiagram),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Link(_) => "link",
            Input::Descriptor(_) => "descriptor",
            Input::Diagram(_) => "diagram",
        }
    }
}

/// Drops `#` comments and blank lines from a text file.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// An argument is a file when one exists at that path; diagram files are
/// JSON, anything else is read as link or descriptor text.
pub fn parse(arg: &str) -> Result<Input> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let body = text.trim_start();
    if body.starts_with('{') {
        return TorusDiagram::from_json(body).map(Input::Diagram);
    }
    let body = strip_comments(&text);
    match body.parse::<ElementaryLink>() {
        Ok(e) => Ok(Input::Link(e)),
        Err(link_err) => match body.parse::<MotifDescriptor>() {
            Ok(d) => Ok(Input::Descriptor(d)),
            Err(desc_err) => Err(Error::Parse(format!(
                "`{body}` is neither a link ({link_err}) nor a descriptor ({desc_err})"
            ))),
        },
    }
}

pub fn diagram(arg: &str) -> Result<TorusDiagram> {
    match parse(arg)? {
        Input::Diagram(d) => Ok(d),
        other => Err(Error::Parse(format!("expected a diagram file, got a {}", other.kind()))),
    }
}

pub fn descriptor(arg: &str) -> Result<MotifDescriptor> {
    match parse(arg)? {
        Input::Diagram(_) => Err(Error::Parse("expected a link or descriptor, got a diagram".into())),
        other => Ok(descriptor_of(other)),
    }
}

/// A link read as the descriptor whose body is that link. Panics on diagrams.
pub fn descriptor_of(input: Input) -> MotifDescriptor {
    match input {
        Input::Link(e) => MotifDescriptor::elementary(e),
        Input::Descriptor(d) => d,
        Input::Diagram(_) => unreachable!("diagrams have no descriptor"),
    }
}
