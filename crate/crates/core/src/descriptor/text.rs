//! Text form: `motif{ ambient: T3, body: layered[T2(1,0), hyp(W, vol=3.66)], local: [], khb: 0 }`.
//! `split` replaces `motif` exactly when local links are present.

use std::str::FromStr;

use super::{inferred_ambient, Body, MotifDescriptor, Piece, SeifertSymbol};
use crate::elementary::{Ambient, ElementaryLink, Family};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Word(String),
    Punct(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "{}[](),:;/=".contains(c) {
            out.push(Tok::Punct(c));
            chars.next();
        } else if c.is_alphanumeric() || "_.+-\u{2212}".contains(c) {
            let mut w = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || "_.+-".contains(c) {
                    w.push(c);
                } else if c == '\u{2212}' {
                    w.push('-');
                } else {
                    break;
                }
                chars.next();
            }
            out.push(Tok::Word(w));
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Tok::Punct(d) if d == c => Ok(()),
            t => Err(Error::Parse(format!("expected `{c}`, found {}", show(&t)))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Word(w) => Ok(w),
            t => Err(Error::Parse(format!("expected a word, found {}", show(&t)))),
        }
    }

    fn int<T: FromStr>(&mut self) -> Result<T> {
        let w = self.word()?;
        w.parse().map_err(|_| Error::Parse(format!("`{w}` is not an integer in range")))
    }

    /// Comma separated items up to `close`, trailing comma allowed.
    fn list<T>(&mut self, close: char, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        while !self.eat(close) {
            out.push(item(self)?);
            if !self.eat(',') {
                self.punct(close)?;
                break;
            }
        }
        Ok(out)
    }

    fn link_after(&mut self, head: &str) -> Result<ElementaryLink> {
        let family = match head {
            "T0" => Family::T0,
            "T1" => Family::T1,
            "T2" => Family::T2,
            "T3" => Family::T3,
            _ => return Err(Error::Parse(format!("unknown piece `{head}`"))),
        };
        self.punct('(')?;
        let params: Vec<i64> = self.list(')', |p| p.int())?;
        ElementaryLink::new(family, &params)
    }

    fn link(&mut self) -> Result<ElementaryLink> {
        let head = self.word()?;
        self.link_after(&head)
    }

    fn seifert(&mut self) -> Result<SeifertSymbol> {
        let m = self.word()?;
        if m != "M" {
            return Err(Error::Parse(format!("expected `M(...)`, found `{m}`")));
        }
        self.punct('(')?;
        let genus = self.int()?;
        self.punct(',')?;
        let boundary = self.int()?;
        self.punct(';')?;
        let slopes = self.list(')', |p| {
            let a = p.int()?;
            p.punct('/')?;
            Ok((a, p.int()?))
        })?;
        SeifertSymbol::new(genus, boundary, &slopes)
    }

    fn piece(&mut self) -> Result<Piece> {
        let head = self.word()?;
        match head.as_str() {
            "hyp" => {
                self.punct('(')?;
                let id = self.word()?;
                let volume = if self.eat(',') {
                    let key = self.word()?;
                    if key != "vol" {
                        return Err(Error::Parse(format!("unknown hyperbolic attribute `{key}`")));
                    }
                    self.punct('=')?;
                    let v = self.word()?;
                    Some(v.parse::<f64>().map_err(|_| Error::Parse(format!("`{v}` is not a volume")))?)
                } else {
                    None
                };
                self.punct(')')?;
                Ok(Piece::Hyperbolic { id, volume })
            }
            "seifert" => {
                self.punct('(')?;
                let s = self.seifert()?;
                self.punct(')')?;
                Ok(Piece::Seifert(s))
            }
            "sat" => {
                self.punct('(')?;
                let outer = self.link()?;
                self.punct(',')?;
                let inner = self.link()?;
                self.punct(')')?;
                Ok(Piece::Satellite { outer, inner })
            }
            _ => Ok(Piece::Elementary(self.link_after(&head)?)),
        }
    }

    fn body(&mut self) -> Result<Body> {
        match self.peek() {
            Some(Tok::Word(w)) if w == "empty" => {
                self.pos += 1;
                Ok(Body::Empty)
            }
            Some(Tok::Word(w)) if w == "layered" => {
                self.pos += 1;
                self.punct('[')?;
                Ok(Body::Layered(self.list(']', |p| p.piece())?))
            }
            _ => Ok(Body::Single(self.piece()?)),
        }
    }

    fn descriptor(&mut self) -> Result<MotifDescriptor> {
        let head = self.word()?;
        if head != "motif" && head != "split" {
            return Err(Error::Parse(format!("expected `motif` or `split`, found `{head}`")));
        }
        self.punct('{')?;
        let (mut ambient, mut body, mut local, mut khb) = (None, None, None, None);
        self.list('}', |p| {
            let key = p.word()?;
            p.punct(':')?;
            let dup = match key.as_str() {
                "ambient" => ambient.replace(p.word()?.parse::<Ambient>()?).is_some(),
                "body" => body.replace(p.body()?).is_some(),
                "local" => {
                    p.punct('[')?;
                    local.replace(p.list(']', |p| p.word())?).is_some()
                }
                "khb" => khb.replace(p.int::<u64>()?).is_some(),
                _ => return Err(Error::Parse(format!("unknown field `{key}`"))),
            };
            if dup {
                return Err(Error::Parse(format!("field `{key}` given twice")));
            }
            Ok(())
        })?;
        let body = body.ok_or_else(|| Error::Parse("missing field `body`".into()))?;
        let ambient = match ambient.or_else(|| inferred_ambient(&body)) {
            Some(a) => a,
            None => return Err(Error::Parse("cannot infer `ambient`; give it explicitly".into())),
        };
        let d = MotifDescriptor::new(ambient, body, local.unwrap_or_default(), khb.unwrap_or(0))?;
        if (head == "split") != d.is_split() {
            return Err(Error::Parse(format!(
                "`{head}` head does not match {} local links",
                d.local_links().len()
            )));
        }
        Ok(d)
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Punct(c) => format!("`{c}`"),
    }
}

fn parse_all<T>(s: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let out = f(&mut p)?;
    if let Some(t) = p.peek() {
        return Err(Error::Parse(format!("trailing input at {}", show(t))));
    }
    Ok(out)
}

impl FromStr for MotifDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, |p| p.descriptor())
    }
}

impl FromStr for SeifertSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, |p| p.seifert())
    }
}

impl FromStr for Piece {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_all(s, |p| p.piece())
    }
}
