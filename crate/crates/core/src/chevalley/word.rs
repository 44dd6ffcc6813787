//! Words in root and torus generators, with a text form.
//!
//! Grammar (letters separated by whitespace):
//!
//! ```text
//! word   := letter*
//! letter := "x[" root "](" elem ")" | "h[" root "](" elem ")" | "conj(" word ";" word ")"
//! ```
//!
//! Roots are written in simple-root coordinates (`a1+2a2`), elements in the
//! ring's text form (`1,-2/u^3`).

use crate::ring::{Elem, Ring};
use crate::roots::{Root, RootSystem};

use super::ChevalleyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    Root { root: Root, t: Elem },
    Torus { root: Root, t: Elem },
    /// Evaluates to `prefix * inner * prefix^-1`.
    Conjugate { prefix: Word, inner: Word },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn root(root: &Root, t: Elem) -> Self {
        Word(vec![Letter::Root {
            root: root.clone(),
            t,
        }])
    }

    pub fn push_root(&mut self, root: &Root, t: Elem) {
        self.0.push(Letter::Root {
            root: root.clone(),
            t,
        });
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend(&mut self, other: Word) {
        self.0.extend(other.0);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator letters after expanding conjugates as
    /// `prefix inner prefix^-1`. A torus letter counts once.
    pub fn letter_count(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Root { .. } | Letter::Torus { .. } => 1,
                Letter::Conjugate { prefix, inner } => 2 * prefix.letter_count() + inner.letter_count(),
            })
            .sum()
    }

    /// Formal inverse. A torus letter `h_a(t)` inverts to `h_a(t^-1)`, which
    /// needs `t` to be a unit.
    pub fn inverse(&self, ring: &Ring) -> Result<Word, ChevalleyError> {
        let mut out = Vec::with_capacity(self.0.len());
        for l in self.0.iter().rev() {
            out.push(match l {
                Letter::Root { root, t } => Letter::Root {
                    root: root.clone(),
                    t: ring.neg(t),
                },
                Letter::Torus { root, t } => Letter::Torus {
                    root: root.clone(),
                    t: ring.inv(t)?,
                },
                Letter::Conjugate { prefix, inner } => Letter::Conjugate {
                    prefix: prefix.clone(),
                    inner: inner.inverse(ring)?,
                },
            });
        }
        Ok(Word(out))
    }

    /// The word with every conjugate expanded, so only root and torus letters remain.
    pub fn flatten(&self, ring: &Ring) -> Result<Word, ChevalleyError> {
        let mut out = Word::new();
        for l in &self.0 {
            match l {
                Letter::Conjugate { prefix, inner } => {
                    let p = prefix.flatten(ring)?;
                    out.extend(p.clone());
                    out.extend(inner.flatten(ring)?);
                    out.extend(p.inverse(ring)?);
                }
                other => out.push(other.clone()),
            }
        }
        Ok(out)
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Root { root, t } => format!("x[{root}]({})", ring.format(t)),
                Letter::Torus { root, t } => format!("h[{root}]({})", ring.format(t)),
                Letter::Conjugate { prefix, inner } => {
                    format!("conj({}; {})", prefix.format(ring), inner.format(ring))
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses the text form; roots must belong to `sys` and torus parameters
    /// must be units of `ring`.
    pub fn parse(text: &str, sys: &RootSystem, ring: &Ring) -> Result<Word, ChevalleyError> {
        let mut p = Parser {
            src: text.as_bytes(),
            text,
            pos: 0,
            sys,
            ring,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    sys: &'a RootSystem,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ChevalleyError {
        ChevalleyError::Parse(format!("{msg} at byte {} in `{}`", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ChevalleyError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{s}`")))
        }
    }

    fn until(&mut self, stop: u8) -> Result<&str, ChevalleyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != stop {
            self.pos += 1;
        }
        if self.pos == self.src.len() {
            return Err(self.error(&format!("missing `{}`", stop as char)));
        }
        let s = &self.text[start..self.pos];
        self.pos += 1;
        Ok(s)
    }

    fn word(&mut self) -> Result<Word, ChevalleyError> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            if self.pos == self.src.len() || matches!(self.src[self.pos], b';' | b')') {
                return Ok(Word(letters));
            }
            letters.push(self.letter()?);
        }
    }

    fn letter(&mut self) -> Result<Letter, ChevalleyError> {
        if self.eat("conj(") {
            let prefix = self.word()?;
            self.expect(";")?;
            let inner = self.word()?;
            self.skip_ws();
            self.expect(")")?;
            return Ok(Letter::Conjugate { prefix, inner });
        }
        let torus = if self.eat("x[") {
            false
        } else if self.eat("h[") {
            true
        } else {
            return Err(self.error("expected `x[`, `h[` or `conj(`"));
        };
        let root = self.sys.parse_root(self.until(b']')?.trim())?;
        self.expect("(")?;
        let t = self.ring.parse(self.until(b')')?)?;
        if torus {
            if !self.ring.is_unit(&t) {
                return Err(ChevalleyError::Ring(crate::ring::RingError::NotAUnit(self.ring.format(&t))));
            }
            Ok(Letter::Torus { root, t })
        } else {
            Ok(Letter::Root { root, t })
        }
    }
}
