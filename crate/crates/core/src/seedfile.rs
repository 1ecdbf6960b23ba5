//! Text format for seeds.
//!
//! ```text
//! ring { coeff A B ; coeff_inv X ; cluster x y ; }
//! seed { x : A + y ; y : B*X + x ; }
//! ```
//!
//! `#` starts a comment. Exchange polynomials may be listed in any order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{parse_expr_at, IrredBudget, MPoly};
use crate::ring::RingSpec;
use crate::seed::Seed;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let mut chars: Vec<char> = text.chars().collect();
        let mut in_comment = false;
        for c in chars.iter_mut() {
            if *c == '\n' {
                in_comment = false;
            } else if *c == '#' || in_comment {
                in_comment = true;
                *c = ' ';
            }
        }
        Cursor { chars, pos: 0, line: 1, col: 1 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.col, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let mut w = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
            w.push(c);
            self.bump();
        }
        if w.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a name, found `{c}`")),
                None => self.error("expected a name, found end of input"),
            });
        }
        Ok(w)
    }

    fn try_punct(&mut self, p: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn punct(&mut self, p: char) -> Result<()> {
        if self.try_punct(p) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(c) => self.error(format!("expected `{p}`, found `{c}`")),
                None => self.error(format!("expected `{p}`, found end of input")),
            })
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (line, col) = (self.line, self.col);
        let w = self.word()?;
        if w == kw {
            Ok(())
        } else {
            Err(Error::Parse { line, column: col, message: format!("expected `{kw}`, found `{w}`") })
        }
    }

    /// Raw text up to the next `;`, with its start position.
    fn until_semicolon(&mut self) -> Result<(String, usize, usize)> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let mut s = String::new();
        loop {
            match self.peek() {
                Some(';') => {
                    self.bump();
                    return Ok((s, line, col));
                }
                Some('}') | None => return Err(self.error("expected `;` after expression")),
                Some(c) => {
                    s.push(c);
                    self.bump();
                }
            }
        }
    }
}

/// Parses a ring block and a seed block. The seed is validated under
/// `budget`.
pub fn parse_seed(text: &str, budget: IrredBudget) -> Result<Seed> {
    let (ring, polys) = parse_seed_parts(text)?;
    Seed::new(ring, polys, budget)
}

/// Parses without validating.
pub fn parse_seed_parts(text: &str) -> Result<(RingSpec, Vec<MPoly>)> {
    let mut c = Cursor::new(text);
    c.keyword("ring")?;
    c.punct('{')?;
    let (mut coeff, mut inv, mut cluster) = (Vec::new(), Vec::new(), None);
    while !c.try_punct('}') {
        let (line, col) = (c.line, c.col);
        let kind = c.word()?;
        let mut names = Vec::new();
        while !c.try_punct(';') {
            names.push(c.word()?);
        }
        match kind.as_str() {
            "coeff" => coeff.extend(names),
            "coeff_inv" => inv.extend(names),
            "cluster" => cluster = Some(names),
            _ => {
                return Err(Error::Parse {
                    line,
                    column: col,
                    message: format!("unknown ring clause `{kind}`"),
                })
            }
        }
    }
    let cluster = cluster.ok_or_else(|| c.error("ring has no cluster clause"))?;
    let ring = RingSpec::new(coeff, inv, cluster)?;
    c.keyword("seed")?;
    c.punct('{')?;
    let mut polys: Vec<Option<MPoly>> = vec![None; ring.rank()];
    while !c.try_punct('}') {
        let (line, col) = (c.line, c.col);
        let name = c.word()?;
        let slot = ring.cluster_syms().iter().position(|s| *s == name).ok_or_else(|| Error::Parse {
            line,
            column: col,
            message: format!("`{name}` is not a cluster variable"),
        })?;
        c.punct(':')?;
        let (expr, el, ec) = c.until_semicolon()?;
        if polys[slot].is_some() {
            return Err(Error::Parse { line, column: col, message: format!("`{name}` listed twice") });
        }
        polys[slot] = Some(parse_expr_at(&expr, &ring, el, ec)?);
    }
    if !c.at_end() {
        return Err(c.error("unexpected text after seed block"));
    }
    let polys = polys
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| c.error(format!("no exchange polynomial for `{}`", ring.cluster_syms()[i])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, polys))
}

/// Seed file text for the current cluster of `s`.
pub fn write_seed(s: &Seed) -> String {
    let r = s.ring();
    let mut out = String::from("ring {");
    if !r.coeff_gens().is_empty() {
        let _ = write!(out, " coeff {} ;", r.coeff_gens().join(" "));
    }
    if !r.inv_gens().is_empty() {
        let _ = write!(out, " coeff_inv {} ;", r.inv_gens().join(" "));
    }
    let _ = writeln!(out, " cluster {} ; }}", r.cluster_syms().join(" "));
    out.push_str("seed {\n");
    for i in 0..s.rank() {
        let _ = writeln!(out, "  {} : {} ;", r.cluster_syms()[i], s.poly(i).display(r));
    }
    out.push_str("}\n");
    out
}
