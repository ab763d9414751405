//! Parsers for bundle and module specifications.
//!
//! ```text
//! bundle := term ('+' term)*
//! term   := [uint '*'] atom
//! atom   := 'O' '(' int ')' | 'omega' '(' int ',' int ')' | 'wedgeT' '(' int ',' int ')'
//!         | 'symT' '(' uint ',' int ')' | 'hom' '(' int ',' int ',' int ')'
//! module := 'M' '(' int ')' | 'L' '(' uint ')' | 'L+' '(' uint ')' | 'WedgeT' '(' uint ')'
//! ```

use std::fmt;

use nccr_core::bwb::{hom_bundle, line_bundle, omega, sym_tangent, wedge_tangent, BundleExpr};
use nccr_core::mutation::ModuleLabel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Line(i64),
    Omega(i64, i64),
    WedgeT(i64, i64),
    SymT(u32, i64),
    Hom(i64, i64, i64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Line(t) => write!(f, "O({t})"),
            Atom::Omega(p, t) => write!(f, "omega({p},{t})"),
            Atom::WedgeT(p, t) => write!(f, "wedgeT({p},{t})"),
            Atom::SymT(m, t) => write!(f, "symT({m},{t})"),
            Atom::Hom(a, b, c) => write!(f, "hom({a},{b},{c})"),
        }
    }
}

/// A parsed sum `Σ c_i atom_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub terms: Vec<(u32, Atom)>,
}

impl BundleSpec {
    pub fn build(&self, n: usize) -> nccr_core::Result<BundleExpr> {
        let mut out = BundleExpr::zero(n);
        for (c, atom) in &self.terms {
            let e = match *atom {
                Atom::Line(t) => line_bundle(n, t)?,
                Atom::Omega(p, t) => omega(n, p, t)?,
                Atom::WedgeT(p, t) => wedge_tangent(n, p, t)?,
                Atom::SymT(m, t) => sym_tangent(n, m, t)?,
                Atom::Hom(a, b, c) => hom_bundle(a, b, c, n)?,
            };
            out = out.plus(&e.scale(*c as i64));
        }
        Ok(out)
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '+' && self.pos > start)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error_at(start, "expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.error_at(start, format!("integer '{text}' out of range")))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error_at(start, format!("expected a nonnegative integer, found {v}")))
    }

    fn args(&mut self, count: usize) -> Result<Vec<(usize, i64)>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(',')?;
            }
            self.skip_ws();
            let at = self.pos;
            out.push((at, self.int()?));
        }
        self.expect(')')?;
        Ok(out)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<Atom, ParseError> {
    let (start, name) = cur.ident()?;
    Ok(match name.as_str() {
        "O" => Atom::Line(cur.args(1)?[0].1),
        "omega" => {
            let a = cur.args(2)?;
            Atom::Omega(a[0].1, a[1].1)
        }
        "wedgeT" => {
            let a = cur.args(2)?;
            Atom::WedgeT(a[0].1, a[1].1)
        }
        "symT" => {
            let a = cur.args(2)?;
            let m = u32::try_from(a[0].1).map_err(|_| cur.error_at(a[0].0, "symmetric power must be nonnegative"))?;
            Atom::SymT(m, a[1].1)
        }
        "hom" => {
            let a = cur.args(3)?;
            Atom::Hom(a[0].1, a[1].1, a[2].1)
        }
        other => {
            return Err(cur.error_at(
                start,
                format!("unknown bundle '{other}' (expected O, omega, wedgeT, symT or hom)"),
            ))
        }
    })
}

pub fn parse_bundle(src: &str) -> Result<BundleSpec, ParseError> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    loop {
        let coefficient = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = cur.uint()?;
            cur.expect('*')?;
            c
        } else {
            1
        };
        terms.push((coefficient, atom(&mut cur)?));
        if cur.peek() == Some('+') {
            cur.pos += 1;
        } else {
            break;
        }
    }
    cur.finish()?;
    Ok(BundleSpec { terms })
}

pub fn parse_module(src: &str) -> Result<ModuleLabel, ParseError> {
    let mut cur = Cursor::new(src);
    let (start, name) = cur.ident()?;
    let label = match name.as_str() {
        "M" => ModuleLabel::M(cur.args(1)?[0].1),
        "L" | "L+" | "WedgeT" => {
            cur.expect('(')?;
            let k = cur.uint()? as usize;
            cur.expect(')')?;
            match name.as_str() {
                "L" => ModuleLabel::L(k),
                "L+" => ModuleLabel::LPlus(k),
                _ => ModuleLabel::WedgeT(k),
            }
        }
        other => {
            return Err(cur.error_at(start, format!("unknown module '{other}' (expected M, L, L+ or WedgeT)")))
        }
    };
    cur.finish()?;
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_coefficients() {
        let s = parse_bundle("2*O(-1) + omega(1, 0)\n + hom(1,2,0)").unwrap();
        assert_eq!(
            s.terms,
            vec![(2, Atom::Line(-1)), (1, Atom::Omega(1, 0)), (1, Atom::Hom(1, 2, 0))]
        );
        assert_eq!(s.to_string(), "2*O(-1) + omega(1,0) + hom(1,2,0)");
    }

    #[test]
    fn error_positions() {
        let e = parse_bundle("O(1) +\n  omega(1 0)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
        let e = parse_bundle("Omega(1,0)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_bundle("O(x)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_bundle("O(1) O(2)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
    }

    #[test]
    fn modules() {
        assert_eq!(parse_module("M(-2)").unwrap(), ModuleLabel::M(-2));
        assert_eq!(parse_module("L+(1)").unwrap(), ModuleLabel::LPlus(1));
        assert_eq!(parse_module(" WedgeT( 0 )").unwrap(), ModuleLabel::WedgeT(0));
        assert!(parse_module("L(-1)").is_err());
        assert!(parse_module("N(1)").is_err());
    }
}
