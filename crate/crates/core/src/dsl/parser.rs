use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{Bindings, DslError};
use crate::symbol::{Atom, BlaschkeZeros, MifRef, NamedSource, OuterSource, PointMass, Space, SymbolExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Ref(String),
    Raw(String),
    Punct(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
    space: Space,
    bindings: &'a Bindings,
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, col)
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn number(&mut self) -> Option<f64> {
        let b = self.rest().as_bytes();
        let mut i = 0;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i < b.len() && b[i] == b'.' {
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == 0 || (i == 1 && b[0] == b'.') {
            return None;
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if j < b.len() && b[j].is_ascii_digit() {
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let v = self.rest()[..i].parse().ok()?;
        self.pos += i;
        Some(v)
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> (Tok, usize) {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.rest().chars().next() else { return (Tok::End, start) };
        if c.is_ascii_digit() || (c == '.' && self.rest()[1..].starts_with(|d: char| d.is_ascii_digit())) {
            if let Some(v) = self.number() {
                return (Tok::Num(v), start);
            }
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = self.rest().find(|d: char| !(d.is_ascii_alphanumeric() || d == '_')).unwrap_or(self.rest().len());
            let id = self.rest()[..len].to_string();
            self.pos += len;
            return (Tok::Ident(id), start);
        }
        if c == '@' {
            let r = &self.rest()[1..];
            let len = r.find(|d: char| !(d.is_ascii_alphanumeric() || "_-.".contains(d))).unwrap_or(r.len());
            let name = r[..len].to_string();
            self.pos += 1 + len;
            return (Tok::Ref(name), start);
        }
        self.pos += c.len_utf8();
        (Tok::Punct(c), start)
    }

    /// Raw text up to (not including) `close`.
    fn raw_until(&mut self, close: char) -> Option<(String, usize)> {
        let start = self.pos;
        let len = self.rest().find(close)?;
        let s = self.rest()[..len].to_string();
        self.pos += len;
        Some((s, start))
    }
}

impl<'a> Parser<'a> {
    fn advance(&mut self) {
        let (t, p) = self.lex.next();
        self.tok = t;
        self.tok_pos = p;
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> DslError {
        let (line, col) = line_col(self.lex.src, pos);
        DslError::Syntax { line, col, msg: msg.into() }
    }

    fn err(&self, msg: impl Into<String>) -> DslError {
        self.err_at(self.tok_pos, msg)
    }

    fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Num(v) => format!("number {v}"),
            Tok::Ref(s) => format!("'@{s}'"),
            Tok::Raw(s) => format!("'{s}'"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        if self.tok == Tok::Punct(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}', found {}", self.describe())))
        }
    }

    fn signed_number(&mut self) -> Result<f64, DslError> {
        let mut sign = 1.0;
        if let Tok::Punct(c @ ('-' | '+')) = self.tok {
            if c == '-' {
                sign = -1.0;
            }
            self.advance();
        }
        match self.tok {
            Tok::Num(v) => {
                self.advance();
                Ok(sign * v)
            }
            _ => Err(self.err(format!("expected a number, found {}", self.describe()))),
        }
    }

    fn integer(&mut self) -> Result<i64, DslError> {
        let pos = self.tok_pos;
        let v = self.signed_number()?;
        if v.fract() != 0.0 || v.abs() > 1e15 {
            return Err(self.err_at(pos, format!("exponent must be an integer, found {v}")));
        }
        Ok(v as i64)
    }

    /// One real or imaginary part: `v`, `vi`, `i`; returns (value, imaginary).
    fn complex_part(&mut self) -> Result<(f64, bool), DslError> {
        let mut sign = 1.0;
        if let Tok::Punct(c @ ('-' | '+')) = self.tok {
            if c == '-' {
                sign = -1.0;
            }
            self.advance();
        }
        match self.tok.clone() {
            Tok::Num(v) => {
                self.advance();
                if self.tok == Tok::Ident("i".into()) {
                    self.advance();
                    Ok((sign * v, true))
                } else {
                    Ok((sign * v, false))
                }
            }
            Tok::Ident(s) if s == "i" => {
                self.advance();
                Ok((sign, true))
            }
            _ => Err(self.err(format!("expected a complex number, found {}", self.describe()))),
        }
    }

    fn complex(&mut self) -> Result<Complex64, DslError> {
        let (v, imag) = self.complex_part()?;
        if imag {
            return Ok(Complex64::new(0.0, v));
        }
        if matches!(self.tok, Tok::Punct('+' | '-')) {
            let pos = self.tok_pos;
            let (w, imag2) = self.complex_part()?;
            if !imag2 {
                return Err(self.err_at(pos, "expected an imaginary part"));
            }
            return Ok(Complex64::new(v, w));
        }
        Ok(Complex64::new(v, 0.0))
    }

    fn atom_expr(&self, pos: usize, atom: Atom) -> Result<SymbolExpr, DslError> {
        SymbolExpr::atom(self.space, atom).map_err(|e| self.err_at(pos, e.to_string()))
    }

    fn lookup_seq(&self, pos: usize, name: &str) -> Result<Arc<crate::density::PointSequence>, DslError> {
        self.bindings.sequences.get(name).cloned().ok_or_else(|| {
            let (line, col) = line_col(self.lex.src, pos);
            DslError::UnknownSeqRef { name: name.to_string(), line, col }
        })
    }

    fn expr(&mut self) -> Result<SymbolExpr, DslError> {
        let mut acc = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Punct(c @ ('*' | '/')) => c,
                _ => return Ok(acc),
            };
            let pos = self.tok_pos;
            self.advance();
            let rhs = self.term()?;
            acc = if op == '*' { acc.mul(&rhs) } else { acc.div(&rhs) }.map_err(|e| self.err_at(pos, e.to_string()))?;
        }
    }

    fn term(&mut self) -> Result<SymbolExpr, DslError> {
        let base = self.factor()?;
        if self.tok == Tok::Punct('^') {
            self.advance();
            let n = self.integer()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<SymbolExpr, DslError> {
        let pos = self.tok_pos;
        match self.tok.clone() {
            Tok::Punct('(') => {
                self.advance();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct('-') | Tok::Num(_) => {
                let v = self.signed_number()?;
                if v == 1.0 {
                    Ok(SymbolExpr::one(self.space))
                } else if v == -1.0 {
                    Ok(SymbolExpr::constant(self.space, PI))
                } else {
                    Err(self.err_at(pos, format!("constant {v} is not unimodular; use 1, -1 or exp(i*t)")))
                }
            }
            Tok::Ident(id) => {
                self.advance();
                self.named(&id, pos)
            }
            _ => Err(self.err(format!("expected a factor, found {}", self.describe()))),
        }
    }

    fn named(&mut self, id: &str, pos: usize) -> Result<SymbolExpr, DslError> {
        match id {
            "z" => self.atom_expr(pos, Atom::Coordinate),
            "b_i" => self.atom_expr(pos, Atom::BlaschkeAtI),
            "conj" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e.conjugate())
            }
            "exp" => {
                self.expect('(')?;
                if self.tok != Tok::Ident("i".into()) {
                    return Err(self.err(format!("expected 'i', found {}", self.describe())));
                }
                self.advance();
                self.expect('*')?;
                let t = self.signed_number()?;
                self.expect(')')?;
                Ok(SymbolExpr::constant(self.space, t))
            }
            "S" => {
                self.expect('(')?;
                let a = self.signed_number()?;
                self.expect(')')?;
                self.atom_expr(pos, Atom::SingularExp(a))
            }
            "Sd" => {
                self.expect('{')?;
                let mut masses = Vec::new();
                loop {
                    let angle = self.signed_number()?;
                    self.expect(':')?;
                    let weight = self.signed_number()?;
                    masses.push(PointMass { angle, weight });
                    if self.tok == Tok::Punct(',') {
                        self.advance();
                    } else {
                        break;
                    }
                }
                self.expect('}')?;
                self.atom_expr(pos, Atom::SingularDisk(masses))
            }
            "B" => {
                self.expect('[')?;
                let zeros = if let Tok::Ref(name) = self.tok.clone() {
                    let seq = self.lookup_seq(self.tok_pos, &name)?;
                    self.advance();
                    BlaschkeZeros::labeled(name, seq.points().to_vec())
                } else {
                    let mut zs = vec![self.complex()?];
                    while self.tok == Tok::Punct(',') {
                        self.advance();
                        zs.push(self.complex()?);
                    }
                    BlaschkeZeros::new(zs)
                };
                self.expect(']')?;
                self.atom_expr(pos, Atom::Blaschke(zeros))
            }
            "O" => {
                if self.tok != Tok::Punct('{') {
                    return Err(self.err(format!("expected '{{', found {}", self.describe())));
                }
                let Some((raw, raw_pos)) = self.lex.raw_until('}') else {
                    return Err(self.err("unterminated outer source, expected '}'"));
                };
                self.tok = Tok::Raw(raw.clone());
                self.tok_pos = raw_pos;
                let src = self.outer_source(raw.trim(), raw_pos)?;
                self.advance();
                self.expect('}')?;
                self.atom_expr(pos, Atom::Outer(src))
            }
            "Theta" => {
                self.expect('(')?;
                let Tok::Ref(name) = self.tok.clone() else {
                    return Err(self.err(format!("expected '@name', found {}", self.describe())));
                };
                let spectrum = self.lookup_seq(self.tok_pos, &name)?;
                self.advance();
                self.expect(')')?;
                let density = self.bindings.densities.get(&name).cloned();
                self.atom_expr(pos, Atom::Mif(MifRef { name, spectrum, density }))
            }
            _ => Err(self.err_at(pos, format!("unknown atom '{id}'"))),
        }
    }

    fn outer_source(&self, raw: &str, pos: usize) -> Result<OuterSource, DslError> {
        if let Some(name) = raw.strip_prefix('@') {
            return self.bindings.tables.get(name).cloned().map(OuterSource::Table).ok_or_else(|| {
                let (line, col) = line_col(self.lex.src, pos);
                DslError::UnknownSeqRef { name: name.to_string(), line, col }
            });
        }
        let (name, params) = match raw.split_once(':') {
            Some((n, p)) => (n.trim(), p.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>()),
            None => (raw, Ok(Vec::new())),
        };
        let params = params.map_err(|_| self.err_at(pos, format!("bad parameters in outer source '{raw}'")))?;
        NamedSource::parse(name, &params)
            .map(OuterSource::Named)
            .ok_or_else(|| self.err_at(pos, format!("unknown outer source '{raw}'")))
    }
}

/// Parses a symbol in the DSL and returns its normal form.
pub fn parse_symbol(src: &str, space: Space, bindings: &Bindings) -> Result<SymbolExpr, DslError> {
    let mut p = Parser { lex: Lexer { src, pos: 0 }, tok: Tok::End, tok_pos: 0, space, bindings };
    p.advance();
    if p.tok == Tok::End {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.err(format!("unexpected {}", p.describe())));
    }
    Ok(e.normalize())
}

/// Canonical spelling of a symbol; [`parse_symbol`] inverts it.
pub fn print_symbol(e: &SymbolExpr) -> String {
    e.normalize().to_string()
}
