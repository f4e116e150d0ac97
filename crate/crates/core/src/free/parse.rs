//! Line-oriented presentation language.
//!
//! ```text
//! field Q            # or: field F 32003
//! gen x 1
//! gen y 1
//! rel y*x - 2*x*y
//! ```
//! Statements end at a newline or `;`. Polynomials use `*`, `+`, `-`, rational literals
//! `a/b` and parentheses.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Field;

use super::poly::FreePoly;
use super::presentation::{GeneratorInfo, Presentation};
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// One statement: its tokens plus the position just past its last character.
#[derive(Clone, Debug)]
pub struct Statement {
    pub tokens: Vec<Token>,
    pub end: (usize, usize),
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Statement {
    pub fn keyword(&self) -> Option<&str> {
        match self.tokens.first().map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    pub fn error_at(&self, i: usize, message: impl Into<String>) -> Error {
        match self.tokens.get(i) {
            Some(t) => syntax(t.line, t.column, message),
            None => syntax(self.end.0, self.end.1, message),
        }
    }

    pub fn ident(&self, i: usize, what: &str) -> Result<String> {
        match self.tokens.get(i).map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Ok(s.clone()),
            _ => Err(self.error_at(i, format!("expected {what}"))),
        }
    }

    pub fn int(&self, i: usize, what: &str) -> Result<BigInt> {
        match self.tokens.get(i).map(|t| &t.tok) {
            Some(Tok::Int(v)) => Ok(v.clone()),
            Some(Tok::Sym('-')) => match self.tokens.get(i + 1).map(|t| &t.tok) {
                Some(Tok::Int(v)) => Ok(-v.clone()),
                _ => Err(self.error_at(i, format!("expected {what}"))),
            },
            _ => Err(self.error_at(i, format!("expected {what}"))),
        }
    }

    /// Index just past the integer starting at `i`.
    pub fn int_end(&self, i: usize) -> usize {
        match self.tokens.get(i).map(|t| &t.tok) {
            Some(Tok::Sym('-')) => i + 2,
            _ => i + 1,
        }
    }

    pub fn expect_end(&self, i: usize) -> Result<()> {
        if i < self.tokens.len() {
            return Err(self.error_at(i, "unexpected trailing input"));
        }
        Ok(())
    }

    /// Raw text of everything after the keyword, rebuilt from tokens.
    pub fn rest_text(&self, from: usize) -> String {
        let mut s = String::new();
        for t in &self.tokens[from.min(self.tokens.len())..] {
            match &t.tok {
                Tok::Ident(x) => s.push_str(x),
                Tok::Int(v) => s.push_str(&v.to_string()),
                Tok::Sym(c) => s.push(*c),
            }
        }
        s
    }
}

/// Splits `text` into statements of tokens with 1-based line/column positions.
pub fn statements(text: &str) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    let mut cur: Vec<Token> = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let lno = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == ';' {
                if !cur.is_empty() {
                    out.push(Statement {
                        tokens: std::mem::take(&mut cur),
                        end: (lno, col),
                    });
                }
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                cur.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: lno,
                    column: col,
                });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                cur.push(Token {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    line: lno,
                    column: col,
                });
                continue;
            }
            if "+-*/()>".contains(c) {
                cur.push(Token {
                    tok: Tok::Sym(c),
                    line: lno,
                    column: col,
                });
                i += 1;
                continue;
            }
            return Err(syntax(lno, col, format!("unexpected character `{c}`")));
        }
        if !cur.is_empty() {
            out.push(Statement {
                tokens: std::mem::take(&mut cur),
                end: (lno, chars.len() + 1),
            });
        }
    }
    Ok(out)
}

/// Maps an identifier to `(letter, weight)`.
pub trait Alphabet {
    fn resolve(&self, name: &str) -> Option<(u16, u32)>;
}

impl Alphabet for Presentation {
    fn resolve(&self, name: &str) -> Option<(u16, u32)> {
        self.index_of(name).map(|i| (i, self.weights()[i as usize]))
    }
}

struct PolyParser<'a, A: Alphabet + ?Sized> {
    st: &'a Statement,
    pos: usize,
    field: Field,
    alphabet: &'a A,
}

impl<A: Alphabet + ?Sized> PolyParser<'_, A> {
    fn peek(&self) -> Option<&Tok> {
        self.st.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn expr(&mut self) -> Result<FreePoly> {
        let mut acc = FreePoly::zero(self.field);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FreePoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreePoly> {
        let at = self.pos;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut d = BigInt::from(1);
                if let Some(Tok::Sym('/')) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(v)) => {
                            self.pos += 1;
                            d = v;
                        }
                        _ => return Err(self.st.error_at(self.pos, "expected denominator")),
                    }
                }
                let c = self
                    .field
                    .from_ratio(&n, &d)
                    .map_err(|_| self.st.error_at(at, "zero denominator in this field"))?;
                Ok(FreePoly::monomial(c, Word::empty()))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.alphabet.resolve(&name) {
                    Some((l, w)) => Ok(FreePoly::word(self.field, Word::letter(l, w))),
                    None => Err(Error::UnknownGenerator(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.st.error_at(self.pos, "expected `)`")),
                }
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => Err(self.st.error_at(self.pos, "expected a number, generator or `(`")),
        }
    }
}

/// Parses `st.tokens[from..]` as a whole polynomial.
pub fn parse_poly_tokens<A: Alphabet + ?Sized>(
    st: &Statement,
    from: usize,
    field: Field,
    alphabet: &A,
) -> Result<FreePoly> {
    let mut p = PolyParser {
        st,
        pos: from,
        field,
        alphabet,
    };
    if from >= st.tokens.len() {
        return Err(st.error_at(from, "expected a polynomial"));
    }
    let e = p.expr()?;
    st.expect_end(p.pos)?;
    Ok(e)
}

/// Parses a single polynomial written in the generators of `pres`.
pub fn parse_poly(pres: &Presentation, text: &str) -> Result<FreePoly> {
    let sts = statements(text)?;
    match sts.as_slice() {
        [st] => parse_poly_tokens(st, 0, pres.field(), pres),
        [] => Err(syntax(1, 1, "expected a polynomial")),
        [_, second, ..] => Err(second.error_at(0, "expected a single polynomial")),
    }
}

pub fn parse_field(st: &Statement) -> Result<Field> {
    match st.ident(1, "`Q` or `F <p>`")?.as_str() {
        "Q" => {
            st.expect_end(2)?;
            Ok(Field::Rationals)
        }
        "F" => {
            let p = st.int(2, "a prime modulus")?;
            let p: u64 = p.try_into().map_err(|_| st.error_at(2, "modulus out of range"))?;
            st.expect_end(st.int_end(2))?;
            Field::prime(p)
        }
        other => Err(st.error_at(1, format!("unknown field `{other}`"))),
    }
}

/// Parses and validates a presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field = None;
    let mut seen_other = false;
    let mut gens: Vec<GeneratorInfo> = Vec::new();
    let mut pres = Presentation::new(Field::Rationals, Vec::new(), Vec::new())?;
    let mut rels = Vec::new();
    for st in statements(text)? {
        match st.keyword() {
            Some("field") => {
                if field.is_some() || seen_other {
                    return Err(st.error_at(0, "`field` must come first and only once"));
                }
                field = Some(parse_field(&st)?);
            }
            Some("gen") => {
                seen_other = true;
                let name = st.ident(1, "a generator name")?;
                let w = st.int(2, "a weight")?;
                st.expect_end(st.int_end(2))?;
                let w: u32 = u32::try_from(&w).map_err(|_| st.error_at(2, "weight must be a nonnegative integer"))?;
                gens.push(GeneratorInfo::new(name, w));
                pres = Presentation::new(field.unwrap_or(Field::Rationals), gens.clone(), Vec::new())?;
            }
            Some("rel") => {
                seen_other = true;
                let f = field.unwrap_or(Field::Rationals);
                if pres.field() != f {
                    pres = Presentation::new(f, gens.clone(), Vec::new())?;
                }
                let r = parse_poly_tokens(&st, 1, f, &pres)?;
                if r.is_zero() {
                    continue;
                }
                if r.degree().is_none_or(|d| d < 1) {
                    return Err(Error::InhomogeneousRelation(st.rest_text(1)));
                }
                rels.push(r);
            }
            _ => return Err(st.error_at(0, "expected `field`, `gen` or `rel`")),
        }
    }
    Presentation::new(field.unwrap_or(Field::Rationals), gens, rels)
}
