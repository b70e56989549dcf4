//! Words in a free group and the presentation mini-grammar.
//!
//! ```text
//! word    := factor*                  (juxtaposition, optional '*' or spaces)
//! factor  := atom ('^' integer)?
//! atom    := 'x' digit | '1' | '(' word ')' | '[' word (',' word)+ ']'
//! ```
//!
//! `[a, b, c]` is left-normed: `[[a, b], c]`, with `[a, b] = a⁻¹ b⁻¹ a b`.

use super::NilfreeError;
use std::fmt;

/// A freely reduced word; letter `+k` is generator `x_k`, `-k` its inverse (`k ≥ 1`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i8>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Generator `x_{i+1}` for zero-based `i`.
    pub fn generator(i: usize) -> Self {
        Word(vec![(i + 1) as i8])
    }

    pub fn from_letters(letters: &[i8]) -> Self {
        let mut w = Word::identity();
        for &l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i8) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &l in &self.0 {
            let i = l.unsigned_abs() as usize - 1;
            v[i] += l.signum() as i64;
        }
        v
    }

    pub fn parse(s: &str) -> Result<Word, NilfreeError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, src: s };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> NilfreeError {
        NilfreeError::Parse { input: self.src.to_string(), position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, NilfreeError> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, NilfreeError> {
        let a = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(a.pow(e));
        }
        Ok(a)
    }

    fn integer(&mut self) -> Result<i64, NilfreeError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        let v: i64 = text.parse().map_err(|_| self.err("expected an integer exponent"))?;
        if v.abs() > 64 {
            return Err(self.err("exponent too large"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Word, NilfreeError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                match self.s.get(self.pos) {
                    Some(d @ b'1'..=b'9') => {
                        self.pos += 1;
                        Ok(Word::generator((d - b'1') as usize))
                    }
                    _ => Err(self.err("expected generator index after 'x'")),
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut parts = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let next = self.word()?;
                    acc = Word::commutator(&acc, &next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(self.err("commutator needs at least two entries"));
                }
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(acc)
            }
            _ => Err(self.err("expected 'x', '1', '(' or '['")),
        }
    }
}
