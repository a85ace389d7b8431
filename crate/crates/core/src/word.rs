//! Free-group words and the textual word grammar.
//!
//! Grammar: whitespace-separated letters, `x3` is generator 3 and `X3` its
//! inverse. `[u,v]` is the commutator `u⁻¹v⁻¹uv` (longer brackets are
//! left-normed), `u^v` is the conjugate `v⁻¹uv`, `u^k` an integer power and
//! parentheses group. A lone `1` is the empty word. In equation systems `$k`
//! names variable `k`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A generator `x_{gen+1}` or its inverse. `gen` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.inverse { 'X' } else { 'x' }, self.gen + 1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The word `x_{gen+1}`.
    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generators the word needs, i.e. the largest index used.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn commutator(u: &Word, v: &Word) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    pub fn conjugate(u: &Word, v: &Word) -> Self {
        v.inverse().concat(u).concat(v)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Freely reduced form.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Exponent sum of each generator: the image in `Z^m`.
    pub fn exponent_sums(&self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m];
        for l in &self.letters {
            if l.gen < m {
                v[l.gen] += if l.inverse { -1 } else { 1 };
            }
        }
        v
    }

    /// Uniform letters over `m` generators, length uniform in `1..=max_len`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize, max_len: usize) -> Self {
        let len = rng.gen_range(1..=max_len.max(1));
        let letters = (0..len)
            .map(|_| Letter::new(rng.gen_range(0..m), rng.gen_bool(0.5)))
            .collect();
        Word { letters }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_line(text, 1)?
            .into_iter()
            .map(|s| match s.sym {
                Sym::Gen(g) => Ok(Letter::new(g, s.inverse)),
                Sym::Var(_) => Err(Error::Parse {
                    line: 1,
                    column: s.column,
                    message: "variables are not allowed in a plain word".into(),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    Gen(usize),
    Var(usize),
}

/// A parsed letter that may be a variable; `column` points at its source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SymLetter {
    pub sym: Sym,
    pub inverse: bool,
    pub column: usize,
}

type Seq = Vec<SymLetter>;

fn seq_inverse(s: &Seq) -> Seq {
    s.iter()
        .rev()
        .map(|l| SymLetter { inverse: !l.inverse, ..*l })
        .collect()
}

fn seq_commutator(u: &Seq, v: &Seq) -> Seq {
    let mut out = seq_inverse(u);
    out.extend(seq_inverse(v));
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    out
}

/// Parses one line of the grammar into a flat letter sequence.
pub(crate) fn parse_line(text: &str, line: usize) -> Result<Vec<SymLetter>> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars, pos: 0, line };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Seq> {
        let mut out = Seq::new();
        while let Some(c) = self.peek() {
            if matches!(c, ']' | ')' | ',') {
                break;
            }
            out.extend(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Seq> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c == '-' || c.is_ascii_digit() => {
                    let e = self.integer()?;
                    let unit = if e < 0 { seq_inverse(&base) } else { base.clone() };
                    base = unit.repeat(e.unsigned_abs() as usize);
                }
                _ => {
                    let v = self.atom()?;
                    let mut out = seq_inverse(&v);
                    out.extend(base);
                    out.extend(v);
                    base = out;
                }
            }
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => {
                self.pos = start;
                Err(self.error("expected a positive index"))
            }
        }
    }

    fn atom(&mut self) -> Result<Seq> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        let column = self.pos + 1;
        match c {
            'x' | 'X' | '$' => {
                self.pos += 1;
                let i = self.index()?;
                let sym = if c == '$' { Sym::Var(i) } else { Sym::Gen(i) };
                Ok(vec![SymLetter { sym, inverse: c == 'X', column }])
            }
            '1' => {
                self.pos += 1;
                Ok(Seq::new())
            }
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            '[' => {
                self.pos += 1;
                let mut acc = self.expr()?;
                let mut parts = 1;
                while self.peek() == Some(',') {
                    self.pos += 1;
                    let next = self.expr()?;
                    acc = seq_commutator(&acc, &next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                self.expect(']')?;
                Ok(acc)
            }
            other => Err(self.error(format!("unexpected '{other}'"))),
        }
    }
}
