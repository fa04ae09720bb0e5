//! Text input for polynomials in `x1, ..., xn`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := integer ['*'] monomial | integer | monomial
//! monomial := factor ('*' factor)*
//! factor   := 'x' index ['^' exponent]
//! ```

use flagcoh_core::lefschetz::{DualGenerator, MonomialIdeal};
use flagcoh_core::{Error, Result};
use num_bigint::BigInt;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    n: usize,
    src: &'a str,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, n, src }
    }

    /// Byte offset of the current token in the original text.
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn small_number(&mut self, what: &str) -> Result<u64> {
        let at = self.offset();
        match self.digits() {
            Some(s) => s.parse().or_else(|_| err(at, format!("{what} {s} is too large"))),
            None => err(at, format!("expected {what}")),
        }
    }

    fn factor(&mut self, exps: &mut [u64]) -> Result<()> {
        let at = self.offset();
        if !self.eat('x') {
            return err(at, "expected a variable x<index>");
        }
        let idx_at = self.offset();
        let idx = self.small_number("variable index")?;
        if idx == 0 || idx as usize > self.n {
            return err(idx_at, format!("variable x{idx} is outside x1..x{}", self.n));
        }
        let e = if self.eat('^') { self.small_number("exponent")? } else { 1 };
        exps[idx as usize - 1] += e;
        Ok(())
    }

    fn monomial(&mut self, exps: &mut [u64]) -> Result<()> {
        self.factor(exps)?;
        while self.eat('*') {
            self.factor(exps)?;
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<(BigInt, Vec<u64>)> {
        let mut exps = vec![0u64; self.n];
        let at = self.offset();
        let coeff = match self.digits() {
            Some(s) => {
                let c: BigInt = s.parse().expect("digits form an integer");
                if self.eat('*') || self.peek() == Some('x') {
                    self.monomial(&mut exps)?;
                }
                c
            }
            None if self.peek() == Some('x') => {
                self.monomial(&mut exps)?;
                BigInt::from(1)
            }
            None => return err(at, "expected a term"),
        };
        Ok((if negative { -coeff } else { coeff }, exps))
    }

    fn polynomial(&mut self) -> Result<Vec<(BigInt, Vec<u64>)>> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => return Ok(terms),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return err(self.offset(), format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
    }
}

/// Parses a homogeneous form in `x1..xn`.
pub fn parse_dual_generator(text: &str, n: usize) -> Result<DualGenerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let terms = Parser::new(text, n).polynomial()?;
    DualGenerator::new(n, terms)
}

/// Parses one monomial such as `x1^3*x2^3*x3^3`.
pub fn parse_monomial(text: &str, n: usize) -> Result<Vec<u64>> {
    let mut p = Parser::new(text, n);
    let mut exps = vec![0u64; n];
    if p.peek() == Some('1') && p.chars.len() == 1 {
        return Ok(exps);
    }
    p.monomial(&mut exps)?;
    if p.peek().is_some() {
        return err(p.offset(), "trailing input after monomial");
    }
    Ok(exps)
}

/// Parses a comma-separated list of monomial generators.
pub fn parse_monomial_ideal(text: &str, n: usize) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    let mut base = 0;
    for piece in text.split(',') {
        let g = parse_monomial(piece, n).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + base, msg },
            other => other,
        })?;
        gens.push(g);
        base += piece.len() + 1;
    }
    MonomialIdeal::new(n, gens)
}
