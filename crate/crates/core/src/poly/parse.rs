use num_bigint::BigInt;

use super::{Monomial, Poly, Var};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn index(&mut self) -> Result<u32> {
        let d = self.digits()?;
        d.parse::<u32>().ok().filter(|&v| v >= 1).ok_or_else(|| self.err("index must be a positive integer"))
    }

    fn atom(&mut self) -> Result<(Var, i32)> {
        let c = self.peek().ok_or_else(|| self.err("expected variable"))?;
        self.pos += 1;
        let v = match c {
            'x' => Var::X(self.index()?),
            'y' => Var::Y(self.index()?),
            't' => Var::Aux(self.index()?),
            'z' => {
                let r = self.index()?;
                if self.peek() != Some('_') {
                    return Err(self.err("expected '_' in z variable"));
                }
                self.pos += 1;
                Var::Z(r, self.index()?)
            }
            _ => return Err(self.err("expected variable")),
        };
        let mut e = 1i32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let d = self.digits()?;
            e = d.parse::<i32>().map_err(|_| self.err("exponent too large"))?;
            if neg {
                if !v.is_y() {
                    return Err(self.err("negative exponent allowed on y variables only"));
                }
                e = -e;
            }
        }
        Ok((v, e))
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let mut coef = BigInt::from(1);
        let mut pairs = Vec::new();
        let mut any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coef = self.digits()?.parse().map_err(|_| self.err("bad coefficient"))?;
            any = true;
            if self.peek() == Some('*') {
                self.pos += 1;
                pairs.push(self.atom()?);
            }
        }
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    pairs.push(self.atom()?);
                }
                Some('x' | 'y' | 'z' | 't') => pairs.push(self.atom()?),
                _ => break,
            }
            any = true;
        }
        if !any {
            return Err(self.err("expected term"));
        }
        Ok((coef, Monomial::from_pairs(pairs)))
    }
}

pub(super) fn parse_poly(src: &str) -> Result<Poly> {
    let mut cur = Cursor { src, chars: src.chars().collect(), pos: 0 };
    let mut out = Poly::zero();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
                1
            }
            Some('-') => {
                cur.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(_) => return Err(cur.err("expected '+' or '-'")),
        };
        first = false;
        let (c, m) = cur.term()?;
        out.add_term(m, c * sign);
    }
    Ok(out)
}
