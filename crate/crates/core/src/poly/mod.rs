//! Sparse multivariate polynomials over the integers, with Laurent exponents
//! permitted on `y` variables only.

mod monomial;
mod operators;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use monomial::Monomial;
pub use operators::{demazure_operator, divided_difference, swap_x};
pub use order::TermOrder;

/// A variable of the ambient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    Y(u32),
    Z(u32, u32),
    Aux(u32),
}

impl Var {
    pub fn z(row: usize, col: usize) -> Var {
        Var::Z(row as u32, col as u32)
    }

    pub fn x(i: usize) -> Var {
        Var::X(i as u32)
    }

    pub fn y(i: usize) -> Var {
        Var::Y(i as u32)
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Var::Y(_))
    }

    pub fn latex(&self) -> String {
        match *self {
            Var::X(i) => format!("x_{{{i}}}"),
            Var::Y(i) => format!("y_{{{i}}}"),
            Var::Z(r, c) if r < 10 && c < 10 => format!("z_{{{r}{c}}}"),
            Var::Z(r, c) => format!("z_{{{r},{c}}}"),
            Var::Aux(i) => format!("t_{{{i}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::Z(r, c) => write!(f, "z{r}_{c}"),
            Var::Aux(i) => write!(f, "t{i}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("bad variable {s:?}"));
        let (head, rest) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
        let num = |t: &str| t.parse::<u32>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        match head {
            "x" => Ok(Var::X(num(rest)?)),
            "y" => Ok(Var::Y(num(rest)?)),
            "t" => Ok(Var::Aux(num(rest)?)),
            "z" => {
                let (r, c) = rest.split_once('_').ok_or_else(bad)?;
                Ok(Var::Z(num(r)?, num(c)?))
            }
            _ => Err(bad()),
        }
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(1, Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Poly {
        Poly::term(1, m)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Poly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// `x_i - y_j`.
    pub fn x_minus_y(i: usize, j: usize) -> Poly {
        &Poly::var(Var::x(i)) - &Poly::var(Var::y(j))
    }

    /// `1 - x_i / y_j`.
    pub fn one_minus_x_over_y(i: usize, j: usize) -> Poly {
        let m = Monomial::from_pairs([(Var::x(i), 1), (Var::y(j), -1)]);
        &Poly::one() - &Poly::monomial(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn is_laurent_free(&self) -> bool {
        self.terms.keys().all(|m| m.is_polynomial())
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Product of a sequence of polynomials.
    pub fn product<'a>(it: impl IntoIterator<Item = &'a Poly>) -> Poly {
        it.into_iter().fold(Poly::one(), |acc, f| &acc * f)
    }

    pub fn sum<'a>(it: impl IntoIterator<Item = &'a Poly>) -> Poly {
        let mut out = Poly::zero();
        for f in it {
            for (m, c) in &f.terms {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Total degree of each term must agree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn homogeneous_component(&self, d: i64) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The nonzero homogeneous component of least total degree.
    pub fn lowest_degree_part(&self) -> Poly {
        match self.min_degree() {
            None => Poly::zero(),
            Some(d) => self.homogeneous_component(d),
        }
    }

    /// Largest exponent of `v` among the terms.
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Sum of the terms of maximal `y`-degree.
    pub fn initial_y_form(&self, y: Var) -> Poly {
        let d = self.degree_in(y);
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.exponent(y) == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The largest term under `ord`.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, BigInt)> {
        if self.is_zero() {
            return Err(Error::Precondition("leading term of the zero polynomial".into()));
        }
        if !self.is_laurent_free() {
            return Err(Error::Precondition("leading term of a Laurent polynomial".into()));
        }
        let cmp = ord.comparator(&self.variables());
        let (m, c) = self.terms.iter().max_by(|a, b| cmp.compare(a.0, b.0)).expect("nonempty");
        Ok((m.clone(), c.clone()))
    }

    /// Simultaneous substitution of variables by polynomials. A variable with a
    /// negative exponent may only be replaced by a monomial.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Result<Poly> {
        let mut cache: BTreeMap<(Var, i32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut keep = Monomial::one();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    None => keep = keep.mul(&Monomial::from_pairs([(v, e)])),
                    Some(img) => {
                        if let Some(p) = cache.get(&(v, e)) {
                            acc = &acc * p;
                            continue;
                        }
                        let p = if e >= 0 {
                            img.pow(e as u32)
                        } else {
                            if !img.is_monomial() {
                                return Err(Error::Precondition(format!(
                                    "cannot invert the image of {v} under substitution"
                                )));
                            }
                            let (im, ic) = img.terms.iter().next().expect("monomial");
                            if !ic.abs().is_one() {
                                return Err(Error::Precondition(format!("image of {v} is not a unit")));
                            }
                            let inv = Poly::term(ic.clone(), im.inverse());
                            inv.pow((-e) as u32)
                        };
                        acc = &acc * &p;
                        cache.insert((v, e), p);
                    }
                }
            }
            let acc = acc.mul_monomial(&keep);
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        out.check_laurent()?;
        Ok(out)
    }

    pub fn substitute_one(&self, v: Var, img: &Poly) -> Result<Poly> {
        self.substitute(&BTreeMap::from([(v, img.clone())]))
    }

    /// Negative exponents are only allowed on `y` variables.
    pub fn check_laurent(&self) -> Result<()> {
        for m in self.terms.keys() {
            if let Some((v, e)) = m.iter().find(|(v, e)| *e < 0 && !v.is_y()) {
                return Err(Error::Precondition(format!("negative exponent {e} on {v}")));
            }
        }
        Ok(())
    }

    /// Divide every coefficient by their gcd and make the leading one
    /// (under `ord`) positive.
    pub fn primitive(&self, ord: &TermOrder) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
        }
        let (_, lc) = self.leading_term(ord).expect("nonzero");
        if lc.is_negative() {
            g = -g;
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect() }
    }

    /// Terms in display order: graded lex, `x` before `y` before `z`, descending.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| monomial::graded_cmp(b.0, a.0));
        v
    }

    pub fn to_latex(&self) -> String {
        fmt_poly(self, true)
    }
}

fn fmt_poly(p: &Poly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.sorted_terms().into_iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let body = if latex { m.to_latex() } else { m.to_string() };
        if m.is_one() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&body);
        } else if latex {
            s.push_str(&format!("{a}{body}"));
        } else {
            s.push_str(&format!("{a}*{body}"));
        }
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_poly(self, false))
    }
}

impl std::str::FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        parse::parse_poly(s)
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coef: String,
    mono: Vec<(String, i32)>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermRepr { coef: c.to_string(), mono: m.iter().map(|(v, e)| (v.to_string(), e)).collect() })
            .collect();
        PolyRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let mut p = Poly::zero();
        for t in r.terms {
            let c: BigInt = t.coef.parse().map_err(D::Error::custom)?;
            let mut pairs = Vec::new();
            for (v, e) in t.mono {
                pairs.push((v.parse::<Var>().map_err(D::Error::custom)?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        p.check_laurent().map_err(D::Error::custom)?;
        Ok(p)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
