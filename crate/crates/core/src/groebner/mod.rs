//! Exact Groebner bases over the integers with rational reduction semantics.

mod engine;
pub mod monomial_ideal;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, TermOrder, Var};

use engine::{DPoly, Reducer, Ring};

pub use monomial_ideal::{minimalize, monomial_colon, monomial_intersect, monomial_radical_gens};

/// Resource caps for a single Groebner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_poly_terms: usize,
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 500_000, max_poly_terms: 200_000, max_basis: 50_000 }
    }
}

impl Budget {
    pub(crate) fn check_pairs(&self, n: usize) -> Result<()> {
        if n > self.max_pairs {
            return Err(Error::Budget(format!("more than {} S-pairs", self.max_pairs)));
        }
        Ok(())
    }

    pub(crate) fn check_terms(&self, n: usize) -> Result<()> {
        if n > self.max_poly_terms {
            return Err(Error::Budget(format!("polynomial with more than {} terms", self.max_poly_terms)));
        }
        Ok(())
    }

    pub(crate) fn check_basis(&self, n: usize) -> Result<()> {
        if n > self.max_basis {
            return Err(Error::Budget(format!("basis larger than {}", self.max_basis)));
        }
        Ok(())
    }
}

/// An ideal given by generators inside a fixed variable universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    generators: Vec<Poly>,
    ring: BTreeSet<Var>,
}

impl Ideal {
    /// Zero generators are dropped; the ring is enlarged to cover every generator.
    pub fn new(generators: Vec<Poly>, ring: impl IntoIterator<Item = Var>) -> Result<Ideal> {
        let mut ring: BTreeSet<Var> = ring.into_iter().collect();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.is_zero() {
                continue;
            }
            if !g.is_laurent_free() {
                return Err(Error::Precondition(format!("ideal generator {g} has a negative exponent")));
            }
            ring.extend(g.variables());
            gens.push(g);
        }
        Ok(Ideal { generators: gens, ring })
    }

    pub fn from_gens(generators: Vec<Poly>) -> Result<Ideal> {
        Ideal::new(generators, [])
    }

    /// Ideal generated by monomials.
    pub fn monomial(monos: impl IntoIterator<Item = Monomial>, ring: impl IntoIterator<Item = Var>) -> Ideal {
        Ideal::new(monos.into_iter().map(Poly::monomial).collect(), ring).expect("monomials are polynomial")
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn ring(&self) -> &BTreeSet<Var> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Poly::is_monomial)
    }

    /// Generator monomials when every generator is a single term.
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        self.generators
            .iter()
            .map(|g| {
                if g.is_monomial() {
                    Ok(g.terms().next().expect("nonzero").0.clone())
                } else {
                    Err(Error::Precondition(format!("{g} is not a monomial")))
                }
            })
            .collect()
    }

    pub fn with_ring(mut self, extra: impl IntoIterator<Item = Var>) -> Ideal {
        self.ring.extend(extra);
        self
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal { generators: gens, ring: self.ring.union(&other.ring).copied().collect() }
    }

    pub fn add_generator(&self, g: Poly) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Ideal::new(gens, self.ring.iter().copied())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerBasis {
    pub elements: Vec<Poly>,
    pub order: TermOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_term(&self.order).expect("nonzero").0).collect()
    }
}

/// Outcome of [`is_groebner_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GbCertificate {
    Basis,
    Witness { first: usize, second: usize, remainder: Poly },
}

impl GbCertificate {
    pub fn is_basis(&self) -> bool {
        matches!(self, GbCertificate::Basis)
    }
}

fn universe<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> BTreeSet<Var> {
    polys.into_iter().flat_map(|p| p.variables()).collect()
}

fn to_dpolys(ring: &Ring, polys: &[Poly]) -> Result<Vec<DPoly>> {
    polys.iter().map(|p| ring.to_dpoly(p)).collect()
}

/// Division remainder of `f` by `basis`, scaled so its coefficients are
/// integers. The result vanishes exactly when the rational remainder does.
pub fn normal_form(f: &Poly, basis: &[Poly], ord: &TermOrder) -> Result<Poly> {
    f.check_laurent()?;
    if basis.iter().any(Poly::is_zero) {
        return Err(Error::Precondition("zero basis element".into()));
    }
    let uni = universe(basis.iter().chain([f]));
    let ring = Ring::new(ord, &uni);
    let b = to_dpolys(&ring, basis)?;
    let red = Reducer::new(&ring, b.iter().collect());
    let (r, mult) = red.full_reduce(ring.to_dpoly(f)?, &Budget::default())?;
    let mut out = ring.to_poly(&r);
    if out.terms().all(|(_, c)| (c % &mult).is_zero()) {
        out = Poly::from_terms(out.terms().map(|(m, c)| (m.clone(), c / &mult)));
    }
    Ok(out)
}

/// Reduced Groebner basis under `ord`.
pub fn buchberger(ideal: &Ideal, ord: &TermOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let ring = Ring::new(ord, &ideal.ring);
    let input = to_dpolys(&ring, &ideal.generators)?;
    let gb = engine::buchberger(&ring, input, budget)?;
    let red = engine::reduce_basis(&ring, gb, budget)?;
    Ok(GroebnerBasis { elements: red.iter().map(|g| ring.to_poly(g)).collect(), order: ord.clone(), reduced: true })
}

/// Checks every non-coprime S-pair; on failure reports the first offending pair.
pub fn is_groebner_basis(gens: &[Poly], ord: &TermOrder, budget: &Budget) -> Result<GbCertificate> {
    if gens.iter().any(Poly::is_zero) {
        return Err(Error::Precondition("zero generator".into()));
    }
    for g in gens {
        g.check_laurent()?;
    }
    let uni = universe(gens);
    let ring = Ring::new(ord, &uni);
    let d = to_dpolys(&ring, gens)?;
    Ok(match engine::first_bad_pair(&ring, &d, budget)? {
        None => GbCertificate::Basis,
        Some((i, j, r)) => GbCertificate::Witness { first: i, second: j, remainder: ring.to_poly(&r) },
    })
}

/// Leading-term ideal, minimally generated.
pub fn initial_ideal(ideal: &Ideal, ord: &TermOrder, budget: &Budget) -> Result<Ideal> {
    if ideal.is_monomial() {
        return Ok(Ideal::monomial(minimalize(ideal.monomials()?), ideal.ring.iter().copied()));
    }
    let gb = buchberger(ideal, ord, budget)?;
    Ok(Ideal::monomial(minimalize(gb.leading_monomials()), ideal.ring.iter().copied()))
}

/// `ideal` intersected with the subring avoiding `vars`.
pub fn eliminate(ideal: &Ideal, vars: &BTreeSet<Var>, budget: &Budget) -> Result<Ideal> {
    let rest: Vec<Var> = ideal.ring.iter().filter(|v| !vars.contains(v)).copied().collect();
    let ord = TermOrder::elimination(vars.iter().copied().collect(), TermOrder::GradedLex(rest.clone()));
    let gb = buchberger(ideal, &ord, budget)?;
    let gens = gb.elements.into_iter().filter(|g| g.variables().iter().all(|v| !vars.contains(v))).collect();
    Ideal::new(gens, rest)
}

fn fresh_aux(ring: &BTreeSet<Var>) -> Var {
    let top = ring.iter().filter_map(|v| if let Var::Aux(i) = v { Some(*i) } else { None }).max().unwrap_or(0);
    Var::Aux(top + 1)
}

/// `a ∩ b`. Monomial ideals use lcms; otherwise `<t a, (1-t) b>` with `t` eliminated.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring: BTreeSet<Var> = a.ring.union(&b.ring).copied().collect();
    if a.is_monomial() && b.is_monomial() {
        return Ok(Ideal::monomial(monomial_intersect(&a.monomials()?, &b.monomials()?), ring));
    }
    if a.is_zero() || b.is_zero() {
        return Ideal::new(vec![], ring);
    }
    let t = fresh_aux(&ring);
    let tp = Poly::var(t);
    let one_minus_t = Poly::one() - tp.clone();
    let mut gens: Vec<Poly> = a.generators.iter().map(|g| &tp * g).collect();
    gens.extend(b.generators.iter().map(|g| &one_minus_t * g));
    let big = Ideal::new(gens, ring.iter().copied().chain([t]))?;
    let out = eliminate(&big, &BTreeSet::from([t]), budget)?;
    Ideal::new(out.generators, ring)
}

/// `(I : y)`, computed as `(1/y)(I ∩ <y>)`.
pub fn colon(ideal: &Ideal, y: Var, budget: &Budget) -> Result<Ideal> {
    let ring: BTreeSet<Var> = ideal.ring.iter().copied().chain([y]).collect();
    if ideal.is_monomial() {
        return Ok(Ideal::monomial(monomial_colon(&ideal.monomials()?, &Monomial::var(y)), ring));
    }
    let yi = Ideal::new(vec![Poly::var(y)], ring.iter().copied())?;
    let meet = intersect(ideal, &yi, budget)?;
    let inv = Monomial::from_pairs([(y, -1)]);
    let gens = meet.generators.iter().map(|g| g.mul_monomial(&inv)).collect();
    Ideal::new(gens, ring)
}

/// `(I : y^∞)`.
pub fn saturate(ideal: &Ideal, y: Var, budget: &Budget) -> Result<Ideal> {
    let mut cur = ideal.clone();
    loop {
        let next = colon(&cur, y, budget)?;
        if ideal_equal(&next, &cur, budget)? {
            return Ok(next);
        }
        cur = next;
    }
}

/// Equality of ideals via reduced Groebner bases under graded lex.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    let ring: Vec<Var> = a.ring.union(&b.ring).copied().collect();
    if a.is_monomial() && b.is_monomial() {
        return Ok(minimalize(a.monomials()?) == minimalize(b.monomials()?));
    }
    let ord = TermOrder::GradedLex(ring.clone());
    let ga = buchberger(&a.clone().with_ring(ring.iter().copied()), &ord, budget)?;
    let gb = buchberger(&b.clone().with_ring(ring.iter().copied()), &ord, budget)?;
    Ok(ga.elements == gb.elements)
}

/// Radical of a monomial ideal.
pub fn monomial_radical(ideal: &Ideal) -> Result<Ideal> {
    Ok(Ideal::monomial(monomial_radical_gens(&ideal.monomials()?), ideal.ring.iter().copied()))
}

/// Parse the ideal file format: `#` comments, an optional `ring:` header, one
/// polynomial per line.
pub fn parse_ideal_file(src: &str) -> Result<Ideal> {
    let mut ring = BTreeSet::new();
    let mut gens = Vec::new();
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring:") {
            ring.extend(parse_ring_header(rest)?);
            continue;
        }
        gens.push(line.parse::<Poly>()?);
    }
    Ideal::new(gens, ring)
}

fn parse_ring_header(src: &str) -> Result<Vec<Var>> {
    let toks: Vec<&str> = src.split_whitespace().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |t: &str| Error::Parse(format!("bad ring header token {t:?}"));
    while i < toks.len() {
        let t = toks[i];
        if t == "z" {
            let n: usize = toks.get(i + 1).and_then(|s| s.parse().ok()).ok_or_else(|| bad(t))?;
            for r in 1..=n {
                for c in 1..=n {
                    out.push(Var::z(r, c));
                }
            }
            i += 2;
            continue;
        }
        if let Some((lo, hi)) = t.split_once("..") {
            let (a, b): (Var, Var) = (lo.parse()?, hi.parse()?);
            match (a, b) {
                (Var::X(p), Var::X(q)) => out.extend((p..=q).map(Var::X)),
                (Var::Y(p), Var::Y(q)) => out.extend((p..=q).map(Var::Y)),
                (Var::Aux(p), Var::Aux(q)) => out.extend((p..=q).map(Var::Aux)),
                _ => return Err(bad(t)),
            }
        } else {
            out.push(t.parse()?);
        }
        i += 1;
    }
    Ok(out)
}

/// Inverse of [`parse_ideal_file`].
pub fn emit_ideal_file(ideal: &Ideal) -> String {
    let mut s = String::from("ring:");
    for v in &ideal.ring {
        s.push(' ');
        s.push_str(&v.to_string());
    }
    s.push('\n');
    for g in &ideal.generators {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::from_gens(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn example_intersection_basis() {
        let i = intersect(&ideal(&["x1*y1 - 1"]), &ideal(&["x1", "y1"]), &b()).unwrap();
        for ord in [TermOrder::Lex(vec![Var::x(1), Var::y(1)]), TermOrder::Lex(vec![Var::y(1), Var::x(1)])] {
            let gb = buchberger(&i, &ord, &b()).unwrap();
            let mut got: Vec<String> = gb.elements.iter().map(|g| g.to_string()).collect();
            got.sort();
            assert_eq!(got, vec!["x1*y1^2 - y1", "x1^2*y1 - x1"]);
        }
    }

    #[test]
    fn single_and_trivial() {
        let gb = buchberger(&ideal(&["x1"]), &TermOrder::Lex(vec![]), &b()).unwrap();
        assert_eq!(gb.elements, vec![p("x1")]);
        assert!(is_groebner_basis(&[p("x1*y1 - 3*x2")], &TermOrder::Lex(vec![]), &b()).unwrap().is_basis());
        let ord = TermOrder::Lex(vec![Var::z(1, 1), Var::z(1, 2), Var::z(2, 1), Var::z(2, 2)]);
        let r = normal_form(&p("z2_1*z1_2"), &[p("z1_1*z2_2 - z2_1*z1_2"), p("z1_1")], &ord).unwrap();
        assert_eq!(r, p("z1_2*z2_1"));
        assert!(normal_form(&p("z1_1*z2_2"), &[p("z1_1")], &ord).unwrap().is_zero());
    }

    #[test]
    fn elimination_and_colon() {
        let t = Var::Aux(1);
        let e = eliminate(&ideal(&["t1*x1"]), &BTreeSet::from([t]), &b()).unwrap();
        assert!(e.is_zero());
        let e = eliminate(&ideal(&["t1 - x1", "t1 - y1"]), &BTreeSet::from([t]), &b()).unwrap();
        assert!(ideal_equal(&e, &ideal(&["x1 - y1"]), &b()).unwrap());
        let m = intersect(&ideal(&["x1"]), &ideal(&["y1"]), &b()).unwrap();
        assert_eq!(m.generators(), &[p("x1*y1")]);
        let s = saturate(&ideal(&["y1^2*x1", "y1*x1^2"]), Var::y(1), &b()).unwrap();
        assert!(ideal_equal(&s, &ideal(&["x1"]), &b()).unwrap());
        let s = saturate(&ideal(&["x1*y1 + x1^2", "x2*y1"]), Var::y(1), &b()).unwrap();
        assert!(ideal_equal(&s, &ideal(&["x1*y1 + x1^2", "x2"]), &b()).unwrap());
        let y = Var::y(1);
        let init = initial_ideal(&ideal(&["x1*y1 - 1"]), &TermOrder::y_block(y, TermOrder::GradedLex(vec![])), &b()).unwrap();
        assert_eq!(init.generators(), &[p("x1*y1")]);
    }

    #[test]
    fn equality() {
        assert!(ideal_equal(&ideal(&["x1", "y1"]), &ideal(&["y1", "x1 + y1"]), &b()).unwrap());
        assert!(!ideal_equal(&ideal(&["y1^2*x1", "y1*x1^2"]), &ideal(&["x1*y1"]), &b()).unwrap());
        let r = monomial_radical(&ideal(&["y1^2*x1", "y1*x1^2"])).unwrap();
        assert_eq!(r.generators(), &[p("x1*y1")]);
    }

    #[test]
    fn witness_reported() {
        let ord = TermOrder::Lex(vec![Var::x(1), Var::x(2)]);
        match is_groebner_basis(&[p("x1*x2 - 1"), p("x1^2 - x2")], &ord, &b()).unwrap() {
            GbCertificate::Witness { remainder, .. } => assert!(!remainder.is_zero()),
            GbCertificate::Basis => panic!("expected witness"),
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = Budget { max_pairs: 0, ..Budget::default() };
        let err = buchberger(&ideal(&["x1*x2 - 1", "x1^2 - x2"]), &TermOrder::Lex(vec![]), &tiny).unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
    }

    #[test]
    fn file_roundtrip() {
        let src = "# demo\nring: x1..x2 y1 z 2\nz1_1*z2_2 - z1_2*z2_1\n";
        let i = parse_ideal_file(src).unwrap();
        assert_eq!(i.ring().len(), 7);
        assert_eq!(parse_ideal_file(&emit_ideal_file(&i)).unwrap(), i);
    }
}
