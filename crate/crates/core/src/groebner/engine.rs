//! Dense-exponent kernel behind the public Groebner API.
//!
//! Each monomial is stored as its order key: the weight-row degrees followed
//! by the exponent vector in priority order, so comparing two monomials is a
//! plain slice comparison and multiplication is elementwise addition.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, TermOrder, Var};

use super::Budget;

pub(crate) type Key = Box<[u16]>;

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub coef: BigInt,
}

/// Terms sorted strictly descending by key.
#[derive(Clone, Debug, Default)]
pub(crate) struct DPoly {
    pub terms: Vec<Term>,
}

impl DPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> &Term {
        &self.terms[0]
    }
}

pub(crate) struct Ring {
    pub vars: Vec<Var>,
    pub rows: Vec<Vec<u16>>,
    index: HashMap<Var, usize>,
}

impl Ring {
    pub fn new(order: &TermOrder, universe: &BTreeSet<Var>) -> Ring {
        let layout = order.layout(universe);
        let index = layout.vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Ring { vars: layout.vars, rows: layout.rows, index }
    }

    fn w(&self) -> usize {
        self.rows.len()
    }

    pub fn exps<'a>(&self, k: &'a [u16]) -> &'a [u16] {
        &k[self.w()..]
    }

    pub fn key_of(&self, m: &Monomial) -> Result<Key> {
        let n = self.vars.len();
        let mut e = vec![0u16; n];
        for (v, x) in m.iter() {
            let i = *self
                .index
                .get(&v)
                .ok_or_else(|| Error::Precondition(format!("variable {v} outside the ring")))?;
            if x < 0 {
                return Err(Error::Precondition("Laurent monomial given to the Groebner engine".into()));
            }
            e[i] = u16::try_from(x).map_err(|_| Error::Budget("exponent overflow".into()))?;
        }
        let mut key = Vec::with_capacity(self.w() + n);
        for row in &self.rows {
            let s: u32 = row.iter().zip(&e).map(|(a, b)| *a as u32 * *b as u32).sum();
            key.push(u16::try_from(s).map_err(|_| Error::Budget("degree overflow".into()))?);
        }
        key.extend(e);
        Ok(key.into_boxed_slice())
    }

    pub fn mono_of(&self, k: &[u16]) -> Monomial {
        Monomial::from_pairs(
            self.exps(k).iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (self.vars[i], *e as i32)),
        )
    }

    pub fn to_dpoly(&self, f: &Poly) -> Result<DPoly> {
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            terms.push(Term { key: self.key_of(m)?, coef: c.clone() });
        }
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        Ok(DPoly { terms })
    }

    pub fn to_poly(&self, f: &DPoly) -> Poly {
        Poly::from_terms(f.terms.iter().map(|t| (self.mono_of(&t.key), t.coef.clone())))
    }

    pub fn divides(&self, a: &[u16], b: &[u16]) -> bool {
        self.exps(a).iter().zip(self.exps(b)).all(|(x, y)| x <= y)
    }

    pub fn quotient(&self, b: &[u16], a: &[u16]) -> Key {
        b.iter().zip(a).map(|(x, y)| x - y).collect()
    }

    pub fn lcm(&self, a: &[u16], b: &[u16]) -> Key {
        let w = self.w();
        let e: Vec<u16> = self.exps(a).iter().zip(self.exps(b)).map(|(x, y)| *x.max(y)).collect();
        let mut key = Vec::with_capacity(a.len());
        for row in &self.rows {
            key.push(row.iter().zip(&e).map(|(r, x)| r * x).sum());
        }
        debug_assert_eq!(key.len(), w);
        key.extend(e);
        key.into_boxed_slice()
    }

    pub fn coprime(&self, a: &[u16], b: &[u16]) -> bool {
        self.exps(a).iter().zip(self.exps(b)).all(|(x, y)| *x == 0 || *y == 0)
    }

    pub fn total_degree(&self, k: &[u16]) -> u32 {
        self.exps(k).iter().map(|&e| e as u32).sum()
    }

    pub fn mask(&self, k: &[u16]) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps(k).iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }
}

fn mul_key(a: &[u16], b: &[u16]) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a*f - c*m*g`, all inputs sorted descending.
fn combine(a: &BigInt, f: &DPoly, c: &BigInt, m: &[u16], g: &DPoly, skip_g: usize) -> DPoly {
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let mut gi = g.terms[skip_g..].iter().map(|t| Term { key: mul_key(&t.key, m), coef: -(c * &t.coef) }).peekable();
    let mut fi = f.terms.iter().peekable();
    loop {
        match (fi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => {
                let t = fi.next().expect("peeked");
                out.push(Term { key: t.key.clone(), coef: a * &t.coef });
            }
            (None, Some(_)) => out.push(gi.next().expect("peeked")),
            (Some(x), Some(y)) => match x.key.cmp(&y.key) {
                Ordering::Greater => {
                    let t = fi.next().expect("peeked");
                    out.push(Term { key: t.key.clone(), coef: a * &t.coef });
                }
                Ordering::Less => out.push(gi.next().expect("peeked")),
                Ordering::Equal => {
                    let t = fi.next().expect("peeked");
                    let u = gi.next().expect("peeked");
                    let s = a * &t.coef + u.coef;
                    if !s.is_zero() {
                        out.push(Term { key: t.key.clone(), coef: s });
                    }
                }
            },
        }
    }
    DPoly { terms: out }
}

fn content(f: &DPoly) -> BigInt {
    let mut g = BigInt::zero();
    for t in &f.terms {
        g = g.gcd(&t.coef);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content and make the leading coefficient positive.
pub(crate) fn make_primitive(f: &mut DPoly) {
    if f.is_zero() {
        return;
    }
    let mut g = content(f);
    if f.terms[0].coef.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for t in &mut f.terms {
            t.coef = &t.coef / &g;
        }
    }
}

pub(crate) struct Reducer<'a> {
    pub ring: &'a Ring,
    pub basis: Vec<&'a DPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducer<'a> {
    pub fn new(ring: &'a Ring, basis: Vec<&'a DPoly>) -> Self {
        let masks = basis.iter().map(|g| ring.mask(&g.lt().key)).collect();
        Reducer { ring, basis, masks }
    }

    fn find(&self, key: &[u16]) -> Option<usize> {
        let mk = self.ring.mask(key);
        (0..self.basis.len()).find(|&i| self.masks[i] & !mk == 0 && self.ring.divides(&self.basis[i].lt().key, key))
    }

    /// One reduction step eliminating the term at `pos` of `f` by basis element `i`.
    fn step(&self, f: &DPoly, pos: usize, i: usize) -> (DPoly, BigInt) {
        let g = self.basis[i];
        let t = &f.terms[pos];
        let lc = &g.lt().coef;
        let gcd = t.coef.gcd(lc);
        let a = lc / &gcd;
        let c = &t.coef / &gcd;
        let m = self.ring.quotient(&t.key, &g.lt().key);
        let mut out = combine(&a, f, &c, &m, g, 0);
        // The eliminated term cancels exactly; `combine` already dropped it.
        debug_assert!(out.terms.iter().all(|u| u.key != t.key));
        if a.is_negative() {
            for u in &mut out.terms {
                u.coef = -&u.coef;
            }
            return (out, -a);
        }
        (out, a)
    }

    /// Top-reduce until the leading term is irreducible (or zero).
    pub fn top_reduce(&self, mut f: DPoly, budget: &Budget) -> Result<DPoly> {
        while !f.is_zero() {
            match self.find(&f.lt().key) {
                None => break,
                Some(i) => {
                    f = self.step(&f, 0, i).0;
                    make_primitive_keep_sign(&mut f);
                    budget.check_terms(f.terms.len())?;
                }
            }
        }
        Ok(f)
    }

    /// Full reduction. Returns the remainder and the positive multiplier `c`
    /// with `c*f - remainder` in the ideal.
    pub fn full_reduce(&self, mut f: DPoly, budget: &Budget) -> Result<(DPoly, BigInt)> {
        let mut mult = BigInt::one();
        let mut pos = 0;
        while pos < f.terms.len() {
            match self.find(&f.terms[pos].key) {
                None => pos += 1,
                Some(i) => {
                    let (g, a) = self.step(&f, pos, i);
                    mult *= a;
                    f = g;
                    budget.check_terms(f.terms.len())?;
                }
            }
        }
        Ok((f, mult))
    }
}

fn make_primitive_keep_sign(f: &mut DPoly) {
    let g = content(f);
    if !g.is_zero() && !g.is_one() {
        for t in &mut f.terms {
            t.coef = &t.coef / &g;
        }
    }
}

/// S-polynomial of `f` and `g`.
pub(crate) fn spoly(ring: &Ring, f: &DPoly, g: &DPoly) -> DPoly {
    let l = ring.lcm(&f.lt().key, &g.lt().key);
    let mf = ring.quotient(&l, &f.lt().key);
    let mg = ring.quotient(&l, &g.lt().key);
    let (a, b) = (&f.lt().coef, &g.lt().coef);
    let gcd = a.gcd(b);
    let ca = b / &gcd;
    let cb = a / &gcd;
    // ca*mf*f - cb*mg*g, leading terms cancel.
    let fm = DPoly { terms: f.terms.iter().map(|t| Term { key: mul_key(&t.key, &mf), coef: t.coef.clone() }).collect() };
    let mut s = combine(&ca, &fm, &cb, &mg, g, 0);
    s.terms.retain(|t| t.key != l);
    make_primitive_keep_sign(&mut s);
    s
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Key,
    deg: u32,
}

/// Buchberger with the Gebauer–Moeller update, which realises the coprime and
/// chain criteria. Returns a (non-reduced) basis.
pub(crate) fn buchberger(ring: &Ring, input: Vec<DPoly>, budget: &Budget) -> Result<Vec<DPoly>> {
    let mut polys: Vec<DPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;

    let mut queue: Vec<DPoly> = input.into_iter().filter(|f| !f.is_zero()).collect();
    for f in &mut queue {
        make_primitive(f);
    }
    queue.sort_by(|a, b| a.lt().key.cmp(&b.lt().key));
    for f in queue {
        let f = {
            let red = Reducer::new(ring, active.iter().map(|&i| &polys[i]).collect());
            red.top_reduce(f, budget)?
        };
        if f.is_zero() {
            continue;
        }
        add_poly(ring, &mut polys, &mut active, &mut pairs, f, budget)?;
    }

    loop {
        if pairs.is_empty() {
            break;
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.deg.cmp(&q.deg).then_with(|| p.lcm.cmp(&q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        processed += 1;
        budget.check_pairs(processed)?;
        let s = spoly(ring, &polys[pair.i], &polys[pair.j]);
        budget.check_terms(s.terms.len())?;
        let h = {
            let red = Reducer::new(ring, active.iter().map(|&i| &polys[i]).collect());
            red.top_reduce(s, budget)?
        };
        if h.is_zero() {
            continue;
        }
        add_poly(ring, &mut polys, &mut active, &mut pairs, h, budget)?;
    }
    Ok(active.into_iter().map(|i| polys[i].clone()).collect())
}

fn add_poly(
    ring: &Ring,
    polys: &mut Vec<DPoly>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    mut h: DPoly,
    budget: &Budget,
) -> Result<()> {
    make_primitive(&mut h);
    budget.check_terms(h.terms.len())?;
    let hk = h.lt().key.clone();
    let hidx = polys.len();
    polys.push(h);

    let mut cand: Vec<(usize, Key, bool)> = active
        .iter()
        .map(|&g| {
            let gk = &polys[g].lt().key;
            (g, ring.lcm(&hk, gk), ring.coprime(&hk, gk))
        })
        .collect();
    // Chain criterion among the new pairs.
    let mut keep: Vec<(usize, Key, bool)> = Vec::new();
    for idx in 0..cand.len() {
        let (g, ref l, cop) = cand[idx];
        let dominated = !cop
            && cand.iter().enumerate().any(|(o, (_, l2, _))| {
                o != idx && ring.divides(l2, l) && (l2 != l || o < idx)
            });
        if !dominated {
            keep.push((g, l.clone(), cop));
        }
    }
    cand.clear();
    // Existing pairs killed by the new leading term.
    pairs.retain(|p| {
        let li = ring.lcm(&polys[p.i].lt().key, &hk);
        let lj = ring.lcm(&polys[p.j].lt().key, &hk);
        !(ring.divides(&hk, &p.lcm) && li != p.lcm && lj != p.lcm)
    });
    for (g, l, cop) in keep {
        if cop {
            continue;
        }
        let deg = ring.total_degree(&l);
        pairs.push(Pair { i: g, j: hidx, lcm: l, deg });
    }
    active.retain(|&g| !ring.divides(&hk, &polys[g].lt().key));
    active.push(hidx);
    budget.check_basis(active.len())?;
    Ok(())
}

/// Minimal, fully inter-reduced, primitive basis sorted by leading term.
pub(crate) fn reduce_basis(ring: &Ring, mut basis: Vec<DPoly>, budget: &Budget) -> Result<Vec<DPoly>> {
    basis.retain(|f| !f.is_zero());
    basis.sort_by(|a, b| a.lt().key.cmp(&b.lt().key));
    let mut minimal: Vec<DPoly> = Vec::new();
    for f in basis {
        if minimal.iter().any(|g| ring.divides(&g.lt().key, &f.lt().key)) {
            continue;
        }
        minimal.push(f);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&DPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let red = Reducer::new(ring, others);
        let (mut r, _) = red.full_reduce(minimal[i].clone(), budget)?;
        make_primitive(&mut r);
        out.push(r);
    }
    out.sort_by(|a, b| b.lt().key.cmp(&a.lt().key));
    Ok(out)
}

/// First S-pair (by index) whose S-polynomial does not reduce to zero.
pub(crate) fn first_bad_pair(ring: &Ring, gens: &[DPoly], budget: &Budget) -> Result<Option<(usize, usize, DPoly)>> {
    let red = Reducer::new(ring, gens.iter().collect());
    let mut count = 0usize;
    for j in 0..gens.len() {
        for i in 0..j {
            if ring.coprime(&gens[i].lt().key, &gens[j].lt().key) {
                continue;
            }
            count += 1;
            budget.check_pairs(count)?;
            let s = spoly(ring, &gens[i], &gens[j]);
            let r = red.top_reduce(s, budget)?;
            if !r.is_zero() {
                let (mut full, _) = red.full_reduce(r, budget)?;
                make_primitive(&mut full);
                return Ok(Some((i, j, full)));
            }
        }
    }
    Ok(None)
}
