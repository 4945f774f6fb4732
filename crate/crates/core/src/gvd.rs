//! Geometric vertex decomposition: the `I'`, `C`, `P` split along one
//! variable, its checks, and its iteration on Schubert determinantal ideals.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::detideal::{self, Generators};
use crate::error::{invariant, Error, Result};
use crate::groebner::{self, Budget, Ideal};
use crate::invariants::{self, RationalSeries};
use crate::perm::{Cell, Permutation};
use crate::poly::{Monomial, Poly, TermOrder, Var};

/// Degrees beyond which the coefficientwise comparison of Hilbert series stops.
const SERIES_CHECK_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvdSplit {
    pub y: Var,
    pub i_prime: Ideal,
    pub c: Ideal,
    pub p: Ideal,
    pub degrees: Vec<u32>,
    pub is_gvd: bool,
    #[serde(skip)]
    pub order: TermOrder,
}

impl GvdSplit {
    fn leading(&self, ideal: &Ideal) -> Result<Ideal> {
        let lts: Vec<Monomial> =
            ideal.generators().iter().map(|g| Ok(g.leading_term(&self.order)?.0)).collect::<Result<_>>()?;
        Ok(Ideal::monomial(groebner::minimalize(lts), ideal.ring().iter().copied()))
    }

    pub fn initial_i_prime(&self) -> Result<Ideal> {
        self.leading(&self.i_prime)
    }

    pub fn initial_c(&self) -> Result<Ideal> {
        self.leading(&self.c)
    }

    pub fn initial_p(&self) -> Result<Ideal> {
        self.leading(&self.p)
    }
}

fn require_basis(gens: &[Poly], ord: &TermOrder, budget: &Budget, what: &str) -> Result<()> {
    if gens.is_empty() {
        return Ok(());
    }
    let cert = groebner::is_groebner_basis(gens, ord, budget)?;
    invariant(cert.is_basis(), || format!("the generators of {what} are not a Groebner basis"))
}

/// Splits `ideal` along `y` under the `y`-first block order over `inner`.
pub fn split_cp(ideal: &Ideal, y: Var, inner: TermOrder, budget: &Budget) -> Result<GvdSplit> {
    let ring: BTreeSet<Var> = ideal.ring().iter().copied().chain([y]).collect();
    let ideal = ideal.clone().with_ring(ring.iter().copied());
    let order = TermOrder::y_block(y, inner);
    let gb = groebner::buchberger(&ideal, &order, budget)?;
    for g in &gb.elements {
        let lt = g.leading_term(&order)?;
        invariant(lt.0.exponent(y) == g.degree_in(y), || format!("order is not compatible with {y} on {g}"))?;
    }
    let mut degrees = Vec::new();
    let mut iy = Vec::new();
    let mut qs = Vec::new();
    let mut p_gens = vec![Poly::var(y)];
    for g in &gb.elements {
        let d = g.degree_in(y);
        let form = g.initial_y_form(y);
        let q = form.mul_monomial(&Monomial::from_pairs([(y, -d)]));
        if d == 0 {
            p_gens.push(q.clone());
        }
        degrees.push(d as u32);
        iy.push(form);
        qs.push(q);
    }
    let i_prime = Ideal::new(iy, ring.iter().copied())?;
    let c = Ideal::new(qs, ring.iter().copied())?;
    let p = Ideal::new(p_gens, ring.iter().copied())?;
    require_basis(i_prime.generators(), &order, budget, "I'")?;
    require_basis(c.generators(), &order, budget, "C")?;
    require_basis(p.generators(), &order, budget, "P")?;
    let meet = groebner::intersect(&c, &p, budget)?;
    let is_gvd = groebner::ideal_equal(&i_prime, &meet, budget)?;
    let split = GvdSplit { y, i_prime, c, p, degrees, is_gvd, order };
    if split.degrees.iter().all(|&d| d <= 1) {
        invariant(split.is_gvd, || "I' differs from C ∩ P although every degree is at most one".into())?;
        let sum = groebner::initial_ideal(&split.c.sum(&split.p), &split.order, budget)?;
        let parts = split.initial_c()?.sum(&split.initial_p()?);
        invariant(groebner::ideal_equal(&sum, &parts, budget)?, || "init(C + P) differs from init C + init P".into())?;
    }
    let rad = groebner::monomial_radical(&split.initial_i_prime()?)?;
    let rc = groebner::monomial_radical(&split.initial_c()?)?;
    let rp = groebner::monomial_radical(&split.initial_p()?)?;
    let meet_rad = groebner::intersect(&rc, &rp, budget)?;
    invariant(groebner::ideal_equal(&rad, &meet_rad, budget)?, || "radical of init I' is not the meet of the radicals".into())?;
    let sat = groebner::saturate(&split.i_prime, y, budget)?;
    invariant(groebner::ideal_equal(&sat, &split.c, budget)?, || "saturation of I' by y differs from C".into())?;
    Ok(split)
}

/// Hilbert series of `R/I`, `R/P`, `R/C`, and the comparison of `h_I` with
/// `h_P + s h_C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertComparison {
    pub h_i: RationalSeries,
    pub h_p: RationalSeries,
    pub h_c: RationalSeries,
    pub equal: bool,
    /// `h_I >= h_P + s h_C` on every coefficient up to the checked degree.
    pub dominates: bool,
}

pub fn hilbert_check(ideal: &Ideal, split: &GvdSplit) -> Result<HilbertComparison> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::Precondition(format!("{g} is not homogeneous")));
    }
    let nvars = split.i_prime.ring().len();
    let h_i = invariants::hilbert_series(&split.initial_i_prime()?, nvars)?;
    let h_p = invariants::hilbert_series(&split.initial_p()?, nvars)?;
    let h_c = invariants::hilbert_series(&split.initial_c()?, nvars)?;
    let rhs = h_p.add_shifted(&h_c, 1);
    let equal = h_i.canonical() == rhs.canonical();
    let dominates = (0..=SERIES_CHECK_DEGREE).all(|k| h_i.coefficient(k) >= rhs.coefficient(k));
    invariant(equal == split.is_gvd, || format!("Hilbert equality {equal} but geometric vertex decomposition {}", split.is_gvd))?;
    invariant(dominates, || "h_I fell below h_P + s h_C".into())?;
    Ok(HilbertComparison { h_i, h_p, h_c, equal, dominates })
}

/// One Schubert step at an accessible box with the identification of `C`
/// and `P` as Schubert determinantal ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchubertStep {
    pub perm: Permutation,
    #[serde(rename = "box")]
    pub cell: Cell,
    pub perm_p: Permutation,
    pub perm_c: Permutation,
    pub split: GvdSplit,
    pub hilbert: HilbertComparison,
}

fn ambient(perms: &[&Permutation]) -> usize {
    perms.iter().map(|p| p.trimmed().len()).max().unwrap_or(1).max(1)
}

fn essential_minors_are_diagonal_gb(perm: &Permutation, n: usize, budget: &Budget) -> Result<bool> {
    let a = detideal::schubert_ideal(perm, Generators::Essential);
    if a.is_zero() {
        return Ok(true);
    }
    Ok(groebner::is_groebner_basis(a.generators(), &detideal::diagonal_order(n), budget)?.is_basis())
}

pub fn gvd_step_schubert(perm: &Permutation, cell: Cell, budget: &Budget) -> Result<SchubertStep> {
    let desc = perm.descend_pc(cell)?;
    let n = ambient(&[perm, &desc.perm_p, &desc.perm_c]).max(cell.row).max(cell.col);
    invariant(essential_minors_are_diagonal_gb(perm, n, budget)?, || format!("essential minors of {perm} are not a diagonal Groebner basis"))?;
    let ideal = detideal::schubert_ideal(perm, Generators::Essential).with_ring(detideal::z_ring(n));
    let y = Var::z(cell.row, cell.col);
    let split = split_cp(&ideal, y, detideal::diagonal_order(n), budget)?;
    let ic = detideal::schubert_ideal(&desc.perm_c, Generators::Essential);
    invariant(groebner::ideal_equal(&split.c, &ic, budget)?, || format!("C is not the ideal of {}", desc.perm_c))?;
    let ip = detideal::schubert_ideal(&desc.perm_p, Generators::Essential).add_generator(Poly::var(y))?;
    invariant(groebner::ideal_equal(&split.p, &ip, budget)?, || format!("P is not the ideal of {} plus {y}", desc.perm_p))?;
    invariant(essential_minors_are_diagonal_gb(&desc.perm_c, n, budget)?, || format!("essential minors of {} are not a diagonal Groebner basis", desc.perm_c))?;
    invariant(split.is_gvd, || format!("the split of {perm} at {cell} is not a geometric vertex decomposition"))?;
    let hilbert = hilbert_check(&ideal, &split)?;
    Ok(SchubertStep { perm: perm.clone(), cell, perm_p: desc.perm_p, perm_c: desc.perm_c, split, hilbert })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub perm: Permutation,
    #[serde(rename = "box")]
    pub cell: Cell,
    #[serde(rename = "perm_P")]
    pub perm_p: Permutation,
    #[serde(rename = "perm_C")]
    pub perm_c: Permutation,
    pub is_gvd: bool,
    pub hilbert_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvdTrace {
    pub perm: Permutation,
    pub steps: Vec<TraceStep>,
    pub monomial_ideal: Vec<Monomial>,
}

/// Southeast-most box first.
pub fn southeast_most(boxes: &BTreeSet<Cell>) -> Cell {
    *boxes.iter().next_back().expect("nonempty")
}

pub fn iterate_gvd(perm: &Permutation, budget: &Budget) -> Result<GvdTrace> {
    iterate_gvd_with(perm, &southeast_most, budget)
}

/// Splits at `choose(accessible boxes)` until the ideals are monomial, and
/// reassembles the limit as `init C ∩ (init P)` at every step.
pub fn iterate_gvd_with(perm: &Permutation, choose: &dyn Fn(&BTreeSet<Cell>) -> Cell, budget: &Budget) -> Result<GvdTrace> {
    if !perm.is_vexillary() {
        return Err(Error::NotVexillary(perm.to_string()));
    }
    let mut steps = Vec::new();
    let monos = descend(perm, choose, budget, &mut steps)?;
    let n = ambient(&[perm]);
    let expect = groebner::initial_ideal(&detideal::schubert_ideal(perm, Generators::Essential), &detideal::diagonal_order(n), budget)?;
    invariant(groebner::minimalize(expect.monomials()?) == monos, || format!("iterated limit of {perm} differs from its initial ideal"))?;
    Ok(GvdTrace { perm: perm.clone(), steps, monomial_ideal: monos })
}

fn descend(perm: &Permutation, choose: &dyn Fn(&BTreeSet<Cell>) -> Cell, budget: &Budget, steps: &mut Vec<TraceStep>) -> Result<Vec<Monomial>> {
    let acc = perm.accessible_boxes();
    if acc.is_empty() {
        let ideal = detideal::schubert_ideal(perm, Generators::Essential);
        invariant(ideal.is_monomial(), || format!("{perm} has no accessible box but its ideal is not monomial"))?;
        return Ok(groebner::minimalize(ideal.monomials()?));
    }
    let cell = choose(&acc);
    let step = gvd_step_schubert(perm, cell, budget)?;
    steps.push(TraceStep {
        perm: perm.clone(),
        cell,
        perm_p: step.perm_p.clone(),
        perm_c: step.perm_c.clone(),
        is_gvd: step.split.is_gvd,
        hilbert_equal: step.hilbert.equal,
    });
    let mc = descend(&step.perm_c, choose, budget, steps)?;
    let mut mp = descend(&step.perm_p, choose, budget, steps)?;
    mp.push(Monomial::var(Var::z(cell.row, cell.col)));
    let out = groebner::minimalize(groebner::monomial_intersect(&mc, &groebner::minimalize(mp)));
    invariant(out.iter().all(|m| m.is_squarefree()), || format!("limit for {perm} is not squarefree"))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::from_gens(gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn inner() -> TermOrder {
        TermOrder::GradedLex(vec![Var::x(1), Var::y(1)])
    }

    #[test]
    fn hyperbola_splits() {
        let b = Budget::default();
        let s = split_cp(&ideal(&["x1*y1 - 1"]), Var::y(1), inner(), &b).unwrap();
        assert!(groebner::ideal_equal(&s.i_prime, &ideal(&["x1*y1"]), &b).unwrap());
        assert!(groebner::ideal_equal(&s.c, &ideal(&["x1"]), &b).unwrap());
        assert!(groebner::ideal_equal(&s.p, &ideal(&["y1"]), &b).unwrap());
        assert!(s.is_gvd);
    }

    #[test]
    fn hyperbola_with_origin_fails() {
        let b = Budget::default();
        let i = groebner::intersect(&ideal(&["x1*y1 - 1"]), &ideal(&["x1", "y1"]), &b).unwrap();
        let s = split_cp(&i, Var::y(1), inner(), &b).unwrap();
        assert!(groebner::ideal_equal(&s.i_prime, &ideal(&["y1^2*x1", "y1*x1^2"]), &b).unwrap());
        assert!(groebner::ideal_equal(&s.c, &ideal(&["x1"]), &b).unwrap());
        assert!(groebner::ideal_equal(&s.p, &ideal(&["y1"]), &b).unwrap());
        assert!(!s.is_gvd);
        let rad = groebner::monomial_radical(&s.initial_i_prime().unwrap()).unwrap();
        assert!(!groebner::ideal_equal(&rad, &s.initial_i_prime().unwrap(), &b).unwrap());
    }

    #[test]
    fn hilbert_examples() {
        let b = Budget::default();
        let x = ideal(&["x1"]).with_ring([Var::y(1)]);
        let s = split_cp(&x, Var::y(1), inner(), &b).unwrap();
        assert!(hilbert_check(&x, &s).unwrap().equal);
        let mono = ideal(&["y1^2*x1", "y1*x1^2"]);
        let s = split_cp(&mono, Var::y(1), inner(), &b).unwrap();
        let h = hilbert_check(&mono, &s).unwrap();
        assert!(!h.equal && h.dominates);
        let inhom = ideal(&["x1*y1 - 1"]);
        let s = split_cp(&inhom, Var::y(1), inner(), &b).unwrap();
        assert!(hilbert_check(&inhom, &s).is_err());
    }

    #[test]
    fn stanley_reisner_split_is_its_own_limit() {
        let b = Budget::default();
        let i = ideal(&["z1_1*z1_2", "z1_2*z2_1", "z2_2*z1_1"]);
        let y = Var::z(1, 2);
        let s = split_cp(&i, y, detideal::diagonal_order(2), &b).unwrap();
        assert!(groebner::ideal_equal(&s.i_prime, &i, &b).unwrap());
        assert!(s.is_gvd);
        // link side: generators divisible by y with y removed, plus those avoiding y
        assert!(groebner::ideal_equal(&s.c, &ideal(&["z1_1", "z2_1", "z2_2*z1_1"]), &b).unwrap());
    }

    #[test]
    fn schubert_step_41325() {
        let s = gvd_step_schubert(&perm(&[4, 1, 3, 2, 5]), Cell::new(3, 2), &Budget::default()).unwrap();
        assert_eq!(s.perm_c, perm(&[4, 2, 1, 3, 5]));
        assert_eq!(s.perm_p, perm(&[4, 1, 2, 3, 5]));
        assert!(s.split.is_gvd && s.hilbert.equal);
    }

    #[test]
    fn iterated_limits() {
        let b = Budget::default();
        let t = iterate_gvd(&perm(&[4, 1, 3, 2, 5]), &b).unwrap();
        let expect: Vec<Monomial> = ["z1_1", "z1_2", "z1_3", "z2_1*z3_2"]
            .iter()
            .map(|g| p(g).terms().next().unwrap().0.clone())
            .collect();
        assert_eq!(t.monomial_ideal, groebner::minimalize(expect));
        assert!(iterate_gvd(&Permutation::identity(4), &b).unwrap().steps.is_empty());
        let t = iterate_gvd(&perm(&[1, 4, 3, 2]), &b).unwrap();
        assert!(t.monomial_ideal.iter().all(|m| m.is_squarefree()));
        let vars: Vec<Var> = t.monomial_ideal.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect::<BTreeSet<_>>().into_iter().collect();
        let masks: Vec<u128> = t
            .monomial_ideal
            .iter()
            .map(|m| m.vars().fold(0u128, |a, v| a | 1 << vars.iter().position(|w| *w == v).unwrap()))
            .collect();
        let primes = crate::subword::minimal_transversals(&masks);
        assert_eq!(primes.len(), 5);
        assert!(primes.iter().all(|c| c.count_ones() == 3));
    }
}
