//! Poisoning of minors by the cross diagram and the certificate that the
//! essential minors fail to be a diagonal Groebner basis off the vexillary
//! locus.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::detideal::{self, Generators, MinorSpec};
use crate::error::{Error, Result};
use crate::groebner::{self, Budget, Ideal};
use crate::perm::{Cell, Permutation};
use crate::poly::{Monomial, Var};
use crate::subword::PipeDream;

/// Boxes with strictly increasing rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    boxes: Vec<Cell>,
}

impl Diagonal {
    pub fn new(boxes: Vec<Cell>) -> Result<Diagonal> {
        if boxes.windows(2).any(|w| w[0].row >= w[1].row || w[0].col >= w[1].col) {
            return Err(Error::Precondition("diagonal boxes must increase in row and column".into()));
        }
        Ok(Diagonal { boxes })
    }

    pub fn boxes(&self) -> &[Cell] {
        &self.boxes
    }

    pub fn of_minor(m: &MinorSpec) -> Diagonal {
        Diagonal { boxes: m.rows.iter().zip(&m.cols).map(|(&r, &c)| Cell::new(r, c)).collect() }
    }

    pub fn term(&self) -> Monomial {
        Monomial::squarefree(self.boxes.iter().map(|c| Var::z(c.row, c.col)))
    }
}

/// Crosses exactly at the diagram of `perm`.
pub fn cross_diagram(perm: &Permutation) -> PipeDream {
    let n = perm.n();
    PipeDream { k: n, n, crosses: perm.diagram() }
}

fn hits(crosses: &BTreeSet<Cell>, d: &Diagonal) -> bool {
    d.boxes.iter().any(|c| crosses.contains(c))
}

pub fn poisons_diagonal(pd: &PipeDream, d: &Diagonal) -> bool {
    hits(&pd.crosses, d)
}

pub fn poisons_minor(pd: &PipeDream, m: &MinorSpec) -> bool {
    hits(&pd.crosses, &Diagonal::of_minor(m))
}

fn poisons_all(crosses: &BTreeSet<Cell>, diags: &[Diagonal]) -> bool {
    diags.iter().all(|d| hits(crosses, d))
}

fn essential_diagonals(perm: &Permutation) -> Vec<Diagonal> {
    let set: BTreeSet<Diagonal> = detideal::minor_specs(perm, Generators::Essential).iter().map(Diagonal::of_minor).collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimality {
    pub minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removable: Option<Cell>,
}

/// Crosses in search order: the first box with an antidiagonal pair of
/// northwest dots, then the rest row by row.
fn search_order(pd: &PipeDream, perm: &Permutation) -> Vec<Cell> {
    let mut out = Vec::with_capacity(pd.crosses.len());
    if let Some((c, _, _)) = perm.first_antidiagonal_box() {
        if pd.crosses.contains(&c) {
            out.push(c);
        }
    }
    let first = out.first().copied();
    out.extend(pd.crosses.iter().filter(|c| Some(**c) != first));
    out
}

/// Whether `pd` poisons `A_π` and no single cross can be dropped.
pub fn is_minimal_poisoning(pd: &PipeDream, perm: &Permutation) -> Result<Minimality> {
    let diags = essential_diagonals(perm);
    if !poisons_all(&pd.crosses, &diags) {
        return Err(Error::Precondition(format!("the pipe dream does not poison every essential minor of {perm}")));
    }
    for c in search_order(pd, perm) {
        let mut rest = pd.crosses.clone();
        rest.remove(&c);
        if poisons_all(&rest, &diags) {
            return Ok(Minimality { minimal: false, removable: Some(c) });
        }
    }
    Ok(Minimality { minimal: true, removable: None })
}

/// Every diagonal term of a minor of `B_π` is divisible by the diagonal term
/// of some minor of `A_π`.
pub fn diagonal_divisibility(perm: &Permutation) -> bool {
    let a: Vec<Monomial> = essential_diagonals(perm).iter().map(Diagonal::term).collect();
    let a = groebner::minimalize(a);
    detideal::minor_specs(perm, Generators::Full)
        .iter()
        .all(|m| groebner::monomial_ideal::monomial_contains(&a, &m.diagonal_term()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessCertificate {
    pub perm: Vec<usize>,
    pub length: usize,
    pub poison_crosses: Vec<[usize; 2]>,
    pub codim: usize,
}

/// A poisoning of `A_π` by fewer than `ℓ(π)` crosses, so the ideal of its
/// variables contains every diagonal term of `A_π` and has codimension
/// below `ℓ(π)`.
pub fn sharpness_certificate(perm: &Permutation) -> Result<SharpnessCertificate> {
    if perm.is_vexillary() {
        return Err(Error::Precondition(format!("{perm} is vexillary")));
    }
    let pd = cross_diagram(perm);
    let m = is_minimal_poisoning(&pd, perm)?;
    let cell = m.removable.ok_or_else(|| Error::Invariant(format!("cross diagram of {perm} is a minimal poisoning")))?;
    let mut crosses = pd.crosses.clone();
    crosses.remove(&cell);
    let vars: Vec<Monomial> = crosses.iter().map(|c| Monomial::var(Var::z(c.row, c.col))).collect();
    for d in essential_diagonals(perm) {
        if !groebner::monomial_ideal::monomial_contains(&vars, &d.term()) {
            return Err(Error::Invariant(format!("diagonal {} escapes the certificate", d.term())));
        }
    }
    let codim = crosses.len();
    if codim >= perm.length() {
        return Err(Error::Invariant("certificate is not smaller than the length".into()));
    }
    Ok(SharpnessCertificate {
        perm: perm.trimmed().to_vec(),
        length: perm.length(),
        poison_crosses: crosses.iter().map(|c| [c.row, c.col]).collect(),
        codim,
    })
}

/// The ideal generated by the diagonal terms of `A_π`.
pub fn diagonal_term_ideal(perm: &Permutation) -> Ideal {
    let terms: Vec<Monomial> = essential_diagonals(perm).iter().map(Diagonal::term).collect();
    Ideal::monomial(groebner::minimalize(terms), detideal::z_ring(perm.n()))
}

/// Whether the diagonal initial ideal of `I_π` is strictly larger than the
/// ideal of diagonal terms of `A_π`.
pub fn initial_ideal_exceeds_diagonal_terms(perm: &Permutation, budget: &Budget) -> Result<bool> {
    let n = perm.n();
    let init = groebner::initial_ideal(&detideal::schubert_ideal(perm, Generators::Essential), &detideal::diagonal_order(n), budget)?;
    Ok(groebner::minimalize(init.monomials()?) != groebner::minimalize(diagonal_term_ideal(perm).monomials()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn cells(v: &[(usize, usize)]) -> BTreeSet<Cell> {
        v.iter().map(|&c| c.into()).collect()
    }

    #[test]
    fn cross_diagrams() {
        assert!(cross_diagram(&Permutation::identity(4)).crosses.is_empty());
        assert_eq!(cross_diagram(&perm(&[4, 1, 3, 2, 5])).crosses, cells(&[(1, 1), (1, 2), (1, 3), (3, 2)]));
        assert_eq!(cross_diagram(&perm(&[2, 1, 4, 3])).crosses, cells(&[(1, 1), (3, 3)]));
    }

    #[test]
    fn poisoning_examples() {
        let d = Diagonal::new(vec![Cell::new(1, 1), Cell::new(2, 2)]).unwrap();
        let empty = PipeDream { k: 4, n: 4, crosses: BTreeSet::new() };
        assert!(!poisons_diagonal(&empty, &d));
        assert!(poisons_diagonal(&cross_diagram(&perm(&[4, 1, 3, 2, 5])), &d));
        let d3 = Diagonal::new(vec![Cell::new(1, 1), Cell::new(2, 2), Cell::new(3, 3)]).unwrap();
        assert!(poisons_diagonal(&cross_diagram(&perm(&[2, 1, 4, 3])), &d3));
        assert!(Diagonal::new(vec![Cell::new(2, 1), Cell::new(1, 2)]).is_err());
    }

    #[test]
    fn minimality() {
        let v = perm(&[4, 1, 3, 2, 5]);
        assert!(is_minimal_poisoning(&cross_diagram(&v), &v).unwrap().minimal);
        let w = perm(&[2, 1, 4, 3]);
        let m = is_minimal_poisoning(&cross_diagram(&w), &w).unwrap();
        assert_eq!(m, Minimality { minimal: false, removable: Some(Cell::new(3, 3)) });
        let e = Permutation::identity(3);
        assert!(is_minimal_poisoning(&cross_diagram(&e), &e).unwrap().minimal);
    }

    #[test]
    fn certificates() {
        let c = sharpness_certificate(&perm(&[2, 1, 4, 3])).unwrap();
        assert_eq!(c.poison_crosses, vec![[1, 1]]);
        assert_eq!((c.codim, c.length), (1, 2));
        assert!(sharpness_certificate(&perm(&[2, 1, 4, 3, 6, 5])).is_ok());
        assert!(sharpness_certificate(&perm(&[4, 1, 3, 2, 5])).is_err());
        assert!(initial_ideal_exceeds_diagonal_terms(&perm(&[2, 1, 4, 3]), &Budget::default()).unwrap());
    }

    #[test]
    fn divisibility() {
        assert!(diagonal_divisibility(&Permutation::identity(3)));
        assert!(diagonal_divisibility(&perm(&[4, 1, 3, 2, 5])));
        assert!(Permutation::all(4).iter().all(diagonal_divisibility));
    }
}
