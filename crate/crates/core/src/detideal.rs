//! Schubert determinantal ideals and the diagonal Groebner verification harness.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{self, Budget, GbCertificate, Ideal};
use crate::perm::{Cell, Permutation};
use crate::poly::{Monomial, Poly, TermOrder, Var};
use crate::subword;

/// A minor of size `size` using `rows` and `cols` of the northwest `corner` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSpec {
    pub corner: Cell,
    pub size: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn polynomial(&self) -> Poly {
        minor(&self.rows, &self.cols)
    }

    /// Product of the main-diagonal entries.
    pub fn diagonal_term(&self) -> Monomial {
        Monomial::squarefree(self.rows.iter().zip(&self.cols).map(|(&r, &c)| Var::z(r, c)))
    }

    pub fn antidiagonal_term(&self) -> Monomial {
        Monomial::squarefree(self.rows.iter().zip(self.cols.iter().rev()).map(|(&r, &c)| Var::z(r, c)))
    }
}

/// Which generating set to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generators {
    Essential,
    Full,
}

/// Determinant of the `rows` x `cols` submatrix of the generic matrix `z`.
pub fn minor(rows: &[usize], cols: &[usize]) -> Poly {
    assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    let mut out = Poly::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut inv = 0;
        for i in 0..k {
            for j in i + 1..k {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let m = Monomial::squarefree((0..k).map(|i| Var::z(rows[i], cols[perm[i]])));
        out.add_term(m, BigInt::from(if inv % 2 == 0 { 1 } else { -1 }));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All `k`-subsets of `1..=n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Minors of size `1 + r` inside the `p x q` block.
pub fn corner_minors(corner: Cell, rank: usize) -> Vec<MinorSpec> {
    let size = rank + 1;
    if size > corner.row.min(corner.col) {
        return vec![];
    }
    let rs = subsets(corner.row, size);
    let cs = subsets(corner.col, size);
    let mut out = Vec::with_capacity(rs.len() * cs.len());
    for r in &rs {
        for c in &cs {
            out.push(MinorSpec { corner, size, rows: r.clone(), cols: c.clone() });
        }
    }
    out
}

/// The minors defining `I_π`, over the essential set or over every box.
pub fn minor_specs(perm: &Permutation, which: Generators) -> Vec<MinorSpec> {
    let n = perm.n();
    let corners: Vec<(Cell, usize)> = match which {
        Generators::Essential => perm.essential_set(),
        Generators::Full => {
            let r = perm.rank_array();
            (1..=n).flat_map(|p| (1..=n).map(move |q| (p, q))).map(|(p, q)| (Cell::new(p, q), r.get(p, q))).collect()
        }
    };
    corners.into_iter().flat_map(|(c, r)| corner_minors(c, r)).collect()
}

pub fn z_ring(n: usize) -> Vec<Var> {
    (1..=n).flat_map(|r| (1..=n).map(move |c| Var::z(r, c))).collect()
}

/// `I_π` generated by essential minors (`A_π`) or all rank minors (`B_π`).
/// Duplicate polynomials are removed, signs normalized.
pub fn schubert_ideal(perm: &Permutation, which: Generators) -> Ideal {
    let mut seen = BTreeSet::new();
    let mut gens = Vec::new();
    for m in minor_specs(perm, which) {
        if seen.insert((m.rows.clone(), m.cols.clone())) {
            gens.push(m.polynomial());
        }
    }
    Ideal::new(gens, z_ring(perm.n())).expect("minors are polynomial")
}

/// Lex order reading `z` row by row from the northwest.
pub fn diagonal_order(n: usize) -> TermOrder {
    TermOrder::Lex(z_ring(n))
}

/// Lex order reading rows from the northeast.
pub fn antidiagonal_order(n: usize) -> TermOrder {
    TermOrder::Lex((1..=n).flat_map(|r| (1..=n).rev().map(move |c| Var::z(r, c))).collect())
}

/// A random lex order whose priority list is a linear extension of the
/// "weakly northwest" partial order, hence diagonal.
pub fn random_diagonal_order(n: usize, seed: u64) -> TermOrder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut placed = vec![vec![false; n + 1]; n + 1];
    let mut out = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let mut avail: Vec<(usize, usize)> = Vec::new();
        for r in 1..=n {
            for c in 1..=n {
                let ready = !placed[r][c] && (r == 1 || placed[r - 1][c]) && (c == 1 || placed[r][c - 1]);
                if ready {
                    avail.push((r, c));
                }
            }
        }
        let &(r, c) = avail.choose(&mut rng).expect("poset is finite");
        placed[r][c] = true;
        out.push(Var::z(r, c));
    }
    TermOrder::Lex(out)
}

/// Checks that `ord` picks the main diagonal of every square minor of an
/// `n x n` generic matrix.
pub fn is_diagonal_order(ord: &TermOrder, n: usize) -> Result<bool> {
    for k in 1..=n {
        for r in subsets(n, k) {
            for c in subsets(n, k) {
                let m = MinorSpec { corner: Cell::new(n, n), size: k, rows: r.clone(), cols: c };
                if m.polynomial().leading_term(ord)?.0 != m.diagonal_term() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_antidiagonal_order(ord: &TermOrder, n: usize) -> Result<bool> {
    for k in 1..=n {
        for r in subsets(n, k) {
            for c in subsets(n, k) {
                let m = MinorSpec { corner: Cell::new(n, n), size: k, rows: r.clone(), cols: c };
                if m.polynomial().leading_term(ord)?.0 != m.antidiagonal_term() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub first: Poly,
    pub second: Poly,
    pub remainder: Poly,
}

/// Outcome of [`verify_diagonal_gb`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub perm: Vec<usize>,
    pub vexillary: bool,
    pub diagonal_gb: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_spair: Option<Witness>,
    pub initial_ideal: Vec<Monomial>,
    /// On vexillary input: whether the initial ideal equals the Stanley–Reisner ideal of the subword complex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_subword_complex: Option<bool>,
}

impl Verdict {
    /// The verdict agrees with vexillarity, and with the subword complex when checked.
    pub fn consistent(&self) -> bool {
        self.diagonal_gb == self.vexillary && self.matches_subword_complex.unwrap_or(true)
    }
}

/// Runs the essential-minor Groebner test under `ord` (the standard diagonal
/// order when `None`).
pub fn verify_diagonal_gb_with(perm: &Permutation, ord: Option<&TermOrder>, budget: &Budget) -> Result<Verdict> {
    let n = perm.n();
    let default = diagonal_order(n);
    let ord = ord.unwrap_or(&default);
    let a = schubert_ideal(perm, Generators::Essential);
    let vexillary = perm.is_vexillary();
    let cert = if a.is_zero() { GbCertificate::Basis } else { groebner::is_groebner_basis(a.generators(), ord, budget)? };
    let (diagonal_gb, witness_spair) = match cert {
        GbCertificate::Basis => (true, None),
        GbCertificate::Witness { first, second, remainder } => (
            false,
            Some(Witness { first: a.generators()[first].clone(), second: a.generators()[second].clone(), remainder }),
        ),
    };
    let init = if diagonal_gb {
        let lts: Result<Vec<Monomial>> = a.generators().iter().map(|g| Ok(g.leading_term(ord)?.0)).collect();
        groebner::minimalize(lts?)
    } else {
        groebner::initial_ideal(&a, ord, budget)?.monomials()?
    };
    let matches_subword_complex = if vexillary {
        let sr = subword::gamma(perm)?.stanley_reisner()?;
        Some(groebner::minimalize(sr.monomials()?) == init)
    } else {
        None
    };
    Ok(Verdict { perm: perm.trimmed().to_vec(), vexillary, diagonal_gb, witness_spair, initial_ideal: init, matches_subword_complex })
}

pub fn verify_diagonal_gb(perm: &Permutation) -> Result<Verdict> {
    verify_diagonal_gb_with(perm, None, &Budget::default())
}

/// Consistency of a verdict as a result, for callers that want an error.
pub fn check_verdict(v: &Verdict) -> Result<()> {
    if v.consistent() {
        Ok(())
    } else {
        Err(Error::Invariant(format!("diagonal Groebner verdict disagrees with vexillarity for {:?}", v.perm)))
    }
}
