use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Monomial, Var};

/// A monomial order. Variables missing from a priority list rank below every
/// listed variable, among themselves in their natural order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermOrder {
    /// Lexicographic, highest-priority variable first.
    Lex(Vec<Var>),
    /// Total degree, ties broken lexicographically.
    GradedLex(Vec<Var>),
    /// Degree in `first` compared before `inner`.
    Block { first: Vec<Var>, inner: Box<TermOrder> },
}

/// Weight rows followed by a lex tie-break over `vars`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub vars: Vec<Var>,
    pub rows: Vec<Vec<u16>>,
}

impl TermOrder {
    /// Block order with `y` compared first.
    pub fn y_block(y: Var, inner: TermOrder) -> TermOrder {
        TermOrder::Block { first: vec![y], inner: Box::new(inner) }
    }

    /// Elimination order for `vars` over `inner`.
    pub fn elimination(vars: Vec<Var>, inner: TermOrder) -> TermOrder {
        TermOrder::Block { first: vars, inner: Box::new(inner) }
    }

    fn priority(&self) -> &[Var] {
        match self {
            TermOrder::Lex(p) | TermOrder::GradedLex(p) => p,
            TermOrder::Block { inner, .. } => inner.priority(),
        }
    }

    fn weight_sets(&self) -> Vec<Option<BTreeSet<Var>>> {
        match self {
            TermOrder::Lex(_) => vec![],
            TermOrder::GradedLex(_) => vec![None],
            TermOrder::Block { first, inner } => {
                let mut v = vec![Some(first.iter().copied().collect())];
                v.extend(inner.weight_sets());
                v
            }
        }
    }

    pub(crate) fn layout(&self, universe: &BTreeSet<Var>) -> Layout {
        let mut vars: Vec<Var> = Vec::with_capacity(universe.len());
        let mut seen = BTreeSet::new();
        for v in self.priority() {
            if universe.contains(v) && seen.insert(*v) {
                vars.push(*v);
            }
        }
        vars.extend(universe.iter().filter(|v| !seen.contains(v)));
        let rows = self
            .weight_sets()
            .into_iter()
            .map(|set| vars.iter().map(|v| u16::from(set.as_ref().is_none_or(|s| s.contains(v)))).collect())
            .collect();
        Layout { vars, rows }
    }

    /// A comparator valid for monomials supported on `universe`.
    pub fn comparator(&self, universe: &BTreeSet<Var>) -> Comparator {
        let layout = self.layout(universe);
        let index = layout.vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Comparator { layout, index }
    }

    /// Sort monomials descending.
    pub fn sort_desc(&self, monos: &mut [Monomial]) {
        let universe: BTreeSet<Var> = monos.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
        let cmp = self.comparator(&universe);
        monos.sort_by(|a, b| cmp.compare(b, a));
    }
}

/// Compares monomials under a fixed order and variable universe.
pub struct Comparator {
    layout: Layout,
    index: HashMap<Var, usize>,
}

impl Comparator {
    fn dense(&self, m: &Monomial) -> Vec<i64> {
        let mut v = vec![0i64; self.layout.vars.len()];
        for (var, e) in m.iter() {
            let i = *self.index.get(&var).expect("monomial outside the comparator universe");
            v[i] = e as i64;
        }
        v
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (self.dense(a), self.dense(b));
        for row in &self.layout.rows {
            let wa: i64 = row.iter().zip(&da).map(|(w, e)| *w as i64 * e).sum();
            let wb: i64 = row.iter().zip(&db).map(|(w, e)| *w as i64 * e).sum();
            if wa != wb {
                return wa.cmp(&wb);
            }
        }
        da.cmp(&db)
    }
}
