//! Permutations in one-line notation and their diagram combinatorics.
//!
//! Grids are 1-indexed in matrix convention: `(row, col)` with rows growing
//! downward. A permutation `π` has a dot at `(i, π(i))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};

/// A grid position `(row, col)`, 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Weakly southeast of `other`.
    pub fn weakly_se_of(&self, other: &Cell) -> bool {
        self.row >= other.row && self.col >= other.col
    }

    /// Strictly northwest of `other`.
    pub fn strictly_nw_of(&self, other: &Cell) -> bool {
        self.row < other.row && self.col < other.col
    }

    /// Index of the diagonal through this cell (`col - row`).
    pub fn diagonal(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row length, zero beyond the last part.
    pub fn part(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.0.iter().enumerate() {
            for j in 1..=len {
                out.push(Cell::new(i + 1, j));
            }
        }
        out
    }

    pub fn contains(&self, c: &Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col <= self.part(c.row)
    }

    /// All partitions fitting inside a `rows x cols` rectangle.
    pub fn all_in_rectangle(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Row bounds for flagged tableaux, one per row of a partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flag(pub Vec<usize>);

impl Flag {
    pub fn bounds(&self) -> &[usize] {
        &self.0
    }
}

/// `r[p][q]` = number of dots in the northwest `p x q` corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankArray {
    n: usize,
    entries: Vec<usize>,
}

impl RankArray {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank at `(p, q)`; zero on the border row/column 0, saturating outside.
    pub fn get(&self, p: usize, q: usize) -> usize {
        if p == 0 || q == 0 {
            return 0;
        }
        if p > self.n || q > self.n {
            // Outside the grid the embedded permutation fixes everything.
            let pp = p.min(self.n);
            let qq = q.min(self.n);
            let base = self.entries[(pp - 1) * self.n + (qq - 1)];
            return base + (p.min(q).saturating_sub(self.n));
        }
        self.entries[(p - 1) * self.n + (q - 1)]
    }

    /// Recover the one-line notation from the ranks.
    pub fn reconstruct(&self) -> Result<Permutation> {
        let n = self.n;
        let mut one_line = vec![0usize; n];
        for p in 1..=n {
            for q in 1..=n {
                let d = self.get(p, q) as i64 - self.get(p - 1, q) as i64 - self.get(p, q - 1) as i64
                    + self.get(p - 1, q - 1) as i64;
                match d {
                    0 => {}
                    1 => {
                        if one_line[p - 1] != 0 {
                            return Err(Error::InvalidPermutation(format!("two dots in row {p}")));
                        }
                        one_line[p - 1] = q;
                    }
                    _ => {
                        return Err(Error::InvalidPermutation(format!(
                            "rank increment {d} at ({p},{q})"
                        )))
                    }
                }
            }
        }
        Permutation::new(one_line)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }
}

/// Result of the descent at an accessible box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub perm_p: Permutation,
    pub perm_c: Permutation,
    /// The row `t` of the dot at the northwest corner of the box's component.
    pub t: usize,
}

/// Chain from a Grassmannian permutation up to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grassmannization {
    /// `chain[0]` is Grassmannian, the last element is the input (embedded).
    pub chain: Vec<Permutation>,
    pub k: usize,
    pub n: usize,
}

impl Grassmannization {
    pub fn grassmannian(&self) -> &Permutation {
        &self.chain[0]
    }
}

/// A permutation in one-line notation. Equality, ordering, and hashing ignore
/// trailing fixed points, so `[2,1]` equals `[2,1,3]`.
#[derive(Clone, Debug)]
pub struct Permutation {
    one_line: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    one_line: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermRepr { one_line: self.one_line.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PermRepr::deserialize(d)?;
        Permutation::new(r.one_line).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.trimmed().cmp(other.trimmed())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vals: std::result::Result<Vec<usize>, _> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect();
        let vals = vals.map_err(|e| Error::Parse(format!("permutation {s:?}: {e}")))?;
        Permutation::new(vals)
    }
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{one_line:?} is not a bijection on 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect() }
    }

    /// The longest element of `S_n`.
    pub fn longest(n: usize) -> Self {
        Permutation { one_line: (1..=n).rev().collect() }
    }

    /// The simple transposition `s_i` in `S_{i+1}`.
    pub fn simple(i: usize) -> Self {
        Self::identity(i + 1).swap_positions(i, i + 1)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { one_line: cur.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
        out
    }

    /// The Grassmannian permutation with descent at `k` and shape `shape`.
    pub fn grassmannian(shape: &Partition, k: usize) -> Result<Self> {
        if shape.len() > k {
            return Err(Error::Precondition(format!("shape {shape} has more than {k} rows")));
        }
        let n = k + shape.part(1);
        let mut first: Vec<usize> = (1..=k).map(|i| i + shape.part(k + 1 - i)).collect();
        let taken: BTreeSet<usize> = first.iter().copied().collect();
        first.extend((1..=n).filter(|v| !taken.contains(v)));
        Permutation::new(first)
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// One-line notation without trailing fixed points.
    pub fn trimmed(&self) -> &[usize] {
        let mut m = self.one_line.len();
        while m > 0 && self.one_line[m - 1] == m {
            m -= 1;
        }
        &self.one_line[..m]
    }

    /// `π(i)`, extended by fixed points beyond `n`.
    pub fn at(&self, i: usize) -> usize {
        if i >= 1 && i <= self.n() {
            self.one_line[i - 1]
        } else {
            i
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// Embed into `S_m`, `m >= n`, fixing the new points.
    pub fn embed(&self, m: usize) -> Permutation {
        let mut one_line = self.one_line.clone();
        for v in self.n() + 1..=m {
            one_line.push(v);
        }
        Permutation { one_line }
    }

    /// `π ∘ (i j)`: exchange the values in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut p = self.embed(i.max(j));
        p.one_line.swap(i - 1, j - 1);
        p
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let m = self.n().max(other.n());
        Permutation { one_line: (1..=m).map(|i| self.at(other.at(i))).collect() }
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn descents(&self) -> BTreeSet<usize> {
        (1..self.n()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    pub fn rank_array(&self) -> RankArray {
        let n = self.n();
        let mut entries = vec![0usize; n * n];
        for p in 1..=n {
            for q in 1..=n {
                let above = if p > 1 { entries[(p - 2) * n + (q - 1)] } else { 0 };
                let dot_left = usize::from(self.at(p) <= q);
                entries[(p - 1) * n + (q - 1)] = above + dot_left;
            }
        }
        RankArray { n, entries }
    }

    /// Boxes `(p,q)` with `π(p) > q` and `π⁻¹(q) > p`.
    pub fn diagram(&self) -> BTreeSet<Cell> {
        let inv = self.inverse();
        let mut out = BTreeSet::new();
        for p in 1..=self.n() {
            for q in 1..self.at(p) {
                if inv.at(q) > p {
                    out.insert(Cell::new(p, q));
                }
            }
        }
        out
    }

    /// Southeast corners of diagram components, with their ranks.
    pub fn essential_set(&self) -> Vec<(Cell, usize)> {
        let d = self.diagram();
        let r = self.rank_array();
        d.iter()
            .filter(|c| {
                !d.contains(&Cell::new(c.row + 1, c.col)) && !d.contains(&Cell::new(c.row, c.col + 1))
            })
            .map(|c| (*c, r.get(c.row, c.col)))
            .collect()
    }

    /// Pattern test: no `a<b<c<d` with `π(b)<π(a)<π(d)<π(c)`.
    pub fn avoids_2143(&self) -> bool {
        let w = &self.one_line;
        let n = w.len();
        for a in 0..n {
            for b in a + 1..n {
                if w[b] >= w[a] {
                    continue;
                }
                for c in b + 1..n {
                    if w[c] <= w[a] {
                        continue;
                    }
                    for d in c + 1..n {
                        if w[a] < w[d] && w[d] < w[c] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// No essential box strictly northwest of another.
    pub fn essential_set_is_chain_free(&self) -> bool {
        let ess = self.essential_set();
        !ess.iter().any(|(a, _)| ess.iter().any(|(b, _)| a.strictly_nw_of(b)))
    }

    /// For each diagram box, the dots northwest of it form a NW-to-SE chain.
    pub fn diagram_dots_are_diagonal(&self) -> bool {
        self.first_antidiagonal_box().is_none()
    }

    /// The first diagram box (row-major) whose northwest dots are not a chain,
    /// together with the offending pair of dot rows.
    pub fn first_antidiagonal_box(&self) -> Option<(Cell, usize, usize)> {
        for c in self.diagram() {
            let mut last_col = 0;
            let mut last_row = 0;
            for i in 1..c.row {
                let v = self.at(i);
                if v < c.col {
                    if v < last_col {
                        return Some((c, last_row, i));
                    }
                    last_col = v;
                    last_row = i;
                }
            }
        }
        None
    }

    /// Vexillarity, evaluated three ways. Disagreement is a bug and panics.
    pub fn is_vexillary(&self) -> bool {
        let a = self.avoids_2143();
        let b = self.essential_set_is_chain_free();
        let c = self.diagram_dots_are_diagonal();
        assert!(a == b && b == c, "vexillarity tests disagree on {self}: pattern={a} ess={b} dots={c}");
        a
    }

    fn require_vexillary(&self) -> Result<()> {
        if self.is_vexillary() {
            Ok(())
        } else {
            Err(Error::NotVexillary(self.to_string()))
        }
    }

    /// Row sizes of the diagram, sorted decreasing.
    pub fn shape_lambda(&self) -> Partition {
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        for c in self.diagram() {
            *rows.entry(c.row).or_default() += 1;
        }
        Partition::new(rows.into_values().collect())
    }

    /// Union of the northwest rectangles cut out by the essential set.
    pub fn shape_mu(&self) -> Partition {
        let ess = self.essential_set();
        let rows = ess.iter().map(|(c, _)| c.row).max().unwrap_or(0);
        let parts = (1..=rows)
            .map(|i| ess.iter().filter(|(c, _)| c.row >= i).map(|(c, _)| c.col).max().unwrap_or(0))
            .collect();
        Partition::new(parts)
    }

    /// Flag bound for row `i`: row of the southeasternmost box of `μ` on the
    /// diagonal through `(i, λ_i)`.
    pub fn flag(&self) -> Result<Flag> {
        self.require_vexillary()?;
        let lambda = self.shape_lambda();
        let mu = self.shape_mu();
        let mut bounds = Vec::with_capacity(lambda.len());
        for i in 1..=lambda.len() {
            let d = lambda.part(i) as i64 - i as i64;
            let best = (1..=mu.len())
                .filter(|&r| {
                    let c = r as i64 + d;
                    c >= 1 && (c as usize) <= mu.part(r)
                })
                .max()
                .ok_or_else(|| Error::Invariant(format!("no box of μ on diagonal {d} for {self}")))?;
            bounds.push(best);
        }
        Ok(Flag(bounds))
    }

    /// Diagram boxes of nonzero rank with no other diagram box weakly southeast.
    pub fn accessible_boxes(&self) -> BTreeSet<Cell> {
        let d = self.diagram();
        let r = self.rank_array();
        d.iter()
            .filter(|c| r.get(c.row, c.col) != 0)
            .filter(|c| !d.iter().any(|o| o != *c && o.weakly_se_of(c)))
            .copied()
            .collect()
    }

    /// The 4-connected component of the diagram containing `cell`.
    pub fn diagram_component(&self, cell: Cell) -> BTreeSet<Cell> {
        let d = self.diagram();
        let mut comp = BTreeSet::new();
        if !d.contains(&cell) {
            return comp;
        }
        let mut stack = vec![cell];
        while let Some(c) = stack.pop() {
            if !comp.insert(c) {
                continue;
            }
            let mut nbrs = vec![Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)];
            if c.row > 1 {
                nbrs.push(Cell::new(c.row - 1, c.col));
            }
            if c.col > 1 {
                nbrs.push(Cell::new(c.row, c.col - 1));
            }
            for nb in nbrs {
                if d.contains(&nb) && !comp.contains(&nb) {
                    stack.push(nb);
                }
            }
        }
        comp
    }

    /// `π_P` and `π_C` at an accessible box, checked against the descent
    /// invariants on diagrams, ranks, and essential sets.
    pub fn descend_pc(&self, cell: Cell) -> Result<Descent> {
        self.require_vexillary()?;
        if !self.accessible_boxes().contains(&cell) {
            return Err(Error::NotAccessible { perm: self.to_string(), row: cell.row, col: cell.col });
        }
        let (p, q) = (cell.row, cell.col);
        let comp = self.diagram_component(cell);
        let a = comp.iter().map(|c| c.row).min().unwrap_or(p);
        let b = comp.iter().map(|c| c.col).min().unwrap_or(q);
        invariant(comp.contains(&Cell::new(a, b)), || {
            format!("component of {cell} in {self} has no northwest corner")
        })?;
        invariant(a >= 2 && b >= 2 && self.at(a - 1) == b - 1, || {
            format!("no dot at ({},{}) for {self}", a as i64 - 1, b as i64 - 1)
        })?;
        let t = a - 1;
        let inv_q = self.inverse().at(q);
        let perm_p = self.swap_positions(p, inv_q);
        let perm_c = perm_p.swap_positions(t, p);
        let out = Descent { perm_p, perm_c, t };
        self.check_descent(cell, &comp, &out)?;
        Ok(out)
    }

    fn check_descent(&self, cell: Cell, comp: &BTreeSet<Cell>, out: &Descent) -> Result<()> {
        let (p, q) = (cell.row, cell.col);
        let n = self.n();
        let d = self.diagram();
        let dp = out.perm_p.diagram();
        let dc = out.perm_c.diagram();

        let mut expect_p = d.clone();
        expect_p.remove(&cell);
        invariant(dp == expect_p, || format!("D(π_P) != D(π) minus {cell} for {self}"))?;

        let rect: BTreeSet<Cell> = comp.iter().filter(|c| c.row <= p && c.col <= q).copied().collect();
        let mut expect_c: BTreeSet<Cell> = d.difference(&rect).copied().collect();
        expect_c.extend(rect.iter().map(|c| Cell::new(c.row - 1, c.col - 1)));
        invariant(dc == expect_c, || format!("D(π_C) is not the shifted rectangle for {self} at {cell}"))?;

        let r = self.rank_array();
        let rp = out.perm_p.rank_array();
        let rc = out.perm_c.rank_array();
        let inv_q = self.inverse().at(q);
        let pi_p = self.at(p);
        let t = out.t;
        let pi_t = self.at(t);
        for i in 1..=n {
            for j in 1..=n {
                let up = i >= p && i < inv_q && j >= q && j < pi_p;
                let down = i >= t && i < p && j >= pi_t && j < q;
                let base = r.get(i, j) as i64;
                let want_p = base + i64::from(up);
                let want_c = base + i64::from(up) - i64::from(down);
                invariant(rp.get(i, j) as i64 == want_p, || {
                    format!("rank of π_P wrong at ({i},{j}) for {self} at {cell}")
                })?;
                invariant(rc.get(i, j) as i64 == want_c, || {
                    format!("rank of π_C wrong at ({i},{j}) for {self} at {cell}")
                })?;
            }
        }

        let ess: BTreeSet<(Cell, usize)> = self.essential_set().into_iter().collect();
        let ess_p: BTreeSet<(Cell, usize)> = out.perm_p.essential_set().into_iter().collect();
        for e in ess.iter().filter(|e| e.0 != cell) {
            invariant(ess_p.contains(e), || format!("essential box {} lost in π_P for {self}", e.0))?;
        }
        let ess_boxes: BTreeSet<Cell> = ess.iter().map(|e| e.0).collect();
        for e in ess_p.iter().filter(|e| !ess_boxes.contains(&e.0)) {
            let ok = (e.0.row + 1 == p && e.0.col == q) || (e.0.row == p && e.0.col + 1 == q);
            invariant(ok, || format!("unexpected essential box {} in π_P for {self}", e.0))?;
        }
        let ess_c: BTreeSet<Cell> = out.perm_c.essential_set().into_iter().map(|e| e.0).collect();
        let mut want: BTreeSet<Cell> = ess_boxes.iter().filter(|c| **c != cell).copied().collect();
        want.insert(Cell::new(p - 1, q - 1));
        invariant(ess_c == want, || format!("Ess(π_C) mismatch for {self} at {cell}"))?;

        invariant(out.perm_p.is_vexillary() && out.perm_c.is_vexillary(), || {
            format!("descent of {self} at {cell} left the vexillary class")
        })
    }

    /// The explicit step: swap in the dot southeast of the northmost essential
    /// box `(h,j)` in column `j`. `None` when the result fails the checks.
    fn lift_step(&self, j: usize, k: usize, lambda: &Partition) -> Result<Option<Permutation>> {
        let h = self
            .essential_set()
            .iter()
            .filter(|(c, _)| c.col == j)
            .map(|(c, _)| c.row)
            .min()
            .ok_or_else(|| Error::Invariant(format!("column {j} of Ess({self}) is empty")))?;
        let p = self.inverse().at(j + 1);
        invariant(self.at(h + 1) <= j && p <= h, || format!("dots misplaced around ({h},{j}) in {self}"))?;
        let mut ext = self.clone();
        let c = loop {
            let cands: Vec<usize> = (h + 1..=ext.n()).filter(|&r| ext.at(r) > j).collect();
            if let Some(&first) = cands.first() {
                let min_col = cands.iter().map(|&r| ext.at(r)).min().unwrap_or(0);
                if ext.at(first) != min_col {
                    return Ok(None);
                }
                break first;
            }
            ext = ext.embed(ext.n() + 1);
        };
        let sigma = ext.swap_positions(p, h + 1).swap_positions(h + 1, c);
        if !sigma.is_vexillary() || !sigma.lifts(&ext, k, lambda) {
            return Ok(None);
        }
        match sigma.descend_pc(Cell::new(h + 1, j + 1)) {
            Ok(back) if back.perm_c == ext => Ok(Some(sigma)),
            _ => Ok(None),
        }
    }

    /// Same shape, same last descent, diagram strictly further south.
    fn lifts(&self, below: &Permutation, k: usize, lambda: &Partition) -> bool {
        let weight = |p: &Permutation| p.diagram().iter().map(|c| c.row).sum::<usize>();
        self.shape_lambda() == *lambda
            && self.descents().iter().next_back().copied() == Some(k)
            && weight(self) > weight(below)
    }

    /// Search the 3-cycles of rows of `self` (embedded in `S_n` and `S_{n+1}`)
    /// for a vexillary `σ` with `σ_C = self` at some accessible box.
    fn lift_by_search(&self, k: usize, lambda: &Partition) -> Result<Permutation> {
        for m in [self.n(), self.n() + 1] {
            let ext = self.embed(m);
            for a in 1..=m {
                for b in a + 1..=m {
                    for c in b + 1..=m {
                        for rot in [[b, c, a], [c, a, b]] {
                            let mut v = ext.one_line().to_vec();
                            let src = [ext.at(rot[0]), ext.at(rot[1]), ext.at(rot[2])];
                            v[a - 1] = src[0];
                            v[b - 1] = src[1];
                            v[c - 1] = src[2];
                            let sigma = Permutation::new(v)?;
                            if !sigma.avoids_2143() || !sigma.lifts(&ext, k, lambda) {
                                continue;
                            }
                            for cell in sigma.accessible_boxes() {
                                if matches!(sigma.descend_pc(cell), Ok(d) if d.perm_c == ext) {
                                    return Ok(sigma);
                                }
                            }
                        }
                    }
                }
            }
        }
        Err(Error::Invariant(format!("no vexillary lift found above {self}")))
    }

    /// Build a chain of `C`-descents ending at `self` and starting at a
    /// Grassmannian permutation, following the constructive argument: pick the
    /// second-largest descent `i`, the rightmost diagram box `(i,j)` in its row,
    /// the northmost essential box `(h,j)` in that column, and swap in the
    /// dot directly southeast. When that step leaves the vexillary class a
    /// small search over 3-cycles supplies the lift instead.
    pub fn grassmannianize(&self) -> Result<Grassmannization> {
        self.require_vexillary()?;
        let k = self.descents().iter().next_back().copied().unwrap_or(0);
        let lambda = self.shape_lambda();
        let mut chain = vec![self.clone()];
        let mut cur = self.clone();
        let cap = 4 * (self.n() + 2) * (self.n() + 2);
        while !cur.is_grassmannian() {
            invariant(chain.len() <= cap, || format!("grassmannianize of {self} did not terminate"))?;
            let desc: Vec<usize> = cur.descents().into_iter().collect();
            let i = desc[desc.len() - 2];
            let d = cur.diagram();
            let j = d
                .iter()
                .filter(|c| c.row == i)
                .map(|c| c.col)
                .max()
                .ok_or_else(|| Error::Invariant(format!("row {i} of D({cur}) is empty")))?;
            let sigma = match cur.lift_step(j, k, &lambda)? {
                Some(s) => s,
                None => cur.lift_by_search(k, &lambda)?,
            };
            chain.push(sigma.clone());
            cur = sigma;
        }
        chain.reverse();
        let n = chain.iter().map(|p| p.n()).max().unwrap_or(0);
        let chain: Vec<Permutation> = chain.into_iter().map(|p| p.embed(n)).collect();
        let gr = &chain[0];
        let got: BTreeSet<(Cell, usize)> = gr.essential_set().into_iter().collect();
        let want: BTreeSet<(Cell, usize)> = self
            .essential_set()
            .into_iter()
            .map(|(c, r)| (Cell::new(k, k + c.col - c.row), k + r - c.row))
            .collect();
        invariant(got == want, || format!("Ess of the Grassmannian end {gr} is not the expected shift"))?;
        Ok(Grassmannization { chain, k, n })
    }
}
