//! Set-valued tableaux, their flagged variants, and the map Ω to pipe dreams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Cell, Flag, Partition, Permutation};
use crate::subword::PipeDream;

/// A filling of a Ferrers shape by nonempty sets of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SetValuedTableau {
    pub shape: Vec<usize>,
    /// `rows[r][c]` is the sorted set in box `(r+1, c+1)`.
    pub rows: Vec<Vec<Vec<usize>>>,
}

impl SetValuedTableau {
    /// Validates shape, nonemptiness, column strictness, and row weakness.
    pub fn new(rows: Vec<Vec<Vec<usize>>>) -> Result<SetValuedTableau> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) || shape.contains(&0) {
            return Err(Error::Precondition(format!("rows {shape:?} do not form a partition")));
        }
        let mut rows = rows;
        for row in &mut rows {
            for b in row.iter_mut() {
                b.sort_unstable();
                b.dedup();
                if b.is_empty() || b[0] == 0 {
                    return Err(Error::Precondition("boxes hold nonempty sets of positive integers".into()));
                }
            }
        }
        let t = SetValuedTableau { shape, rows };
        if let Some(msg) = t.violation() {
            return Err(Error::Precondition(msg));
        }
        Ok(t)
    }

    fn violation(&self) -> Option<String> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                if c + 1 < row.len() && b.last() > row[c + 1].first() {
                    return Some(format!("row weakness fails between ({},{}) and ({},{})", r + 1, c + 1, r + 1, c + 2));
                }
                if let Some(below) = self.rows.get(r + 1).and_then(|n| n.get(c)) {
                    if b.last() >= below.first() {
                        return Some(format!("column strictness fails between ({},{}) and ({},{})", r + 1, c + 1, r + 2, c + 1));
                    }
                }
            }
        }
        None
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.shape.clone())
    }

    pub fn entry(&self, c: Cell) -> &[usize] {
        &self.rows[c.row - 1][c.col - 1]
    }

    /// Total number of entries `|τ|`.
    pub fn size(&self) -> usize {
        self.rows.iter().flatten().map(Vec::len).sum()
    }

    pub fn is_ordinary(&self) -> bool {
        self.rows.iter().flatten().all(|b| b.len() == 1)
    }

    /// Keep the smallest entry of every box.
    pub fn minimal(&self) -> SetValuedTableau {
        SetValuedTableau {
            shape: self.shape.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(|b| vec![b[0]]).collect()).collect(),
        }
    }

    pub fn satisfies_flag(&self, flag: &Flag) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            let bound = flag.bounds().get(r).copied().unwrap_or(0);
            row.iter().flatten().all(|&v| v <= bound)
        })
    }

    /// Entries with their boxes, in reading order (rows top to bottom, left to right).
    pub fn cells(&self) -> Vec<(Cell, &[usize])> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                out.push((Cell::new(r + 1, c + 1), b.as_slice()));
            }
        }
        out
    }

    /// `\tableau{...}` source.
    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        format!("\\tableau{{{}}}", rows.join(" \\\\ "))
    }
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|b| {
                    let s: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                    if b.len() == 1 {
                        s[0].clone()
                    } else {
                        format!("{{{}}}", s.join(","))
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Set-valued tableaux of `shape` with entries at most `max_entry`, each row
/// additionally bounded by `flag` when given. Boxes are filled in row-major
/// order; the output order is deterministic.
pub fn enumerate_svt(shape: &Partition, max_entry: usize, flag: Option<&Flag>) -> Result<Vec<SetValuedTableau>> {
    enumerate(shape, max_entry, flag, false)
}

/// Ordinary semistandard tableaux under the same bounds.
pub fn enumerate_ssyt(shape: &Partition, max_entry: usize, flag: Option<&Flag>) -> Result<Vec<SetValuedTableau>> {
    enumerate(shape, max_entry, flag, true)
}

/// `FST(π)`: flagged set-valued tableaux of shape `λ(π)` with the flag of `π`.
pub fn flagged_svt(perm: &Permutation) -> Result<Vec<SetValuedTableau>> {
    let flag = perm.flag()?;
    let lam = perm.shape_lambda();
    enumerate_svt(&lam, flag.bounds().iter().copied().max().unwrap_or(0), Some(&flag))
}

/// `FT(π)`: the ordinary tableaux among [`flagged_svt`].
pub fn flagged_ssyt(perm: &Permutation) -> Result<Vec<SetValuedTableau>> {
    let flag = perm.flag()?;
    let lam = perm.shape_lambda();
    enumerate_ssyt(&lam, flag.bounds().iter().copied().max().unwrap_or(0), Some(&flag))
}

fn enumerate(shape: &Partition, max_entry: usize, flag: Option<&Flag>, ordinary: bool) -> Result<Vec<SetValuedTableau>> {
    if let Some(f) = flag {
        if f.bounds().len() != shape.len() {
            return Err(Error::Precondition(format!("flag {:?} does not match shape {shape}", f.bounds())));
        }
    }
    if max_entry > 63 {
        return Err(Error::Precondition("entries above 63 are not supported".into()));
    }
    let cells = shape.cells();
    let bounds: Vec<usize> = (1..=shape.len()).map(|r| flag.map_or(max_entry, |f| f.bounds()[r - 1].min(max_entry))).collect();
    let mut fill: BTreeMap<Cell, u64> = BTreeMap::new();
    let mut out = Vec::new();
    rec(&cells, 0, &bounds, ordinary, &mut fill, &mut out, shape);
    Ok(out)
}

fn lowest(m: u64) -> usize {
    m.trailing_zeros() as usize
}

fn highest(m: u64) -> usize {
    63 - m.leading_zeros() as usize
}

fn rec(
    cells: &[Cell],
    i: usize,
    bounds: &[usize],
    ordinary: bool,
    fill: &mut BTreeMap<Cell, u64>,
    out: &mut Vec<SetValuedTableau>,
    shape: &Partition,
) {
    if i == cells.len() {
        let rows = (1..=shape.len())
            .map(|r| {
                (1..=shape.part(r))
                    .map(|c| {
                        let m = fill[&Cell::new(r, c)];
                        (0..64).filter(|b| m >> b & 1 == 1).collect()
                    })
                    .collect()
            })
            .collect();
        out.push(SetValuedTableau { shape: shape.parts().to_vec(), rows });
        return;
    }
    let cell = cells[i];
    let mut lo = 1;
    if cell.col > 1 {
        lo = lo.max(highest(fill[&Cell::new(cell.row, cell.col - 1)]));
    }
    if cell.row > 1 {
        lo = lo.max(highest(fill[&Cell::new(cell.row - 1, cell.col)]) + 1);
    }
    let hi = bounds[cell.row - 1];
    if lo > hi {
        return;
    }
    let width = hi - lo + 1;
    if ordinary {
        for v in lo..=hi {
            fill.insert(cell, 1 << v);
            rec(cells, i + 1, bounds, ordinary, fill, out, shape);
        }
    } else {
        // Subsets ordered by their smallest element, then lexicographically.
        let mut subsets: Vec<u64> = (1u64..1 << width).map(|s| s << lo).collect();
        subsets.sort_by_key(|&m| (lowest(m), m.count_ones(), m));
        for m in subsets {
            fill.insert(cell, m);
            rec(cells, i + 1, bounds, ordinary, fill, out, shape);
        }
    }
    fill.remove(&cell);
}

/// Ω: each value `i` in box `(r,c)` becomes a cross at `(i, i+c-r)` in the `k x n` grid.
pub fn omega(tau: &SetValuedTableau, k: usize, n: usize) -> Result<PipeDream> {
    let mut crosses = BTreeSet::new();
    for (cell, vals) in tau.cells() {
        for &i in vals {
            let col = (i + cell.col) as isize - cell.row as isize;
            if i > k || col < 1 || col as usize > n {
                return Err(Error::Precondition(format!("value {i} in box {cell} leaves the {k}x{n} grid")));
            }
            if !crosses.insert(Cell::new(i, col as usize)) {
                return Err(Error::Invariant(format!("two entries map to the cross ({i},{col})")));
            }
        }
    }
    PipeDream::new(k, n, crosses)
}

/// The unique `τ` of the given shape with `Ω(τ)` equal to `pd`.
pub fn omega_inverse(pd: &PipeDream, shape: &Partition) -> Result<SetValuedTableau> {
    let mut diag: BTreeMap<isize, Vec<usize>> = BTreeMap::new();
    for c in &pd.crosses {
        diag.entry(c.col as isize - c.row as isize).or_default().push(c.row);
    }
    let cells = shape.cells();
    let mut boxes_on: BTreeMap<isize, usize> = BTreeMap::new();
    for c in &cells {
        *boxes_on.entry(c.diagonal() as isize).or_default() += 1;
    }
    for (d, vals) in &diag {
        let boxes = boxes_on.get(d).copied().unwrap_or(0);
        if vals.len() < boxes.max(1) {
            return Err(Error::NotInImage(format!(
                "diagonal {d} carries {} crosses but the shape has {boxes} boxes there",
                vals.len()
            )));
        }
    }
    for (d, &b) in &boxes_on {
        if b > 0 && !diag.contains_key(d) {
            return Err(Error::NotInImage(format!("diagonal {d} of the shape has no crosses")));
        }
    }
    let mut state = InverseSearch { cells: &cells, diag: &diag, used: BTreeMap::new(), fill: BTreeMap::new(), found: Vec::new(), deepest: (0, String::new()) };
    state.run(0);
    match state.found.len() {
        1 => {
            let fill = state.found.pop().expect("one solution");
            let rows = (1..=shape.len()).map(|r| (1..=shape.part(r)).map(|c| fill[&Cell::new(r, c)].clone()).collect()).collect();
            Ok(SetValuedTableau { shape: shape.parts().to_vec(), rows })
        }
        0 => Err(Error::NotInImage(state.deepest.1)),
        n => Err(Error::Invariant(format!("{n} tableaux share one image under omega"))),
    }
}

struct InverseSearch<'a> {
    cells: &'a [Cell],
    diag: &'a BTreeMap<isize, Vec<usize>>,
    used: BTreeMap<isize, usize>,
    fill: BTreeMap<Cell, Vec<usize>>,
    found: Vec<BTreeMap<Cell, Vec<usize>>>,
    deepest: (usize, String),
}

impl InverseSearch<'_> {
    fn fail(&mut self, i: usize, msg: impl FnOnce() -> String) {
        if i >= self.deepest.0 || self.deepest.1.is_empty() {
            self.deepest = (i, msg());
        }
    }

    fn run(&mut self, i: usize) {
        if self.found.len() > 1 {
            return;
        }
        if i == self.cells.len() {
            let leftover = self.diag.iter().find(|(d, v)| self.used.get(d).copied().unwrap_or(0) != v.len());
            match leftover {
                None => self.found.push(self.fill.clone()),
                Some((d, _)) => {
                    let d = *d;
                    self.fail(i, || format!("crosses on diagonal {d} are not all assigned to boxes"));
                }
            }
            return;
        }
        let cell = self.cells[i];
        let d = cell.diagonal() as isize;
        let vals = &self.diag[&d];
        let start = self.used.get(&d).copied().unwrap_or(0);
        let remaining_boxes = self.cells[i + 1..].iter().filter(|c| c.diagonal() as isize == d).count();
        let avail = vals.len() - start;
        if avail < remaining_boxes + 1 {
            self.fail(i, || format!("box {cell} has no cross left on its diagonal"));
            return;
        }
        let max_take = avail - remaining_boxes;
        let min_take = if remaining_boxes == 0 { max_take } else { 1 };
        for take in min_take..=max_take {
            let set: Vec<usize> = vals[start..start + take].to_vec();
            if cell.col > 1 {
                let left = &self.fill[&Cell::new(cell.row, cell.col - 1)];
                if left.last() > set.first() {
                    self.fail(i, || format!("row weakness fails at box {cell}"));
                    continue;
                }
            }
            if cell.row > 1 {
                let above = &self.fill[&Cell::new(cell.row - 1, cell.col)];
                if above.last() >= set.first() {
                    self.fail(i, || format!("column strictness fails at box {cell}"));
                    continue;
                }
            }
            self.fill.insert(cell, set);
            self.used.insert(d, start + take);
            self.run(i + 1);
            self.used.insert(d, start);
            self.fill.remove(&cell);
        }
    }
}

/// Structural facts about `Ω(τ)` for an ordinary tableau `τ`: every cross lies
/// at the meeting of horizontal pipe `p` and vertical pipe `q` for a box
/// `(p,q)` of the shape, on that box's diagonal and in the row given by its
/// entry; no pipe is horizontal at one cross and vertical at another.
pub fn check_omega_structure(tau: &SetValuedTableau, pd: &PipeDream) -> Result<()> {
    let k = pd.k;
    let tr = pd.trace();
    let mut horizontal = BTreeSet::new();
    let mut vertical = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for (cell, w, nn) in &tr.tiles {
        if !pd.crosses.contains(cell) {
            continue;
        }
        horizontal.insert(*w);
        vertical.insert(*nn);
        if *w > k || *nn <= k {
            return Err(Error::Invariant(format!("cross {cell} is not a horizontal-over-vertical meeting")));
        }
        let b = Cell::new(*w, nn - k);
        if !tau.partition().contains(&b) {
            return Err(Error::Invariant(format!("cross {cell} meets pipes of a box {b} outside the shape")));
        }
        if b.diagonal() != cell.diagonal() {
            return Err(Error::Invariant(format!("cross {cell} is off the diagonal of box {b}")));
        }
        if tau.entry(b) != [cell.row] {
            return Err(Error::Invariant(format!("cross {cell} row differs from the entry of box {b}")));
        }
        seen.insert(b);
    }
    if horizontal.intersection(&vertical).next().is_some() {
        return Err(Error::Invariant("a pipe is horizontal at one cross and vertical at another".into()));
    }
    if seen.len() != tau.partition().size() {
        return Err(Error::Invariant("crosses do not biject with boxes".into()));
    }
    Ok(())
}
