//! Words in simple reflections, subword complexes, and pipe dreams.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};
use crate::groebner::Ideal;
use crate::perm::{Cell, Permutation};
use crate::poly::{Monomial, Var};

/// Default hard cap on word length for face enumeration.
pub const DEFAULT_FACE_CAP: usize = 24;
const MAX_WORD: usize = 128;

/// A word `(s_{a_1}, ..., s_{a_t})` with a grid box attached to each letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<usize>,
    pub positions: Vec<Cell>,
}

impl Word {
    pub fn new(letters: Vec<usize>, positions: Vec<Cell>) -> Result<Word> {
        if letters.len() != positions.len() {
            return Err(Error::Precondition("letters and positions differ in length".into()));
        }
        if letters.contains(&0) {
            return Err(Error::Precondition("reflection indices start at 1".into()));
        }
        let distinct: BTreeSet<Cell> = positions.iter().copied().collect();
        if distinct.len() != positions.len() {
            return Err(Error::Precondition("word positions repeat".into()));
        }
        Ok(Word { letters, positions })
    }

    /// A word without grid data; positions are `(1, i)`.
    pub fn from_letters(letters: Vec<usize>) -> Result<Word> {
        let positions = (1..=letters.len()).map(|i| Cell::new(1, i)).collect();
        Word::new(letters, positions)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Smallest `m` with every letter in `S_m`.
    pub fn ambient(&self) -> usize {
        self.letters.iter().max().map_or(1, |a| a + 1)
    }

    /// Letters at the positions selected by `mask`.
    pub fn select(&self, mask: u128) -> Vec<usize> {
        (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.letters[i]).collect()
    }

    pub fn cells_of(&self, mask: u128) -> BTreeSet<Cell> {
        (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.positions[i]).collect()
    }

    pub fn mask_of(&self, cells: &BTreeSet<Cell>) -> Result<u128> {
        let mut m = 0u128;
        for c in cells {
            let i = self
                .positions
                .iter()
                .position(|p| p == c)
                .ok_or_else(|| Error::Precondition(format!("box {c} is not a word position")))?;
            m |= 1 << i;
        }
        Ok(m)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|a| format!("s{a}")).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Word of the Ferrers shape `μ(π)`: box `(p,q)` carries `s_{k-p+q}`, rows are
/// read right to left starting from the bottom row.
pub fn word_of_mu(perm: &Permutation) -> Result<Word> {
    let g = perm.grassmannianize()?;
    Ok(shape_word(&perm.shape_mu().cells(), g.k))
}

fn shape_word(cells: &[Cell], k: usize) -> Word {
    let mut cells = cells.to_vec();
    cells.sort_by(|a, b| b.row.cmp(&a.row).then(b.col.cmp(&a.col)));
    let letters = cells.iter().map(|c| k + c.col - c.row).collect();
    Word { letters, positions: cells }
}

/// Word of the full `k x n` rectangle.
pub fn rectangle_word(k: usize, n: usize) -> Word {
    let cells: Vec<Cell> = (1..=k).flat_map(|p| (1..=n).map(move |q| Cell::new(p, q))).collect();
    shape_word(&cells, k)
}

/// Staircase word of `S_n`: box `(i,j)` with `i + j <= n` carries
/// `s_{i+j-1}`; rows top to bottom, each read right to left.
pub fn staircase_word(n: usize) -> Word {
    let mut letters = Vec::new();
    let mut positions = Vec::new();
    for i in 1..n {
        for j in (1..=n - i).rev() {
            letters.push(i + j - 1);
            positions.push(Cell::new(i, j));
        }
    }
    Word { letters, positions }
}

/// Reduced pipe dreams of `perm`: facets of the subword complex of the
/// staircase word with target `perm`.
pub fn reduced_pipe_dreams(perm: &Permutation) -> Result<Vec<PipeDream>> {
    let n = perm.trimmed().len().max(1);
    let word = staircase_word(n);
    let cap = word.len().max(DEFAULT_FACE_CAP);
    SubwordComplex::new(word, perm.clone()).with_cap(cap).with_grid(n, n).facets()
}

fn demazure_fold(u: &mut [usize], letters: impl IntoIterator<Item = usize>) {
    for a in letters {
        if u[a - 1] < u[a] {
            u.swap(a - 1, a);
        }
    }
}

/// Demazure product in `S_m`.
pub fn demazure_product_in(letters: &[usize], m: usize) -> Permutation {
    let m = m.max(letters.iter().max().map_or(1, |a| a + 1));
    let mut u: Vec<usize> = (1..=m).collect();
    demazure_fold(&mut u, letters.iter().copied());
    Permutation::new(u).expect("fold preserves permutations")
}

pub fn demazure_product(word: &Word) -> Permutation {
    demazure_product_in(&word.letters, word.ambient())
}

/// Ordinary product `s_{a_1} ... s_{a_t}`.
pub fn word_product(letters: &[usize], m: usize) -> Permutation {
    let m = m.max(letters.iter().max().map_or(1, |a| a + 1));
    let mut u: Vec<usize> = (1..=m).collect();
    for &a in letters {
        u.swap(a - 1, a);
    }
    Permutation::new(u).expect("swaps preserve permutations")
}

fn ranks(u: &[usize]) -> Vec<u8> {
    let m = u.len();
    let mut r = vec![0u8; m * m];
    for p in 0..m {
        for q in 0..m {
            let above = if p > 0 { r[(p - 1) * m + q] } else { 0 };
            r[p * m + q] = above + u8::from(u[p] <= q + 1);
        }
    }
    r
}

fn bruhat_le_slices(u: &[usize], v: &[usize]) -> bool {
    let (ru, rv) = (ranks(u), ranks(v));
    ru.iter().zip(&rv).all(|(a, b)| a >= b)
}

/// `u ≤ v` in Bruhat order, by comparing rank arrays.
pub fn bruhat_le(u: &Permutation, v: &Permutation) -> bool {
    let m = u.n().max(v.n());
    bruhat_le_slices(u.embed(m).one_line(), v.embed(m).one_line())
}

/// Whether some subword of `word` represents `rho`.
pub fn contains(word: &Word, rho: &Permutation) -> bool {
    bruhat_le(rho, &demazure_product(word))
}

/// Exhaustive search over subsequences with reduced products; for testing.
pub fn contains_by_search(word: &Word, rho: &Permutation) -> bool {
    let l = rho.length();
    let t = word.len();
    assert!(t <= 20, "exhaustive search is for short words");
    let m = word.ambient().max(rho.n());
    (0u32..1 << t).any(|mask| {
        mask.count_ones() as usize == l && {
            let letters: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).map(|i| word.letters[i]).collect();
            word_product(&letters, m) == *rho
        }
    })
}

/// A tiling of the `k x n` grid; only the cross positions are stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PipeDream {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub crosses: BTreeSet<Cell>,
}

/// Labels of pipes: left-edge pipe of row `r` is `r`, top-edge pipe of column
/// `c` is `k + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// West-entering and north-entering pipe at every tile, row-major.
    pub tiles: Vec<(Cell, usize, usize)>,
    /// Pipe leaving the bottom edge at each column.
    pub bottom: Vec<usize>,
    /// Pipe leaving the right edge at each row.
    pub right: Vec<usize>,
    /// Pairs that crossed, with the tile.
    pub crossings: Vec<(usize, usize, Cell)>,
}

impl PipeDream {
    pub fn new(k: usize, n: usize, crosses: BTreeSet<Cell>) -> Result<PipeDream> {
        for c in &crosses {
            if c.row == 0 || c.col == 0 || c.row > k || c.col > n {
                return Err(Error::Precondition(format!("cross {c} outside the {k}x{n} grid")));
            }
        }
        Ok(PipeDream { k, n, crosses })
    }

    /// Follow every pipe. A cross passes both pipes straight; an elbow sends
    /// the west pipe south and the north pipe east.
    pub fn trace(&self) -> Trace {
        let (k, n) = (self.k, self.n);
        let mut south: Vec<usize> = (1..=n).map(|c| k + c).collect();
        let mut right = Vec::with_capacity(k);
        let mut tiles = Vec::with_capacity(k * n);
        let mut crossings = Vec::new();
        for r in 1..=k {
            let mut east = r;
            for c in 1..=n {
                let cell = Cell::new(r, c);
                let (w, nn) = (east, south[c - 1]);
                tiles.push((cell, w, nn));
                if self.crosses.contains(&cell) {
                    crossings.push((w.min(nn), w.max(nn), cell));
                } else {
                    east = nn;
                    south[c - 1] = w;
                }
            }
            right.push(east);
        }
        Trace { tiles, bottom: south, right, crossings }
    }

    /// Elbow tiles inside `allowed` whose two pipes already crossed to the northwest.
    pub fn absorbable(&self, allowed: &BTreeSet<Cell>) -> BTreeSet<Cell> {
        let tr = self.trace();
        let mut crossed: HashSet<(usize, usize)> = HashSet::new();
        let mut out = BTreeSet::new();
        let mut it = tr.crossings.iter().peekable();
        for (cell, w, nn) in tr.tiles {
            while let Some(&&(a, b, at)) = it.peek() {
                if at < cell {
                    crossed.insert((a, b));
                    it.next();
                } else {
                    break;
                }
            }
            if !self.crosses.contains(&cell) && allowed.contains(&cell) && crossed.contains(&(w.min(nn), w.max(nn))) {
                out.insert(cell);
            }
        }
        out
    }

    /// `+` for a cross, `.` for an elbow.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for r in 1..=self.k {
            for c in 1..=self.n {
                s.push(if self.crosses.contains(&Cell::new(r, c)) { '+' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

/// The subword complex `Δ(Q, ρ)` with a `k x n` grid for rendering.
#[derive(Clone, Debug)]
pub struct SubwordComplex {
    pub word: Word,
    pub target: Permutation,
    pub k: usize,
    pub n: usize,
    pub cap: usize,
}

impl SubwordComplex {
    pub fn new(word: Word, target: Permutation) -> SubwordComplex {
        let k = word.positions.iter().map(|c| c.row).max().unwrap_or(0);
        let n = word.positions.iter().map(|c| c.col).max().unwrap_or(0).max(target.n());
        SubwordComplex { word, target, k, n, cap: DEFAULT_FACE_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> SubwordComplex {
        self.cap = cap.min(MAX_WORD);
        self
    }

    pub fn with_grid(mut self, k: usize, n: usize) -> SubwordComplex {
        self.k = k;
        self.n = n;
        self
    }

    fn check_cap(&self) -> Result<()> {
        if self.word.len() > self.cap {
            return Err(Error::FaceCap { len: self.word.len(), cap: self.cap });
        }
        Ok(())
    }

    pub fn vertices(&self) -> BTreeSet<Cell> {
        self.word.positions.iter().copied().collect()
    }

    pub fn dimension(&self) -> isize {
        self.word.len() as isize - self.target.length() as isize - 1
    }

    pub fn is_nonempty(&self) -> bool {
        contains(&self.word, &self.target)
    }

    /// Masks `P` with Demazure product exactly the target, optionally of one size.
    fn enumerate(&self, size: Option<usize>) -> Result<Vec<u128>> {
        self.check_cap()?;
        let m = self.word.ambient().max(self.target.n());
        let rho: Vec<usize> = self.target.embed(m).one_line().to_vec();
        let t = self.word.len();
        let mut out = Vec::new();
        let mut u: Vec<usize> = (1..=m).collect();
        self.dfs(0, 0u128, 0, &mut u, &rho, size, &mut out);
        debug_assert!(out.iter().all(|&p| p >> t == 0));
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(&self, i: usize, mask: u128, chosen: usize, u: &mut Vec<usize>, rho: &[usize], size: Option<usize>, out: &mut Vec<u128>) {
        if !bruhat_le_slices(u, rho) {
            return;
        }
        let t = self.word.len();
        if let Some(s) = size {
            if chosen > s || chosen + (t - i) < s {
                return;
            }
        }
        let mut top = u.clone();
        demazure_fold(&mut top, self.word.letters[i..].iter().copied());
        if !bruhat_le_slices(rho, &top) {
            return;
        }
        if i == t {
            if u.as_slice() == rho {
                out.push(mask);
            }
            return;
        }
        let a = self.word.letters[i];
        let saved = u.clone();
        demazure_fold(u, [a]);
        self.dfs(i + 1, mask | 1 << i, chosen + 1, u, rho, size, out);
        u.copy_from_slice(&saved);
        self.dfs(i + 1, mask, chosen, u, rho, size, out);
    }

    fn dream(&self, mask: u128) -> PipeDream {
        PipeDream { k: self.k, n: self.n, crosses: self.word.cells_of(mask) }
    }

    /// Facets as pipe dreams whose crosses form a reduced subword for the target.
    pub fn facets(&self) -> Result<Vec<PipeDream>> {
        let l = self.target.length();
        let mut v: Vec<PipeDream> = self.enumerate(Some(l))?.into_iter().map(|m| self.dream(m)).collect();
        v.sort();
        Ok(v)
    }

    /// Interior faces as pipe dreams `P` with Demazure product equal to the target.
    pub fn interior_faces(&self) -> Result<Vec<PipeDream>> {
        let mut v: Vec<PipeDream> = self.enumerate(None)?.into_iter().map(|m| self.dream(m)).collect();
        v.sort();
        Ok(v)
    }

    /// Interior faces built from facets by turning absorbable elbows into crosses.
    pub fn interior_faces_by_absorption(&self) -> Result<Vec<PipeDream>> {
        let allowed = self.vertices();
        let mut seen: BTreeSet<PipeDream> = BTreeSet::new();
        for f in self.facets()? {
            let abs: Vec<Cell> = f.absorbable(&allowed).into_iter().collect();
            invariant(abs.len() < 64, || "too many absorbable tiles".into())?;
            for s in 0u64..1 << abs.len() {
                let mut crosses = f.crosses.clone();
                crosses.extend((0..abs.len()).filter(|i| s >> i & 1 == 1).map(|i| abs[i]));
                seen.insert(PipeDream { k: f.k, n: f.n, crosses });
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Stanley–Reisner ideal: minimal transversals of the facet cross-sets, with
    /// box `(p,q)` mapped to `z_{pq}`.
    pub fn stanley_reisner(&self) -> Result<Ideal> {
        self.stanley_reisner_with(|c| Var::z(c.row, c.col))
    }

    pub fn stanley_reisner_with(&self, var: impl Fn(Cell) -> Var) -> Result<Ideal> {
        let facets = self.facets()?;
        let cells: Vec<Cell> = self.word.positions.clone();
        let masks: Vec<u128> = facets.iter().map(|f| self.word.mask_of(&f.crosses)).collect::<Result<_>>()?;
        let trans = minimal_transversals(&masks);
        let ring: Vec<Var> = cells.iter().map(|&c| var(c)).collect();
        Ok(Ideal::monomial(
            trans.into_iter().map(|t| Monomial::squarefree((0..cells.len()).filter(|i| t >> i & 1 == 1).map(|i| var(cells[i])))),
            ring,
        ))
    }
}

/// Minimal sets meeting every input set (Berge's algorithm on bitsets).
pub fn minimal_transversals(sets: &[u128]) -> Vec<u128> {
    if sets.is_empty() {
        return vec![];
    }
    let mut cur: Vec<u128> = vec![0];
    for &s in sets {
        let mut next: Vec<u128> = Vec::new();
        for &t in &cur {
            if t & s != 0 {
                next.push(t);
            } else {
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    next.push(t | b);
                    bits &= bits - 1;
                }
            }
        }
        next.sort_by_key(|t| (t.count_ones(), *t));
        next.dedup();
        let mut min: Vec<u128> = Vec::with_capacity(next.len());
        for t in next {
            if !min.iter().any(|m| m & t == *m) {
                min.push(t);
            }
        }
        cur = min;
    }
    cur
}

/// `Γ_π`: the subword complex on the word of `μ(π)` with the Grassmannian
/// target, drawn in the `k x N` grid.
pub fn gamma(perm: &Permutation) -> Result<SubwordComplex> {
    let g = perm.grassmannianize()?;
    let word = shape_word(&perm.shape_mu().cells(), g.k);
    let target = g.grassmannian().clone();
    let n = g.n.max(word.ambient());
    Ok(SubwordComplex::new(word, target).with_grid(g.k, n))
}

/// `Γ` for a Grassmannian permutation on the full rectangle word.
pub fn gamma_rectangle(perm: &Permutation, k: usize, n: usize) -> Result<SubwordComplex> {
    if !perm.is_grassmannian() {
        return Err(Error::Precondition(format!("{perm} is not Grassmannian")));
    }
    Ok(SubwordComplex::new(rectangle_word(k, n), perm.clone()).with_grid(k, n))
}

/// Facets of `Γ_π` (as cross-sets) in a shelling order obtained by splitting
/// at the southeast-most accessible box: the deletion side first, then the cone.
pub fn vertex_decompose(perm: &Permutation) -> Result<Vec<BTreeSet<Cell>>> {
    let acc = perm.accessible_boxes();
    match acc.iter().next_back() {
        None => {
            let ess = perm.essential_set();
            invariant(ess.iter().all(|(_, r)| *r == 0), || format!("{perm} has no accessible box but a positive-rank essential box"))?;
            Ok(vec![perm.shape_mu().cells().into_iter().collect()])
        }
        Some(&cell) => {
            let d = perm.descend_pc(cell)?;
            let mut out: Vec<BTreeSet<Cell>> = vertex_decompose(&d.perm_p)?
                .into_iter()
                .map(|mut s| {
                    s.insert(cell);
                    s
                })
                .collect();
            out.extend(vertex_decompose(&d.perm_c)?);
            Ok(out)
        }
    }
}

/// Shelling test on facets given by their complements: for `i < j` there must be
/// a vertex `v ∈ P_i \ P_j` and some `k < j` with `P_k \ P_j = {v}`.
pub fn is_shelling(cross_sets: &[BTreeSet<Cell>]) -> bool {
    for j in 0..cross_sets.len() {
        let singles: BTreeSet<Cell> = (0..j)
            .filter_map(|k| {
                let d: Vec<&Cell> = cross_sets[k].difference(&cross_sets[j]).collect();
                (d.len() == 1).then(|| *d[0])
            })
            .collect();
        for i in 0..j {
            if !cross_sets[i].difference(&cross_sets[j]).any(|v| singles.contains(v)) {
                return false;
            }
        }
    }
    true
}
