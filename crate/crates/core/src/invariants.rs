//! Hilbert series, K-polynomials, multidegrees, and double Schubert and
//! Grothendieck polynomials computed along independent routes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::detideal::{self, Generators};
use crate::error::{invariant, Error, Result};
use crate::groebner::{self, Budget, Ideal};
use crate::perm::Permutation;
use crate::poly::{demazure_operator, divided_difference, Monomial, Poly, Var};
use crate::subword;
use crate::tableaux::{self, SetValuedTableau};

const TAYLOR_MAX_GENS: usize = 16;
const FACE_SUM_MAX_VARS: usize = 16;
const SERIES_DEGREE_CAP: i64 = 64;

/// Weights of the ring variables: a linear form for multidegrees and a
/// Laurent monomial for K-polynomials. `z_ij` defaults to `x_i - y_j` and
/// `x_i / y_j`; any other variable defaults to itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedWeights {
    linear: BTreeMap<Var, Poly>,
    multiplicative: BTreeMap<Var, Monomial>,
}

impl GradedWeights {
    pub fn schubert() -> GradedWeights {
        GradedWeights::default()
    }

    pub fn set(mut self, v: Var, linear: Poly, multiplicative: Monomial) -> GradedWeights {
        self.linear.insert(v, linear);
        self.multiplicative.insert(v, multiplicative);
        self
    }

    pub fn linear(&self, v: Var) -> Poly {
        if let Some(p) = self.linear.get(&v) {
            return p.clone();
        }
        match v {
            Var::Z(i, j) => Poly::x_minus_y(i as usize, j as usize),
            _ => Poly::var(v),
        }
    }

    pub fn multiplicative(&self, v: Var) -> Monomial {
        if let Some(m) = self.multiplicative.get(&v) {
            return m.clone();
        }
        match v {
            Var::Z(i, j) => Monomial::from_pairs([(Var::x(i as usize), 1), (Var::y(j as usize), -1)]),
            _ => Monomial::var(v),
        }
    }

    fn of_monomial(&self, m: &Monomial) -> Monomial {
        m.iter().fold(Monomial::one(), |acc, (v, e)| {
            let w = self.multiplicative(v);
            let mut out = acc;
            for _ in 0..e {
                out = out.mul(&w);
            }
            out
        })
    }
}

/// `numerator / (1 - s)^denominator_power`, numerator coefficients listed
/// from `s^0` up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator_power: usize,
}

impl RationalSeries {
    /// Cancels common factors of `1 - s`.
    pub fn canonical(&self) -> RationalSeries {
        let mut num = self.numerator.clone();
        let mut pow = self.denominator_power;
        trim(&mut num);
        while pow > 0 && !num.is_empty() && num.iter().sum::<BigInt>().is_zero() {
            // synthetic division by (1 - s)
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = BigInt::zero();
            for c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            num = q;
            trim(&mut num);
            pow -= 1;
        }
        RationalSeries { numerator: num, denominator_power: pow }
    }

    /// Coefficient of `s^k` in the expansion.
    pub fn coefficient(&self, k: usize) -> BigInt {
        let mut total = BigInt::zero();
        for (i, c) in self.numerator.iter().enumerate() {
            if i > k {
                break;
            }
            let m = k - i;
            total += c * match self.denominator_power {
                0 => BigInt::from(u8::from(m == 0)),
                p => binomial(m + p - 1, p - 1),
            };
        }
        total
    }

    /// Sum of two series over a common denominator, `other` shifted by `s^shift`.
    pub fn add_shifted(&self, other: &RationalSeries, shift: usize) -> RationalSeries {
        let p = self.denominator_power.max(other.denominator_power);
        let a = lift(&self.numerator, p - self.denominator_power);
        let mut b = lift(&other.numerator, p - other.denominator_power);
        b.splice(0..0, std::iter::repeat_n(BigInt::zero(), shift));
        let len = a.len().max(b.len());
        let mut num: Vec<BigInt> = (0..len)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut num);
        RationalSeries { numerator: num, denominator_power: p }
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*s"),
                _ => format!("{c}*s^{i}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        write!(f, "({num})/(1-s)^{}", self.denominator_power)
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn lift(num: &[BigInt], times: usize) -> Vec<BigInt> {
    let mut v = num.to_vec();
    for _ in 0..times {
        let mut w = vec![BigInt::zero(); v.len() + 1];
        for (i, c) in v.iter().enumerate() {
            w[i] += c;
            w[i + 1] -= c;
        }
        v = w;
    }
    v
}

fn binomial(top: usize, bottom: usize) -> BigInt {
    if bottom > top {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..bottom {
        r = r * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    r
}

fn monomial_gens(ideal: &Ideal) -> Result<Vec<Monomial>> {
    if !ideal.is_monomial() {
        return Err(Error::Precondition("expected a monomial ideal".into()));
    }
    Ok(groebner::minimalize(ideal.monomials()?))
}

/// Numerator of the multigraded Hilbert series of `R/<gens>`, by the colon
/// recursion `N(J + <m>) = N(J) - w(m) N(J : m)`.
fn numerator_recursive(gens: &[Monomial], w: &dyn Fn(&Monomial) -> Monomial, memo: &mut HashMap<Vec<Monomial>, Poly>) -> Poly {
    if gens.is_empty() {
        return Poly::one();
    }
    if let Some(p) = memo.get(gens) {
        return p.clone();
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.gcd(b).is_one()));
    let out = if coprime {
        let mut acc = Poly::one();
        for m in gens {
            acc = &acc * &(Poly::one() - Poly::monomial(w(m)));
        }
        acc
    } else {
        let (last, rest) = gens.split_last().expect("nonempty");
        let quot = groebner::minimalize(rest.iter().map(|g| g.div(&g.gcd(last))).collect());
        let a = numerator_recursive(rest, w, memo);
        let b = numerator_recursive(&quot, w, memo);
        a - b.mul_monomial(&w(last))
    };
    memo.insert(gens.to_vec(), out.clone());
    out
}

/// Taylor inclusion–exclusion `Σ_S (-1)^{|S|} w(lcm S)`.
pub fn k_polynomial_taylor(ideal: &Ideal, weights: &GradedWeights) -> Result<Poly> {
    let gens = monomial_gens(ideal)?;
    if gens.len() > TAYLOR_MAX_GENS + 4 {
        return Err(Error::Precondition(format!("{} generators is too many for the Taylor sum", gens.len())));
    }
    let mut out = Poly::zero();
    let mut stack: Vec<(usize, Monomial, bool)> = vec![(0, Monomial::one(), false)];
    while let Some((i, l, odd)) = stack.pop() {
        if i == gens.len() {
            out.add_term(weights.of_monomial(&l), if odd { -BigInt::one() } else { BigInt::one() });
            continue;
        }
        stack.push((i + 1, l.clone(), odd));
        stack.push((i + 1, l.lcm(&gens[i]), !odd));
    }
    Ok(out)
}

/// Face sum `Σ_F Π_{v∈F} w(v) Π_{v∉F} (1 - w(v))` over the Stanley–Reisner
/// complex of a squarefree ideal, restricted to variables that occur.
pub fn k_polynomial_faces(ideal: &Ideal, weights: &GradedWeights) -> Result<Poly> {
    let gens = monomial_gens(ideal)?;
    if !gens.iter().all(|m| m.is_squarefree()) {
        return Err(Error::Precondition("face sum needs a squarefree ideal".into()));
    }
    let support: Vec<Var> = gens.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect::<BTreeSet<_>>().into_iter().collect();
    if support.len() > FACE_SUM_MAX_VARS + 4 {
        return Err(Error::Precondition(format!("{} variables is too many for the face sum", support.len())));
    }
    let idx: BTreeMap<Var, usize> = support.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let masks: Vec<u64> = gens.iter().map(|m| m.vars().fold(0u64, |a, v| a | 1 << idx[&v])).collect();
    let w: Vec<Poly> = support.iter().map(|v| Poly::monomial(weights.multiplicative(*v))).collect();
    let cw: Vec<Poly> = w.iter().map(|p| Poly::one() - p.clone()).collect();
    let mut out = Poly::zero();
    for face in 0u64..1 << support.len() {
        if masks.iter().any(|g| g & face == *g) {
            continue;
        }
        let mut term = Poly::one();
        for i in 0..support.len() {
            term = &term * if face >> i & 1 == 1 { &w[i] } else { &cw[i] };
        }
        out = out + term;
    }
    Ok(out)
}

/// Multigraded K-polynomial of `R/I` for a monomial ideal. The colon
/// recursion is compared with the Taylor sum and, for squarefree input, the
/// face sum whenever those are small enough to run.
pub fn k_polynomial(ideal: &Ideal, weights: &GradedWeights) -> Result<Poly> {
    let gens = monomial_gens(ideal)?;
    let w = |m: &Monomial| weights.of_monomial(m);
    let k = numerator_recursive(&gens, &w, &mut HashMap::new());
    if gens.len() <= TAYLOR_MAX_GENS {
        let t = k_polynomial_taylor(ideal, weights)?;
        invariant(t == k, || format!("Taylor sum disagrees with the colon recursion on {ideal}"))?;
    }
    let support: BTreeSet<Var> = gens.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
    if gens.iter().all(|m| m.is_squarefree()) && support.len() <= FACE_SUM_MAX_VARS {
        let f = k_polynomial_faces(ideal, weights)?;
        invariant(f == k, || format!("face sum disagrees with the colon recursion on {ideal}"))?;
    }
    Ok(k)
}

/// Hilbert series of `R/I` in `num_vars` variables of degree one.
pub fn hilbert_series(ideal: &Ideal, num_vars: usize) -> Result<RationalSeries> {
    let gens = monomial_gens(ideal)?;
    let used: BTreeSet<Var> = gens.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
    if used.len() > num_vars {
        return Err(Error::Precondition(format!("ideal uses {} variables, more than {num_vars}", used.len())));
    }
    let s = Var::Aux(0);
    let w = |m: &Monomial| Monomial::from_pairs([(s, m.degree() as i32)]);
    let num = numerator_recursive(&gens, &w, &mut HashMap::new());
    let mut coeffs = vec![BigInt::zero(); num.max_degree().unwrap_or(0) as usize + 1];
    for (m, c) in num.terms() {
        coeffs[m.degree() as usize] += c;
    }
    trim(&mut coeffs);
    Ok(RationalSeries { numerator: coeffs, denominator_power: num_vars })
}

/// Number of standard monomials of each degree up to `max_degree`, by
/// direct enumeration.
pub fn standard_monomial_counts(ideal: &Ideal, vars: &[Var], max_degree: usize) -> Result<Vec<usize>> {
    let gens = monomial_gens(ideal)?;
    let mut counts = vec![0usize; max_degree + 1];
    let mut exps = vec![0i32; vars.len()];
    fn rec(i: usize, left: usize, vars: &[Var], exps: &mut Vec<i32>, gens: &[Monomial], counts: &mut [usize], max: usize) {
        if i == vars.len() {
            let m = Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied()));
            if !groebner::monomial_ideal::monomial_contains(gens, &m) {
                counts[max - left] += 1;
            }
            return;
        }
        for e in 0..=left {
            exps[i] = e as i32;
            rec(i + 1, left - e, vars, exps, gens, counts, max);
        }
        exps[i] = 0;
    }
    rec(0, max_degree, vars, &mut exps, &gens, &mut counts, max_degree);
    Ok(counts)
}

/// Multidegree of a squarefree monomial ideal: the sum over minimal primes of
/// minimal codimension of the products of their variable weights. Non-squarefree
/// input goes through the lowest-degree part of the K-polynomial.
pub fn multidegree(ideal: &Ideal, weights: &GradedWeights) -> Result<Poly> {
    let gens = monomial_gens(ideal)?;
    if gens.is_empty() {
        return Ok(Poly::one());
    }
    if !gens.iter().all(|m| m.is_squarefree()) {
        let k = k_polynomial(ideal, weights)?;
        return lowest_degree_series(&k);
    }
    let support: Vec<Var> = gens.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect::<BTreeSet<_>>().into_iter().collect();
    if support.len() > 128 {
        return Err(Error::Precondition("more than 128 variables in the support".into()));
    }
    let idx: BTreeMap<Var, usize> = support.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let masks: Vec<u128> = gens.iter().map(|m| m.vars().fold(0u128, |a, v| a | 1 << idx[&v])).collect();
    if masks.contains(&0) {
        return Ok(Poly::zero());
    }
    let covers = subword::minimal_transversals(&masks);
    let codim = covers.iter().map(|c| c.count_ones()).min().unwrap_or(0);
    let mut out = Poly::zero();
    for c in covers.into_iter().filter(|c| c.count_ones() == codim) {
        let factors: Vec<Poly> = (0..support.len()).filter(|i| c >> i & 1 == 1).map(|i| weights.linear(support[i])).collect();
        out = out + Poly::product(&factors);
    }
    Ok(out)
}

/// Lowest homogeneous component of `g(1 - x, 1 - y)`, with `y^{-b}` read
/// as the power series of `(1 - y)^{-b}`.
pub fn lowest_degree_series(g: &Poly) -> Result<Poly> {
    if g.is_zero() {
        return Ok(Poly::zero());
    }
    for d in 0..=SERIES_DEGREE_CAP {
        let t = substitute_one_minus(g, d)?;
        if !t.is_zero() {
            return Ok(t.lowest_degree_part());
        }
    }
    Err(Error::Budget(format!("no nonzero component up to degree {SERIES_DEGREE_CAP}")))
}

/// `g(1 - x, 1 - y)` truncated above total degree `d`.
fn substitute_one_minus(g: &Poly, d: i64) -> Result<Poly> {
    let trunc = |p: Poly| Poly::from_terms(p.terms().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.clone(), c.clone())));
    let mut out = Poly::zero();
    let mut cache: HashMap<(Var, i32), Poly> = HashMap::new();
    for (m, c) in g.terms() {
        let mut acc = Poly::constant(c.clone());
        for (v, e) in m.iter() {
            let f = cache
                .entry((v, e))
                .or_insert_with(|| {
                    let one_minus = Poly::one() - Poly::var(v);
                    if e >= 0 {
                        trunc(one_minus.pow(e as u32))
                    } else {
                        // (1 - v)^{-b} = Σ_k C(b+k-1, k) v^k
                        let b = (-e) as usize;
                        Poly::from_terms((0..=d as usize).map(|k| {
                            (Monomial::from_pairs([(v, k as i32)]), binomial(b + k - 1, k))
                        }))
                    }
                })
                .clone();
            acc = trunc(&acc * &f);
        }
        out = out + acc;
    }
    Ok(out)
}

/// `x_p -> 1 - x_p`, `y_q -> 1`.
pub fn buch_specialize(g: &Poly) -> Result<Poly> {
    let mut map = BTreeMap::new();
    for v in g.variables() {
        match v {
            Var::X(_) => {
                map.insert(v, Poly::one() - Poly::var(v));
            }
            Var::Y(_) => {
                map.insert(v, Poly::one());
            }
            _ => {}
        }
    }
    g.substitute(&map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchubertMethod {
    Tableau,
    Pipedream,
    DividedDifference,
    Multidegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrothendieckMethod {
    Tableau,
    InteriorFaces,
    KPolynomial,
    Demazure,
}

impl SchubertMethod {
    pub const ALL: [SchubertMethod; 4] =
        [SchubertMethod::Tableau, SchubertMethod::Pipedream, SchubertMethod::DividedDifference, SchubertMethod::Multidegree];
}

impl GrothendieckMethod {
    pub const ALL: [GrothendieckMethod; 4] =
        [GrothendieckMethod::Tableau, GrothendieckMethod::InteriorFaces, GrothendieckMethod::KPolynomial, GrothendieckMethod::Demazure];
}

impl FromStr for SchubertMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tableau" => Ok(SchubertMethod::Tableau),
            "pipedream" => Ok(SchubertMethod::Pipedream),
            "divided_difference" | "divided-difference" => Ok(SchubertMethod::DividedDifference),
            "multidegree" => Ok(SchubertMethod::Multidegree),
            _ => Err(Error::Parse(format!("unknown Schubert method {s:?}"))),
        }
    }
}

impl FromStr for GrothendieckMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tableau" => Ok(GrothendieckMethod::Tableau),
            "interior_faces" | "interior-faces" => Ok(GrothendieckMethod::InteriorFaces),
            "k_polynomial" | "k-polynomial" => Ok(GrothendieckMethod::KPolynomial),
            "demazure" => Ok(GrothendieckMethod::Demazure),
            _ => Err(Error::Parse(format!("unknown Grothendieck method {s:?}"))),
        }
    }
}

/// A sum of products of linear forms `x_a - y_b`, each product listed as
/// its `(a, b)` pairs in increasing order.
pub type Expansion = Vec<Vec<(usize, usize)>>;

fn tableau_factors(t: &SetValuedTableau) -> Vec<(usize, usize)> {
    let mut f: Vec<(usize, usize)> = t
        .cells()
        .into_iter()
        .flat_map(|(c, vals)| {
            vals.iter().map(move |&v| (v, (v as i64 + c.col as i64 - c.row as i64) as usize)).collect::<Vec<_>>()
        })
        .collect();
    f.sort();
    f
}

/// Reading word from the bottom row up, used to order tableau expansions.
fn bottom_up(t: &SetValuedTableau) -> Vec<Vec<usize>> {
    let mut cells = t.cells();
    cells.sort_by(|a, b| b.0.row.cmp(&a.0.row).then(a.0.col.cmp(&b.0.col)));
    cells.into_iter().map(|(_, v)| v.to_vec()).collect()
}

/// The product form of `𝔖_π` along the tableau route (flagged tableaux) or
/// the pipe-dream route (reduced pipe dreams).
pub fn schubert_expansion(perm: &Permutation, method: SchubertMethod) -> Result<Expansion> {
    match method {
        SchubertMethod::Tableau => {
            let mut ts = tableaux::flagged_ssyt(perm)?;
            ts.sort_by_key(|t| std::cmp::Reverse(bottom_up(t)));
            Ok(ts.iter().map(tableau_factors).collect())
        }
        SchubertMethod::Pipedream => Ok(subword::reduced_pipe_dreams(perm)?
            .into_iter()
            .map(|pd| pd.crosses.iter().map(|c| (c.row, c.col)).collect())
            .collect()),
        _ => Err(Error::Precondition("only the tableau and pipe-dream routes have a product form".into())),
    }
}

pub fn expansion_poly(e: &Expansion) -> Poly {
    let mut out = Poly::zero();
    for term in e {
        let fs: Vec<Poly> = term.iter().map(|&(a, b)| Poly::x_minus_y(a, b)).collect();
        out = out + Poly::product(&fs);
    }
    out
}

pub fn expansion_latex(e: &Expansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter()
        .map(|t| if t.is_empty() { "1".to_string() } else { t.iter().map(|(a, b)| format!("(x_{{{a}}}-y_{{{b}}})")).collect() })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn expansion_text(e: &Expansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter()
        .map(|t| if t.is_empty() { "1".to_string() } else { t.iter().map(|(a, b)| format!("(x{a}-y{b})")).collect() })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn schubert_ideal_initial(perm: &Permutation, budget: &Budget) -> Result<Ideal> {
    let n = perm.trimmed().len().max(1);
    let ideal = detideal::schubert_ideal(perm, Generators::Essential);
    groebner::initial_ideal(&ideal, &detideal::diagonal_order(n), budget)
}

/// Recursion from the longest element of `S_n`: `f_{π} = op_i f_{π s_i}`
/// for an ascent `i` of `π`.
fn descend_from_top(perm: &Permutation, top: Poly, op: fn(usize, &Poly) -> Poly) -> Poly {
    let n = perm.trimmed().len().max(1);
    let mut memo: HashMap<Vec<usize>, Poly> = HashMap::new();
    fn go(w: Vec<usize>, top: &Poly, op: fn(usize, &Poly) -> Poly, memo: &mut HashMap<Vec<usize>, Poly>) -> Poly {
        if let Some(p) = memo.get(&w) {
            return p.clone();
        }
        let out = match (0..w.len() - 1).find(|&i| w[i] < w[i + 1]) {
            None => top.clone(),
            Some(i) => {
                let mut up = w.clone();
                up.swap(i, i + 1);
                op(i + 1, &go(up, top, op, memo))
            }
        };
        memo.insert(w, out.clone());
        out
    }
    let mut w = perm.trimmed().to_vec();
    if w.is_empty() {
        w.push(1);
    }
    debug_assert_eq!(w.len(), n);
    go(w, &top, op, &mut memo)
}

fn staircase_product(n: usize, f: impl Fn(usize, usize) -> Poly) -> Poly {
    let fs: Vec<Poly> = (1..n).flat_map(|i| (1..=n - i).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
    Poly::product(&fs)
}

/// Double Schubert polynomial along the chosen route.
pub fn schubert(perm: &Permutation, method: SchubertMethod) -> Result<Poly> {
    schubert_with(perm, method, &Budget::default())
}

pub fn schubert_with(perm: &Permutation, method: SchubertMethod, budget: &Budget) -> Result<Poly> {
    match method {
        SchubertMethod::Tableau | SchubertMethod::Pipedream => Ok(expansion_poly(&schubert_expansion(perm, method)?)),
        SchubertMethod::DividedDifference => {
            let n = perm.trimmed().len().max(1);
            Ok(descend_from_top(perm, staircase_product(n, Poly::x_minus_y), divided_difference))
        }
        SchubertMethod::Multidegree => multidegree(&schubert_ideal_initial(perm, budget)?, &GradedWeights::schubert()),
    }
}

fn one_minus_x_over_y_product(cells: impl IntoIterator<Item = (usize, usize)>) -> Poly {
    let fs: Vec<Poly> = cells.into_iter().map(|(p, q)| Poly::one_minus_x_over_y(p, q)).collect();
    Poly::product(&fs)
}

/// Double Grothendieck polynomial along the chosen route, in Laurent form.
pub fn grothendieck(perm: &Permutation, method: GrothendieckMethod) -> Result<Poly> {
    grothendieck_with(perm, method, &Budget::default())
}

pub fn grothendieck_with(perm: &Permutation, method: GrothendieckMethod, budget: &Budget) -> Result<Poly> {
    match method {
        GrothendieckMethod::Tableau => {
            let lam = perm.shape_lambda().size();
            let mut out = Poly::zero();
            for t in tableaux::flagged_svt(perm)? {
                let term = one_minus_x_over_y_product(tableau_factors(&t));
                out = if (t.size() - lam).is_multiple_of(2) { out + term } else { out - term };
            }
            Ok(out)
        }
        GrothendieckMethod::InteriorFaces => {
            let l = perm.length();
            let mut out = Poly::zero();
            for pd in subword::gamma(perm)?.interior_faces()? {
                let term = one_minus_x_over_y_product(pd.crosses.iter().map(|c| (c.row, c.col)));
                out = if (pd.crosses.len() - l).is_multiple_of(2) { out + term } else { out - term };
            }
            Ok(out)
        }
        GrothendieckMethod::KPolynomial => k_polynomial(&schubert_ideal_initial(perm, budget)?, &GradedWeights::schubert()),
        GrothendieckMethod::Demazure => {
            let n = perm.trimmed().len().max(1);
            Ok(descend_from_top(perm, staircase_product(n, Poly::one_minus_x_over_y), demazure_operator))
        }
    }
}

/// Every route evaluated and compared. Returns the common value.
pub fn schubert_agreement(perm: &Permutation, methods: &[SchubertMethod]) -> Result<Poly> {
    let mut first: Option<(SchubertMethod, Poly)> = None;
    for &m in methods {
        let p = schubert(perm, m)?;
        if let Some((m0, p0)) = &first {
            invariant(*p0 == p, || format!("𝔖_{perm}: {m0:?} gives {p0}, {m:?} gives {p}"))?;
        } else {
            first = Some((m, p));
        }
    }
    first.map(|(_, p)| p).ok_or_else(|| Error::Precondition("no methods given".into()))
}

pub fn grothendieck_agreement(perm: &Permutation, methods: &[GrothendieckMethod]) -> Result<Poly> {
    let mut first: Option<(GrothendieckMethod, Poly)> = None;
    for &m in methods {
        let p = grothendieck(perm, m)?;
        if let Some((m0, p0)) = &first {
            invariant(*p0 == p, || format!("𝒢_{perm}: {m0:?} gives {p0}, {m:?} gives {p}"))?;
        } else {
            first = Some((m, p));
        }
    }
    first.map(|(_, p)| p).ok_or_else(|| Error::Precondition("no methods given".into()))
}

/// Signed Buch sum `Σ_{SVT} (-1)^{|τ|-|λ|} Π x_v` over tableaux with entries
/// at most `k`.
pub fn buch_sum(shape: &crate::perm::Partition, k: usize) -> Result<Poly> {
    let mut out = Poly::zero();
    for t in tableaux::enumerate_svt(shape, k, None)? {
        let vars: Vec<Poly> = tableau_factors(&t).into_iter().map(|(v, _)| Poly::var(Var::x(v))).collect();
        let term = Poly::product(&vars);
        out = if (t.size() - shape.size()).is_multiple_of(2) { out + term } else { out - term };
    }
    Ok(out)
}

/// Whether every coefficient is non-negative.
pub fn is_positive(p: &Poly) -> bool {
    p.terms().all(|(_, c)| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn mono_ideal(gens: &[&str], ring: Vec<Var>) -> Ideal {
        let monos: Vec<Monomial> = gens.iter().map(|g| p(g).terms().next().unwrap().0.clone()).collect();
        Ideal::monomial(monos, ring)
    }

    #[test]
    fn hilbert_examples() {
        let zero = Ideal::monomial(Vec::<Monomial>::new(), [Var::x(1), Var::x(2), Var::x(3)]);
        let h = hilbert_series(&zero, 3).unwrap();
        assert_eq!(h.canonical(), RationalSeries { numerator: vec![1.into()], denominator_power: 3 });
        let xy = mono_ideal(&["x1*x2"], vec![Var::x(1), Var::x(2)]);
        let h = hilbert_series(&xy, 2).unwrap();
        assert_eq!(h.numerator, vec![1.into(), 0.into(), (-1).into()]);
        assert_eq!(h.canonical(), RationalSeries { numerator: vec![1.into(), 1.into()], denominator_power: 1 });
        let counts = standard_monomial_counts(&xy, &[Var::x(1), Var::x(2)], 6).unwrap();
        for (k, c) in counts.iter().enumerate() {
            assert_eq!(h.coefficient(k), BigInt::from(*c));
        }
    }

    #[test]
    fn hilbert_of_example_initial_ideal() {
        let ring = detideal::z_ring(5);
        let i = mono_ideal(&["z1_1", "z1_2", "z1_3", "z2_1*z3_2"], ring);
        let h = hilbert_series(&i, 25).unwrap();
        // (1-s)^3 (1-s^2)
        let expect = lift(&[1.into(), 0.into(), (-1).into()], 3);
        assert_eq!(h.numerator, expect);
    }

    #[test]
    fn k_polynomial_and_multidegree_examples() {
        let w = GradedWeights::schubert();
        let zero = Ideal::monomial(Vec::<Monomial>::new(), detideal::z_ring(2));
        assert_eq!(k_polynomial(&zero, &w).unwrap(), Poly::one());
        assert_eq!(multidegree(&zero, &w).unwrap(), Poly::one());
        let z11 = mono_ideal(&["z1_1"], detideal::z_ring(2));
        assert_eq!(k_polynomial(&z11, &w).unwrap(), p("1 - x1*y1^-1"));
        assert_eq!(multidegree(&z11, &w).unwrap(), p("x1 - y1"));
        let i = mono_ideal(&["z1_1", "z1_2", "z1_3", "z2_1*z3_2"], detideal::z_ring(5));
        let expect = Poly::x_minus_y(1, 1)
            * Poly::x_minus_y(1, 2)
            * Poly::x_minus_y(1, 3)
            * (Poly::x_minus_y(2, 1) + Poly::x_minus_y(3, 2));
        assert_eq!(multidegree(&i, &w).unwrap(), expect);
        let k = k_polynomial(&i, &w).unwrap();
        assert_eq!(lowest_degree_series(&k).unwrap(), expect);
        assert_eq!(schubert(&perm(&[4, 1, 3, 2, 5]), SchubertMethod::Tableau).unwrap(), expect);
    }

    #[test]
    fn buch_specialization() {
        assert_eq!(buch_specialize(&p("1 - x1*y1^-1")).unwrap(), p("x1"));
        assert_eq!(buch_specialize(&Poly::one()).unwrap(), Poly::one());
        let lam = crate::perm::Partition::new(vec![1]);
        assert_eq!(buch_sum(&lam, 2).unwrap(), p("x1 + x2 - x1*x2"));
        let g = grothendieck(&perm(&[1, 3, 2]), GrothendieckMethod::Demazure).unwrap();
        assert_eq!(buch_specialize(&g).unwrap(), p("x1 + x2 - x1*x2"));
    }

    #[test]
    fn example_1432_expansions() {
        let w = perm(&[1, 4, 3, 2]);
        let tab = schubert_expansion(&w, SchubertMethod::Tableau).unwrap();
        assert_eq!(
            expansion_latex(&tab),
            "(x_{2}-y_{2})(x_{2}-y_{3})(x_{3}-y_{2}) + (x_{1}-y_{1})(x_{2}-y_{3})(x_{3}-y_{2}) + \
             (x_{1}-y_{1})(x_{1}-y_{2})(x_{3}-y_{2}) + (x_{1}-y_{1})(x_{2}-y_{1})(x_{2}-y_{3}) + \
             (x_{1}-y_{1})(x_{1}-y_{2})(x_{2}-y_{1})"
        );
        let pipes: BTreeSet<Vec<(usize, usize)>> =
            schubert_expansion(&w, SchubertMethod::Pipedream).unwrap().into_iter().collect();
        let printed: BTreeSet<Vec<(usize, usize)>> = [
            vec![(1, 3), (2, 1), (3, 1)],
            vec![(1, 2), (1, 3), (3, 1)],
            vec![(2, 1), (2, 2), (3, 1)],
            vec![(1, 2), (2, 1), (2, 2)],
            vec![(1, 2), (1, 3), (2, 2)],
        ]
        .into_iter()
        .collect();
        assert_eq!(pipes, printed);
        assert_eq!(expansion_poly(&tab), schubert(&w, SchubertMethod::Pipedream).unwrap());
    }

    #[test]
    fn identity_is_one() {
        let e = Permutation::identity(3);
        for m in SchubertMethod::ALL {
            assert_eq!(schubert(&e, m).unwrap(), Poly::one(), "{m:?}");
        }
        for m in GrothendieckMethod::ALL {
            assert_eq!(grothendieck(&e, m).unwrap(), Poly::one(), "{m:?}");
        }
    }

    #[test]
    fn grothendieck_41325_has_three_tableau_terms() {
        let w = perm(&[4, 1, 3, 2, 5]);
        let ts = tableaux::flagged_svt(&w).unwrap();
        assert_eq!(ts.len(), 3);
        assert_eq!(ts.iter().filter(|t| t.size() == 5).count(), 1);
        let g = grothendieck_agreement(&w, &GrothendieckMethod::ALL).unwrap();
        assert_eq!(lowest_degree_series(&g).unwrap(), schubert(&w, SchubertMethod::DividedDifference).unwrap());
    }
}
