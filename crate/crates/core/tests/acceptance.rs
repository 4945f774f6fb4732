//! Acceptance run: one PASS/FAIL line per criterion, with pinned time limits.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use vexgeom::detideal::{self, Generators};
use vexgeom::groebner::{self, Budget, Ideal};
use vexgeom::invariants::{self, GrothendieckMethod, SchubertMethod};
use vexgeom::subword;
use vexgeom::tableaux;
use vexgeom::{gvd, poison};
use vexgeom::{Cell, Monomial, Partition, Permutation, Poly, TermOrder, Var};

type Check = Result<(), String>;
type Criterion = (usize, &'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: vexgeom::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

fn ideal(gens: &[&str]) -> Ideal {
    Ideal::from_gens(gens.iter().map(|s| poly(s)).collect()).unwrap()
}

fn z(r: usize, c: usize) -> Var {
    Var::z(r, c)
}

fn cells(v: &[(usize, usize)]) -> BTreeSet<Cell> {
    v.iter().map(|&c| c.into()).collect()
}

fn vexillary(n: usize) -> Vec<Permutation> {
    Permutation::all(n).into_iter().filter(|p| p.is_vexillary()).collect()
}

fn minimal(i: &Ideal) -> Result<Vec<Monomial>, String> {
    Ok(groebner::minimalize(ok(i.monomials())?))
}

fn worked_examples() -> Check {
    let b = Budget::default();
    let inner = TermOrder::GradedLex(vec![Var::x(1), Var::y(1)]);

    let s = ok(gvd::split_cp(&ideal(&["x1*y1 - 1"]), Var::y(1), inner.clone(), &b))?;
    ensure!(ok(groebner::ideal_equal(&s.i_prime, &ideal(&["x1*y1"]), &b))?, "hyperbola: I' is {}", s.i_prime);
    ensure!(ok(groebner::ideal_equal(&s.c, &ideal(&["x1"]), &b))?, "hyperbola: C is {}", s.c);
    ensure!(ok(groebner::ideal_equal(&s.p, &ideal(&["y1"]), &b))?, "hyperbola: P is {}", s.p);
    ensure!(s.is_gvd, "hyperbola is not a decomposition");

    let i = ok(groebner::intersect(&ideal(&["x1*y1 - 1"]), &ideal(&["x1", "y1"]), &b))?;
    let ord = TermOrder::GradedLex(vec![Var::y(1), Var::x(1)]);
    let gb = ok(groebner::buchberger(&i, &ord, &b))?;
    let got: BTreeSet<String> = gb.elements.iter().map(|g| g.primitive(&ord).to_string()).collect();
    let want: BTreeSet<String> = ["y1^2*x1 - y1", "y1*x1^2 - x1"].iter().map(|s| poly(s).primitive(&ord).to_string()).collect();
    ensure!(got == want, "hyperbola with origin: basis {:?}", got);
    let s = ok(gvd::split_cp(&i, Var::y(1), inner, &b))?;
    let meet = ok(groebner::intersect(&s.c, &s.p, &b))?;
    ensure!(!ok(groebner::ideal_equal(&s.i_prime, &meet, &b))? && !s.is_gvd, "hyperbola with origin: I' equals C ∩ P");
    let init = ok(s.initial_i_prime())?;
    ensure!(!ok(groebner::ideal_equal(&ok(groebner::monomial_radical(&init))?, &init, &b))?, "hyperbola with origin: I' is radical");

    let w = perm(&[4, 1, 3, 2, 5]);
    let a = detideal::schubert_ideal(&w, Generators::Essential);
    let printed = ideal(&["z1_1", "z1_2", "z1_3", "z1_1*z2_2 - z2_1*z1_2", "z1_1*z3_2 - z3_1*z1_2", "z2_1*z3_2 - z3_1*z2_2"]);
    ensure!(ok(groebner::ideal_equal(&a, &printed, &b))?, "41325: generators {a}");
    let diag = detideal::diagonal_order(5);
    let lts: BTreeSet<Monomial> = a.generators().iter().map(|g| g.leading_term(&diag).map(|t| t.0)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let want: BTreeSet<Monomial> = ["z1_1", "z1_2", "z1_3", "z1_1*z2_2", "z1_1*z3_2", "z2_1*z3_2"]
        .iter()
        .map(|s| poly(s).terms().next().unwrap().0.clone())
        .collect();
    ensure!(lts == want, "41325: leading terms {:?}", lts);
    ensure!(ok(groebner::is_groebner_basis(a.generators(), &diag, &b))?.is_basis(), "41325: not a diagonal Groebner basis");

    let big = perm(&[8, 7, 1, 6, 2, 9, 5, 3, 4]);
    let d = ok(big.descend_pc(Cell::new(7, 4)))?;
    ensure!(d.perm_p == perm(&[8, 7, 1, 6, 2, 9, 4, 3, 5]), "π_P is {}", d.perm_p);
    ensure!(d.perm_c == perm(&[8, 7, 1, 6, 4, 9, 2, 3, 5]), "π_C is {}", d.perm_c);

    ensure!(w.shape_mu() == Partition::new(vec![3, 2, 2]), "μ(41325) is {}", w.shape_mu());
    let g = ok(w.grassmannianize())?;
    ensure!(g.grassmannian().trimmed() == [1, 3, 6, 2, 4, 5], "Grassmannian lift is {}", g.grassmannian());
    ensure!(ok(subword::word_of_mu(&w))?.letters == [2, 1, 3, 2, 5, 4, 3], "Q word differs");

    let init = ok(groebner::initial_ideal(&a, &diag, &b))?;
    let printed = ideal(&["z1_1", "z1_2", "z1_3", "z2_1*z3_2"]);
    ensure!(ok(groebner::ideal_equal(&init, &printed, &b))?, "41325: initial ideal {init}");
    let meet = ok(groebner::intersect(&ideal(&["z1_1", "z1_2", "z1_3", "z2_1"]), &ideal(&["z1_1", "z1_2", "z1_3", "z3_2"]), &b))?;
    ensure!(ok(groebner::ideal_equal(&meet, &printed, &b))?, "41325: component intersection {meet}");
    let facets: BTreeSet<BTreeSet<Cell>> = ok(ok(subword::gamma(&w))?.facets())?.into_iter().map(|f| f.crosses).collect();
    let want: BTreeSet<BTreeSet<Cell>> =
        [cells(&[(1, 1), (1, 2), (1, 3), (3, 2)]), cells(&[(1, 1), (1, 2), (1, 3), (2, 1)])].into_iter().collect();
    ensure!(facets == want, "41325: facets {:?}", facets);

    let v = perm(&[1, 4, 3, 2]);
    let tab = ok(invariants::schubert_expansion(&v, SchubertMethod::Tableau))?;
    let latex = invariants::expansion_latex(&tab);
    ensure!(
        latex
            == "(x_{2}-y_{2})(x_{2}-y_{3})(x_{3}-y_{2}) + (x_{1}-y_{1})(x_{2}-y_{3})(x_{3}-y_{2}) + \
                (x_{1}-y_{1})(x_{1}-y_{2})(x_{3}-y_{2}) + (x_{1}-y_{1})(x_{2}-y_{1})(x_{2}-y_{3}) + \
                (x_{1}-y_{1})(x_{1}-y_{2})(x_{2}-y_{1})",
        "1432 tableau display: {latex}"
    );
    let pipes: BTreeSet<Vec<(usize, usize)>> = ok(invariants::schubert_expansion(&v, SchubertMethod::Pipedream))?.into_iter().collect();
    let printed: BTreeSet<Vec<(usize, usize)>> = [
        vec![(1, 3), (2, 1), (3, 1)],
        vec![(1, 2), (1, 3), (3, 1)],
        vec![(2, 1), (2, 2), (3, 1)],
        vec![(1, 2), (2, 1), (2, 2)],
        vec![(1, 2), (1, 3), (2, 2)],
    ]
    .into_iter()
    .collect();
    ensure!(pipes == printed, "1432 pipe dream display: {:?}", pipes);
    ensure!(
        invariants::expansion_poly(&tab) == invariants::expansion_poly(&pipes.into_iter().collect()),
        "1432 displays differ as polynomials"
    );

    ensure!(ok(v.flag())?.0 == [2, 3], "flag of 1432");
    ensure!(ok(big.flag())?.0 == [1, 2, 4, 6, 7], "flag of the S_9 example");
    ensure!(ok(d.perm_c.flag())?.0 == [1, 2, 4, 6, 6], "flag of its π_C");
    Ok(())
}

fn diagonal_gb_iff_vexillary() -> Check {
    let b = Budget::default();
    for p in Permutation::all(4) {
        let a = detideal::schubert_ideal(&p, Generators::Essential);
        let orders = [detideal::diagonal_order(4)].into_iter().chain((0..4).map(|s| detideal::random_diagonal_order(4, s)));
        for ord in orders {
            let gb = a.is_zero() || ok(groebner::is_groebner_basis(a.generators(), &ord, &b))?.is_basis();
            ensure!(gb == p.is_vexillary(), "{p}: basis {gb} under {:?}", ord);
        }
        let v = ok(detideal::verify_diagonal_gb(&p))?;
        ensure!(v.diagonal_gb == p.is_vexillary(), "{p}: verdict disagrees");
        if !p.is_vexillary() {
            let wit = v.witness_spair.as_ref().ok_or(format!("{p}: no witness"))?;
            ensure!(!wit.remainder.is_zero(), "{p}: witness remainder is zero");
            let ess = detideal::schubert_ideal(&p, Generators::Essential);
            let nf = ok(groebner::normal_form(&wit.remainder, ess.generators(), &detideal::diagonal_order(4)))?;
            ensure!(!nf.is_zero(), "{p}: witness reduces to zero");
            let full = detideal::schubert_ideal(&p, Generators::Full);
            ensure!(ok(groebner::ideal_equal(&full, &full.add_generator(wit.remainder.clone()).map_err(|e| e.to_string())?, &b))?, "{p}: witness leaves the ideal");
            let cert = ok(poison::sharpness_certificate(&p))?;
            ensure!(cert.poison_crosses.len() < p.length(), "{p}: certificate has {} crosses", cert.poison_crosses.len());
            let vars: Vec<Monomial> = cert.poison_crosses.iter().map(|c| Monomial::var(z(c[0], c[1]))).collect();
            for m in detideal::minor_specs(&p, Generators::Essential) {
                ensure!(groebner::monomial_ideal::monomial_contains(&vars, &m.diagonal_term()), "{p}: certificate misses {}", m.diagonal_term());
            }
        }
    }
    Ok(())
}

/// Sets every variable outside `keep` to one.
fn specialize(monos: &[Monomial], keep: &BTreeSet<Cell>) -> Vec<Monomial> {
    let out = monos.iter().map(|m| Monomial::from_pairs(m.iter().filter(|(v, _)| matches!(v, Var::Z(r, c) if keep.contains(&Cell::new(*r as usize, *c as usize)))))).collect();
    groebner::minimalize(out)
}

fn lift_specialization(p: &Permutation) -> Check {
    let lift = ok(p.grassmannianize())?;
    let big = ok(ok(subword::gamma(lift.grassmannian()))?.with_cap(64).stanley_reisner())?;
    let small = minimal(&ok(ok(subword::gamma(p))?.with_cap(64).stanley_reisner())?)?;
    let keep: BTreeSet<Cell> = p.shape_mu().cells().into_iter().collect();
    ensure!(specialize(&minimal(&big)?, &keep) == small, "{p}: specialization of the lift differs");
    Ok(())
}

fn initial_ideal_is_stanley_reisner() -> Check {
    let b = Budget::default();
    let big = perm(&[8, 7, 1, 6, 2, 9, 5, 3, 4]);
    let mut list = vexillary(4);
    list.extend([perm(&[4, 1, 3, 2, 5]), big.clone()]);
    for p in &list {
        let sr = minimal(&ok(ok(subword::gamma(p))?.with_cap(64).stanley_reisner())?)?;
        let a = detideal::schubert_ideal(p, Generators::Essential);
        match groebner::initial_ideal(&a, &detideal::diagonal_order(p.n()), &b) {
            Ok(init) => ensure!(minimal(&init)? == sr, "{p}: initial ideal differs from the Stanley–Reisner ideal"),
            Err(vexgeom::Error::Budget(_)) if *p == big => {
                println!("    {p}: Groebner budget exhausted, checking the specialization only");
                lift_specialization(p)?;
            }
            Err(e) => return Err(format!("{p}: {e}")),
        }
    }
    lift_specialization(&perm(&[4, 1, 3, 2, 5]))
}

fn polynomial_agreement() -> Check {
    let mut list = vexillary(4);
    list.push(perm(&[4, 1, 3, 2, 5]));
    for p in &list {
        let s = ok(invariants::schubert_agreement(p, &SchubertMethod::ALL))?;
        let g = ok(invariants::grothendieck_agreement(p, &GrothendieckMethod::ALL))?;
        ensure!(ok(invariants::lowest_degree_series(&g))? == s, "{p}: lowest degree of the Grothendieck polynomial differs");
    }
    let one_box = ok(Permutation::grassmannian(&Partition::new(vec![1]), 2))?;
    let g = ok(invariants::grothendieck(&one_box, GrothendieckMethod::Demazure))?;
    ensure!(ok(invariants::buch_specialize(&g))? == poly("x1 + x2 - x1*x2"), "one-box specialization");
    Ok(())
}

fn ssyt_count_by_hooks(shape: &Partition, k: usize) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for c in shape.cells() {
        let arm = shape.part(c.row) - c.col;
        let leg = (c.row + 1..=shape.len()).filter(|&r| shape.part(r) >= c.col).count();
        num *= (k + c.col - c.row) as u128;
        den *= (arm + leg + 1) as u128;
    }
    num / den
}

fn facet_and_face_counts() -> Check {
    let mut checked = 0;
    for big_n in 1..=6 {
        for p in Permutation::all(big_n) {
            let k = match p.descents().iter().next_back() {
                None => continue,
                Some(&k) if p.is_grassmannian() && k <= 3 => k,
                _ => continue,
            };
            let lambda = p.shape_lambda();
            let n = k + lambda.part(1);
            let gamma = ok(subword::gamma(&p))?.with_cap(64);
            let facets: BTreeSet<BTreeSet<Cell>> = ok(gamma.facets())?.into_iter().map(|f| f.crosses).collect();
            let interior: BTreeSet<BTreeSet<Cell>> = ok(gamma.interior_faces())?.into_iter().map(|f| f.crosses).collect();
            let ssyt = ok(tableaux::enumerate_ssyt(&lambda, k, None))?;
            let svt = ok(tableaux::enumerate_svt(&lambda, k, None))?;
            ensure!(facets.len() == ssyt.len(), "{p}: {} facets, {} SSYT", facets.len(), ssyt.len());
            ensure!(ssyt.len() as u128 == ssyt_count_by_hooks(&lambda, k), "{p}: SSYT count against hook content");
            ensure!(interior.len() == svt.len(), "{p}: {} interior faces, {} SVT", interior.len(), svt.len());
            let mut images = BTreeSet::new();
            for t in &svt {
                let pd = ok(tableaux::omega(t, k, n))?;
                ensure!(ok(tableaux::omega_inverse(&pd, &lambda))? == *t, "{p}: Ω round trip fails");
                ensure!(interior.contains(&pd.crosses), "{p}: Ω image is not an interior face");
                ensure!(t.is_ordinary() == facets.contains(&pd.crosses), "{p}: Ω misplaces facets");
                images.insert(pd.crosses);
            }
            ensure!(images == interior, "{p}: Ω is not onto the interior faces");
            checked += 1;
        }
    }
    ensure!(checked >= 40, "only {checked} Grassmannian permutations checked");
    println!("    {checked} Grassmannian permutations checked");
    Ok(())
}

fn vertex_decomposition_steps() -> Check {
    let b = Budget::default();
    for p in vexillary(4) {
        for cell in p.accessible_boxes() {
            let s = ok(gvd::gvd_step_schubert(&p, cell, &b))?;
            let y = z(cell.row, cell.col);
            let ic = detideal::schubert_ideal(&s.perm_c, Generators::Essential);
            let ip = ok(detideal::schubert_ideal(&s.perm_p, Generators::Essential).add_generator(Poly::var(y)))?;
            ensure!(ok(groebner::ideal_equal(&s.split.c, &ic, &b))?, "{p} at {cell}: C");
            ensure!(ok(groebner::ideal_equal(&s.split.p, &ip, &b))?, "{p} at {cell}: P");
            let sat = ok(groebner::saturate(&s.split.i_prime, y, &b))?;
            ensure!(ok(groebner::ideal_equal(&sat, &s.split.c, &b))?, "{p} at {cell}: saturation");
            let meet = ok(groebner::intersect(&s.split.c, &s.split.p, &b))?;
            ensure!(ok(groebner::ideal_equal(&s.split.i_prime, &meet, &b))?, "{p} at {cell}: I' is not C ∩ P");
            ensure!(s.hilbert.equal, "{p} at {cell}: Hilbert series differ");
            let vars: Vec<Var> = s.split.i_prime.ring().iter().copied().collect();
            let count = |i: Ideal| ok(invariants::standard_monomial_counts(&i, &vars, 4));
            let (hi, hp, hc) = (count(ok(s.split.initial_i_prime())?)?, count(ok(s.split.initial_p())?)?, count(ok(s.split.initial_c())?)?);
            for d in 0..=4 {
                let rhs = hp[d] + if d > 0 { hc[d - 1] } else { 0 };
                ensure!(hi[d] == rhs, "{p} at {cell}: degree {d} counts {} vs {rhs}", hi[d]);
            }
        }
    }
    Ok(())
}

fn shellings() -> Check {
    for p in vexillary(5) {
        if ok(subword::word_of_mu(&p))?.len() > 24 {
            continue;
        }
        let sh = ok(subword::vertex_decompose(&p))?;
        ensure!(subword::is_shelling(&sh), "{p}: not a shelling");
        let facets: BTreeSet<BTreeSet<Cell>> = ok(ok(subword::gamma(&p))?.facets())?.into_iter().map(|f| f.crosses).collect();
        ensure!(sh.len() == facets.len() && sh.iter().cloned().collect::<BTreeSet<_>>() == facets, "{p}: shelling misses facets");
    }
    Ok(())
}

fn buch_formula() -> Check {
    for lambda in Partition::all_in_rectangle(3, 3) {
        let p = ok(Permutation::grassmannian(&lambda, 3))?;
        let sum = ok(invariants::buch_sum(&lambda, 3))?;
        for m in [GrothendieckMethod::Demazure, GrothendieckMethod::Tableau] {
            let g = ok(invariants::grothendieck(&p, m))?;
            ensure!(ok(invariants::buch_specialize(&g))? == sum, "{lambda} via {:?}", m);
        }
    }
    Ok(())
}

fn property_suites() -> Check {
    let mut r = common::runner(128);
    common::divided_difference_relations(&mut r)?;
    common::rank_reconstruction(&mut r)?;
    common::containment_by_search(&mut r)?;
    common::leading_terms_multiply(&mut r)?;
    common::k_polynomial_routes(&mut r)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "worked examples", 10, worked_examples),
        (2, "diagonal Groebner basis iff vexillary on S_4", 60, diagonal_gb_iff_vexillary),
        (3, "initial ideal equals Stanley–Reisner ideal", 600, initial_ideal_is_stanley_reisner),
        (4, "four-way polynomial agreement", 300, polynomial_agreement),
        (5, "facet and interior-face counts through Ω", 60, facet_and_face_counts),
        (6, "vertex decomposition at every Schubert step", 600, vertex_decomposition_steps),
        (7, "shellings of vexillary S_5", 600, shellings),
        (8, "Buch specialization for shapes in 3x3", 60, buch_formula),
        (9, "property suites", 600, property_suites),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(()) if elapsed <= Duration::from_secs(limit) => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit}s limit)"),
            Err(e) => format!("FAIL ({e})"),
        };
        println!("criterion {id} [{name}]: {verdict} in {:.2}s, limit {limit}s", elapsed.as_secs_f64());
        if !verdict.starts_with("PASS") {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
