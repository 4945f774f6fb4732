//! The invariant battery over all of `S_n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::detideal;
use crate::error::Error;
use crate::groebner::Budget;
use crate::gvd;
use crate::invariants::{self, GrothendieckMethod, SchubertMethod};
use crate::perm::Permutation;
use crate::poison;
use crate::Result;

pub const MAX_VERIFY_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermReport {
    pub perm: Vec<usize>,
    pub vexillary: bool,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub permutations: usize,
    pub vexillary: usize,
    pub non_vexillary: usize,
    pub verified: usize,
    pub refuted: usize,
    pub skipped: usize,
    pub results: Vec<PermReport>,
}

impl Summary {
    pub fn failures(&self) -> impl Iterator<Item = (&PermReport, &CheckOutcome)> {
        self.results.iter().flat_map(|r| r.checks.iter().filter(|c| c.status != Status::Verified).map(move |c| (r, c)))
    }
}

fn outcome(name: &'static str, r: Result<bool>) -> CheckOutcome {
    match r {
        Ok(true) => CheckOutcome { name, status: Status::Verified, detail: None },
        Ok(false) => CheckOutcome { name, status: Status::Refuted, detail: None },
        Err(e @ (Error::Budget(_) | Error::FaceCap { .. })) => {
            CheckOutcome { name, status: Status::Skipped, detail: Some(e.to_string()) }
        }
        Err(e) => CheckOutcome { name, status: Status::Refuted, detail: Some(e.to_string()) },
    }
}

fn battery(p: &Permutation, budget: &Budget) -> PermReport {
    let vex = p.is_vexillary();
    let mut checks = vec![
        outcome("rank_reconstruction", p.rank_array().reconstruct().map(|q| q == *p)),
        outcome(
            "diagonal_groebner_basis",
            detideal::verify_diagonal_gb_with(p, None, budget).map(|v| v.consistent()),
        ),
        outcome(
            "minimal_poisoning",
            poison::is_minimal_poisoning(&poison::cross_diagram(p), p).map(|m| m.minimal == vex),
        ),
        outcome("diagonal_divisibility", Ok(poison::diagonal_divisibility(p))),
    ];
    let schubert_methods: Vec<SchubertMethod> = if vex {
        SchubertMethod::ALL.to_vec()
    } else {
        vec![SchubertMethod::Pipedream, SchubertMethod::DividedDifference]
    };
    checks.push(outcome("schubert_agreement", invariants::schubert_agreement(p, &schubert_methods).map(|_| true)));
    if vex {
        checks.push(outcome(
            "grothendieck_agreement",
            invariants::grothendieck_agreement(p, &GrothendieckMethod::ALL).and_then(|g| {
                let s = invariants::schubert(p, SchubertMethod::Tableau)?;
                Ok(invariants::lowest_degree_series(&g)? == s)
            }),
        ));
        checks.push(outcome(
            "vertex_decomposition",
            gvd::iterate_gvd(p, budget).map(|t| t.steps.iter().all(|s| s.is_gvd && s.hilbert_equal)),
        ));
    } else {
        checks.push(outcome("sharpness_certificate", poison::sharpness_certificate(p).map(|c| c.codim < c.length)));
    }
    PermReport { perm: p.embed(p.n()).one_line().to_vec(), vexillary: vex, checks }
}

/// Runs the battery over `S_n` in parallel; results are in permutation order.
pub fn verify_all(n: usize, budget: &Budget) -> Result<Summary> {
    if n == 0 || n > MAX_VERIFY_N {
        return Err(Error::Precondition(format!("n must lie in 1..={MAX_VERIFY_N}")));
    }
    let perms = Permutation::all(n);
    let results: Vec<PermReport> = perms.par_iter().map(|p| battery(p, budget)).collect();
    let count = |s: Status| results.iter().flat_map(|r| &r.checks).filter(|c| c.status == s).count();
    let vexillary = results.iter().filter(|r| r.vexillary).count();
    Ok(Summary {
        n,
        permutations: results.len(),
        vexillary,
        non_vexillary: results.len() - vexillary,
        verified: count(Status::Verified),
        refuted: count(Status::Refuted),
        skipped: count(Status::Skipped),
        results,
    })
}
