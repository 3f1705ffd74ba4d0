//! Consistency checks between verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{classify, ClassId, Status, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::tensor::{IndexSet, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

struct Rule {
    name: &'static str,
    premises: &'static [ClassId],
    conclusion: ClassId,
    even_only: bool,
}

const fn rule(name: &'static str, premises: &'static [ClassId], conclusion: ClassId) -> Rule {
    Rule { name, premises, conclusion, even_only: false }
}

use ClassId::*;

const RULES: &[Rule] = &[
    rule("strictly semi-positive implies ER", &[StrictlySemiPositive], ER),
    rule("strictly semi-positive implies semi-positive", &[StrictlySemiPositive], SemiPositive),
    rule("strictly semi-positive implies R", &[StrictlySemiPositive], R),
    rule("ER implies R0", &[ER], R0),
    rule("R implies R0", &[R], R0),
    rule("wP implies ER", &[WP], ER),
    rule("semi-positive R0 is ER", &[SemiPositive, R0], ER),
    rule("semi-positive ER is R", &[SemiPositive, ER], R),
    rule("semi-positive R0 is R", &[SemiPositive, R0], R),
    rule("semi-positive R is ER", &[SemiPositive, R], ER),
    rule("P0 R0 is ER", &[P0, R0], ER),
    rule("P0 ER is R", &[P0, ER], R),
    rule("P0 R0 is R", &[P0, R0], R),
    rule("P0 R is ER", &[P0, R], ER),
    rule("P0 implies semi-positive", &[P0], SemiPositive),
    rule("P implies P0", &[P], P0),
    rule("P implies strictly semi-positive", &[P], StrictlySemiPositive),
    rule("positive definite implies P", &[PositiveDefinite], P),
    rule("positive definite implies strictly copositive", &[PositiveDefinite], StrictlyCopositive),
    rule("strictly copositive implies strictly semi-positive", &[StrictlyCopositive], StrictlySemiPositive),
    rule("ER implies Q", &[ER], Q),
    rule("R implies Q", &[R], Q),
    Rule { name: "wP equals P for even order", premises: &[WP], conclusion: P, even_only: true },
    Rule { name: "P equals wP for even order", premises: &[P], conclusion: WP, even_only: true },
];

/// Implications among definite verdicts that the given table contradicts.
/// Classes missing from the table and Unknown verdicts are never used.
pub fn implication_audit(a: &Tensor, verdicts: &BTreeMap<ClassId, Verdict>) -> Vec<Violation> {
    let status = |c: ClassId| verdicts.get(&c).map(|v| v.status);
    let even = a.order().is_multiple_of(2);
    let mut out = Vec::new();
    for r in RULES {
        if r.even_only && !even {
            continue;
        }
        if r.premises.iter().all(|&p| status(p) == Some(Status::Member)) && status(r.conclusion) == Some(Status::NonMember) {
            let premises: Vec<&str> = r.premises.iter().map(|p| p.name()).collect();
            out.push(Violation {
                rule: r.name.to_string(),
                detail: format!("{} Member but {} NonMember", premises.join(" and "), r.conclusion),
            });
        }
    }
    if !even && status(P) == Some(Status::Member) {
        out.push(Violation {
            rule: "no P-tensor has odd order".to_string(),
            detail: format!("P Member at order {}", a.order()),
        });
    }
    out
}

/// Principal subtensors that refute a claimed ER status of `a`.
pub fn heredity_violations(a: &Tensor, claimed: Status, budget: &Budget) -> Result<Vec<Violation>> {
    if claimed != Status::Member {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for j in IndexSet::all_nonempty(a.dim()) {
        let sub = a.principal_subtensor(&j)?;
        let v = classify(&sub, ER, budget)?;
        if v.status == Status::NonMember {
            let one_based: Vec<usize> = j.indices().iter().map(|i| i + 1).collect();
            let w = v.witness.as_ref().map(|w| match w.t {
                Some(t) => format!(" (x = {:?}, t = {t})", w.x),
                None => format!(" (x = {:?})", w.x),
            });
            let w = w.unwrap_or_default();
            out.push(Violation {
                rule: "principal subtensors of ER tensors are ER".to_string(),
                detail: format!("subtensor on J = {one_based:?} is not ER{w}"),
            });
        }
    }
    Ok(out)
}

pub fn subtensor_heredity_check(a: &Tensor, class: ClassId, budget: &Budget) -> Result<Vec<Violation>> {
    if class != ER {
        return Err(Error::Capability(format!("subtensor heredity is checked for ER only, not {class}")));
    }
    let v = classify(a, ER, budget)?;
    heredity_violations(a, v.status, budget)
}
