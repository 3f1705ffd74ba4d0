//! Structured tensor classes, decided by searching for failure witnesses.
//!
//! Every class except Q is the statement that a certain polynomial system
//! has no solution on a cone or on the sphere. A solution of that system is a
//! [`Witness`] against membership. For `n <= 2` the system reduces to a
//! handful of univariate polynomials and the search is exhaustive, so the
//! absence of a witness is a proof of membership. For larger `n` the search is
//! seeded multi-start and can only refute.

mod audit;
mod exhaustive;
mod search;
mod system;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetUsed};
use crate::error::{Error, Result};
use crate::tensor::Tensor;

pub use audit::{heredity_violations, implication_audit, subtensor_heredity_check, Violation};
pub use system::{check_witness, SystemCheck};
pub(crate) use system::normalize as normalize_witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    SemiPositive,
    StrictlySemiPositive,
    P0,
    P,
    WP,
    StrictlyCopositive,
    PositiveDefinite,
    R,
    R0,
    ER,
    Q,
}

/// Where a failure witness lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Domain {
    /// `x >= 0`, `x != 0`, normalized to `|x|_inf = 1`.
    Cone,
    /// `x != 0`, normalized to `|x|_2 = 1`.
    Sphere,
}

impl ClassId {
    pub const ALL: [ClassId; 11] = [
        ClassId::SemiPositive,
        ClassId::StrictlySemiPositive,
        ClassId::P0,
        ClassId::P,
        ClassId::WP,
        ClassId::StrictlyCopositive,
        ClassId::PositiveDefinite,
        ClassId::R,
        ClassId::R0,
        ClassId::ER,
        ClassId::Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassId::SemiPositive => "SemiPositive",
            ClassId::StrictlySemiPositive => "StrictlySemiPositive",
            ClassId::P0 => "P0",
            ClassId::P => "P",
            ClassId::WP => "WP",
            ClassId::StrictlyCopositive => "StrictlyCopositive",
            ClassId::PositiveDefinite => "PositiveDefinite",
            ClassId::R => "R",
            ClassId::R0 => "R0",
            ClassId::ER => "ER",
            ClassId::Q => "Q",
        }
    }

    pub(crate) fn domain(self) -> Domain {
        match self {
            ClassId::P0 | ClassId::P | ClassId::WP | ClassId::PositiveDefinite => Domain::Sphere,
            _ => Domain::Cone,
        }
    }

    /// Systems that carry the scalar `t`.
    pub fn has_t(self) -> bool {
        matches!(self, ClassId::R | ClassId::ER)
    }

    /// Classes that contain every tensor with all coefficients positive.
    fn holds_for_positive(self) -> bool {
        matches!(
            self,
            ClassId::SemiPositive
                | ClassId::StrictlySemiPositive
                | ClassId::StrictlyCopositive
                | ClassId::R
                | ClassId::R0
                | ClassId::ER
                | ClassId::Q
        )
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    /// Case-insensitive; `-`, `_` and spaces are ignored, and the short forms
    /// `sp`, `ssp`, `scop` and `pd` are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !matches!(c, '-' | '_' | ' ')).collect::<String>().to_lowercase();
        let class = match key.as_str() {
            "semipositive" | "sp" => ClassId::SemiPositive,
            "strictlysemipositive" | "ssp" => ClassId::StrictlySemiPositive,
            "p0" => ClassId::P0,
            "p" => ClassId::P,
            "wp" | "weakp" => ClassId::WP,
            "strictlycopositive" | "scop" => ClassId::StrictlyCopositive,
            "positivedefinite" | "pd" => ClassId::PositiveDefinite,
            "r" => ClassId::R,
            "r0" => ClassId::R0,
            "er" => ClassId::ER,
            "q" => ClassId::Q,
            _ => return Err(Error::Input(format!("unknown class {s:?}"))),
        };
        Ok(class)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Member,
    NonMember,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Complete case split over supports for `n <= 2`.
    ExhaustiveN2,
    Multistart,
    /// Evidence from sampled right-hand sides; never decisive on its own.
    Sampled,
    Analytic,
}

/// A solution of a class's failure system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub system: ClassId,
    pub x: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub class: ClassId,
    pub status: Status,
    pub witness: Option<Witness>,
    pub method: Method,
    pub budget_used: BudgetUsed,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

pub(crate) struct Found {
    pub witness: Option<Witness>,
    pub used: BudgetUsed,
    pub exhaustive: bool,
}

fn has_system(a: &Tensor, class: ClassId) -> Result<()> {
    match class {
        ClassId::Q => Err(Error::Capability("Q has no failure system; use classify for sampled evidence".into())),
        ClassId::PositiveDefinite if a.order() % 2 == 1 => {
            Err(Error::Capability("PositiveDefinite of odd order has no witness search (the form is odd)".into()))
        }
        _ => Ok(()),
    }
}

fn find(a: &Tensor, class: ClassId, budget: &Budget) -> Result<Found> {
    if a.dim() <= 2 {
        Ok(exhaustive::search(a, class, budget.tol.margin))
    } else {
        Ok(search::search(a, class, budget))
    }
}

/// First witness against `class` under the seeded search schedule.
pub fn witness_search(a: &Tensor, class: ClassId, budget: &Budget) -> Result<Option<Witness>> {
    budget.validate()?;
    has_system(a, class)?;
    Ok(find(a, class, budget)?.witness)
}

pub fn classify(a: &Tensor, class: ClassId, budget: &Budget) -> Result<Verdict> {
    budget.validate()?;
    let verdict = |status, witness, method, budget_used, note: Option<&str>| Verdict {
        class,
        status,
        witness,
        method,
        budget_used,
        note: note.map(str::to_string),
    };
    if class == ClassId::Q {
        return classify_q(a, budget);
    }
    if class == ClassId::PositiveDefinite && a.order() % 2 == 1 {
        let w = odd_form_witness(a, budget.tol.margin)?;
        let status = if w.is_some() { Status::NonMember } else { Status::Unknown };
        let note = "odd-order forms change sign under x -> -x";
        return Ok(verdict(status, w, Method::Analytic, BudgetUsed::default(), Some(note)));
    }
    if class.holds_for_positive() && a.coeffs().iter().all(|&c| c > budget.tol.margin) {
        let note = "every coefficient is positive";
        return Ok(verdict(Status::Member, None, Method::Analytic, BudgetUsed::default(), Some(note)));
    }
    let found = find(a, class, budget)?;
    let method = if found.exhaustive { Method::ExhaustiveN2 } else { Method::Multistart };
    if class == ClassId::P && a.order() % 2 == 1 {
        let note = "P-tensors of odd order do not exist";
        return Ok(verdict(Status::NonMember, found.witness, Method::Analytic, found.used, Some(note)));
    }
    let status = match (&found.witness, found.exhaustive) {
        (Some(_), _) => Status::NonMember,
        (None, true) => Status::Member,
        (None, false) => Status::Unknown,
    };
    Ok(verdict(status, found.witness, method, found.used, None))
}

/// `x = +-e_1`, whichever makes the form nonpositive.
fn odd_form_witness(a: &Tensor, margin: f64) -> Result<Option<Witness>> {
    let mut x = vec![0.0; a.dim()];
    x[0] = 1.0;
    if a.eval_form(&x) > 0.0 {
        x[0] = -1.0;
    }
    let check = check_witness(a, ClassId::PositiveDefinite, &x, None, margin)?;
    Ok(check.valid.then_some(Witness { system: ClassId::PositiveDefinite, x, t: None, residual: check.residual }))
}

const Q_SAMPLE_SALT: u64 = 0x5151;

fn classify_q(a: &Tensor, budget: &Budget) -> Result<Verdict> {
    let mut used = BudgetUsed::default();
    for via in [ClassId::ER, ClassId::R] {
        let v = classify(a, via, budget)?;
        used.absorb(v.budget_used);
        if v.status == Status::Member {
            return Ok(Verdict {
                class: ClassId::Q,
                status: Status::Member,
                witness: None,
                method: Method::Analytic,
                budget_used: used,
                note: Some(format!("{via} implies Q")),
            });
        }
    }
    let samples = budget.max_starts;
    let mut solved = 0;
    let inner = Budget { max_starts: budget.max_starts.min(8), ..*budget };
    for k in 0..samples {
        let q = crate::tcp::random_q(a.dim(), 1.0, budget, Q_SAMPLE_SALT, k);
        let inst = crate::tcp::TcpInstance::new(a.clone(), q)?;
        // exact for n <= 2, where enumeration covers every support
        let found = if a.dim() <= 2 {
            let en = crate::tcp::enumerate_solutions(&inst, budget)?;
            used.absorb(en.used);
            !en.solutions.is_empty()
        } else {
            let out = crate::tcp::solve_with(&inst, &inner, false)?;
            used.absorb(out.used);
            out.solution.is_some()
        };
        solved += usize::from(found);
    }
    Ok(Verdict {
        class: ClassId::Q,
        status: Status::Unknown,
        witness: None,
        method: Method::Sampled,
        budget_used: used,
        note: Some(format!("{solved} of {samples} sampled q in [-1, 1]^n solved")),
    })
}
