//! Report types produced by the checkers: per-clause theorem verdicts and
//! whole-loop classification summaries.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Verdict for a single graded clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClauseStatus {
    /// The clause holds on this instance.
    Pass,
    /// The clause fails on this instance; the clause carries a
    /// counterexample description.
    Fail,
    /// The clause was not graded because its own premise does not hold
    /// here; the clause carries the reason.
    Skipped,
}

impl fmt::Display for ClauseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseStatus::Pass => write!(f, "PASS"),
            ClauseStatus::Fail => write!(f, "FAIL"),
            ClauseStatus::Skipped => write!(f, "SKIPPED"),
        }
    }
}

/// One graded clause of a theorem report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    /// Stable label naming the clause within its theorem.
    pub label: String,
    pub status: ClauseStatus,
    /// Counterexample data for `Fail`, or the reason for `Skipped`.
    pub detail: Option<String>,
}

/// Whether an instance satisfies a theorem's hypotheses at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum PreconditionStatus {
    Satisfied,
    /// Violated, naming the failed premise.
    Violated(String),
}

/// The graded outcome of checking one theorem on one concrete instance.
///
/// When `precondition` is violated, `clauses` is empty: nothing is graded
/// on an instance the theorem does not speak about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub precondition: PreconditionStatus,
    pub clauses: Vec<Clause>,
}

impl TheoremReport {
    /// A fresh report with the precondition satisfied and no clauses yet.
    pub fn new(theorem_id: impl Into<String>) -> Self {
        TheoremReport {
            theorem_id: theorem_id.into(),
            precondition: PreconditionStatus::Satisfied,
            clauses: Vec::new(),
        }
    }

    /// A report for an instance that fails the named premise.
    pub fn violated(theorem_id: impl Into<String>, reason: impl Into<String>) -> Self {
        TheoremReport {
            theorem_id: theorem_id.into(),
            precondition: PreconditionStatus::Violated(reason.into()),
            clauses: Vec::new(),
        }
    }

    /// Records a passing clause.
    pub fn push_pass(&mut self, label: impl Into<String>) {
        self.clauses.push(Clause {
            label: label.into(),
            status: ClauseStatus::Pass,
            detail: None,
        });
    }

    /// Records a failing clause with its counterexample.
    pub fn push_fail(&mut self, label: impl Into<String>, counterexample: impl Into<String>) {
        self.clauses.push(Clause {
            label: label.into(),
            status: ClauseStatus::Fail,
            detail: Some(counterexample.into()),
        });
    }

    /// Records a skipped clause with the reason its premise failed.
    pub fn push_skip(&mut self, label: impl Into<String>, reason: impl Into<String>) {
        self.clauses.push(Clause {
            label: label.into(),
            status: ClauseStatus::Skipped,
            detail: Some(reason.into()),
        });
    }

    /// Records PASS, or FAIL with a lazily built counterexample.
    pub fn push_check(
        &mut self,
        label: impl Into<String>,
        ok: bool,
        counterexample: impl FnOnce() -> String,
    ) {
        if ok {
            self.push_pass(label);
        } else {
            self.push_fail(label, counterexample());
        }
    }

    /// Looks a clause up by label.
    pub fn clause(&self, label: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.label == label)
    }

    /// True when the precondition is satisfied and no clause failed
    /// (skipped clauses do not count against the report).
    pub fn all_pass(&self) -> bool {
        self.precondition == PreconditionStatus::Satisfied && !self.any_fail()
    }

    /// True when some clause was graded and failed.
    pub fn any_fail(&self) -> bool {
        self.clauses.iter().any(|c| c.status == ClauseStatus::Fail)
    }
}

impl fmt::Display for TheoremReport {
    /// One line per clause: `theorem_id clause_label STATUS [detail]`,
    /// preceded by a `precondition` line in the same shape.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.precondition {
            PreconditionStatus::Satisfied => {
                writeln!(f, "{} precondition SATISFIED", self.theorem_id)?;
            }
            PreconditionStatus::Violated(reason) => {
                writeln!(f, "{} precondition VIOLATED {}", self.theorem_id, reason)?;
            }
        }
        for clause in &self.clauses {
            write!(f, "{} {} {}", self.theorem_id, clause.label, clause.status)?;
            if let Some(detail) = &clause.detail {
                write!(f, " {detail}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The boolean loop-class flags a classification reports, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopFlag {
    /// Associative.
    Group,
    Commutative,
    /// Right inner mappings are automorphisms.
    ARho,
    /// Left inner mappings are automorphisms.
    ALambda,
    /// Middle inner mappings are automorphisms.
    AMu,
    /// All inner mappings are automorphisms.
    ALoop,
    /// Conjugacy closed: conjugates of translations are translations.
    Cc,
    /// Satisfies the identity `x(y . zx) = (xy . z)x`.
    Extra,
}

impl LoopFlag {
    /// All flags, in the order classification reports print them.
    pub const ALL: [LoopFlag; 8] = [
        LoopFlag::Group,
        LoopFlag::Commutative,
        LoopFlag::ARho,
        LoopFlag::ALambda,
        LoopFlag::AMu,
        LoopFlag::ALoop,
        LoopFlag::Cc,
        LoopFlag::Extra,
    ];

    /// The stable name used in reports and query grammars.
    pub fn name(self) -> &'static str {
        match self {
            LoopFlag::Group => "group",
            LoopFlag::Commutative => "commutative",
            LoopFlag::ARho => "a_rho",
            LoopFlag::ALambda => "a_lambda",
            LoopFlag::AMu => "a_mu",
            LoopFlag::ALoop => "a_loop",
            LoopFlag::Cc => "cc",
            LoopFlag::Extra => "extra",
        }
    }
}

impl fmt::Display for LoopFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for LoopFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        LoopFlag::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidQuery {
                message: format!(
                    "unknown loop flag `{s}` (expected one of: group, commutative, a_rho, \
                     a_lambda, a_mu, a_loop, cc, extra)"
                ),
            })
    }
}

/// Structural summary of one loop: class membership flags and the sizes
/// of the associated permutation groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub identity: usize,
    pub is_group: bool,
    pub is_commutative: bool,
    pub is_a_rho: bool,
    pub is_a_lambda: bool,
    pub is_a_mu: bool,
    pub is_a_loop: bool,
    pub is_cc: bool,
    pub is_extra: bool,
    /// Size of the group generated by the right inner mappings.
    pub inn_rho_size: usize,
    /// Size of the group generated by the left inner mappings.
    pub inn_lambda_size: usize,
    /// Size of the group generated by the middle inner mappings.
    pub inn_mu_size: usize,
    /// Size of the full inner mapping group.
    pub inn_size: usize,
    /// Size of the automorphism group.
    pub automorphism_count: usize,
    /// Size of the group generated by all translations.
    pub multiplication_group_size: usize,
    /// Number of nuclear elements.
    pub nucleus_size: usize,
}

impl ClassificationReport {
    /// Reads one class-membership flag by name.
    pub fn flag(&self, flag: LoopFlag) -> bool {
        match flag {
            LoopFlag::Group => self.is_group,
            LoopFlag::Commutative => self.is_commutative,
            LoopFlag::ARho => self.is_a_rho,
            LoopFlag::ALambda => self.is_a_lambda,
            LoopFlag::AMu => self.is_a_mu,
            LoopFlag::ALoop => self.is_a_loop,
            LoopFlag::Cc => self.is_cc,
            LoopFlag::Extra => self.is_extra,
        }
    }
}

impl fmt::Display for ClassificationReport {
    /// Line-oriented `key value` output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        writeln!(f, "identity {}", self.identity)?;
        for flag in LoopFlag::ALL {
            writeln!(f, "{} {}", flag.name(), self.flag(flag))?;
        }
        writeln!(f, "inn_rho_size {}", self.inn_rho_size)?;
        writeln!(f, "inn_lambda_size {}", self.inn_lambda_size)?;
        writeln!(f, "inn_mu_size {}", self.inn_mu_size)?;
        writeln!(f, "inn_size {}", self.inn_size)?;
        writeln!(f, "automorphism_count {}", self.automorphism_count)?;
        writeln!(
            f,
            "multiplication_group_size {}",
            self.multiplication_group_size
        )?;
        writeln!(f, "nucleus_size {}", self.nucleus_size)
    }
}
