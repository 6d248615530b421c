//! The acceptance suite: one check per numbered criterion, each printing a
//! pass/fail line with the measured values against its pinned threshold.
//! Every tolerance is frozen here in code; regression constants carry the
//! seed of the oracle run that produced them.

pub mod dynamics;
pub mod exactness;
pub mod reference;
pub mod spectra;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:<4} {} [{} ms] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.millis,
            self.details
        )
    }
}

/// A small builder used by the individual checks.
pub(crate) struct Check {
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Check {
    pub fn new() -> Check {
        Check {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    pub fn finish(
        self,
        id: &'static str,
        title: &'static str,
        started: std::time::Instant,
    ) -> CriterionOutcome {
        let passed = self.failures.is_empty();
        let details = if passed {
            self.notes.join("; ")
        } else {
            format!("failed: {}", self.failures.join("; "))
        };
        CriterionOutcome {
            id,
            title,
            passed,
            details,
            millis: started.elapsed().as_millis(),
        }
    }
}

type CriterionFn = fn() -> CriterionOutcome;

pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    /// Included in the fast suite (the rest only run in `suite full`).
    pub fast: bool,
    pub run: CriterionFn,
}

pub fn all_criteria() -> &'static [Criterion] {
    &[
        Criterion { id: "A1", title: "traversability recursion vs enumeration", fast: true, run: exactness::a1 },
        Criterion { id: "A2", title: "transfer matrix vs linear recursion", fast: true, run: exactness::a2 },
        Criterion { id: "A3", title: "integral of g equals pi^2/18", fast: true, run: exactness::a3 },
        Criterion { id: "A4", title: "asymptotics of g at both ends", fast: true, run: exactness::a4 },
        Criterion { id: "A5", title: "traversability prefactor stabilization", fast: true, run: exactness::a5 },
        Criterion { id: "A6", title: "super-good recognizer vs brute-force reference", fast: true, run: exactness::a6 },
        Criterion { id: "A7", title: "super-good implies internally spanned", fast: false, run: exactness::a7 },
        Criterion { id: "A8", title: "droplet probability product formula", fast: true, run: exactness::a8 },
        Criterion { id: "A9", title: "spectral correctness invariants", fast: true, run: spectra::a9 },
        Criterion { id: "A10", title: "block-chain Poincare bounds", fast: true, run: spectra::a10 },
        Criterion { id: "A11", title: "FA-1f relaxation within q^-10", fast: true, run: spectra::a11 },
        Criterion { id: "A12", title: "CBSEP relaxation scaling", fast: true, run: spectra::a12 },
        Criterion { id: "A13", title: "simulator law exactness", fast: false, run: dynamics::a13 },
        Criterion { id: "A14", title: "FA-2f stationarity", fast: true, run: dynamics::a14 },
        Criterion { id: "A15", title: "hardness trends in q", fast: false, run: dynamics::a15 },
    ]
}

pub fn find_criterion(id: &str) -> Option<&'static Criterion> {
    all_criteria()
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
}

/// Run the fast or full suite, optionally filtered to one id.
pub fn run_suite(fast_only: bool, filter: Option<&str>) -> Vec<CriterionOutcome> {
    all_criteria()
        .iter()
        .filter(|c| !fast_only || c.fast)
        .filter(|c| filter.is_none_or(|f| c.id.eq_ignore_ascii_case(f)))
        .map(|c| (c.run)())
        .collect()
}
