//! All finite join semilattices up to isomorphism, and the census that checks
//! the forbidden-substructure characterization on each of them.
//!
//! Generation: removing a minimal element from a join semilattice leaves a
//! join semilattice (a minimal element is never the join of two others), so
//! every `n`-element structure is an `(n−1)`-element one with a new minimal
//! element adjoined below some nonempty up-set. Candidates are deduplicated
//! by canonical form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::run_pipeline;
use crate::error::{Error, Result};
use crate::iso::canonical_representative;
use crate::omod::is_omodular;
use crate::poset::Poset;
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;
use crate::substructure::{ForbiddenSummary, StrongReading};

/// Default largest size accepted by [`enum_jsls`] and [`validate_theorems`].
pub const ENUM_MAX: usize = 8;

/// Parallelism and size limit for the enumerator.
#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub max_n: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_n: ENUM_MAX,
            jobs: None,
        }
    }
}

impl EnumConfig {
    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n < 1 || n > self.max_n {
            return Err(Error::SizeLimitExceeded { n, max: self.max_n });
        }
        Ok(())
    }
}

/// One canonical representative per isomorphism class, with its key.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub canonical: String,
    pub structure: JoinSemilattice,
}

/// Nonempty up-sets of `p`, as bitmasks.
fn up_sets(p: &Poset) -> Vec<ElementSet> {
    let n = p.len();
    (1u64..(1u64 << n))
        .map(ElementSet::from_bits)
        .filter(|&u| u.iter().all(|i| p.up_set(i).is_subset(u)))
        .collect()
}

/// Adjoins element `n` as a new minimal element whose strict up-set is `up`.
fn extend(parent: &JoinSemilattice, up: ElementSet) -> Option<JoinSemilattice> {
    let n = parent.len();
    let p = parent.poset();
    let mut covers: Vec<(usize, usize)> = p.covers();
    covers.extend(up.iter().map(|u| (n, u)));
    let names = (0..=n).map(|i| format!("e{i}")).collect();
    JoinSemilattice::from_covers(names, &covers).ok()
}

fn next_level(level: &[ClassRep]) -> Vec<ClassRep> {
    let found: Vec<(String, JoinSemilattice)> = level
        .par_iter()
        .flat_map_iter(|rep| {
            let s = &rep.structure;
            up_sets(s.poset())
                .into_iter()
                .filter_map(move |u| extend(s, u))
                .map(|t| canonical_representative(&t))
        })
        .collect();
    let mut classes: BTreeMap<String, JoinSemilattice> = BTreeMap::new();
    for (key, rep) in found {
        classes.entry(key).or_insert(rep);
    }
    classes
        .into_iter()
        .map(|(canonical, structure)| ClassRep {
            canonical,
            structure,
        })
        .collect()
}

/// Representatives for every size `1..=n`; entry `k − 1` holds size `k`,
/// each sorted by canonical string.
pub fn enum_levels(n: usize, config: EnumConfig) -> Result<Vec<Vec<ClassRep>>> {
    config.check(n)?;
    config.run(|| {
        let one = JoinSemilattice::from_covers(vec!["e0".into()], &[]).expect("singleton");
        let (canonical, structure) = canonical_representative(&one);
        let mut levels = vec![vec![ClassRep {
            canonical,
            structure,
        }]];
        while levels.len() < n {
            let next = next_level(levels.last().expect("nonempty"));
            levels.push(next);
        }
        Ok(levels)
    })
}

/// Every `n`-element join semilattice up to isomorphism, in canonical-string
/// order.
pub fn enum_jsls(n: usize) -> Result<Vec<JoinSemilattice>> {
    enum_jsls_with(n, EnumConfig::default())
}

pub fn enum_jsls_with(n: usize, config: EnumConfig) -> Result<Vec<JoinSemilattice>> {
    let mut levels = enum_levels(n, config)?;
    Ok(levels
        .pop()
        .expect("n ≥ 1")
        .into_iter()
        .map(|r| r.structure)
        .collect())
}

/// Number of isomorphism classes for each size `1..=n`.
pub fn class_counts(n: usize, config: EnumConfig) -> Result<Vec<usize>> {
    Ok(enum_levels(n, config)?.iter().map(Vec::len).collect())
}

/// Which strong readings a census evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrengthSelection {
    Strict,
    Lu,
    Both,
}

impl StrengthSelection {
    pub fn readings(self) -> &'static [StrongReading] {
        match self {
            StrengthSelection::Strict => &[StrongReading::Strict],
            StrengthSelection::Lu => &[StrongReading::Lu],
            StrengthSelection::Both => &[StrongReading::Strict, StrongReading::Lu],
        }
    }
}

/// The claims checked per structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Claim {
    /// Forbidden substructure (semi-strong M2 or strong M4) ⇒ not o-modular.
    A(StrongReading),
    /// Not o-modular ⇒ semi-strong M2 or semi-strong M4.
    B,
    /// Not o-modular ⟺ forbidden substructure.
    C(StrongReading),
    /// The construction pipeline completes with every fact holding.
    D,
}

impl Claim {
    pub fn id(self) -> String {
        match self {
            Claim::A(r) => format!("A:{}", r.name()),
            Claim::B => "B".into(),
            Claim::C(r) => format!("C:{}", r.name()),
            Claim::D => "D".into(),
        }
    }

    pub fn parse(id: &str) -> Option<Claim> {
        let reading = |r: &str| match r {
            "strict" => Some(StrongReading::Strict),
            "lu" => Some(StrongReading::Lu),
            _ => None,
        };
        match id.split_once(':') {
            Some(("A", r)) => reading(r).map(Claim::A),
            Some(("C", r)) => reading(r).map(Claim::C),
            None if id == "B" => Some(Claim::B),
            None if id == "D" => Some(Claim::D),
            _ => None,
        }
    }

    /// Violations of A, B, D and of C under the LU reading fail a census;
    /// C under the strict reading is reported only.
    pub fn is_asserted(self) -> bool {
        !matches!(self, Claim::C(StrongReading::Strict))
    }
}

/// Per-structure verdicts that the claims are evaluated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub omodular: bool,
    pub forbidden: ForbiddenSummary,
    /// The construction pipeline finished with every fact holding and a
    /// terminal substructure of the promised strength.
    pub pipeline_ok: bool,
}

pub fn analyze(s: &JoinSemilattice) -> StructureVerdict {
    let omodular = is_omodular(s);
    let forbidden = ForbiddenSummary::compute(s);
    let pipeline_ok = match run_pipeline(s) {
        Ok(None) => omodular,
        Ok(Some(trace)) => {
            let t = trace.terminal();
            let terminal_ok = if trace.lbc.is_empty() {
                t.strength.semi_strong
            } else {
                trace.t4.as_ref().is_some_and(|t4| t4.strength.semi_strong) && t.strength.strong_lu
            };
            !omodular && terminal_ok && trace.facts.iter().all(|f| f.holds)
        }
        Err(_) => false,
    };
    StructureVerdict {
        omodular,
        forbidden,
        pipeline_ok,
    }
}

impl StructureVerdict {
    pub fn holds(&self, claim: Claim) -> bool {
        let non = !self.omodular;
        let f = self.forbidden;
        match claim {
            Claim::A(r) => !f.forbidden(r) || non,
            Claim::B => !non || f.forbidden_semi_strong(),
            Claim::C(r) => non == f.forbidden(r),
            Claim::D => self.omodular || self.pipeline_ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub claim: String,
    pub canonical: String,
}

impl Violation {
    /// Rebuilds the structure from its canonical form and re-evaluates the
    /// claim; true when it still fails.
    pub fn reproduces(&self) -> Result<bool> {
        let claim = Claim::parse(&self.claim)
            .ok_or_else(|| Error::InvalidRelation(format!("unknown claim `{}`", self.claim)))?;
        let s = JoinSemilattice::from_canonical_form(&self.canonical)?;
        Ok(!analyze(&s).holds(claim))
    }

    pub fn structure(&self) -> Result<JoinSemilattice> {
        JoinSemilattice::from_canonical_form(&self.canonical)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub strength: StrengthSelection,
    pub jsl_count: usize,
    pub omodular_count: usize,
    pub non_omodular_count: usize,
    pub with_semi_strong_m2: usize,
    pub with_semi_strong_m4: usize,
    pub with_strict_strong_m4: usize,
    pub with_lu_strong_m4: usize,
    /// Sorted by claim, then canonical string.
    pub violations: Vec<Violation>,
}

impl EnumerationReport {
    /// No violations of an asserted claim.
    pub fn passed(&self) -> bool {
        self.violations
            .iter()
            .all(|v| Claim::parse(&v.claim).is_some_and(|c| !c.is_asserted()))
    }

    pub fn violations_of(&self, claim: Claim) -> Vec<&Violation> {
        let id = claim.id();
        self.violations.iter().filter(|v| v.claim == id).collect()
    }
}

/// Claims evaluated for a strength selection, in report order.
pub fn claims_for(strength: StrengthSelection) -> Vec<Claim> {
    let mut claims = Vec::new();
    for &r in strength.readings() {
        claims.push(Claim::A(r));
    }
    claims.push(Claim::B);
    for &r in strength.readings() {
        claims.push(Claim::C(r));
    }
    claims.push(Claim::D);
    claims.sort();
    claims
}

/// Runs the census over every `n`-element join semilattice.
pub fn validate_theorems(n: usize, strength: StrengthSelection) -> Result<EnumerationReport> {
    validate_theorems_with(n, strength, EnumConfig::default())
}

pub fn validate_theorems_with(
    n: usize,
    strength: StrengthSelection,
    config: EnumConfig,
) -> Result<EnumerationReport> {
    let mut levels = enum_levels(n, config)?;
    let reps = levels.pop().expect("n ≥ 1");
    let verdicts: Vec<StructureVerdict> =
        config.run(|| reps.par_iter().map(|r| analyze(&r.structure)).collect());
    Ok(tally(n, strength, &reps, &verdicts))
}

fn tally(
    n: usize,
    strength: StrengthSelection,
    reps: &[ClassRep],
    verdicts: &[StructureVerdict],
) -> EnumerationReport {
    let count = |f: &dyn Fn(&StructureVerdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let claims = claims_for(strength);
    let mut violations: Vec<Violation> = reps
        .iter()
        .zip(verdicts)
        .flat_map(|(rep, v)| {
            claims.iter().filter(|&&c| !v.holds(c)).map(|&c| Violation {
                claim: c.id(),
                canonical: rep.canonical.clone(),
            })
        })
        .collect();
    violations.sort();
    EnumerationReport {
        n,
        strength,
        jsl_count: reps.len(),
        omodular_count: count(&|v| v.omodular),
        non_omodular_count: count(&|v| !v.omodular),
        with_semi_strong_m2: count(&|v| v.forbidden.semi_strong_m2),
        with_semi_strong_m4: count(&|v| v.forbidden.semi_strong_m4),
        with_strict_strong_m4: count(&|v| v.forbidden.strict_strong_m4),
        with_lu_strong_m4: count(&|v| v.forbidden.lu_strong_m4),
        violations,
    }
}
