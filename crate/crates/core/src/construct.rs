//! From a failure of o-modularity to an embedded M2 or M4.
//!
//! With proof labels `a < c`, `x`, `y`, `b`:
//!
//! * `T2 = {a, b, a∨x, a∨b}` is always a copy of M2, semi-strong exactly when
//!   `b` and `c` have no common lower bound;
//! * otherwise, for a common lower bound `v`,
//!   `T4 = {v, a∨v, x∨a∨v, b, a∨b}` is a semi-strong copy of M4;
//! * with `w` the join of every `n ≤ b, x∨a∨v`,
//!   `T5 = {w, a∨w, x∨a∨v, b, a∨b}` is an LU-strong copy of M4.
//!
//! Every step is checked. A failed check is a bug and aborts the run.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::omod::{check_omodular, to_proof_labels, Fact, OModWitness, ProofLabeling};
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;
use crate::substructure::{classify_strength, EmbeddedSub, Strength, Template};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub witness: OModWitness,
    pub labels: ProofLabeling,
    pub t2: EmbeddedSub,
    /// `L(b, c)` under proof labels.
    pub lbc: Vec<usize>,
    pub v: Option<usize>,
    pub t4: Option<EmbeddedSub>,
    /// `{n : n ≤ b, n ≤ x∨a∨v}`.
    pub nset: Option<Vec<usize>>,
    /// Join of `nset`.
    pub w: Option<usize>,
    pub t5: Option<EmbeddedSub>,
    pub facts: Vec<Fact>,
}

impl ConstructionTrace {
    /// The substructure the run ends with: T2 on the M2 branch, T5 otherwise.
    pub fn terminal(&self) -> &EmbeddedSub {
        self.t5.as_ref().unwrap_or(&self.t2)
    }
}

struct Recorder<'a> {
    s: &'a JoinSemilattice,
    facts: Vec<Fact>,
}

impl<'a> Recorder<'a> {
    fn new(s: &'a JoinSemilattice) -> Self {
        Recorder {
            s,
            facts: Vec::new(),
        }
    }

    fn nm(&self, i: usize) -> &str {
        self.s.name(i)
    }

    fn check(&mut self, id: &str, statement: String, holds: bool) -> Result<()> {
        if !holds {
            return Err(Error::FactViolation {
                id: id.to_string(),
                statement,
            });
        }
        self.facts.push(Fact::new(id, statement, true));
        Ok(())
    }

    fn lt(&mut self, id: &str, what: &str, i: usize, j: usize) -> Result<()> {
        let st = format!("{what}: {} < {}", self.nm(i), self.nm(j));
        let holds = self.s.lt(i, j);
        self.check(id, st, holds)
    }

    fn leq(&mut self, id: &str, what: &str, i: usize, j: usize) -> Result<()> {
        let st = format!("{what}: {} ≤ {}", self.nm(i), self.nm(j));
        let holds = self.s.leq(i, j);
        self.check(id, st, holds)
    }

    fn par(&mut self, id: &str, what: &str, i: usize, j: usize) -> Result<()> {
        let st = format!("{what}: {} ∥ {}", self.nm(i), self.nm(j));
        let holds = self.s.incomparable(i, j);
        self.check(id, st, holds)
    }

    /// Join-closure, template isomorphism and strength of the role map.
    fn embed(&mut self, id: &str, template: Template, roles: Vec<usize>) -> Result<EmbeddedSub> {
        let set: ElementSet = roles.iter().copied().collect();
        let s = self.s;
        let names: Vec<&str> = roles.iter().map(|&r| s.name(r)).collect();
        let st = format!("{{{}}} is a sub join semilattice", names.join(","));
        let closed = set.len() == template.size() && self.s.is_join_closed(set);
        self.check(&format!("{id}:closed"), st, closed)?;

        let sub = self.s.sub_semilattice(set)?;
        let st = format!("{{{}}} ≅ {}", names.join(","), template.name());
        let iso = is_isomorphic(&sub, &template.structure()).is_some();
        // the role map itself must carry the template order
        let tmpl = template.structure();
        let k = roles.len();
        let role_order =
            (0..k).all(|r| (0..k).all(|q| self.s.leq(roles[r], roles[q]) == tmpl.leq(r, q)));
        self.check(&format!("{id}:iso"), st, iso && role_order)?;

        let strength = classify_strength(self.s, set)?;
        Ok(EmbeddedSub {
            template,
            members: set.to_vec(),
            roles,
            strength,
        })
    }
}

fn t2_roles(s: &JoinSemilattice, pl: &ProofLabeling) -> (usize, usize) {
    (s.join(pl.a, pl.x), s.join(pl.a, pl.b))
}

fn build_t2_into(rec: &mut Recorder<'_>, pl: &ProofLabeling) -> Result<EmbeddedSub> {
    let s = rec.s;
    let (ax, ab) = t2_roles(s, pl);
    rec.lt("T2.1", "a < a∨x", pl.a, ax)?;
    rec.lt("T2.2", "a∨x < a∨b", ax, ab)?;
    rec.lt("T2.3", "b < a∨b", pl.b, ab)?;
    rec.par("T2.4", "a ∥ b", pl.a, pl.b)?;
    rec.par("T2.5", "a∨x ∥ b", ax, pl.b)?;
    // roles a, c, b, top
    rec.embed("T2", Template::M2, vec![pl.a, ax, pl.b, ab])
}

/// `T2 = {a, b, a∨x, a∨b}` with roles `a → a`, `c → a∨x`, `b → b`,
/// `top → a∨b`.
pub fn build_t2(s: &JoinSemilattice, pl: &ProofLabeling) -> Result<EmbeddedSub> {
    build_t2_into(&mut Recorder::new(s), pl)
}

fn check_v(s: &JoinSemilattice, pl: &ProofLabeling, v: usize) -> Result<()> {
    if v >= s.len() {
        return Err(Error::IndexOutOfRange { index: v, n: s.len() });
    }
    if !s.leq(v, pl.b) || !s.leq(v, pl.c) {
        return Err(Error::Precondition(format!(
            "v = {} must lie below both b = {} and c = {}",
            s.name(v),
            s.name(pl.b),
            s.name(pl.c)
        )));
    }
    Ok(())
}

fn build_t4_into(rec: &mut Recorder<'_>, pl: &ProofLabeling, v: usize) -> Result<EmbeddedSub> {
    let s = rec.s;
    check_v(s, pl, v)?;
    let (a, b, c, x, y) = (pl.a, pl.b, pl.c, pl.x, pl.y);
    let av = s.join(a, v);
    let xav = s.join(x, av);
    let ab = s.join(a, b);
    rec.leq("(x)", "v ≤ b", v, b)?;
    rec.leq("(xi)", "v ≤ c", v, c)?;
    rec.lt("(xii)", "v < b", v, b)?;
    rec.leq("(xiii)", "v ≤ y", v, y)?;
    rec.lt("(xiv)", "v < a∨v", v, av)?;
    rec.lt("(xv)", "a∨v < x∨a∨v", av, xav)?;
    rec.lt("(xvi)", "x∨a∨v < a∨b", xav, ab)?;
    rec.par("(xvii)", "a∨v ∥ b", av, b)?;
    rec.par("(xviii)", "x∨a∨v ∥ b", xav, b)?;
    // roles v, a, c, b, top
    let t4 = rec.embed("T4", Template::M4, vec![v, av, xav, b, ab])?;
    let names: Vec<&str> = t4.members.iter().map(|&m| s.name(m)).collect();
    rec.check(
        "T4:semi-strong",
        format!("{{{}}} is semi-strong", names.join(",")),
        t4.strength.semi_strong,
    )?;
    Ok(t4)
}

/// `T4 = {v, a∨v, x∨a∨v, b, a∨b}` for a common lower bound `v` of `b` and
/// `c`, with facts (x)–(xviii).
pub fn build_t4(s: &JoinSemilattice, pl: &ProofLabeling, v: usize) -> Result<EmbeddedSub> {
    build_t4_into(&mut Recorder::new(s), pl, v)
}

struct T5 {
    nset: ElementSet,
    w: usize,
    sub: EmbeddedSub,
}

fn build_t5_into(rec: &mut Recorder<'_>, pl: &ProofLabeling, v: usize) -> Result<T5> {
    let s = rec.s;
    check_v(s, pl, v)?;
    let (a, b, c, x, y) = (pl.a, pl.b, pl.c, pl.x, pl.y);
    let xav = s.join(x, s.join(a, v));
    let ab = s.join(a, b);
    let nset = s.poset().lower_pair(b, xav);
    let w = s.join_of_set(nset)?;
    let aw = s.join(a, w);
    rec.leq("C.1", "⋁n ≤ b", w, b)?;
    rec.leq("C.2", "⋁n ≤ x∨a∨v", w, xav)?;
    rec.leq("C.3", "⋁n ≤ c", w, c)?;
    rec.leq("C.4", "⋁n ≤ y", w, y)?;
    rec.lt("C.5", "⋁n < b", w, b)?;
    rec.lt("C.6", "⋁n < a∨⋁n", w, aw)?;
    rec.lt("C.7", "a∨⋁n < x∨a∨v", aw, xav)?;
    rec.par("C.8", "a∨⋁n ∥ b", aw, b)?;
    rec.lt("C.9", "x∨a∨v < a∨b", xav, ab)?;
    rec.par("C.10", "x∨a∨v ∥ b", xav, b)?;
    let below = nset.iter().all(|z| s.leq(z, w));
    rec.check(
        "C.11",
        format!("every z ≤ b, x∨a∨v lies below ⋁n = {}", s.name(w)),
        below,
    )?;
    let sub = rec.embed("T5", Template::M4, vec![w, aw, xav, b, ab])?;
    let names: Vec<&str> = sub.members.iter().map(|&m| s.name(m)).collect();
    rec.check(
        "T5:lu-strong",
        format!("{{{}}} is LU-strong", names.join(",")),
        sub.strength.strong_lu,
    )?;
    Ok(T5 { nset, w, sub })
}

/// `T5 = {w, a∨w, x∨a∨v, b, a∨b}` where `w = ⋁{n : n ≤ b, n ≤ x∨a∨v}`.
/// LU-strength is asserted; strict strength is recorded as found.
pub fn build_t5(s: &JoinSemilattice, pl: &ProofLabeling, v: usize) -> Result<EmbeddedSub> {
    Ok(build_t5_into(&mut Recorder::new(s), pl, v)?.sub)
}

/// The whole chain: witness, proof labels, T2, and when `L(b, c)` is
/// nonempty T4 and T5 from its least member. `None` when o-modular.
pub fn run_pipeline(s: &JoinSemilattice) -> Result<Option<ConstructionTrace>> {
    let Some(witness) = check_omodular(s) else {
        return Ok(None);
    };
    let labels = to_proof_labels(s, &witness)?;
    let mut rec = Recorder::new(s);
    rec.facts.extend(labels.facts(s));
    let t2 = build_t2_into(&mut rec, &labels)?;
    let lbc = s.poset().lower_pair(labels.b, labels.c);
    rec.check(
        "T2:semi-strong",
        format!(
            "T2 semi-strong ⟺ L(b, c) = ∅ (|L(b, c)| = {})",
            lbc.len()
        ),
        t2.strength.semi_strong == lbc.is_empty(),
    )?;

    let mut trace = ConstructionTrace {
        witness,
        labels,
        t2,
        lbc: lbc.to_vec(),
        v: None,
        t4: None,
        nset: None,
        w: None,
        t5: None,
        facts: Vec::new(),
    };
    if let Some(v) = lbc.first() {
        let t4 = build_t4_into(&mut rec, &labels, v)?;
        let t5 = build_t5_into(&mut rec, &labels, v)?;
        trace.v = Some(v);
        trace.t4 = Some(t4);
        trace.nset = Some(t5.nset.to_vec());
        trace.w = Some(t5.w);
        trace.t5 = Some(t5.sub);
    }
    trace.facts = rec.facts;
    Ok(Some(trace))
}

/// Strength flags of the terminal substructure, for summaries.
pub fn terminal_strength(trace: &ConstructionTrace) -> Strength {
    trace.terminal().strength
}
