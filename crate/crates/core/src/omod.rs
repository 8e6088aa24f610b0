//! Deciding o-modularity.
//!
//! A join semilattice is o-modular when for all `a, b, c` with `c ≤ a`
//!
//! ```text
//! L(a, b ∨ c) ⊆ L U (L(a, b) ∪ {c})
//! ```
//!
//! where `L` and `U` are the common lower and upper bound operators over the
//! whole structure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;

/// A failure of the defining inclusion, in the orientation of the
/// definition: `c ≤ a`, `x ∈ L(a, b ∨ c)`, `y ∈ U(L(a, b) ∪ {c})`, `x ≰ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OModWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub x: usize,
    pub y: usize,
}

/// The same quintuple with `a` and `c` swapped, so that `a < c`. This is
/// the orientation the substructure constructions work in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProofLabeling {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub x: usize,
    pub y: usize,
}

/// A named, checked statement about specific elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: String,
    pub statement: String,
    pub holds: bool,
}

impl Fact {
    pub fn new(id: &str, statement: String, holds: bool) -> Self {
        Fact {
            id: id.to_string(),
            statement,
            holds,
        }
    }
}

/// The right-hand side `L U (L(a, b) ∪ {c})` together with the `U` set.
fn closure_side(s: &JoinSemilattice, a: usize, b: usize, c: usize) -> (ElementSet, ElementSet) {
    let p = s.poset();
    let lab = p.lower_pair(a, b);
    let ub = p.upper_bounds_of(lab.with(c));
    (p.lower_bounds_of(ub), ub)
}

/// Scans `(a, b, c)` lexicographically with `c ≤ a`. The first failing
/// triple yields the least `x` missing from the right-hand side and the least
/// `y` in `U(L(a, b) ∪ {c})` above which `x` does not lie. `None` means the
/// structure is o-modular.
pub fn check_omodular(s: &JoinSemilattice) -> Option<OModWitness> {
    let p = s.poset();
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            for c in p.down_set(a).iter() {
                let left = p.lower_pair(a, s.join(b, c));
                let (right, ub) = closure_side(s, a, b, c);
                if let Some(x) = (left - right).first() {
                    let y = (ub - p.up_set(x))
                        .first()
                        .expect("x outside L(U) has some y in U above which it fails");
                    return Some(OModWitness { a, b, c, x, y });
                }
            }
        }
    }
    None
}

pub fn is_omodular(s: &JoinSemilattice) -> bool {
    check_omodular(s).is_none()
}

/// Rechecks the witness conditions directly.
pub fn verify_witness(s: &JoinSemilattice, w: &OModWitness) -> bool {
    let n = s.len();
    if [w.a, w.b, w.c, w.x, w.y].iter().any(|&i| i >= n) {
        return false;
    }
    let p = s.poset();
    let bc = s.join(w.b, w.c);
    let x_in_left = p.leq(w.x, w.a) && p.leq(w.x, bc);
    let lab = p.lower_pair(w.a, w.b);
    let y_in_upper = p.leq(w.c, w.y) && lab.iter().all(|z| p.leq(z, w.y));
    p.leq(w.c, w.a) && x_in_left && y_in_upper && !p.leq(w.x, w.y)
}

impl ProofLabeling {
    /// Facts (i)–(ix): the six defining conditions and the three derived ones.
    pub fn facts(&self, s: &JoinSemilattice) -> Vec<Fact> {
        let p = s.poset();
        let nm = |i: usize| s.name(i).to_string();
        let (a, b, c, x, y) = (self.a, self.b, self.c, self.x, self.y);
        let ab = s.join(a, b);
        let lbc = p.lower_pair(b, c);
        vec![
            Fact::new("(i)", format!("a < c: {} < {}", nm(a), nm(c)), p.lt(a, c)),
            Fact::new("(ii)", format!("x ≤ c: {} ≤ {}", nm(x), nm(c)), p.leq(x, c)),
            Fact::new(
                "(iii)",
                format!("x ≤ a∨b: {} ≤ {}", nm(x), nm(ab)),
                p.leq(x, ab),
            ),
            Fact::new(
                "(iv)",
                format!("every z ≤ b, c lies below y = {}", nm(y)),
                lbc.iter().all(|z| p.leq(z, y)),
            ),
            Fact::new("(v)", format!("a ≤ y: {} ≤ {}", nm(a), nm(y)), p.leq(a, y)),
            Fact::new("(vi)", format!("x ≰ y: {} ≰ {}", nm(x), nm(y)), !p.leq(x, y)),
            Fact::new("(vii)", format!("x ≰ a: {} ≰ {}", nm(x), nm(a)), !p.leq(x, a)),
            Fact::new(
                "(viii)",
                format!("a ∥ b: {} ∥ {}", nm(a), nm(b)),
                p.incomparable(a, b),
            ),
            Fact::new("(ix)", format!("b ≰ c: {} ≰ {}", nm(b), nm(c)), !p.leq(b, c)),
        ]
    }

    pub fn is_valid(&self, s: &JoinSemilattice) -> bool {
        let n = s.len();
        [self.a, self.b, self.c, self.x, self.y].iter().all(|&i| i < n)
            && self.facts(s).iter().all(|f| f.holds)
    }
}

/// Swaps `a` and `c` of a verified witness and rechecks facts (i)–(ix).
pub fn to_proof_labels(s: &JoinSemilattice, w: &OModWitness) -> Result<ProofLabeling> {
    if w.a == w.c {
        return Err(Error::InvalidWitness(
            "a = c, the inclusion cannot fail".into(),
        ));
    }
    if !verify_witness(s, w) {
        return Err(Error::InvalidWitness(
            "quintuple does not violate the inclusion".into(),
        ));
    }
    let pl = ProofLabeling {
        a: w.c,
        b: w.b,
        c: w.a,
        x: w.x,
        y: w.y,
    };
    if let Some(f) = pl.facts(s).into_iter().find(|f| !f.holds) {
        return Err(Error::InvalidWitness(format!(
            "fact {} fails: {}",
            f.id, f.statement
        )));
    }
    Ok(pl)
}

/// First `(a, b, c)` with `c ≤ a` and `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ c`, or
/// `None` when the modular law holds. Requires every pair to have a meet.
pub fn modular_law_check(s: &JoinSemilattice) -> Result<Option<(usize, usize, usize)>> {
    let n = s.len();
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            meet[i * n + j] = s.meet(i, j).ok_or_else(|| Error::NotALattice {
                a: s.name(i.min(j)).to_string(),
                b: s.name(i.max(j)).to_string(),
            })?;
        }
    }
    let m = |i: usize, j: usize| meet[i * n + j];
    for a in 0..n {
        for b in 0..n {
            for c in s.poset().down_set(a).iter() {
                if m(a, s.join(b, c)) != s.join(m(a, b), c) {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}
