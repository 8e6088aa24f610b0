//! Embedded copies of M2 and M4 and their strength.
//!
//! For a sub join semilattice `T` of `S` and a pair `p, q ∈ T`:
//!
//! * semi-strong: `L_T(p, q) = ∅` implies `L_S(p, q) = ∅`;
//! * strictly strong: `L_S(p, q) ⊆ L_T(p, q)`;
//! * LU-strong: semi-strong, and `L_S(p, q) ⊆ L_S U_S L_T(p, q)`, i.e. every
//!   ambient common lower bound lies below every ambient upper bound of the
//!   common lower bounds found inside `T`.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semilattice::JoinSemilattice;
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Template {
    M2,
    M4,
}

impl Template {
    /// Role names, in the order used by [`EmbeddedSub::roles`].
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            Template::M2 => &["a", "c", "b", "top"],
            Template::M4 => &["v", "a", "c", "b", "top"],
        }
    }

    pub fn size(self) -> usize {
        self.roles().len()
    }

    /// Strict order between roles, as `(lower, upper)` role positions.
    fn strict_pairs(self) -> &'static [(usize, usize)] {
        match self {
            // a < c < top, b < top
            Template::M2 => &[(0, 1), (0, 3), (1, 3), (2, 3)],
            // v < a < c < top, v < b < top
            Template::M4 => &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)],
        }
    }

    fn role_leq(self, r: usize, s: usize) -> bool {
        r == s || self.strict_pairs().contains(&(r, s))
    }

    pub fn name(self) -> &'static str {
        match self {
            Template::M2 => "M2",
            Template::M4 => "M4",
        }
    }

    /// The template as a structure, elements named by role.
    pub fn structure(self) -> JoinSemilattice {
        let names = self.roles().iter().map(|r| r.to_string()).collect();
        JoinSemilattice::from_covers(names, self.strict_pairs()).expect("templates are valid")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Strength {
    pub semi_strong: bool,
    pub strong_strict: bool,
    pub strong_lu: bool,
}

/// Which reading of "strong" a census or summary uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongReading {
    Strict,
    Lu,
}

impl StrongReading {
    pub fn name(self) -> &'static str {
        match self {
            StrongReading::Strict => "strict",
            StrongReading::Lu => "lu",
        }
    }
}

impl Strength {
    pub fn strong(self, reading: StrongReading) -> bool {
        match reading {
            StrongReading::Strict => self.strong_strict,
            StrongReading::Lu => self.strong_lu,
        }
    }
}

/// A join-closed subset matching a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddedSub {
    pub template: Template,
    pub members: Vec<usize>,
    /// Element playing each role of [`Template::roles`].
    pub roles: Vec<usize>,
    pub strength: Strength,
}

impl EmbeddedSub {
    pub fn member_set(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    pub fn role(&self, name: &str) -> Option<usize> {
        self.template
            .roles()
            .iter()
            .position(|r| *r == name)
            .map(|p| self.roles[p])
    }
}

/// Strength flags of the join-closed subset `t`.
pub fn classify_strength(s: &JoinSemilattice, t: ElementSet) -> Result<Strength> {
    if t.is_empty() || t.last().is_some_and(|i| i >= s.len()) || !s.is_join_closed(t) {
        return Err(Error::NotJoinClosed);
    }
    Ok(strength_unchecked(s, t))
}

fn strength_unchecked(s: &JoinSemilattice, t: ElementSet) -> Strength {
    let p = s.poset();
    let mut semi = true;
    let mut strict = true;
    let mut lu = true;
    for i in t.iter() {
        for j in t.iter().filter(|&j| j >= i) {
            let ambient = p.lower_pair(i, j);
            let inside = ambient & t;
            if inside.is_empty() && !ambient.is_empty() {
                semi = false;
            }
            if !ambient.is_subset(inside) {
                strict = false;
            }
            let lu_closure = p.lower_bounds_of(p.upper_bounds_of(inside));
            if !ambient.is_subset(lu_closure) {
                lu = false;
            }
        }
    }
    Strength {
        semi_strong: semi,
        strong_strict: strict,
        strong_lu: lu && semi,
    }
}

/// Lexicographically least role assignment under which `members` carries the
/// template order.
fn match_roles(s: &JoinSemilattice, members: &[usize], template: Template) -> Option<Vec<usize>> {
    members
        .iter()
        .copied()
        .permutations(members.len())
        .find(|roles| {
            (0..roles.len()).all(|r| {
                (0..roles.len()).all(|q| s.leq(roles[r], roles[q]) == template.role_leq(r, q))
            })
        })
}

/// Every embedded copy of `template`, sorted by member index vector.
pub fn find_embeddings(s: &JoinSemilattice, template: Template) -> Vec<EmbeddedSub> {
    let k = template.size();
    if s.len() < k {
        return Vec::new();
    }
    // both templates have exactly two incomparable pairs
    let want_incomparable = 2;
    let mut out = Vec::new();
    for members in (0..s.len()).combinations(k) {
        let incomparable = members
            .iter()
            .tuple_combinations()
            .filter(|(&i, &j)| s.incomparable(i, j))
            .count();
        if incomparable != want_incomparable {
            continue;
        }
        let set: ElementSet = members.iter().copied().collect();
        if !s.is_join_closed(set) {
            continue;
        }
        if let Some(roles) = match_roles(s, &members, template) {
            out.push(EmbeddedSub {
                template,
                strength: strength_unchecked(s, set),
                members,
                roles,
            });
        }
    }
    out
}

pub fn find_m2(s: &JoinSemilattice) -> Vec<EmbeddedSub> {
    find_embeddings(s, Template::M2)
}

pub fn find_m4(s: &JoinSemilattice) -> Vec<EmbeddedSub> {
    find_embeddings(s, Template::M4)
}

/// Summary of which forbidden configurations a structure contains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ForbiddenSummary {
    pub semi_strong_m2: bool,
    pub semi_strong_m4: bool,
    pub strict_strong_m4: bool,
    pub lu_strong_m4: bool,
}

impl ForbiddenSummary {
    pub fn of(m2: &[EmbeddedSub], m4: &[EmbeddedSub]) -> Self {
        ForbiddenSummary {
            semi_strong_m2: m2.iter().any(|e| e.strength.semi_strong),
            semi_strong_m4: m4.iter().any(|e| e.strength.semi_strong),
            strict_strong_m4: m4.iter().any(|e| e.strength.strong_strict),
            lu_strong_m4: m4.iter().any(|e| e.strength.strong_lu),
        }
    }

    pub fn compute(s: &JoinSemilattice) -> Self {
        Self::of(&find_m2(s), &find_m4(s))
    }

    /// A semi-strong M2 or an M4 that is strong under `reading`.
    pub fn forbidden(self, reading: StrongReading) -> bool {
        self.semi_strong_m2
            || match reading {
                StrongReading::Strict => self.strict_strong_m4,
                StrongReading::Lu => self.lu_strong_m4,
            }
    }

    /// A semi-strong M2 or a semi-strong M4.
    pub fn forbidden_semi_strong(self) -> bool {
        self.semi_strong_m2 || self.semi_strong_m4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{builtin, parse_structure};

    fn set(s: &JoinSemilattice, v: &[&str]) -> ElementSet {
        v.iter().map(|n| s.index_of(n).unwrap()).collect()
    }

    /// M4 with an extra `u`, `v < u < a`, `u < b`.
    const M4_PLUS_U: &str = "\
elements: v a c b top u
covers:
v < u
u < a
a < c
c < top
u < b
b < top
";

    #[test]
    fn m2_in_m2() {
        let m2 = builtin("m2").unwrap();
        let hits = find_m2(&m2);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].members, vec![0, 1, 2, 3]);
        assert!(hits[0].strength.semi_strong);
        assert_eq!(hits[0].role("c"), m2.index_of("c"));
        assert!(find_m4(&m2).is_empty());
    }

    #[test]
    fn m2_inside_m4_is_not_semi_strong() {
        let m4 = builtin("m4").unwrap();
        let hits = find_m2(&m4);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].member_set(), set(&m4, &["a", "b", "c", "top"]));
        assert!(!hits[0].strength.semi_strong);
    }

    #[test]
    fn m4_in_m4() {
        let m4 = builtin("m4").unwrap();
        let hits = find_m4(&m4);
        assert_eq!(hits.len(), 1);
        assert_eq!(
            hits[0].strength,
            Strength {
                semi_strong: true,
                strong_strict: true,
                strong_lu: true
            }
        );
        for role in Template::M4.roles() {
            assert_eq!(hits[0].role(role), m4.index_of(role));
        }
    }

    #[test]
    fn no_hits_in_diamond_or_chain() {
        let m3 = builtin("m3").unwrap();
        assert!(find_m4(&m3).is_empty());
        assert!(find_m2(&m3).is_empty());
        assert!(find_m2(&builtin("chain:4").unwrap()).is_empty());
    }

    #[test]
    fn extra_lower_bound_breaks_both_strong_readings() {
        let s = parse_structure(M4_PLUS_U).unwrap();
        let hits = find_m4(&s);
        let t = set(&s, &["v", "a", "c", "b", "top"]);
        let hit = hits.iter().find(|e| e.member_set() == t).expect("outer M4 present");
        assert!(hit.strength.semi_strong);
        assert!(!hit.strength.strong_strict);
        assert!(!hit.strength.strong_lu);
    }

    #[test]
    fn classify_examples() {
        let m4 = builtin("m4").unwrap();
        let all3 = Strength {
            semi_strong: true,
            strong_strict: true,
            strong_lu: true,
        };
        assert_eq!(classify_strength(&m4, m4.all()).unwrap(), all3);
        assert_eq!(
            classify_strength(&m4, set(&m4, &["a", "b", "c", "top"])).unwrap(),
            Strength::default()
        );
        assert_eq!(
            classify_strength(&m4, set(&m4, &["a", "b"])),
            Err(Error::NotJoinClosed)
        );

        // in a chain every subset is join-closed, semi-strong and LU-strong;
        // the literal reading also needs down(p) ⊆ T for each member p
        let c4 = builtin("chain:4").unwrap();
        for bits in 1u64..16 {
            let t = ElementSet::from_bits(bits);
            let down_closed = t.iter().all(|p| c4.poset().down_set(p).is_subset(t));
            let st = classify_strength(&c4, t).unwrap();
            assert!(st.semi_strong && st.strong_lu);
            assert_eq!(st.strong_strict, down_closed);
        }
    }

    #[test]
    fn lu_requires_semi_strong_even_with_a_bottom() {
        // M2 with a bottom adjoined: the copy of M2 has L_T(b, c) = ∅ while
        // the ambient bottom lies below everything
        let s = parse_structure(
            "elements: z a c top b\ncovers:\nz < a\nz < b\na < c\nc < top\nb < top\n",
        )
        .unwrap();
        let st = classify_strength(&s, set(&s, &["a", "c", "top", "b"])).unwrap();
        assert_eq!(st, Strength::default());
    }
}
