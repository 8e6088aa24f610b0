use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;

/// A finite poset in which every pair has a least upper bound. The join
/// table is filled at construction, so every later join is a lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSemilattice {
    poset: Poset,
    join: Vec<u8>,
    top: usize,
}

impl JoinSemilattice {
    /// Validates join existence. On failure reports the first pair `(i, j)`,
    /// `i < j` in index order, whose upper-bound set has no least element.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        let mut join = vec![0u8; n * n];
        for i in 0..n {
            for j in i..n {
                let ub = poset.up_set(i) & poset.up_set(j);
                let least = ub.iter().find(|&u| ub.is_subset(poset.up_set(u)));
                match least {
                    Some(u) => {
                        join[i * n + j] = u as u8;
                        join[j * n + i] = u as u8;
                    }
                    None => {
                        return Err(Error::NotAJoinSemilattice {
                            a: poset.name(i).to_string(),
                            b: poset.name(j).to_string(),
                        })
                    }
                }
            }
        }
        let top = (1..n).fold(0, |acc, i| join[acc * n + i] as usize);
        Ok(JoinSemilattice { poset, join, top })
    }

    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_poset(Poset::from_covers(names, covers)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.poset.lt(i, j)
    }

    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        self.poset.incomparable(i, j)
    }

    pub fn all(&self) -> ElementSet {
        self.poset.all()
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Least element, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        let lb = self.poset.lower_bounds_of(self.all());
        lb.first()
    }

    /// Binary joins folded over `y` in index order.
    pub fn join_of_set(&self, y: ElementSet) -> Result<usize> {
        if let Some(i) = y.last().filter(|&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            });
        }
        let mut it = y.iter();
        let first = it.next().ok_or(Error::EmptySet)?;
        Ok(it.fold(first, |acc, i| self.join(acc, i)))
    }

    /// Every pairwise join of `t` stays in `t`.
    pub fn is_join_closed(&self, t: ElementSet) -> bool {
        t.iter()
            .all(|i| t.iter().filter(|&j| j > i).all(|j| t.contains(self.join(i, j))))
    }

    /// Greatest lower bound of a pair, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lb = self.poset.lower_pair(i, j);
        lb.iter().find(|&m| lb.is_subset(self.poset.down_set(m)))
    }

    /// `t` as a join semilattice in its own right, members in index order.
    pub fn sub_semilattice(&self, t: ElementSet) -> Result<JoinSemilattice> {
        if t.is_empty() {
            return Err(Error::EmptySet);
        }
        if !self.is_join_closed(t) {
            return Err(Error::NotJoinClosed);
        }
        JoinSemilattice::from_poset(self.poset.induced(t))
    }

    /// Relabels positions: element `p` of the result is element `order[p]`.
    pub fn reordered(&self, order: &[usize]) -> JoinSemilattice {
        let poset = self.poset.reordered(order);
        let n = self.len();
        let mut pos = vec![0usize; n];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        let mut join = vec![0u8; n * n];
        for p in 0..n {
            for q in 0..n {
                join[p * n + q] = pos[self.join(order[p], order[q])] as u8;
            }
        }
        JoinSemilattice {
            poset,
            join,
            top: pos[self.top],
        }
    }

    pub fn renamed(&self, names: Vec<String>) -> Result<JoinSemilattice> {
        Ok(JoinSemilattice {
            poset: self.poset.renamed(names)?,
            join: self.join.clone(),
            top: self.top,
        })
    }

    /// Parses a row-major `0`/`1` matrix (as produced by
    /// [`canonical_form`](crate::canonical_form)); elements are named `e0`, `e1`, ….
    pub fn from_canonical_form(s: &str) -> Result<JoinSemilattice> {
        let bits: Vec<bool> = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidRelation(format!("unexpected character `{c}`"))),
            })
            .collect::<Result<_>>()?;
        let n = (bits.len() as f64).sqrt().round() as usize;
        if n * n != bits.len() {
            return Err(Error::InvalidRelation(format!(
                "length {} is not a perfect square",
                bits.len()
            )));
        }
        let matrix: Vec<Vec<bool>> = bits.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        let names = (0..n).map(|i| format!("e{i}")).collect();
        JoinSemilattice::from_poset(Poset::from_matrix(names, &matrix)?)
    }

    /// Serializes in the structure file format, covers in index order.
    pub fn to_structure_text(&self) -> String {
        let mut out = String::from("elements:");
        for name in self.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push_str("\ncovers:\n");
        for (lo, hi) in self.poset.covers() {
            let _ = writeln!(out, "{} < {}", self.name(lo), self.name(hi));
        }
        out
    }
}
