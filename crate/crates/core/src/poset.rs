//! Finite partial orders with dense bitset rows.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// A finite poset. Element `i` is named `names[i]`; declaration order is the
/// index order and breaks every "least"/"first" tie downstream.
///
/// `up[i]` holds every `j` with `i ≤ j`, `down[i]` every `j` with `j ≤ i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyStructure);
    }
    if names.len() > MAX_ELEMENTS {
        return Err(Error::SizeLimitExceeded {
            n: names.len(),
            max: MAX_ELEMENTS,
        });
    }
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateElement {
                name: name.clone(),
                line: None,
            });
        }
    }
    Ok(())
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given `(lower, upper)`
    /// pairs.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(lo, hi) in covers {
            for i in [lo, hi] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            up[lo].insert(hi);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row |= row_k;
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    let (a, b) = (i.min(j), i.max(j));
                    return Err(Error::CycleDetected {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }
        Ok(Self::from_up_sets(names, up))
    }

    /// Accepts a full relation matrix and validates reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRelation(format!("matrix is not {n}×{n}")));
        }
        let up: Vec<ElementSet> = leq
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect())
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InvalidRelation(format!("`{}` ≰ itself", names[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::CycleDetected {
                        a: names[i.min(j)].clone(),
                        b: names[i.max(j)].clone(),
                    });
                }
                if !up[j].is_subset(up[i]) {
                    return Err(Error::InvalidRelation(format!(
                        "not transitive through `{}` ≤ `{}`",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_sets(names, up))
    }

    fn from_up_sets(names: Vec<String>, up: Vec<ElementSet>) -> Self {
        let n = names.len();
        let mut down = vec![ElementSet::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Poset { names, up, down }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: empty posets are rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.leq(i, j) && !self.leq(j, i)
    }

    /// `{j : i ≤ j}`.
    #[inline]
    pub fn up_set(&self, i: usize) -> ElementSet {
        self.up[i]
    }

    /// `{j : j ≤ i}`.
    #[inline]
    pub fn down_set(&self, i: usize) -> ElementSet {
        self.down[i]
    }

    fn check_range(&self, s: ElementSet) -> Result<()> {
        match s.last() {
            Some(i) if i >= self.len() => Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Members of `x` lying below every member of `y`. Returns `x` when `y`
    /// is empty.
    pub fn lower_bounds(&self, x: ElementSet, y: ElementSet) -> Result<ElementSet> {
        self.check_range(x)?;
        self.check_range(y)?;
        Ok(x & self.lower_bounds_of(y))
    }

    /// Members of `x` lying above every member of `y`. Returns `x` when `y`
    /// is empty.
    pub fn upper_bounds(&self, x: ElementSet, y: ElementSet) -> Result<ElementSet> {
        self.check_range(x)?;
        self.check_range(y)?;
        Ok(x & self.upper_bounds_of(y))
    }

    /// Unchecked `lower_bounds` with `x` = every element.
    pub fn lower_bounds_of(&self, y: ElementSet) -> ElementSet {
        y.iter().fold(self.all(), |acc, j| acc & self.down[j])
    }

    /// Unchecked `upper_bounds` with `x` = every element.
    pub fn upper_bounds_of(&self, y: ElementSet) -> ElementSet {
        y.iter().fold(self.all(), |acc, j| acc & self.up[j])
    }

    /// Common lower bounds of a pair, `L(i, j)`.
    #[inline]
    pub fn lower_pair(&self, i: usize, j: usize) -> ElementSet {
        self.down[i] & self.down[j]
    }

    /// Hasse edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if self.is_cover(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `i` is covered by `j`: `i < j` with nothing strictly between.
    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j) && (self.up[i] & self.down[j]).len() == 2
    }

    pub fn lower_cover_count(&self, i: usize) -> usize {
        self.down[i].iter().filter(|&j| self.is_cover(j, i)).count()
    }

    pub fn upper_cover_count(&self, i: usize) -> usize {
        self.up[i].iter().filter(|&j| self.is_cover(i, j)).count()
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// Poset whose element `p` is this poset's element `order[p]`.
    pub fn reordered(&self, order: &[usize]) -> Poset {
        let n = self.len();
        assert_eq!(order.len(), n);
        let mut pos = vec![0; n];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        let names = order.iter().map(|&e| self.names[e].clone()).collect();
        let up = order
            .iter()
            .map(|&e| self.up[e].iter().map(|j| pos[j]).collect())
            .collect();
        Self::from_up_sets(names, up)
    }

    /// Same order, new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        check_names(&names)?;
        if names.len() != self.len() {
            return Err(Error::InvalidRelation(format!(
                "expected {} names, got {}",
                self.len(),
                names.len()
            )));
        }
        Ok(Self::from_up_sets(names, self.up.clone()))
    }

    /// Induced suborder on `members`, in index order.
    pub fn induced(&self, members: ElementSet) -> Poset {
        let idx = members.to_vec();
        let names = idx.iter().map(|&e| self.names[e].clone()).collect();
        let up = idx
            .iter()
            .map(|&e| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &f)| self.leq(e, f))
                    .map(|(p, _)| p)
                    .collect()
            })
            .collect();
        Self::from_up_sets(names, up)
    }
}
