//! Isomorphism testing and canonical forms for small posets.
//!
//! Both searches first split elements into classes by an isomorphism-invariant
//! colouring (down-set size, up-set size, cover degrees, refined by the colour
//! multisets of down- and up-sets) and then backtrack only within classes.

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::semilattice::JoinSemilattice;

/// Default size limit for [`canonical_form`].
pub const CANONICAL_MAX: usize = 10;

/// Stable colour refinement. Colours are ranks of sorted signature tuples,
/// so colour order is itself invariant. Since `x < y` forces
/// `|down x| < |down y|`, colour order extends the partial order.
fn colours(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let base: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            vec![
                p.down_set(i).len(),
                p.up_set(i).len(),
                p.lower_cover_count(i),
                p.upper_cover_count(i),
            ]
        })
        .collect();
    let mut colour = rank(&base);
    let mut classes = count_distinct(&colour);
    loop {
        let sig: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut below: Vec<usize> = p.down_set(i).iter().map(|j| colour[j]).collect();
                let mut above: Vec<usize> = p.up_set(i).iter().map(|j| colour[j]).collect();
                below.sort_unstable();
                above.sort_unstable();
                let mut s = vec![colour[i], usize::MAX];
                s.extend(below);
                s.push(usize::MAX);
                s.extend(above);
                s
            })
            .collect();
        let next = rank(&sig);
        let next_classes = count_distinct(&next);
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn rank(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("signature present"))
        .collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Order isomorphism between two posets, as a map from indices of `p` to
/// indices of `q`.
pub fn poset_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let cp = colours(p);
    let cq = colours(q);
    // refinement is deterministic, so an isomorphism preserves colours
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    // place the elements of p in order of rarest class first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (cp.iter().filter(|&&c| c == cp[i]).count(), cp[i], i));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        ok: &dyn Fn(usize, usize) -> bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        for j in 0..q.len() {
            if used[j] || !ok(i, j) {
                continue;
            }
            let consistent = order[..k].iter().all(|&e| {
                let f = map[e];
                p.leq(i, e) == q.leq(j, f) && p.leq(e, i) == q.leq(f, j)
            });
            if !consistent {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(k + 1, order, p, q, ok, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
    let ok = |i: usize, j: usize| cp[i] == cq[j];
    go(0, &order, p, q, &ok, &mut map, &mut used).then_some(map)
}

/// An order- and join-preserving bijection from `p` onto `q`, if any. For
/// join semilattices order isomorphisms preserve joins, so this is an order
/// search.
pub fn is_isomorphic(p: &JoinSemilattice, q: &JoinSemilattice) -> Option<Vec<usize>> {
    poset_isomorphism(p.poset(), q.poset())
}

/// Canonical labelling: the position order (position → element) selected by
/// the canonical-form search.
pub fn canonical_order(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let colour = colours(p);
    let mut slots: Vec<usize> = colour.clone();
    slots.sort_unstable();

    // rows[k] = bitmask over positions q ≤ k of `perm[q] ≤ perm[k]`,
    // highest bit = position 0, so numeric order is string order
    let mut best_rows: Vec<u64> = Vec::new();
    let mut best_perm: Vec<usize> = Vec::new();
    let mut rows = vec![0u64; n];
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];

    struct Search<'a> {
        p: &'a Poset,
        colour: &'a [usize],
        slots: &'a [usize],
    }

    fn go(
        s: &Search<'_>,
        k: usize,
        rows: &mut [u64],
        perm: &mut [usize],
        used: &mut [bool],
        best_rows: &mut Vec<u64>,
        best_perm: &mut Vec<usize>,
    ) {
        let n = s.p.len();
        if k == n {
            if best_rows.is_empty() || rows[..] < best_rows[..] {
                best_rows.clear();
                best_rows.extend_from_slice(rows);
                best_perm.clear();
                best_perm.extend_from_slice(perm);
            }
            return;
        }
        for e in 0..n {
            if used[e] || s.colour[e] != s.slots[k] {
                continue;
            }
            let mut row = 0u64;
            for (q, &pq) in perm[..k].iter().enumerate() {
                if s.p.leq(pq, e) {
                    row |= 1u64 << (63 - q);
                }
            }
            row |= 1u64 << (63 - k);
            rows[k] = row;
            if !best_rows.is_empty() && rows[..=k] > best_rows[..=k] {
                continue;
            }
            perm[k] = e;
            used[e] = true;
            go(s, k + 1, rows, perm, used, best_rows, best_perm);
            used[e] = false;
        }
    }

    let search = Search {
        p,
        colour: &colour,
        slots: &slots,
    };
    go(
        &search,
        0,
        &mut rows,
        &mut perm,
        &mut used,
        &mut best_rows,
        &mut best_perm,
    );
    best_perm
}

/// Row-major `0`/`1` string of the order matrix under the canonical
/// labelling. No size check.
pub fn poset_canonical_form(p: &Poset) -> String {
    let order = canonical_order(p);
    matrix_string(p, &order)
}

fn matrix_string(p: &Poset, order: &[usize]) -> String {
    let mut s = String::with_capacity(order.len() * order.len());
    for &i in order {
        for &j in order {
            s.push(if p.leq(i, j) { '1' } else { '0' });
        }
    }
    s
}

/// Isomorphism-class key: equal strings exactly when the structures are
/// isomorphic. Limited to [`CANONICAL_MAX`] elements.
pub fn canonical_form(s: &JoinSemilattice) -> Result<String> {
    canonical_form_with_limit(s, CANONICAL_MAX)
}

pub fn canonical_form_with_limit(s: &JoinSemilattice, max: usize) -> Result<String> {
    if s.len() > max {
        return Err(Error::SizeLimitExceeded { n: s.len(), max });
    }
    Ok(poset_canonical_form(s.poset()))
}

/// The structure relabelled into canonical position order, elements renamed
/// `e0`, `e1`, …, together with its canonical string.
pub fn canonical_representative(s: &JoinSemilattice) -> (String, JoinSemilattice) {
    let order = canonical_order(s.poset());
    let key = matrix_string(s.poset(), &order);
    let names = (0..s.len()).map(|i| format!("e{i}")).collect();
    let rep = s
        .reordered(&order)
        .renamed(names)
        .expect("fresh names are distinct");
    (key, rep)
}
