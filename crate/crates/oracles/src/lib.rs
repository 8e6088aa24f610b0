//! Slow, direct reference implementations for cross-checking `jsl-core`.
//!
//! Everything here works on raw `n × n` order matrices (`m[i][j]` means
//! `i ≤ j`) and recomputes every bound, join and isomorphism class by plain
//! scanning. Nothing is shared with the library under test.

use std::collections::BTreeSet;

pub type Matrix = Vec<Vec<bool>>;

fn n_of(m: &Matrix) -> usize {
    m.len()
}

pub fn is_partial_order(m: &Matrix) -> bool {
    let n = n_of(m);
    for i in 0..n {
        if !m[i][i] {
            return false;
        }
        for j in 0..n {
            if i != j && m[i][j] && m[j][i] {
                return false;
            }
            for k in 0..n {
                if m[i][j] && m[j][k] && !m[i][k] {
                    return false;
                }
            }
        }
    }
    true
}

/// Least upper bound of `i` and `j` by scanning all common upper bounds.
pub fn lub(m: &Matrix, i: usize, j: usize) -> Option<usize> {
    let n = n_of(m);
    let ub: Vec<usize> = (0..n).filter(|&u| m[i][u] && m[j][u]).collect();
    ub.iter().copied().find(|&u| ub.iter().all(|&w| m[u][w]))
}

/// Greatest lower bound by scanning.
pub fn glb(m: &Matrix, i: usize, j: usize) -> Option<usize> {
    let n = n_of(m);
    let lb: Vec<usize> = (0..n).filter(|&l| m[l][i] && m[l][j]).collect();
    lb.iter().copied().find(|&l| lb.iter().all(|&w| m[w][l]))
}

pub fn is_join_semilattice(m: &Matrix) -> bool {
    let n = n_of(m);
    (0..n).all(|i| (0..n).all(|j| lub(m, i, j).is_some()))
}

pub fn is_lattice(m: &Matrix) -> bool {
    let n = n_of(m);
    is_join_semilattice(m) && (0..n).all(|i| (0..n).all(|j| glb(m, i, j).is_some()))
}

/// `{x : x ≤ y for every y in ys}`.
pub fn lower(m: &Matrix, ys: &[usize]) -> Vec<usize> {
    (0..n_of(m)).filter(|&x| ys.iter().all(|&y| m[x][y])).collect()
}

/// `{x : x ≥ y for every y in ys}`.
pub fn upper(m: &Matrix, ys: &[usize]) -> Vec<usize> {
    (0..n_of(m)).filter(|&x| ys.iter().all(|&y| m[y][x])).collect()
}

/// First `(a, b, c)` in lexicographic order with `c ≤ a` for which
/// `L(a, b∨c) ⊄ L U (L(a, b) ∪ {c})`. `None` means o-modular.
pub fn omodular_violation(m: &Matrix) -> Option<(usize, usize, usize)> {
    let n = n_of(m);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !m[c][a] {
                    continue;
                }
                let bc = lub(m, b, c).expect("join semilattice");
                let left = lower(m, &[a, bc]);
                let mut y = lower(m, &[a, b]);
                y.push(c);
                let right = lower(m, &upper(m, &y));
                if left.iter().any(|x| !right.contains(x)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// First `(a, b, c)` with `c ≤ a` breaking the modular law; lattices only.
pub fn modular_violation(m: &Matrix) -> Option<(usize, usize, usize)> {
    let n = n_of(m);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !m[c][a] {
                    continue;
                }
                let lhs = glb(m, a, lub(m, b, c).unwrap()).unwrap();
                let rhs = lub(m, glb(m, a, b).unwrap(), c).unwrap();
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Heap's algorithm over all permutations of `items`.
fn for_each_permutation(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn matrix_string(m: &Matrix, perm: &[usize]) -> String {
    let mut s = String::new();
    for &i in perm {
        for &j in perm {
            s.push(if m[i][j] { '1' } else { '0' });
        }
    }
    s
}

fn min_over(m: &Matrix, fixed_front: &[usize], movable: &[usize], fixed_back: &[usize]) -> String {
    let n = n_of(m);
    assert!(n <= 8, "brute canonical form packs into 64 bits");
    let mut best = u64::MAX;
    let mut best_perm = Vec::new();
    let mut inner = movable.to_vec();
    for_each_permutation(&mut inner, &mut |p| {
        let perm: Vec<usize> = fixed_front
            .iter()
            .chain(p.iter())
            .chain(fixed_back.iter())
            .copied()
            .collect();
        let mut bits = 0u64;
        for &i in &perm {
            for &j in &perm {
                bits = (bits << 1) | m[i][j] as u64;
            }
        }
        if bits < best || best_perm.is_empty() {
            best = bits;
            best_perm = perm;
        }
    });
    matrix_string(m, &best_perm)
}

/// Least row-major order string over all `n!` relabellings.
pub fn brute_canonical(m: &Matrix) -> String {
    let all: Vec<usize> = (0..n_of(m)).collect();
    min_over(m, &[], &all, &[])
}

/// Canonical string of a bounded poset with the bottom first and the top
/// last, permuting only the inner elements.
pub fn bounded_canonical(m: &Matrix) -> String {
    let n = n_of(m);
    let bottom = (0..n).find(|&b| (0..n).all(|j| m[b][j])).expect("bottom");
    let top = (0..n).find(|&t| (0..n).all(|j| m[j][t])).expect("top");
    if n == 1 {
        return "1".into();
    }
    let inner: Vec<usize> = (0..n).filter(|&i| i != bottom && i != top).collect();
    min_over(m, &[bottom], &inner, &[top])
}

/// All partial orders on `n` points in which `i ≤ j` implies index `i ≤ j`.
/// Every finite poset has at least one such labelling.
pub fn naturally_labelled_orders(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                m[i][j] = true;
            }
        }
        if is_partial_order(&m) {
            out.push(m);
        }
    }
    out
}

/// Isomorphism classes of `n`-element join semilattices: filter the
/// naturally labelled orders, then brute-force canonicalize.
pub fn jsl_classes_direct(n: usize) -> BTreeSet<String> {
    naturally_labelled_orders(n)
        .into_iter()
        .filter(is_join_semilattice)
        .map(|m| brute_canonical(&m))
        .collect()
}

/// Isomorphism classes of `size`-element lattices, keyed by
/// [`bounded_canonical`]. Element 0 is the bottom, `size − 1` the top, and
/// the inner elements range over every naturally labelled order.
pub fn lattice_classes(size: usize) -> BTreeSet<String> {
    match size {
        0 => return BTreeSet::new(),
        1 => return ["1".to_string()].into_iter().collect(),
        _ => {}
    }
    let inner = size - 2;
    naturally_labelled_orders(inner)
        .into_iter()
        .map(|core| {
            let mut m = vec![vec![false; size]; size];
            m[0].fill(true);
            for (i, row) in m.iter_mut().enumerate() {
                row[size - 1] = true;
                row[i] = true;
            }
            for i in 0..inner {
                for j in 0..inner {
                    m[i + 1][j + 1] = core[i][j];
                }
            }
            m
        })
        .filter(is_lattice)
        .map(|m| bounded_canonical(&m))
        .collect()
}

/// A new least element placed at index 0.
pub fn adjoin_bottom(m: &Matrix) -> Matrix {
    let n = n_of(m);
    let mut out = vec![vec![false; n + 1]; n + 1];
    out[0].fill(true);
    for i in 0..n {
        for j in 0..n {
            out[i + 1][j + 1] = m[i][j];
        }
    }
    out
}

/// Up-closure of `seeds` in `m`.
pub fn up_closure(m: &Matrix, seeds: &[usize]) -> Vec<usize> {
    (0..n_of(m))
        .filter(|&u| seeds.iter().any(|&s| m[s][u]))
        .collect()
}

/// Adjoins a new minimal element (last index) whose strict up-set is `up`.
pub fn adjoin_below(m: &Matrix, up: &[usize]) -> Matrix {
    let n = n_of(m);
    let mut out = vec![vec![false; n + 1]; n + 1];
    for i in 0..n {
        out[i][..n].copy_from_slice(&m[i]);
    }
    out[n][n] = true;
    for &u in up {
        out[n][u] = true;
    }
    out
}

/// A join semilattice grown from the singleton by repeatedly adjoining a
/// minimal element. Each choice picks seed elements by bitmask; when their
/// up-closure does not give a join semilattice the principal up-set of the
/// lowest seed is used instead.
pub fn grow(choices: &[u64]) -> Matrix {
    let mut m: Matrix = vec![vec![true]];
    for &c in choices {
        let n = n_of(&m);
        let mut seeds: Vec<usize> = (0..n).filter(|&i| c >> i & 1 == 1).collect();
        if seeds.is_empty() {
            seeds.push((c % n as u64) as usize);
        }
        let candidate = adjoin_below(&m, &up_closure(&m, &seeds));
        m = if is_join_semilattice(&candidate) {
            candidate
        } else {
            adjoin_below(&m, &up_closure(&m, &seeds[..1]))
        };
    }
    m
}

/// Strength flags `(semi-strong, strictly strong, LU-strong)` of `t`,
/// where LU-strong includes semi-strong.
pub fn strength(m: &Matrix, t: &[usize]) -> (bool, bool, bool) {
    let (mut semi, mut strict, mut lu) = (true, true, true);
    for &p in t {
        for &q in t {
            let ambient = lower(m, &[p, q]);
            let inside: Vec<usize> = ambient.iter().copied().filter(|z| t.contains(z)).collect();
            if inside.is_empty() && !ambient.is_empty() {
                semi = false;
            }
            if ambient.iter().any(|z| !inside.contains(z)) {
                strict = false;
            }
            let closure = lower(m, &upper(m, &inside));
            if ambient.iter().any(|z| !closure.contains(z)) {
                lu = false;
            }
        }
    }
    (semi, strict, lu && semi)
}

/// M2: `a < c < top`, `b < top`, as `(lower, upper)` over roles 0..4.
pub const M2_ORDER: &[(usize, usize)] = &[(0, 1), (0, 3), (1, 3), (2, 3)];
/// M4: `v < a < c < top`, `v < b < top` over roles 0..5.
pub const M4_ORDER: &[(usize, usize)] =
    &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)];

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

/// Member sets (sorted) of every join-closed subset order-isomorphic to the
/// template given by `order` on `k` roles, with strength flags.
pub fn embeddings(
    m: &Matrix,
    k: usize,
    order: &[(usize, usize)],
) -> Vec<(Vec<usize>, (bool, bool, bool))> {
    let n = n_of(m);
    let tleq = |r: usize, s: usize| r == s || order.contains(&(r, s));
    let mut out = Vec::new();
    for members in combinations(n, k) {
        let closed = members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| members.contains(&lub(m, i, j).unwrap()))
        });
        if !closed {
            continue;
        }
        let mut found = false;
        let mut roles = members.clone();
        for_each_permutation(&mut roles, &mut |r| {
            if (0..k).all(|x| (0..k).all(|y| m[r[x]][r[y]] == tleq(x, y))) {
                found = true;
            }
        });
        if found {
            let st = strength(m, &members);
            out.push((members, st));
        }
    }
    out
}
