#![allow(dead_code)]

use jsl_core::enumerate::{enum_levels, EnumConfig};
use jsl_core::{JoinSemilattice, Poset};
use jsl_oracles::Matrix;

pub fn to_jsl(m: &Matrix) -> JoinSemilattice {
    let names = (0..m.len()).map(|i| format!("e{i}")).collect();
    JoinSemilattice::from_poset(Poset::from_matrix(names, m).expect("order")).expect("jsl")
}

/// Relabels so that new element `p` is old element `perm[p]`.
pub fn permute(m: &Matrix, perm: &[usize]) -> Matrix {
    perm.iter()
        .map(|&i| perm.iter().map(|&j| m[i][j]).collect())
        .collect()
}

/// Every join semilattice of size `1..=n`, one per class, with its matrix.
pub fn all_up_to(n: usize) -> Vec<(JoinSemilattice, Matrix)> {
    enum_levels(n, EnumConfig::default())
        .unwrap()
        .into_iter()
        .flatten()
        .map(|r| {
            let m = r.structure.poset().matrix();
            (r.structure, m)
        })
        .collect()
}

/// A deterministic non-identity permutation of `0..n`.
pub fn shuffle(n: usize, salt: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (i * 7 + salt * 13 + 3) % (i + 1);
        p.swap(i, j);
    }
    p
}
