//! Dense linear algebra over `F_p` on row vectors.

use crate::exactalg::modp::{invmod, mulmod};

/// Reduces `m` in place to reduced row echelon form, drops zero rows and
/// returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = invmod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let f = other[col];
            for (v, &pv) in other.iter_mut().zip(&pivot_row) {
                *v = (*v + p - mulmod(f, pv, p)) % p;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

/// Basis (in reduced row echelon form) of `{x : x A = 0}`.
pub fn left_kernel(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut t: Vec<Vec<u64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j] % p).collect())
        .collect();
    let pivots = if t.is_empty() {
        Vec::new()
    } else {
        rref(&mut t, p)
    };
    let mut basis = Vec::new();
    for free in (0..rows).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; rows];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - t[r][free]) % p;
        }
        basis.push(v);
    }
    if !basis.is_empty() {
        rref(&mut basis, p);
    }
    basis
}

/// Row vector times matrix.
pub fn vec_mat(x: &[u64], m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; cols];
    for (xi, row) in x.iter().zip(m) {
        if *xi == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(row) {
            *o = (*o + mulmod(*xi, v, p)) % p;
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter().map(|r| vec_mat(r, b, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_map() {
        let a = vec![vec![1, 2], vec![2, 4], vec![0, 0]];
        let k = left_kernel(&a, 5);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(vec_mat(v, &a, 5).iter().all(|&x| x == 0));
        }
    }
}
