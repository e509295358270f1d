//! Exact dense linear algebra over a [`FieldElement`] field.
//!
//! Pivoting is deterministic: the leftmost column with a nonzero entry in the
//! remaining rows, taking the smallest row index holding such an entry.

use crate::field::{FieldElement, FieldSpec};

pub type Vector = Vec<FieldElement>;
pub type Matrix = Vec<Vector>;

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows end up at the bottom.
pub fn rref(rows: &mut [Vector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{ x : rows * x = 0 }`, one vector per free column, each with
/// a 1 in its free column.
pub fn nullspace(rows: &[Vector], ncols: usize, field: FieldSpec) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix by elimination.
pub fn det(matrix: &[Vector]) -> FieldElement {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "det needs a square matrix");
    let mut m = matrix.to_vec();
    let mut acc = m[0][0].one_like();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return acc.zero_like();
        };
        if pr != c {
            m.swap(pr, c);
            acc = -acc;
        }
        acc = &acc * &m[c][c];
        let inv = m[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..n {
                let d = &factor * &m[c][j];
                m[i][j] = &m[i][j] - &d;
            }
        }
    }
    acc
}

pub fn in_span(basis: &[Vector], v: &[FieldElement]) -> bool {
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == rank(basis)
}
