//! Dense kernels for the tiny (≤ MAX_DIM) systems that appear per face.

use crate::MAX_DIM;

pub(crate) type Square = [[f64; MAX_DIM]; MAX_DIM];

/// Determinant of the leading `n×n` block by partial-pivot elimination.
/// Destroys `a`.
pub(crate) fn det_in_place(a: &mut Square, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col][col].abs();
        for (row, r) in a.iter().enumerate().take(n).skip(col + 1) {
            if r[col].abs() > best {
                best = r[col].abs();
                piv = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f != 0.0 {
                for c in col + 1..n {
                    a[row][c] -= f * a[col][c];
                }
            }
        }
    }
    det
}

/// Solves the leading `n×n` system `a x = b` in place (`b` becomes `x`).
/// Returns `false` when a pivot falls below `rel_tol` times the largest
/// diagonal magnitude.
pub(crate) fn solve_in_place(a: &mut Square, b: &mut [f64; MAX_DIM], n: usize, rel_tol: f64) -> bool {
    let scale = (0..n).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return n == 0;
    }
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col][col].abs();
        for (row, r) in a.iter().enumerate().take(n).skip(col + 1) {
            if r[col].abs() > best {
                best = r[col].abs();
                piv = row;
            }
        }
        if best <= rel_tol * scale {
            return false;
        }
        if piv != col {
            a.swap(piv, col);
            b.swap(piv, col);
        }
        let p = a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f != 0.0 {
                for c in col + 1..n {
                    a[row][c] -= f * a[col][c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * b[c];
        }
        b[row] = s / a[row][row];
    }
    true
}
