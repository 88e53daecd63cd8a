// Copyright 2026 The qaclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Small dense complex linear algebra helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::numerics::{random_complex, SeededRng, Tolerance};

/// Singular values in decreasing order of a row-major `rows × cols` matrix.
pub fn singular_values(rows: usize, cols: usize, data: &[Complex64]) -> Vec<f64> {
    assert_eq!(data.len(), rows * cols);
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_row_slice(rows, cols, data);
    let mut s: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_eps·s₁ + abs_eps`.
pub fn numerical_rank(rows: usize, cols: usize, data: &[Complex64], tol: &Tolerance) -> usize {
    let s = singular_values(rows, cols, data);
    let Some(&s1) = s.first() else { return 0 };
    let cut = tol.threshold(s1);
    s.iter().filter(|&&x| x > cut).count()
}

/// Leading left and right singular vectors, scaled so that `M ≈ σ₁·u·vᴴ`.
pub fn top_singular_triplet(
    rows: usize,
    cols: usize,
    data: &[Complex64],
) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let m = DMatrix::from_row_slice(rows, cols, data);
    let svd = m.svd(true, true);
    let (idx, &sigma) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let left = u.column(idx).iter().copied().collect();
    // v_t holds vᴴ, so its row is already conjugated.
    let right = v_t.row(idx).iter().map(|z| z.conj()).collect();
    (sigma, left, right)
}

/// A nonzero null vector of the row-major `rows × cols` system, if one exists.
///
/// Gaussian elimination with partial pivoting; a pivot counts as zero when
/// its modulus is at most `tol.threshold(max entry)`. The last free column
/// is set to 1 and the result is normalized to unit length.
pub fn null_vector(
    rows: usize,
    cols: usize,
    data: &[Complex64],
    tol: &Tolerance,
) -> Option<Vec<Complex64>> {
    assert_eq!(data.len(), rows * cols);
    let mut a: Vec<Vec<Complex64>> = (0..rows)
        .map(|r| data[r * cols..(r + 1) * cols].to_vec())
        .collect();
    let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let cut = tol.threshold(scale);
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, mag) = (row..rows)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("row range nonempty");
        if mag <= cut {
            continue;
        }
        a.swap(row, best);
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = target[col] / pivot_row[col];
            if factor != Complex64::new(0.0, 0.0) {
                for (t, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                    *t -= factor * p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free = (0..cols).rev().find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    x[free] = Complex64::new(1.0, 0.0);
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[r][free] / a[r][pc];
    }
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Some(x.into_iter().map(|z| z / norm).collect())
}

/// Haar-random `dim × dim` unitary, row-major: QR of a complex Gaussian
/// matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary(dim: usize, rng: &mut SeededRng) -> Vec<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| random_complex(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    (0..dim * dim).map(|k| q[(k / dim, k % dim)]).collect()
}
