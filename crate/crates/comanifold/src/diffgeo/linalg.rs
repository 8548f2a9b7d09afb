//! Small dense linear algebra for metric and norm checks.

use alloc::vec::Vec;

use num_traits::Float;

use super::DiffGeoError;

/// Inverts a square matrix by Gauss-Jordan elimination with partial
/// pivoting. A pivot below `tol` in absolute value reports the matrix as
/// not invertible.
pub(crate) fn invert(matrix: &[Vec<f64>], tol: f64) -> Result<Vec<Vec<f64>>, DiffGeoError> {
    let n = matrix.len();
    let mut work: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (r, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(DiffGeoError::ShapeMismatch);
        }
        let mut wide = alloc::vec![0.0; 2 * n];
        wide[..n].copy_from_slice(row);
        wide[n + r] = 1.0;
        work.push(wide);
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                Float::abs(work[a][col])
                    .partial_cmp(&Float::abs(work[b][col]))
                    .expect("pivot entries are finite")
            })
            .expect("non-empty column range");
        if Float::abs(work[pivot_row][col]) < tol {
            return Err(DiffGeoError::NotInvertible);
        }
        work.swap(col, pivot_row);
        let pivot = work[col][col];
        for x in work[col].iter_mut() {
            *x /= pivot;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = work[row][col];
            if factor == 0.0 {
                continue;
            }
            let (pivot_row_data, target) = if row < col {
                let (head, tail) = work.split_at_mut(col);
                (&tail[0], &mut head[row])
            } else {
                let (head, tail) = work.split_at_mut(row);
                (&head[col], &mut tail[0])
            };
            for (t, p) in target.iter_mut().zip(pivot_row_data) {
                *t -= factor * p;
            }
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub(crate) fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Result<Vec<f64>, DiffGeoError> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(n);
    for row in matrix {
        if row.len() != n {
            return Err(DiffGeoError::ShapeMismatch);
        }
        a.push(row.clone());
    }
    for sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 || sweep == 63 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if Float::abs(a[p][q]) < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + Float::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + Float::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / Float::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eigenvalues)
}

/// A dense `d x d x d` real array `T[c][a][b]`, used for connection
/// coefficients (`c` the output index, `b` the direction) and torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct Coeffs3 {
    d: usize,
    data: Vec<f64>,
}

impl Coeffs3 {
    pub fn zeros(d: usize) -> Self {
        Coeffs3 {
            d,
            data: alloc::vec![0.0; d * d * d],
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.data[(c * self.d + a) * self.d + b]
    }

    pub fn set(&mut self, c: usize, a: usize, b: usize, value: f64) {
        self.data[(c * self.d + a) * self.d + b] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(Float::abs(x)))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Coeffs3) -> f64 {
        assert_eq!(self.d, other.d, "coefficient arrays differ in dimension");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (&x, &y)| m.max(Float::abs(x - y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_a_small_matrix() {
        let m = alloc::vec![alloc::vec![4.0, 7.0], alloc::vec![2.0, 6.0]];
        let inv = invert(&m, 1e-12).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut entry = 0.0;
                for k in 0..2 {
                    entry += m[i][k] * inv[k][j];
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((entry - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_singular_matrices() {
        let m = alloc::vec![alloc::vec![1.0, 2.0], alloc::vec![2.0, 4.0]];
        assert_eq!(invert(&m, 1e-12), Err(DiffGeoError::NotInvertible));
    }

    #[test]
    fn eigenvalues_of_a_known_matrix() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let m = alloc::vec![alloc::vec![2.0, 1.0], alloc::vec![1.0, 2.0]];
        let eig = symmetric_eigenvalues(&m).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-10);
        assert!((eig[1] - 3.0).abs() < 1e-10);

        let diag = alloc::vec![
            alloc::vec![5.0, 0.0, 0.0],
            alloc::vec![0.0, -2.0, 0.0],
            alloc::vec![0.0, 0.0, 0.5],
        ];
        let eig = symmetric_eigenvalues(&diag).unwrap();
        assert!((eig[0] + 2.0).abs() < 1e-12);
        assert!((eig[1] - 0.5).abs() < 1e-12);
        assert!((eig[2] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn coeffs3_indexing_round_trips() {
        let mut t = Coeffs3::zeros(3);
        t.set(2, 0, 1, 7.5);
        assert_eq!(t.get(2, 0, 1), 7.5);
        assert_eq!(t.get(1, 0, 2), 0.0);
        assert_eq!(t.max_abs(), 7.5);
        assert!(t.is_finite());
    }
}
