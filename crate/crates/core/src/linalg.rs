//! Dense linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    nrows: usize,
    ncols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    /// Builds a matrix from rows; returns `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>, ncols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != ncols) {
            return None;
        }
        let nrows = rows.len();
        Some(Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = S::one();
        }
        Matrix {
            nrows: n,
            ncols: n,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.ncols, other.nrows, "matrix shape mismatch");
        let mut data = Vec::with_capacity(self.nrows * other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = S::zero();
                for k in 0..self.ncols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Matrix {
            nrows: self.nrows,
            ncols: other.ncols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.ncols, v.len(), "matrix-vector shape mismatch");
        (0..self.nrows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn approx_eq(&self, other: &Matrix<S>) -> bool {
        self.nrows == other.nrows
            && self.ncols == other.ncols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    /// Determinant by elimination. Panics if not square.
    pub fn det(&self) -> S {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.nrows;
        let mut rows = self.rows();
        let mut det = S::one();
        for col in 0..n {
            let Some(piv) = best_pivot(&rows, col, col) else {
                return S::zero();
            };
            if piv != col {
                rows.swap(piv, col);
                det = -det;
            }
            let p = rows[col][col].clone();
            det = det * p.clone();
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = rows[r][col].clone() * p_inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = rows[r][c].clone() - factor.clone() * rows[col][c].clone();
                    rows[r][c] = v;
                }
            }
        }
        det
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<S>> {
        if !self.is_square() {
            return None;
        }
        let n = self.nrows;
        let augmented: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                row
            })
            .collect();
        let echelon = rref(augmented, 2 * n);
        if echelon.pivots.len() < n || echelon.pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let rows = echelon.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(rows, n)
    }
}

fn best_pivot<S: Scalar>(rows: &[Vec<S>], col: usize, start: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (r, row) in rows.iter().enumerate().skip(start) {
        let w = row[col].pivot_weight();
        if w > 0.0 && best.map_or(true, |(_, bw)| w > bw) {
            best = Some((r, w));
        }
    }
    best.map(|(r, _)| r)
}

/// Reduced row-echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub rows: Vec<Vec<S>>,
    pub pivots: Vec<usize>,
}

impl<S> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination. Zero rows are dropped; pivots are normalized to
/// one and cleared above and below, so the result is canonical for the row
/// space (exactly in `Q(i)`, up to tolerance in floating mode).
pub fn rref<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize) -> Echelon<S> {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        if lead == rows.len() {
            break;
        }
        let Some(piv) = best_pivot(&rows, col, lead) else {
            for row in rows.iter_mut().skip(lead) {
                row[col] = S::zero();
            }
            continue;
        };
        rows.swap(lead, piv);
        let inv = rows[lead][col].inv().expect("pivot is nonzero");
        for c in 0..ncols {
            let v = if c == col {
                S::one()
            } else {
                rows[lead][c].clone() * inv.clone()
            };
            rows[lead][c] = v;
        }
        for r in 0..rows.len() {
            if r == lead {
                continue;
            }
            let factor = rows[r][col].clone();
            if factor.pivot_weight() == 0.0 {
                rows[r][col] = S::zero();
                continue;
            }
            for c in 0..ncols {
                let v = if c == col {
                    S::zero()
                } else {
                    let v = rows[r][c].clone() - factor.clone() * rows[lead][c].clone();
                    if v.is_zero() {
                        S::zero()
                    } else {
                        v
                    }
                };
                rows[r][c] = v;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    rows.truncate(lead);
    Echelon { rows, pivots }
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).rank()
}

/// Basis of `{x : M x = 0}` read off the reduced echelon form: one vector per
/// free column, with a one in that column, in increasing column order.
pub fn null_space<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let echelon = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !echelon.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (row, &p) in echelon.rows.iter().zip(&echelon.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// `true` if `v` lies in the row space of `rows`.
pub fn in_row_space<S: Scalar>(rows: &[Vec<S>], v: &[S], ncols: usize) -> bool {
    let base = rank(rows, ncols);
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended, ncols) == base
}
