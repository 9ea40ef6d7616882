//! Dense integer matrices and the exact algorithms the lattice code needs:
//! fraction-free determinants, Hermite and Smith normal forms, integer kernels
//! and saturations.
//!
//! Storage is `i64`; every elimination runs in `i128` and converts back with
//! an overflow check. Ranks stay below ~25 in this crate, so entries remain
//! small.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Serialized as a list of rows.
impl serde::Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe empty row sets.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Principal submatrix on the given index set, in the given order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    fn to_wide(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect()
    }

    fn from_wide(rows: &[Vec<i128>], cols: usize) -> Result<IntMatrix> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            out.push(
                r.iter()
                    .map(|&x| i64::try_from(x).map_err(|_| overflow()))
                    .collect::<Result<Vec<i64>>>()?,
            );
        }
        IntMatrix::from_rows_with_cols(&out, cols)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.to_wide();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<i128> {
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.principal_submatrix(&idx).determinant()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon(self.to_wide(), self.cols, None).1.len()
    }

    /// Row-style Hermite normal form of the row lattice: nonzero rows only,
    /// positive pivots, entries above each pivot reduced into `[0, pivot)`.
    pub fn hermite(&self) -> Result<IntMatrix> {
        let (ech, pivots) = echelon(self.to_wide(), self.cols, None);
        Self::from_wide(&ech[..pivots.len()], self.cols)
    }

    /// Pivot columns of the Hermite form.
    pub fn hermite_pivots(&self) -> Vec<usize> {
        echelon(self.to_wide(), self.cols, None).1
    }

    /// A basis (as rows) of the integer kernel `{x in Z^cols : A x = 0}`,
    /// returned in Hermite normal form.
    pub fn kernel(&self) -> Result<IntMatrix> {
        let n = self.cols;
        let m = self.rows;
        // Reduce [A^T | I] on the first m columns; rows whose A^T part vanished
        // record a unimodular basis of the kernel.
        let at = self.transpose();
        let mut aug: Vec<Vec<i128>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut r: Vec<i128> = at.row(i).iter().map(|&x| x as i128).collect();
            r.extend((0..n).map(|j| i128::from(i == j)));
            aug.push(r);
        }
        let (ech, pivots) = echelon(aug, m + n, Some(m));
        let basis: Vec<Vec<i128>> = ech[pivots.len()..]
            .iter()
            .map(|r| r[m..].to_vec())
            .collect();
        let basis = IntMatrix::from_wide(&basis, n)?;
        basis.hermite().map(|h| {
            if h.rows == 0 {
                IntMatrix::zeros(0, n)
            } else {
                h
            }
        })
    }

    /// Saturation `(rowspace ⊗ Q) ∩ Z^cols` of the row lattice, as HNF rows.
    pub fn saturation(&self) -> Result<IntMatrix> {
        let k = self.kernel()?;
        if k.rows == 0 {
            return Ok(IntMatrix::identity(self.cols));
        }
        k.kernel()
    }

    /// Smith normal form diagonal `d_1 | d_2 | ... ` (length `min(rows, cols)`,
    /// zeros last), all entries non-negative.
    pub fn smith_diagonal(&self) -> Vec<i128> {
        smith_diagonal(self.to_wide(), self.rows, self.cols)
    }
}

fn overflow() -> Error {
    Error::Domain("integer overflow in exact matrix arithmetic".into())
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Floor division rounding toward negative infinity.
fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Integer row echelon form with Euclidean row operations. Only the first
/// `pivot_cols` columns (all when `None`) are eligible as pivots; the
/// remaining columns ride along. Returns the reduced matrix and pivot columns.
fn echelon(
    mut a: Vec<Vec<i128>>,
    cols: usize,
    pivot_cols: Option<usize>,
) -> (Vec<Vec<i128>>, Vec<usize>) {
    let limit = pivot_cols.unwrap_or(cols);
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..limit {
        if pr == rows {
            break;
        }
        loop {
            let best = (pr..rows)
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(b) = best else { break };
            a.swap(pr, b);
            let mut clean = true;
            for i in pr + 1..rows {
                if a[i][c] != 0 {
                    let q = a[i][c] / a[pr][c];
                    for j in 0..cols {
                        a[i][j] -= q * a[pr][j];
                    }
                    if a[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a[pr][c] == 0 {
            continue;
        }
        if a[pr][c] < 0 {
            for j in 0..cols {
                a[pr][j] = -a[pr][j];
            }
        }
        let p = a[pr][c];
        for i in 0..pr {
            let q = div_floor(a[i][c], p);
            if q != 0 {
                for j in 0..cols {
                    a[i][j] -= q * a[pr][j];
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (a, pivots)
}

fn smith_diagonal(mut m: Vec<Vec<i128>>, rows: usize, cols: usize) -> Vec<i128> {
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (m[t][t].abs(), t, t);
                for i in t + 1..rows {
                    if m[i][t] != 0 && m[i][t].abs() < best.0 {
                        best = (m[i][t].abs(), i, t);
                    }
                }
                for j in t + 1..cols {
                    if m[t][j] != 0 && m[t][j].abs() < best.0 {
                        best = (m[t][j].abs(), t, j);
                    }
                }
                let (_, bi, bj) = best;
                m.swap(t, bi);
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            let p = m[t][t];
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let mut diag: Vec<i128> = (0..n).map(|i| m[i][i].abs()).collect();
    // Restore the divisibility chain among the nonzero entries.
    let nz = diag.iter().take_while(|&&d| d != 0).count();
    for i in 0..nz {
        for j in i + 1..nz {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[2, 1], &[1, 2]]).determinant(), 3);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), -1);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), 0);
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), 1);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(m(&[&[2, 4], &[6, 8]]).smith_diagonal(), vec![2, 4]);
        assert_eq!(m(&[&[2, 0], &[0, 3]]).smith_diagonal(), vec![1, 6]);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).smith_diagonal(), vec![1, 0]);
    }

    #[test]
    fn kernel_and_saturation() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel().unwrap();
        assert_eq!(k.rows(), 1);
        assert_eq!(a.mul_vec(k.row(0)), vec![0, 0]);

        let s = m(&[&[2, 0], &[0, 2]]).saturation().unwrap();
        assert_eq!(s.hermite().unwrap(), IntMatrix::identity(2));

        let s = m(&[&[2, 2, 0]]).saturation().unwrap();
        assert_eq!(s.to_rows(), vec![vec![1, 1, 0]]);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(&[&[4, 6], &[2, 2]]);
        let b = m(&[&[2, 2], &[0, 2]]);
        assert_eq!(a.hermite().unwrap(), b.hermite().unwrap());
    }
}
