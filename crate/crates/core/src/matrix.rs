//! Small dense integer matrices and integral kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Row-major integer matrix. Ordering is lexicographic on `(rows, cols, data)`,
/// which gives group elements a canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = acc.checked_add(self[(i, k)].checked_mul(rhs[(k, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Some(out)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("integer overflow in matrix product")
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
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
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self[(i, j)]);
            }
        }
        IntMatrix::new(self.rows - 1, self.cols - 1, data)
    }

    /// Inverse of a matrix with determinant `+-1`, via the adjugate.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let n = self.rows;
        if n == 1 {
            return Some(self.clone());
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                out[(i, j)] = sign * d * self.minor(j, i).det();
            }
        }
        Some(out)
    }

    /// `g^{-T}`, the contragredient action on the dual lattice.
    pub fn dual(&self) -> Option<IntMatrix> {
        self.inverse_unimodular().map(|m| m.transpose())
    }

    pub fn checked_pow(&self, k: u64) -> Option<IntMatrix> {
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    /// Multiplicative order, searched up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.checked_mul(self)?;
        }
        None
    }

    /// Entries reduced into `0..modulus`.
    pub fn reduce_mod(&self, modulus: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.rem_euclid(modulus)).collect() }
    }

    pub fn mul_mod(&self, rhs: &IntMatrix, modulus: i64) -> IntMatrix {
        self.mul(rhs).reduce_mod(modulus)
    }

    /// Coefficients `[c0, c1, 1]` of `x^2 - tr x + det` for a 2x2 matrix.
    pub fn char_poly_2x2(&self) -> [i64; 3] {
        assert!(self.rows == 2 && self.cols == 2, "char_poly_2x2 on non-2x2 matrix");
        let tr = self[(0, 0)] + self[(1, 1)];
        [self.det(), -tr, 1]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, a) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Basis of the integral kernel `{v in Z^n : A v = 0}`.
///
/// Column operations bring `A` to column echelon form `A U` with `U`
/// unimodular; the columns of `U` beyond the pivots span the kernel, and the
/// span is saturated because `U` is invertible over the integers.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let (m, n) = (a.rows(), a.cols());
    let mut work: Vec<Vec<BigInt>> = (0..m).map(|i| a.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();

    // column j of a matrix stored as rows
    let col_op = |mat: &mut Vec<Vec<BigInt>>, p: usize, j: usize, c: [&BigInt; 4]| {
        for row in mat.iter_mut() {
            let (x, y) = (row[p].clone(), row[j].clone());
            row[p] = c[0] * &x + c[1] * &y;
            row[j] = c[2] * &x + c[3] * &y;
        }
    };

    let mut pivot = 0;
    for i in 0..m {
        if pivot == n {
            break;
        }
        for j in pivot + 1..n {
            if work[i][j].is_zero() {
                continue;
            }
            let (a_ip, a_ij) = (work[i][pivot].clone(), work[i][j].clone());
            let eg = a_ip.extended_gcd(&a_ij);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (bp, bj) = (&a_ij / &g, -(&a_ip / &g));
            // [[x, bp], [y, bj]] has determinant -1
            col_op(&mut work, pivot, j, [&x, &y, &bp, &bj]);
            col_op(&mut u, pivot, j, [&x, &y, &bp, &bj]);
        }
        if !work[i][pivot].is_zero() {
            pivot += 1;
        }
    }

    (pivot..n)
        .map(|j| {
            let mut v: Vec<BigInt> = (0..n).map(|i| u[i][j].clone()).collect();
            // make the first nonzero entry positive for reproducible output
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            v.into_iter().map(|x| x.to_i64().expect("kernel entry exceeds i64")).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let a = IntMatrix::from_rows(&[[1, -1], [1, 0]]);
        assert_eq!(a.det(), 1);
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = IntMatrix::from_rows(&[[2, 1, 0], [1, 1, 0], [0, 3, -1]]);
        assert_eq!(b.det(), -1);
        assert!(b.mul(&b.inverse_unimodular().unwrap()).is_identity());
        assert!(IntMatrix::from_rows(&[[2, 0], [0, 1]]).inverse_unimodular().is_none());
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).det(), -1);
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).det(), 0);
    }

    #[test]
    fn orders() {
        assert_eq!(IntMatrix::from_rows(&[[1, -1], [1, 0]]).order(100), Some(6));
        assert_eq!(IntMatrix::from_rows(&[[0, -1], [1, -1]]).order(100), Some(3));
        assert_eq!(IntMatrix::from_rows(&[[1, 1], [0, 1]]).order(100), None);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has primitive solution (2, 1)
        let a = IntMatrix::from_rows(&[[2, -4]]);
        assert_eq!(integer_kernel(&a), vec![vec![2, 1]]);
        // x + y + z = 0 in Z^3
        let a = IntMatrix::from_rows(&[[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(a.apply(v), vec![0]);
        }
        // full rank: trivial kernel
        assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
        // zero map: everything
        assert_eq!(integer_kernel(&IntMatrix::zeros(2, 2)).len(), 2);
    }
}
