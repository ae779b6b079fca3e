//! Small dense complex matrices.
//!
//! Fixtures stay below ~30 labels, so everything here is plain row-major
//! storage with O(n^3) kernels: partial-pivot LU for inverse and determinant,
//! and a cyclic Jacobi sweep for Hermitian eigenproblems.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{Real, C};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<C<T>>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Option<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex::new(x, T::zero())).collect())
                .collect(),
        )
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

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C<T>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Largest entrywise difference and where it occurs.
    pub fn max_abs_diff(&self, other: &Self) -> (T, (usize, usize)) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut best = (T::zero(), (0, 0));
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - other[(i, j)]).norm();
                if d > best.0 {
                    best = (d, (i, j));
                }
            }
        }
        best
    }

    /// LU with partial pivoting. Returns the packed factors, the row
    /// permutation and the permutation parity, or `None` for an exactly zero
    /// pivot.
    fn lu(&self) -> Option<(Self, Vec<usize>, bool)> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let p =
                (k..n).max_by(|&x, &y| a[(x, k)].norm().partial_cmp(&a[(y, k)].norm()).unwrap())?;
            if a[(p, k)].is_zero() {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd = !odd;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * v;
                }
            }
        }
        Some((a, perm, odd))
    }

    pub fn determinant(&self) -> C<T> {
        match self.lu() {
            None => C::zero(),
            Some((lu, _, odd)) => {
                let d = (0..self.rows).fold(C::one(), |acc, i| acc * lu[(i, i)]);
                if odd {
                    -d
                } else {
                    d
                }
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let (lu, perm, _) = self.lu()?;
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            // Solve L U x = P e_col.
            let mut x: Vec<C<T>> = (0..n)
                .map(|i| if perm[i] == col { C::one() } else { C::zero() })
                .collect();
            for i in 0..n {
                for k in 0..i {
                    x[i] = x[i] - lu[(i, k)] * x[k];
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    x[i] = x[i] - lu[(i, k)] * x[k];
                }
                x[i] = x[i] / lu[(i, i)];
            }
            for (i, v) in x.into_iter().enumerate() {
                inv[(i, col)] = v;
            }
        }
        Some(inv)
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Returns eigenvalues (ascending) and the unitary matrix whose
    /// columns are the matching eigenvectors.
    pub fn hermitian_eigen(&self) -> (Vec<T>, Self) {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut v = Self::identity(n);
        let eps = T::epsilon();
        for _sweep in 0..100 {
            let off: T = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .fold(T::zero(), |s, (i, j)| s + a[(i, j)].norm_sqr());
            let scale = a.max_abs().max(T::min_positive_value());
            if off.sqrt() <= eps * scale * T::lit(n as f64) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= eps * scale * T::lit(1e-3) {
                        continue;
                    }
                    let phase = apq / mag;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let theta = (aqq - app) / (T::lit(2.0) * mag);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let t = if theta == T::zero() { T::one() } else { t };
                    let cs = T::one() / (t * t + T::one()).sqrt();
                    let sn = t * cs;
                    // J = I except J_pp = J_qq = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}.
                    let jpq = phase * sn;
                    let jqp = -phase.conj() * sn;
                    let cc = Complex::new(cs, T::zero());
                    // A <- A J
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * cc + akq * jqp;
                        a[(k, q)] = akp * jpq + akq * cc;
                    }
                    // A <- J^H A
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = cc * apk + jqp.conj() * aqk;
                        a[(q, k)] = jpq.conj() * apk + cc * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * cc + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * cc;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = Self::from_fn(n, n, |i, j| v[(i, order[j])]);
        (values, vectors)
    }

    pub fn map<U: Real>(&self, f: impl Fn(C<T>) -> C<U>) -> CMatrix<U> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

/// Integer matrix to complex.
pub fn from_integer_rows<T: Real>(rows: &[Vec<u32>]) -> CMatrix<T> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| {
        Complex::new(T::lit(rows[i][j] as f64), T::zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use proptest::prelude::*;

    fn m(rows: &[&[(f64, f64)]]) -> CMatrix<f64> {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| c(a, b)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_and_inverse_2x2() {
        let a = m(&[&[(1.0, 0.0), (2.0, 1.0)], &[(0.0, -1.0), (3.0, 0.0)]]);
        // det = 3 - (2+i)(-i) = 3 + 2i - 1 = 2 + 2i
        assert!((a.determinant() - c(2.0, 2.0)).norm() < 1e-14);
        let prod = a.matmul(&a.inverse().unwrap());
        assert!(prod.max_abs_diff(&CMatrix::identity(2)).0 < 1e-14);
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = m(&[&[(1.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (1.0, 0.0)]]);
        assert!(a.inverse().is_none());
        assert_eq!(a.determinant(), c(0.0, 0.0));
    }

    #[test]
    fn permutation_determinant_sign() {
        let p = m(&[&[(0.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]);
        assert!((p.determinant() + c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jacobi_on_complex_hermitian() {
        let h = m(&[
            &[(2.0, 0.0), (1.0, 1.0), (0.0, 0.5)],
            &[(1.0, -1.0), (0.0, 0.0), (0.3, 0.0)],
            &[(0.0, -0.5), (0.3, 0.0), (-1.0, 0.0)],
        ]);
        let (vals, vecs) = h.hermitian_eigen();
        let lambda = CMatrix::from_fn(
            3,
            3,
            |i, j| if i == j { c(vals[i], 0.0) } else { c(0.0, 0.0) },
        );
        let lhs = h.matmul(&vecs);
        let rhs = vecs.matmul(&lambda);
        assert!(lhs.max_abs_diff(&rhs).0 < 1e-12);
        assert!(
            vecs.adjoint()
                .matmul(&vecs)
                .max_abs_diff(&CMatrix::identity(3))
                .0
                < 1e-12
        );
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(entries in proptest::collection::vec(-3.0f64..3.0, 18)) {
            let a = CMatrix::from_fn(3, 3, |i, j| c(entries[3 * i + j], entries[9 + 3 * i + j]));
            prop_assume!(a.determinant().norm() > 1e-3);
            let inv = a.inverse().unwrap();
            prop_assert!(a.matmul(&inv).max_abs_diff(&CMatrix::identity(3)).0 < 1e-8);
            prop_assert!(inv.matmul(&a).max_abs_diff(&CMatrix::identity(3)).0 < 1e-8);
        }

        #[test]
        fn determinant_is_multiplicative(entries in proptest::collection::vec(-2.0f64..2.0, 16)) {
            let a = CMatrix::from_fn(2, 2, |i, j| c(entries[2 * i + j], entries[4 + 2 * i + j]));
            let b = CMatrix::from_fn(2, 2, |i, j| c(entries[8 + 2 * i + j], entries[12 + 2 * i + j]));
            let lhs = a.matmul(&b).determinant();
            let rhs = a.determinant() * b.determinant();
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}
