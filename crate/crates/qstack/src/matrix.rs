//! Dense matrices over a [`Scalar`] ring, stored row-major. Zero-by-anything
//! shapes are first-class: a `0 x n` matrix is the unique map out of the zero
//! space and participates in products, sums, and tensor products.

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            ring,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if s.ring() != ring {
                    return Err(Error::Ring(format!(
                        "entry ({i},{j}) lives over {}, expected {ring}",
                        s.ring()
                    )));
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            rows,
            cols,
            ring,
            entries,
        })
    }

    /// Builds from integer entries reduced into the ring.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_fn(ring, r, c, |i, j| Scalar::from_i64(ring, rows[i][j])).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        assert!(value.ring() == self.ring, "entry ring mismatch");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    fn check_ring(&self, rhs: &Matrix, op: &str) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::Ring(format!(
                "{op} of a {} matrix with a {} matrix",
                self.ring, rhs.ring
            )));
        }
        Ok(())
    }

    /// Schoolbook product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs, "product")?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j).add(&a.mul(rhs.get(k, j)));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs, "sum")?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "sum of {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: self.entries.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Matrix> {
        if lambda.ring() != self.ring {
            return Err(Error::Ring(format!(
                "scaling a {} matrix by a {} scalar",
                self.ring,
                lambda.ring()
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: self.entries.iter().map(|a| lambda.mul(a)).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product. The right factor's index runs fastest, so
    /// `kron(A, B)[(i*B.rows + k), (j*B.cols + l)] = A[i,j] * B[k,l]`.
    pub fn kron(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs, "tensor product")?;
        let mut out = Matrix::zeros(self.ring, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul(rhs.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `self (+) rhs`.
    pub fn direct_sum(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs, "direct sum")?;
        let mut out = Matrix::zeros(self.ring, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss-Jordan elimination with magnitude pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Matrix::identity(self.ring, n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&a, &b| {
                    work.get(a, col)
                        .magnitude()
                        .partial_cmp(&work.get(b, col).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if work.get(pivot_row, col).is_zero() {
                return Err(Error::Singular(format!("no pivot in column {col}")));
            }
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let scale = work.get(col, col).inv()?;
            work.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for row in 0..n {
                if row == col || work.get(row, col).is_zero() {
                    continue;
                }
                let factor = work.get(row, col).neg();
                work.add_scaled_row(col, row, &factor);
                inv.add_scaled_row(col, row, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, row: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(row, j).mul(factor);
            self.set(row, j, v);
        }
    }

    /// `target += factor * source`, rowwise.
    fn add_scaled_row(&mut self, source: usize, target: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(target, j).add(&factor.mul(self.get(source, j)));
            self.set(target, j, v);
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = Scalar::zero(self.ring);
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Frobenius norm through float magnitudes. Exact in meaning only for
    /// the float ring; elsewhere it is a diagnostic, not a ring operation.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let m = e.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of `self - rhs`; shapes must already agree.
    pub fn frobenius_distance(&self, rhs: &Matrix) -> f64 {
        self.sub(rhs).map(|d| d.frobenius_norm()).unwrap_or(f64::INFINITY)
    }

    /// Ring-aware equality: exact rings compare exactly, floats compare by
    /// Frobenius distance against `tol`.
    pub fn eq_within(&self, rhs: &Matrix, tol: f64) -> bool {
        if self.ring != rhs.ring || self.rows != rhs.rows || self.cols != rhs.cols {
            return false;
        }
        if self.ring.is_exact() {
            self == rhs
        } else {
            self.frobenius_distance(rhs) <= tol
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rand_matrix(ring: Ring, rows: usize, cols: usize, seed: &mut u64) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| {
            // Small xorshift keeps the oracle self-contained.
            *seed ^= *seed << 13;
            *seed ^= *seed >> 7;
            *seed ^= *seed << 17;
            Scalar::from_i64(ring, (*seed % 19) as i64 - 9)
        })
        .unwrap()
    }

    #[test]
    fn product_matches_by_hand_example() {
        let a = Matrix::from_i64(Ring::Rational, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(Ring::Rational, &[&[5, 6], &[7, 8]]);
        let expect = Matrix::from_i64(Ring::Rational, &[&[19, 22], &[43, 50]]);
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn zero_dimensional_shapes_compose() {
        let a = Matrix::zeros(Ring::Rational, 0, 3);
        let b = Matrix::zeros(Ring::Rational, 3, 0);
        let ab = a.mul(&Matrix::identity(Ring::Rational, 3)).unwrap();
        assert_eq!(ab.rows(), 0);
        assert_eq!(ab.cols(), 3);
        let ba = b.mul(&a).unwrap();
        assert_eq!((ba.rows(), ba.cols()), (3, 3));
        assert!(ba.is_zero());
        let empty = a.mul(&b).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert!(empty.is_identity());
    }

    #[test]
    fn kron_interchanges_with_product() {
        // (A (x) B)(C (x) D) = AC (x) BD over F7, random instances.
        let ring = Ring::Fp(7);
        let mut seed = 0x9e3779b97f4a7c15;
        for _ in 0..25 {
            let a = rand_matrix(ring, 2, 3, &mut seed);
            let c = rand_matrix(ring, 3, 2, &mut seed);
            let b = rand_matrix(ring, 2, 2, &mut seed);
            let d = rand_matrix(ring, 2, 3, &mut seed);
            let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kron_right_index_fastest() {
        let a = Matrix::from_i64(Ring::Rational, &[&[0, 1], &[2, 3]]);
        let id2 = Matrix::identity(Ring::Rational, 2);
        let k = a.kron(&id2).unwrap();
        // Entry (i*2+k, j*2+l) = a[i,j] * delta_{kl}.
        assert_eq!(k.get(0, 2), &Scalar::from_i64(Ring::Rational, 1));
        assert_eq!(k.get(1, 3), &Scalar::from_i64(Ring::Rational, 1));
        assert_eq!(k.get(0, 3), &Scalar::from_i64(Ring::Rational, 0));
        assert_eq!(k.get(2, 0), &Scalar::from_i64(Ring::Rational, 2));
    }

    #[test]
    fn inverse_over_each_ring() {
        for ring in [Ring::Fp(5), Ring::Rational, Ring::Float] {
            let m = Matrix::from_i64(ring, &[&[2, 1], &[1, 1]]);
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).unwrap().eq_within(&Matrix::identity(ring, 2), 1e-12));
            assert!(inv.mul(&m).unwrap().eq_within(&Matrix::identity(ring, 2), 1e-12));
        }
        let singular = Matrix::from_i64(Ring::Fp(5), &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_err());
    }

    proptest! {
        #[test]
        fn product_associates_mod7(seed in any::<u64>()) {
            let ring = Ring::Fp(7);
            let mut s = seed | 1;
            let a = rand_matrix(ring, 2, 3, &mut s);
            let b = rand_matrix(ring, 3, 2, &mut s);
            let c = rand_matrix(ring, 2, 2, &mut s);
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }
}
