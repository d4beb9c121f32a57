//! Dense square real matrices, row-major. The universal currency of the
//! crate: small (n ≲ 50), always owned, no sparse storage.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A dense `n × n` real matrix with finite entries, stored row-major.
///
/// Serializes as `{"n": <dim>, "data": [<n·n row-major floats>]}`, the
/// crate's canonical interchange format.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    entries: Vec<f64>,
}

#[cfg(feature = "serde")]
impl serde::Serialize for RealMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RealMatrix", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("data", &self.entries)?;
        st.end()
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for RealMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            n: usize,
            data: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        RealMatrix::new(raw.n, raw.data).map_err(serde::de::Error::custom)
    }
}

/// Construction rejects the two representable invariant violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// `entries.len()` is not `n·n`, or `n == 0`.
    BadShape,
    /// An entry is NaN or infinite.
    NonFiniteEntry,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::BadShape => write!(f, "matrix data length does not match n*n or n == 0"),
            MatrixError::NonFiniteEntry => write!(f, "matrix entries must be finite"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MatrixError {}

impl RealMatrix {
    /// Builds an `n × n` matrix from row-major data.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if n == 0 || entries.len() != n * n {
            return Err(MatrixError::BadShape);
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(MatrixError::NonFiniteEntry);
        }
        Ok(Self { n, entries })
    }

    /// Builds from nested rows; all rows must have length `rows.len()`.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::BadShape);
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            entries.extend_from_slice(r);
        }
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `self - other`, entrywise.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            n: self.n,
            entries,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.entries.iter().fold(f64::INFINITY, |m, &e| m.min(e))
    }

    /// Induced infinity norm (max absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced 1-norm (max absolute column sum).
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.n {
            let mut s = 0.0;
            for i in 0..self.n {
                s += self[(i, j)].abs();
            }
            best = best.max(s);
        }
        best
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `self^k` by repeated multiplication, `k ≥ 0`.
    pub fn int_power(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// LU factorization with partial pivoting; fails on exact zero pivot.
    pub fn lu(&self) -> Option<Lu> {
        Lu::factor(self)
    }

    /// Determinant via LU; 0.0 when the factorization breaks down.
    pub fn det(&self) -> f64 {
        match self.lu() {
            Some(lu) => lu.det(),
            None => 0.0,
        }
    }

    /// Inverse via LU solves against the identity.
    pub fn inverse(&self) -> Option<Self> {
        let lu = self.lu()?;
        let n = self.n;
        let mut inv = Self::zeros(n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            col.iter_mut().for_each(|c| *c = 0.0);
            col[j] = 1.0;
            let x = lu.solve(&col);
            if x.iter().any(|v| !v.is_finite()) {
                return None;
            }
            for i in 0..n {
                inv[(i, j)] = x[i];
            }
        }
        Some(inv)
    }
}

impl core::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.n + j]
    }
}

/// Compact LU factorization with a row-permutation record.
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    fn factor(a: &RealMatrix) -> Option<Self> {
        let n = a.n;
        let mut lu = a.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        Some(Self { n, lu, perm, sign })
    }

    pub fn det(&self) -> f64 {
        let mut d = self.sign;
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            RealMatrix::new(2, vec![1.0, 2.0, 3.0]),
            Err(MatrixError::BadShape)
        );
        assert_eq!(RealMatrix::new(0, vec![]), Err(MatrixError::BadShape));
        assert_eq!(
            RealMatrix::new(1, vec![f64::NAN]),
            Err(MatrixError::NonFiniteEntry)
        );
    }

    #[test]
    fn multiply_and_power() {
        let a = RealMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let a3 = a.int_power(3);
        assert_eq!(a3[(0, 1)], 3.0);
        assert_eq!(a3[(0, 0)], 1.0);
    }

    #[test]
    fn lu_det_and_solve() {
        let a = RealMatrix::from_rows(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 2.0]])
            .unwrap();
        let lu = a.lu().unwrap();
        // det = 2*(6-1) - 1*(2-0) = 8
        assert!((lu.det() - 8.0).abs() < 1e-12);
        let x = lu.solve(&[1.0, 2.0, 3.0]);
        // residual check
        for i in 0..3 {
            let r: f64 = (0..3).map(|j| a[(i, j)] * x[j]).sum();
            assert!((r - [1.0, 2.0, 3.0][i]).abs() < 1e-12);
        }
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        assert!(prod.sub(&RealMatrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn singular_lu_fails() {
        let a = RealMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(a.lu().is_none());
        assert_eq!(a.det(), 0.0);
    }
}
