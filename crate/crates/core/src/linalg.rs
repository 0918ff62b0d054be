//! Small dense matrices over the rationals.
//!
//! Sizes here are tiny (Lie algebra dimension or a matrix-group degree, both
//! single digits), so plain Gaussian elimination over exact rationals is the
//! right tool: no pivot growth concerns, no approximation.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SMat {
    n: usize,
    a: Vec<Scalar>,
}

impl SMat {
    pub fn identity(n: usize) -> SMat {
        let mut a = vec![Scalar::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = Scalar::one();
        }
        SMat { n, a }
    }

    pub fn zero(n: usize) -> SMat {
        SMat { n, a: vec![Scalar::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<SMat> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "expected a square matrix, got a row of length {} in a {n}-row matrix",
                    r.len()
                )));
            }
        }
        Ok(SMat { n, a: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.a[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == SMat::identity(self.n)
    }

    pub fn mul(&self, rhs: &SMat) -> Result<SMat> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.n, self.n, rhs.n, rhs.n)));
        }
        let n = self.n;
        let mut out = SMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let lik = self.get(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let add = lik * rhs.get(k, j);
                    let cur = out.get(i, j) + &add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Matrix applied to a coordinate column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.n {
            return Err(Error::Dimension(format!("{}x{} matrix applied to length-{} vector", self.n, self.n, v.len())));
        }
        let mut out = vec![Scalar::zero(); self.n];
        for i in 0..self.n {
            let mut acc = Scalar::zero();
            for j in 0..self.n {
                if !v[j].is_zero() {
                    acc += &(self.get(i, j) * &v[j]);
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Column `j` as a coordinate vector (the image of the j-th basis vector).
    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut m = self.a.clone();
        let at = |m: &Vec<Scalar>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !at(&m, r, col).is_zero());
            let Some(p) = pivot else { return Scalar::zero() };
            if p != col {
                for j in 0..n {
                    m.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            let pv = at(&m, col, col);
            det *= &pv;
            for r in (col + 1)..n {
                let factor = &at(&m, r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * &at(&m, col, j);
                    m[r * n + j] = &at(&m, r, j) - &sub;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination. `Err(Singular)` when the
    /// matrix has no inverse.
    pub fn inverse(&self) -> Result<SMat> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = SMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    m.a.swap(col * n + j, pivot * n + j);
                    inv.a.swap(col * n + j, pivot * n + j);
                }
            }
            let pv = m.get(col, col).clone();
            for j in 0..n {
                m.set(col, j, &m.get(col, j).clone() / &pv);
                inv.set(col, j, &inv.get(col, j).clone() / &pv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let mv = &m.get(r, j).clone() - &(&factor * m.get(col, j));
                    m.set(r, j, mv);
                    let iv = &inv.get(r, j).clone() - &(&factor * inv.get(col, j));
                    inv.set(r, j, iv);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for SMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Express `target` as a linear combination of `basis` (all same size).
/// Returns the coordinate vector, or `None` when `target` lies outside the
/// span or the basis is dependent (coordinates would not be unique).
pub fn solve_in_span(basis: &[SMat], target: &SMat) -> Option<Vec<Scalar>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let m = basis[0].size();
    if basis.iter().any(|b| b.size() != m) || target.size() != m {
        return None;
    }
    // Rows: one per matrix entry; columns: one per basis matrix, plus the
    // target as an augmented column.
    let rows = m * m;
    let cols = k + 1;
    let mut sys = vec![Scalar::zero(); rows * cols];
    for (bi, b) in basis.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                sys[(i * m + j) * cols + bi] = b.get(i, j).clone();
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            sys[(i * m + j) * cols + k] = target.get(i, j).clone();
        }
    }
    // Row reduction.
    let at = |s: &Vec<Scalar>, r: usize, c: usize| s[r * cols + c].clone();
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..rows).find(|&r| !at(&sys, r, col).is_zero()) else {
            // Dependent basis column: coordinates would not be unique.
            return None;
        };
        for c in 0..cols {
            sys.swap(row * cols + c, p * cols + c);
        }
        let pv = at(&sys, row, col);
        for c in col..cols {
            sys[row * cols + c] = &at(&sys, row, c) / &pv;
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let f = at(&sys, r, col);
            if f.is_zero() {
                continue;
            }
            for c in col..cols {
                let sub = &f * &at(&sys, row, c);
                sys[r * cols + c] = &at(&sys, r, c) - &sub;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: anything below the pivot rows must have zero in the
    // augmented column.
    for r in row..rows {
        if !at(&sys, r, k).is_zero() {
            return None;
        }
    }
    Some(pivot_rows.iter().map(|&r| at(&sys, r, k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> SMat {
        SMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn multiply_and_identity() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let id = SMat::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let b = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), mat(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn inverse_exact() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        assert_eq!(*inv.get(0, 0), Scalar::from_int(-2));
        assert_eq!(*inv.get(0, 1), Scalar::one());
        assert_eq!(*inv.get(1, 0), Scalar::ratio(3, 2));
        assert_eq!(*inv.get(1, 1), Scalar::ratio(-1, 2));
        let sing = mat(&[&[1, 2], &[2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn determinant() {
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).det(), Scalar::from_int(-2));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).det(), Scalar::zero());
        assert_eq!(SMat::identity(3).det(), Scalar::one());
        let u = mat(&[&[1, 5, 7], &[0, 1, 9], &[0, 0, 1]]);
        assert_eq!(u.det(), Scalar::one());
    }

    #[test]
    fn span_coordinates() {
        // e12, e23, e13 inside strictly upper triangular 3x3.
        let e12 = mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e23 = mat(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e13 = mat(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let basis = vec![e12.clone(), e23.clone(), e13.clone()];
        let target = mat(&[&[0, 2, -5], &[0, 0, 3], &[0, 0, 0]]);
        let coords = solve_in_span(&basis, &target).unwrap();
        assert_eq!(coords, vec![Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(-5)]);
        // Outside the span.
        let bad = mat(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(solve_in_span(&basis, &bad).is_none());
        // Dependent basis is rejected.
        let dep = vec![e12.clone(), e12.clone()];
        assert!(solve_in_span(&dep, &e12).is_none());
    }
}
