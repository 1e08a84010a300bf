//! Dense matrices over exact scalars (integers and rationals).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Argument("empty matrix".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged rows".into()));
        }
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(r, k) * other.get(k, c);
            }
            acc
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Exact determinant via rational Gaussian elimination. This is kept
    /// independent of the Smith normal form code so it can serve as an
    /// oracle for elementary-divisor identities.
    pub fn det(&self) -> Result<BigInt> {
        let d = self.to_rational().det()?;
        debug_assert!(d.is_integer());
        Ok(d.to_integer())
    }
}

impl Matrix<BigRational> {
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Argument("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot else {
                return Ok(BigRational::zero());
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                let factor = m.get(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// True when every entry has p-adic valuation >= 0 (denominator prime
    /// to p).
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.data
            .iter()
            .all(|x| !x.denom().is_multiple_of(&p))
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for x in &self.data {
            l = l.lcm(x.denom());
        }
        l
    }

    /// Clears denominators: returns `(scale, integer matrix)` with
    /// `integer = scale * self` entrywise.
    pub fn clear_denominators(&self) -> (BigInt, Matrix<BigInt>) {
        let l = self.denominator_lcm();
        let scaled = self.map(|x| {
            let v = x * BigRational::from_integer(l.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        });
        (l, scaled)
    }
}

use num_integer::Integer;

impl fmt::Debug for Matrix<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrices serialize row-major as arrays of arrays of decimal strings.
impl Serialize for Matrix<BigInt> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix<BigInt> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        let parsed: std::result::Result<Vec<Vec<BigInt>>, _> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<BigInt>()).collect())
            .collect();
        let parsed = parsed.map_err(|e| D::Error::custom(format!("bad integer: {e}")))?;
        Matrix::from_rows(parsed).map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Serialize for Matrix<BigRational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        let v = self.get(r, c);
                        format!("{}/{}", v.numer(), v.denom())
                    })
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix<BigRational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                out.push(crate::ser::rational_from_str(s).map_err(|e| D::Error::custom(e.to_string()))?);
            }
            parsed.push(out);
        }
        Matrix::from_rows(parsed).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(6));
        let m = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(0));
        let m = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn empty_rejected() {
        assert!(Matrix::<BigInt>::from_rows(vec![]).is_err());
    }

    #[test]
    fn mul_identity() {
        let m = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let id = Matrix::<BigInt>::identity(2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }
}
