//! Exact linear algebra over the rationals.
//!
//! Rows are cleared to integers first and then reduced with fraction-free
//! (Bareiss) elimination, so every intermediate entry is an integer minor
//! of the input and coefficient growth stays polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Integer row-echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    /// Nonzero rows; row `k` has its pivot at `pivots[k]`.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_scalars(rows: &[Vec<Scalar>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.as_rational()
                            .cloned()
                            .ok_or_else(|| Error::Precondition("rational matrix expected".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("inner dimensions differ".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
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

    /// Clears denominators row by row.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let den = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let mut a = self.integer_rows();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pv = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let num = &pv * &row[j] - &lead * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss step must divide exactly");
                    row[j] = q;
                }
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            cols: self.cols,
            rows: a,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one primitive integer vector per free
    /// column (the free coordinate set to a positive value).
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        self.echelon().nullspace()
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
                let s: BigRational = row
                    .iter()
                    .enumerate()
                    .skip(pc + 1)
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(j, a)| BigRational::from_integer(a.clone()) * &x[j])
                    .sum();
                x[pc] = -s / BigRational::from_integer(row[pc].clone());
            }
            basis.push(primitive(x));
        }
        basis
    }
}

/// Scales a rational vector to a primitive integer vector whose last
/// nonzero entry is positive.
pub fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = v.iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
    if num.is_zero() {
        return v;
    }
    let mut f = BigRational::new(den, num);
    if v.iter()
        .rev()
        .find(|q| !q.is_zero())
        .is_some_and(|q| q.is_negative())
    {
        f = -f;
    }
    v.into_iter().map(|q| q * &f).collect()
}

/// Determinant of a square polynomial matrix by fraction-free elimination
/// with exact polynomial division.
pub fn poly_determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    let (arity, domain) = (first.arity(), first.domain());
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut prev = MultiPoly::one(arity, domain);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(MultiPoly::zero(arity, domain));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k]
                    .try_mul(&a[i][j])?
                    .try_sub(&a[i][k].try_mul(&a[k][j])?)?;
                a[i][j] = num.exact_div(&prev)?.ok_or_else(|| Error::Certification {
                    stage: "bareiss",
                    detail: "inexact division".into(),
                })?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.nullspace();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
        assert_eq!(k[0], vec![q(-1), q(-1), q(1)]);
    }

    #[test]
    fn skipped_columns_stay_exact() {
        let m = Matrix::from_i64(&[
            vec![0, 2, 4, 1, 3],
            vec![0, 1, 2, 5, 7],
            vec![0, 3, 6, 2, 9],
            vec![0, 0, 0, 4, 8],
        ]);
        let e = m.echelon();
        assert_eq!(e.pivots, vec![1, 3, 4]);
        for v in m.nullspace() {
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_rows() {
        let m = Matrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(1), q(2)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn polynomial_determinant() {
        let x = |i| MultiPoly::var(2, i);
        let m = vec![vec![x(0), x(1)], vec![x(1), x(0)]];
        assert_eq!(poly_determinant(&m).unwrap(), &x(0).pow(2) - &x(1).pow(2));
        let swap = vec![
            vec![MultiPoly::zero(2, crate::Domain::Rational), x(0)],
            vec![x(1), x(0)],
        ];
        assert_eq!(poly_determinant(&swap).unwrap(), -(&x(0) * &x(1)));
    }
}
