//! Dense exact matrices and fraction-free rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{CyclotomicNumber, Rational};
use crate::error::Error;

/// Entries of an integral domain in which the divisions performed by
/// fraction-free elimination are exact.
pub trait EliminationDomain: Clone {
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    /// `self / divisor`, where the quotient is known to lie in the domain.
    fn div_exact(&self, divisor: &Self) -> Self;
}

impl EliminationDomain for BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact Bareiss division");
        q
    }
}

impl EliminationDomain for CyclotomicNumber {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        self.div(divisor)
    }
}

/// Rank of a row-major `rows × cols` grid by Bareiss elimination.
///
/// Columns without a pivot are skipped; the remaining entries are still
/// minors of the original matrix, so every division stays exact.
pub fn bareiss_rank<T: EliminationDomain>(mut a: Vec<T>, rows: usize, cols: usize, one: T) -> usize {
    let mut prev = one;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero_elem()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = pivot
                    .mul_elem(&a[i * cols + j])
                    .sub_elem(&lead.mul_elem(&a[rank * cols + j]));
                a[i * cols + j] = v.div_exact(&prev);
            }
            // column c below the pivot is now eliminated; only j > c is read again
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, Error> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Submatrix keeping the listed columns in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn with_column(&self, v: &[T]) -> Self {
        Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                v[i].clone()
            }
        })
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl Matrix<Rational> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Rank over Q: clear denominators row by row, then eliminate over Z.
    pub fn rank(&self) -> usize {
        let mut ints = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row_slice(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            ints.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
        }
        bareiss_rank(ints, self.rows, self.cols, BigInt::one())
    }
}

impl Matrix<CyclotomicNumber> {
    pub fn rank(&self, order: u32) -> usize {
        bareiss_rank(
            self.data.clone(),
            self.rows,
            self.cols,
            CyclotomicNumber::one(order),
        )
    }
}

/// A matrix whose entries all come from one scalar domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Rational(Matrix<Rational>),
    Cyclotomic { order: u32, matrix: Matrix<CyclotomicNumber> },
}

/// Column vector counterpart of [`ExactMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactVector {
    Rational(Vec<Rational>),
    Cyclotomic { order: u32, entries: Vec<CyclotomicNumber> },
}

impl ExactVector {
    pub fn len(&self) -> usize {
        match self {
            ExactVector::Rational(v) => v.len(),
            ExactVector::Cyclotomic { entries, .. } => entries.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl ExactMatrix {
    pub fn rows(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rows(),
            ExactMatrix::Cyclotomic { matrix, .. } => matrix.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.cols(),
            ExactMatrix::Cyclotomic { matrix, .. } => matrix.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rank(),
            ExactMatrix::Cyclotomic { order, matrix } => matrix.rank(*order),
        }
    }

    /// Rank of the submatrix formed by `cols`.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.select_columns(cols).rank(),
            ExactMatrix::Cyclotomic { order, matrix } => {
                matrix.select_columns(cols).rank(*order)
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        match self {
            ExactMatrix::Rational(m) => ExactMatrix::Rational(m.select_columns(cols)),
            ExactMatrix::Cyclotomic { order, matrix } => ExactMatrix::Cyclotomic {
                order: *order,
                matrix: matrix.select_columns(cols),
            },
        }
    }

    pub fn column(&self, j: usize) -> ExactVector {
        match self {
            ExactMatrix::Rational(m) => ExactVector::Rational(m.column(j)),
            ExactMatrix::Cyclotomic { order, matrix } => ExactVector::Cyclotomic {
                order: *order,
                entries: matrix.column(j),
            },
        }
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        match self {
            ExactMatrix::Rational(m) => (0..m.rows()).all(|i| m.get(i, j).is_zero()),
            ExactMatrix::Cyclotomic { matrix, .. } => {
                (0..matrix.rows()).all(|i| matrix.get(i, j).is_zero())
            }
        }
    }
}

/// Rank of an exact matrix over the fraction field of its entries.
pub fn matrix_rank(a: &ExactMatrix) -> usize {
    a.rank()
}

/// Whether `v` lies in the column space of `a`.
pub fn in_span(v: &ExactVector, a: &ExactMatrix) -> Result<bool, Error> {
    if v.len() != a.rows() {
        return Err(Error::Shape(format!(
            "vector of length {} against matrix with {} rows",
            v.len(),
            a.rows()
        )));
    }
    match (v, a) {
        (ExactVector::Rational(v), ExactMatrix::Rational(m)) => {
            Ok(m.with_column(v).rank() == m.rank())
        }
        (
            ExactVector::Cyclotomic { order: vo, entries },
            ExactMatrix::Cyclotomic { order, matrix },
        ) if vo == order => Ok(matrix.with_column(entries).rank(*order) == matrix.rank(*order)),
        _ => Err(Error::DomainMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn basic_ranks() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::<Rational>::from_fn(0, 0, |_, _| Rational::zero()).rank(), 0);
        assert_eq!(Matrix::<Rational>::from_fn(3, 0, |_, _| Rational::zero()).rank(), 0);
        assert_eq!(qm(&[&[0, 0, 1], &[0, 0, 2], &[0, 1, 0]]).rank(), 2);
    }

    #[test]
    fn fractional_entries() {
        let m = Matrix::from_rows(
            vec![
                vec![Rational::new(1, 2).unwrap(), Rational::new(1, 3).unwrap()],
                vec![Rational::new(3, 2).unwrap(), Rational::from(1i64)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn span_examples() {
        let e = |i: usize| -> Vec<Rational> {
            (0..3).map(|j| Rational::from((i == j) as i64)).collect()
        };
        let a = ExactMatrix::Rational(
            Matrix::from_fn(3, 2, |i, j| Rational::from((i == j + 1) as i64)),
        );
        assert!(in_span(&ExactVector::Rational(vec![Rational::zero(); 3]), &a).unwrap());
        assert!(!in_span(&ExactVector::Rational(e(0)), &a).unwrap());
        let b = ExactMatrix::Rational(Matrix::from_fn(3, 2, |i, j| Rational::from((i == j) as i64)));
        let sum: Vec<Rational> = e(0).iter().zip(e(1)).map(|(x, y)| x + &y).collect();
        assert!(in_span(&ExactVector::Rational(sum), &b).unwrap());
    }

    #[test]
    fn domain_mismatch() {
        let a = ExactMatrix::Rational(Matrix::<Rational>::identity(2));
        let v = ExactVector::Cyclotomic {
            order: 3,
            entries: vec![CyclotomicNumber::one(3), CyclotomicNumber::zero(3)],
        };
        assert!(matches!(in_span(&v, &a), Err(Error::DomainMismatch)));
    }

    #[test]
    fn cyclotomic_rank() {
        // [1, ζ; ζ^2, 1] over Q(ζ_3): det = 1 - ζ^3 = 0
        let z = |e| CyclotomicNumber::root_power(3, e);
        let m = Matrix::from_rows(vec![vec![z(0), z(1)], vec![z(2), z(0)]], 2).unwrap();
        assert_eq!(m.rank(3), 1);
        let m = Matrix::from_rows(vec![vec![z(0), z(1)], vec![z(1), z(0)]], 2).unwrap();
        assert_eq!(m.rank(3), 2);
    }
}
