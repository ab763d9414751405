//! Exact dense and sparse linear algebra.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
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

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, G: Fn(&T) -> U>(&self, f: G) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn is_identity(&self) -> bool
    where
        T: PartialEq,
    {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }
}

impl<T> DenseMatrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        DenseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<F: Field> DenseMatrix<F> {
    /// Rank by Gaussian elimination over `F`.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inverse().expect("nonzero pivot");
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = row[col].clone() * inv.clone();
                    for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x = x.clone() - factor.clone() * y.clone();
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = Self::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            b.swap(col, p);
            let inv = a[col][col].inverse()?;
            for c in 0..n {
                a[col][c] = a[col][c].clone() * inv.clone();
                b[col][c] = b[col][c].clone() * inv.clone();
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..n {
                        let da = factor.clone() * a[col][c].clone();
                        let db = factor.clone() * b[col][c].clone();
                        a[r][c] = a[r][c].clone() - da;
                        b[r][c] = b[r][c].clone() - db;
                    }
                }
            }
        }
        Some(Self::from_rows(b))
    }
}

/// Sparse vector as `(index, coefficient)` pairs, sorted by index, no zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from_entries<T>(entries: impl IntoIterator<Item = (usize, T)>) -> SparseVec<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (i, v) in entries {
        let slot = acc.entry(i).or_insert_with(T::zero);
        *slot = slot.clone() + v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn combine<T, G>(a: &[(usize, T)], b: &[(usize, T)], f: G) -> SparseVec<T>
where
    T: Clone + Zero,
    G: Fn(Option<&T>, Option<&T>) -> T,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (idx, v) = match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                i += 1;
                (*ia, f(Some(va), None))
            }
            (Some((ia, _)), Some((ib, vb))) if ib < ia => {
                j += 1;
                (*ib, f(None, Some(vb)))
            }
            (Some((ia, va)), Some((_, vb))) => {
                i += 1;
                j += 1;
                (*ia, f(Some(va), Some(vb)))
            }
            (Some((ia, va)), None) => {
                i += 1;
                (*ia, f(Some(va), None))
            }
            (None, Some((ib, vb))) => {
                j += 1;
                (*ib, f(None, Some(vb)))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

/// Incremental row echelon form over a field, keyed by leading index.
#[derive(Clone, Debug, Default)]
pub struct FieldEchelon<F> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> FieldEchelon<F> {
    pub fn new() -> Self {
        FieldEchelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the current pivots and keeps it if independent.
    pub fn insert(&mut self, mut v: SparseVec<F>) -> bool {
        while let Some((lead, coef)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    v = combine(&v, p, |x, y| {
                        let x = x.cloned().unwrap_or_else(F::zero);
                        match y {
                            Some(y) => x - coef.clone() * y.clone(),
                            None => x,
                        }
                    });
                }
                None => {
                    let inv = coef.inverse().expect("nonzero lead");
                    let v = v.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
        false
    }
}

/// Incremental fraction-free echelon form over the integers.
///
/// Rows are kept primitive with positive leading coefficient.
#[derive(Clone, Debug, Default)]
pub struct FractionFreeEchelon {
    pivots: BTreeMap<usize, SparseVec<BigInt>>,
}

impl FractionFreeEchelon {
    pub fn new() -> Self {
        FractionFreeEchelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn make_primitive(v: &mut SparseVec<BigInt>) {
        let g = v
            .iter()
            .fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
        let flip = v.first().is_some_and(|(_, x)| x.is_negative());
        if g.is_zero() {
            return;
        }
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
            if flip {
                *x = -&*x;
            }
        }
    }

    pub fn insert(&mut self, mut v: SparseVec<BigInt>) -> bool {
        Self::make_primitive(&mut v);
        while let Some((lead, a)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let b = p[0].1.clone();
                    let g = a.gcd(&b);
                    let (sa, sb) = (&b / &g, &a / &g);
                    v = combine(&v, p, |x, y| {
                        let x = x.map_or_else(BigInt::zero, |x| x * &sa);
                        match y {
                            Some(y) => x - y * &sb,
                            None => x,
                        }
                    });
                    Self::make_primitive(&mut v);
                }
                None => {
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of a list of integer vectors by fraction-free elimination.
pub fn rank_fraction_free<I>(vectors: I) -> usize
where
    I: IntoIterator<Item = SparseVec<BigInt>>,
{
    let mut e = FractionFreeEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rank of a list of integer vectors over a field `F`.
pub fn rank_over<F: Field, I>(vectors: I) -> usize
where
    I: IntoIterator<Item = SparseVec<BigInt>>,
{
    let mut e = FieldEchelon::<F>::new();
    for v in vectors {
        let v: SparseVec<F> = v
            .into_iter()
            .filter_map(|(i, x)| {
                let y = bigint_to_field::<F>(&x);
                (!y.is_zero()).then_some((i, y))
            })
            .collect();
        e.insert(v);
    }
    e.rank()
}

/// Image of an integer in `F`.
pub fn bigint_to_field<F: Field>(x: &BigInt) -> F {
    let base = F::from_i64(1 << 30);
    let (sign, digits) = x.to_u32_digits();
    let mut acc = F::zero();
    for d in digits.iter().rev() {
        let hi = F::from_i64((d >> 30) as i64);
        let lo = F::from_i64((d & ((1 << 30) - 1)) as i64);
        acc = acc * base.clone() * F::from_i64(4) + hi * base.clone() + lo;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn dense_inverse_roundtrip() {
        let m = DenseMatrix::from_rows(vec![vec![q(2), q(1)], vec![q(5), q(3)]]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn fraction_free_matches_field_rank() {
        let rows: Vec<SparseVec<BigInt>> = vec![
            vec![(0, 2.into()), (1, 4.into())],
            vec![(0, 3.into()), (1, 6.into()), (3, 1.into())],
            vec![(3, (-5).into())],
            vec![(1, 7.into()), (2, 1.into())],
        ];
        assert_eq!(rank_fraction_free(rows.clone()), 3);
        assert_eq!(rank_over::<BigRational, _>(rows.clone()), 3);
        assert_eq!(rank_over::<Fp<1_000_000_007>, _>(rows), 3);
    }

    #[test]
    fn mod_p_can_drop_rank() {
        let rows: Vec<SparseVec<BigInt>> = vec![vec![(0, 1.into()), (1, 1.into())], vec![(0, 1.into()), (1, 8.into())]];
        assert_eq!(rank_fraction_free(rows.clone()), 2);
        assert_eq!(rank_over::<Fp<7>, _>(rows), 1);
    }

    #[test]
    fn bigint_reduction_mod_p() {
        let x: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = (&x % BigInt::from(1_000_000_007u64)).to_string().parse::<i64>().unwrap();
        assert_eq!(bigint_to_field::<Fp<1_000_000_007>>(&x), Fp::new(r));
        assert_eq!(bigint_to_field::<Fp<1_000_000_007>>(&-x), -Fp::new(r));
    }
}
