use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Entry: Copy + Default + PartialEq + Add<Output = Self> + Mul<Output = Self> {
    const ONE: Self;
}

impl Entry for u64 {
    const ONE: Self = 1;
}

impl Entry for i64 {
    const ONE: Self = 1;
}

/// A `rows × cols` matrix. A morphism `X -> Y` is an `|X| × |Y|` matrix, and
/// `g ∘ f` is the product `f · g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix<T>", bound(deserialize = "T: Entry + Deserialize<'de>"))]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

/// Canonical form of a span of finite sets: fiber counts over `X × Y`.
pub type NatMatrix = Matrix<u64>;

/// A morphism of the group-completed Burnside category.
pub type IntMatrix = Matrix<i64>;

#[derive(Deserialize)]
struct RawMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Entry> TryFrom<RawMatrix<T>> for Matrix<T> {
    type Error = Error;

    fn try_from(raw: RawMatrix<T>) -> Result<Self> {
        Matrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl<T: Entry> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "entries do not form a {rows}×{cols} matrix"
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// From a non-empty list of equal-length rows.
    pub fn from_rows(entries: Vec<Vec<T>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        Matrix::new(entries.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![vec![T::default(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = T::ONE;
        }
        m
    }

    /// The matrix with a single `1` at `(i, j)`.
    pub fn elementary(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m.entries[i][j] = T::ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i][j] = v;
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == T::default())
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.entries.iter().flatten().copied()
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i][k];
                if a == T::default() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i][j] = out.entries[i][j] + a * rhs.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    /// `g ∘ f` where `self = f`.
    pub fn then(&self, g: &Matrix<T>) -> Result<Matrix<T>> {
        self.matmul(g)
    }

    pub fn try_add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}×{} and {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x + y).collect())
                .collect(),
        })
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Matrix<T>, b: &Matrix<T>, c: &Matrix<T>, d: &Matrix<T>) -> Result<Matrix<T>> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch("blocks do not fit together".into()));
        }
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .chain(c.entries.iter().zip(&d.entries))
            .map(|(l, r)| l.iter().chain(r).copied().collect())
            .collect();
        Ok(Matrix {
            rows: a.rows + c.rows,
            cols: a.cols + b.cols,
            entries,
        })
    }
}

impl NatMatrix {
    pub fn to_int(&self) -> IntMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|&v| v as i64).collect())
                .collect(),
        }
    }

    /// Over `ℕ` the invertible matrices are exactly the permutation matrices.
    pub fn is_invertible(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let rows_ok = self
            .entries
            .iter()
            .all(|r| r.iter().filter(|&&v| v == 1).count() == 1 && r.iter().all(|&v| v <= 1));
        let cols_ok = (0..self.cols).all(|j| self.entries.iter().filter(|r| r[j] == 1).count() == 1);
        rows_ok && cols_ok
    }

    pub fn total(&self) -> u64 {
        self.iter().sum()
    }
}

impl<T: Entry + Sub<Output = T>> Matrix<T> {
    pub fn try_sub(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot subtract {}×{} and {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x - y).collect())
                .collect(),
        })
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Sum of spans: disjoint union of apexes.
pub fn hom_add(a: &NatMatrix, b: &NatMatrix) -> Result<NatMatrix> {
    a.try_add(b)
}

/// The formal difference `positive - negative` in the group-completed hom.
pub fn group_complete_hom(positive: &NatMatrix, negative: &NatMatrix) -> Result<IntMatrix> {
    positive.to_int().try_sub(&negative.to_int())
}

/// The free generators of `Hom(m, n)`: the `m·n` elementary matrices in
/// row-major order.
pub fn hom_basis(m: usize, n: usize) -> Vec<NatMatrix> {
    (0..m)
        .flat_map(|i| (0..n).map(move |j| NatMatrix::elementary(m, n, i, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(rows: Vec<Vec<u64>>) -> NatMatrix {
        NatMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hom_add_examples() {
        let a = nat(vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(hom_add(&a, &NatMatrix::zeros(2, 2)).unwrap(), a);
        let b = nat(vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(hom_add(&a, &b).unwrap(), nat(vec![vec![1, 2], vec![2, 1]]));
        assert!(matches!(
            hom_add(&a, &NatMatrix::zeros(1, 2)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn group_completion_examples() {
        let a = nat(vec![vec![1, 0], vec![1, 1]]);
        assert!(group_complete_hom(&a, &a).unwrap().is_zero());
        let d = group_complete_hom(&nat(vec![vec![2]]), &nat(vec![vec![3]])).unwrap();
        assert_eq!(d, IntMatrix::from_rows(vec![vec![-1]]).unwrap());
    }

    #[test]
    fn composition_of_differences_distributes() {
        let a = nat(vec![vec![1, 2], vec![0, 1]]);
        let a2 = nat(vec![vec![0, 1], vec![3, 0]]);
        let b = nat(vec![vec![2, 0, 1], vec![1, 1, 0]]);
        let b2 = nat(vec![vec![0, 1, 1], vec![2, 0, 0]]);
        let lhs = group_complete_hom(&a, &a2)
            .unwrap()
            .matmul(&group_complete_hom(&b, &b2).unwrap())
            .unwrap();
        let pos = hom_add(&a.matmul(&b).unwrap(), &a2.matmul(&b2).unwrap()).unwrap();
        let neg = hom_add(&a.matmul(&b2).unwrap(), &a2.matmul(&b).unwrap()).unwrap();
        assert_eq!(lhs, group_complete_hom(&pos, &neg).unwrap());
    }

    #[test]
    fn invertible_means_permutation() {
        assert!(NatMatrix::identity(3).is_invertible());
        assert!(nat(vec![vec![0, 1], vec![1, 0]]).is_invertible());
        assert!(!nat(vec![vec![1, 1], vec![0, 1]]).is_invertible());
        assert!(NatMatrix::identity(0).is_invertible());
    }

    /// Number of ways to write `target` as `Σ c_g · g` over the basis, counted
    /// by a generator-at-a-time dynamic program.
    fn decompositions(target: &NatMatrix, basis: &[NatMatrix]) -> u64 {
        fn go(rem: &NatMatrix, basis: &[NatMatrix]) -> u64 {
            let Some((g, rest)) = basis.split_first() else {
                return u64::from(rem.is_zero());
            };
            let mut ways = 0;
            let mut cur = rem.clone();
            loop {
                ways += go(&cur, rest);
                let mut next = cur.clone();
                for i in 0..g.rows() {
                    for j in 0..g.cols() {
                        match cur.get(i, j).checked_sub(g.get(i, j)) {
                            Some(v) => next.set(i, j, v),
                            None => return ways,
                        }
                    }
                }
                cur = next;
            }
        }
        go(target, basis)
    }

    #[test]
    fn bounded_homs_decompose_uniquely_over_elementary_matrices() {
        for m in 1..=2 {
            for n in 1..=3 {
                let basis = hom_basis(m, n);
                assert_eq!(basis.len(), m * n);
                let cells = m * n;
                for code in 0..3usize.pow(cells as u32) {
                    let mut c = code;
                    let mut e = vec![vec![0u64; n]; m];
                    for k in 0..cells {
                        e[k / n][k % n] = (c % 3) as u64;
                        c /= 3;
                    }
                    assert_eq!(decompositions(&nat(e), &basis), 1);
                }
            }
        }
    }

    fn arb_nat(rows: usize, cols: usize) -> impl Strategy<Value = NatMatrix> {
        prop::collection::vec(prop::collection::vec(0u64..5, cols), rows)
            .prop_map(move |e| NatMatrix::new(rows, cols, e).unwrap())
    }

    proptest! {
        #[test]
        fn addition_commutes((a, b) in (0usize..4, 0usize..4).prop_flat_map(|(r, c)| (arb_nat(r, c), arb_nat(r, c)))) {
            prop_assert_eq!(hom_add(&a, &b).unwrap(), hom_add(&b, &a).unwrap());
        }

        #[test]
        fn json_round_trip(a in (0usize..4, 0usize..4).prop_flat_map(|(r, c)| arb_nat(r, c))) {
            let s = serde_json::to_string(&a).unwrap();
            let b: NatMatrix = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(serde_json::from_str::<NatMatrix>(r#"{"rows":2,"cols":1,"entries":[[1]]}"#).is_err());
        assert!(serde_json::from_str::<NatMatrix>(r#"{"rows":1,"cols":1,"entries":[[-1]]}"#).is_err());
    }
}
