use num_bigint::BigInt;
use crate::error::{Error, Result};

/// Dense square matrix of arbitrary-precision integers, row-major.
///
/// `index_offset` records the label of the first row and column for
/// matrices indexed from 1 or 2 rather than 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
    index_offset: u64,
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("matrix dimension must be positive"));
        }
        if entries.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(IntMatrix { dim, entries, index_offset: 0 })
    }

    /// # Panics
    /// If `dim` is zero.
    pub fn from_fn<T: Into<BigInt>>(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let entries = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| f(i, j).into()).collect();
        IntMatrix { dim, entries, index_offset: 0 }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::domain("rows must all have length equal to the row count"));
        }
        Self::new(dim, rows.iter().flatten().map(|&v| BigInt::from(v)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| i64::from(i == j))
    }

    pub fn diag(values: &[i64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0 })
    }

    pub fn with_index_offset(mut self, offset: u64) -> Self {
        self.index_offset = offset;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_offset(&self) -> u64 {
        self.index_offset
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.dim, |i, j| self.get(j, i).clone());
        t.index_offset = self.index_offset;
        t
    }
}
