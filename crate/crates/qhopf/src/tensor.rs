//! Sparse tensors over a product of basis index sets.
//!
//! Entries are keyed by the row-major flat index
//! `index(i₁,…,i_k) = Σ i_j·(n_{j+1}⋯n_k)`, which for a uniform shape
//! `(n,…,n)` is `Σ i_j·n^(k−j)`. An element of `H^⊗k` and its coordinate
//! vector of length `n^k` are the same thing in this indexing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linear::{CoordVector, DenseMatrix};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseTensor {
    pub shape: Vec<usize>,
    entries: BTreeMap<usize, Scalar>,
}

impl SparseTensor {
    pub fn zero(shape: Vec<usize>) -> Self {
        SparseTensor { shape, entries: BTreeMap::new() }
    }

    pub fn scalar(v: Scalar) -> Self {
        let mut t = Self::zero(vec![]);
        t.add_at(0, v);
        t
    }

    pub fn size(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn unflat(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for (slot, &n) in out.iter_mut().zip(&self.shape).rev() {
            *slot = k % n;
            k /= n;
        }
        out
    }

    pub fn get(&self, idx: &[usize]) -> Option<&Scalar> {
        self.entries.get(&self.flat(idx))
    }

    pub fn get_flat(&self, k: usize) -> Option<&Scalar> {
        self.entries.get(&k)
    }

    /// Adds `v` at a flat index, dropping the entry if it cancels.
    pub fn add_at(&mut self, k: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(e) => {
                let s = e.add(&v);
                if s.is_zero() {
                    self.entries.remove(&k);
                } else {
                    *e = s;
                }
            }
            None => {
                self.entries.insert(k, v);
            }
        }
    }

    pub fn add_idx(&mut self, idx: &[usize], v: Scalar) {
        let k = self.flat(idx);
        self.add_at(k, v);
    }

    /// Entries in ascending flat-index order (lexicographic in the index tuple).
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn from_dense(shape: Vec<usize>, v: &[Scalar]) -> Self {
        let mut t = Self::zero(shape);
        assert_eq!(t.size(), v.len(), "coordinate length");
        for (k, x) in v.iter().enumerate() {
            t.add_at(k, x.clone());
        }
        t
    }

    pub fn to_dense(&self, field: Field) -> CoordVector {
        let mut v = vec![field.zero(); self.size()];
        for (k, x) in self.iter() {
            v[k] = x.clone();
        }
        v
    }

    pub fn vector(v: &[Scalar]) -> Self {
        Self::from_dense(vec![v.len()], v)
    }

    pub fn add(&self, o: &SparseTensor) -> Result<SparseTensor> {
        self.check_shape(o)?;
        let mut out = self.clone();
        for (k, v) in o.iter() {
            out.add_at(k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &SparseTensor) -> Result<SparseTensor> {
        self.check_shape(o)?;
        let mut out = self.clone();
        for (k, v) in o.iter() {
            out.add_at(k, v.neg());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SparseTensor {
        let mut out = Self::zero(self.shape.clone());
        for (k, v) in self.iter() {
            out.add_at(k, v.mul(c));
        }
        out
    }

    fn check_shape(&self, o: &SparseTensor) -> Result<()> {
        if self.shape != o.shape {
            return Err(Error::Dimension(format!("shapes {:?} and {:?}", self.shape, o.shape)));
        }
        Ok(())
    }

    /// Reorders axes: axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        assert_eq!(perm.len(), self.arity());
        let shape = perm.iter().map(|&p| self.shape[p]).collect();
        let mut out = Self::zero(shape);
        for (k, v) in self.iter() {
            let idx = self.unflat(k);
            let new: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.add_idx(&new, v.clone());
        }
        out
    }

    /// Interprets a 2-axis tensor `[rows, cols]` as a matrix.
    pub fn to_matrix(&self, field: Field) -> DenseMatrix {
        assert_eq!(self.arity(), 2);
        let mut m = DenseMatrix::zeros(field, self.shape[0], self.shape[1]);
        for (k, v) in self.iter() {
            m.set(k / self.shape[1], k % self.shape[1], v.clone());
        }
        m
    }

    pub fn from_matrix(m: &DenseMatrix) -> SparseTensor {
        let mut t = Self::zero(vec![m.rows, m.cols]);
        for i in 0..m.rows {
            for j in 0..m.cols {
                t.add_idx(&[i, j], m.get(i, j).clone());
            }
        }
        t
    }

    /// Reshapes without moving entries; the total size must agree.
    pub fn reshape(&self, shape: Vec<usize>) -> SparseTensor {
        assert_eq!(shape.iter().product::<usize>(), self.size());
        SparseTensor { shape, entries: self.entries.clone() }
    }

    /// First entry (in index order) where `self` and `o` differ.
    pub fn first_difference(&self, o: &SparseTensor) -> Option<(Vec<usize>, Scalar, Scalar)> {
        let keys: std::collections::BTreeSet<usize> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        for k in keys {
            let a = self.entries.get(&k);
            let b = o.entries.get(&k);
            if a != b {
                let z = || a.or(b).unwrap().field().zero();
                return Some((self.unflat(k), a.cloned().unwrap_or_else(z), b.cloned().unwrap_or_else(z)));
            }
        }
        None
    }
}
