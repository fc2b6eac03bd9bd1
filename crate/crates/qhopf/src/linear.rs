//! Dense matrices and exact elimination.
//!
//! Over ℚ rows are cleared of denominators and reduced with integer-preserving
//! Gauss–Jordan steps (every division is exact); over 𝔽_p plain elimination is
//! used. Pivots are always the first nonzero entry of the leftmost usable
//! column, so results are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type CoordVector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(DenseMatrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.int(v)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[CoordVector]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> CoordVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<CoordVector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!("{}x{} * vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Ok(DenseMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Ok(DenseMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        DenseMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Stacks `self` above `o`.
    pub fn vstack(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != o.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(DenseMatrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        self.transpose().vstack(&o.transpose()).map(|m| m.transpose())
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form and its pivot columns.
pub struct Rref {
    pub matrix: DenseMatrix,
    pub pivots: Vec<usize>,
}

pub fn rref(a: &DenseMatrix) -> Rref {
    match a.field {
        Field::Q => rref_fraction_free(a),
        Field::Fp(_) => rref_field(a),
    }
}

fn rref_field(a: &DenseMatrix) -> Rref {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        swap_rows(&mut m, p, r);
        let inv = m.get(r, c).inv().unwrap();
        for j in 0..m.cols {
            let v = m.get(r, j).mul(&inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

fn swap_rows(m: &mut DenseMatrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols {
            m.data.swap(a * m.cols + j, b * m.cols + j);
        }
    }
}

fn rref_fraction_free(a: &DenseMatrix) -> Rref {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let nd: Vec<(BigInt, BigInt)> = a.row(i).iter().map(Scalar::num_den).collect();
            let l = nd.iter().fold(BigInt::one(), |l, (_, d)| l.lcm(d));
            nd.into_iter().map(|(n, d)| n * (&l / d)).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let piv = m[r][c].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                let v = &piv * &row[j] - &f * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact fraction-free step");
                row[j] = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    // Earlier pivot rows were scaled along the way; every pivot now equals `prev`.
    let f = a.field;
    let mut out = DenseMatrix::zeros(f, rows, cols);
    for (i, row) in m.iter().enumerate() {
        let d = if i < pivots.len() { m[i][pivots[i]].clone() } else { BigInt::one() };
        for j in 0..cols {
            if !row[j].is_zero() {
                out.set(i, j, f.from_big(row[j].clone(), d.clone()).unwrap());
            }
        }
    }
    Rref { matrix: out, pivots }
}

/// Particular solution plus a basis of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: CoordVector,
    pub nullspace: Vec<CoordVector>,
}

/// Kernel basis: one vector per free column, scaled so its first nonzero entry is 1.
pub fn nullspace(a: &DenseMatrix) -> Vec<CoordVector> {
    let r = rref(a);
    kernel_from_rref(&r, a.cols)
}

fn kernel_from_rref(r: &Rref, n: usize) -> Vec<CoordVector> {
    let f = r.matrix.field;
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !r.pivots.contains(c)) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (row, &pc) in r.pivots.iter().enumerate() {
            v[pc] = r.matrix.get(row, free).neg();
        }
        let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
        out.push(v.iter().map(|x| x.mul(&lead)).collect());
    }
    out
}

pub fn solve_linear(a: &DenseMatrix, b: &[Scalar]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!("{} rows but right-hand side of length {}", a.rows, b.len())));
    }
    let aug = a.hstack(&DenseMatrix::from_columns(a.field, a.rows, &[b.to_vec()]))?;
    let r = rref(&aug);
    if r.pivots.last() == Some(&a.cols) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![a.field.zero(); a.cols];
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.matrix.get(row, a.cols).clone();
    }
    let core = Rref { matrix: r.matrix.clone(), pivots: r.pivots.clone() };
    Ok(Solution { particular: x, nullspace: kernel_from_rref(&core, a.cols) })
}

pub fn rank(a: &DenseMatrix) -> usize {
    a.rank()
}

/// Kronecker product; row `i·b.rows + k`, column `j·b.cols + l` holds `a[i][j]·b[k][l]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(a.field, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, x.mul(y));
                    }
                }
            }
        }
    }
    out
}

pub fn invert_matrix(a: &DenseMatrix) -> Result<DenseMatrix> {
    if a.rows != a.cols {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = a.rows;
    let aug = a.hstack(&DenseMatrix::identity(a.field, n))?;
    let r = rref(&aug);
    if r.pivots.iter().filter(|&&c| c < n).count() < n {
        return Err(Error::Singular);
    }
    let mut inv = DenseMatrix::zeros(a.field, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.matrix.get(i, n + j).clone());
        }
    }
    Ok(inv)
}
