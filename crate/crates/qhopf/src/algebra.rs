//! Algebras and coalgebras given by structure constants.

use crate::error::{Error, Result};
use crate::linear::{solve_linear, CoordVector, DenseMatrix};
use crate::scalar::{Field, Scalar};
use crate::tensor::SparseTensor;

type Sparse = Vec<(usize, Scalar)>;

/// `e_i·e_j = Σ_k m[i][j][k] e_k` with a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub mult: SparseTensor,
    pub unit: CoordVector,
    pub(crate) unit_t: SparseTensor,
    table: Vec<Sparse>,
}

impl Algebra {
    /// Validates associativity and the unit on basis elements.
    pub fn new(field: Field, mult: SparseTensor, unit: CoordVector) -> Result<Algebra> {
        let a = Self::new_unchecked(field, mult, unit)?;
        a.check()?;
        Ok(a)
    }

    /// Skips the axiom checks (for algebras that hold by construction).
    pub fn new_unchecked(field: Field, mult: SparseTensor, unit: CoordVector) -> Result<Algebra> {
        let n = unit.len();
        if mult.shape != vec![n, n, n] {
            return Err(Error::Dimension(format!("multiplication shape {:?} for dimension {n}", mult.shape)));
        }
        let mut table = vec![Vec::new(); n * n];
        for (k, v) in mult.iter() {
            table[k / n].push((k % n, v.clone()));
        }
        let unit_t = SparseTensor::vector(&unit);
        Ok(Algebra { field, dim: n, mult, unit, unit_t, table })
    }

    pub fn check(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul_sparse(&self.table[i * n + j], &[(k, self.field.one())]);
                    let r = self.mul_sparse(&[(i, self.field.one())], &self.table[j * n + k]);
                    if l != r {
                        return Err(Error::Invalid(format!("associativity fails on basis triple (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Invalid(format!("unit axiom fails on basis element e{i}")));
            }
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> CoordVector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> CoordVector {
        vec![self.field.zero(); self.dim]
    }

    /// `e_i·e_j` as a sparse list.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    fn mul_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> CoordVector {
        let mut out = self.zero();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.mul(b);
                for (k, c) in self.basis_product(*i, *j) {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> CoordVector {
        let xs: Sparse = x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        let ys: Sparse = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        self.mul_sparse(&xs, &ys)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<CoordVector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Dimension(format!("elements of length {} and {} in dimension {}", x.len(), y.len(), self.dim)));
        }
        Ok(self.mul(x, y))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Scalar]) -> DenseMatrix {
        let cols: Vec<CoordVector> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        DenseMatrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &[Scalar]) -> DenseMatrix {
        let cols: Vec<CoordVector> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        DenseMatrix::from_columns(self.field, self.dim, &cols)
    }

    /// Solves `y·x = 1`, then confirms `x·y = 1`.
    pub fn invert(&self, x: &[Scalar]) -> Result<CoordVector> {
        let sol = solve_linear(&self.right_mult(x), &self.unit).map_err(|_| Error::NotInvertible)?;
        let y = sol.particular;
        if self.mul(x, &y) != self.unit {
            return Err(Error::NotInvertible);
        }
        Ok(y)
    }

    /// `A^⊗k` with the componentwise product, indexed row-major.
    pub fn tensor_power(&self, k: usize) -> Algebra {
        assert!(k >= 1);
        let mut cur = self.clone();
        for _ in 1..k {
            cur = cur.tensor(self);
        }
        cur
    }

    /// `A⊗B` with basis index `i·dim(B) + j`.
    pub fn tensor(&self, b: &Algebra) -> Algebra {
        let (n, m) = (self.dim, b.dim);
        let nm = n * m;
        let mut mult = SparseTensor::zero(vec![nm, nm, nm]);
        for (ka, va) in self.mult.iter() {
            let (i, j, k) = (ka / (n * n), (ka / n) % n, ka % n);
            for (kb, vb) in b.mult.iter() {
                let (p, q, r) = (kb / (m * m), (kb / m) % m, kb % m);
                mult.add_idx(&[i * m + p, j * m + q, k * m + r], va.mul(vb));
            }
        }
        let mut unit = vec![self.field.zero(); nm];
        for (i, a) in self.unit.iter().enumerate() {
            for (j, c) in b.unit.iter().enumerate() {
                unit[i * m + j] = a.mul(c);
            }
        }
        Algebra::new_unchecked(self.field, mult, unit).expect("tensor product shape")
    }

    /// Componentwise product in `A^⊗k` of two tensors with uniform shape `(n,…,n)`.
    pub fn tensor_mul(&self, x: &SparseTensor, y: &SparseTensor) -> SparseTensor {
        assert_eq!(x.shape, y.shape, "tensor_mul shapes");
        assert!(x.shape.iter().all(|&d| d == self.dim), "tensor_mul dimension");
        let k = x.arity();
        let mut out = SparseTensor::zero(x.shape.clone());
        for (kx, a) in x.iter() {
            let ix = x.unflat(kx);
            for (ky, b) in y.iter() {
                let iy = y.unflat(ky);
                let mut partial: Vec<(usize, Scalar)> = vec![(0, a.mul(b))];
                for s in 0..k {
                    let prod = self.basis_product(ix[s], iy[s]);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (p, c) in &partial {
                        for (r, d) in prod {
                            next.push((p * self.dim + r, c.mul(d)));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (p, c) in partial {
                    out.add_at(p, c);
                }
            }
        }
        out
    }

    pub fn tensor_unit(&self, k: usize) -> SparseTensor {
        let mut out = SparseTensor::scalar(self.field.one());
        for _ in 0..k {
            out = outer(&out, &self.unit_t);
        }
        out
    }

    /// Two-sided inverse in `A^⊗k`, found as a polynomial in `x` (the
    /// minimal polynomial's constant term must be nonzero) and then verified.
    pub fn tensor_invert(&self, x: &SparseTensor) -> Result<SparseTensor> {
        let k = x.arity();
        let one = self.tensor_unit(k);
        let mut powers = vec![one.clone()];
        let max_deg = x.size();
        loop {
            let next = self.tensor_mul(powers.last().unwrap(), x);
            // express x^d in terms of lower powers
            let keys: std::collections::BTreeSet<usize> = powers.iter().chain(std::iter::once(&next)).flat_map(|p| p.iter().map(|(k, _)| k)).collect();
            let keys: Vec<usize> = keys.into_iter().collect();
            let cols: Vec<CoordVector> = powers
                .iter()
                .map(|p| keys.iter().map(|k| p.get_flat(*k).cloned().unwrap_or_else(|| self.field.zero())).collect())
                .collect();
            let a = DenseMatrix::from_columns(self.field, keys.len(), &cols);
            let b: CoordVector = keys.iter().map(|k| next.get_flat(*k).cloned().unwrap_or_else(|| self.field.zero())).collect();
            match solve_linear(&a, &b) {
                Ok(sol) => {
                    // x^d = Σ c_i x^i, so x·(x^{d-1} − Σ_{i≥1} c_i x^{i-1}) = c_0
                    let c0 = &sol.particular[0];
                    let c0inv = c0.inv().ok_or(Error::NotInvertible)?;
                    let mut inv = powers.last().unwrap().clone();
                    for (i, c) in sol.particular.iter().enumerate().skip(1) {
                        inv = inv.sub(&powers[i - 1].scale(c)).unwrap();
                    }
                    let inv = inv.scale(&c0inv);
                    if self.tensor_mul(x, &inv) != one || self.tensor_mul(&inv, x) != one {
                        return Err(Error::NotInvertible);
                    }
                    return Ok(inv);
                }
                Err(_) => {
                    if powers.len() > max_deg {
                        return Err(Error::NotInvertible);
                    }
                    powers.push(next);
                }
            }
        }
    }
}

/// Outer product: axes of `a` followed by axes of `b`.
pub fn outer(a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
    let mut shape = a.shape.clone();
    shape.extend(&b.shape);
    let bs = b.size();
    let mut out = SparseTensor::zero(shape);
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            out.add_at(ka * bs + kb, va.mul(vb));
        }
    }
    out
}

/// `Δ(e_i) = Σ d[i][j][k] e_j⊗e_k` with counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub field: Field,
    pub dim: usize,
    pub comult: SparseTensor,
    pub counit: CoordVector,
}

impl Coalgebra {
    pub fn new(field: Field, comult: SparseTensor, counit: CoordVector) -> Result<Coalgebra> {
        let n = counit.len();
        if comult.shape != vec![n, n, n] {
            return Err(Error::Dimension(format!("comultiplication shape {:?} for dimension {n}", comult.shape)));
        }
        Ok(Coalgebra { field, dim: n, comult, counit })
    }

    /// Coassociativity and counit on basis elements (only meaningful for
    /// genuine coalgebras).
    pub fn check_coassociative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let mut l = SparseTensor::zero(vec![n, n, n]);
            let mut r = SparseTensor::zero(vec![n, n, n]);
            for (k, c) in self.comult.iter().filter(|(k, _)| k / (n * n) == i) {
                let (a, b) = ((k / n) % n, k % n);
                for (k2, c2) in self.comult.iter().filter(|(k2, _)| k2 / (n * n) == a) {
                    l.add_idx(&[(k2 / n) % n, k2 % n, b], c.mul(c2));
                }
                for (k2, c2) in self.comult.iter().filter(|(k2, _)| k2 / (n * n) == b) {
                    r.add_idx(&[a, (k2 / n) % n, k2 % n], c.mul(c2));
                }
            }
            if l != r {
                return Err(Error::Invalid(format!("coassociativity fails on basis element e{i}")));
            }
            let mut left = vec![self.field.zero(); n];
            let mut right = vec![self.field.zero(); n];
            for (k, c) in self.comult.iter().filter(|(k, _)| k / (n * n) == i) {
                let (a, b) = ((k / n) % n, k % n);
                right[a] = right[a].add(&c.mul(&self.counit[b]));
                left[b] = left[b].add(&c.mul(&self.counit[a]));
            }
            let e: CoordVector = (0..n).map(|j| if j == i { self.field.one() } else { self.field.zero() }).collect();
            if left != e || right != e {
                return Err(Error::Invalid(format!("counit axiom fails on basis element e{i}")));
            }
        }
        Ok(())
    }
}

/// Matrix of `c ↦ F(c₁)·G(c₂)` for linear maps `F, G: C → A`.
pub fn convolution_product(c: &Coalgebra, a: &Algebra, f: &DenseMatrix, g: &DenseMatrix) -> Result<DenseMatrix> {
    for m in [f, g] {
        if m.rows != a.dim || m.cols != c.dim {
            return Err(Error::Dimension(format!("map of shape {}x{} between dimensions {} and {}", m.rows, m.cols, c.dim, a.dim)));
        }
    }
    let n = c.dim;
    let mut cols = vec![a.zero(); n];
    for (k, v) in c.comult.iter() {
        let (i, j, l) = (k / (n * n), (k / n) % n, k % n);
        let p = a.mul(&f.column(j), &g.column(l));
        for (x, y) in cols[i].iter_mut().zip(p) {
            *x = x.add(&y.mul(v));
        }
    }
    Ok(DenseMatrix::from_columns(a.field, a.dim, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kz2() -> Algebra {
        let f = Field::Q;
        let mut m = SparseTensor::zero(vec![2, 2, 2]);
        for i in 0..2 {
            for j in 0..2 {
                m.add_idx(&[i, j, (i + j) % 2], f.one());
            }
        }
        Algebra::new(f, m, vec![f.one(), f.zero()]).unwrap()
    }

    #[test]
    fn group_law_and_inverse() {
        let a = kz2();
        let f = a.field;
        let g = a.basis(1);
        assert_eq!(a.mul(&g, &g), a.unit);
        assert_eq!(a.invert(&g).unwrap(), g);
        // 1 + g is a zero divisor: (1+g)(1-g) = 0
        assert_eq!(a.invert(&[f.one(), f.one()]), Err(Error::NotInvertible));
    }

    #[test]
    fn tensor_square_product() {
        let a = kz2();
        let a2 = a.tensor_power(2);
        a2.check().unwrap();
        // (1⊗g)·(g⊗g) = g⊗1
        let x = a2.basis(1);
        let y = a2.basis(3);
        assert_eq!(a2.mul(&x, &y), a2.basis(2));
        let t = a.tensor_unit(3);
        assert_eq!(t.nnz(), 1);
        assert_eq!(t.get(&[0, 0, 0]), Some(&a.field.one()));
    }

    #[test]
    fn nonassociative_rejected() {
        let f = Field::Q;
        let mut m = SparseTensor::zero(vec![3, 3, 3]);
        for i in 0..3 {
            m.add_idx(&[0, i, i], f.one());
            if i > 0 {
                m.add_idx(&[i, 0, i], f.one());
            }
        }
        // (e1e1)e1 = e2e1 = e1 but e1(e1e1) = e1e2 = e0
        m.add_idx(&[1, 1, 2], f.one());
        m.add_idx(&[1, 2, 0], f.one());
        m.add_idx(&[2, 1, 1], f.one());
        m.add_idx(&[2, 2, 1], f.one());
        let e = Algebra::new(f, m, vec![f.one(), f.zero(), f.zero()]).unwrap_err().to_string();
        assert!(e.contains("associativity fails on basis triple"), "{e}");
    }

    #[test]
    fn tensor_inverse_matches_componentwise() {
        let a = kz2();
        let f = a.field;
        // x = (1 + 2g)⊗g, inverse is (1 + 2g)^{-1}⊗g
        let mut x = SparseTensor::zero(vec![2, 2]);
        x.add_idx(&[0, 1], f.one());
        x.add_idx(&[1, 1], f.int(2));
        let xi = a.tensor_invert(&x).unwrap();
        assert_eq!(a.tensor_mul(&x, &xi), a.tensor_unit(2));
        let first = a.invert(&[f.one(), f.int(2)]).unwrap();
        assert_eq!(xi.get(&[0, 1]), Some(&first[0]));
    }
}
