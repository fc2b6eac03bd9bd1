//! Builtin example presentations.

use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::io::Presentation;
use crate::linear::DenseMatrix;
use crate::quasihopf::QuasiHopf;
use crate::scalar::{Field, Scalar};
use crate::tensor::SparseTensor;

fn basis(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

fn trivial_phi(field: Field, unit: &[Scalar]) -> SparseTensor {
    let u = SparseTensor::vector(unit);
    let mut t = SparseTensor::scalar(field.one());
    for _ in 0..3 {
        t = crate::algebra::outer(&t, &u);
    }
    t
}

/// The group algebra `k[Z_n]` with basis `g^0, …, g^(n-1)` and `R = 1⊗1`.
pub fn group_algebra(field: Field, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    let mut mult = SparseTensor::zero(vec![n, n, n]);
    let mut comult = SparseTensor::zero(vec![n, n, n]);
    let mut s = DenseMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            mult.add_idx(&[i, j, (i + j) % n], field.one());
        }
        comult.add_idx(&[i, i, i], field.one());
        s.set((n - i) % n, i, field.one());
    }
    let unit = basis(field, n, 0);
    let alg = Algebra::new(field, mult, unit.clone())?;
    let coalg = Coalgebra::new(field, comult, vec![field.one(); n])?;
    let phi = trivial_phi(field, &unit);
    let hopf = QuasiHopf::new(alg, coalg, phi, s, unit.clone(), unit.clone())?;
    let r = hopf.alg.tensor_unit(2);
    Ok(Presentation { hopf, r_matrix: Some(r), labels: Some((0..n).map(|i| format!("g^{i}")).collect()) })
}

/// A primitive `n`-th root of unity in the field, if one exists.
pub fn root_of_unity(field: Field, n: usize) -> Option<Scalar> {
    match field {
        Field::Q => match n {
            1 => Some(field.one()),
            2 => Some(field.int(-1)),
            _ => None,
        },
        Field::Fp(p) => {
            if (p - 1) % n as u64 != 0 {
                return None;
            }
            let e = (p - 1) / n as u64;
            (2..p).map(|c| field.int(c as i64).pow(e)).find(|z| (1..n as u64).all(|d| !z.pow(d).is_one()) || n == 1)
        }
    }
}

/// The function algebra `k^{Z_n}` (idempotent basis `e_0, …, e_(n-1)`) with
/// trivial reassociator.
pub fn function_algebra(field: Field, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    dual_group(field, n, |_, _, _| field.one())
}

/// The dual group algebra `k^{Z_n}` (idempotent basis `e_0, …, e_(n-1)`)
/// with the reassociator of the standard 3-cocycle
/// `ω(a,b,c) = ζ^(a·(b + c − [b+c]) / n)`, `S(e_a) = e_(−a)`, `β = 1` and
/// `α = Σ ω(a, −a, a)⁻¹ e_a`.
pub fn cocycle_dual(field: Field, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    let zeta = root_of_unity(field, n).ok_or_else(|| Error::Unsupported("field lacks required roots of unity".into()))?;
    dual_group(field, n, |a, b, c| {
        let carry = (b + c) / n;
        zeta.pow((a * carry) as u64)
    })
}

fn dual_group(field: Field, n: usize, omega: impl Fn(usize, usize, usize) -> Scalar) -> Result<Presentation> {
    let mut mult = SparseTensor::zero(vec![n, n, n]);
    let mut comult = SparseTensor::zero(vec![n, n, n]);
    let mut phi = SparseTensor::zero(vec![n, n, n]);
    let mut s = DenseMatrix::zeros(field, n, n);
    let mut alpha = vec![field.zero(); n];
    for a in 0..n {
        mult.add_idx(&[a, a, a], field.one());
        for b in 0..n {
            comult.add_idx(&[(a + b) % n, a, b], field.one());
            for c in 0..n {
                phi.add_idx(&[a, b, c], omega(a, b, c));
            }
        }
        s.set((n - a) % n, a, field.one());
        alpha[a] = omega(a, (n - a) % n, a).inv().expect("roots of unity are invertible");
    }
    let unit = vec![field.one(); n];
    let alg = Algebra::new(field, mult, unit.clone())?;
    let coalg = Coalgebra::new(field, comult, basis(field, n, 0))?;
    let hopf = QuasiHopf::new(alg, coalg, phi, s, alpha, unit)?;
    Ok(Presentation { hopf, r_matrix: None, labels: Some((0..n).map(|i| format!("e{i}")).collect()) })
}

/// Sweedler's four-dimensional Hopf algebra, basis `1, g, x, gx`, with
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δ(x) = x⊗1 + g⊗x`. With `r = Some(t)` the
/// R-matrix `½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + t/2 (x⊗x − x⊗gx + gx⊗x + gx⊗gx)`
/// is attached.
pub fn sweedler_h4(field: Field, r: Option<Scalar>) -> Result<Presentation> {
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("Sweedler's algebra needs characteristic other than 2".into()));
    }
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut mult = SparseTensor::zero(vec![4, 4, 4]);
    for (a, b, c, d) in (0..16).map(|k| (k & 1, (k >> 1) & 1, (k >> 2) & 1, (k >> 3) & 1)) {
        // g^a x^b · g^c x^d = (−1)^(bc) g^(a+c) x^(b+d)
        if b + d < 2 {
            let sign = if b * c == 1 { field.int(-1) } else { field.one() };
            mult.add_idx(&[idx(a, b), idx(c, d), idx((a + c) % 2, b + d)], sign);
        }
    }
    let mut comult = SparseTensor::zero(vec![4, 4, 4]);
    for a in 0..2 {
        comult.add_idx(&[idx(a, 0), idx(a, 0), idx(a, 0)], field.one());
        comult.add_idx(&[idx(a, 1), idx(a, 1), idx(a, 0)], field.one());
        comult.add_idx(&[idx(a, 1), idx((a + 1) % 2, 0), idx(a, 1)], field.one());
    }
    let mut s = DenseMatrix::zeros(field, 4, 4);
    s.set(0, 0, field.one());
    s.set(1, 1, field.one());
    s.set(3, 2, field.int(-1));
    s.set(2, 3, field.one());
    let unit = basis(field, 4, 0);
    let alg = Algebra::new(field, mult, unit.clone())?;
    let counit = vec![field.one(), field.one(), field.zero(), field.zero()];
    let coalg = Coalgebra::new(field, comult, counit)?;
    let phi = trivial_phi(field, &unit);
    let hopf = QuasiHopf::new(alg, coalg, phi, s, unit.clone(), unit)?;
    let r_matrix = r.map(|t| {
        let half = field.one().div(&field.int(2)).expect("characteristic is not 2");
        let ht = half.mul(&t);
        let mut m = SparseTensor::zero(vec![4, 4]);
        let (one, g, x, gx) = (0, 1, 2, 3);
        m.add_idx(&[one, one], half.clone());
        m.add_idx(&[one, g], half.clone());
        m.add_idx(&[g, one], half.clone());
        m.add_idx(&[g, g], half.neg());
        m.add_idx(&[x, x], ht.clone());
        m.add_idx(&[x, gx], ht.neg());
        m.add_idx(&[gx, x], ht.clone());
        m.add_idx(&[gx, gx], ht.clone());
        m
    });
    Ok(Presentation { hopf, r_matrix, labels: Some(vec!["1".into(), "g".into(), "x".into(), "gx".into()]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        let f = Field::fp(7).unwrap();
        let z = root_of_unity(f, 3).unwrap();
        assert!(z.pow(3).is_one() && !z.is_one());
        assert!(root_of_unity(Field::Q, 3).is_none());
        assert!(root_of_unity(f, 4).is_none());
    }

    #[test]
    fn corpus_passes_axioms() {
        let f7 = Field::fp(7).unwrap();
        let corpus = [
            group_algebra(Field::Q, 2).unwrap(),
            group_algebra(f7, 3).unwrap(),
            function_algebra(Field::Q, 2).unwrap(),
            cocycle_dual(Field::Q, 2).unwrap(),
            cocycle_dual(f7, 3).unwrap(),
            sweedler_h4(Field::Q, Some(Field::Q.int(1))).unwrap(),
        ];
        for p in &corpus {
            let r = p.hopf.check_all();
            assert!(r.passed(), "{r}");
            let r = p.hopf.verify_core_identities();
            assert!(r.passed(), "{r}");
        }
        assert!(matches!(cocycle_dual(Field::Q, 3), Err(Error::Unsupported(_))));
    }
}
