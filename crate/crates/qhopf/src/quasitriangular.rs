//! R-matrices, the element `u`, and the factorizability maps.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::expr::Ctx;
use crate::linear::{CoordVector, DenseMatrix};
use crate::quasihopf::{Checker, QuasiHopf, H};
use crate::report::Report;
use crate::tensor::SparseTensor;

#[derive(Clone, Debug)]
pub struct QuasiTriangular {
    pub hopf: QuasiHopf,
    pub r: SparseTensor,
    r_inv: Option<SparseTensor>,
    u: OnceLock<Result<(CoordVector, CoordVector)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorizability {
    /// Column `i` is `Q(e^i)`.
    pub q: DenseMatrix,
    pub qbar: DenseMatrix,
    pub rank: usize,
    pub factorizable: bool,
}

impl QuasiTriangular {
    pub fn new(hopf: QuasiHopf, r: SparseTensor) -> Result<QuasiTriangular> {
        let n = hopf.dim;
        if r.shape != vec![n, n] {
            return Err(Error::Dimension(format!("R-matrix shape {:?}", r.shape)));
        }
        let r_inv = hopf.alg.tensor_invert(&r).ok();
        Ok(QuasiTriangular { hopf, r, r_inv, u: OnceLock::new() })
    }

    pub fn r_inv(&self) -> Result<&SparseTensor> {
        self.r_inv.as_ref().ok_or_else(|| Error::Invalid("R-matrix is not invertible".into()))
    }

    /// The host context plus `R`, `r` (a second copy), `Rb`, `rb` (the
    /// inverse), the Drinfeld twist and the p/q elements where available.
    pub fn ctx(&self) -> Ctx<'_> {
        let mut c = self.hopf.ctx();
        c.tensors(&["R", "r"], &self.r, &[H, H]);
        if let Some(ri) = &self.r_inv {
            c.tensors(&["Rb", "rb"], ri, &[H, H]);
        }
        if let Ok(d) = self.hopf.drinfeld_twist() {
            d.bind(&mut c);
        }
        if let Ok(pq) = self.hopf.pq_elements() {
            pq.bind(&mut c);
        }
        c
    }

    /// The braiding axioms of an R-matrix.
    pub fn check_qt(&self) -> Report {
        let mut r = Report::new("quasi-triangular structure");
        r.check("R-invertible", self.r_inv.is_some(), "R-matrix is not invertible");
        let c = self.ctx();
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq("qt1", &[], "R1_1 | R1_2 | R2", "X2 R1 x1 Y1 | X3 x3 r1 Y2 | X1 R2 x2 r2 Y3");
        k.eq("qt2", &[], "R1 | R2_1 | R2_2", "x3 R1 X2 r1 y1 | x1 X1 r2 y2 | x2 R2 X3 y3");
        k.eq("qt3", &["h"], "h_2 R1 | h_1 R2", "R1 h_1 | R2 h_2");
        k.eq("qt4:1", &[], "eps(R1) R2", "1");
        k.eq("qt4:2", &[], "R1 eps(R2)", "1");
        r.sort();
        r
    }

    /// `u = S(R²p²)αR¹p¹` and its inverse from the closed formula.
    pub fn u_element(&self) -> Result<&(CoordVector, CoordVector)> {
        self.u.get_or_init(|| self.compute_u()).as_ref().map_err(Clone::clone)
    }

    fn compute_u(&self) -> Result<(CoordVector, CoordVector)> {
        let c = self.ctx();
        let f = self.hopf.field;
        let u = c.eval(&[], "S(R2 p2) alpha R1 p1")?.to_dense(f);
        let ui = c.eval(&[], "X1 R2 p2 S(S(X2 R1 p1) alpha X3)")?.to_dense(f);
        let a = &self.hopf.alg;
        if a.mul(&u, &ui) != a.unit || a.mul(&ui, &u) != a.unit {
            return Err(Error::Check("u·u⁻¹ ≠ 1".into()));
        }
        Ok((u, ui))
    }

    /// Properties of `u` and the compatibility of `R` with `S` and `f`.
    pub fn check_u(&self) -> Report {
        let mut r = Report::new("element u");
        let (u, ui) = match self.u_element() {
            Ok(x) => x,
            Err(e) => {
                r.check("u-inverse", false, e.to_string());
                return r;
            }
        };
        r.check("u-inverse", true, "");
        let ut = SparseTensor::vector(u);
        let uit = SparseTensor::vector(ui);
        let mut c = self.ctx();
        c.tensor("u", &ut, &[H]).tensor("ui", &uit, &[H]);
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq_scalar("eps-u", &[], "eps(u)", "1");
        k.eq("sqina", &["h"], "S(S(h))", "u h ui");
        k.eq("ext", &[], "f2 R1 fi1 | f1 R2 fi2", "S(R1) | S(R2)");
        k.eq("exta", &[], "S(R2) alpha R1", "S(alpha) u");
        r.sort();
        r
    }

    fn functional_matrix(&self, c: &Ctx<'_>, expr: &str) -> Result<DenseMatrix> {
        // t[i][j] = coefficient of e_j in the image of e^i
        Ok(c.eval(&["chi"], expr)?.to_matrix(self.hopf.field).transpose())
    }

    /// `Q` computed from both of its closed formulas.
    pub fn q_map_both(&self) -> Result<(DenseMatrix, DenseMatrix)> {
        self.hopf.pq_elements()?;
        let c = self.ctx();
        let q1 = self.functional_matrix(&c, "chi(S(X2_2 pL2) f1 R2 r1 U1 X3) X1 S(X2_1 pL1) f2 R1 r2 U2")?;
        let q2 = self.functional_matrix(&c, "chi(qL1 X1 R2 r1 p1) qL2_1 X2 R1 r2 p2 S(qL2_2 X3)")?;
        Ok((q1, q2))
    }

    /// The map `Q: H* → H`; both formulas must agree.
    pub fn q_map(&self) -> Result<DenseMatrix> {
        let (a, b) = self.q_map_both()?;
        if a != b {
            return Err(Error::Check("formula mismatch".into()));
        }
        Ok(a)
    }

    pub fn qbar_map(&self) -> Result<DenseMatrix> {
        self.hopf.pq_elements()?;
        let c = self.ctx();
        self.functional_matrix(&c, "chi(Si(X3) q2 R1 r2 X2_2 pL2) q1 R2 r1 X2_1 pL1 Si(X1)")
    }

    pub fn factorizability(&self) -> Result<Factorizability> {
        let q = self.q_map()?;
        let qbar = self.qbar_map()?;
        let s = &self.hopf.antipode;
        let via_bar = s.mul(&qbar)?.mul(&s.transpose())?;
        if via_bar != q {
            return Err(Error::Check("Q ≠ S∘Q̄∘S*".into()));
        }
        let rank = q.rank();
        Ok(Factorizability { factorizable: rank == self.hopf.dim, rank, q, qbar })
    }

    pub fn is_factorizable(&self) -> Result<bool> {
        Ok(self.factorizability()?.factorizable)
    }

    /// The factorizability maps as report entries.
    pub fn check_factorizability(&self) -> Report {
        let mut r = Report::new("factorizability maps");
        match self.q_map_both() {
            Ok((a, b)) => {
                r.compare("qf1=qf2", &SparseTensor::from_matrix(&a), &SparseTensor::from_matrix(&b), 0);
                match self.qbar_map() {
                    Ok(qbar) => {
                        let s = &self.hopf.antipode;
                        let rhs = s.mul(&qbar).and_then(|m| m.mul(&s.transpose()));
                        match rhs {
                            Ok(rhs) => {
                                r.compare("oqf", &SparseTensor::from_matrix(&a), &SparseTensor::from_matrix(&rhs), 0);
                                r.check("rank", a.rank() == qbar.rank(), format!("rank Q = {}, rank Q̄ = {}", a.rank(), qbar.rank()));
                            }
                            Err(e) => {
                                r.check("oqf", false, e.to_string());
                            }
                        }
                    }
                    Err(e) => {
                        r.check("oqf", false, e.to_string());
                    }
                }
            }
            Err(e) => {
                r.check("qf1=qf2", false, e.to_string());
            }
        }
        r.sort();
        r
    }

    /// `R̃ = R⁻¹₂₁`, a second R-matrix on the same algebra.
    pub fn tilde(&self) -> Result<QuasiTriangular> {
        let rt = self.r_inv()?.permute(&[1, 0]);
        QuasiTriangular::new(self.hopf.clone(), rt)
    }

    /// All quasi-Hopf and quasi-triangular checks.
    pub fn check_all(&self) -> Report {
        let (mut r, (qt, u)) = rayon::join(|| self.hopf.check_all(), || rayon::join(|| self.check_qt(), || self.check_u()));
        r.extend(qt);
        r.extend(u);
        r.title = "quasi-triangular quasi-Hopf axioms".into();
        r.sort();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{group_algebra, sweedler_h4};
    use crate::scalar::Field;

    fn qt(p: crate::io::Presentation) -> QuasiTriangular {
        QuasiTriangular::new(p.hopf, p.r_matrix.unwrap()).unwrap()
    }

    #[test]
    fn trivial_r_matrix() {
        let t = qt(group_algebra(Field::Q, 2).unwrap());
        assert!(t.check_all().passed());
        let (u, _) = t.u_element().unwrap();
        assert_eq!(u, &t.hopf.alg.unit);
        let fz = t.factorizability().unwrap();
        assert_eq!((fz.rank, fz.factorizable), (1, false));
        // Q(χ) = χ(1)·1
        assert_eq!(fz.q, DenseMatrix::from_ints(Field::Q, &[&[1, 0], &[0, 0]]));
        assert!(t.check_factorizability().passed());
        let one = group_algebra(Field::Q, 1).unwrap();
        assert!(qt(one).is_factorizable().unwrap());
    }

    #[test]
    fn bad_r_matrix() {
        let p = group_algebra(Field::Q, 2).unwrap();
        let mut r = SparseTensor::zero(vec![2, 2]);
        r.add_idx(&[0, 1], Field::Q.one());
        let t = QuasiTriangular::new(p.hopf, r).unwrap();
        let rep = t.check_qt();
        assert!(!rep.get("qt4:1").unwrap().passed());
        assert!(rep.get("qt4:2").unwrap().passed());
    }

    #[test]
    fn sweedler_family() {
        let f = Field::Q;
        for v in [0, 1, 3] {
            let t = qt(sweedler_h4(f, Some(f.int(v))).unwrap());
            let r = t.check_all();
            assert!(r.passed(), "{r}");
            assert!(t.check_factorizability().passed());
            assert!(!t.is_factorizable().unwrap());
            let tt = t.tilde().unwrap();
            assert!(tt.check_qt().passed());
        }
    }
}
