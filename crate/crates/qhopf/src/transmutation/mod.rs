//! Transmutation: braided Hopf algebras attached to a quasi-triangular
//! quasi-Hopf algebra `(H, R)` and to its coquasitriangular dual, all checked
//! as matrix identities in the category of left `H`-modules.
//!
//! Carriers are `H` (basis `e_i`) or `H*` (dual basis `e^i`). Structure maps
//! are matrices whose columns are images of basis vectors.

pub mod category;
pub mod dual;

use crate::error::Result;
use crate::linear::DenseMatrix;
use crate::quasitriangular::QuasiTriangular;
use crate::report::Report;
use crate::tensor::SparseTensor;

pub use category::{flip, intertwiners, BraidedHopf, Category, Module};
pub use dual::{CqtData, DualQuasiHopf, DualTwist, ThetaData};

use crate::quasihopf::Checker;

fn mult_matrix(t: &SparseTensor, d: usize, field: crate::Field) -> DenseMatrix {
    t.reshape(vec![d * d, d]).to_matrix(field).transpose()
}

fn comult_matrix(t: &SparseTensor, d: usize, field: crate::Field) -> DenseMatrix {
    t.reshape(vec![d, d * d]).to_matrix(field).transpose()
}

/// The enveloping algebra braided group `H̲`: `H` with the adjoint action
/// `h▷k = h₁kS(h₂)`, the product `•`, unit `β`, counit `ε` and the
/// transmuted coproduct and antipode.
pub fn enveloping_braided_group(qt: &QuasiTriangular) -> Result<BraidedHopf> {
    let h = &qt.hopf;
    h.pq_elements()?;
    h.drinfeld_twist()?;
    let c = qt.ctx();
    let (d, f) = (h.dim, h.field);
    let action = c.eval(&["h", "k"], "h_1 k S(h_2)")?;
    let mult = c.eval(&["h", "k"], "X1 h S(x1 X2) alpha x2 X3_1 k S(x3 X3_2)")?;
    let comult = c.eval(&["h"], "t = x3 R1; x1 X1 h_1 fi1 S(x2 R2 y3 X3_2) | t_1 y1 X2 h_2 fi2 S(y2 X3_1) S(t_2)")?;
    let antipode = c.eval(&["h"], "t = X2 R1 p1; X1 R2 p2 S(q1 t_1 h S(t_2) S(q2) X3)")?;
    Ok(BraidedHopf {
        module: Module::from_tensor(&action, f),
        mult: mult_matrix(&mult, d, f),
        unit: h.beta.clone(),
        comult: comult_matrix(&comult, d, f),
        counit: h.coalg.counit.clone(),
        antipode: antipode.to_matrix(f).transpose(),
    })
}

/// `H̲*`, the function algebra braided group of the dual `H*`, written
/// directly in terms of `H`.
pub fn function_braided_group(qt: &QuasiTriangular) -> Result<BraidedHopf> {
    let h = &qt.hopf;
    h.pq_elements()?;
    h.drinfeld_twist()?;
    qt.r_inv()?;
    let c = qt.ctx();
    let (d, f) = (h.dim, h.field);
    let action = c.eval_scalar(&["h", "k", "chi"], "chi(S(h_1) k h_2)")?;
    let mult = c.eval_scalar(
        &["h", "chi", "psi"],
        "chi(S(x1 X1) f2 R1 h_1 x3_1 Y2 r1 y1 X2) psi(S(x2 Y1 r2 y2 X3_1) f1 R2 h_2 x3_2 Y3 y3 X3_2)",
    )?;
    let comult = c.eval_scalar(&["h", "k", "chi"], "chi(S(x1) h x2 X1 beta S(x3_1 X2) k x3_2 X3)")?;
    let antipode = c.eval_scalar(&["h", "chi"], "t = q1 Rb1; chi(S(q2 Rb2 S(t_1 pL1) h t_2 pL2))")?;
    Ok(BraidedHopf {
        module: Module::from_tensor(&action.permute(&[0, 2, 1]), f),
        mult: mult.reshape(vec![d, d * d]).to_matrix(f),
        unit: h.coalg.counit.clone(),
        comult: comult.reshape(vec![d * d, d]).to_matrix(f),
        counit: h.alpha.clone(),
        antipode: antipode.to_matrix(f),
    })
}

/// `λ: (H̲)* → H̲*`, `λ(χ) = χ(S(g²·S⁻¹(g¹)))` with `f⁻¹ = g¹⊗g²`, and its inverse.
pub fn lambda_map(qt: &QuasiTriangular) -> Result<(DenseMatrix, DenseMatrix)> {
    qt.hopf.drinfeld_twist()?;
    qt.hopf.antipode_inv()?;
    let c = qt.ctx();
    let f = qt.hopf.field;
    let l = c.eval_scalar(&["h", "chi"], "chi(S(fi2 h Si(fi1)))")?.to_matrix(f);
    let li = c.eval_scalar(&["h", "chi"], "chi(Si(f1 h S(f2)))")?.to_matrix(f);
    Ok((l, li))
}

/// Every transmutation check on the host side:
/// - `Hbar:*`, `Hstar:*`, `dualH:*`: the braided Hopf axioms;
/// - `route:*`: `H̲*` agrees with `Ā` computed from the dual;
/// - `lambda:*`, `Q:*`: the two morphisms into `H̲*` and `H̲`.
pub fn check_transmutation(qt: &QuasiTriangular) -> Report {
    let mut r = Report::new("transmutation");
    let cat = match Category::new(qt) {
        Ok(c) => c,
        Err(e) => {
            r.check("category", false, e.to_string());
            return r;
        }
    };
    let hbar = enveloping_braided_group(qt);
    r.outcome("Hbar", &hbar);
    let hstar = function_braided_group(qt);
    r.outcome("Hstar", &hstar);
    let (Ok(hbar), Ok(hstar)) = (hbar, hstar) else {
        r.sort();
        return r;
    };
    r.extend(cat.check_braided_hopf(&hbar, "Hbar"));
    r.extend(cat.check_braided_hopf(&hstar, "Hstar"));
    r.extend(check_identities(qt, &hbar));

    match DualQuasiHopf::dualize(&qt.hopf, Some(&qt.r)).and_then(|a| a.function_braided_group()) {
        Ok(abar) => {
            r.check("route:action", abar.module == hstar.module, "actions differ");
            category::compare(&mut r, "route:mult", Ok(abar.mult), Ok(hstar.mult.clone()));
            category::compare(&mut r, "route:comult", Ok(abar.comult), Ok(hstar.comult.clone()));
            category::compare(&mut r, "route:antipode", Ok(abar.antipode), Ok(hstar.antipode.clone()));
            r.check("route:unit", abar.unit == hstar.unit, "units differ");
            r.check("route:counit", abar.counit == hstar.counit, "counits differ");
        }
        Err(e) => {
            r.check("route", false, e.to_string());
        }
    }

    match cat.dual_hopf(&hbar) {
        Ok(dh) => {
            r.extend(cat.check_braided_hopf(&dh, "dualH"));
            let m = &hbar.module;
            let round = cat.phi_star(m, m).mul(&cat.phi_star_inv(m, m));
            r.check("dualH:phi-star", round.map(|x| x.is_identity()).unwrap_or(false), "φ*∘φ*⁻¹ ≠ id");
            let c = qt.ctx();
            let d = qt.hopf.dim;
            let mscd = c
                .eval_scalar(
                    &["h", "chi", "psi"],
                    "t = x3 R1; chi(f2_1 t_1 y1 X2 h_2 fi2 S(y2 X3_1) S(t_2) S(f2_2)) psi(f1_1 x1 X1 h_1 fi1 S(x2 R2 y3 X3_2) S(f1_2))",
                )
                .map(|t| t.reshape(vec![d, d * d]).to_matrix(qt.hopf.field));
            category::compare(&mut r, "dualH:mult-formula", Ok(dh.mult.clone()), mscd);
            match lambda_map(qt) {
                Ok((l, li)) => {
                    r.outcome("lambda:bijective", &category::invertible_pair(&l, &li));
                    r.extend(cat.check_hopf_morphism(&l, &dh, &hstar, "lambda"));
                }
                Err(e) => {
                    r.check("lambda", false, e.to_string());
                }
            }
        }
        Err(e) => {
            r.check("dualH", false, e.to_string());
        }
    }

    match qt.q_map() {
        Ok(q) => {
            r.extend(cat.check_hopf_morphism(&q, &hstar, &hbar, "Q"));
        }
        Err(e) => {
            r.check("Q", false, e.to_string());
        }
    }
    r.sort();
    r
}

/// The dual-side suites on `H*` with `σ = R`: dual quasi-Hopf axioms, the
/// dual twist, coquasitriangularity, `Ā` and the bijection `θ`.
pub fn check_dual_side(qt: &QuasiTriangular) -> Report {
    let mut r = Report::new("transmutation of the dual");
    match DualQuasiHopf::dualize(&qt.hopf, Some(&qt.r)) {
        Ok(a) => {
            for part in [a.check_dual_quasi_hopf(), a.check_dual_twist(), a.check_cqt(), a.check_function_braided_group(), a.check_theta()] {
                r.extend(part);
            }
        }
        Err(e) => {
            r.check("dualize", false, e.to_string());
        }
    }
    r.sort();
    r
}

/// Element identities behind the host-side structures: the two forms of
/// `•` and of `Δ̲`, and `S(g¹)αg² = S(β)`.
fn check_identities(qt: &QuasiTriangular, hbar: &BraidedHopf) -> Report {
    let mut r = Report::new("transmutation identities");
    let c = qt.ctx();
    let (d, f) = (qt.hopf.dim, qt.hopf.field);
    let mut k = Checker { ctx: &c, report: &mut r };
    k.eq("ma=alma", &["h", "k"], "X1 h S(x1 X2) alpha x2 X3_1 k S(x3 X3_2)", "X1 x1_1 h S(X2 x1_2) alpha X3 x2 k S(x3)");
    let alt = c
        .eval(&["h"], "x1 X1 h_1 r2 fi2 S(x2 Y1 R2 y2 X3_1) | x3_1 Y2 R1 y1 X2 h_2 r1 fi1 S(x3_2 Y3 y3 X3_2)")
        .map(|t| comult_matrix(&t, d, f));
    category::compare(k.report, "und=fff4", Ok(hbar.comult.clone()), alt);
    k.eq("fff5", &[], "S(fi1) alpha fi2", "S(beta)");
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::build_double;
    use crate::generators::{cocycle_dual, group_algebra, sweedler_h4};
    use crate::scalar::Field;

    fn hosts() -> Vec<(&'static str, QuasiTriangular)> {
        let kz2 = group_algebra(Field::Q, 2).unwrap();
        let d_kz2 = build_double(&kz2.hopf).unwrap().qt;
        let d_cd = build_double(&cocycle_dual(Field::Q, 2).unwrap().hopf).unwrap().qt;
        vec![
            ("kZ2", qt_of(kz2)),
            ("kZ3", qt_of(group_algebra(Field::fp(7).unwrap(), 3).unwrap())),
            ("H4", qt_of(sweedler_h4(Field::Q, Some(Field::Q.int(1))).unwrap())),
            ("D(kZ2)", d_kz2),
            ("D(cocycle)", d_cd),
        ]
    }

    fn qt_of(p: crate::io::Presentation) -> QuasiTriangular {
        QuasiTriangular::new(p.hopf, p.r_matrix.unwrap()).unwrap()
    }

    #[test]
    fn host_side_structures() {
        for (name, qt) in hosts() {
            let r = check_transmutation(&qt);
            assert!(r.passed(), "{name}: {r}");
        }
    }

    #[test]
    fn q_is_a_morphism_for_every_host() {
        for (name, qt) in hosts() {
            let r = check_transmutation(&qt);
            let q: Vec<_> = r.entries.iter().filter(|e| e.id.starts_with("Q:")).collect();
            assert!(!q.is_empty() && q.iter().all(|e| e.passed()), "{name}: {r}");
        }
    }

    #[test]
    fn dual_side_structures() {
        for (name, qt) in hosts() {
            let r = check_dual_side(&qt);
            assert!(r.passed(), "{name}: {r}");
        }
    }

    #[test]
    fn dual_twist_matches_host_twist() {
        for (name, qt) in hosts() {
            let a = DualQuasiHopf::dualize(&qt.hopf, Some(&qt.r)).unwrap();
            let t = a.dual_drinfeld_twist().unwrap();
            let h = qt.hopf.drinfeld_twist().unwrap();
            assert_eq!((&t.f, &t.f_inv), (&h.f, &h.f_inv), "{name}");
        }
    }

    #[test]
    fn kz2_reduces_to_the_classical_structures() {
        let qt = qt_of(group_algebra(Field::Q, 2).unwrap());
        let f = Field::Q;
        let hbar = enveloping_braided_group(&qt).unwrap();
        let a = &qt.hopf.alg;
        let prod = DenseMatrix::from_columns(f, 2, &(0..4).map(|k| a.mul(&a.basis(k / 2), &a.basis(k % 2))).collect::<Vec<_>>());
        assert_eq!(hbar.mult, prod);
        let (l, _) = lambda_map(&qt).unwrap();
        assert_eq!(l, qt.hopf.antipode.transpose());
        // Q(χ) = χ(1)·1 for the trivial R-matrix
        let q = qt.q_map().unwrap();
        assert_eq!(q, DenseMatrix::from_ints(f, &[&[1, 0], &[0, 0]]));
        assert!(!qt.is_factorizable().unwrap());
    }

    #[test]
    fn phi_star_on_regular_module() {
        let qt = qt_of(group_algebra(Field::Q, 2).unwrap());
        let cat = Category::new(&qt).unwrap();
        let m = cat.regular();
        let p = cat.phi_star(&m, &m).mul(&flip(Field::Q, 2, 2)).unwrap();
        assert!(p.is_identity());
    }

    fn flipped_phi(a: &DualQuasiHopf) -> DualQuasiHopf {
        let mut phi = a.phi.clone();
        let (k, v) = phi.iter().next().map(|(k, v)| (k, v.clone())).unwrap();
        phi.add_at(k, v.neg().add(&v.neg()));
        DualQuasiHopf::new(a.field, a.comult.clone(), a.counit.clone(), a.mult.clone(), a.unit.clone(), phi, a.antipode.clone(), a.alpha.clone(), a.beta.clone(), None)
            .unwrap()
    }

    fn swapped_sigma(a: &DualQuasiHopf) -> DualQuasiHopf {
        let mut s = a.sigma.clone().unwrap();
        let (k, v) = s.iter().next().map(|(k, v)| (k, v.clone())).unwrap();
        let j = (0..s.size()).find(|&j| s.get_flat(j) != Some(&v)).unwrap();
        let w = s.get_flat(j).cloned().unwrap_or(a.field.zero());
        s.add_at(k, w.sub(&v));
        s.add_at(j, v.sub(&w));
        a.with_sigma(Some(s)).unwrap()
    }

    #[test]
    fn mutations_are_caught() {
        let kz2 = qt_of(group_algebra(Field::Q, 2).unwrap());
        let a = DualQuasiHopf::dualize(&kz2.hopf, None).unwrap();
        assert!(!flipped_phi(&a).check_dual_quasi_hopf().get("dq3").unwrap().passed());

        // commutative and cocommutative, so (cqt3) cannot see the change
        let d = build_double(&kz2.hopf).unwrap().qt;
        let a = DualQuasiHopf::dualize(&d.hopf, Some(&d.r)).unwrap();
        let r = swapped_sigma(&a).check_cqt();
        assert!(r.get("cqt3").unwrap().passed() && !r.passed(), "{r}");

        let h4 = qt_of(sweedler_h4(Field::Q, Some(Field::Q.int(1))).unwrap());
        let a = DualQuasiHopf::dualize(&h4.hopf, Some(&h4.r)).unwrap();
        assert!(!swapped_sigma(&a).check_cqt().get("cqt3").unwrap().passed());
    }

    #[test]
    fn cocycle_dual_without_sigma() {
        let h = cocycle_dual(Field::Q, 2).unwrap().hopf;
        let a = DualQuasiHopf::dualize(&h, None).unwrap();
        assert!(a.check_dual_quasi_hopf().passed());
        assert!(a.check_dual_twist().passed());
        let t = a.dual_drinfeld_twist().unwrap();
        assert_eq!(t.f, h.drinfeld_twist().unwrap().f);
    }

    #[test]
    fn theta_on_trivial_sigma() {
        let qt = qt_of(group_algebra(Field::Q, 2).unwrap());
        let a = DualQuasiHopf::dualize(&qt.hopf, Some(&qt.r)).unwrap();
        let d = a.theta_bijection().unwrap();
        assert_eq!((d.hom.len(), d.nat.len()), (2, 2));
        // with every decoration trivial θ⁻¹∘θ is the identity on all of Hom_k(Ā, A)
        for i in 0..4 {
            let mut x = DenseMatrix::zeros(Field::Q, 2, 2);
            x.set(i / 2, i % 2, Field::Q.one());
            assert_eq!(d.theta_inv(&d.theta(&x)), x);
        }
        assert!(a.check_theta().passed());
    }

    #[test]
    fn q_is_an_isomorphism_when_factorizable() {
        let qt = build_double(&group_algebra(Field::Q, 2).unwrap().hopf).unwrap().qt;
        assert!(qt.is_factorizable().unwrap());
        let q = qt.q_map().unwrap();
        assert!(crate::linear::invert_matrix(&q).is_ok());
        let (l, li) = lambda_map(&qt).unwrap();
        assert!(l.mul(&li).unwrap().is_identity());
    }
}
