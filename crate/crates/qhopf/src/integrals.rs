//! Integrals, the modulus, the cointegral and the comodulus.

use crate::error::{Error, Result};
use crate::expr::Ctx;
use crate::linear::{nullspace, CoordVector, DenseMatrix};
use crate::quasihopf::{Checker, QuasiHopf, H};
use crate::quasitriangular::QuasiTriangular;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralData {
    /// Left integral, scaled so that `λ(S⁻¹(t)) = 1`.
    pub left: CoordVector,
    /// `S⁻¹(t)`, a right integral.
    pub right: CoordVector,
    /// `μ` with `th = μ(h)t`.
    pub modulus: CoordVector,
    /// The left cointegral `λ` with `θ̄(λ) = 1`.
    pub cointegral: CoordVector,
    pub comodulus: CoordVector,
    pub comodulus_inv: CoordVector,
}

fn kernel_of_stack(h: &QuasiHopf, right: bool) -> Vec<CoordVector> {
    let n = h.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        let e = h.alg.basis(i);
        let m = if right { h.alg.right_mult(&e) } else { h.alg.left_mult(&e) };
        for r in 0..n {
            let mut row = m.row(r).to_vec();
            row[r] = row[r].sub(&h.coalg.counit[i]);
            rows.push(row);
        }
    }
    nullspace(&DenseMatrix::from_rows(h.field, rows).expect("rectangular"))
}

/// Bases of the left and the right integrals.
pub fn integral_spaces(h: &QuasiHopf) -> (Vec<CoordVector>, Vec<CoordVector>) {
    (kernel_of_stack(h, false), kernel_of_stack(h, true))
}

/// The spanning left integral (first nonzero coordinate 1). Refuses inputs
/// whose integral space is not a line.
pub fn left_integral(h: &QuasiHopf) -> Result<CoordVector> {
    let (mut l, _) = integral_spaces(h);
    if l.len() != 1 {
        return Err(Error::Check(format!("left integrals span dimension {}", l.len())));
    }
    Ok(l.pop().unwrap())
}

/// `μ` read off from `t·e_i = μ(e_i) t`.
pub fn modulus(h: &QuasiHopf, t: &[Scalar]) -> Result<CoordVector> {
    let k = t.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Invalid("zero integral".into()))?;
    let mut mu = Vec::with_capacity(h.dim);
    for i in 0..h.dim {
        let th = h.alg.mul(t, &h.alg.basis(i));
        let c = th[k].div(&t[k]).expect("nonzero pivot");
        if th.iter().zip(t).any(|(a, b)| *a != b.mul(&c)) {
            return Err(Error::Check(format!("t·e{i} is not a multiple of t")));
        }
        mu.push(c);
    }
    Ok(mu)
}

pub fn is_unimodular(h: &QuasiHopf) -> Result<bool> {
    let t = left_integral(h)?;
    Ok(modulus(h, &t)? == h.coalg.counit)
}

/// Context with the Drinfeld twist and the p/q elements bound.
fn full_ctx(h: &QuasiHopf) -> Result<Ctx<'_>> {
    let mut c = h.ctx();
    h.drinfeld_twist()?.bind(&mut c);
    h.pq_elements()?.bind(&mut c);
    Ok(c)
}

/// `θ̄(χ) = χ(q²t₂p²)q¹t₁p¹`; column `i` is `θ̄(e^i)`.
pub fn theta_bar(h: &QuasiHopf, t: &[Scalar]) -> Result<DenseMatrix> {
    let tt = SparseTensor::vector(t);
    let mut c = full_ctx(h)?;
    c.tensor("t", &tt, &[H]);
    Ok(c.eval(&["chi"], "chi(q2 t_2 p2) q1 t_1 p1")?.to_matrix(h.field).transpose())
}

/// The cointegral `λ = θ̄⁻¹(1)`.
pub fn cointegral(h: &QuasiHopf, t: &[Scalar]) -> Result<CoordVector> {
    let th = theta_bar(h, t)?;
    let inv = crate::linear::invert_matrix(&th).map_err(|_| Error::Check("θ̄ is singular".into()))?;
    inv.mul_vec(&h.alg.unit)
}

fn pair(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(a.first().map(|x| x.field().zero()).unwrap_or_else(|| crate::Field::Q.zero()), |s, (x, y)| s.add(&x.mul(y)))
}

/// The comodulus and its inverse, each from both of its formulas; they must
/// agree. `t` must satisfy `λ(S⁻¹(t)) = 1`.
pub fn comodulus(h: &QuasiHopf, t: &[Scalar], lambda: &[Scalar]) -> Result<(CoordVector, CoordVector)> {
    let r = h.antipode_inv()?.mul_vec(t)?;
    let (tt, rt, lt) = (SparseTensor::vector(t), SparseTensor::vector(&r), SparseTensor::vector(lambda));
    let mut c = full_ctx(h)?;
    c.tensor("t", &tt, &[H]).tensor("r", &rt, &[H]).form("lam", &lt, &[H]);
    let f = h.field;
    let g3 = c.eval(&[], "lam(V1 r_1 U1) V2 r_2 U2")?.to_dense(f);
    let g5 = c.eval(&[], "lam(Si(q2 t_2 p2)) Si(q1 t_1 p1)")?.to_dense(f);
    let gi4 = c.eval(&[], "lam(S(V2 r_2 U2)) S(S(V1 r_1 U1))")?.to_dense(f);
    let gi6 = c.eval(&[], "lam(q1 t_1 p1) S(q2 t_2 p2)")?.to_dense(f);
    if g3 != g5 {
        return Err(Error::Check("the two comodulus formulas disagree".into()));
    }
    if gi4 != gi6 {
        return Err(Error::Check("the two inverse comodulus formulas disagree".into()));
    }
    if h.alg.mul(&g3, &gi4) != h.alg.unit {
        return Err(Error::Check("comodulus times its inverse is not 1".into()));
    }
    Ok((g3, gi4))
}

/// Integral, modulus, cointegral and comodulus, with `λ(r) = 1`, `r = S⁻¹(t)`.
pub fn integrals(h: &QuasiHopf) -> Result<IntegralData> {
    let t0 = left_integral(h)?;
    let lambda = cointegral(h, &t0)?;
    let s_inv = h.antipode_inv()?;
    let c = pair(&lambda, &s_inv.mul_vec(&t0)?);
    let c_inv = c.inv().ok_or_else(|| Error::Check("cointegral vanishes on the right integral".into()))?;
    // θ̄ is linear in t, so rescaling t rescales λ inversely
    let t: CoordVector = t0.iter().map(|x| x.mul(&c_inv)).collect();
    let lambda = cointegral(h, &t)?;
    let right = s_inv.mul_vec(&t)?;
    let modulus = modulus(h, &t)?;
    let (g, gi) = comodulus(h, &t, &lambda)?;
    Ok(IntegralData { left: t, right, modulus, cointegral: lambda, comodulus: g, comodulus_inv: gi })
}

/// Integral spaces, the modulus as a character, the cointegral equation and
/// the comodulus formulas.
pub fn check_integrals(h: &QuasiHopf) -> Report {
    let mut r = Report::new("integrals");
    let (l, rt) = integral_spaces(h);
    r.check("int-left-dim", l.len() == 1, format!("dimension {}", l.len()));
    r.check("int-right-dim", rt.len() == 1, format!("dimension {}", rt.len()));
    if l.len() == 1 && rt.len() == 1 {
        let st = h.apply_antipode(&l[0]);
        let m = DenseMatrix::from_columns(h.field, h.dim, &[st, rt[0].clone()]);
        r.check("int-antipode", m.rank() == 1, "S(t) is not a right integral");
    }
    let d = match integrals(h) {
        Ok(d) => d,
        Err(e) => {
            r.check("integrals", false, e.to_string());
            r.sort();
            return r;
        }
    };
    r.check("comodulus", true, "");
    r.compare_scalar("lambda-r", &pair(&d.cointegral, &d.right), &h.field.one());
    let (mu, lam) = (SparseTensor::vector(&d.modulus), SparseTensor::vector(&d.cointegral));
    let mut c = match full_ctx(h) {
        Ok(c) => c,
        Err(e) => {
            r.check("integrals", false, e.to_string());
            return r;
        }
    };
    c.form("mu", &mu, &[H]).form("lam", &lam, &[H]);
    let mut k = Checker { ctx: &c, report: &mut r };
    k.eq_scalar("mu-mult", &["h", "k"], "mu(h k)", "mu(h) mu(k)");
    k.eq_scalar("mu-unit", &[], "mu(one)", "1");
    k.eq_scalar("mu-inverse:1", &["h"], "mu(h_1) mu(S(h_2))", "eps(h)");
    k.eq_scalar("mu-inverse:2", &["h"], "mu(S(h_1)) mu(h_2)", "eps(h)");
    k.eq_scalar("mu-inverse:3", &["h"], "mu(S(h))", "mu(Si(h))");
    k.eq("fu2", &["h"], "lam(V2 h_2 U2) V1 h_1 U1", "mu(x1) lam(h S(x2)) x3");
    r.sort();
    r
}

/// The chain of identities relating integrals to an R-matrix, ending with
/// `μ(R²r¹)R¹r² = 1` and `Q(μ) = μ(α)β`.
pub fn verify_integral_identities(qt: &QuasiTriangular) -> Report {
    let mut r = Report::new("integral identities");
    if let Err(e) = identities_into(qt, &mut r) {
        r.check("integrals", false, e.to_string());
    }
    r.sort();
    r
}

fn identities_into(qt: &QuasiTriangular, r: &mut Report) -> Result<()> {
    let h = &qt.hopf;
    let d = integrals(h)?;
    let (u, ui) = qt.u_element()?.clone();
    let tq = qt.tilde()?;
    let (ut, uti) = tq.u_element()?.clone();
    let pq = h.pq_elements()?;
    let vecs: Vec<SparseTensor> = [&d.left, &d.modulus, &d.cointegral, &d.comodulus, &u, &ui, &ut, &uti].iter().map(|v| SparseTensor::vector(v)).collect();
    let [t, mu, lam, g, ut_, uit_, utt, uitt] = &vecs[..] else { unreachable!() };
    let mut c = qt.ctx();
    c.tensor("t", t, &[H]).form("mu", mu, &[H]).form("lam", lam, &[H]).tensor("cg", g, &[H]);
    c.tensor("u", ut_, &[H]).tensor("ui", uit_, &[H]).tensor("ut", utt, &[H]).tensor("uti", uitt, &[H]);
    c.tensor("QQ", &pq.q_r, &[H, H]).tensor("PP", &pq.p_r, &[H, H]);
    let mut k = Checker { ctx: &c, report: r };
    k.eq("fu7", &[], "q1 t_1 | q2 t_2", "qL1 t_1 | qL2 t_2");
    k.eq("fu8", &[], "q1 | q2", "m = Si(qL1); qL2 V1 m_1 | V2 m_2");
    k.eq("fu9", &[], "p1 | p2", "m = S(pL1); m_1 U1 pL2 | m_2 U2");
    k.eq("fu10", &["h"], "U1 | U2 S(h)", "m = S(h_1); m_1 U1 h_2 | m_2 U2");
    k.eq("fu11", &[], "q1 t_1 | q2 t_2", "V1 t_1 | V2 t_2");
    k.eq("fu12", &[], "U1 | U2", "qL1_1 p1 | qL1_2 p2 S(qL2)");
    k.eq("fu13", &[], "lam(q2 t_2 p2) q1 t_1 p1", "one");
    k.eq("fu14", &["h"], "q1 t_1 | Si(h) q2 t_2", "h q1 t_1 | q2 t_2");
    k.eq("fu15:1", &[], "t_1 | t_2", "beta q1 t_1 | q2 t_2");
    k.eq("fu15:2", &[], "t_1 | t_2", "q1 t_1 | Si(beta) q2 t_2");
    k.eq("fu16", &["h"], "mu(h_1) t_1 p1 | t_2 p2 S(h_2)", "t_1 p1 h | t_2 p2");
    k.eq("fu17", &[], "m = R2 PP2; mu(QQ1) mu(m_1) q2 t_2 p2 S(QQ2 m_2) R1 PP1 | q1 t_1 p1", "S(u) q1 t_1 p1 | q2 t_2 p2");
    k.eq("fu18", &[], "R1 beta S(R2)", "S(beta u)");
    k.eq("fu19", &[], "m = R2 PP2; mu(QQ1) mu(m_1) S(QQ2 m_2) R1 PP1", "S(u) S(cg)");
    k.eq("fu20", &[], "mu(X1 R2 PP2 S(X3) f1) Si(S(X2) f2) R1 PP1", "ui S(u) S(cg)");
    k.eq("fu21", &[], "mu(X1 rb1 PP2 S(X3) f1) Si(S(X2) f2) rb2 PP1", "uti S(ut) S(cg)");
    k.eq("fu22", &[], "ut", "S(ui)");
    k.eq("fu23:1", &[], "rb2 beta S(rb1)", "Si(beta) ui");
    k.eq("fu23:2", &[], "rb2 beta S(rb1)", "ui S(beta)");
    k.eq("fu24", &[], "mu(X1 rb1 PP2 S(X3) f1) Si(S(X2) f2) rb2 PP1", "S(u) ui S(cg)");
    k.eq("fu25", &[], "mu(R2 r1) R1 r2", "one");
    let q = qt.q_map()?;
    let qmu = q.mul_vec(&d.modulus)?;
    let mu_alpha = pair(&d.modulus, &h.alpha);
    let want: CoordVector = q.mul_vec(&h.coalg.counit)?.iter().map(|x| x.mul(&mu_alpha)).collect();
    r.compare("qmu", &SparseTensor::vector(&qmu), &SparseTensor::vector(&want), 0);
    if qt.is_factorizable()? {
        r.check("unimodular", d.modulus == h.coalg.counit, "factorizable but not unimodular");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::build_double;
    use crate::generators::{cocycle_dual, group_algebra, sweedler_h4};
    use crate::scalar::Field;

    #[test]
    fn group_algebra_integrals() {
        let f = Field::Q;
        let h = group_algebra(f, 2).unwrap().hopf;
        let (l, r) = integral_spaces(&h);
        assert_eq!(l, vec![vec![f.one(), f.one()]]);
        assert_eq!(r, l);
        assert!(is_unimodular(&h).unwrap());
        let d = integrals(&h).unwrap();
        assert_eq!(d.comodulus, h.alg.unit);
        assert!(check_integrals(&h).passed());
    }

    #[test]
    fn dual_group_integral_is_the_counit_idempotent() {
        let h = cocycle_dual(Field::Q, 2).unwrap().hopf;
        let t = left_integral(&h).unwrap();
        assert_eq!(t, vec![Field::Q.one(), Field::Q.zero()]);
        let r = check_integrals(&h);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn sweedler_is_not_unimodular() {
        let f = Field::Q;
        let p = sweedler_h4(f, Some(f.one())).unwrap();
        let (l, r) = integral_spaces(&p.hopf);
        assert_ne!(l, r);
        let mu = modulus(&p.hopf, &l[0]).unwrap();
        assert_ne!(mu, p.hopf.coalg.counit);
        // t = x + gx and t·g = −t
        assert_eq!(l[0], vec![f.zero(), f.zero(), f.one(), f.one()]);
        assert_eq!(mu, vec![f.one(), f.int(-1), f.zero(), f.zero()]);
        assert!(!is_unimodular(&p.hopf).unwrap());
        let rep = check_integrals(&p.hopf);
        assert!(rep.passed(), "{rep}");
        let qt = QuasiTriangular::new(p.hopf, p.r_matrix.unwrap()).unwrap();
        let rep = verify_integral_identities(&qt);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn cointegral_scales_inversely() {
        let f = Field::Q;
        let h = group_algebra(f, 2).unwrap().hopf;
        let t = left_integral(&h).unwrap();
        let l1 = cointegral(&h, &t).unwrap();
        let t2: CoordVector = t.iter().map(|x| x.mul(&f.int(2))).collect();
        let l2 = cointegral(&h, &t2).unwrap();
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(l2, l1.iter().map(|x| x.mul(&half)).collect::<Vec<_>>());
    }

    #[test]
    fn doubles_are_unimodular() {
        let f7 = Field::fp(7).unwrap();
        for h in [group_algebra(Field::Q, 2).unwrap().hopf, cocycle_dual(Field::Q, 2).unwrap().hopf, cocycle_dual(f7, 3).unwrap().hopf, sweedler_h4(Field::Q, None).unwrap().hopf] {
            let d = build_double(&h).unwrap();
            assert!(is_unimodular(&d.qt.hopf).unwrap());
            let rep = verify_integral_identities(&d.qt);
            assert!(rep.passed(), "{rep}");
            assert_eq!(rep.get("unimodular").map(|e| e.passed()), Some(true));
            assert!(check_integrals(&d.qt.hopf).passed());
        }
    }
}
