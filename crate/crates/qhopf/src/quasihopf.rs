//! Quasi-Hopf algebras by structure constants: axiom checks, gauge twists,
//! antipode shifts, the Drinfeld twist and the p/q elements.

use std::sync::OnceLock;

use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::expr::{Ctx, Space, SpaceId};
use crate::linear::{invert_matrix, CoordVector, DenseMatrix};
use crate::report::Report;
use crate::scalar::Field;
use crate::tensor::SparseTensor;

/// Basis space of every context built by [`QuasiHopf::ctx`].
pub const H: SpaceId = 0;

#[derive(Clone, Debug)]
pub struct QuasiHopf {
    pub field: Field,
    pub dim: usize,
    pub alg: Algebra,
    pub coalg: Coalgebra,
    pub phi: SparseTensor,
    /// Column `i` is `S(e_i)`.
    pub antipode: DenseMatrix,
    pub alpha: CoordVector,
    pub beta: CoordVector,
    phi_inv: Option<SparseTensor>,
    s_t: SparseTensor,
    s_inv: Option<DenseMatrix>,
    s_inv_t: Option<SparseTensor>,
    alpha_t: SparseTensor,
    beta_t: SparseTensor,
    counit_t: SparseTensor,
    twist: OnceLock<Result<DrinfeldTwist>>,
    pq: OnceLock<Result<PQElements>>,
}

/// Tensor `[src, dst]` of a linear map from its matrix (columns are images).
pub fn map_tensor(m: &DenseMatrix) -> SparseTensor {
    SparseTensor::from_matrix(&m.transpose())
}

impl QuasiHopf {
    /// Assembles a presentation, validating only shapes. Axioms are left to
    /// [`check_quasi_bialgebra`](Self::check_quasi_bialgebra) and
    /// [`check_quasi_hopf`](Self::check_quasi_hopf), so broken inputs can
    /// still be reported on.
    pub fn new(alg: Algebra, coalg: Coalgebra, phi: SparseTensor, antipode: DenseMatrix, alpha: CoordVector, beta: CoordVector) -> Result<QuasiHopf> {
        let n = alg.dim;
        let field = alg.field;
        if coalg.dim != n || coalg.field != field {
            return Err(Error::Dimension(format!("coalgebra of dimension {} over an algebra of dimension {n}", coalg.dim)));
        }
        if phi.shape != vec![n, n, n] {
            return Err(Error::Dimension(format!("reassociator shape {:?}", phi.shape)));
        }
        if antipode.rows != n || antipode.cols != n {
            return Err(Error::Dimension(format!("antipode of shape {}x{}", antipode.rows, antipode.cols)));
        }
        if alpha.len() != n || beta.len() != n {
            return Err(Error::Dimension("alpha and beta must be elements".into()));
        }
        let phi_inv = alg.tensor_invert(&phi).ok();
        let s_inv = invert_matrix(&antipode).ok();
        Ok(QuasiHopf {
            field,
            dim: n,
            s_t: map_tensor(&antipode),
            s_inv_t: s_inv.as_ref().map(map_tensor),
            s_inv,
            alpha_t: SparseTensor::vector(&alpha),
            beta_t: SparseTensor::vector(&beta),
            counit_t: SparseTensor::vector(&coalg.counit),
            phi_inv,
            twist: OnceLock::new(),
            pq: OnceLock::new(),
            alg,
            coalg,
            phi,
            antipode,
            alpha,
            beta,
        })
    }

    pub fn phi_inv(&self) -> Result<&SparseTensor> {
        self.phi_inv.as_ref().ok_or_else(|| Error::Invalid("reassociator is not invertible".into()))
    }

    pub fn antipode_inv(&self) -> Result<&DenseMatrix> {
        self.s_inv.as_ref().ok_or_else(|| Error::Invalid("singular antipode".into()))
    }

    /// Formula context over `H`. Bound names: `X Y Z T W` (the reassociator),
    /// `x y z w` (its inverse), `S`, `Si` (inverse antipode), `eps`, `alpha`,
    /// `beta`, `one`, the element variables `h`, `k`, `l` and the functional
    /// variables `chi`, `psi`.
    pub fn ctx(&self) -> Ctx<'_> {
        let mut c = Ctx::new(self.field);
        let h = c.space(Space { dim: self.dim, mult: Some(&self.alg.mult), unit: Some(&self.alg.unit_t), comult: Some(&self.coalg.comult) });
        debug_assert_eq!(h, H);
        c.tensors(&["X", "Y", "Z", "T", "W"], &self.phi, &[h, h, h]);
        if let Some(p) = &self.phi_inv {
            c.tensors(&["x", "y", "z", "w"], p, &[h, h, h]);
        }
        c.map("S", &self.s_t, h, h);
        if let Some(si) = &self.s_inv_t {
            c.map("Si", si, h, h);
        }
        c.form("eps", &self.counit_t, &[h]);
        c.tensor("alpha", &self.alpha_t, &[h]);
        c.tensor("beta", &self.beta_t, &[h]);
        c.tensor("one", &self.alg.unit_t, &[h]);
        c.var("h", h).var("k", h).var("l", h);
        c.funvar("chi", &[h]).funvar("psi", &[h]);
        c
    }

    pub fn apply_antipode(&self, x: &[crate::Scalar]) -> CoordVector {
        self.antipode.mul_vec(x).expect("antipode shape")
    }

    /// Quasi-bialgebra axioms: multiplicativity of Δ and ε, quasi-coassociativity,
    /// counit, the cocycle condition and its normalizations.
    pub fn check_quasi_bialgebra(&self) -> Report {
        let mut r = Report::new("quasi-bialgebra axioms");
        let alg = self.alg.check();
        r.outcome("algebra", &alg);
        r.check("phi-invertible", self.phi_inv.is_some(), "reassociator is not invertible");
        let c = self.ctx();
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq("delta-mult", &["h", "k"], "m = h k; m_1 | m_2", "h_1 k_1 | h_2 k_2");
        k.eq("delta-unit", &[], "one_1 | one_2", "1 | 1");
        k.eq_scalar("eps-mult", &["h", "k"], "eps(h k)", "eps(h) eps(k)");
        k.eq_scalar("eps-unit", &[], "eps(one)", "1");
        // conjugating by the reassociator is multiplied out so that no inverse is needed
        k.eq("q1", &["h"], "h_1 X1 | h_21 X2 | h_22 X3", "X1 h_11 | X2 h_12 | X3 h_2");
        k.eq("q2:1", &["h"], "h_1 eps(h_2)", "h");
        k.eq("q2:2", &["h"], "eps(h_1) h_2", "h");
        k.eq("q3", &[], "X1 Z1 | Y1 X2_1 Z2 | Y2 X2_2 Z3 | Y3 X3", "X1 Y1_1 | X2 Y1_2 | X3_1 Y2 | X3_2 Y3");
        k.eq("q4", &[], "X1 eps(X2) | X3", "1 | 1");
        k.eq("q7:1", &[], "eps(X1) X2 | X3", "1 | 1");
        k.eq("q7:2", &[], "X1 | X2 eps(X3)", "1 | 1");
        r.sort();
        r
    }

    /// Antipode axioms.
    pub fn check_quasi_hopf(&self) -> Report {
        let mut r = Report::new("quasi-Hopf axioms");
        r.check("S-bijective", self.s_inv.is_some(), "singular antipode");
        let c = self.ctx();
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq("S-anti", &["h", "k"], "S(h k)", "S(k) S(h)");
        k.eq("S-unit", &[], "S(one)", "1");
        k.eq("q5:1", &["h"], "S(h_1) alpha h_2", "eps(h) alpha");
        k.eq("q5:2", &["h"], "h_1 beta S(h_2)", "eps(h) beta");
        k.eq("q6:1", &[], "X1 beta S(X2) alpha X3", "1");
        k.eq("q6:2", &[], "S(x1) alpha x2 beta S(x3)", "1");
        k.eq_scalar("eps-alpha-beta", &[], "eps(alpha) eps(beta)", "1");
        r.sort();
        r
    }

    /// Both axiom suites.
    pub fn check_all(&self) -> Report {
        let (mut r, s) = rayon::join(|| self.check_quasi_bialgebra(), || self.check_quasi_hopf());
        r.extend(s);
        r.title = "quasi-Hopf axioms".into();
        r.sort();
        r
    }

    fn with_coalgebra(&self, comult: SparseTensor, phi: SparseTensor, antipode: DenseMatrix, alpha: CoordVector, beta: CoordVector) -> Result<QuasiHopf> {
        let coalg = Coalgebra::new(self.field, comult, self.coalg.counit.clone())?;
        QuasiHopf::new(self.alg.clone(), coalg, phi, antipode, alpha, beta)
    }

    /// `(1⊗F)(id⊗Δ)(F)Φ(Δ⊗id)(F⁻¹)(F⁻¹⊗1)`.
    pub fn twisted_phi(&self, f: &SparseTensor, g: &SparseTensor) -> Result<SparseTensor> {
        let mut c = self.ctx();
        c.tensor("Fa", f, &[H, H]).tensor("Fb", f, &[H, H]).tensor("Ga", g, &[H, H]).tensor("Gb", g, &[H, H]);
        c.eval(&[], "Fb1 X1 Ga1_1 Gb1 | Fa1 Fb2_1 X2 Ga1_2 Gb2 | Fa2 Fb2_2 X3 Ga2")
    }

    /// Gauge transformation by a counital invertible `F ∈ H⊗H`.
    pub fn apply_gauge_twist(&self, f: &SparseTensor) -> Result<QuasiHopf> {
        let n = self.dim;
        if f.shape != vec![n, n] {
            return Err(Error::Dimension(format!("twist shape {:?}", f.shape)));
        }
        let mut c = self.ctx();
        c.tensor("F", f, &[H, H]);
        let one = SparseTensor::vector(&self.alg.unit);
        if c.eval(&[], "F1 eps(F2)")? != one || c.eval(&[], "eps(F1) F2")? != one {
            return Err(Error::Invalid("twist is not counital".into()));
        }
        let g = self.alg.tensor_invert(f).map_err(|_| Error::Invalid("twist is not invertible".into()))?;
        c.tensor("G", &g, &[H, H]);
        let comult = c.eval(&["h"], "F1 h_1 G1 | F2 h_2 G2")?;
        let alpha = c.eval(&[], "S(G1) alpha G2")?.to_dense(self.field);
        let beta = c.eval(&[], "F1 beta S(F2)")?.to_dense(self.field);
        let phi = self.twisted_phi(f, &g)?;
        self.with_coalgebra(comult, phi, self.antipode.clone(), alpha, beta)
    }

    /// `α ↦ Uα`, `β ↦ βU⁻¹`, `S ↦ U S(·) U⁻¹`.
    pub fn antipode_shift(&self, u: &[crate::Scalar]) -> Result<QuasiHopf> {
        let ui = self.alg.invert(u)?;
        let alpha = self.alg.mul(u, &self.alpha);
        let beta = self.alg.mul(&self.beta, &ui);
        let cols: Vec<CoordVector> = (0..self.dim).map(|i| self.alg.mul(&self.alg.mul(u, &self.antipode.column(i)), &ui)).collect();
        let s = DenseMatrix::from_columns(self.field, self.dim, &cols);
        self.with_coalgebra(self.coalg.comult.clone(), self.phi.clone(), s, alpha, beta)
    }

    /// Componentwise tensor product `A⊗B`; `a_i⊗b_j` has flat index `i·dim B + j`.
    pub fn tensor_product(&self, o: &QuasiHopf) -> Result<QuasiHopf> {
        if self.field != o.field {
            return Err(Error::Invalid("tensor product over different fields".into()));
        }
        let m = o.dim;
        let nm = self.dim * m;
        let pair3 = |a: &SparseTensor, b: &SparseTensor| {
            let mut t = SparseTensor::zero(vec![nm; 3]);
            for (ka, va) in a.iter() {
                let ia = a.unflat(ka);
                for (kb, vb) in b.iter() {
                    let ib = b.unflat(kb);
                    t.add_idx(&[ia[0] * m + ib[0], ia[1] * m + ib[1], ia[2] * m + ib[2]], va.mul(vb));
                }
            }
            t
        };
        let kron = |a: &[crate::Scalar], b: &[crate::Scalar]| -> CoordVector { a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect() };
        let mut s = DenseMatrix::zeros(self.field, nm, nm);
        for r in 0..self.dim {
            for i in 0..self.dim {
                let a = self.antipode.get(r, i);
                if a.is_zero() {
                    continue;
                }
                for q in 0..m {
                    for j in 0..m {
                        s.set(r * m + q, i * m + j, a.mul(o.antipode.get(q, j)));
                    }
                }
            }
        }
        let alg = self.alg.tensor(&o.alg);
        let coalg = Coalgebra::new(self.field, pair3(&self.coalg.comult, &o.coalg.comult), kron(&self.coalg.counit, &o.coalg.counit))?;
        QuasiHopf::new(alg, coalg, pair3(&self.phi, &o.phi), s, kron(&self.alpha, &o.alpha), kron(&self.beta, &o.beta))
    }

    /// Binds a second copy of the structure in a new space of `c`, every name
    /// suffixed by `sfx` (`X` becomes `XB` for `sfx = "B"`): `X Y Z`, `x y z`,
    /// `S`, `Si`, `eps`, `alpha`, `beta`, `one`, and `f`, `fi` when the
    /// Drinfeld twist exists.
    pub fn bind_as<'a>(&'a self, c: &mut Ctx<'a>, sfx: &str) -> SpaceId {
        let s = c.space(Space { dim: self.dim, mult: Some(&self.alg.mult), unit: Some(&self.alg.unit_t), comult: Some(&self.coalg.comult) });
        let n = |b: &str| format!("{b}{sfx}");
        for b in ["X", "Y", "Z"] {
            c.tensor(&n(b), &self.phi, &[s, s, s]);
        }
        if let Some(p) = &self.phi_inv {
            for b in ["x", "y", "z"] {
                c.tensor(&n(b), p, &[s, s, s]);
            }
        }
        c.map(&n("S"), &self.s_t, s, s);
        if let Some(si) = &self.s_inv_t {
            c.map(&n("Si"), si, s, s);
        }
        c.form(&n("eps"), &self.counit_t, &[s]);
        c.tensor(&n("alpha"), &self.alpha_t, &[s]);
        c.tensor(&n("beta"), &self.beta_t, &[s]);
        c.tensor(&n("one"), &self.alg.unit_t, &[s]);
        if let Ok(d) = self.drinfeld_twist() {
            c.tensor(&n("f"), &d.f, &[s, s]).tensor(&n("fi"), &d.f_inv, &[s, s]);
        }
        s
    }

    /// Checks that `nu: self → target` is a quasi-bialgebra morphism, and with
    /// `hopf` also that it carries `α`, `β` and `S` over. Ids are `{prefix}:…`.
    pub fn check_morphism(&self, target: &QuasiHopf, nu: &DenseMatrix, prefix: &str, hopf: bool) -> Report {
        let mut r = Report::new("morphism");
        if nu.rows != target.dim || nu.cols != self.dim {
            r.check(&format!("{prefix}:shape"), false, format!("map of shape {}x{}", nu.rows, nu.cols));
            return r;
        }
        let nt = map_tensor(nu);
        let mut c = self.ctx();
        let b = target.bind_as(&mut c, "B");
        c.map("nu", &nt, H, b);
        let mut k = Checker { ctx: &c, report: &mut r };
        let id = |s: &str| format!("{prefix}:{s}");
        k.eq(&id("mult"), &["h", "k"], "nu(h k)", "nu(h) nu(k)");
        k.eq(&id("unit"), &[], "nu(one)", "oneB");
        k.eq(&id("delta"), &["h"], "nu(h_1) | nu(h_2)", "m = nu(h); m_1 | m_2");
        k.eq_scalar(&id("eps"), &["h"], "epsB(nu(h))", "eps(h)");
        k.eq(&id("phi"), &[], "nu(X1) | nu(X2) | nu(X3)", "XB1 | XB2 | XB3");
        if hopf {
            k.eq(&id("alpha"), &[], "nu(alpha)", "alphaB");
            k.eq(&id("beta"), &[], "nu(beta)", "betaB");
            k.eq(&id("S"), &["h"], "nu(S(h))", "SB(nu(h))");
        }
        r.sort();
        r
    }

    /// `γ`, `δ`, the Drinfeld twist `f` and its inverse, from their explicit
    /// formulas (computed once).
    pub fn drinfeld_twist(&self) -> Result<&DrinfeldTwist> {
        self.twist.get_or_init(|| self.compute_twist()).as_ref().map_err(Clone::clone)
    }

    fn compute_twist(&self) -> Result<DrinfeldTwist> {
        self.phi_inv()?;
        let mut c = self.ctx();
        let gamma = c.eval(&[], "S(X2 x1_2) alpha X3 x2 | S(X1 x1_1) alpha x3")?;
        let delta = c.eval(&[], "X1_1 x1 beta S(X3) | X1_2 x2 beta S(X2 x3)")?;
        c.tensor("gamma", &gamma, &[H, H]).tensor("delta", &delta, &[H, H]);
        let f = c.eval(&[], "p = x2 beta S(x3); S(x1_2) gamma1 p_1 | S(x1_1) gamma2 p_2")?;
        let f_inv = c.eval(&[], "q = S(x1) alpha x2; q_1 delta1 S(x3_2) | q_2 delta2 S(x3_1)")?;
        Ok(DrinfeldTwist { gamma, delta, f, f_inv })
    }

    /// Postconditions of the Drinfeld twist.
    pub fn check_drinfeld_twist(&self, d: &DrinfeldTwist) -> Report {
        let mut r = Report::new("Drinfeld twist");
        let one = self.alg.tensor_unit(2);
        r.compare("f-inverse:1", &self.alg.tensor_mul(&d.f, &d.f_inv), &one, 0);
        r.compare("f-inverse:2", &self.alg.tensor_mul(&d.f_inv, &d.f), &one, 0);
        let mut c = self.ctx();
        d.bind(&mut c);
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq("ca", &["h"], "s = S(h); f1 s_1 fi1 | f2 s_2 fi2", "S(h_2) | S(h_1)");
        k.eq("gdf:1", &[], "f1 alpha_1 | f2 alpha_2", "gamma1 | gamma2");
        k.eq("gdf:2", &[], "beta_1 fi1 | beta_2 fi2", "delta1 | delta2");
        match self.twisted_phi(&d.f, &d.f_inv) {
            Ok(pf) => {
                let rhs = c.eval(&[], "S(X3) | S(X2) | S(X1)");
                match rhs {
                    Ok(rhs) => r.compare("pf", &pf, &rhs, 0),
                    Err(e) => r.check("pf", false, e.to_string()),
                };
            }
            Err(e) => {
                r.check("pf", false, e.to_string());
            }
        }
        r.sort();
        r
    }

    /// `p_R, q_R, p_L, q_L` and the elements `U`, `V` (computed once).
    pub fn pq_elements(&self) -> Result<&PQElements> {
        self.pq.get_or_init(|| self.compute_pq()).as_ref().map_err(Clone::clone)
    }

    fn compute_pq(&self) -> Result<PQElements> {
        let d = self.drinfeld_twist()?;
        self.antipode_inv()?;
        self.phi_inv()?;
        let mut c = self.ctx();
        d.bind(&mut c);
        let p_r = c.eval(&[], "x1 | x2 beta S(x3)")?;
        let q_r = c.eval(&[], "X1 | Si(alpha X3) X2")?;
        let p_l = c.eval(&[], "X2 Si(X1 beta) | X3")?;
        let q_l = c.eval(&[], "S(x1) alpha x2 | x3")?;
        c.tensor("q", &q_r, &[H, H]).tensor("p", &p_r, &[H, H]);
        let u = c.eval(&[], "fi1 S(q2) | fi2 S(q1)")?;
        let v = c.eval(&[], "Si(f2 p2) | Si(f1 p1)")?;
        Ok(PQElements { p_r, q_r, p_l, q_l, u, v })
    }

    /// Identities relating `p_R, q_R, p_L, q_L`, `Δ` and `f`.
    pub fn verify_core_identities(&self) -> Report {
        let mut r = Report::new("p/q identities");
        let d = match self.drinfeld_twist() {
            Ok(d) => d,
            Err(e) => {
                r.check("drinfeld-twist", false, e.to_string());
                return r;
            }
        };
        let pq = match self.pq_elements() {
            Ok(p) => p,
            Err(e) => {
                r.check("pq-elements", false, e.to_string());
                return r;
            }
        };
        let mut c = self.ctx();
        d.bind(&mut c);
        pq.bind(&mut c);
        c.tensor("P", &pq.p_r, &[H, H]).tensor("QL", &pq.q_l, &[H, H]);
        let mut k = Checker { ctx: &c, report: &mut r };
        k.eq("qr1:1", &["h"], "h_11 p1 | h_12 p2 S(h_2)", "p1 h | p2");
        k.eq("qr1:2", &["h"], "q1 h_11 | Si(h_2) q2 h_12", "h q1 | q2");
        k.eq("ql1:1", &["h"], "h_21 pL1 Si(h_1) | h_22 pL2", "pL1 | pL2 h");
        k.eq("ql1:2", &["h"], "S(h_1) qL1 h_21 | qL2 h_22", "qL1 | h qL2");
        k.eq("pqr:1", &[], "q1_1 p1 | q1_2 p2 S(q2)", "1 | 1");
        k.eq("pqr:2", &[], "q1 p1_1 | Si(p2) q2 p1_2", "1 | 1");
        k.eq("pql:1", &[], "S(pL1) qL1 pL2_1 | qL2 pL2_2", "1 | 1");
        k.eq("pql:2", &[], "qL2_1 pL1 Si(qL1) | qL2_2 pL2", "1 | 1");
        k.eq("pr", &[], "X1 P1_1 p1 | X2 P1_2 p2 | X3 P2", "b = x1_2 p2; x1_1 p1 | b_1 fi1 S(x3) | b_2 fi2 S(x2)");
        k.eq("ql2", &[], "QL1 X1 | qL1 QL2_1 X2 | qL2 QL2_2 X3", "a = qL1 x3_1; S(x2) f1 a_1 | S(x1) f2 a_2 | qL2 x3_2");
        r.sort();
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldTwist {
    pub gamma: SparseTensor,
    pub delta: SparseTensor,
    pub f: SparseTensor,
    pub f_inv: SparseTensor,
}

impl DrinfeldTwist {
    /// Binds `f`, `fi` (inverse), `gamma`, `delta`.
    pub fn bind<'a>(&'a self, c: &mut Ctx<'a>) {
        c.tensor("f", &self.f, &[H, H]).tensor("fi", &self.f_inv, &[H, H]);
        c.tensor("gamma", &self.gamma, &[H, H]).tensor("delta", &self.delta, &[H, H]);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQElements {
    pub p_r: SparseTensor,
    pub q_r: SparseTensor,
    pub p_l: SparseTensor,
    pub q_l: SparseTensor,
    pub u: SparseTensor,
    pub v: SparseTensor,
}

impl PQElements {
    /// Binds `p`, `q`, `pL`, `qL`, `U`, `V`.
    pub fn bind<'a>(&'a self, c: &mut Ctx<'a>) {
        c.tensor("p", &self.p_r, &[H, H]).tensor("q", &self.q_r, &[H, H]);
        c.tensor("pL", &self.p_l, &[H, H]).tensor("qL", &self.q_l, &[H, H]);
        c.tensor("U", &self.u, &[H, H]).tensor("V", &self.v, &[H, H]);
    }
}

/// Evaluates both sides of an identity and records the comparison.
pub(crate) struct Checker<'r, 'c> {
    pub ctx: &'r Ctx<'c>,
    pub report: &'r mut Report,
}

impl Checker<'_, '_> {
    pub fn eq(&mut self, id: &str, vars: &[&str], lhs: &str, rhs: &str) -> bool {
        let l = self.ctx.eval(vars, lhs);
        let r = self.ctx.eval(vars, rhs);
        self.record(id, vars.len(), l, r)
    }

    pub fn eq_scalar(&mut self, id: &str, vars: &[&str], lhs: &str, rhs: &str) -> bool {
        let l = self.ctx.eval_scalar(vars, lhs);
        let r = self.ctx.eval_scalar(vars, rhs);
        self.record(id, vars.len(), l, r)
    }

    pub fn record(&mut self, id: &str, inputs: usize, l: Result<SparseTensor>, r: Result<SparseTensor>) -> bool {
        match (l, r) {
            (Ok(l), Ok(r)) => self.report.compare(id, &l, &r, inputs),
            (Err(e), _) | (_, Err(e)) => self.report.check(id, false, e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cocycle_dual, group_algebra, sweedler_h4};

    fn corpus() -> Vec<QuasiHopf> {
        let f7 = Field::fp(7).unwrap();
        vec![
            group_algebra(Field::Q, 2).unwrap().hopf,
            group_algebra(f7, 3).unwrap().hopf,
            cocycle_dual(Field::Q, 2).unwrap().hopf,
            cocycle_dual(f7, 3).unwrap().hopf,
            sweedler_h4(Field::Q, None).unwrap().hopf,
        ]
    }

    #[test]
    fn drinfeld_twist_postconditions() {
        for h in corpus() {
            let d = h.drinfeld_twist().unwrap();
            let r = h.check_drinfeld_twist(d);
            assert!(r.passed(), "{r}");
        }
        let h = group_algebra(Field::Q, 2).unwrap().hopf;
        let d = h.drinfeld_twist().unwrap();
        let one = h.alg.tensor_unit(2);
        assert_eq!((&d.f, &d.f_inv, &d.gamma, &d.delta), (&one, &one, &one, &one));
        let pq = h.pq_elements().unwrap();
        assert!([&pq.p_r, &pq.q_r, &pq.p_l, &pq.q_l, &pq.u, &pq.v].iter().all(|t| **t == one));
    }

    #[test]
    fn mutations_are_caught() {
        let f = Field::Q;
        // Φ = 1⊗1⊗g
        let mut h = group_algebra(f, 2).unwrap().hopf;
        let mut phi = SparseTensor::zero(vec![2, 2, 2]);
        phi.add_idx(&[0, 0, 1], f.one());
        h = QuasiHopf::new(h.alg, h.coalg, phi, h.antipode, h.alpha, h.beta).unwrap();
        let r = h.check_quasi_bialgebra();
        assert!(!r.get("q4").unwrap().passed());
        assert!(r.get("q3").unwrap().passed());

        let h = group_algebra(f, 2).unwrap().hopf;
        let h = QuasiHopf::new(h.alg, h.coalg, h.phi, h.antipode, vec![f.zero(); 2], h.beta).unwrap();
        let r = h.check_quasi_hopf();
        assert!(!r.get("q6:1").unwrap().passed());

        let h = cocycle_dual(f, 2).unwrap().hopf;
        let beta: CoordVector = h.beta.iter().map(|b| b.mul(&f.int(2))).collect();
        let h = QuasiHopf::new(h.alg, h.coalg, h.phi, h.antipode, h.alpha, beta).unwrap();
        let r = h.verify_core_identities();
        assert!(!r.get("pql:1").unwrap().passed(), "{r}");
    }

    #[test]
    fn gauge_twist_and_shift() {
        let f = Field::Q;
        let h = cocycle_dual(f, 2).unwrap().hopf;
        let one = h.alg.tensor_unit(2);
        assert_eq!(h.apply_gauge_twist(&one).unwrap().phi, h.phi);
        // F = 1⊗1 + 3 e1⊗e1 is counital and invertible
        let mut tw = one.clone();
        tw.add_idx(&[1, 1], f.int(3));
        let t = h.apply_gauge_twist(&tw).unwrap();
        assert!(t.check_all().passed());
        assert!(t.verify_core_identities().passed());
        let back = t.apply_gauge_twist(&h.alg.tensor_invert(&tw).unwrap()).unwrap();
        assert_eq!((&back.coalg, &back.phi, &back.alpha, &back.beta), (&h.coalg, &h.phi, &h.alpha, &h.beta));
        let d = t.drinfeld_twist().unwrap();
        assert!(t.check_drinfeld_twist(d).passed());

        let mut u = h.alg.unit.clone();
        u[1] = f.int(5);
        let s = h.antipode_shift(&u).unwrap();
        assert!(s.check_all().passed());
        assert!(s.verify_core_identities().passed());
        let ui = h.alg.invert(&u).unwrap();
        let back = s.antipode_shift(&ui).unwrap();
        assert_eq!((&back.antipode, &back.alpha, &back.beta), (&h.antipode, &h.alpha, &h.beta));
        assert!(h.antipode_shift(&h.alg.zero()).is_err());
    }
}
