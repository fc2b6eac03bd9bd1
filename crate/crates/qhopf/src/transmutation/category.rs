//! The braided category of finite-dimensional left modules over a
//! quasi-triangular quasi-Hopf algebra, and Hopf algebras inside it.
//!
//! Tensor products are flattened (`m_i ⊗ n_j` has index `i·dim N + j`), so
//! `(M⊗N)⊗P` and `M⊗(N⊗P)` share a basis and the associator is the action of
//! `Φ`. Every morphism is a matrix whose columns are images of basis vectors.

use crate::error::{Error, Result};
use crate::linear::{kron, nullspace, CoordVector, DenseMatrix};
use crate::quasitriangular::QuasiTriangular;
use crate::report::Report;
use crate::scalar::{Field, Scalar};
use crate::tensor::SparseTensor;

/// A left module: `action[i]` is the matrix of `e_i·`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub dim: usize,
    pub action: Vec<DenseMatrix>,
}

impl Module {
    /// Module whose action of `e_h` on `e_m` is `Σ t[h][m][o] e_o`.
    pub fn from_tensor(t: &SparseTensor, field: Field) -> Module {
        let (n, d) = (t.shape[0], t.shape[1]);
        let mut action = vec![DenseMatrix::zeros(field, d, d); n];
        for (k, v) in t.iter() {
            let [h, m, o] = t.unflat(k)[..] else { unreachable!() };
            action[h].set(o, m, v.clone());
        }
        Module { dim: d, action }
    }
}

/// A Hopf algebra in the category: structure maps as matrices on the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedHopf {
    pub module: Module,
    /// `dim × dim²`.
    pub mult: DenseMatrix,
    pub unit: CoordVector,
    /// `dim² × dim`.
    pub comult: DenseMatrix,
    /// Values of the counit on the basis.
    pub counit: CoordVector,
    pub antipode: DenseMatrix,
}

impl BraidedHopf {
    pub fn dim(&self) -> usize {
        self.module.dim
    }
}

/// `m⊗n ↦ n⊗m` for dimensions `p = dim M`, `q = dim N`.
pub fn flip(field: Field, p: usize, q: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(field, p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            m.set(j * p + i, i * q + j, field.one());
        }
    }
    m
}

fn column(v: &[Scalar]) -> DenseMatrix {
    DenseMatrix::from_columns(v[0].field(), v.len(), &[v.to_vec()])
}

fn row(v: &[Scalar]) -> DenseMatrix {
    column(v).transpose()
}

/// All `X` (`p × q`) with `X·P = Q·X` for every pair `(P, Q)`.
pub fn intertwiners(field: Field, pairs: &[(DenseMatrix, DenseMatrix)], p: usize, q: usize) -> Vec<DenseMatrix> {
    let mut sys = DenseMatrix::zeros(field, pairs.len() * p * q, p * q);
    for (k, (pm, qm)) in pairs.iter().enumerate() {
        for r in 0..p {
            for c in 0..q {
                let eq = k * p * q + r * q + c;
                // (X P)[r][c] = Σ_s X[r][s] P[s][c]
                for s in 0..q {
                    let v = pm.get(s, c);
                    if !v.is_zero() {
                        let cur = sys.get(eq, r * q + s).add(v);
                        sys.set(eq, r * q + s, cur);
                    }
                }
                // (Q X)[r][c] = Σ_s Q[r][s] X[s][c]
                for s in 0..p {
                    let v = qm.get(r, s);
                    if !v.is_zero() {
                        let cur = sys.get(eq, s * q + c).sub(v);
                        sys.set(eq, s * q + c, cur);
                    }
                }
            }
        }
    }
    nullspace(&sys)
        .into_iter()
        .map(|v| DenseMatrix::from_rows(field, v.chunks(q).map(<[Scalar]>::to_vec).collect()).expect("rectangular"))
        .collect()
}

pub(crate) fn compare(r: &mut Report, id: &str, l: Result<DenseMatrix>, rr: Result<DenseMatrix>) -> bool {
    match (l, rr) {
        (Ok(l), Ok(rr)) => r.compare(id, &SparseTensor::from_matrix(&l), &SparseTensor::from_matrix(&rr), 0),
        (Err(e), _) | (_, Err(e)) => r.check(id, false, e.to_string()),
    }
}

/// Left modules over `qt.hopf` with associator `Φ` and braiding `flip∘R`.
pub struct Category<'a> {
    pub qt: &'a QuasiTriangular,
    phi_inv: &'a SparseTensor,
    f: &'a SparseTensor,
    f_inv: &'a SparseTensor,
}

impl<'a> Category<'a> {
    pub fn new(qt: &'a QuasiTriangular) -> Result<Category<'a>> {
        let phi_inv = qt.hopf.phi_inv()?;
        let d = qt.hopf.drinfeld_twist()?;
        qt.hopf.antipode_inv()?;
        Ok(Category { qt, phi_inv, f: &d.f, f_inv: &d.f_inv })
    }

    pub fn field(&self) -> Field {
        self.qt.hopf.field
    }

    fn host_dim(&self) -> usize {
        self.qt.hopf.dim
    }

    /// The host acting on itself by left multiplication.
    pub fn regular(&self) -> Module {
        let a = &self.qt.hopf.alg;
        Module { dim: a.dim, action: (0..a.dim).map(|i| a.left_mult(&a.basis(i))).collect() }
    }

    /// The action of an arbitrary element.
    pub fn element(&self, m: &Module, x: &[Scalar]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.field(), m.dim, m.dim);
        for (c, a) in x.iter().zip(&m.action) {
            if !c.is_zero() {
                out = out.add(&a.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Action of `t ∈ H^⊗k` on `M₁⊗…⊗M_k`.
    pub fn act(&self, t: &SparseTensor, ms: &[&Module]) -> DenseMatrix {
        assert_eq!(t.arity(), ms.len());
        let d: usize = ms.iter().map(|m| m.dim).product();
        let mut out = DenseMatrix::zeros(self.field(), d, d);
        for (k, v) in t.iter() {
            let idx = t.unflat(k);
            let mut m = ms[0].action[idx[0]].clone();
            for (j, mm) in ms.iter().enumerate().skip(1) {
                m = kron(&m, &mm.action[idx[j]]);
            }
            out = out.add(&m.scale(v)).expect("same shape");
        }
        out
    }

    pub fn tensor(&self, m: &Module, n: &Module) -> Module {
        let c = &self.qt.hopf.coalg.comult;
        let h = self.host_dim();
        let action = (0..h)
            .map(|i| {
                let mut part = SparseTensor::zero(vec![h, h]);
                for (k, v) in c.iter().filter(|(k, _)| k / (h * h) == i) {
                    part.add_at(k % (h * h), v.clone());
                }
                self.act(&part, &[m, n])
            })
            .collect();
        Module { dim: m.dim * n.dim, action }
    }

    /// `a_{M,N,P}`.
    pub fn assoc(&self, m: &Module, n: &Module, p: &Module) -> DenseMatrix {
        self.act(&self.qt.hopf.phi, &[m, n, p])
    }

    pub fn assoc_inv(&self, m: &Module, n: &Module, p: &Module) -> DenseMatrix {
        self.act(self.phi_inv, &[m, n, p])
    }

    /// `c_{M,N}(m⊗n) = R²·n ⊗ R¹·m`.
    pub fn braid(&self, m: &Module, n: &Module) -> DenseMatrix {
        flip(self.field(), m.dim, n.dim).mul(&self.act(&self.qt.r, &[m, n])).expect("shapes")
    }

    /// The left dual: `(h·χ)(m) = χ(S(h)·m)`.
    pub fn dual(&self, m: &Module) -> Module {
        let s = &self.qt.hopf.antipode;
        let action = (0..self.host_dim()).map(|h| self.element(m, &s.column(h)).transpose()).collect();
        Module { dim: m.dim, action }
    }

    /// `φ*_{N,M}: N*⊗M* → (M⊗N)*`, `φ*(n*⊗m*)(m⊗n) = m*(f¹·m) n*(f²·n)`.
    pub fn phi_star(&self, m: &Module, n: &Module) -> DenseMatrix {
        let p = self.act(self.f, &[m, n]).transpose();
        p.mul(&flip(self.field(), n.dim, m.dim)).expect("shapes")
    }

    /// `φ*⁻¹(μ) = μ(g¹·m_i ⊗ g²·n_j) n^j ⊗ m^i` with `g = f⁻¹`.
    pub fn phi_star_inv(&self, m: &Module, n: &Module) -> DenseMatrix {
        flip(self.field(), m.dim, n.dim).mul(&self.act(self.f_inv, &[m, n]).transpose()).expect("shapes")
    }

    /// First host basis index on which `f: src → dst` fails to commute with the actions.
    pub fn failing_generator(&self, f: &DenseMatrix, src: &Module, dst: &Module) -> Option<usize> {
        (0..self.host_dim()).find(|&h| f.mul(&src.action[h]).ok() != dst.action[h].mul(f).ok())
    }

    fn linear(&self, r: &mut Report, id: &str, f: &DenseMatrix, src: &Module, dst: &Module) {
        match self.failing_generator(f, src, dst) {
            None => r.check(id, true, ""),
            Some(h) => r.check(id, false, format!("fails for the action of basis element {h}")),
        };
    }

    /// `ρ(e_i)ρ(e_j) = ρ(e_i e_j)` and `ρ(1) = id`.
    pub fn check_module(&self, m: &Module, id: &str, r: &mut Report) {
        let a = &self.qt.hopf.alg;
        let mut bad = None;
        'outer: for i in 0..a.dim {
            for j in 0..a.dim {
                let prod = self.element(m, &a.mul(&a.basis(i), &a.basis(j)));
                if m.action[i].mul(&m.action[j]).ok() != Some(prod) {
                    bad = Some(format!("fails on basis pair ({i}, {j})"));
                    break 'outer;
                }
            }
        }
        if bad.is_none() && !self.element(m, &a.unit).is_identity() {
            bad = Some("unit does not act as the identity".into());
        }
        r.check(id, bad.is_none(), bad.unwrap_or_default());
    }

    /// The multiplication of `B⊗B` as an algebra in the category.
    fn mult_bb(&self, m: &Module) -> Result<DenseMatrix> {
        let id = DenseMatrix::identity(self.field(), m.dim);
        let mm = self.tensor(m, m);
        let a = self.assoc(m, m, &mm);
        let s1 = kron(&id, &self.assoc_inv(m, m, m));
        let s2 = kron(&id, &kron(&self.braid(m, m), &id));
        let s3 = kron(&id, &self.assoc(m, m, m));
        let ai = self.assoc_inv(m, m, &mm);
        ai.mul(&s3)?.mul(&s2)?.mul(&s1)?.mul(&a)
    }

    /// Hopf algebra axioms in the category, ids `{p}:…`.
    pub fn check_braided_hopf(&self, b: &BraidedHopf, p: &str) -> Report {
        let mut r = Report::new("braided Hopf algebra");
        let id = |s: &str| format!("{p}:{s}");
        let f = self.field();
        let d = b.dim();
        let shapes = [(b.mult.rows, b.mult.cols, d, d * d), (b.comult.rows, b.comult.cols, d * d, d), (b.antipode.rows, b.antipode.cols, d, d)];
        if shapes.iter().any(|(a, c, x, y)| (a, c) != (x, y)) || b.unit.len() != d || b.counit.len() != d {
            r.check(&id("shape"), false, "structure maps do not match the carrier");
            return r;
        }
        let m = &b.module;
        self.check_module(m, &id("module"), &mut r);
        let mm = self.tensor(m, m);
        let ident = DenseMatrix::identity(f, d);
        let u = column(&b.unit);
        let e = row(&b.counit);
        let eps = &self.qt.hopf.coalg.counit;

        self.linear(&mut r, &id("linear:mult"), &b.mult, &mm, m);
        self.linear(&mut r, &id("linear:comult"), &b.comult, m, &mm);
        self.linear(&mut r, &id("linear:antipode"), &b.antipode, m, m);
        let unit_ok = (0..eps.len()).all(|h| m.action[h].mul_vec(&b.unit).ok() == Some(b.unit.iter().map(|x| x.mul(&eps[h])).collect()));
        r.check(&id("linear:unit"), unit_ok, "h·1 ≠ ε(h)1");
        let counit_ok = (0..eps.len()).all(|h| e.mul(&m.action[h]).ok() == Some(e.scale(&eps[h])));
        r.check(&id("linear:counit"), counit_ok, "ε(h·x) ≠ ε(h)ε(x)");

        compare(&mut r, &id("assoc"), b.mult.mul(&kron(&b.mult, &ident)), b.mult.mul(&kron(&ident, &b.mult)).and_then(|x| x.mul(&self.assoc(m, m, m))));
        compare(&mut r, &id("unit:1"), b.mult.mul(&kron(&u, &ident)), Ok(ident.clone()));
        compare(&mut r, &id("unit:2"), b.mult.mul(&kron(&ident, &u)), Ok(ident.clone()));
        compare(&mut r, &id("coassoc"), self.assoc(m, m, m).mul(&kron(&b.comult, &ident)).and_then(|x| x.mul(&b.comult)), kron(&ident, &b.comult).mul(&b.comult));
        compare(&mut r, &id("counit:1"), kron(&e, &ident).mul(&b.comult), Ok(ident.clone()));
        compare(&mut r, &id("counit:2"), kron(&ident, &e).mul(&b.comult), Ok(ident.clone()));
        let rhs = self.mult_bb(m).and_then(|x| kron(&b.mult, &b.mult).mul(&x)).and_then(|x| x.mul(&kron(&b.comult, &b.comult)));
        compare(&mut r, &id("bialgebra"), b.comult.mul(&b.mult), rhs);
        compare(&mut r, &id("comult-unit"), b.comult.mul(&u), Ok(kron(&u, &u)));
        compare(&mut r, &id("counit-mult"), e.mul(&b.mult), Ok(kron(&e, &e)));
        compare(&mut r, &id("counit-unit"), e.mul(&u), Ok(DenseMatrix::identity(f, 1)));
        let ue = u.mul(&e);
        compare(&mut r, &id("antipode:1"), b.mult.mul(&kron(&b.antipode, &ident)).and_then(|x| x.mul(&b.comult)), ue.clone());
        compare(&mut r, &id("antipode:2"), b.mult.mul(&kron(&ident, &b.antipode)).and_then(|x| x.mul(&b.comult)), ue);
        r.sort();
        r
    }

    /// `ν: src → dst` is a morphism of Hopf algebras in the category.
    pub fn check_hopf_morphism(&self, nu: &DenseMatrix, src: &BraidedHopf, dst: &BraidedHopf, p: &str) -> Report {
        let mut r = Report::new("braided Hopf morphism");
        let id = |s: &str| format!("{p}:{s}");
        if (nu.rows, nu.cols) != (dst.dim(), src.dim()) {
            r.check(&id("shape"), false, format!("map of shape {}x{}", nu.rows, nu.cols));
            return r;
        }
        self.linear(&mut r, &id("linear"), nu, &src.module, &dst.module);
        compare(&mut r, &id("mult"), nu.mul(&src.mult), dst.mult.mul(&kron(nu, nu)));
        compare(&mut r, &id("unit"), nu.mul(&column(&src.unit)), Ok(column(&dst.unit)));
        compare(&mut r, &id("comult"), kron(nu, nu).mul(&src.comult), dst.comult.mul(nu));
        compare(&mut r, &id("counit"), row(&dst.counit).mul(nu), Ok(row(&src.counit)));
        compare(&mut r, &id("antipode"), nu.mul(&src.antipode), dst.antipode.mul(nu));
        r.sort();
        r
    }

    /// The categorical left dual `B*` with product `Δ*∘φ*`, coproduct
    /// `φ*⁻¹∘m*`, antipode `S*`, unit `ε` and counit evaluation at `1`.
    pub fn dual_hopf(&self, b: &BraidedHopf) -> Result<BraidedHopf> {
        let m = &b.module;
        Ok(BraidedHopf {
            module: self.dual(m),
            mult: b.comult.transpose().mul(&self.phi_star(m, m))?,
            unit: b.counit.clone(),
            comult: self.phi_star_inv(m, m).mul(&b.mult.transpose())?,
            counit: b.unit.clone(),
            antipode: b.antipode.transpose(),
        })
    }
}

pub(crate) fn invertible_pair(a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.mul(b)?.is_identity() && b.mul(a)?.is_identity() {
        Ok(())
    } else {
        Err(Error::Check("maps are not mutually inverse".into()))
    }
}

/// Whether `x` is a linear combination of `basis` (all of one shape).
pub fn in_span(field: Field, basis: &[DenseMatrix], x: &DenseMatrix) -> bool {
    let flat = |m: &DenseMatrix| -> CoordVector { (0..m.rows).flat_map(|i| m.row(i).to_vec()).collect() };
    let n = x.rows * x.cols;
    let mut cols: Vec<CoordVector> = basis.iter().map(flat).collect();
    let before = DenseMatrix::from_columns(field, n, &cols).rank();
    cols.push(flat(x));
    DenseMatrix::from_columns(field, n, &cols).rank() == before
}
