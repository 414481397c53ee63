//! A coisotropic Cartan geometry in one local trivialization.
//!
//! The chart is `U ⊂ ℝⁿ` with coordinates `x₁..xₙ`, `n = dim g − dim p`.
//! The pulled-back Cartan connection is the gauge potential
//! `A = Σ Aᵢ dxᵢ` with `Aᵢ ∈ Tᵢ + p`, where `T₁..Tₙ` is a fixed basis of a
//! complement of `p`. Under this normalization the anchor of a section is
//! its `T`-coordinate vector, and all data stays polynomial.
//!
//! Equivariance under `P` and gauge changes are not modelled: everything
//! lives in the single trivialization.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactpoly::{Poly, PolyForm, Rational, VectorField, Vars};
use crate::liealg::{self, LieAlgebra, LieError, Subalgebra, Subspace};
use crate::linalg::{self, Matrix, Vector};
use crate::section::Section;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("subalgebra is not coisotropic: p-perp is not contained in p")]
    NotCoisotropic,
    #[error("transversal does not complement p: rank {rank} of {dim}")]
    NotComplement { rank: usize, dim: usize },
    #[error("expected {expected} {what}, got {got}")]
    Arity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("gauge component A{index} is not normalized: A{index} - T{index} has transversal part {detail}")]
    NotNormalized { index: usize, detail: String },
    #[error("section is not in the image of rho*: {0}")]
    NotInImage(String),
    #[error("curvature index pair ({0}, {1}) is not i < j within the chart")]
    CurvatureIndex(usize, usize),
}

/// Whether `κ` is computed from the gauge or supplied directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureMode {
    Gauge,
    Synthetic,
}

/// `g`-valued 2-form on the chart, stored as `κᵢⱼ` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature {
    n: usize,
    dim: usize,
    vars: Vars,
    comps: BTreeMap<(usize, usize), Section>,
}

impl Curvature {
    pub fn zero(n: usize, dim: usize, vars: &Vars) -> Self {
        Curvature {
            n,
            dim,
            vars: vars.clone(),
            comps: BTreeMap::new(),
        }
    }

    /// Sets `κᵢⱼ` (and implicitly `κⱼᵢ = −κᵢⱼ`); `i < j` required.
    pub fn set(&mut self, i: usize, j: usize, value: Section) -> Result<(), ModelError> {
        if i >= j || j >= self.n {
            return Err(ModelError::CurvatureIndex(i, j));
        }
        if value.is_zero() {
            self.comps.remove(&(i, j));
        } else {
            self.comps.insert((i, j), value);
        }
        Ok(())
    }

    /// `κᵢⱼ` for any ordered pair.
    pub fn get(&self, i: usize, j: usize) -> Section {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Section::zero(self.dim, &self.vars),
            Less => self
                .comps
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Section::zero(self.dim, &self.vars)),
            Greater => -self.get(j, i),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components with `i < j`.
    pub fn components(&self) -> impl Iterator<Item = ((usize, usize), &Section)> {
        self.comps.iter().map(|(k, v)| (*k, v))
    }

    pub fn chart_dim(&self) -> usize {
        self.n
    }
}

/// `κᵢⱼ = ∂ᵢAⱼ − ∂ⱼAᵢ + [Aᵢ, Aⱼ]`.
pub fn curvature(algebra: &LieAlgebra, gauge: &[Section], vars: &Vars) -> Curvature {
    let n = gauge.len();
    let mut k = Curvature::zero(n, algebra.dim(), vars);
    for i in 0..n {
        for j in i + 1..n {
            let br = Section::new(algebra.bracket_poly(gauge[i].comps(), gauge[j].comps(), vars));
            let val = &(&gauge[j].diff(i) - &gauge[i].diff(j)) + &br;
            k.set(i, j, val).unwrap();
        }
    }
    k
}

/// Components `(i, j, k)`, `i < j < k`, of `dκ + [A ∧ κ]` that are nonzero.
pub fn bianchi_residual(
    algebra: &LieAlgebra,
    gauge: &[Section],
    kappa: &Curvature,
    vars: &Vars,
) -> Vec<((usize, usize, usize), Section)> {
    let n = gauge.len();
    let br = |a: &Section, b: &Section| Section::new(algebra.bracket_poly(a.comps(), b.comps(), vars));
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (kij, kik, kjk) = (kappa.get(i, j), kappa.get(i, k), kappa.get(j, k));
                let d = &(&kjk.diff(i) - &kik.diff(j)) + &kij.diff(k);
                let wedge = &(&br(&gauge[i], &kjk) - &br(&gauge[j], &kik)) + &br(&gauge[k], &kij);
                let r = &d + &wedge;
                if !r.is_zero() {
                    out.push(((i, j, k), r));
                }
            }
        }
    }
    out
}

/// The local model `(g, p, chart, transversal, A, κ)`.
#[derive(Clone, Debug)]
pub struct CartanModel {
    algebra: LieAlgebra,
    p: Subalgebra,
    p_perp: Subspace,
    vars: Vars,
    transversal: Vec<Vector>,
    /// Rows `0..n` give `T`-coordinates of a vector in the frame `(T, p)`.
    frame_inverse: Matrix,
    /// `sᵢ ∈ p⊥` with `B(sᵢ, Tⱼ) = δᵢⱼ`; then `ρ*(dxᵢ) = sᵢ`.
    dual_frame: Vec<Vector>,
    /// Rows give coordinates modulo `p⊥` (quotient coordinates).
    quotient_rows: Matrix,
    gauge: Vec<Section>,
    kappa: Curvature,
    mode: CurvatureMode,
}

impl CartanModel {
    /// Gauge mode: `κ` is derived from `A`.
    pub fn new(
        algebra: LieAlgebra,
        p: Subalgebra,
        vars: Vars,
        transversal: Vec<Vector>,
        gauge: Vec<Section>,
    ) -> Result<Self, ModelError> {
        let kappa = curvature(&algebra, &gauge, &vars);
        Self::build(algebra, p, vars, transversal, gauge, kappa, CurvatureMode::Gauge)
    }

    /// Synthetic mode: `κ` supplied directly. Bianchi consistency is not
    /// enforced here; see [`CartanModel::bianchi_residual`].
    pub fn synthetic(
        algebra: LieAlgebra,
        p: Subalgebra,
        vars: Vars,
        transversal: Vec<Vector>,
        gauge: Vec<Section>,
        kappa: Curvature,
    ) -> Result<Self, ModelError> {
        Self::build(algebra, p, vars, transversal, gauge, kappa, CurvatureMode::Synthetic)
    }

    fn build(
        algebra: LieAlgebra,
        p: Subalgebra,
        vars: Vars,
        transversal: Vec<Vector>,
        gauge: Vec<Section>,
        kappa: Curvature,
        mode: CurvatureMode,
    ) -> Result<Self, ModelError> {
        let d = algebra.dim();
        let n = d - p.span().dim();
        if transversal.len() != n {
            return Err(ModelError::Arity {
                what: "transversal vectors",
                expected: n,
                got: transversal.len(),
            });
        }
        if vars.len() != n {
            return Err(ModelError::Arity {
                what: "chart coordinates",
                expected: n,
                got: vars.len(),
            });
        }
        if gauge.len() != n {
            return Err(ModelError::Arity {
                what: "gauge components",
                expected: n,
                got: gauge.len(),
            });
        }
        if kappa.chart_dim() != n {
            return Err(ModelError::Arity {
                what: "curvature chart dimension",
                expected: n,
                got: kappa.chart_dim(),
            });
        }
        if let Some(bad) = gauge.iter().find(|g| g.dim() != d) {
            return Err(ModelError::Arity {
                what: "gauge vector entries",
                expected: d,
                got: bad.dim(),
            });
        }
        if algebra.form().determinant().is_zero() {
            return Err(LieError::SingularForm.into());
        }
        if !liealg::check_coisotropic(&algebra, &p) {
            return Err(ModelError::NotCoisotropic);
        }
        let mut frame = transversal.clone();
        frame.extend(p.span().basis().iter().cloned());
        let frame_m = Matrix::from_columns(&frame);
        let frame_inverse = frame_m.inverse().ok_or(ModelError::NotComplement {
            rank: frame_m.rank(),
            dim: d,
        })?;
        let dual_frame = (0..n)
            .map(|i| algebra.b_dual(&frame_inverse.row(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let p_perp = liealg::orthogonal_complement(&algebra, p.span());
        let mut qframe = linalg::complement(p_perp.basis(), d);
        let q = qframe.len();
        qframe.extend(p_perp.basis().iter().cloned());
        let qinv = Matrix::from_columns(&qframe).inverse().expect("complement frame");
        let quotient_rows = Matrix::from_rows(&(0..q).map(|i| qinv.row(i)).collect::<Vec<_>>());

        let model = CartanModel {
            algebra,
            p,
            p_perp,
            vars,
            transversal,
            frame_inverse,
            dual_frame,
            quotient_rows,
            gauge,
            kappa,
            mode,
        };
        for (i, a) in model.gauge.iter().enumerate() {
            let coeffs = model.anchor_coeffs(a);
            let normalized = coeffs.iter().enumerate().all(|(j, c)| {
                let want = if i == j { Rational::from_integer(1.into()) } else { Rational::zero() };
                c.as_constant() == Some(want)
            });
            if !normalized {
                let expected = Section::constant(&model.transversal[i], &model.vars);
                let diff = a - &expected;
                return Err(ModelError::NotNormalized {
                    index: i + 1,
                    detail: VectorField::new(model.anchor_coeffs(&diff)).to_string(),
                });
            }
        }
        Ok(model)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.p
    }

    pub fn p_perp(&self) -> &Subspace {
        &self.p_perp
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn chart_dim(&self) -> usize {
        self.vars.len()
    }

    pub fn transversal(&self) -> &[Vector] {
        &self.transversal
    }

    pub fn gauge(&self) -> &[Section] {
        &self.gauge
    }

    pub fn curvature(&self) -> &Curvature {
        &self.kappa
    }

    pub fn mode(&self) -> CurvatureMode {
        self.mode
    }

    /// Same geometry with `κ` replaced (synthetic mode).
    pub fn with_curvature(&self, kappa: Curvature) -> Self {
        CartanModel {
            kappa,
            mode: CurvatureMode::Synthetic,
            ..self.clone()
        }
    }

    pub fn names(&self) -> &[String] {
        self.algebra.names()
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(self.dim(), &self.vars)
    }

    pub fn constant_section(&self, v: &[Rational]) -> Section {
        Section::constant(v, &self.vars)
    }

    /// Constant section `Tᵢ`; its anchor is `∂ᵢ`.
    pub fn transversal_section(&self, i: usize) -> Section {
        self.constant_section(&self.transversal[i])
    }

    pub fn show(&self, s: &Section) -> String {
        s.display(self.names())
    }

    fn apply_rows(&self, rows: &Matrix, e: &Section, count: usize) -> Vec<Poly> {
        (0..count)
            .map(|i| {
                let mut acc = Poly::zero(&self.vars);
                for (a, c) in e.comps().iter().enumerate() {
                    let m = &rows[(i, a)];
                    if !m.is_zero() && !c.is_zero() {
                        acc += c.scale(m);
                    }
                }
                acc
            })
            .collect()
    }

    /// Transversal coordinates of `e` in the frame `(T, p)`.
    pub fn anchor_coeffs(&self, e: &Section) -> Vec<Poly> {
        self.apply_rows(&self.frame_inverse, e, self.chart_dim())
    }

    /// `ρ(e)`.
    pub fn anchor(&self, e: &Section) -> VectorField {
        VectorField::new(self.anchor_coeffs(e))
    }

    pub fn is_p_valued(&self, e: &Section) -> bool {
        self.anchor_coeffs(e).iter().all(Poly::is_zero)
    }

    /// Coordinates of `e` modulo `p⊥`.
    pub fn quotient_coeffs(&self, e: &Section) -> Vec<Poly> {
        self.apply_rows(&self.quotient_rows, e, self.quotient_rows.rows())
    }

    pub fn is_p_perp_valued(&self, e: &Section) -> bool {
        self.quotient_coeffs(e).iter().all(Poly::is_zero)
    }

    /// `B(e₁, e₂)` pointwise.
    pub fn pairing(&self, e1: &Section, e2: &Section) -> Poly {
        self.algebra.pair_poly(e1.comps(), e2.comps(), &self.vars)
    }

    /// Pointwise `[e₁, e₂]_g`.
    pub fn lie_bracket(&self, e1: &Section, e2: &Section) -> Section {
        Section::new(self.algebra.bracket_poly(e1.comps(), e2.comps(), &self.vars))
    }

    /// `X · e` coefficientwise.
    pub fn derivative(&self, x: &VectorField, e: &Section) -> Section {
        Section::new(e.comps().iter().map(|c| x.apply(c)).collect())
    }

    /// `A(X) = Σ Xⁱ Aᵢ`.
    pub fn gauge_on(&self, x: &VectorField) -> Section {
        let mut acc = self.zero_section();
        for (xi, a) in x.coeffs().iter().zip(&self.gauge) {
            if !xi.is_zero() {
                acc = &acc + &a.scale(xi);
            }
        }
        acc
    }

    /// Tractor connection in the gauge: `∇_X e = X(e) + [A(X), e]`.
    pub fn nabla(&self, x: &VectorField, e: &Section) -> Section {
        &self.derivative(x, e) + &self.lie_bracket(&self.gauge_on(x), e)
    }

    /// `∇_{∂ᵢ} e`.
    pub fn nabla_coord(&self, i: usize, e: &Section) -> Section {
        &e.diff(i) + &self.lie_bracket(&self.gauge[i], e)
    }

    /// `ρ*(Σ αᵢ dxᵢ) = Σ αᵢ sᵢ`.
    pub fn rho_star_coeffs(&self, alpha: &[Poly]) -> Section {
        let d = self.dim();
        let mut out = self.zero_section();
        for (a, s) in alpha.iter().zip(&self.dual_frame) {
            if a.is_zero() {
                continue;
            }
            let sec = Section::new((0..d).map(|k| a.scale(&s[k])).collect());
            out = &out + &sec;
        }
        out
    }

    /// `ρ*α` for a 1-form `α`.
    pub fn rho_star(&self, alpha: &PolyForm) -> Section {
        assert_eq!(alpha.degree(), 1, "rho* takes a 1-form");
        let coeffs: Vec<Poly> = (0..self.chart_dim()).map(|i| alpha.component(&[i])).collect();
        self.rho_star_coeffs(&coeffs)
    }

    /// Inverse of `ρ*` on its image: `αᵢ = B(s, Tᵢ)`.
    pub fn rho_star_pullback(&self, s: &Section) -> Result<PolyForm, ModelError> {
        let coeffs: Vec<Poly> = (0..self.chart_dim())
            .map(|i| self.pairing(s, &self.transversal_section(i)))
            .collect();
        if self.rho_star_coeffs(&coeffs) != *s {
            return Err(ModelError::NotInImage(self.show(s)));
        }
        Ok(PolyForm::one_form(&self.vars, &coeffs))
    }

    /// `∂f = ρ*(df)`.
    pub fn d_operator(&self, f: &Poly) -> Section {
        let grads: Vec<Poly> = (0..self.chart_dim()).map(|i| f.d(i)).collect();
        self.rho_star_coeffs(&grads)
    }

    /// `κ(e, ∂ⱼ) = Σᵢ cᵢ κᵢⱼ` with `c = ρ(e)`.
    pub fn kappa_partial(&self, e: &Section, j: usize) -> Section {
        let c = self.anchor_coeffs(e);
        let mut out = self.zero_section();
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() || i == j {
                continue;
            }
            let k = self.kappa.get(i, j);
            if !k.is_zero() {
                out = &out + &k.scale(ci);
            }
        }
        out
    }

    /// `κ(e₁, e₂) = Σ_{i<j} (c₁ᵢc₂ⱼ − c₁ⱼc₂ᵢ) κᵢⱼ`.
    pub fn kappa_on_sections(&self, e1: &Section, e2: &Section) -> Section {
        let c1 = self.anchor_coeffs(e1);
        let c2 = self.anchor_coeffs(e2);
        let mut out = self.zero_section();
        for ((i, j), k) in self.kappa.components() {
            let w = &(&c1[i] * &c2[j]) - &(&c1[j] * &c2[i]);
            if !w.is_zero() {
                out = &out + &k.scale(&w);
            }
        }
        out
    }

    /// Lie algebroid bracket
    /// `⟨e₁,e₂⟩ = ∇_{ρe₁}e₂ − ∇_{ρe₂}e₁ − [e₁,e₂]_g − κ(e₁,e₂)`.
    pub fn atiyah_bracket(&self, e1: &Section, e2: &Section) -> Section {
        let r1 = self.anchor(e1);
        let r2 = self.anchor(e2);
        let mut out = &self.nabla(&r1, e2) - &self.nabla(&r2, e1);
        out = &out - &self.lie_bracket(e1, e2);
        &out - &self.kappa_on_sections(e1, e2)
    }

    /// Nonzero components of `dκ + [A ∧ κ]`.
    pub fn bianchi_residual(&self) -> Vec<((usize, usize, usize), Section)> {
        bianchi_residual(&self.algebra, &self.gauge, &self.kappa, &self.vars)
    }

    /// Whether `κ` equals `dA + ½[A, A]` for the stored gauge.
    pub fn curvature_matches_gauge(&self) -> bool {
        curvature(&self.algebra, &self.gauge, &self.vars) == self.kappa
    }
}
