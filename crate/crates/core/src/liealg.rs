//! Quadratic Lie algebras given by structure constants, together with
//! subalgebras, gradings and B-duality.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{Poly, Rational, Vars};
use crate::linalg::{self, Matrix, Vector};
use crate::report::{CheckRecord, Report, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("spanning vectors are linearly dependent")]
    DependentSpan,
    #[error("span is not closed under the bracket: [{0}, {1}] leaves it")]
    NotClosed(usize, usize),
}

/// Finite-dimensional Lie algebra `[Xᵢ, Xⱼ] = Σ_k c[i][j][k] X_k` with a
/// symmetric bilinear form `B`.
///
/// The table is stored literally as supplied; `validate_quadratic` reports
/// whether it really is an antisymmetric, Jacobi, invariant structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    form: Matrix,
}

impl LieAlgebra {
    /// Builds the algebra from literal `(i, j, k, c)` entries; repeated
    /// entries accumulate.
    pub fn new(
        names: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        form: Matrix,
    ) -> Result<Self, LieError> {
        let d = names.len();
        if form.rows() != d || form.cols() != d {
            return Err(LieError::DimensionMismatch {
                expected: d,
                got: form.rows(),
            });
        }
        let mut dense = vec![vec![vec![Rational::zero(); d]; d]; d];
        for (i, j, k, c) in constants {
            for idx in [i, j, k] {
                if idx >= d {
                    return Err(LieError::IndexOutOfRange(idx));
                }
            }
            dense[i][j][k] += c;
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra { names, table, form })
    }

    /// Like [`LieAlgebra::new`], but each supplied `[Xᵢ, Xⱼ]` also sets
    /// `[Xⱼ, Xᵢ] = −[Xᵢ, Xⱼ]`. Entries with `i == j` are kept literally.
    pub fn with_antisymmetric_completion(
        names: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        form: Matrix,
    ) -> Result<Self, LieError> {
        let mut all = Vec::new();
        for (i, j, k, c) in constants {
            if i != j {
                all.push((j, i, k, -c.clone()));
            }
            all.push((i, j, k, c));
        }
        LieAlgebra::new(names, all, form)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// Replaces the bilinear form.
    pub fn with_form(&self, form: Matrix) -> Self {
        LieAlgebra {
            form,
            ..self.clone()
        }
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Sparse `[Xᵢ, Xⱼ]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn check_len(&self, len: usize) -> Result<(), LieError> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch {
                expected: self.dim(),
                got: len,
            })
        }
    }

    /// Bracket of constant coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Pointwise bracket of polynomial-coefficient vectors.
    pub fn bracket_poly(&self, x: &[Poly], y: &[Poly], vars: &Vars) -> Vec<Poly> {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut out = vec![Poly::zero(vars); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if self.table[i][j].is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += ab.scale(c);
                }
            }
        }
        out
    }

    /// `B(x, y)` on constant vectors.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::dot(x, &self.form.mul_vec(y))
    }

    /// `B(x, y)` pointwise on polynomial vectors.
    pub fn pair_poly(&self, x: &[Poly], y: &[Poly], vars: &Vars) -> Poly {
        let mut acc = Poly::zero(vars);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let bij = &self.form[(i, j)];
                if !bij.is_zero() {
                    acc += (a * b).scale(bij);
                }
            }
        }
        acc
    }

    /// Matrix of `ad Xᵢ` acting on coordinate columns.
    pub fn ad(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in &self.table[i][j] {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// `K[i][j] = tr(ad Xᵢ ∘ ad Xⱼ)`.
    pub fn killing_form(&self) -> Matrix {
        let d = self.dim();
        let ads: Vec<Matrix> = (0..d).map(|i| self.ad(i)).collect();
        let mut k = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..=i {
                let prod = ads[i].mul(&ads[j]);
                let tr = (0..d).fold(Rational::zero(), |acc, t| acc + &prod[(t, t)]);
                k[(i, j)] = tr.clone();
                k[(j, i)] = tr;
            }
        }
        k
    }

    /// `B`-flat: the covector `y ↦ B(x, y)`.
    pub fn flat(&self, x: &[Rational]) -> Vector {
        self.form.transpose().mul_vec(x)
    }

    /// The unique `s` with `B(s, y) = functional(y)` for all `y`.
    pub fn b_dual(&self, functional: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(functional.len())?;
        let inv = self.form.transpose().inverse().ok_or(LieError::SingularForm)?;
        Ok(inv.mul_vec(functional))
    }

    /// Checks antisymmetry, Jacobi, and symmetry, nondegeneracy and
    /// ad-invariance of `B`, naming the first violating basis tuple.
    pub fn validate_quadratic(&self) -> Report {
        let d = self.dim();
        let mut report = Report::new();

        let mut anti = Tally::new("antisymmetry", "c[i][j][k] = -c[j][i][k]");
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let s = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    anti.record(s.is_zero(), || {
                        format!(
                            "c[{0}][{1}][{2}] + c[{1}][{0}][{2}] = {s} ({3}, {4}, {5})",
                            i, j, k, self.names[i], self.names[j], self.names[k]
                        )
                    });
                }
            }
        }
        report.push(anti.finish());

        let mut jac = Tally::new("jacobi", "[Xi,[Xj,Xk]] + [Xj,[Xk,Xi]] + [Xk,[Xi,Xj]] = 0");
        let e: Vec<Vector> = (0..d).map(|i| self.basis_vector(i)).collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let br = |a: &Vector, b: &Vector| self.bracket(a, b).unwrap();
                    let t1 = br(&e[i], &br(&e[j], &e[k]));
                    let t2 = br(&e[j], &br(&e[k], &e[i]));
                    let t3 = br(&e[k], &br(&e[i], &e[j]));
                    let sum: Vector = (0..d).map(|t| &t1[t] + &t2[t] + &t3[t]).collect();
                    jac.record(linalg::is_zero_vector(&sum), || {
                        format!(
                            "triple ({}, {}, {}) has Jacobiator {}",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.display_vector(&sum)
                        )
                    });
                }
            }
        }
        report.push(jac.finish());

        let mut sym = Tally::new("form_symmetric", "B(Xi, Xj) = B(Xj, Xi)");
        for i in 0..d {
            for j in 0..i {
                sym.record(self.form[(i, j)] == self.form[(j, i)], || {
                    format!(
                        "B({0}, {1}) = {2} but B({1}, {0}) = {3}",
                        self.names[i],
                        self.names[j],
                        self.form[(i, j)],
                        self.form[(j, i)]
                    )
                });
            }
        }
        report.push(sym.finish());

        let mut nondeg = Tally::new("form_nondegenerate", "det B != 0");
        let det = self.form.determinant();
        nondeg.record(!det.is_zero(), || "det B = 0".to_string());
        report.push(nondeg.finish());

        let mut inv = Tally::new("form_invariant", "B([Xi,Xj], Xk) = B(Xi, [Xj,Xk])");
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.pair(&self.bracket(&e[i], &e[j]).unwrap(), &e[k]);
                    let rhs = self.pair(&e[i], &self.bracket(&e[j], &e[k]).unwrap());
                    inv.record(lhs == rhs, || {
                        format!(
                            "triple ({}, {}, {}): {} != {}",
                            self.names[i], self.names[j], self.names[k], lhs, rhs
                        )
                    });
                }
            }
        }
        report.push(inv.finish());
        report
    }

    pub fn display_vector(&self, v: &[Rational]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}", self.names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Linear subspace of `g`, stored as an independent spanning family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vector>) -> Result<Self, LieError> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient) {
            return Err(LieError::DimensionMismatch {
                expected: ambient,
                got: v.len(),
            });
        }
        if linalg::span_rank(&basis) != basis.len() {
            return Err(LieError::DependentSpan);
        }
        Ok(Subspace {
            dim: ambient,
            basis,
        })
    }

    /// Span of the given basis indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self, LieError> {
        let basis = indices
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(LieError::IndexOutOfRange(i));
                }
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::new(ambient, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        linalg::in_span(&self.basis, v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }
}

/// A subalgebra `p ⊂ g`: an independent family closed under the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    span: Subspace,
}

impl Subalgebra {
    pub fn new(algebra: &LieAlgebra, span: Subspace) -> Result<Self, LieError> {
        if span.ambient_dim() != algebra.dim() {
            return Err(LieError::DimensionMismatch {
                expected: algebra.dim(),
                got: span.ambient_dim(),
            });
        }
        for (a, x) in span.basis().iter().enumerate() {
            for (b, y) in span.basis().iter().enumerate().skip(a + 1) {
                if !span.contains(&algebra.bracket(x, y)?) {
                    return Err(LieError::NotClosed(a, b));
                }
            }
        }
        Ok(Subalgebra { span })
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }
}

/// `V^⊥ = {x : B(x, v) = 0 ∀ v ∈ V}`, by exact kernel computation.
pub fn orthogonal_complement(algebra: &LieAlgebra, v: &Subspace) -> Subspace {
    let d = algebra.dim();
    if v.dim() == 0 {
        return Subspace::coordinate(d, &(0..d).collect::<Vec<_>>()).unwrap();
    }
    let rows: Vec<Vector> = v.basis().iter().map(|b| algebra.flat(b)).collect();
    let kernel = Matrix::from_rows(&rows).kernel();
    Subspace::new(d, kernel).expect("kernel basis is independent")
}

/// `p⊥ ⊆ p`.
pub fn check_coisotropic(algebra: &LieAlgebra, p: &Subalgebra) -> bool {
    let perp = orthogonal_complement(algebra, p.span());
    p.span().contains_subspace(&perp)
}

/// `|l|`-grading of `g` by basis degrees, with an optional grading element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<i32>,
    pub element: Option<Vector>,
}

impl Grading {
    pub fn component(&self, degree: i32) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&i| self.degrees[i] == degree)
            .collect()
    }
}

/// Checks `[gᵢ, gⱼ] ⊆ g_{i+j}`, the grading element, `B(gᵢ, gⱼ) = 0` for
/// `j ≠ −i`, and `p = ⊕_{i≥0} gᵢ`.
pub fn validate_grading(algebra: &LieAlgebra, grading: &Grading, p: &Subalgebra) -> Report {
    let d = algebra.dim();
    let names = algebra.names();
    let mut report = Report::new();
    if grading.degrees.len() != d {
        let mut t = Tally::new("grading_shape", "one degree per basis element");
        t.record(false, || {
            format!("{} degrees for {} basis elements", grading.degrees.len(), d)
        });
        report.push(t.finish());
        return report;
    }
    let deg = &grading.degrees;

    let mut compat = Tally::new("grading_bracket", "[g_i, g_j] ⊆ g_(i+j)");
    for i in 0..d {
        for j in 0..d {
            for (k, c) in algebra.basis_bracket(i, j) {
                compat.record(deg[*k] == deg[i] + deg[j], || {
                    format!(
                        "[{}, {}] has {} * {} of degree {} != {} + {}",
                        names[i], names[j], c, names[*k], deg[*k], deg[i], deg[j]
                    )
                });
            }
        }
    }
    report.push(compat.finish());

    let mut elem = Tally::new("grading_element", "[E, A] = i A for A in g_i");
    match &grading.element {
        None => {}
        Some(e) if e.len() != d => {
            elem.record(false, || "grading element has wrong dimension".into());
        }
        Some(e) => {
            let in_g0 = e
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || deg[i] == 0);
            elem.record(in_g0, || "grading element is not in g_0".into());
            for i in 0..d {
                let xi = algebra.basis_vector(i);
                let lhs = algebra.bracket(e, &xi).unwrap();
                let rhs: Vector = xi.iter().map(|c| c * Rational::from_integer(deg[i].into())).collect();
                elem.record(lhs == rhs, || {
                    format!(
                        "[E, {}] = {} but degree is {}",
                        names[i],
                        algebra.display_vector(&lhs),
                        deg[i]
                    )
                });
            }
        }
    }
    let elem = elem.finish();
    if grading.element.is_some() {
        report.push(elem);
    }

    let mut orth = Tally::new("grading_orthogonality", "B(g_i, g_j) = 0 for j != -i");
    for i in 0..d {
        for j in 0..d {
            if deg[i] + deg[j] == 0 {
                continue;
            }
            let b = &algebra.form()[(i, j)];
            orth.record(b.is_zero(), || {
                format!("B({}, {}) = {} with degrees {}, {}", names[i], names[j], b, deg[i], deg[j])
            });
        }
    }
    report.push(orth.finish());

    let mut parab = Tally::new("grading_parabolic", "p = sum of g_i over i >= 0");
    let nonneg: Vec<usize> = (0..d).filter(|&i| deg[i] >= 0).collect();
    let graded = Subspace::coordinate(d, &nonneg).unwrap();
    parab.record(graded.same_as(p.span()), || {
        format!(
            "span of nonnegative degrees has dim {}, p has dim {}",
            graded.dim(),
            p.span().dim()
        )
    });
    report.push(parab.finish());
    report
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie algebra of dimension {} [{}]", self.dim(), self.names.join(", "))
    }
}

pub fn record_ok(name: &str, identity: &str, ok: bool, witness: impl FnOnce() -> String) -> CheckRecord {
    let mut t = Tally::new(name, identity);
    t.record(ok, witness);
    t.finish()
}
