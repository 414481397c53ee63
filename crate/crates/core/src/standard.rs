//! Standard algebras and example models used by tests and the bundled corpus.

use num_traits::Zero;

use crate::cartan::{CartanModel, Curvature, ModelError};
use crate::exactpoly::{int, parse_poly, Rational, Vars};
use crate::liealg::{LieAlgebra, Subalgebra, Subspace};
use crate::linalg::{Matrix, Vector};
use crate::section::Section;

/// Structure constants of the span of the given matrices, with form `B`.
/// Panics if the span is not closed under commutators.
pub fn matrix_algebra(names: &[&str], mats: &[Matrix], form: Option<Matrix>) -> LieAlgebra {
    let d = mats.len();
    let flat = |m: &Matrix| -> Vector {
        (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].clone())
            .collect()
    };
    let cols: Vec<Vector> = mats.iter().map(flat).collect();
    let system = Matrix::from_columns(&cols);
    let mut consts = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let comm = {
                let ab = mats[i].mul(&mats[j]);
                let ba = mats[j].mul(&mats[i]);
                let mut c = ab.clone();
                for r in 0..c.rows() {
                    for s in 0..c.cols() {
                        c[(r, s)] = &ab[(r, s)] - &ba[(r, s)];
                    }
                }
                c
            };
            let coeffs = system.solve(&flat(&comm)).expect("span not closed under commutator");
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    consts.push((i, j, k, c));
                }
            }
        }
    }
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let provisional = LieAlgebra::new(names.clone(), consts.clone(), Matrix::identity(d)).unwrap();
    let form = form.unwrap_or_else(|| provisional.killing_form());
    LieAlgebra::new(names, consts, form).unwrap()
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = int(1);
    m
}

fn diag(entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m[(i, i)] = int(e);
    }
    m
}

/// `sl(2)` in the basis `(X₋, H, X₊)` with its Killing form.
pub fn sl2() -> LieAlgebra {
    matrix_algebra(
        &["Xm", "H", "Xp"],
        &[unit(2, 1, 0), diag(&[1, -1]), unit(2, 0, 1)],
        None,
    )
}

/// `sl(3)` with its Killing form. Basis: positive root vectors
/// `E12, E23, E13`, Cartan `H1, H2`, negative root vectors `E21, E32, E31`.
pub fn sl3() -> LieAlgebra {
    matrix_algebra(
        &["E12", "E23", "E13", "H1", "H2", "E21", "E32", "E31"],
        &[
            unit(3, 0, 1),
            unit(3, 1, 2),
            unit(3, 0, 2),
            diag(&[1, -1, 0]),
            diag(&[0, 1, -1]),
            unit(3, 1, 0),
            unit(3, 2, 1),
            unit(3, 2, 0),
        ],
        None,
    )
}

/// Abelian `ℝ²ⁿ` with basis `u₁..uₙ, v₁..vₙ` and `B(uᵢ, vⱼ) = δᵢⱼ`.
pub fn hyperbolic(n: usize) -> LieAlgebra {
    let mut names: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    names.extend((1..=n).map(|i| format!("v{i}")));
    let mut form = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        form[(i, n + i)] = int(1);
        form[(n + i, i)] = int(1);
    }
    LieAlgebra::new(names, Vec::new(), form).unwrap()
}

/// `k ⋉ k*` with the natural pairing; `k*` is a Lagrangian abelian ideal.
/// Basis names: those of `k`, then `d<name>` for the dual basis.
pub fn cotangent_double(k: &LieAlgebra) -> LieAlgebra {
    let n = k.dim();
    let mut names: Vec<String> = k.names().to_vec();
    names.extend(k.names().iter().map(|s| format!("d{s}")));
    let mut consts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (l, c) in k.basis_bracket(i, j) {
                consts.push((i, j, *l, c.clone()));
            }
            // [x_i, ξ^j] = ad*_{x_i} ξ^j = −Σ_l c_{il}^j ξ^l
            for l in 0..n {
                let c = k.structure_constant(i, l, j);
                if !c.is_zero() {
                    consts.push((i, n + j, n + l, -c.clone()));
                    consts.push((n + j, i, n + l, c));
                }
            }
        }
    }
    let mut form = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        form[(i, n + i)] = int(1);
        form[(n + i, i)] = int(1);
    }
    LieAlgebra::new(names, consts, form).unwrap()
}

/// `gl(2)` in the basis `E11, E12, E21, E22`, with the trace form.
pub fn gl2() -> LieAlgebra {
    let mats = [unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1)];
    let mut form = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let p = mats[i].mul(&mats[j]);
            form[(i, j)] = &p[(0, 0)] + &p[(1, 1)];
        }
    }
    matrix_algebra(&["E11", "E12", "E21", "E22"], &mats, Some(form))
}

/// Parses a gauge/section given as `(basis name, polynomial)` pairs.
pub fn section_from_terms(algebra: &LieAlgebra, vars: &Vars, terms: &[(&str, &str)]) -> Section {
    let mut s = Section::zero(algebra.dim(), vars);
    for (name, poly) in terms {
        let a = algebra.index_of(name).unwrap_or_else(|| panic!("no basis element {name}"));
        let f = parse_poly(poly, vars).expect("fixture polynomial");
        s = &s + &Section::basis(algebra.dim(), a, f);
    }
    s
}

fn coord_vectors(algebra: &LieAlgebra, names: &[&str]) -> Vec<Vector> {
    names
        .iter()
        .map(|n| algebra.basis_vector(algebra.index_of(n).unwrap()))
        .collect()
}

fn model(
    algebra: LieAlgebra,
    p_names: &[&str],
    transversal: &[&str],
    gauge: &[&[(&str, &str)]],
) -> Result<CartanModel, ModelError> {
    let d = algebra.dim();
    let vars = Vars::numbered("x", transversal.len());
    let p = Subalgebra::new(&algebra, Subspace::new(d, coord_vectors(&algebra, p_names))?)?;
    let t = coord_vectors(&algebra, transversal);
    let gauge: Vec<Section> = gauge
        .iter()
        .map(|terms| section_from_terms(&algebra, &vars, terms))
        .collect();
    CartanModel::new(algebra, p, vars, t, gauge)
}

const U: [&str; 4] = ["u1", "u2", "u3", "u4"];
const V: [&str; 4] = ["v1", "v2", "v3", "v4"];

/// `d₈` with the flat gauge `Aᵢ = uᵢ`.
pub fn flat_abelian() -> CartanModel {
    model(
        hyperbolic(4),
        &V,
        &U,
        &[&[("u1", "1")], &[("u2", "1")], &[("u3", "1")], &[("u4", "1")]],
    )
    .unwrap()
}

/// `d₈` with `A₂ = u₂ + x₁x₃·v₁`, other `Aᵢ = uᵢ`.
pub fn d8_example() -> CartanModel {
    model(
        hyperbolic(4),
        &V,
        &U,
        &[
            &[("u1", "1")],
            &[("u2", "1"), ("v1", "x1*x3")],
            &[("u3", "1")],
            &[("u4", "1")],
        ],
    )
    .unwrap()
}

/// `sl(2)` Borel model on a 1-dimensional chart.
pub fn sl2_borel() -> CartanModel {
    model(sl2(), &["H", "Xp"], &["Xm"], &[&[("Xm", "1"), ("H", "x1"), ("Xp", "x1^2 - 1")]]).unwrap()
}

/// `sl(3)` Borel model on a 3-dimensional chart with a non-flat gauge.
pub fn sl3_borel() -> CartanModel {
    model(
        sl3(),
        &["E12", "E23", "E13", "H1", "H2"],
        &["E21", "E32", "E31"],
        &[
            &[("E21", "1"), ("H1", "x2"), ("E12", "x3")],
            &[("E32", "1"), ("E23", "x1"), ("H2", "-x1*x3")],
            &[("E31", "1"), ("E13", "x2^2"), ("H2", "x1"), ("E12", "1/2")],
        ],
    )
    .unwrap()
}

/// `gl(2) ⋉ gl(2)*` with Lagrangian `p = gl(2)*`, chart dimension 4.
pub fn gl2_double() -> CartanModel {
    model(
        cotangent_double(&gl2()),
        &["dE11", "dE12", "dE21", "dE22"],
        &["E11", "E12", "E21", "E22"],
        &[
            &[("E11", "1"), ("dE12", "x2")],
            &[("E12", "1"), ("dE11", "x3*x4")],
            &[("E21", "1"), ("dE22", "x1")],
            &[("E22", "1"), ("dE21", "x1*x2")],
        ],
    )
    .unwrap()
}

pub fn rational_vector(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&e| int(e)).collect()
}

fn d8_parts() -> (LieAlgebra, Subalgebra, Vars, Vec<Vector>, Vec<Section>) {
    let algebra = hyperbolic(4);
    let vars = Vars::numbered("x", 4);
    let p = Subalgebra::new(&algebra, Subspace::new(8, coord_vectors(&algebra, &V)).unwrap()).unwrap();
    let t = coord_vectors(&algebra, &U);
    let gauge = (0..4)
        .map(|i| Section::constant(&t[i], &vars))
        .collect();
    (algebra, p, vars, t, gauge)
}

/// Constant curvatures `κ` on the flat model's chart for which
/// `(e₁,e₂,e₃) ↦ B(κ(e₁,e₂),e₃)` is totally skew: a basis of the kernel of
/// the linear skewness constraints, one [`Curvature`] per kernel vector.
pub fn skew_kappa_basis(model: &CartanModel) -> Vec<Curvature> {
    let d = model.dim();
    let n = model.chart_dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unknowns = pairs.len() * d;
    // Anchor coordinates of each constant basis section.
    let anchors: Vec<Vec<Rational>> = (0..d)
        .map(|a| {
            let s = Section::basis(d, a, crate::exactpoly::Poly::one(model.vars()));
            model
                .anchor_coeffs(&s)
                .iter()
                .map(|c| c.as_constant().expect("constant anchor"))
                .collect()
        })
        .collect();
    let form = model.algebra().form();
    // Row of the functional κ ↦ B(κ(X_a, X_b), X_c) in the unknowns.
    let functional = |a: usize, b: usize, c: usize| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); unknowns];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let w = &anchors[a][i] * &anchors[b][j] - &anchors[a][j] * &anchors[b][i];
            if w.is_zero() {
                continue;
            }
            for k in 0..d {
                row[p * d + k] += &w * &form[(k, c)];
            }
        }
        row
    };
    let mut rows = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let f1 = functional(a, b, c);
                let f2 = functional(a, c, b);
                rows.push(f1.iter().zip(&f2).map(|(x, y)| x + y).collect::<Vec<_>>());
            }
        }
    }
    let system = Matrix::from_rows(&rows);
    system
        .kernel()
        .into_iter()
        .map(|v| {
            let mut k = Curvature::zero(n, d, model.vars());
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let comp: Vector = v[p * d..(p + 1) * d].to_vec();
                if !comp.iter().all(Zero::is_zero) {
                    k.set(i, j, Section::constant(&comp, model.vars())).unwrap();
                }
            }
            k
        })
        .collect()
}

/// Synthetic `d₈` model whose constant curvature is the sum of the
/// [`skew_kappa_basis`] solutions.
pub fn skew_kappa_d8() -> CartanModel {
    let (algebra, p, vars, t, gauge) = d8_parts();
    let flat = CartanModel::new(algebra.clone(), p.clone(), vars.clone(), t.clone(), gauge.clone()).unwrap();
    let mut kappa = Curvature::zero(4, 8, &vars);
    for k in skew_kappa_basis(&flat) {
        for ((i, j), s) in k.components() {
            let sum = &kappa.get(i, j) + s;
            kappa.set(i, j, sum).unwrap();
        }
    }
    CartanModel::synthetic(algebra, p, vars, t, gauge, kappa).unwrap()
}

/// Synthetic `d₈` model with `κ₁₂ = x₃·v₁`, which violates Bianchi.
pub fn non_bianchi_d8() -> CartanModel {
    let (algebra, p, vars, t, gauge) = d8_parts();
    let mut kappa = Curvature::zero(4, 8, &vars);
    kappa
        .set(0, 1, section_from_terms(&algebra, &vars, &[("v1", "x3")]))
        .unwrap();
    CartanModel::synthetic(algebra, p, vars, t, gauge, kappa).unwrap()
}
