use std::collections::BTreeMap;
use std::fmt;

use super::{Poly, PolyError, VectorField, Vars};

/// Differential k-form `Σ_{i₁<…<i_k} f_I dx_{i₁}∧…∧dx_{i_k}` with polynomial
/// coefficients. Only strictly increasing index tuples are stored, zero
/// components are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    vars: Vars,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl PolyForm {
    pub fn zero(vars: &Vars, degree: usize) -> Self {
        PolyForm {
            vars: vars.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: &Poly) -> Self {
        let mut out = PolyForm::zero(f.vars(), 0);
        out.add_component(&[], f.clone()).unwrap();
        out
    }

    /// `df` as a 1-form.
    pub fn differential(f: &Poly) -> Self {
        PolyForm::function(f).exterior_derivative()
    }

    /// Builds a 1-form `Σ αᵢ dxᵢ` from its coefficients.
    pub fn one_form(vars: &Vars, coeffs: &[Poly]) -> Self {
        let mut out = PolyForm::zero(vars, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_component(&[i], c.clone()).unwrap();
        }
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components keyed by strictly increasing index tuples.
    pub fn components(&self) -> impl Iterator<Item = (&[usize], &Poly)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Adds `f dx_{idx₀}∧…`, reordering the indices with the induced sign.
    pub fn add_component(&mut self, idx: &[usize], f: Poly) -> Result<(), PolyError> {
        assert_eq!(idx.len(), self.degree, "component arity must equal form degree");
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.vars.len()) {
            return Err(PolyError::IndexOutOfRange {
                index: bad,
                dim: self.vars.len(),
            });
        }
        let mut key = idx.to_vec();
        let Some(sign) = sort_with_sign(&mut key) else {
            return Ok(());
        };
        let f = if sign < 0 { -f } else { f };
        let slot = self.comps.entry(key.clone()).or_insert_with(|| Poly::zero(&self.vars));
        *slot += f;
        if slot.is_zero() {
            self.comps.remove(&key);
        }
        Ok(())
    }

    /// Component at an arbitrary index tuple, with the antisymmetry sign applied.
    pub fn component(&self, idx: &[usize]) -> Poly {
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None => Poly::zero(&self.vars),
            Some(sign) => match self.comps.get(&key) {
                None => Poly::zero(&self.vars),
                Some(f) if sign > 0 => f.clone(),
                Some(f) => -f,
            },
        }
    }

    pub fn exterior_derivative(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree + 1);
        for (idx, f) in &self.comps {
            for j in 0..self.vars.len() {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.d(j);
                if df.is_zero() {
                    continue;
                }
                let mut key = Vec::with_capacity(idx.len() + 1);
                key.push(j);
                key.extend_from_slice(idx);
                out.add_component(&key, df).unwrap();
            }
        }
        out
    }

    /// Evaluates the form on `k` vector fields: `Σ_I f_I · det[Vₐ^{I_b}]`.
    pub fn eval(&self, fields: &[VectorField]) -> Poly {
        assert_eq!(fields.len(), self.degree, "need one vector field per slot");
        let mut acc = Poly::zero(&self.vars);
        let perms = permutations(self.degree);
        for (idx, f) in &self.comps {
            let mut det = Poly::zero(&self.vars);
            for (perm, sign) in &perms {
                let mut term = Poly::one(&self.vars);
                for (a, &b) in perm.iter().enumerate() {
                    term = &term * &fields[a].coeffs()[idx[b]];
                    if term.is_zero() {
                        break;
                    }
                }
                if *sign > 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            acc += f * &det;
        }
        acc
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            out.add_component(idx, f.clone()).unwrap();
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(&self.vars, self.degree);
        for (idx, g) in &self.comps {
            out.add_component(idx, g * f).unwrap();
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm {
            vars: self.vars.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Radial homotopy `K` with `dK + Kd = id` on forms of positive degree.
    /// For a closed form `ω`, `K(ω)` is a primitive: `d(Kω) = ω`.
    pub fn homotopy(&self) -> PolyForm {
        assert!(self.degree > 0, "homotopy is defined for positive degree");
        let mut out = PolyForm::zero(&self.vars, self.degree - 1);
        for (idx, f) in &self.comps {
            for (m, c) in f.terms() {
                // ∫₀¹ t^{k-1} t^{deg m} dt = 1 / (k + deg m)
                let weight = super::rat(1, (self.degree as i64) + m.degree() as i64);
                let base = Poly::monomial(&self.vars, m.clone(), c * &weight);
                for (a, &i) in idx.iter().enumerate() {
                    let mut rest = idx.clone();
                    rest.remove(a);
                    let term = &base * &Poly::var(&self.vars, i);
                    let term = if a % 2 == 0 { term } else { -term };
                    out.add_component(&rest, term).unwrap();
                }
            }
        }
        out
    }
}

pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut all);
    all.into_iter()
        .map(|p| {
            let mut q = p.clone();
            let sign = sort_with_sign(&mut q).unwrap();
            (p, sign)
        })
        .collect()
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("({c})")
                } else {
                    let wedge: Vec<String> = idx
                        .iter()
                        .map(|&i| format!("d{}", self.vars.names()[i]))
                        .collect();
                    format!("({c})*{}", wedge.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn vars() -> Vars {
        Vars::numbered("x", 4)
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &vars()).unwrap()
    }

    #[test]
    fn d_of_x1_dx2() {
        let mut w = PolyForm::zero(&vars(), 1);
        w.add_component(&[1], p("x1")).unwrap();
        let dw = w.exterior_derivative();
        let mut expect = PolyForm::zero(&vars(), 2);
        expect.add_component(&[0, 1], p("1")).unwrap();
        assert_eq!(dw, expect);
    }

    #[test]
    fn d_of_x3_dx1_dx2_has_positive_sign() {
        let mut w = PolyForm::zero(&vars(), 2);
        w.add_component(&[0, 1], p("x3")).unwrap();
        let dw = w.exterior_derivative();
        assert_eq!(dw.component(&[0, 1, 2]), p("1"));
        assert_eq!(dw.component(&[2, 0, 1]), p("1"));
        assert_eq!(dw.component(&[1, 0, 2]), p("-1"));
        assert_eq!(dw.components().count(), 1);
    }

    #[test]
    fn dd_of_function_vanishes() {
        let f = p("x1^3*x2 - 7*x3*x4^2 + x2*x4");
        assert!(PolyForm::differential(&f).exterior_derivative().is_zero());
    }

    #[test]
    fn repeated_index_component_is_dropped() {
        let mut w = PolyForm::zero(&vars(), 2);
        w.add_component(&[2, 2], p("x1")).unwrap();
        assert!(w.is_zero());
        assert!(w.add_component(&[0, 9], p("1")).is_err());
    }

    #[test]
    fn top_degree_derivative_is_zero() {
        let mut w = PolyForm::zero(&vars(), 4);
        w.add_component(&[0, 1, 2, 3], p("x1*x2*x3*x4")).unwrap();
        assert!(w.exterior_derivative().is_zero());
    }

    #[test]
    fn evaluation_is_determinant() {
        let v = vars();
        let mut w = PolyForm::zero(&v, 2);
        w.add_component(&[0, 1], p("1")).unwrap();
        let e1 = VectorField::coordinate(&v, 0);
        let e2 = VectorField::coordinate(&v, 1);
        assert_eq!(w.eval(&[e1.clone(), e2.clone()]), p("1"));
        assert_eq!(w.eval(&[e2.clone(), e1.clone()]), p("-1"));
        let x = e1.scale(&p("x3")).add(&e2);
        assert_eq!(w.eval(&[x.clone(), x]), p("0"));
    }

    #[test]
    fn homotopy_gives_primitive_of_closed_forms() {
        let mut top = PolyForm::zero(&vars(), 4);
        top.add_component(&[0, 1, 2, 3], p("x1*x2^2 - 3*x4 + 1/2")).unwrap();
        assert_eq!(top.homotopy().exterior_derivative(), top);

        let mut w = PolyForm::zero(&vars(), 2);
        w.add_component(&[0, 2], p("x2*x4 + x1^2")).unwrap();
        w.add_component(&[1, 3], p("x3")).unwrap();
        let dw = w.exterior_derivative();
        assert_eq!(dw.homotopy().exterior_derivative(), dw);
        // dK + Kd = id on a non-closed form
        let lhs = w.homotopy().exterior_derivative().add(&dw.homotopy());
        assert_eq!(lhs, w);
    }
}
