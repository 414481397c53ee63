use std::fmt;

use super::{Poly, Vars};

/// Polynomial vector field `Σ cᵢ ∂ᵢ` on the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        VectorField { coeffs }
    }

    pub fn zero(vars: &Vars) -> Self {
        VectorField {
            coeffs: (0..vars.len()).map(|_| Poly::zero(vars)).collect(),
        }
    }

    /// The coordinate field `∂ᵢ`.
    pub fn coordinate(vars: &Vars, i: usize) -> Self {
        let mut v = VectorField::zero(vars);
        v.coeffs[i] = Poly::one(vars);
        v
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(f.vars());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.d(i);
            if !df.is_zero() {
                acc += c * &df;
            }
        }
        acc
    }

    /// Commutator `[X, Y]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| self.apply(y) - other.apply(x))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*d{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
