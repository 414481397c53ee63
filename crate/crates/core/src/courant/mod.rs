//! The pre-Courant / twisted Courant structure on the tractor bundle.
//!
//! With `kd(a, b) = B(a, κ(b,·))` and `nd(a, b) = B(∇a, b)` (both
//! `p⊥`-valued, obtained through `ρ*`), the Dorfman bracket is
//!
//! ```text
//! e₁∘e₂ = ∇_{ρe₁}e₂ − ∇_{ρe₂}e₁ − [e₁,e₂]_g + nd(e₁,e₂) − κ(e₁,e₂) + kd(e₂,e₁) − kd(e₁,e₂)
//! ```

pub mod checks;

pub use checks::*;

use crate::cartan::CartanModel;
use crate::exactpoly::{rat, Poly};
use crate::section::Section;

/// Which bracket to build. Only `Full` is the tractor Dorfman bracket; the
/// others exist for the skew-curvature construction and negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketVariant {
    Full,
    /// `∇_{ρe₁}e₂ − ∇_{ρe₂}e₁ + B(∇e₁,e₂) − [e₁,e₂]_g − κ(e₁,e₂)`.
    Alternative,
    /// `Full` with the `B(∇e₁,e₂)` term dropped; violates the axioms.
    DropConnectionDual,
}

/// Bracket, pairing and anchor on `Γ(E)` for a given model.
#[derive(Clone, Copy, Debug)]
pub struct Courant<'m> {
    model: &'m CartanModel,
    variant: BracketVariant,
}

impl<'m> Courant<'m> {
    pub fn new(model: &'m CartanModel) -> Self {
        Courant {
            model,
            variant: BracketVariant::Full,
        }
    }

    pub fn with_variant(model: &'m CartanModel, variant: BracketVariant) -> Self {
        Courant { model, variant }
    }

    pub fn model(&self) -> &'m CartanModel {
        self.model
    }

    pub fn variant(&self) -> BracketVariant {
        self.variant
    }

    pub fn pairing(&self, e1: &Section, e2: &Section) -> Poly {
        self.model.pairing(e1, e2)
    }

    /// `B(e₁, κ(e₂,·))`: the section dual to `e₃ ↦ B(e₁, κ(e₂, e₃))`.
    pub fn kappa_dual(&self, e1: &Section, e2: &Section) -> Section {
        let m = self.model;
        let alpha: Vec<Poly> = (0..m.chart_dim())
            .map(|j| m.pairing(e1, &m.kappa_partial(e2, j)))
            .collect();
        m.rho_star_coeffs(&alpha)
    }

    /// `B(∇e₁, e₂)`: the section dual to `e₃ ↦ B(∇_{ρe₃}e₁, e₂)`.
    pub fn nabla_dual(&self, e1: &Section, e2: &Section) -> Section {
        let m = self.model;
        let alpha: Vec<Poly> = (0..m.chart_dim())
            .map(|j| m.pairing(&m.nabla_coord(j, e1), e2))
            .collect();
        m.rho_star_coeffs(&alpha)
    }

    /// `B(a, κ(b, κ(c,·)))`: dual to `e ↦ B(a, κ(b, κ(c, e)))`.
    pub fn nested_kappa_dual(&self, a: &Section, b: &Section, c: &Section) -> Section {
        let m = self.model;
        let alpha: Vec<Poly> = (0..m.chart_dim())
            .map(|j| m.pairing(a, &m.kappa_on_sections(b, &m.kappa_partial(c, j))))
            .collect();
        m.rho_star_coeffs(&alpha)
    }

    /// `β(e₁,e₂) = −[e₁,e₂]_g − κ(e₁,e₂) + kd(e₂,e₁) − kd(e₁,e₂)`.
    pub fn beta(&self, e1: &Section, e2: &Section) -> Section {
        let m = self.model;
        let mut out = -m.lie_bracket(e1, e2);
        out = &out - &m.kappa_on_sections(e1, e2);
        out = &out + &self.kappa_dual(e2, e1);
        &out - &self.kappa_dual(e1, e2)
    }

    /// The Dorfman bracket `e₁∘e₂` for the selected variant.
    pub fn dorfman(&self, e1: &Section, e2: &Section) -> Section {
        let m = self.model;
        let r1 = m.anchor(e1);
        let r2 = m.anchor(e2);
        let mut out = &m.nabla(&r1, e2) - &m.nabla(&r2, e1);
        out = &out - &m.lie_bracket(e1, e2);
        if self.variant != BracketVariant::DropConnectionDual {
            out = &out + &self.nabla_dual(e1, e2);
        }
        out = &out - &m.kappa_on_sections(e1, e2);
        if self.variant != BracketVariant::Alternative {
            out = &out + &self.kappa_dual(e2, e1);
            out = &out - &self.kappa_dual(e1, e2);
        }
        out
    }

    /// Same bracket assembled from a metric connection and `β`:
    /// `∇_{ρe₁}e₂ − ∇_{ρe₂}e₁ + B(∇e₁,e₂) + β(e₁,e₂)`.
    pub fn dorfman_from_beta(&self, e1: &Section, e2: &Section) -> Section {
        let m = self.model;
        let mut out = &m.nabla(&m.anchor(e1), e2) - &m.nabla(&m.anchor(e2), e1);
        out = &out + &self.nabla_dual(e1, e2);
        &out + &self.beta(e1, e2)
    }

    /// Same bracket assembled from the Lie algebroid bracket:
    /// `⟨e₁,e₂⟩ + kd(e₂,e₁) − kd(e₁,e₂) + B(∇e₁,e₂)`.
    pub fn dorfman_from_atiyah(&self, e1: &Section, e2: &Section) -> Section {
        let mut out = self.model.atiyah_bracket(e1, e2);
        out = &out + &self.kappa_dual(e2, e1);
        out = &out - &self.kappa_dual(e1, e2);
        &out + &self.nabla_dual(e1, e2)
    }

    /// `∂f`, defined by `B(∂f, e) = ρ(e)f`.
    pub fn d_operator(&self, f: &Poly) -> Section {
        self.model.d_operator(f)
    }

    /// `J(e₁,e₂,e₃) = e₁∘(e₂∘e₃) − (e₁∘e₂)∘e₃ − e₂∘(e₁∘e₃)`.
    pub fn jacobiator(&self, e1: &Section, e2: &Section, e3: &Section) -> Section {
        let a = self.dorfman(e1, &self.dorfman(e2, e3));
        let b = self.dorfman(&self.dorfman(e1, e2), e3);
        let c = self.dorfman(e2, &self.dorfman(e1, e3));
        &(&a - &b) - &c
    }

    /// Jacobiator from precomputed inner brackets `e₂∘e₃`, `e₁∘e₂`, `e₁∘e₃`.
    pub fn jacobiator_cached(
        &self,
        e1: &Section,
        e2: &Section,
        e3: &Section,
        e23: &Section,
        e12: &Section,
        e13: &Section,
    ) -> Section {
        let a = self.dorfman(e1, e23);
        let b = self.dorfman(e12, e3);
        let c = self.dorfman(e2, e13);
        &(&a - &b) - &c
    }

    /// Closed form of the Jacobiator in terms of the curvature:
    ///
    /// ```text
    /// −[e₁, kd(e₃,e₂) − kd(e₂,e₃)]_g + B(e₃,κ(e₂,κ(e₁,·))) − B(e₂,κ(e₃,κ(e₁,·))) + c.p.
    /// ```
    pub fn jacobiator_formula(&self, e1: &Section, e2: &Section, e3: &Section) -> Section {
        let m = self.model;
        let mut out = m.zero_section();
        for (a, b, c) in [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)] {
            let inner = &self.kappa_dual(c, b) - &self.kappa_dual(b, c);
            out = &out - &m.lie_bracket(a, &inner);
            out = &out + &self.nested_kappa_dual(c, b, a);
            out = &out - &self.nested_kappa_dual(b, c, a);
        }
        out
    }

    /// `𝒫(e₁,e₂,e₃,e₄) = ⟨J(e₁,e₂,e₃), e₄⟩`.
    pub fn pontryagin(&self, e: [&Section; 4]) -> Poly {
        self.pairing(&self.jacobiator(e[0], e[1], e[2]), e[3])
    }

    /// `½(e₁∘e₂ − e₂∘e₁)`.
    pub fn skew_bracket(&self, e1: &Section, e2: &Section) -> Section {
        (&self.dorfman(e1, e2) - &self.dorfman(e2, e1)).scale_rat(&rat(1, 2))
    }

    /// `e₁∘e₂ − ½∂⟨e₁,e₂⟩`.
    pub fn skew_bracket_via_d(&self, e1: &Section, e2: &Section) -> Section {
        let half = self.d_operator(&self.pairing(e1, e2)).scale_rat(&rat(1, 2));
        &self.dorfman(e1, e2) - &half
    }
}

/// Memo of `eᵢ∘eⱼ` over a fixed family of sections.
pub struct PairTable {
    n: usize,
    values: Vec<Section>,
}

impl PairTable {
    pub fn new(courant: &Courant<'_>, sections: &[&Section]) -> Self {
        let n = sections.len();
        let mut values = Vec::with_capacity(n * n);
        for a in sections {
            for b in sections {
                values.push(courant.dorfman(a, b));
            }
        }
        PairTable { n, values }
    }

    pub fn get(&self, i: usize, j: usize) -> &Section {
        &self.values[i * self.n + j]
    }
}
