use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::exactpoly::{Poly, Rational, Vars};

/// `g`-valued polynomial map on the chart: a section of the tractor bundle
/// in the chosen trivialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section(Vec<Poly>);

impl Section {
    pub fn new(comps: Vec<Poly>) -> Self {
        Section(comps)
    }

    pub fn zero(dim: usize, vars: &Vars) -> Self {
        Section(vec![Poly::zero(vars); dim])
    }

    pub fn constant(v: &[Rational], vars: &Vars) -> Self {
        Section(v.iter().map(|c| Poly::constant(vars, c.clone())).collect())
    }

    /// `f · Xₐ`.
    pub fn basis(dim: usize, a: usize, f: Poly) -> Self {
        let vars = f.vars().clone();
        let mut s = Section::zero(dim, &vars);
        s.0[a] = f;
        s
    }

    pub fn comps(&self) -> &[Poly] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> Section {
        Section(self.0.iter().map(|c| c * f).collect())
    }

    pub fn scale_rat(&self, c: &Rational) -> Section {
        Section(self.0.iter().map(|p| p.scale(c)).collect())
    }

    /// Coefficientwise partial derivative.
    pub fn diff(&self, i: usize) -> Section {
        Section(self.0.iter().map(|c| c.d(i)).collect())
    }

    /// Constant coordinates, if every component is constant.
    pub fn as_constant(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(Poly::as_constant).collect()
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}", names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub(crate) fn accumulate(&mut self, other: &Section, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b.scale(c);
            }
        }
    }
}

impl Add<&Section> for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        Section(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Section> for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        Section(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Section {
    type Output = Section;
    fn add(self, rhs: Section) -> Section {
        &self + &rhs
    }
}

impl Sub for Section {
    type Output = Section;
    fn sub(self, rhs: Section) -> Section {
        &self - &rhs
    }
}

impl Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        Section(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Section {
    type Output = Section;
    fn neg(self) -> Section {
        -&self
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("e{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Sum of scaled sections `Σ cₖ sₖ`, skipping zero coefficients.
pub fn combine<'a>(dim: usize, vars: &Vars, terms: impl IntoIterator<Item = (&'a Rational, &'a Section)>) -> Section {
    let mut out = Section::zero(dim, vars);
    for (c, s) in terms {
        if !c.is_zero() {
            out.accumulate(s, c);
        }
    }
    out
}
