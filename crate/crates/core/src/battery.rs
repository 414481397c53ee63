//! Deterministic families of test sections.
//!
//! Every multilinear identity is checked on: each constant basis section
//! `Xₐ`, its multiples by `x₁` and `x₁x₂`, and seeded pseudo-random
//! sections of degree at most 2. Pseudo-random data comes from ChaCha8
//! seeded with the recorded seed, so witnesses reproduce bit-exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::CartanModel;
use crate::exactpoly::{Monomial, Poly, Rational, Vars};
use crate::linalg::Vector;
use crate::section::Section;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BatteryConfig {
    pub seed: u64,
    /// Pseudo-random sections appended to the basis family.
    pub random_sections: usize,
    /// Triples drawn from the whole family, on top of all basis triples.
    pub sampled_triples: usize,
    /// 4-tuples drawn from the whole family.
    pub sampled_quads: usize,
    /// Pseudo-random `p`-valued and `p⊥`-valued sections.
    pub special_sections: usize,
    /// Cap on 5-tuples used for `𝒟𝒫`.
    pub max_five_tuples: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            seed: DEFAULT_SEED,
            random_sections: 6,
            sampled_triples: 150,
            sampled_quads: 80,
            special_sections: 50,
            max_five_tuples: 80,
        }
    }
}

impl BatteryConfig {
    pub fn with_seed(seed: u64) -> Self {
        BatteryConfig {
            seed,
            ..Default::default()
        }
    }

    /// Smaller sampling for quick runs; same construction.
    pub fn quick(seed: u64) -> Self {
        BatteryConfig {
            seed,
            random_sections: 3,
            sampled_triples: 40,
            sampled_quads: 25,
            special_sections: 50,
            max_five_tuples: 25,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: String,
    pub section: Section,
}

#[derive(Clone, Debug)]
pub struct Battery {
    pub config: BatteryConfig,
    pub sections: Vec<Labeled>,
    /// Indices of the constant basis sections in `sections`.
    pub basis: Vec<usize>,
    pub triples: Vec<[usize; 3]>,
    pub quads: Vec<[usize; 4]>,
    pub five_tuples: Vec<[usize; 5]>,
    pub p_valued: Vec<Labeled>,
    pub p_perp_valued: Vec<Labeled>,
    /// Multipliers for function-linearity checks.
    pub functions: Vec<Poly>,
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars, max_terms: usize) -> Poly {
    let n = vars.len();
    let terms = rng.gen_range(1..=max_terms);
    let mut p = Poly::zero(vars);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let deg = rng.gen_range(0..=2u32);
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        let den = *[1i64, 1, 1, 2].choose(rng).unwrap();
        p += Poly::monomial(vars, Monomial::from_exponents(exps), Rational::new(num.into(), den.into()));
    }
    if p.is_zero() {
        Poly::one(vars)
    } else {
        p
    }
}

fn random_in_span(rng: &mut ChaCha8Rng, basis: &[Vector], vars: &Vars, dim: usize) -> Section {
    let mut s = Section::zero(dim, vars);
    if basis.is_empty() {
        return s;
    }
    let k = rng.gen_range(1..=2.min(basis.len()));
    for _ in 0..k {
        let b = &basis[rng.gen_range(0..basis.len())];
        let f = random_poly(rng, vars, 2);
        s = &s + &Section::constant(b, vars).scale(&f);
    }
    s
}

fn combinations5(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out
}

fn combinations4(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

impl Battery {
    pub fn new(model: &CartanModel, config: BatteryConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let vars = model.vars().clone();
        let d = model.dim();
        let n = model.chart_dim();
        let names = model.names();

        let x1 = Poly::var(&vars, 0);
        let x12 = if n >= 2 { &x1 * &Poly::var(&vars, 1) } else { x1.pow(2) };
        let mut sections = Vec::new();
        let mut basis = Vec::new();
        for (mult, tag) in [(Poly::one(&vars), ""), (x1.clone(), "x1*"), (x12.clone(), "x1*x2*")] {
            for (a, name) in names.iter().enumerate() {
                if tag.is_empty() {
                    basis.push(sections.len());
                }
                sections.push(Labeled {
                    label: format!("{tag}{name}"),
                    section: Section::basis(d, a, mult.clone()),
                });
            }
        }
        let full: Vec<Vector> = (0..d).map(|a| model.algebra().basis_vector(a)).collect();
        for r in 0..config.random_sections {
            sections.push(Labeled {
                label: format!("random#{r}"),
                section: random_in_span(&mut rng, &full, &vars, d),
            });
        }

        // Constant transversal sections, reused when they are basis sections.
        let mut transversal = Vec::new();
        for i in 0..n {
            let t = model.transversal_section(i);
            match sections.iter().position(|l| l.section == t) {
                Some(k) => transversal.push(k),
                None => {
                    transversal.push(sections.len());
                    sections.push(Labeled {
                        label: format!("T{}", i + 1),
                        section: t,
                    });
                }
            }
        }

        let total = sections.len();
        let mut triples = Vec::new();
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    triples.push([a, b, c]);
                }
            }
        }
        for _ in 0..config.sampled_triples {
            triples.push([
                rng.gen_range(0..total),
                rng.gen_range(0..total),
                rng.gen_range(0..total),
            ]);
        }
        let mut quads = Vec::new();
        for _ in 0..config.sampled_quads {
            quads.push([
                rng.gen_range(0..total),
                rng.gen_range(0..total),
                rng.gen_range(0..total),
                rng.gen_range(0..total),
            ]);
        }
        let mut five_tuples: Vec<[usize; 5]> = combinations5(d)
            .into_iter()
            .map(|t| t.map(|i| basis[i]))
            .collect();
        if five_tuples.len() > config.max_five_tuples {
            five_tuples.shuffle(&mut rng);
            five_tuples.truncate(config.max_five_tuples);
            five_tuples.sort();
        }
        // Slot order is shuffled so that transversal sections also land in
        // the last slot; the identity is alternating, so order is immaterial.
        for t in &mut five_tuples {
            t.shuffle(&mut rng);
        }
        // Four transversal sections plus one `x₁·Xₐ`, in every slot and with
        // every cyclic order of the rest: the only shape in which each term
        // of the 𝒟𝒫 expansion can be nonzero.
        if n >= 4 {
            for sub in combinations4(n).into_iter().take(2) {
                for a in 0..d {
                    for slot in 0..5 {
                        let mut t = [0; 5];
                        let mut rest = (0..4).map(|k| transversal[sub[(k + slot) % 4]]);
                        for (pos, entry) in t.iter_mut().enumerate() {
                            *entry = if pos == slot { d + a } else { rest.next().unwrap() };
                        }
                        five_tuples.push(t);
                    }
                }
            }
        }
        for _ in 0..config.random_sections.min(4) {
            let mut t = [0; 5];
            for slot in &mut t {
                *slot = rng.gen_range(0..total);
            }
            five_tuples.push(t);
        }

        let p_basis = model.subalgebra().span().basis().to_vec();
        let p_valued = (0..config.special_sections)
            .map(|r| Labeled {
                label: format!("p-random#{r}"),
                section: random_in_span(&mut rng, &p_basis, &vars, d),
            })
            .collect();
        let perp_basis = model.p_perp().basis().to_vec();
        let p_perp_valued = (0..config.special_sections)
            .map(|r| Labeled {
                label: format!("pperp-random#{r}"),
                section: random_in_span(&mut rng, &perp_basis, &vars, d),
            })
            .collect();
        let functions = vec![x1, x12, random_poly(&mut rng, &vars, 3)];

        Battery {
            config,
            sections,
            basis,
            triples,
            quads,
            five_tuples,
            p_valued,
            p_perp_valued,
            functions,
        }
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn section(&self, i: usize) -> &Section {
        &self.sections[i].section
    }

    pub fn label(&self, i: usize) -> &str {
        &self.sections[i].label
    }

    /// Deterministic pseudo-random index stream, independent of the
    /// battery's own draws.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(stream);
        rng
    }
}
