//! The 2-term L∞ algebra `Ω¹(M) --ρ*--> Γ(E)` built from the skew bracket.
//!
//! Degree-1 elements are stored as 1-forms and pushed into `Γ(E)` through
//! `ρ*` when needed; results of mixed brackets are pulled back by the exact
//! inverse of `ρ*` on its image.

use rand::Rng;

use crate::battery::Battery;
use crate::cartan::{CurvatureMode, ModelError};
use crate::courant::Courant;
use crate::exactpoly::{rat, Poly, PolyForm, Rational};
use crate::report::{not_applicable, Report, Tally};
use crate::section::Section;

/// An element of the complex: degree 0 is a section, degree 1 a 1-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Graded {
    Section(Section),
    Form(PolyForm),
}

/// Sign of the `B([e₁,e₂]_g, e₃)` term inside the braced part of `l₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraceSign {
    /// Obtained by expanding `T` term by term.
    Expanded,
    /// The opposite sign.
    Flipped,
}

/// Operations of the Lie 2-algebra on top of a [`Courant`] structure.
#[derive(Clone, Copy, Debug)]
pub struct Lie2<'m> {
    c: Courant<'m>,
}

impl<'m> Lie2<'m> {
    pub fn new(c: Courant<'m>) -> Self {
        Lie2 { c }
    }

    pub fn courant(&self) -> &Courant<'m> {
        &self.c
    }

    /// `T(e₁,e₂,e₃) = 1/6(⟨⟦e₁,e₂⟧,e₃⟩ + c.p.)`.
    pub fn t_form(&self, e1: &Section, e2: &Section, e3: &Section) -> Poly {
        let c = &self.c;
        let s = &(&c.pairing(&c.skew_bracket(e1, e2), e3) + &c.pairing(&c.skew_bracket(e2, e3), e1))
            + &c.pairing(&c.skew_bracket(e3, e1), e2);
        s.scale(&rat(1, 6))
    }

    /// `⟦e₁,⟦e₂,e₃⟧⟧ + c.p.`
    pub fn script_jacobiator(&self, e1: &Section, e2: &Section, e3: &Section) -> Section {
        let c = &self.c;
        &(&c.skew_bracket(e1, &c.skew_bracket(e2, e3)) + &c.skew_bracket(e2, &c.skew_bracket(e3, e1)))
            + &c.skew_bracket(e3, &c.skew_bracket(e1, e2))
    }

    /// `J − ∂T`.
    pub fn script_jacobiator_via_t(&self, e1: &Section, e2: &Section, e3: &Section) -> Section {
        &self.c.jacobiator(e1, e2, e3) - &self.c.d_operator(&self.t_form(e1, e2, e3))
    }

    /// `ρ*l₃(e₁,e₂,e₃)`, computed as `J − ∂T`.
    pub fn l3_section(&self, e1: &Section, e2: &Section, e3: &Section) -> Section {
        self.script_jacobiator_via_t(e1, e2, e3)
    }

    /// `l₃(e₁,e₂,e₃)` as a 1-form.
    pub fn l3(&self, e1: &Section, e2: &Section, e3: &Section) -> Result<PolyForm, ModelError> {
        self.c.model().rho_star_pullback(&self.l3_section(e1, e2, e3))
    }

    /// The braced scalar inside the explicit `l₃` formula, before `c.p.`
    pub fn l3_brace(&self, e1: &Section, e2: &Section, e3: &Section, sign: BraceSign) -> Poly {
        let m = self.c.model();
        let (r1, r2, r3) = (m.anchor(e1), m.anchor(e2), m.anchor(e3));
        let half = rat(1, 2);
        let mut a = &m.pairing(&m.nabla(&r1, e2), e3) - &m.pairing(&m.nabla(&r2, e1), e3);
        a += m.pairing(&m.nabla(&r3, e1), e2).scale(&half);
        a -= m.pairing(&m.nabla(&r3, e2), e1).scale(&half);
        let lie = m.pairing(&m.lie_bracket(e1, e2), e3);
        let mut k = match sign {
            BraceSign::Expanded => -lie,
            BraceSign::Flipped => lie,
        };
        k -= m.pairing(&m.kappa_on_sections(e1, e2), e3);
        k += m.pairing(e2, &m.kappa_on_sections(e1, e3));
        k -= m.pairing(e1, &m.kappa_on_sections(e2, e3));
        (&a + &k).scale(&rat(1, 6))
    }

    /// Explicit `l₃` (as a section): closed-form Jacobiator minus `∂` of the
    /// braced term, all summed cyclically.
    pub fn l3_explicit(&self, e1: &Section, e2: &Section, e3: &Section, sign: BraceSign) -> Section {
        let brace = self.brace_cyclic(e1, e2, e3, sign);
        &self.c.jacobiator_formula(e1, e2, e3) - &self.c.d_operator(&brace)
    }

    fn brace_cyclic(&self, e1: &Section, e2: &Section, e3: &Section, sign: BraceSign) -> Poly {
        &(&self.l3_brace(e1, e2, e3, sign) + &self.l3_brace(e2, e3, e1, sign)) + &self.l3_brace(e3, e1, e2, sign)
    }

    /// Expanded degree-0 `l₂`:
    /// `∇-terms − [e₁,e₂]_g − κ(e₁,e₂) + kd(e₂,e₁) − kd(e₁,e₂) + ½B(∇e₁,e₂) − ½B(∇e₂,e₁)`.
    pub fn l2_expanded(&self, e1: &Section, e2: &Section) -> Section {
        let c = &self.c;
        let m = c.model();
        let half = rat(1, 2);
        let mut out = &m.nabla(&m.anchor(e1), e2) - &m.nabla(&m.anchor(e2), e1);
        out = &out - &m.lie_bracket(e1, e2);
        out = &out - &m.kappa_on_sections(e1, e2);
        out = &out + &c.kappa_dual(e2, e1);
        out = &out - &c.kappa_dual(e1, e2);
        out = &out + &c.nabla_dual(e1, e2).scale_rat(&half);
        &out - &c.nabla_dual(e2, e1).scale_rat(&half)
    }

    /// `l₂` on graded elements; two 1-forms bracket to zero.
    pub fn l2(&self, a: &Graded, b: &Graded) -> Result<Graded, ModelError> {
        let m = self.c.model();
        Ok(match (a, b) {
            (Graded::Section(x), Graded::Section(y)) => Graded::Section(self.c.skew_bracket(x, y)),
            (Graded::Section(x), Graded::Form(f)) => {
                Graded::Form(m.rho_star_pullback(&self.c.skew_bracket(x, &m.rho_star(f)))?)
            }
            (Graded::Form(f), Graded::Section(x)) => {
                Graded::Form(m.rho_star_pullback(&self.c.skew_bracket(&m.rho_star(f), x))?)
            }
            (Graded::Form(f), Graded::Form(_)) => Graded::Form(PolyForm::zero(f.vars(), 1)),
        })
    }
}

/// Degree-1 `l₃` replacement used by [`lie2_identities_with`]; returns `ρ*l₃`.
pub type TernaryMap<'a> = dyn Fn(&Section, &Section, &Section) -> Section + 'a;

pub fn lie2_identities(l: &Lie2<'_>, b: &Battery) -> Report {
    lie2_identities_with(l, b, &|x, y, z| l.l3_section(x, y, z))
}

/// Skew bracket, `T`, `𝒥`, explicit `l₃` and the L∞ identities (L1)–(L4),
/// with `l₃` supplied by the caller so corrupted versions can be tested.
pub fn lie2_identities_with(l: &Lie2<'_>, b: &Battery, l3: &TernaryMap<'_>) -> Report {
    let c = l.courant();
    let m = c.model();
    let secs: Vec<&Section> = b.sections.iter().map(|s| &s.section).collect();
    let n = secs.len();
    let tuple = |idx: &[usize]| {
        let v: Vec<&str> = idx.iter().map(|&i| b.label(i)).collect();
        format!("({})", v.join(", "))
    };
    let mut r = Report::new();

    let mut forms = Tally::new("skew_bracket_forms", "1/2(e1 o e2 - e2 o e1) = e1 o e2 - 1/2 d<e1,e2>");
    let mut expanded = Tally::new(
        "l2_expanded_formula",
        "[[e1,e2]] = nabla-terms - [e1,e2] - k(e1,e2) + B(e2,k(e1,.)) - B(e1,k(e2,.)) + 1/2 B(De1,e2) - 1/2 B(De2,e1)",
    );
    for i in 0..n {
        for j in (i..n).step_by(3) {
            let a = c.skew_bracket(secs[i], secs[j]);
            let v = c.skew_bracket_via_d(secs[i], secs[j]);
            forms.record(a == v, || format!("{}: {} vs {}", tuple(&[i, j]), m.show(&a), m.show(&v)));
            let e = l.l2_expanded(secs[i], secs[j]);
            expanded.record(a == e, || format!("{}: {} vs {}", tuple(&[i, j]), m.show(&a), m.show(&e)));
        }
    }
    r.push(forms.finish());
    r.push(expanded.finish());

    let mut t_anti = Tally::new("t_antisymmetry", "T is totally antisymmetric");
    let mut routes = Tally::new("script_jacobiator_routes", "[[e1,[[e2,e3]]]] + c.p. = J(e1,e2,e3) - d T(e1,e2,e3)");
    let mut t_exp = Tally::new("t_expansion", "brace(e1,e2,e3) + c.p. = T(e1,e2,e3), brace with -B([e1,e2],e3)");
    let mut t_exp_flip = Tally::new("t_expansion_flipped_sign", "same with +B([e1,e2],e3) as printed").advisory();
    let jf_applicable = m.mode() == CurvatureMode::Gauge;
    let mut explicit = Tally::new("l3_explicit", "explicit l3 (closed-form J - d(brace + c.p.)) = J - d T");
    let mut explicit_flip = Tally::new("l3_explicit_flipped_sign", "explicit l3 with +B([e1,e2],e3) = J - d T").advisory();
    for t in &b.triples {
        let [i, j, k] = *t;
        let (e1, e2, e3) = (secs[i], secs[j], secs[k]);
        let tv = l.t_form(e1, e2, e3);
        let t21 = l.t_form(e2, e1, e3);
        let t13 = l.t_form(e1, e3, e2);
        t_anti.record((&tv + &t21).is_zero() && (&tv + &t13).is_zero(), || {
            format!("{}: T = {tv}, T(e2,e1,e3) = {t21}, T(e1,e3,e2) = {t13}", tuple(t))
        });
        let direct = l.script_jacobiator(e1, e2, e3);
        let via = l.script_jacobiator_via_t(e1, e2, e3);
        routes.record(direct == via, || format!("{}: direct {} / J - dT {}", tuple(t), m.show(&direct), m.show(&via)));
        let brace = l.brace_cyclic(e1, e2, e3, BraceSign::Expanded);
        t_exp.record(brace == tv, || format!("{}: brace {brace}, T {tv}", tuple(t)));
        let brace_f = l.brace_cyclic(e1, e2, e3, BraceSign::Flipped);
        t_exp_flip.record(brace_f == tv, || format!("{}: brace {brace_f}, T {tv}", tuple(t)));
        if jf_applicable {
            let x = l.l3_explicit(e1, e2, e3, BraceSign::Expanded);
            explicit.record(x == via, || format!("{}: explicit {} / J - dT {}", tuple(t), m.show(&x), m.show(&via)));
            let xf = l.l3_explicit(e1, e2, e3, BraceSign::Flipped);
            explicit_flip.record(xf == via, || format!("{}: explicit {} / J - dT {}", tuple(t), m.show(&xf), m.show(&via)));
        }
    }
    r.push(t_anti.finish());
    r.push(routes.finish());
    r.push(t_exp.finish());
    r.push(t_exp_flip.finish());
    if jf_applicable {
        r.push(explicit.finish());
        r.push(explicit_flip.finish());
    } else {
        r.push(not_applicable("l3_explicit", "explicit l3 = J - d T", "synthetic curvature"));
    }

    // 1-forms used as degree-1 arguments: ρ*-pullbacks of p⊥-valued sections.
    let forms1: Vec<PolyForm> = b
        .p_perp_valued
        .iter()
        .take(12)
        .map(|s| m.rho_star_pullback(&s.section).expect("p-perp sections lie in the image of rho*"))
        .collect();
    let mut rng = b.rng(8);

    let mut l1 = Tally::new("L1_chain_map", "rho*(l2(e, a)) = [[e, rho* a]]");
    let mut l2a = Tally::new("L2_antisymmetry", "l2(e1,e2) = -l2(e2,e1) and l2(rho* a, b) = l2(a, rho* b)");
    for (t, f) in forms1.iter().enumerate() {
        let i = rng.gen_range(0..n);
        let e = Graded::Section(secs[i].clone());
        let fa = Graded::Form(f.clone());
        match l.l2(&e, &fa) {
            Ok(Graded::Form(g)) => {
                let lhs = m.rho_star(&g);
                let rhs = c.skew_bracket(secs[i], &m.rho_star(f));
                l1.record(lhs == rhs, || format!("e = {}, a = {f}: residual {}", b.label(i), m.show(&(&lhs - &rhs))));
            }
            Ok(Graded::Section(_)) => l1.record(false, || "mixed bracket landed in degree 0".into()),
            Err(err) => l1.record(false, || format!("e = {}, a = {f}: {err}", b.label(i))),
        }
        let g = &forms1[(t + 1) % forms1.len()];
        let left = l.l2(&Graded::Section(m.rho_star(f)), &Graded::Form(g.clone()));
        let right = l.l2(&Graded::Form(f.clone()), &Graded::Section(m.rho_star(g)));
        l2a.record(left.is_ok() && left == right, || format!("a = {f}, b = {g}: {left:?} vs {right:?}"));
    }
    for _ in 0..n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let a = c.skew_bracket(secs[i], secs[j]);
        let bb = c.skew_bracket(secs[j], secs[i]);
        l2a.record((&a + &bb).is_zero(), || format!("{}: sum {}", tuple(&[i, j]), m.show(&(&a + &bb))));
    }
    r.push(l1.finish());
    r.push(l2a.finish());

    let mut l3d0 = Tally::new("L3_degree0", "l2(e1,l2(e2,e3)) + c.p. = rho* l3(e1,e2,e3)");
    for t in &b.triples {
        let [i, j, k] = *t;
        let lhs = l.script_jacobiator(secs[i], secs[j], secs[k]);
        let rhs = l3(secs[i], secs[j], secs[k]);
        let image = m.rho_star_pullback(&rhs).is_ok();
        l3d0.record(image && lhs == rhs, || {
            format!("{}: lhs {} / rho* l3 {}", tuple(t), m.show(&lhs), m.show(&rhs))
        });
    }
    r.push(l3d0.finish());

    let mut l3d1 = Tally::new("L3_degree1", "l2(e1,l2(e2,a)) + l2(e2,l2(a,e1)) + l2(a,l2(e1,e2)) = l3(e1,e2,rho* a)");
    for f in &forms1 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (e1, e2) = (Graded::Section(secs[i].clone()), Graded::Section(secs[j].clone()));
        let a = Graded::Form(f.clone());
        let lhs = (|| -> Result<PolyForm, ModelError> {
            let t1 = l.l2(&e1, &l.l2(&e2, &a)?)?;
            let t2 = l.l2(&e2, &l.l2(&a, &e1)?)?;
            let t3 = l.l2(&a, &l.l2(&e1, &e2)?)?;
            let mut acc = PolyForm::zero(m.vars(), 1);
            for t in [t1, t2, t3] {
                if let Graded::Form(g) = t {
                    acc = acc.add(&g);
                }
            }
            Ok(acc)
        })();
        let rhs = m.rho_star_pullback(&l3(secs[i], secs[j], &m.rho_star(f)));
        let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
        l3d1.record(ok, || format!("({}, {}, {f}): lhs {lhs:?} / rhs {rhs:?}", b.label(i), b.label(j)));
    }
    r.push(l3d1.finish());

    let mut l4 = Tally::new(
        "L4_coherence",
        "sum_i (-1)^i l2(x_i, l3(..^i..)) + sum_{i<j} (-1)^{i+j} l3(l2(x_i,x_j), ..^ij..) = 0",
    );
    let table_quads: Vec<[usize; 4]> = b.quads.iter().take(40).cloned().collect();
    for q in &table_quads {
        let x = q.map(|i| secs[i]);
        let mut acc = m.zero_section();
        for i in 0..4 {
            let rest: Vec<&Section> = (0..4).filter(|&k| k != i).map(|k| x[k]).collect();
            let v = c.skew_bracket(x[i], &l3(rest[0], rest[1], rest[2]));
            acc = if i % 2 == 0 { &acc + &v } else { &acc - &v };
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let rest: Vec<&Section> = (0..4).filter(|&k| k != i && k != j).map(|k| x[k]).collect();
                let bij = c.skew_bracket(x[i], x[j]);
                let v = l3(&bij, rest[0], rest[1]);
                acc = if (i + j) % 2 == 0 { &acc + &v } else { &acc - &v };
            }
        }
        l4.record(acc.is_zero(), || format!("{}: residual {}", tuple(q), m.show(&acc)));
    }
    r.push(l4.finish());
    r
}

/// `c · l₃`, for negative controls.
pub fn scaled_l3<'a>(l: &'a Lie2<'a>, c: Rational) -> impl Fn(&Section, &Section, &Section) -> Section + 'a {
    move |x, y, z| l.l3_section(x, y, z).scale_rat(&c)
}
