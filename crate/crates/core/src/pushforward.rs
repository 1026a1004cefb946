//! `η_*α`, `η_*β`, `η_*γ` on `M̃_{g,1}`: closed forms, and an independent
//! derivation by solving the linear system cut out by the three test families.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::families::{eta_push_m21, eta_push_marked, eta_push_mogb, ClassLabel};
use crate::invariants::GrdParams;
use crate::linalg::{solve_exact, Equation};
use crate::picard::{pullback_i, pullback_j, pullback_k, reduce_m21, DivisorClass, PicSpace, Symbol};

/// Coefficients of `aλ − Σ b_i δ_i + cψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardSolution {
    pub a: Rational,
    pub b: Vec<Rational>,
    pub c: Rational,
}

impl PushforwardSolution {
    pub fn genus(&self) -> u32 {
        self.b.len() as u32
    }

    pub fn to_class(&self) -> DivisorClass {
        let g = self.genus();
        let mut out = DivisorClass::zero(PicSpace::Mg1(g));
        out.add_term(Symbol::Lambda, self.a.clone()).expect("in basis");
        out.add_term(Symbol::Psi, self.c.clone()).expect("in basis");
        for (i, b) in self.b.iter().enumerate() {
            out.add_term(Symbol::Delta(i as u32), -b).expect("in basis");
        }
        out
    }

    pub fn from_class(class: &DivisorClass) -> Result<Self> {
        let PicSpace::Mg1(g) = class.space() else {
            return Err(Error::WrongSpace {
                expected: "M_(g,1)".into(),
                found: class.space().to_string(),
            });
        };
        Ok(PushforwardSolution {
            a: class.coeff(Symbol::Lambda),
            b: (0..g).map(|i| -class.coeff(Symbol::Delta(i))).collect(),
            c: class.coeff(Symbol::Psi),
        })
    }
}

/// The closed form for `η_*X` with the Castelnuovo number replaced by `n`.
/// Every coefficient is linear in `n`.
pub fn eta_closed_form_with_n(p: &GrdParams, label: ClassLabel, n: &Rational) -> Result<DivisorClass> {
    let min_genus = if label == ClassLabel::Beta { 2 } else { 3 };
    p.require_genus(min_genus)?;
    let (g, r, d) = (i64::from(p.g), i64::from(p.r), i64::from(p.d));
    let mut terms: Vec<(Symbol, Rational)> = Vec::with_capacity(p.g as usize + 2);
    let prefactor;
    match label {
        ClassLabel::Alpha => {
            prefactor = Rational::from(d) * n / Rational::from(6 * (g - 1) * (g - 2));
            terms.push((Symbol::Lambda, (6 * (g * d - 2 * g * g + 8 * d - 8 * g + 4)).into()));
            terms.push((Symbol::Delta(0), (2 * g * g - g * d + 3 * g - 4 * d - 2).into()));
            for i in 1..g {
                let v = 6 * (g - i) * (g * d + 2 * i * g - 2 * i * d - 2 * d);
                terms.push((Symbol::Delta(i as u32), v.into()));
            }
            terms.push((Symbol::Psi, (-6 * d * (g - 2)).into()));
        }
        ClassLabel::Beta => {
            prefactor = Rational::from(d) * n / Rational::from(2 * (g - 1));
            terms.push((Symbol::Lambda, 12.into()));
            terms.push((Symbol::Delta(0), (-1).into()));
            for i in 1..g {
                terms.push((Symbol::Delta(i as u32), (4 * (g - i) * (g - i - 1)).into()));
            }
            terms.push((Symbol::Psi, (-2 * (g - 1)).into()));
        }
        ClassLabel::Gamma => {
            prefactor = n / &Rational::from(2 * (g - 1) * (g - 2));
            let xi = p.xi()?;
            let rr = Rational::from(r * (r + 2));
            terms.push((Symbol::Lambda, Rational::from(-(g + 3)) * &xi + Rational::from(5) * &rr));
            terms.push((Symbol::Psi, (-d * (r + 1) * (g - 2)).into()));
            let d0 = (Rational::from(g + 1) * &xi - Rational::from(3) * &rr) / Rational::from(6);
            terms.push((Symbol::Delta(0), d0));
            for i in 1..g {
                let v = Rational::from(g - i) * (Rational::from(i) * &xi + Rational::from(g - i - 2) * &rr);
                terms.push((Symbol::Delta(i as u32), v));
            }
        }
    }
    DivisorClass::from_terms(PicSpace::Mg1(p.g), terms.into_iter().map(|(s, v)| (s, v * &prefactor)))
}

pub fn eta_closed_form(p: &GrdParams, label: ClassLabel) -> Result<DivisorClass> {
    eta_closed_form_with_n(p, label, &p.n()?)
}

pub fn eta_alpha(p: &GrdParams) -> Result<DivisorClass> {
    eta_closed_form(p, ClassLabel::Alpha)
}

pub fn eta_beta(p: &GrdParams) -> Result<DivisorClass> {
    eta_closed_form(p, ClassLabel::Beta)
}

pub fn eta_gamma(p: &GrdParams) -> Result<DivisorClass> {
    eta_closed_form(p, ClassLabel::Gamma)
}

/// `η_*(cα·α + cβ·β + cγ·γ + η^*D) = cα·η_*α + cβ·η_*β + cγ·η_*γ + N·D`.
pub fn push_combination(
    p: &GrdParams,
    c_alpha: &Rational,
    c_beta: &Rational,
    c_gamma: &Rational,
    pullback_part: &DivisorClass,
) -> Result<DivisorClass> {
    pullback_part.require_space(PicSpace::Mg1(p.g))?;
    let mut out = pullback_part.scale(&p.n()?);
    for (c, label) in [
        (c_alpha, ClassLabel::Alpha),
        (c_beta, ClassLabel::Beta),
        (c_gamma, ClassLabel::Gamma),
    ] {
        if !c.is_zero() {
            out = out.checked_add(&eta_closed_form(p, label)?.scale(c))?;
        }
    }
    Ok(out)
}

fn unknown_names(g: u32) -> Vec<String> {
    std::iter::once("a".to_string())
        .chain((0..g).map(|i| format!("b_{i}")))
        .chain(std::iter::once("c".to_string()))
        .collect()
}

// Basis class for each unknown, in the order of `unknown_names`.
fn unknown_classes(g: u32) -> Vec<DivisorClass> {
    let space = PicSpace::Mg1(g);
    std::iter::once(DivisorClass::from_ints(space, &[(Symbol::Lambda, 1)]))
        .chain((0..g).map(|i| DivisorClass::from_ints(space, &[(Symbol::Delta(i), -1)])))
        .chain(std::iter::once(DivisorClass::from_ints(space, &[(Symbol::Psi, 1)])))
        .collect()
}

/// The over-determined system for `(a, b_0, …, b_{g−1}, c)`: one equation per
/// `k_h` family, one per ε_i on `M̄_{0,g}`, and three on `M̃_{2,1}` in the
/// basis (λ, δ_1, ψ).
pub fn family_equations(p: &GrdParams, label: ClassLabel) -> Result<Vec<Equation>> {
    p.require_genus(5)?;
    let g = p.g;
    let basis = unknown_classes(g);
    let mut eqs = Vec::with_capacity(2 * g as usize - 1);

    for h in 1..g {
        let coeffs = basis.iter().map(|e| pullback_k(g, h, e)).collect::<Result<_>>()?;
        eqs.push(Equation {
            label: format!("k_{h}"),
            coeffs,
            rhs: eta_push_marked(p, h, label)?,
        });
    }

    let on_mogb = eta_push_mogb(g, label);
    let pulled_i = basis.iter().map(|e| pullback_i(g, e)).collect::<Result<Vec<_>>>()?;
    for sym in PicSpace::M0g(g).basis() {
        eqs.push(Equation {
            label: format!("i*{sym}"),
            coeffs: pulled_i.iter().map(|c| c.coeff(sym)).collect(),
            rhs: on_mogb.coeff(sym),
        });
    }

    let on_m21 = reduce_m21(&eta_push_m21(p, label)?)?;
    let pulled_j = basis
        .iter()
        .map(|e| pullback_j(g, e).and_then(|c| reduce_m21(&c)))
        .collect::<Result<Vec<_>>>()?;
    for sym in [Symbol::Lambda, Symbol::Delta(1), Symbol::Psi] {
        eqs.push(Equation {
            label: format!("j*{sym}"),
            coeffs: pulled_j.iter().map(|c| c.coeff(sym)).collect(),
            rhs: on_m21.coeff(sym),
        });
    }
    Ok(eqs)
}

/// Solves the family system exactly; fails if it is inconsistent or does not
/// pin down a unique class.
pub fn assemble_via_families(p: &GrdParams, label: ClassLabel) -> Result<PushforwardSolution> {
    let eqs = family_equations(p, label)?;
    let x = solve_exact(&unknown_names(p.g), &eqs)?;
    let g = p.g as usize;
    Ok(PushforwardSolution {
        a: x[0].clone(),
        b: x[1..=g].to_vec(),
        c: x[g + 1].clone(),
    })
}

/// Compares the assembled solution with the closed form.
pub fn check_assembly(p: &GrdParams, label: ClassLabel) -> Result<DivisorClass> {
    let closed = eta_closed_form(p, label)?;
    let assembled = assemble_via_families(p, label)?.to_class();
    if assembled != closed {
        return Err(Error::Mismatch(format!(
            "{p} {label}: assembled {assembled} != closed form {closed}"
        )));
    }
    Ok(closed)
}
