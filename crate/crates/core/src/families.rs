//! Push-forwards of α, β, γ over the three test families: rational spines
//! with elliptic tails (`i`), genus-2 curves with a fixed tail (`j`), and a
//! marked point moving on one side of a compact-type curve (`k_h`).

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::invariants::GrdParams;
use crate::picard::{reduce_m21, DivisorClass, PicSpace, Symbol};
use crate::schubert::{
    combo_zeta_integral, combo_zeta_integral_oracle, pieri_multiply, special_power_integral,
    zeta_power_integral_oracle, BoxPartition, GrassShape, SchubertCombo,
};

/// The three tautological divisor classes on the space of linear series:
/// α = π_*(c_1(L)²), β = π_*(c_1(L)·c_1(ω)), γ = c_1(V).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Alpha,
    Beta,
    Gamma,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 3] = [ClassLabel::Alpha, ClassLabel::Beta, ClassLabel::Gamma];
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassLabel::Alpha => "alpha",
            ClassLabel::Beta => "beta",
            ClassLabel::Gamma => "gamma",
        })
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha" | "α" => Ok(ClassLabel::Alpha),
            "beta" | "β" => Ok(ClassLabel::Beta),
            "gamma" | "γ" => Ok(ClassLabel::Gamma),
            other => Err(Error::Parse(format!("unknown class {other:?}"))),
        }
    }
}

/// Degree-1 class `c_ω·ω + c_σ·σ + c_δ·δ + π^*D` on the universal genus-2
/// curve `π: C → M̃_{2,1}`; ω is the relative dualizing class, σ the marked
/// section, δ the divisor of elliptic-elliptic fibres separating the marked
/// point from the node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivCurveClass {
    pub c_omega: Rational,
    pub c_sigma: Rational,
    pub c_delta: Rational,
    pub base_part: DivisorClass,
}

impl UnivCurveClass {
    pub fn new(c_omega: Rational, c_sigma: Rational, c_delta: Rational, base_part: DivisorClass) -> Result<Self> {
        base_part.require_space(PicSpace::M21)?;
        Ok(UnivCurveClass {
            c_omega,
            c_sigma,
            c_delta,
            base_part,
        })
    }

    pub fn zero() -> Self {
        UnivCurveClass {
            c_omega: Rational::zero(),
            c_sigma: Rational::zero(),
            c_delta: Rational::zero(),
            base_part: DivisorClass::zero(PicSpace::M21),
        }
    }

    /// `π^*D`.
    pub fn pulled_back(base_part: DivisorClass) -> Result<Self> {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero(), base_part)
    }

    /// `c_1(L) = ω − 2σ + δ − 3π^*ψ` on a type-a_2 sheet.
    pub fn line_bundle_a2() -> Self {
        UnivCurveClass {
            c_omega: 1.into(),
            c_sigma: (-2).into(),
            c_delta: 1.into(),
            base_part: DivisorClass::from_ints(PicSpace::M21, &[(Symbol::Psi, -3)]),
        }
    }

    /// Relative dualizing class of the attached family restricted to the
    /// genus-2 side: `ω + σ`.
    pub fn dualizing_attached() -> Self {
        UnivCurveClass {
            c_omega: 1.into(),
            c_sigma: 1.into(),
            c_delta: 0.into(),
            base_part: DivisorClass::zero(PicSpace::M21),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UnivCurveClass {
            c_omega: &self.c_omega * c,
            c_sigma: &self.c_sigma * c,
            c_delta: &self.c_delta * c,
            base_part: self.base_part.scale(c),
        }
    }

    /// Relative degree `π_*` of the fibre part: `π_*ω = 2`, `π_*σ = 1`, `π_*δ = 0`.
    fn fibre_degree(&self) -> Rational {
        Rational::from(2) * &self.c_omega + &self.c_sigma
    }
}

impl Add<&UnivCurveClass> for &UnivCurveClass {
    type Output = UnivCurveClass;
    fn add(self, rhs: &UnivCurveClass) -> UnivCurveClass {
        UnivCurveClass {
            c_omega: &self.c_omega + &rhs.c_omega,
            c_sigma: &self.c_sigma + &rhs.c_sigma,
            c_delta: &self.c_delta + &rhs.c_delta,
            base_part: &self.base_part + &rhs.base_part,
        }
    }
}

impl Mul<&UnivCurveClass> for &Rational {
    type Output = UnivCurveClass;
    fn mul(self, rhs: &UnivCurveClass) -> UnivCurveClass {
        rhs.scale(self)
    }
}

fn m21(terms: &[(Symbol, i64)]) -> DivisorClass {
    DivisorClass::from_ints(PicSpace::M21, terms)
}

/// `π_*(x · y)` on `M̃_{2,1}`, bilinear in `x` and `y`.
pub fn m21_push_product(x: &UnivCurveClass, y: &UnivCurveClass) -> DivisorClass {
    use Symbol::*;
    let omega2 = m21(&[(Lambda, 12), (Delta(0), -1), (Delta(1), -1)]);
    let sigma2 = m21(&[(Psi, -1)]);
    let delta2 = m21(&[(Delta(1), -1)]);
    let omega_delta = m21(&[(Delta(1), 1)]);
    let sigma_omega = m21(&[(Psi, 1)]);
    // π_*(δ·σ) = 0

    let mut out = omega2.scale(&(&x.c_omega * &y.c_omega));
    out = &out + &sigma2.scale(&(&x.c_sigma * &y.c_sigma));
    out = &out + &delta2.scale(&(&x.c_delta * &y.c_delta));
    out = &out + &omega_delta.scale(&(&x.c_omega * &y.c_delta + &x.c_delta * &y.c_omega));
    out = &out + &sigma_omega.scale(&(&x.c_sigma * &y.c_omega + &x.c_omega * &y.c_sigma));
    // Projection formula; π^*D · π^*D' pushes forward to zero.
    out = &out + &y.base_part.scale(&x.fibre_degree());
    &out + &x.base_part.scale(&y.fibre_degree())
}

/// Weierstrass divisor `3ψ − λ − δ_1` on `M̃_{2,1}`.
pub fn weierstrass_class() -> DivisorClass {
    use Symbol::*;
    m21(&[(Psi, 3), (Lambda, -1), (Delta(1), -1)])
}

/// `λ + δ_1 − 4ψ`.
fn sheet_class() -> DivisorClass {
    use Symbol::*;
    m21(&[(Lambda, 1), (Delta(1), 1), (Psi, -4)])
}

fn n_over_g1(p: &GrdParams) -> Result<Rational> {
    p.require_genus(2)?;
    Ok(p.n()? / Rational::from(i64::from(p.g) - 1))
}

/// Numbers of limit linear series with vanishing sequence of type a_1 and
/// a_2 at the attaching point: `(2g−2−d)N/(2(g−1))` and `dN/(2(g−1))`.
pub fn sheet_counts(p: &GrdParams) -> Result<(Rational, Rational)> {
    let half = n_over_g1(p)? * Rational::ratio(1, 2);
    let (g, d) = (i64::from(p.g), i64::from(p.d));
    Ok((&half * Rational::from(2 * g - 2 - d), half * Rational::from(d)))
}

/// Which route evaluates the Schubert integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralRoute {
    /// Closed factorial formula for `∫ ζ^k σ_b`.
    Formula,
    /// Iterated Pieri multiplication.
    Pieri,
}

fn weierstrass_guard(p: &GrdParams) -> Result<GrassShape> {
    p.require_genus(3)?;
    if p.d < p.r + 3 {
        return Err(Error::precondition(format!(
            "{p}: Weierstrass Schubert indices need d - r >= 3"
        )));
    }
    GrassShape::new(p.r, p.d)
}

/// `−2(g−2) ∫_X σ_{3,…,3,2,1} · ζ^{g−3}` on `X = G(r, P^d)`.
pub fn weierstrass_alpha_schubert(p: &GrdParams, route: IntegralRoute) -> Result<Rational> {
    let shape = weierstrass_guard(p)?;
    let mut parts = vec![1, 2];
    parts.extend(std::iter::repeat_n(3, p.r as usize - 1));
    let b = BoxPartition::new(shape, parts)?;
    let k = p.g - 3;
    let integral = match route {
        IntegralRoute::Formula => special_power_integral(shape, k, &b)?,
        IntegralRoute::Pieri => zeta_power_integral_oracle(shape, k, &b)?,
    };
    Ok(Rational::from(-2 * (i64::from(p.g) - 2)) * integral)
}

/// `−∫_X σ_{2,…,2,1,0} · σ_1 · ζ^{g−2}`; for r ≥ 2 this equals
/// `−∫ σ_{3,2,…,2,1,0} ζ^{g−2} − ∫ ζ^g`.
pub fn weierstrass_gamma_schubert(p: &GrdParams, route: IntegralRoute) -> Result<Rational> {
    let shape = weierstrass_guard(p)?;
    let mut parts = vec![0, 1];
    parts.extend(std::iter::repeat_n(2, p.r as usize - 1));
    let base = SchubertCombo::single(shape, BoxPartition::new(shape, parts)?)?;
    let combo = pieri_multiply(&base, 1)?;
    let k = p.g - 2;
    let integral = match route {
        IntegralRoute::Formula => combo_zeta_integral(&combo, k)?,
        IntegralRoute::Pieri => combo_zeta_integral_oracle(&combo, k)?,
    };
    Ok(-integral)
}

/// Total α over the Weierstrass fibre: `−2d(2g−2−d)N / (3(g−1))`, checked
/// against the Schubert integral.
pub fn weierstrass_alpha(p: &GrdParams) -> Result<Rational> {
    let (g, d) = (i64::from(p.g), i64::from(p.d));
    let closed = n_over_g1(p)? * Rational::new(-2 * d * (2 * g - 2 - d), 3)?;
    let schubert = weierstrass_alpha_schubert(p, IntegralRoute::Formula)?;
    if schubert != closed {
        return Err(Error::Mismatch(format!(
            "{p}: Weierstrass alpha closed form {closed} != Schubert integral {schubert}"
        )));
    }
    Ok(closed)
}

/// Total γ over the Weierstrass fibre: `−ξN / (3(g−1))`, checked against the
/// Schubert integral.
pub fn weierstrass_gamma(p: &GrdParams) -> Result<Rational> {
    let closed = -(n_over_g1(p)? * p.xi()? / Rational::from(3));
    let schubert = weierstrass_gamma_schubert(p, IntegralRoute::Formula)?;
    if schubert != closed {
        return Err(Error::Mismatch(format!(
            "{p}: Weierstrass gamma closed form {closed} != Schubert integral {schubert}"
        )));
    }
    Ok(closed)
}

/// `η_*` over `M̄_{0,g}` vanishes for all three classes.
pub fn eta_push_mogb(g: u32, _label: ClassLabel) -> DivisorClass {
    DivisorClass::zero(PicSpace::M0g(g))
}

/// `η_*` over `M̃_{2,1}`.
pub fn eta_push_m21(p: &GrdParams, label: ClassLabel) -> Result<DivisorClass> {
    let ng = n_over_g1(p)?;
    let (g, d) = (i64::from(p.g), i64::from(p.d));
    let dn = Rational::from(d) * &ng;
    Ok(match label {
        ClassLabel::Alpha => {
            let w = &dn * Rational::new(2 * (d - 2 * g + 2), 3)?;
            &weierstrass_class().scale(&w) + &sheet_class().scale(&dn)
        }
        ClassLabel::Beta => sheet_class().scale(&dn),
        ClassLabel::Gamma => {
            let w = -(ng * p.xi()? / Rational::from(3));
            weierstrass_class().scale(&w)
        }
    })
}

/// Rebuilds `η_*` over `M̃_{2,1}` from its pieces: type-a_1 sheets (zero),
/// type-a_2 sheets (universal genus-2 curve intersection numbers) and the
/// one-dimensional fibres over the Weierstrass locus. Returned in the reduced
/// basis (λ, δ_1, ψ).
pub fn reconstruct_m21(p: &GrdParams, label: ClassLabel) -> Result<DivisorClass> {
    let (a1, a2) = sheet_counts(p)?;
    let l = UnivCurveClass::line_bundle_a2();
    let per_a1 = DivisorClass::zero(PicSpace::M21);
    let (per_a2, weierstrass) = match label {
        ClassLabel::Alpha => (m21_push_product(&l, &l), weierstrass_alpha(p)?),
        ClassLabel::Beta => (
            m21_push_product(&l, &UnivCurveClass::dualizing_attached()),
            Rational::zero(),
        ),
        ClassLabel::Gamma => (DivisorClass::zero(PicSpace::M21), weierstrass_gamma(p)?),
    };
    let total = &(&per_a1.scale(&a1) + &reduce_m21(&per_a2)?.scale(&a2)) + &weierstrass_class().scale(&weierstrass);
    reduce_m21(&total)
}

/// `deg η_*` over the `k_h` family.
pub fn eta_push_marked(p: &GrdParams, h: u32, label: ClassLabel) -> Result<Rational> {
    if h == 0 || h >= p.g {
        return Err(Error::precondition(format!(
            "h = {h} outside 1..={}",
            p.g.saturating_sub(1)
        )));
    }
    let n = p.n()?;
    let (g, r, d, h) = (i64::from(p.g), i64::from(p.r), i64::from(p.d), i64::from(h));
    Ok(match label {
        ClassLabel::Alpha => n * Rational::from(-d * d),
        ClassLabel::Beta => n * Rational::from(-(2 * (g - h) - 1) * d),
        ClassLabel::Gamma => n * Rational::from(-(r * h + r * (r + 1) / 2)),
    })
}
