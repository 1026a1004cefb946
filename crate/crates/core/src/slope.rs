//! The divisor E swept out by `g^r_d`'s whose image lies on a quadric, and
//! slope comparisons against `6 + 12/(g+1)`.
//!
//! The slope of a class `aλ − b_0δ_0 − …` is taken as `a/b_0`: only the λ and
//! δ_0 coefficients enter, the ψ and δ_{i≥1} parts are carried but ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Field, Poly, RatFunc, Rational};
use crate::families::ClassLabel;
use crate::invariants::GrdParams;
use crate::picard::{DivisorClass, PicSpace, Symbol};
use crate::pushforward::push_combination;

/// `c_α·α + c_β·β + c_γ·γ + c_λ·λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalClass {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub lambda: Rational,
}

impl FormalClass {
    pub fn coeff(&self, label: ClassLabel) -> &Rational {
        match label {
            ClassLabel::Alpha => &self.alpha,
            ClassLabel::Beta => &self.beta,
            ClassLabel::Gamma => &self.gamma,
        }
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} alpha + {} beta + {} gamma + {} lambda",
            self.alpha, self.beta, self.gamma, self.lambda
        )
    }
}

/// Class of the locus where the image of the linear series lies on a
/// quadric: `2α − β + λ − (r+2)γ`, using `c_1(Sym²V) = (r+2)c_1(V)`.
pub fn quadric_class_formal(r: u32) -> Result<FormalClass> {
    if r == 0 {
        return Err(Error::precondition("quadric class needs r >= 1"));
    }
    Ok(FormalClass {
        alpha: 2.into(),
        beta: (-1).into(),
        gamma: Rational::from(-(i64::from(r) + 2)),
        lambda: 1.into(),
    })
}

/// `η_*` of the quadric class on `M̃_{g,1}`, proportional to N.
pub fn divisor_e(p: &GrdParams) -> Result<DivisorClass> {
    let q = quadric_class_formal(p.r)?;
    let lambda = DivisorClass::from_terms(PicSpace::Mg1(p.g), [(Symbol::Lambda, q.lambda.clone())])?;
    push_combination(p, &q.alpha, &q.beta, &q.gamma, &lambda)
}

/// `6 + 12/(g+1)`.
pub fn slope_bound(g: u32) -> Rational {
    Rational::from(6) + Rational::ratio(12, i64::from(g) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub g: u32,
    pub r: u32,
    pub d: u32,
    /// λ coefficient of `[E]/N`.
    pub lambda_coeff: Rational,
    /// δ_0 coefficient of `[E]/N`.
    pub delta0_coeff: Rational,
    pub ratio: Rational,
    pub bound: Rational,
    /// `bound − ratio`.
    pub gap: Rational,
    /// Ratio strictly below the bound with `b_0 > 0`.
    pub violates: bool,
    /// False only for (21, 6, 24), where E is known to be a divisor.
    pub conjectural: bool,
}

const PROVEN_TRIPLE: GrdParams = GrdParams::new(21, 6, 24);

pub fn slope_report(p: &GrdParams) -> Result<SlopeReport> {
    let p = GrdParams::rho_zero(p.g, p.r, p.d)?;
    let e = divisor_e(&p)?;
    let n = p.n()?;
    let lambda_coeff = e.coeff(Symbol::Lambda) / &n;
    let delta0_coeff = e.coeff(Symbol::Delta(0)) / &n;
    if delta0_coeff.is_zero() {
        return Err(Error::precondition(format!(
            "{p}: slope undefined (delta_0 coefficient is 0)"
        )));
    }
    let ratio = &lambda_coeff / &(-&delta0_coeff);
    let bound = slope_bound(p.g);
    let gap = &bound - &ratio;
    Ok(SlopeReport {
        g: p.g,
        r: p.r,
        d: p.d,
        violates: gap.is_positive() && delta0_coeff.is_negative(),
        conjectural: p != PROVEN_TRIPLE,
        lambda_coeff,
        delta0_coeff,
        ratio,
        bound,
        gap,
    })
}

/// `(m(2m+1), 2m, 2m(m+1))`.
pub fn m_family_params(m: u32) -> Result<GrdParams> {
    if m == 0 {
        return Err(Error::precondition("m must be >= 1"));
    }
    GrdParams::rho_zero(m * (2 * m + 1), 2 * m, 2 * m * (m + 1))
}

pub fn m_family(m: u32) -> Result<SlopeReport> {
    slope_report(&m_family_params(m)?)
}

/// The gap along the m-family in closed form:
/// `(36m⁵ − 24m⁴ − 57m³ + 48m² + 3m − 6) /
///  (16m⁹ − 8m⁸ − 4m⁷ − 10m⁶ + 23m⁴ + 16m³ + 13m² + 2m)`.
pub fn printed_gap_function() -> RatFunc {
    RatFunc::new(
        Poly::from_ints(&[-6, 3, 48, -57, -24, 36]),
        Poly::from_ints(&[0, 2, 13, 16, 23, 0, -10, -4, -8, 16]),
    )
    .expect("non-zero denominator")
}

/// Checks `bound − ratio` of `m_family(m)` against [`printed_gap_function`]
/// for `m = 1..=m_max`.
pub fn m_family_gap_identity(m_max: u32) -> Result<bool> {
    let printed = printed_gap_function();
    for m in 1..=m_max {
        let report = m_family(m)?;
        if report.gap != printed.eval(&Rational::from(m))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// λ and δ_0 coefficients of `[E]/N` as functions of `(g, r, d)` over any
/// field, from the closed forms of `η_*α`, `η_*β`, `η_*γ`.
pub fn e_coefficients<F: Field>(g: &F, r: &F, d: &F) -> Result<(F, F)> {
    let k = |n: i64| F::from_int(n);
    let add = |a: &F, b: &F| a.add(b);
    let sub = |a: &F, b: &F| a.sub(b);
    let mul = |a: &F, b: &F| a.mul(b);

    let g1 = sub(g, &k(1));
    let g2 = sub(g, &k(2));
    let g12 = mul(&g1, &g2);
    let gg = mul(g, g);
    let gd = mul(g, d);
    let rr2 = mul(r, &add(r, &k(2)));

    // ξ = 3(g−1) + (r−1)(g+r+1)(3g−2d+r−3)/(g−d+2r+1)
    let xi_num = mul(
        &mul(&sub(r, &k(1)), &add(&add(g, r), &k(1))),
        &sub(&add(&sub(&mul(&k(3), g), &mul(&k(2), d)), r), &k(3)),
    );
    let xi_den = add(&add(&sub(g, d), &mul(&k(2), r)), &k(1));
    let xi = add(&mul(&k(3), &g1), &xi_num.div(&xi_den)?);

    // α: d(gd − 2g² + 8d − 8g + 4)/((g−1)(g−2)), d(2g² − gd + 3g − 4d − 2)/(6(g−1)(g−2))
    let a_l = mul(
        d,
        &add(
            &sub(&add(&sub(&gd, &mul(&k(2), &gg)), &mul(&k(8), d)), &mul(&k(8), g)),
            &k(4),
        ),
    )
    .div(&g12)?;
    let a_d = mul(
        d,
        &sub(
            &sub(&add(&sub(&mul(&k(2), &gg), &gd), &mul(&k(3), g)), &mul(&k(4), d)),
            &k(2),
        ),
    )
    .div(&mul(&k(6), &g12))?;
    // β: 6d/(g−1), −d/(2(g−1))
    let b_l = mul(&k(6), d).div(&g1)?;
    let b_d = sub(&k(0), d).div(&mul(&k(2), &g1))?;
    // γ: (−(g+3)ξ + 5r(r+2))/(2(g−1)(g−2)), ((g+1)ξ − 3r(r+2))/(12(g−1)(g−2))
    let c_l = sub(&mul(&k(5), &rr2), &mul(&add(g, &k(3)), &xi)).div(&mul(&k(2), &g12))?;
    let c_d = sub(&mul(&add(g, &k(1)), &xi), &mul(&k(3), &rr2)).div(&mul(&k(12), &g12))?;

    let rp2 = add(r, &k(2));
    let lambda = add(&sub(&sub(&mul(&k(2), &a_l), &b_l), &mul(&rp2, &c_l)), &k(1));
    let delta0 = sub(&sub(&mul(&k(2), &a_d), &b_d), &mul(&rp2, &c_d));
    Ok((lambda, delta0))
}

/// `6 + 12/(g+1) − a/b_0` along the m-family, as a rational function of m.
pub fn symbolic_m_family_gap() -> Result<RatFunc> {
    let m = RatFunc::var();
    let k = |n: i64| RatFunc::from_int(n);
    let g = &m * &(&(&k(2) * &m) + &k(1));
    let r = &k(2) * &m;
    let d = &(&k(2) * &m) * &(&m + &k(1));
    let (lambda, delta0) = e_coefficients(&g, &r, &d)?;
    let ratio = lambda.checked_div(&-&delta0)?;
    let bound = &k(6) + &k(12).checked_div(&(&g + &k(1)))?;
    Ok(&bound - &ratio)
}
