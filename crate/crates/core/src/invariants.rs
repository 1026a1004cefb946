//! Brill–Noether numerology for `g^r_d`'s on genus-g curves.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// A `(g, r, d)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrdParams {
    pub g: u32,
    pub r: u32,
    pub d: u32,
}

impl GrdParams {
    pub const fn new(g: u32, r: u32, d: u32) -> Self {
        GrdParams { g, r, d }
    }

    /// A triple with `ρ = 0` and `g ≥ 1`, `d ≥ 1`.
    pub fn rho_zero(g: u32, r: u32, d: u32) -> Result<Self> {
        let p = GrdParams { g, r, d };
        if g == 0 || d == 0 {
            return Err(Error::precondition(format!("{p}: need g >= 1 and d >= 1")));
        }
        let rho = p.rho();
        if rho != 0 {
            return Err(Error::precondition(format!("{p}: rho = {rho}, expected 0")));
        }
        Ok(p)
    }

    pub fn rho(&self) -> i64 {
        rho(self.g, self.r, self.d)
    }

    /// `g − d + 2r + 1`, the denominator of ξ.
    pub fn xi_denominator(&self) -> i64 {
        i64::from(self.g) - i64::from(self.d) + 2 * i64::from(self.r) + 1
    }

    pub fn n(&self) -> Result<Rational> {
        castelnuovo_n(self.g, self.r, self.d)
    }

    pub fn xi(&self) -> Result<Rational> {
        xi(self.g, self.r, self.d)
    }

    pub fn require_genus(&self, min: u32) -> Result<()> {
        if self.g < min {
            return Err(Error::precondition(format!("{self}: need g >= {min}")));
        }
        Ok(())
    }
}

impl fmt::Display for GrdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g,r,d)=({},{},{})", self.g, self.r, self.d)
    }
}

pub fn rho(g: u32, r: u32, d: u32) -> i64 {
    let (g, r, d) = (i64::from(g), i64::from(r), i64::from(d));
    g - (r + 1) * (g - d + r)
}

/// Number of `g^r_d`'s on a general curve when `ρ = 0`:
/// `1!·2!⋯r!·g! / ((g−d+r)!(g−d+r+1)!⋯(g−d+2r)!)`.
pub fn castelnuovo_n(g: u32, r: u32, d: u32) -> Result<Rational> {
    let p = GrdParams::new(g, r, d);
    if p.rho() != 0 {
        return Err(Error::precondition(format!("{p}: rho = {} != 0", p.rho())));
    }
    let base = i64::from(g) - i64::from(d) + i64::from(r);
    if base < 0 {
        return Err(Error::precondition(format!(
            "{p}: negative factorial argument g-d+r = {base}"
        )));
    }
    let mut numer = factorial(u64::from(g));
    for i in 1..=u64::from(r) {
        numer *= factorial(i);
    }
    let denom = (0..=i64::from(r)).fold(BigInt::one(), |acc, i| acc * factorial((base + i) as u64));
    Rational::new(numer, denom)
}

/// `ξ = 3(g−1) + (r−1)(g+r+1)(3g−2d+r−3) / (g−d+2r+1)`.
pub fn xi(g: u32, r: u32, d: u32) -> Result<Rational> {
    let p = GrdParams::new(g, r, d);
    let den = p.xi_denominator();
    if den == 0 {
        return Err(Error::precondition(format!("{p}: xi denominator g-d+2r+1 vanishes")));
    }
    let (g, r, d) = (i64::from(g), i64::from(r), i64::from(d));
    let num = (r - 1) * (g + r + 1) * (3 * g - 2 * d + r - 3);
    Ok(Rational::from(3 * (g - 1)) + Rational::new(num, den)?)
}

/// Sum of the vanishing orders at the node of a `ρ = 0` aspect on a genus-h
/// component: `(r+1)d − r(r+1)/2 − hr`.
pub fn vanishing_sum(h: u32, r: u32, d: u32) -> i64 {
    let (h, r, d) = (i64::from(h), i64::from(r), i64::from(d));
    (r + 1) * d - r * (r + 1) / 2 - h * r
}

/// All `ρ = 0` triples with `1 ≤ g ≤ g_max`, `r ≥ 1`, `d ≤ g + r` and a
/// non-vanishing ξ denominator, ordered by `(g, r, d)`.
pub fn enumerate_rho_zero(g_max: u32) -> Vec<GrdParams> {
    let mut out = Vec::new();
    for g in 1..=g_max {
        // ρ = 0 forces g = (r+1)(g−d+r) with g−d+r ≥ 1, so r < g.
        for r in 1..g {
            for d in 1..=g + r {
                let p = GrdParams::new(g, r, d);
                if p.rho() == 0 && p.xi_denominator() != 0 {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(21, 6, 24), 0);
        assert_eq!(rho(10, 4, 12), 0);
        assert_eq!(rho(3, 1, 2), -1);
    }

    #[test]
    fn castelnuovo_values() {
        assert_eq!(castelnuovo_n(4, 1, 3).unwrap(), 2.into());
        assert_eq!(castelnuovo_n(6, 2, 6).unwrap(), 5.into());
        // Factorial quotient evaluated independently (cross-checked by the
        // Pieri sweep in the acceptance suite).
        assert_eq!(castelnuovo_n(21, 6, 24).unwrap(), 1_385_670.into());
        assert!(castelnuovo_n(3, 1, 2).is_err());
    }

    #[test]
    fn xi_values() {
        assert_eq!(xi(21, 6, 24).unwrap(), 312.into());
        assert_eq!(xi(4, 1, 3).unwrap(), 9.into());
        for g in 2..20 {
            for d in 1..30 {
                if GrdParams::new(g, 1, d).xi_denominator() != 0 {
                    assert_eq!(xi(g, 1, d).unwrap(), Rational::from(3 * (i64::from(g) - 1)));
                }
            }
        }
        // g - d + 2r + 1 = 0
        assert!(xi(1, 1, 4).is_err());
    }

    #[test]
    fn vanishing_sum_values() {
        assert_eq!(vanishing_sum(0, 1, 1), 1);
        for (h, r, d) in [(1, 1, 3), (3, 6, 24), (5, 2, 9)] {
            let (hh, rr, dd) = (i64::from(h), i64::from(r), i64::from(d));
            assert_eq!(vanishing_sum(h, r, d) - (rr + 1) * dd, -rr * (rr + 1) / 2 - rr * hh);
        }
    }

    #[test]
    fn vanishing_sum_matches_adjusted_rho() {
        // ρ(h,r,d) − Σ(a_i − i) = 0 with Σ a_i = vanishing_sum.
        for h in 1..10u32 {
            for r in 1..6u32 {
                for d in r..20u32 {
                    let sum_i = i64::from(r) * (i64::from(r) + 1) / 2;
                    assert_eq!(rho(h, r, d) - (vanishing_sum(h, r, d) - sum_i), 0);
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        let small = enumerate_rho_zero(4);
        assert!(small.contains(&GrdParams::new(4, 1, 3)));
        let big = enumerate_rho_zero(21);
        assert!(big.contains(&GrdParams::new(21, 6, 24)));
        assert!(big.contains(&GrdParams::new(10, 4, 12)));
        for p in &big {
            assert_eq!(p.rho(), 0);
            assert_eq!(p.g % (p.r + 1), 0);
            let n = p.n().unwrap();
            assert!(n.is_integer() && n.is_positive());
        }
    }

    #[test]
    fn m_family_has_rho_zero() {
        for m in 1..=20u32 {
            assert_eq!(rho(m * (2 * m + 1), 2 * m, 2 * m * (m + 1)), 0);
        }
    }
}
