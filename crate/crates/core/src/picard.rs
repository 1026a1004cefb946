//! Rational divisor classes on `M̃_{g,1}`, `M̃_{2,1}` and `M̄_{0,g}`, and the
//! pullbacks along the three test families.
//!
//! Bases:
//! - `M̃_{g,1}`: λ, ψ, δ_0, …, δ_{g−1} (δ_i for i ≥ 1 has the marked point on
//!   the genus-i side).
//! - `M̃_{2,1}`: λ, ψ, δ_0, δ_1, subject to `10λ = δ_0 + 2δ_1`.
//! - `M̄_{0,g}`: ε_2, …, ε_{g−2} (ε_i: the component with the first marked
//!   point carries i marked points).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Lambda,
    Psi,
    Delta(u32),
    Epsilon(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Lambda => write!(f, "lambda"),
            Symbol::Psi => write!(f, "psi"),
            Symbol::Delta(i) => write!(f, "delta_{i}"),
            Symbol::Epsilon(i) => write!(f, "epsilon_{i}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown divisor symbol {s:?}"));
        let index = |rest: &str| -> Result<u32> { rest.trim_start_matches('_').parse::<u32>().map_err(|_| bad()) };
        match s {
            "lambda" | "λ" => Ok(Symbol::Lambda),
            "psi" | "ψ" => Ok(Symbol::Psi),
            _ => {
                if let Some(rest) = s.strip_prefix("delta").or_else(|| s.strip_prefix("δ")) {
                    Ok(Symbol::Delta(index(rest)?))
                } else if let Some(rest) = s.strip_prefix("epsilon").or_else(|| s.strip_prefix("ε")) {
                    Ok(Symbol::Epsilon(index(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PicSpace {
    /// `M̃_{g,1}`.
    Mg1(u32),
    /// `M̃_{2,1}`.
    M21,
    /// `M̄_{0,g}`, spanned by the ε classes.
    M0g(u32),
}

impl PicSpace {
    pub fn basis(&self) -> Vec<Symbol> {
        match *self {
            PicSpace::Mg1(g) => [Symbol::Lambda, Symbol::Psi]
                .into_iter()
                .chain((0..g).map(Symbol::Delta))
                .collect(),
            PicSpace::M21 => vec![Symbol::Lambda, Symbol::Psi, Symbol::Delta(0), Symbol::Delta(1)],
            PicSpace::M0g(g) => (2..g.saturating_sub(1)).map(Symbol::Epsilon).collect(),
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        match (*self, s) {
            (PicSpace::Mg1(_) | PicSpace::M21, Symbol::Lambda | Symbol::Psi) => true,
            (PicSpace::Mg1(g), Symbol::Delta(i)) => i < g,
            (PicSpace::M21, Symbol::Delta(i)) => i <= 1,
            (PicSpace::M0g(g), Symbol::Epsilon(i)) => i >= 2 && i + 2 <= g,
            _ => false,
        }
    }
}

impl fmt::Display for PicSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicSpace::Mg1(g) => write!(f, "M~_{{{g},1}}"),
            PicSpace::M21 => write!(f, "M~_{{2,1}}"),
            PicSpace::M0g(g) => write!(f, "M-_{{0,{g}}}"),
        }
    }
}

/// Sparse rational combination of basis symbols of one space. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    space: PicSpace,
    coeffs: BTreeMap<Symbol, Rational>,
}

impl DivisorClass {
    pub fn zero(space: PicSpace) -> Self {
        DivisorClass {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(space: PicSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, Rational)>,
    {
        let mut c = DivisorClass::zero(space);
        for (s, v) in terms {
            c.add_term(s, v)?;
        }
        Ok(c)
    }

    /// Builds a class from small integer coefficients. Panics on symbols
    /// outside the space; meant for literals.
    pub fn from_ints(space: PicSpace, terms: &[(Symbol, i64)]) -> Self {
        Self::from_terms(space, terms.iter().map(|&(s, v)| (s, Rational::from(v))))
            .expect("literal class uses basis symbols")
    }

    /// Parses `"symbol:coeff,symbol:coeff"`, e.g. `"lambda:2,delta_3:-1/2"`.
    pub fn parse(space: PicSpace, s: &str) -> Result<Self> {
        let mut c = DivisorClass::zero(space);
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (sym, coeff) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected symbol:coeff, got {item:?}")))?;
            c.add_term(sym.parse()?, coeff.parse()?)?;
        }
        Ok(c)
    }

    pub fn space(&self) -> PicSpace {
        self.space
    }

    pub fn add_term(&mut self, s: Symbol, v: Rational) -> Result<()> {
        if !self.space.contains(s) {
            return Err(Error::UnknownSymbol {
                symbol: s.to_string(),
                space: self.space.to_string(),
            });
        }
        let e = self.coeffs.entry(s).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    pub fn coeff(&self, s: Symbol) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<Symbol, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorClass {
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, v)| (*s, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<Self> {
        self.require_space(other.space)?;
        let mut out = self.clone();
        for (s, v) in &other.coeffs {
            out.add_term(*s, v.clone())?;
        }
        Ok(out)
    }

    pub fn require_space(&self, expected: PicSpace) -> Result<()> {
        if self.space != expected {
            return Err(Error::WrongSpace {
                expected: expected.to_string(),
                found: self.space.to_string(),
            });
        }
        Ok(())
    }

    /// Coefficient map keyed by symbol name; keys sort lexicographically.
    pub fn to_named(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(s, v)| (s.to_string(), v.to_string()))
            .collect()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(s, v)| format!("{v}*{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Operators panic on mismatched spaces; use `checked_add` when the spaces are
// not known to agree.
impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("adding classes on different spaces")
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// `i^*`: pullback to `M̄_{0,g}` along the family of rational spines with
/// g elliptic tails.
pub fn pullback_i(g: u32, class: &DivisorClass) -> Result<DivisorClass> {
    if g < 5 {
        return Err(Error::precondition(format!("pullback to M_(0,{g}) needs g >= 5")));
    }
    class.require_space(PicSpace::Mg1(g))?;
    let target = PicSpace::M0g(g);
    let mut out = DivisorClass::zero(target);
    let (gg, g1, g2) = (i64::from(g), i64::from(g) - 1, i64::from(g) - 2);
    for (sym, c) in class.terms() {
        match *sym {
            Symbol::Lambda | Symbol::Psi | Symbol::Delta(0) => {}
            Symbol::Delta(1) => {
                for i in 2..=g2 {
                    let w = Rational::new(-(gg - i) * (gg - i - 1), g1 * g2)?;
                    out.add_term(Symbol::Epsilon(i as u32), c * w)?;
                }
            }
            Symbol::Delta(i) if i == g - 1 => {
                for j in 2..=g2 {
                    let w = Rational::new(-(gg - j) * (j - 1), g2)?;
                    out.add_term(Symbol::Epsilon(j as u32), c * w)?;
                }
            }
            Symbol::Delta(i) => out.add_term(Symbol::Epsilon(i), c.clone())?,
            Symbol::Epsilon(_) => unreachable!("not in M_(g,1) basis"),
        }
    }
    Ok(out)
}

/// `j^*`: pullback to `M̃_{2,1}` along the family attaching a fixed
/// genus-(g−2) two-pointed curve.
pub fn pullback_j(g: u32, class: &DivisorClass) -> Result<DivisorClass> {
    if g < 5 {
        return Err(Error::precondition(format!(
            "pullback to M_(2,1) needs g >= 5, got {g}"
        )));
    }
    class.require_space(PicSpace::Mg1(g))?;
    let mut out = DivisorClass::zero(PicSpace::M21);
    for (sym, c) in class.terms() {
        match *sym {
            Symbol::Lambda => out.add_term(Symbol::Lambda, c.clone())?,
            Symbol::Delta(0) => out.add_term(Symbol::Delta(0), c.clone())?,
            Symbol::Delta(i) if i == g - 2 => out.add_term(Symbol::Psi, -c)?,
            Symbol::Delta(i) if i == g - 1 => out.add_term(Symbol::Delta(1), c.clone())?,
            Symbol::Psi | Symbol::Delta(_) => {}
            Symbol::Epsilon(_) => unreachable!("not in M_(g,1) basis"),
        }
    }
    Ok(out)
}

/// `deg k_h^*`: degree of the pullback to the curve family moving the marked
/// point along a fixed genus-h component.
pub fn pullback_k(g: u32, h: u32, class: &DivisorClass) -> Result<Rational> {
    class.require_space(PicSpace::Mg1(g))?;
    if h == 0 || h >= g {
        return Err(Error::precondition(format!(
            "h = {h} outside 1..={}",
            g.saturating_sub(1)
        )));
    }
    let psi_deg = Rational::from(2 * i64::from(h) - 1);
    // δ_h and δ_{g−h} coincide when h = g/2 and their contributions cancel.
    Ok(psi_deg * class.coeff(Symbol::Psi) - class.coeff(Symbol::Delta(h)) + class.coeff(Symbol::Delta(g - h)))
}

/// Intersection numbers `ε_i · B_j` of the test curves `B_1..B_{g−3}` (rows)
/// with `ε_2..ε_{g−2}` (columns) on `M̄_{0,g}`.
///
/// Row 1 is `(g−1, 0, …, 0)`. Row `j ≥ 2` has −1 in column `j−1`, +1 in
/// column `j` and `g−j−1` in the last column; in the final row `j = g−3` the
/// +1 and the last column coincide and the entry is `g−j−1 = 2`. For g = 5
/// this gives `[[4, 0], [−1, 2]]`.
pub fn epsilon_matrix(g: u32) -> Result<Matrix> {
    if g < 5 {
        return Err(Error::precondition(format!("epsilon matrix needs g >= 5, got {g}")));
    }
    let n = (g - 3) as usize;
    let gi = i64::from(g);
    let mut m = Matrix::zeros(n, n);
    m.set(0, 0, Rational::from(gi - 1));
    for row in 1..n {
        let j = row as i64 + 1;
        m.set(row, row - 1, Rational::from(-1));
        m.set(row, row, Rational::from(1));
        m.set(row, n - 1, Rational::from(gi - j - 1));
    }
    Ok(m)
}

/// `10λ − δ_0 − 2δ_1`, which vanishes in `Pic M̃_{2,1} ⊗ Q`.
pub fn m21_relation() -> DivisorClass {
    DivisorClass::from_ints(
        PicSpace::M21,
        &[(Symbol::Lambda, 10), (Symbol::Delta(0), -1), (Symbol::Delta(1), -2)],
    )
}

/// Rewrites a class on `M̃_{2,1}` in the basis (λ, δ_1, ψ) using
/// `δ_0 = 10λ − 2δ_1`.
pub fn reduce_m21(class: &DivisorClass) -> Result<DivisorClass> {
    class.require_space(PicSpace::M21)?;
    let d0 = class.coeff(Symbol::Delta(0));
    if d0.is_zero() {
        return Ok(class.clone());
    }
    // Adding d0·(10λ − δ_0 − 2δ_1) clears δ_0.
    class.checked_add(&m21_relation().scale(&d0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    fn mg1(g: u32, terms: &[(Symbol, i64)]) -> DivisorClass {
        DivisorClass::from_ints(PicSpace::Mg1(g), terms)
    }

    #[test]
    fn symbol_round_trip() {
        for s in [Lambda, Psi, Delta(0), Delta(17), Epsilon(3)] {
            assert_eq!(s.to_string().parse::<Symbol>().unwrap(), s);
        }
        assert_eq!("δ_2".parse::<Symbol>().unwrap(), Delta(2));
        assert!("kappa".parse::<Symbol>().is_err());
    }

    #[test]
    fn basis_shapes() {
        assert_eq!(PicSpace::Mg1(4).basis().len(), 6);
        assert_eq!(PicSpace::M0g(6).basis(), vec![Epsilon(2), Epsilon(3), Epsilon(4)]);
        assert!(!PicSpace::M21.contains(Delta(2)));
        assert!(DivisorClass::parse(PicSpace::M21, "delta_2:1").is_err());
    }

    #[test]
    fn pullback_i_examples() {
        let e = pullback_i(6, &mg1(6, &[(Delta(3), 1)])).unwrap();
        assert_eq!(e, DivisorClass::from_ints(PicSpace::M0g(6), &[(Epsilon(3), 1)]));
        assert!(pullback_i(6, &mg1(6, &[(Lambda, 1), (Psi, 4), (Delta(0), -2)]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pullback_i_boundary_sum() {
        for g in 5..=30u32 {
            let lhs = pullback_i(g, &mg1(g, &[(Delta(1), 1), (Delta(g - 1), 1)])).unwrap();
            let gg = i64::from(g);
            let rhs = DivisorClass::from_terms(
                PicSpace::M0g(g),
                (2..=gg - 2).map(|i| (Epsilon(i as u32), Rational::new(i * (i - gg), gg - 1).unwrap())),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "g = {g}");
        }
    }

    #[test]
    fn pullback_i_errors() {
        assert!(pullback_i(4, &mg1(4, &[(Lambda, 1)])).is_err());
        let wrong = DivisorClass::from_ints(PicSpace::M21, &[(Lambda, 1)]);
        assert!(matches!(pullback_i(6, &wrong), Err(Error::WrongSpace { .. })));
        assert!(matches!(
            pullback_i(6, &mg1(7, &[(Lambda, 1)])),
            Err(Error::WrongSpace { .. })
        ));
    }

    #[test]
    fn pullback_j_examples() {
        let g = 8;
        let m21 = |t: &[(Symbol, i64)]| DivisorClass::from_ints(PicSpace::M21, t);
        assert_eq!(pullback_j(g, &mg1(g, &[(Delta(7), 1)])).unwrap(), m21(&[(Delta(1), 1)]));
        assert_eq!(pullback_j(g, &mg1(g, &[(Delta(6), 1)])).unwrap(), m21(&[(Psi, -1)]));
        assert!(pullback_j(g, &mg1(g, &[(Psi, 1)])).unwrap().is_zero());
        assert!(pullback_j(g, &mg1(g, &[(Delta(1), 1), (Delta(5), 3)]))
            .unwrap()
            .is_zero());
        assert_eq!(
            pullback_j(g, &mg1(g, &[(Lambda, 2), (Delta(6), 3)])).unwrap(),
            m21(&[(Lambda, 2), (Psi, -3)])
        );
    }

    #[test]
    fn pullback_k_examples() {
        let g = 7;
        assert_eq!(pullback_k(g, 3, &mg1(g, &[(Psi, 1)])).unwrap(), 5.into());
        assert_eq!(pullback_k(g, 3, &mg1(g, &[(Delta(3), 1)])).unwrap(), (-1).into());
        assert_eq!(pullback_k(g, 3, &mg1(g, &[(Delta(4), 1)])).unwrap(), 1.into());
        assert!(pullback_k(g, 3, &mg1(g, &[(Lambda, 1), (Delta(0), 1), (Delta(2), 1)]))
            .unwrap()
            .is_zero());
        assert!(pullback_k(8, 4, &mg1(8, &[(Delta(4), 1)])).unwrap().is_zero());
        assert!(pullback_k(g, 0, &mg1(g, &[])).is_err());
        assert!(pullback_k(g, 7, &mg1(g, &[])).is_err());
    }

    #[test]
    fn epsilon_matrix_small() {
        let m6 = epsilon_matrix(6).unwrap();
        assert_eq!(m6, Matrix::from_i64(&[&[5, 0, 0], &[-1, 1, 3], &[0, -1, 2]]).unwrap());
        assert_eq!(m6.determinant().unwrap(), 25.into());
        let m5 = epsilon_matrix(5).unwrap();
        assert_eq!(m5, Matrix::from_i64(&[&[4, 0], &[-1, 2]]).unwrap());
        let m8 = epsilon_matrix(8).unwrap();
        assert_eq!(m8.row(1)[4], Rational::from(5));
        assert_eq!(m8.row(3)[4], Rational::from(3));
        assert_eq!(m8.row(4)[3..], [Rational::from(-1), Rational::from(2)]);
        assert!(epsilon_matrix(4).is_err());
    }

    #[test]
    fn reduce_examples() {
        let m21 = |t: &[(Symbol, i64)]| DivisorClass::from_ints(PicSpace::M21, t);
        assert_eq!(
            reduce_m21(&m21(&[(Lambda, 12), (Delta(0), -1), (Psi, -8)])).unwrap(),
            m21(&[(Lambda, 2), (Delta(1), 2), (Psi, -8)])
        );
        assert_eq!(
            reduce_m21(&m21(&[(Delta(0), 1)])).unwrap(),
            m21(&[(Lambda, 10), (Delta(1), -2)])
        );
        assert_eq!(reduce_m21(&m21(&[(Lambda, 1)])).unwrap(), m21(&[(Lambda, 1)]));
        assert!(reduce_m21(&mg1(5, &[(Lambda, 1)])).is_err());
    }

    #[test]
    fn parse_class() {
        let c = DivisorClass::parse(PicSpace::Mg1(8), "delta_6:1, lambda:-1/2").unwrap();
        assert_eq!(c.coeff(Delta(6)), 1.into());
        assert_eq!(c.coeff(Lambda), Rational::ratio(-1, 2));
        assert!(DivisorClass::parse(PicSpace::Mg1(8), "delta_6").is_err());
        assert!(DivisorClass::parse(PicSpace::Mg1(8), "delta_6:1,delta_6:-1")
            .unwrap()
            .is_zero());
    }
}
