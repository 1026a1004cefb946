//! Intersection numbers on the Grassmannian `G(r, P^d)` of projective
//! r-planes.
//!
//! Schubert indices are stored in the weakly increasing form
//! `0 ≤ b_0 ≤ … ≤ b_r ≤ d − r` (codimension `Σ b_i`). The special class
//! `ζ = σ_{1,…,1,0}` has codimension `r`. Two routes compute `∫ ζ^k · σ_b`:
//! the closed factorial/Vandermonde formula ([`special_power_integral`]) and
//! repeated dual Pieri multiplication ([`zeta_power_integral_oracle`]).

use std::collections::{BTreeMap, HashMap};
use std::ops::AddAssign;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassShape {
    r: u32,
    d: u32,
}

impl GrassShape {
    pub fn new(r: u32, d: u32) -> Result<Self> {
        if r > d {
            return Err(Error::precondition(format!("G({r}, P^{d}) needs r <= d")));
        }
        if d - r > u32::from(u16::MAX) {
            return Err(Error::precondition("box width exceeds 65535"));
        }
        Ok(GrassShape { r, d })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of parts `r + 1`.
    pub fn height(&self) -> usize {
        self.r as usize + 1
    }

    /// Largest admissible part `d − r`.
    pub fn width(&self) -> u32 {
        self.d - self.r
    }

    pub fn dim(&self) -> u64 {
        u64::from(self.r + 1) * u64::from(self.d - self.r)
    }
}

/// Weakly increasing Schubert index `(b_0, …, b_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPartition(Vec<u32>);

impl BoxPartition {
    pub fn new(shape: GrassShape, parts: Vec<u32>) -> Result<Self> {
        let b = BoxPartition(parts);
        b.check(shape)?;
        Ok(b)
    }

    /// The fundamental class `σ_{0,…,0}`.
    pub fn zero(shape: GrassShape) -> Self {
        BoxPartition(vec![0; shape.height()])
    }

    /// The point class `σ_{d−r,…,d−r}`.
    pub fn point(shape: GrassShape) -> Self {
        BoxPartition(vec![shape.width(); shape.height()])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn codim(&self) -> u64 {
        self.0.iter().map(|&b| u64::from(b)).sum()
    }

    pub fn is_valid_for(&self, shape: GrassShape) -> bool {
        self.0.len() == shape.height()
            && self.0.windows(2).all(|w| w[0] <= w[1])
            && self.0.last().is_none_or(|&b| b <= shape.width())
    }

    fn check(&self, shape: GrassShape) -> Result<()> {
        if self.is_valid_for(shape) {
            Ok(())
        } else {
            Err(Error::InvalidPartition {
                index: self.0.clone(),
                r: shape.r,
                d: shape.d,
            })
        }
    }

    /// Parses a comma-separated index such as `"0,1,2"`.
    pub fn parse(shape: GrassShape, s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad Schubert index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BoxPartition::new(shape, parts)
    }

    // Decreasing partition form `λ_1 ≥ … ≥ λ_{r+1}` used by the Pieri rule.
    fn to_key(&self) -> Key {
        self.0.iter().rev().map(|&b| b as u16).collect()
    }

    fn from_key(key: &[u16]) -> Self {
        BoxPartition(key.iter().rev().map(|&b| u32::from(b)).collect())
    }
}

/// `∫_X ζ^k · σ_b` by the closed formula
/// `k! / ∏_i (k − d + r + a_i)! · ∏_{i<j} (a_j − a_i)` with `a_i = b_i + i`.
/// Zero when the degrees do not match or a factorial argument is negative.
pub fn special_power_integral(shape: GrassShape, k: u32, b: &BoxPartition) -> Result<Rational> {
    b.check(shape)?;
    if u64::from(shape.r) * u64::from(k) + b.codim() != shape.dim() {
        return Ok(Rational::zero());
    }
    let a: Vec<i64> =
        b.0.iter()
            .enumerate()
            .map(|(i, &bi)| i64::from(bi) + i as i64)
            .collect();
    let shift = i64::from(k) - i64::from(shape.d) + i64::from(shape.r);
    let mut denom = BigInt::one();
    for &ai in &a {
        let t = shift + ai;
        if t < 0 {
            return Ok(Rational::zero());
        }
        denom *= factorial(t as u64);
    }
    let mut numer = factorial(u64::from(k));
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            numer *= a[j] - a[i];
        }
    }
    Rational::new(numer, denom)
}

type Key = Vec<u16>;

/// Finite formal combination of Schubert classes on one Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCombo {
    shape: GrassShape,
    terms: BTreeMap<BoxPartition, Rational>,
}

impl SchubertCombo {
    pub fn new(shape: GrassShape) -> Self {
        SchubertCombo {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(shape: GrassShape, b: BoxPartition) -> Result<Self> {
        let mut c = SchubertCombo::new(shape);
        c.add_term(b, Rational::one())?;
        Ok(c)
    }

    pub fn shape(&self) -> GrassShape {
        self.shape
    }

    pub fn add_term(&mut self, b: BoxPartition, coeff: Rational) -> Result<()> {
        b.check(self.shape)?;
        let entry = self.terms.entry(b).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<BoxPartition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, b: &BoxPartition) -> Rational {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_keyed(&self) -> HashMap<Key, Rational> {
        self.terms.iter().map(|(b, c)| (b.to_key(), c.clone())).collect()
    }

    fn from_keyed(shape: GrassShape, map: HashMap<Key, Rational>) -> Self {
        SchubertCombo {
            shape,
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (BoxPartition::from_key(&k), c))
                .collect(),
        }
    }
}

/// Row sets of size `p` among `height` rows.
fn row_subsets(height: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, height: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..height {
            if height - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, height, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, height, p, &mut Vec::new(), &mut out);
    out
}

/// One dual Pieri step on decreasing partitions: add a vertical strip of `p`
/// boxes (at most one per row), discarding shapes that leave the box.
fn pieri_step<C>(src: &HashMap<Key, C>, p: usize, width: u16, height: usize) -> HashMap<Key, C>
where
    C: Clone + for<'a> AddAssign<&'a C>,
{
    let strips = row_subsets(height, p);
    let mut out: HashMap<Key, C> = HashMap::with_capacity(src.len() * 2);
    let mut rows = vec![false; height];
    for (lam, c) in src {
        'strip: for strip in &strips {
            rows.iter_mut().for_each(|x| *x = false);
            for &i in strip {
                rows[i] = true;
            }
            for &i in strip {
                if lam[i] >= width {
                    continue 'strip;
                }
                // Row i grows past row i-1 unless that row grows too.
                if i > 0 && !rows[i - 1] && lam[i] >= lam[i - 1] {
                    continue 'strip;
                }
            }
            let mut new = lam.clone();
            for &i in strip {
                new[i] += 1;
            }
            match out.get_mut(&new) {
                Some(acc) => *acc += c,
                None => {
                    out.insert(new, c.clone());
                }
            }
        }
    }
    out
}

/// Multiplies every term by `σ_{1^p}` (the class with `p` ones), via the
/// dual Pieri rule.
pub fn pieri_multiply(c: &SchubertCombo, p: u32) -> Result<SchubertCombo> {
    let shape = c.shape;
    if p as usize > shape.height() {
        return Err(Error::precondition(format!(
            "sigma_(1^{p}) does not exist on G({}, P^{})",
            shape.r, shape.d
        )));
    }
    let out = pieri_step(&c.to_keyed(), p as usize, shape.width() as u16, shape.height());
    Ok(SchubertCombo::from_keyed(shape, out))
}

/// Degree map: the coefficient of the point class.
pub fn integral(c: &SchubertCombo) -> Rational {
    c.coeff(&BoxPartition::point(c.shape))
}

type IntCombo = HashMap<Key, BigInt>;
type PowerTable = BTreeMap<u32, Arc<IntCombo>>;

/// Memo of `ζ^k · σ_b` expansions with integer coefficients, keyed by shape
/// and starting index. Readers share; insertion is exclusive.
#[derive(Default)]
pub struct ZetaCache {
    powers: RwLock<HashMap<(GrassShape, Key), PowerTable>>,
}

impl ZetaCache {
    pub fn global() -> &'static ZetaCache {
        static CACHE: OnceLock<ZetaCache> = OnceLock::new();
        CACHE.get_or_init(ZetaCache::default)
    }

    /// `ζ^k · σ_b` as an integer combination of decreasing partitions.
    fn expand(&self, shape: GrassShape, k: u32, start: &Key) -> Arc<IntCombo> {
        let id = (shape, start.clone());
        let (mut have, mut cur) = {
            let map = self.powers.read().expect("zeta cache poisoned");
            match map.get(&id).and_then(|m| m.range(..=k).next_back()) {
                Some((&j, c)) if j == k => return Arc::clone(c),
                Some((&j, c)) => (j, Arc::clone(c)),
                None => (0, Arc::new(IntCombo::from([(start.clone(), BigInt::one())]))),
            }
        };
        let p = shape.r as usize;
        while have < k {
            cur = Arc::new(pieri_step(&cur, p, shape.width() as u16, shape.height()));
            have += 1;
        }
        self.powers
            .write()
            .expect("zeta cache poisoned")
            .entry(id)
            .or_default()
            .insert(k, Arc::clone(&cur));
        cur
    }

    pub fn clear(&self) {
        self.powers.write().expect("zeta cache poisoned").clear();
    }
}

/// `∫ ζ^k · σ_b` by `k` successive Pieri multiplications by `ζ = σ_{1^r}`
/// starting from `σ_b`, then taking the point-class coefficient.
pub fn zeta_power_integral_oracle(shape: GrassShape, k: u32, b: &BoxPartition) -> Result<Rational> {
    b.check(shape)?;
    if u64::from(shape.r) * u64::from(k) + b.codim() != shape.dim() {
        return Ok(Rational::zero());
    }
    let combo = ZetaCache::global().expand(shape, k, &b.to_key());
    let point = BoxPartition::point(shape).to_key();
    Ok(combo.get(&point).cloned().unwrap_or_else(BigInt::zero).into())
}

/// `∫ ζ^k · c` for an arbitrary combination, term by term through the
/// closed formula.
pub fn combo_zeta_integral(c: &SchubertCombo, k: u32) -> Result<Rational> {
    c.terms
        .iter()
        .map(|(b, coeff)| Ok(coeff * special_power_integral(c.shape, k, b)?))
        .sum::<Result<Rational>>()
}

/// `∫ ζ^k · c` term by term through the Pieri oracle.
pub fn combo_zeta_integral_oracle(c: &SchubertCombo, k: u32) -> Result<Rational> {
    c.terms
        .iter()
        .map(|(b, coeff)| Ok(coeff * zeta_power_integral_oracle(c.shape, k, b)?))
        .sum::<Result<Rational>>()
}

/// Every weakly increasing index in the box with codimension at most `max_codim`.
pub fn enumerate_partitions(shape: GrassShape, max_codim: u64) -> Vec<BoxPartition> {
    fn go(i: usize, lo: u32, budget: u64, shape: GrassShape, cur: &mut Vec<u32>, out: &mut Vec<BoxPartition>) {
        if i == shape.height() {
            out.push(BoxPartition(cur.clone()));
            return;
        }
        let rest = (shape.height() - i) as u64;
        for b in lo..=shape.width() {
            // Later parts are at least b, so they cost at least b each.
            if u64::from(b) * rest > budget {
                break;
            }
            cur.push(b);
            go(i + 1, b, budget - u64::from(b), shape, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, max_codim, shape, &mut Vec::new(), &mut out);
    out
}
