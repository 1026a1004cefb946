//! Batch cross-checks over ranges of triples, shared by `grd verify` and the
//! acceptance tests.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{ratfunc_equal, Rational};
use crate::families::{
    eta_push_m21, reconstruct_m21, weierstrass_alpha, weierstrass_alpha_schubert, weierstrass_gamma,
    weierstrass_gamma_schubert, ClassLabel, IntegralRoute,
};
use crate::invariants::{enumerate_rho_zero, GrdParams};
use crate::picard::{epsilon_matrix, pullback_i, reduce_m21, DivisorClass, PicSpace, Symbol};
use crate::pushforward::{check_assembly, eta_closed_form};
use crate::schubert::{
    enumerate_partitions, special_power_integral, zeta_power_integral_oracle, BoxPartition, GrassShape,
};
use crate::slope::{m_family, m_family_gap_identity, printed_gap_function, symbolic_m_family_gap, SlopeReport};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: Vec<String>,
    pub failure: Option<Error>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn from_result(name: &'static str, r: Result<(usize, Vec<String>)>) -> Self {
        match r {
            Ok((checked, skipped)) => CheckOutcome {
                name,
                checked,
                skipped,
                failure: None,
            },
            Err(e) => CheckOutcome {
                name,
                checked: 0,
                skipped: Vec::new(),
                failure: Some(e),
            },
        }
    }
}

fn mismatch(what: impl std::fmt::Display, left: impl std::fmt::Display, right: impl std::fmt::Display) -> Error {
    Error::Mismatch(format!("{what}: {left} != {right}"))
}

// Runs `f` over the triples in parallel and reports the first failure in
// triple order.
fn over_triples<F>(triples: &[GrdParams], f: F) -> Result<usize>
where
    F: Fn(&GrdParams) -> Result<()> + Sync,
{
    let results: Vec<Result<()>> = triples.par_iter().map(&f).collect();
    results.into_iter().collect::<Result<Vec<()>>>()?;
    Ok(triples.len())
}

/// Closed formula vs Pieri oracle for every Grassmannian `G(r, P^d)` with
/// `r ≥ 1`, `dim ≤ max_dim`, every index of codimension `≤ max_codim` and
/// every power `k` with `rk ≤ dim`.
pub fn schubert_oracle_sweep(max_dim: u64, max_codim: u64) -> Result<usize> {
    let mut cases = Vec::new();
    for r in 1..=max_dim as u32 {
        for d in r + 1.. {
            let shape = GrassShape::new(r, d)?;
            if shape.dim() > max_dim {
                break;
            }
            for b in enumerate_partitions(shape, max_codim) {
                for k in 0..=(shape.dim() / u64::from(r)) as u32 {
                    cases.push((shape, b.clone(), k));
                }
            }
        }
    }
    let results: Vec<Result<()>> = cases
        .par_iter()
        .map(|(shape, b, k)| {
            let closed = special_power_integral(*shape, *k, b)?;
            let pieri = zeta_power_integral_oracle(*shape, *k, b)?;
            if closed != pieri {
                return Err(mismatch(
                    format!("G({}, P^{}) k={k} b={:?}", shape.r(), shape.d(), b.parts()),
                    closed,
                    pieri,
                ));
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>>>()?;
    Ok(cases.len())
}

/// `N = ∫ ζ^g` by iterated Pieri, for triples whose Grassmannian has
/// dimension at most `max_dim`.
pub fn castelnuovo_sweep(triples: &[GrdParams], max_dim: u64) -> Result<(usize, Vec<String>)> {
    let mut skipped = Vec::new();
    let mut kept = Vec::new();
    for t in triples {
        let dim = u64::from(t.r + 1) * u64::from(t.d - t.r);
        if dim > max_dim {
            skipped.push(format!("{t}: dim G = {dim} > {max_dim}"));
        } else {
            kept.push(*t);
        }
    }
    let n = over_triples(&kept, |t| {
        let shape = GrassShape::new(t.r, t.d)?;
        let pieri = zeta_power_integral_oracle(shape, t.g, &BoxPartition::zero(shape))?;
        let closed = t.n()?;
        if pieri != closed {
            return Err(mismatch(format!("{t} N"), closed, pieri));
        }
        Ok(())
    })?;
    Ok((n, skipped))
}

fn weierstrass_applicable(t: &GrdParams) -> Option<String> {
    if t.g < 3 {
        Some(format!("{t}: g < 3"))
    } else if t.d < t.r + 3 {
        Some(format!("{t}: d - r < 3"))
    } else {
        None
    }
}

fn split_weierstrass(triples: &[GrdParams]) -> (Vec<GrdParams>, Vec<String>) {
    let mut kept = Vec::new();
    let mut skipped = Vec::new();
    for t in triples {
        match weierstrass_applicable(t) {
            Some(reason) => skipped.push(reason),
            None => kept.push(*t),
        }
    }
    (kept, skipped)
}

/// Weierstrass-fibre integrals: closed form, closed Schubert formula and
/// Pieri oracle all agree.
pub fn weierstrass_sweep(triples: &[GrdParams]) -> Result<(usize, Vec<String>)> {
    let (kept, skipped) = split_weierstrass(triples);
    let n = over_triples(&kept, |t| {
        let a = weierstrass_alpha(t)?;
        let a_pieri = weierstrass_alpha_schubert(t, IntegralRoute::Pieri)?;
        if a != a_pieri {
            return Err(mismatch(format!("{t} Weierstrass alpha (Pieri)"), a, a_pieri));
        }
        let c = weierstrass_gamma(t)?;
        let c_pieri = weierstrass_gamma_schubert(t, IntegralRoute::Pieri)?;
        if c != c_pieri {
            return Err(mismatch(format!("{t} Weierstrass gamma (Pieri)"), c, c_pieri));
        }
        Ok(())
    })?;
    Ok((n, skipped))
}

/// `η_*` over `M̃_{2,1}` rebuilt from sheets and Weierstrass fibres.
pub fn reconstruction_sweep(triples: &[GrdParams]) -> Result<(usize, Vec<String>)> {
    let (kept, skipped) = split_weierstrass(triples);
    let n = over_triples(&kept, |t| {
        for label in ClassLabel::ALL {
            let direct = reduce_m21(&eta_push_m21(t, label)?)?;
            let rebuilt = reconstruct_m21(t, label)?;
            if direct != rebuilt {
                return Err(mismatch(format!("{t} {label} on M_(2,1)"), rebuilt, direct));
            }
        }
        Ok(())
    })?;
    Ok((n, skipped))
}

/// Family-assembled push-forwards equal the closed forms, for all triples
/// with `g ≥ 5`.
pub fn assembly_sweep(triples: &[GrdParams]) -> Result<(usize, Vec<String>)> {
    let (kept, skipped): (Vec<GrdParams>, Vec<GrdParams>) = triples.iter().partition(|t| t.g >= 5);
    let n = over_triples(&kept, |t| {
        for label in ClassLabel::ALL {
            check_assembly(t, label)?;
        }
        Ok(())
    })?;
    Ok((n, skipped.iter().map(|t| format!("{t}: g < 5")).collect()))
}

/// ε-matrix non-singular and `i^*(δ_1 + δ_{g−1}) = Σ i(i−g)/(g−1) ε_i` for
/// `g = g_min..=g_max`.
pub fn picard_sweep(g_min: u32, g_max: u32) -> Result<usize> {
    for g in g_min.max(5)..=g_max {
        let det = epsilon_matrix(g)?.determinant()?;
        if det.is_zero() {
            return Err(Error::Mismatch(format!("epsilon matrix singular for g = {g}")));
        }
        let gg = i64::from(g);
        let lhs = pullback_i(
            g,
            &DivisorClass::from_ints(PicSpace::Mg1(g), &[(Symbol::Delta(1), 1), (Symbol::Delta(g - 1), 1)]),
        )?;
        let rhs = DivisorClass::from_terms(
            PicSpace::M0g(g),
            (2..=gg - 2).map(|i| (Symbol::Epsilon(i as u32), Rational::ratio(i * (i - gg), gg - 1))),
        )?;
        if lhs != rhs {
            return Err(mismatch(format!("g = {g} boundary pullback"), lhs, rhs));
        }
    }
    Ok(g_max.saturating_sub(g_min.max(5)) as usize + 1)
}

/// Pointwise gap identity for `m = 1..=m_max`, the symbolic identity, and
/// `gap(1) = 0`.
pub fn m_family_sweep(m_max: u32) -> Result<usize> {
    if !m_family_gap_identity(m_max)? {
        let printed = printed_gap_function();
        for m in 1..=m_max {
            let gap = m_family(m)?.gap;
            let want = printed.eval(&Rational::from(m))?;
            if gap != want {
                return Err(mismatch(format!("m = {m} gap"), gap, want));
            }
        }
    }
    let symbolic = symbolic_m_family_gap()?;
    if !ratfunc_equal(&symbolic, &printed_gap_function()) {
        return Err(mismatch("symbolic m-family gap", symbolic, printed_gap_function()));
    }
    if m_max >= 1 && !m_family(1)?.gap.is_zero() {
        return Err(Error::Mismatch("gap at m = 1 is not zero".into()));
    }
    Ok(m_max as usize)
}

/// Runs every check with triples `g ≤ g_max` and m-family `m ≤ m_max`.
pub fn run_all(g_max: u32, m_max: u32) -> Result<Vec<CheckOutcome>> {
    if g_max < 5 {
        return Err(Error::precondition(format!("verify needs g_max >= 5, got {g_max}")));
    }
    let triples = enumerate_rho_zero(g_max);
    let no_skips = |r: Result<usize>| r.map(|n| (n, Vec::new()));
    Ok(vec![
        CheckOutcome::from_result("schubert-oracle", no_skips(schubert_oracle_sweep(30, 6))),
        CheckOutcome::from_result("castelnuovo-number", castelnuovo_sweep(&triples, 130)),
        CheckOutcome::from_result("weierstrass-integrals", weierstrass_sweep(&triples)),
        CheckOutcome::from_result("genus-2-reconstruction", reconstruction_sweep(&triples)),
        CheckOutcome::from_result("family-assembly", assembly_sweep(&triples)),
        CheckOutcome::from_result("epsilon-matrix", no_skips(picard_sweep(5, g_max.max(30)))),
        CheckOutcome::from_result("m-family-gap", no_skips(m_family_sweep(m_max))),
    ])
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

/// Coefficient map keyed by symbol name; zero coefficients are omitted.
pub fn class_json(c: &DivisorClass) -> Value {
    Value::Object(c.to_named().into_iter().map(|(k, v)| (k, Value::String(v))).collect())
}

/// Coefficient map over the whole basis, zeros included.
pub fn full_class_json(c: &DivisorClass) -> Value {
    Value::Object(
        c.space()
            .basis()
            .into_iter()
            .map(|s| (s.to_string(), rational_json(&c.coeff(s))))
            .collect(),
    )
}

pub fn slope_json(s: &SlopeReport) -> Value {
    json!({
        "g": s.g,
        "r": s.r,
        "d": s.d,
        "lambda": rational_json(&s.lambda_coeff),
        "delta0": rational_json(&s.delta0_coeff),
        "ratio": rational_json(&s.ratio),
        "bound": rational_json(&s.bound),
        "gap": rational_json(&s.gap),
        "violates": s.violates,
        "conjectural": s.conjectural,
    })
}

fn triple_key(t: &GrdParams) -> String {
    format!("{},{},{}", t.g, t.r, t.d)
}

/// Deterministic record of the sweep's computed values, for golden-file
/// regression.
pub fn golden_document(g_max: u32, m_max: u32) -> Result<Value> {
    let triples = enumerate_rho_zero(g_max);
    let mut invariants = Map::new();
    let mut push = Map::new();
    for t in &triples {
        let mut inv = Map::new();
        inv.insert("N".into(), rational_json(&t.n()?));
        inv.insert("xi".into(), rational_json(&t.xi()?));
        invariants.insert(triple_key(t), Value::Object(inv));
        if t.g >= 3 {
            let mut by_label = Map::new();
            for label in ClassLabel::ALL {
                by_label.insert(label.to_string(), full_class_json(&eta_closed_form(t, label)?));
            }
            push.insert(triple_key(t), Value::Object(by_label));
        }
    }
    let mut slopes = Map::new();
    for m in 1..=m_max {
        slopes.insert(m.to_string(), slope_json(&m_family(m)?));
    }
    Ok(json!({
        "g_max": g_max,
        "m_max": m_max,
        "invariants": invariants,
        "pushforward": push,
        "m_family": slopes,
    }))
}

/// First path at which two JSON documents differ.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    fn go(a: &Value, b: &Value, path: &str) -> Option<String> {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                for (k, v) in x {
                    let p = format!("{path}/{k}");
                    match y.get(k) {
                        Some(w) => {
                            if let Some(d) = go(v, w, &p) {
                                return Some(d);
                            }
                        }
                        None => return Some(format!("{p}: missing on one side")),
                    }
                }
                y.keys()
                    .find(|k| !x.contains_key(*k))
                    .map(|k| format!("{path}/{k}: missing on one side"))
            }
            _ if a == b => None,
            _ => Some(format!("{path}: {a} != {b}")),
        }
    }
    go(a, b, "")
}
