use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use assert_cmd::Command;
use grd_core::exact::Rational;
use grd_core::families::{m21_push_product, ClassLabel, UnivCurveClass};
use grd_core::invariants::{enumerate_rho_zero, GrdParams};
use grd_core::picard::{pullback_i, pullback_j, pullback_k, reduce_m21, DivisorClass, PicSpace, Symbol};
use grd_core::pushforward::{check_assembly, eta_closed_form_with_n};
use grd_core::schubert::{zeta_power_integral_oracle, BoxPartition, GrassShape};
use grd_core::slope::{m_family, m_family_gap_identity};
use grd_core::verify::{castelnuovo_sweep, picard_sweep, reconstruction_sweep, schubert_oracle_sweep};
use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(v: &Value) -> Result<Rational, String> {
    v.as_str()
        .ok_or_else(|| format!("expected string, got {v}"))?
        .parse()
        .map_err(|e| format!("{e}"))
}

fn grd_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::cargo_bin("grd")
        .map_err(|e| e.to_string())?
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "grd {args:?} exited {:?}", out.status.code());
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn genus_21_counterexample() -> Outcome {
    let v = grd_json(&["slope", "--g", "21", "--r", "6", "--d", "24"])?;
    let (lambda, delta0, ratio) = (q(&v["lambda"])?, q(&v["delta0"])?, q(&v["ratio"])?);
    ensure!(
        &lambda * &Rational::from(377) == -(&delta0 * &Rational::from(2459)),
        "lambda : delta0 = {lambda} : {delta0}"
    );
    ensure!(lambda == Rational::ratio(2459, 95), "lambda/N = {lambda}");
    ensure!(ratio == Rational::ratio(2459, 377), "ratio {ratio}");
    ensure!(ratio < Rational::ratio(72, 11), "ratio {ratio} not below 72/11");
    ensure!(v["violates"] == true, "violates flag unset");
    Ok(format!("[E] ~ 2459 lambda - 377 delta_0, ratio {ratio} < 72/11"))
}

fn genus_10_cross_check() -> Outcome {
    let v = grd_json(&["slope", "--m", "2"])?;
    ensure!(
        (v["g"].clone(), v["r"].clone(), v["d"].clone()) == (10.into(), 4.into(), 12.into()),
        "triple {v}"
    );
    let ratio = q(&v["ratio"])?;
    ensure!(ratio == Rational::from(7), "ratio {ratio}");
    Ok("m = 2 gives (10,4,12), ratio 7".into())
}

fn m_family_identity() -> Outcome {
    ensure!(
        m_family_gap_identity(15).map_err(|e| e.to_string())?,
        "gap identity fails for some m <= 15"
    );
    let gap1 = m_family(1).map_err(|e| e.to_string())?.gap;
    ensure!(gap1.is_zero(), "gap(1) = {gap1}");
    Ok("printed gap function matches at m = 1..15, gap(1) = 0".into())
}

fn theorem_assembly() -> Outcome {
    let triples: Vec<GrdParams> = enumerate_rho_zero(12)
        .into_iter()
        .filter(|t| t.g >= 5 && t.d >= t.r + 3)
        .collect();
    for t in &triples {
        for label in ClassLabel::ALL {
            check_assembly(t, label).map_err(|e| format!("{t} {label}: {e}"))?;
        }
    }
    ensure!(triples.len() >= 10, "only {} triples", triples.len());
    Ok(format!(
        "{} triples x 3 classes, unique consistent solutions",
        triples.len()
    ))
}

fn schubert_oracle() -> Outcome {
    let cases = schubert_oracle_sweep(30, 6).map_err(|e| e.to_string())?;
    let triples = enumerate_rho_zero(12);
    let (checked, skipped) = castelnuovo_sweep(&triples, u64::MAX).map_err(|e| e.to_string())?;
    ensure!(
        skipped.is_empty() && checked == triples.len(),
        "castelnuovo sweep skipped {skipped:?}"
    );
    let big = GrdParams::rho_zero(21, 6, 24).map_err(|e| e.to_string())?;
    let shape = GrassShape::new(6, 24).map_err(|e| e.to_string())?;
    let pieri = zeta_power_integral_oracle(shape, 21, &BoxPartition::zero(shape)).map_err(|e| e.to_string())?;
    let closed = big.n().map_err(|e| e.to_string())?;
    ensure!(pieri == closed, "N(21,6,24): Pieri {pieri} != formula {closed}");
    ensure!(closed == Rational::from(1_385_670), "N(21,6,24) = {closed}");
    Ok(format!(
        "{cases} (shape, b, k) cases, {checked} triples with N = int zeta^g, N(21,6,24) = {closed}"
    ))
}

fn genus_two_engine() -> Outcome {
    let l = UnivCurveClass::line_bundle_a2();
    let want = DivisorClass::from_ints(
        PicSpace::M21,
        &[(Symbol::Lambda, 12), (Symbol::Delta(0), -1), (Symbol::Psi, -8)],
    );
    let alpha = m21_push_product(&l, &l);
    ensure!(alpha == want, "alpha sheet {alpha}");
    let beta = m21_push_product(&l, &UnivCurveClass::dualizing_attached());
    ensure!(beta == want, "beta sheet {beta}");
    let triples = enumerate_rho_zero(12);
    let (n, skipped) = reconstruction_sweep(&triples).map_err(|e| e.to_string())?;
    ensure!(n > 0, "nothing reconstructed");
    Ok(format!(
        "12 lambda - delta_0 - 8 psi for alpha and beta, {n} triples rebuilt ({} outside d - r >= 3)",
        skipped.len()
    ))
}

fn picard_checks() -> Outcome {
    let n = picard_sweep(5, 30).map_err(|e| e.to_string())?;
    Ok(format!(
        "epsilon matrix non-singular and boundary pullback identity for {n} genera"
    ))
}

fn property_suite() -> Outcome {
    const CASES: u32 = 1200;
    let rat = || (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Rational::ratio(n, d));
    let class = move |space: PicSpace| {
        let basis = space.basis();
        prop::collection::vec(rat(), basis.len())
            .prop_map(move |cs| DivisorClass::from_terms(space, basis.iter().copied().zip(cs)).unwrap())
    };
    let triples: Vec<GrdParams> = enumerate_rho_zero(12).into_iter().filter(|t| t.g >= 5).collect();
    let strategy = select(triples).prop_flat_map(move |t| {
        (
            Just(t),
            class(PicSpace::Mg1(t.g)),
            class(PicSpace::Mg1(t.g)),
            class(PicSpace::M21),
            rat(),
            rat().prop_filter("non-zero", |n| !n.is_zero()),
            select(ClassLabel::ALL.to_vec()),
        )
    });
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |(t, x, y, z, s, n, label)| {
            let g = t.g;
            // Linearity of the three pullbacks.
            let combo = &x.scale(&s) + &y;
            prop_assert_eq!(
                pullback_i(g, &combo).unwrap(),
                &pullback_i(g, &x).unwrap().scale(&s) + &pullback_i(g, &y).unwrap()
            );
            prop_assert_eq!(
                pullback_j(g, &combo).unwrap(),
                &pullback_j(g, &x).unwrap().scale(&s) + &pullback_j(g, &y).unwrap()
            );
            prop_assert_eq!(
                pullback_k(g, 1, &combo).unwrap(),
                &s * &pullback_k(g, 1, &x).unwrap() + pullback_k(g, 1, &y).unwrap()
            );
            // Idempotence of the genus-2 reduction.
            let once = reduce_m21(&z).unwrap();
            prop_assert_eq!(reduce_m21(&once).unwrap(), once);
            // Homogeneity in N.
            let unit = eta_closed_form_with_n(&t, label, &Rational::one()).unwrap();
            prop_assert_eq!(eta_closed_form_with_n(&t, label, &n).unwrap(), unit.scale(&n));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "{CASES} randomized cases: linearity, idempotence, N-homogeneity"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            1,
            "genus-21 counterexample",
            Duration::from_secs(1),
            genus_21_counterexample,
        ),
        (2, "genus-10 cross-check", Duration::from_secs(1), genus_10_cross_check),
        (3, "m-family identity", Duration::from_secs(10), m_family_identity),
        (4, "theorem assembly", Duration::from_secs(60), theorem_assembly),
        (5, "Schubert oracle", Duration::from_secs(300), schubert_oracle),
        (6, "genus-2 engine", Duration::from_secs(5), genus_two_engine),
        (7, "Picard checks", Duration::from_secs(5), picard_checks),
        (8, "property suite", Duration::from_secs(30), property_suite),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > limit {
                Err(format!("took {elapsed:.2?}, limit {limit:?}; {detail}"))
            } else {
                Ok(detail)
            }
        });
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        writeln!(
            out,
            "{status} criterion {id} ({name}, {:.2}s): {detail}",
            elapsed.as_secs_f64()
        )
        .unwrap();
        if result.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
