use grd_core::exact::{Poly, RatFunc, Rational};
use grd_core::families::{m21_push_product, ClassLabel, UnivCurveClass};
use grd_core::invariants::{enumerate_rho_zero, GrdParams};
use grd_core::linalg::{solve_exact, Equation, Matrix};
use grd_core::picard::{pullback_i, pullback_j, pullback_k, reduce_m21, DivisorClass, PicSpace, Symbol};
use grd_core::pushforward::eta_closed_form_with_n;
use grd_core::schubert::{
    enumerate_partitions, pieri_multiply, special_power_integral, zeta_power_integral_oracle, GrassShape, SchubertCombo,
};
use grd_core::slope::slope_report;
use proptest::prelude::*;
use proptest::sample::select;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("non-zero", |q| !q.is_zero())
}

fn class_on(space: PicSpace) -> impl Strategy<Value = DivisorClass> {
    let basis = space.basis();
    prop::collection::vec(rational(), basis.len())
        .prop_map(move |cs| DivisorClass::from_terms(space, basis.iter().copied().zip(cs)).unwrap())
}

fn mg1_pair() -> impl Strategy<Value = (u32, DivisorClass, DivisorClass)> {
    (5u32..=14).prop_flat_map(|g| (Just(g), class_on(PicSpace::Mg1(g)), class_on(PicSpace::Mg1(g))))
}

fn univ_class() -> impl Strategy<Value = UnivCurveClass> {
    (rational(), rational(), rational(), class_on(PicSpace::M21))
        .prop_map(|(w, s, d, b)| UnivCurveClass::new(w, s, d, b).unwrap())
}

fn triple(min_g: u32) -> impl Strategy<Value = GrdParams> {
    select(
        enumerate_rho_zero(14)
            .into_iter()
            .filter(move |t| t.g >= min_g)
            .collect::<Vec<_>>(),
    )
}

fn label() -> impl Strategy<Value = ClassLabel> {
    select(ClassLabel::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in nonzero_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&c * &(&a + &b), &c * &a + &c * &b);
        prop_assert_eq!((&a / &c) * &c, a.clone());
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn pullbacks_are_linear((g, x, y) in mg1_pair(), s in rational(), t in rational(), h in 1u32..5) {
        let combo = &x.scale(&s) + &y.scale(&t);
        let lin = |f: &dyn Fn(&DivisorClass) -> DivisorClass| {
            (f(&combo), &f(&x).scale(&s) + &f(&y).scale(&t))
        };
        let (l, r) = lin(&|c| pullback_i(g, c).unwrap());
        prop_assert_eq!(l, r);
        let (l, r) = lin(&|c| pullback_j(g, c).unwrap());
        prop_assert_eq!(l, r);
        let k = |c: &DivisorClass| pullback_k(g, h, c).unwrap();
        prop_assert_eq!(k(&combo), &s * &k(&x) + &t * &k(&y));
    }

    #[test]
    fn m21_reduction_is_idempotent(x in class_on(PicSpace::M21)) {
        let once = reduce_m21(&x).unwrap();
        prop_assert!(once.coeff(Symbol::Delta(0)).is_zero());
        prop_assert_eq!(reduce_m21(&once).unwrap(), once.clone());
        let diff = &once - &x;
        let rel = grd_core::picard::m21_relation();
        prop_assert_eq!(diff.clone(), rel.scale(&diff.coeff(Symbol::Lambda).checked_div(&Rational::from(10)).unwrap()));
    }

    #[test]
    fn genus_two_product_bilinear_symmetric(x in univ_class(), y in univ_class(), z in univ_class(), s in rational()) {
        prop_assert_eq!(m21_push_product(&x, &y), m21_push_product(&y, &x));
        let sum = &x.scale(&s) + &z;
        prop_assert_eq!(
            m21_push_product(&sum, &y),
            &m21_push_product(&x, &y).scale(&s) + &m21_push_product(&z, &y)
        );
    }

    #[test]
    fn closed_forms_homogeneous_in_n(t in triple(3), l in label(), n in nonzero_rational()) {
        let one = eta_closed_form_with_n(&t, l, &Rational::one()).unwrap();
        prop_assert_eq!(eta_closed_form_with_n(&t, l, &n).unwrap(), one.scale(&n));
    }

    #[test]
    fn slope_ratio_independent_of_n(t in triple(3), n in nonzero_rational()) {
        let Ok(report) = slope_report(&t) else { return Ok(()); };
        let lam = DivisorClass::from_ints(PicSpace::Mg1(t.g), &[(Symbol::Lambda, 1)]);
        let r = Rational::from(i64::from(t.r) + 2);
        let e = [(2, ClassLabel::Alpha), (-1, ClassLabel::Beta)]
            .iter()
            .map(|&(c, l)| eta_closed_form_with_n(&t, l, &n).unwrap().scale(&c.into()))
            .fold(lam.scale(&n), |acc, c| &acc + &c);
        let e = &e - &eta_closed_form_with_n(&t, ClassLabel::Gamma, &n).unwrap().scale(&r);
        let ratio = e.coeff(Symbol::Lambda) / -e.coeff(Symbol::Delta(0));
        prop_assert_eq!(ratio, report.ratio);
    }

    #[test]
    fn schubert_formula_matches_pieri(r in 1u32..=4, w in 1u32..=5, pick in any::<prop::sample::Index>()) {
        let shape = GrassShape::new(r, r + w).unwrap();
        let parts = enumerate_partitions(shape, shape.dim());
        let b = pick.get(&parts);
        let rest = shape.dim() - b.codim();
        if rest.is_multiple_of(u64::from(r)) {
            let k = (rest / u64::from(r)) as u32;
            prop_assert_eq!(
                special_power_integral(shape, k, b).unwrap(),
                zeta_power_integral_oracle(shape, k, b).unwrap()
            );
        }
    }

    #[test]
    fn pieri_products_commute(r in 1u32..=3, w in 1u32..=4, p in 0u32..=4, q in 0u32..=4, pick in any::<prop::sample::Index>()) {
        let shape = GrassShape::new(r, r + w).unwrap();
        let (p, q) = (p.min(r + 1), q.min(r + 1));
        let parts = enumerate_partitions(shape, shape.dim());
        let c = SchubertCombo::single(shape, pick.get(&parts).clone()).unwrap();
        let pq = pieri_multiply(&pieri_multiply(&c, p).unwrap(), q).unwrap();
        let qp = pieri_multiply(&pieri_multiply(&c, q).unwrap(), p).unwrap();
        prop_assert_eq!(pq, qp);
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(
        a in prop::collection::vec(-9i64..=9, 1..5),
        b in prop::collection::vec(-9i64..=9, 1..5),
        x in rational(),
    ) {
        let f = RatFunc::new(Poly::from_ints(&a), Poly::from_ints(&[1, 0, 1])).unwrap();
        let g = RatFunc::from_poly(Poly::from_ints(&b));
        let sum = &f + &g;
        let prod = &f * &g;
        prop_assert_eq!(sum.eval(&x).unwrap(), f.eval(&x).unwrap() + g.eval(&x).unwrap());
        prop_assert_eq!(prod.eval(&x).unwrap(), f.eval(&x).unwrap() * g.eval(&x).unwrap());
    }

    #[test]
    fn solver_recovers_planted_solution(
        n in 1usize..=5,
        extra in 0usize..=3,
        seed in prop::collection::vec(-5i64..=5, 64),
        xs in prop::collection::vec(rational(), 5),
    ) {
        let rows = n + extra;
        let a: Vec<Vec<Rational>> = (0..rows)
            .map(|i| (0..n).map(|j| Rational::from(seed[(i * 8 + j) % 64] + i64::from(i == j) * 11)).collect())
            .collect();
        let m = Matrix::from_rows(a.clone()).unwrap();
        let names: Vec<String> = (0..n).map(|j| format!("x{j}")).collect();
        let eqs: Vec<Equation> = a
            .iter()
            .enumerate()
            .map(|(i, row)| Equation {
                label: format!("e{i}"),
                coeffs: row.clone(),
                rhs: row.iter().zip(&xs).map(|(c, x)| c * x).sum(),
            })
            .collect();
        match solve_exact(&names, &eqs) {
            Ok(sol) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(&sol[..], &xs[..n]);
            }
            Err(grd_core::Error::RankDeficient { .. }) => prop_assert!(m.rank() < n),
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }
}
