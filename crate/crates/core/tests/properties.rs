use proptest::prelude::*;

use psicalc::expansion::{expand_in_Q, BasisMode};
use psicalc::integration::psi_integral;
use psicalc::operators::{d_psi, pincherle};
use psicalc::random::{self, TrialRng};
use psicalc::star::star;
use psicalc::umbral::{
    basic_sequence, recognize_delta, translate_poly, BasicSequence, DeltaSeries, Route,
};
use psicalc::{rat, OpMatrix, Poly, PsiSequence, Scalar};

const CAP: usize = 8;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| rat(a, b))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 1..=max_degree + 1).prop_map(|c| Poly::from_coeffs(c, CAP).unwrap())
}

fn preset() -> impl Strategy<Value = PsiSequence> {
    (0usize..6).prop_map(|i| match i {
        0 => PsiSequence::classical(CAP),
        1 => PsiSequence::ones(CAP),
        2 => PsiSequence::dxd(CAP),
        3 => PsiSequence::q_jackson(rat(1, 2), CAP).unwrap(),
        4 => PsiSequence::q_jackson(rat(1, 3), CAP).unwrap(),
        _ => PsiSequence::q_jackson(rat(2, 3), CAP).unwrap(),
    })
}

fn rng(seed: u64) -> TrialRng {
    random::rng(seed)
}

proptest! {
    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if let Some(inv) = a.recip() {
            prop_assert_eq!(a.clone() * inv, Scalar::one());
        }
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&text).unwrap(), a);
    }

    #[test]
    fn poly_product_is_commutative_and_evaluates(f in poly(4), g in poly(4), x in scalar()) {
        let fg = f.checked_mul(&g).unwrap();
        prop_assert_eq!(&fg, &g.checked_mul(&f).unwrap());
        prop_assert_eq!(fg.eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!(fg.derivative(), &f.derivative().checked_mul(&g).unwrap() + &f.checked_mul(&g.derivative()).unwrap());
    }

    #[test]
    fn compose_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random::operator(&mut r, CAP, 0), random::operator(&mut r, CAP, 0), random::operator(&mut r, CAP, 0));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn apply_is_linear(seed in any::<u64>(), f in poly(CAP), g in poly(CAP), k in scalar()) {
        let t = random::operator(&mut rng(seed), CAP, 0);
        let lhs = t.apply(&(&f + &g.scale(&k))).unwrap();
        let rhs = &t.apply(&f).unwrap() + &t.apply(&g).unwrap().scale(&k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_algebra(psi in preset(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::invertible_series(&mut r, &psi, CAP);
        let b = random::delta_series(&mut r, &psi, CAP);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let product = a.mul(&a.reciprocal().unwrap()).unwrap();
        let one = DeltaSeries::polynomial(psi.clone(), vec![Scalar::one()]).unwrap();
        prop_assert_eq!(product.coeffs(), one.coeffs());
        let id = b.compose(&b.comp_inverse().unwrap()).unwrap();
        let x = DeltaSeries::d_psi(&psi);
        prop_assert_eq!(id.coeffs(), x.coeffs());
        let m = a.mul(&b).unwrap().to_matrix();
        prop_assert_eq!(m, a.to_matrix().compose(&b.to_matrix()).unwrap());
    }

    #[test]
    fn pincherle_is_formal_derivative(psi in preset(), seed in any::<u64>()) {
        let s = random::invertible_series(&mut rng(seed), &psi, CAP);
        let p = pincherle(&s.to_matrix(), &psi).unwrap();
        prop_assert!(p.agrees_on(&s.formal_derivative().to_matrix(), p.valid()));
    }

    #[test]
    fn recognition_roundtrip(psi in preset(), seed in any::<u64>(), scale in nonzero()) {
        let s = random::delta_series(&mut rng(seed), &psi, CAP).scale(&scale);
        let r = recognize_delta(&s.to_matrix()).unwrap();
        prop_assert!(r.is_series);
        let back = r.to_series().unwrap();
        prop_assert_eq!(back.to_matrix(), s.to_matrix());
    }

    #[test]
    fn routes_agree_on_random_deltas(psi in preset(), seed in any::<u64>()) {
        let q = random::delta_series(&mut rng(seed), &psi, CAP);
        let routes: Vec<BasicSequence> =
            Route::ALL.iter().map(|&r| basic_sequence(&q, CAP - 1, r).unwrap()).collect();
        for b in &routes[1..] {
            prop_assert_eq!(&b.polys, &routes[0].polys);
        }
    }

    #[test]
    fn translation_by_zero_and_one_term(psi in preset(), f in poly(CAP)) {
        prop_assert_eq!(translate_poly(&psi, &Scalar::zero(), &f).unwrap(), f.clone());
        prop_assert_eq!(star(&psi, &Poly::one(CAP), &f).unwrap(), f);
    }

    #[test]
    fn psi_integral_is_right_inverse(psi in preset(), f in poly(CAP - 1)) {
        prop_assert_eq!(d_psi(&psi).apply(&psi_integral(&psi, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn psi_binomials_are_symmetric(psi in preset(), n in 0usize..=CAP, k in 0usize..=CAP) {
        prop_assume!(k <= n);
        prop_assert_eq!(psi.psi_binomial(n, k).unwrap(), psi.psi_binomial(n, n - k).unwrap());
    }

    #[test]
    fn json_roundtrips(psi in preset(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random::operator(&mut r, CAP, 1);
        let s = random::delta_series(&mut r, &psi, CAP);
        let b = basic_sequence(&s, 4, Route::Lagrange3).unwrap();
        let t_back: OpMatrix = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(t_back.columns(), t.columns());
        prop_assert_eq!(serde_json::from_str::<DeltaSeries>(&serde_json::to_string(&s).unwrap()).unwrap(), s);
        prop_assert_eq!(serde_json::from_str::<PsiSequence>(&serde_json::to_string(&psi).unwrap()).unwrap(), psi);
        let back: BasicSequence = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        prop_assert_eq!(back.polys, b.polys);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expansions_reconstruct(psi in preset(), seed in any::<u64>(), dual in any::<bool>()) {
        let mut r = rng(seed);
        let q = random::delta_series(&mut r, &psi, CAP);
        let t = random::operator(&mut r, CAP, 2);
        let basic = basic_sequence(&q, 6, Route::Rodrigues).unwrap();
        let mode = if dual { BasisMode::XHatQ } else { BasisMode::XHat };
        let e = expand_in_Q(&t, &q.to_matrix(), &psi, 6, mode, Some(&basic)).unwrap();
        prop_assert!(e.reconstructs(&t).unwrap());
    }
}
