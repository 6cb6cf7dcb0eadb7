//! Derived values checked against closed forms computed independently of
//! the library's own tables.

use psicalc::operators::{d_psi, x_hat_psi};
use psicalc::special::exp_psi;
use psicalc::star::poisson_build;
use psicalc::umbral::{basic_sequence, translate_monomial, DeltaSeries, Route};
use psicalc::{rat, Poly, PsiSequence, Scalar};

const CAP: usize = 10;

fn linear(c0: Scalar, c1: Scalar) -> Poly {
    Poly::from_coeffs(vec![c0, c1], CAP).unwrap()
}

fn product(factors: impl IntoIterator<Item = Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(CAP), |acc, f| acc.checked_mul(&f).unwrap())
}

fn q_integer(q: &Scalar, n: usize) -> Scalar {
    (0..n).map(|k| q.pow(k as u32)).sum()
}

#[test]
fn gaussian_binomials() {
    let q = rat(1, 2);
    let psi = PsiSequence::q_jackson(q.clone(), CAP).unwrap();
    // [4 choose 2]_q = (1 − q^4)(1 − q^3) / ((1 − q)(1 − q^2))
    let one = Scalar::one();
    let direct = (one.clone() - q.pow(4)) * (one.clone() - q.pow(3)) / ((one.clone() - q.clone()) * (one - q.pow(2)));
    assert_eq!(direct, rat(35, 16));
    assert_eq!(psi.psi_binomial(4, 2).unwrap(), direct);
    for n in 1..=CAP {
        assert_eq!(*psi.n(n), q_integer(&q, n));
    }
}

#[test]
fn dxd_binomials_are_squares() {
    let psi = PsiSequence::dxd(CAP);
    for n in 0..=CAP {
        for k in 0..=n {
            let b = Scalar::binomial(n, k);
            assert_eq!(psi.psi_binomial(n, k).unwrap(), b.clone() * b);
        }
    }
}

#[test]
fn abel_polynomials() {
    // Q = D E^a has basic sequence x (x − a n)^{n−1}.
    let psi = PsiSequence::classical(CAP);
    let a = rat(-2, 3);
    let coeffs: Vec<Scalar> = std::iter::once(Scalar::zero())
        .chain((0..CAP).map(|k| a.pow(k as u32) / Scalar::factorial(k)))
        .collect();
    let q = DeltaSeries::new(psi, coeffs).unwrap();
    let basic = basic_sequence(&q, CAP - 1, Route::Lagrange1).unwrap();
    for n in 1..CAP {
        let shift = -(a.clone() * Scalar::int(n as i64));
        let expected = product(
            std::iter::once(linear(Scalar::zero(), Scalar::one()))
                .chain((1..n).map(|_| linear(shift.clone(), Scalar::one()))),
        );
        assert_eq!(*basic.poly(n), expected, "n = {n}");
    }
}

#[test]
fn backward_difference_gives_rising_factorials() {
    // ∇ = 1 − E^{−1} = Σ_{k>=1} (−1)^{k+1} D^k / k!
    let psi = PsiSequence::classical(CAP);
    let coeffs: Vec<Scalar> = std::iter::once(Scalar::zero())
        .chain((1..=CAP).map(|k| Scalar::int(if k % 2 == 1 { 1 } else { -1 }) / Scalar::factorial(k)))
        .collect();
    let q = DeltaSeries::new(psi, coeffs).unwrap();
    for route in Route::ALL {
        let basic = basic_sequence(&q, 8, route).unwrap();
        for n in 0..=8 {
            let expected = product((0..n).map(|k| linear(Scalar::int(k as i64), Scalar::one())));
            assert_eq!(*basic.poly(n), expected, "{} n = {n}", route.name());
        }
    }
}

#[test]
fn q_exponential_coefficients() {
    let q = rat(1, 3);
    let psi = PsiSequence::q_jackson(q.clone(), CAP).unwrap();
    let e = exp_psi(&psi, CAP).unwrap();
    let mut fact = Scalar::one();
    for n in 0..=CAP {
        if n > 0 {
            fact = fact * q_integer(&q, n);
        }
        assert_eq!(e.coeffs[n], fact.recip().unwrap());
    }
}

#[test]
fn classical_translation_is_taylor_shift() {
    let psi = PsiSequence::classical(CAP);
    let y = rat(-3, 4);
    for n in 0..=CAP {
        let expected = product((0..n).map(|_| linear(y.clone(), Scalar::one())));
        assert_eq!(translate_monomial(&psi, &y, n).unwrap(), expected);
    }
}

#[test]
fn classical_poisson_components() {
    // p_m = (λx)^m/m! e^{−λx}: [x^k] p_m = λ^m/m! · (−λ)^{k−m}/(k−m)!.
    let psi = PsiSequence::classical(CAP);
    let lam = rat(1, 2);
    let (m_max, order) = (3, 6);
    let model = poisson_build(&psi, &lam, m_max, order).unwrap();
    for m in 0..=m_max {
        for k in m..=m + order {
            let expected = lam.pow(m as u32) / Scalar::factorial(m) * (-lam.clone()).pow((k - m) as u32)
                / Scalar::factorial(k - m);
            assert_eq!(model.components[m].coeff(k), expected, "m = {m}, k = {k}");
        }
    }
}

#[test]
fn weyl_normal_ordering_uses_ordinary_binomials() {
    // ∂ψ^n x̂ψ^m = Σ_k C(n,k) m!/(m−k)! x̂ψ^{m−k} ∂ψ^{n−k} on degrees where all terms are exact.
    let psi = PsiSequence::dxd(CAP);
    let (d, x) = (d_psi(&psi), x_hat_psi(&psi));
    let (n, m) = (2, 3);
    let lhs = d.pow(n).compose(&x.pow(m)).unwrap();
    let mut rhs = x.pow(m).compose(&d.pow(n)).unwrap();
    for k in 1..=n.min(m) {
        let w = Scalar::binomial(n, k) * Scalar::factorial(m) / Scalar::factorial(m - k);
        let term = x.pow(m - k).compose(&d.pow(n - k)).unwrap().scale(&w);
        rhs = rhs.checked_add(&term).unwrap();
    }
    assert!(lhs.agrees_on(&rhs, CAP - m));
}
