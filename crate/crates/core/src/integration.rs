//! Right inverses of ∂ψ, ∂q and ∂R on the truncated space.
//!
//! The Jackson integral `(1−q) z Σ_k φ(q^k z) q^k` is summed in closed form:
//! on `x^n` the geometric series gives `x^{n+1}(1−q)/(1−q^{n+1})`. The
//! partial sums are kept as an oracle.

use crate::error::{Error, Result};
use crate::operators::{dilation, x_hat};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::{PsiSequence, RationalFunction};
use crate::scalar::Scalar;

fn check_room(p: &Poly) -> Result<()> {
    let cap = p.cap();
    if p.degree() >= cap as isize {
        return Err(Error::CapExceeded {
            requested: p.degree() as usize + 1,
            limit: cap,
        });
    }
    Ok(())
}

/// `x^n ↦ w(n) x^{n+1}` on the nonzero terms of `p`.
fn raise_with(p: &Poly, w: impl Fn(usize) -> Result<Scalar>) -> Result<Poly> {
    check_room(p)?;
    let mut out = Poly::zero(p.cap());
    for (n, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.set_coeff(n + 1, c * w(n)?)?;
        }
    }
    Ok(out)
}

/// `∫ψ x^n = x^{n+1}/(n+1)ψ`.
pub fn psi_integral(psi: &PsiSequence, p: &Poly) -> Result<Poly> {
    if p.cap() != psi.cap() {
        return Err(Error::CapMismatch {
            left: psi.cap(),
            right: p.cap(),
        });
    }
    raise_with(p, |n| Ok(psi.n(n + 1).recip().expect("nψ ≠ 0")))
}

/// `∫q x^n = x^{n+1}(1−q)/(1−q^{n+1})`.
pub fn q_integral(q: &Scalar, p: &Poly) -> Result<Poly> {
    let one_minus_q = Scalar::one() - q;
    raise_with(p, |n| {
        let denom = Scalar::one() - q.pow(n as u32 + 1);
        if denom.is_zero() {
            return Err(Error::RootOfUnity { power: n + 1 });
        }
        Ok(&one_minus_q / denom)
    })
}

/// `(1−q) x̂ (1 − qQ̂)^{−1}` as a matrix, with `(1 − qQ̂)^{−1}` the inverse of
/// the diagonal `x^n ↦ (1 − q^{n+1}) x^n`.
pub fn q_integral_operator(q: &Scalar, cap: usize) -> Result<OpMatrix> {
    let shifted = OpMatrix::identity(cap).checked_sub(&dilation(q, cap).scale(q))?;
    let mut inv = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let d = shifted.entry(n, n);
        inv.push(d.recip().ok_or(Error::RootOfUnity { power: n + 1 })?);
    }
    let inverse = OpMatrix::diagonal(cap, |n| inv[n].clone());
    Ok(x_hat(cap).compose(&inverse)?.scale(&(Scalar::one() - q)))
}

/// `(1−q) z Σ_{k<terms} φ(q^k z) q^k`.
pub fn jackson_partial_sum(q: &Scalar, p: &Poly, terms: usize) -> Result<Poly> {
    check_room(p)?;
    let mut acc = Poly::zero(p.cap());
    let mut qk = Scalar::one();
    for _ in 0..terms {
        acc = &acc + &p.dilate(&qk).scale(&qk);
        qk = qk * q;
    }
    Ok(x_hat(p.cap()).apply(&acc)?.scale(&(Scalar::one() - q)))
}

/// Largest coefficient gap between the partial sums and the closed form, per
/// number of terms.
pub fn jackson_convergence(q: &Scalar, p: &Poly, terms: &[usize]) -> Result<Vec<Scalar>> {
    let exact = q_integral(q, p)?;
    terms
        .iter()
        .map(|&k| {
            let diff = &jackson_partial_sum(q, p, k)? - &exact;
            Ok(diff.coeffs().iter().map(Scalar::abs).max().unwrap_or_else(Scalar::zero))
        })
        .collect()
}

/// `∫R x^n = x^{n+1}/R(q^{n+1})`.
pub fn r_integral(r: &RationalFunction, q: &Scalar, p: &Poly) -> Result<Poly> {
    raise_with(p, |n| {
        let at = q.pow(n as u32 + 1);
        r.eval(&at)
            .and_then(|v| v.recip())
            .ok_or_else(|| Error::ZeroDenominator(format!("R(q^{})", n + 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{d_psi, d_q, d_r};
    use crate::psi::Preset;
    use crate::scalar::rat;

    #[test]
    fn examples() {
        let x2 = Poly::monomial(2, 8).unwrap();
        assert_eq!(
            psi_integral(&PsiSequence::classical(8), &x2).unwrap(),
            Poly::term(rat(1, 3), 3, 8).unwrap()
        );
        assert_eq!(
            psi_integral(&PsiSequence::dxd(8), &x2).unwrap(),
            Poly::term(rat(1, 9), 3, 8).unwrap()
        );
        assert!(psi_integral(&PsiSequence::dxd(8), &Poly::zero(8)).unwrap().is_zero());
        let x = Poly::monomial(1, 8).unwrap();
        assert_eq!(q_integral(&rat(1, 2), &x).unwrap(), Poly::term(rat(2, 3), 2, 8).unwrap());
        assert_eq!(q_integral(&rat(1, 2), &Poly::one(8)).unwrap(), x);
        let r = RationalFunction::new(vec![Scalar::zero(), Scalar::one()], vec![Scalar::one()]);
        assert_eq!(
            r_integral(&r, &Scalar::int(2), &x2).unwrap(),
            Poly::term(rat(1, 8), 3, 8).unwrap()
        );
    }

    #[test]
    fn right_inverses() {
        let cap = 10;
        let q = rat(1, 3);
        let psi = PsiSequence::dxd(cap);
        let dq = d_q(&q, cap).unwrap();
        let r = RationalFunction::new(vec![Scalar::one(), Scalar::int(2)], vec![Scalar::int(3)]);
        let dr = d_r(&r, &q, cap).unwrap();
        for n in 0..cap {
            let m = Poly::monomial(n, cap).unwrap();
            assert_eq!(d_psi(&psi).apply(&psi_integral(&psi, &m).unwrap()).unwrap(), m);
            assert_eq!(dq.apply(&q_integral(&q, &m).unwrap()).unwrap(), m);
            assert_eq!(dr.apply(&r_integral(&r, &q, &m).unwrap()).unwrap(), m);
        }
        let p = Poly::from_ints(&[0, 3, -1, 2], cap).unwrap();
        assert_eq!(q_integral(&q, &dq.apply(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn oracles_and_specializations() {
        let cap = 8;
        let q = rat(2, 3);
        let op = q_integral_operator(&q, cap).unwrap();
        let jackson = PsiSequence::q_jackson(q.clone(), cap).unwrap();
        let rq = RationalFunction::q_integer(&q);
        let custom_r = PsiSequence::make(&Preset::CustomR(rq.clone(), q.clone()), cap).unwrap();
        for n in 0..cap {
            let m = Poly::monomial(n, cap).unwrap();
            let closed = q_integral(&q, &m).unwrap();
            assert_eq!(op.apply(&m).unwrap(), closed);
            assert_eq!(psi_integral(&jackson, &m).unwrap(), closed);
            assert_eq!(r_integral(&rq, &q, &m).unwrap(), closed);
            assert_eq!(psi_integral(&custom_r, &m).unwrap(), closed);
        }
        let unit = RationalFunction::one();
        assert_eq!(
            r_integral(&unit, &q, &Poly::monomial(3, cap).unwrap()).unwrap(),
            Poly::monomial(4, cap).unwrap()
        );
    }

    #[test]
    fn jackson_sums_converge() {
        let p = Poly::from_ints(&[1, 1, 1], 8).unwrap();
        let gaps = jackson_convergence(&rat(1, 2), &p, &[1, 2, 4, 8, 16]).unwrap();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(gaps[4] < rat(1, 10000));
    }

    #[test]
    fn errors() {
        let x = Poly::monomial(1, 4).unwrap();
        assert_eq!(q_integral(&Scalar::int(-1), &x), Err(Error::RootOfUnity { power: 2 }));
        assert!(q_integral(&Scalar::int(-1), &Poly::one(4)).is_ok());
        assert!(matches!(
            psi_integral(&PsiSequence::classical(4), &Poly::monomial(4, 4).unwrap()),
            Err(Error::CapExceeded { .. })
        ));
        let r = RationalFunction::new(vec![Scalar::int(-4), Scalar::one()], vec![Scalar::one()]);
        assert!(matches!(
            r_integral(&r, &Scalar::int(2), &x),
            Err(Error::ZeroDenominator(_))
        ));
    }
}
