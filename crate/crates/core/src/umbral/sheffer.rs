//! Sheffer sequences `s_n = S^{−1} p_n`, the expansion of a shift-invariant
//! operator in powers of a delta series, and the eigen-series
//! `Φ(x;λ) = Σ λ^n p_n(x)/nψ!`.

use serde::Serialize;

use crate::biseries::BiSeries;
use crate::error::{Error, Result};
use crate::operators::shift_invariance;
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::{rat, Scalar};
use crate::umbral::basic::BasicSequence;
use crate::umbral::translate::{binomial_rhs, translation_operator};
use crate::umbral::DeltaSeries;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShefferPair {
    pub basic: BasicSequence,
    pub inv_op: DeltaSeries,
    pub sheffer: Vec<Poly>,
}

/// Translation samples used to certify a freshly built pair.
const SHEFFER_SAMPLES: [(i64, i64); 3] = [(1, 1), (-1, 1), (1, 2)];

impl ShefferPair {
    /// `E^y(∂ψ) s_n = Σ_k (n k)ψ s_k(x) p_{n−k}(y)` for every index.
    pub fn binomial_check(&self, y: &Scalar) -> Result<bool> {
        let psi = &self.basic.psi;
        let e = translation_operator(psi, y);
        for n in 0..self.sheffer.len() {
            let lhs = e.apply(&self.sheffer[n])?;
            if lhs != binomial_rhs(psi, &self.sheffer, &self.basic.polys, n, y) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `s_n = S^{−1} p_n`, checked against the Sheffer ψ-binomial identity.
pub fn sheffer_sequence(basic: &BasicSequence, s: &DeltaSeries) -> Result<ShefferPair> {
    if !basic.psi.same_values(s.psi()) {
        return Err(Error::PsiMismatch);
    }
    let m = basic.max_index();
    if s.order() < m {
        return Err(Error::CapExceeded {
            requested: m,
            limit: s.order(),
        });
    }
    let inv = s.reciprocal()?.to_matrix();
    let sheffer = basic
        .polys
        .iter()
        .map(|p| inv.apply(p))
        .collect::<Result<Vec<_>>>()?;
    let pair = ShefferPair {
        basic: basic.clone(),
        inv_op: s.clone(),
        sheffer,
    };
    for (a, b) in SHEFFER_SAMPLES {
        if !pair.binomial_check(&rat(a, b))? {
            return Err(Error::BasisMismatch(format!(
                "Sheffer identity fails at y = {a}/{b}; is the basic sequence of a delta series?"
            )));
        }
    }
    Ok(pair)
}

/// Coefficients `a_n = [T p_n](0)/nψ!` of `T = Σ a_n Q^n`, as a series in the
/// variable `Q`. `T` must commute with ∂ψ and `basic` must come from a delta
/// series.
pub fn first_expansion(t: &OpMatrix, basic: &BasicSequence) -> Result<DeltaSeries> {
    let psi = &basic.psi;
    if t.cap() != psi.cap() {
        return Err(Error::CapMismatch {
            left: t.cap(),
            right: psi.cap(),
        });
    }
    if basic.generator.is_none() {
        return Err(Error::BasisMismatch("basic sequence has no generating delta series".into()));
    }
    if !shift_invariance(t, psi, &[Scalar::one()])?.coefficient {
        return Err(Error::NotShiftInvariant);
    }
    let coeffs = basic
        .polys
        .iter()
        .enumerate()
        .map(|(n, p)| Ok(t.apply(p)?.coeff(0) / psi.fact(n)))
        .collect::<Result<Vec<_>>>()?;
    DeltaSeries::new(psi.clone(), coeffs)
}

/// `Σ a_n Q^n` as a series in ∂ψ; exact on degrees `<= min(order a, order Q)`.
pub fn reconstruct_first_expansion(a: &DeltaSeries, q: &DeltaSeries) -> Result<DeltaSeries> {
    a.compose(q)
}

/// `Φ(x;λ) = Σ_{n<=order} λ^n p_n(x)/nψ!`.
pub fn egf(basic: &BasicSequence, lambda_cap: usize) -> Result<BiSeries> {
    if lambda_cap > basic.max_index() {
        return Err(Error::CapExceeded {
            requested: lambda_cap,
            limit: basic.max_index(),
        });
    }
    BiSeries::new(basic.scaled()[..=lambda_cap].to_vec())
}

/// `Q Φ = λ Φ` for λ-orders `0..=lambda_cap`.
pub fn egf_eigen_check(q: &DeltaSeries, basic: &BasicSequence, lambda_cap: usize) -> Result<bool> {
    let phi = egf(basic, lambda_cap)?;
    let qm = q.to_matrix();
    if qm.valid() < lambda_cap {
        return Err(Error::CapExceeded {
            requested: lambda_cap,
            limit: qm.valid(),
        });
    }
    Ok(phi.apply_op(&qm)?.agrees_to(&phi.times_lambda(), lambda_cap))
}

/// Every `p_n` is a multiple of `x^n`.
pub fn is_monomial_basic(basic: &BasicSequence) -> bool {
    basic
        .polys
        .iter()
        .enumerate()
        .all(|(n, p)| p.valuation().map_or(false, |v| v == n) && p.degree() == n as isize)
}

/// When `p_n = c_n x^n`, `Φ(x;λ)` is the φ-exponential `expφ{λx}` with
/// `1/nφ! = c_n/nψ!`; returns that φ (up to the sequence's last index).
pub fn collapsed_exponential(basic: &BasicSequence) -> Option<PsiSequence> {
    if !is_monomial_basic(basic) {
        return None;
    }
    let inv_fact: Vec<Scalar> = basic
        .polys
        .iter()
        .enumerate()
        .map(|(n, p)| p.coeff(n) / basic.psi.fact(n))
        .collect();
    let mut n_phi = vec![Scalar::zero()];
    for n in 1..inv_fact.len() {
        n_phi.push(&inv_fact[n - 1] / &inv_fact[n]);
    }
    PsiSequence::identify(&n_phi).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::umbral::basic::{basic_sequence, Route};

    #[test]
    fn identity_and_exponential_shift() {
        let psi = PsiSequence::classical(8);
        let mono = BasicSequence::monomial(&psi, 7).unwrap();
        let id = DeltaSeries::polynomial(psi.clone(), vec![Scalar::one()]).unwrap();
        assert_eq!(sheffer_sequence(&mono, &id).unwrap().sheffer, mono.polys);

        // S = e^D: s_n = (x − 1)^n
        let e = DeltaSeries::translation(&psi, &Scalar::one());
        let pair = sheffer_sequence(&mono, &e).unwrap();
        let back = translation_operator(&psi, &Scalar::int(-1));
        for n in 0..=7 {
            assert_eq!(pair.sheffer[n], back.apply(&mono.polys[n]).unwrap());
        }
        assert_eq!(pair.sheffer[2], Poly::from_ints(&[1, -2, 1], 8).unwrap());
    }

    #[test]
    fn jackson_sheffer() {
        let psi = PsiSequence::q_jackson(rat(1, 2), 8).unwrap();
        let mono = BasicSequence::monomial(&psi, 6).unwrap();
        let s = DeltaSeries::polynomial(psi.clone(), vec![Scalar::one(), Scalar::one()]).unwrap();
        let pair = sheffer_sequence(&mono, &s).unwrap();
        // (1 + ∂ψ)^{-1} x^2 = x^2 − 2ψ x + 2ψ·1ψ
        assert_eq!(
            pair.sheffer[2],
            Poly::from_coeffs(vec![rat(3, 2), rat(-3, 2), Scalar::one()], 8).unwrap()
        );
    }

    #[test]
    fn first_expansion_examples() {
        let psi = PsiSequence::classical(8);
        let q = DeltaSeries::forward_difference_analog(&psi);
        let b = basic_sequence(&q, 7, Route::Rodrigues).unwrap();
        let a = first_expansion(&q.to_matrix(), &b).unwrap();
        let mut unit = vec![Scalar::zero(); 8];
        unit[1] = Scalar::one();
        assert_eq!(a.coeffs(), unit.as_slice());
        let a = first_expansion(&OpMatrix::identity(8), &b).unwrap();
        assert_eq!(a.coeff(0), Scalar::one());
        assert!(a.coeffs()[1..].iter().all(Scalar::is_zero));

        let mono = BasicSequence::monomial(&psi, 7).unwrap();
        let e1 = translation_operator(&psi, &Scalar::one());
        let a = first_expansion(&e1, &mono).unwrap();
        for n in 0..=7 {
            assert_eq!(a.coeff(n), Scalar::one() / Scalar::factorial(n));
        }
        let back = reconstruct_first_expansion(&a, &DeltaSeries::d_psi(&psi)).unwrap();
        assert!(back.to_matrix().agrees_on(&e1, 7));

        assert_eq!(
            first_expansion(&crate::operators::x_hat(8), &mono),
            Err(Error::NotShiftInvariant)
        );
    }

    #[test]
    fn eigen_series() {
        let psi = PsiSequence::dxd(10);
        let d = DeltaSeries::d_psi(&psi);
        let mono = BasicSequence::monomial(&psi, 8).unwrap();
        assert!(egf_eigen_check(&d, &mono, 8).unwrap());
        assert!(egf_eigen_check(&d, &mono, 0).unwrap());
        assert_eq!(collapsed_exponential(&mono).unwrap().label(), "dxd");

        let classical = PsiSequence::classical(10);
        let delta = DeltaSeries::forward_difference_analog(&classical);
        let b = basic_sequence(&delta, 8, Route::Lagrange1).unwrap();
        assert!(egf_eigen_check(&delta, &b, 8).unwrap());
        assert!(!is_monomial_basic(&b));
        assert!(collapsed_exponential(&b).is_none());
    }
}
