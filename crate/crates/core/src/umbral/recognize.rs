//! Deciding whether a degree-lowering operator is a series in some ∂ψ.
//!
//! Write `Q x^n = Σ_{k=1}^{n} b_{n,k} x^{n−k}`. After rescaling so that
//! `b_{1,1} = 1`, `Q` is a ∂ψ-series exactly when `b_{n,k} = (n k)ψ b_{k,k}`
//! with `nψ := b_{n,1}`; the series coefficients are then `q_k = b_{k,k}/kψ!`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::opmatrix::OpMatrix;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;
use crate::umbral::DeltaSeries;

/// The first `(n, k)` at which the ψ-binomial condition fails, with both
/// sides in the unscaled table: `predicted = (n k)ψ b_{k,k}`, `actual = b_{n,k}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub n: usize,
    pub k: usize,
    pub predicted: Scalar,
    pub actual: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RecognitionResult {
    pub is_series: bool,
    pub psi: Option<PsiSequence>,
    /// `q_0..q_N` of the rescaled operator (`q_0 = 0`, `q_1 = 1`).
    pub q_coeffs: Option<Vec<Scalar>>,
    /// `b_{1,1}`; the operator is `scale · Σ q_k ∂ψ^k`.
    pub scale: Scalar,
    /// Row `n` lists `b_{n,1}, .., b_{n,n}`; row 0 is empty.
    pub b_table: Vec<Vec<Scalar>>,
    pub failure_witness: Option<Witness>,
}

impl RecognitionResult {
    /// The recognized operator as a series in the recovered ∂ψ.
    pub fn to_series(&self) -> Option<DeltaSeries> {
        let psi = self.psi.clone()?;
        let q = self.q_coeffs.as_ref()?;
        let coeffs = q.iter().map(|c| c * &self.scale).collect();
        DeltaSeries::new(psi, coeffs).ok()
    }
}

/// Checks that `Q 1 = 0` and `deg Q x^n = n − 1` with a nonzero
/// subdiagonal entry, for `n <= upto`.
pub(crate) fn check_degree_lowering(q: &OpMatrix, upto: usize) -> Result<()> {
    if !q.column(0).is_zero() {
        return Err(Error::NotDegreeLowering("Q 1 ≠ 0".into()));
    }
    for n in 1..=upto {
        let deg = q.column(n).degree();
        if deg > n as isize - 1 {
            return Err(Error::NotDegreeLowering(format!(
                "deg Q x^{n} = {deg} > {}",
                n - 1
            )));
        }
        if deg < n as isize - 1 {
            return Err(Error::ZeroSubdiagonal { n });
        }
    }
    Ok(())
}

/// The b-table of a degree-lowering operator, rows `0..=upto`.
pub fn b_table(q: &OpMatrix, upto: usize) -> Vec<Vec<Scalar>> {
    (0..=upto)
        .map(|n| (1..=n).map(|k| q.entry(n - k, n)).collect())
        .collect()
}

/// Classifies `Q` on its exact range (degrees `<= Q.valid()`).
pub fn recognize_delta(q: &OpMatrix) -> Result<RecognitionResult> {
    let upto = q.valid();
    if upto == 0 {
        return Err(Error::NotDegreeLowering("operator is exact on constants only".into()));
    }
    check_degree_lowering(q, upto)?;
    let b = b_table(q, upto);
    let scale = b[1][0].clone();
    let inv = scale.recip().expect("checked nonzero");
    let norm = |n: usize, k: usize| &b[n][k - 1] * &inv;
    let mut n_psi = vec![Scalar::zero()];
    n_psi.extend((1..=upto).map(|n| norm(n, 1)));
    let psi = PsiSequence::identify(&n_psi)?;
    for n in 2..=upto {
        for k in 2..n {
            let binom = psi.binom(n, k);
            if norm(n, k) != &binom * norm(k, k) {
                return Ok(RecognitionResult {
                    is_series: false,
                    psi: None,
                    q_coeffs: None,
                    failure_witness: Some(Witness {
                        n,
                        k,
                        predicted: binom * &b[k][k - 1],
                        actual: b[n][k - 1].clone(),
                    }),
                    scale,
                    b_table: b,
                });
            }
        }
    }
    let mut q_coeffs = vec![Scalar::zero()];
    q_coeffs.extend((1..=upto).map(|k| norm(k, k) / psi.fact(k)));
    Ok(RecognitionResult {
        is_series: true,
        psi: Some(psi),
        q_coeffs: Some(q_coeffs),
        scale,
        b_table: b,
        failure_witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{d_classical, d_q, x_hat};
    use crate::scalar::rat;

    #[test]
    fn dxd_is_a_series() {
        let d = d_classical(16);
        let q = d.compose(&x_hat(16)).unwrap().compose(&d).unwrap();
        let r = recognize_delta(&q).unwrap();
        assert!(r.is_series);
        let psi = r.psi.as_ref().unwrap();
        assert_eq!(psi.label(), "dxd");
        assert_eq!(psi.n(4), &Scalar::int(16));
        let qc = r.q_coeffs.as_ref().unwrap();
        assert!(qc[2..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn remark_counterexample_has_witness() {
        let cap = 16;
        let d = d_classical(cap);
        let dxd = d.compose(&x_hat(cap)).unwrap().compose(&d).unwrap();
        let q = dxd
            .scale(&rat(1, 2))
            .checked_sub(&d.pow(3).scale(&rat(1, 3)))
            .unwrap();
        let r = recognize_delta(&q).unwrap();
        assert!(!r.is_series);
        let w = r.failure_witness.unwrap();
        assert_eq!((w.n, w.k), (4, 3));
        assert_eq!(w.predicted, Scalar::int(-32));
        assert_eq!(w.actual, Scalar::int(-8));
    }

    #[test]
    fn jackson_roundtrip() {
        let q = d_q(&rat(1, 3), 10).unwrap();
        let r = recognize_delta(&q).unwrap();
        assert!(r.is_series);
        assert_eq!(r.psi.as_ref().unwrap().label(), "q-jackson");
        assert_eq!(r.psi.as_ref().unwrap().q(), Some(&rat(1, 3)));
        assert_eq!(r.to_series().unwrap().to_matrix(), q);
    }

    #[test]
    fn scaled_operator_reports_scale() {
        let psi = PsiSequence::classical(8);
        let s = DeltaSeries::polynomial(psi.clone(), vec![Scalar::zero(), Scalar::int(3), Scalar::one()])
            .unwrap();
        let r = recognize_delta(&s.to_matrix()).unwrap();
        assert!(r.is_series);
        assert_eq!(r.scale, Scalar::int(3));
        assert_eq!(r.to_series().unwrap().to_matrix(), s.to_matrix());
    }

    #[test]
    fn rejects_non_lowering() {
        assert!(matches!(
            recognize_delta(&x_hat(6)),
            Err(Error::NotDegreeLowering(_))
        ));
        assert!(matches!(
            recognize_delta(&OpMatrix::zero(6)),
            Err(Error::ZeroSubdiagonal { n: 1 })
        ));
    }
}
