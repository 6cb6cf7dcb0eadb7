//! Concrete operators on the truncated space: ∂ψ, x̂ψ, x̂, D, the dilation Q̂,
//! n̂ψ, ∂0, Jackson's ∂q and ∂R, plus the Pincherle ψ-derivative and the
//! ∂ψ-shift-invariance test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::{Preset, PsiSequence, RationalFunction};
use crate::scalar::Scalar;
use crate::umbral;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    DPsi,
    XHatPsi,
    XHat,
    DClassical,
    Dilation,
    NHatPsi,
    DZero,
    DQ,
    #[serde(rename = "d_R")]
    DR,
    Other,
}

impl OpKind {
    /// Declared degree shift of the operator family.
    pub fn degree_shift(self) -> Option<i32> {
        match self {
            OpKind::DPsi | OpKind::DClassical | OpKind::DZero | OpKind::DQ | OpKind::DR => Some(-1),
            OpKind::XHatPsi | OpKind::XHat => Some(1),
            OpKind::Dilation | OpKind::NHatPsi => Some(0),
            OpKind::Other => None,
        }
    }
}

/// An operator matrix tagged with the family it was built from.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NamedOp {
    pub kind: OpKind,
    pub psi: Option<PsiSequence>,
    pub matrix: OpMatrix,
}

/// `∂ψ p`.
pub fn d_psi_apply(psi: &PsiSequence, p: &Poly) -> Poly {
    let cap = p.cap();
    let mut out = Poly::zero(cap);
    for n in 1..=cap {
        let c = p.coeff_ref(n);
        if !c.is_zero() {
            out.set_coeff(n - 1, c * psi.n(n)).expect("n - 1 < cap");
        }
    }
    out
}

/// `x̂ψ p`; fails if `p` reaches the top degree.
pub fn x_hat_psi_apply(psi: &PsiSequence, p: &Poly) -> Result<Poly> {
    let cap = p.cap();
    if p.degree() >= cap as isize {
        return Err(Error::TruncationLoss {
            cap,
            degree: cap + 1,
        });
    }
    let mut out = Poly::zero(cap);
    for n in 0..cap {
        let c = p.coeff_ref(n);
        if !c.is_zero() {
            let w = Scalar::int(n as i64 + 1) / psi.n(n + 1);
            out.set_coeff(n + 1, c * &w)?;
        }
    }
    Ok(out)
}

pub fn d_psi(psi: &PsiSequence) -> OpMatrix {
    let cap = psi.cap();
    OpMatrix::from_fn(cap, cap, |j| {
        if j == 0 {
            Poly::zero(cap)
        } else {
            Poly::term(psi.n(j).clone(), j - 1, cap).expect("j - 1 < cap")
        }
    })
}

/// `x̂ψ x^n = ((n+1)/(n+1)ψ) x^{n+1}`; exact on degrees `<= cap - 1`.
pub fn x_hat_psi(psi: &PsiSequence) -> OpMatrix {
    let cap = psi.cap();
    OpMatrix::from_fn(cap, cap.saturating_sub(1), |j| {
        if j == cap {
            Poly::zero(cap)
        } else {
            let w = Scalar::int(j as i64 + 1) / psi.n(j + 1);
            Poly::term(w, j + 1, cap).expect("j + 1 <= cap")
        }
    })
}

pub fn x_hat(cap: usize) -> OpMatrix {
    x_hat_psi(&PsiSequence::classical(cap))
}

pub fn d_classical(cap: usize) -> OpMatrix {
    d_psi(&PsiSequence::classical(cap))
}

/// `Q̂ f(x) = f(qx)`.
pub fn dilation(q: &Scalar, cap: usize) -> OpMatrix {
    let pows: Vec<Scalar> = (0..=cap).map(|n| q.pow(n as u32)).collect();
    OpMatrix::diagonal(cap, |j| pows[j].clone())
}

/// `n̂ψ x^{n−1} = nψ x^{n−1}`; the top column would need `(cap+1)ψ`, so the
/// matrix is exact on degrees `<= cap - 1`.
pub fn n_hat_psi(psi: &PsiSequence) -> OpMatrix {
    let cap = psi.cap();
    OpMatrix::diagonal(cap, |j| {
        if j < cap {
            psi.n(j + 1).clone()
        } else {
            Scalar::zero()
        }
    })
    .with_valid(cap.saturating_sub(1))
}

/// The divided difference `∂0 x^n = x^{n−1}`.
pub fn d_zero(cap: usize) -> OpMatrix {
    d_psi(&PsiSequence::ones(cap))
}

/// Jackson's derivative, built column-wise from the q-integers.
pub fn d_q(q: &Scalar, cap: usize) -> Result<OpMatrix> {
    Ok(d_psi(&PsiSequence::q_jackson(q.clone(), cap)?))
}

/// `∂R = R(qQ̂)∂0`, i.e. `x^n -> R(q^n) x^{n−1}`.
pub fn d_r(r: &RationalFunction, q: &Scalar, cap: usize) -> Result<OpMatrix> {
    Ok(d_psi(&PsiSequence::make(
        &Preset::CustomR(r.clone(), q.clone()),
        cap,
    )?))
}

/// Builds any of the named operator families.
pub fn make_named(
    kind: OpKind,
    psi: Option<&PsiSequence>,
    q: Option<&Scalar>,
    r: Option<&RationalFunction>,
    cap: usize,
) -> Result<NamedOp> {
    let need_psi = || psi.ok_or(Error::MissingParameter("psi"));
    let need_q = || q.ok_or(Error::MissingParameter("q"));
    let (matrix, psi_out) = match kind {
        OpKind::DPsi => (d_psi(need_psi()?), psi.cloned()),
        OpKind::XHatPsi => (x_hat_psi(need_psi()?), psi.cloned()),
        OpKind::NHatPsi => (n_hat_psi(need_psi()?), psi.cloned()),
        OpKind::XHat => (x_hat(cap), None),
        OpKind::DClassical => (d_classical(cap), None),
        OpKind::Dilation => (dilation(need_q()?, cap), None),
        OpKind::DZero => (d_zero(cap), None),
        OpKind::DQ => {
            let p = PsiSequence::q_jackson(need_q()?.clone(), cap)?;
            (d_psi(&p), Some(p))
        }
        OpKind::DR => {
            let r = r.ok_or(Error::MissingParameter("R"))?;
            let p = PsiSequence::make(&Preset::CustomR(r.clone(), need_q()?.clone()), cap)?;
            (d_psi(&p), Some(p))
        }
        OpKind::Other => return Err(Error::MissingParameter("matrix for kind other")),
    };
    if let Some(p) = psi {
        if matches!(kind, OpKind::DPsi | OpKind::XHatPsi | OpKind::NHatPsi) && p.cap() != cap {
            return Err(Error::CapMismatch {
                left: p.cap(),
                right: cap,
            });
        }
    }
    Ok(NamedOp {
        kind,
        psi: psi_out,
        matrix,
    })
}

/// The Pincherle ψ-derivative `T' = T x̂ψ − x̂ψ T`.
pub fn pincherle(t: &OpMatrix, psi: &PsiSequence) -> Result<OpMatrix> {
    if t.cap() != psi.cap() {
        return Err(Error::CapMismatch {
            left: t.cap(),
            right: psi.cap(),
        });
    }
    t.commutator(&x_hat_psi(psi))
}

/// The two routes used to decide ∂ψ-shift invariance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftInvariance {
    /// `[T, E^α(∂ψ)] = 0` for every sampled α.
    pub sampled: bool,
    /// `[T, ∂ψ] = 0` and `T` equals `Σ_k ([T x^k]_{x=0}/kψ!) ∂ψ^k`.
    pub coefficient: bool,
}

impl ShiftInvariance {
    pub fn agree(&self) -> bool {
        self.sampled == self.coefficient
    }
}

pub fn shift_invariance(
    t: &OpMatrix,
    psi: &PsiSequence,
    samples: &[Scalar],
) -> Result<ShiftInvariance> {
    if t.cap() != psi.cap() {
        return Err(Error::CapMismatch {
            left: t.cap(),
            right: psi.cap(),
        });
    }
    if samples.is_empty() {
        return Err(Error::MissingParameter("shift samples"));
    }
    let mut sampled = true;
    for a in samples {
        let e = umbral::translation_operator(psi, a);
        let c = t.commutator(&e)?;
        if !c.is_zero_on(c.valid()) {
            sampled = false;
            break;
        }
    }
    let c = t.commutator(&d_psi(psi))?;
    let commutes = c.is_zero_on(c.valid());
    let coefficient = commutes && {
        let cap = psi.cap();
        let coeffs: Vec<Scalar> = (0..=cap)
            .map(|k| t.column(k).coeff(0) / psi.fact(k))
            .collect();
        let series = umbral::DeltaSeries::new(psi.clone(), coeffs)?;
        series.to_matrix().agrees_on(t, t.valid())
    };
    Ok(ShiftInvariance {
        sampled,
        coefficient,
    })
}

/// Sampled test: `[T, E^α(∂ψ)] = 0` on the exact range for every α given.
pub fn is_shift_invariant(t: &OpMatrix, psi: &PsiSequence, samples: &[Scalar]) -> Result<bool> {
    Ok(shift_invariance(t, psi, samples)?.sampled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn d_psi_classical_and_dxd() {
        let x3 = Poly::monomial(3, 6).unwrap();
        let d = d_psi(&PsiSequence::classical(6));
        assert_eq!(d.apply(&x3).unwrap(), Poly::term(Scalar::int(3), 2, 6).unwrap());
        let d = d_psi(&PsiSequence::dxd(6));
        assert_eq!(d.apply(&x3).unwrap(), Poly::term(Scalar::int(9), 2, 6).unwrap());
    }

    #[test]
    fn x_hat_psi_dxd_on_x() {
        let x = Poly::monomial(1, 6).unwrap();
        let m = x_hat_psi(&PsiSequence::dxd(6));
        assert_eq!(m.apply(&x).unwrap(), Poly::term(rat(1, 2), 2, 6).unwrap());
        assert_eq!(m.valid(), 5);
        assert_eq!(
            x_hat_psi_apply(&PsiSequence::dxd(6), &x).unwrap(),
            Poly::term(rat(1, 2), 2, 6).unwrap()
        );
    }

    #[test]
    fn missing_parameters() {
        assert_eq!(
            make_named(OpKind::DPsi, None, None, None, 4).unwrap_err(),
            Error::MissingParameter("psi")
        );
        assert_eq!(
            make_named(OpKind::Dilation, None, None, None, 4).unwrap_err(),
            Error::MissingParameter("q")
        );
        assert!(matches!(
            make_named(OpKind::DQ, None, Some(&Scalar::int(-1)), None, 4),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn d_q_matches_difference_quotient() {
        let q = rat(1, 3);
        let cap = 8;
        let m = d_q(&q, cap).unwrap();
        for n in 0..=cap {
            let f = Poly::monomial(n, cap).unwrap();
            // (f(x) − f(qx)) / ((1 − q) x)
            let num = &f - &f.dilate(&q);
            assert!(num.coeff(0).is_zero());
            let mut quot = Poly::zero(cap);
            for i in 1..=cap {
                quot.set_coeff(i - 1, num.coeff(i) / (Scalar::one() - &q)).unwrap();
            }
            assert_eq!(m.apply(&f).unwrap(), quot, "degree {n}");
        }
    }

    #[test]
    fn d_q_factorizes_through_d_zero() {
        // ∂q = ((1 − qQ̂)/(1 − q)) ∂0
        let q = rat(2, 3);
        let cap = 10;
        let lhs = d_q(&q, cap).unwrap();
        let factor = OpMatrix::identity(cap)
            .checked_sub(&dilation(&q, cap).scale(&q))
            .unwrap()
            .scale(&(Scalar::one() / (Scalar::one() - &q)));
        let rhs = factor.compose(&d_zero(cap)).unwrap();
        assert!(lhs.agrees_on(&rhs, cap));
    }

    #[test]
    fn dilations_multiply() {
        let cap = 8;
        let (a, b) = (rat(1, 2), rat(-3, 5));
        let lhs = dilation(&a, cap).compose(&dilation(&b, cap)).unwrap();
        assert_eq!(lhs, dilation(&(&a * &b), cap));
    }

    #[test]
    fn d_psi_is_n_hat_after_d_zero() {
        let psi = PsiSequence::q_jackson(rat(1, 2), 9).unwrap();
        let prod = n_hat_psi(&psi).compose(&d_zero(9)).unwrap();
        assert_eq!(prod.valid(), 9);
        assert!(prod.agrees_on(&d_psi(&psi), 9));
    }

    #[test]
    fn pincherle_examples() {
        let psi = PsiSequence::dxd(10);
        let d = d_psi(&psi);
        let p = pincherle(&d, &psi).unwrap();
        assert_eq!(p.valid(), 9);
        assert!(p.agrees_on(&OpMatrix::identity(10), 9));
        let p2 = pincherle(&d.pow(2), &psi).unwrap();
        assert!(p2.agrees_on(&d.scale(&Scalar::int(2)), p2.valid()));
        let p0 = pincherle(&OpMatrix::identity(10), &psi).unwrap();
        assert!(p0.is_zero_on(p0.valid()));
    }

    #[test]
    fn shift_invariance_examples() {
        let psi = PsiSequence::classical(8);
        let samples = [Scalar::one(), rat(-1, 2)];
        let d3 = d_psi(&psi).pow(3);
        assert!(is_shift_invariant(&d3, &psi, &samples).unwrap());
        assert!(is_shift_invariant(&OpMatrix::identity(8), &psi, &samples).unwrap());
        let r = shift_invariance(&x_hat(8), &psi, &samples).unwrap();
        assert!(!r.sampled && r.agree());
        // [x̂, E^1] 1 = x − (x + 1) = −1
        let c = x_hat(8)
            .commutator(&umbral::translation_operator(&psi, &Scalar::one()))
            .unwrap();
        assert_eq!(c.column(0), &Poly::constant(Scalar::int(-1), 8));
    }

    #[test]
    fn named_op_json() {
        let op = make_named(OpKind::DQ, None, Some(&rat(1, 2)), None, 2).unwrap();
        let v = serde_json::to_value(&op).unwrap();
        assert_eq!(v["kind"], "d_q");
        assert_eq!(v["psi"]["label"], "q-jackson");
        let back: NamedOp = serde_json::from_value(v).unwrap();
        assert_eq!(back, op);
    }
}
