//! Truncated formal series `Σ_{k<=K} c_k ∂ψ^k`, the elements of the
//! commutative algebra of ∂ψ-shift-invariant operators.
//!
//! A series of order `K` knows its coefficients up to `∂ψ^K` only. Since
//! `∂ψ^k` kills every polynomial of degree `< k`, such a series acts exactly on
//! degrees `<= K`; binary operations keep the smaller of the two orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DeltaSeries {
    psi: PsiSequence,
    coeffs: Vec<Scalar>,
}

/// The series operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Reciprocal,
    Power(i64),
    FormalDerivative,
    Compose,
    CompInverse,
}

impl DeltaSeries {
    /// A series of order `coeffs.len() − 1`.
    pub fn new(psi: PsiSequence, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("series needs at least one coefficient".into()));
        }
        Ok(DeltaSeries { psi, coeffs })
    }

    /// A polynomial in ∂ψ: the given coefficients, zero beyond, kept to
    /// order `cap` (higher powers vanish on the truncated space).
    pub fn polynomial(psi: PsiSequence, coeffs: Vec<Scalar>) -> Result<Self> {
        let cap = psi.cap();
        let order = cap.max(coeffs.len().saturating_sub(1));
        Ok(DeltaSeries::new(psi, coeffs)?.with_order(order))
    }

    /// `∂ψ` itself.
    pub fn d_psi(psi: &PsiSequence) -> Self {
        DeltaSeries::polynomial(psi.clone(), vec![Scalar::zero(), Scalar::one()]).expect("nonempty")
    }

    /// `Σ_{k>=1} ∂ψ^k / kψ!`, the analog of the forward difference.
    pub fn forward_difference_analog(psi: &PsiSequence) -> Self {
        let mut s = DeltaSeries::translation(psi, &Scalar::one());
        s.coeffs[0] = Scalar::zero();
        s
    }

    /// `E^y(∂ψ) = Σ_k y^k ∂ψ^k / kψ!`.
    pub fn translation(psi: &PsiSequence, y: &Scalar) -> Self {
        let coeffs = (0..=psi.cap())
            .map(|k| y.pow(k as u32) / psi.fact(k))
            .collect();
        DeltaSeries {
            psi: psi.clone(),
            coeffs,
        }
    }

    pub fn psi(&self) -> &PsiSequence {
        &self.psi
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `c_k`, zero past the order.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Truncates, or pads with zeros (reading the coefficients as a
    /// polynomial in ∂ψ).
    pub fn with_order(mut self, order: usize) -> Self {
        self.coeffs.resize(order + 1, Scalar::zero());
        self
    }

    /// `c_0 = 0` and `c_1 ≠ 0`.
    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && !self.coeff(1).is_zero()
    }

    fn check_psi(&self, other: &DeltaSeries) -> Result<()> {
        if self.psi.same_values(&other.psi) {
            Ok(())
        } else {
            Err(Error::PsiMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Scalar>) -> DeltaSeries {
        DeltaSeries {
            psi: self.psi.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.check_psi(other)?;
        let k = self.order().min(other.order());
        Ok(self.with_coeffs((0..=k).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect()))
    }

    pub fn sub(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> DeltaSeries {
        self.with_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.check_psi(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &other.coeffs[n - i]).sum())
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// Multiplicative inverse; needs `c_0 ≠ 0`.
    pub fn reciprocal(&self) -> Result<DeltaSeries> {
        let inv0 = self.coeffs[0].recip().ok_or(Error::NotInvertible)?;
        let mut out = vec![inv0.clone()];
        for n in 1..=self.order() {
            let s: Scalar = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-(s * &inv0));
        }
        Ok(self.with_coeffs(out))
    }

    /// `self^e`; negative exponents go through the reciprocal.
    pub fn power(&self, e: i64) -> Result<DeltaSeries> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut one = vec![Scalar::zero(); self.order() + 1];
        one[0] = Scalar::one();
        let mut acc = self.with_coeffs(one);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// `Σ k c_k ∂ψ^{k−1}`: the Pincherle ψ-derivative on the series side.
    pub fn formal_derivative(&self) -> DeltaSeries {
        let mut coeffs: Vec<Scalar> = (1..=self.order())
            .map(|k| &self.coeffs[k] * Scalar::int(k as i64))
            .collect();
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        self.with_coeffs(coeffs)
    }

    /// `self(inner) = Σ c_k inner^k`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &DeltaSeries) -> Result<DeltaSeries> {
        self.check_psi(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NotComposable("inner series has a constant term"));
        }
        let k = self.order().min(inner.order());
        let inner = inner.clone().with_order(k);
        let mut acc = self.with_coeffs(vec![Scalar::zero(); k + 1]);
        for c in self.coeffs[..=k].iter().rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// The series `g` with `self(g) = ∂ψ`.
    pub fn comp_inverse(&self) -> Result<DeltaSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotComposable("series has a constant term"));
        }
        let c1 = self
            .coeff(1)
            .recip()
            .ok_or(Error::NotComposable("linear coefficient vanishes"))?;
        let k = self.order();
        let mut g = self.with_coeffs(vec![Scalar::zero(); k + 1]);
        if k >= 1 {
            g.coeffs[1] = c1.clone();
        }
        for n in 2..=k {
            let r = self.compose(&g)?.coeffs[n].clone();
            g.coeffs[n] = -(r * &c1);
        }
        Ok(g)
    }

    /// `S = Q / ∂ψ` for a series without constant term.
    pub fn shift_down(&self) -> Result<DeltaSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDeltaOperator("constant term must vanish"));
        }
        let coeffs = if self.order() == 0 {
            vec![Scalar::zero()]
        } else {
            self.coeffs[1..].to_vec()
        };
        Ok(self.with_coeffs(coeffs))
    }

    /// The matrix realization, exact on degrees `<= min(order, cap)`.
    pub fn to_matrix(&self) -> OpMatrix {
        let psi = &self.psi;
        let cap = psi.cap();
        OpMatrix::from_fn(cap, self.order().min(cap), |j| {
            let mut p = Poly::zero(cap);
            for k in 0..=j.min(self.order()) {
                let c = &self.coeffs[k];
                if !c.is_zero() {
                    p.set_coeff(j - k, c * psi.fact(j) / psi.fact(j - k))
                        .expect("j - k <= cap");
                }
            }
            p
        })
    }

    /// Applies the series to `p`; the order must cover `deg p`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.cap() != self.psi.cap() {
            return Err(Error::CapMismatch {
                left: self.psi.cap(),
                right: p.cap(),
            });
        }
        if p.degree() > self.order() as isize {
            return Err(Error::GuardBandExceeded(format!(
                "series of order {} applied to degree {}",
                self.order(),
                p.degree()
            )));
        }
        self.to_matrix().apply(p)
    }
}

pub fn series_to_matrix(q: &DeltaSeries) -> OpMatrix {
    q.to_matrix()
}

/// Dispatches a tagged series operation; `b` is required for the binary ones.
pub fn series_arith(a: &DeltaSeries, b: Option<&DeltaSeries>, op: SeriesOp) -> Result<DeltaSeries> {
    let need_b = || b.ok_or(Error::MissingParameter("second series"));
    match op {
        SeriesOp::Add => a.add(need_b()?),
        SeriesOp::Sub => a.sub(need_b()?),
        SeriesOp::Mul => a.mul(need_b()?),
        SeriesOp::Compose => a.compose(need_b()?),
        SeriesOp::Reciprocal => a.reciprocal(),
        SeriesOp::Power(e) => a.power(e),
        SeriesOp::FormalDerivative => Ok(a.formal_derivative()),
        SeriesOp::CompInverse => a.comp_inverse(),
    }
}
