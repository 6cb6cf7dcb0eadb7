//! Expansion of an arbitrary operator as `T = Σ_n q_n(X) Q^n`, where `Q`
//! lowers degree by one and `X` is either multiplication by `x` or the dual
//! operator `x̂_Q`, together with the indicator `P(x;λ) = Σ q_n(x) λ^n`.
//!
//! The coefficients are found by a triangular recursion over the scaled
//! basic sequence `b_n = p_n/nψ!` (so `Q b_n = b_{n−1}`). Applying the
//! expansion to `b_m` gives
//!
//! * multiplication mode: `T b_m = Σ_{n<=m} q_n · b_{m−n}`;
//! * dual mode: `x̂_Q b_k = (k+1) b_{k+1}`, so with `T b_m = Σ_j t_{m,j} b_j`,
//!   `q_{m,j} j! = t_{m,j} − Σ_{n<m} q_{n,j−m+n} j!/(m−n)!`.
//!
//! Uniqueness follows from the triangularity; the result is certified by
//! reconstructing `T` on every monomial of degree `<= M`.

use serde::{Deserialize, Serialize};

use crate::biseries::BiSeries;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::operators::{d_psi, x_hat};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;
use crate::umbral::basic::coords_in_basis;
use crate::umbral::{extend_basic, normal_basic_general, BasicSequence};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BasisMode {
    #[serde(rename = "x_hat")]
    XHat,
    #[serde(rename = "x_hat_Q")]
    XHatQ,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OpExpansion {
    pub q_polys: Vec<Poly>,
    #[serde(skip)]
    pub base_q: OpMatrix,
    pub basis_mode: BasisMode,
    pub order: usize,
    /// `b_n = p_n/nψ!` for the basic sequence of `Q`, to the extent known.
    #[serde(skip)]
    scaled_basis: Vec<Poly>,
}

fn cap_exceeded(e: Error, limit: usize) -> Error {
    match e {
        Error::TruncationLoss { degree, .. } => Error::CapExceeded {
            requested: degree,
            limit,
        },
        other => other,
    }
}

/// Multiplication by `q`, exact on degrees `<= cap − deg q`.
pub fn multiplication(q: &Poly) -> OpMatrix {
    let cap = q.cap();
    let raise = q.degree().max(0) as usize;
    OpMatrix::from_fn(cap, cap - raise.min(cap), |j| {
        q.mul_truncating(&Poly::monomial(j, cap).expect("j <= cap"))
            .expect("same cap")
            .0
    })
}

impl OpExpansion {
    /// `Σ_n q_n(X) Q^n x^j` for `j <= order`, as the columns of an operator
    /// exact on degrees `<= order`.
    ///
    /// Each column is regrouped as `Σ_i X^i w_i` with `w_i = Σ_n [x^i]q_n · Q^n x^j`
    /// and summed by Horner's rule in `X`, so `X` is applied once per power
    /// rather than once per power per coefficient polynomial.
    pub fn reconstruct(&self) -> Result<OpMatrix> {
        let cap = self.base_q.cap();
        let top = self.q_polys.iter().map(|q| q.degree().max(0) as usize).max().unwrap_or(0);
        let mut columns = Exec::default().try_map_range(self.order + 1, |j| match self.basis_mode {
            BasisMode::XHat => self.column_in_x(j, top),
            BasisMode::XHatQ => self.column_in_basis(j, top),
        })?;
        columns.resize(cap + 1, Poly::zero(cap));
        Ok(OpMatrix::from_columns(columns)?.with_valid(self.order))
    }

    fn column_in_x(&self, j: usize, top: usize) -> Result<Poly> {
        let cap = self.base_q.cap();
        {
            let mut powers = Vec::with_capacity(self.q_polys.len());
            let mut v = Poly::monomial(j, cap)?;
            for _ in &self.q_polys {
                let next = self.base_q.apply(&v)?;
                powers.push(v);
                v = next;
            }
            let x = x_hat(cap);
            let mut acc = Poly::zero(cap);
            for i in (0..=top).rev() {
                if !acc.is_zero() {
                    if acc.degree() > x.valid() as isize {
                        return Err(Error::CapExceeded {
                            requested: acc.degree() as usize + 1,
                            limit: x.valid() + 1,
                        });
                    }
                    acc = x.apply(&acc)?;
                }
                for (q, v) in self.q_polys.iter().zip(&powers) {
                    let c = q.coeff(i);
                    if !c.is_zero() && !v.is_zero() {
                        acc = &acc + &v.scale(&c);
                    }
                }
            }
            Ok(acc)
        }
    }

    /// The same column computed in coordinates of the scaled basic sequence,
    /// where `Q b_k = b_{k−1}` and `x̂_Q b_k = (k+1) b_{k+1}` are index shifts.
    fn column_in_basis(&self, j: usize, top: usize) -> Result<Poly> {
        let b = &self.scaled_basis;
        let last = b.len() - 1;
        let mut powers = Vec::with_capacity(self.q_polys.len());
        let mut v = coords_in_basis(&Poly::monomial(j, self.base_q.cap())?, b)?;
        for _ in &self.q_polys {
            let next: Vec<Scalar> = (0..=last).map(|k| v.get(k + 1).cloned().unwrap_or_else(Scalar::zero)).collect();
            powers.push(v);
            v = next;
        }
        let mut acc = vec![Scalar::zero(); last + 1];
        for i in (0..=top).rev() {
            if acc.iter().any(|c| !c.is_zero()) {
                if !acc[last].is_zero() {
                    return Err(Error::CapExceeded {
                        requested: last + 1,
                        limit: last,
                    });
                }
                for k in (0..last).rev() {
                    acc[k + 1] = &acc[k] * Scalar::int(k as i64 + 1);
                }
                acc[0] = Scalar::zero();
            }
            for (q, v) in self.q_polys.iter().zip(&powers) {
                let c = q.coeff(i);
                if !c.is_zero() {
                    for (a, x) in acc.iter_mut().zip(v) {
                        if !x.is_zero() {
                            *a += &(&c * x);
                        }
                    }
                }
            }
        }
        Ok(acc
            .iter()
            .zip(b)
            .filter(|(c, _)| !c.is_zero())
            .fold(Poly::zero(self.base_q.cap()), |s, (c, p)| &s + &p.scale(c)))
    }

    /// Reconstruction agrees with `t` on degrees `<= order`.
    pub fn reconstructs(&self, t: &OpMatrix) -> Result<bool> {
        Ok(self.reconstruct()?.agrees_on(t, self.order))
    }

    /// `P(x;λ) = Σ_{n<=lambda_cap} q_n(x) λ^n`.
    pub fn indicator(&self, lambda_cap: usize) -> Result<BiSeries> {
        indicator(self, lambda_cap)
    }
}

/// Expands `t` in powers of `q` up to `Q^M`. In dual mode the basic sequence
/// of `q` must be supplied; in multiplication mode it is solved for when
/// absent.
#[allow(non_snake_case)]
pub fn expand_in_Q(
    t: &OpMatrix,
    q: &OpMatrix,
    psi: &PsiSequence,
    m: usize,
    mode: BasisMode,
    basic: Option<&BasicSequence>,
) -> Result<OpExpansion> {
    let cap = q.cap();
    if t.cap() != cap || psi.cap() != cap {
        return Err(Error::CapMismatch {
            left: cap,
            right: if t.cap() != cap { t.cap() } else { psi.cap() },
        });
    }
    if m > t.valid() {
        return Err(Error::CapExceeded {
            requested: m,
            limit: t.valid(),
        });
    }
    let fresh;
    let basic = match (basic, mode) {
        (Some(b), _) => b,
        (None, BasisMode::XHat) => {
            fresh = normal_basic_general(q, psi, m)?;
            &fresh
        }
        (None, BasisMode::XHatQ) => {
            return Err(Error::MissingParameter("basic sequence for x_hat_Q mode"))
        }
    };
    if !basic.psi.same_values(psi) {
        return Err(Error::PsiMismatch);
    }
    let polys = extend_basic(q, basic)?;
    if polys.len() <= m {
        return Err(Error::CapExceeded {
            requested: m,
            limit: polys.len() - 1,
        });
    }
    let b: Vec<Poly> = polys
        .iter()
        .enumerate()
        .map(|(n, p)| p.scale(&psi.fact(n).recip().expect("nψ! ≠ 0")))
        .collect();
    let q_polys = match mode {
        BasisMode::XHat => multiplication_mode(t, &b, m)?,
        BasisMode::XHatQ => dual_mode(t, &b, m)?,
    };
    Ok(OpExpansion {
        q_polys,
        base_q: q.clone(),
        basis_mode: mode,
        order: m,
        scaled_basis: b,
    })
}

fn multiplication_mode(t: &OpMatrix, b: &[Poly], m: usize) -> Result<Vec<Poly>> {
    let cap = t.cap();
    let mut q: Vec<Poly> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut acc = t.apply(&b[k])?;
        for (n, qn) in q.iter().enumerate() {
            let prod = qn.checked_mul(&b[k - n]).map_err(|e| cap_exceeded(e, cap))?;
            acc = &acc - &prod;
        }
        q.push(acc);
    }
    Ok(q)
}

fn dual_mode(t: &OpMatrix, b: &[Poly], m: usize) -> Result<Vec<Poly>> {
    let cap = t.cap();
    let fact: Vec<Scalar> = (0..=cap).map(Scalar::factorial).collect();
    let mut q: Vec<Vec<Scalar>> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let tb = coords_in_basis(&t.apply(&b[k])?, b)?;
        let mut row = vec![Scalar::zero(); cap + 1];
        for (j, slot) in row.iter_mut().enumerate() {
            let mut v = tb.get(j).cloned().unwrap_or_else(Scalar::zero);
            for (n, qn) in q.iter().enumerate() {
                let shift = k - n;
                if j >= shift {
                    v -= &(&qn[j - shift] * &fact[j] / &fact[shift]);
                }
            }
            *slot = v / &fact[j];
        }
        q.push(row);
    }
    q.into_iter().map(|c| Poly::from_coeffs(c, cap)).collect()
}

/// The indicator series of an expansion.
pub fn indicator(e: &OpExpansion, lambda_cap: usize) -> Result<BiSeries> {
    if lambda_cap > e.order {
        return Err(Error::CapExceeded {
            requested: lambda_cap,
            limit: e.order,
        });
    }
    BiSeries::new(e.q_polys[..=lambda_cap].to_vec())
}

/// `Φ^{−1} (T Φ)` with `Φ = Σ λ^n b_n`, truncated at `lambda_cap`.
pub fn conjugated_indicator(t: &OpMatrix, scaled_basis: &[Poly], lambda_cap: usize) -> Result<BiSeries> {
    if lambda_cap >= scaled_basis.len() {
        return Err(Error::CapExceeded {
            requested: lambda_cap,
            limit: scaled_basis.len() - 1,
        });
    }
    if lambda_cap > t.valid() {
        return Err(Error::CapExceeded {
            requested: lambda_cap,
            limit: t.valid(),
        });
    }
    let cap = t.cap();
    let phi = BiSeries::new(scaled_basis[..=lambda_cap].to_vec())?;
    let t_phi = phi.apply_op(t)?;
    phi.reciprocal()?
        .mul(&t_phi)
        .map_err(|e| cap_exceeded(e, cap))
}

/// Compares the indicator with the conjugation `Φ^{−1} T Φ` (multiplication
/// mode only: there `q_n(x̂)` acts on `Φ` by pointwise multiplication).
pub fn indicator_conjugation_check(e: &OpExpansion, t: &OpMatrix, lambda_cap: usize) -> Result<bool> {
    if e.basis_mode != BasisMode::XHat {
        return Err(Error::BasisMismatch(
            "the conjugation form of the indicator needs the x_hat basis".into(),
        ));
    }
    let p = indicator(e, lambda_cap)?;
    let conj = conjugated_indicator(t, &e.scaled_basis, lambda_cap)?;
    Ok(p.agrees_to(&conj, lambda_cap))
}

/// `Σ_n q_n(x̂) ∂ψ^n` as a matrix.
pub fn assemble_in_d_psi(q_polys: &[Poly], psi: &PsiSequence) -> Result<OpMatrix> {
    let d = d_psi(psi);
    let mut acc = OpMatrix::zero(psi.cap());
    let mut pw = OpMatrix::identity(psi.cap());
    for (n, q) in q_polys.iter().enumerate() {
        if n > 0 {
            pw = d.compose(&pw)?;
        }
        acc = acc.checked_add(&multiplication(q).compose(&pw)?)?;
    }
    Ok(acc)
}

/// For `T = Σ q_n(x̂) ∂ψ^n`: `Σ q_n(x) λ^n = expψ{λx}^{−1} T expψ{λx}` to
/// λ-order `lambda_cap`.
pub fn psi_exponential_indicator_check(q_polys: &[Poly], psi: &PsiSequence, lambda_cap: usize) -> Result<bool> {
    let t = assemble_in_d_psi(q_polys, psi)?;
    let mono = BasicSequence::monomial(psi, lambda_cap)?;
    let conj = conjugated_indicator(&t, &mono.scaled(), lambda_cap)?;
    let cap = psi.cap();
    let terms = (0..=lambda_cap)
        .map(|n| q_polys.get(n).cloned().unwrap_or_else(|| Poly::zero(cap)))
        .collect();
    Ok(BiSeries::new(terms)?.agrees_to(&conj, lambda_cap))
}
