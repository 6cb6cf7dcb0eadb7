//! Exact identity checks for the ψ-representation of the Heisenberg-Weyl
//! algebra, the ψ-Leibniz product rules, the ∂0 Taylor-type series and the
//! classical derivative/difference bridge.
//!
//! Each check states the degree range on which it compares (its guard band)
//! and returns `Ok(false)` only for a genuine mismatch there.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{d_classical, d_psi, d_psi_apply, d_zero, n_hat_psi, x_hat, x_hat_psi};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;

/// `∂ψ^n x̂ψ^m = Σ_k C(n,k) C(m,k) k! x̂ψ^{m−k} ∂ψ^{n−k}`.
///
/// The coefficients are ordinary binomials: the rule only uses
/// `[∂ψ, x̂ψ] = id`, so it is the same for every ψ.
pub fn ghw_leibniz_check(psi: &PsiSequence, n: usize, m: usize) -> Result<bool> {
    let cap = psi.cap();
    if n + m > cap / 2 {
        return Err(Error::GuardBandExceeded(format!(
            "n + m = {} exceeds cap/2 = {}",
            n + m,
            cap / 2
        )));
    }
    let d = d_psi(psi);
    let x = x_hat_psi(psi);
    let lhs = d.pow(n).compose(&x.pow(m))?;
    let mut rhs = OpMatrix::zero(cap);
    for k in 0..=n.min(m) {
        let c = Scalar::binomial(n, k) * Scalar::binomial(m, k) * Scalar::factorial(k);
        let term = x.pow(m - k).compose(&d.pow(n - k))?.scale(&c);
        rhs = rhs.checked_add(&term)?;
    }
    Ok(lhs.agrees_within_validity(&rhs))
}

/// `Σ_{l} c^l A^l / l!` for `l <= order`.
fn exp_op(a: &OpMatrix, c: &Scalar, order: usize) -> Result<OpMatrix> {
    let mut acc = OpMatrix::identity(a.cap());
    let mut pw = OpMatrix::identity(a.cap());
    for l in 1..=order {
        pw = a.compose(&pw)?;
        acc = acc.checked_add(&pw.scale(&(c.pow(l as u32) / Scalar::factorial(l))))?;
    }
    Ok(acc)
}

/// `exp{t∂ψ} exp{a x̂ψ} = exp{at} exp{a x̂ψ} exp{t∂ψ}`.
///
/// `exp{t∂ψ}` is exact (∂ψ is nilpotent on the truncated space). Both sides
/// are expanded in powers of `a` and compared degree by degree in `a` for
/// `a^0..a^K`, then summed at the given `a`; truncating each factor of the
/// right-hand product separately would not give an exact identity. The
/// comparison runs on polynomials of degree `<= cap − K`.
pub fn ghw_exponential_check(psi: &PsiSequence, t: &Scalar, a: &Scalar, order: usize) -> Result<bool> {
    let cap = psi.cap();
    if 2 * order > cap {
        return Err(Error::GuardBandExceeded(format!(
            "2K = {} exceeds cap = {cap}",
            2 * order
        )));
    }
    let guard = cap - order;
    let d = d_psi(psi);
    let x = x_hat_psi(psi);
    let et = exp_op(&d, t, cap)?;
    let mut lhs_sum = OpMatrix::zero(cap);
    let mut rhs_sum = OpMatrix::zero(cap);
    let mut graded_ok = true;
    for s in 0..=order {
        let lhs = et.compose(&x.pow(s))?.scale(&Scalar::factorial(s).recip().expect("s! > 0"));
        let mut rhs = OpMatrix::zero(cap);
        for r in 0..=s {
            let m = s - r;
            let c = t.pow(r as u32) / (Scalar::factorial(r) * Scalar::factorial(m));
            rhs = rhs.checked_add(&x.pow(m).compose(&et)?.scale(&c))?;
        }
        graded_ok &= lhs.agrees_on(&rhs, guard);
        let w = a.pow(s as u32);
        lhs_sum = lhs_sum.checked_add(&lhs.scale(&w))?;
        rhs_sum = rhs_sum.checked_add(&rhs.scale(&w))?;
    }
    Ok(graded_ok && lhs_sum.agrees_on(&rhs_sum, guard))
}

/// The ψ-Leibniz product rules:
/// `∂ψ(fg) = n̂ψ{(∂0 f) g + f(0) ∂0 g}` for every ψ and, for q-presets,
/// `∂q(fg) = (∂q f) g + (Q̂f)(∂q g)` with `(Q̂f)(x) = f(qx)`.
pub fn leibniz_product_check(psi: &PsiSequence, f: &Poly, g: &Poly) -> Result<bool> {
    let cap = psi.cap();
    if f.cap() != cap || g.cap() != cap {
        return Err(Error::CapMismatch {
            left: cap,
            right: if f.cap() != cap { f.cap() } else { g.cap() },
        });
    }
    let fg = f.checked_mul(g)?;
    let lhs = d_psi_apply(psi, &fg);
    let dz = d_zero(cap);
    let inner = dz.apply(f)?.checked_mul(g)? + dz.apply(g)?.scale(&f.coeff(0));
    let general = lhs == n_hat_psi(psi).apply(&inner)?;
    let q_rule = match (psi.is_q_family(), psi.q()) {
        (true, Some(q)) => {
            let rhs = d_psi_apply(psi, f).checked_mul(g)? + f.dilate(q).checked_mul(&d_psi_apply(psi, g))?;
            lhs == rhs
        }
        _ => true,
    };
    Ok(general && q_rule)
}

/// Applies `Σ_{n=1}^{m} (−1)^{n+1} (x^{n−1}/n!) d^n/dx^n` to `x^m` and
/// compares with `∂0 x^m = x^{m−1}`.
pub fn d_zero_series_check(m: usize, cap: usize) -> Result<bool> {
    if m > cap {
        return Err(Error::IndexOutOfCap { index: m, cap });
    }
    let xm = Poly::monomial(m, cap)?;
    let mut acc = Poly::zero(cap);
    let mut deriv = xm.clone();
    for n in 1..=m {
        deriv = deriv.derivative();
        let sign = if n % 2 == 1 { Scalar::one() } else { Scalar::int(-1) };
        let c = sign / Scalar::factorial(n);
        let term = Poly::monomial(n - 1, cap)?.checked_mul(&deriv)?.scale(&c);
        acc = &acc + &term;
    }
    Ok(acc == d_zero(cap).apply(&xm)?)
}

/// Values and verdicts of the derivative/difference bridge.
#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    /// `d_k = [D x^(k)]_{x=0}` for `k = 1..=K` (falling factorial powers).
    pub d_k: Vec<Scalar>,
    /// `δ_n = [Δ x^n]_{x=0}` for `n = 1..=K`.
    pub delta_n: Vec<Scalar>,
    pub d_k_closed_form: bool,
    pub derivative_from_differences: bool,
    pub difference_from_derivatives: bool,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.d_k_closed_form
            && self.delta_n.iter().all(Scalar::is_one)
            && self.derivative_from_differences
            && self.difference_from_derivatives
    }
}

/// Forward difference `Δ x^n = (x+1)^n − x^n`, built from binomials.
pub fn forward_difference(cap: usize) -> OpMatrix {
    OpMatrix::from_fn(cap, cap, |n| {
        let mut p = Poly::zero(cap);
        for k in 0..n {
            p.set_coeff(k, Scalar::binomial(n, k)).expect("k < n <= cap");
        }
        p
    })
}

/// `d/dx = Σ_{k>=1} (d_k/k!) Δ^k` and `Δ = Σ_{n>=1} (δ_n/n!) d^n/dx^n`,
/// both truncated at `K` terms. A truncated series is exact on polynomials
/// of degree `<= K` (higher powers of Δ or D annihilate them), so that is the
/// range compared.
pub fn classical_bridge(order: usize, cap: usize) -> Result<BridgeReport> {
    if order > cap || order == 0 {
        return Err(Error::GuardBandExceeded(format!(
            "order {order} must be in 1..={cap}"
        )));
    }
    let delta = forward_difference(cap);
    let d = d_classical(cap);
    let x = x_hat(cap);
    let mut d_k = Vec::with_capacity(order);
    let mut falling = Poly::one(cap);
    let mut closed = true;
    for k in 1..=order {
        // x^(k) = x^(k−1) (x − (k−1))
        falling = x.apply(&falling)? - falling.scale(&Scalar::int(k as i64 - 1));
        let v = falling.derivative().coeff(0);
        let expect = if k % 2 == 1 { Scalar::one() } else { Scalar::int(-1) } * Scalar::factorial(k - 1);
        closed &= v == expect;
        d_k.push(v);
    }
    let delta_n: Vec<Scalar> = (1..=order)
        .map(|n| Ok(delta.apply(&Poly::monomial(n, cap)?)?.coeff(0)))
        .collect::<Result<_>>()?;
    let mut from_diff = OpMatrix::zero(cap);
    let mut from_deriv = OpMatrix::zero(cap);
    for k in 1..=order {
        let kf = Scalar::factorial(k);
        from_diff = from_diff.checked_add(&delta.pow(k).scale(&(&d_k[k - 1] / &kf)))?;
        from_deriv = from_deriv.checked_add(&d.pow(k).scale(&(&delta_n[k - 1] / &kf)))?;
    }
    Ok(BridgeReport {
        derivative_from_differences: from_diff.agrees_on(&d, order),
        difference_from_derivatives: from_deriv.agrees_on(&delta, order),
        d_k,
        delta_n,
        d_k_closed_form: closed,
    })
}

pub fn classical_bridge_check(order: usize, cap: usize) -> Result<bool> {
    Ok(classical_bridge(order, cap)?.holds())
}
