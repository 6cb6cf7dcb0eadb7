//! The noncommutative product `f *ψ g = f(x̂ψ) g`, its powers
//! `x^{n*ψ} = (n!/nψ!) x^n`, the derivation `∂̂ψ f(x̂ψ) = [∂ψ, f(x̂ψ)]`, and
//! the ψ-Poisson components `p_m = ((λx)^m/m!) *ψ expψ[−λx]`.
//!
//! Series are materialized as truncated polynomials; every identity below is
//! compared on a stated guard band where truncation cannot reach.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{d_psi, d_psi_apply, x_hat_psi, x_hat_psi_apply};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;

/// `f *ψ g`; needs `deg f + deg g <= cap`.
pub fn star(psi: &PsiSequence, f: &Poly, g: &Poly) -> Result<Poly> {
    let cap = psi.cap();
    if f.cap() != cap || g.cap() != cap {
        return Err(Error::CapMismatch {
            left: cap,
            right: if f.cap() != cap { f.cap() } else { g.cap() },
        });
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero(cap));
    }
    let total = (f.degree() + g.degree()) as usize;
    if total > cap {
        return Err(Error::TruncationLoss { cap, degree: total });
    }
    let mut acc = Poly::zero(cap);
    for i in (0..=f.degree() as usize).rev() {
        if !acc.is_zero() {
            acc = x_hat_psi_apply(psi, &acc)?;
        }
        acc = &acc + &g.scale(&f.coeff(i));
    }
    Ok(acc)
}

/// Like [`star`] but dropping every term above the cap (for truncated series).
pub fn star_trunc(psi: &PsiSequence, f: &Poly, g: &Poly) -> Poly {
    let cap = psi.cap();
    let mut acc = Poly::zero(cap);
    for i in (0..=f.degree().max(0) as usize).rev() {
        if !acc.is_zero() {
            acc = x_hat_psi_apply(psi, &acc.truncate_to(cap - 1)).expect("degree < cap");
        }
        acc = &acc + &g.scale(&f.coeff(i));
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    /// Coefficients of `x^n`.
    XBasis,
    /// Coefficients of `x^{n*ψ}`.
    StarBasis,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StarPoly {
    pub plain: Poly,
    pub interpretation: Interpretation,
}

/// `n!/nψ!`, the weight of `x^n` in `x^{n*ψ}`.
fn star_weight(psi: &PsiSequence, n: usize) -> Scalar {
    Scalar::factorial(n) / psi.fact(n)
}

impl StarPoly {
    pub fn in_x_basis(plain: Poly) -> Self {
        StarPoly {
            plain,
            interpretation: Interpretation::XBasis,
        }
    }

    pub fn in_star_basis(plain: Poly) -> Self {
        StarPoly {
            plain,
            interpretation: Interpretation::StarBasis,
        }
    }

    /// The same element written over `x^n`.
    pub fn to_x_basis(&self, psi: &PsiSequence) -> StarPoly {
        match self.interpretation {
            Interpretation::XBasis => self.clone(),
            Interpretation::StarBasis => StarPoly::in_x_basis(reweight(&self.plain, |n| star_weight(psi, n))),
        }
    }

    /// The same element written over `x^{n*ψ}`.
    pub fn to_star_basis(&self, psi: &PsiSequence) -> StarPoly {
        match self.interpretation {
            Interpretation::StarBasis => self.clone(),
            Interpretation::XBasis => StarPoly::in_star_basis(reweight(&self.plain, |n| {
                star_weight(psi, n).recip().expect("n! ≠ 0")
            })),
        }
    }

    /// The element as an ordinary polynomial in `x`.
    pub fn value(&self, psi: &PsiSequence) -> Poly {
        self.to_x_basis(psi).plain
    }
}

fn reweight(p: &Poly, w: impl Fn(usize) -> Scalar) -> Poly {
    let coeffs = p.coeffs().iter().enumerate().map(|(n, c)| c * w(n)).collect();
    Poly::from_coeffs(coeffs, p.cap()).expect("same length")
}

/// `x^{n*ψ} = (n!/nψ!) x^n`, in the x-basis.
pub fn star_power(psi: &PsiSequence, n: usize) -> Result<StarPoly> {
    if n > psi.cap() {
        return Err(Error::IndexOutOfCap {
            index: n,
            cap: psi.cap(),
        });
    }
    Ok(StarPoly::in_x_basis(Poly::term(star_weight(psi, n), n, psi.cap())?))
}

/// `∂ψ(f *ψ g) = (Df) *ψ g + f *ψ (∂ψ g)`.
pub fn star_leibniz_check(psi: &PsiSequence, f: &Poly, g: &StarPoly) -> Result<bool> {
    let g = g.value(psi);
    let lhs = d_psi_apply(psi, &star(psi, f, &g)?);
    let rhs = &star(psi, &f.derivative(), &g)? + &star(psi, f, &d_psi_apply(psi, &g))?;
    Ok(lhs == rhs)
}

/// `Σ_{k<=order} c_k x̂ψ^k 1` for the coefficient stream `c`.
fn series_in_x_hat_on_one(psi: &PsiSequence, c: &[Scalar]) -> Poly {
    let cap = psi.cap();
    let mut out = Poly::zero(cap);
    for (k, ck) in c.iter().enumerate().take(cap + 1) {
        if !ck.is_zero() {
            out = &out + &Poly::term(ck * star_weight(psi, k), k, cap).expect("k <= cap");
        }
    }
    out
}

fn exp_coeffs(a: &Scalar, order: usize) -> Vec<Scalar> {
    (0..=order).map(|k| a.pow(k as u32) / Scalar::factorial(k)).collect()
}

fn exp_psi_coeffs(psi: &PsiSequence, a: &Scalar, order: usize) -> Vec<Scalar> {
    (0..=order).map(|k| a.pow(k as u32) / psi.fact(k)).collect()
}

/// `expψ[αx] = exp{αx̂ψ} 1` to degree `order`.
pub fn exp_psi_on_one_check(psi: &PsiSequence, alpha: &Scalar, order: usize) -> Result<bool> {
    check_order(psi, order)?;
    let lhs = Poly::from_coeffs(exp_psi_coeffs(psi, alpha, order), psi.cap())?;
    Ok(lhs == series_in_x_hat_on_one(psi, &exp_coeffs(alpha, order)))
}

fn check_order(psi: &PsiSequence, order: usize) -> Result<()> {
    if order > psi.cap() {
        return Err(Error::GuardBandExceeded(format!(
            "order {order} exceeds cap {}",
            psi.cap()
        )));
    }
    Ok(())
}

/// The exponential law for `*ψ`, on degrees `<= order`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ExpLaw {
    /// `exp[αx] *ψ expψ[βx] = expψ[(α+β)x]`.
    pub corrected: bool,
    /// `exp[αx] *ψ (expψ{βx̂ψ} 1) = expψ{(α+β)x̂ψ} 1`, as printed; true for
    /// the classical sequence only.
    pub printed: bool,
}

pub fn exponential_law_check(psi: &PsiSequence, alpha: &Scalar, beta: &Scalar, order: usize) -> Result<ExpLaw> {
    check_order(psi, order)?;
    let cap = psi.cap();
    let exp_a = Poly::from_coeffs(exp_coeffs(alpha, order), cap)?;
    let sum = alpha + beta;
    let g = Poly::from_coeffs(exp_psi_coeffs(psi, beta, order), cap)?;
    let lhs = star_trunc(psi, &exp_a, &g).truncate_to(order);
    let rhs = Poly::from_coeffs(exp_psi_coeffs(psi, &sum, order), cap)?;
    let g_printed = series_in_x_hat_on_one(psi, &exp_psi_coeffs(psi, beta, order));
    let lhs_printed = star_trunc(psi, &exp_a, &g_printed).truncate_to(order);
    let rhs_printed = series_in_x_hat_on_one(psi, &exp_psi_coeffs(psi, &sum, order));
    Ok(ExpLaw {
        corrected: lhs == rhs,
        printed: lhs_printed == rhs_printed,
    })
}

/// `f(x̂ψ) g(x̂ψ) 1 = f(x) *ψ g̃(x)` with `g̃ = g(x̂ψ) 1`.
pub fn operator_product_check(psi: &PsiSequence, f: &Poly, g: &Poly) -> Result<bool> {
    let g_tilde = series_in_x_hat_on_one(psi, g.coeffs());
    let rhs = star(psi, f, &g_tilde)?;
    let fg = f.checked_mul(g)?;
    Ok(rhs == series_in_x_hat_on_one(psi, fg.coeffs()))
}

/// `f(x̂ψ) = Σ c_n x̂ψ^n` as a matrix (exact on degrees `<= cap − order`).
pub fn series_in_x_hat(psi: &PsiSequence, c: &[Scalar]) -> Result<OpMatrix> {
    let x = x_hat_psi(psi);
    let mut acc = OpMatrix::zero(psi.cap());
    let mut pw = OpMatrix::identity(psi.cap());
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            pw = x.compose(&pw)?;
        }
        acc = acc.checked_add(&pw.scale(cn))?;
    }
    Ok(acc)
}

/// `∂̂ψ Σ c_n x̂ψ^n = Σ n c_n x̂ψ^{n−1}`.
pub fn psi_pincherle_derivation(c: &[Scalar], psi: &PsiSequence) -> Result<Vec<Scalar>> {
    if c.is_empty() || c.len() - 1 > psi.cap() {
        return Err(Error::GuardBandExceeded(format!(
            "series order {} outside 0..={}",
            c.len() as isize - 1,
            psi.cap()
        )));
    }
    let mut out: Vec<Scalar> = (1..c.len()).map(|n| &c[n] * Scalar::int(n as i64)).collect();
    if out.is_empty() {
        out.push(Scalar::zero());
    }
    Ok(out)
}

/// Cross-checks the formal derivation against `[∂ψ, f(x̂ψ)]` on the exact
/// range, and `[∂̂ψ f(x̂ψ)] 1 = ∂ψ f(x)` with `f` read in `*ψ`-powers.
pub fn psi_pincherle_check(c: &[Scalar], psi: &PsiSequence) -> Result<bool> {
    let dc = psi_pincherle_derivation(c, psi)?;
    let comm = d_psi(psi).commutator(&series_in_x_hat(psi, c)?)?;
    let formal = series_in_x_hat(psi, &dc)?;
    let on_one = formal.apply(&Poly::one(psi.cap()))?;
    let f = series_in_x_hat_on_one(psi, c);
    Ok(comm.agrees_within_validity(&formal) && on_one == d_psi_apply(psi, &f))
}

/// Components of the ψ-Poisson process, truncated.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PoissonModel {
    #[serde(skip)]
    pub psi: PsiSequence,
    #[serde(rename = "lambda")]
    pub lam: Scalar,
    pub components: Vec<Poly>,
    /// `N(λ,x) = exp[λx] *ψ expψ[−λx]`, kept to degree `series_order`.
    pub normalizer: Poly,
    /// Degrees on which the difference equations hold exactly.
    pub guard_degree: usize,
    #[serde(skip)]
    pub series_order: usize,
}

/// Verdicts for a [`PoissonModel`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PoissonChecks {
    /// `∂ψ p_0 = −λ p_0`, `∂ψ p_m + λ p_m = λ p_{m−1}` on the guard band.
    pub difference_equations: bool,
    /// `Σ_{m<=M} p_m = N` on degrees `<= min(M, series_order)`.
    pub partial_sum: bool,
    /// `N = 1` on degrees `<= series_order`.
    pub normalizer_is_one: bool,
    /// `p_m = p_m(x̂ψ) 1` with `p_m(X) = ((λX)^m/m!) exp{−λX}`.
    pub operator_solution: bool,
}

impl PoissonChecks {
    pub fn all(&self) -> bool {
        self.difference_equations && self.partial_sum && self.normalizer_is_one && self.operator_solution
    }
}

/// `p_m = ((λx̂ψ)^m/m!) expψ[−λx]` for `m <= M`, with `expψ` truncated at
/// `series_order`.
pub fn poisson_build(psi: &PsiSequence, lam: &Scalar, m: usize, series_order: usize) -> Result<PoissonModel> {
    let cap = psi.cap();
    if m + series_order > cap || series_order == 0 {
        return Err(Error::GuardBandExceeded(format!(
            "M + series order = {} must be <= cap {cap} (series order >= 1)",
            m + series_order
        )));
    }
    let e = Poly::from_coeffs(exp_psi_coeffs(psi, &-lam, series_order), cap)?;
    let mut components = Vec::with_capacity(m + 1);
    let mut cur = e.clone();
    for k in 0..=m {
        if k > 0 {
            cur = x_hat_psi_apply(psi, &cur)?.scale(&(lam / Scalar::int(k as i64)));
        }
        components.push(cur.clone());
    }
    let exp_l = Poly::from_coeffs(exp_coeffs(lam, series_order), cap)?;
    let normalizer = star_trunc(psi, &exp_l, &e).truncate_to(series_order);
    Ok(PoissonModel {
        psi: psi.clone(),
        lam: lam.clone(),
        components,
        normalizer,
        guard_degree: series_order - 1,
        series_order,
    })
}

impl PoissonModel {
    pub fn max_index(&self) -> usize {
        self.components.len() - 1
    }

    /// Degrees on which partial sums match the normalizer.
    pub fn partial_sum_guard(&self) -> usize {
        self.max_index().min(self.series_order)
    }

    /// Components from the operator solution `p_m(x̂ψ) 1`.
    pub fn operator_components(&self) -> Vec<Poly> {
        let s = self.series_order;
        (0..=self.max_index())
            .map(|m| {
                let mut c = vec![Scalar::zero(); m + s + 1];
                let head = self.lam.pow(m as u32) / Scalar::factorial(m);
                for k in 0..=s {
                    c[m + k] = &head * (-&self.lam).pow(k as u32) / Scalar::factorial(k);
                }
                series_in_x_hat_on_one(&self.psi, &c)
            })
            .collect()
    }

    pub fn checks(&self) -> PoissonChecks {
        let psi = &self.psi;
        let g = self.guard_degree;
        let lam = &self.lam;
        let mut eqs = true;
        for (m, p) in self.components.iter().enumerate() {
            let mut lhs = &d_psi_apply(psi, p) + &p.scale(lam);
            if m > 0 {
                lhs = &lhs - &self.components[m - 1].scale(lam);
            }
            eqs &= lhs.truncate_to(g).is_zero();
        }
        let cap = psi.cap();
        let sum = self
            .components
            .iter()
            .fold(Poly::zero(cap), |acc, p| &acc + p);
        let h = self.partial_sum_guard();
        PoissonChecks {
            difference_equations: eqs,
            partial_sum: sum.agrees_to(&self.normalizer, h),
            normalizer_is_one: self.normalizer.agrees_to(&Poly::one(cap), self.series_order),
            operator_solution: self.operator_components() == self.components,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn star_examples() {
        let psi = PsiSequence::dxd(8);
        let x = Poly::monomial(1, 8).unwrap();
        assert_eq!(star(&psi, &x, &Poly::one(8)).unwrap(), x.scale(psi.n(1)));
        assert_eq!(star(&psi, &x, &x).unwrap(), Poly::term(rat(1, 2), 2, 8).unwrap());
        let x3 = Poly::monomial(3, 8).unwrap();
        assert_eq!(star(&psi, &x, &x3).unwrap(), x_hat_psi_apply(&psi, &x3).unwrap());
        let x5 = Poly::monomial(5, 8).unwrap();
        assert!(matches!(star(&psi, &x5, &x5), Err(Error::TruncationLoss { .. })));
    }

    #[test]
    fn star_powers() {
        let psi = PsiSequence::dxd(8);
        assert_eq!(star_power(&psi, 0).unwrap().plain, Poly::one(8));
        assert_eq!(star_power(&psi, 3).unwrap().plain, Poly::term(rat(1, 6), 3, 8).unwrap());
        let c = PsiSequence::classical(8);
        assert_eq!(star_power(&c, 5).unwrap().plain, Poly::monomial(5, 8).unwrap());
        let s = star_power(&psi, 3).unwrap();
        let round = s.to_star_basis(&psi).to_x_basis(&psi);
        assert_eq!(round, s);
        assert_eq!(s.to_star_basis(&psi).plain, Poly::monomial(3, 8).unwrap());
        // x^{n*} *ψ x^{k*} = (n!/nψ!) x^{(n+k)*}
        let (n, k) = (2, 3);
        let lhs = star(&psi, &star_power(&psi, n).unwrap().plain, &star_power(&psi, k).unwrap().plain).unwrap();
        let rhs = star_power(&psi, n + k).unwrap().plain.scale(&star_weight(&psi, n));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_and_exponentials() {
        let psi = PsiSequence::q_jackson(rat(1, 3), 10).unwrap();
        let x = Poly::monomial(1, 10).unwrap();
        let g = star_power(&psi, 2).unwrap();
        assert!(star_leibniz_check(&psi, &x, &g).unwrap());
        assert!(star_leibniz_check(&psi, &Poly::constant(rat(2, 5), 10), &g).unwrap());
        assert!(exp_psi_on_one_check(&psi, &rat(3, 2), 8).unwrap());
        let law = exponential_law_check(&psi, &Scalar::one(), &rat(1, 2), 8).unwrap();
        assert!(law.corrected);
        assert!(!law.printed);
        let c = PsiSequence::classical(10);
        let law = exponential_law_check(&c, &Scalar::one(), &rat(1, 2), 8).unwrap();
        assert!(law.corrected && law.printed);
    }

    #[test]
    fn pincherle_derivation() {
        let psi = PsiSequence::dxd(12);
        let one = [Scalar::zero(), Scalar::one()];
        assert_eq!(psi_pincherle_derivation(&one, &psi).unwrap(), vec![Scalar::one()]);
        assert!(psi_pincherle_check(&one, &psi).unwrap());
        assert_eq!(psi_pincherle_derivation(&[rat(4, 3)], &psi).unwrap(), vec![Scalar::zero()]);
        let cube = [0, 0, 0, 1].map(Scalar::int);
        assert_eq!(
            psi_pincherle_derivation(&cube, &psi).unwrap(),
            [0, 0, 3].map(Scalar::int).to_vec()
        );
        assert!(psi_pincherle_check(&cube, &psi).unwrap());
    }

    #[test]
    fn poisson() {
        for psi in [PsiSequence::classical(16), PsiSequence::q_jackson(rat(1, 2), 16).unwrap()] {
            for lam in [Scalar::one(), rat(1, 2)] {
                let model = poisson_build(&psi, &lam, 5, 10).unwrap();
                let c = model.checks();
                assert!(c.all(), "{} {lam}: {c:?}", psi.label());
            }
        }
        let psi = PsiSequence::dxd(16);
        let zero = poisson_build(&psi, &Scalar::zero(), 4, 8).unwrap();
        assert_eq!(zero.components[0], Poly::one(16));
        assert!(zero.components[1..].iter().all(Poly::is_zero));
        assert_eq!(zero.normalizer, Poly::one(16));
        assert!(poisson_build(&psi, &Scalar::one(), 8, 9).is_err());
        let v = serde_json::to_value(&zero).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["components", "guard_degree", "lambda", "normalizer"]);
    }
}
