//! Generalized translations `E^y(∂ψ)` and `E^y(Q)` and the ψ-binomial
//! property of basic sequences.

use crate::error::{Error, Result};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;
use crate::umbral::basic::{extend_basic, BasicSequence};
use crate::umbral::DeltaSeries;

/// What `E^y(∂ψ)` is applied to.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Monomial(usize),
    Poly(&'a Poly),
    Basic(&'a BasicSequence, usize),
}

/// `E^y(∂ψ)`, with columns `(x +ψ y)^j = Σ_k (j k)ψ x^{j−k} y^k`.
pub fn translation_operator(psi: &PsiSequence, y: &Scalar) -> OpMatrix {
    DeltaSeries::translation(psi, y).to_matrix()
}

pub fn translate_poly(psi: &PsiSequence, y: &Scalar, p: &Poly) -> Result<Poly> {
    translation_operator(psi, y).apply(p)
}

/// `(x +ψ y)^n`.
pub fn translate_monomial(psi: &PsiSequence, y: &Scalar, n: usize) -> Result<Poly> {
    translate_poly(psi, y, &Poly::monomial(n, psi.cap())?)
}

pub fn translate(psi: &PsiSequence, y: &Scalar, target: Target<'_>) -> Result<Poly> {
    match target {
        Target::Monomial(n) => translate_monomial(psi, y, n),
        Target::Poly(p) => translate_poly(psi, y, p),
        Target::Basic(b, n) => {
            let p = b.polys.get(n).ok_or(Error::IndexOutOfCap {
                index: n,
                cap: b.max_index(),
            })?;
            translate_poly(psi, y, p)
        }
    }
}

/// `E^y(Q) = Σ_k (p_k(y)/kψ!) Q^k` for the basic sequence of `q`, extended to
/// the whole exact range of `q`.
#[allow(non_snake_case)]
pub fn translate_general_Q(q: &OpMatrix, basic: &BasicSequence, y: &Scalar) -> Result<OpMatrix> {
    let polys = extend_basic(q, basic)?;
    let psi = &basic.psi;
    let mut acc = OpMatrix::zero(q.cap());
    let mut pw = OpMatrix::identity(q.cap());
    for (k, p) in polys.iter().enumerate() {
        if k > 0 {
            pw = q.compose(&pw)?;
        }
        acc = acc.checked_add(&pw.scale(&(p.eval(y) / psi.fact(k))))?;
    }
    Ok(acc.with_valid(polys.len() - 1))
}

/// `Σ_k (n k)ψ p_k(x) p_{n−k}(y)`.
pub fn binomial_rhs(psi: &PsiSequence, left: &[Poly], right: &[Poly], n: usize, y: &Scalar) -> Poly {
    let mut acc = Poly::zero(psi.cap());
    for k in 0..=n {
        let c = psi.binom(n, k) * right[n - k].eval(y);
        acc = &acc + &left[k].scale(&c);
    }
    acc
}

/// The ψ-binomial property `E^y(∂ψ) p_n = Σ_k (n k)ψ p_k(x) p_{n−k}(y)` for
/// every index of `basic`.
pub fn binomial_identity_check(basic: &BasicSequence, y: &Scalar) -> Result<bool> {
    let e = translation_operator(&basic.psi, y);
    for n in 0..=basic.max_index() {
        let lhs = e.apply(&basic.polys[n])?;
        if lhs != binomial_rhs(&basic.psi, &basic.polys, &basic.polys, n, y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same property with `E^y(Q)` in place of `E^y(∂ψ)`.
pub fn general_binomial_check(q: &OpMatrix, basic: &BasicSequence, y: &Scalar) -> Result<bool> {
    let e = translate_general_Q(q, basic, y)?;
    let polys = extend_basic(q, basic)?;
    for n in 0..polys.len() {
        if e.apply(&polys[n])? != binomial_rhs(&basic.psi, &polys, &polys, n, y) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::forward_difference;
    use crate::scalar::rat;
    use crate::umbral::basic::{basic_sequence, normal_basic_general, Route};

    fn xy(psi: &PsiSequence, y: &Scalar, c: &[Scalar]) -> Poly {
        // Σ c_k x^k y^{n−k} at the given y, n = c.len() − 1
        let n = c.len() - 1;
        let coeffs = (0..=n).map(|k| &c[k] * y.pow((n - k) as u32)).collect();
        Poly::from_coeffs(coeffs, psi.cap()).unwrap()
    }

    #[test]
    fn monomial_translations() {
        let y = rat(5, 7);
        let psi = PsiSequence::classical(8);
        assert_eq!(
            translate(&psi, &y, Target::Monomial(2)).unwrap(),
            xy(&psi, &y, &[1, 2, 1].map(Scalar::int))
        );
        let q = PsiSequence::q_jackson(rat(1, 2), 8).unwrap();
        assert_eq!(
            translate_monomial(&q, &y, 2).unwrap(),
            xy(&q, &y, &[Scalar::one(), rat(3, 2), Scalar::one()])
        );
        assert_eq!(
            translate_monomial(&q, &Scalar::zero(), 5).unwrap(),
            Poly::monomial(5, 8).unwrap()
        );
    }

    #[test]
    fn general_translation() {
        let cap = 8;
        let psi = PsiSequence::classical(cap);
        let delta = forward_difference(cap);
        let b = normal_basic_general(&delta, &psi, 3).unwrap();
        let e0 = translate_general_Q(&delta, &b, &Scalar::zero()).unwrap();
        assert!(e0.agrees_on(&OpMatrix::identity(cap), cap));
        assert!(general_binomial_check(&delta, &b, &Scalar::one()).unwrap());
        let e1 = translate_general_Q(&delta, &b, &Scalar::one()).unwrap();
        // E^1(Δ) is the ordinary shift: p_2(x + 1) = (x + 1)x
        assert_eq!(e1.apply(&b.polys[2]).unwrap(), Poly::from_ints(&[0, 1, 1], cap).unwrap());

        let d = crate::operators::d_psi(&psi);
        let mono = BasicSequence::monomial(&psi, 2).unwrap();
        assert_eq!(
            translate_general_Q(&d, &mono, &rat(1, 3)).unwrap(),
            translation_operator(&psi, &rat(1, 3))
        );
    }

    #[test]
    fn binomial_type() {
        let psi = PsiSequence::dxd(10);
        let q = DeltaSeries::forward_difference_analog(&psi);
        let b = basic_sequence(&q, 8, Route::Lagrange3).unwrap();
        for y in [Scalar::one(), rat(-3, 4)] {
            assert!(binomial_identity_check(&b, &y).unwrap());
        }
    }
}
