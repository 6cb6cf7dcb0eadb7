//! Power series in an auxiliary variable λ whose coefficients are truncated
//! polynomials in x: `Σ_n terms[n](x) λ^n`, kept to λ-order `lambda_cap`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BiSeries {
    terms: Vec<Poly>,
    lambda_cap: usize,
}

impl BiSeries {
    pub fn new(terms: Vec<Poly>) -> Result<Self> {
        let lambda_cap = terms
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("empty series".into()))?;
        let cap = terms[0].cap();
        if let Some(bad) = terms.iter().find(|t| t.cap() != cap) {
            return Err(Error::CapMismatch {
                left: cap,
                right: bad.cap(),
            });
        }
        Ok(BiSeries { terms, lambda_cap })
    }

    pub fn zero(lambda_cap: usize, cap: usize) -> Self {
        BiSeries {
            terms: vec![Poly::zero(cap); lambda_cap + 1],
            lambda_cap,
        }
    }

    pub fn terms(&self) -> &[Poly] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> &Poly {
        &self.terms[n]
    }

    pub fn lambda_cap(&self) -> usize {
        self.lambda_cap
    }

    pub fn x_cap(&self) -> usize {
        self.terms[0].cap()
    }

    /// Keeps λ-orders `0..=order`.
    pub fn truncate(&self, order: usize) -> BiSeries {
        let order = order.min(self.lambda_cap);
        BiSeries {
            terms: self.terms[..=order].to_vec(),
            lambda_cap: order,
        }
    }

    /// Applies an x-operator coefficient-wise.
    pub fn apply_op(&self, t: &OpMatrix) -> Result<BiSeries> {
        let terms = self
            .terms
            .iter()
            .map(|p| t.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries {
            terms,
            lambda_cap: self.lambda_cap,
        })
    }

    /// `λ · self`, dropping the top order.
    pub fn times_lambda(&self) -> BiSeries {
        let cap = self.x_cap();
        let mut terms = vec![Poly::zero(cap)];
        terms.extend(self.terms[..self.lambda_cap].iter().cloned());
        BiSeries {
            terms,
            lambda_cap: self.lambda_cap,
        }
    }

    /// Cauchy product in λ, exact in x (errors on x-truncation).
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        let order = self.lambda_cap.min(other.lambda_cap);
        let cap = self.x_cap();
        let mut terms = vec![Poly::zero(cap); order + 1];
        for (n, out) in terms.iter_mut().enumerate() {
            for k in 0..=n {
                let prod = self.terms[k].checked_mul(&other.terms[n - k])?;
                *out = &*out + &prod;
            }
        }
        Ok(BiSeries {
            terms,
            lambda_cap: order,
        })
    }

    /// Multiplicative inverse in λ; the λ⁰ coefficient must be a nonzero
    /// constant polynomial.
    pub fn reciprocal(&self) -> Result<BiSeries> {
        let head = &self.terms[0];
        if head.degree() != 0 {
            return Err(Error::NotInvertible);
        }
        let inv0 = head.coeff(0).recip().ok_or(Error::NotInvertible)?;
        let cap = self.x_cap();
        let mut out: Vec<Poly> = Vec::with_capacity(self.lambda_cap + 1);
        out.push(Poly::constant(inv0.clone(), cap));
        for n in 1..=self.lambda_cap {
            let mut acc = Poly::zero(cap);
            for k in 1..=n {
                acc = &acc + &self.terms[k].checked_mul(&out[n - k])?;
            }
            out.push(acc.scale(&(-&inv0)));
        }
        Ok(BiSeries {
            terms: out,
            lambda_cap: self.lambda_cap,
        })
    }

    pub fn scale(&self, c: &Scalar) -> BiSeries {
        BiSeries {
            terms: self.terms.iter().map(|p| p.scale(c)).collect(),
            lambda_cap: self.lambda_cap,
        }
    }

    /// Equality of λ-orders `0..=order`.
    pub fn agrees_to(&self, other: &BiSeries, order: usize) -> bool {
        order <= self.lambda_cap
            && order <= other.lambda_cap
            && (0..=order).all(|n| self.terms[n] == other.terms[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(cap: usize, order: usize) -> BiSeries {
        // Σ (λx)^n
        BiSeries::new(
            (0..=order)
                .map(|n| Poly::monomial(n, cap).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn reciprocal_of_geometric() {
        let g = geometric(8, 5);
        let r = g.reciprocal().unwrap();
        let mut expect = BiSeries::zero(5, 8).terms;
        expect[0] = Poly::one(8);
        expect[1] = -&Poly::monomial(1, 8).unwrap();
        assert_eq!(r.terms, expect);
        let one = g.mul(&r).unwrap();
        assert_eq!(one.terms[0], Poly::one(8));
        assert!(one.terms[1..].iter().all(Poly::is_zero));
    }

    #[test]
    fn non_constant_head_is_not_invertible() {
        let s = BiSeries::new(vec![Poly::monomial(1, 4).unwrap()]).unwrap();
        assert_eq!(s.reciprocal(), Err(Error::NotInvertible));
    }

    #[test]
    fn times_lambda_shifts() {
        let g = geometric(6, 3).times_lambda();
        assert!(g.term(0).is_zero());
        assert_eq!(g.term(1), &Poly::one(6));
        assert_eq!(g.term(3), &Poly::monomial(2, 6).unwrap());
    }
}
