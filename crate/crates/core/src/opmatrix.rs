//! Linear operators on the truncated polynomial space, stored by their action
//! on the monomial basis (column `j` is the image of `x^j`).
//!
//! Truncation makes degree-raising operators lossy at the top of the space,
//! so every matrix carries a validity degree: the largest `d` such that
//! columns `0..=d` are the exact images of the operator it represents.
//! Composition propagates it: `A∘B` is exact on `x^j` when `B` is exact there
//! and `B x^j` lands inside `A`'s exact range.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpMatrix {
    cap: usize,
    columns: Vec<Poly>,
    valid: usize,
}

impl OpMatrix {
    pub fn identity(cap: usize) -> Self {
        let columns = (0..=cap)
            .map(|j| Poly::monomial(j, cap).expect("j <= cap"))
            .collect();
        OpMatrix {
            cap,
            columns,
            valid: cap,
        }
    }

    pub fn zero(cap: usize) -> Self {
        OpMatrix {
            cap,
            columns: vec![Poly::zero(cap); cap + 1],
            valid: cap,
        }
    }

    /// Builds from explicit columns, exact on the whole space.
    pub fn from_columns(columns: Vec<Poly>) -> Result<Self> {
        let cap = columns
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("operator needs at least one column".into()))?;
        for c in &columns {
            if c.cap() != cap {
                return Err(Error::CapMismatch {
                    left: cap,
                    right: c.cap(),
                });
            }
        }
        Ok(OpMatrix {
            cap,
            columns,
            valid: cap,
        })
    }

    /// Column-wise constructor; `f(j)` must return a polynomial of cap `cap`.
    pub fn from_fn<F>(cap: usize, valid: usize, f: F) -> Self
    where
        F: Fn(usize) -> Poly + Sync + Send,
    {
        let columns = Exec::default().map_range(cap + 1, f);
        debug_assert!(columns.iter().all(|c| c.cap() == cap));
        OpMatrix {
            cap,
            columns,
            valid: valid.min(cap),
        }
    }

    /// Diagonal operator `x^j -> d(j) x^j`.
    pub fn diagonal<F>(cap: usize, d: F) -> Self
    where
        F: Fn(usize) -> Scalar + Sync + Send,
    {
        OpMatrix::from_fn(cap, cap, |j| Poly::term(d(j), j, cap).expect("j <= cap"))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn valid(&self) -> usize {
        self.valid
    }

    pub fn columns(&self) -> &[Poly] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Poly {
        &self.columns[j]
    }

    /// Entry `[x^i] T x^j`.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].coeff(i)
    }

    /// Lowers the validity degree (never raises it).
    pub fn with_valid(mut self, valid: usize) -> Self {
        self.valid = self.valid.min(valid);
        self
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.cap != cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: cap,
            });
        }
        Ok(())
    }

    /// `T p` as the combination of columns weighted by the coefficients of `p`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.check_cap(p.cap())?;
        let mut out = Poly::zero(self.cap);
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.columns[j].scale(c);
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.compose_with(other, Exec::default())
    }

    /// `self ∘ other`, columns computed under the given strategy.
    pub fn compose_with(&self, other: &OpMatrix, exec: Exec) -> Result<OpMatrix> {
        self.check_cap(other.cap)?;
        let columns = exec.map_range(self.cap + 1, |j| {
            self.apply(&other.columns[j]).expect("caps checked")
        });
        // Saturates at 0 when even `B 1` leaves A's exact range; no
        // constructor in this crate produces such a pair.
        let valid = (0..=other.valid)
            .find(|&j| other.columns[j].degree() > self.valid as isize)
            .map_or(other.valid, |j| j.saturating_sub(1));
        Ok(OpMatrix {
            cap: self.cap,
            columns,
            valid,
        })
    }

    pub fn checked_add(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.check_cap(other.cap)?;
        Ok(OpMatrix {
            cap: self.cap,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a + b)
                .collect(),
            valid: self.valid.min(other.valid),
        })
    }

    pub fn checked_sub(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.check_cap(other.cap)?;
        Ok(OpMatrix {
            cap: self.cap,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a - b)
                .collect(),
            valid: self.valid.min(other.valid),
        })
    }

    pub fn scale(&self, c: &Scalar) -> OpMatrix {
        OpMatrix {
            cap: self.cap,
            columns: self.columns.iter().map(|p| p.scale(c)).collect(),
            valid: self.valid,
        }
    }

    /// `[A, B] = A∘B − B∘A`.
    pub fn commutator(&self, other: &OpMatrix) -> Result<OpMatrix> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.checked_sub(&ba)
    }

    pub fn pow(&self, k: usize) -> OpMatrix {
        let mut acc = OpMatrix::identity(self.cap);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same cap");
        }
        acc
    }

    /// Columns `0..=d` coincide.
    pub fn agrees_on(&self, other: &OpMatrix, d: usize) -> bool {
        self.cap == other.cap && (0..=d.min(self.cap)).all(|j| self.columns[j] == other.columns[j])
    }

    /// Columns `0..=d` vanish.
    pub fn is_zero_on(&self, d: usize) -> bool {
        (0..=d.min(self.cap)).all(|j| self.columns[j].is_zero())
    }

    /// Agreement on the common validity range of both matrices.
    pub fn agrees_within_validity(&self, other: &OpMatrix) -> bool {
        self.agrees_on(other, self.valid.min(other.valid))
    }

    /// Largest `deg(T x^j) − j` over the exact columns (`None` if all vanish).
    pub fn degree_shift(&self) -> Option<isize> {
        (0..=self.valid)
            .filter(|&j| !self.columns[j].is_zero())
            .map(|j| self.columns[j].degree() - j as isize)
            .max()
    }
}

pub fn op_apply(t: &OpMatrix, p: &Poly) -> Result<Poly> {
    t.apply(p)
}

pub fn op_compose(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    a.compose(b)
}

pub fn op_commutator(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    a.commutator(b)
}

impl Serialize for OpMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.columns.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OpMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let columns = Vec::<Poly>::deserialize(d)?;
        OpMatrix::from_columns(columns).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift_down(cap: usize) -> OpMatrix {
        OpMatrix::from_fn(cap, cap, |j| {
            if j == 0 {
                Poly::zero(cap)
            } else {
                Poly::monomial(j - 1, cap).unwrap()
            }
        })
    }

    fn mul_x(cap: usize) -> OpMatrix {
        OpMatrix::from_fn(cap, cap - 1, |j| {
            if j == cap {
                Poly::zero(cap)
            } else {
                Poly::monomial(j + 1, cap).unwrap()
            }
        })
    }

    fn d_classical(cap: usize) -> OpMatrix {
        OpMatrix::from_fn(cap, cap, |j| Poly::monomial(j, cap).unwrap().derivative())
    }

    #[test]
    fn identity_and_zero_apply() {
        let p = Poly::from_ints(&[1, -2, 3], 6).unwrap();
        assert_eq!(op_apply(&OpMatrix::identity(6), &p).unwrap(), p);
        assert!(op_apply(&OpMatrix::zero(6), &p).unwrap().is_zero());
    }

    #[test]
    fn shift_down_column_lookup() {
        let t = shift_down(6);
        let x3 = Poly::monomial(3, 6).unwrap();
        assert_eq!(t.apply(&x3).unwrap(), Poly::monomial(2, 6).unwrap());
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = d_classical(8);
        assert!(op_commutator(&a, &a).unwrap().is_zero_on(8));
    }

    #[test]
    fn d_x_commutator_is_identity_below_cap() {
        let cap = 10;
        let c = op_commutator(&d_classical(cap), &mul_x(cap)).unwrap();
        assert_eq!(c.valid(), cap - 1);
        assert!(c.agrees_on(&OpMatrix::identity(cap), cap - 1));
    }

    #[test]
    fn powers_of_x_commute() {
        let x = mul_x(8);
        let x2 = x.pow(2);
        let c = op_commutator(&x, &x2).unwrap();
        assert!(c.is_zero_on(c.valid()));
        assert_eq!(x2.valid(), 6);
    }

    #[test]
    fn compose_validity_tracks_raise() {
        let x = mul_x(8);
        let d = d_classical(8);
        assert_eq!(d.compose(&x).unwrap().valid(), 7);
        assert_eq!(x.compose(&d).unwrap().valid(), 8);
        assert_eq!(x.pow(3).valid(), 5);
    }

    #[test]
    fn cap_mismatch_errors() {
        assert!(OpMatrix::identity(3).compose(&OpMatrix::identity(4)).is_err());
        assert!(OpMatrix::identity(3).apply(&Poly::one(4)).is_err());
    }

    #[test]
    fn json_columns() {
        let m = shift_down(2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["0/1","0/1","0/1"],["1/1","0/1","0/1"],["0/1","1/1","0/1"]]"#);
        let back: OpMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
