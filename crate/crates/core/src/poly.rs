//! Dense univariate polynomials over the rationals, truncated at a fixed
//! degree cap.
//!
//! Every `Poly` stores exactly `cap + 1` coefficients in ascending degree.
//! Two polynomials only combine when their caps agree. The `+`/`-` operators
//! panic on a cap mismatch (a programming error inside the crate); the
//! `checked_*` methods report it as [`Error::CapMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
    cap: usize,
}

/// Binary polynomial operations exposed through [`poly_arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Scalar),
}

impl Poly {
    pub fn zero(cap: usize) -> Self {
        Poly {
            coeffs: vec![Scalar::zero(); cap + 1],
            cap,
        }
    }

    pub fn constant(c: Scalar, cap: usize) -> Self {
        let mut p = Poly::zero(cap);
        p.coeffs[0] = c;
        p
    }

    pub fn one(cap: usize) -> Self {
        Poly::constant(Scalar::one(), cap)
    }

    /// `c * x^n`.
    pub fn term(c: Scalar, n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::IndexOutOfCap { index: n, cap });
        }
        let mut p = Poly::zero(cap);
        p.coeffs[n] = c;
        Ok(p)
    }

    pub fn monomial(n: usize, cap: usize) -> Result<Self> {
        Poly::term(Scalar::one(), n, cap)
    }

    /// Builds from ascending coefficients; missing high coefficients are zero.
    /// Fails if a nonzero coefficient sits above `cap`.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, cap: usize) -> Result<Self> {
        if coeffs.len() > cap + 1 {
            if let Some(d) = coeffs.iter().rposition(|c| !c.is_zero()) {
                if d > cap {
                    return Err(Error::TruncationLoss { cap, degree: d });
                }
            }
            coeffs.truncate(cap + 1);
        }
        coeffs.resize(cap + 1, Scalar::zero());
        Ok(Poly { coeffs, cap })
    }

    pub fn from_ints(ints: &[i64], cap: usize) -> Result<Self> {
        Poly::from_coeffs(ints.iter().map(|&n| Scalar::int(n)).collect(), cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn coeff_ref(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: Scalar) -> Result<()> {
        if i > self.cap {
            return Err(Error::IndexOutOfCap {
                index: i,
                cap: self.cap,
            });
        }
        self.coeffs[i] = c;
        Ok(())
    }

    /// Index of the highest nonzero coefficient; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(-1, |d| d as isize)
    }

    /// Lowest index carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        let d = self.degree();
        (d >= 0).then(|| &self.coeffs[d as usize])
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            cap: self.cap,
        }
    }

    fn check_cap(&self, other: &Poly) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_cap(other)?;
        Ok(Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            cap: self.cap,
        })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_cap(other)?;
        Ok(Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            cap: self.cap,
        })
    }

    /// Product truncated at `cap`; the flag reports whether nonzero terms
    /// were dropped.
    pub fn mul_truncating(&self, other: &Poly) -> Result<(Poly, bool)> {
        self.check_cap(other)?;
        let mut out = Poly::zero(self.cap);
        let mut lost = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if i + j > self.cap {
                    lost = true;
                    break;
                }
                out.coeffs[i + j] += &(a * b);
            }
        }
        Ok((out, lost))
    }

    /// Exact product; fails with `TruncationLoss` if the result exceeds `cap`.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        let (p, lost) = self.mul_truncating(other)?;
        if lost {
            return Err(Error::TruncationLoss {
                cap: self.cap,
                degree: (self.degree() + other.degree()) as usize,
            });
        }
        Ok(p)
    }

    /// Drops every coefficient above degree `d`.
    pub fn truncate_to(&self, d: usize) -> Poly {
        let mut p = self.clone();
        for c in p.coeffs.iter_mut().skip(d + 1) {
            *c = Scalar::zero();
        }
        p
    }

    /// Equality of the coefficients of degree `<= d`.
    pub fn agrees_to(&self, other: &Poly, d: usize) -> bool {
        (0..=d.min(self.cap.max(other.cap))).all(|i| self.coeff(i) == other.coeff(i))
    }

    /// Re-embeds into a different cap; fails if nonzero terms would be lost.
    pub fn with_cap(&self, cap: usize) -> Result<Poly> {
        Poly::from_coeffs(self.coeffs.clone(), cap)
    }

    /// Ordinary derivative `d/dx`.
    pub fn derivative(&self) -> Poly {
        let mut out = Poly::zero(self.cap);
        for n in 1..=self.cap {
            out.coeffs[n - 1] = &self.coeffs[n] * Scalar::int(n as i64);
        }
        out
    }

    /// `f(c x)`.
    pub fn dilate(&self, c: &Scalar) -> Poly {
        let mut pw = Scalar::one();
        let mut out = Poly::zero(self.cap);
        for n in 0..=self.cap {
            out.coeffs[n] = &self.coeffs[n] * &pw;
            pw = pw * c;
        }
        out
    }
}

/// Dispatches one of the elementary operations by tag.
pub fn poly_arith(a: &Poly, b: &Poly, op: &PolyOp) -> Result<Poly> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
        PolyOp::Scale(c) => Ok(a.scale(c)),
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("cap mismatch in Poly addition")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("cap mismatch in Poly subtraction")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}

impl Mul<&Scalar> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Scalar) -> Poly {
        self.scale(rhs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = n == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{:?}", mag)?;
            }
            match n {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[cap {}]({})", self.cap, self)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<Scalar>::deserialize(d)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient array"));
        }
        let cap = coeffs.len() - 1;
        Ok(Poly { coeffs, cap })
    }
}
