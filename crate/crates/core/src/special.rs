//! ψ-exponentials and the functions sieved out of them.
//!
//! The ψ-hyperbolic function of order `m` and residue `j` is the average
//! `(1/m) Σ_k ω^{−kj} expψ{ω^k α}` over the `m`-th roots of unity. Expanding
//! `expψ` termwise, the coefficient of `α^n` is `(1/nψ!)·(1/m) Σ_k ω^{k(n−j)}`,
//! and the inner average is 1 when `n ≡ j (mod m)` and 0 otherwise. So the
//! function is exactly the mod-`m` sieve of the `expψ` coefficients, which is
//! how it is computed here; ω never appears.
//!
//! `cosψ`/`sinψ` follow the alternating-sign convention:
//! `cosψ = Σ (−1)^k α^{2k}/(2k)ψ!`, `sinψ = Σ (−1)^k α^{2k+1}/(2k+1)ψ!`;
//! `coshψ`/`sinhψ` are the unsigned even and odd parts.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operators::d_psi;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    ExpPsi,
    /// `h_j^{(m)}`.
    Hyperbolic { m: usize, j: usize },
    Cos,
    Sin,
    Cosh,
    Sinh,
    Custom,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesKind::ExpPsi => write!(f, "exp_psi"),
            SeriesKind::Hyperbolic { m, j } => write!(f, "h_{j}({m})"),
            SeriesKind::Cos => write!(f, "cos_psi"),
            SeriesKind::Sin => write!(f, "sin_psi"),
            SeriesKind::Cosh => write!(f, "cosh_psi"),
            SeriesKind::Sinh => write!(f, "sinh_psi"),
            SeriesKind::Custom => write!(f, "custom"),
        }
    }
}

impl Serialize for SeriesKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A truncated coefficient stream `Σ_{k<=order} coeffs[k] α^k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PsiSeries {
    pub kind: SeriesKind,
    pub coeffs: Vec<Scalar>,
    pub psi: PsiSequence,
}

impl PsiSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient-wise sum (orders must match).
    pub fn add(&self, other: &PsiSeries) -> PsiSeries {
        PsiSeries {
            kind: SeriesKind::Custom,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            psi: self.psi.clone(),
        }
    }

    /// Cauchy product to the common order.
    pub fn mul(&self, other: &PsiSeries) -> PsiSeries {
        let k = self.order().min(other.order());
        PsiSeries {
            kind: SeriesKind::Custom,
            coeffs: (0..=k)
                .map(|n| (0..=n).map(|i| &self.coeffs[i] * &other.coeffs[n - i]).sum())
                .collect(),
            psi: self.psi.clone(),
        }
    }
}

fn check_order(psi: &PsiSequence, order: usize) -> Result<()> {
    if order > psi.cap() {
        return Err(Error::CapExceeded {
            requested: order,
            limit: psi.cap(),
        });
    }
    Ok(())
}

fn sieve(psi: &PsiSequence, order: usize, kind: SeriesKind, keep: impl Fn(usize) -> Option<Scalar>) -> Result<PsiSeries> {
    check_order(psi, order)?;
    let coeffs = (0..=order)
        .map(|k| keep(k).map_or_else(Scalar::zero, |sign| sign / psi.fact(k)))
        .collect();
    Ok(PsiSeries {
        kind,
        coeffs,
        psi: psi.clone(),
    })
}

/// `expψ{α} = Σ α^k/kψ!`.
pub fn exp_psi(psi: &PsiSequence, order: usize) -> Result<PsiSeries> {
    sieve(psi, order, SeriesKind::ExpPsi, |_| Some(Scalar::one()))
}

/// `h_j^{(m)}`: the terms of `expψ` with index `≡ j (mod m)`.
pub fn hyperbolic_component(psi: &PsiSequence, m: usize, j: usize, order: usize) -> Result<PsiSeries> {
    if m < 2 || j >= m {
        return Err(Error::BadResidue { m, j });
    }
    sieve(psi, order, SeriesKind::Hyperbolic { m, j }, |k| {
        (k % m == j).then(Scalar::one)
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrigKind {
    Cos,
    Sin,
    Cosh,
    Sinh,
}

pub fn trig_psi(psi: &PsiSequence, kind: TrigKind, order: usize) -> Result<PsiSeries> {
    let alternating = |k: usize| {
        if (k / 2) % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        }
    };
    match kind {
        TrigKind::Cos => sieve(psi, order, SeriesKind::Cos, |k| (k % 2 == 0).then(|| alternating(k))),
        TrigKind::Sin => sieve(psi, order, SeriesKind::Sin, |k| (k % 2 == 1).then(|| alternating(k))),
        TrigKind::Cosh => sieve(psi, order, SeriesKind::Cosh, |k| (k % 2 == 0).then(Scalar::one)),
        TrigKind::Sinh => sieve(psi, order, SeriesKind::Sinh, |k| (k % 2 == 1).then(Scalar::one)),
    }
}

/// Whether `cosψ² + sinψ² = 1` up to `order` (true classically, false in
/// general; reported, not asserted).
pub fn trig_pythagorean(psi: &PsiSequence, order: usize) -> Result<bool> {
    let c = trig_psi(psi, TrigKind::Cos, order)?;
    let s = trig_psi(psi, TrigKind::Sin, order)?;
    let sum = c.mul(&c).add(&s.mul(&s));
    Ok(sum.coeffs[0].is_one() && sum.coeffs[1..].iter().all(Scalar::is_zero))
}

/// Distances of `1/k_q!` from its two limits at each sampled `q`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LimitRow {
    pub k: usize,
    /// `|1/k_q! − 1/k!|` in ascending order of `q`.
    pub to_exp: Vec<Scalar>,
    /// `|1/k_q! − 1|` in ascending order of `q`.
    pub to_geometric: Vec<Scalar>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LimitReport {
    /// The samples, sorted ascending.
    pub q_samples: Vec<Scalar>,
    pub rows: Vec<LimitRow>,
    /// `to_exp` never grows as `q` increases toward 1.
    pub approaches_exp: bool,
    /// `to_geometric` never grows as `q` decreases toward 0.
    pub approaches_geometric: bool,
}

/// `exp_q` interpolates between `1/(1−x)` (q → 0) and `exp` (q → 1): checks
/// monotone approach of each coefficient at the sampled `q`.
pub fn limit_deformation_check(q_samples: &[Scalar], order: usize) -> Result<LimitReport> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    if let Some(bad) = q_samples.iter().find(|q| **q <= zero || **q >= one) {
        return Err(Error::BadSample(bad.to_string()));
    }
    if q_samples.is_empty() {
        return Err(Error::MissingParameter("q samples"));
    }
    let mut qs = q_samples.to_vec();
    qs.sort();
    qs.dedup();
    let inv_facts: Vec<Vec<Scalar>> = qs
        .iter()
        .map(|q| {
            let psi = PsiSequence::q_jackson(q.clone(), order).expect("q in (0,1) is admissible");
            (0..=order).map(|k| psi.fact(k).recip().expect("nonzero")).collect()
        })
        .collect();
    let rows: Vec<LimitRow> = (0..=order)
        .map(|k| {
            let exact = Scalar::factorial(k).recip().expect("k! > 0");
            LimitRow {
                k,
                to_exp: inv_facts.iter().map(|f| (&f[k] - &exact).abs()).collect(),
                to_geometric: inv_facts.iter().map(|f| (&f[k] - &one).abs()).collect(),
            }
        })
        .collect();
    let approaches_exp = rows.iter().all(|r| r.to_exp.windows(2).all(|w| w[1] <= w[0]));
    let approaches_geometric = rows
        .iter()
        .all(|r| r.to_geometric.windows(2).all(|w| w[0] <= w[1]));
    Ok(LimitReport {
        q_samples: qs,
        rows,
        approaches_exp,
        approaches_geometric,
    })
}

/// Bivariate coefficients `c[i][j]` of `x^i y^j`, total degree `<= order`.
pub type Bivariate = Vec<Vec<Scalar>>;

/// `Σ_n (x +ψ y)^n/nψ!`, with `(x +ψ y)^n = Σ_k y^k (∂ψ^k x^n)/kψ!` taken from
/// the powers of the ∂ψ matrix.
pub fn translated_exponential(psi: &PsiSequence, order: usize) -> Result<Bivariate> {
    check_order(psi, order)?;
    let d = d_psi(psi);
    let mut c = vec![vec![Scalar::zero(); order + 1]; order + 1];
    let mut pw = crate::opmatrix::OpMatrix::identity(psi.cap());
    for k in 0..=order {
        if k > 0 {
            pw = d.compose(&pw)?;
        }
        for n in k..=order {
            let col = pw.column(n);
            let w = psi.fact(n).recip().expect("nonzero") / psi.fact(k);
            for (i, row) in c.iter_mut().enumerate().take(order + 1 - k) {
                row[k] += &(col.coeff(i) * &w);
            }
        }
    }
    Ok(c)
}

/// `expψ(x)·expψ(y)` to total degree `order`.
pub fn exponential_product(psi: &PsiSequence, order: usize) -> Result<Bivariate> {
    check_order(psi, order)?;
    let e = exp_psi(psi, order)?.coeffs;
    Ok((0..=order)
        .map(|i| {
            (0..=order)
                .map(|j| if i + j <= order { &e[i] * &e[j] } else { Scalar::zero() })
                .collect()
        })
        .collect())
}

/// `expψ(x +ψ y) = expψ(x)·expψ(y)` on total degree `<= order`.
pub fn exponential_addition_check(psi: &PsiSequence, order: usize) -> Result<bool> {
    Ok(translated_exponential(psi, order)? == exponential_product(psi, order)?)
}
