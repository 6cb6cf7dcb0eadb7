//! Admissible ψ-sequences and their combinatorics.
//!
//! A sequence is stored extensionally up to the truncation degree: the deformed
//! integers `nψ` and the values `ψ_n = 1/nψ!`. Closed forms only appear in the
//! preset constructors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rational function `numer(x) / denom(x)` given by ascending coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numer: Vec<Scalar>,
    pub denom: Vec<Scalar>,
}

impl RationalFunction {
    pub fn new(numer: Vec<Scalar>, denom: Vec<Scalar>) -> Self {
        RationalFunction { numer, denom }
    }

    /// The constant function 1.
    pub fn one() -> Self {
        RationalFunction::new(vec![Scalar::one()], vec![Scalar::one()])
    }

    /// `R(x) = (1 − x)/(1 − q)`, which turns `nψ = R(q^n)` into the q-integers.
    pub fn q_integer(q: &Scalar) -> Self {
        RationalFunction::new(
            vec![Scalar::one(), Scalar::int(-1)],
            vec![Scalar::one() - q],
        )
    }

    fn horner(c: &[Scalar], x: &Scalar) -> Scalar {
        c.iter().rev().fold(Scalar::zero(), |acc, a| acc * x + a)
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let d = Self::horner(&self.denom, x);
        if d.is_zero() {
            return None;
        }
        Some(Self::horner(&self.numer, x) / d)
    }
}

/// The named families of admissible sequences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Preset {
    /// `nψ = n`.
    Classical,
    /// `nψ = (1 − q^n)/(1 − q)`.
    QJackson(Scalar),
    /// `nψ = 1`: the divided-difference case.
    Ones,
    /// `nψ = n²`, the sequence of `D x̂ D`.
    Dxd,
    /// `nψ = R(q^n)`.
    CustomR(RationalFunction, Scalar),
    /// Explicit `nψ` for `n = 1..=cap`.
    Custom(Vec<Scalar>),
}

impl Preset {
    /// Parses a preset name with its parameters.
    pub fn parse(
        label: &str,
        q: Option<Scalar>,
        r: Option<RationalFunction>,
        n_psi: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        match label {
            "classical" => Ok(Preset::Classical),
            "ones" => Ok(Preset::Ones),
            "dxd" => Ok(Preset::Dxd),
            "q-jackson" => Ok(Preset::QJackson(q.ok_or(Error::MissingParameter("q"))?)),
            "custom-R" => Ok(Preset::CustomR(
                r.ok_or(Error::MissingParameter("R"))?,
                q.ok_or(Error::MissingParameter("q"))?,
            )),
            "custom" => Ok(Preset::Custom(n_psi.ok_or(Error::MissingParameter("n_psi"))?)),
            other => Err(Error::Parse(format!("unknown psi preset {other:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PsiJson", into = "PsiJson")]
pub struct PsiSequence {
    label: String,
    q: Option<Scalar>,
    cap: usize,
    n_psi: Vec<Scalar>,
    psi_vals: Vec<Scalar>,
    factorials: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct PsiJson {
    label: String,
    q: Option<Scalar>,
    n_psi: Vec<Scalar>,
    cap: usize,
}

impl TryFrom<PsiJson> for PsiSequence {
    type Error = Error;
    fn try_from(j: PsiJson) -> Result<Self> {
        if j.n_psi.len() != j.cap + 1 {
            return Err(Error::Parse(format!(
                "n_psi has {} entries, expected cap + 1 = {}",
                j.n_psi.len(),
                j.cap + 1
            )));
        }
        if !j.n_psi[0].is_zero() {
            return Err(Error::NotAdmissible("0ψ must be 0".into()));
        }
        PsiSequence::from_n_psi(j.label, j.q, j.n_psi[1..].to_vec())
    }
}

impl From<PsiSequence> for PsiJson {
    fn from(p: PsiSequence) -> Self {
        PsiJson {
            label: p.label,
            q: p.q,
            n_psi: p.n_psi,
            cap: p.cap,
        }
    }
}

impl PsiSequence {
    /// Validates `nψ` for `n = 1..=len` and builds the tables.
    fn from_n_psi(label: String, q: Option<Scalar>, tail: Vec<Scalar>) -> Result<Self> {
        let cap = tail.len();
        let mut n_psi = Vec::with_capacity(cap + 1);
        n_psi.push(Scalar::zero());
        let mut factorials = vec![Scalar::one()];
        let mut psi_vals = vec![Scalar::one()];
        for (i, v) in tail.into_iter().enumerate() {
            let n = i + 1;
            if v.is_zero() {
                return Err(Error::NotAdmissible(format!("{n}ψ = 0")));
            }
            let f = &factorials[n - 1] * &v;
            psi_vals.push(f.recip().expect("product of nonzero values"));
            factorials.push(f);
            n_psi.push(v);
        }
        Ok(PsiSequence {
            label,
            q,
            cap,
            n_psi,
            psi_vals,
            factorials,
        })
    }

    pub fn make(preset: &Preset, cap: usize) -> Result<Self> {
        match preset {
            Preset::Classical => {
                Self::from_n_psi("classical".into(), None, (1..=cap).map(|n| Scalar::int(n as i64)).collect())
            }
            Preset::Ones => Self::from_n_psi("ones".into(), None, vec![Scalar::one(); cap]),
            Preset::Dxd => Self::from_n_psi(
                "dxd".into(),
                None,
                (1..=cap).map(|n| Scalar::int((n * n) as i64)).collect(),
            ),
            Preset::QJackson(q) => {
                if q.is_one() {
                    return Err(Error::NotAdmissible("q-jackson needs q != 1".into()));
                }
                let mut tail = Vec::with_capacity(cap);
                let mut acc = Scalar::zero();
                let mut pw = Scalar::one();
                for _ in 1..=cap {
                    acc = acc + &pw;
                    pw = pw * q;
                    tail.push(acc.clone());
                }
                Self::from_n_psi("q-jackson".into(), Some(q.clone()), tail)
            }
            Preset::CustomR(r, q) => {
                let mut tail = Vec::with_capacity(cap);
                let mut pw = Scalar::one();
                for n in 1..=cap {
                    pw = pw * q;
                    let v = r
                        .eval(&pw)
                        .ok_or_else(|| Error::NotAdmissible(format!("R(q^{n}) undefined")))?;
                    tail.push(v);
                }
                Self::from_n_psi("custom-R".into(), Some(q.clone()), tail)
            }
            Preset::Custom(values) => {
                if values.len() < cap {
                    return Err(Error::NotAdmissible(format!(
                        "custom sequence gives {} values, cap needs {cap}",
                        values.len()
                    )));
                }
                Self::from_n_psi("custom".into(), None, values[..cap].to_vec())
            }
        }
    }

    pub fn classical(cap: usize) -> Self {
        Self::make(&Preset::Classical, cap).expect("classical is admissible")
    }

    pub fn ones(cap: usize) -> Self {
        Self::make(&Preset::Ones, cap).expect("ones is admissible")
    }

    pub fn dxd(cap: usize) -> Self {
        Self::make(&Preset::Dxd, cap).expect("dxd is admissible")
    }

    pub fn q_jackson(q: Scalar, cap: usize) -> Result<Self> {
        Self::make(&Preset::QJackson(q), cap)
    }

    /// Explicit `nψ` values for `n = 1..=cap`.
    pub fn custom(values: Vec<Scalar>) -> Result<Self> {
        Self::from_n_psi("custom".into(), None, values)
    }

    /// Recognizes a table of `nψ` (with `0ψ = 0` first) as one of the named
    /// presets where possible; falls back to `custom`.
    pub fn identify(n_psi: &[Scalar]) -> Result<Self> {
        let cap = n_psi.len().saturating_sub(1);
        let tail = n_psi.get(1..).unwrap_or(&[]).to_vec();
        let custom = Self::custom(tail)?;
        let mut candidates = vec![Self::classical(cap), Self::ones(cap), Self::dxd(cap)];
        if cap >= 2 {
            let q = &n_psi[2] - Scalar::one();
            if let Ok(p) = Self::q_jackson(q, cap) {
                candidates.push(p);
            }
        }
        Ok(candidates
            .into_iter()
            .find(|c| c.n_psi == custom.n_psi)
            .unwrap_or(custom))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn q(&self) -> Option<&Scalar> {
        self.q.as_ref()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n_psi_table(&self) -> &[Scalar] {
        &self.n_psi
    }

    pub fn psi_vals(&self) -> &[Scalar] {
        &self.psi_vals
    }

    /// `nψ`; panics past the cap.
    pub fn n(&self, n: usize) -> &Scalar {
        &self.n_psi[n]
    }

    /// `nψ!`; panics past the cap.
    pub fn fact(&self, n: usize) -> &Scalar {
        &self.factorials[n]
    }

    /// Same deformed integers (labels may differ).
    pub fn same_values(&self, other: &PsiSequence) -> bool {
        self.n_psi == other.n_psi
    }

    /// True for presets with `nψ = n_q`.
    pub fn is_q_family(&self) -> bool {
        self.label == "q-jackson"
    }

    /// `nψ!`, with `0ψ! = 1`.
    pub fn psi_factorial(&self, n: usize) -> Result<Scalar> {
        self.check_index(n)?;
        Ok(self.factorials[n].clone())
    }

    /// `nψ (n−1)ψ ... (n−k+1)ψ`.
    pub fn psi_falling(&self, n: usize, k: usize) -> Result<Scalar> {
        self.check_index(n)?;
        if k > n {
            return Err(Error::KExceedsN { n, k });
        }
        Ok(&self.factorials[n] / &self.factorials[n - k])
    }

    /// The ψ-binomial coefficient `nψ^(k) / kψ!`.
    pub fn psi_binomial(&self, n: usize, k: usize) -> Result<Scalar> {
        self.check_index(n)?;
        if k > n {
            return Err(Error::KExceedsN { n, k });
        }
        Ok(self.binom(n, k))
    }

    pub(crate) fn binom(&self, n: usize, k: usize) -> Scalar {
        &self.factorials[n] / (&self.factorials[k] * &self.factorials[n - k])
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::IndexOutOfCap {
                index: n,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Builds a preset by name (the `make_preset` operation).
pub fn make_preset(preset: &Preset, cap: usize) -> Result<PsiSequence> {
    PsiSequence::make(preset, cap)
}
