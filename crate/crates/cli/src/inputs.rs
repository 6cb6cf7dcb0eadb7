//! Parsing of operator, series and polynomial arguments.
//!
//! Every argument is either a name from a fixed vocabulary, an inline JSON
//! document, or `@path` naming a JSON file. Rationals in JSON are `"n/d"`
//! strings (or bare integer strings such as `"3"`).

use std::fs;

use psicalc::operators::{d_classical, d_psi, d_q, d_r, d_zero, dilation, n_hat_psi, x_hat, x_hat_psi};
use psicalc::umbral::DeltaSeries;
use psicalc::verify::classifier_examples;
use psicalc::{random, Error, OpMatrix, Poly, PsiSequence, RationalFunction, Result, Scalar};
use serde::de::DeserializeOwned;

/// Loads inline JSON or `@file` JSON; `None` when `spec` is a plain name.
fn json_of<T: DeserializeOwned>(spec: &str) -> Result<Option<T>> {
    let text = if let Some(path) = spec.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?
    } else if spec.trim_start().starts_with(['[', '{', '"']) {
        spec.to_string()
    } else {
        return Ok(None);
    };
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

pub fn scalar_list(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

pub fn rational_function(numer: Option<&str>, denom: Option<&str>) -> Result<Option<RationalFunction>> {
    match (numer, denom) {
        (None, None) => Ok(None),
        (n, d) => Ok(Some(RationalFunction::new(
            scalar_list(n.unwrap_or("1"))?,
            scalar_list(d.unwrap_or("1"))?,
        ))),
    }
}

/// A polynomial given as an ascending JSON coefficient array.
pub fn poly(spec: &str, cap: usize) -> Result<Poly> {
    let coeffs: Vec<Scalar> =
        json_of(spec)?.ok_or_else(|| Error::Parse(format!("expected a JSON coefficient array, got {spec:?}")))?;
    Poly::from_coeffs(coeffs, cap)
}

pub const DELTA_NAMES: &[&str] = &["d_psi", "d_psi+d_psi^2", "forward-difference", "identity-series"];

/// A series in ∂ψ: a name from [`DELTA_NAMES`] or a JSON coefficient array
/// `[c_0, c_1, ...]` (an exact polynomial in ∂ψ).
pub fn series(spec: &str, psi: &PsiSequence) -> Result<DeltaSeries> {
    if let Some(coeffs) = json_of::<Vec<Scalar>>(spec)? {
        return DeltaSeries::polynomial(psi.clone(), coeffs);
    }
    let (z, one) = (Scalar::zero(), Scalar::one());
    match spec {
        "d_psi" => Ok(DeltaSeries::d_psi(psi)),
        "d_psi+d_psi^2" => DeltaSeries::polynomial(psi.clone(), vec![z, one.clone(), one]),
        "forward-difference" => Ok(DeltaSeries::forward_difference_analog(psi)),
        "identity-series" => DeltaSeries::polynomial(psi.clone(), vec![one]),
        other => Err(Error::Parse(format!(
            "unknown delta {other:?}; expected JSON coefficients or one of {}",
            DELTA_NAMES.join(", ")
        ))),
    }
}

pub const OPERATOR_NAMES: &[&str] = &[
    "identity",
    "x_hat",
    "x_hat_psi",
    "d_psi",
    "D",
    "number",
    "n_hat_psi",
    "dilation",
    "d_0",
    "d_q",
    "d_R",
    "dxd",
    "remark-counterexample",
    "random",
];

pub struct OperatorContext<'a> {
    pub psi: &'a PsiSequence,
    pub q: Option<&'a Scalar>,
    pub r: Option<&'a RationalFunction>,
    pub seed: u64,
}

/// An operator: a name from [`OPERATOR_NAMES`], a delta name, or a JSON array
/// of columns (images of `x^0, x^1, ...`). A JSON matrix with fewer than
/// `cap + 1` columns is known exactly only on the degrees it covers.
pub fn operator(spec: &str, ctx: &OperatorContext<'_>) -> Result<OpMatrix> {
    let cap = ctx.psi.cap();
    if let Some(columns) = json_of::<Vec<Vec<Scalar>>>(spec)? {
        if columns.is_empty() || columns.len() > cap + 1 {
            return Err(Error::Parse(format!("matrix needs 1..={} columns, got {}", cap + 1, columns.len())));
        }
        let known = columns.len() - 1;
        let mut polys = columns
            .into_iter()
            .map(|c| Poly::from_coeffs(c, cap))
            .collect::<Result<Vec<_>>>()?;
        polys.resize(cap + 1, Poly::zero(cap));
        return Ok(OpMatrix::from_columns(polys)?.with_valid(known));
    }
    let need_q = || ctx.q.ok_or(Error::MissingParameter("q"));
    Ok(match spec {
        "identity" => OpMatrix::identity(cap),
        "x_hat" => x_hat(cap),
        "x_hat_psi" => x_hat_psi(ctx.psi),
        "d_psi" => d_psi(ctx.psi),
        "D" => d_classical(cap),
        "number" => x_hat(cap).compose(&d_classical(cap))?,
        "n_hat_psi" => n_hat_psi(ctx.psi),
        "dilation" => dilation(need_q()?, cap),
        "d_0" => d_zero(cap),
        "d_q" => d_q(need_q()?, cap)?,
        "d_R" => d_r(ctx.r.ok_or(Error::MissingParameter("R"))?, need_q()?, cap)?,
        "dxd" => classifier_examples(cap)?.0,
        "remark-counterexample" => classifier_examples(cap)?.1,
        "random" => random::operator(&mut random::rng(ctx.seed), cap, 0),
        other if DELTA_NAMES.contains(&other) => series(other, ctx.psi)?.to_matrix(),
        other => {
            return Err(Error::Parse(format!(
                "unknown operator {other:?}; expected a JSON column matrix or one of {}",
                OPERATOR_NAMES.join(", ")
            )))
        }
    })
}

/// A degree-lowering operator from its table `b[n-1][k-1] = [x^{n-k}] Q x^n`
/// for `n = 1..=rows`, `k = 1..=n`.
pub fn operator_from_b_table(spec: &str, cap: usize) -> Result<OpMatrix> {
    let rows: Vec<Vec<Scalar>> =
        json_of(spec)?.ok_or_else(|| Error::Parse("expected a JSON b-table".into()))?;
    if rows.len() > cap {
        return Err(Error::CapExceeded {
            requested: rows.len(),
            limit: cap,
        });
    }
    let mut columns = vec![Poly::zero(cap); cap + 1];
    for (i, row) in rows.iter().enumerate() {
        let n = i + 1;
        if row.len() > n {
            return Err(Error::Parse(format!("b-table row {n} has {} entries, at most {n} allowed", row.len())));
        }
        for (j, b) in row.iter().enumerate() {
            columns[n].set_coeff(n - (j + 1), b.clone())?;
        }
    }
    Ok(OpMatrix::from_columns(columns)?.with_valid(rows.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        let psi = PsiSequence::classical(6);
        let s = series(r#"["0","1","1/2"]"#, &psi).unwrap();
        assert_eq!(s.coeff(2), Scalar::new(1, 2));
        assert!(series("nope", &psi).is_err());
        let ctx = OperatorContext {
            psi: &psi,
            q: None,
            r: None,
            seed: 0,
        };
        let m = operator(r#"[["0"],["0","0"],["0","2"]]"#, &ctx).unwrap();
        assert_eq!(m.valid(), 2);
        assert_eq!(m.column(2), &Poly::from_ints(&[0, 2], 6).unwrap());
        assert!(matches!(operator("[[", &ctx), Err(Error::Parse(_))));
        assert!(matches!(operator("d_q", &ctx), Err(Error::MissingParameter("q"))));
        let b = operator_from_b_table(r#"[["1"],["2","0"]]"#, 6).unwrap();
        assert_eq!(b.column(2), &Poly::from_ints(&[0, 2], 6).unwrap());
    }
}
