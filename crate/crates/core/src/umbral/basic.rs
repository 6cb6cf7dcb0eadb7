//! Basic polynomial sequences: `p_0 = 1`, `p_n(0) = 0`, `Q p_n = nψ p_{n−1}`.
//!
//! For a delta series `Q = ∂ψ S` the sequence has four closed forms
//! (one Rodrigues-type recursion, three Lagrange-type formulas) which are
//! computed independently and must agree. For an arbitrary degree-lowering
//! `Q` the sequence is obtained by triangular back-substitution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::x_hat_psi;
use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;
use crate::umbral::recognize::check_degree_lowering;
use crate::umbral::DeltaSeries;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Monomial,
    Rodrigues,
    Lagrange1,
    Lagrange2,
    Lagrange3,
    #[serde(rename = "general_Q_solve")]
    GeneralQSolve,
}

/// The closed-form routes for a delta series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    Rodrigues,
    Lagrange1,
    Lagrange2,
    Lagrange3,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Rodrigues, Route::Lagrange1, Route::Lagrange2, Route::Lagrange3];

    pub fn source(self) -> Source {
        match self {
            Route::Rodrigues => Source::Rodrigues,
            Route::Lagrange1 => Source::Lagrange1,
            Route::Lagrange2 => Source::Lagrange2,
            Route::Lagrange3 => Source::Lagrange3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Route::Rodrigues => "rodrigues",
            Route::Lagrange1 => "lagrange1",
            Route::Lagrange2 => "lagrange2",
            Route::Lagrange3 => "lagrange3",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BasicSequence {
    pub psi: PsiSequence,
    pub polys: Vec<Poly>,
    pub source: Source,
    /// The delta series the sequence was built from, when there is one.
    #[serde(skip)]
    pub generator: Option<DeltaSeries>,
}

impl BasicSequence {
    /// `p_n = x^n`, the basic sequence of ∂ψ.
    pub fn monomial(psi: &PsiSequence, m: usize) -> Result<Self> {
        let polys = (0..=m)
            .map(|n| Poly::monomial(n, psi.cap()))
            .collect::<Result<_>>()?;
        Ok(BasicSequence {
            psi: psi.clone(),
            polys,
            source: Source::Monomial,
            generator: Some(DeltaSeries::d_psi(psi)),
        })
    }

    /// Largest index `M`.
    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    /// `Φ`-style scaled sequence `b_n = p_n / nψ!`, so that `Q b_n = b_{n−1}`.
    pub fn scaled(&self) -> Vec<Poly> {
        self.polys
            .iter()
            .enumerate()
            .map(|(n, p)| p.scale(&self.psi.fact(n).recip().expect("nψ! ≠ 0")))
            .collect()
    }

    /// Re-checks the defining conditions against `q` (exact on the indices
    /// covered by its validity).
    pub fn verify(&self, q: &OpMatrix) -> Result<()> {
        verify_basic(&self.polys, &self.psi, q)
    }
}

/// `p_0 = 1`, `p_n(0) = 0`, `deg p_n = n`, `Q p_n = nψ p_{n−1}`.
pub(crate) fn verify_basic(polys: &[Poly], psi: &PsiSequence, q: &OpMatrix) -> Result<()> {
    let fail = |msg: String| Err(Error::BasisMismatch(msg));
    if polys.is_empty() || polys[0] != Poly::one(psi.cap()) {
        return fail("p_0 ≠ 1".into());
    }
    if polys.len() - 1 > q.valid() {
        return fail(format!(
            "sequence reaches index {} but the operator is exact only to degree {}",
            polys.len() - 1,
            q.valid()
        ));
    }
    for n in 1..polys.len() {
        let p = &polys[n];
        if p.degree() != n as isize {
            return fail(format!("deg p_{n} = {}", p.degree()));
        }
        if !p.coeff(0).is_zero() {
            return fail(format!("p_{n}(0) ≠ 0"));
        }
        if q.apply(p)? != polys[n - 1].scale(psi.n(n)) {
            return fail(format!("Q p_{n} ≠ {n}ψ p_{}", n - 1));
        }
    }
    Ok(())
}

fn route_polys(q: &DeltaSeries, m: usize, route: Route) -> Result<Vec<Poly>> {
    let psi = q.psi();
    let cap = psi.cap();
    // Padding beyond the known order cannot change p_0..p_M, which depend
    // on c_1..c_M only; it lets every formula use one common order.
    let q = q.clone().with_order(cap + 1);
    let s = q.shift_down()?;
    let dq = q.formal_derivative();
    let xh = x_hat_psi(psi);
    let monomial = |n: usize| Poly::monomial(n, cap);
    let ratio = |n: usize| psi.n(n) / Scalar::int(n as i64);
    let mut polys = vec![Poly::one(cap)];
    match route {
        Route::Rodrigues => {
            let dq_inv = dq.reciprocal()?.to_matrix();
            for n in 1..=m {
                let prev = dq_inv.apply(&polys[n - 1])?;
                polys.push(xh.apply(&prev)?.scale(&ratio(n)));
            }
        }
        Route::Lagrange1 => {
            for n in 1..=m {
                let op = dq.mul(&s.power(-(n as i64) - 1)?)?;
                polys.push(op.apply(&monomial(n)?)?);
            }
        }
        Route::Lagrange2 => {
            for n in 1..=m {
                let s_n = s.power(-(n as i64))?;
                let first = s_n.apply(&monomial(n)?)?;
                let second = s_n.formal_derivative().apply(&monomial(n - 1)?)?;
                polys.push(&first - &second.scale(&ratio(n)));
            }
        }
        Route::Lagrange3 => {
            for n in 1..=m {
                let inner = s.power(-(n as i64))?.apply(&monomial(n - 1)?)?;
                polys.push(xh.apply(&inner)?.scale(&ratio(n)));
            }
        }
    }
    Ok(polys)
}

/// The basic sequence `p_0..p_M` of the delta series `q` by the given route,
/// re-verified against `q` before it is returned.
pub fn basic_sequence(q: &DeltaSeries, m: usize, route: Route) -> Result<BasicSequence> {
    if !q.coeffs()[0].is_zero() {
        return Err(Error::NotDeltaOperator("constant term must vanish"));
    }
    if q.coeff(1).is_zero() {
        return Err(Error::NotDeltaOperator("linear coefficient must be nonzero"));
    }
    let cap = q.psi().cap();
    if m + 1 > cap {
        return Err(Error::CapExceeded {
            requested: m,
            limit: cap.saturating_sub(1),
        });
    }
    if m > q.order() {
        return Err(Error::CapExceeded {
            requested: m,
            limit: q.order(),
        });
    }
    let polys = route_polys(q, m, route)?;
    verify_basic(&polys, q.psi(), &q.to_matrix())?;
    Ok(BasicSequence {
        psi: q.psi().clone(),
        polys,
        source: route.source(),
        generator: Some(q.clone()),
    })
}

/// Solves `Q p_n = nψ p_{n−1}`, `p_0 = 1`, `p_n(0) = 0` for `n <= M` by
/// back-substitution; `Q` need not be a series in any ∂ψ.
pub fn normal_basic_general(q: &OpMatrix, psi: &PsiSequence, m: usize) -> Result<BasicSequence> {
    if q.cap() != psi.cap() {
        return Err(Error::CapMismatch {
            left: q.cap(),
            right: psi.cap(),
        });
    }
    let polys = solve_basic(q, psi, m, vec![Poly::one(q.cap())])?;
    verify_basic(&polys, psi, q)?;
    Ok(BasicSequence {
        psi: psi.clone(),
        polys,
        source: Source::GeneralQSolve,
        generator: None,
    })
}

/// Continues the triangular solve from the given prefix up to index `m`.
fn solve_basic(q: &OpMatrix, psi: &PsiSequence, m: usize, mut polys: Vec<Poly>) -> Result<Vec<Poly>> {
    let cap = q.cap();
    if m > q.valid() {
        return Err(Error::CapExceeded {
            requested: m,
            limit: q.valid(),
        });
    }
    match check_degree_lowering(q, m) {
        Err(Error::ZeroSubdiagonal { n }) => return Err(Error::SingularSystem(n)),
        other => other?,
    }
    for n in polys.len()..=m {
        let target = polys[n - 1].scale(psi.n(n));
        let mut a = vec![Scalar::zero(); n + 1];
        // [x^j] Q p_n = Σ_{i>j} a_i [x^j] Q x^i, solved for a_{j+1} from the top.
        for j in (0..n).rev() {
            let mut rhs = target.coeff(j);
            for (i, ai) in a.iter().enumerate().skip(j + 2) {
                rhs -= &(ai * q.entry(j, i));
            }
            let pivot = q.entry(j, j + 1);
            let inv = pivot.recip().ok_or(Error::SingularSystem(j + 1))?;
            a[j + 1] = rhs * inv;
        }
        polys.push(Poly::from_coeffs(a, cap)?);
    }
    Ok(polys)
}

/// Checks that `basic` belongs to `q` and continues it to every index on
/// which `q` is exact.
pub fn extend_basic(q: &OpMatrix, basic: &BasicSequence) -> Result<Vec<Poly>> {
    if q.cap() != basic.psi.cap() {
        return Err(Error::CapMismatch {
            left: q.cap(),
            right: basic.psi.cap(),
        });
    }
    basic.verify(q)?;
    solve_basic(q, &basic.psi, q.valid(), basic.polys.clone())
}

/// Coordinates of `f` in a triangular basis (`deg p_n = n`).
pub(crate) fn coords_in_basis(f: &Poly, basis: &[Poly]) -> Result<Vec<Scalar>> {
    let d = f.degree();
    if d >= basis.len() as isize {
        return Err(Error::CapExceeded {
            requested: d as usize,
            limit: basis.len() - 1,
        });
    }
    let mut rest = f.clone();
    let mut c = vec![Scalar::zero(); basis.len()];
    for n in (0..=d.max(-1)).rev().map(|n| n as usize) {
        let lead = basis[n].coeff(n);
        let a = rest.coeff(n) / lead;
        rest = &rest - &basis[n].scale(&a);
        c[n] = a;
    }
    Ok(c)
}

/// The operator dual to `q`: `p_n ↦ ((n+1)/(n+1)ψ) p_{n+1}`, written in the
/// monomial basis. Exact on degrees below `q`'s exact range.
#[allow(non_snake_case)]
pub fn x_hat_Q(q: &OpMatrix, basic: &BasicSequence) -> Result<OpMatrix> {
    let polys = extend_basic(q, basic)?;
    let psi = &basic.psi;
    let cap = q.cap();
    let top = polys.len() - 1;
    let images: Vec<Poly> = (0..top)
        .map(|n| polys[n + 1].scale(&(Scalar::int(n as i64 + 1) / psi.n(n + 1))))
        .collect();
    let columns = (0..=cap)
        .map(|j| {
            if j >= top {
                return Ok(Poly::zero(cap));
            }
            let c = coords_in_basis(&Poly::monomial(j, cap)?, &polys)?;
            let mut out = Poly::zero(cap);
            for (n, a) in c.iter().enumerate().take(j + 1) {
                if !a.is_zero() {
                    out = &out + &images[n].scale(a);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OpMatrix::from_columns(columns)?.with_valid(top.saturating_sub(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::forward_difference;
    use crate::operators::{d_classical, d_psi, x_hat};
    use crate::scalar::rat;

    fn falling(n: usize, cap: usize) -> Poly {
        let x = x_hat(cap);
        let mut p = Poly::one(cap);
        for k in 0..n {
            p = x.apply(&p).unwrap() - p.scale(&Scalar::int(k as i64));
        }
        p
    }

    #[test]
    fn monomials_for_d_psi() {
        let psi = PsiSequence::dxd(10);
        let q = DeltaSeries::d_psi(&psi);
        for route in Route::ALL {
            let b = basic_sequence(&q, 5, route).unwrap();
            assert_eq!(b.polys, BasicSequence::monomial(&psi, 5).unwrap().polys);
        }
    }

    #[test]
    fn forward_difference_gives_falling_factorials() {
        let psi = PsiSequence::classical(12);
        let q = DeltaSeries::forward_difference_analog(&psi);
        for route in Route::ALL {
            let b = basic_sequence(&q, 6, route).unwrap();
            for n in 0..=6 {
                assert_eq!(b.polys[n], falling(n, 12), "{route:?} n={n}");
            }
        }
        assert_eq!(
            basic_sequence(&q, 3, Route::Rodrigues).unwrap().polys[3],
            Poly::from_ints(&[0, 2, -3, 1], 12).unwrap()
        );
    }

    #[test]
    fn d_plus_d_squared() {
        let psi = PsiSequence::classical(10);
        let q = DeltaSeries::polynomial(psi, vec![Scalar::zero(), Scalar::one(), Scalar::one()]).unwrap();
        let b = basic_sequence(&q, 4, Route::Lagrange2).unwrap();
        assert_eq!(b.polys[2], Poly::from_ints(&[0, -2, 1], 10).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let psi = PsiSequence::classical(6);
        let id = DeltaSeries::polynomial(psi.clone(), vec![Scalar::one()]).unwrap();
        assert!(matches!(
            basic_sequence(&id, 3, Route::Rodrigues),
            Err(Error::NotDeltaOperator(_))
        ));
        let d = DeltaSeries::d_psi(&psi);
        assert!(matches!(
            basic_sequence(&d, 6, Route::Rodrigues),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn general_solve_handles_non_series() {
        let cap = 12;
        let d = d_classical(cap);
        let q = d
            .compose(&x_hat(cap))
            .unwrap()
            .compose(&d)
            .unwrap()
            .scale(&rat(1, 2))
            .checked_sub(&d.pow(3).scale(&rat(1, 3)))
            .unwrap();
        let psi = PsiSequence::custom((1..=cap).map(|n| rat((n * n) as i64, 2)).collect()).unwrap();
        let b = normal_basic_general(&q, &psi, 8).unwrap();
        assert_eq!(b.source, Source::GeneralQSolve);
        assert!(b.verify(&q).is_ok());
        let fd = normal_basic_general(&forward_difference(cap), &PsiSequence::classical(cap), 6).unwrap();
        assert_eq!(fd.polys[5], falling(5, cap));
    }

    #[test]
    fn dual_operator() {
        let cap = 10;
        let psi = PsiSequence::q_jackson(rat(1, 2), cap).unwrap();
        let d = d_psi(&psi);
        let mono = BasicSequence::monomial(&psi, 3).unwrap();
        assert_eq!(x_hat_Q(&d, &mono).unwrap(), x_hat_psi(&psi));

        let classical = PsiSequence::classical(cap);
        let delta = forward_difference(cap);
        let b = normal_basic_general(&delta, &classical, 4).unwrap();
        let xq = x_hat_Q(&delta, &b).unwrap();
        assert_eq!(xq.apply(&b.polys[1]).unwrap(), falling(2, cap));
        let c = delta.commutator(&xq).unwrap();
        assert_eq!(c.valid(), cap - 1);
        assert!(c.agrees_on(&OpMatrix::identity(cap), cap - 1));

        let wrong = BasicSequence::monomial(&classical, 3).unwrap();
        assert!(matches!(x_hat_Q(&delta, &wrong), Err(Error::BasisMismatch(_))));
    }
}
