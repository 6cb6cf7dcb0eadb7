//! Seeded generators for randomized trials. Every generator draws from a
//! caller-owned ChaCha stream, so a seed fixes the whole trial batch.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::opmatrix::OpMatrix;
use crate::poly::Poly;
use crate::psi::PsiSequence;
use crate::scalar::Scalar;
use crate::umbral::DeltaSeries;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The generator for trial `index` of a batch, independent of the others
/// (so batches can run in parallel and still be reproducible).
pub fn trial_rng(seed: u64, index: usize) -> TrialRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index as u64 + 1);
    r
}

/// A rational `a/b` with `|a| <= 9`, `1 <= b <= 6`.
pub fn scalar(rng: &mut TrialRng) -> Scalar {
    Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn nonzero_scalar(rng: &mut TrialRng) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Dense random polynomial of degree `<= degree` (about a third of the
/// coefficients zero).
pub fn poly(rng: &mut TrialRng, degree: usize, cap: usize) -> Poly {
    let coeffs = (0..=degree.min(cap))
        .map(|_| if rng.gen_ratio(1, 3) { Scalar::zero() } else { scalar(rng) })
        .collect();
    Poly::from_coeffs(coeffs, cap).expect("degree <= cap")
}

/// A series `Σ_{k<=order} c_k ∂ψ^k` with `c_0 = 0`, `c_1 ≠ 0`.
pub fn delta_series(rng: &mut TrialRng, psi: &PsiSequence, order: usize) -> DeltaSeries {
    let mut c = vec![Scalar::zero(), nonzero_scalar(rng)];
    c.extend((2..=order).map(|_| scalar(rng)));
    DeltaSeries::polynomial(psi.clone(), c).expect("nonempty")
}

/// A series with nonzero constant term.
pub fn invertible_series(rng: &mut TrialRng, psi: &PsiSequence, order: usize) -> DeltaSeries {
    let mut c = vec![nonzero_scalar(rng)];
    c.extend((1..=order).map(|_| scalar(rng)));
    DeltaSeries::polynomial(psi.clone(), c).expect("nonempty")
}

/// Dense random operator with `deg T x^j <= j + raise`.
pub fn operator(rng: &mut TrialRng, cap: usize, raise: usize) -> OpMatrix {
    let columns = (0..=cap).map(|j| poly(rng, (j + raise).min(cap), cap)).collect();
    OpMatrix::from_columns(columns).expect("uniform cap")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<Scalar> = (0..5).map(|_| scalar(&mut rng(7))).collect();
        let b: Vec<Scalar> = (0..5).map(|_| scalar(&mut rng(7))).collect();
        assert_eq!(a, b);
        let t1 = operator(&mut trial_rng(3, 4), 6, 2);
        let t2 = operator(&mut trial_rng(3, 4), 6, 2);
        assert_eq!(t1, t2);
        assert_ne!(t1, operator(&mut trial_rng(3, 5), 6, 2));
    }

    #[test]
    fn shapes() {
        let mut r = rng(1);
        let t = operator(&mut r, 8, 2);
        assert!((0..=8).all(|j| t.column(j).degree() <= (j + 2).min(8) as isize));
        let psi = PsiSequence::classical(8);
        assert!(delta_series(&mut r, &psi, 5).is_delta());
        assert!(!invertible_series(&mut r, &psi, 5).coeffs()[0].is_zero());
    }
}
