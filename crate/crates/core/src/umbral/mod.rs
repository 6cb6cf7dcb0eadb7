//! Delta operators and their umbral calculus: series in ∂ψ, recognition of
//! series among degree-lowering operators, basic sequences, generalized
//! translation, Sheffer sequences and expansions of shift-invariant operators.

pub mod basic;
pub mod recognize;
pub mod series;
pub mod sheffer;
pub mod translate;

pub use basic::{
    basic_sequence, extend_basic, normal_basic_general, x_hat_Q, BasicSequence, Route, Source,
};
pub use recognize::{b_table, recognize_delta, RecognitionResult, Witness};
pub use series::{series_arith, series_to_matrix, DeltaSeries, SeriesOp};
pub use sheffer::{
    collapsed_exponential, egf, egf_eigen_check, first_expansion, is_monomial_basic,
    reconstruct_first_expansion, sheffer_sequence, ShefferPair,
};
pub use translate::{
    binomial_identity_check, general_binomial_check, translate, translate_general_Q,
    translate_monomial, translate_poly, translation_operator, Target,
};
