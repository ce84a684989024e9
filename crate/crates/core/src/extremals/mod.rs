//! Extremal problems for Taylor coefficients in `H^p(D)` and their
//! multiplicative extension to Dirichlet coefficients.
//!
//! `C(k,p) = sup { |c_k| : ‖f‖_{H^p(D)} = 1 }`. For `k = 1` it is known in
//! closed form; for `k ≥ 2` the crate only brackets it, from below by a
//! numerical search and from above by a dilation argument.

mod closed;
mod lemma;
mod multiplicative;
mod oracle;

pub use closed::{c1_closed_form, extremal_c1, C1Variant, Extremal, DEFAULT_TRUNCATION};
pub use lemma::{ck_upper_lemma, LemmaBound};
pub use multiplicative::{
    assembly_oracle, c_multiplicative, coeff_bound, growth_profile, BoundMethod, CoeffBound, GrowthMode, GrowthRow,
    MultiplicativeBound, ASSEMBLY_ORACLE_SEED,
};
pub use oracle::{ck_oracle, OracleResult, OracleSettings};
