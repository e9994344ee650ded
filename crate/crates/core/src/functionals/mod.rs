//! Volume-power functionals `V_k^(α) = Σ_F λ_k(F)^α` over the `k`-faces of
//! a complex, f-vectors (`α = 0`) and typical-simplex estimators.
//!
//! The sum runs over unordered faces, i.e. it equals the ordered-tuple sum
//! over `(k+1)`-tuples of distinct points divided by `(k+1)!`.

mod eval;
mod spec;
mod typical;

pub use eval::{evaluate_sequence, evaluate_sequence_on, volume_power, FunctionalResult};
pub use spec::{AdmissibleSequence, FunctionalSpec};
pub use typical::{typical_jface_volume, typical_moment_estimate};
