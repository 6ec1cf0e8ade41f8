//! Lie algebra weight systems: loop-counting state sums for gl, sl and so,
//! explicit tensor oracles, Vogel parameters.

mod cubic;
mod laurent;
mod oracle;
mod ribbon;
mod statesum;
mod vogel;

pub use cubic::{cubic_relation_check, psi_matrix, psi_on_y};
pub use laurent::LaurentPolyN;
pub use ribbon::ribbon_raw;
pub use oracle::{oracle_eval, oracle_eval_budget, oracle_eval_lc, LieAlgebraSpec, OracleValue, DEFAULT_BUDGET};
pub use statesum::{calibration_pair, chord_weight, set_threads, so_scale, wsys, wsys_gl, wsys_sl, wsys_sl_stu, wsys_so, Family};
pub use vogel::{character_eval, universal_dim, VogelParams, VogelPoly};
