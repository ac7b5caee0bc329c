//! Multiple zeta values, their two-chain generalisations, and a harness
//! for checking identities among them numerically and exactly.

pub mod combo;
pub mod error;
pub mod eval;
pub mod forms;
pub mod index;
pub mod relations;
pub mod suite;

pub use combo::{Atom, LinearCombo, Monomial};
pub use error::{Error, Result};
pub use eval::{eval_combo, eval_mzv, eval_riemann, EvalConfig, EvalResult, Evaluator, Mode};
pub use forms::{expand, expand_star, FormKind, GeneralForm};
pub use index::MultiIndex;
