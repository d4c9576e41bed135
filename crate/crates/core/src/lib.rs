//! Computations with t-spread strongly stable monomial ideals.
//!
//! * [`monomial`]: t-spread monomials, squarefree lexicographic order, `M_{n,d,t}`;
//! * [`ideal`]: Borel closures, shadows, minimal generators, strong stability;
//! * [`betti`]: graded Betti numbers, extremal Betti numbers (corners);
//! * [`construct`]: ideals attaining the maximal number of corners;
//! * [`oracle`]: exhaustive enumeration used to corroborate the closed forms;
//! * [`format`]: JSON and text renderings shared with the command-line tool.

pub mod betti;
pub mod binom;
pub mod construct;
pub mod error;
pub mod format;
pub mod ideal;
pub mod monomial;
pub mod oracle;

pub use error::{Error, Result};
pub use ideal::SpreadIdeal;
pub use monomial::{Context, Monomial, MonomialSet};
