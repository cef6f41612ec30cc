//! Numerical radius toolkit: certified brackets for `w(A)` and mechanical
//! checks of numerical-radius inequalities over random operator classes.

pub mod cli;
pub mod error;
pub mod genmat;
pub mod inequalities;
pub mod matcore;
pub mod numrange;

pub use error::{Error, Result};
