//! Constructions of the number e from first principles.
//!
//! Every route to e is implemented separately and cross-checked against the
//! others: the tangent-slope definition via powers built from roots
//! ([`powcore`], [`slopes`]), the compound-interest limits ([`limits`]), the
//! factorial series and its binomial bridge ([`series`]), Euler's method for
//! `y' = y` ([`odesolve`]), and the logarithm as inverse and as integral
//! ([`loginv`]). Exact rational oracles live in [`exact`]. The [`cli`] module
//! holds the table, figure, verification and HTTP front ends.

#![cfg_attr(test, allow(clippy::approx_constant))]

pub mod cli;
pub mod consts;
pub(crate) mod dd;
pub mod error;
pub mod exact;
pub mod limits;
pub mod loginv;
pub mod odesolve;
pub mod powcore;
pub mod report;
pub mod series;
pub mod slopes;

pub use error::{Error, Result};
pub use powcore::{Enclosure, PosReal};
