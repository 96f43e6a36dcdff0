//! Proof-relevant resolution for Horn clause programs.
//!
//! Three calculi are supported: inductive resolution (Lp-m, Lam),
//! coinductive resolution (Lp-m, Nu') and extended coinductive resolution
//! (Lp-m, Lam, Nu). Every proof term found by [`engine::resolve`] is
//! re-checked by [`calculus::check`], and [`oracle`] evaluates validity in
//! bounded least and greatest Herbrand models.

#![allow(clippy::result_large_err)]

pub mod calculus;
pub mod cli;
pub mod engine;
pub mod oracle;
pub mod program;
pub mod proof;
pub mod report;
pub mod syntax;
pub mod term;
