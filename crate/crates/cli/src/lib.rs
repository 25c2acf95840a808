//! Command line front end and acceptance harness for `montel`.
//!
//! The `fe` binary is a thin wrapper around [`commands::run`]. The
//! [`selftest`] module holds the ten acceptance criteria; [`oracle`] and
//! [`random`] supply the independent reference computations and seeded
//! instances they use.

pub mod commands;
pub mod oracle;
pub mod random;
pub mod selftest;
