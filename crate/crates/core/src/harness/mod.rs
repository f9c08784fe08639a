//! Fuzz corpus, property suites and reproductions of the named examples.

pub mod corpus;
pub mod reproduce;
pub mod suites;

pub use reproduce::{reproduce, Reproduction, REPRODUCTIONS};
pub use suites::{run_suite, SuiteReport, SUITES};
