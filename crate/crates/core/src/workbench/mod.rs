//! File format, example catalog, search and the self-test suite.

pub mod catalog;
pub mod format;
pub mod search;
pub mod selftest;
