//! Exact log canonical thresholds of reduced plane curves.

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactpoly;
pub mod highmult;
pub mod localinv;
pub mod resolution;
pub mod selftest;

pub use error::{Error, ErrorClass, Result};
