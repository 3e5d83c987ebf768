//! Report types shared between the `u2slopes` binary and its tests.

pub mod report;
