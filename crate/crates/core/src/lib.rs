//! Verification lab for the Netrunner mate-in-k hardness reductions: a rules
//! engine for the card fragment, the Partition-to-position compilers, an
//! exhaustive mate solver and an independent Partition oracle.

pub mod compiler;
pub mod engine;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod solver;
