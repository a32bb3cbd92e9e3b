//! Test support shared by the workspace: the worked-example fixtures, random
//! bundle and vocabulary generators, and brute-force oracles that recompute
//! rule sets without going through the mining pipeline.

pub mod generate;
pub mod oracle;
pub mod fixture;
