//! File formats and command-line driver for `itassoc-core`.
//!
//! * [`streams`]: CSV ingestion (long `timestamp,stream,value` and wide layouts)
//! * [`config`]: the JSON pipeline config
//! * [`report`]: JSON report document, table rendering, structured tree
//! * [`cli`]: the `mine` and `validate` subcommands

pub mod cli;
pub mod config;
pub mod report;
pub mod streams;
