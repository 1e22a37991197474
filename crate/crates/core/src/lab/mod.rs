//! Experiment harness: configs, corpus manifests, the batch verifier, report
//! writers and the command line.

pub mod cli;
pub mod config;
pub mod manifest;
pub mod report;
pub mod verify;

pub use config::{Oracles, RunConfig, Starts};
pub use manifest::{load_manifest, parse_manifest, Entry, Source};
pub use verify::{verify, verify_with, InstanceResult, RunRow, VerifyOutcome};
