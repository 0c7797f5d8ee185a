//! Identifiability of additive link metrics in networks with two monitors.
//!
//! A network is probed only along simple paths between its monitors `m1` and
//! `m2`. This crate decides which link metrics those end-to-end sums pin down,
//! recovers them exactly, and produces checkable certificates for the graph
//! conditions that govern identifiability.

pub mod cli;
pub mod connectivity;
pub mod construction;
pub mod document;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod measurement;
pub mod report;
pub mod simulation;

pub use error::{Error, Result};
pub use graph::{Link, Network, NodeId, SimplePath};
