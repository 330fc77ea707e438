//! Field-of-study networks.
//!
//! Builds topic networks from research-paper metadata, in which two fields
//! of study are linked when authors publish in both, and analyses them:
//! centralities, Louvain communities, struc2vec structural roles, and
//! drill-down from edges back to the papers behind them.

pub mod builder;
pub mod centrality;
pub mod cli;
pub mod closeread;
pub mod community;
pub mod corpus;
pub mod error;
pub mod export;
pub mod graph;
mod parallel;
pub mod roles;
pub mod synthetic;
pub mod temporal;

pub use error::{Error, Result};
