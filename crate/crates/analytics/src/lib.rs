//! Offline analyses over gameplay snapshots: headline word counts with a
//! rank-sum comparison, punctuation usage, normalized player scores and
//! per-player learning slopes, plus CSV export.

pub mod chars;
pub mod corpus;
pub mod ranksum;
pub mod report;
pub mod scores;
pub mod slopes;
pub mod words;

mod error;

pub use error::AnalyticsError;
pub use ranksum::{ranksum, Method, RankSumResult};
pub use report::{analyze, export_report, AnalysisOptions, Manifest, Report};
