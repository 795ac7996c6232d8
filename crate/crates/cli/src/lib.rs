//! Group files, the built-in corpus and the batch driver behind `qdeg`.

pub mod corpus;
mod error;
pub mod groupfile;
pub mod recipes;
pub mod runner;

pub use corpus::{corpus, lookup, CorpusEntry};
pub use error::CliError;
pub use groupfile::{parse_group_file, serialize_group_file, GroupFile};
pub use runner::{exit_code, run_many, run_one, GroupSource, RunOptions};
