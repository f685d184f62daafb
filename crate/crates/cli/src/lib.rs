//! Front end for skewcode-core: commands, reproduction recipes and result
//! tables.

pub mod commands;
pub mod ops;
pub mod recipes;
pub mod table;

use skewcode_core::bases::BasisError;
use skewcode_core::codes::CodeError;
use skewcode_core::config::ConfigError;
use skewcode_core::morphisms::MapError;
use skewcode_core::par::BudgetExceeded;
use skewcode_core::skew::SkewError;
use skewcode_core::RingError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is an input problem; violations are reported through
    /// table status instead.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
