//! Rigged configurations, Kirillov-Reshetikhin (KR) tableaux, and the
//! bijection between them for the affine families A_n^(1) and D_n^(1),
//! together with the classical Kashiwara operators on both realizations
//! and a verification harness for the commutation properties.

pub mod bijection;
pub mod crystal_tableaux;
pub mod rigged_config;
pub mod root_data;
pub mod verify;

use thiserror::Error;

/// Direction of a Kashiwara operator: `E` raises, `F` lowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    E,
    F,
}

impl Dir {
    pub const BOTH: [Dir; 2] = [Dir::E, Dir::F];
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// Well-formed data that is not in the image of the requested map.
    #[error("not in image: {0}")]
    NotInImage(String),
    /// An enumeration grew past its configured cap.
    #[error("enumeration exceeded cap of {0} elements")]
    CapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
