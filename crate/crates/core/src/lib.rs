//! Exact intersection numbers on Quot schemes of points.
//!
//! The crate evaluates Pluecker degrees `deg w^l` of Quot schemes of length-`l`
//! quotients of a split bundle on a product of projective spaces, together with
//! the pushforward classes `mu^l_k`, `nu^l_k` and `delta^l_k` on the symmetric
//! product. Independent pipelines are provided for every quantity and checked
//! against each other with exact rational arithmetic.

pub mod acceptance;
pub mod exactpoly;
pub mod grassmann;
pub mod hilb2;
pub mod jacobi;
pub mod linalg;
pub mod localise;
pub mod polynomial;
pub mod quot2;
pub mod schema;
pub mod symquot;
pub mod varieties;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("constant term is {0}, expected 1")]
    NotUnit(String),
    #[error("blocks are not identical")]
    BlocksNotIdentical,
    #[error("class is not homogeneous of degree {0}")]
    DegreeMismatch(u32),
    #[error("outside the supported domain: {0}")]
    Domain(String),
    #[error("pole in Pochhammer denominator at m = {0}")]
    Pole(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Two routes that must agree did not; indicates a convention or engine bug.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    /// Internal consistency failures, as opposed to bad input.
    pub fn is_cross_check(&self) -> bool {
        matches!(self, Error::CrossCheck(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub use exactpoly::{Rational, TruncPoly};
