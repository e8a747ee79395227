//! Exact rational arithmetic and truncated multivariate polynomial rings.
//!
//! Every Chow ring handled by this crate is presented as a product of blocks.
//! A block is `Q[g_1..g_n]` modulo truncations `g_i^{t_i}` and, optionally,
//! one projective-bundle relation on a distinguished generator `zeta`.
//! Elements are kept in normal form: truncated exponents and `zeta`-degree
//! below the bundle rank.

mod poly;
mod rational;
mod ring;

pub use poly::{permutations, TruncPoly};
pub use rational::{
    binomial, binomial_int, factorial, format_rational, frac, int, is_integer, multinomial,
    parse_rational, pochhammer, pow_i, rat, sign, to_i64, Rational,
};
pub use ring::{Block, BundleRelation, Monomial, RingDescriptor};
