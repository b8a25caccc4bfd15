//! Exact Levi-Civita connections for bicovariant differential calculi.
//!
//! Everything is computed over the rationals; there is no floating point and
//! no tolerance anywhere.

pub mod exactla;
pub mod calculus;
pub mod lcsolver;
pub mod groupbackend;
