//! Exact computation of type A Macdonald polynomials and type C
//! Hall-Littlewood polynomials, each by a sum over folding pairs of a
//! λ-chain and by a compressed sum over fillings, together with fiberwise
//! verification that the filling maps compress one into the other.

pub mod battery;
pub mod chain;
pub mod error;
pub mod formula;
pub mod io;
pub mod oracles;
pub mod partition;
pub mod qt;
pub mod type_a;
pub mod type_c;
pub mod weyl;

pub use error::{Error, Result};
