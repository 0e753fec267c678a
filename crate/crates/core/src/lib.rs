//! Exact and arbitrary-precision verification of Pochhammer, Jacobi and
//! q-series identities, with the Askey-Wilson scheme families built on top.

pub mod awfamilies;
pub mod cli;
pub mod error;
pub mod jacobi;
pub mod numerics;
pub mod pochhammer;
pub mod qkernel;
pub mod registry;

pub use error::{MathError, MathResult};
