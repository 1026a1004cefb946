//! Exact intersection numbers on moduli of curves with linear series: Schubert
//! integrals on Grassmannians, divisor class push-forwards from the space of
//! `g^r_d`'s, and Kodaira-dimension slope tests.

pub mod cli;
pub mod error;
pub mod exact;
pub mod families;
pub mod invariants;
pub mod linalg;
pub mod picard;
pub mod pushforward;
pub mod schubert;
pub mod slope;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
