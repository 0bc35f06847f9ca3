//! Exact arithmetic in `Z[ω]` and parallel addition in algebraic bases.

pub mod congruence;
pub mod conversion;
pub mod error;
pub mod factor;
pub mod format;
pub mod interval;
pub mod matrix;
pub mod numsystem;
pub mod poly;
pub mod ring;
pub mod roots;

pub use congruence::CongruenceStructure;
pub use conversion::{CarryCertificate, LocalRule, Verdict};
pub use error::{Error, Result};
pub use numsystem::{NumerationSystem, PositionedWord};
pub use poly::IntPolynomial;
pub use ring::{RingContext, RingElement};
