//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Every matrix entry and point coordinate in the crate is a [`CycloNum`].
//! Elements live in the power basis modulo Φ_n; values built at different
//! conductors interoperate by embedding into the lcm conductor.

mod expr;
mod field;
mod num;
mod poly;

pub use expr::parse_expr;
pub use field::MAX_CONDUCTOR;
pub use num::{CycloNum, NumKey, Rational};
pub use poly::{cyclotomic_polynomial, euler_phi, IntPoly};

pub(crate) use field::checked_lcm;
