//! Exact arithmetic on fusible numbers and the ordinal machinery below ε₀.
//!
//! The fusible numbers are the closure of `{0}` under the fuse operation
//! `x ~ y = (x + y + 1) / 2`, restricted to pairs with `|y - x| < 1`. This
//! crate provides:
//!
//! * exact dyadic/rational arithmetic ([`dyadic`]),
//! * a brute-force enumeration oracle over binary-tree representations
//!   ([`rep`]),
//! * the successor and membership algorithms over the full set ([`fusible`]),
//! * ordinals below ε₀ in weighted Cantor normal form ([`ordinal`]),
//! * budgeted evaluators for the Hardy and fast-growing hierarchies
//!   ([`hierarchy`]),
//! * the tame and meek subsystems with their gap recurrences ([`tame`],
//!   [`meek`]).
//!
//! Many of these functions compute values that are finite but astronomically
//! large. Every potentially unbounded recursion therefore threads an explicit
//! [`Budget`], and all arithmetic is guarded by a global bit-size limit so
//! that infeasible computations fail loudly instead of hanging.

pub mod budget;
pub mod dyadic;
pub mod error;
pub mod fusible;
pub mod hierarchy;
pub mod meek;
pub mod ordinal;
pub mod rep;
pub mod tame;

mod gaps;

pub use budget::Budget;
pub use dyadic::{Dyadic, Rational};

pub use error::{Error, Result};
pub use ordinal::Ordinal;

