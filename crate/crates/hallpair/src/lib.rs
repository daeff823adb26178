//! Exact-arithmetic Hall-Littlewood calculus and desk-scale enumeration of
//! finite modules over local rings with alternating or Hermitian pairings.
//!
//! The crate has two halves that check each other:
//!
//! * a symbolic half ([`exactalg`], [`symfunc`], [`hallconst`]) working with
//!   Laurent rational functions in one formal parameter, Hall-Littlewood
//!   polynomials, and structure constants of the Hall algebra and of the
//!   alternating/Hermitian Hall modules;
//! * a brute-force half ([`basering`], [`modlat`]) that enumerates finite
//!   modules, submodule lattices, pairings, and perps at small primes and
//!   counts everything exhaustively.
//!
//! [`measures`] builds the three Cohen-Lenstra style u-probability measures
//! on partitions and their Hom-moment formulas, and [`identities`] runs
//! standalone exact identity checks. [`cli`] wires the verification suites
//! into a command-line harness; see the `examples/` directory for one
//! runnable program per capability.

pub mod basering;
pub mod cli;
pub mod exactalg;
pub mod hallconst;
pub mod identities;
pub mod measures;
pub mod modlat;
pub mod partitions;
pub mod symfunc;

pub use exactalg::{LaurentPoly, LaurentRational, Rat};
pub use partitions::Partition;
