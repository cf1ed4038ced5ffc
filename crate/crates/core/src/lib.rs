//! Exact analysis of switched piecewise-affine systems on the real line.
//!
//! A switched system applies one map of a finite family per step, with the
//! admissible switching sequences drawn from a constraint language. This
//! crate evaluates word-indexed compositions on points and on finite unions
//! of open intervals, then builds machine-checkable evidence on top:
//!
//! * hitting-time sets of both types and weak-mixing certificates
//!   ([`hitting`]),
//! * distance envelopes for scrambled pairs and Xiong-chaos witnesses
//!   ([`chaos`]),
//! * ε-spread certificates and the witness sequences they induce
//!   ([`spread`]),
//! * Hausdorff distances and Vietoris-basis membership ([`geometry`]).
//!
//! Arithmetic is exact over [`Rational`] by default; [`Float`] widens every
//! enclosure endpoint outward so that set images remain supersets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod chaos;
pub mod error;
pub mod geometry;
pub mod hitting;
pub mod interval;
pub mod language;
pub mod map;
pub mod sampling;
pub mod scalar;
pub mod spread;
pub mod system;
pub mod word;

pub use error::{Error, Result, SearchError, StopReason};
pub use interval::{ClosedInterval, Domain, Interval, IntervalSet};
pub use language::{compile, LanguageSpec, PrunedAutomaton};
pub use map::{AffinePiece, PiecewiseAffineMap};
pub use scalar::{Float, Rational, Scalar};
pub use system::{tent_partition, Options, SwitchedSystem};
pub use word::{Symbol, Word};
