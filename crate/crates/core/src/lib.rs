//! Combinatorial finger/Whitney systems for sphere pairs in connected sums of
//! S2 x S2, the moves relating them, and the Z2^k-valued invariant of loops of
//! embedded spheres computed from them.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure value
//! manipulation. File IO and the command line live in the companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arc;
pub mod gen;
pub mod homology;
pub mod invariant;
pub mod moves;
pub mod oracle;
pub mod system;
pub mod text;

mod matrix;

pub use homology::{H2Class, Generator};
pub use invariant::{compute_i, hat_i, InvariantResult};
pub use moves::{Move, Surface};
pub use system::{Disc, DiscIx, Eye, Kind, Position, System};

use alloc::string::String;
use core::fmt;

/// Error for operations whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    UnknownDisc(String),
    UnknownEye(usize),
    KindMismatch(String),
    NotIa(usize),
    BadCorner(String),
    BadMove(String),
    Invalid(String),
    Parse { line: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownDisc(name) => write!(f, "unknown disc `{name}`"),
            Error::UnknownEye(i) => write!(f, "unknown eye {i}"),
            Error::KindMismatch(msg) => write!(f, "kind mismatch: {msg}"),
            Error::NotIa(eye) => write!(f, "eye {eye} does not satisfy the immersed arc condition"),
            Error::BadCorner(msg) => write!(f, "bad corner: {msg}"),
            Error::BadMove(msg) => write!(f, "move not applicable: {msg}"),
            Error::Invalid(msg) => write!(f, "invalid system: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
