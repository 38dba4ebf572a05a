//! Finitely generated subgroups of free groups, represented as labeled
//! graph immersions over a bouquet of circles.
//!
//! The crate builds subgroup graphs by Stallings folding, intersects
//! subgroups through fiber products, and decides or certifies structural
//! properties of the resulting graphs: inertness (via highly inert
//! immersions), compressedness (via exhaustive quotient enumeration),
//! essential edge sets and their islands, and generalized echelon
//! certificates together with the label orders and bridge checks that
//! back them.
//!
//! ```
//! use stallings::graph::Alphabet;
//! use stallings::word::Word;
//! use stallings::fold::{accepts, fold_all, wedge_of_cycles};
//!
//! let ab = Alphabet::new(["a", "b"]).unwrap();
//! let gens = vec![Word::parse("abAB", &ab).unwrap()];
//! let h = fold_all(&wedge_of_cycles(&gens, &ab).graph);
//! assert!(accepts(&h, &Word::parse("abABabAB", &ab).unwrap()).unwrap());
//! assert!(!accepts(&h, &Word::parse("a", &ab).unwrap()).unwrap());
//! ```
//!
//! Every value is immutable after construction and every operation is a
//! pure function, so shared use across threads is safe. Randomized
//! searches take explicit seeds and are deterministic.

pub mod compress;
pub mod dot;
pub mod echelon;
pub mod essential;
pub mod fold;
pub mod graph;
pub mod harness;
pub mod inert;
pub mod json;
pub mod order;
pub mod pullback;
pub mod random;
pub mod word;

pub use graph::{Alphabet, EdgeId, LabeledGraph, VertexId};
pub use word::{Letter, Word};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid oracle: {0}")]
    InvalidOracle(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
