//! Core library for searching polyominoes that fold into boxes.
//!
//! The pipeline: model a box surface ([`geometry`]), encode "some polyomino
//! on a board folds into the box(es)" as CNF ([`encoder`]), run an external
//! DIMACS solver ([`solver`]), decode models back into polyominoes and
//! foldings ([`fold`]), and count all distinct foldings with an independent
//! propagation oracle ([`fold`] again). [`polyomino`] supplies canonical
//! forms and exhaustive small-area enumeration for deduplication and
//! oracle-side surveys.

pub mod cnf;
pub mod encoder;
pub mod fold;
pub mod geometry;
pub mod polyomino;
pub mod solver;

pub use geometry::{BoxSpec, BoxSurface, Direction, Flag, RotationGroup};
pub use polyomino::{CanonicalForm, Polyomino};
