//! Parity game solving with Strahler-universal trees.
//!
//! The crate provides the game model and attractors ([`game`]), ordered
//! trees and their Strahler numbers ([`trees`]), succinctly navigable
//! Strahler-universal trees ([`universal`]), the recursive Zielonka solver
//! with attractor decompositions ([`zielonka`]), progress-measure lifting
//! over any navigable tree ([`lifting`]), register games ([`register`]),
//! brute-force reference oracles ([`oracles`]) and the text file format
//! plus a seeded game generator ([`io`]).

pub mod game;
pub mod io;
pub mod lifting;
pub mod oracles;
pub mod register;
mod scc;
pub mod trees;
pub mod universal;
pub mod zielonka;

pub use game::{ParityGame, Player, PositionalStrategy, Vertex, VertexSet};
pub use trees::OrderedTree;
pub use universal::{SuccinctLeaf, TreeParams};
