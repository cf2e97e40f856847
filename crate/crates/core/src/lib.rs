//! Exact solving and strategy analysis for the balance and cordiality
//! vertex-labelling games on small graphs.

pub mod bitset;
pub mod bounds;
pub mod dyadic;
pub mod experiments;
pub mod game;
pub mod graph;
pub mod mnk;
pub mod solver;
pub mod strategies;
pub mod trees;

pub use bitset::VertexSet;
pub use game::{GameSpec, GameState, Player, Variant};
pub use graph::Graph;
