pub mod cli;
pub mod cocycle;
pub mod coloring;
pub mod diagram;
pub mod homology;
pub mod quandle;
pub mod spaces;
pub mod verify;
