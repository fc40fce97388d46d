pub mod bicyclic;
pub mod diagram;
pub mod error;
pub mod harness;
pub mod identities;
pub mod render;
pub mod representation;
pub mod rewriting;
pub mod staircase;
pub mod tribonacci;
pub mod word;
