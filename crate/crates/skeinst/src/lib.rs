//! Exact computations for links in the solid torus: mixed braids, the type-B
//! Hecke algebra and its Markov trace, and reduction of the Kauffman bracket
//! skein module to the basis of powers of the loop generator.

pub mod coeffring;
pub mod braid;
pub mod hecke;
pub mod budget;
pub mod trace;
pub mod kbsm;
pub mod cli;
