//! Finite sets with variable finite group actions.

pub mod burnside;
pub mod fixtures;
pub mod group;
pub mod gset;
pub mod json;
pub mod laws;
pub mod poly;
pub mod scat;
pub mod slice;
