//! G₂ fusion rings, path bases for tensor powers of the 7-dimensional
//! representation, and braid group representations on them.

pub mod qarith;
pub mod bratteli;
pub mod dims;
pub mod fusion;
pub mod lattice;
pub mod braidrep;
pub mod verify;
pub mod catalog;
