//! Exact construction and verification of thin Hessenberg systems, their
//! transition matrices, and west-south Vandermonde systems.

pub mod bij;
pub mod field;
pub mod params;
pub mod report;
pub mod sample;
pub mod thsystem;
pub mod transition;
pub mod vand;
