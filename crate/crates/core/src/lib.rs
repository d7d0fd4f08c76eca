//! Exact construction and verification of vanishing ideals of spherical
//! codes: lattice shells (E6, E7, E8, Leech), small polytopes, their
//! polynomial generating sets, and certificates for the properties of those
//! ideals.

pub mod config;
pub mod exact;
pub mod gamma;
pub mod generators;
pub mod groebner;
pub mod poly;
pub mod sampling;
pub mod suite;
pub mod verify;
