//! Exact-arithmetic library for the lattice-theoretic and period-theoretic
//! side of the K3 gluing construction: discriminant-form gluing of even
//! lattices, marked period vectors and realizability predicates, Picard
//! lattices and (-2)-root geometry, Diophantine-pair certification, Salem
//! automorphism period spectra, and majorant-series machinery.
//!
//! All lattice-level computations are exact over arbitrary-precision
//! integers and rationals; floating point is confined to the spectral
//! (`salem`), quadrature (`period::tube_integral_check`) and
//! radius-estimation paths, which say so in their signatures.

pub mod catalog;
pub mod diophantine;
pub mod error;
pub mod exact_linalg;
pub mod glue;
pub mod isometry;
pub mod lattice;
pub mod majorant;
pub mod period;
pub mod poly;
pub mod roots;
pub mod salem;
pub mod verify;

pub use error::*;
pub use exact_linalg::{IntMatrix, QMatrix};
pub use lattice::IntLattice;

/// Small deterministic PRNG for seeded randomized checks (SplitMix64).
#[derive(Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}
