//! Discrete Hilbert transform based randomness measures for bit sequences.
//!
//! - [`transform`]: the finite transform (three equivalent kernels), its
//!   approximate inverse and the column-sum weights behind the measure.
//! - [`sequences`]: d-sequences of `1/p`, random-switch sequences and seeded
//!   pseudo-random bitstreams.
//! - [`measure`]: `R = 1 − |r|` and `R' = 1 − r'`.
//! - [`experiments`]: table and figure reproduction with seeded trials.

pub mod error;
pub mod experiments;
pub mod measure;
pub mod sequences;
pub mod transform;

pub use error::{Error, Result};
pub use measure::{measure, measure_fast_r, RandomnessReport};
pub use sequences::{
    apply_switches, base_switch_sequence, dsequence, format_bitstring, parse_bitstring, period,
    prng_bits, uniform_index, BitSequence, PrngState, Provenance, SwitchSpec,
};
pub use transform::{
    dht, dht_fast, dht_matrix, inverse_dht, inverse_dht_with, measure_weights, DhtKernel,
    DhtMatrix, RealSequence,
};
