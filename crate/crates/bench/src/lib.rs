//! Shared fixtures for the criterion benchmarks in `benches/`.

use qlp_core::corpus::pair_for_length;
use qlp_core::LegendrePair;

/// The built-in pair of length `ℓ`; panics if there is none.
pub fn corpus_pair(length: usize) -> LegendrePair {
    pair_for_length(length).expect("corpus length").expect("corpus pair verifies")
}
