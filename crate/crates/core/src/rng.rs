//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha8 seeded with the run seed.
//! Independent consumers use distinct ChaCha stream ids, so oracle noise and
//! verification sampling never share a sequence even under the same seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    OracleNoise = 1,
    Verification = 2,
    ProblemData = 3,
}

pub fn stream(seed: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which as u64);
    rng
}
