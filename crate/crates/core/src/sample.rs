//! Seeded random generators for elements, hyperplanes and projections.
//!
//! Coordinates are small integers so all downstream arithmetic stays exact
//! and reproducible.  Every consumer derives a fresh generator per sample via
//! `rng(seed, stream)` so sample `i` is independent of how many samples ran
//! before it.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::scalar::Scalar;

pub const COORD_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn int_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(rng.gen_range(COORD_RANGE))
}

pub fn nonzero_int_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = int_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random member of `m` with integer coordinates in `[-9, 9]`.
pub fn element_m(alg: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    Element::from_coords((0..alg.dim()).map(|_| int_scalar(rng)).collect())
}

pub fn nonzero_element_m(alg: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    loop {
        let u = element_m(alg, rng);
        if !u.is_zero() {
            return u;
        }
    }
}

/// Graph coefficients of a random hyperplane complementary to the
/// annihilator, expressed over the canonical kernel basis.
pub fn graph_coeffs(n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| int_scalar(rng)).collect()
}

/// Random point coordinates over the kernel basis.
pub fn kernel_coords(n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| int_scalar(rng)).collect()
}
