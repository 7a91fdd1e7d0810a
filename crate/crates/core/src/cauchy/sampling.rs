//! Deterministic seeded sampling of elements, cone points, frames and
//! exponent vectors.
//!
//! Every sample index gets its own ChaCha stream derived from `(seed, index)`,
//! so a parallel schedule over samples would reproduce the sequential report
//! bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::descriptor::AlgebraDescriptor;
use crate::element::Element;
use crate::peirce::JordanFrame;

/// Independent stream for one `(seed, index)` pair.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard-normal coordinate vector.
pub fn element(desc: AlgebraDescriptor, rng: &mut impl Rng) -> Element {
    let coords = (0..desc.ambient_dim())
        .map(|_| StandardNormal.sample(rng))
        .collect();
    Element::from_coords(desc, coords).expect("finite gaussian coordinates")
}

/// Interior cone point `v^2 + eps e` with `eps = 0.1 tr(v^2) / r`; the
/// square covers the closed cone and the shift keeps samples away from the
/// boundary.
pub fn cone_element(desc: AlgebraDescriptor, rng: &mut impl Rng) -> Element {
    let v = element(desc, rng);
    let sq = v.square();
    let eps = 0.1 * sq.trace() / desc.rank() as f64;
    sq.add(&Element::identity(desc).scale(eps))
        .expect("same descriptor")
}

/// The `index`-th cone pair of the stream family rooted at `seed`.
pub fn cone_pair(desc: AlgebraDescriptor, seed: u64, index: u64) -> (Element, Element) {
    let mut rng = stream(seed, index);
    let x = cone_element(desc, &mut rng);
    let y = cone_element(desc, &mut rng);
    (x, y)
}

/// Exponent vector with independent uniform entries in `[lo, hi]`.
pub fn exponents(r: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Vec<f64> {
    (0..r).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Random Jordan frame: the standard frame conjugated by a random
/// automorphism fixing the identity.
pub fn frame(desc: AlgebraDescriptor, rng: &mut impl Rng) -> JordanFrame {
    let k = super::kgroup::random_k_with(desc, rng);
    JordanFrame::standard(desc)
        .conjugated(&k)
        .expect("conjugated frame stays a frame")
}
