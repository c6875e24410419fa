//! Deterministic seeding. Every stochastic entry point takes a 64-bit
//! master seed; independent sub-tasks (grid points, shot batches, filter
//! attempts) derive their own seeds with [`derive_seed`].

/// Derive the seed for sub-task `index` from a master seed.
///
/// Contract: `splitmix64(master XOR (index * 0x9E3779B97F4A7C15))`. The
/// derivation is pure, stable across platforms and releases, and collisions
/// between distinct `(master, index)` pairs are as unlikely as 64-bit hash
/// collisions.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
