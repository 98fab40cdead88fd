use rand_chacha::rand_core::RngCore;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser: a bijective 64-bit avalanche mix.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `index` under `master_seed`.
///
/// `mix64(master_seed ^ mix64(index))`. Every step is a bijection of the
/// index, so distinct indices always give distinct seeds.
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed ^ mix64(index))
}

/// Uniform variate on the open interval (0, 1) from the top 52 bits.
pub fn uniform_open<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn deterministic_and_distinct() {
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
        let seen: HashSet<u64> = (0..1_000_000).map(|i| derive_seed(20240611, i)).collect();
        assert_eq!(seen.len(), 1_000_000);
    }

    #[test]
    fn mix_matches_reference_splitmix() {
        // First output of the reference SplitMix64 generator seeded with 0.
        assert_eq!(mix64(0), 0xe220_a839_7b1d_cdaf);
    }

    #[test]
    fn golden_vectors() {
        // Frozen at implementation time; a change here breaks cross-version reproducibility.
        let got: Vec<u64> = (0..3).map(|i| derive_seed(42, i)).collect();
        assert_eq!(got, GOLDEN_SEEDS);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(42, 0));
        let u = uniform_open(&mut rng);
        assert_eq!(u.to_bits(), GOLDEN_FIRST_UNIFORM_BITS);
    }

    #[test]
    fn uniform_stays_open() {
        struct Fixed(u64);
        impl RngCore for Fixed {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {}
        }
        assert!(uniform_open(&mut Fixed(0)) > 0.0);
        assert!(uniform_open(&mut Fixed(u64::MAX)) < 1.0);
    }

    const GOLDEN_SEEDS: [u64; 3] = [0x4d9b_3f1e_c9cf_6b1b, 0x7eb3_b394_ac9e_fc29, 0x1db2_233e_b3bc_aeb3];
    const GOLDEN_FIRST_UNIFORM_BITS: u64 = 4605899549866446145;
}
