//! Seeded random ideals for property suites.
//!
//! Every instance gets its own ChaCha stream derived from `(seed, index)`,
//! so results do not depend on how instances are scheduled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::branched::{BranchedIdeal, BranchedRing};
use crate::exponent::Exponent;
use crate::monomial::MonomialIdeal;
use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Random generators drawn before minimization.
    pub generators: usize,
    /// Coordinate bound; the pure powers `x_i^B` are always added.
    pub bound: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            generators: 6,
            bound: 8,
        }
    }
}

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws `k` generators with coordinates in `[0, B]`, adds `x_i^B` for every
/// axis and minimizes.
pub fn random_ideal(rng: &mut impl Rng, d: usize, cfg: &SamplerConfig) -> MonomialIdeal {
    let mut gens: Vec<Exponent> = (0..d)
        .map(|i| Exponent::pure_power(d, i, cfg.bound))
        .collect();
    for _ in 0..cfg.generators {
        let v: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=cfg.bound)).collect();
        if v.iter().any(|&c| c > 0) {
            gens.push(Exponent::new(v));
        }
    }
    MonomialIdeal::new(d, gens).expect("sampled generators are valid")
}

/// Random parameter ideal `(x_1^{a_1}, …, x_d^{a_d})` with `1 ≤ a_i ≤ B`.
pub fn random_parameter_ideal(rng: &mut impl Rng, d: usize, bound: u32) -> MonomialIdeal {
    let exps: Vec<u32> = (0..d).map(|_| rng.gen_range(1..=bound)).collect();
    MonomialIdeal::parameter(&exps).expect("positive exponents")
}

/// Random monomial ideal of a branched ring: each generator is supported
/// on a uniformly chosen facet, and every `x_i^B` is added.
pub fn random_branched_ideal(
    rng: &mut impl Rng,
    ring: &Arc<BranchedRing>,
    cfg: &SamplerConfig,
) -> BranchedIdeal {
    let d = ring.ambient_dimension();
    let mut gens: Vec<Exponent> = (0..d)
        .map(|i| Exponent::pure_power(d, i, cfg.bound))
        .collect();
    for _ in 0..cfg.generators {
        let facet = &ring.facets()[rng.gen_range(0..ring.facets().len())];
        let mut v = vec![0u32; d];
        for &i in facet {
            v[i] = rng.gen_range(0..=cfg.bound);
        }
        if v.iter().any(|&c| c > 0) {
            gens.push(Exponent::new(v));
        }
    }
    BranchedIdeal::new(ring.clone(), gens).expect("generators lie on facets")
}

/// Random ideal of `k[[S]]` with one to three generators below `top`.
pub fn random_semigroup_ideal(
    rng: &mut impl Rng,
    s: &Arc<NumericalSemigroup>,
    top: u64,
) -> SemigroupIdeal {
    let elements: Vec<u64> = s.elements_in(1, top).collect();
    let k = rng.gen_range(1..=3);
    let gens: Vec<u64> = (0..k)
        .map(|_| elements[rng.gen_range(0..elements.len())])
        .collect();
    SemigroupIdeal::new(s.clone(), &gens).expect("elements of S")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_index() {
        let cfg = SamplerConfig::default();
        let a = random_ideal(&mut instance_rng(7, 3), 3, &cfg);
        let b = random_ideal(&mut instance_rng(7, 3), 3, &cfg);
        assert_eq!(a, b);
        assert!(a.is_m_primary());
        let c = random_ideal(&mut instance_rng(7, 4), 3, &cfg);
        let d = random_ideal(&mut instance_rng(8, 3), 3, &cfg);
        assert!(a != c || a != d);
    }

    #[test]
    fn branched_and_semigroup_samples() {
        let ring = Arc::new(BranchedRing::from_one_based(3, &[vec![1, 2], vec![2, 3]]).unwrap());
        let i = random_branched_ideal(&mut instance_rng(1, 0), &ring, &SamplerConfig::default());
        assert!(i.is_m_primary());
        assert_eq!(i, random_branched_ideal(&mut instance_rng(1, 0), &ring, &SamplerConfig::default()));
        let s = Arc::new(NumericalSemigroup::new(&[3, 5]).unwrap());
        let j = random_semigroup_ideal(&mut instance_rng(2, 0), &s, 30);
        assert!(j.generators().iter().all(|&g| s.contains(g) && g <= 30));
    }
}
