//! Seeded random multivectors.
//!
//! The stream is produced by SplitMix64 (Steele, Lea and Flood, 2014) and
//! bounded integers are drawn by rejection, so a given [`RandomSpec`] yields
//! the same multivector on every platform. The draw order is:
//!
//! 1. for each term until `num_terms` distinct blades are collected:
//!    a. the grade: `g`, or uniform on `0..=g` when `include_fewer` is set;
//!    b. the blade: a partial Fisher-Yates shuffle of `1..=d` picks the
//!    indices, which are then sorted; an already drawn blade is discarded;
//! 2. one coefficient per blade, in draw order, uniform over the nonzero
//!    integers of `coeff_range`.

use std::collections::HashSet;

use thiserror::Error;

use crate::blade::{Blade, MAX_INDEX};
use crate::multivector::Multivector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomSpecError {
    #[error("dimension must be between 1 and {MAX_INDEX}, got {0}")]
    Dimension(u32),
    #[error("max grade must be between 1 and the dimension {dimension}, got {grade}")]
    Grade { grade: u32, dimension: u32 },
    #[error("number of terms must be positive")]
    NoTerms,
    #[error("coefficient range [{0}, {1}] has no nonzero integer")]
    CoefficientRange(i64, i64),
}

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        // values under `threshold` would bias the modulo
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }
}

/// Shape of a random multivector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub dimension: u32,
    pub max_grade: u32,
    pub num_terms: usize,
    pub include_fewer: bool,
    /// Inclusive integer range; zero is skipped.
    pub coeff_range: (i64, i64),
    pub seed: u64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            dimension: 6,
            max_grade: 4,
            num_terms: 9,
            include_fewer: false,
            coeff_range: (-5, 5),
            seed: 0,
        }
    }
}

impl RandomSpec {
    pub fn with_seed(seed: u64) -> Self {
        RandomSpec {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), RandomSpecError> {
        if self.dimension == 0 || self.dimension > MAX_INDEX {
            return Err(RandomSpecError::Dimension(self.dimension));
        }
        if self.max_grade == 0 || self.max_grade > self.dimension {
            return Err(RandomSpecError::Grade {
                grade: self.max_grade,
                dimension: self.dimension,
            });
        }
        if self.num_terms == 0 {
            return Err(RandomSpecError::NoTerms);
        }
        let (lo, hi) = self.coeff_range;
        if nonzero_count(lo, hi) == 0 {
            return Err(RandomSpecError::CoefficientRange(lo, hi));
        }
        Ok(())
    }

    /// Number of distinct blades the spec can produce, saturating.
    fn available_blades(&self) -> u64 {
        let d = u64::from(self.dimension);
        let g = u64::from(self.max_grade);
        if self.include_fewer {
            (0..=g).fold(0u64, |s, k| s.saturating_add(binomial(d, k)))
        } else {
            binomial(d, g)
        }
    }
}

fn nonzero_count(lo: i64, hi: i64) -> u64 {
    if lo > hi {
        return 0;
    }
    let span = (hi as i128 - lo as i128 + 1) as u64;
    if lo <= 0 && 0 <= hi {
        span - 1
    } else {
        span
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
        if r > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    r as u64
}

/// Draws a random multivector. When fewer than `num_terms` distinct blades
/// exist, every available blade is used.
pub fn random_multivector(spec: &RandomSpec) -> Result<Multivector, RandomSpecError> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let target = spec
        .num_terms
        .min(usize::try_from(spec.available_blades()).unwrap_or(usize::MAX));

    let mut pool: Vec<u32> = (1..=spec.dimension).collect();
    let mut seen = HashSet::with_capacity(target);
    let mut blades = Vec::with_capacity(target);
    while blades.len() < target {
        let grade = if spec.include_fewer {
            rng.below(u64::from(spec.max_grade) + 1) as usize
        } else {
            spec.max_grade as usize
        };
        for k in 0..grade {
            let j = k + rng.below((pool.len() - k) as u64) as usize;
            pool.swap(k, j);
        }
        let mut picked = pool[..grade].to_vec();
        picked.sort_unstable();
        let blade = Blade::new(&picked).expect("distinct indices within range");
        if seen.insert(blade.clone()) {
            blades.push(blade);
        }
    }

    let (lo, hi) = spec.coeff_range;
    let n = nonzero_count(lo, hi);
    Ok(blades
        .into_iter()
        .map(|b| {
            let mut c = lo + rng.below(n) as i64;
            if lo <= 0 && c >= 0 {
                c += 1;
            }
            (b, c as f64)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 1234567 from the reference C implementation
        let mut r = SplitMix64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
        assert_eq!(r.next_u64(), 9817491932198370423);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = SplitMix64::new(7);
        for n in 1..50 {
            for _ in 0..50 {
                assert!(r.below(n) < n);
            }
        }
    }

    #[test]
    fn fixed_grade_default() {
        for seed in 0..50 {
            let m = random_multivector(&RandomSpec::with_seed(seed)).unwrap();
            assert_eq!(m.len(), 9);
            assert!(m.grades().iter().all(|&g| g == 4));
        }
    }

    #[test]
    fn include_fewer_bounds() {
        let spec = RandomSpec {
            dimension: 7,
            max_grade: 5,
            include_fewer: true,
            ..RandomSpec::with_seed(3)
        };
        for seed in 0..50 {
            let m = random_multivector(&RandomSpec {
                seed,
                ..spec.clone()
            })
            .unwrap();
            assert!(m.grades().iter().all(|&g| g <= 5));
            assert!(m.max_index().unwrap_or(0) <= 7);
            for (_, c) in m.terms() {
                assert!(c != 0.0 && c.fract() == 0.0 && (-5.0..=5.0).contains(&c));
            }
        }
    }

    #[test]
    fn deterministic() {
        let spec = RandomSpec {
            include_fewer: true,
            ..RandomSpec::with_seed(99)
        };
        assert_eq!(random_multivector(&spec), random_multivector(&spec));
        let other = RandomSpec {
            seed: 100,
            ..spec.clone()
        };
        assert_ne!(random_multivector(&spec), random_multivector(&other));
    }

    #[test]
    fn infeasible_term_count_is_capped() {
        let spec = RandomSpec {
            dimension: 3,
            max_grade: 2,
            num_terms: 50,
            ..RandomSpec::default()
        };
        assert_eq!(random_multivector(&spec).unwrap().len(), 3);
        let spec = RandomSpec {
            include_fewer: true,
            ..spec
        };
        assert_eq!(random_multivector(&spec).unwrap().len(), 7);
    }

    #[test]
    fn positive_only_coefficients() {
        let spec = RandomSpec {
            coeff_range: (2, 3),
            ..RandomSpec::with_seed(5)
        };
        let m = random_multivector(&spec).unwrap();
        assert!(m.terms().all(|(_, c)| c == 2.0 || c == 3.0));
    }

    #[test]
    fn invalid_specs() {
        let bad = |s: RandomSpec| random_multivector(&s).unwrap_err();
        assert_eq!(
            bad(RandomSpec {
                dimension: 0,
                ..RandomSpec::default()
            }),
            RandomSpecError::Dimension(0)
        );
        assert_eq!(
            bad(RandomSpec {
                max_grade: 7,
                ..RandomSpec::default()
            }),
            RandomSpecError::Grade {
                grade: 7,
                dimension: 6
            }
        );
        assert_eq!(
            bad(RandomSpec {
                num_terms: 0,
                ..RandomSpec::default()
            }),
            RandomSpecError::NoTerms
        );
        assert_eq!(
            bad(RandomSpec {
                coeff_range: (0, 0),
                ..RandomSpec::default()
            }),
            RandomSpecError::CoefficientRange(0, 0)
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }
}
