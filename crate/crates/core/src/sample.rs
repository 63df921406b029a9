//! Seeded random parameter arrays.
//!
//! The generator is SplitMix64 (64-bit state; each step adds
//! 0x9e3779b97f4a7c15 to the state and returns a mixed copy of it), seeded
//! directly with the user's seed. A value below `n` is drawn as
//! `next_u64() % n`. These two rules fix every sample, so another
//! implementation can reproduce test cases from a seed alone.

use std::collections::HashMap;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::params::{AffineMap, ParameterArray};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("{field} has fewer than {needed} elements, so it cannot hold d+1 distinct eigenvalues")]
    FieldTooSmall { field: Field, needed: u64 },
}

/// Seeded sampler over a fixed field.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: SplitMix64,
    field: Field,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
            field,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Uniform-ish value in `0..n` (`n > 0`).
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    /// Raw 64-bit output, for deriving further seeds.
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// `k` distinct values from `0..n` by a partial Fisher-Yates shuffle on a
    /// sparse swap table, so `n` may be huge.
    fn distinct_below(&mut self, k: usize, n: u64) -> Vec<u64> {
        let mut swaps: HashMap<u64, u64> = HashMap::new();
        let mut out = Vec::with_capacity(k);
        for i in 0..k as u64 {
            let j = i + self.below(n - i);
            let vj = *swaps.get(&j).unwrap_or(&j);
            let vi = *swaps.get(&i).unwrap_or(&i);
            swaps.insert(j, vi);
            out.push(vj);
        }
        out
    }

    /// `k` mutually distinct field elements.
    pub fn distinct_scalars(&mut self, k: usize) -> Result<Vec<Scalar>, SampleError> {
        match self.field {
            Field::Rational => {
                // numerators from -r..=r over a shared denominator
                let r = 2 * k as u64 + 3;
                let den = 1 + self.below(3) as i64;
                let f = self.field;
                Ok(self
                    .distinct_below(k, 2 * r + 1)
                    .into_iter()
                    .map(|v| f.ratio(v as i64 - r as i64, den).expect("nonzero denominator"))
                    .collect())
            }
            Field::Prime(p) => {
                if (k as u64) > p {
                    return Err(SampleError::FieldTooSmall {
                        field: self.field,
                        needed: k as u64,
                    });
                }
                Ok(self
                    .distinct_below(k, p)
                    .into_iter()
                    .map(|value| Scalar::Fp { value, p })
                    .collect())
            }
        }
    }

    /// A nonzero field element.
    pub fn nonzero_scalar(&mut self) -> Scalar {
        match self.field {
            Field::Rational => {
                let num = 1 + self.below(7) as i64;
                let num = if self.below(2) == 0 { num } else { -num };
                let den = 1 + self.below(3) as i64;
                self.field.ratio(num, den).expect("nonzero denominator")
            }
            Field::Prime(p) => Scalar::Fp {
                value: 1 + self.below(p - 1),
                p,
            },
        }
    }

    /// A field element that is zero one time in four.
    pub fn scalar(&mut self) -> Scalar {
        if self.below(4) == 0 {
            self.field.zero()
        } else {
            self.nonzero_scalar()
        }
    }

    /// An affine map with nonzero scales.
    pub fn affine_map(&mut self) -> AffineMap {
        let (a, b, a_star, b_star) = (self.nonzero_scalar(), self.scalar(), self.nonzero_scalar(), self.scalar());
        AffineMap::new(a, b, a_star, b_star).expect("nonzero scales")
    }

    pub fn parameter_array(&mut self, d: usize) -> Result<ParameterArray, SampleError> {
        let thetas = self.distinct_scalars(d + 1)?;
        let theta_stars = self.distinct_scalars(d + 1)?;
        let phis = (0..d).map(|_| self.nonzero_scalar()).collect();
        Ok(ParameterArray::new(thetas, theta_stars, phis).expect("sampler output is valid by construction"))
    }
}

/// Deterministic random parameter array of diameter `d`.
pub fn random_pa(d: usize, field: Field, seed: u64) -> Result<ParameterArray, SampleError> {
    Sampler::new(field, seed).parameter_array(d)
}
