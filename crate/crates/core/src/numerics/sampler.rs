use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::integer::gcd;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ExactRational, NumericsError};

/// Predicate marking a candidate value as inadmissible.
#[derive(Clone)]
pub struct Exclusion {
    label: String,
    reject: Arc<dyn Fn(&ExactRational) -> bool + Send + Sync>,
}

impl Exclusion {
    pub fn new(label: impl Into<String>, reject: impl Fn(&ExactRational) -> bool + Send + Sync + 'static) -> Self {
        Exclusion { label: label.into(), reject: Arc::new(reject) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rejects(&self, r: &ExactRational) -> bool {
        (self.reject)(r)
    }
}

impl fmt::Debug for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exclusion({})", self.label)
    }
}

/// Seeded source of small distinct rationals p/d with |p| <= numerator_bound
/// and 1 <= d <= denominator_bound.
#[derive(Debug, Clone)]
pub struct RationalSampler {
    seed: u64,
    numerator_bound: u32,
    denominator_bound: u32,
    exclusions: Vec<Exclusion>,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler { seed, numerator_bound: 12, denominator_bound: 8, exclusions: Vec::new() }
    }

    pub fn with_bounds(mut self, numerator_bound: u32, denominator_bound: u32) -> Self {
        self.numerator_bound = numerator_bound.max(1);
        self.denominator_bound = denominator_bound.max(1);
        self
    }

    pub fn exclude(mut self, exclusion: Exclusion) -> Self {
        self.exclusions.push(exclusion);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn numerator_bound(&self) -> u32 {
        self.numerator_bound
    }

    pub fn denominator_bound(&self) -> u32 {
        self.denominator_bound
    }

    fn admissible(&self, r: &ExactRational) -> bool {
        !self.exclusions.iter().any(|e| e.rejects(r))
    }

    /// Every admissible value in a seed-determined order.
    pub fn pool(&self) -> Vec<ExactRational> {
        let mut set = BTreeSet::new();
        for d in 1..=self.denominator_bound as i64 {
            for p in -(self.numerator_bound as i64)..=self.numerator_bound as i64 {
                if gcd(p, d) == 1 || p == 0 {
                    set.insert(ExactRational::new(p, d).expect("positive denominator"));
                }
            }
        }
        let mut pool: Vec<ExactRational> = set.into_iter().filter(|r| self.admissible(r)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        pool.shuffle(&mut rng);
        pool
    }

    pub fn sample(&self, count: usize) -> Result<Vec<ExactRational>, NumericsError> {
        let pool = self.pool();
        if pool.len() < count {
            return Err(NumericsError::SampleSpaceExhausted);
        }
        Ok(pool.into_iter().take(count).collect())
    }
}

pub fn sample_rationals(s: &RationalSampler, count: usize) -> Result<Vec<ExactRational>, NumericsError> {
    s.sample(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct() {
        let a = RationalSampler::new(42).sample(30).unwrap();
        let b = RationalSampler::new(42).sample(30).unwrap();
        assert_eq!(a, b);
        let set: BTreeSet<_> = a.iter().cloned().collect();
        assert_eq!(set.len(), 30);
        assert_ne!(a, RationalSampler::new(43).sample(30).unwrap());
    }

    #[test]
    fn exclusions_respected() {
        let s = RationalSampler::new(1).exclude(Exclusion::new("zero", |r| r.is_zero()));
        assert!(s.pool().iter().all(|r| !r.is_zero()));
        assert!(!s.sample(1).unwrap()[0].is_zero());
    }

    #[test]
    fn exhaustion() {
        let s = RationalSampler::new(1).with_bounds(1, 1);
        assert_eq!(s.pool().len(), 3);
        assert_eq!(s.sample(4).unwrap_err(), NumericsError::SampleSpaceExhausted);
        assert_eq!(s.sample(4).unwrap_err().to_string(), "sample space exhausted");
    }
}
