use std::collections::HashMap;
use std::time::Duration;

use illusion_core::Label;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{Backend, BackendError, PreparedQuery};

/// Oracle backend: answers each known sample with its label, flipped with
/// probability `noise`. The flip for a given `(sample_id, call_index, seed)`
/// is fixed, so reruns reproduce the same replies in any call order.
#[derive(Debug, Clone)]
pub struct MockBackend {
    labels: HashMap<String, Label>,
    noise: f64,
    seed: u64,
    delay: Duration,
}

impl MockBackend {
    pub fn new(labels: HashMap<String, Label>, noise: f64, seed: u64) -> Result<Self, BackendError> {
        if !(0.0..=1.0).contains(&noise) {
            return Err(BackendError::Protocol(format!("mock noise must lie in [0, 1], got {noise}")));
        }
        Ok(Self { labels, noise, seed, delay: Duration::ZERO })
    }

    /// Sleeps this long inside every call.
    pub fn with_delay(mut self, delay: Duration) -> Self {
        self.delay = delay;
        self
    }

    fn flip(&self, sample_id: &str, call_index: usize) -> bool {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update((call_index as u64).to_le_bytes());
        h.update(sample_id.as_bytes());
        let digest: [u8; 32] = h.finalize().into();
        ChaCha8Rng::from_seed(digest).random_bool(self.noise)
    }
}

impl Backend for MockBackend {
    fn model_name(&self) -> &str {
        "mock"
    }

    fn complete(&self, query: &PreparedQuery, call_index: usize) -> Result<String, BackendError> {
        if !self.delay.is_zero() {
            std::thread::sleep(self.delay);
        }
        Ok(match self.labels.get(&query.sample_id) {
            Some(&label) => {
                let answer = if self.flip(&query.sample_id, call_index) { label.flipped() } else { label };
                answer.as_u8().to_string()
            }
            None => "unknown".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::tests::query;
    use illusion_core::{parse_answer, Answer, AnswerMap};

    fn mock(noise: f64, seed: u64) -> MockBackend {
        let labels = (0..50).map(|i| (format!("s{i}"), if i % 3 == 0 { Label::No } else { Label::Yes })).collect();
        MockBackend::new(labels, noise, seed).unwrap()
    }

    fn replies(m: &MockBackend) -> Vec<String> {
        (0..50)
            .flat_map(|i| (0..5).map(move |c| (i, c)))
            .map(|(i, c)| m.complete(&query(&format!("s{i}")), c).unwrap())
            .collect()
    }

    #[test]
    fn noiseless_and_fully_flipped() {
        let m = mock(0.0, 1);
        assert_eq!(m.complete(&query("s1"), 0).unwrap(), "1");
        assert_eq!(m.complete(&query("s0"), 3).unwrap(), "0");
        let f = mock(1.0, 1);
        assert_eq!(f.complete(&query("s1"), 0).unwrap(), "0");
        assert_eq!(f.complete(&query("s0"), 3).unwrap(), "1");
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        assert_eq!(replies(&mock(0.3, 7)), replies(&mock(0.3, 7)));
        assert_ne!(replies(&mock(0.3, 7)), replies(&mock(0.3, 8)));
        let flipped = replies(&mock(0.3, 7)).iter().zip(replies(&mock(0.0, 7))).filter(|(a, b)| *a != b).count();
        assert!((40..110).contains(&flipped), "{flipped} of 250 flipped");
    }

    #[test]
    fn unknown_ids_parse_as_invalid() {
        let reply = mock(0.0, 0).complete(&query("nope"), 0).unwrap();
        assert_eq!(parse_answer(&reply, &AnswerMap::digits_only()), Answer::Invalid);
        assert!(MockBackend::new(HashMap::new(), 1.5, 0).is_err());
    }
}
