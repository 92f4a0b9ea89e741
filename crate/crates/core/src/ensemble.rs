//! Majority vote over repeated backend answers.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::answer::{Answer, Label};

/// Count of 1s against 0s, ignoring parse failures. Ties resolve to
/// `tie_break`; no valid vote at all gives [`Answer::Invalid`].
pub fn majority_vote(votes: &[Answer], tie_break: Label) -> Answer {
    let yes = votes.iter().filter(|v| **v == Answer::Yes).count();
    let no = votes.iter().filter(|v| **v == Answer::No).count();
    match (yes, no) {
        (0, 0) => Answer::Invalid,
        (y, n) if y > n => Answer::Yes,
        (y, n) if n > y => Answer::No,
        _ => tie_break.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteRecord {
    pub sample_id: String,
    pub votes: Vec<Answer>,
    #[serde(rename = "final")]
    pub final_answer: Answer,
    pub valid_count: usize,
}

impl VoteRecord {
    pub fn tally(sample_id: impl Into<String>, votes: Vec<Answer>, tie_break: Label) -> Self {
        let final_answer = majority_vote(&votes, tie_break);
        let valid_count = votes.iter().filter(|v| v.is_valid()).count();
        Self { sample_id: sample_id.into(), votes, final_answer, valid_count }
    }
}
