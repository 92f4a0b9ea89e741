//! Binary labels, parsed answers and the reply-to-answer mapping.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Ground truth: 1 = yes (original illusion), 0 = no (perturbed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    No,
    Yes,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        match self {
            Label::No => 0,
            Label::Yes => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Label::No),
            1 => Some(Label::Yes),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::No => Label::Yes,
            Label::Yes => Label::No,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        u8::try_from(v)
            .ok()
            .and_then(Label::from_u8)
            .ok_or_else(|| serde::de::Error::custom(format_args!("label must be 0 or 1, got {v}")))
    }
}

/// A parsed model answer: 1, 0, or -1 when nothing usable was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    No,
    Yes,
    Invalid,
}

impl Answer {
    pub fn as_i8(self) -> i8 {
        match self {
            Answer::No => 0,
            Answer::Yes => 1,
            Answer::Invalid => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            0 => Some(Answer::No),
            1 => Some(Answer::Yes),
            -1 => Some(Answer::Invalid),
            _ => None,
        }
    }

    pub fn label(self) -> Option<Label> {
        match self {
            Answer::No => Some(Label::No),
            Answer::Yes => Some(Label::Yes),
            Answer::Invalid => None,
        }
    }

    pub fn is_valid(self) -> bool {
        self != Answer::Invalid
    }
}

impl From<Label> for Answer {
    fn from(l: Label) -> Self {
        match l {
            Label::No => Answer::No,
            Label::Yes => Answer::Yes,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

impl Serialize for Answer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Answer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        i8::try_from(v)
            .ok()
            .and_then(Answer::from_i8)
            .ok_or_else(|| serde::de::Error::custom(format_args!("answer must be -1, 0 or 1, got {v}")))
    }
}

/// Ordered reply patterns. Phrase patterns come first, most specific first;
/// the map always ends with the digit patterns `"1" -> 1`, `"0" -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(String, Label)>", from = "Vec<(String, Label)>")]
pub struct AnswerMap {
    patterns: Vec<(String, Label)>,
}

impl AnswerMap {
    pub fn digits_only() -> Self {
        Self::with_phrases(Vec::new())
    }

    /// Phrase patterns are upper-cased and ordered by descending token count
    /// (then length) so that e.g. `NOT EQUAL` is tried before `EQUAL`.
    /// Digit-only entries in the input are dropped; the digit terminators are
    /// always appended.
    pub fn with_phrases(phrases: Vec<(String, Label)>) -> Self {
        let mut patterns: Vec<(String, Label)> = phrases
            .into_iter()
            .map(|(p, l)| (tokens(&p).collect::<Vec<_>>().join(" "), l))
            .filter(|(p, _)| !p.is_empty() && !is_digit_pattern(p))
            .collect();
        patterns.sort_by(|a, b| {
            let ta = a.0.split(' ').count();
            let tb = b.0.split(' ').count();
            tb.cmp(&ta).then(b.0.len().cmp(&a.0.len()))
        });
        patterns.dedup_by(|a, b| a.0 == b.0);
        patterns.push((String::from("1"), Label::Yes));
        patterns.push((String::from("0"), Label::No));
        Self { patterns }
    }

    pub fn patterns(&self) -> &[(String, Label)] {
        &self.patterns
    }

    fn phrases(&self) -> impl Iterator<Item = &(String, Label)> {
        self.patterns.iter().filter(|(p, _)| !is_digit_pattern(p))
    }

    fn digit(&self, d: &str) -> Option<Label> {
        self.patterns.iter().find(|(p, _)| is_digit_pattern(p) && p == d).map(|(_, l)| *l)
    }
}

impl Default for AnswerMap {
    fn default() -> Self {
        Self::digits_only()
    }
}

impl From<AnswerMap> for Vec<(String, Label)> {
    fn from(m: AnswerMap) -> Self {
        m.patterns
    }
}

impl From<Vec<(String, Label)>> for AnswerMap {
    fn from(v: Vec<(String, Label)>) -> Self {
        Self::with_phrases(v)
    }
}

fn is_digit_pattern(p: &str) -> bool {
    p == "0" || p == "1"
}

/// Upper-cased alphanumeric tokens.
fn tokens(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric()).filter(|t| !t.is_empty()).map(|t| t.to_uppercase())
}

/// Maps a model reply onto {1, 0, -1}.
///
/// Phrase patterns are tried in map order and match as whole-token
/// sequences, case-insensitively; the first one present decides. Otherwise
/// the last standalone `0` or `1` token in the reply decides. Otherwise the
/// reply is a parse failure.
pub fn parse_answer(reply: &str, map: &AnswerMap) -> Answer {
    let toks: Vec<String> = tokens(reply).collect();
    for (pattern, label) in map.phrases() {
        let pat: Vec<&str> = pattern.split(' ').collect();
        if toks.windows(pat.len()).any(|w| w.iter().zip(&pat).all(|(a, b)| a == b)) {
            return (*label).into();
        }
    }
    toks.iter().rev().find_map(|t| map.digit(t)).map_or(Answer::Invalid, Answer::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn equality_map() -> AnswerMap {
        AnswerMap::with_phrases(vec![("EQUAL".into(), Label::Yes), ("not equal".into(), Label::No)])
    }

    #[test]
    fn map_ordering() {
        let m = equality_map();
        let pats: Vec<&str> = m.patterns().iter().map(|(p, _)| p.as_str()).collect();
        assert_eq!(pats, ["NOT EQUAL", "EQUAL", "1", "0"]);
        assert_eq!(AnswerMap::digits_only().patterns().len(), 2);
    }

    #[test]
    fn examples() {
        let digits = AnswerMap::digits_only();
        assert_eq!(parse_answer("The strips differ. Final answer: 0", &digits), Answer::No);
        assert_eq!(parse_answer("NOT EQUAL", &equality_map()), Answer::No);
        assert_eq!(parse_answer("They look equal.", &equality_map()), Answer::Yes);
        assert_eq!(parse_answer("I am unable to determine this.", &digits), Answer::Invalid);
        assert_eq!(parse_answer("unknown", &digits), Answer::Invalid);
    }

    #[test]
    fn digits_are_standalone_and_last_wins() {
        let digits = AnswerMap::digits_only();
        assert_eq!(parse_answer("1 looked likely, but answer: 0.", &digits), Answer::No);
        assert_eq!(parse_answer("10 pixels apart", &digits), Answer::Invalid);
        assert_eq!(parse_answer("**1**", &digits), Answer::Yes);
        assert_eq!(parse_answer("UNEQUAL", &equality_map()), Answer::Invalid);
    }

    #[test]
    fn serde_values() {
        assert_eq!(Answer::from_i8(-1), Some(Answer::Invalid));
        assert_eq!(Label::from_u8(2), None);
        assert_eq!(Answer::from(Label::Yes).as_i8(), 1);
    }

    proptest! {
        #[test]
        fn never_invents_a_digit(reply in "[a-zA-Z ,.!?]{0,80}") {
            prop_assert_eq!(parse_answer(&reply, &AnswerMap::digits_only()), Answer::Invalid);
        }

        #[test]
        fn deterministic(reply in "\\PC{0,60}") {
            let m = equality_map();
            prop_assert_eq!(parse_answer(&reply, &m), parse_answer(&reply, &m));
        }
    }
}
