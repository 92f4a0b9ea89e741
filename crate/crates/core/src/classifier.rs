//! Priority-ordered keyword routing from question text to illusion category.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IllusionCategory {
    Straightness,
    Length,
    Boundary,
    Color,
    Size,
    Alignment,
    Parallelism,
    Comprehensive,
}

impl IllusionCategory {
    pub const ALL: [IllusionCategory; 8] = [
        Self::Straightness,
        Self::Length,
        Self::Boundary,
        Self::Color,
        Self::Size,
        Self::Alignment,
        Self::Parallelism,
        Self::Comprehensive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Straightness => "straightness",
            Self::Length => "length",
            Self::Boundary => "boundary",
            Self::Color => "color",
            Self::Size => "size",
            Self::Alignment => "alignment",
            Self::Parallelism => "parallelism",
            Self::Comprehensive => "comprehensive",
        }
    }

    /// Sub-types valid under this category; the first entry is the default.
    pub fn subtypes(self) -> &'static [SubType] {
        match self {
            Self::Color => &[SubType::Bands, SubType::SmallSquares, SubType::Circles],
            Self::Size => {
                &[SubType::OrangeCircles, SubType::DarkCircles, SubType::Pentagons, SubType::WhiteOnBlackSquares]
            }
            Self::Length => &[SubType::LineComparison, SubType::MarkerDistance],
            Self::Straightness => &[SubType::RedOnCrosshatch, SubType::VerticalZollner, SubType::SquareEdges],
            Self::Boundary | Self::Alignment | Self::Parallelism | Self::Comprehensive => &[SubType::Default],
        }
    }
}

impl fmt::Display for IllusionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IllusionCategory {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownName(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown name {0:?}")]
pub struct UnknownName(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubType {
    Bands,
    SmallSquares,
    Circles,
    OrangeCircles,
    DarkCircles,
    Pentagons,
    WhiteOnBlackSquares,
    LineComparison,
    MarkerDistance,
    RedOnCrosshatch,
    VerticalZollner,
    SquareEdges,
    Default,
}

impl SubType {
    pub const ALL: [SubType; 13] = [
        Self::Bands,
        Self::SmallSquares,
        Self::Circles,
        Self::OrangeCircles,
        Self::DarkCircles,
        Self::Pentagons,
        Self::WhiteOnBlackSquares,
        Self::LineComparison,
        Self::MarkerDistance,
        Self::RedOnCrosshatch,
        Self::VerticalZollner,
        Self::SquareEdges,
        Self::Default,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bands => "bands",
            Self::SmallSquares => "small_squares",
            Self::Circles => "circles",
            Self::OrangeCircles => "orange_circles",
            Self::DarkCircles => "dark_circles",
            Self::Pentagons => "pentagons",
            Self::WhiteOnBlackSquares => "white_on_black_squares",
            Self::LineComparison => "line_comparison",
            Self::MarkerDistance => "marker_distance",
            Self::RedOnCrosshatch => "red_on_crosshatch",
            Self::VerticalZollner => "vertical_zollner",
            Self::SquareEdges => "square_edges",
            Self::Default => "default",
        }
    }

    pub fn belongs_to(self, category: IllusionCategory) -> bool {
        category.subtypes().contains(&self)
    }
}

impl fmt::Display for SubType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubType {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// Routing decision for one question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryAssignment {
    pub category: IllusionCategory,
    pub subtype: SubType,
    /// Keyword that fired; empty exactly when the fallback category was chosen.
    pub matched_keyword: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("the fallback category cannot carry keywords")]
    FallbackKeywords,
    #[error("category {0} has an empty keyword")]
    EmptyKeyword(IllusionCategory),
    #[error("category {0} listed twice")]
    Duplicate(IllusionCategory),
}

/// Ordered `(category, keywords)` rules; the first rule with any keyword
/// contained in the lower-cased question wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordRules {
    rules: Vec<(IllusionCategory, Vec<String>)>,
}

impl Default for KeywordRules {
    fn default() -> Self {
        use IllusionCategory::*;
        let rule = |c, kws: &[&str]| (c, kws.iter().map(|k| String::from(*k)).collect());
        Self {
            rules: vec![
                rule(Straightness, &["straight", "curved"]),
                rule(Length, &["length", "distances"]),
                rule(Boundary, &["boundary", "enclosed"]),
                rule(Color, &["color"]),
                rule(Size, &["size"]),
                rule(Alignment, &["aligned"]),
                rule(Parallelism, &["parallel"]),
            ],
        }
    }
}

impl KeywordRules {
    /// Builds a rule table; keywords are lower-cased.
    pub fn new(rules: Vec<(IllusionCategory, Vec<String>)>) -> Result<Self, RuleError> {
        let mut seen = Vec::new();
        let mut out = Vec::with_capacity(rules.len());
        for (cat, kws) in rules {
            if cat == IllusionCategory::Comprehensive {
                return Err(RuleError::FallbackKeywords);
            }
            if seen.contains(&cat) {
                return Err(RuleError::Duplicate(cat));
            }
            seen.push(cat);
            if kws.iter().any(|k| k.trim().is_empty()) {
                return Err(RuleError::EmptyKeyword(cat));
            }
            out.push((cat, kws.into_iter().map(|k| k.to_lowercase()).collect()));
        }
        Ok(Self { rules: out })
    }

    /// Replaces the keyword list of one category, keeping its priority slot.
    pub fn with_keywords(mut self, category: IllusionCategory, keywords: Vec<String>) -> Result<Self, RuleError> {
        if category == IllusionCategory::Comprehensive {
            return Err(RuleError::FallbackKeywords);
        }
        if keywords.iter().any(|k| k.trim().is_empty()) {
            return Err(RuleError::EmptyKeyword(category));
        }
        let keywords: Vec<String> = keywords.into_iter().map(|k| k.to_lowercase()).collect();
        match self.rules.iter_mut().find(|(c, _)| *c == category) {
            Some(slot) => slot.1 = keywords,
            None => self.rules.push((category, keywords)),
        }
        Ok(self)
    }

    pub fn rules(&self) -> &[(IllusionCategory, Vec<String>)] {
        &self.rules
    }

    pub fn classify(&self, question: &str) -> CategoryAssignment {
        let q = question.to_lowercase();
        for (category, keywords) in &self.rules {
            if let Some(kw) = keywords.iter().find(|k| q.contains(k.as_str())) {
                return CategoryAssignment {
                    category: *category,
                    subtype: classify_subtype(*category, question),
                    matched_keyword: kw.clone(),
                };
            }
        }
        CategoryAssignment {
            category: IllusionCategory::Comprehensive,
            subtype: SubType::Default,
            matched_keyword: String::new(),
        }
    }
}

/// Classifies with the built-in rule table.
pub fn classify(question: &str) -> CategoryAssignment {
    KeywordRules::default().classify(question)
}

/// Picks the intra-category route from further keywords in the question.
pub fn classify_subtype(category: IllusionCategory, question: &str) -> SubType {
    let q = question.to_lowercase();
    let has = |k: &str| q.contains(k);
    match category {
        IllusionCategory::Size => {
            if has("orange") {
                SubType::OrangeCircles
            } else if has("pentagon") {
                SubType::Pentagons
            } else if has("white") && has("square") {
                SubType::WhiteOnBlackSquares
            } else {
                SubType::DarkCircles
            }
        }
        IllusionCategory::Color => {
            if has("band") || has("rectangle") {
                SubType::Bands
            } else if has("square") {
                SubType::SmallSquares
            } else {
                SubType::Circles
            }
        }
        IllusionCategory::Length => {
            let tokens = || q.split(|c: char| !c.is_alphanumeric());
            let marker = |m: &str| tokens().any(|t| t == m);
            if has("distances") || (marker("a") && marker("b")) {
                SubType::MarkerDistance
            } else {
                SubType::LineComparison
            }
        }
        IllusionCategory::Straightness => {
            if has("red") {
                SubType::RedOnCrosshatch
            } else if has("vertical") {
                SubType::VerticalZollner
            } else if has("edge") || has("square") {
                SubType::SquareEdges
            } else {
                SubType::RedOnCrosshatch
            }
        }
        IllusionCategory::Boundary
        | IllusionCategory::Alignment
        | IllusionCategory::Parallelism
        | IllusionCategory::Comprehensive => SubType::Default,
    }
}
