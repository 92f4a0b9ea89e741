//! Anti-illusion prompt templates and the answer map that goes with each.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::answer::{AnswerMap, Label};
use crate::classifier::{CategoryAssignment, IllusionCategory, SubType};
use crate::preprocess::PreprocessOutput;

/// Appended to every prompt.
pub const OUTPUT_INSTRUCTION: &str = "Answer with a single digit: 1 or 0.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TemplateKey {
    pub category: IllusionCategory,
    pub subtype: SubType,
    /// Variant used when preprocessing fell back to the original image.
    pub fallback: bool,
}

impl TemplateKey {
    pub const fn new(category: IllusionCategory, subtype: SubType, fallback: bool) -> Self {
        Self { category, subtype, fallback }
    }

    /// Every valid key.
    pub fn all() -> impl Iterator<Item = TemplateKey> {
        IllusionCategory::ALL.into_iter().flat_map(|c| {
            c.subtypes().iter().flat_map(move |s| [false, true].into_iter().map(move |fb| TemplateKey::new(c, *s, fb)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub text: String,
    pub answer_map: AnswerMap,
}

impl Template {
    pub fn new(text: impl Into<String>) -> Self {
        Self { text: text.into(), answer_map: AnswerMap::digits_only() }
    }

    pub fn with_phrases(text: impl Into<String>, phrases: &[(&str, Label)]) -> Self {
        Self {
            text: text.into(),
            answer_map: AnswerMap::with_phrases(phrases.iter().map(|(p, l)| (String::from(*p), *l)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub text: String,
    pub answer_map: AnswerMap,
    pub category: IllusionCategory,
}

/// Template table keyed by category, sub-type and fallback flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplates {
    table: BTreeMap<TemplateKey, Template>,
}

const MULLER_LYER: &str = "This is a Müller-Lyer illusion. The outward circles make the lower line appear longer. \
Ignore the circles, compare ONLY the horizontal line segments. Only answer NOT EQUAL if the difference is truly \
dramatic; otherwise answer EQUAL.";
const MARKER_DISTANCE: &str = "The marker label band has been cropped and stretched 3x horizontally so that position \
differences are easier to see. Surrounding context makes equal gaps look unequal; compare the gaps between the \
markers directly. Only answer NOT EQUAL if the difference is clearly visible; otherwise answer EQUAL.";
const MARKER_DISTANCE_PLAIN: &str = "Surrounding context makes equal gaps between markers look unequal. Compare the \
gaps between the markers directly, ignoring everything around them. Only answer NOT EQUAL if the difference is \
clearly visible; otherwise answer EQUAL.";
const EQUALITY: [(&str, Label); 2] = [("NOT EQUAL", Label::No), ("EQUAL", Label::Yes)];

const CONTRAST_MECHANISM: &str = "This is a simultaneous-contrast illusion: surrounding gradients and regions shift \
the apparent color of the targets.";
const COLOR_BANDS: &str = "Two edge strips (LEFT and RIGHT) shown side-by-side on neutral gray. Describe each strip's \
hue and brightness independently, then compare. Different hue or clearly different brightness → 0, otherwise → 1.";
const COLOR_SQUARES: &str = "Two center crops (LEFT and RIGHT) shown side-by-side on neutral gray with all \
surrounding context removed. Describe each crop's hue and brightness independently, then compare. Different hue or \
clearly different brightness → 0, otherwise → 1.";
const COLOR_CIRCLES: &str = "Saturation and contrast have been boosted to amplify color differences. Judge the \
target colors themselves and ignore the background. Different hue or clearly different brightness → 0, otherwise → 1.";
const COLOR_PLAIN: &str = "Judge the target colors themselves and ignore the background. Different hue or clearly \
different brightness → 0, otherwise → 1.";

const SIZE_MECHANISM: &str = "This is an Ebbinghaus-type size illusion: surrounding shapes make equal targets look \
different in size.";
const SIZE_BLEND: &str =
    "Left target mirrored and overlaid on right. Clean overlay with no edge ring = same size (1); \
visible edge ring = different size (0).";
const SIZE_INVERTED: &str = "Left half color-inverted, mirrored and overlaid on right, so both targets share one \
polarity. Clean overlay with no edge ring = same size (1); visible edge ring = different size (0).";
const SIZE_PLAIN: &str = "Ignore the surrounding shapes and compare the targets directly. Same size → 1; clearly \
different size → 0.";

const STRAIGHT_MECHANISM: &str = "This is a Hering/Wundt/Zöllner-type illusion: the background pattern makes straight \
lines look bent or tilted.";
const STRAIGHT_RED: &str = "Red lines on blue reference grid. If red lines stay parallel to grid → straight (1); if \
tilted relative to grid → not straight (0).";
const STRAIGHT_VERTICAL: &str = "Red dashed vertical reference lines added. Follow each line from top to bottom \
against the nearest red reference line. Constant gap → straight (1); gap changes or the line bows → not straight (0).";
const STRAIGHT_EDGES: &str = "Red dashed reference grid added. Compare each edge against the nearest grid line. Edge \
follows the grid line → straight (1); edge bows away from it → not straight (0).";
const STRAIGHT_PLAIN: &str = "Ignore the background pattern and judge the lines themselves. Straight → 1; bent or \
curved → 0.";

const POGGENDORFF_MECHANISM: &str = "This is a Poggendorff illusion: an occluding bar makes collinear segments look \
offset.";
const POGGENDORFF: &str = "A dashed extension line has been drawn along the red line's direction. Compare it with the \
black line above the bar. Overlap → aligned (1); visible separation → not aligned (0).";
const POGGENDORFF_PLAIN: &str = "Mentally extend the red line straight across the bar and check whether it meets the \
black line. Meets → aligned (1); misses → not aligned (0).";

const CAFE_WALL_MECHANISM: &str = "This is a Café Wall illusion: offset tile rows make parallel lines look tilted.";
const CAFE_WALL: &str = "Red parallel reference lines added. Compare column edges against red lines at top vs. \
bottom. Constant gap → parallel (1); gap changes → not parallel (0).";
const CAFE_WALL_PLAIN: &str = "Ignore the tile pattern and compare the spacing between the lines at the left and the \
right. Constant gap → parallel (1); gap changes → not parallel (0).";

const KANIZSA_MECHANISM: &str = "This is a Kanizsa figure: corner inducers create illusory contours that are not \
actually drawn.";
const KANIZSA: &str = "Enhanced contrast and sharpness. Look for actual dividing lines between adjacent regions. \
Abrupt color change with visible edge → 1; smooth gradient with no sharp edge → 0.";
const KANIZSA_PLAIN: &str = "Look for actual dividing lines between adjacent regions. Abrupt color change with \
visible edge → 1; smooth gradient with no sharp edge → 0.";

const GENERAL_MECHANISM: &str = "This image may contain a classic visual illusion whose context biases judgment.";
const GENERAL: &str = "A red dashed reference grid has been overlaid, contrast increased, and a 2x magnified center \
inset appended below. Use the grid and the inset to judge the actual pixels, not what the illusion suggests. Yes → 1; \
no → 0.";
const GENERAL_PLAIN: &str = "Judge the actual pixels, not what the illusion suggests. Yes → 1; no → 0.";

impl Default for PromptTemplates {
    fn default() -> Self {
        Self::builtin()
    }
}

impl PromptTemplates {
    /// Shipped defaults covering every key.
    pub fn builtin() -> Self {
        use IllusionCategory as C;
        use SubType as S;
        let mut t = Self { table: BTreeMap::new() };
        let mut put = |c, s, fb, tpl: Template| {
            t.table.insert(TemplateKey::new(c, s, fb), tpl);
        };
        let join = |a: &str, b: &str| format!("{a} {b}");

        put(C::Length, S::LineComparison, false, Template::with_phrases(MULLER_LYER, &EQUALITY));
        put(C::Length, S::LineComparison, true, Template::with_phrases(MULLER_LYER, &EQUALITY));
        put(C::Length, S::MarkerDistance, false, Template::with_phrases(MARKER_DISTANCE, &EQUALITY));
        put(C::Length, S::MarkerDistance, true, Template::with_phrases(MARKER_DISTANCE_PLAIN, &EQUALITY));

        for (s, text) in [(S::Bands, COLOR_BANDS), (S::SmallSquares, COLOR_SQUARES), (S::Circles, COLOR_CIRCLES)] {
            put(C::Color, s, false, Template::new(join(CONTRAST_MECHANISM, text)));
            put(C::Color, s, true, Template::new(join(CONTRAST_MECHANISM, COLOR_PLAIN)));
        }
        for s in [S::OrangeCircles, S::DarkCircles, S::Pentagons, S::WhiteOnBlackSquares] {
            let text = if s == S::WhiteOnBlackSquares { SIZE_INVERTED } else { SIZE_BLEND };
            put(C::Size, s, false, Template::new(join(SIZE_MECHANISM, text)));
            put(C::Size, s, true, Template::new(join(SIZE_MECHANISM, SIZE_PLAIN)));
        }
        for (s, text) in [
            (S::RedOnCrosshatch, STRAIGHT_RED),
            (S::VerticalZollner, STRAIGHT_VERTICAL),
            (S::SquareEdges, STRAIGHT_EDGES),
        ] {
            put(C::Straightness, s, false, Template::new(join(STRAIGHT_MECHANISM, text)));
            put(C::Straightness, s, true, Template::new(join(STRAIGHT_MECHANISM, STRAIGHT_PLAIN)));
        }
        for (c, mechanism, text, plain) in [
            (C::Alignment, POGGENDORFF_MECHANISM, POGGENDORFF, POGGENDORFF_PLAIN),
            (C::Parallelism, CAFE_WALL_MECHANISM, CAFE_WALL, CAFE_WALL_PLAIN),
            (C::Boundary, KANIZSA_MECHANISM, KANIZSA, KANIZSA_PLAIN),
            (C::Comprehensive, GENERAL_MECHANISM, GENERAL, GENERAL_PLAIN),
        ] {
            put(c, S::Default, false, Template::new(join(mechanism, text)));
            put(c, S::Default, true, Template::new(join(mechanism, plain)));
        }
        t
    }

    /// Replaces (or adds) one entry.
    pub fn set(&mut self, key: TemplateKey, template: Template) {
        self.table.insert(key, template);
    }

    /// Exact key, else the non-fallback variant, else the category default.
    pub fn get(&self, key: TemplateKey) -> Option<&Template> {
        self.table.get(&key).or_else(|| self.table.get(&TemplateKey { fallback: false, ..key })).or_else(|| {
            let first = key.category.subtypes()[0];
            self.table.get(&TemplateKey { subtype: first, fallback: false, ..key })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TemplateKey, &Template)> {
        self.table.iter()
    }

    /// Question, then the route's template, then the output-format line.
    pub fn build(&self, assignment: &CategoryAssignment, prep: &PreprocessOutput, question: &str) -> PromptSpec {
        let key = TemplateKey::new(assignment.category, assignment.subtype, prep.fallback_used);
        let (body, answer_map) = match self.get(key) {
            Some(t) => (t.text.as_str(), t.answer_map.clone()),
            None => (GENERAL_PLAIN, AnswerMap::digits_only()),
        };
        let text = format!("{}\n\n{}\n\n{}", question.trim(), body, OUTPUT_INSTRUCTION);
        PromptSpec { text, answer_map, category: assignment.category }
    }
}

/// Builds a prompt from the built-in templates.
pub fn build_prompt(assignment: &CategoryAssignment, prep: &PreprocessOutput, question: &str) -> PromptSpec {
    PromptTemplates::builtin().build(assignment, prep, question)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::image::{Image, Rgb};
    use crate::preprocess::Step;
    use alloc::vec::Vec;

    const ARTIFACT_WORDS: [&str; 9] = [
        "overlaid",
        "edge strips",
        "center crops",
        "boosted",
        "reference",
        "extension",
        "stretched",
        "Enhanced",
        "inverted",
    ];

    fn prep(fallback: bool) -> PreprocessOutput {
        PreprocessOutput {
            image: Image::filled(2, 2, Rgb::BLACK).unwrap(),
            applied_steps: alloc::vec![Step::None],
            fallback_used: fallback,
        }
    }

    fn prompt_for(q: &str) -> PromptSpec {
        build_prompt(&classify(q), &prep(false), q)
    }

    #[test]
    fn muller_lyer_prompt() {
        let p = prompt_for("Are the two horizontal lines the same length?");
        assert_eq!(p.category, IllusionCategory::Length);
        assert!(p.text.contains("Ignore the circles, compare ONLY the horizontal line segments"));
        let pats: Vec<&str> = p.answer_map.patterns().iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(pats, ["NOT EQUAL", "EQUAL", "1", "0"]);
    }

    #[test]
    fn table_texts_present() {
        assert!(prompt_for("Are the two orange circles the same size?")
            .text
            .contains("visible edge ring = different size"));
        assert!(prompt_for("Are the lines parallel?").text.contains("Constant gap → parallel (1)"));
        assert!(prompt_for("Is the red line aligned?").text.contains("dashed extension line"));
        assert!(prompt_for("Is there a boundary?").text.contains("Abrupt color change with visible edge → 1"));
        assert!(prompt_for("Are the two red lines straight?").text.contains("Red lines on blue reference grid"));
        assert!(prompt_for("Do the bands have the same color?").text.contains("Two edge strips (LEFT and RIGHT)"));
    }

    #[test]
    fn layout_question_first_instruction_last() {
        let q = "Is this image unusual?";
        let p = prompt_for(q);
        assert!(p.text.starts_with(q));
        assert!(p.text.ends_with(OUTPUT_INSTRUCTION));
    }

    #[test]
    fn every_key_has_a_prompt_ending_in_digits() {
        let t = PromptTemplates::builtin();
        let mut n = 0;
        for key in TemplateKey::all() {
            let tpl = t.get(key).unwrap();
            assert!(!tpl.text.trim().is_empty());
            let pats = tpl.answer_map.patterns();
            assert_eq!(pats[pats.len() - 2], (String::from("1"), Label::Yes));
            assert_eq!(pats[pats.len() - 1], (String::from("0"), Label::No));
            if let Some(i) = pats.iter().position(|(p, _)| p == "EQUAL") {
                assert!(pats[..i].iter().any(|(p, _)| p == "NOT EQUAL"));
            }
            n += 1;
        }
        assert_eq!(n, 2 * 16);
    }

    #[test]
    fn fallback_variants_drop_artifact_references() {
        let t = PromptTemplates::builtin();
        for key in TemplateKey::all().filter(|k| k.fallback) {
            let text = &t.get(key).unwrap().text;
            for w in ARTIFACT_WORDS {
                // the Müller-Lyer text has no artifacts in either variant
                assert!(!text.contains(w), "{key:?} mentions {w}");
            }
        }
    }

    #[test]
    fn overrides_and_lookup_fallthrough() {
        let mut t = PromptTemplates { table: BTreeMap::new() };
        t.set(TemplateKey::new(IllusionCategory::Size, SubType::OrangeCircles, false), Template::new("custom"));
        let k = TemplateKey::new(IllusionCategory::Size, SubType::DarkCircles, true);
        assert_eq!(t.get(k).unwrap().text, "custom");
        let a = classify("Is this odd?");
        let p = t.build(&a, &prep(false), "Is this odd?");
        assert!(p.text.contains(GENERAL_PLAIN));
    }
}
