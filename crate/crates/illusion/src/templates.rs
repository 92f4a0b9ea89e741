//! TOML prompt-template files.
//!
//! ```toml
//! [[template]]
//! category = "length"
//! subtype = "line_comparison"
//! fallback = false
//! text = "Compare ONLY the horizontal line segments ..."
//! answers = [{ phrase = "NOT EQUAL", value = 0 }, { phrase = "EQUAL", value = 1 }]
//! ```
//!
//! Entries replace the built-in template with the same key; keys not listed
//! keep their built-in text. The digit patterns `1` and `0` are always
//! appended to the answer map and need not be listed.

use std::path::Path;

use illusion_core::prompt::Template;
use illusion_core::{IllusionCategory, Label, PromptTemplates, SubType, TemplateKey};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum TemplateError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("template file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("template {index}: sub-type {subtype} does not belong to {category}")]
    Route { index: usize, category: IllusionCategory, subtype: SubType },
    #[error("template {index}: empty text")]
    Empty { index: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnswerEntry {
    phrase: String,
    value: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TemplateEntry {
    category: IllusionCategory,
    subtype: SubType,
    #[serde(default)]
    fallback: bool,
    text: String,
    #[serde(default)]
    answers: Vec<AnswerEntry>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TemplateFile {
    #[serde(default)]
    template: Vec<TemplateEntry>,
}

/// Built-in templates overlaid with the entries in `text`.
pub fn parse(text: &str) -> Result<PromptTemplates, TemplateError> {
    let file: TemplateFile = toml::from_str(text)?;
    let mut table = PromptTemplates::builtin();
    for (index, e) in file.template.into_iter().enumerate() {
        if !e.subtype.belongs_to(e.category) {
            return Err(TemplateError::Route { index, category: e.category, subtype: e.subtype });
        }
        if e.text.trim().is_empty() {
            return Err(TemplateError::Empty { index });
        }
        let phrases: Vec<(&str, Label)> = e.answers.iter().map(|a| (a.phrase.as_str(), a.value)).collect();
        table.set(TemplateKey::new(e.category, e.subtype, e.fallback), Template::with_phrases(e.text, &phrases));
    }
    Ok(table)
}

pub fn load(path: &Path) -> Result<PromptTemplates, TemplateError> {
    parse(&std::fs::read_to_string(path)?)
}

/// Every template in `table` as a template file.
pub fn to_toml(table: &PromptTemplates) -> String {
    let template = table
        .iter()
        .map(|(k, t)| TemplateEntry {
            category: k.category,
            subtype: k.subtype,
            fallback: k.fallback,
            text: t.text.clone(),
            answers: t
                .answer_map
                .patterns()
                .iter()
                .filter(|(p, _)| p != "0" && p != "1")
                .map(|(p, l)| AnswerEntry { phrase: p.clone(), value: *l })
                .collect(),
        })
        .collect();
    toml::to_string(&TemplateFile { template }).expect("template table serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use illusion_core::image::{Image, Rgb};
    use illusion_core::{classify, parse_answer, preprocess, Answer};

    #[test]
    fn builtin_round_trips() {
        let builtin = PromptTemplates::builtin();
        assert_eq!(parse(&to_toml(&builtin)).unwrap(), builtin);
        assert_eq!(parse("").unwrap(), builtin);
    }

    #[test]
    fn override_replaces_one_key() {
        let text = r#"
[[template]]
category = "size"
subtype = "orange_circles"
text = "Custom size prompt."
answers = [{ phrase = "SAME", value = 1 }, { phrase = "NOT SAME", value = 0 }]
"#;
        let t = parse(text).unwrap();
        let q = "Are the two orange circles the same size?";
        let a = classify(q);
        let img = Image::filled(20, 10, Rgb([230, 140, 40])).unwrap();
        let prep = preprocess(a.category, a.subtype, &img).unwrap();
        let spec = t.build(&a, &prep, q);
        assert!(spec.text.contains("Custom size prompt."));
        assert_eq!(parse_answer("NOT SAME", &spec.answer_map), Answer::No);
        let builtin = PromptTemplates::builtin();
        let key = TemplateKey::new(IllusionCategory::Color, SubType::Bands, false);
        assert_eq!(t.get(key), builtin.get(key));
    }

    #[test]
    fn invalid_entries_rejected() {
        let wrong_route = "[[template]]\ncategory = \"size\"\nsubtype = \"bands\"\ntext = \"x\"";
        assert!(matches!(parse(wrong_route), Err(TemplateError::Route { .. })));
        let empty = "[[template]]\ncategory = \"size\"\nsubtype = \"pentagons\"\ntext = \" \"";
        assert!(matches!(parse(empty), Err(TemplateError::Empty { .. })));
        assert!(parse("[[template]]\ncategory = \"nope\"").is_err());
    }
}
