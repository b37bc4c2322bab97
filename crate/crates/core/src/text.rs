//! Stochastic sentences: words drawn uniformly from a lexicon into fixed
//! grammatical templates.
//!
//! Templates are plain text with `{S}`, `{P}` and `{C}` placeholders for a
//! subject, a predicate and a connective. Lexicon files are line-oriented
//! with `[subjects]`, `[predicates]` and `[connectives]` sections; `#`
//! starts a comment line.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rng::RngState;

pub const DEFAULT_LEXICON: &str = include_str!("../data/lexicon_de.txt");
pub const DEFAULT_TEMPLATES: &str = include_str!("../data/templates_de.txt");
pub const ENGLISH_LEXICON: &str = include_str!("../data/lexicon_en.txt");
pub const ENGLISH_TEMPLATES: &str = include_str!("../data/templates_en.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    subjects: Vec<String>,
    predicates: Vec<String>,
}

impl Lexicon {
    pub fn new(subjects: Vec<String>, predicates: Vec<String>) -> Result<Self> {
        check_pool("subjects", &subjects)?;
        check_pool("predicates", &predicates)?;
        Ok(Self { subjects, predicates })
    }

    pub fn subjects(&self) -> &[String] {
        &self.subjects
    }

    pub fn predicates(&self) -> &[String] {
        &self.predicates
    }
}

fn check_pool(name: &str, pool: &[String]) -> Result<()> {
    if pool.is_empty() {
        return Err(Error::Lexicon(format!("no {name}")));
    }
    let mut seen = HashSet::new();
    for w in pool {
        if !seen.insert(w) {
            return Err(Error::Lexicon(format!("duplicate entry `{w}` in {name}")));
        }
    }
    Ok(())
}

/// Parses a lexicon file into the lexicon and its connective pool.
pub fn parse_lexicon(text: &str) -> Result<(Lexicon, Vec<String>)> {
    let mut subjects = Vec::new();
    let mut predicates = Vec::new();
    let mut connectives = Vec::new();
    let mut section: Option<&mut Vec<String>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = Some(match &line[1..line.len() - 1] {
                "subjects" => &mut subjects,
                "predicates" => &mut predicates,
                "connectives" => &mut connectives,
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("unknown section `{other}`"),
                    })
                }
            });
            continue;
        }
        match section.as_deref_mut() {
            Some(pool) => pool.push(line.to_string()),
            None => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "entry before any section header".into(),
                })
            }
        }
    }
    let mut seen = HashSet::new();
    if let Some(dup) = connectives.iter().find(|c| !seen.insert(*c)) {
        return Err(Error::Lexicon(format!("duplicate entry `{dup}` in connectives")));
    }
    Ok((Lexicon::new(subjects, predicates)?, connectives))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Subject,
    Predicate,
    Connective,
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTemplate {
    slots: Vec<Slot>,
}

impl SentenceTemplate {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if !slots.contains(&Slot::Subject) || !slots.contains(&Slot::Predicate) {
            return Err(Error::Template(
                "a template needs at least one subject and one predicate slot".into(),
            ));
        }
        Ok(Self { slots })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut slots = Vec::new();
        let mut literal = String::new();
        let mut rest = text;
        while let Some(open) = rest.find('{') {
            literal.push_str(&rest[..open]);
            let after = &rest[open..];
            let slot = if after.starts_with("{S}") {
                Slot::Subject
            } else if after.starts_with("{P}") {
                Slot::Predicate
            } else if after.starts_with("{C}") {
                Slot::Connective
            } else {
                return Err(Error::Template(format!(
                    "unknown placeholder at `{}` in `{text}`",
                    after.chars().take(3).collect::<String>()
                )));
            };
            if !literal.is_empty() {
                slots.push(Slot::Literal(std::mem::take(&mut literal)));
            }
            slots.push(slot);
            rest = &after[3..];
        }
        literal.push_str(rest);
        if !literal.is_empty() {
            slots.push(Slot::Literal(literal));
        }
        Self::new(slots)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn uses_connective(&self) -> bool {
        self.slots.contains(&Slot::Connective)
    }
}

/// One template per non-empty, non-comment line.
pub fn parse_templates(text: &str) -> Result<Vec<SentenceTemplate>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(SentenceTemplate::parse)
        .collect()
}

/// `n_sentences` sentences. For each one a template is drawn uniformly, then
/// its slots are filled left to right, each by a uniform draw from its pool.
pub fn gen_text(
    lexicon: &Lexicon,
    templates: &[SentenceTemplate],
    connectives: &[String],
    n_sentences: usize,
    rng: &mut RngState,
) -> Result<Vec<String>> {
    if templates.is_empty() {
        return Err(Error::Template("no templates".into()));
    }
    if n_sentences == 0 {
        return Err(Error::InvalidParams("n_sentences must be at least 1".into()));
    }
    if connectives.is_empty() && templates.iter().any(SentenceTemplate::uses_connective) {
        return Err(Error::MissingPool("connectives"));
    }
    let mut out = Vec::with_capacity(n_sentences);
    for _ in 0..n_sentences {
        let template = &templates[rng.next_index(templates.len())];
        let mut sentence = String::new();
        for slot in &template.slots {
            let word = match slot {
                Slot::Subject => &lexicon.subjects[rng.next_index(lexicon.subjects.len())],
                Slot::Predicate => &lexicon.predicates[rng.next_index(lexicon.predicates.len())],
                Slot::Connective => &connectives[rng.next_index(connectives.len())],
                Slot::Literal(s) => s,
            };
            sentence.push_str(word);
        }
        out.push(sentence);
    }
    Ok(out)
}
