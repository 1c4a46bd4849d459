// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Code-point classification and the linguistic property table.
//!
//! The [`TextModel`] holds one [`LetterRecord`] per registered Arabic letter
//! and one [`DiacriticRecord`] per registered combining mark. The built-in
//! table covers U+0621–U+0652; extension letters (Farsi, Urdu, ...) are
//! loaded from the same JSON schema with [`TextModel::extend_from_json`].
//!
//! Text is decomposed into [`Cluster`]s (a base letter plus its marks) and
//! words. Tatweel never becomes a glyph: it is recorded as a stretch hint on
//! the cluster it follows.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TATWEEL: char = '\u{0640}';
pub const FATHATAN: char = '\u{064B}';
pub const FATHA: char = '\u{064E}';
pub const SHADDA: char = '\u{0651}';
pub const LAM: char = '\u{0644}';

/// The two marks that come in normal/medium/large sizes.
pub fn is_elongatable(cp: char) -> bool {
    cp == FATHA || cp == FATHATAN
}

const BUILTIN_TABLE: &str = include_str!("../data/letters.json");
const LETTER_RANGE: std::ops::RangeInclusive<u32> = 0x0621..=0x064A;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    Letter,
    Diacritic,
    Tatweel,
    Space,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JoiningClass {
    Dual,
    Right,
    None,
}

impl JoiningClass {
    /// Whether a letter of this class connects to the letter after it.
    pub fn joins_forward(self) -> bool {
        self == JoiningClass::Dual
    }

    /// Whether a letter of this class connects to the letter before it.
    pub fn joins_backward(self) -> bool {
        matches!(self, JoiningClass::Dual | JoiningClass::Right)
    }

    pub fn allows(self, form: Form) -> bool {
        match self {
            JoiningClass::Dual => true,
            JoiningClass::Right => matches!(form, Form::Isolated | Form::Final),
            JoiningClass::None => form == Form::Isolated,
        }
    }

    pub fn valid_forms(self) -> &'static [Form] {
        match self {
            JoiningClass::Dual => &[Form::Isolated, Form::Initial, Form::Medial, Form::Final],
            JoiningClass::Right => &[Form::Isolated, Form::Final],
            JoiningClass::None => &[Form::Isolated],
        }
    }
}

/// Contextual form of a letter inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Isolated,
    Initial,
    Medial,
    Final,
}

impl Form {
    pub const ALL: [Form; 4] = [Form::Isolated, Form::Initial, Form::Medial, Form::Final];

    /// Glyph-name suffix used by the demo font.
    pub fn suffix(self) -> &'static str {
        match self {
            Form::Isolated => "isol",
            Form::Initial => "init",
            Form::Medial => "medi",
            Form::Final => "fina",
        }
    }

    fn from_links(backward: bool, forward: bool) -> Form {
        match (backward, forward) {
            (false, false) => Form::Isolated,
            (false, true) => Form::Initial,
            (true, true) => Form::Medial,
            (true, false) => Form::Final,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Isolated => "isolated",
            Form::Initial => "initial",
            Form::Medial => "medial",
            Form::Final => "final",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DotPosition {
    Above,
    Below,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dots {
    pub count: u8,
    pub position: DotPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassClass {
    Light,
    Medium,
    Heavy,
}

impl MassClass {
    pub const ALL: [MassClass; 3] = [MassClass::Light, MassClass::Medium, MassClass::Heavy];
}

/// Which side of the base a mark sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    Above,
    Below,
    Through,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Above => "above",
            Placement::Below => "below",
            Placement::Through => "through",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiacriticCategory {
    Language,
    Aesthetic,
    Explanatory,
}

/// Serde adapter for `"U+0628"`-style code points.
pub mod code_point {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn format(cp: char) -> String {
        format!("U+{:04X}", cp as u32)
    }

    pub fn parse(s: &str) -> Option<char> {
        let hex = s.strip_prefix("U+").or_else(|| s.strip_prefix("u+"))?;
        u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
    }

    pub fn serialize<S: Serializer>(cp: &char, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(*cp))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<char, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("invalid code point {s:?}")))
    }
}

/// A code point usable as a JSON map key (`"U+0628"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodePoint(#[serde(with = "code_point")] pub char);

impl fmt::Display for CodePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&code_point::format(self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterRecord {
    pub name: String,
    #[serde(with = "code_point")]
    pub code_point: char,
    #[serde(rename = "joining")]
    pub joining_class: JoiningClass,
    pub dots: Dots,
    #[serde(rename = "skeleton")]
    pub skeleton_family: String,
    pub stretch_class: u8,
    #[serde(rename = "mass")]
    pub default_mass_class: MassClass,
    /// Letters outside U+0621–U+064A must opt in explicitly.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub extension: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiacriticRecord {
    pub name: String,
    #[serde(with = "code_point")]
    pub code_point: char,
    pub placement: Placement,
    pub category: DiacriticCategory,
    pub elongatable: bool,
    /// Registers a mark as drawn through its base (Wasl-type marks).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub through_mark: bool,
}

impl DiacriticRecord {
    /// Vowel marks are the language marks other than Shadda; a cluster
    /// carries at most one of them.
    pub fn is_vowel(&self) -> bool {
        self.category == DiacriticCategory::Language && self.code_point != SHADDA
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed letter table: {0}")]
    Parse(String),
    #[error("unsupported letter table schema {0:?}")]
    Schema(String),
    #[error("{cp} is outside U+0621–U+064A and not marked as an extension letter")]
    OutOfRange { cp: String },
    #[error("{cp}: dot count and dot position disagree")]
    Dots { cp: String },
    #[error("{cp}: only Fatha and Fathatan may be elongatable")]
    Elongatable { cp: String },
    #[error("{cp}: placement \"through\" requires through_mark")]
    Through { cp: String },
    #[error("skeleton family {family:?}: {a} and {b} differ in more than their dots")]
    Skeleton { family: String, a: String, b: String },
    #[error("{cp} is registered twice")]
    Duplicate { cp: String },
}

#[derive(Deserialize)]
struct TableFile {
    schema: String,
    #[serde(default)]
    letters: Vec<LetterRecord>,
    #[serde(default)]
    diacritics: Vec<DiacriticRecord>,
}

/// Immutable property table for letters and diacritics.
#[derive(Debug, Clone)]
pub struct TextModel {
    letters: BTreeMap<char, LetterRecord>,
    diacritics: BTreeMap<char, DiacriticRecord>,
}

impl TextModel {
    /// The built-in table covering U+0621–U+0652.
    pub fn builtin() -> &'static TextModel {
        static MODEL: OnceLock<TextModel> = OnceLock::new();
        MODEL.get_or_init(|| TextModel::from_json(BUILTIN_TABLE).expect("built-in letter table is valid"))
    }

    pub fn from_json(source: &str) -> Result<TextModel, TableError> {
        let mut model = TextModel { letters: BTreeMap::new(), diacritics: BTreeMap::new() };
        model.merge(source, false)?;
        Ok(model)
    }

    /// Returns a copy of this table with the records of `source` added.
    /// Records for code points already present replace the existing ones.
    pub fn extend_from_json(&self, source: &str) -> Result<TextModel, TableError> {
        let mut model = self.clone();
        model.merge(source, true)?;
        Ok(model)
    }

    fn merge(&mut self, source: &str, replace: bool) -> Result<(), TableError> {
        let file: TableFile = serde_json::from_str(source).map_err(|e| TableError::Parse(e.to_string()))?;
        if file.schema != "qalam-letters/1" {
            return Err(TableError::Schema(file.schema));
        }
        for letter in file.letters {
            let cp = code_point::format(letter.code_point);
            if !LETTER_RANGE.contains(&(letter.code_point as u32)) && !letter.extension {
                return Err(TableError::OutOfRange { cp });
            }
            if (letter.dots.count == 0) != (letter.dots.position == DotPosition::None) || letter.dots.count > 3 {
                return Err(TableError::Dots { cp });
            }
            if self.letters.insert(letter.code_point, letter).is_some() && !replace {
                return Err(TableError::Duplicate { cp });
            }
        }
        for mark in file.diacritics {
            let cp = code_point::format(mark.code_point);
            if mark.elongatable != is_elongatable(mark.code_point) {
                return Err(TableError::Elongatable { cp });
            }
            if (mark.placement == Placement::Through) != mark.through_mark {
                return Err(TableError::Through { cp });
            }
            if self.diacritics.insert(mark.code_point, mark).is_some() && !replace {
                return Err(TableError::Duplicate { cp });
            }
        }
        self.check_skeletons()
    }

    fn check_skeletons(&self) -> Result<(), TableError> {
        let mut families: BTreeMap<&str, Vec<&LetterRecord>> = BTreeMap::new();
        for letter in self.letters.values() {
            families.entry(&letter.skeleton_family).or_default().push(letter);
        }
        for (family, members) in families {
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    let same_shape = a.joining_class == b.joining_class && a.stretch_class == b.stretch_class;
                    if !same_shape || a.dots == b.dots {
                        return Err(TableError::Skeleton {
                            family: family.to_string(),
                            a: code_point::format(a.code_point),
                            b: code_point::format(b.code_point),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn classify(&self, cp: char) -> CharClass {
        if self.letters.contains_key(&cp) {
            CharClass::Letter
        } else if self.diacritics.contains_key(&cp) {
            CharClass::Diacritic
        } else if cp == TATWEEL {
            CharClass::Tatweel
        } else if cp == ' ' {
            CharClass::Space
        } else {
            CharClass::Other
        }
    }

    pub fn letter(&self, cp: char) -> Option<&LetterRecord> {
        self.letters.get(&cp)
    }

    pub fn diacritic(&self, cp: char) -> Option<&DiacriticRecord> {
        self.diacritics.get(&cp)
    }

    pub fn letters(&self) -> impl Iterator<Item = &LetterRecord> {
        self.letters.values()
    }

    pub fn diacritics(&self) -> impl Iterator<Item = &DiacriticRecord> {
        self.diacritics.values()
    }

    /// Groups `text` into words of clusters.
    pub fn decompose(&self, text: &str) -> Result<Vec<Word>, TextError> {
        let mut words = Vec::new();
        let mut current: Vec<Cluster> = Vec::new();
        for (offset, cp) in text.char_indices() {
            match self.classify(cp) {
                CharClass::Letter => current.push(Cluster { base: cp, marks: Vec::new(), stretch_hint: false }),
                CharClass::Diacritic => {
                    let Some(cluster) = current.last_mut() else {
                        return Err(TextError::LeadingMark { offset, cp });
                    };
                    let record = &self.diacritics[&cp];
                    let clash =
                        cluster.marks.iter().any(|&m| m == cp || (record.is_vowel() && self.diacritics[&m].is_vowel()));
                    if clash {
                        return Err(TextError::DuplicateMark { offset, cp });
                    }
                    cluster.marks.push(cp);
                }
                CharClass::Tatweel => match current.last_mut() {
                    Some(cluster) => cluster.stretch_hint = true,
                    None => return Err(TextError::LeadingMark { offset, cp }),
                },
                CharClass::Space => {
                    if !current.is_empty() {
                        words.push(Word { clusters: std::mem::take(&mut current) });
                    }
                }
                CharClass::Other => return Err(TextError::Unsupported { offset, cp }),
            }
        }
        if !current.is_empty() {
            words.push(Word { clusters: current });
        }
        Ok(words)
    }

    /// Joining classes of the cluster bases, for [`analyze_joining`].
    pub fn joining_classes(&self, clusters: &[Cluster]) -> Vec<JoiningClass> {
        clusters.iter().map(|c| self.letters.get(&c.base).map_or(JoiningClass::None, |l| l.joining_class)).collect()
    }
}

/// A base letter with the marks that follow it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cluster {
    pub base: char,
    /// Marks in input order.
    pub marks: Vec<char>,
    /// Set when the input carried a Tatweel after this letter.
    pub stretch_hint: bool,
}

impl Cluster {
    pub fn new(base: char) -> Cluster {
        Cluster { base, marks: Vec::new(), stretch_hint: false }
    }

    pub fn with_marks(base: char, marks: &[char]) -> Cluster {
        Cluster { base, marks: marks.to_vec(), stretch_hint: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub clusters: Vec<Cluster>,
}

impl Word {
    pub fn bases(&self) -> Vec<char> {
        self.clusters.iter().map(|c| c.base).collect()
    }
}

/// Inverse of [`TextModel::decompose`] for well-formed words.
pub fn flatten(words: &[Word]) -> String {
    let mut out = String::new();
    for (i, word) in words.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        for cluster in &word.clusters {
            out.push(cluster.base);
            out.extend(&cluster.marks);
            if cluster.stretch_hint {
                out.push(TATWEEL);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("mark {} at byte {offset} has no preceding letter", code_point::format(*cp))]
    LeadingMark { offset: usize, cp: char },
    #[error("mark {} at byte {offset} repeats a mark of the same cluster", code_point::format(*cp))]
    DuplicateMark { offset: usize, cp: char },
    #[error("unsupported character {} at byte {offset}", code_point::format(*cp))]
    Unsupported { offset: usize, cp: char },
    #[error("empty word")]
    EmptyWord,
}

impl TextError {
    pub fn code(&self) -> &'static str {
        match self {
            TextError::LeadingMark { .. } => "LeadingMark",
            TextError::DuplicateMark { .. } => "DuplicateMark",
            TextError::Unsupported { .. } => "UnsupportedChar",
            TextError::EmptyWord => "EmptyWord",
        }
    }
}

/// Contextual form of every letter of one word.
pub fn analyze_joining(classes: &[JoiningClass]) -> Result<Vec<Form>, TextError> {
    if classes.is_empty() {
        return Err(TextError::EmptyWord);
    }
    let link = |a: JoiningClass, b: JoiningClass| a.joins_forward() && b.joins_backward();
    Ok((0..classes.len())
        .map(|i| {
            let backward = i > 0 && link(classes[i - 1], classes[i]);
            let forward = i + 1 < classes.len() && link(classes[i], classes[i + 1]);
            Form::from_links(backward, forward)
        })
        .collect())
}
