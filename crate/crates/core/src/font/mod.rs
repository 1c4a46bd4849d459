// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! The declarative font description (`qalam-font/1`).
//!
//! A font description stands in for a smart font: per-glyph advances, ink
//! boxes, mark anchors and Kashida capacities, mark size variants, ligature
//! component anchors, the character maps, and the substitution and
//! positioning lookups. Every coordinate is an integer in font units, so the
//! canonical serialization (sorted keys, two-space indent) round-trips
//! byte-for-byte.

mod lint;

pub use lint::{lint_font, suggested_mass_classes};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point, Rect};
use crate::justify::GlueSpec;
use crate::lookup::{LookupPayload, LookupRule};
use crate::text::{self, CodePoint, Form, MassClass, Placement};

pub const FONT_SCHEMA: &str = "qalam-font/1";

/// Name of a glyph in the font description.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GlyphId(pub String);

impl GlyphId {
    pub fn new(name: impl Into<String>) -> GlyphId {
        GlyphId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GlyphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for GlyphId {
    fn from(s: &str) -> GlyphId {
        GlyphId(s.to_string())
    }
}

pub type AnchorPoint = Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeVariant {
    Normal,
    Medium,
    Large,
}

impl SizeVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            SizeVariant::Normal => "normal",
            SizeVariant::Medium => "medium",
            SizeVariant::Large => "large",
        }
    }
}

impl fmt::Display for SizeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stretch {
    /// Rank of the letter's stretchability; 0 never stretches.
    #[serde(default)]
    pub class: u8,
    #[serde(default)]
    pub max_extension: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlyphMetrics {
    pub advance: i32,
    pub ink: Rect,
    #[serde(default)]
    pub anchors: BTreeMap<Placement, AnchorPoint>,
    #[serde(default)]
    pub stretch: Stretch,
    pub mass: MassClass,
    /// Optional outline for prettier proofs; carries no semantics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkGlyph {
    #[serde(rename = "class")]
    pub attachment_class: Placement,
    pub anchor: AnchorPoint,
    pub ink: Rect,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub variants: BTreeMap<SizeVariant, GlyphId>,
    /// Where a mark stacked on this one attaches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark_anchor_above: Option<AnchorPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LigatureKind {
    Linguistic,
    Aesthetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LigatureEntry {
    pub components: Vec<GlyphId>,
    #[serde(rename = "glyph")]
    pub ligature_glyph: GlyphId,
    pub component_anchors: Vec<BTreeMap<Placement, AnchorPoint>>,
    pub kind: LigatureKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeThresholds {
    pub medium: i32,
    pub large: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FontDescription {
    pub schema: String,
    pub id: String,
    pub units_per_em: u32,
    pub line_height: i32,
    pub size_thresholds: SizeThresholds,
    /// Minimum horizontal clearance between neighbouring marks.
    pub gap_epsilon: i32,
    pub glue: GlueSpec,
    /// Stretch class to Kashida priority rank (higher is preferred).
    #[serde(default)]
    pub kashida_priority: BTreeMap<u8, u32>,
    /// Vertical adjustment of default mark positions per base mass class.
    #[serde(default)]
    pub mark_positions: BTreeMap<MassClass, BTreeMap<Placement, i32>>,
    /// Size of a word-final Fatha/Fathatan per mass class of its base.
    #[serde(default)]
    pub final_variants: BTreeMap<MassClass, SizeVariant>,
    pub glyphs: BTreeMap<GlyphId, GlyphMetrics>,
    pub marks: BTreeMap<GlyphId, MarkGlyph>,
    #[serde(default)]
    pub ligatures: Vec<LigatureEntry>,
    pub cmap: BTreeMap<CodePoint, BTreeMap<Form, GlyphId>>,
    pub mark_cmap: BTreeMap<CodePoint, GlyphId>,
    #[serde(default)]
    pub gsub: Vec<LookupRule>,
    #[serde(default)]
    pub gpos: Vec<LookupRule>,
    #[serde(skip)]
    index: FontIndex,
}

/// Lookups derived from the serialized tables at load time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct FontIndex {
    mark_code_points: BTreeMap<GlyphId, char>,
    variant_parent: BTreeMap<GlyphId, (GlyphId, SizeVariant)>,
    ligature_by_glyph: BTreeMap<GlyphId, usize>,
}

#[derive(Debug, Error)]
pub enum FontError {
    #[error("font parse error: {0}")]
    Parse(String),
    #[error("font schema error: {0}")]
    Schema(String),
    #[error("dangling glyph reference {0:?}")]
    Ref(String),
    #[error("font value out of range: {0}")]
    Range(String),
    #[error("no glyph for {cp} in {form} form")]
    NoGlyph { cp: CodePoint, form: Form },
    #[error("cannot read font: {0}")]
    Io(#[from] std::io::Error),
}

impl FontError {
    pub fn code(&self) -> &'static str {
        match self {
            FontError::Parse(_) => "ParseError",
            FontError::Schema(_) => "SchemaError",
            FontError::Ref(_) => "RefError",
            FontError::Range(_) => "RangeError",
            FontError::NoGlyph { .. } => "NoGlyph",
            FontError::Io(_) => "Io",
        }
    }
}

/// Reads and validates a font description.
pub fn load_font(mut source: impl Read) -> Result<FontDescription, FontError> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| match e.kind() {
        std::io::ErrorKind::InvalidData => FontError::Parse("font file is not UTF-8".into()),
        _ => FontError::Io(e),
    })?;
    FontDescription::from_json(&text)
}

impl FontDescription {
    pub fn from_json(text: &str) -> Result<FontDescription, FontError> {
        let mut font: FontDescription = serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => FontError::Schema(e.to_string()),
            _ => FontError::Parse(e.to_string()),
        })?;
        font.validate()?;
        font.index = font.build_index();
        Ok(font)
    }

    /// Canonical serialization: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("font descriptions always serialize");
        let mut out = serde_json::to_string_pretty(&sort_keys(value)).expect("values always serialize");
        out.push('\n');
        out
    }

    fn validate(&self) -> Result<(), FontError> {
        if self.schema != FONT_SCHEMA {
            return Err(FontError::Schema(format!("expected schema {FONT_SCHEMA:?}, found {:?}", self.schema)));
        }
        if self.units_per_em == 0 {
            return Err(FontError::Range("units_per_em must be positive".into()));
        }
        let t = self.size_thresholds;
        if !(0 < t.medium && t.medium < t.large) {
            return Err(FontError::Range(format!(
                "size thresholds must satisfy 0 < medium < large, found {} and {}",
                t.medium, t.large
            )));
        }
        if self.gap_epsilon < 0 || self.line_height <= 0 {
            return Err(FontError::Range("gap_epsilon must be >= 0 and line_height > 0".into()));
        }
        let g = self.glue;
        if g.width < 0 || g.stretch < 0 || g.shrink < 0 || g.shrink > g.width {
            return Err(FontError::Range("glue needs non-negative values and shrink <= width".into()));
        }
        if let Some(dup) = self.glyphs.keys().find(|id| self.marks.contains_key(*id)) {
            return Err(FontError::Schema(format!("{dup} is both a base glyph and a mark")));
        }

        for (id, glyph) in &self.glyphs {
            if !glyph.ink.is_ordered() {
                return Err(FontError::Range(format!("{id}: ink box is not ordered")));
            }
            if glyph.advance < 0 || glyph.stretch.max_extension < 0 {
                return Err(FontError::Range(format!("{id}: negative advance or extension")));
            }
            if glyph.stretch.class == 0 && glyph.stretch.max_extension != 0 {
                return Err(FontError::Range(format!("{id}: stretch class 0 with non-zero max_extension")));
            }
        }

        let mut mark_cp = BTreeMap::new();
        for (cp, id) in &self.mark_cmap {
            if !self.marks.contains_key(id) {
                return Err(FontError::Ref(id.0.clone()));
            }
            mark_cp.insert(id, cp.0);
        }
        for (id, mark) in &self.marks {
            if !mark.ink.is_ordered() {
                return Err(FontError::Range(format!("{id}: ink box is not ordered")));
            }
            if mark.variants.is_empty() {
                continue;
            }
            if !mark_cp.get(id).is_some_and(|&cp| text::is_elongatable(cp)) {
                return Err(FontError::Schema(format!("{id}: only Fatha and Fathatan carry size variants")));
            }
            for (size, target) in &mark.variants {
                let Some(variant) = self.marks.get(target) else {
                    return Err(FontError::Ref(target.0.clone()));
                };
                if *size == SizeVariant::Normal && target != id {
                    return Err(FontError::Schema(format!("{id}: the normal variant must be the mark itself")));
                }
                if variant.attachment_class != mark.attachment_class {
                    return Err(FontError::Schema(format!("{target}: variant changes the attachment class")));
                }
            }
        }

        for (cp, forms) in &self.cmap {
            for id in forms.values() {
                if !self.glyphs.contains_key(id) {
                    return Err(FontError::Ref(id.0.clone()));
                }
            }
            if forms.is_empty() {
                return Err(FontError::Schema(format!("{cp}: empty cmap entry")));
            }
        }

        let mut seen_ligatures = BTreeSet::new();
        for lig in &self.ligatures {
            for id in lig.components.iter().chain([&lig.ligature_glyph]) {
                if !self.glyphs.contains_key(id) {
                    return Err(FontError::Ref(id.0.clone()));
                }
            }
            if lig.components.len() < 2 {
                return Err(FontError::Schema(format!("{}: a ligature needs components", lig.ligature_glyph)));
            }
            if lig.component_anchors.len() != lig.components.len() {
                return Err(FontError::Schema(format!(
                    "{}: {} component anchor tables for {} components",
                    lig.ligature_glyph,
                    lig.component_anchors.len(),
                    lig.components.len()
                )));
            }
            if !seen_ligatures.insert(&lig.ligature_glyph) {
                return Err(FontError::Schema(format!("{}: ligature registered twice", lig.ligature_glyph)));
            }
        }

        for rule in self.gsub.iter().chain(&self.gpos) {
            self.validate_rule(rule)?;
        }
        Ok(())
    }

    fn validate_rule(&self, rule: &LookupRule) -> Result<(), FontError> {
        let known = |id: &GlyphId| self.glyphs.contains_key(id) || self.marks.contains_key(id);
        for id in rule.referenced_glyphs() {
            if !known(id) {
                return Err(FontError::Ref(id.0.clone()));
            }
        }
        for id in rule.payload.keyed_glyphs() {
            if !rule.coverage.contains(id) {
                return Err(FontError::Schema(format!("{} rule: {id} is not in the coverage table", rule.kind_name())));
            }
        }
        if let LookupPayload::LigatureSub { ligatures } = &rule.payload {
            for lig in ligatures {
                let registered = self.ligature(&lig.glyph).is_some_and(|e| e.components == lig.components);
                if !registered {
                    return Err(FontError::Schema(format!(
                        "ligature rule result {} does not match a ligature entry",
                        lig.glyph
                    )));
                }
            }
        }
        if let LookupPayload::AlternateSub { alternates } = &rule.payload {
            if alternates.values().any(Vec::is_empty) {
                return Err(FontError::Schema("alternate_sub needs at least one alternative".into()));
            }
        }
        Ok(())
    }

    fn build_index(&self) -> FontIndex {
        let mut index = FontIndex::default();
        for (cp, id) in &self.mark_cmap {
            index.mark_code_points.insert(id.clone(), cp.0);
        }
        for (id, mark) in &self.marks {
            for (size, target) in &mark.variants {
                index.variant_parent.insert(target.clone(), (id.clone(), *size));
            }
        }
        for (i, lig) in self.ligatures.iter().enumerate() {
            index.ligature_by_glyph.insert(lig.ligature_glyph.clone(), i);
        }
        index
    }

    /// The cmap entry for `letter` in `form`.
    pub fn glyph_for(&self, letter: char, form: Form) -> Result<&GlyphId, FontError> {
        self.cmap
            .get(&CodePoint(letter))
            .and_then(|forms| forms.get(&form))
            .ok_or(FontError::NoGlyph { cp: CodePoint(letter), form })
    }

    pub fn mark_for(&self, cp: char) -> Option<&GlyphId> {
        self.mark_cmap.get(&CodePoint(cp))
    }

    pub fn glyph(&self, id: &GlyphId) -> Option<&GlyphMetrics> {
        self.glyphs.get(id)
    }

    pub fn mark(&self, id: &GlyphId) -> Option<&MarkGlyph> {
        self.marks.get(id)
    }

    pub fn is_mark(&self, id: &GlyphId) -> bool {
        self.marks.contains_key(id)
    }

    pub fn ligature(&self, id: &GlyphId) -> Option<&LigatureEntry> {
        match self.index.ligature_by_glyph.get(id) {
            Some(&i) => Some(&self.ligatures[i]),
            None => self.ligatures.iter().find(|l| &l.ligature_glyph == id),
        }
    }

    /// The diacritic a mark glyph (or one of its size variants) encodes.
    pub fn mark_code_point(&self, id: &GlyphId) -> Option<char> {
        let base = self.base_mark(id);
        self.index.mark_code_points.get(base.0).copied()
    }

    /// Maps a size-variant glyph back to the mark it resizes.
    pub fn base_mark<'a>(&'a self, id: &'a GlyphId) -> (&'a GlyphId, SizeVariant) {
        match self.index.variant_parent.get(id) {
            Some((parent, size)) => (parent, *size),
            None => (id, SizeVariant::Normal),
        }
    }

    /// The glyph drawing `mark` at `size`.
    pub fn variant_glyph<'a>(&'a self, mark: &'a GlyphId, size: SizeVariant) -> Option<&'a GlyphId> {
        match (self.marks.get(mark)?.variants.get(&size), size) {
            (Some(id), _) => Some(id),
            (None, SizeVariant::Normal) => Some(mark),
            (None, _) => None,
        }
    }

    pub fn mark_position_adjustment(&self, mass: MassClass, side: Placement) -> i32 {
        self.mark_positions.get(&mass).and_then(|m| m.get(&side)).copied().unwrap_or(0)
    }

    pub fn final_variant(&self, mass: MassClass) -> SizeVariant {
        self.final_variants.get(&mass).copied().unwrap_or(SizeVariant::Normal)
    }

    pub fn kashida_rank(&self, stretch_class: u8) -> u32 {
        self.kashida_priority.get(&stretch_class).copied().unwrap_or(stretch_class as u32)
    }
}

fn sort_keys(value: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match value {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}
