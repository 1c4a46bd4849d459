// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! The end-to-end pipeline and its serialized form, `qalam-layout/1`.
//!
//! Coordinates in a [`LayoutDocument`] are logical: x runs from the start of
//! the line toward its end and y up from the line's baseline. Renderers
//! mirror x for right-to-left display, as `direction: "rtl"` says.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diacritics::{apply_placement, place_diacritics, DiacriticError};
use crate::diagnostic::Diagnostic;
use crate::font::{FontDescription, GlyphId, SizeVariant};
use crate::geom::{Point, Rect, Span};
use crate::justify::{
    break_greedy, break_optimum, BreakLayout, GlueSpec, JustWord, JustifyError, JustifyParams, VariantBox,
};
use crate::kashida::{self, KashidaError, KashidaPolicy};
use crate::lookup::FeatureSet;
use crate::shaper::{shape_variant, shape_word, ShapeError, ShapedWord};
use crate::text::{flatten, TextError, TextModel, Word};

pub const LAYOUT_SCHEMA: &str = "qalam-layout/1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    #[default]
    Optimum,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "optimum" => Ok(Algorithm::Optimum),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Optimum => "optimum",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct LayoutOptions {
    pub features: FeatureSet,
    pub kashida_policy: KashidaPolicy,
    pub algorithm: Algorithm,
    pub params: JustifyParams,
    /// Overrides the font's inter-word glue.
    pub glue: Option<GlueSpec>,
    pub stats: bool,
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Diacritic(#[from] DiacriticError),
    #[error(transparent)]
    Kashida(#[from] KashidaError),
    #[error(transparent)]
    Justify(#[from] JustifyError),
}

impl LayoutError {
    pub fn code(&self) -> &'static str {
        match self {
            LayoutError::Text(e) => e.code(),
            LayoutError::Shape(e) => e.code(),
            LayoutError::Diacritic(e) => e.code(),
            LayoutError::Kashida(KashidaError::CapacityExceeded { .. }) => "CapacityExceeded",
            LayoutError::Kashida(KashidaError::Lookup(_)) => "MissingAnchor",
            LayoutError::Justify(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkRecord {
    pub mark: GlyphId,
    pub variant: SizeVariant,
    /// Offset from the owning glyph's pen position.
    pub dx: i32,
    pub dy: i32,
    /// Ink box in line coordinates.
    pub ink: Rect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlyphRecord {
    pub glyph: GlyphId,
    /// Pen position in line coordinates.
    pub x: i32,
    pub y: i32,
    pub advance: i32,
    pub elongation: i32,
    pub word: usize,
    /// Ink box in line coordinates, elongation included.
    pub ink: Rect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub marks: Vec<MarkRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRecord {
    pub index: usize,
    pub text: String,
    pub variant: String,
    pub x: i32,
    pub width: i32,
    pub elongation: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    /// Distance of the baseline below the top of the first line's box.
    pub baseline: i32,
    pub width: i32,
    pub badness: i64,
    pub demerits: i64,
    pub kashida_intervals: Vec<Span>,
    pub words: Vec<WordRecord>,
    pub glyphs: Vec<GlyphRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutStats {
    pub algorithm: Algorithm,
    pub kashida_policy: KashidaPolicy,
    pub words: usize,
    pub lines: usize,
    pub total_demerits: i64,
    pub total_elongation: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub schema: String,
    pub font_id: String,
    pub units_per_em: u32,
    pub direction: String,
    pub line_height: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<i32>,
    pub lines: Vec<LineRecord>,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<LayoutStats>,
}

impl LayoutDocument {
    fn empty(font: &FontDescription, measure: Option<i32>) -> LayoutDocument {
        LayoutDocument {
            schema: LAYOUT_SCHEMA.to_string(),
            font_id: font.id.clone(),
            units_per_em: font.units_per_em,
            direction: "rtl".to_string(),
            line_height: font.line_height,
            measure,
            lines: Vec::new(),
            diagnostics: Vec::new(),
            stats: None,
        }
    }

    /// Parses and checks the schema tag.
    pub fn from_json(text: &str) -> Result<LayoutDocument, String> {
        let doc: LayoutDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if doc.schema != LAYOUT_SCHEMA {
            return Err(format!("unsupported layout schema {:?}", doc.schema));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layouts serialize") + "\n"
    }
}

/// Splits `text` into words; any run of whitespace separates words.
pub fn decompose_text(text: &str, model: &TextModel) -> Result<Vec<Word>, TextError> {
    model.decompose(&text.split_whitespace().collect::<Vec<_>>().join(" "))
}

/// Shapes every word with marks placed and no justification, on one line.
pub fn shape_document(
    text: &str,
    font: &FontDescription,
    model: &TextModel,
    options: &LayoutOptions,
) -> Result<LayoutDocument, LayoutError> {
    let words = decompose_text(text, model)?;
    let mut doc = LayoutDocument::empty(font, None);
    if words.is_empty() {
        return Ok(doc);
    }
    let glue = options.glue.unwrap_or(font.glue);
    let mut line = LineBuilder::new(0);
    for (index, word) in words.iter().enumerate() {
        let shaped = shape_word(&word.clusters, font, model, &options.features)?;
        if index > 0 {
            line.x += glue.width;
        }
        line.push(font, index, word, &shaped, "default", &mut doc.diagnostics)?;
    }
    doc.lines.push(line.finish(0, 0));
    Ok(doc)
}

/// Breaks `text` into lines of `measure` font units and sets them.
pub fn justify_document(
    text: &str,
    measure: i32,
    font: &FontDescription,
    model: &TextModel,
    options: &LayoutOptions,
) -> Result<LayoutDocument, LayoutError> {
    let words = decompose_text(text, model)?;
    let glue = options.glue.unwrap_or(font.glue);
    let (candidates, boxes) = realize_variants(&words, font, model, options)?;

    let breaks = match options.algorithm {
        Algorithm::Greedy => break_greedy(&boxes, measure, glue, &options.params)?,
        Algorithm::Optimum => break_optimum(&boxes, measure, glue, &options.params)?,
    };
    let mut doc = LayoutDocument::empty(font, Some(measure));
    set_lines(&mut doc, &breaks, &words, &candidates, font, options)?;
    if options.stats {
        doc.stats = Some(LayoutStats {
            algorithm: options.algorithm,
            kashida_policy: options.kashida_policy,
            words: words.len(),
            lines: breaks.lines.len(),
            total_demerits: breaks.total_demerits,
            total_elongation: breaks.lines.iter().flat_map(|l| &l.kashida).sum(),
        });
    }
    Ok(doc)
}

/// The boxes the breakers see for `text`: one entry per word, one box per
/// width variant, with its elongation capacity under the options' policy.
pub fn justification_boxes(
    text: &str,
    font: &FontDescription,
    model: &TextModel,
    options: &LayoutOptions,
) -> Result<Vec<JustWord>, LayoutError> {
    let words = decompose_text(text, model)?;
    Ok(realize_variants(&words, font, model, options)?.1)
}

type Candidates = Vec<Vec<(String, ShapedWord)>>;

fn realize_variants(
    words: &[Word],
    font: &FontDescription,
    model: &TextModel,
    options: &LayoutOptions,
) -> Result<(Candidates, Vec<JustWord>), LayoutError> {
    let mut candidates: Candidates = Vec::with_capacity(words.len());
    let mut boxes = Vec::with_capacity(words.len());
    for word in words {
        let shaped = shape_word(&word.clusters, font, model, &options.features)?;
        let mut realized = Vec::new();
        let mut variants = Vec::new();
        for v in &shaped.variants {
            let w = shape_variant(&word.clusters, font, model, &options.features, &v.spec)?;
            variants.push(VariantBox {
                width: w.natural_width,
                max_extra: kashida::capacity(&w, font, options.kashida_policy),
            });
            realized.push((v.id.clone(), w));
        }
        candidates.push(realized);
        boxes.push(JustWord { variants });
    }
    Ok((candidates, boxes))
}

fn set_lines(
    doc: &mut LayoutDocument,
    breaks: &BreakLayout,
    words: &[Word],
    candidates: &[Vec<(String, ShapedWord)>],
    font: &FontDescription,
    options: &LayoutOptions,
) -> Result<(), LayoutError> {
    let mut diagnostics = Vec::new();
    for (n, fit) in breaks.lines.iter().enumerate() {
        let mut line = LineBuilder::new(n);
        for (k, &v) in fit.variants.iter().enumerate() {
            let index = fit.start + k;
            let (id, shaped) = &candidates[index][v];
            let plan = kashida::allocate(shaped, font, fit.kashida[k], options.kashida_policy);
            let stretched = kashida::apply_plan(shaped, font, &plan)?;
            line.x = fit.positions[k];
            line.push(font, index, &words[index], &stretched, id, &mut diagnostics)?;
        }
        let baseline = font.line_height * n as i32;
        let mut record = line.finish(fit.badness, fit.demerits);
        record.baseline = baseline;
        record.kashida_intervals = fit.kashida_intervals.clone();
        doc.lines.push(record);
    }
    doc.diagnostics = breaks.diagnostics.clone();
    doc.diagnostics.append(&mut diagnostics);
    Ok(())
}

struct LineBuilder {
    index: usize,
    x: i32,
    words: Vec<WordRecord>,
    glyphs: Vec<GlyphRecord>,
}

impl LineBuilder {
    fn new(index: usize) -> LineBuilder {
        LineBuilder { index, x: 0, words: Vec::new(), glyphs: Vec::new() }
    }

    /// Places the word's marks and appends its glyphs at the current pen.
    fn push(
        &mut self,
        font: &FontDescription,
        index: usize,
        word: &Word,
        shaped: &ShapedWord,
        variant: &str,
        diagnostics: &mut Vec<Diagnostic>,
    ) -> Result<(), LayoutError> {
        let placement = place_diacritics(shaped, font)?;
        let placed = apply_placement(shaped, &placement);
        diagnostics.extend(placement.diagnostics.iter().cloned().map(|d| d.at_word(Some(self.index), index)));

        let pens = placed.pen_positions();
        let mut slot = vec![usize::MAX; placed.glyphs.len()];
        for i in placed.base_indices() {
            let g = &placed.glyphs[i];
            let metrics = font.glyph(&g.glyph);
            let ink = metrics.map_or(Rect::default(), |m| m.ink);
            let x = self.x + pens[i];
            slot[i] = self.glyphs.len();
            self.glyphs.push(GlyphRecord {
                glyph: g.glyph.clone(),
                x,
                y: 0,
                advance: g.advance,
                elongation: g.elongation,
                word: index,
                ink: Rect::new(x + ink.x_min, ink.y_min, x + ink.x_max + g.elongation, ink.y_max),
                path: metrics.and_then(|m| m.path.clone()),
                marks: Vec::new(),
            });
        }
        for m in &placement.marks {
            let Some(&at) = slot.get(m.owner).filter(|&&s| s != usize::MAX) else {
                continue;
            };
            let ink = font.mark(&m.mark).map_or(Rect::default(), |g| g.ink);
            let origin = self.glyphs[at].x;
            self.glyphs[at].marks.push(MarkRecord {
                mark: m.mark.clone(),
                variant: m.variant,
                dx: m.offset.x,
                dy: m.offset.y,
                ink: ink.translate(Point::new(origin + m.offset.x, m.offset.y)),
            });
        }
        self.words.push(WordRecord {
            index,
            text: flatten(std::slice::from_ref(word)),
            variant: variant.to_string(),
            x: self.x,
            width: placed.natural_width,
            elongation: placed.glyphs.iter().map(|g| g.elongation).sum(),
        });
        self.x += placed.natural_width;
        Ok(())
    }

    fn finish(self, badness: i64, demerits: i64) -> LineRecord {
        let width = self.words.last().map_or(0, |w| w.x + w.width);
        LineRecord {
            baseline: 0,
            width,
            badness,
            demerits,
            kashida_intervals: Vec::new(),
            words: self.words,
            glyphs: self.glyphs,
        }
    }
}
