// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Phase-based diacritic placement.
//!
//! Marks are first put at their default size and position: attachment
//! arithmetic plus a vertical adjustment keyed by the base's mass class.
//! Then each slot (a base glyph, or one ligature component) is settled in
//! logical order: Shadda is centred over the extended ink first, an
//! elongatable vowel (Fatha, Fathatan) is resized to the free span and
//! centred second, and the remaining marks are centred last. The final slot
//! takes the elongatable variant its mass class calls for. A collision pass
//! then pushes later marks clear of earlier ones.
//!
//! Placement is always recomputed from the base glyphs and the size-normal
//! mark ids, so running it on its own output changes nothing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostic::{Diagnostic, Location};
use crate::font::{FontDescription, GlyphId, SizeThresholds, SizeVariant};
use crate::geom::{union_length, Point, Span};
use crate::lookup::LookupError;
use crate::shaper::{ShapedWord, Slot};
use crate::text::{self, Placement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedMark {
    /// Index of the mark in the word's glyph sequence.
    pub index: usize,
    pub mark: GlyphId,
    pub variant: SizeVariant,
    /// Relative to the owner's pen position.
    pub offset: Point,
    /// Base glyph index.
    pub owner: usize,
    pub component: Option<usize>,
    pub side: Placement,
    /// Shadda and marks stacked on it never move sideways.
    pub pinned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapMeasure {
    pub owner: usize,
    pub side: Placement,
    pub width: i32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkLayout {
    pub marks: Vec<PlacedMark>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiacriticError {
    #[error(transparent)]
    Lookup(#[from] LookupError),
    #[error("{mark} has no {variant} variant")]
    MissingVariant { mark: GlyphId, variant: SizeVariant },
}

impl DiacriticError {
    pub fn code(&self) -> &'static str {
        match self {
            DiacriticError::Lookup(LookupError::MissingAnchor { .. }) => "MissingAnchor",
            DiacriticError::Lookup(LookupError::BadComponent { .. }) => "BadComponent",
            DiacriticError::Lookup(LookupError::UnknownGlyph(_)) => "RefError",
            DiacriticError::MissingVariant { .. } => "MissingVariant",
        }
    }
}

pub fn select_size_variant(gap: i32, thresholds: SizeThresholds) -> SizeVariant {
    if gap < thresholds.medium {
        SizeVariant::Normal
    } else if gap < thresholds.large {
        SizeVariant::Medium
    } else {
        SizeVariant::Large
    }
}

/// Free span over (or under) the base glyph at `index`, elongation
/// included, less what the marks of neighbouring slots project onto it.
/// Neighbours are taken at their default size and position.
pub fn measure_gap(
    word: &ShapedWord,
    font: &FontDescription,
    index: usize,
    side: Placement,
) -> Result<GapMeasure, DiacriticError> {
    let d = Defaults::new(word, font)?;
    let mine: Vec<usize> = (0..d.slots.len()).filter(|&s| d.slots[s].base == index).collect();
    let width = match (mine.first(), mine.last()) {
        (Some(&first), Some(&last)) => d.gap(first, last, side),
        _ => 0,
    };
    Ok(GapMeasure { owner: index, side, width })
}

/// Default placement of every attached mark, before any phase runs.
struct Defaults<'a> {
    font: &'a FontDescription,
    word: ShapedWord,
    slots: Vec<Slot>,
    pens: Vec<i32>,
    /// Slot of each entry in `marks`.
    slot_of: Vec<usize>,
    marks: Vec<PlacedMark>,
}

impl<'a> Defaults<'a> {
    fn new(word: &ShapedWord, font: &'a FontDescription) -> Result<Defaults<'a>, DiacriticError> {
        let word = normalized(word, font)?;
        let slots = word.slots(font);
        let pens = word.pen_positions();
        let slot_index = slot_index(&slots);
        let mut slot_of = Vec::new();
        let mut marks = Vec::new();
        for m in word.mark_indices() {
            let Some(owner) = word.owner_of(m) else {
                continue;
            };
            let Some(&s) = slot_index.get(&owner) else {
                continue;
            };
            let g = &word.glyphs[m];
            let Some(mark) = font.mark(&g.glyph) else {
                continue;
            };
            let side = mark.attachment_class;
            let dy = font.mark_position_adjustment(slots[s].mass, side);
            let stacked = g.attached_to.is_some_and(|a| word.glyphs[a.index].is_mark);
            let pinned = stacked || font.mark_code_point(&g.glyph) == Some(text::SHADDA);
            slot_of.push(s);
            marks.push(PlacedMark {
                index: m,
                mark: g.glyph.clone(),
                variant: SizeVariant::Normal,
                offset: g.offset() + Point::new(0, dy),
                owner: owner.0,
                component: owner.1,
                side,
                pinned,
            });
        }
        Ok(Defaults { font, word, slots, pens, slot_of, marks })
    }

    fn slot_span(&self, s: usize) -> Span {
        self.slots[s].span.shift(self.pens[self.slots[s].base])
    }

    /// Free span over slots `first..=last` on `side`.
    fn gap(&self, first: usize, last: usize, side: Placement) -> i32 {
        let span = Span::new(self.slot_span(first).start, self.slot_span(last).end);
        let mut covered: Vec<Span> = self
            .marks
            .iter()
            .zip(&self.slot_of)
            .filter(|(m, &s)| m.side == side && (s + 1 == first || s == last + 1))
            .filter_map(|(m, _)| mark_span(self.font, &self.pens, m).intersect(&span))
            .collect();
        (span.len() - union_length(&mut covered)).max(0)
    }
}

fn slot_index(slots: &[Slot]) -> BTreeMap<(usize, Option<usize>), usize> {
    slots.iter().enumerate().map(|(i, s)| ((s.base, s.component), i)).collect()
}

/// Ink x-span of a placed mark in word coordinates.
fn mark_span(font: &FontDescription, pens: &[i32], mark: &PlacedMark) -> Span {
    let ink = font.mark(&mark.mark).map(|m| m.ink.span()).unwrap_or(Span::new(0, 0));
    ink.shift(pens[mark.owner] + mark.offset.x)
}

fn is_elongatable_mark(font: &FontDescription, id: &GlyphId) -> bool {
    font.mark_code_point(id).is_some_and(text::is_elongatable)
}

/// The word with every mark back at normal size and default position.
fn normalized(word: &ShapedWord, font: &FontDescription) -> Result<ShapedWord, LookupError> {
    let mut out = word.clone();
    for i in out.mark_indices().collect::<Vec<_>>() {
        let base = font.base_mark(&out.glyphs[i].glyph).0.clone();
        out.glyphs[i].glyph = base.clone();
        out.infos[i].glyph = base;
    }
    out.reposition(font)?;
    Ok(out)
}

pub fn place_diacritics(word: &ShapedWord, font: &FontDescription) -> Result<MarkLayout, DiacriticError> {
    let d = Defaults::new(word, font)?;
    let mut marks = d.marks.clone();
    let mut diagnostics = Vec::new();
    let n = d.slots.len();
    let by_index: BTreeMap<usize, usize> = marks.iter().enumerate().map(|(k, m)| (m.index, k)).collect();

    for s in 0..n {
        let slot = d.slots[s];
        let mid = slot.span.midpoint();
        let mut mine: Vec<usize> = (0..marks.len()).filter(|&k| d.slot_of[k] == s).collect();
        mine.sort_by_key(|&k| {
            let id = &marks[k].mark;
            let rank = if font.mark_code_point(id) == Some(text::SHADDA) {
                0
            } else if is_elongatable_mark(font, id) {
                1
            } else {
                2
            };
            (rank, marks[k].index)
        });

        for k in mine {
            let normal_id = marks[k].mark.clone();
            let normal = font.mark(&normal_id).expect("default marks exist");
            let variant = if !is_elongatable_mark(font, &normal_id) {
                SizeVariant::Normal
            } else if s + 1 == n {
                font.final_variant(slot.mass)
            } else {
                select_size_variant(d.gap(s, s, marks[k].side), font.size_thresholds)
            };
            let id = font
                .variant_glyph(&normal_id, variant)
                .ok_or_else(|| DiacriticError::MissingVariant { mark: normal_id.clone(), variant })?
                .clone();
            let glyph = font.mark(&id).expect("variants are validated");

            let lower = d.word.glyphs[marks[k].index]
                .attached_to
                .filter(|a| d.word.glyphs[a.index].is_mark)
                .and_then(|a| by_index.get(&a.index).copied());
            let offset = match lower {
                Some(l) => {
                    let lower_mark = font.mark(&marks[l].mark).expect("placed marks exist");
                    let above = lower_mark.mark_anchor_above.unwrap_or(glyph.anchor);
                    marks[l].offset + above - glyph.anchor
                }
                None => Point::new(mid - glyph.anchor.x, marks[k].offset.y + normal.anchor.y - glyph.anchor.y),
            };
            marks[k].mark = id;
            marks[k].variant = variant;
            marks[k].offset = offset;
        }

        // placeholder for aesthetic marks: report room an elongation opened
        let elongated = d.word.glyphs[slot.base].elongation > 0;
        let bare = !marks.iter().zip(&d.slot_of).any(|(m, &o)| o == s && m.side == Placement::Above);
        if elongated && bare && d.gap(s, s, Placement::Above) >= font.size_thresholds.large {
            diagnostics.push(Diagnostic::info(
                "SpaceAvailable",
                format!("{} leaves room above for an aesthetic mark", d.word.glyphs[slot.base].glyph),
                Location::glyph(slot.base),
            ));
        }
    }

    let mut layout = resolve_collisions(&marks, &d.word, font);
    diagnostics.append(&mut layout.diagnostics);
    layout.diagnostics = diagnostics;
    Ok(layout)
}

/// Pushes each mark clear of earlier same-side marks of other slots by at
/// least `gap_epsilon`. Pinned marks, and marks whose push would exceed
/// their slot's span, stay put and are reported.
pub fn resolve_collisions(marks: &[PlacedMark], word: &ShapedWord, font: &FontDescription) -> MarkLayout {
    let slots = word.slots(font);
    let index = slot_index(&slots);
    let pens = word.pen_positions();
    let slot_of: Vec<usize> =
        marks.iter().map(|m| index.get(&(m.owner, m.component)).copied().unwrap_or(usize::MAX)).collect();
    let mut order: Vec<usize> = (0..marks.len()).collect();
    order.sort_by_key(|&k| (slot_of[k], marks[k].index));

    let eps = font.gap_epsilon;
    let mut out = marks.to_vec();
    let mut diagnostics = Vec::new();
    for (pos, &k) in order.iter().enumerate() {
        let room = slots.get(slot_of[k]).map_or(0, |s| s.span.len());
        let mut moved = 0;
        for _ in 0..=order.len() {
            let span = mark_span(font, &pens, &out[k]);
            let need = order[..pos]
                .iter()
                .filter(|&&j| out[j].side == out[k].side && slot_of[j] != slot_of[k])
                .map(|&j| mark_span(font, &pens, &out[j]))
                .filter(|other| other.overlap(&span) > 0)
                .map(|other| other.end + eps - span.start)
                .max();
            let Some(need) = need else { break };
            if out[k].pinned || moved + need > room {
                diagnostics.push(Diagnostic::warn(
                    "Unresolvable",
                    format!("{} overlaps a neighbouring mark and cannot move far enough", out[k].mark),
                    Location::glyph(out[k].index),
                ));
                break;
            }
            out[k].offset.x += need;
            moved += need;
        }
    }
    MarkLayout { marks: out, diagnostics }
}

/// Writes placed marks (ids and offsets) back into the word.
pub fn apply_placement(word: &ShapedWord, layout: &MarkLayout) -> ShapedWord {
    let mut out = word.clone();
    for m in &layout.marks {
        let g = &mut out.glyphs[m.index];
        g.glyph = m.mark.clone();
        g.x_offset = m.offset.x;
        g.y_offset = m.offset.y;
        out.infos[m.index].glyph = m.mark.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::lookup::FeatureSet;
    use crate::shaper::shape_word;
    use crate::text::{Cluster, TextModel, FATHA};

    const BEH: char = '\u{0628}';
    const ALEF: char = '\u{0627}';
    const DAMMA: char = '\u{064F}';

    fn shape(clusters: &[Cluster]) -> ShapedWord {
        shape_word(clusters, demo::font(), TextModel::builtin(), &FeatureSet::none()).unwrap()
    }

    fn thresholds() -> SizeThresholds {
        demo::font().size_thresholds
    }

    #[test]
    fn variant_thresholds_are_inclusive() {
        assert_eq!(select_size_variant(0, thresholds()), SizeVariant::Normal);
        assert_eq!(select_size_variant(199, thresholds()), SizeVariant::Normal);
        assert_eq!(select_size_variant(200, thresholds()), SizeVariant::Medium);
        assert_eq!(select_size_variant(449, thresholds()), SizeVariant::Medium);
        assert_eq!(select_size_variant(450, thresholds()), SizeVariant::Large);
        assert_eq!(select_size_variant(10_000, thresholds()), SizeVariant::Large);
    }

    #[test]
    fn gap_is_ink_plus_elongation() {
        let font = demo::font();
        let mut word = shape(&[Cluster::new(BEH), Cluster::new(ALEF)]);
        let ink = font.glyph(&word.glyphs[0].glyph).unwrap().ink.width();
        assert_eq!(measure_gap(&word, font, 0, Placement::Above).unwrap().width, ink);
        word.glyphs[0].elongation = 250;
        word.reposition(font).unwrap();
        assert_eq!(measure_gap(&word, font, 0, Placement::Above).unwrap().width, ink + 250);
    }

    #[test]
    fn covering_neighbour_marks_close_the_gap() {
        // a Damma wider than any base
        let mut value: serde_json::Value = serde_json::from_str(demo::FONT_SOURCE).unwrap();
        value["marks"]["damma"]["ink"] = serde_json::json!([-2000, 0, 2000, 120]);
        let wide = FontDescription::from_json(&value.to_string()).unwrap();
        let word = shape_word(
            &[Cluster::with_marks(BEH, &[DAMMA]), Cluster::new(BEH), Cluster::with_marks(BEH, &[DAMMA])],
            &wide,
            TextModel::builtin(),
            &FeatureSet::none(),
        )
        .unwrap();
        let middle = word.base_indices().nth(1).unwrap();
        assert_eq!(measure_gap(&word, &wide, middle, Placement::Above).unwrap().width, 0);
        assert!(measure_gap(&word, &wide, middle, Placement::Below).unwrap().width > 0);
    }

    #[test]
    fn single_mark_reduces_to_attachment_arithmetic() {
        let mut value: serde_json::Value = serde_json::from_str(demo::FONT_SOURCE).unwrap();
        value["glyphs"]["beh.isol"]["anchors"]["above"] = serde_json::json!([120, 400]);
        value["glyphs"]["beh.isol"]["ink"] = serde_json::json!([10, -100, 230, 220]);
        value["marks"]["damma"]["anchor"] = serde_json::json!([30, 0]);
        let font = FontDescription::from_json(&value.to_string()).unwrap();
        let word = shape_word(&[Cluster::with_marks(BEH, &[DAMMA])], &font, TextModel::builtin(), &FeatureSet::none())
            .unwrap();
        let mass = font.glyph(&"beh.isol".into()).unwrap().mass;
        let dy = font.mark_position_adjustment(mass, Placement::Above);
        let layout = place_diacritics(&word, &font).unwrap();
        assert_eq!(layout.marks.len(), 1);
        assert_eq!(layout.marks[0].variant, SizeVariant::Normal);
        assert_eq!(layout.marks[0].offset, Point::new(90, 400 + dy));
    }

    #[test]
    fn elongation_grows_the_previous_fatha() {
        let font = demo::font();
        let mut word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::new(ALEF)]);
        let layout = place_diacritics(&word, font).unwrap();
        assert_eq!(layout.marks[0].variant, SizeVariant::Normal);

        word.glyphs[0].elongation = 250;
        word.reposition(font).unwrap();
        let layout = place_diacritics(&word, font).unwrap();
        let m = &layout.marks[0];
        assert_eq!(m.variant, SizeVariant::Medium);
        assert_eq!(m.mark.as_str(), "fatha.medium");
        let metrics = font.glyph(&"beh.init".into()).unwrap();
        let span = Span::new(metrics.ink.x_min, metrics.ink.x_max + 250);
        let anchor = font.mark(&m.mark).unwrap().anchor;
        assert_eq!(m.offset.x + anchor.x, span.midpoint());
        let default_y = metrics.anchors[&Placement::Above].y - font.mark(&"fatha".into()).unwrap().anchor.y
            + font.mark_position_adjustment(metrics.mass, Placement::Above);
        assert_eq!(m.offset.y, default_y);
    }

    #[test]
    fn last_fatha_follows_the_mass_table() {
        let font = demo::font();
        let word = shape(&[Cluster::new(BEH), Cluster::with_marks(ALEF, &[FATHA])]);
        let layout = place_diacritics(&word, font).unwrap();
        let mass = font.glyph(&"alef.fina".into()).unwrap().mass;
        assert_eq!(layout.marks[0].variant, font.final_variant(mass));
    }

    #[test]
    fn placement_is_idempotent() {
        let font = demo::font();
        let mut word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::with_marks(BEH, &[DAMMA])]);
        word.glyphs[0].elongation = 300;
        word.reposition(font).unwrap();
        let first = place_diacritics(&word, font).unwrap();
        let again = place_diacritics(&apply_placement(&word, &first), font).unwrap();
        assert_eq!(first, again);
    }

    fn mark_at(x: i32, owner: usize, index: usize) -> PlacedMark {
        PlacedMark {
            index,
            mark: "fatha".into(),
            variant: SizeVariant::Normal,
            offset: Point::new(x, 300),
            owner,
            component: None,
            side: Placement::Above,
            pinned: false,
        }
    }

    #[test]
    fn disjoint_marks_are_left_alone() {
        let font = demo::font();
        let word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::with_marks(BEH, &[FATHA])]);
        let marks = vec![mark_at(0, 0, 1), mark_at(0, 2, 3)];
        let out = resolve_collisions(&marks, &word, font);
        assert_eq!(out.marks, marks);
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn overlap_is_pushed_past_epsilon() {
        let font = demo::font();
        let word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::with_marks(BEH, &[FATHA])]);
        let pen = word.pen_positions()[2];
        let width = font.mark(&"fatha".into()).unwrap().ink.width();
        // the second mark starts 20 units before the first one ends
        let marks = vec![mark_at(0, 0, 1), mark_at(width - 20 - pen, 2, 3)];
        let out = resolve_collisions(&marks, &word, font);
        assert_eq!(out.marks[1].offset.x - marks[1].offset.x, 20 + font.gap_epsilon);
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn pinned_overlap_is_unresolvable() {
        let font = demo::font();
        let word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::with_marks(BEH, &[FATHA])]);
        let pen = word.pen_positions()[2];
        let mut second = mark_at(-pen, 2, 3);
        second.pinned = true;
        let marks = vec![mark_at(0, 0, 1), second];
        let out = resolve_collisions(&marks, &word, font);
        assert_eq!(out.marks, marks);
        assert_eq!(out.diagnostics[0].code, "Unresolvable");
    }

    #[test]
    fn only_elongatable_marks_change_size() {
        let font = demo::font();
        let mut word = shape(&[
            Cluster::with_marks(BEH, &[DAMMA]),
            Cluster::with_marks('\u{0633}', &[text::SHADDA, FATHA]),
            Cluster::with_marks(BEH, &['\u{0650}']),
        ]);
        word.glyphs[0].elongation = 300;
        let seen = word.base_indices().nth(1).unwrap();
        word.glyphs[seen].elongation = 400;
        word.reposition(font).unwrap();
        let layout = place_diacritics(&word, font).unwrap();
        for m in &layout.marks {
            let elongatable = is_elongatable_mark(font, &m.mark);
            assert!(elongatable || m.variant == SizeVariant::Normal, "{m:?}");
        }
        let fatha = layout.marks.iter().find(|m| is_elongatable_mark(font, &m.mark)).unwrap();
        assert_eq!(fatha.variant, SizeVariant::Large);
    }
}
