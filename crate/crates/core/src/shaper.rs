// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Word shaping: joining analysis, cmap resolution, substitution, then
//! positioning with default mark sizes.
//!
//! Glyphs are kept in logical order. The Lam-Alef ligature comes from the
//! always-on `rlig` feature. Aesthetic ligatures (`liga`) are applied only
//! when enabled; allographs (`jalt`) are never applied wholesale but, when
//! the feature is enabled, each alternative is offered as a [`WordVariant`]
//! for the justifier to choose.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::font::{FontDescription, FontError, GlyphId, LigatureKind};
use crate::geom::Span;
use crate::lookup::{self, FeatureSet, GlyphInfo, LookupError, LookupPayload, PlacedGlyph};
use crate::text::{analyze_joining, Cluster, CodePoint, Form, MassClass, TextError, TextModel};

pub const LIGATURE_FEATURE: &str = "liga";
pub const ALLOGRAPH_FEATURE: &str = "jalt";

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Font(#[from] FontError),
    #[error("no mark glyph for {0}")]
    NoMark(CodePoint),
    #[error(transparent)]
    Lookup(#[from] LookupError),
}

impl ShapeError {
    pub fn code(&self) -> &'static str {
        match self {
            ShapeError::Text(e) => e.code(),
            ShapeError::Font(e) => e.code(),
            ShapeError::NoMark(_) => "NoGlyph",
            ShapeError::Lookup(LookupError::MissingAnchor { .. }) => "MissingAnchor",
            ShapeError::Lookup(LookupError::BadComponent { .. }) => "BadComponent",
            ShapeError::Lookup(LookupError::UnknownGlyph(_)) => "RefError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantTag {
    LigatureOn,
    LigatureOff,
    Allograph(GlyphId),
}

/// How to realize a variant from the word's clusters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariantSpec {
    pub ligatures_off: bool,
    /// Glyph index and alternative index of an allograph substitution.
    pub allograph: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordVariant {
    pub id: String,
    pub width: i32,
    /// Total Kashida capacity of the variant.
    pub max_extra: i32,
    pub description: BTreeSet<VariantTag>,
    pub spec: VariantSpec,
}

/// One shaped word. `glyphs` and `infos` run in parallel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapedWord {
    pub glyphs: Vec<PlacedGlyph>,
    pub infos: Vec<GlyphInfo>,
    pub clusters: Vec<Cluster>,
    pub forms: Vec<Form>,
    pub natural_width: i32,
    pub variants: Vec<WordVariant>,
    pub spec: VariantSpec,
    features: FeatureSet,
}

/// A base glyph, or one component of a ligature, as seen by mark placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub base: usize,
    pub component: Option<usize>,
    /// Extended ink span in the base glyph's own frame.
    pub span: Span,
    pub mass: MassClass,
}

pub fn shape_word(
    clusters: &[Cluster],
    font: &FontDescription,
    model: &TextModel,
    features: &FeatureSet,
) -> Result<ShapedWord, ShapeError> {
    let mut word = shape_variant(clusters, font, model, features, &VariantSpec::default())?;
    word.variants = word_variants(&word, font, model, features)?;
    Ok(word)
}

/// Shapes `clusters` as described by `spec`, without enumerating variants.
pub fn shape_variant(
    clusters: &[Cluster],
    font: &FontDescription,
    model: &TextModel,
    features: &FeatureSet,
    spec: &VariantSpec,
) -> Result<ShapedWord, ShapeError> {
    let forms = analyze_joining(&model.joining_classes(clusters))?;
    let mut infos = Vec::new();
    for (c, (cluster, form)) in clusters.iter().zip(&forms).enumerate() {
        infos.push(GlyphInfo::new(font.glyph_for(cluster.base, *form)?.clone(), c, false));
        for &cp in &cluster.marks {
            let mark = font.mark_for(cp).ok_or(ShapeError::NoMark(CodePoint(cp)))?;
            infos.push(GlyphInfo::new(mark.clone(), c, true));
        }
    }

    let mut gsub_features = features.clone().with_mandatory().without(ALLOGRAPH_FEATURE);
    if spec.ligatures_off {
        gsub_features = gsub_features.without(LIGATURE_FEATURE);
    }
    let mut infos = lookup::apply_gsub_infos(&font.gsub, infos, &gsub_features);
    if let Some((index, choice)) = spec.allograph {
        let chosen = allograph_rules(font).find_map(|rule| lookup::choose_alternate(rule, &infos, index, choice));
        if let Some(chosen) = chosen {
            infos = chosen;
        }
    }

    let glyphs = infos.iter().map(|i| PlacedGlyph::base(i.glyph.clone(), 0)).collect();
    let mut word = ShapedWord {
        glyphs,
        infos,
        clusters: clusters.to_vec(),
        forms,
        natural_width: 0,
        variants: Vec::new(),
        spec: spec.clone(),
        features: features.clone(),
    };
    word.reposition(font)?;
    Ok(word)
}

fn allograph_rules(font: &FontDescription) -> impl Iterator<Item = &lookup::LookupRule> {
    font.gsub.iter().filter(|r| {
        r.feature.as_deref() == Some(ALLOGRAPH_FEATURE) && matches!(r.payload, LookupPayload::AlternateSub { .. })
    })
}

/// Lists the widths the justifier may pick from: the default rendering,
/// the ligature-free rendering when an aesthetic ligature applied, and every
/// registered allograph alternative when `jalt` is enabled.
pub fn word_variants(
    word: &ShapedWord,
    font: &FontDescription,
    model: &TextModel,
    features: &FeatureSet,
) -> Result<Vec<WordVariant>, ShapeError> {
    let aesthetic = word.uses_aesthetic_ligature(font);
    let mut base_tags = BTreeSet::new();
    if aesthetic {
        base_tags.insert(VariantTag::LigatureOn);
    }
    let mut out = vec![WordVariant {
        id: "default".into(),
        width: word.natural_width,
        max_extra: word.kashida_capacity(font),
        description: base_tags.clone(),
        spec: word.spec.clone(),
    }];

    if aesthetic {
        let spec = VariantSpec { ligatures_off: true, ..word.spec.clone() };
        let off = shape_variant(&word.clusters, font, model, features, &spec)?;
        out.push(WordVariant {
            id: "lig_off".into(),
            width: off.natural_width,
            max_extra: off.kashida_capacity(font),
            description: [VariantTag::LigatureOff].into(),
            spec,
        });
    }

    if features.contains(ALLOGRAPH_FEATURE) {
        for (index, info) in word.infos.iter().enumerate() {
            for rule in allograph_rules(font) {
                let LookupPayload::AlternateSub { alternates } = &rule.payload else {
                    continue;
                };
                let Some(alts) = alternates.get(&info.glyph).filter(|_| rule.coverage.contains(&info.glyph)) else {
                    continue;
                };
                for (choice, alt) in alts.iter().enumerate() {
                    let spec = VariantSpec { allograph: Some((index, choice)), ..word.spec.clone() };
                    let shaped = shape_variant(&word.clusters, font, model, features, &spec)?;
                    let mut description = base_tags.clone();
                    description.insert(VariantTag::Allograph(alt.clone()));
                    out.push(WordVariant {
                        id: format!("alt:{index}:{alt}"),
                        width: shaped.natural_width,
                        max_extra: shaped.kashida_capacity(font),
                        description,
                        spec,
                    });
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    out.retain(|v| seen.insert(v.id.clone()));
    Ok(out)
}

impl ShapedWord {
    pub fn features(&self) -> &FeatureSet {
        &self.features
    }

    /// Recomputes advances, mark attachment and the natural width from the
    /// current glyph ids and elongations.
    pub fn reposition(&mut self, font: &FontDescription) -> Result<(), LookupError> {
        let features = self.features.clone().with_mandatory();
        lookup::apply_gpos(font, &font.gpos, &self.infos, &mut self.glyphs, &features)?;
        self.natural_width = self.glyphs.iter().filter(|g| !g.is_mark).map(|g| g.advance + g.elongation).sum();
        Ok(())
    }

    pub fn base_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.glyphs.len()).filter(|&i| !self.glyphs[i].is_mark)
    }

    pub fn mark_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.glyphs.len()).filter(|&i| self.glyphs[i].is_mark)
    }

    /// Logical x of each glyph's pen position; marks share their base's.
    pub fn pen_positions(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.glyphs.len());
        let mut pen = 0;
        let mut current = 0;
        for g in &self.glyphs {
            if !g.is_mark {
                current = pen;
                pen += g.advance + g.elongation;
            }
            out.push(current);
        }
        out
    }

    /// The base glyph a mark ultimately hangs from (following stacks).
    pub fn owner_of(&self, index: usize) -> Option<(usize, Option<usize>)> {
        let mut i = index;
        for _ in 0..=self.glyphs.len() {
            let g = &self.glyphs[i];
            if !g.is_mark {
                return Some((i, None));
            }
            let a = g.attached_to?;
            if !self.glyphs[a.index].is_mark {
                return Some((a.index, a.component));
            }
            i = a.index;
        }
        None
    }

    pub fn uses_aesthetic_ligature(&self, font: &FontDescription) -> bool {
        self.glyphs.iter().any(|g| font.ligature(&g.glyph).is_some_and(|l| l.kind == LigatureKind::Aesthetic))
    }

    /// Sum of Kashida capacities of all stretchable glyphs.
    pub fn kashida_capacity(&self, font: &FontDescription) -> i32 {
        self.base_indices()
            .filter_map(|i| font.glyph(&self.glyphs[i].glyph))
            .filter(|m| m.stretch.class > 0)
            .map(|m| m.stretch.max_extension)
            .sum()
    }

    /// Bases in logical order, ligatures split into their components.
    pub fn slots(&self, font: &FontDescription) -> Vec<Slot> {
        let mut out = Vec::new();
        for i in self.base_indices() {
            let g = &self.glyphs[i];
            let Some(metrics) = font.glyph(&g.glyph) else {
                continue;
            };
            let ink = metrics.ink;
            let extended = Span::new(ink.x_min + g.x_offset, ink.x_max + g.x_offset + g.elongation);
            match font.ligature(&g.glyph) {
                Some(entry) => {
                    // components share the extended ink evenly, first component first
                    let n = entry.components.len() as i32;
                    for k in 0..n {
                        let start = extended.start + extended.len() * k / n;
                        let end = extended.start + extended.len() * (k + 1) / n;
                        out.push(Slot {
                            base: i,
                            component: Some(k as usize),
                            span: Span::new(start, end),
                            mass: metrics.mass,
                        });
                    }
                }
                None => out.push(Slot { base: i, component: None, span: extended, mass: metrics.mass }),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::geom::Point;
    use crate::text::{FATHA, SHADDA};

    const BEH: char = '\u{0628}';
    const ALEF: char = '\u{0627}';
    const LAM: char = '\u{0644}';
    const MEEM: char = '\u{0645}';
    const YEH: char = '\u{064A}';

    fn shape(clusters: &[Cluster], features: &FeatureSet) -> ShapedWord {
        shape_word(clusters, demo::font(), TextModel::builtin(), features).unwrap()
    }

    fn names(word: &ShapedWord) -> Vec<&str> {
        word.glyphs.iter().map(|g| g.glyph.as_str()).collect()
    }

    #[test]
    fn lam_alef_is_one_glyph_with_two_components() {
        let word = shape(&[Cluster::new(LAM), Cluster::new(ALEF)], &FeatureSet::none());
        assert_eq!(names(&word), ["lam_alef.isol"]);
        assert_eq!(word.infos[0].components, vec![0, 1]);
        assert_eq!(demo::font().ligature(&word.glyphs[0].glyph).unwrap().components.len(), 2);
    }

    #[test]
    fn single_glyph_with_fatha() {
        let font = demo::font();
        let word = shape(&[Cluster::with_marks(BEH, &[FATHA])], &FeatureSet::none());
        assert_eq!(names(&word), ["beh.isol", "fatha"]);
        let anchor = font.glyph(&"beh.isol".into()).unwrap().anchors[&crate::text::Placement::Above];
        let mark = font.mark(&"fatha".into()).unwrap();
        assert_eq!(word.glyphs[1].offset(), anchor - mark.anchor);
        assert_eq!(word.glyphs[1].advance, 0);
    }

    #[test]
    fn joining_forms_resolve_through_cmap() {
        let word = shape(&[Cluster::new(BEH), Cluster::new(ALEF), Cluster::new(BEH)], &FeatureSet::none());
        assert_eq!(word.forms, vec![Form::Initial, Form::Final, Form::Isolated]);
        assert_eq!(names(&word), ["beh.init", "alef.fina", "beh.isol"]);
    }

    #[test]
    fn shadda_carries_the_vowel_whatever_the_input_order() {
        let font = demo::font();
        for marks in [[SHADDA, FATHA], [FATHA, SHADDA]] {
            let word = shape(&[Cluster::with_marks(BEH, &marks)], &FeatureSet::none());
            let shadda = word.glyphs.iter().position(|g| g.glyph.as_str() == "shadda").unwrap();
            let fatha = word.glyphs.iter().position(|g| g.glyph.as_str() == "fatha").unwrap();
            assert_eq!(word.glyphs[fatha].attached_to.unwrap().index, shadda);
            let above = font.mark(&"shadda".into()).unwrap().mark_anchor_above.unwrap();
            let expected = word.glyphs[shadda].offset() + above - font.mark(&"fatha".into()).unwrap().anchor;
            assert_eq!(word.glyphs[fatha].offset(), expected);
        }
    }

    #[test]
    fn marks_on_lam_alef_keep_their_component() {
        let word =
            shape(&[Cluster::with_marks(LAM, &[FATHA]), Cluster::with_marks(ALEF, &['\u{064F}'])], &FeatureSet::none());
        assert_eq!(names(&word), ["lam_alef.isol", "fatha", "damma"]);
        assert_eq!(word.glyphs[1].attached_to.unwrap().component, Some(0));
        assert_eq!(word.glyphs[2].attached_to.unwrap().component, Some(1));
    }

    #[test]
    fn no_optional_features_gives_single_variant() {
        let clusters = [Cluster::new(LAM), Cluster::new(MEEM), Cluster::new(YEH)];
        let word = shape(&clusters, &FeatureSet::none());
        assert_eq!(word.variants.len(), 1);
        assert_eq!(word.variants[0].id, "default");
        let advances: i32 = word.glyphs.iter().map(|g| g.advance).sum();
        assert_eq!(word.variants[0].width, advances);
    }

    #[test]
    fn aesthetic_ligature_contracts_the_word() {
        let clusters = [Cluster::new(LAM), Cluster::new(MEEM), Cluster::new(YEH)];
        let word = shape(&clusters, &FeatureSet::from_tags([LIGATURE_FEATURE]));
        assert_eq!(names(&word)[0], "lam_meem.init");
        let ids: Vec<&str> = word.variants.iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["default", "lig_off"]);
        assert!(word.variants[0].description.contains(&VariantTag::LigatureOn));
        assert!(word.variants[1].width > word.variants[0].width);
    }

    #[test]
    fn allograph_variants_are_listed() {
        let clusters = [Cluster::new(BEH), Cluster::new(YEH)];
        let word = shape(&clusters, &FeatureSet::from_tags([ALLOGRAPH_FEATURE]));
        assert_eq!(names(&word), ["beh.init", "yeh.fina"]);
        let alt = word
            .variants
            .iter()
            .find(|v| v.description.contains(&VariantTag::Allograph("yeh.fina.swash".into())))
            .expect("allograph variant");
        let realized =
            shape_variant(&clusters, demo::font(), TextModel::builtin(), word.features(), &alt.spec).unwrap();
        assert_eq!(names(&realized), ["beh.init", "yeh.fina.swash"]);
        assert_eq!(realized.natural_width, alt.width);
    }

    #[test]
    fn missing_glyph_is_reported() {
        let clusters = [Cluster::new('\u{067E}')];
        let model = TextModel::builtin()
            .extend_from_json(
                r#"{"schema":"qalam-letters/1","letters":[{"name":"peh","code_point":"U+067E","joining":"dual",
                "dots":{"count":3,"position":"below"},"skeleton":"beh","stretch_class":2,"mass":"light","extension":true}]}"#,
            )
            .unwrap();
        let err = shape_word(&clusters, demo::font(), &model, &FeatureSet::none()).unwrap_err();
        assert_eq!(err.code(), "NoGlyph");
    }

    #[test]
    fn elongation_rides_marks_along() {
        let font = demo::font();
        let mut word = shape(&[Cluster::with_marks(BEH, &[FATHA]), Cluster::new(ALEF)], &FeatureSet::none());
        let before = word.glyphs[1].offset();
        let width = word.natural_width;
        word.glyphs[0].elongation = 100;
        word.reposition(font).unwrap();
        assert_eq!(word.glyphs[1].offset(), before + Point::new(50, 0));
        assert_eq!(word.natural_width, width + 100);
    }
}
