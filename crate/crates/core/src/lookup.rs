// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Coverage-gated substitution and positioning lookups.
//!
//! Substitutions run first over a logical glyph sequence (one pass per rule,
//! in font order, no recursive re-matching). Positioning then sets advances
//! and resolves mark attachment with anchor arithmetic:
//!
//! ```text
//! mark offset = base offset + base anchor - mark anchor
//! ```
//!
//! Mark offsets are relative to the pen position of the base glyph. On an
//! elongated base the anchor rides along the extended span by half the
//! elongation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{de, Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::font::{FontDescription, GlyphId, GlyphMetrics, LigatureEntry, MarkGlyph};
use crate::geom::Point;
use crate::text::Placement;

/// Features that are always on.
pub const MANDATORY_FEATURES: &[&str] = &["rlig"];

/// Set of glyphs a rule applies to.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CoverageTable(BTreeSet<GlyphId>);

impl CoverageTable {
    pub fn new(glyphs: impl IntoIterator<Item = GlyphId>) -> CoverageTable {
        CoverageTable(glyphs.into_iter().collect())
    }

    pub fn contains(&self, id: &GlyphId) -> bool {
        self.0.contains(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GlyphId> {
        self.0.iter()
    }
}

impl<'de> Deserialize<'de> for CoverageTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list = Vec::<GlyphId>::deserialize(d)?;
        let mut set = BTreeSet::new();
        for id in list {
            if !set.insert(id.clone()) {
                return Err(de::Error::custom(format!("coverage lists {id} twice")));
            }
        }
        Ok(CoverageTable(set))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LookupFlag {
    IgnoreMarks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LigatureSubst {
    pub components: Vec<GlyphId>,
    pub glyph: GlyphId,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueAdjust {
    #[serde(default)]
    pub dx: i32,
    #[serde(default)]
    pub dy: i32,
    #[serde(default)]
    pub advance: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAdjust {
    pub first: GlyphId,
    pub second: GlyphId,
    pub advance: i32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CursiveAnchors {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exit: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LookupPayload {
    SingleSub {
        map: BTreeMap<GlyphId, GlyphId>,
    },
    MultipleSub {
        map: BTreeMap<GlyphId, Vec<GlyphId>>,
    },
    AlternateSub {
        alternates: BTreeMap<GlyphId, Vec<GlyphId>>,
    },
    LigatureSub {
        ligatures: Vec<LigatureSubst>,
    },
    /// Single-glyph substitution gated on the surrounding glyphs.
    /// `backtrack[0]` is the glyph immediately before.
    ContextualSub {
        #[serde(default)]
        backtrack: Vec<BTreeSet<GlyphId>>,
        #[serde(default)]
        lookahead: Vec<BTreeSet<GlyphId>>,
        map: BTreeMap<GlyphId, GlyphId>,
    },
    SingleAdj {
        adjust: BTreeMap<GlyphId, ValueAdjust>,
    },
    PairAdj {
        pairs: Vec<PairAdjust>,
    },
    CursiveAttach {
        anchors: BTreeMap<GlyphId, CursiveAnchors>,
    },
    MarkToBase {},
    MarkToLigature {},
    MarkToMark {},
}

impl LookupPayload {
    /// Glyphs the payload keys on; each must be covered by the rule.
    pub fn keyed_glyphs(&self) -> Vec<&GlyphId> {
        match self {
            LookupPayload::SingleSub { map } | LookupPayload::ContextualSub { map, .. } => map.keys().collect(),
            LookupPayload::MultipleSub { map } => map.keys().collect(),
            LookupPayload::AlternateSub { alternates } => alternates.keys().collect(),
            LookupPayload::LigatureSub { ligatures } => ligatures.iter().filter_map(|l| l.components.first()).collect(),
            LookupPayload::SingleAdj { adjust } => adjust.keys().collect(),
            LookupPayload::PairAdj { pairs } => pairs.iter().map(|p| &p.first).collect(),
            LookupPayload::CursiveAttach { anchors } => anchors.keys().collect(),
            LookupPayload::MarkToBase {} | LookupPayload::MarkToLigature {} | LookupPayload::MarkToMark {} => {
                Vec::new()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupRule {
    #[serde(flatten)]
    pub payload: LookupPayload,
    /// Feature tag gating the rule; rules without one always run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub flags: BTreeSet<LookupFlag>,
    pub coverage: CoverageTable,
}

impl LookupRule {
    pub fn new(payload: LookupPayload, coverage: impl IntoIterator<Item = GlyphId>) -> LookupRule {
        LookupRule { payload, feature: None, flags: BTreeSet::new(), coverage: CoverageTable::new(coverage) }
    }

    pub fn with_feature(mut self, tag: &str) -> LookupRule {
        self.feature = Some(tag.to_string());
        self
    }

    pub fn ignoring_marks(mut self) -> LookupRule {
        self.flags.insert(LookupFlag::IgnoreMarks);
        self
    }

    pub fn ignores_marks(&self) -> bool {
        self.flags.contains(&LookupFlag::IgnoreMarks)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.payload {
            LookupPayload::SingleSub { .. } => "single_sub",
            LookupPayload::MultipleSub { .. } => "multiple_sub",
            LookupPayload::AlternateSub { .. } => "alternate_sub",
            LookupPayload::LigatureSub { .. } => "ligature_sub",
            LookupPayload::ContextualSub { .. } => "contextual_sub",
            LookupPayload::SingleAdj { .. } => "single_adj",
            LookupPayload::PairAdj { .. } => "pair_adj",
            LookupPayload::CursiveAttach { .. } => "cursive_attach",
            LookupPayload::MarkToBase {} => "mark_to_base",
            LookupPayload::MarkToLigature {} => "mark_to_ligature",
            LookupPayload::MarkToMark {} => "mark_to_mark",
        }
    }

    /// Every glyph id named anywhere in the rule.
    pub fn referenced_glyphs(&self) -> Vec<&GlyphId> {
        let mut out: Vec<&GlyphId> = self.coverage.iter().collect();
        match &self.payload {
            LookupPayload::SingleSub { map } => out.extend(map.iter().flat_map(|(a, b)| [a, b])),
            LookupPayload::MultipleSub { map } => out.extend(map.iter().flat_map(|(a, b)| std::iter::once(a).chain(b))),
            LookupPayload::AlternateSub { alternates } => {
                out.extend(alternates.iter().flat_map(|(a, b)| std::iter::once(a).chain(b)))
            }
            LookupPayload::LigatureSub { ligatures } => {
                out.extend(ligatures.iter().flat_map(|l| l.components.iter().chain([&l.glyph])))
            }
            LookupPayload::ContextualSub { backtrack, lookahead, map } => {
                out.extend(backtrack.iter().chain(lookahead).flatten());
                out.extend(map.iter().flat_map(|(a, b)| [a, b]));
            }
            LookupPayload::SingleAdj { adjust } => out.extend(adjust.keys()),
            LookupPayload::PairAdj { pairs } => out.extend(pairs.iter().flat_map(|p| [&p.first, &p.second])),
            LookupPayload::CursiveAttach { anchors } => out.extend(anchors.keys()),
            LookupPayload::MarkToBase {} | LookupPayload::MarkToLigature {} | LookupPayload::MarkToMark {} => {}
        }
        out
    }

    fn is_enabled(&self, features: &FeatureSet) -> bool {
        self.feature.as_deref().is_none_or(|f| features.contains(f))
    }
}

/// Enabled feature tags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FeatureSet(BTreeSet<String>);

impl FeatureSet {
    pub fn none() -> FeatureSet {
        FeatureSet::default()
    }

    pub fn from_tags<'a>(tags: impl IntoIterator<Item = &'a str>) -> FeatureSet {
        FeatureSet(tags.into_iter().map(str::to_string).collect())
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.0.contains(tag)
    }

    pub fn with(mut self, tag: &str) -> FeatureSet {
        self.0.insert(tag.to_string());
        self
    }

    pub fn without(mut self, tag: &str) -> FeatureSet {
        self.0.remove(tag);
        self
    }

    pub fn with_mandatory(self) -> FeatureSet {
        MANDATORY_FEATURES.iter().fold(self, |set, tag| set.with(tag))
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

/// A glyph travelling through substitution with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphInfo {
    pub glyph: GlyphId,
    /// Cluster the glyph came from; for ligatures, the first component's.
    pub cluster: usize,
    /// Clusters merged into a ligature, in component order.
    pub components: Vec<usize>,
    pub is_mark: bool,
}

impl GlyphInfo {
    pub fn new(glyph: GlyphId, cluster: usize, is_mark: bool) -> GlyphInfo {
        GlyphInfo { glyph, cluster, components: Vec::new(), is_mark }
    }
}

/// Substitution over plain glyph ids.
pub fn apply_gsub(
    font: &FontDescription,
    rules: &[LookupRule],
    glyphs: &[GlyphId],
    features: &FeatureSet,
) -> Vec<GlyphId> {
    let infos: Vec<GlyphInfo> =
        glyphs.iter().enumerate().map(|(i, g)| GlyphInfo::new(g.clone(), i, font.is_mark(g))).collect();
    apply_gsub_infos(rules, infos, features).into_iter().map(|i| i.glyph).collect()
}

pub fn apply_gsub_infos(rules: &[LookupRule], mut infos: Vec<GlyphInfo>, features: &FeatureSet) -> Vec<GlyphInfo> {
    for rule in rules.iter().filter(|r| r.is_enabled(features)) {
        infos = apply_rule(rule, infos);
    }
    infos
}

/// Alternate substitution with an explicit choice of alternative for the
/// glyph at `index`. Returns `None` when the glyph has no such alternative.
pub fn choose_alternate(rule: &LookupRule, infos: &[GlyphInfo], index: usize, choice: usize) -> Option<Vec<GlyphInfo>> {
    let LookupPayload::AlternateSub { alternates } = &rule.payload else {
        return None;
    };
    let info = infos.get(index)?;
    if !rule.coverage.contains(&info.glyph) {
        return None;
    }
    let alt = alternates.get(&info.glyph)?.get(choice)?;
    let mut out = infos.to_vec();
    out[index].glyph = alt.clone();
    Some(out)
}

fn apply_rule(rule: &LookupRule, infos: Vec<GlyphInfo>) -> Vec<GlyphInfo> {
    let skip_marks = rule.ignores_marks();
    let mut out: Vec<GlyphInfo> = Vec::with_capacity(infos.len());
    let mut i = 0;
    while i < infos.len() {
        let info = &infos[i];
        if !rule.coverage.contains(&info.glyph) {
            out.push(info.clone());
            i += 1;
            continue;
        }
        match &rule.payload {
            LookupPayload::SingleSub { map } => {
                let mut next = info.clone();
                if let Some(to) = map.get(&info.glyph) {
                    next.glyph = to.clone();
                }
                out.push(next);
            }
            LookupPayload::AlternateSub { alternates } => {
                let mut next = info.clone();
                if let Some(to) = alternates.get(&info.glyph).and_then(|a| a.first()) {
                    next.glyph = to.clone();
                }
                out.push(next);
            }
            LookupPayload::MultipleSub { map } => match map.get(&info.glyph) {
                Some(seq) => out.extend(seq.iter().map(|g| GlyphInfo { glyph: g.clone(), ..info.clone() })),
                None => out.push(info.clone()),
            },
            LookupPayload::ContextualSub { backtrack, lookahead, map } => {
                let mut next = info.clone();
                if let Some(to) = map.get(&info.glyph) {
                    let before = neighbours(&infos[..i], true, skip_marks);
                    let after = neighbours(&infos[i + 1..], false, skip_marks);
                    if context_matches(backtrack, &before) && context_matches(lookahead, &after) {
                        next.glyph = to.clone();
                    }
                }
                out.push(next);
            }
            LookupPayload::LigatureSub { ligatures } => {
                if let Some((lig, matched)) = match_ligature(ligatures, &infos, i, skip_marks) {
                    let last = *matched.last().expect("ligatures have components");
                    out.push(GlyphInfo {
                        glyph: lig.glyph.clone(),
                        cluster: info.cluster,
                        components: matched.iter().map(|&j| infos[j].cluster).collect(),
                        is_mark: false,
                    });
                    // skipped marks follow the ligature and keep their cluster,
                    // which identifies the component they belong to
                    out.extend((i + 1..last).filter(|j| !matched.contains(j)).map(|j| infos[j].clone()));
                    i = last + 1;
                    continue;
                }
                out.push(info.clone());
            }
            _ => out.push(info.clone()),
        }
        i += 1;
    }
    out
}

fn neighbours(infos: &[GlyphInfo], reverse: bool, skip_marks: bool) -> Vec<&GlyphId> {
    let iter: Box<dyn Iterator<Item = &GlyphInfo>> =
        if reverse { Box::new(infos.iter().rev()) } else { Box::new(infos.iter()) };
    iter.filter(|g| !(skip_marks && g.is_mark)).map(|g| &g.glyph).collect()
}

fn context_matches(sets: &[BTreeSet<GlyphId>], glyphs: &[&GlyphId]) -> bool {
    sets.len() <= glyphs.len() && sets.iter().zip(glyphs).all(|(set, g)| set.contains(*g))
}

fn match_ligature<'r>(
    ligatures: &'r [LigatureSubst],
    infos: &[GlyphInfo],
    start: usize,
    skip_marks: bool,
) -> Option<(&'r LigatureSubst, Vec<usize>)> {
    'candidates: for lig in ligatures {
        if lig.components.first() != Some(&infos[start].glyph) {
            continue;
        }
        let mut matched = vec![start];
        let mut j = start + 1;
        for component in &lig.components[1..] {
            while j < infos.len() && skip_marks && infos[j].is_mark {
                j += 1;
            }
            if j >= infos.len() || &infos[j].glyph != component {
                continue 'candidates;
            }
            matched.push(j);
            j += 1;
        }
        return Some((lig, matched));
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    /// Glyph index of the base (or lower mark) this glyph hangs from.
    pub index: usize,
    pub class: Placement,
    /// Ligature component, for marks on ligatures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
}

/// A positioned glyph. Base offsets are adjustments to the pen position;
/// mark offsets are relative to the pen position of their base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedGlyph {
    pub glyph: GlyphId,
    pub x_offset: i32,
    pub y_offset: i32,
    pub advance: i32,
    pub elongation: i32,
    pub attached_to: Option<Attachment>,
    pub is_mark: bool,
}

impl PlacedGlyph {
    pub fn base(glyph: GlyphId, advance: i32) -> PlacedGlyph {
        PlacedGlyph { glyph, x_offset: 0, y_offset: 0, advance, elongation: 0, attached_to: None, is_mark: false }
    }

    pub fn offset(&self) -> Point {
        Point::new(self.x_offset, self.y_offset)
    }

    fn mark_at(glyph: GlyphId, offset: Point, attachment: Attachment) -> PlacedGlyph {
        PlacedGlyph {
            glyph,
            x_offset: offset.x,
            y_offset: offset.y,
            advance: 0,
            elongation: 0,
            attached_to: Some(attachment),
            is_mark: true,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LookupError {
    #[error("{glyph} has no {class} anchor")]
    MissingAnchor { glyph: GlyphId, class: Placement },
    #[error("{glyph} has no component {component}")]
    BadComponent { glyph: GlyphId, component: usize },
    #[error("unknown glyph {0}")]
    UnknownGlyph(GlyphId),
}

/// Base anchor shifted along the elongated span.
fn riding(anchor: Point, elongation: i32) -> Point {
    Point::new(anchor.x + elongation.div_euclid(2), anchor.y)
}

pub fn attach_mark_to_base(
    base_index: usize,
    base: &PlacedGlyph,
    metrics: &GlyphMetrics,
    mark_id: &GlyphId,
    mark: &MarkGlyph,
) -> Result<PlacedGlyph, LookupError> {
    let class = mark.attachment_class;
    let anchor =
        metrics.anchors.get(&class).ok_or_else(|| LookupError::MissingAnchor { glyph: base.glyph.clone(), class })?;
    let offset = base.offset() + riding(*anchor, base.elongation) - mark.anchor;
    Ok(PlacedGlyph::mark_at(mark_id.clone(), offset, Attachment { index: base_index, class, component: None }))
}

pub fn attach_mark_to_ligature(
    lig_index: usize,
    lig: &PlacedGlyph,
    entry: &LigatureEntry,
    mark_id: &GlyphId,
    mark: &MarkGlyph,
    component: usize,
) -> Result<PlacedGlyph, LookupError> {
    let class = mark.attachment_class;
    let anchors = entry
        .component_anchors
        .get(component)
        .ok_or_else(|| LookupError::BadComponent { glyph: lig.glyph.clone(), component })?;
    let anchor = anchors.get(&class).ok_or_else(|| LookupError::MissingAnchor { glyph: lig.glyph.clone(), class })?;
    let offset = lig.offset() + riding(*anchor, lig.elongation) - mark.anchor;
    Ok(PlacedGlyph::mark_at(
        mark_id.clone(),
        offset,
        Attachment { index: lig_index, class, component: Some(component) },
    ))
}

/// Stacks `upper` on an already placed mark.
pub fn attach_mark_to_mark(
    lower_index: usize,
    lower: &PlacedGlyph,
    lower_mark: &MarkGlyph,
    upper_id: &GlyphId,
    upper: &MarkGlyph,
) -> Result<PlacedGlyph, LookupError> {
    let above = lower_mark
        .mark_anchor_above
        .ok_or_else(|| LookupError::MissingAnchor { glyph: lower.glyph.clone(), class: Placement::Above })?;
    let offset = lower.offset() + above - upper.anchor;
    let component = lower.attached_to.and_then(|a| a.component);
    Ok(PlacedGlyph::mark_at(
        upper_id.clone(),
        offset,
        Attachment { index: lower_index, class: upper.attachment_class, component },
    ))
}

/// Runs the positioning lookups.
///
/// `placed` must hold one entry per info, with glyph ids and elongations
/// already set; advances, offsets and attachments are (re)computed. Marks
/// attach to the nearest preceding base; an above vowel following a Shadda
/// of the same cluster stacks on it when a `mark_to_mark` rule covers it.
pub fn apply_gpos(
    font: &FontDescription,
    rules: &[LookupRule],
    infos: &[GlyphInfo],
    placed: &mut [PlacedGlyph],
    features: &FeatureSet,
) -> Result<(), LookupError> {
    debug_assert_eq!(infos.len(), placed.len());
    for p in placed.iter_mut() {
        if let Some(metrics) = font.glyph(&p.glyph) {
            p.advance = metrics.advance;
            p.x_offset = 0;
            p.y_offset = 0;
            p.is_mark = false;
        } else if font.is_mark(&p.glyph) {
            p.advance = 0;
            p.is_mark = true;
        } else {
            return Err(LookupError::UnknownGlyph(p.glyph.clone()));
        }
        p.attached_to = None;
    }
    let enabled: Vec<&LookupRule> = rules.iter().filter(|r| r.is_enabled(features)).collect();
    let covers = |kind: fn(&LookupPayload) -> bool, glyph: &GlyphId| {
        enabled.iter().any(|r| kind(&r.payload) && r.coverage.contains(glyph))
    };

    let bases: Vec<usize> = (0..placed.len()).filter(|&i| !placed[i].is_mark).collect();
    for rule in &enabled {
        match &rule.payload {
            LookupPayload::SingleAdj { adjust } => {
                for &i in &bases {
                    if let Some(v) = adjust.get(&placed[i].glyph).filter(|_| rule.coverage.contains(&placed[i].glyph)) {
                        placed[i].x_offset += v.dx;
                        placed[i].y_offset += v.dy;
                        placed[i].advance += v.advance;
                    }
                }
            }
            LookupPayload::PairAdj { pairs } => {
                for w in bases.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    if !rule.coverage.contains(&placed[a].glyph) {
                        continue;
                    }
                    if let Some(p) = pairs.iter().find(|p| p.first == placed[a].glyph && p.second == placed[b].glyph) {
                        placed[a].advance += p.advance;
                    }
                }
            }
            LookupPayload::CursiveAttach { anchors } => {
                for w in bases.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let exit = anchors.get(&placed[a].glyph).and_then(|c| c.exit);
                    let entry = anchors.get(&placed[b].glyph).and_then(|c| c.entry);
                    if let (Some(exit), Some(entry)) = (exit, entry) {
                        if rule.coverage.contains(&placed[a].glyph) {
                            placed[b].y_offset = placed[a].y_offset + exit.y - entry.y;
                        }
                    }
                }
            }
            _ => {}
        }
    }

    let is_base = |p: &LookupPayload| matches!(p, LookupPayload::MarkToBase {});
    let is_lig = |p: &LookupPayload| matches!(p, LookupPayload::MarkToLigature {});
    let is_mkmk = |p: &LookupPayload| matches!(p, LookupPayload::MarkToMark {});

    let mut i = 0;
    while i < placed.len() {
        if !placed[i].is_mark {
            i += 1;
            continue;
        }
        let start = i;
        while i < placed.len() && placed[i].is_mark {
            i += 1;
        }
        let Some(b) = start.checked_sub(1) else {
            continue;
        };
        // Shadda first so that vowels of its cluster can stack on it
        let mut order: Vec<usize> = (start..i).collect();
        order.sort_by_key(|&m| font.mark_code_point(&placed[m].glyph) != Some(crate::text::SHADDA));
        let mut shadda_of: BTreeMap<usize, usize> = BTreeMap::new();
        for m in order {
            let mark_id = placed[m].glyph.clone();
            let mark = font.mark(&mark_id).expect("checked above");
            let cluster = infos[m].cluster;

            if let Some(&lower) = shadda_of.get(&cluster) {
                if mark.attachment_class == Placement::Above && covers(is_mkmk, &mark_id) {
                    let lower_mark = font.mark(&placed[lower].glyph).expect("lower is a mark");
                    placed[m] = attach_mark_to_mark(lower, &placed[lower], lower_mark, &mark_id, mark)?;
                    continue;
                }
            }

            let attached = if let Some(entry) = font.ligature(&placed[b].glyph) {
                if !covers(is_lig, &mark_id) {
                    continue;
                }
                let component =
                    infos[b].components.iter().position(|&c| c == cluster).unwrap_or(entry.components.len() - 1);
                attach_mark_to_ligature(b, &placed[b], entry, &mark_id, mark, component)?
            } else {
                if !covers(is_base, &mark_id) {
                    continue;
                }
                let metrics = font.glyph(&placed[b].glyph).expect("bases are glyphs");
                attach_mark_to_base(b, &placed[b], metrics, &mark_id, mark)?
            };
            placed[m] = attached;
            if font.mark_code_point(&mark_id) == Some(crate::text::SHADDA) {
                shadda_of.insert(cluster, m);
            }
        }
    }
    Ok(())
}
