// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Kashida sites and elongation plans.
//!
//! A site is a glyph with a positive stretch class and capacity. Sites are
//! ranked by the font's priority for their stretch class, then by position:
//! a Tatweel typed after the letter beats the word's last joint, which beats
//! any other joint. Remaining ties go to the glyph nearer the word end.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::font::FontDescription;
use crate::lookup::LookupError;
use crate::shaper::ShapedWord;
use crate::text::Form;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KashidaPolicy {
    /// One elongation per word.
    #[default]
    Single,
    /// Fill sites in priority order.
    Spread,
    Off,
}

impl FromStr for KashidaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(KashidaPolicy::Single),
            "spread" => Ok(KashidaPolicy::Spread),
            "off" => Ok(KashidaPolicy::Off),
            _ => Err(format!("unknown kashida policy {s:?}")),
        }
    }
}

impl fmt::Display for KashidaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KashidaPolicy::Single => "single",
            KashidaPolicy::Spread => "spread",
            KashidaPolicy::Off => "off",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchSite {
    pub glyph_index: usize,
    pub capacity: i32,
    /// Stretch-class rank, then position weight; larger is preferred.
    pub priority: (u32, u8),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElongationPlan {
    pub allocations: BTreeMap<usize, i32>,
    pub residual: i32,
}

impl ElongationPlan {
    pub fn total(&self) -> i32 {
        self.allocations.values().sum()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KashidaError {
    #[error("glyph {glyph_index} can stretch {capacity} units, {requested} requested")]
    CapacityExceeded { glyph_index: usize, requested: i32, capacity: i32 },
    #[error(transparent)]
    Lookup(#[from] LookupError),
}

const HINT_WEIGHT: u8 = 2;
const FINAL_JOINT_WEIGHT: u8 = 1;

pub fn enumerate_sites(word: &ShapedWord, font: &FontDescription) -> Vec<StretchSite> {
    let joins_forward = |i: usize| {
        let info = &word.infos[i];
        let cluster = info.components.last().copied().unwrap_or(info.cluster);
        matches!(word.forms.get(cluster), Some(Form::Initial | Form::Medial))
    };
    let final_joint = word.base_indices().filter(|&i| joins_forward(i)).last();

    let mut sites: Vec<StretchSite> = word
        .base_indices()
        .filter_map(|i| {
            let stretch = font.glyph(&word.glyphs[i].glyph)?.stretch;
            if stretch.class == 0 || stretch.max_extension <= 0 {
                return None;
            }
            let info = &word.infos[i];
            let hinted = std::iter::once(info.cluster)
                .chain(info.components.iter().copied())
                .any(|c| word.clusters.get(c).is_some_and(|c| c.stretch_hint));
            let weight = if hinted {
                HINT_WEIGHT
            } else if Some(i) == final_joint {
                FINAL_JOINT_WEIGHT
            } else {
                0
            };
            Some(StretchSite {
                glyph_index: i,
                capacity: stretch.max_extension,
                priority: (font.kashida_rank(stretch.class), weight),
            })
        })
        .collect();
    sites.sort_by(|a, b| b.priority.cmp(&a.priority).then(b.glyph_index.cmp(&a.glyph_index)));
    sites
}

/// Largest elongation the policy lets the word absorb.
pub fn capacity(word: &ShapedWord, font: &FontDescription, policy: KashidaPolicy) -> i32 {
    let sites = enumerate_sites(word, font);
    match policy {
        KashidaPolicy::Single => sites.first().map_or(0, |s| s.capacity),
        KashidaPolicy::Spread => sites.iter().map(|s| s.capacity).sum(),
        KashidaPolicy::Off => 0,
    }
}

pub fn allocate(word: &ShapedWord, font: &FontDescription, deficit: i32, policy: KashidaPolicy) -> ElongationPlan {
    let deficit = deficit.max(0);
    let sites = enumerate_sites(word, font);
    let usable = match policy {
        KashidaPolicy::Single => &sites[..sites.len().min(1)],
        KashidaPolicy::Spread => &sites[..],
        KashidaPolicy::Off => &sites[..0],
    };
    let mut left = deficit;
    let mut allocations = BTreeMap::new();
    for site in usable {
        if left == 0 {
            break;
        }
        let take = left.min(site.capacity);
        allocations.insert(site.glyph_index, take);
        left -= take;
    }
    ElongationPlan { allocations, residual: left }
}

/// Sets the planned elongations and repositions the word's marks.
pub fn apply_plan(
    word: &ShapedWord,
    font: &FontDescription,
    plan: &ElongationPlan,
) -> Result<ShapedWord, KashidaError> {
    let mut out = word.clone();
    for (&i, &amount) in &plan.allocations {
        let stretch = out
            .glyphs
            .get(i)
            .filter(|g| !g.is_mark)
            .and_then(|g| font.glyph(&g.glyph))
            .map(|m| m.stretch)
            .unwrap_or_default();
        let capacity = if stretch.class == 0 { 0 } else { stretch.max_extension };
        let total = out.glyphs.get(i).map_or(0, |g| g.elongation) + amount;
        if amount < 0 || total > capacity {
            return Err(KashidaError::CapacityExceeded { glyph_index: i, requested: total, capacity });
        }
        out.glyphs[i].elongation = total;
    }
    out.reposition(font)?;
    Ok(out)
}
