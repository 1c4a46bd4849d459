// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Line breaking and justification over abstract word boxes.
//!
//! A word is a list of variant boxes, each with a natural width and a
//! Kashida capacity. A line is stretched by elongating words first and
//! widening the glue only once every word on it is saturated; it is shrunk
//! through the glue alone. Costs follow the box-and-glue tradition:
//!
//! ```text
//! badness  = min(10000, round(100 |r|^3)),  infinite when r < -1
//! demerits = (line_penalty + badness)^2 + overlap_penalty * shared_buckets
//! ```
//!
//! where `shared_buckets` counts the eighths of the measure in which both
//! this line and the previous one carry an elongated word.

mod breaks;

pub use breaks::{break_greedy, break_optimum, BreakLayout, JustifyError};

use serde::{Deserialize, Serialize};

use crate::geom::Span;

/// Infinite badness or demerits.
pub const INF: i64 = i64::MAX;
/// Largest allowed difference between a justified line and the measure.
pub const WIDTH_TOLERANCE: i32 = 1;
/// The measure is cut into this many buckets when comparing elongations on
/// consecutive lines.
pub const KASHIDA_BUCKETS: i64 = 8;
/// Cap on per-line variant combinations explored by the optimum breaker;
/// lines with more fall back to default variants.
pub const MAX_VARIANT_COMBINATIONS: usize = 4096;

/// Elastic inter-word space.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueSpec {
    pub width: i32,
    pub stretch: i32,
    pub shrink: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantBox {
    pub width: i32,
    pub max_extra: i32,
}

/// A word as the breaker sees it; `variants[0]` is the default rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JustWord {
    pub variants: Vec<VariantBox>,
}

impl JustWord {
    pub fn fixed(width: i32, max_extra: i32) -> JustWord {
        JustWord { variants: vec![VariantBox { width, max_extra }] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JustifyParams {
    pub line_penalty: i64,
    /// [`INF`] forbids elongations stacked on consecutive lines.
    pub overlap_penalty: i64,
    pub explore_variants: bool,
}

impl Default for JustifyParams {
    fn default() -> Self {
        JustifyParams { line_penalty: 10, overlap_penalty: 3000, explore_variants: false }
    }
}

/// One justified line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    /// First word index.
    pub start: usize,
    /// One past the last word index.
    pub end: usize,
    pub variants: Vec<usize>,
    pub natural: i32,
    pub total_stretch: i32,
    pub total_shrink: i32,
    pub ratio: f64,
    pub badness: i64,
    pub demerits: i64,
    /// Elongation given to each word.
    pub kashida: Vec<i32>,
    /// Width of each inter-word gap.
    pub glue: Vec<i32>,
    /// Logical x of each word from the line start.
    pub positions: Vec<i32>,
    /// Boxes of the words that received elongation.
    pub kashida_intervals: Vec<Span>,
    pub mask: u8,
    pub is_last: bool,
}

impl LineFit {
    pub fn width(&self, words: &[JustWord]) -> i32 {
        let boxes: i32 = (self.start..self.end)
            .zip(&self.variants)
            .zip(&self.kashida)
            .map(|((w, &v), k)| words[w].variants[v].width + k)
            .sum();
        boxes + self.glue.iter().sum::<i32>()
    }

    /// How far a non-final line falls short of the measure. Only a lone
    /// word with too little Kashida can fall short.
    pub fn shortfall(&self, words: &[JustWord], measure: i32) -> i32 {
        if self.is_last {
            0
        } else {
            (measure - self.width(words)).max(0)
        }
    }
}

pub fn badness(r: f64) -> i64 {
    if !r.is_finite() || r < -1.0 {
        return INF;
    }
    (100.0 * r.abs().powi(3)).round().min(10_000.0) as i64
}

/// Demerits of a line with the given badness that shares `overlaps`
/// Kashida buckets with the previous line.
pub fn demerits(badness: i64, overlaps: u32, params: &JustifyParams) -> i64 {
    if badness == INF {
        return INF;
    }
    let base = params.line_penalty.saturating_add(badness);
    let base = base.saturating_mul(base);
    if overlaps == 0 {
        return base;
    }
    if params.overlap_penalty == INF {
        return INF;
    }
    base.saturating_add(params.overlap_penalty.saturating_mul(i64::from(overlaps)))
}

fn bucket(x: i32, measure: i32) -> u32 {
    (i64::from(x) * KASHIDA_BUCKETS / i64::from(measure.max(1))).clamp(0, KASHIDA_BUCKETS - 1) as u32
}

/// Buckets touched by a set of intervals.
pub fn bucket_mask(intervals: &[Span], measure: i32) -> u8 {
    intervals
        .iter()
        .filter(|s| !s.is_empty())
        .flat_map(|s| bucket(s.start, measure)..=bucket(s.end - 1, measure))
        .fold(0u8, |m, b| m | (1 << b))
}

/// Justifies words `start..start + variants.len()` to `measure`. Returns
/// `None` when the line cannot be set: it would shrink past the glue's
/// limit, or it needs stretch and has none. A lone word whose Kashida
/// cannot cover the deficit is set short; see [`LineFit::shortfall`].
pub fn justify_line(
    words: &[JustWord],
    start: usize,
    variants: &[usize],
    measure: i32,
    glue: GlueSpec,
    is_last: bool,
) -> Option<LineFit> {
    let n = variants.len();
    if n == 0 {
        return None;
    }
    let boxes: Vec<VariantBox> = variants.iter().enumerate().map(|(k, &v)| words[start + k].variants[v]).collect();
    let gaps = (n - 1) as i32;
    let natural = boxes.iter().map(|b| b.width).sum::<i32>() + gaps * glue.width;
    let capacity: i32 = boxes.iter().map(|b| b.max_extra).sum();
    let total_shrink = gaps * glue.shrink;
    let total_stretch = gaps * glue.stretch + capacity;

    let mut kashida = vec![0; n];
    let mut gap_widths = vec![glue.width; n - 1];
    let (ratio, bad) = if natural > measure {
        let surplus = natural - measure;
        if surplus > total_shrink {
            return None;
        }
        spread(&mut gap_widths, -surplus);
        let r = -f64::from(surplus) / f64::from(total_shrink);
        (r, badness(r))
    } else if is_last || natural == measure {
        (0.0, 0)
    } else {
        let deficit = measure - natural;
        if total_stretch == 0 {
            return None;
        }
        let elongation = deficit.min(capacity);
        fill_kashida(&boxes, elongation, &mut kashida);
        spread(&mut gap_widths, deficit - elongation);
        let r = f64::from(deficit) / f64::from(total_stretch);
        (r, badness(r))
    };

    let mut positions = Vec::with_capacity(n);
    let mut intervals = Vec::new();
    let mut x = 0;
    for k in 0..n {
        positions.push(x);
        let advance = boxes[k].width + kashida[k];
        if kashida[k] > 0 {
            intervals.push(Span::new(x, x + advance));
        }
        x += advance + gap_widths.get(k).copied().unwrap_or(0);
    }
    let mask = bucket_mask(&intervals, measure);
    Some(LineFit {
        start,
        end: start + n,
        variants: variants.to_vec(),
        natural,
        total_stretch,
        total_shrink,
        ratio,
        badness: bad,
        demerits: 0,
        kashida,
        glue: gap_widths,
        positions,
        kashida_intervals: intervals,
        mask,
        is_last,
    })
}

/// Fills words in order of capacity, later words first on ties.
fn fill_kashida(boxes: &[VariantBox], mut amount: i32, out: &mut [i32]) {
    let mut order: Vec<usize> = (0..boxes.len()).filter(|&k| boxes[k].max_extra > 0).collect();
    order.sort_by(|&a, &b| boxes[b].max_extra.cmp(&boxes[a].max_extra).then(b.cmp(&a)));
    for k in order {
        let take = amount.min(boxes[k].max_extra);
        out[k] = take;
        amount -= take;
    }
}

/// Adds `amount` to the gaps as evenly as integers allow, leading gaps
/// taking the remainder.
fn spread(gaps: &mut [i32], amount: i32) {
    if gaps.is_empty() {
        return;
    }
    let n = gaps.len() as i32;
    let (each, rest) = (amount / n, amount % n);
    for (k, g) in gaps.iter_mut().enumerate() {
        *g += each + if (k as i32) < rest.abs() { rest.signum() } else { 0 };
    }
}
