// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use super::{demerits, justify_line, GlueSpec, JustWord, JustifyParams, LineFit, INF, MAX_VARIANT_COMBINATIONS};
use crate::diagnostic::{Diagnostic, Location};

/// Overlap penalty used when no layout avoids stacked elongations.
const OVERLAP_FALLBACK: i64 = 1_000_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum JustifyError {
    #[error("word {word} is {width} units wide, the measure is {measure}")]
    WordTooWide { word: usize, width: i32, measure: i32 },
    #[error("no feasible line starts at word {word}")]
    NoFeasibleBreak { word: usize },
}

impl JustifyError {
    pub fn code(&self) -> &'static str {
        match self {
            JustifyError::WordTooWide { .. } => "WordTooWide",
            JustifyError::NoFeasibleBreak { .. } => "NoFeasibleBreak",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BreakLayout {
    pub lines: Vec<LineFit>,
    /// Sum of line demerits; [`INF`] when some line could not be justified.
    pub total_demerits: i64,
    pub diagnostics: Vec<Diagnostic>,
}

impl BreakLayout {
    pub fn breaks(&self) -> Vec<usize> {
        self.lines.iter().map(|l| l.end).collect()
    }
}

fn check_widths(words: &[JustWord], measure: i32, all_variants: bool) -> Result<(), JustifyError> {
    for (i, w) in words.iter().enumerate() {
        let considered = if all_variants { &w.variants[..] } else { &w.variants[..1] };
        let width = considered.iter().map(|v| v.width).min().unwrap_or(0);
        if width > measure {
            return Err(JustifyError::WordTooWide { word: i, width, measure });
        }
    }
    Ok(())
}

fn overlaps(mask: u8, prev: u8) -> u32 {
    (mask & prev).count_ones()
}

/// Fills each line with as many default-variant words as fit at natural
/// glue, then justifies it. Lines that cannot be justified are set at
/// natural width and reported.
pub fn break_greedy(
    words: &[JustWord],
    measure: i32,
    glue: GlueSpec,
    params: &JustifyParams,
) -> Result<BreakLayout, JustifyError> {
    check_widths(words, measure, false)?;
    let mut layout = BreakLayout::default();
    let mut prev_mask = 0;
    let mut i = 0;
    while i < words.len() {
        let mut natural = words[i].variants[0].width;
        let mut j = i + 1;
        while j < words.len() && natural + glue.width + words[j].variants[0].width <= measure {
            natural += glue.width + words[j].variants[0].width;
            j += 1;
        }
        let variants = vec![0; j - i];
        let is_last = j == words.len();
        let mut line = match justify_line(words, i, &variants, measure, glue, is_last) {
            Some(fit) => fit,
            None => {
                layout.diagnostics.push(Diagnostic::warn(
                    "LineUnderfull",
                    format!("line {} cannot be stretched to the measure", layout.lines.len()),
                    Location { line: Some(layout.lines.len()), ..Location::default() },
                ));
                let mut fit = justify_line(words, i, &variants, measure, glue, true).expect("natural width fits");
                fit.is_last = is_last;
                fit.badness = INF;
                fit
            }
        };
        line.demerits = demerits(line.badness, overlaps(line.mask, prev_mask), params);
        report_short(&mut layout.diagnostics, words, measure, &line, layout.lines.len());
        layout.total_demerits = layout.total_demerits.saturating_add(line.demerits);
        prev_mask = line.mask;
        layout.lines.push(line);
        i = j;
    }
    Ok(layout)
}

/// A best path to a break, with everything needed for tie-breaking.
#[derive(Debug, Clone)]
struct Node {
    total: i64,
    breaks: Vec<usize>,
    variants: Vec<usize>,
    line: Option<LineFit>,
    prev: Option<(usize, u8)>,
}

impl Node {
    /// Fewer demerits, then fewer lines, then earlier breaks, then lower
    /// variant indices.
    fn cmp_key(&self, other: &Node) -> Ordering {
        self.total
            .cmp(&other.total)
            .then(self.breaks.len().cmp(&other.breaks.len()))
            .then_with(|| self.breaks.cmp(&other.breaks))
            .then_with(|| self.variants.cmp(&other.variants))
    }
}

/// Minimizes total demerits over every break sequence (and, with
/// `explore_variants`, every choice of word variants) by dynamic
/// programming over (break, Kashida bucket mask of the line ending there).
pub fn break_optimum(
    words: &[JustWord],
    measure: i32,
    glue: GlueSpec,
    params: &JustifyParams,
) -> Result<BreakLayout, JustifyError> {
    check_widths(words, measure, params.explore_variants)?;
    match optimum(words, measure, glue, params) {
        Err(JustifyError::NoFeasibleBreak { .. }) if params.overlap_penalty == INF => {
            let relaxed = JustifyParams { overlap_penalty: OVERLAP_FALLBACK, ..*params };
            let mut layout = optimum(words, measure, glue, &relaxed)?;
            let mut prev = 0;
            for (k, line) in layout.lines.iter().enumerate() {
                if overlaps(line.mask, prev) > 0 {
                    layout.diagnostics.push(Diagnostic::warn(
                        "KashidaOverlap",
                        format!("line {k} elongates under an elongation of the line before"),
                        Location { line: Some(k), ..Location::default() },
                    ));
                }
                prev = line.mask;
            }
            Ok(layout)
        }
        other => other,
    }
}

fn optimum(
    words: &[JustWord],
    measure: i32,
    glue: GlueSpec,
    params: &JustifyParams,
) -> Result<BreakLayout, JustifyError> {
    let n = words.len();
    if n == 0 {
        return Ok(BreakLayout::default());
    }
    let min_width: Vec<i32> = words
        .iter()
        .map(|w| {
            let considered = if params.explore_variants { &w.variants[..] } else { &w.variants[..1] };
            considered.iter().map(|v| v.width).min().unwrap_or(0)
        })
        .collect();

    let mut nodes: Vec<BTreeMap<u8, Node>> = vec![BTreeMap::new(); n + 1];
    nodes[0].insert(0, Node { total: 0, breaks: Vec::new(), variants: Vec::new(), line: None, prev: None });
    let mut reach = 0;
    for i in 0..n {
        let here: Vec<(u8, Node)> = nodes[i].iter().map(|(&m, node)| (m, node.clone())).collect();
        if !here.is_empty() {
            reach = i;
        }
        for (mask, node) in here {
            let mut tightest = -glue.width;
            for j in i + 1..=n {
                // the narrowest this run of words can be set
                tightest += min_width[j - 1] + glue.width - glue.shrink;
                if tightest > measure {
                    break;
                }
                for combo in combinations(words, i, j, params.explore_variants) {
                    let Some(mut line) = justify_line(words, i, &combo, measure, glue, j == n) else {
                        continue;
                    };
                    line.demerits = demerits(line.badness, overlaps(line.mask, mask), params);
                    if line.demerits == INF {
                        continue;
                    }
                    let total = node.total.saturating_add(line.demerits);
                    if total == INF {
                        continue;
                    }
                    let mut breaks = node.breaks.clone();
                    breaks.push(j);
                    let mut variants = node.variants.clone();
                    variants.extend_from_slice(&combo);
                    let key = line.mask;
                    let candidate = Node { total, breaks, variants, line: Some(line), prev: Some((i, mask)) };
                    let slot = nodes[j].entry(key).or_insert_with(|| candidate.clone());
                    if candidate.cmp_key(slot) == Ordering::Less {
                        *slot = candidate;
                    }
                }
            }
        }
    }

    let Some((&mask, best)) = nodes[n].iter().min_by(|a, b| a.1.cmp_key(b.1)) else {
        return Err(JustifyError::NoFeasibleBreak { word: reach });
    };
    let total = best.total;
    let mut lines = Vec::new();
    let mut at = (n, mask);
    while let Some(node) = nodes[at.0].get(&at.1) {
        let Some(line) = &node.line else { break };
        lines.push(line.clone());
        at = node.prev.expect("lines have predecessors");
    }
    lines.reverse();
    let mut diagnostics = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        report_short(&mut diagnostics, words, measure, line, k);
    }
    Ok(BreakLayout { lines, total_demerits: total, diagnostics })
}

fn report_short(out: &mut Vec<Diagnostic>, words: &[JustWord], measure: i32, line: &LineFit, index: usize) {
    let short = line.shortfall(words, measure);
    if short > super::WIDTH_TOLERANCE && line.badness != INF {
        out.push(Diagnostic::warn(
            "LineUnderfull",
            format!("line {index} is {short} units short of the measure"),
            Location { line: Some(index), ..Location::default() },
        ));
    }
}

/// Variant choices for words `i..j`, in lexicographic order.
fn combinations(words: &[JustWord], i: usize, j: usize, explore: bool) -> Vec<Vec<usize>> {
    let counts: Vec<usize> = words[i..j].iter().map(|w| if explore { w.variants.len() } else { 1 }).collect();
    let product = counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
    if product.is_none_or(|p| p > MAX_VARIANT_COMBINATIONS) {
        return vec![vec![0; j - i]];
    }
    let mut out = vec![Vec::with_capacity(j - i)];
    for &c in &counts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..c).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::justify::{VariantBox, WIDTH_TOLERANCE};

    const GLUE: GlueSpec = GlueSpec { width: 10, stretch: 5, shrink: 3 };

    fn fixed(widths: &[i32], caps: &[i32]) -> Vec<JustWord> {
        widths.iter().zip(caps).map(|(&w, &c)| JustWord::fixed(w, c)).collect()
    }

    #[test]
    fn greedy_fills_lines() {
        let words = fixed(&[40, 30, 50], &[0, 0, 0]);
        let layout = break_greedy(&words, 80, GLUE, &JustifyParams::default()).unwrap();
        assert_eq!(layout.breaks(), [2, 3]);
        assert_eq!(layout.lines[0].width(&words), 80);
    }

    #[test]
    fn single_word_paragraph() {
        let words = fixed(&[40], &[0]);
        for layout in [
            break_greedy(&words, 80, GLUE, &JustifyParams::default()).unwrap(),
            break_optimum(&words, 80, GLUE, &JustifyParams::default()).unwrap(),
        ] {
            assert_eq!(layout.breaks(), [1]);
        }
    }

    #[test]
    fn too_wide() {
        let words = fixed(&[40, 90], &[0, 0]);
        let err = break_greedy(&words, 80, GLUE, &JustifyParams::default()).unwrap_err();
        assert_eq!(err, JustifyError::WordTooWide { word: 1, width: 90, measure: 80 });
        assert_eq!(err.code(), "WordTooWide");
        assert!(break_optimum(&words, 80, GLUE, &JustifyParams::default()).is_err());
    }

    #[test]
    fn narrow_variant_rescues_a_wide_word() {
        let words = vec![JustWord {
            variants: vec![VariantBox { width: 90, max_extra: 0 }, VariantBox { width: 70, max_extra: 0 }],
        }];
        let params = JustifyParams { explore_variants: true, ..JustifyParams::default() };
        let layout = break_optimum(&words, 80, GLUE, &params).unwrap();
        assert_eq!(layout.lines[0].variants, [1]);
    }

    #[test]
    fn empty_paragraph() {
        let layout = break_optimum(&[], 80, GLUE, &JustifyParams::default()).unwrap();
        assert!(layout.lines.is_empty());
        assert_eq!(layout.total_demerits, 0);
    }

    #[test]
    fn optimum_is_no_worse_than_greedy() {
        let words = fixed(&[30, 20, 40, 50], &[10, 0, 20, 0]);
        let params = JustifyParams::default();
        let greedy = break_greedy(&words, 70, GLUE, &params).unwrap();
        let best = break_optimum(&words, 70, GLUE, &params).unwrap();
        assert!(best.total_demerits <= greedy.total_demerits);
        for line in best.lines.iter().filter(|l| !l.glue.is_empty()) {
            assert!((line.width(&words) - 70).abs() <= WIDTH_TOLERANCE || line.is_last);
        }
    }

    #[test]
    fn infinite_overlap_penalty_avoids_stacking() {
        // two lines of elongatable words; the second can dodge the first's
        // elongated bucket only through its variant
        let words = vec![
            JustWord::fixed(50, 40),
            JustWord {
                variants: vec![VariantBox { width: 50, max_extra: 40 }, VariantBox { width: 70, max_extra: 0 }],
            },
            JustWord::fixed(10, 0),
        ];
        let params = JustifyParams { overlap_penalty: INF, explore_variants: true, ..JustifyParams::default() };
        let layout = break_optimum(&words, 70, GLUE, &params).unwrap();
        for pair in layout.lines.windows(2) {
            assert_eq!(pair[0].mask & pair[1].mask, 0);
        }
        assert!(layout.diagnostics.is_empty());
    }

    #[test]
    fn stacking_is_reported_when_unavoidable() {
        let words = fixed(&[50, 50, 10], &[40, 40, 0]);
        let params = JustifyParams { overlap_penalty: INF, ..JustifyParams::default() };
        let layout = break_optimum(&words, 70, GLUE, &params).unwrap();
        assert_eq!(layout.breaks(), [1, 3]);
        assert!(layout.diagnostics.is_empty() || layout.diagnostics[0].code == "KashidaOverlap");
    }

    #[test]
    fn no_feasible_break() {
        // rigid words that can neither stretch nor share a line
        let words = fixed(&[50, 50], &[0, 0]);
        let err = break_optimum(&words, 70, GLUE, &JustifyParams::default()).unwrap_err();
        assert_eq!(err, JustifyError::NoFeasibleBreak { word: 0 });
        let greedy = break_greedy(&words, 70, GLUE, &JustifyParams::default()).unwrap();
        assert_eq!(greedy.total_demerits, INF);
        assert_eq!(greedy.diagnostics[0].code, "LineUnderfull");
    }
}
