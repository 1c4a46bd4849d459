// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference implementations the engine is checked against.
//!
//! `best_layout` walks every break sequence and every variant choice with no
//! memoization. `joining_forms` applies the joining rules of the Unicode
//! ArabicShaping data table letter by letter.

#![allow(dead_code)]

use std::cmp::Ordering;

use qalam_core::justify::{demerits, justify_line, GlueSpec, JustWord, JustifyParams, LineFit, INF};
use qalam_core::text::Form;

/// The minimum over all layouts, with the engine's tie-break order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLayout {
    pub total: i64,
    pub breaks: Vec<usize>,
    pub variants: Vec<usize>,
    pub masks: Vec<u8>,
}

impl OracleLayout {
    fn cmp_key(&self, other: &OracleLayout) -> Ordering {
        self.total
            .cmp(&other.total)
            .then(self.breaks.len().cmp(&other.breaks.len()))
            .then_with(|| self.breaks.cmp(&other.breaks))
            .then_with(|| self.variants.cmp(&other.variants))
    }
}

struct Search<'a> {
    words: &'a [JustWord],
    measure: i32,
    glue: GlueSpec,
    params: &'a JustifyParams,
    best: Option<OracleLayout>,
    visited: u64,
}

fn choices(words: &[JustWord], explore: bool) -> Vec<usize> {
    words.iter().map(|w| if explore { w.variants.len() } else { 1 }).collect()
}

impl Search<'_> {
    fn run(&mut self, start: usize, prev_mask: u8, path: &mut OracleLayout) {
        let n = self.words.len();
        if start == n {
            if self.best.as_ref().is_none_or(|b| path.cmp_key(b) == Ordering::Less) {
                self.best = Some(path.clone());
            }
            return;
        }
        let counts = choices(self.words, self.params.explore_variants);
        for end in start + 1..=n {
            // every longer line is at least this wide, so none of them fits
            if natural_min(self.words, start, end, &counts, self.glue) - shrink(end - start, self.glue) > self.measure {
                break;
            }
            let mut combo = vec![0; end - start];
            loop {
                self.visited += 1;
                if let Some(line) = justify_line(self.words, start, &combo, self.measure, self.glue, end == n) {
                    self.extend(line, prev_mask, path, &combo, end);
                }
                if !next_combo(&mut combo, &counts[start..end]) {
                    break;
                }
            }
        }
    }

    fn extend(&mut self, line: LineFit, prev_mask: u8, path: &mut OracleLayout, combo: &[usize], end: usize) {
        let shared = (line.mask & prev_mask).count_ones();
        let d = demerits(line.badness, shared, self.params);
        if d == INF {
            return;
        }
        let total = path.total.saturating_add(d);
        if total == INF {
            return;
        }
        let saved = path.total;
        path.total = total;
        path.breaks.push(end);
        path.variants.extend_from_slice(combo);
        path.masks.push(line.mask);
        self.run(end, line.mask, path);
        path.masks.pop();
        path.variants.truncate(path.variants.len() - combo.len());
        path.breaks.pop();
        path.total = saved;
    }
}

fn natural_min(words: &[JustWord], start: usize, end: usize, counts: &[usize], glue: GlueSpec) -> i32 {
    (start..end).map(|i| words[i].variants[..counts[i]].iter().map(|v| v.width).min().unwrap_or(0)).sum::<i32>()
        + (end - start - 1) as i32 * glue.width
}

fn shrink(words_on_line: usize, glue: GlueSpec) -> i32 {
    (words_on_line as i32 - 1) * glue.shrink
}

fn next_combo(combo: &mut [usize], counts: &[usize]) -> bool {
    for k in (0..combo.len()).rev() {
        combo[k] += 1;
        if combo[k] < counts[k] {
            return true;
        }
        combo[k] = 0;
    }
    false
}

/// Exhaustive minimum of total demerits, or `None` when no layout is
/// feasible. Also returns the number of candidate lines examined.
pub fn best_layout(
    words: &[JustWord],
    measure: i32,
    glue: GlueSpec,
    params: &JustifyParams,
) -> (Option<OracleLayout>, u64) {
    let mut search = Search { words, measure, glue, params, best: None, visited: 0 };
    let mut path = OracleLayout { total: 0, breaks: Vec::new(), variants: Vec::new(), masks: Vec::new() };
    search.run(0, 0, &mut path);
    (search.best, search.visited)
}

/// Joining type as listed in ArabicShaping.txt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoiningType {
    /// D: joins on both sides.
    Dual,
    /// R: joins only to the preceding letter.
    Right,
    /// U: never joins.
    NonJoining,
}

/// Joining types of U+0621..U+064A, transcribed from ArabicShaping.txt.
pub fn joining_type(cp: char) -> Option<JoiningType> {
    use JoiningType::*;
    Some(match cp {
        '\u{0621}' => NonJoining,
        '\u{0622}'..='\u{0625}' => Right,
        '\u{0626}' => Dual,
        '\u{0627}' => Right,
        '\u{0628}' => Dual,
        '\u{0629}' => Right,
        '\u{062A}'..='\u{062E}' => Dual,
        '\u{062F}'..='\u{0632}' => Right,
        '\u{0633}'..='\u{063A}' => Dual,
        '\u{0641}'..='\u{0647}' => Dual,
        '\u{0648}' => Right,
        '\u{0649}'..='\u{064A}' => Dual,
        _ => return None,
    })
}

/// Forms per the cursive joining rules: a letter joins a neighbour when
/// both sides allow the link.
pub fn joining_forms(letters: &[char]) -> Vec<Form> {
    let ty: Vec<JoiningType> = letters.iter().map(|&c| joining_type(c).expect("registered letter")).collect();
    let joins_next = |t: JoiningType| t == JoiningType::Dual;
    let joins_prev = |t: JoiningType| t != JoiningType::NonJoining;
    (0..ty.len())
        .map(|i| {
            let before = i > 0 && joins_next(ty[i - 1]) && joins_prev(ty[i]);
            let after = i + 1 < ty.len() && joins_next(ty[i]) && joins_prev(ty[i + 1]);
            match (before, after) {
                (false, false) => Form::Isolated,
                (false, true) => Form::Initial,
                (true, true) => Form::Medial,
                (true, false) => Form::Final,
            }
        })
        .collect()
}
