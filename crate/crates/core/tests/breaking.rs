// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

mod support;

use qalam_core::justify::{
    break_greedy, break_optimum, BreakLayout, JustWord, JustifyError, JustifyParams, INF, WIDTH_TOLERANCE,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::gen::{random_paragraph, GLUE};
use support::oracle::best_layout;

fn explore() -> JustifyParams {
    JustifyParams { explore_variants: true, ..JustifyParams::default() }
}

fn assert_matches_oracle(words: &[JustWord], measure: i32, params: &JustifyParams) {
    let (oracle, _) = best_layout(words, measure, GLUE, params);
    match (break_optimum(words, measure, GLUE, params), oracle) {
        (Ok(layout), Some(best)) => {
            assert_eq!(layout.total_demerits, best.total, "{words:?}");
            assert_eq!(layout.breaks(), best.breaks, "{words:?}");
            let variants: Vec<usize> = layout.lines.iter().flat_map(|l| l.variants.clone()).collect();
            assert_eq!(variants, best.variants, "{words:?}");
        }
        (Err(JustifyError::NoFeasibleBreak { .. }), None) => {}
        (got, want) => panic!("{words:?}: engine {got:?}, oracle {want:?}"),
    }
}

#[test]
fn worked_example_matches_exhaustive_search() {
    let words: Vec<JustWord> =
        [(30, 10), (20, 0), (40, 20), (50, 0)].iter().map(|&(w, c)| JustWord::fixed(w, c)).collect();
    assert_matches_oracle(&words, 70, &JustifyParams::default());
    let layout = break_optimum(&words, 70, GLUE, &JustifyParams::default()).unwrap();
    assert_eq!(layout.breaks(), [2, 3, 4]);
    // the lone 40 can only elongate by 20 of the 30 it lacks
    assert_eq!(layout.lines[1].kashida, [20]);
    assert!(layout.diagnostics.iter().any(|d| d.code == "LineUnderfull"));
}

#[test]
fn optimum_equals_exhaustive_search_on_random_paragraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..60 {
        let words = random_paragraph(&mut rng, 10, 400);
        assert_matches_oracle(&words, 400, &explore());
        assert_matches_oracle(&words, 400, &JustifyParams::default());
    }
}

fn check_widths(layout: &BreakLayout, words: &[JustWord], measure: i32) {
    for line in &layout.lines {
        assert!(line.width(words) <= measure + WIDTH_TOLERANCE);
        if !line.is_last && line.badness != INF && line.shortfall(words, measure) == 0 {
            assert!((line.width(words) - measure).abs() <= WIDTH_TOLERANCE);
        }
    }
}

#[test]
fn optimum_dominates_greedy_and_lines_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..300 {
        let words = random_paragraph(&mut rng, 12, 500);
        let params = JustifyParams::default();
        let greedy = break_greedy(&words, 500, GLUE, &params).unwrap();
        check_widths(&greedy, &words, 500);
        match break_optimum(&words, 500, GLUE, &params) {
            Ok(best) => {
                assert!(best.total_demerits <= greedy.total_demerits);
                check_widths(&best, &words, 500);
            }
            Err(e) => {
                assert!(matches!(e, JustifyError::NoFeasibleBreak { .. }));
                assert_eq!(greedy.total_demerits, INF);
            }
        }
    }
}

#[test]
fn every_word_is_set_whole_exactly_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..100 {
        let words = random_paragraph(&mut rng, 12, 500);
        for layout in [break_greedy(&words, 500, GLUE, &explore()), break_optimum(&words, 500, GLUE, &explore())]
            .into_iter()
            .flatten()
        {
            let mut next = 0;
            for line in &layout.lines {
                assert_eq!(line.start, next);
                assert!(line.end > line.start);
                assert_eq!(line.variants.len(), line.end - line.start);
                next = line.end;
            }
            assert_eq!(next, words.len());
        }
    }
}

#[test]
fn forbidden_stacking_is_avoided_whenever_possible() {
    let strict = JustifyParams { overlap_penalty: INF, ..explore() };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..60 {
        let words = random_paragraph(&mut rng, 10, 400);
        let (oracle, _) = best_layout(&words, 400, GLUE, &strict);
        let Ok(layout) = break_optimum(&words, 400, GLUE, &strict) else {
            assert!(oracle.is_none());
            continue;
        };
        let stacked = layout.lines.windows(2).any(|p| p[0].mask & p[1].mask != 0);
        match oracle {
            Some(best) => {
                assert!(!stacked);
                assert_eq!(layout.total_demerits, best.total);
            }
            None => assert!(!stacked || layout.diagnostics.iter().any(|d| d.code == "KashidaOverlap")),
        }
    }
}

#[test]
fn kashida_is_spent_before_glue() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..100 {
        let words = random_paragraph(&mut rng, 12, 500);
        let Ok(layout) = break_optimum(&words, 500, GLUE, &JustifyParams::default()) else {
            continue;
        };
        for line in layout.lines.iter().filter(|l| !l.is_last && l.natural < 500) {
            let stretched = line.glue.iter().any(|&g| g > GLUE.width);
            if stretched {
                for (k, &e) in line.kashida.iter().enumerate() {
                    let cap = words[line.start + k].variants[line.variants[k]].max_extra;
                    assert_eq!(e, cap);
                }
            }
        }
    }
}
