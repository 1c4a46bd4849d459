// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded generators and the demo corpus, shared by the integration tests.

#![allow(dead_code)]

use qalam_core::justify::{GlueSpec, JustWord, VariantBox};
use rand::seq::SliceRandom;
use rand::Rng;

pub const CORPUS: [(&str, &str); 5] = [
    ("fatiha", include_str!("../../../../corpus/fatiha.txt")),
    ("golden", include_str!("../../../../corpus/golden.txt")),
    ("prose", include_str!("../../../../corpus/prose.txt")),
    ("tatweel", include_str!("../../../../corpus/tatweel.txt")),
    ("vocalized", include_str!("../../../../corpus/vocalized.txt")),
];

pub fn corpus_words() -> Vec<&'static str> {
    CORPUS.iter().flat_map(|(_, text)| text.split_whitespace()).collect()
}

/// Letters of the built-in table, U+0621..U+064A without the gap.
pub fn letters() -> Vec<char> {
    ('\u{0621}'..='\u{064A}').filter(|c| !('\u{063B}'..='\u{0640}').contains(c)).collect()
}

pub const VOWELS: [char; 7] = ['\u{064B}', '\u{064C}', '\u{064D}', '\u{064E}', '\u{064F}', '\u{0650}', '\u{0652}'];
pub const SHADDA: char = '\u{0651}';

/// A random vocalized word of `1..=max_len` letters.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> String {
    let letters = letters();
    let len = rng.gen_range(1..=max_len);
    let mut out = String::new();
    for _ in 0..len {
        out.push(*letters.choose(rng).unwrap());
        if rng.gen_bool(0.2) {
            out.push(SHADDA);
        }
        if rng.gen_bool(0.6) {
            out.push(*VOWELS.choose(rng).unwrap());
        }
    }
    out
}

pub const GLUE: GlueSpec = GlueSpec { width: 10, stretch: 5, shrink: 3 };

/// A paragraph of abstract words that always fit `measure`. About a third
/// of the words get a second or third variant.
pub fn random_paragraph(rng: &mut impl Rng, max_words: usize, measure: i32) -> Vec<JustWord> {
    let n = rng.gen_range(1..=max_words);
    (0..n)
        .map(|_| {
            let count = if rng.gen_bool(0.35) { rng.gen_range(2..=3) } else { 1 };
            let variants = (0..count)
                .map(|_| VariantBox {
                    width: rng.gen_range(measure / 8..=measure / 2),
                    max_extra: if rng.gen_bool(0.5) { rng.gen_range(0..=measure / 6) } else { 0 },
                })
                .collect();
            JustWord { variants }
        })
        .collect()
}
