// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

mod support;

use qalam_core::text::{analyze_joining, Cluster, Form, TextModel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::gen::letters;
use support::oracle::{joining_forms, joining_type};

fn engine_forms(word: &[char]) -> Vec<Form> {
    let clusters: Vec<Cluster> = word.iter().map(|&c| Cluster::new(c)).collect();
    analyze_joining(&TextModel::builtin().joining_classes(&clusters)).unwrap()
}

#[test]
fn registered_letters_agree_with_reference_joining_types() {
    let model = TextModel::builtin();
    for c in letters() {
        assert!(model.letter(c).is_some(), "{c:?} unregistered");
        assert!(joining_type(c).is_some(), "{c:?} has no reference type");
    }
}

#[test]
fn every_word_up_to_three_letters() {
    let letters = letters();
    let mut word = Vec::new();
    for &a in &letters {
        word.clear();
        word.push(a);
        assert_eq!(engine_forms(&word), joining_forms(&word));
        for &b in &letters {
            word.truncate(1);
            word.push(b);
            assert_eq!(engine_forms(&word), joining_forms(&word));
            for &c in &letters {
                word.truncate(2);
                word.push(c);
                assert_eq!(engine_forms(&word), joining_forms(&word), "{word:?}");
            }
        }
    }
}

#[test]
fn sampled_words_up_to_six_letters() {
    let letters = letters();
    let mut rng = ChaCha8Rng::seed_from_u64(0x101);
    for _ in 0..20_000 {
        let len = rng.gen_range(4..=6);
        let word: Vec<char> = (0..len).map(|_| *letters.choose(&mut rng).unwrap()).collect();
        assert_eq!(engine_forms(&word), joining_forms(&word), "{word:?}");
    }
}

#[test]
fn worked_examples() {
    use Form::*;
    assert_eq!(engine_forms(&['\u{0628}']), [Isolated]);
    assert_eq!(engine_forms(&['\u{0628}', '\u{0627}', '\u{0628}']), [Initial, Final, Isolated]);
    assert_eq!(engine_forms(&['\u{0644}', '\u{0645}', '\u{062F}']), [Initial, Medial, Final]);
}
