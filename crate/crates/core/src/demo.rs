// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! The bundled chawki-demo font.

use std::sync::OnceLock;

use crate::font::FontDescription;

/// Canonical JSON source of the demo font.
pub const FONT_SOURCE: &str = include_str!("../data/chawki-demo.json");

pub fn font() -> &'static FontDescription {
    static FONT: OnceLock<FontDescription> = OnceLock::new();
    FONT.get_or_init(|| FontDescription::from_json(FONT_SOURCE).expect("bundled font is valid"))
}
