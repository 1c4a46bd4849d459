// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Font preparation checks.
//!
//! | code                 | severity |
//! |----------------------|----------|
//! | `MissingForm`        | error    |
//! | `InvalidForm`        | error    |
//! | `MissingAnchor`      | error    |
//! | `MissingStackAnchor` | error    |
//! | `MissingVariant`     | error    |
//! | `MissingMark`        | error    |
//! | `MultilevelLigature` | error    |
//! | `ZeroExtension`      | warn     |
//! | `MassMismatch`       | warn     |

use std::collections::{BTreeMap, BTreeSet};

use super::{FontDescription, GlyphId, SizeVariant};
use crate::diagnostic::{Diagnostic, Location};
use crate::text::{self, CodePoint, MassClass, Placement, TextModel};

/// Mass class suggested by ink area: the lower third of all base glyphs is
/// light, the middle third medium, the upper third heavy.
pub fn suggested_mass_classes(font: &FontDescription) -> BTreeMap<GlyphId, MassClass> {
    let mut areas: Vec<i64> = font.glyphs.values().map(|g| g.ink.area()).collect();
    areas.sort_unstable();
    let n = areas.len();
    if n == 0 {
        return BTreeMap::new();
    }
    let (t1, t2) = (areas[n / 3], areas[2 * n / 3]);
    font.glyphs
        .iter()
        .map(|(id, g)| {
            let area = g.ink.area();
            let mass = if area < t1 {
                MassClass::Light
            } else if area < t2 {
                MassClass::Medium
            } else {
                MassClass::Heavy
            };
            (id.clone(), mass)
        })
        .collect()
}

pub fn lint_font(font: &FontDescription, model: &TextModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for letter in model.letters() {
        let forms = font.cmap.get(&CodePoint(letter.code_point));
        for &form in letter.joining_class.valid_forms() {
            if forms.is_none_or(|f| !f.contains_key(&form)) {
                out.push(Diagnostic::error(
                    "MissingForm",
                    format!("{} ({}) has no {form} glyph", letter.name, CodePoint(letter.code_point)),
                    Location::default(),
                ));
            }
        }
    }
    for (cp, forms) in &font.cmap {
        let Some(letter) = model.letter(cp.0) else {
            continue;
        };
        for (form, id) in forms {
            if !letter.joining_class.allows(*form) {
                out.push(Diagnostic::error(
                    "InvalidForm",
                    format!("{} cannot take the {form} form", letter.name),
                    Location::glyph_id(id.as_str()),
                ));
            }
        }
    }

    let sides: BTreeSet<Placement> = font.marks.values().map(|m| m.attachment_class).collect();
    let ligature_glyphs: BTreeSet<&GlyphId> = font.ligatures.iter().map(|l| &l.ligature_glyph).collect();
    for (id, glyph) in &font.glyphs {
        if ligature_glyphs.contains(id) {
            continue;
        }
        for side in &sides {
            if !glyph.anchors.contains_key(side) {
                out.push(Diagnostic::error(
                    "MissingAnchor",
                    format!("{id} has no {side} anchor but {side} marks exist"),
                    Location::glyph_id(id.as_str()),
                ));
            }
        }
    }
    for lig in &font.ligatures {
        for (k, anchors) in lig.component_anchors.iter().enumerate() {
            for side in &sides {
                if !anchors.contains_key(side) {
                    out.push(Diagnostic::error(
                        "MissingAnchor",
                        format!("{} component {k} has no {side} anchor", lig.ligature_glyph),
                        Location::glyph_id(lig.ligature_glyph.as_str()),
                    ));
                }
            }
        }
        let nested = lig.components.iter().any(|c| ligature_glyphs.contains(c));
        if lig.components.len() != 2 || nested {
            out.push(Diagnostic::error(
                "MultilevelLigature",
                format!("{} is not a single-level two-component ligature", lig.ligature_glyph),
                Location::glyph_id(lig.ligature_glyph.as_str()),
            ));
        }
    }

    let stacks_above = model.diacritics().any(|d| d.is_vowel() && d.placement == Placement::Above);
    if stacks_above {
        if let Some(shadda) = font.mark_for(text::SHADDA).and_then(|id| font.mark(id).map(|m| (id, m))) {
            if shadda.1.mark_anchor_above.is_none() {
                out.push(Diagnostic::error(
                    "MissingStackAnchor",
                    format!("{} has no mark_anchor_above for stacking vowels", shadda.0),
                    Location::glyph_id(shadda.0.as_str()),
                ));
            }
        }
    }

    for mark in model.diacritics() {
        let Some(id) = font.mark_for(mark.code_point) else {
            out.push(Diagnostic::error(
                "MissingMark",
                format!("{} ({}) has no mark glyph", mark.name, CodePoint(mark.code_point)),
                Location::default(),
            ));
            continue;
        };
        if !mark.elongatable {
            continue;
        }
        for size in [SizeVariant::Medium, SizeVariant::Large] {
            if font.variant_glyph(id, size).is_none() {
                out.push(Diagnostic::error(
                    "MissingVariant",
                    format!("{id} has no {size} variant"),
                    Location::glyph_id(id.as_str()),
                ));
            }
        }
    }

    let suggested = suggested_mass_classes(font);
    for (id, glyph) in &font.glyphs {
        if glyph.stretch.class > 0 && glyph.stretch.max_extension == 0 {
            out.push(Diagnostic::warn(
                "ZeroExtension",
                format!("{id} has stretch class {} but max_extension 0", glyph.stretch.class),
                Location::glyph_id(id.as_str()),
            ));
        }
        if suggested.get(id).is_some_and(|&m| m != glyph.mass) {
            out.push(Diagnostic::warn(
                "MassMismatch",
                format!("{id} is authored {:?} but its ink area suggests {:?}", glyph.mass, suggested[id]),
                Location::glyph_id(id.as_str()),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::font::FontDescription;
    use serde_json::Value;

    fn lint_modified(edit: impl FnOnce(&mut Value)) -> Vec<Diagnostic> {
        let mut value: Value = serde_json::from_str(demo::FONT_SOURCE).unwrap();
        edit(&mut value);
        let font = FontDescription::from_json(&value.to_string()).unwrap();
        lint_font(&font, TextModel::builtin())
    }

    fn codes(diags: &[Diagnostic]) -> Vec<&str> {
        diags.iter().map(|d| d.code.as_str()).collect()
    }

    #[test]
    fn demo_font_is_clean() {
        let diags = lint_font(demo::font(), TextModel::builtin());
        assert!(diags.is_empty(), "{diags:#?}");
    }

    #[test]
    fn missing_anchor() {
        let diags = lint_modified(|v| {
            v["glyphs"]["beh.medi"]["anchors"].as_object_mut().unwrap().remove("above");
        });
        assert_eq!(codes(&diags), ["MissingAnchor"]);
        assert_eq!(diags[0].location.glyph_id.as_deref(), Some("beh.medi"));
    }

    #[test]
    fn missing_ligature_component_anchor() {
        let diags = lint_modified(|v| {
            v["ligatures"][0]["component_anchors"][1].as_object_mut().unwrap().remove("below");
        });
        assert_eq!(codes(&diags), ["MissingAnchor"]);
    }

    #[test]
    fn missing_variant() {
        let diags = lint_modified(|v| {
            v["marks"]["fatha"]["variants"].as_object_mut().unwrap().remove("large");
        });
        assert_eq!(codes(&diags), ["MissingVariant"]);
    }

    #[test]
    fn missing_form() {
        let diags = lint_modified(|v| {
            v["cmap"]["U+0628"].as_object_mut().unwrap().remove("medial");
        });
        assert_eq!(codes(&diags), ["MissingForm"]);
    }

    #[test]
    fn invalid_form() {
        let diags = lint_modified(|v| {
            v["cmap"]["U+0627"]["medial"] = "alef.fina".into();
        });
        assert_eq!(codes(&diags), ["InvalidForm"]);
    }

    #[test]
    fn zero_extension() {
        let diags = lint_modified(|v| {
            v["glyphs"]["seen.medi"]["stretch"]["max_extension"] = 0.into();
        });
        assert_eq!(codes(&diags), ["ZeroExtension"]);
    }

    #[test]
    fn mass_mismatch() {
        let diags = lint_modified(|v| {
            let current = v["glyphs"]["alef.isol"]["mass"].as_str().unwrap().to_string();
            v["glyphs"]["alef.isol"]["mass"] = if current == "heavy" { "light" } else { "heavy" }.into();
        });
        assert_eq!(codes(&diags), ["MassMismatch"]);
    }

    #[test]
    fn multilevel_ligature() {
        let diags = lint_modified(|v| {
            let lig = &mut v["ligatures"][0];
            lig["components"].as_array_mut().unwrap().push("beh.fina".into());
            let anchors = lig["component_anchors"][1].clone();
            lig["component_anchors"].as_array_mut().unwrap().push(anchors);
            // keep the gsub rule consistent with the entry
            for rule in v["gsub"].as_array_mut().unwrap() {
                if let Some(ligs) = rule.get_mut("ligatures").and_then(Value::as_array_mut) {
                    ligs.retain(|l| l["glyph"] != "lam_alef.isol");
                }
            }
        });
        assert_eq!(codes(&diags), ["MultilevelLigature"]);
    }

    #[test]
    fn missing_stack_anchor() {
        let diags = lint_modified(|v| {
            v["marks"]["shadda"].as_object_mut().unwrap().remove("mark_anchor_above");
        });
        assert_eq!(codes(&diags), ["MissingStackAnchor"]);
    }

    #[test]
    fn missing_mark() {
        let diags = lint_modified(|v| {
            v["mark_cmap"].as_object_mut().unwrap().remove("U+0652");
        });
        assert_eq!(codes(&diags), ["MissingMark"]);
    }
}
