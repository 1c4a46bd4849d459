// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! SVG proofs of a [`LayoutDocument`]: ink boxes laid right to left, marks
//! filled by size variant, and guides at the measure.

use std::fmt::Write;

use crate::font::SizeVariant;
use crate::geom::Rect;
use crate::layout::LayoutDocument;

const MARGIN: i32 = 200;

const STYLE: &str = "\
.guide{stroke:#9aa;stroke-width:4;stroke-dasharray:24 16}\
.base{fill:#2b2b2b;fill-opacity:0.85}\
.elongation{fill:#c2562b}\
.variant-normal{fill:#2a6fdb}\
.variant-medium{fill:#1f9e5a}\
.variant-large{fill:#d1a000}";

/// Renders `doc`. The output depends on nothing but the document.
pub fn render(doc: &LayoutDocument) -> String {
    let text_width = doc.lines.iter().map(|l| l.width).max().unwrap_or(0);
    let measure = doc.measure.unwrap_or(text_width).max(text_width);
    let width = measure + 2 * MARGIN;
    let height = doc.line_height * doc.lines.len() as i32 + 2 * MARGIN;
    // baseline sits 60% of the way down each line box
    let ascent = doc.line_height * 3 / 5;
    let right = MARGIN + measure;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let _ = writeln!(out, r#"<line class="guide" x1="{right}" y1="0" x2="{right}" y2="{height}"/>"#);
    let _ = writeln!(out, r#"<line class="guide" x1="{MARGIN}" y1="0" x2="{MARGIN}" y2="{height}"/>"#);

    for line in &doc.lines {
        let baseline = MARGIN + line.baseline + ascent;
        let place = |r: &Rect| (right - r.x_max, baseline - r.y_max, r.width(), r.height());
        let _ = writeln!(out, r#"<g class="line">"#);
        for g in &line.glyphs {
            match &g.path {
                Some(d) => {
                    let _ = writeln!(
                        out,
                        r#"<path class="base" data-glyph="{}" transform="translate({} {baseline}) scale(-1 -1)" d="{}"/>"#,
                        escape(g.glyph.as_str()),
                        right - g.x,
                        escape(d)
                    );
                }
                None => {
                    let (x, y, w, h) = place(&g.ink);
                    let _ = writeln!(
                        out,
                        r#"<rect class="base" data-glyph="{}" x="{x}" y="{y}" width="{w}" height="{h}"/>"#,
                        escape(g.glyph.as_str())
                    );
                }
            }
            if g.elongation > 0 {
                let _ = writeln!(
                    out,
                    r#"<rect class="elongation" x="{}" y="{}" width="{}" height="12"/>"#,
                    right - g.ink.x_max,
                    baseline - 6,
                    g.elongation
                );
            }
            for m in &g.marks {
                let (x, y, w, h) = place(&m.ink);
                let _ = writeln!(
                    out,
                    r#"<rect class="mark {}" data-glyph="{}" x="{x}" y="{y}" width="{w}" height="{h}"/>"#,
                    variant_class(m.variant),
                    escape(m.mark.as_str())
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

fn variant_class(v: SizeVariant) -> &'static str {
    match v {
        SizeVariant::Normal => "variant-normal",
        SizeVariant::Medium => "variant-medium",
        SizeVariant::Large => "variant-large",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;").replace('>', "&gt;")
}
