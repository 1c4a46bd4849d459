// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Arabic shaping, diacritic placement and Kashida justification.
//!
//! The pipeline runs text model → shaper (joining, substitution, mark
//! attachment) → diacritic engine (resizing Fatha and Fathatan to fill the
//! space an elongation opens) → justifier (greedy or optimum-fit line
//! breaking that spends Kashida before inter-word glue). All geometry is in
//! integer font units in the logical frame; x grows toward the end of the
//! text and the renderer mirrors it for right-to-left display.

pub mod demo;
pub mod diacritics;
pub mod diagnostic;
pub mod font;
pub mod geom;
pub mod justify;
pub mod kashida;
pub mod layout;
pub mod lookup;
pub mod shaper;
pub mod svg;
pub mod text;

pub use diagnostic::{Diagnostic, Severity};
pub use font::{load_font, FontDescription, FontError, GlyphId};
pub use layout::{LayoutDocument, LayoutError, LayoutOptions};
pub use text::TextModel;
