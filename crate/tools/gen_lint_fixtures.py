#!/usr/bin/env python3
"""Derive one broken font per lint rule from the demo font.

Each fixture is the demo font with a single edit, written compactly to
crates/cli/tests/fixtures/lint/<Code>.json. A few non-lint fixtures for
loader failures are written alongside.

Usage: tools/gen_lint_fixtures.py
"""

import copy
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.join(HERE, "..")
DEMO = os.path.join(ROOT, "crates", "core", "data", "chawki-demo.json")
OUT = os.path.join(ROOT, "crates", "cli", "tests", "fixtures")


def missing_anchor(f):
    del f["glyphs"]["beh.medi"]["anchors"]["above"]


def missing_variant(f):
    del f["marks"]["fatha"]["variants"]["large"]


def missing_form(f):
    del f["cmap"]["U+0628"]["medial"]


def invalid_form(f):
    f["cmap"]["U+0627"]["medial"] = "alef.fina"


def zero_extension(f):
    f["glyphs"]["seen.medi"]["stretch"]["max_extension"] = 0


def mass_mismatch(f):
    g = f["glyphs"]["alef.isol"]
    g["mass"] = "light" if g["mass"] == "heavy" else "heavy"


def multilevel_ligature(f):
    lig = f["ligatures"][0]
    lig["components"].append("beh.fina")
    lig["component_anchors"].append(copy.deepcopy(lig["component_anchors"][1]))
    for rule in f["gsub"]:
        if "ligatures" in rule:
            rule["ligatures"] = [l for l in rule["ligatures"] if l["glyph"] != lig["glyph"]]


def missing_stack_anchor(f):
    del f["marks"]["shadda"]["mark_anchor_above"]


def missing_mark(f):
    del f["mark_cmap"]["U+0652"]


RULES = {
    "MissingAnchor": missing_anchor,
    "MissingVariant": missing_variant,
    "MissingForm": missing_form,
    "InvalidForm": invalid_form,
    "ZeroExtension": zero_extension,
    "MassMismatch": mass_mismatch,
    "MultilevelLigature": multilevel_ligature,
    "MissingStackAnchor": missing_stack_anchor,
    "MissingMark": missing_mark,
}


def dangling_ligature(f):
    f["ligatures"][0]["glyph"] = "xx"


def main():
    demo = json.load(open(DEMO, encoding="utf-8"))
    os.makedirs(os.path.join(OUT, "lint"), exist_ok=True)
    for code, edit in RULES.items():
        font = copy.deepcopy(demo)
        edit(font)
        path = os.path.join(OUT, "lint", f"{code}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(font, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            fh.write("\n")
    font = copy.deepcopy(demo)
    dangling_ligature(font)
    with open(os.path.join(OUT, "dangling-ref.json"), "w", encoding="utf-8") as fh:
        json.dump(font, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        fh.write("\n")
    with open(os.path.join(OUT, "not-json.json"), "w", encoding="utf-8") as fh:
        fh.write("glyphs: beh\n")
    with open(os.path.join(OUT, "broken-layout.json"), "w", encoding="utf-8") as fh:
        fh.write('{"schema": "qalam-layout/1", "lines": [\n')


if __name__ == "__main__":
    main()
