#!/usr/bin/env python3
"""Generate the chawki-demo font description.

Geometry is schematic: ink boxes and anchors, no outlines. Mass classes are
assigned with the same ink-area tercile rule that the linter uses, so the
font lints clean by construction.

Usage: tools/gen_demo_font.py > crates/core/data/chawki-demo.json
"""

import json
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
LETTERS = os.path.join(HERE, "..", "crates", "core", "data", "letters.json")

# skeleton: isol, init, medi, fina advances; ink top; descender of isol/fina
SKELETONS = {
    "hamza": (260, None, None, None, 300, 0),
    "alef": (220, None, None, 240, 720, 0),
    "alef_madda": (240, None, None, 260, 820, 0),
    "alef_hamza_above": (220, None, None, 240, 860, 0),
    "alef_hamza_below": (220, None, None, 240, 720, -160),
    "waw_hamza": (340, None, None, 360, 420, -300),
    "yeh_hamza": (520, 200, 190, 540, 400, 0),
    "beh": (520, 200, 190, 540, 220, 0),
    "teh_marbuta": (300, None, None, 320, 440, 0),
    "hah": (500, 440, 400, 480, 360, -420),
    "dal": (300, None, None, 320, 380, 0),
    "reh": (320, None, None, 340, 200, -300),
    "seen": (760, 460, 440, 780, 240, -300),
    "sad": (820, 560, 540, 840, 320, -300),
    "tah": (560, 520, 500, 580, 720, 0),
    "ain": (440, 300, 280, 420, 420, -400),
    "feh": (640, 260, 240, 660, 420, 0),
    "qaf": (560, 260, 240, 580, 440, -320),
    "kaf": (620, 500, 480, 640, 720, 0),
    "lam": (460, 200, 200, 480, 740, -300),
    "meem": (340, 300, 280, 360, 260, -380),
    "noon": (480, 220, 200, 500, 300, -280),
    "heh": (340, 320, 300, 320, 380, 0),
    "waw": (340, None, None, 360, 260, -300),
    "yeh": (560, 220, 200, 580, 260, -340),
}

EXTENSION = {3: 400, 2: 300, 1: 150}
CLEARANCE = 60
FORMS = ["isolated", "initial", "medial", "final"]
SUFFIX = {"isolated": "isol", "initial": "init", "medial": "medi", "final": "fina"}
VALID = {
    "dual": ["isolated", "initial", "medial", "final"],
    "right": ["isolated", "final"],
    "none": ["isolated"],
}


def anchors_for(x_min, x_max, top, bottom):
    cx = (x_min + x_max) // 2
    return {"above": [cx, top + CLEARANCE], "below": [cx, bottom - CLEARANCE]}


def base_glyph(advance, ink, stretch_class=0, extension=0):
    x_min, y_min, x_max, y_max = ink
    return {
        "advance": advance,
        "ink": list(ink),
        "anchors": anchors_for(x_min, x_max, y_max, y_min),
        "stretch": {"class": stretch_class, "max_extension": extension},
    }


def letter_glyph(letter, form):
    isol, init, medi, fina, top, desc = SKELETONS[letter["skeleton"]]
    advance = {"isolated": isol, "initial": init, "medial": medi, "final": fina}[form]
    # joining strokes reach the edge they connect on; x grows toward the word end
    x_min = 0 if form in ("medial", "final") else 10
    x_max = advance if form in ("initial", "medial") else advance - 10
    bottom = desc if form in ("isolated", "final") else 0
    dots = letter["dots"]
    if dots["position"] == "above":
        top += 60 + 40 * dots["count"]
    elif dots["position"] == "below":
        bottom = min(bottom, -60 - 40 * dots["count"])
    joins_forward = form in ("initial", "medial")
    cls = letter["stretch_class"] if joins_forward else 0
    return base_glyph(advance, (x_min, bottom, x_max, top), cls, EXTENSION.get(cls, 0))


def mark(cls, width, height, extra=None):
    if cls == "above":
        g = {"class": "above", "anchor": [width // 2, 0], "ink": [0, 0, width, height]}
    else:
        g = {"class": "below", "anchor": [width // 2, 0], "ink": [0, -height, width, 0]}
    if extra:
        g.update(extra)
    return g


def main():
    table = json.load(open(LETTERS, encoding="utf-8"))
    letters = table["letters"]
    by_name = {l["name"]: l for l in letters}

    glyphs = {}
    cmap = {}
    for letter in letters:
        forms = {}
        for form in VALID[letter["joining"]]:
            name = f"{letter['name']}.{SUFFIX[form]}"
            glyphs[name] = letter_glyph(letter, form)
            forms[form] = name
        cmap[letter["code_point"]] = forms

    # allographs: wider alternates for justification, and one taller form
    def alternate(src, name, extra_width, extra_top=0):
        g = json.loads(json.dumps(glyphs[src]))
        g["advance"] += extra_width
        x_min, y_min, x_max, y_max = g["ink"]
        g["ink"] = [x_min, y_min, x_max + extra_width, y_max + extra_top]
        g["anchors"] = anchors_for(x_min, x_max + extra_width, y_max + extra_top, y_min)
        glyphs[name] = g

    alternate("beh.isol", "beh.isol.expanded", 240)
    alternate("yeh.fina", "yeh.fina.swash", 220)
    alternate("noon.isol", "noon.isol.wide", 200)
    alternate("kaf.isol", "kaf.isol.wide", 240)
    alternate("alef.fina", "alef.fina.tall", 0, 120)
    jalt = {
        "beh.isol": ["beh.isol.expanded"],
        "yeh.fina": ["yeh.fina.swash"],
        "noon.isol": ["noon.isol.wide"],
        "kaf.isol": ["kaf.isol.wide"],
    }

    ligatures = []
    lam_alef = []
    for alef in ["alef", "alef_madda", "alef_hamza_above", "alef_hamza_below"]:
        for lam_form, lig_form in [("init", "isol"), ("medi", "fina")]:
            lam = glyphs[f"lam.{lam_form}"]
            alef_g = glyphs[f"{alef}.fina"]
            name = "lam_alef" if alef == "alef" else f"lam_{alef}"
            name = f"{name}.{lig_form}"
            advance = lam["advance"] + alef_g["advance"] + 20
            top = max(lam["ink"][3], alef_g["ink"][3])
            bottom = min(alef_g["ink"][1], -40)
            x_min = 0 if lig_form == "fina" else 10
            glyphs[name] = {
                "advance": advance,
                "ink": [x_min, bottom, advance - 10, top],
                "anchors": {},
                "stretch": {"class": 0, "max_extension": 0},
            }
            half = advance // 2
            ligatures.append(
                {
                    "components": [f"lam.{lam_form}", f"{alef}.fina"],
                    "glyph": name,
                    "component_anchors": [
                        anchors_for(x_min, half, top, bottom),
                        anchors_for(half, advance - 10, top, bottom),
                    ],
                    "kind": "linguistic",
                }
            )
            lam_alef.append({"components": [f"lam.{lam_form}", f"{alef}.fina"], "glyph": name})

    aesthetic = []
    for first, second, name, saving in [
        ("lam.init", "meem.medi", "lam_meem.init", 80),
        ("lam.init", "hah.medi", "lam_hah.init", 100),
        ("beh.init", "yeh.fina", "beh_yeh.isol", 120),
    ]:
        a, b = glyphs[first], glyphs[second]
        advance = a["advance"] + b["advance"] - saving
        top = max(a["ink"][3], b["ink"][3])
        bottom = min(a["ink"][1], b["ink"][1])
        x_max = advance if name.endswith(".init") else advance - 10
        glyphs[name] = {
            "advance": advance,
            "ink": [10, bottom, x_max, top],
            "anchors": {},
            "stretch": {"class": 0, "max_extension": 0},
        }
        half = advance // 2
        ligatures.append(
            {
                "components": [first, second],
                "glyph": name,
                "component_anchors": [anchors_for(10, half, top, bottom), anchors_for(half, x_max, top, bottom)],
                "kind": "aesthetic",
            }
        )
        aesthetic.append({"components": [first, second], "glyph": name})

    # mass by ink-area terciles, the rule the linter checks against
    def area(g):
        x0, y0, x1, y1 = g["ink"]
        return (x1 - x0) * (y1 - y0)

    areas = sorted(area(g) for g in glyphs.values())
    n = len(areas)
    t1, t2 = areas[n // 3], areas[2 * n // 3]
    for g in glyphs.values():
        a = area(g)
        g["mass"] = "light" if a < t1 else "medium" if a < t2 else "heavy"

    marks = {
        "fatha": mark("above", 140, 50, {"variants": {"normal": "fatha", "medium": "fatha.medium", "large": "fatha.large"}}),
        "fatha.medium": mark("above", 240, 50),
        "fatha.large": mark("above", 420, 50),
        "fathatan": mark(
            "above", 140, 110, {"variants": {"normal": "fathatan", "medium": "fathatan.medium", "large": "fathatan.large"}}
        ),
        "fathatan.medium": mark("above", 240, 110),
        "fathatan.large": mark("above", 420, 110),
        "damma": mark("above", 110, 120),
        "dammatan": mark("above", 150, 120),
        "sukun": mark("above", 100, 100),
        "shadda": mark("above", 160, 90, {"mark_anchor_above": [80, 110]}),
        "kasra": mark("below", 140, 50),
        "kasratan": mark("below", 140, 110),
    }
    mark_cmap = {
        "U+064B": "fathatan",
        "U+064C": "dammatan",
        "U+064D": "kasratan",
        "U+064E": "fatha",
        "U+064F": "damma",
        "U+0650": "kasra",
        "U+0651": "shadda",
        "U+0652": "sukun",
    }
    above_marks = sorted(k for k, v in marks.items() if v["class"] == "above" and k != "shadda")

    font = {
        "schema": "qalam-font/1",
        "id": "chawki-demo",
        "units_per_em": 1000,
        "line_height": 2000,
        "size_thresholds": {"medium": 200, "large": 450},
        "gap_epsilon": 10,
        "glue": {"width": 250, "stretch": 125, "shrink": 80},
        "kashida_priority": {"1": 1, "2": 2, "3": 3},
        "mark_positions": {
            "light": {"above": 0, "below": 0},
            "medium": {"above": 10, "below": -10},
            "heavy": {"above": 30, "below": -30},
        },
        "final_variants": {"light": "normal", "medium": "medium", "heavy": "large"},
        "glyphs": glyphs,
        "marks": marks,
        "ligatures": ligatures,
        "cmap": cmap,
        "mark_cmap": mark_cmap,
        "gsub": [
            {
                "kind": "ligature_sub",
                "feature": "rlig",
                "flags": ["ignore_marks"],
                "coverage": ["lam.init", "lam.medi"],
                "ligatures": lam_alef,
            },
            {
                "kind": "ligature_sub",
                "feature": "liga",
                "flags": ["ignore_marks"],
                "coverage": sorted({l["components"][0] for l in aesthetic}),
                "ligatures": aesthetic,
            },
            {
                "kind": "alternate_sub",
                "feature": "jalt",
                "coverage": sorted(jalt),
                "alternates": jalt,
            },
        ],
        "gpos": [
            {"kind": "mark_to_base", "coverage": sorted(marks)},
            {"kind": "mark_to_ligature", "coverage": sorted(marks)},
            {"kind": "mark_to_mark", "coverage": above_marks},
        ],
    }
    assert all(name in by_name for name in ("lam", "alef", "beh"))
    sys.stdout.write(json.dumps(font, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
