#!/usr/bin/env python3
"""Regenerates crates/core/data/letters.json (the built-in property table)."""
import json, pathlib

LETTERS = [
    # name, code point, joining, dots, dot position, skeleton, stretch class, mass
    ("hamza", 0x0621, "none", 0, "none", "hamza", 0, "light"),
    ("alef_madda", 0x0622, "right", 0, "none", "alef_madda", 0, "medium"),
    ("alef_hamza_above", 0x0623, "right", 0, "none", "alef_hamza_above", 0, "medium"),
    ("waw_hamza", 0x0624, "right", 0, "none", "waw_hamza", 0, "light"),
    ("alef_hamza_below", 0x0625, "right", 0, "none", "alef_hamza_below", 0, "medium"),
    ("yeh_hamza", 0x0626, "dual", 0, "none", "yeh_hamza", 2, "light"),
    ("alef", 0x0627, "right", 0, "none", "alef", 0, "medium"),
    ("beh", 0x0628, "dual", 1, "below", "beh", 2, "light"),
    ("teh_marbuta", 0x0629, "right", 2, "above", "teh_marbuta", 0, "light"),
    ("teh", 0x062A, "dual", 2, "above", "beh", 2, "light"),
    ("theh", 0x062B, "dual", 3, "above", "beh", 2, "light"),
    ("jeem", 0x062C, "dual", 1, "below", "hah", 1, "heavy"),
    ("hah", 0x062D, "dual", 0, "none", "hah", 1, "heavy"),
    ("khah", 0x062E, "dual", 1, "above", "hah", 1, "heavy"),
    ("dal", 0x062F, "right", 0, "none", "dal", 0, "light"),
    ("thal", 0x0630, "right", 1, "above", "dal", 0, "light"),
    ("reh", 0x0631, "right", 0, "none", "reh", 0, "light"),
    ("zain", 0x0632, "right", 1, "above", "reh", 0, "light"),
    ("seen", 0x0633, "dual", 0, "none", "seen", 3, "medium"),
    ("sheen", 0x0634, "dual", 3, "above", "seen", 3, "medium"),
    ("sad", 0x0635, "dual", 0, "none", "sad", 3, "heavy"),
    ("dad", 0x0636, "dual", 1, "above", "sad", 3, "heavy"),
    ("tah", 0x0637, "dual", 0, "none", "tah", 2, "heavy"),
    ("zah", 0x0638, "dual", 1, "above", "tah", 2, "heavy"),
    ("ain", 0x0639, "dual", 0, "none", "ain", 1, "medium"),
    ("ghain", 0x063A, "dual", 1, "above", "ain", 1, "medium"),
    ("feh", 0x0641, "dual", 1, "above", "feh", 2, "medium"),
    ("qaf", 0x0642, "dual", 2, "above", "qaf", 2, "medium"),
    ("kaf", 0x0643, "dual", 0, "none", "kaf", 3, "heavy"),
    ("lam", 0x0644, "dual", 0, "none", "lam", 2, "medium"),
    ("meem", 0x0645, "dual", 0, "none", "meem", 1, "light"),
    ("noon", 0x0646, "dual", 1, "above", "noon", 2, "light"),
    ("heh", 0x0647, "dual", 0, "none", "heh", 1, "light"),
    ("waw", 0x0648, "right", 0, "none", "waw", 0, "light"),
    ("alef_maksura", 0x0649, "dual", 0, "none", "yeh", 1, "medium"),
    ("yeh", 0x064A, "dual", 2, "below", "yeh", 1, "medium"),
]

DIACRITICS = [
    ("fathatan", 0x064B, "above", "language", True),
    ("dammatan", 0x064C, "above", "language", False),
    ("kasratan", 0x064D, "below", "language", False),
    ("fatha", 0x064E, "above", "language", True),
    ("damma", 0x064F, "above", "language", False),
    ("kasra", 0x0650, "below", "language", False),
    ("shadda", 0x0651, "above", "language", False),
    ("sukun", 0x0652, "above", "language", False),
]


def cp(c):
    return "U+%04X" % c


def build():
    return {
        "schema": "qalam-letters/1",
        "letters": [
            {
                "name": n,
                "code_point": cp(c),
                "joining": j,
                "dots": {"count": dc, "position": dp},
                "skeleton": sk,
                "stretch_class": st,
                "mass": m,
            }
            for (n, c, j, dc, dp, sk, st, m) in LETTERS
        ],
        "diacritics": [
            {"name": n, "code_point": cp(c), "placement": p, "category": cat, "elongatable": e}
            for (n, c, p, cat, e) in DIACRITICS
        ],
    }


if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/letters.json"
    out.write_text(json.dumps(build(), indent=2, ensure_ascii=False) + "\n")
