#!/usr/bin/env python3
"""Writes NFC test vectors as a two-column TSV of \\uXXXX-escaped strings.

Usage: python3 tests/oracle/gen_nfc_golden.py > tests/fixtures/nfc_golden.tsv
"""

import random
import unicodedata


def esc(s):
    return "".join(f"\\u{{{ord(c):x}}}" for c in s)


def main():
    rng = random.Random(20240817)
    cases = [
        "",
        "plain ascii, nothing to do",
        "café",                      # precomposed stays
        "café",                     # e + combining acute -> é
        "ȩ́",                  # acute then cedilla: reorder + compose
        "ȩ́",                  # cedilla then acute
        "Å",                         # Angstrom sign -> Å
        "Ω",                         # Ohm sign -> Ω
        "q̣̇",                  # canonical ordering example (UAX #15)
        "ḍ̇",                   # d-dot-above + dot-below
        "PLACEHOLDER",                    # replaced below
        "가",                         # Hangul GA
        "가",                   # L + V -> GA
        "각",             # L + V + T -> GAG
        "각",                   # LV + T -> GAG
        "क़",                         # Devanagari QA: composition exclusion
        "क़",                   # KA + nukta: stays decomposed
        "שׁ",                   # Hebrew shin + shin-dot (exclusion)
        "آأؤ",             # Arabic madda/hamza forms (precomposed)
        "آ",                   # alef + maddah -> U+0622
        "ΐ",             # iota + diaeresis + acute
        "mixed فَ text 123",
    ]
    cases[10] = "Ḍ̇"      # D + dot-above + dot-below

    # random strings over ranges that exercise composition and reordering
    pools = [
        list(range(0x41, 0x7b)),
        list(range(0x300, 0x370)),        # combining marks
        list(range(0xc0, 0x100)),         # Latin-1 letters
        list(range(0x1e00, 0x1f00)),      # Latin extended additional
        list(range(0x0620, 0x0660)),      # Arabic letters + harakat
        list(range(0x1100, 0x1113)) + list(range(0x1161, 0x1176))
        + list(range(0x11a8, 0x11c3)),    # Hangul jamo
        list(range(0xac00, 0xac30)),      # Hangul syllables
        list(range(0x3b1, 0x3ca)),        # Greek
    ]
    for _ in range(400):
        n = rng.randint(1, 12)
        s = "".join(chr(rng.choice(rng.choice(pools))) for _ in range(n))
        cases.append(s)

    for s in cases:
        print(f"{esc(s)}\t{esc(unicodedata.normalize('NFC', s))}")


if __name__ == "__main__":
    main()
