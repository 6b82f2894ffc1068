#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.cpp from Python's unicodedata.

The tables cover exactly what the library needs: letter ranges (general
category L*), canonical combining classes, canonical decompositions,
primary composition pairs, and the simple lowercase map. Hangul is handled
algorithmically at runtime and is excluded here.

Usage: python3 tests/oracle/gen_unicode_tables.py > core/src/unicode_tables.cpp
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def letter_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        cat = unicodedata.category(chr(cp))
        if cat.startswith("L"):
            if start is None:
                start = cp
        else:
            if start is not None:
                ranges.append((start, cp - 1))
                start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def combining_classes():
    out = []
    for cp in range(MAX_CP):
        ccc = unicodedata.combining(chr(cp))
        if ccc:
            out.append((cp, ccc))
    return out


def canonical_decompositions():
    """cp -> one-level canonical decomposition (1 or 2 code points)."""
    out = []
    for cp in range(MAX_CP):
        if is_hangul_syllable(cp):
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue  # none, or a compatibility mapping
        parts = [int(p, 16) for p in d.split()]
        if len(parts) == 1:
            out.append((cp, parts[0], 0))
        elif len(parts) == 2:
            out.append((cp, parts[0], parts[1]))
        else:
            raise ValueError(f"unexpected decomposition arity at U+{cp:04X}")
    return out


def composition_pairs(decomps):
    """Primary composites: pairs that NFC actually recomposes."""
    pairs = []
    for cp, a, b in decomps:
        if b == 0:
            continue  # singleton decompositions never recompose
        if unicodedata.combining(chr(a)):
            continue  # non-starter decomposition
        # Composition exclusions: NFC of the decomposed pair must give cp back
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            pairs.append((a, b, cp))
    return pairs


def simple_lowercase():
    out = []
    for cp in range(MAX_CP):
        lo = chr(cp).lower()
        if len(lo) == 1 and ord(lo) != cp:
            out.append((cp, ord(lo)))
    return out


def emit(rows, fmt, per_line):
    lines = []
    for i in range(0, len(rows), per_line):
        chunk = rows[i : i + per_line]
        lines.append("    " + " ".join(fmt(r) for r in chunk))
    return "\n".join(lines)


def main():
    letters = letter_ranges()
    cccs = combining_classes()
    decomps = canonical_decompositions()
    comps = sorted(composition_pairs(decomps), key=lambda t: (t[0], t[1]))
    lowers = simple_lowercase()

    w = sys.stdout.write
    w("// Generated by tests/oracle/gen_unicode_tables.py from unicodedata "
      f"{unicodedata.unidata_version}. Do not edit.\n")
    w('#include "domainsmith/unicode.hpp"\n\n')
    w("namespace domainsmith::unicode::tables {\n\n")

    w(f"const CodepointRange kLetterRanges[] = {{\n")
    w(emit(letters, lambda r: f"{{{r[0]:#x},{r[1]:#x}}},", 8))
    w(f"\n}};\nconst std::size_t kLetterRangeCount = {len(letters)};\n\n")

    w(f"const CombiningClassEntry kCombiningClasses[] = {{\n")
    w(emit(cccs, lambda r: f"{{{r[0]:#x},{r[1]}}},", 8))
    w(f"\n}};\nconst std::size_t kCombiningClassCount = {len(cccs)};\n\n")

    w(f"const DecompositionEntry kCanonicalDecompositions[] = {{\n")
    w(emit(decomps, lambda r: f"{{{r[0]:#x},{r[1]:#x},{r[2]:#x}}},", 6))
    w(f"\n}};\nconst std::size_t kCanonicalDecompositionCount = {len(decomps)};\n\n")

    w(f"const CompositionEntry kCompositionPairs[] = {{\n")
    w(emit(comps, lambda r: f"{{{r[0]:#x},{r[1]:#x},{r[2]:#x}}},", 6))
    w(f"\n}};\nconst std::size_t kCompositionPairCount = {len(comps)};\n\n")

    w(f"const LowercaseEntry kSimpleLowercase[] = {{\n")
    w(emit(lowers, lambda r: f"{{{r[0]:#x},{r[1]:#x}}},", 8))
    w(f"\n}};\nconst std::size_t kSimpleLowercaseCount = {len(lowers)};\n\n")

    w("}  // namespace domainsmith::unicode::tables\n")


if __name__ == "__main__":
    main()
