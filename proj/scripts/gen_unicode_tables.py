#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.inc from Python's unicodedata.

Emits two tables:
  - ranges of codepoints whose general category is a letter (L*) or a
    decimal digit (Nd)
  - simple one-to-one lowercase mappings (multi-codepoint expansions such
    as U+0130 are intentionally skipped; those codepoints keep their form)

Usage: python3 scripts/gen_unicode_tables.py > core/src/unicode_tables.inc
"""

import sys
import unicodedata


def is_word_cp(cp):
    cat = unicodedata.category(chr(cp))
    return cat.startswith("L") or cat == "Nd"


def main():
    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
              % unicodedata.unidata_version)

    ranges = []
    start = None
    for cp in range(0x110000):
        if is_word_cp(cp):
            if start is None:
                start = cp
        else:
            if start is not None:
                ranges.append((start, cp - 1))
                start = None
    if start is not None:
        ranges.append((start, 0x10FFFF))

    out.write("\nstatic constexpr CodepointRange kLetterDigitRanges[] = {\n")
    for lo, hi in ranges:
        out.write("    {0x%X, 0x%X},\n" % (lo, hi))
    out.write("};\n")

    lowers = []
    for cp in range(0x110000):
        if not is_word_cp(cp):
            continue
        low = chr(cp).lower()
        if len(low) == 1 and ord(low) != cp:
            lowers.append((cp, ord(low)))

    out.write("\nstatic constexpr LowercasePair kLowercasePairs[] = {\n")
    for cp, low in lowers:
        out.write("    {0x%X, 0x%X},\n" % (cp, low))
    out.write("};\n")


if __name__ == "__main__":
    main()
