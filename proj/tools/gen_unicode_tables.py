#!/usr/bin/env python3
"""Regenerates src/unicode_data.cpp from the Unicode Character Database.

Emits three tables used by the NFC normalizer:
  - full canonical decompositions (NFD), Hangul syllables excluded
    (those decompose algorithmically),
  - nonzero canonical combining classes,
  - primary composition pairs (canonical two-char decompositions that
    survive an NFC round trip, which drops the composition exclusions).

Usage: python3 tools/gen_unicode_tables.py > src/unicode_data.cpp
"""

import sys
import unicodedata

HANGUL_BASE = 0xAC00
HANGUL_END = 0xD7A3


def assigned(cp):
    return unicodedata.category(chr(cp)) != "Cn"


def main():
    decomp = []  # (cp, [code points])
    ccc = []  # (cp, class)
    comp = []  # (a, b, composed)

    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF or not assigned(cp):
            continue
        ch = chr(cp)

        klass = unicodedata.combining(ch)
        if klass != 0:
            ccc.append((cp, klass))

        if not (HANGUL_BASE <= cp <= HANGUL_END):
            nfd = unicodedata.normalize("NFD", ch)
            if nfd != ch:
                decomp.append((cp, [ord(c) for c in nfd]))

        raw = unicodedata.decomposition(ch)
        if raw and not raw.startswith("<"):
            parts = [int(p, 16) for p in raw.split()]
            if len(parts) == 2:
                a, b = parts
                if unicodedata.normalize("NFC", chr(a) + chr(b)) == ch:
                    comp.append((a, b, cp))

    comp.sort(key=lambda e: (e[0] << 32) | e[1])

    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py from the Unicode\n")
    out.write(f"// Character Database, version {unicodedata.unidata_version}. Do not edit.\n\n")
    out.write('#include "unicode_data.hpp"\n\n')
    out.write("namespace bp::unicode_data {\n\n")

    pool = []
    entries = []
    for cp, seq in decomp:
        entries.append((cp, len(pool), len(seq)))
        pool.extend(seq)

    out.write("const DecompEntry kDecomp[] = {\n")
    for cp, off, ln in entries:
        out.write(f"    {{0x{cp:X}, {off}, {ln}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kDecompCount = {len(entries)};\n\n")

    out.write("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 8):
        row = ", ".join(f"0x{v:X}" for v in pool[i : i + 8])
        out.write(f"    {row},\n")
    out.write("};\n\n")

    out.write("const CccEntry kCcc[] = {\n")
    for cp, k in ccc:
        out.write(f"    {{0x{cp:X}, {k}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kCccCount = {len(ccc)};\n\n")

    out.write("const CompEntry kComp[] = {\n")
    for a, b, c in comp:
        out.write(f"    {{(std::uint64_t(0x{a:X}) << 32) | 0x{b:X}, 0x{c:X}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kCompCount = {len(comp)};\n\n")

    out.write("}  // namespace bp::unicode_data\n")


if __name__ == "__main__":
    main()
