"""Regenerate src/windbound/data/regular_polygons.json.

Vertex k of the n-gon is (cos 2*pi*k/n, sin 2*pi*k/n) rounded to the nearest
multiple of 2**-20 (ties to even), evaluated with 50 significant digits.
"""

import json
from pathlib import Path

import mpmath

DENOM = 1 << 20
mpmath.mp.dps = 50


def table(n):
    out = []
    for k in range(n):
        t = 2 * mpmath.pi * k / n
        out.append([int(mpmath.nint(mpmath.cos(t) * DENOM)), int(mpmath.nint(mpmath.sin(t) * DENOM))])
    return out


if __name__ == "__main__":
    doc = {"denominator": DENOM, "polygons": {str(n): table(n) for n in range(3, 65)}}
    path = Path(__file__).resolve().parents[1] / "src" / "windbound" / "data" / "regular_polygons.json"
    path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    print(f"wrote {path}")
