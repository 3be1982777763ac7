"""Bundled parametric letterforms for the 22 Old Aramaic letter classes.

Each letter is authored as a set of strokes (polyline spines tagged thick or
thin) in a unit box with y pointing down.  Outlines are produced by stroking
the spines: every spine segment becomes a quad and every spine vertex a
16-gon disk, all wound the same way so the nonzero fill rule takes their
union.  Stroke contrast scales the thin strokes' width relative to thick.
"""

import math

import numpy as np

from .glyph_model import (
    GlyphOutline,
    LetterLabel,
    Path,
    Segment,
    parse_glyph_library,
)

THICK_WIDTH = 0.11
DEFAULT_STROKE_CONTRAST = 0.6
_DISK_SIDES = 16


def _ring(cx, cy, r, n=20):
    """Closed circular spine (for eye/ring letters)."""
    return [
        (cx + r * math.cos(2 * math.pi * k / n), cy + r * math.sin(2 * math.pi * k / n))
        for k in range(n)
    ]


# (weight, spine, closed) per stroke; weight is "thick" or "thin"
_FORMS = {
    "alep": [
        ("thick", [(0.78, 0.10), (0.16, 0.46)], False),
        ("thick", [(0.78, 0.82), (0.16, 0.46)], False),
        ("thick", [(0.64, 0.04), (0.64, 0.96)], False),
    ],
    "bet": [
        ("thin", [(0.62, 0.08), (0.28, 0.24), (0.62, 0.40)], False),
        ("thick", [(0.62, 0.08), (0.62, 0.70), (0.30, 0.94)], False),
    ],
    "gimel": [
        ("thick", [(0.32, 0.94), (0.56, 0.08)], False),
        ("thick", [(0.56, 0.08), (0.76, 0.38)], False),
    ],
    "dalet": [
        ("thin", [(0.50, 0.14), (0.24, 0.60), (0.76, 0.60), (0.50, 0.14)], False),
        ("thick", [(0.50, 0.60), (0.50, 0.86)], False),
    ],
    "he": [
        ("thick", [(0.70, 0.06), (0.70, 0.94)], False),
        ("thin", [(0.70, 0.12), (0.26, 0.12)], False),
        ("thin", [(0.70, 0.38), (0.30, 0.38)], False),
        ("thin", [(0.70, 0.64), (0.30, 0.64)], False),
    ],
    "waw": [
        ("thin", [(0.28, 0.08), (0.31, 0.26), (0.50, 0.34), (0.69, 0.26), (0.72, 0.08)], False),
        ("thick", [(0.50, 0.34), (0.50, 0.94)], False),
    ],
    "zayin": [
        ("thin", [(0.28, 0.12), (0.72, 0.12)], False),
        ("thin", [(0.28, 0.88), (0.72, 0.88)], False),
        ("thick", [(0.56, 0.12), (0.44, 0.88)], False),
    ],
    "het": [
        ("thick", [(0.28, 0.08), (0.28, 0.92)], False),
        ("thick", [(0.72, 0.08), (0.72, 0.92)], False),
        ("thin", [(0.28, 0.24), (0.72, 0.24)], False),
        ("thin", [(0.28, 0.50), (0.72, 0.50)], False),
        ("thin", [(0.28, 0.76), (0.72, 0.76)], False),
    ],
    "tet": [
        ("thin", _ring(0.50, 0.50, 0.36), True),
        ("thin", [(0.50, 0.18), (0.50, 0.82)], False),
        ("thin", [(0.18, 0.50), (0.82, 0.50)], False),
    ],
    "yod": [
        ("thick", [(0.72, 0.08), (0.36, 0.28)], False),
        ("thin", [(0.36, 0.28), (0.66, 0.46)], False),
        ("thick", [(0.66, 0.46), (0.32, 0.92)], False),
    ],
    "kap": [
        ("thin", [(0.26, 0.10), (0.52, 0.44)], False),
        ("thin", [(0.56, 0.04), (0.52, 0.44)], False),
        ("thin", [(0.80, 0.16), (0.52, 0.44)], False),
        ("thick", [(0.52, 0.44), (0.38, 0.94)], False),
    ],
    "lamed": [
        ("thick", [(0.38, 0.92), (0.60, 0.38)], False),
        ("thin", [(0.60, 0.38), (0.52, 0.14), (0.32, 0.10)], False),
    ],
    "mem": [
        ("thin", [(0.16, 0.32), (0.30, 0.08), (0.44, 0.30), (0.58, 0.06), (0.70, 0.24)], False),
        ("thick", [(0.70, 0.24), (0.42, 0.94)], False),
    ],
    "nun": [
        ("thin", [(0.60, 0.06), (0.40, 0.24), (0.60, 0.42)], False),
        ("thick", [(0.60, 0.42), (0.42, 0.94)], False),
    ],
    "samek": [
        ("thick", [(0.52, 0.10), (0.52, 0.94)], False),
        ("thin", [(0.26, 0.16), (0.78, 0.16)], False),
        ("thin", [(0.26, 0.36), (0.78, 0.36)], False),
        ("thin", [(0.26, 0.56), (0.78, 0.56)], False),
    ],
    "ayin": [
        ("thin", _ring(0.50, 0.48, 0.30), True),
    ],
    "pe": [
        ("thick", [(0.38, 0.92), (0.44, 0.42)], False),
        ("thin", [(0.44, 0.42), (0.52, 0.16), (0.72, 0.20)], False),
    ],
    "sade": [
        ("thin", [(0.28, 0.14), (0.52, 0.34), (0.76, 0.12)], False),
        ("thick", [(0.52, 0.34), (0.50, 0.62), (0.30, 0.92)], False),
    ],
    "qop": [
        ("thin", _ring(0.50, 0.32, 0.26), True),
        ("thick", [(0.50, 0.58), (0.50, 0.96)], False),
    ],
    "resh": [
        ("thin", [(0.36, 0.10), (0.68, 0.28), (0.36, 0.46)], False),
        ("thick", [(0.36, 0.10), (0.36, 0.94)], False),
    ],
    "shin": [
        ("thick", [(0.16, 0.68), (0.33, 0.26), (0.50, 0.66), (0.67, 0.24), (0.84, 0.66)], False),
    ],
    "taw": [
        ("thick", [(0.28, 0.22), (0.72, 0.78)], False),
        ("thick", [(0.72, 0.22), (0.28, 0.78)], False),
    ],
}


def _positive_winding(pts):
    arr = np.asarray(pts)
    s = np.sum(arr[:, 0] * np.roll(arr[:, 1], -1) - np.roll(arr[:, 0], -1) * arr[:, 1])
    return pts if s >= 0 else pts[::-1]


def _poly_path(pts):
    pts = _positive_winding(list(pts))
    segs = tuple(Segment("line", tuple(p)) for p in pts[1:]) + (
        Segment("line", tuple(pts[0])),
    )
    return Path(tuple(pts[0]), segs)


def _disk_path(cx, cy, r):
    pts = [
        (cx + r * math.cos(2 * math.pi * k / _DISK_SIDES),
         cy + r * math.sin(2 * math.pi * k / _DISK_SIDES))
        for k in range(_DISK_SIDES)
    ]
    return _poly_path(pts)


def _stroke_paths(spine, half_width, closed):
    paths = []
    pts = list(spine)
    pairs = list(zip(pts, pts[1:]))
    if closed:
        pairs.append((pts[-1], pts[0]))
    for (x0, y0), (x1, y1) in pairs:
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy)
        if norm == 0.0:
            continue
        nx, ny = -dy / norm * half_width, dx / norm * half_width
        quad = [
            (x0 + nx, y0 + ny),
            (x1 + nx, y1 + ny),
            (x1 - nx, y1 - ny),
            (x0 - nx, y0 - ny),
        ]
        paths.append(_poly_path(quad))
    for x, y in pts:
        paths.append(_disk_path(x, y, half_width))
    return paths


def build_glyph_outline(label, stroke_contrast=DEFAULT_STROKE_CONTRAST):
    """Stroke one letterform into a fillable outline.

    Thick strokes use the full base width, thin strokes the base width scaled
    by stroke_contrast (floored at 0.25 so low contrast never erases a
    stroke entirely).
    """
    if not 0.0 <= stroke_contrast <= 1.0:
        raise ValueError("stroke_contrast must be in [0, 1]")
    name = LetterLabel(label).name
    paths = []
    for weight, spine, closed in _FORMS[name]:
        width = THICK_WIDTH if weight == "thick" else THICK_WIDTH * max(stroke_contrast, 0.25)
        paths.extend(_stroke_paths(spine, width / 2.0, closed))
    return GlyphOutline(tuple(paths), "nonzero").validate()


def default_glyph_library(stroke_contrast=DEFAULT_STROKE_CONTRAST):
    return {label: build_glyph_outline(label, stroke_contrast) for label in LetterLabel}


class GlyphLibrary:
    """Letter outlines for the pipeline, parametric or parsed from a file.

    The bundled library regenerates outlines per stroke_contrast draw; a
    library parsed from a glyph-spec document holds static paths, so contrast
    requests leave them unchanged.
    """

    def __init__(self, outlines=None):
        self._static = outlines  # None -> parametric bundled forms

    @classmethod
    def bundled(cls):
        return cls(None)

    @classmethod
    def from_text(cls, text):
        return cls(parse_glyph_library(text))

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def outline(self, label, stroke_contrast=None):
        label = LetterLabel(label)
        if self._static is not None:
            return self._static[label]
        contrast = DEFAULT_STROKE_CONTRAST if stroke_contrast is None else stroke_contrast
        return build_glyph_outline(label, contrast)

    def as_mapping(self, stroke_contrast=DEFAULT_STROKE_CONTRAST):
        if self._static is not None:
            return dict(self._static)
        return default_glyph_library(stroke_contrast)
