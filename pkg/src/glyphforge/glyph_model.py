"""Letter geometry: outlines, styling, rasterization, vectorization, extrusion.

Raster conventions used throughout the engine:
  * glyph space is [0,1]^2 with y pointing down; an outline rasterized at
    W x H maps glyph (x, y) to pixel coordinates (x*W, y*H)
  * a CoverageMask is a float32 array of shape (H, W) with antialiased
    coverage in [0, 1]; pixel (row i, col j) has center (j+0.5, i+0.5)
  * a HeightField is a float32 array of shape (H, W), elevations in [0, 1]
"""

import json
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

SUPERSAMPLE = 4
CUBIC_FLATTEN_STEPS = 16
COORD_SLACK = 0.25  # outline control points may wander this far outside [0,1]


class LetterLabel(IntEnum):
    """The 22 letter classes, integer codes fixed by enumeration order."""

    alep = 0
    bet = 1
    gimel = 2
    dalet = 3
    he = 4
    waw = 5
    zayin = 6
    het = 7
    tet = 8
    yod = 9
    kap = 10
    lamed = 11
    mem = 12
    nun = 13
    samek = 14
    ayin = 15
    pe = 16
    sade = 17
    qop = 18
    resh = 19
    shin = 20
    taw = 21


LETTER_NAMES = tuple(label.name for label in LetterLabel)


class GlyphParseError(ValueError):
    """Malformed glyph library document."""


class GlyphSetError(ValueError):
    """Library is missing letters or declares one twice."""


class GeometryError(ValueError):
    """Outline violates structural invariants (e.g. unclosed path)."""


class EmptyMaskError(ValueError):
    """Mask has no pixel at or above the tracing iso level."""


@dataclass(frozen=True)
class Segment:
    """One path step: a straight line or a cubic Bezier to `to`."""

    kind: str  # "line" | "cubic"
    to: tuple
    c1: tuple = None
    c2: tuple = None


@dataclass(frozen=True)
class Path:
    start: tuple
    segments: tuple

    def control_points(self):
        pts = [self.start]
        for seg in self.segments:
            if seg.kind == "cubic":
                pts.append(seg.c1)
                pts.append(seg.c2)
            pts.append(seg.to)
        return pts

    def is_closed(self):
        return bool(self.segments) and self.segments[-1].to == self.start


@dataclass(frozen=True)
class GlyphOutline:
    """Closed vector paths in glyph space plus the fill rule joining them."""

    paths: tuple
    fill_rule: str = "nonzero"

    def control_points(self):
        pts = []
        for path in self.paths:
            pts.extend(path.control_points())
        return pts

    def validate(self):
        if self.fill_rule not in ("nonzero", "evenodd"):
            raise GeometryError(f"unknown fill rule {self.fill_rule!r}")
        if not self.paths:
            raise GeometryError("outline has no paths")
        for k, path in enumerate(self.paths):
            if not path.is_closed():
                raise GeometryError(f"path {k} is not closed")
        lo, hi = -COORD_SLACK, 1.0 + COORD_SLACK
        for x, y in self.control_points():
            if not (lo <= x <= hi and lo <= y <= hi):
                raise GeometryError(
                    f"control point ({x}, {y}) outside [{lo}, {hi}]^2"
                )
        return self


@dataclass(frozen=True)
class StyleParams:
    """Per-sample letterform styling."""

    aspect_ratio: float = 1.0
    stroke_contrast: float = 0.6
    slant_deg: float = 0.0
    relief_depth: float = 1.0

    def validate(self):
        if not self.aspect_ratio > 0:
            raise ValueError("aspect_ratio must be > 0")
        if not 0.0 <= self.stroke_contrast <= 1.0:
            raise ValueError("stroke_contrast must be in [0, 1]")
        if not -30.0 <= self.slant_deg <= 30.0:
            raise ValueError("slant_deg must be in [-30, 30]")
        if not 0.0 < self.relief_depth <= 1.0:
            raise ValueError("relief_depth must be in (0, 1]")
        return self


# ---------------------------------------------------------------------------
# Library file format


def _point(obj, what):
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    ):
        raise GlyphParseError(f"{what}: expected [x, y] pair, got {obj!r}")
    return (float(obj[0]), float(obj[1]))


def _parse_path(steps, where):
    if not isinstance(steps, list) or not steps:
        raise GlyphParseError(f"{where}: path must be a non-empty list")
    head = steps[0]
    if not isinstance(head, dict) or head.get("kind") != "move":
        raise GlyphParseError(f"{where}: path must begin with a move step")
    start = _point(head.get("to"), f"{where} move")
    segments = []
    for n, step in enumerate(steps[1:], start=1):
        if not isinstance(step, dict):
            raise GlyphParseError(f"{where} step {n}: expected object")
        kind = step.get("kind")
        if kind == "line":
            segments.append(Segment("line", _point(step.get("to"), f"{where} step {n}")))
        elif kind == "cubic":
            segments.append(
                Segment(
                    "cubic",
                    _point(step.get("to"), f"{where} step {n}"),
                    _point(step.get("c1"), f"{where} step {n} c1"),
                    _point(step.get("c2"), f"{where} step {n} c2"),
                )
            )
        elif kind == "move":
            raise GlyphParseError(f"{where} step {n}: move only allowed first")
        else:
            raise GlyphParseError(f"{where} step {n}: unknown kind {kind!r}")
    path = Path(start, tuple(segments))
    if not path.is_closed():
        raise GeometryError(f"{where}: unclosed path (start != final point)")
    return path


def _reject_duplicates(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise GlyphSetError(f"duplicate letter {key!r} in glyph library")
        seen.add(key)
    return dict(pairs)


def parse_glyph_library(text):
    """Parse a glyph-spec JSON document into a label -> outline map.

    The document must define exactly one outline for each of the 22 letters.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except GlyphSetError:
        raise
    except ValueError as exc:
        raise GlyphParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GlyphParseError("top level must be an object keyed by letter name")
    unknown = [k for k in doc if k not in LETTER_NAMES]
    if unknown:
        raise GlyphSetError(f"unknown letter names: {sorted(unknown)}")
    missing = [name for name in LETTER_NAMES if name not in doc]
    if missing:
        raise GlyphSetError(f"missing letters: {missing}")
    library = {}
    for name in LETTER_NAMES:
        entry = doc[name]
        if not isinstance(entry, dict):
            raise GlyphParseError(f"{name}: entry must be an object")
        fill = entry.get("fill_rule", "nonzero")
        if fill not in ("nonzero", "evenodd"):
            raise GlyphParseError(f"{name}: bad fill_rule {fill!r}")
        raw_paths = entry.get("paths")
        if not isinstance(raw_paths, list) or not raw_paths:
            raise GlyphParseError(f"{name}: paths must be a non-empty list")
        paths = tuple(
            _parse_path(steps, f"{name} path {i}") for i, steps in enumerate(raw_paths)
        )
        library[LetterLabel[name]] = GlyphOutline(paths, fill).validate()
    return library


def serialize_glyph_library(library):
    """Inverse of parse_glyph_library; exact floats so round trips are stable."""
    doc = {}
    for label in LetterLabel:
        outline = library[label]
        paths = []
        for path in outline.paths:
            steps = [{"kind": "move", "to": list(path.start)}]
            for seg in path.segments:
                if seg.kind == "line":
                    steps.append({"kind": "line", "to": list(seg.to)})
                else:
                    steps.append(
                        {
                            "kind": "cubic",
                            "c1": list(seg.c1),
                            "c2": list(seg.c2),
                            "to": list(seg.to),
                        }
                    )
            paths.append(steps)
        doc[label.name] = {"fill_rule": outline.fill_rule, "paths": paths}
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------------------
# Styling


def style_transform(point, style):
    """The documented pre-normalization affine: x-scale then slant shear."""
    x, y = point
    x = x * style.aspect_ratio + math.tan(math.radians(style.slant_deg)) * (1.0 - y)
    return (x, y)


def apply_style(outline, style):
    """Scale/shear an outline per StyleParams, refitting to [0,1]^2 if needed.

    Identity parameters leave every control point untouched.  stroke_contrast
    does not move control points here; it modulates stroke widths when the
    bundled letterforms are turned into outlines (see letterforms module).
    """
    style.validate()
    identity = style.aspect_ratio == 1.0 and style.slant_deg == 0.0
    if identity:
        return outline

    def mapped(p):
        return style_transform(p, style)

    paths = []
    for path in outline.paths:
        segs = []
        for seg in path.segments:
            if seg.kind == "cubic":
                segs.append(Segment("cubic", mapped(seg.to), mapped(seg.c1), mapped(seg.c2)))
            else:
                segs.append(Segment("line", mapped(seg.to)))
        paths.append(Path(mapped(path.start), tuple(segs)))
    styled = GlyphOutline(tuple(paths), outline.fill_rule)

    pts = np.array(styled.control_points())
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    if (lo >= 0.0).all() and (hi <= 1.0).all():
        return styled
    w = max(hi[0] - lo[0], 1e-12)
    h = max(hi[1] - lo[1], 1e-12)
    s = min(1.0, 1.0 / w, 1.0 / h)
    tx = (1.0 - s * w) / 2.0 - s * lo[0]
    ty = (1.0 - s * h) / 2.0 - s * lo[1]

    def fit(p):
        return (p[0] * s + tx, p[1] * s + ty)

    refit = []
    for path in styled.paths:
        segs = []
        for seg in path.segments:
            if seg.kind == "cubic":
                segs.append(Segment("cubic", fit(seg.to), fit(seg.c1), fit(seg.c2)))
            else:
                segs.append(Segment("line", fit(seg.to)))
        refit.append(Path(fit(path.start), tuple(segs)))
    return GlyphOutline(tuple(refit), outline.fill_rule)


# ---------------------------------------------------------------------------
# Rasterization


def _flatten_path(path, scale_x, scale_y):
    """Path -> polygon vertices in pixel coordinates (closing vertex omitted)."""
    pts = [(path.start[0] * scale_x, path.start[1] * scale_y)]
    cursor = path.start
    for seg in path.segments:
        if seg.kind == "line":
            pts.append((seg.to[0] * scale_x, seg.to[1] * scale_y))
        else:
            p0, p1, p2, p3 = cursor, seg.c1, seg.c2, seg.to
            for k in range(1, CUBIC_FLATTEN_STEPS + 1):
                t = k / CUBIC_FLATTEN_STEPS
                mt = 1.0 - t
                x = (
                    mt * mt * mt * p0[0]
                    + 3 * mt * mt * t * p1[0]
                    + 3 * mt * t * t * p2[0]
                    + t * t * t * p3[0]
                )
                y = (
                    mt * mt * mt * p0[1]
                    + 3 * mt * mt * t * p1[1]
                    + 3 * mt * t * t * p2[1]
                    + t * t * t * p3[1]
                )
                pts.append((x * scale_x, y * scale_y))
        cursor = seg.to
    if pts[-1] == pts[0]:
        pts.pop()
    return np.array(pts, dtype=np.float64)


def rasterize(outline, width, height):
    """Scanline-fill an outline into a (height, width) coverage mask.

    Coverage is the fraction of a 4x4 subsample grid inside the outline under
    its fill rule, so values are multiples of 1/16 and exactly 1.0 on fully
    covered pixels.
    """
    if width < 8 or height < 8:
        raise ValueError("rasterize needs width and height >= 8")
    outline.validate()

    x0s, y0s, x1s, y1s = [], [], [], []
    for path in outline.paths:
        poly = _flatten_path(path, width, height)
        if len(poly) < 3:
            continue
        nxt = np.roll(poly, -1, axis=0)
        x0s.append(poly[:, 0])
        y0s.append(poly[:, 1])
        x1s.append(nxt[:, 0])
        y1s.append(nxt[:, 1])
    mask = np.zeros((height, width), dtype=np.float32)
    if not x0s:
        return mask
    x0 = np.concatenate(x0s)
    y0 = np.concatenate(y0s)
    x1 = np.concatenate(x1s)
    y1 = np.concatenate(y1s)

    keep = y0 != y1  # horizontal edges never cross a scanline
    x0, y0, x1, y1 = x0[keep], y0[keep], x1[keep], y1[keep]
    if x0.size == 0:
        return mask

    ss = SUPERSAMPLE
    row_lo = max(0, int(math.floor(min(y0.min(), y1.min()))))
    row_hi = min(height, int(math.ceil(max(y0.max(), y1.max()))))
    if row_hi <= row_lo:
        return mask

    ys = (np.arange(row_lo * ss, row_hi * ss, dtype=np.float64) + 0.5) / ss
    ymin = np.minimum(y0, y1)[:, None]
    ymax = np.maximum(y0, y1)[:, None]
    hit = (ys >= ymin) & (ys < ymax)

    slope = (x1 - x0) / (y1 - y0)
    edge_idx, row_idx = np.nonzero(hit)
    xs = x0[edge_idx] + (ys[row_idx] - y0[edge_idx]) * slope[edge_idx]
    dirs = np.where(y1 > y0, 1, -1).astype(np.int32)[edge_idx]

    # first subsample column whose center (k + 0.5)/ss lies right of the
    # crossing; crossings beyond the canvas land in a discard bucket
    k = np.floor(xs * ss - 0.5).astype(np.int64) + 1
    np.clip(k, 0, width * ss, out=k)

    nrows = row_hi - row_lo
    diff = np.zeros((nrows * ss, width * ss + 1), dtype=np.int32)
    if outline.fill_rule == "nonzero":
        np.add.at(diff, (row_idx, k), dirs)
        winding = np.cumsum(diff[:, :-1], axis=1)
        inside = winding != 0
    else:
        np.add.at(diff, (row_idx, k), 1)
        winding = np.cumsum(diff[:, :-1], axis=1)
        inside = (winding & 1).astype(bool)

    block = inside.reshape(nrows, ss, width, ss)
    mask[row_lo:row_hi] = block.mean(axis=(1, 3), dtype=np.float32)
    return mask


# ---------------------------------------------------------------------------
# Vectorization (coverage mask -> outline)


def _marching_squares(values, iso=0.5):
    """Trace closed iso-contours of a 2D field sampled at pixel centers.

    Returns a list of (N, 2) float arrays of (x, y) pixel coordinates in
    row-major discovery order.  The field is padded with zeros so regions
    touching the border close along it.
    """
    f = np.pad(np.asarray(values, dtype=np.float64), 1, constant_values=0.0)
    hot = f >= iso
    nr, nc = f.shape

    def vertex(edge):
        axis, i, j = edge
        if axis == 0:  # horizontal lattice edge (i, j)-(i, j+1)
            v0, v1 = f[i, j], f[i, j + 1]
            t = (iso - v0) / (v1 - v0)
            return (j + t - 0.5, i - 0.5)
        v0, v1 = f[i, j], f[i + 1, j]
        t = (iso - v0) / (v1 - v0)
        return (j - 0.5, i + t - 0.5)

    # cell (i, j) spans lattice corners (i,j) (i,j+1) (i+1,j+1) (i+1,j)
    links = {}

    def add_pair(cell, e1, e2):
        links.setdefault(e1, []).append((cell, e2))
        links.setdefault(e2, []).append((cell, e1))

    ta = hot[:-1, :-1]
    tb = hot[:-1, 1:]
    tc = hot[1:, 1:]
    td = hot[1:, :-1]
    active = (ta != tb) | (tb != tc) | (tc != td)
    for i, j in zip(*np.nonzero(active)):
        a, b, c, d = ta[i, j], tb[i, j], tc[i, j], td[i, j]
        top = (0, i, j)
        bottom = (0, i + 1, j)
        left = (1, i, j)
        right = (1, i, j + 1)
        crossed = []
        if a != b:
            crossed.append(top)
        if b != c:
            crossed.append(right)
        if d != c:
            crossed.append(bottom)
        if a != d:
            crossed.append(left)
        cell = (i, j)
        if len(crossed) == 2:
            add_pair(cell, crossed[0], crossed[1])
        else:  # saddle: split by the cell-center average
            center_hot = (f[i, j] + f[i, j + 1] + f[i + 1, j] + f[i + 1, j + 1]) / 4.0 >= iso
            if a == c:  # corners a, c share state; pairing depends on center
                if center_hot == a:
                    add_pair(cell, top, right)
                    add_pair(cell, bottom, left)
                else:
                    add_pair(cell, top, left)
                    add_pair(cell, bottom, right)

    contours = []
    visited = set()
    limit = len(links) + 1
    for start_edge in sorted(links.keys(), key=lambda e: (e[1], e[2], e[0])):
        if start_edge in visited:
            continue
        loop = [start_edge]
        visited.add(start_edge)
        prev_cell, nxt = links[start_edge][0]
        steps = 0
        while nxt != start_edge and steps < limit:
            steps += 1
            loop.append(nxt)
            visited.add(nxt)
            entries = links[nxt]
            if len(entries) < 2:  # dangling edge: inconsistent field, bail out
                break
            cell2, partner = entries[0] if entries[0][0] != prev_cell else entries[1]
            prev_cell = cell2
            nxt = partner
        contours.append(np.array([vertex(e) for e in loop], dtype=np.float64))
    return contours


def _perp_dist(pts, a, b):
    d = b - a
    n = math.hypot(d[0], d[1])
    if n == 0.0:
        return np.hypot(pts[:, 0] - a[0], pts[:, 1] - a[1])
    return np.abs((pts[:, 0] - a[0]) * d[1] - (pts[:, 1] - a[1]) * d[0]) / n


def _douglas_peucker(pts, tol):
    """Simplify an open polyline, keeping endpoints."""
    n = len(pts)
    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[-1] = True
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j <= i + 1:
            continue
        seg = pts[i + 1 : j]
        dist = _perp_dist(seg, pts[i], pts[j])
        k = int(np.argmax(dist))
        if dist[k] > tol:
            mid = i + 1 + k
            keep[mid] = True
            stack.append((i, mid))
            stack.append((mid, j))
    return pts[keep]


def simplify_closed(pts, tol):
    """Douglas-Peucker for a closed polygon (anchor = two extreme points)."""
    if tol <= 0 or len(pts) <= 4:
        return pts
    far = int(np.argmax(np.hypot(pts[:, 0] - pts[0, 0], pts[:, 1] - pts[0, 1])))
    if far == 0:
        return pts
    first = _douglas_peucker(pts[: far + 1], tol)
    second = _douglas_peucker(np.vstack([pts[far:], pts[:1]]), tol)
    return np.vstack([first[:-1], second[:-1]])


def fit_outline_from_mask(mask, simplify_tol=0.5):
    """Vectorize a coverage mask: iso-0.5 contours, simplified, normalized.

    The traced polygons are simplified with Douglas-Peucker at simplify_tol
    pixels and normalized by the mask dimensions into glyph space.  Fitted
    outlines use the even-odd rule so holes need no orientation bookkeeping.
    """
    values = np.asarray(mask, dtype=np.float64)
    if simplify_tol < 0:
        raise ValueError("simplify_tol must be >= 0")
    if not (values >= 0.5).any():
        raise EmptyMaskError("no pixel with coverage >= 0.5")
    h, w = values.shape
    paths = []
    for contour in _marching_squares(values, iso=0.5):
        if len(contour) < 3:
            continue
        simple = simplify_closed(contour, simplify_tol)
        if len(simple) < 3:
            continue
        norm = [(x / w, y / h) for x, y in simple]
        segs = tuple(Segment("line", p) for p in norm[1:]) + (Segment("line", norm[0]),)
        paths.append(Path(norm[0], segs))
    if not paths:
        raise EmptyMaskError("no traceable contour at iso 0.5")
    return GlyphOutline(tuple(paths), "evenodd").validate()


# ---------------------------------------------------------------------------
# Extrusion


def extrude(mask, style):
    """Lift coverage linearly into an elevation grid.

    The flat lift keeps elevation == coverage; relief_depth is applied later
    as the shading height scale, so the [0,1] range is preserved exactly.
    """
    style.validate()
    return np.asarray(mask, dtype=np.float32).copy()
