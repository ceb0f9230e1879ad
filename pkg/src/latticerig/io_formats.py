"""Bit-exact text formats and figure emitters for frameworks.

Three text formats:

* framefile -- legacy 2D bar list. One line ``v1,v2`` per bar with
  ``v = x + n*y`` and ``v1 < v2``, bars ordered by id pair. Cannot carry
  isolated joints.
* sparsematrix -- legacy 2D rigidity-matrix triplet file. One line
  ``c1,c2,e1,e2,e3,e4`` per bar where ``c`` anchors the 1-based column of a
  joint (two columns per joint, joints numbered by ascending id over the
  surviving joints) and the entries are the coordinate differences, then
  their negatives.
* canonical -- lossless dimension-general format::

      dim <d>
      size <v> <e>
      <v lines of d integer coordinates>
      <e lines of two joint indices>

All writers emit ASCII with single line feeds and a trailing newline, and
are deterministic byte-for-byte for a given framework.
"""

from __future__ import annotations

from .core import Framework, FrameworkError


class FormatError(ValueError):
    """Malformed file content."""


def _require_2d(framework: Framework):
    if framework.dimension != 2:
        raise FormatError("this format only holds 2-dimensional frameworks")


def _grid_ids(framework: Framework, n: int) -> list[int]:
    _require_2d(framework)
    ids = []
    for x, y in framework.joints:
        if not (0 <= x < n and 0 <= y < n):
            raise FormatError(f"joint ({x},{y}) is outside the {n}x{n} grid")
        ids.append(x + n * y)
    return ids


def write_framefile(framework: Framework, n: int) -> str:
    """Serialize the bar list of a 2D framework on the n x n grid."""
    ids = _grid_ids(framework, n)
    pairs = sorted(
        (min(ids[i], ids[j]), max(ids[i], ids[j]))
        for i, j in framework.bars
    )
    return "".join(f"{v1},{v2}\n" for v1, v2 in pairs)


def read_framefile(text: str, n: int) -> Framework:
    """Parse a framefile back into a framework.

    Joints are the ids that occur in some bar, in ascending id order;
    isolated joints of the original framework are not recoverable.
    """
    limit = n * n
    id_pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'v1,v2', got {line!r}")
        try:
            v1, v2 = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer id") from exc
        if not (0 <= v1 < limit and 0 <= v2 < limit):
            raise FormatError(f"line {lineno}: id outside [0, {limit})")
        if not v1 < v2:
            raise FormatError(f"line {lineno}: ids must satisfy v1 < v2")
        id_pairs.append((v1, v2))
    used = sorted({v for pair in id_pairs for v in pair})
    index = {v: k for k, v in enumerate(used)}
    joints = tuple((v % n, v // n) for v in used)
    bars = tuple((index[v1], index[v2]) for v1, v2 in id_pairs)
    return Framework(2, joints, bars)


def write_sparsematrix(framework: Framework) -> str:
    """Serialize the rigidity-matrix triplets of a 2D framework.

    Joints are ranked by ascending id (row-major (y, x) order); joint with
    rank p owns matrix columns 2p-1 and 2p, 1-based. Grid size cancels out
    of the format, so none is needed.
    """
    _require_2d(framework)
    order = sorted(range(len(framework.joints)),
                   key=lambda i: (framework.joints[i][1], framework.joints[i][0]))
    place = {joint: rank + 1 for rank, joint in enumerate(order)}
    keyed = []
    for i, j in framework.bars:
        if place[i] > place[j]:
            i, j = j, i
        (x1, y1), (x2, y2) = framework.joints[i], framework.joints[j]
        keyed.append((place[i], place[j], x1 - x2, y1 - y2))
    keyed.sort()
    return "".join(
        f"{2 * p1 - 1},{2 * p2 - 1},{dx},{dy},{-dx},{-dy}\n"
        for p1, p2, dx, dy in keyed
    )


def write_canonical(framework: Framework) -> str:
    """Serialize any framework losslessly."""
    lines = [
        f"dim {framework.dimension}",
        f"size {len(framework.joints)} {len(framework.bars)}",
    ]
    lines.extend(" ".join(str(c) for c in p) for p in framework.joints)
    lines.extend(f"{i} {j}" for i, j in framework.bars)
    return "\n".join(lines) + "\n"


def read_canonical(text: str) -> Framework:
    """Parse the canonical format; exact inverse of write_canonical."""
    lines = text.splitlines()
    if len(lines) < 2 or not lines[0].startswith("dim ") \
            or not lines[1].startswith("size "):
        raise FormatError("expected 'dim d' and 'size v e' header lines")
    try:
        d = int(lines[0].split()[1])
        v, e = (int(t) for t in lines[1].split()[1:3])
    except (IndexError, ValueError) as exc:
        raise FormatError("malformed header") from exc
    if len(lines) != 2 + v + e:
        raise FormatError(
            f"expected {2 + v + e} lines for v={v}, e={e}, got {len(lines)}"
        )
    try:
        joints = tuple(
            tuple(int(t) for t in lines[2 + k].split()) for k in range(v)
        )
        bars = tuple(
            tuple(int(t) for t in lines[2 + v + k].split()) for k in range(e)
        )
    except ValueError as exc:
        raise FormatError("non-integer field") from exc
    for k, bar in enumerate(bars):
        if len(bar) != 2:
            raise FormatError(f"bar line {k}: expected two indices")
    try:
        return Framework(d, joints, bars)
    except FrameworkError as exc:
        raise FormatError(str(exc)) from exc


def draw_svg(framework: Framework, scale: float = 40.0) -> str:
    """Render a 2D framework as SVG: one line per bar, one circle per joint.

    The y-axis points upward, as on paper, so the image is flipped from
    SVG's screen coordinates.
    """
    _require_2d(framework)
    margin = 0.5
    joints = framework.joints
    if joints:
        xs = [p[0] for p in joints]
        ys = [p[1] for p in joints]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
    else:
        min_x = max_x = min_y = max_y = 0
    width = (max_x - min_x + 2 * margin) * scale
    height = (max_y - min_y + 2 * margin) * scale

    def sx(x):
        return (x - min_x + margin) * scale

    def sy(y):
        return (max_y - y + margin) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        '<g stroke="black" stroke-width="1.5" fill="black">',
    ]
    for i, j in framework.bars:
        (x1, y1), (x2, y2) = joints[i], joints[j]
        parts.append(
            f'<line x1="{sx(x1):.1f}" y1="{sy(y1):.1f}" '
            f'x2="{sx(x2):.1f}" y2="{sy(y2):.1f}"/>'
        )
    radius = scale * 0.08
    for x, y in joints:
        parts.append(f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="{radius:.1f}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def adjacency_image(framework: Framework, block: int = 1) -> str:
    """Adjacency matrix of the bar graph as a plain (P2) PGM raster.

    block=1 draws the raw 0/1 matrix, black squares for bars. For larger
    blocks each pixel covers a block x block tile and its darkness scales
    linearly with the tile's bar density, the densest tile rendering black
    and empty tiles white.
    """
    if block < 1:
        raise ValueError("block size must be positive")
    v = len(framework.joints)
    side = -(-v // block) if v else 0
    counts = [[0] * side for _ in range(side)]
    for i, j in framework.bars:
        counts[i // block][j // block] += 1
        counts[j // block][i // block] += 1
    cells = [[0] * side for _ in range(side)]
    for r in range(side):
        rows_in = min(block, v - r * block)
        for c in range(side):
            cols_in = min(block, v - c * block)
            cells[r][c] = counts[r][c] / (rows_in * cols_in)
    peak = max((x for row in cells for x in row), default=0.0)
    lines = ["P2", f"{side} {side}", "255"]
    for r in range(side):
        if peak > 0:
            values = [255 - round(255 * cells[r][c] / peak) for c in range(side)]
        else:
            values = [255] * side
        lines.append(" ".join(str(x) for x in values))
    return "\n".join(lines) + "\n"
