"""Knight and (a,b)-leaper frameworks on integer lattices, plus slicing.

A leaper move changes exactly two coordinates, one by a and one by b (one
coordinate by b when a = 0). The knight is the (1,2) instance. Slices fix
one coordinate of a lattice framework; contracting deletes that coordinate,
dropping the slice into one dimension lower.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Framework, FrameworkError, MotionField
from .rigidity import AnalysisReport, analyze


def _leaper_moves(dimension: int, a: int, b: int) -> list[tuple[int, ...]]:
    """All distinct move vectors of the (a,b)-leaper in the given dimension."""
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("leap offsets must be nonnegative and not both zero")
    moves: set[tuple[int, ...]] = set()
    for i in range(dimension):
        for j in range(dimension):
            if i == j:
                continue
            for sa in (a, -a):
                for sb in (b, -b):
                    m = [0] * dimension
                    m[i] = sa
                    m[j] = sb
                    if any(m):
                        moves.add(tuple(m))
    return sorted(moves)


def _bars_from_moves(coords, index, moves, bounds) -> tuple[tuple[int, int], ...]:
    bars: set[tuple[int, int]] = set()
    for p in coords:
        i = index[p]
        for m in moves:
            q = tuple(x + dx for x, dx in zip(p, m))
            if all(0 <= x < hi for x, hi in zip(q, bounds)):
                j = index[q]
                bars.add((i, j) if i < j else (j, i))
    return tuple(sorted(bars))


def knight_2d(m: int, n: int, a: int = 1, b: int = 2) -> Framework:
    """The m x n board framework with bars between (a,b)-leaper moves.

    Joints sit at (x, y), 0 <= x < m, 0 <= y < n, listed with x varying
    fastest. For a != b and a board large enough in both directions the
    bar count is 2(m-a)(n-b) + 2(m-b)(n-a).
    """
    if m < 1 or n < 1:
        raise ValueError("board sides must be positive")
    coords = [(x, y) for y in range(n) for x in range(m)]
    index = {p: i for i, p in enumerate(coords)}
    moves = _leaper_moves(2, a, b)
    bars = _bars_from_moves(coords, index, moves, (m, n))
    return Framework(2, tuple(coords), bars)


def knight_lattice(n: int, d: int, a: int = 1, b: int = 2) -> Framework:
    """The n x ... x n lattice framework in R^d with (a,b)-leaper bars.

    Joints are all points of {0..n-1}^d, listed with coordinate 0 varying
    fastest; a bar joins two joints whose coordinates agree except in two
    places differing by a and b.
    """
    if n < 1:
        raise ValueError("lattice side must be positive")
    if d < 2:
        raise ValueError("lattice dimension must be at least 2")
    coords = []
    for idx in range(n ** d):
        c = []
        t = idx
        for _ in range(d):
            c.append(t % n)
            t //= n
        coords.append(tuple(c))
    index = {p: i for i, p in enumerate(coords)}
    moves = _leaper_moves(d, a, b)
    bars = _bars_from_moves(coords, index, moves, (n,) * d)
    return Framework(d, tuple(coords), bars)


def slice_joint_indices(framework: Framework, axis: int, level: int) -> tuple[int, ...]:
    """Parent indices of the joints whose `axis` coordinate equals `level`."""
    d = framework.dimension
    if not 0 <= axis < d:
        raise IndexError(f"axis {axis} out of range for dimension {d}")
    picked = tuple(i for i, p in enumerate(framework.joints) if p[axis] == level)
    if not picked:
        raise IndexError(f"no joint has coordinate {level} on axis {axis}")
    return picked


def slice_framework(framework: Framework, axis: int, level: int) -> Framework:
    """Induced subframework on the joints with coordinate `level` on `axis`.

    Still embedded in R^d; joints keep their relative order (use
    slice_joint_indices for the map back to parent indices).
    """
    picked = slice_joint_indices(framework, axis, level)
    remap = {old: new for new, old in enumerate(picked)}
    joints = tuple(framework.joints[i] for i in picked)
    bars = tuple(
        (remap[i], remap[j])
        for i, j in framework.bars
        if i in remap and j in remap
    )
    return Framework(framework.dimension, joints, bars)


def contract_slice(framework: Framework, axis: int, level: int) -> Framework:
    """The slice re-embedded in R^(d-1) by deleting the fixed coordinate."""
    if framework.dimension < 2:
        raise FrameworkError("cannot contract a 1-dimensional framework")
    sliced = slice_framework(framework, axis, level)
    joints = tuple(p[:axis] + p[axis + 1:] for p in sliced.joints)
    return Framework(framework.dimension - 1, joints, sliced.bars)


def project_motion(motion: MotionField, axis: int) -> MotionField:
    """Drop coordinate `axis` from every velocity.

    Applied to a motion of a slice, the result is a motion of the
    contracted slice: bars inside the slice never change the fixed
    coordinate, so the dropped component contributes nothing to the
    first-order length condition.
    """
    if not motion.velocities:
        return motion
    d = motion.dimension
    if not 0 <= axis < d:
        raise IndexError(f"axis {axis} out of range for dimension {d}")
    if d < 2:
        raise FrameworkError("cannot project a 1-dimensional motion")
    vel = tuple(v[:axis] + v[axis + 1:] for v in motion.velocities)
    return MotionField(vel)


def leaper_rigidity_criterion(a: int, b: int, m: int, n: int) -> bool:
    """Conjectured rigidity rule for the (a,b)-leaper on an m x n board:
    a+b coprime to a-b and both sides at least 2(a+b)-1."""
    return math.gcd(a + b, abs(a - b)) == 1 and min(m, n) >= 2 * (a + b) - 1


@dataclass(frozen=True)
class LeaperRecord:
    """One board of a leaper rigidity sweep."""

    a: int
    b: int
    m: int
    n: int
    rigid: bool
    predicted: bool
    report: AnalysisReport

    @property
    def agrees(self) -> bool:
        return self.rigid == self.predicted


def leaper_experiment(a: int, b: int, max_side: int | None = None,
                      mode: str = "numeric") -> list[LeaperRecord]:
    """Sweep all m x n boards up to max_side and compare observed rigidity
    with the conjectured criterion.

    Default max_side is 2(a+b)+1, one step past the conjectured threshold.
    Boards whose joints do not span the plane count as not rigid. The
    default numeric verdict is re-checked exactly whenever it disagrees
    with the prediction, so a reported mismatch is never a tolerance
    artifact. This is an experiment report, not a theorem.
    """
    if max_side is None:
        max_side = 2 * (a + b) + 1
    records = []
    for m in range(1, max_side + 1):
        for n in range(1, max_side + 1):
            fw = knight_2d(m, n, a, b)
            report = analyze(fw, mode=mode)
            rigid = report.rigid is True
            predicted = leaper_rigidity_criterion(a, b, m, n)
            if rigid != predicted and mode != "exact":
                report = analyze(fw, mode="exact")
                rigid = report.rigid is True
            records.append(LeaperRecord(a, b, m, n, rigid, predicted, report))
    return records
