"""Rigidity matrix construction, exact and floating rank, rigidity verdicts.

The rigidity matrix of a framework with v joints and e bars in R^d is the
e x (d*v) integer matrix whose row for bar {i, j} (i < j) carries
+(p_i - p_j) in joint i's column block and -(p_i - p_j) in joint j's block.
Its nullspace is the space of infinitesimal motions; the framework is
infinitesimally rigid exactly when the rank equals d*v - C(d+1, 2),
provided the joints affinely span R^d.

Two rank routes are kept deliberately independent: `exact_rank` runs
fraction-free big-integer elimination and never touches floating point,
while `numeric_rank` counts pivots of a rank-revealing floating
factorization against a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .core import Framework, FrameworkError, MotionField

try:
    from gmpy2 import mpz, divexact
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    mpz = int

    def divexact(a, b):
        return a // b


#: Bit-size budget for any single entry produced by exact elimination.
DEFAULT_MAX_ENTRY_BITS = 8 * 1024 * 1024

#: Joint count above which `analyze(mode="auto")` switches to numeric rank.
DEFAULT_EXACT_JOINT_LIMIT = 5000

DEFAULT_NUMERIC_TOL = 1e-9


class BudgetExceededError(RuntimeError):
    """Exact elimination produced an entry above the bit-size budget."""


@dataclass(frozen=True)
class RigidityMatrix:
    """Sparse integer matrix in (row, col, value) triplets.

    Rows follow the framework's bar order (bars sorted by index pair);
    column block k*d .. k*d+d-1 belongs to joint k. Only nonzero values are
    stored.
    """

    num_rows: int
    num_cols: int
    dimension: int
    entries: tuple[tuple[int, int, int], ...]

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.num_cols for _ in range(self.num_rows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.num_rows, self.num_cols))
        for r, c, v in self.entries:
            a[r, c] = v
        return a


@dataclass(frozen=True)
class AnalysisReport:
    """Outcome of a rigidity analysis.

    `rigid` is None when no verdict is possible (joints do not affinely
    span R^d). `rank` is None when the rank computation was skipped because
    the bar count already falls short of `required_rank`.
    """

    joints: int
    bars: int
    dimension: int
    required_rank: int
    rank: int | None
    nullity: int | None
    rigid: bool | None
    mode: str
    tol: float | None = None
    fell_back: bool = False
    note: str | None = None

    @property
    def verdict(self) -> str:
        if self.rigid is None:
            return "NO VERDICT"
        return "RIGID" if self.rigid else "FLEXIBLE"


def rigidity_matrix(framework: Framework) -> RigidityMatrix:
    """Build the rigidity matrix. Rejects frameworks with no bars."""
    if not framework.bars:
        raise FrameworkError("rigidity matrix of a framework with no bars")
    d = framework.dimension
    entries = []
    for r, (i, j) in enumerate(framework.bars):
        p, q = framework.joints[i], framework.joints[j]
        for k in range(d):
            diff = p[k] - q[k]
            if diff:
                entries.append((r, i * d + k, diff))
                entries.append((r, j * d + k, -diff))
    entries.sort()
    return RigidityMatrix(
        num_rows=len(framework.bars),
        num_cols=d * len(framework.joints),
        dimension=d,
        entries=tuple(entries),
    )


def fraction_free_rank(rows, num_cols: int | None = None,
                       max_entry_bits: int = DEFAULT_MAX_ENTRY_BITS) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination.

    Bareiss pivoting: every intermediate entry is an exact minor of the
    input, so the trailing division in the update is exact and no fractions
    ever appear. Pivots are chosen by largest magnitude in the current
    column (lowest row index on ties). Rows showing a zero in the pivot
    column are left at their last-touched elimination level and rescaled
    lazily when next needed; the arithmetic is identical to the textbook
    single-step recurrence, just with the no-op scalings deferred.

    Raises BudgetExceededError if a pivot grows past `max_entry_bits` bits.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if num_cols is None:
        num_cols = len(rows[0])
    nrows = len(rows)
    # (entries, level): level = number of elimination steps already applied
    active: list[tuple[list, int]] = [([mpz(x) for x in r], 0) for r in rows]
    pivots = [mpz(1)]  # pivots[k] = pivot of step k-1; pivots[0] is a sentinel
    rank = 0
    for col in range(num_cols):
        if rank == nrows:
            break
        qk = pivots[rank]
        best = -1
        best_val = None
        for idx in range(rank, nrows):
            row, level = active[idx]
            s = row[col]
            if s:
                v = s if level == rank else divexact(s * qk, pivots[level])
                if best < 0 or abs(v) > abs(best_val):
                    best, best_val = idx, v
        if best < 0:
            continue
        prow, plevel = active[best]
        if plevel != rank:
            ql = pivots[plevel]
            prow = [divexact(x * qk, ql) for x in prow]
        active[best] = active[rank]
        piv = prow[col]
        if piv.bit_length() > max_entry_bits:
            raise BudgetExceededError(
                f"pivot at step {rank} needs {piv.bit_length()} bits "
                f"(budget {max_entry_bits})"
            )
        for idx in range(rank + 1, nrows):
            row, level = active[idx]
            s = row[col]
            if not s:
                continue
            if level != rank:
                ql = pivots[level]
                row = [divexact(x * qk, ql) for x in row]
                s = row[col]
            active[idx] = (
                [divexact(piv * x - s * y, qk) for x, y in zip(row, prow)],
                rank + 1,
            )
        active[rank] = (prow, rank)
        pivots.append(piv)
        rank += 1
    return rank


def exact_rank(matrix: RigidityMatrix,
               max_entry_bits: int = DEFAULT_MAX_ENTRY_BITS) -> int:
    """Exact rank of a rigidity matrix over the rationals. No tolerance."""
    return fraction_free_rank(matrix.to_dense(), matrix.num_cols, max_entry_bits)


def floating_rank(array: np.ndarray, tol: float = DEFAULT_NUMERIC_TOL) -> int:
    """Pivot count of a rank-revealing floating factorization.

    QR with column pivoting produces a triangular factor whose diagonal
    magnitudes are non-increasing; the rank is the number of those that
    exceed tol times the largest one.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = np.asarray(array, dtype=float)
    if a.size == 0:
        return 0
    r = scipy.linalg.qr(a, mode="r", pivoting=True, check_finite=False)[0]
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag.max() == 0.0:
        return 0
    return int((diag > tol * diag.max()).sum())


def numeric_rank(matrix: RigidityMatrix, tol: float = DEFAULT_NUMERIC_TOL) -> int:
    """Floating-point rank of a rigidity matrix at relative tolerance `tol`."""
    return floating_rank(matrix.to_array(), tol)


def required_rank(joints: int, dimension: int) -> int:
    """Rank a rigidity matrix must reach for infinitesimal rigidity."""
    return dimension * joints - math.comb(dimension + 1, 2)


def affinely_spans(framework: Framework) -> bool:
    """True iff the joints affinely span R^d (exact integer check)."""
    joints = framework.joints
    if not joints:
        return False
    d = framework.dimension
    if len(joints) <= d:
        return False
    base = joints[0]
    diffs = [[c - b for c, b in zip(p, base)] for p in joints[1:]]
    return fraction_free_rank(diffs, d) == d


def analyze(framework: Framework, mode: str = "auto",
            tol: float = DEFAULT_NUMERIC_TOL,
            exact_joint_limit: int = DEFAULT_EXACT_JOINT_LIMIT,
            max_entry_bits: int = DEFAULT_MAX_ENTRY_BITS) -> AnalysisReport:
    """Analyze infinitesimal rigidity and return an AnalysisReport.

    mode "exact" uses big-integer elimination, "numeric" the floating
    fallback, "auto" picks exact up to `exact_joint_limit` joints. If exact
    elimination blows the entry bit budget the analysis falls back to
    numeric and flags the report.

    Frameworks whose joints do not affinely span R^d get no verdict
    (rigid=None): the rank criterion presumes a full-dimensional space of
    trivial motions. Frameworks with fewer bars than the required rank are
    flexible outright and skip the rank computation.
    """
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    v = len(framework.joints)
    e = len(framework.bars)
    d = framework.dimension
    req = required_rank(v, d)
    if not affinely_spans(framework):
        return AnalysisReport(
            joints=v, bars=e, dimension=d, required_rank=req,
            rank=None, nullity=None, rigid=None, mode="none",
            note="degenerate span",
        )
    if e < req:
        return AnalysisReport(
            joints=v, bars=e, dimension=d, required_rank=req,
            rank=None, nullity=None, rigid=False, mode="none",
            note="trivially flexible",
        )
    matrix = rigidity_matrix(framework)
    use_exact = mode == "exact" or (mode == "auto" and v <= exact_joint_limit)
    fell_back = False
    if use_exact:
        try:
            rank = fraction_free_rank(matrix.to_dense(), matrix.num_cols,
                                      max_entry_bits)
            used = "exact"
            used_tol = None
        except BudgetExceededError:
            rank = numeric_rank(matrix, tol)
            used = "numeric"
            used_tol = tol
            fell_back = True
    else:
        rank = numeric_rank(matrix, tol)
        used = "numeric"
        used_tol = tol
    return AnalysisReport(
        joints=v, bars=e, dimension=d, required_rank=req,
        rank=rank, nullity=d * v - rank, rigid=(rank == req),
        mode=used, tol=used_tol, fell_back=fell_back,
    )


def motion_space_dim(framework: Framework, mode: str = "auto",
                     tol: float = DEFAULT_NUMERIC_TOL,
                     exact_joint_limit: int = DEFAULT_EXACT_JOINT_LIMIT) -> int:
    """Dimension of the infinitesimal-motion space: d*v - rank.

    Well-defined for any framework, spanning or not; a framework with no
    bars is unconstrained, so the dimension is d*v.
    """
    v = len(framework.joints)
    d = framework.dimension
    if not framework.bars:
        return d * v
    matrix = rigidity_matrix(framework)
    if mode == "numeric" or (mode == "auto" and v > exact_joint_limit):
        rank = numeric_rank(matrix, tol)
    else:
        rank = exact_rank(matrix)
    return d * v - rank


def verify_motion(framework: Framework, motion: MotionField) -> bool:
    """Exact first-order length check: (g_i - g_j) . (p_i - p_j) = 0 per bar."""
    vel = motion.velocities
    if len(vel) != len(framework.joints):
        raise FrameworkError("one velocity per joint required")
    d = framework.dimension
    if vel and len(vel[0]) != d:
        raise FrameworkError(
            f"velocity dimension {len(vel[0])} != framework dimension {d}"
        )
    for i, j in framework.bars:
        p, q = framework.joints[i], framework.joints[j]
        dot = sum((gi - gj) * (pi - qi)
                  for gi, gj, pi, qi in zip(vel[i], vel[j], p, q))
        if dot != 0:
            return False
    return True


def rational_nullspace(rows, num_cols: int | None = None) -> list[list[Fraction]]:
    """Exact nullspace basis of a matrix, one vector per free column.

    Gauss-Jordan over Fractions: reduce to RREF, then read one basis vector
    off each non-pivot column by back-substitution.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    if num_cols is None:
        num_cols = len(mat[0]) if mat else 0
    nrows = len(mat)
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(num_cols):
        sel = -1
        for i in range(r, nrows):
            if mat[i][c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_col_of_row.append(c)
        r += 1
        if r == nrows:
            break
    pivot_cols = set(pivot_col_of_row)
    basis = []
    for free in range(num_cols):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * num_cols
        vec[free] = Fraction(1)
        for row, pc in enumerate(pivot_col_of_row):
            vec[pc] = -mat[row][free]
        basis.append(vec)
    return basis


def motion_from_vector(vector, dimension: int) -> MotionField:
    """Reshape a flat nullspace vector into a per-joint MotionField."""
    if len(vector) % dimension != 0:
        raise FrameworkError("vector length is not a multiple of the dimension")
    vel = tuple(
        tuple(Fraction(x) for x in vector[k:k + dimension])
        for k in range(0, len(vector), dimension)
    )
    return MotionField(vel)


def motion_nullspace_basis(framework: Framework) -> list[MotionField]:
    """Exact basis of the framework's infinitesimal-motion space."""
    d = framework.dimension
    if not framework.bars:
        v = len(framework.joints)
        basis = []
        for k in range(d * v):
            vec = [Fraction(0)] * (d * v)
            vec[k] = Fraction(1)
            basis.append(motion_from_vector(vec, d))
        return basis
    matrix = rigidity_matrix(framework)
    vectors = rational_nullspace(matrix.to_dense(), matrix.num_cols)
    return [motion_from_vector(vec, d) for vec in vectors]


def trivial_motion_basis(framework: Framework) -> list[MotionField]:
    """The d translations and C(d,2) instantaneous rotations, restricted
    to the joints. Every one passes verify_motion on every framework."""
    d = framework.dimension
    joints = framework.joints
    fields = []
    for k in range(d):
        vel = tuple(tuple(Fraction(1 if t == k else 0) for t in range(d))
                    for _ in joints)
        fields.append(MotionField(vel))
    for k in range(d):
        for l in range(k + 1, d):
            # velocity p -> p_l * e_k - p_k * e_l, a rotation in the (k,l)-plane
            vel = tuple(
                tuple(
                    Fraction(p[l] if t == k else (-p[k] if t == l else 0))
                    for t in range(d)
                )
                for p in joints
            )
            fields.append(MotionField(vel))
    return fields
