"""Finite metric spaces backed by an explicit distance matrix.

A space is either loaded from a full matrix or from Euclidean coordinates;
coordinates are expanded to a matrix once at construction so that all
downstream code sees a single representation. Validation is a separate,
reporting operation (:func:`validate_metric`) rather than a constructor
check, so that deliberately broken matrices can be built and diagnosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError

# Comparison tolerances used throughout the package: distances are 64-bit
# floats and irrational values (sqrt(2), sqrt(7)) appear in closed forms, so
# equality always means "within relative 1e-9, absolute 1e-12 near zero".
REL_TOL = 1e-9
ABS_TOL = 1e-12


def close(a: float, b: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_)


@dataclass(frozen=True)
class MetricViolation:
    """First invariant failure found in a matrix.

    ``kind`` is one of NEGATIVE, ASYMMETRY, NONZERO_DIAGONAL, VIOLATION
    (triangle inequality); ``points`` holds the offending indices and
    ``slack`` the signed amount by which the inequality failed.
    """

    kind: str
    points: tuple[int, ...]
    slack: float = 0.0

    def __str__(self) -> str:
        pts = ",".join(str(p) for p in self.points)
        return f"{self.kind}({pts}) slack={self.slack:.3e}"


@dataclass(frozen=True)
class MetricCheck:
    ok: bool
    violation: Optional[MetricViolation] = None


@dataclass(frozen=True)
class MetricSpace:
    """Point set with pairwise distances.

    ``dist`` is the full matrix; ``coords`` is retained only when the space
    was built from Euclidean coordinates, so serialization can round-trip
    the original geometry.
    """

    dist: np.ndarray
    coords: Optional[np.ndarray] = None

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] == 0:
            raise ValidationError("metric space needs at least one point")
        if not np.all(np.isfinite(d)):
            raise ValidationError("distance matrix contains NaN or infinity")
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        if self.coords is not None:
            c = np.asarray(self.coords, dtype=np.float64)
            if c.ndim != 2 or c.shape[0] != d.shape[0]:
                raise ValidationError("coordinates do not match point count")
            c = c.copy()
            c.setflags(write=False)
            object.__setattr__(self, "coords", c)

    @property
    def point_count(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_matrix(cls, rows) -> "MetricSpace":
        return cls(dist=np.asarray(rows, dtype=np.float64))

    @classmethod
    def from_coords(cls, coords) -> "MetricSpace":
        """Build from Euclidean coordinates (any dimension)."""
        c = np.asarray(coords, dtype=np.float64)
        if c.ndim != 2:
            raise ValidationError("coordinates must be a 2-D array of point vectors")
        if not np.all(np.isfinite(c)):
            raise ValidationError("coordinates contain NaN or infinity")
        diff = c[:, None, :] - c[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=-1))
        return cls(dist=dist, coords=c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricSpace):
            return NotImplemented
        if not np.array_equal(self.dist, other.dist):
            return False
        if (self.coords is None) != (other.coords is None):
            return False
        return self.coords is None or np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.dist.shape[0], self.dist.tobytes()))


def validate_metric(space: MetricSpace) -> MetricCheck:
    """Check symmetry, nonnegativity, zero diagonal and the triangle inequality.

    Triangle slack is tolerated up to relative 1e-9 (absolute 1e-12).  The
    first violating pair or triple in index order is reported.
    """
    d = space.dist
    n = d.shape[0]

    neg = np.argwhere(d < -ABS_TOL)
    if neg.size:
        p, q = map(int, neg[0])
        return MetricCheck(False, MetricViolation("NEGATIVE", (p, q), slack=float(d[p, q])))

    asym = np.argwhere(np.abs(d - d.T) > REL_TOL * np.maximum(np.abs(d), np.abs(d.T)) + ABS_TOL)
    if asym.size:
        p, q = map(int, asym[0])
        return MetricCheck(False, MetricViolation("ASYMMETRY", (p, q), slack=float(d[p, q] - d[q, p])))

    diag = np.abs(np.diagonal(d))
    bad = np.argwhere(diag > ABS_TOL)
    if bad.size:
        p = int(bad[0][0])
        return MetricCheck(False, MetricViolation("NONZERO_DIAGONAL", (p,), slack=float(d[p, p])))

    # d[p,r] <= d[p,q] + d[q,r], scanned p-major so the report is deterministic
    for p in range(n):
        via = d[p, :, None] + d  # via[q, r] = d(p,q) + d(q,r)
        lhs = d[p, None, :]
        excess = lhs - via  # > 0 means violated
        tol = REL_TOL * np.maximum(np.abs(lhs), np.abs(via)) + ABS_TOL
        viol = np.argwhere(excess > tol)
        if viol.size:
            q, r = map(int, viol[0])
            return MetricCheck(
                False,
                MetricViolation("VIOLATION", (p, q, r), slack=float(excess[q, r])),
            )
    return MetricCheck(True, None)


def require_valid_metric(space: MetricSpace) -> None:
    check = validate_metric(space)
    if not check.ok:
        raise ValidationError(f"not a metric: {check.violation}", code=check.violation.kind)


def metric_closure(weights: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths of a symmetric nonnegative weight matrix.

    Used to turn arbitrary edge weights into a metric (min-plus closure).
    """
    d = np.asarray(weights, dtype=np.float64).copy()
    n = d.shape[0]
    np.fill_diagonal(d, 0.0)
    for m in range(n):
        np.minimum(d, d[:, m, None] + d[None, m, :], out=d)
    return d
