"""Monotone non-increasing relations on [0, 1] that may contain vertical segments."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PseudoFunction:
    """A non-increasing relation given by knots ``(x, y_low, y_high)``.

    At a knot the relation is the whole segment ``[y_low, y_high]``.  Between
    consecutive knots it is the straight line from the bottom of the left
    knot ``(x_i, y_low_i)`` to the top of the right one ``(x_j, y_high_j)``,
    so the relation stays connected.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple((float(x), float(lo), float(hi)) for x, lo, hi in self.points)
        object.__setattr__(self, "points", pts)
        for x, lo, hi in pts:
            if lo > hi:
                raise ValueError(f"knot at x={x}: y_low {lo} > y_high {hi}")
        xs = [p[0] for p in pts]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("knot abscissae must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs):
        """Build from ``(x, y)`` pairs and ``(x, y_low, y_high)`` triples."""
        pts = []
        for p in pairs:
            if len(p) == 2:
                pts.append((p[0], p[1], p[1]))
            else:
                pts.append(tuple(p))
        return cls(tuple(pts))

    @classmethod
    def from_function(cls, f, xs):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(f(xs), dtype=float)
        return cls(tuple((x, y, y) for x, y in zip(xs, ys)))

    @property
    def xs(self):
        return np.array([p[0] for p in self.points])

    @property
    def lows(self):
        return np.array([p[1] for p in self.points])

    @property
    def highs(self):
        return np.array([p[2] for p in self.points])

    def bounds(self, x):
        """Return ``(y_low, y_high)`` of the relation above ``x``."""
        x = np.asarray(x, dtype=float)
        xs, lows, highs = self.xs, self.lows, self.highs
        if len(xs) == 0:
            raise ValueError("the empty relation has no values")
        if len(xs) == 1:
            return np.full_like(x, lows[0]), np.full_like(x, highs[0])
        xc = np.clip(x, xs[0], xs[-1])
        j = np.clip(np.searchsorted(xs, xc, side="right"), 1, len(xs) - 1)
        i = j - 1
        t = (xc - xs[i]) / (xs[j] - xs[i])
        y = lows[i] + t * (highs[j] - lows[i])
        at_left = xc == xs[i]
        at_right = xc == xs[j]
        lo = np.where(at_left, lows[i], np.where(at_right, lows[j], y))
        hi = np.where(at_left, highs[i], np.where(at_right, highs[j], y))
        return lo, hi

    def __call__(self, x):
        lo, hi = self.bounds(x)
        out = 0.5 * (lo + hi)
        return float(out) if out.ndim == 0 else out

    def side(self, x, y, tol=1e-12):
        """-1 where ``y`` is strictly below the relation, +1 above, 0 on it."""
        lo, hi = self.bounds(x)
        y = np.asarray(y, dtype=float)
        return np.where(y < lo - tol, -1, np.where(y > hi + tol, 1, 0))

    def _groups(self, x_tol):
        groups = []
        for x, lo, hi in self.points:
            if groups and x - groups[-1][0] <= x_tol:
                g = groups[-1]
                groups[-1] = (g[0], min(g[1], lo), max(g[2], hi))
            else:
                groups.append((x, lo, hi))
        return groups

    def has_vertical_segments(self, x_tol=1e-9, y_tol=1e-9):
        return any(hi - lo > y_tol for _, lo, hi in self._groups(x_tol))

    def is_non_increasing(self, x_tol=1e-9, y_tol=1e-9):
        g = self._groups(x_tol)
        return all(p[1] - q[2] >= -y_tol for p, q in zip(g, g[1:]))

    def strictly_decreasing(self, x_tol=1e-9, y_tol=1e-9):
        """No vertical segments and no flat runs, both up to the tolerances."""
        if self.has_vertical_segments(x_tol, y_tol):
            return False
        g = self._groups(x_tol)
        return all(p[1] - q[2] > y_tol for p, q in zip(g, g[1:]))

    def is_symmetric(self, tol=1e-9, samples=257):
        """Check that ``(x, y)`` on the relation implies ``(y, x)`` on it."""
        xs = np.unique(np.concatenate([self.xs, np.linspace(self.xs[0], self.xs[-1], samples)]))
        lo, hi = self.bounds(xs)
        for ys in (lo, hi, 0.5 * (lo + hi)):
            if np.any(self.side(ys, xs, tol) != 0):
                return False
        return True

    def __len__(self):
        return len(self.points)

    def fixed_point(self, iterations=200):
        """The abscissa where the relation meets the diagonal."""
        left, right = float(self.xs[0]), float(self.xs[-1])
        for _ in range(iterations):
            mid = 0.5 * (left + right)
            if mid == left or mid == right:
                break
            _, hi = self.bounds(mid)
            if mid > hi:
                right = mid
            else:
                left = mid
        lo, hi = self.bounds(right)
        if lo <= right <= hi:
            return right
        return left
