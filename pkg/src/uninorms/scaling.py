"""Piecewise linear embedding of [0, 1] into [c, a) + {v} + (b, d]."""

from dataclasses import dataclass

import numpy as np

from .generators import DomainError


@dataclass(frozen=True)
class ScaleMap:
    """Linear on [0, e) onto [c, a), sends e to v, linear on (e, 1] onto (b, d].

    A degenerate side (``c == a`` or ``b == d``) collapses to a point; the
    operator being transported is then only used on its other half.
    """

    c: float
    a: float
    b: float
    d: float
    v: float
    e: float

    def __post_init__(self):
        if not (0.0 <= self.c <= self.a <= self.b <= self.d <= 1.0):
            raise ValueError(f"need 0 <= c <= a <= b <= d <= 1, got {self}")
        if not (self.a <= self.v <= self.b):
            raise ValueError(f"v={self.v} outside [a, b]=[{self.a}, {self.b}]")
        if not (0.0 <= self.e <= 1.0):
            raise ValueError(f"e={self.e} outside [0, 1]")

    def forward(self, x):
        x = np.asarray(x, dtype=float)
        c, a, b, d, v, e = self.c, self.a, self.b, self.d, self.v, self.e
        low = c + (a - c) * (x / e if e > 0 else np.zeros_like(x))
        high = b + (d - b) * ((x - e) / (1.0 - e) if e < 1 else np.zeros_like(x))
        # Interior points must stay interior: a value that rounds onto an end
        # of its piece would be read as belonging to the neighbouring frame.
        if a > c:
            low = np.where((x > 0) & (low <= c), np.nextafter(c, a), low)
            low = np.where(low >= a, np.nextafter(a, c), low)
        if d > b:
            high = np.where((x < 1) & (high >= d), np.nextafter(d, b), high)
            high = np.where(high <= b, np.nextafter(b, d), high)
        out = np.where(x < e, np.minimum(low, a), np.where(x > e, np.maximum(high, b), v))
        return out

    def inverse(self, y):
        """Inverse of :meth:`forward`; ``v`` goes back to ``e``.

        The closed end points ``a`` and ``b`` are accepted as limits of the
        two linear pieces.  Anything else in the gap (a, b) raises.
        """
        y = np.asarray(y, dtype=float)
        c, a, b, d, v, e = self.c, self.a, self.b, self.d, self.v, self.e
        is_v = y == v
        low_part = (y >= c) & (y <= a)
        high_part = (y >= b) & (y <= d)
        bad = ~(is_v | low_part | high_part)
        if np.any(bad):
            raise DomainError(f"{float(y[bad].flat[0])!r} is not in the image of {self}")
        with np.errstate(invalid="ignore", divide="ignore"):
            low = e * (y - c) / (a - c) if a > c else np.full_like(y, e)
            high = e + (1.0 - e) * (y - b) / (d - b) if d > b else np.full_like(y, e)
        out = np.where(is_v, e, np.where(low_part, np.clip(low, 0.0, e), np.clip(high, e, 1.0)))
        return out


def scale_forward(smap, x):
    out = smap.forward(x)
    return float(out) if out.ndim == 0 else out


def scale_inverse(smap, y):
    out = smap.inverse(y)
    return float(out) if out.ndim == 0 else out
