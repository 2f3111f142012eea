"""Binary operators on the unit square.

Each operator is an immutable dataclass.  ``op(x, y)`` broadcasts like numpy
and returns a float for scalar input; subclasses only implement ``_eval`` on
flat float arrays of equal length, which is what nested operators call on
the subsets routed to them.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .extended import clash, ext_add, ext_min
from .generators import GenKind, GeneratorSpec
from .pseudo import PseudoFunction
from .scaling import ScaleMap

# Relative width of the band around the level set g(x) + g(y) = 0 that is
# treated as lying on it; absorbs round-off of the generator arithmetic.
CURVE_SNAP = 1e-12

# Distance below which a point counts as lying on an internal switch curve.
CURVE_TOL = 1e-12


class ConstructionError(ValueError):
    """An operator was built from arguments that violate its preconditions."""


class Mode(Enum):
    CONJUNCTIVE = "conjunctive"
    DISJUNCTIVE = "disjunctive"


class Operator:
    """Base class of every evaluable operator on [0, 1]^2."""

    neutral = None

    def _eval(self, x, y):
        raise NotImplementedError

    def evaluate(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        shape = x.shape
        out = self._eval(x.ravel().copy(), y.ravel().copy())
        return out.reshape(shape)

    def __call__(self, x, y):
        out = self.evaluate(x, y)
        return float(out) if out.ndim == 0 else out

    def annihilator(self):
        return float(self.evaluate(1.0, 0.0))

    def is_disjunctive(self):
        return self.annihilator() == 1.0


def _with_neutral(x, y, e, out):
    return np.where(y == e, x, np.where(x == e, y, out))


@dataclass(frozen=True)
class GeneratedTNorm(Operator):
    gen: GeneratorSpec

    @property
    def neutral(self):
        return 1.0

    def _eval(self, x, y):
        g = self.gen
        s = ext_min(g.forward(0.0), ext_add(g.forward(x), g.forward(y)))
        return _with_neutral(x, y, 1.0, g.pseudo_inverse(s))


@dataclass(frozen=True)
class GeneratedTConorm(Operator):
    gen: GeneratorSpec

    @property
    def neutral(self):
        return 0.0

    def _eval(self, x, y):
        g = self.gen
        s = ext_min(g.forward(1.0), ext_add(g.forward(x), g.forward(y)))
        return _with_neutral(x, y, 0.0, g.pseudo_inverse(s))


@dataclass(frozen=True)
class Minimum(Operator):
    @property
    def neutral(self):
        return 1.0

    def _eval(self, x, y):
        return np.minimum(x, y)


@dataclass(frozen=True)
class Maximum(Operator):
    @property
    def neutral(self):
        return 0.0

    def _eval(self, x, y):
        return np.maximum(x, y)


def _check_disjoint(intervals, what):
    spans = sorted(intervals)
    for (a, b) in spans:
        if not (0.0 <= a < b <= 1.0):
            raise ConstructionError(f"{what} interval ({a}, {b}) must be a non-empty part of [0, 1]")
    for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
        if a2 < b1:
            raise ConstructionError(f"{what} intervals ({a1}, {b1}) and ({a2}, {b2}) overlap")


@dataclass(frozen=True)
class OrdinalSumT(Operator):
    """Ordinal sum of t-norms: scaled summands on [a, b)^2, min elsewhere."""

    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple((float(a), float(b), op) for a, b, op in self.summands))
        _check_disjoint([(a, b) for a, b, _ in self.summands], "t-norm summand")

    @property
    def neutral(self):
        return 1.0

    def _eval(self, x, y):
        out = np.minimum(x, y)
        for a, b, op in self.summands:
            m = (x >= a) & (x < b) & (y >= a) & (y < b)
            if np.any(m):
                w = b - a
                val = a + w * op._eval((x[m] - a) / w, (y[m] - a) / w)
                out[m] = np.clip(val, a, b)
        return out


@dataclass(frozen=True)
class OrdinalSumC(Operator):
    """Ordinal sum of t-conorms: scaled summands on (c, d]^2, max elsewhere."""

    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple((float(c), float(d), op) for c, d, op in self.summands))
        _check_disjoint([(c, d) for c, d, _ in self.summands], "t-conorm summand")

    @property
    def neutral(self):
        return 0.0

    def _eval(self, x, y):
        out = np.maximum(x, y)
        for c, d, op in self.summands:
            m = (x > c) & (x <= d) & (y > c) & (y <= d)
            if np.any(m):
                w = d - c
                val = c + w * op._eval((x[m] - c) / w, (y[m] - c) / w)
                out[m] = np.clip(val, c, d)
        return out


@dataclass(frozen=True)
class Representable(Operator):
    """U(x, y) = g^-1(g(x) + g(y)) with the annihilator fixed by ``mode``."""

    gen: GeneratorSpec
    mode: Mode = Mode.CONJUNCTIVE

    @property
    def neutral(self):
        return self.gen.zero()

    def _eval(self, x, y):
        g = self.gen
        gx, gy = g.forward(x), g.forward(y)
        corner = clash(gx, gy)
        s = ext_add(gx, gy, allow=corner)
        finite = np.isfinite(s)
        scale = np.maximum(1.0, np.maximum(np.abs(np.where(finite, gx, 0.0)), np.abs(np.where(finite, gy, 0.0))))
        cancel = finite & (np.sign(gx) * np.sign(gy) < 0)
        s = np.where(cancel & (np.abs(s) <= CURVE_SNAP * scale), 0.0, s)
        e = self.neutral
        out = np.where(s == 0.0, e, g.pseudo_inverse(np.where(corner, 0.0, s)))
        out = np.where(corner, 0.0 if self.mode is Mode.CONJUNCTIVE else 1.0, out)
        return _with_neutral(x, y, e, out)


@dataclass(frozen=True)
class UMinComposite(Operator):
    tnorm: Operator
    tconorm: Operator
    e: float

    def __post_init__(self):
        _composite_check(self)

    @property
    def neutral(self):
        return self.e

    def _eval(self, x, y):
        return _composite_eval(self, x, y, np.minimum(x, y))


@dataclass(frozen=True)
class UMaxComposite(Operator):
    tnorm: Operator
    tconorm: Operator
    e: float

    def __post_init__(self):
        _composite_check(self)

    @property
    def neutral(self):
        return self.e

    def _eval(self, x, y):
        return _composite_eval(self, x, y, np.maximum(x, y))


def _composite_check(op):
    object.__setattr__(op, "e", float(op.e))
    if not 0.0 <= op.e <= 1.0:
        raise ConstructionError(f"neutral element {op.e} outside [0, 1]")
    if op.tnorm.neutral != 1.0:
        raise ConstructionError("first operand of a U_min/U_max composite must be a t-norm")
    if op.tconorm.neutral != 0.0:
        raise ConstructionError("second operand of a U_min/U_max composite must be a t-conorm")


def _composite_eval(op, x, y, out):
    e = op.e
    out = out.copy()
    if e > 0:
        m = (x <= e) & (y <= e)
        if np.any(m):
            out[m] = np.clip(e * op.tnorm._eval(x[m] / e, y[m] / e), 0.0, e)
    if e < 1:
        m = (x >= e) & (y >= e)
        if e > 0:
            m &= ~((x == e) & (y == e))
        if np.any(m):
            w = 1.0 - e
            out[m] = np.clip(e + w * op.tconorm._eval((x[m] - e) / w, (y[m] - e) / w), e, 1.0)
    return out


def _check_boundary_ends(boundary):
    lo0, hi0 = boundary.bounds(0.0)
    lo1, hi1 = boundary.bounds(1.0)
    if boundary.xs[0] != 0.0 or boundary.xs[-1] != 1.0:
        raise ConstructionError("switch curve must be given on all of [0, 1]")
    return float(lo0), float(hi0), float(lo1), float(hi1)


def _switch(boundary, x, y):
    # max only when both (x, y) and (y, x) lie above the relation; the
    # tolerance acts on the second coordinate, so asking both ways keeps the
    # result commutative next to flat pieces and vertical segments
    above = (boundary.side(x, y, CURVE_TOL) > 0) & (boundary.side(y, x, CURVE_TOL) > 0)
    return np.where(above, np.maximum(x, y), np.minimum(x, y))


@dataclass(frozen=True)
class SInternal(Operator):
    """Internal uninorm switching from min to max across a decreasing curve.

    On the curve itself the value is ``min(x, y)``.
    """

    boundary: PseudoFunction

    def __post_init__(self):
        lo0, hi0, lo1, hi1 = _check_boundary_ends(self.boundary)
        if not self.boundary.strictly_decreasing(x_tol=0.0, y_tol=0.0):
            raise ConstructionError("s-internal switch curve must be strictly decreasing")
        if abs(hi0 - 1.0) > CURVE_TOL or abs(lo1) > CURVE_TOL:
            raise ConstructionError("s-internal switch curve must run from (0, 1) to (1, 0)")
        if not self.boundary.is_symmetric():
            raise ConstructionError("s-internal switch curve must be symmetric about the diagonal")

    @property
    def neutral(self):
        return self.boundary.fixed_point()

    def _eval(self, x, y):
        return _switch(self.boundary, x, y)


@dataclass(frozen=True)
class Internal(Operator):
    """Internal uninorm whose switch relation may contain vertical segments."""

    boundary: PseudoFunction

    def __post_init__(self):
        _check_boundary_ends(self.boundary)
        if not self.boundary.is_non_increasing(x_tol=0.0, y_tol=0.0):
            raise ConstructionError("internal switch relation must be non-increasing")
        if not self.boundary.is_symmetric():
            raise ConstructionError("internal switch relation must be symmetric about the diagonal")

    @property
    def neutral(self):
        return self.boundary.fixed_point()

    def _eval(self, x, y):
        return _switch(self.boundary, x, y)


@dataclass(frozen=True)
class Rescaled(Operator):
    """Pull ``base`` back through a scale map: inverse(base(f(x), f(y)))."""

    base: Operator
    scale: ScaleMap

    @property
    def neutral(self):
        return self.scale.e

    def _eval(self, x, y):
        f = self.scale
        return f.inverse(self.base._eval(f.forward(x), f.forward(y)))


def tnorm_from_generator(gen):
    if gen.kind is not GenKind.TNORM_GEN:
        raise ConstructionError(f"{gen.label()} is not a t-norm generator")
    return GeneratedTNorm(gen)


def tconorm_from_generator(gen):
    if gen.kind is not GenKind.TCONORM_GEN:
        raise ConstructionError(f"{gen.label()} is not a t-conorm generator")
    return GeneratedTConorm(gen)


def ordinal_sum_tnorm(summands):
    return OrdinalSumT(tuple(summands))


def ordinal_sum_tconorm(summands):
    return OrdinalSumC(tuple(summands))


def representable_uninorm(gen, mode=Mode.CONJUNCTIVE):
    if gen.kind is not GenKind.UNINORM_GEN:
        raise ConstructionError(f"{gen.label()} is not a uninorm generator")
    return Representable(gen, Mode(mode))


def u_min_max(tnorm, tconorm, e, which="min"):
    if which in ("min", "MIN"):
        return UMinComposite(tnorm, tconorm, e)
    if which in ("max", "MAX"):
        return UMaxComposite(tnorm, tconorm, e)
    raise ValueError(f"which must be 'min' or 'max', not {which!r}")


def s_internal(boundary):
    if not isinstance(boundary, PseudoFunction):
        boundary = PseudoFunction.from_pairs(boundary)
    return SInternal(boundary)


def internal(boundary):
    if not isinstance(boundary, PseudoFunction):
        boundary = PseudoFunction.from_pairs(boundary)
    return Internal(boundary)


def underlying_scale_maps(e):
    """Scale maps whose pull-backs are the underlying t-norm and t-conorm."""
    return (ScaleMap(0.0, e, e, e, e, 1.0), ScaleMap(e, e, e, 1.0, e, 0.0))
