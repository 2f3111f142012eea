"""Ordinal sums of uninorms over nested frames ⟨a, b, c, d⟩ around e.

A finite list of summands is valid when the intervals [a_k, b_k] tile [0, e],
the intervals [c_k, d_k] tile [e, 1], and the two tilings are ordered in
opposite directions.  The summands then nest: the outermost has a = 0 and
d = 1, each next one starts where the previous one's inner edges b, c are,
and the innermost has b = c = e.
"""

from dataclasses import dataclass, field

import numpy as np

from .operators import ConstructionError, Operator
from .scaling import ScaleMap

_EPS = 1e-12


@dataclass(frozen=True)
class SummandSpec:
    a: float
    b: float
    c: float
    d: float
    op: Operator
    v_override: float = None

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.v_override is not None:
            object.__setattr__(self, "v_override", float(self.v_override))

    @property
    def left_nonempty(self):
        return self.a < self.b

    @property
    def right_nonempty(self):
        return self.c < self.d


@dataclass(frozen=True)
class OrdinalSumUninormSpec:
    e: float
    summands: tuple
    boundary_values: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "e", float(self.e))
        object.__setattr__(self, "summands", tuple(self.summands))
        object.__setattr__(self, "boundary_values",
                           tuple((float(b), float(v)) for b, v in self.boundary_values))

    def boundary_value(self, b):
        for point, value in self.boundary_values:
            if point == b:
                return value
        return None


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    summands: tuple = ()

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def codes(self):
        return [v.code for v in self.violations]

    def __str__(self):
        return "pass" if self.ok else "; ".join(str(v) for v in self.violations)


def _fmt(s):
    return f"⟨{s.a!r}, {s.b!r}, {s.c!r}, {s.d!r}⟩"


def _check_tiling(spans, lo, hi, side):
    """Violations for open intervals that must be disjoint and tile [lo, hi]."""
    out = []
    spans = sorted(spans)
    for (a1, b1, k1), (a2, b2, k2) in zip(spans, spans[1:]):
        if a2 < b1 - _EPS:
            out.append(Violation(f"disjoint_{side}", f"intervals ({a1!r}, {b1!r}) and ({a2!r}, {b2!r}) overlap",
                                 (k1, k2)))
    pos = lo
    for a, b, k in spans:
        if a > pos + _EPS:
            out.append(Violation(f"coverage_{side}", f"[{pos!r}, {a!r}] is not covered", (k,)))
        pos = max(pos, b)
    if pos < hi - _EPS:
        out.append(Violation(f"coverage_{side}", f"[{pos!r}, {hi!r}] is not covered", ()))
    return out


def nesting_order(spec):
    """Summand indices from the outermost frame to the innermost."""
    return sorted(range(len(spec.summands)), key=lambda k: (spec.summands[k].a, -spec.summands[k].d))


def _resolve_v(spec, order):
    values = {}
    problems = []
    s = spec.summands
    for pos, k in enumerate(order):
        sk = s[k]
        if sk.b == sk.c:
            values[k] = sk.b
        elif sk.v_override is not None:
            values[k] = sk.v_override
        elif pos + 1 < len(order) and abs(s[order[pos + 1]].a - sk.b) <= _EPS:
            succ = s[order[pos + 1]].op
            values[k] = sk.c if succ.is_disjunctive() else sk.b
        elif spec.boundary_value(sk.b) is not None:
            values[k] = spec.boundary_value(sk.b)
        else:
            problems.append(Violation("v_unresolvable",
                                      f"no successor summand starts at b={sk.b!r} and no value is given for it",
                                      (k,)))
    return values, problems


def validate_spec(spec):
    """Check every precondition of the construction; never raises."""
    out = []
    e = spec.e
    s = spec.summands
    if not 0.0 < e < 1.0:
        out.append(Violation("neutral", f"e={e!r} must lie in (0, 1)"))
    if not s:
        out.append(Violation("empty", "at least one summand is required"))
        return ValidationReport(tuple(out))
    for k, sk in enumerate(s):
        if not (0.0 <= sk.a <= sk.b <= e <= sk.c <= sk.d <= 1.0):
            out.append(Violation("frame_order", f"summand {k} {_fmt(sk)} needs 0 <= a <= b <= e <= c <= d <= 1",
                                 (k,)))
        if not (sk.left_nonempty or sk.right_nonempty):
            out.append(Violation("empty_summand", f"summand {k} {_fmt(sk)} has both intervals empty", (k,)))
            continue
        ne = sk.op.neutral
        if sk.left_nonempty and sk.right_nonempty:
            ok, need = 0.0 < ne < 1.0, "a proper uninorm"
        elif sk.left_nonempty:
            ok, need = 0.0 < ne <= 1.0, "a t-norm or a proper uninorm"
        else:
            ok, need = 0.0 <= ne < 1.0, "a t-conorm or a proper uninorm"
        if not ok:
            out.append(Violation("properness", f"summand {k} {_fmt(sk)} needs {need}, got neutral {ne!r}", (k,)))
    out += _check_tiling([(sk.a, sk.b, k) for k, sk in enumerate(s) if sk.left_nonempty], 0.0, e, "t")
    out += _check_tiling([(sk.c, sk.d, k) for k, sk in enumerate(s) if sk.right_nonempty], e, 1.0, "c")
    for k, sk in enumerate(s):
        for i, si in enumerate(s):
            if i <= k:
                continue
            for p, q in ((k, i), (i, k)):
                sp, sq = s[p], s[q]
                if (sp.b <= sq.a + _EPS) != (sp.c >= sq.d - _EPS):
                    out.append(Violation("anti_comonotone",
                                         f"summands {p} {_fmt(sp)} and {q} {_fmt(sq)}: b_{p} <= a_{q} "
                                         f"does not match c_{p} >= d_{q}", (k, i)))
                    break
    if out:
        return ValidationReport(tuple(out))
    order = nesting_order(spec)
    first, last = s[order[0]], s[order[-1]]
    if first.a != 0.0 or first.d != 1.0 or abs(last.b - e) > _EPS or abs(last.c - e) > _EPS:
        out.append(Violation("nesting", "frames do not nest from [0, 1] down to {e}"))
    for k, i in zip(order, order[1:]):
        if abs(s[i].a - s[k].b) > _EPS or abs(s[i].d - s[k].c) > _EPS:
            out.append(Violation("nesting", f"summand {i} {_fmt(s[i])} does not start at the inner edges of "
                                            f"summand {k} {_fmt(s[k])}", (k, i)))
    _, problems = _resolve_v(spec, order)
    out += problems
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class _Frame:
    a: float
    b: float
    c: float
    d: float
    op: Operator
    scale: ScaleMap


@dataclass(frozen=True)
class OrdinalSumUninorm(Operator):
    """Ordinal sum of uninorms; evaluation follows the case list in order."""

    spec: OrdinalSumUninormSpec
    _frames: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        report = validate_spec(self.spec)
        if not report.ok:
            raise ConstructionError(f"invalid ordinal sum: {report}")
        order = nesting_order(self.spec)
        values, _ = _resolve_v(self.spec, order)
        frames = []
        for k in order:
            s = self.spec.summands[k]
            frames.append(_Frame(s.a, s.b, s.c, s.d, s.op, ScaleMap(s.a, s.b, s.c, s.d, values[k], s.op.neutral)))
        object.__setattr__(self, "_frames", tuple(frames))

    @property
    def neutral(self):
        return self.spec.e

    def v_values(self):
        """Resolved v_k per summand, in the order the summands were given."""
        values, _ = _resolve_v(self.spec, nesting_order(self.spec))
        return [values[k] for k in range(len(self.spec.summands))]

    def _eval(self, x, y):
        e = self.spec.e
        out = np.full_like(x, np.nan)
        todo = np.ones(x.shape, dtype=bool)

        m = x == e
        out[m] = y[m]
        todo &= ~m
        m = todo & (y == e)
        out[m] = x[m]
        todo &= ~m

        for f in self._frames:
            in_x = ((x >= f.a) & (x < f.b)) | ((x > f.c) & (x <= f.d))
            in_y = ((y >= f.a) & (y < f.b)) | ((y > f.c) & (y <= f.d))
            m = todo & in_x & in_y
            if np.any(m):
                sm = f.scale
                u = f.op._eval(sm.inverse(x[m]), sm.inverse(y[m]))
                out[m] = np.clip(sm.forward(u), f.a, f.d)
                todo &= ~m

        for f in self._frames:
            inner_x = (x >= f.b) & (x <= f.c)
            inner_y = (y >= f.b) & (y <= f.c)
            outer_x = (x >= f.a) & (x <= f.d) & ~inner_x
            outer_y = (y >= f.a) & (y <= f.d) & ~inner_y
            m = todo & inner_y & outer_x
            out[m] = x[m]
            todo &= ~m
            m = todo & inner_x & outer_y
            out[m] = y[m]
            todo &= ~m

        # The min/max cases on [b_k, c_k]^2 need b_k to be an accumulation
        # point of the b_i, which a finite summand list never has.
        for f in self._frames:
            m = todo & (((x == f.b) & (y == f.c)) | ((x == f.c) & (y == f.b)))
            if np.any(m):
                value = self.spec.boundary_value(f.b)
                if value is None:
                    raise ConstructionError(f"no value for the corner ({f.b!r}, {f.c!r})")
                out[m] = value
                todo &= ~m

        if np.any(todo):
            i = int(np.argmax(todo))
            raise AssertionError(f"ordinal sum case analysis does not cover ({x[i]!r}, {y[i]!r})")
        return out


def ordinal_sum_uninorm(spec):
    return OrdinalSumUninorm(spec)
