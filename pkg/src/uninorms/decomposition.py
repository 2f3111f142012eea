"""Recover the ordinal-sum structure of a black-box uninorm.

The pipeline works on operators with continuous underlying t-norm and
t-conorm, zero and one rows as for representable uninorms, and a strictly
decreasing switch curve r carrying every discontinuity:

    idempotents -> gaps -> pairing through r -> extraction -> classification

and the result is checked by rebuilding the operator as an ordinal sum.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import analysis as A
from .generators import DomainError
from .ordinal import OrdinalSumUninormSpec, SummandSpec, validate_spec
from .operators import ConstructionError, Rescaled
from .ordinal import OrdinalSumUninorm
from .scaling import ScaleMap

# Neutral element given to every extracted summand.  The scale map hides the
# summand's own neutral element, so any fixed choice reproduces the operator.
SUMMAND_NEUTRAL = 0.5

# Idempotent intervals shorter than this are treated as single points.
MIN_STRETCH = 1e-6


class SummandClass(Enum):
    REPRESENTABLE = "representable"
    S_INTERNAL = "s_internal"
    INTERNAL_OTHER = "internal_other"


class PairingError(ValueError):
    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class ClosureError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class SummandFrame:
    a: float
    b: float
    c: float
    d: float
    pairing_residual: float = 0.0
    corner_value: float = None

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise ValueError(f"frame ({self.a}, {self.b}, {self.c}, {self.d}) is not ordered")

    @property
    def degenerate(self):
        return not (self.a < self.b and self.c < self.d)

    def endpoints(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class DecompositionResult:
    e: float
    frames: tuple = ()
    summand_class: tuple = ()
    normalized_ops: tuple = field(default=(), compare=False)
    recomposition_error: float = float("nan")
    diagnostics: tuple = ()

    @property
    def ok(self):
        return not self.diagnostics

    def codes(self):
        return [d.code for d in self.diagnostics]


def gap_intervals(report, e):
    """Maximal open intervals of non-idempotents below and above ``e``."""
    ivs = list(report.intervals)
    gaps_t, gaps_c = [], []
    for (_, hi), (lo, _) in zip(ivs, ivs[1:]):
        if lo <= hi:
            continue
        if hi < e < lo:
            # the neutral element is always reported, so this is unreachable
            raise ValueError(f"gap ({hi}, {lo}) straddles the neutral element {e}")
        (gaps_t if lo <= e else gaps_c).append((hi, lo))
    return gaps_t, gaps_c


def _as_callable(r):
    return r if callable(r) else (lambda x: r(x))


def pair_intervals(gaps_t, gaps_c, r, tol, stretches_t=(), stretches_c=()):
    """Match each gap below e with the gap above e that r sends it onto.

    ``stretches_t`` and ``stretches_c`` are idempotent intervals of positive
    length; they are paired the same way and become s-internal frames.
    Frames come back sorted by ``a``.
    """
    r = _as_callable(r)
    frames = []
    for kind, lows, highs in (("gap", gaps_t, gaps_c), ("idempotent interval", stretches_t, stretches_c)):
        highs = list(highs)
        for a, b in lows:
            rb, ra = float(r(b)), float(r(a))
            best, best_res = None, np.inf
            for j, (c, d) in enumerate(highs):
                res = abs(rb - c) + abs(ra - d)
                if abs(rb - c) <= tol and abs(ra - d) <= tol and res < best_res:
                    best, best_res = j, res
            if best is None:
                raise PairingError(f"{kind} ({a!r}, {b!r}) has no partner: r maps it to ({rb!r}, {ra!r})",
                                   (a, b))
            c, d = highs.pop(best)
            frames.append(SummandFrame(a, b, c, d, best_res))
        if highs:
            c, d = highs[0]
            raise PairingError(f"{kind} ({c!r}, {d!r}) above the neutral element has no partner", (c, d))
    return sorted(frames, key=lambda f: f.a)


def check_closure(op, frame, n=33, tol=1e-9):
    """Raise ClosureError unless op maps ([a,b] u [c,d])^2 into [a,b] u [c,d]."""
    a, b, c, d = frame.endpoints()
    pts = np.concatenate([np.linspace(a, b, n), np.linspace(c, d, n)])
    V = op(pts[:, None], pts[None, :])
    out = np.maximum(np.maximum(0.0, np.maximum(a - V, V - d)),
                     np.where((V > b) & (V < c), np.minimum(V - b, c - V), 0.0))
    if out.max() > tol:
        i, j = np.unravel_index(int(np.argmax(out)), out.shape)
        witness = (float(pts[i]), float(pts[j]))
        raise ClosureError(f"U{witness} = {float(V[i, j])!r} leaves [{a!r}, {b!r}] u [{c!r}, {d!r}]", witness)


@dataclass(frozen=True)
class ExtractedSummand(Rescaled):
    """A rescaled restriction that tolerates measured frame end points.

    Values of the base operator that fall within ``snap`` of the frame's
    inner edges or of ``v`` are moved onto them before pulling back, so
    round-off in the detected idempotents does not leave the image.
    """

    snap: float = 1e-9

    def _eval(self, x, y):
        f = self.scale
        u = self.base._eval(f.forward(x), f.forward(y))
        for t in (f.a, f.v, f.b):
            u = np.where(np.abs(u - t) <= self.snap, t, u)
        u = np.clip(u, f.c, f.d)
        return f.inverse(u)


def extract_summand(op, frame, neutral=SUMMAND_NEUTRAL, tol=1e-9):
    """The summand of ``op`` on ``frame``, transported back to [0, 1]^2."""
    check_closure(op, frame, tol=tol)
    a, b, c, d = frame.endpoints()
    v = frame.corner_value if frame.corner_value is not None else float(op(b, c))
    if not b - tol <= v <= c + tol:
        raise ClosureError(f"U({b!r}, {c!r}) = {v!r} is outside the frame", (b, c))
    v = min(max(v, b), c)
    return ExtractedSummand(op, ScaleMap(a, b, c, d, v, neutral), tol)


def _jumps_near_corners(op, resolution, slack=1e-6):
    jumps = A.jump_points(op, resolution)
    if len(jumps) == 0:
        return True
    x, z = jumps[:, 0], jumps[:, 1]
    near = ((np.abs(x) <= slack) & (np.abs(z - 1.0) <= slack)) | ((np.abs(x - 1.0) <= slack) & (np.abs(z) <= slack))
    return bool(np.all(near))


def classify_summand(op_norm, resolution=128, tol=1e-9):
    if A.is_internal(op_norm, resolution + 1, tol):
        _, problems = A.strict_locus(op_norm, resolution)
        return SummandClass.INTERNAL_OTHER if problems else SummandClass.S_INTERNAL
    if _jumps_near_corners(op_norm, resolution):
        return SummandClass.REPRESENTABLE
    return SummandClass.INTERNAL_OTHER


def verification_points(n=101, extra=100, seed=0):
    g = A.grid(n)
    xs, ys = np.meshgrid(g, g, indexing="ij")
    rnd = np.random.default_rng(seed).uniform(0.0, 1.0, (2, extra))
    return np.concatenate([xs.ravel(), rnd[0]]), np.concatenate([ys.ravel(), rnd[1]])


def recomposition_error(original, rebuilt):
    x, y = verification_points()
    return float(np.max(np.abs(original(x, y) - rebuilt(x, y))))


def recompose(result, e=None):
    """Rebuild an ordinal sum from a successful decomposition."""
    if result.diagnostics:
        raise ConstructionError("cannot recompose a refused decomposition")
    e = result.e if e is None else e
    summands = tuple(SummandSpec(f.a, f.b, f.c, f.d, op, f.corner_value)
                     for f, op in zip(result.frames, result.normalized_ops))
    spec = OrdinalSumUninormSpec(e, summands)
    report = validate_spec(spec)
    if not report.ok:
        raise ConstructionError(f"recovered frames do not form an ordinal sum: {report}")
    return OrdinalSumUninorm(spec)


def _refuse(e, code, message):
    return DecompositionResult(e, diagnostics=(Diagnostic(code, message),))


def decompose(op, resolution=256, tol=1e-4):
    """Decompose ``op``; refusals come back as diagnostics, never as exceptions.

    ``tol`` bounds the curve end point residuals and the pairing residuals.
    """
    e = float(op.neutral)
    if not 0.0 < e < 1.0:
        return _refuse(e, "not_proper", f"neutral element {e!r} is not in (0, 1)")
    problems = []
    if not A.in_class_N(op, 2 * resolution + 1):
        problems.append(Diagnostic("not_in_N", "U(x, 0) = 0 on [0, 1) and U(x, 1) = 1 on (0, 1] fail"))
    t_op, c_op = A.underlying_ops(op)
    for name, part in (("t-norm", t_op), ("t-conorm", c_op)):
        if not A.is_continuous(part, resolution):
            problems.append(Diagnostic("not_in_U", f"underlying {name} is not continuous"))
    if problems:
        return DecompositionResult(e, diagnostics=tuple(problems))

    _, locus_problems = A.strict_locus(op, resolution, tol=tol)
    if locus_problems:
        codes = ["jumps_off_curve" if "off the switch curve" in p else "no_strict_locus" for p in locus_problems]
        return DecompositionResult(e, diagnostics=tuple(Diagnostic(c, p) for c, p in zip(codes, locus_problems)))

    report = A.idempotent_set(op, 4 * resolution)
    gaps_t, gaps_c = gap_intervals(report, e)
    stretches = [(lo, hi) for lo, hi in report.intervals if hi - lo > MIN_STRETCH]
    st_t = [(lo, min(hi, e)) for lo, hi in stretches if lo < e and min(hi, e) > lo]
    st_c = [(max(lo, e), hi) for lo, hi in stretches if hi > e and hi > max(lo, e)]

    def r(x):
        return float(A.switch_curve(op, np.array([x]))[0])

    try:
        frames = pair_intervals(gaps_t, gaps_c, r, tol, st_t, st_c)
    except PairingError as exc:
        return _refuse(e, "pairing", str(exc))
    if not frames:
        return _refuse(e, "pairing", "no summand frames were found")
    for f in frames:
        if f.degenerate:
            return _refuse(e, "degenerate_frame", f"frame {f.endpoints()} has an empty side")

    frames = [SummandFrame(f.a, f.b, f.c, f.d, f.pairing_residual, float(op(f.b, f.c))) for f in frames]
    ops = []
    try:
        for f in frames:
            ops.append(extract_summand(op, f))
    except (ClosureError, DomainError) as exc:
        return _refuse(e, "closure", str(exc))
    classes = tuple(classify_summand(s, resolution // 2) for s in ops)
    result = DecompositionResult(e, tuple(frames), classes, tuple(ops))
    try:
        rebuilt = recompose(result)
        err = recomposition_error(op, rebuilt)
    except (ConstructionError, DomainError) as exc:
        return _refuse(e, "recomposition", str(exc))
    return DecompositionResult(e, tuple(frames), classes, tuple(ops), err)
