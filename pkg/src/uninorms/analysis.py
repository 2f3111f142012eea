"""Numerical checks on black-box operators: axioms, sections, idempotents,
discontinuities and class membership.

Everything here is a pure function of the operator and the sampling
parameters.  Grid scans are evaluated in one vectorised call and reduced with
``argmax``, so a witness is always the lexicographically smallest grid point
attaining the worst violation.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .operators import Rescaled, UMaxComposite, UMinComposite, underlying_scale_maps
from .pseudo import PseudoFunction

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

# Residual |U(x, x) - x| accepted when refining the ends of idempotent runs.
EDGE_TOL = 1e-14


def grid(n):
    return np.linspace(0.0, 1.0, int(n))


@dataclass(frozen=True)
class AxiomEntry:
    max_violation: float
    witness: tuple
    passed: bool


@dataclass(frozen=True)
class AxiomReport:
    entries: dict
    tol: float
    grid_n: int

    @property
    def passed(self):
        return all(e.passed for e in self.entries.values())

    def __getitem__(self, name):
        return self.entries[name]

    def as_dict(self):
        return {name: asdict(entry) for name, entry in self.entries.items()}


def _worst(violation, axes, tol):
    flat = int(np.argmax(violation))
    idx = np.unravel_index(flat, violation.shape)
    worst = float(violation[idx])
    witness = tuple(float(ax[i]) for ax, i in zip(axes, idx))
    return AxiomEntry(worst, witness, worst <= tol)


def axiom_report(op, grid_n=41, tol=1e-9, neutral=None):
    """Sample every uninorm axiom on a uniform grid.

    ``neutral`` overrides the element tested for neutrality.
    """
    if grid_n < 3:
        raise ValueError("grid_n must be at least 3")
    g = grid(grid_n)
    e = op.neutral if neutral is None else float(neutral)
    V = op(g[:, None], g[None, :])
    entries = {}
    entries["commutativity"] = _worst(np.abs(V - V.T), (g, g), tol)

    # a decrease between (x, y_j) and (x, y_j+1) is reported at (x, y_j)
    drop_y = np.maximum(0.0, V[:, :-1] - V[:, 1:])
    drop_x = np.maximum(0.0, V[:-1, :] - V[1:, :])
    mono = np.maximum(np.pad(drop_y, ((0, 0), (0, 1))), np.pad(drop_x, ((0, 1), (0, 0))))
    entries["monotonicity"] = _worst(mono, (g, g), tol)

    left = op(V[:, :, None], g[None, None, :])
    right = op(g[:, None, None], V[None, :, :])
    entries["associativity"] = _worst(np.abs(left - right), (g, g, g), tol)

    neut = np.maximum(np.abs(op(g, e) - g), np.abs(op(e, g) - g))
    entry = _worst(neut, (g,), tol)
    entries["neutrality"] = AxiomEntry(entry.max_violation, (entry.witness[0], e), entry.passed)

    a = op(1.0, 0.0)
    viol = min(abs(a), abs(a - 1.0))
    entries["annihilator"] = AxiomEntry(viol, (1.0, 0.0), viol <= tol)
    return AxiomReport(entries, tol, grid_n)


def section(op, x, grid_n=101):
    """Samples of z -> U(x, z) on a uniform grid."""
    return op(float(x), grid(grid_n))


def underlying_ops(op):
    """The underlying t-norm and t-conorm of a proper uninorm, on [0, 1]^2."""
    e = op.neutral
    if e == 1.0:
        raise ValueError("neutral element is 1: the operator is a t-norm already")
    if e == 0.0:
        raise ValueError("neutral element is 0: the operator is a t-conorm already")
    t_map, c_map = underlying_scale_maps(e)
    return Rescaled(op, t_map), Rescaled(op, c_map)


# --- one-dimensional searches -------------------------------------------

def bisect_predicate(pred, lo, hi, iterations=60):
    """Vectorised bisection: ``pred(lo)`` is False, ``pred(hi)`` is True.

    Returns the final ``(lo, hi)`` brackets.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        p = pred(mid)
        hi = np.where(p, mid, hi)
        lo = np.where(p, lo, mid)
    return lo, hi


def golden_max(f, lo, hi, iterations=90):
    """Vectorised golden-section search for a maximum of ``f`` on [lo, hi]."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(iterations):
        width = hi - lo
        c = hi - GOLDEN * width
        d = lo + GOLDEN * width
        keep_left = f(c) >= f(d)
        hi = np.where(keep_left, d, hi)
        lo = np.where(keep_left, lo, c)
    cands = np.stack([lo, 0.5 * (lo + hi), hi])
    vals = np.stack([f(c) for c in cands])
    best = np.argmax(vals, axis=0)
    return np.take_along_axis(cands, best[None], 0)[0]


# --- idempotents --------------------------------------------------------

@dataclass(frozen=True)
class IdempotentReport:
    intervals: tuple
    tol: float

    def contains(self, x, slack=1e-9):
        return any(lo - slack <= x <= hi + slack for lo, hi in self.intervals)

    def points(self):
        """Isolated idempotents (intervals of zero length)."""
        return [lo for lo, hi in self.intervals if hi == lo]

    def proper_intervals(self, min_length=0.0):
        return [(lo, hi) for lo, hi in self.intervals if hi - lo > min_length]


def _merge(intervals, slack):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + slack:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def idempotent_set(op, resolution=1024, tol=1e-9):
    """Locate {x : U(x, x) = x}.

    Runs of grid hits become intervals whose ends are refined by bisection;
    isolated idempotents between grid points are found as peaks of
    -|U(x, x) - x| by golden-section search around grid local maxima.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")

    def score(t):
        t = np.asarray(t, dtype=float)
        return -np.abs(op(t, t) - t)

    xs = grid(resolution + 1)
    m = score(xs)
    hit = m >= -tol
    n = len(xs)
    found = []

    in_run = np.zeros(n, dtype=bool)
    i = 0
    while i < n:
        if not hit[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and hit[j + 1]:
            j += 1
        if j > i:
            in_run[i:j + 1] = True
            lo, hi = xs[i], xs[j]
            # ends are located with a much tighter threshold than the scan so
            # that they are not biased outwards by tol / slope
            if i > 0:
                _, lo = bisect_predicate(lambda t: score(t) >= -EDGE_TOL, xs[i - 1], xs[i])
            if j < n - 1:
                hi, _ = bisect_predicate(lambda t: score(t) < -EDGE_TOL, xs[j], xs[j + 1])
            found.append((float(lo), float(hi)))
        i = j + 1

    padded = np.concatenate([[-np.inf], m, [-np.inf]])
    peak = (padded[1:-1] >= padded[:-2]) & (padded[1:-1] >= padded[2:]) & ~in_run
    idx = np.flatnonzero(peak)
    if len(idx):
        lo = xs[np.maximum(idx - 1, 0)]
        hi = xs[np.minimum(idx + 1, n - 1)]
        best = golden_max(score, lo, hi)
        better = score(best) >= m[idx]
        best = np.where(better, best, xs[idx])
        for t, s in zip(best, score(best)):
            if s >= -tol:
                found.append((float(t), float(t)))

    for t in (0.0, 1.0, float(op.neutral)):
        found.append((t, t))
    return IdempotentReport(tuple(_merge(found, 1e-9)), tol)


# --- discontinuities ----------------------------------------------------

def jump_points(op, resolution=256, jump_threshold=1e-3, iterations=40):
    """Jumps of the sections z -> U(x, z) for x on a uniform grid.

    Returns an array of rows ``(x, z, size)``.  Every grid cell whose
    increment exceeds the threshold is bisected, following the half with the
    larger increment; only increments that survive at width ~1e-12 count.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    g = grid(resolution + 1)
    V = op(g[:, None], g[None, :])
    D = V[:, 1:] - V[:, :-1]
    ii, jj = np.nonzero(D > jump_threshold)
    if len(ii) == 0:
        return np.empty((0, 3))
    x = g[ii]
    lo, hi = g[jj].copy(), g[jj + 1].copy()
    flo, fhi = V[ii, jj].copy(), V[ii, jj + 1].copy()
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fm = op(x, mid)
        go_left = (fm - flo) >= (fhi - fm)
        hi = np.where(go_left, mid, hi)
        fhi = np.where(go_left, fm, fhi)
        lo = np.where(go_left, lo, mid)
        flo = np.where(go_left, flo, fm)
    size = fhi - flo
    keep = size >= jump_threshold
    # a bracket end that never moved is a grid point and is reported exactly
    z = np.where(lo == g[jj], lo, np.where(hi == g[jj + 1], hi, 0.5 * (lo + hi)))
    rows = np.stack([x[keep], z[keep], size[keep]], axis=1)
    rows = np.unique(np.round(rows, 15), axis=0)
    return rows


def jump_locus(op, resolution=256, jump_threshold=1e-3):
    """Discontinuity locus as a pseudo-function.

    Jumps are mirrored across the diagonal before assembly, so a segment of
    jumps in x shows up as a vertical segment of the relation.
    """
    pts = jump_points(op, resolution, jump_threshold)
    if len(pts) == 0:
        return PseudoFunction(())
    both = np.concatenate([pts[:, :2], pts[:, 1::-1]])
    both = both[np.lexsort((both[:, 1], both[:, 0]))]
    knots = []
    for x, z in both:
        if knots and x - knots[-1][0] <= 1e-9:
            k = knots[-1]
            knots[-1] = (k[0], min(k[1], z), max(k[2], z))
        else:
            knots.append((x, z, z))
    return PseudoFunction(tuple(knots))


def curve_of_representable(gen, n=1025):
    """The level curve U(x, r(x)) = e of the representable uninorm of ``gen``."""
    from .generators import GenKind

    if gen.kind is not GenKind.UNINORM_GEN:
        raise ValueError(f"{gen.label()} is not a uninorm generator")
    xs = np.unique(np.concatenate([grid(n), [gen.zero()]]))
    return PseudoFunction.from_function(lambda x: gen.pseudo_inverse(-gen.forward(x)), xs)


def switch_curve(op, xs, iterations=64):
    """r(x) = inf{y : U(x, y) >= e}, by bisection for each x."""
    xs = np.asarray(xs, dtype=float)
    e = op.neutral
    lo = np.zeros_like(xs)
    hi = np.ones_like(xs)
    _, r = bisect_predicate(lambda y: op(xs, y) >= e, lo, hi, iterations)
    r = np.where(op(xs, 0.0) >= e, 0.0, r)
    r = np.where(op(xs, 1.0) < e, 1.0, r)
    return r


def strict_locus(op, resolution=256, jump_threshold=1e-3, tol=1e-6):
    """Look for a strictly decreasing r with r(0)=1, r(e)=e, r(1)=0 carrying all jumps.

    Returns ``(r, problems)`` where ``r`` is the sampled curve as a
    pseudo-function and ``problems`` lists failed conditions.
    """
    g = grid(resolution + 1)
    e = op.neutral
    knots = np.unique(np.concatenate([g, [e]]))
    r_vals = switch_curve(op, knots)
    r = PseudoFunction(tuple((x, y, y) for x, y in zip(knots, r_vals)))
    problems = []
    if not r.strictly_decreasing(x_tol=0.0, y_tol=1e-12):
        problems.append("switch curve is not strictly decreasing")
    if abs(r(0.0) - 1.0) > tol or abs(r(1.0)) > tol or abs(r(e) - e) > tol:
        problems.append(f"switch curve misses an end point: r(0)={r(0.0)!r}, r(e)={r(e)!r}, r(1)={r(1.0)!r}")
    jumps = jump_points(op, resolution, jump_threshold)
    if len(jumps):
        off = np.abs(jumps[:, 1] - r(jumps[:, 0])) > tol
        if np.any(off):
            x, z, _ = jumps[np.argmax(off)]
            problems.append(f"discontinuity at ({x!r}, {z!r}) is off the switch curve")
    return r, problems


def is_continuous(op, resolution=128, jump_threshold=1e-3):
    return len(jump_points(op, resolution, jump_threshold)) == 0


def oscillation(op, center, delta, n=21):
    """max - min of the operator over the box [c - delta, c + delta]^2."""
    t = np.clip(np.linspace(center - delta, center + delta, n), 0.0, 1.0)
    V = op(t[:, None], t[None, :])
    return float(V.max() - V.min())


def is_internal(op, grid_n=101, tol=1e-9):
    g = grid(grid_n)
    V = op(g[:, None], g[None, :])
    dev = np.minimum(np.abs(V - g[:, None]), np.abs(V - g[None, :]))
    return bool(dev.max() <= tol)


@dataclass(frozen=True)
class ClassFlags:
    conjunctive: bool
    disjunctive: bool
    in_N: bool
    in_U: bool
    internal: bool
    s_internal: bool
    n_min: bool
    n_max: bool

    def as_dict(self):
        return asdict(self)


def in_class_N(op, grid_n=257, tol=1e-9):
    g = grid(grid_n)
    zero_row = op(g[:-1], 0.0)
    one_row = op(g[1:], 1.0)
    return bool(np.all(np.abs(zero_row) <= tol) and np.all(np.abs(one_row - 1.0) <= tol))


def classify(op, resolution=128, tol=1e-9, jump_threshold=1e-3):
    a = op(1.0, 0.0)
    e = op.neutral
    in_n = in_class_N(op, 2 * resolution + 1, tol)
    if 0.0 < e < 1.0:
        t_op, c_op = underlying_ops(op)
        in_u = is_continuous(t_op, resolution, jump_threshold) and is_continuous(c_op, resolution, jump_threshold)
    else:
        t_op = c_op = None
        in_u = is_continuous(op, resolution, jump_threshold)
    internal = is_internal(op, resolution + 1, tol)
    s_int = False
    if internal and 0.0 < e < 1.0:
        _, problems = strict_locus(op, resolution, jump_threshold)
        s_int = not problems
    n_min = n_max = False
    if in_n and t_op is not None:
        g = grid(resolution + 1)[1:-1]
        V = op(g[:, None], g[None, :])
        for cls in (UMinComposite, UMaxComposite):
            W = cls(t_op, c_op, e)(g[:, None], g[None, :])
            agree = bool(np.abs(V - W).max() <= tol)
            if cls is UMinComposite:
                n_min = agree
            else:
                n_max = agree
    return ClassFlags(a == 0.0, a == 1.0, in_n, in_u, internal, s_int, n_min, n_max)
