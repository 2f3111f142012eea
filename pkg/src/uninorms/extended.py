"""Arithmetic on the extended real line [-inf, inf].

Generator values live here.  Infinities are carried as IEEE ``inf`` values,
which numpy propagates exactly, but the one undefined sum ``-inf + inf``
must never be silently turned into ``nan``: it is either resolved by the
caller (the annihilator of a representable uninorm) or it is an error.
"""

import numpy as np

NEG_INF = float("-inf")
POS_INF = float("inf")


class ExtendedRealError(ArithmeticError):
    """Raised when opposite infinities are added without a resolution policy."""


def is_neg_inf(s):
    return np.isneginf(s)


def is_pos_inf(s):
    return np.isposinf(s)


def clash(s, t):
    """Mask of positions where ``s + t`` is ``-inf + inf`` (in either order)."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.isinf(s) & np.isinf(t) & (s != t)


def ext_add(s, t, *, allow=None):
    """Add extended reals elementwise.

    ``allow`` is an optional boolean mask of positions where an infinity clash
    is expected; those positions come back as ``nan`` for the caller to
    overwrite.  A clash anywhere else raises :class:`ExtendedRealError`.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    bad = clash(s, t)
    if allow is not None:
        bad = bad & ~np.asarray(allow, dtype=bool)
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise ExtendedRealError(f"-inf + inf at index {idx}")
    with np.errstate(invalid="ignore"):
        return s + t


def ext_min(s, t):
    return np.minimum(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
