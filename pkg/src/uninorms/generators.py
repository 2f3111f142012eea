"""Additive generators of t-norms, t-conorms and representable uninorms.

Every generator is a continuous strictly monotone map from [0, 1] into the
extended reals.  ``forward`` evaluates it, ``pseudo_inverse`` is the inverse
clamped to [0, 1] so that it is total on [-inf, inf].  Both accept scalars or
numpy arrays.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .extended import NEG_INF, POS_INF


class DomainError(ValueError):
    """An argument lies outside the domain of a map."""


class Family(Enum):
    PRODUCT_T = "product"
    LUKASIEWICZ_T = "lukasiewicz_t"
    PROBSUM_C = "probsum"
    LUKASIEWICZ_C = "lukasiewicz_c"
    LOGRATIO_U = "logratio"
    PAPER_EXAMPLE_U = "paper_example"
    AFFINE_COMPOSED = "knot"


class GenKind(Enum):
    TNORM_GEN = "tnorm"
    TCONORM_GEN = "tconorm"
    UNINORM_GEN = "uninorm"


_BASE_KIND = {
    Family.PRODUCT_T: GenKind.TNORM_GEN,
    Family.LUKASIEWICZ_T: GenKind.TNORM_GEN,
    Family.PROBSUM_C: GenKind.TCONORM_GEN,
    Family.LUKASIEWICZ_C: GenKind.TCONORM_GEN,
    Family.LOGRATIO_U: GenKind.UNINORM_GEN,
    Family.PAPER_EXAMPLE_U: GenKind.UNINORM_GEN,
}


def _as_array(x):
    return np.asarray(x, dtype=float)


def _knot(x, kx, ky):
    return np.where(x <= kx, ky * x / kx, ky + (1.0 - ky) * (x - kx) / (1.0 - kx))


def _knot_inverse(y, kx, ky):
    return np.where(y <= ky, kx * y / ky, kx + (1.0 - kx) * (y - ky) / (1.0 - ky))


@dataclass(frozen=True)
class GeneratorSpec:
    """A named parametric additive generator.

    ``AFFINE_COMPOSED`` precomposes ``base`` with the increasing piecewise
    linear bijection of [0, 1] through ``(params[0], params[1])``; for a
    uninorm generator whose base vanishes at ``params[1]`` the composite
    vanishes at ``params[0]``, which moves the neutral element.
    """

    family: Family
    params: tuple = ()
    base: "GeneratorSpec | None" = None

    def __post_init__(self):
        if self.family is Family.AFFINE_COMPOSED:
            if self.base is None or len(self.params) != 2:
                raise ValueError("knot generator needs (knot_x, knot_y) and a base generator")
            kx, ky = self.params
            if not (0.0 < kx < 1.0 and 0.0 < ky < 1.0):
                raise ValueError(f"knot point ({kx}, {ky}) must lie in the open unit square")
        elif self.params or self.base is not None:
            raise ValueError(f"{self.family.value} generator takes no parameters")

    @property
    def kind(self):
        if self.family is Family.AFFINE_COMPOSED:
            return self.base.kind
        return _BASE_KIND[self.family]

    def forward(self, x):
        x = _as_array(x)
        f = self.family
        with np.errstate(divide="ignore"):
            if f is Family.PRODUCT_T:
                out = np.where(x > 0, -np.log(np.where(x > 0, x, 1.0)), POS_INF)
            elif f is Family.LUKASIEWICZ_T:
                out = 1.0 - x
            elif f is Family.PROBSUM_C:
                out = np.where(x < 1, -np.log1p(-np.where(x < 1, x, 0.0)), POS_INF)
            elif f is Family.LUKASIEWICZ_C:
                out = x + 0.0
            elif f is Family.LOGRATIO_U:
                inner = np.clip(x, 0.25, 0.75)
                safe = np.where((x > 0) & (x < 1), x, inner)
                out = np.log(safe) - np.log1p(-safe)
                out = np.where(x <= 0, NEG_INF, np.where(x >= 1, POS_INF, out))
            elif f is Family.PAPER_EXAMPLE_U:
                lo = np.where(x > 0, x, 0.25)
                hi = np.where(x < 1, x, 0.75)
                out = np.where(x <= 0.5, np.log(2.0 * lo), -np.log(2.0 - 2.0 * hi))
                out = np.where(x <= 0, NEG_INF, np.where(x >= 1, POS_INF, out))
            else:
                kx, ky = self.params
                out = self.base.forward(_knot(x, kx, ky))
        return out

    def pseudo_inverse(self, s):
        s = _as_array(s)
        f = self.family
        with np.errstate(over="ignore", invalid="ignore"):
            if f is Family.PRODUCT_T:
                out = np.where(s <= 0, 1.0, np.exp(-np.maximum(s, 0.0)))
            elif f is Family.LUKASIEWICZ_T:
                out = np.clip(1.0 - s, 0.0, 1.0)
            elif f is Family.PROBSUM_C:
                out = np.where(s <= 0, 0.0, -np.expm1(-np.maximum(s, 0.0)))
            elif f is Family.LUKASIEWICZ_C:
                out = np.clip(s, 0.0, 1.0)
            elif f is Family.LOGRATIO_U:
                neg = np.exp(np.minimum(s, 0.0))
                pos = np.exp(-np.maximum(s, 0.0))
                out = np.where(s >= 0, 1.0 / (1.0 + pos), neg / (1.0 + neg))
            elif f is Family.PAPER_EXAMPLE_U:
                out = np.where(s <= 0, 0.5 * np.exp(np.minimum(s, 0.0)),
                               1.0 - 0.5 * np.exp(-np.maximum(s, 0.0)))
            else:
                kx, ky = self.params
                out = _knot_inverse(self.base.pseudo_inverse(s), kx, ky)
        return out

    def zero(self):
        """The point where a uninorm generator vanishes (its neutral element)."""
        return float(self.pseudo_inverse(0.0))

    def label(self):
        if self.family is Family.AFFINE_COMPOSED:
            kx, ky = self.params
            return f"knot({kx!r}, {ky!r}, {self.base.label()})"
        return self.family.value


PRODUCT = GeneratorSpec(Family.PRODUCT_T)
LUKASIEWICZ_T = GeneratorSpec(Family.LUKASIEWICZ_T)
PROBSUM = GeneratorSpec(Family.PROBSUM_C)
LUKASIEWICZ_C = GeneratorSpec(Family.LUKASIEWICZ_C)
LOGRATIO = GeneratorSpec(Family.LOGRATIO_U)
PAPER_EXAMPLE = GeneratorSpec(Family.PAPER_EXAMPLE_U)

CATALOG = (PRODUCT, LUKASIEWICZ_T, PROBSUM, LUKASIEWICZ_C, LOGRATIO, PAPER_EXAMPLE)


def knot(kx, ky, base):
    return GeneratorSpec(Family.AFFINE_COMPOSED, (float(kx), float(ky)), base)


def gen_eval(gen, x):
    """Evaluate ``gen`` at ``x``; infinities come back as exact ``inf``."""
    xa = _as_array(x)
    if np.any(~((xa >= 0.0) & (xa <= 1.0))):
        raise DomainError(f"generator argument outside [0, 1]: {x!r}")
    out = gen.forward(xa)
    return float(out) if out.ndim == 0 else out


def gen_pseudo_inverse(gen, s):
    out = gen.pseudo_inverse(s)
    return float(out) if np.ndim(out) == 0 else out
