"""Ready-made operators used by the tests, the acceptance suite and the CLI docs."""

import numpy as np

from . import generators as G
from .operators import (Mode, representable_uninorm, s_internal, tconorm_from_generator,
                        tnorm_from_generator, u_min_max)
from .ordinal import OrdinalSumUninormSpec, SummandSpec, ordinal_sum_uninorm


def product():
    return tnorm_from_generator(G.PRODUCT)


def probsum():
    return tconorm_from_generator(G.PROBSUM)


def example_spec():
    """Two nested paper-example summands around e = 1/2, both disjunctive."""
    u = representable_uninorm(G.PAPER_EXAMPLE, Mode.DISJUNCTIVE)
    return OrdinalSumUninormSpec(0.5, (SummandSpec(0.0, 0.25, 0.75, 1.0, u),
                                       SummandSpec(0.25, 0.5, 0.5, 0.75, u)))


def example_uninorm():
    return ordinal_sum_uninorm(example_spec())


def diagonal_s_internal():
    return s_internal([(0.0, 1.0), (1.0, 0.0)])


def representable_summands():
    """Proper representable uninorms the random constructions draw from."""
    return (
        representable_uninorm(G.LOGRATIO, Mode.CONJUNCTIVE),
        representable_uninorm(G.LOGRATIO, Mode.DISJUNCTIVE),
        representable_uninorm(G.PAPER_EXAMPLE, Mode.CONJUNCTIVE),
        representable_uninorm(G.PAPER_EXAMPLE, Mode.DISJUNCTIVE),
        representable_uninorm(G.knot(0.35, 0.5, G.LOGRATIO), Mode.DISJUNCTIVE),
        representable_uninorm(G.knot(0.65, 0.5, G.PAPER_EXAMPLE), Mode.CONJUNCTIVE),
    )


def _cuts(rng, lo, hi, k, min_width):
    while True:
        inner = np.sort(rng.uniform(lo, hi, k - 1))
        edges = np.concatenate([[lo], inner, [hi]])
        if np.all(np.diff(edges) >= min_width):
            return [round(float(t), 6) for t in edges]


def random_complete_ordinal_sum(seed, k=None, min_width=0.05):
    """A seeded complete ordinal sum of at most four representable summands."""
    rng = np.random.default_rng(seed)
    if k is None:
        k = int(rng.integers(1, 5))
    e = round(float(rng.uniform(0.3, 0.7)), 6)
    left = _cuts(rng, 0.0, e, k, min_width)
    right = _cuts(rng, e, 1.0, k, min_width)
    pool = representable_summands()
    summands = []
    for i in range(k):
        op = pool[int(rng.integers(len(pool)))]
        summands.append(SummandSpec(left[i], left[i + 1], right[k - 1 - i], right[k - i], op))
    return ordinal_sum_uninorm(OrdinalSumUninormSpec(e, tuple(summands)))


def catalog_operators(seeds=(11, 23)):
    """The eight operators of the axiom suite, by name."""
    ops = {
        "logratio": representable_uninorm(G.LOGRATIO, Mode.CONJUNCTIVE),
        "paper_example": representable_uninorm(G.PAPER_EXAMPLE, Mode.DISJUNCTIVE),
        "umin": u_min_max(product(), probsum(), 0.5, "min"),
        "umax": u_min_max(product(), probsum(), 0.5, "max"),
        "sinternal": diagonal_s_internal(),
        "example": example_uninorm(),
    }
    for seed in seeds:
        ops[f"random{seed}"] = random_complete_ordinal_sum(seed, k=2)
    return ops


COMPOSED = frozenset({"example", "random11", "random23"})
