import numpy as np
import pytest

import oracles as O
from uninorms import generators as G
from uninorms.catalog import example_spec, example_uninorm, probsum, product
from uninorms.extended import NEG_INF, POS_INF, ExtendedRealError, ext_add
from uninorms.operators import (ConstructionError, Maximum, Minimum, Mode, ordinal_sum_tconorm, ordinal_sum_tnorm,
                                representable_uninorm, s_internal, tconorm_from_generator, tnorm_from_generator,
                                u_min_max)
from uninorms.ordinal import OrdinalSumUninormSpec, SummandSpec, ordinal_sum_uninorm, validate_spec
from uninorms.scaling import ScaleMap, scale_forward, scale_inverse


# --- extended reals and generators ---

def test_opposite_infinities_raise():
    with pytest.raises(ExtendedRealError):
        ext_add(NEG_INF, POS_INF)


def test_finite_plus_infinity():
    assert ext_add(3.0, POS_INF) == POS_INF
    assert ext_add(NEG_INF, -2.0) == NEG_INF


def test_gen_eval_examples():
    assert G.gen_eval(G.PRODUCT, 1.0) == 0.0
    assert G.gen_eval(G.LOGRATIO, 0.0) == NEG_INF
    assert G.gen_eval(G.PAPER_EXAMPLE, 0.5) == 0.0
    assert G.gen_eval(G.LOGRATIO, 1.0) == POS_INF


def test_gen_eval_domain():
    with pytest.raises(G.DomainError):
        G.gen_eval(G.PRODUCT, 1.5)
    with pytest.raises(G.DomainError):
        G.gen_eval(G.LOGRATIO, -0.1)


def test_pseudo_inverse_examples():
    assert G.gen_pseudo_inverse(G.PRODUCT, POS_INF) == 0.0
    assert G.gen_pseudo_inverse(G.LOGRATIO, 0.0) == 0.5
    assert G.gen_pseudo_inverse(G.LUKASIEWICZ_T, 1.7) == 0.0


@pytest.mark.parametrize("gen", list(G.CATALOG) + [G.knot(0.35, 0.5, G.LOGRATIO), G.knot(0.65, 0.5, G.PAPER_EXAMPLE)],
                         ids=lambda g: g.label())
def test_generator_round_trip(gen):
    x = np.linspace(0.0, 1.0, 1001)
    back = G.gen_pseudo_inverse(gen, G.gen_eval(gen, x))
    assert np.max(np.abs(back - x)) <= 1e-12


def test_knot_moves_neutral():
    assert G.knot(0.35, 0.5, G.LOGRATIO).zero() == pytest.approx(0.35, abs=1e-15)


def test_knot_rejects_boundary_knot():
    with pytest.raises(ValueError):
        G.knot(0.0, 0.5, G.LOGRATIO)


# --- scale maps ---

def test_scale_map_examples():
    m = ScaleMap(0.0, 0.25, 0.75, 1.0, 0.75, 0.5)
    assert scale_forward(m, 0.25) == 0.125
    assert scale_forward(m, 0.5) == 0.75
    assert scale_inverse(m, 0.875) == 0.75


def test_scale_map_gap_raises():
    m = ScaleMap(0.0, 0.25, 0.75, 1.0, 0.75, 0.5)
    with pytest.raises(G.DomainError):
        scale_inverse(m, 0.5)


def test_scale_map_round_trip():
    m = ScaleMap(0.1, 0.3, 0.6, 0.9, 0.45, 0.4)
    x = np.linspace(0, 1, 1001)
    assert np.max(np.abs(m.inverse(m.forward(x)) - x)) <= 1e-12


def test_scale_map_rejects_v_outside():
    with pytest.raises(ValueError):
        ScaleMap(0.0, 0.25, 0.75, 1.0, 0.9, 0.5)


# --- generated operators ---

def test_tnorm_examples():
    assert product()(0.5, 0.4) == pytest.approx(0.2, abs=1e-15)
    assert tnorm_from_generator(G.LUKASIEWICZ_T)(0.7, 0.6) == pytest.approx(0.3, abs=1e-15)
    x = np.linspace(0, 1, 11)
    assert np.array_equal(product()(x, 1.0), x)


def test_tconorm_matches_closed_form():
    x, y = np.meshgrid(np.linspace(0, 1, 21), np.linspace(0, 1, 21))
    assert np.max(np.abs(probsum()(x, y) - O.probsum(x, y))) <= 1e-12
    luk = tconorm_from_generator(G.LUKASIEWICZ_C)
    assert np.max(np.abs(luk(x, y) - O.lukasiewicz_c(x, y))) <= 1e-12


def test_wrong_generator_kind():
    with pytest.raises(ConstructionError):
        tnorm_from_generator(G.LOGRATIO)
    with pytest.raises(ConstructionError):
        representable_uninorm(G.PRODUCT)
    with pytest.raises(ConstructionError):
        tconorm_from_generator(G.PRODUCT)


def test_ordinal_sum_tnorm_examples():
    t = ordinal_sum_tnorm([(0.0, 0.5, product())])
    assert t(0.25, 0.25) == 0.125
    assert t(0.25, 0.75) == 0.25
    assert t(0.75, 0.9) == 0.75


def test_ordinal_sum_overlap_rejected():
    with pytest.raises(ConstructionError):
        ordinal_sum_tnorm([(0.0, 0.5, product()), (0.4, 0.8, product())])
    with pytest.raises(ConstructionError):
        ordinal_sum_tconorm([(0.2, 0.6, probsum()), (0.5, 1.0, probsum())])


def test_representable_examples():
    u = representable_uninorm(G.LOGRATIO)
    assert u(0.2, 0.2) == pytest.approx(1 / 17, abs=1e-15)
    d = representable_uninorm(G.PAPER_EXAMPLE, Mode.DISJUNCTIVE)
    assert d(0.25, 0.25) == pytest.approx(0.125, abs=1e-15)
    assert d(1.0, 0.0) == 1.0 and d(0.0, 1.0) == 1.0
    assert u(1.0, 0.0) == 0.0
    assert u.neutral == 0.5


def test_u_min_max_examples():
    umin = u_min_max(product(), probsum(), 0.5, "min")
    umax = u_min_max(product(), probsum(), 0.5, "max")
    assert umin(0.25, 0.75) == 0.25
    assert umin(0.25, 0.25) == 0.125
    assert umax(0.25, 0.75) == 0.75
    with pytest.raises(ConstructionError):
        u_min_max(probsum(), product(), 0.5, "min")


def test_s_internal_examples():
    u = s_internal([(0, 1), (1, 0)])
    assert u(0.3, 0.5) == 0.3
    assert u(0.3, 0.8) == 0.8
    assert u(0.5, 0.5) == 0.5
    assert u(0.3, 0.7) == 0.3
    assert u.neutral == 0.5


def test_s_internal_rejects_flat_curve():
    with pytest.raises(ConstructionError):
        s_internal([(0, 1), (0.4, 0.5), (0.6, 0.5), (1, 0)])


def test_min_max_neutrals():
    assert Minimum().neutral == 1.0 and Maximum().neutral == 0.0


# --- ordinal sums of uninorms ---

def test_example_values(example):
    assert example(0.125, 0.125) == pytest.approx(1 / 16, abs=1e-15)
    assert example(0.375, 0.625) == 0.5
    assert example(0.125, 0.875) == 0.75


def test_example_matches_hand_assembly(example):
    g = np.linspace(0, 1, 41)
    V = example(g[:, None], g[None, :])
    ref = np.array([[O.example22_reference(float(x), float(y)) for y in g] for x in g])
    assert np.max(np.abs(V - ref)) <= 1e-12


def test_example_v_values(example):
    assert example.v_values() == [0.75, 0.5]


def test_example_spec_validates():
    assert validate_spec(example_spec()).ok


def _rep():
    return representable_uninorm(G.LOGRATIO)


def test_overlap_fails_disjointness():
    spec = OrdinalSumUninormSpec(0.5, (SummandSpec(0, 0.3, 0.7, 1, _rep()), SummandSpec(0.2, 0.5, 0.5, 0.7, _rep())))
    assert "disjoint_t" in validate_spec(spec).codes()


def test_comonotone_fails():
    spec = OrdinalSumUninormSpec(0.5, (SummandSpec(0, 0.3, 0.5, 0.7, _rep()), SummandSpec(0.3, 0.5, 0.7, 1, _rep())))
    report = validate_spec(spec)
    assert "anti_comonotone" in report.codes()
    with pytest.raises(ConstructionError):
        ordinal_sum_uninorm(spec)


def test_properness_violation():
    spec = OrdinalSumUninormSpec(0.5, (SummandSpec(0, 0.5, 0.5, 1, product()),))
    assert "properness" in validate_spec(spec).codes()


def test_coverage_gap():
    spec = OrdinalSumUninormSpec(0.5, (SummandSpec(0.1, 0.5, 0.5, 1, _rep()),))
    assert "coverage_t" in validate_spec(spec).codes()


def test_empty_spec():
    assert validate_spec(OrdinalSumUninormSpec(0.5, ())).codes() == ["empty"]


def test_v_override_wins():
    spec = example_spec()
    s0 = spec.summands[0]
    changed = OrdinalSumUninormSpec(0.5, (SummandSpec(s0.a, s0.b, s0.c, s0.d, s0.op, 0.25), spec.summands[1]))
    assert ordinal_sum_uninorm(changed).v_values()[0] == 0.25


def test_conjunctive_successor_gives_b():
    u = representable_uninorm(G.LOGRATIO)
    spec = OrdinalSumUninormSpec(0.5, (SummandSpec(0, 0.25, 0.75, 1, u), SummandSpec(0.25, 0.5, 0.5, 0.75, u)))
    assert ordinal_sum_uninorm(spec).v_values()[0] == 0.25


def _grid(n=101):
    g = np.linspace(0, 1, n)
    return g[:, None], g[None, :]


def test_umin_is_an_ordinal_sum():
    e = 0.5
    T, C = product(), probsum()
    spec = OrdinalSumUninormSpec(e, (SummandSpec(e, e, e, 1, C), SummandSpec(0, e, 1, 1, T)))
    x, y = _grid()
    diff = ordinal_sum_uninorm(spec)(x, y) - u_min_max(T, C, e, "min")(x, y)
    assert np.max(np.abs(diff)) <= 1e-12


def test_umax_is_an_ordinal_sum():
    e = 0.5
    T, C = product(), probsum()
    spec = OrdinalSumUninormSpec(e, (SummandSpec(0, e, e, e, T), SummandSpec(0, 0, e, 1, C)))
    x, y = _grid()
    diff = ordinal_sum_uninorm(spec)(x, y) - u_min_max(T, C, e, "max")(x, y)
    assert np.max(np.abs(diff)) <= 1e-12


def test_restriction_is_ordinal_sum_of_tnorms(example):
    # on [0, 1/2]^2 both summands contribute the product t-norm
    t = ordinal_sum_tnorm([(0.0, 0.5, product()), (0.5, 1.0, product())])
    g = np.linspace(0, 1, 101)
    x, y = g[:, None], g[None, :]
    lhs = example(0.5 * x, 0.5 * y)
    assert np.max(np.abs(lhs - 0.5 * t(x, y))) <= 1e-9


def test_neutrality_exact(example):
    x = np.linspace(0, 1, 101)
    assert np.array_equal(example(x, 0.5), x)
    assert np.array_equal(example(0.5, x), x)
