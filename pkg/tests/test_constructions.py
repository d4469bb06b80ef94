import random

import pytest
from hypothesis import assume, given, strategies as st

from wreathdc.analysis import default_q, f_alpha
from wreathdc.cayley import enumerate_ball
from wreathdc.constructions import (
    dot_shift,
    dot_variant,
    j_variant,
    pick_position,
    recover_from_dot,
    recover_from_jvariant,
    reduced_tower,
    tower_factors,
    valid_J_sets,
    xyz_split,
)
from wreathdc.errors import DegenerateTowerError, MalformedVariantError, PreconditionError
from wreathdc.formula import standard_length
from wreathdc.itinerary import itinerary_of
from wreathdc.presets import lamplighter, five_generators
from wreathdc.verify import r_flow
from wreathdc.wreath import IDENTITY, WreathElement, multiply_all, parse_element

S5 = five_generators()
C5 = lamplighter(5)


@pytest.fixture(scope="module")
def c5_ball():
    return enumerate_ball(C5, 8)


@pytest.fixture(scope="module")
def c5_flow(c5_ball):
    q = default_q(8)
    return r_flow(c5_ball, 8, q(8), f_alpha(0.5, q)(8))


def test_single_generator_tower():
    t = reduced_tower(S5[5], (5,), 0, S5)
    assert t.ell == 1 and t.kappa == (1,)


def test_cancelling_pair_is_dropped():
    t = reduced_tower(S5.evaluate((5, 5, 5)), (5, 5, 5), 0, S5)
    assert t.ell == 1 and t.kappa == (3,)


def test_degenerate_tower():
    with pytest.raises(DegenerateTowerError):
        reduced_tower(IDENTITY, (5, 5), 0, S5)


def _tower_checks(S, word, i):
    H = S.shape.H
    I = itinerary_of(S, word)
    g = S.evaluate(word)
    factors = tower_factors(I, i, S)
    t = reduced_tower(g, word, i, S)
    kept = [factors[k - 1] for k in t.kappa]
    prod = H.identity
    prefixes = [prod]
    for f in kept:
        prod = H.multiply(prod, f)
        prefixes.append(prod)
    assert prod == g.coord(i, H.identity)
    # every contiguous sub-product of kept factors is non-trivial
    assert len(set(prefixes)) == len(prefixes)
    # the dropped stretches between kept indices multiply to the identity
    bounds = (0,) + t.kappa
    for a, b in zip(bounds, bounds[1:]):
        stretch = H.identity
        for f in factors[a: b - 1]:
            stretch = H.multiply(stretch, f)
        assert stretch == H.identity
    assert t.ell >= H.geodesic_length(g.coord(i, H.identity))


@given(st.lists(st.integers(1, 5), min_size=1, max_size=25), st.data())
def test_tower_properties_s5(word, data):
    g = S5.evaluate(word)
    assume(g.coords)
    i = data.draw(st.sampled_from(g.support))
    _tower_checks(S5, word, i)


def test_tower_properties_on_ball(lamp_ball12, lamp):
    rng = random.Random(0)
    pool = [g for g in lamp_ball12.elements_upto(10) if g.coords]
    for g in rng.sample(pool, 100):
        _tower_checks(lamp, lamp_ball12.geodesic_witness(g), rng.choice(g.support))


def test_single_lamp_dot_variant(lamp):
    g = lamp[1]
    t = reduced_tower(g, (1,), 0, lamp)
    h = dot_variant(g, 1, 2, t, (1,), lamp)
    M = dot_shift(2, lamp.C)
    assert M == 10
    # the whole word sits before the cut, so g1 = g and g2 = 1
    assert h == multiply_all([g, WreathElement((), -M)], lamp.shape)
    assert recover_from_dot(h, 2, lamp.C, lamp.shape) == g


def test_dot_variants_distinct_for_long_tower():
    g = parse_element("a^2", C5.shape)
    w = (1, 1)
    t = reduced_tower(g, w, 0, C5)
    assert t.ell == 2
    a, b = (dot_variant(g, j, 2, t, w, C5) for j in (1, 2))
    assert a != b
    assert recover_from_dot(a, 2, C5.C, C5.shape) == g == recover_from_dot(b, 2, C5.C, C5.shape)
    with pytest.raises(IndexError):
        dot_variant(g, 3, 2, t, w, C5)


def test_dot_round_trip_and_disjoint_fibres(c5_ball, c5_flow):
    rng = random.Random(1)
    q8 = default_q(8)(8)
    f8 = f_alpha(0.5, default_q(8))(8)
    owner = {}
    for g in rng.sample(c5_flow, 100):
        w = c5_ball.geodesic_witness(g)
        i = pick_position(g, itinerary_of(C5, w), C5.C, f8, C5.shape.H)
        t = reduced_tower(g, w, i, C5)
        for j in range(1, t.ell + 1):
            h = dot_variant(g, j, q8, t, w, C5)
            assert recover_from_dot(h, q8, C5.C, C5.shape) == g
            assert owner.setdefault(h, g) == g


def test_dot_recovery_rejects_small_gap(lamp):
    h = parse_element("a@0 a@4", lamp.shape)
    with pytest.raises(MalformedVariantError):
        recover_from_dot(h, 2, 1, lamp.shape)


def test_split_identity(lamp):
    sp = xyz_split(IDENTITY, (), lamp)
    assert (sp.sigma_minus, sp.sigma_plus) == (0, 0)
    assert sp.x == sp.y == sp.z == IDENTITY
    assert valid_J_sets(sp) == []
    with pytest.raises(PreconditionError):
        j_variant(sp, (0, 0), 1, 1, lamp.shape)


def test_split_rejects_non_base(lamp):
    with pytest.raises(PreconditionError):
        xyz_split(lamp[2], (2,), lamp)


def test_split_two_lamps(lamp_ball12, lamp):
    g = parse_element("a@1 a@-1", lamp.shape)
    w = lamp_ball12.geodesic_witness(g)
    sp = xyz_split(g, w, lamp)
    assert multiply_all([sp.x, sp.y, sp.z], lamp.shape) == g
    assert sum(len(I) for I in sp.itineraries) == lamp_ball12.word_length(g)


def test_split_invariants_on_ball(lamp_ball12, lamp):
    base = [g for g in lamp_ball12.elements_upto(10) if g.rho == 0]
    rng = random.Random(2)
    for g in rng.sample(base, 50) + base[:50]:
        sp = xyz_split(g, lamp_ball12.geodesic_witness(g), lamp)
        assert sp.sigma_minus <= 0 <= sp.sigma_plus
        first, last = (sp.sigma_plus, sp.sigma_minus) if sp.orientation == "plusfirst" \
            else (sp.sigma_minus, sp.sigma_plus)
        assert (sp.x.rho, sp.y.rho, sp.z.rho) == (-first, first - last, last)
        lengths = [lamp_ball12.word_length(e) for e in (sp.x, sp.y, sp.z)]
        assert lengths == [len(I) for I in sp.itineraries]


@pytest.fixture(scope="module")
def lamp_base8(lamp_ball12):
    out = []
    for g in lamp_ball12.elements_upto(8):
        if g.rho == 0:
            sp = xyz_split(g, lamp_ball12.geodesic_witness(g), lamplighter())
            if sp.sigma_plus > sp.sigma_minus:
                out.append((g, sp))
    return out


def test_jvariant_rho_and_factorisation(lamp_base8, lamp):
    C = lamp.C
    for g, sp in lamp_base8:
        for J in valid_J_sets(sp):
            v = j_variant(sp, J, 1, C, lamp.shape)
            assert multiply_all([v.xdot, v.ydot, v.zdot], lamp.shape) == g
            span = sp.sigma_plus - sp.sigma_minus
            if v.orientation == "plusfirst":
                assert v.element.rho == -2 * span - 4 * C <= -4
            else:
                assert v.element.rho == 2 * span + 4 * C >= 4


def test_jvariant_bound_recovery_injectivity(lamp_base8, lamp_ball12, lamp):
    C = lamp.C
    D_prime = 34
    orientations = set()
    for g, sp in lamp_base8:
        seen = set()
        lg = lamp_ball12.word_length(g)
        for J in valid_J_sets(sp):
            v = j_variant(sp, J, 1, C, lamp.shape)
            h = v.element
            length = standard_length(h, lamp.shape)
            if length <= lamp_ball12.radius:
                assert lamp_ball12.word_length(h) == length
            assert length <= lg + D_prime
            assert recover_from_jvariant(h, sp.sigma_plus, 1, C, lamp.shape, lamp_ball12) == (g, J)
            assert h not in seen
            seen.add(h)
            orientations.add(v.orientation)
    assert orientations == {"plusfirst", "minusfirst"}


def test_jvariant_preconditions(lamp_base8, lamp):
    g, sp = lamp_base8[0]
    J = valid_J_sets(sp)[0]
    with pytest.raises(PreconditionError):
        j_variant(sp, J, 0, 1, lamp.shape)
    with pytest.raises(PreconditionError):
        j_variant(sp, (sp.sigma_minus - 1, sp.sigma_plus), 1, 1, lamp.shape)
    with pytest.raises(PreconditionError):
        j_variant(sp, (J[0],), 1, 1, lamp.shape)


def test_jvariant_recovery_without_ball(lamp_base8, lamp):
    g, sp = lamp_base8[-1]
    J = valid_J_sets(sp)[-1]
    h = j_variant(sp, J, 1, 1, lamp.shape).element
    assert recover_from_jvariant(h, sp.sigma_plus, 1, 1, lamp.shape) == (g, None)


@pytest.mark.parametrize("h", ["a@0", "t^-5", "a@40 t^-6"])
def test_jvariant_recovery_rejects_garbage(h, lamp):
    with pytest.raises(MalformedVariantError):
        recover_from_jvariant(parse_element(h, lamp.shape), 1, 1, 1, lamp.shape)


def test_mirror_orientation_constructed(lamp_ball12, lamp):
    # a walk that reaches the minimum first: lamps on the negative side only
    g = parse_element("a@-2 a@1", lamp.shape)
    sp = xyz_split(g, lamp_ball12.geodesic_witness(g), lamp)
    for J in valid_J_sets(sp):
        h = j_variant(sp, J, 1, 1, lamp.shape).element
        assert recover_from_jvariant(h, sp.sigma_plus, 1, 1, lamp.shape, lamp_ball12) == (g, J)
