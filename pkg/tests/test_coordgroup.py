import json

import pytest
from hypothesis import given, strategies as st

from wreathdc.coordgroup import CoordinateGroup
from wreathdc.errors import CapExceededError, InvalidElementError

from strategies import h_elements

GROUPS = [CoordinateGroup.cyclic(2), CoordinateGroup.cyclic(5), CoordinateGroup.integers(),
          CoordinateGroup.free(2), CoordinateGroup.symmetric3()]


def test_cyclic_generator_has_order_two():
    H = CoordinateGroup.cyclic(2)
    a = H.parse("a")
    assert H.h_multiply(a, a) == H.identity


def test_free_cancellation():
    H = CoordinateGroup.free(2)
    assert H.h_multiply(H.parse("x"), H.parse("X")) == ()


def test_s3_table_is_latin_and_associative():
    H = CoordinateGroup.symmetric3()
    n = H.order
    for row in H._table:
        assert sorted(row) == list(range(n))
    for col in zip(*H._table):
        assert sorted(col) == list(range(n))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c))


def test_s3_product_matches_composition():
    H = CoordinateGroup.symmetric3()
    swap, cycle = H.parse("102"), H.parse("120")
    # apply (01) first, then x -> (1, 2, 0)[x]
    assert H.format(H.h_multiply(swap, cycle)) == "210"


def test_out_of_range_table_element():
    with pytest.raises(InvalidElementError):
        CoordinateGroup.symmetric3().h_multiply(0, 17)


def test_bad_table_rejected():
    with pytest.raises(ValueError):
        CoordinateGroup.table(["e", "a"], [[0, 1], [1, 1]], ["a"])


def test_non_generating_set_rejected():
    with pytest.raises(ValueError):
        CoordinateGroup.table(["e", "a", "b", "c"], [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1],
                                                     [3, 2, 1, 0]], ["a"])


@pytest.mark.parametrize("text,length", [("1", 0), ("xyX", 3), ("xyxYX", 5)])
def test_free_geodesic_length(text, length):
    assert CoordinateGroup.free(2).geodesic_length(CoordinateGroup.free(2).parse(text)) == length


def test_cyclic5_cube_has_length_two():
    H = CoordinateGroup.cyclic(5)
    assert H.geodesic_length(H.parse("a^3")) == 2
    # independent BFS over the cycle graph
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in ((v + 1) % 5, (v - 1) % 5):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    assert all(H.geodesic_length(v) == dist[v] for v in range(5))


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_ball_radius_zero(H):
    assert H.h_ball(0) == {H.identity}


@pytest.mark.parametrize("n", range(6))
def test_free_ball_sizes(n):
    assert len(CoordinateGroup.free(2).h_ball(n)) == 2 * 3**n - 1


def test_cyclic2_ball_one():
    assert CoordinateGroup.cyclic(2).h_ball(1) == {0, 1}


def test_ball_cap():
    with pytest.raises(CapExceededError) as exc:
        CoordinateGroup.free(2, element_cap=100).h_ball(6)
    assert exc.value.radius == 4


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_generators_symmetric(H):
    gens = {g for _, g in H.generators}
    assert all(H.inverse(g) in gens for g in gens)


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_sphere_sizes_match_ball(H):
    sizes = H.sphere_sizes(4)
    assert sum(sizes) == len(H.h_ball(4))


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_group_axioms(H):
    @given(h_elements(H), h_elements(H), h_elements(H))
    def check(a, b, c):
        m = H.multiply
        assert m(m(a, b), c) == m(a, m(b, c))
        assert m(a, H.identity) == a == m(H.identity, a)
        assert m(a, H.inverse(a)) == H.identity
    check()


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_geodesic_word_round_trip(H):
    @given(h_elements(H))
    def check(a):
        word = H.geodesic_word(a)
        assert H.evaluate_word(word) == a
        assert len(word) == H.geodesic_length(a)
    check()


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_literal_round_trip(H):
    @given(h_elements(H))
    def check(a):
        assert H.parse(H.format(a)) == a
    check()


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12))
def test_free_words_stay_reduced(word):
    H = CoordinateGroup.free(2)
    out = H.identity
    for x in word:
        out = H.multiply(out, (x,))
    assert all(a != -b for a, b in zip(out, out[1:]))


@pytest.mark.parametrize("H", GROUPS, ids=repr)
def test_config_round_trip(H, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(H.to_config()))
    assert CoordinateGroup.load(path) == H
