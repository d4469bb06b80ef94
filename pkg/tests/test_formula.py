import pytest
from hypothesis import given, strategies as st

from wreathdc.cayley import GeneratingSet, enumerate_ball
from wreathdc.formula import standard_ball_sizes, standard_length, walk_length

from strategies import SHAPES


def walk_oracle(lo, hi, end):
    """Shortest covering walk by trying both turn orders explicitly."""
    best = None
    for first, second in ((lo, hi), (hi, lo)):
        cost = abs(first) + abs(second - first) + abs(end - second)
        best = cost if best is None else min(best, cost)
    return best


@given(st.integers(-8, 0), st.integers(0, 8), st.data())
def test_walk_length(lo, hi, data):
    end = data.draw(st.integers(lo, hi))
    assert walk_length(lo, hi, end) == walk_oracle(lo, hi, end)


@pytest.mark.parametrize("name,n", [("C2", 10), ("C3", 8), ("S3", 6), ("F2", 5), ("Z", 7), ("F2xZ", 6)])
def test_ball_sizes_match_bfs(name, n):
    shape = SHAPES[name]
    S = GeneratingSet.standard(shape)
    ball = enumerate_ball(S, n)
    assert standard_ball_sizes(shape, n) == ball.ball_sizes
    for g, ln in zip(ball.elements, ball.lengths):
        assert standard_length(g, shape) == ln


def test_lamplighter_values():
    sizes = standard_ball_sizes(SHAPES["C2"], 12)
    assert sizes == [1, 4, 10, 22, 44, 84, 155, 278, 490, 850, 1457, 2474, 4167]


def test_example15_closed_form():
    assert standard_ball_sizes(SHAPES["F2xZ"], 10) == [4 * 3**n - 2 * n - 3 for n in range(11)]
