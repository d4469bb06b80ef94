"""Hypothesis strategies and group shapes shared by the tests."""
from functools import reduce

from hypothesis import strategies as st

from wreathdc.coordgroup import CoordinateGroup
from wreathdc.wreath import GroupShape, from_coords


def h_elements(H):
    """Strategy for elements of a coordinate group."""
    if H.kind == "cyclic":
        return st.integers(0, H.m - 1)
    if H.kind == "table":
        return st.integers(0, H.order - 1)
    if H.kind == "integers":
        return st.integers(-5, 5)
    letters = [k for k in range(1, H.rank + 1)] + [-k for k in range(1, H.rank + 1)]
    return st.lists(st.sampled_from(letters), max_size=5).map(
        lambda w: reduce(H.multiply, [(x,) for x in w], H.identity))


def wreath_elements(shape, span=6, max_coords=5):
    H = shape.H
    if shape.variant == "direct":
        positions = st.just(0)
    else:
        positions = st.integers(-span, span)
    coords = st.dictionaries(positions, h_elements(H), max_size=max_coords)
    return st.builds(lambda c, r: from_coords(c, r, H), coords, st.integers(-span, span))


SHAPES = {
    "C2": GroupShape("wreath", CoordinateGroup.cyclic(2)),
    "C3": GroupShape("wreath", CoordinateGroup.cyclic(3)),
    "Z": GroupShape("wreath", CoordinateGroup.integers()),
    "F2": GroupShape("wreath", CoordinateGroup.free(2)),
    "S3": GroupShape("wreath", CoordinateGroup.symmetric3()),
    "F2xZ": GroupShape("direct", CoordinateGroup.free(2)),
}
