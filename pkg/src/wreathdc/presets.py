"""Named groups and generating sets used throughout the experiments."""
from __future__ import annotations

from .cayley import GeneratingSet
from .coordgroup import CoordinateGroup
from .wreath import GroupShape

# s1 = a_4 t^-3, s2 = t^-2, s3 = s1^-1 = a_1 t^3, s4 = s2^-1 = t^2, s5 = a_0
FIVE_GENERATORS = ("a@4 t^-3", "t^-2", "a@1 t^3", "t^2", "a@0")

# Two words over FIVE_GENERATORS (1-based generator indices).
FIVE_WORD = (2, 5, 1, 4, 4, 5, 4, 5, 4)
FIVE_WORD_LONG = (1, 4, 4, 5, 3, 2, 2, 2, 5, 2, 5, 2, 5, 4, 4, 4, 5, 3)


def lamplighter_shape(m: int = 2) -> GroupShape:
    return GroupShape("wreath", CoordinateGroup.cyclic(m))


def lamplighter(m: int = 2) -> GeneratingSet:
    """``C_m wr Z`` with S = {a^±1, t, t^-1}."""
    return GeneratingSet.standard(lamplighter_shape(m))


def example15() -> GeneratingSet:
    """``F(x, y) x <t>`` with S = {x, X, y, Y, t, T}."""
    return GeneratingSet.standard(GroupShape("direct", CoordinateGroup.free(2)))


def five_generators() -> GeneratingSet:
    return GeneratingSet.parse(FIVE_GENERATORS, lamplighter_shape(2), symmetrize=False)


def trivial() -> GeneratingSet:
    """``1 x <t>``: only the t-powers; used as a degenerate sanity case."""
    return GeneratingSet.standard(GroupShape("direct", CoordinateGroup.cyclic(1)))


PRESETS = {
    "lamplighter": lamplighter,
    "lamplighter3": lambda: lamplighter(3),
    "lamplighter5": lambda: lamplighter(5),
    "example15": example15,
    "paper-S5": five_generators,
}


def preset(name: str) -> GeneratingSet:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
