"""Itineraries (iota, sigma) of S-expressions and their calculus.

For a word ``s_iota(1) ... s_iota(l)`` the exponent track is
``sigma(k) = -(rho(s_iota(1)) + ... + rho(s_iota(k)))``.  The element is
recovered as ``prod_k s~_iota(k)^(t^sigma(k-1)) * t^-sigma(l)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .cayley import GeneratingSet
from .errors import PreconditionError
from .wreath import (
    IDENTITY,
    GroupShape,
    WreathElement,
    conjugate_by_t_power,
    multiply,
    t_power,
)


@dataclass(frozen=True)
class Itinerary:
    iota: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        if len(self.sigma) != len(self.iota) + 1 or self.sigma[0] != 0:
            raise ValueError("sigma must have length len(iota) + 1 and start at 0")

    def __len__(self):
        return len(self.iota)

    @property
    def maxit(self) -> int:
        return max(self.sigma)

    @property
    def minit(self) -> int:
        return min(self.sigma)

    @property
    def spread(self) -> int:
        return self.maxit - self.minit

    def __mul__(self, other: "Itinerary") -> "Itinerary":
        return product(self, other)

    def __str__(self):
        return f"(({', '.join(map(str, self.iota))}), ({', '.join(map(str, self.sigma))}))"


EMPTY = Itinerary((), (0,))


def itinerary_of(S: GeneratingSet, word: Sequence[int]) -> Itinerary:
    d = len(S)
    sigma = [0]
    for j in word:
        if not 1 <= j <= d:
            raise IndexError(f"generator index {j} out of range 1..{d}")
        sigma.append(sigma[-1] - S[j].rho)
    return Itinerary(tuple(word), tuple(sigma))


def check_itinerary(S: GeneratingSet, I: Itinerary):
    for k, j in enumerate(I.iota, start=1):
        if I.sigma[k] - I.sigma[k - 1] != -S[j].rho:
            raise ValueError(f"sigma step {k} does not match rho(s_{j})")


def evaluate(S: GeneratingSet, I: Itinerary, shape: GroupShape | None = None) -> WreathElement:
    """Collect t-powers to the right: the base part is a product of shifted
    generator bases, followed by ``t^-sigma(l)``."""
    shape = shape or S.shape
    base = IDENTITY
    for k, j in enumerate(I.iota):
        s_base = WreathElement(S[j].coords, 0)
        base = multiply(base, conjugate_by_t_power(s_base, I.sigma[k], shape), shape)
    return multiply(base, t_power(-I.sigma[-1]), shape)


def product(I1: Itinerary, I2: Itinerary) -> Itinerary:
    off = I1.sigma[-1]
    return Itinerary(I1.iota + I2.iota, I1.sigma + tuple(off + s for s in I2.sigma[1:]))


def split(I: Itinerary, l1: int) -> tuple[Itinerary, Itinerary]:
    if not 0 <= l1 <= len(I):
        raise IndexError(f"split point {l1} outside 0..{len(I)}")
    base = I.sigma[l1]
    first = Itinerary(I.iota[:l1], I.sigma[: l1 + 1])
    second = Itinerary(I.iota[l1:], tuple(s - base for s in I.sigma[l1:]))
    return first, second


_SEQ = re.compile(r"\(\s*\((?P<iota>[^()]*)\)\s*,\s*\((?P<sigma>[^()]*)\)\s*\)")


def parse_itinerary(text: str) -> Itinerary:
    m = _SEQ.fullmatch(text.strip())
    if not m:
        raise ValueError(f"not an itinerary: {text!r}")

    def ints(s):
        return tuple(int(x) for x in s.replace(",", " ").split())

    return Itinerary(ints(m.group("iota")), ints(m.group("sigma")))


@dataclass(frozen=True)
class ItineraryConstants:
    C: int
    r_S: int
    m_S: int
    D: int
    D_prime: int


def itinerary_constants(S: GeneratingSet, u, length: Callable[[WreathElement], int | None]
                        ) -> ItineraryConstants:
    """Constants C, r_S, m_S, D(S, u) and D' for the insertion bounds.

    ``u`` is an H-element (placed at position 0) and ``length`` returns exact
    word lengths, e.g. ``ball.word_length`` for a large enough ball.
    """
    shape = S.shape
    C, r = S.C, S.r_S
    m = max(C, r)

    def need(g):
        v = length(g)
        if v is None:
            raise PreconditionError("length oracle does not cover the elements needed for D")
        return v

    lu = need(shape.h_at(u, 0))
    D = lu + 2 * max(need(t_power(j)) for j in range(0, m + r + 1))
    Dp = 6 * D + 2 * need(t_power(2 * C))
    return ItineraryConstants(C, r, m, D, Dp)


@dataclass(frozen=True)
class Insertion:
    element: WreathElement
    bound: int
    checked: bool
    length: int | None

    @property
    def ok(self) -> bool:
        return not self.checked or self.length <= self.bound


def insert_coordinate(g: WreathElement, I: Itinerary, u, j: int, side: str,
                      S: GeneratingSet, consts: ItineraryConstants, length=None,
                      l_g: int | None = None) -> Insertion:
    """Right (``g u^(t^(j+rho g))``) or left (``u^(t^j) g``) insertion of u at j.

    ``I`` must be a geodesic itinerary of ``g``.  When ``length`` is given and
    knows the result, the bound ``l_S(result) <= l_S(g) + D`` is evaluated;
    otherwise the result is returned with ``checked=False``.
    """
    shape = S.shape
    if not I.minit - consts.m_S <= j <= I.maxit + consts.m_S:
        raise PreconditionError(
            f"position {j} outside [{I.minit - consts.m_S}, {I.maxit + consts.m_S}]")
    if side == "right":
        h = multiply(g, shape.h_at(u, j + g.rho), shape)
    elif side == "left":
        h = multiply(shape.h_at(u, j), g, shape)
    else:
        raise ValueError("side must be 'right' or 'left'")
    lg = len(I) if l_g is None else l_g
    bound = lg + consts.D
    lh = length(h) if length is not None else None
    return Insertion(h, bound, lh is not None, lh)
