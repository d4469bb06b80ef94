"""Minimal-length expressions for base-group elements with S = S0 ∪ {t^±1}.

An element of N is written by sweeping the cursor once across
``[sigma_minus, sigma_plus]`` (left end first or right end first), writing
a geodesic S0-word at every position.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cayley import GeneratingSet
from .errors import PreconditionError
from .wreath import GroupShape, WreathElement, t_power


@dataclass(frozen=True)
class NormalForm:
    sigma_minus: int
    sigma_plus: int
    words: tuple[tuple[int, ...], ...]  # words[i - sigma_minus]: 0-based S0 indices

    def word_at(self, i: int) -> tuple[int, ...]:
        return self.words[i - self.sigma_minus]


def normal_form(g: WreathElement, shape: GroupShape) -> NormalForm:
    if g.rho != 0:
        raise PreconditionError("normal forms are defined for base-group elements only")
    supp = g.support
    lo = min(supp + (0,))
    hi = max(supp + (0,))
    H = shape.H
    coords = dict(g.coords)
    words = tuple(H.geodesic_word(coords.get(i, H.identity)) for i in range(lo, hi + 1))
    return NormalForm(lo, hi, words)


def nf_length(nf: NormalForm) -> int:
    lo, hi = nf.sigma_minus, nf.sigma_plus
    return abs(lo) + (hi - lo) + abs(hi) + sum(len(w) for w in nf.words)


def emit_expression(nf: NormalForm, S: GeneratingSet, order: str = "left_first") -> tuple[int, ...]:
    """A word over S (1-based indices) of length ``nf_length(nf)`` for the element.

    ``left_first`` moves to ``sigma_minus`` and sweeps upwards; ``right_first``
    moves to ``sigma_plus`` and sweeps downwards.
    """
    shape = S.shape
    t_up = S.index_of(t_power(-1))    # moves the cursor +1
    t_down = S.index_of(t_power(1))   # moves the cursor -1
    letter = [S.index_of(shape.h_at(h, 0)) for _, h in shape.H.generators]

    def move(k):
        return (t_up,) * k if k > 0 else (t_down,) * (-k)

    lo, hi = nf.sigma_minus, nf.sigma_plus
    if order == "left_first":
        path = range(lo, hi + 1)
        start, stop = lo, hi
    elif order == "right_first":
        path = range(hi, lo - 1, -1)
        start, stop = hi, lo
    else:
        raise ValueError("order must be 'left_first' or 'right_first'")
    out = list(move(start))
    cur = start
    for i in path:
        out += move(i - cur)
        cur = i
        out += [letter[j] for j in nf.word_at(i)]
    out += move(-stop)
    return tuple(out)


def sigma_window_membership(g: WreathElement, q_n: float, shape: GroupShape | None = None) -> bool:
    """Whether ``-q(n) <= sigma_minus <= sigma_plus <= q(n)`` for g in N."""
    if g.rho != 0:
        raise PreconditionError("sigma window is defined for base-group elements only")
    supp = g.support
    return -q_n <= min(supp + (0,)) and max(supp + (0,)) <= q_n


def right_translate_escape(g: WreathElement, q_n: float, length) -> bool:
    """Whether ``g t^-k`` or ``g t^k`` (k = ceil q(n)) has length <= l(g) - k.

    ``length`` must be exact on both translates (ball lookup or formula).
    """
    k = math.ceil(q_n)
    lg = length(g)
    for r in (-k, k):
        lh = length(WreathElement(g.coords, g.rho + r))
        if lh is not None and lh <= lg - k:
            return True
    return False
