"""Exact arithmetic in N ⋊ <t> for the wreath and direct shapes.

An element ``g = g~ t^rho`` is stored as its non-identity coordinates
(sorted by position) plus the t-exponent.  Conjugation by ``t`` shifts
coordinates by ``+1``, so ``x^(t^i)`` for ``x`` in H sits at position
``i`` and

    (g h)|_i = g|_i * h|_(i + rho(g)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .coordgroup import CoordinateGroup
from .errors import InvalidElementError


@dataclass(frozen=True, slots=True)
class WreathElement:
    coords: tuple = ()
    rho: int = 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.coords)

    def coord(self, i, identity):
        for p, v in self.coords:
            if p == i:
                return v
        return identity

    def in_base(self) -> bool:
        return self.rho == 0

    def is_identity(self) -> bool:
        return not self.coords and self.rho == 0


IDENTITY = WreathElement()


def t_power(k: int) -> WreathElement:
    return WreathElement((), k)


def from_coords(coords, rho: int, H: CoordinateGroup) -> WreathElement:
    """Build a canonical element from a position -> H mapping."""
    items = dict(coords)
    e = H.identity
    return WreathElement(tuple(sorted((p, v) for p, v in items.items() if v != e)), rho)


@dataclass(frozen=True)
class GroupShape:
    """Either ``H wr <t>`` (variant "wreath") or ``H x <t>`` (variant "direct")."""

    variant: str
    H: CoordinateGroup

    def __post_init__(self):
        if self.variant not in ("wreath", "direct"):
            raise ValueError(f"unknown shape variant {self.variant!r}")

    @property
    def is_wreath(self) -> bool:
        return self.variant == "wreath"

    def validate(self, g: WreathElement) -> WreathElement:
        last = None
        for p, v in g.coords:
            if last is not None and p <= last:
                raise InvalidElementError("coordinates must be sorted by position")
            last = p
            self.H.validate(v)
            if v == self.H.identity:
                raise InvalidElementError("stored coordinate is the identity")
            if not self.is_wreath and p != 0:
                raise InvalidElementError("direct shape only has position 0")
        return g

    def h_at(self, h, position: int = 0) -> WreathElement:
        if not self.is_wreath and position != 0:
            raise InvalidElementError("direct shape only has position 0")
        if h == self.H.identity:
            return IDENTITY
        return WreathElement(((position, h),), 0)

    def to_config(self):
        return {"variant": self.variant, "H": self.H.to_config()}


def multiply(g: WreathElement, h: WreathElement, shape: GroupShape) -> WreathElement:
    rho = g.rho + h.rho
    if not h.coords:
        return WreathElement(g.coords, rho)
    shift = g.rho if shape.variant == "wreath" else 0
    if not g.coords:
        if shift == 0:
            return WreathElement(h.coords, rho)
        return WreathElement(tuple((p - shift, v) for p, v in h.coords), rho)
    H = shape.H
    mul = H.multiply
    e = H.identity
    d = dict(g.coords)
    for p, v in h.coords:
        q = p - shift
        w = d.get(q)
        if w is None:
            d[q] = v
        else:
            w = mul(w, v)
            if w == e:
                del d[q]
            else:
                d[q] = w
    return WreathElement(tuple(sorted(d.items())), rho)


def multiply_all(elements, shape: GroupShape) -> WreathElement:
    out = IDENTITY
    for x in elements:
        out = multiply(out, x, shape)
    return out


def inverse(g: WreathElement, shape: GroupShape) -> WreathElement:
    inv = shape.H.inverse
    shift = g.rho if shape.variant == "wreath" else 0
    return WreathElement(tuple((p + shift, inv(v)) for p, v in g.coords), -g.rho)


def conjugate_by_t_power(g: WreathElement, i: int, shape: GroupShape) -> WreathElement:
    """``t^-i g t^i``."""
    if shape.variant != "wreath" or i == 0:
        return g
    return WreathElement(tuple((p + i, v) for p, v in g.coords), g.rho)


def commute(g: WreathElement, h: WreathElement, shape: GroupShape) -> bool:
    return multiply(g, h, shape) == multiply(h, g, shape)


def _encode_h(v) -> str:
    if isinstance(v, tuple):
        return "w" + ".".join(map(str, v))
    return str(v)


def canonical_key(g: WreathElement) -> bytes:
    """Injective, run-stable byte encoding of a canonical element."""
    body = ",".join(f"{p}:{_encode_h(v)}" for p, v in g.coords)
    return f"{g.rho}|{body}".encode()


def decode_key(key: bytes) -> WreathElement:
    rho, _, body = key.decode().partition("|")
    coords = []
    if body:
        for item in body.split(","):
            p, _, v = item.partition(":")
            if v.startswith("w"):
                val = tuple(int(x) for x in v[1:].split(".")) if len(v) > 1 else ()
            else:
                val = int(v)
            coords.append((int(p), val))
    return WreathElement(tuple(coords), int(rho))


# Element literals: whitespace-separated factors multiplied left to right.
#   t, t^k          powers of the top generator
#   X@p             H-element X placed at position p (X in H's own syntax)
#   X               same as X@0
#   1               identity
_T_RE = re.compile(r"t(?:\^(-?\d+))?")


def parse_element(text: str, shape: GroupShape) -> WreathElement:
    out = IDENTITY
    for tok in text.replace("*", " ").split():
        m = _T_RE.fullmatch(tok)
        if m:
            factor = t_power(int(m.group(1)) if m.group(1) else 1)
        elif tok in ("1", "e"):
            continue
        else:
            hpart, at, pos = tok.rpartition("@")
            if not at:
                hpart, pos = tok, "0"
            try:
                position = int(pos)
            except ValueError:
                raise InvalidElementError(f"bad position in {tok!r}")
            factor = shape.h_at(shape.H.parse(hpart), position)
        out = multiply(out, factor, shape)
    return out


def format_element(g: WreathElement, shape: GroupShape) -> str:
    parts = [f"{shape.H.format(v)}@{p}" for p, v in g.coords]
    if g.rho == 1:
        parts.append("t")
    elif g.rho:
        parts.append(f"t^{g.rho}")
    return " ".join(parts) if parts else "1"
