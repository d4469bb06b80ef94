"""Coordinate groups H with a symmetric generating set S0.

Elements are plain hashable Python values so they can live inside the
coordinate tuples of wreath elements without wrapping:

* ``cyclic`` and ``table`` kinds use ``int`` element ids,
* ``integers`` uses ``int``,
* ``free`` uses a reduced tuple of nonzero ints (``k`` is the k-th free
  generator, ``-k`` its inverse).
"""
from __future__ import annotations

import json
import re
from collections import deque
from pathlib import Path
from typing import Any, Hashable, Sequence

from .errors import CapExceededError, InvalidElementError

DEFAULT_ELEMENT_CAP = 10**7

HElement = Hashable

_FREE_LETTERS = "xyzuvw"


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class CoordinateGroup:
    """A finitely generated group H together with its generating set S0.

    Use the constructors :meth:`cyclic`, :meth:`free`, :meth:`integers`,
    :meth:`table` or :meth:`from_config`.  Instances are immutable after
    construction.
    """

    def __init__(self, kind, *, m=None, rank=None, elements=None, table=None,
                 generators=None, element_cap=DEFAULT_ELEMENT_CAP):
        self.kind = kind
        self.m = m
        self.rank = rank
        self.element_cap = element_cap
        self._names = list(elements) if elements is not None else None
        self._table = [list(row) for row in table] if table is not None else None
        self._dist = None
        self._parent = None

        if kind == "cyclic":
            if not isinstance(m, int) or m < 1:
                raise ValueError("cyclic group needs a positive order m")
            self.order = m
            self.identity = 0
            self.multiply = lambda a, b: (a + b) % m
            self.inverse = lambda a: (-a) % m
            gens = [("a", 1 % m), ("A", (-1) % m)]
        elif kind == "integers":
            self.order = None
            self.identity = 0
            self.multiply = lambda a, b: a + b
            self.inverse = lambda a: -a
            gens = [("a", 1), ("A", -1)]
        elif kind == "free":
            if not isinstance(rank, int) or rank < 1:
                raise ValueError("free group needs a positive rank")
            self.order = None
            self.identity = ()
            self.multiply = lambda a, b: _free_reduce(a + b)
            self.inverse = lambda a: tuple(-x for x in reversed(a))
            gens = []
            for k in range(1, rank + 1):
                name = self._free_name(k)
                gens.append((name, (k,)))
                gens.append((name.upper(), (-k,)))
        elif kind == "table":
            self._check_table()
            self.order = len(self._table)
            self.identity = self._find_identity()
            tab = self._table
            self.multiply = lambda a, b: tab[a][b]
            invs = [row.index(self.identity) for row in tab]
            self.inverse = lambda a: invs[a]
            if generators is None:
                raise ValueError("table group needs generators")
            gens = []
            for g in generators:
                idx = self._names.index(g) if isinstance(g, str) else int(g)
                gens.append((self._names[idx], idx))
            self._given_generators = [lab for lab, _ in gens]
        else:
            raise ValueError(f"unknown group kind {kind!r}")

        self.generators = self._symmetrize(gens)
        if self.order is not None:
            self._precompute()

    # -- constructors ----------------------------------------------------

    @classmethod
    def cyclic(cls, m, **kw):
        return cls("cyclic", m=m, **kw)

    @classmethod
    def free(cls, rank, **kw):
        return cls("free", rank=rank, **kw)

    @classmethod
    def integers(cls, **kw):
        return cls("integers", **kw)

    @classmethod
    def table(cls, elements, table, generators, **kw):
        return cls("table", elements=elements, table=table,
                   generators=generators, **kw)

    @classmethod
    def symmetric3(cls):
        """S3 as a multiplication table, generated by (12) and (123)."""
        from itertools import permutations
        perms = list(permutations(range(3)))
        names = ["".join(map(str, p)) for p in perms]
        # (p*q)(x) = q(p(x)): apply p first
        tab = [[perms.index(tuple(q[p[x]] for x in range(3))) for q in perms]
               for p in perms]
        return cls.table(names, tab, ["102", "120"])

    @classmethod
    def from_config(cls, cfg: dict[str, Any], **kw):
        kind = cfg["kind"]
        if kind == "cyclic":
            return cls.cyclic(int(cfg["m"]), **kw)
        if kind == "free":
            return cls.free(int(cfg["rank"]), **kw)
        if kind == "integers":
            return cls.integers(**kw)
        if kind == "table":
            return cls.table(cfg["elements"], cfg["table"], cfg["generators"], **kw)
        raise ValueError(f"unknown group kind {kind!r}")

    @classmethod
    def load(cls, path, **kw):
        return cls.from_config(json.loads(Path(path).read_text()), **kw)

    def to_config(self) -> dict[str, Any]:
        if self.kind == "cyclic":
            return {"kind": "cyclic", "m": self.m}
        if self.kind == "free":
            return {"kind": "free", "rank": self.rank}
        if self.kind == "integers":
            return {"kind": "integers"}
        return {"kind": "table", "elements": self._names, "table": self._table,
                "generators": self._given_generators}

    # -- internals -------------------------------------------------------

    @staticmethod
    def _free_name(k):
        if k <= len(_FREE_LETTERS):
            return _FREE_LETTERS[k - 1]
        return f"x{k}"

    def _check_table(self):
        tab = self._table
        if not tab or self._names is None or len(self._names) != len(tab):
            raise ValueError("table and element list must be non-empty and match")
        n = len(tab)
        full = set(range(n))
        for row in tab:
            if len(row) != n or set(row) != full:
                raise ValueError("multiplication table is not a Latin square")
        for col in range(n):
            if {tab[r][col] for r in range(n)} != full:
                raise ValueError("multiplication table is not a Latin square")
        for a in range(n):
            ra = tab[a]
            for b in range(n):
                ab = ra[b]
                rab = tab[ab]
                rb = tab[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise ValueError("multiplication table is not associative")

    def _find_identity(self):
        n = len(self._table)
        for e in range(n):
            if self._table[e] == list(range(n)):
                return e
        raise ValueError("multiplication table has no identity")

    def _symmetrize(self, gens):
        out = []
        seen = set()
        for label, g in gens:
            if g == self.identity or g in seen:
                continue
            seen.add(g)
            out.append((label, g))
        for label, g in list(out):
            gi = self.inverse(g)
            if gi not in seen:
                seen.add(gi)
                out.append((self._inverse_label(label), gi))
        return tuple(out)

    @staticmethod
    def _inverse_label(label):
        return label.swapcase() if len(label) == 1 else label + "^-1"

    def _precompute(self):
        # BFS over the finite group; frontier-outer, generator-inner order
        # makes the parent links encode the shortlex-least geodesic.
        dist = {self.identity: 0}
        parent = {self.identity: None}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for j, (_, s) in enumerate(self.generators):
                b = self.multiply(a, s)
                if b not in dist:
                    dist[b] = dist[a] + 1
                    parent[b] = (a, j)
                    queue.append(b)
        if len(dist) != self.order:
            raise ValueError(
                f"generators reach {len(dist)} of {self.order} elements")
        self._dist = dist
        self._parent = parent
        self.diameter = max(dist.values())

    # -- group operations ------------------------------------------------

    def validate(self, a):
        if self.kind in ("cyclic", "table"):
            if not isinstance(a, int) or not 0 <= a < self.order:
                raise InvalidElementError(f"{a!r} is not an element of {self}")
        elif self.kind == "integers":
            if not isinstance(a, int):
                raise InvalidElementError(f"{a!r} is not an integer")
        else:
            if not isinstance(a, tuple) or any(
                    not isinstance(x, int) or x == 0 or abs(x) > self.rank for x in a):
                raise InvalidElementError(f"{a!r} is not a free-group word")
            if _free_reduce(a) != a:
                raise InvalidElementError(f"{a!r} is not reduced")
        return a

    def h_multiply(self, a, b):
        """Checked product; hot loops use ``self.multiply`` directly."""
        return self.multiply(self.validate(a), self.validate(b))

    def is_identity(self, a):
        return a == self.identity

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse(a), -k
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    def geodesic_length(self, a) -> int:
        if self._dist is not None:
            try:
                return self._dist[a]
            except (KeyError, TypeError):
                raise InvalidElementError(f"{a!r} is not an element of {self}")
        if self.kind == "free":
            return len(self.validate(a))
        return abs(self.validate(a))

    def geodesic_word(self, a) -> tuple[int, ...]:
        """Shortlex-least geodesic word over S0, as 0-based generator indices."""
        if self._parent is not None:
            if a not in self._parent:
                raise InvalidElementError(f"{a!r} is not an element of {self}")
            word = []
            while self._parent[a] is not None:
                a, j = self._parent[a]
                word.append(j)
            return tuple(reversed(word))
        index = {g: j for j, (_, g) in enumerate(self.generators)}
        if self.kind == "free":
            return tuple(index[(x,)] for x in self.validate(a))
        step = 1 if self.validate(a) >= 0 else -1
        return (index[step],) * abs(a)

    def evaluate_word(self, word: Sequence[int]):
        out = self.identity
        for j in word:
            out = self.multiply(out, self.generators[j][1])
        return out

    def elements(self):
        if self.order is None:
            raise ValueError("infinite group has no element list")
        return sorted(self._dist)

    def h_ball(self, n: int) -> set:
        """The ball of radius ``n`` around the identity w.r.t. S0."""
        if n < 0:
            return set()
        if self._dist is not None:
            return {a for a, d in self._dist.items() if d <= n}
        if self.kind == "integers":
            if 2 * n + 1 > self.element_cap:
                k = (self.element_cap - 1) // 2 + 1
                raise CapExceededError(k, k - 1, self.element_cap)
            return set(range(-n, n + 1))
        r = self.rank
        size = 1
        for k in range(1, n + 1):
            size += 2 * r * (2 * r - 1) ** (k - 1)
            if size > self.element_cap:
                raise CapExceededError(k, k - 1, self.element_cap)
        out = {()}
        frontier = [()]
        for _ in range(n):
            nxt = []
            for w in frontier:
                for x in list(range(1, r + 1)) + list(range(-1, -r - 1, -1)):
                    if w and w[-1] == -x:
                        continue
                    nxt.append(w + (x,))
            out.update(nxt)
            frontier = nxt
        return out

    def sphere_sizes(self, n: int) -> list[int]:
        """Sizes of the spheres of radius 0..n in H."""
        if self._dist is not None:
            sizes = [0] * (n + 1)
            for d in self._dist.values():
                if d <= n:
                    sizes[d] += 1
            return sizes
        if self.kind == "integers":
            return [1] + [2] * n
        r = self.rank
        return [1] + [2 * r * (2 * r - 1) ** (k - 1) for k in range(1, n + 1)]

    # -- literal syntax --------------------------------------------------

    def format(self, a) -> str:
        if a == self.identity:
            return "1"
        if self.kind == "table":
            return self._names[a]
        if self.kind == "free":
            return "".join(self._free_name(abs(x)) if x > 0
                           else self._free_name(abs(x)).upper() for x in a)
        if a == 1:
            return "a"
        return f"a^{a}"

    def parse(self, text: str):
        text = text.strip()
        if text in ("1", "e", ""):
            return self.identity
        if self.kind == "table":
            if text not in self._names:
                raise InvalidElementError(f"unknown element {text!r}")
            return self._names.index(text)
        if self.kind == "free":
            names = {self._free_name(k): k for k in range(1, self.rank + 1)}
            word = []
            for ch in text:
                if ch in names:
                    word.append(names[ch])
                elif ch.lower() in names:
                    word.append(-names[ch.lower()])
                else:
                    raise InvalidElementError(f"bad free-group letter {ch!r}")
            return _free_reduce(word)
        m = re.fullmatch(r"(a|A)(?:\^(-?\d+))?", text)
        if not m:
            raise InvalidElementError(f"bad element literal {text!r}")
        k = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "A":
            k = -k
        return k % self.m if self.kind == "cyclic" else k

    def __repr__(self):
        if self.kind == "cyclic":
            return f"CoordinateGroup.cyclic({self.m})"
        if self.kind == "free":
            return f"CoordinateGroup.free({self.rank})"
        if self.kind == "integers":
            return "CoordinateGroup.integers()"
        return f"CoordinateGroup.table(<{self.order} elements>)"

    def __eq__(self, other):
        return isinstance(other, CoordinateGroup) and self.to_config() == other.to_config()

    def __hash__(self):
        return hash(json.dumps(self.to_config(), sort_keys=True))
