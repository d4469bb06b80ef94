"""Breadth-first enumeration of Cayley balls and growth statistics.

Generator indices in words are 1-based (``s_1 .. s_d``).  Within each
sphere, candidates are explored generator-outer / parent-inner, so an
element is attached to the smallest generator index that reaches it and,
among parents, to the earliest discovered one.  The parent links therefore
define a deterministic geodesic representative for every element.
"""
from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .coordgroup import DEFAULT_ELEMENT_CAP
from .errors import CapExceededError, NotInBallError, PreconditionError
from .wreath import (
    IDENTITY,
    GroupShape,
    WreathElement,
    canonical_key,
    decode_key,
    format_element,
    inverse,
    multiply,
    parse_element,
)


@dataclass(frozen=True)
class GeneratingSet:
    elements: tuple[WreathElement, ...]
    labels: tuple[str, ...]
    shape: GroupShape

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("one label per generator")
        members = set(self.elements)
        if len(members) != len(self.elements):
            raise ValueError("duplicate generators")
        for s in self.elements:
            self.shape.validate(s)
            if s.is_identity():
                raise ValueError("identity is not allowed as a generator")
            if inverse(s, self.shape) not in members:
                raise PreconditionError(
                    f"generating set is not symmetric: inverse of "
                    f"{format_element(s, self.shape)} missing")

    @classmethod
    def symmetrized(cls, elements, shape, labels=None):
        """Append missing inverses (labelled ``<label>^-1``) to ``elements``."""
        elements = list(elements)
        labels = list(labels) if labels else [format_element(s, shape) for s in elements]
        for s, lab in list(zip(elements, labels)):
            si = inverse(s, shape)
            if si not in elements:
                elements.append(si)
                labels.append(lab + "^-1")
        return cls(tuple(elements), tuple(labels), shape)

    @classmethod
    def standard(cls, shape: GroupShape):
        """S = S0 ∪ {t, t^-1} with S0 placed at position 0 (in that order)."""
        elements = [shape.h_at(h, 0) for _, h in shape.H.generators]
        labels = [lab for lab, _ in shape.H.generators]
        elements += [WreathElement((), 1), WreathElement((), -1)]
        labels += ["t", "T"]
        return cls(tuple(elements), tuple(labels), shape)

    @classmethod
    def parse(cls, literals: Sequence[str], shape, symmetrize=True):
        elems = [parse_element(x, shape) for x in literals]
        if symmetrize:
            return cls.symmetrized(elems, shape, list(literals))
        return cls(tuple(elems), tuple(literals), shape)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, j: int) -> WreathElement:
        """The generator ``s_j`` (1-based)."""
        if not 1 <= j <= len(self.elements):
            raise IndexError(f"generator index {j} out of range 1..{len(self.elements)}")
        return self.elements[j - 1]

    def index_of(self, s: WreathElement) -> int:
        return self.elements.index(s) + 1

    @property
    def r_S(self) -> int:
        return max((abs(s.rho) for s in self.elements), default=0)

    @property
    def C(self) -> int:
        """1 + the largest |position| in the support of any generator."""
        return 1 + max((abs(p) for s in self.elements for p, _ in s.coords), default=0)

    def evaluate(self, word: Sequence[int]) -> WreathElement:
        out = IDENTITY
        for j in word:
            out = multiply(out, self[j], self.shape)
        return out

    def to_config(self):
        return {"shape": self.shape.to_config(),
                "generators": [format_element(s, self.shape) for s in self.elements]}

    def digest(self) -> str:
        blob = json.dumps(self.to_config(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class BallIndex:
    """All elements of ``B_S(radius)`` in discovery order with BFS tree links."""

    S: GeneratingSet
    radius: int
    elements: list = field(default_factory=list)
    lengths: list = field(default_factory=list)
    parents: list = field(default_factory=list)
    gens: list = field(default_factory=list)
    sphere_sizes: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    @property
    def shape(self) -> GroupShape:
        return self.S.shape

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.index

    @property
    def ball_sizes(self) -> list[int]:
        out, tot = [], 0
        for s in self.sphere_sizes:
            tot += s
            out.append(tot)
        return out

    def size(self, k: int) -> int:
        return sum(self.sphere_sizes[: k + 1])

    def elements_upto(self, k: int) -> list:
        """Elements of B(k), k <= radius, in discovery order."""
        return self.elements[: self.size(min(k, self.radius))]

    def word_length(self, g) -> int | None:
        i = self.index.get(g)
        return None if i is None else self.lengths[i]

    def geodesic_witness(self, g) -> tuple[int, ...]:
        i = self.index.get(g)
        if i is None:
            raise NotInBallError(f"{format_element(g, self.shape)} not in B({self.radius})")
        word = []
        while self.parents[i] >= 0:
            word.append(self.gens[i])
            i = self.parents[i]
        return tuple(reversed(word))

    # -- cache file ------------------------------------------------------
    # Line 1 is a JSON header; each further line is one element record
    # "key<TAB>length<TAB>parent<TAB>generator" in discovery order.

    def save(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = {"S": self.S.to_config(), "digest": self.S.digest(),
                  "radius": self.radius, "sphere_sizes": self.sphere_sizes}
        with path.open("w") as fh:
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for g, ln, par, gen in zip(self.elements, self.lengths, self.parents, self.gens):
                fh.write(f"{canonical_key(g).decode()}\t{ln}\t{par}\t{gen}\n")

    @classmethod
    def load(cls, path, S: GeneratingSet):
        with Path(path).open() as fh:
            header = json.loads(fh.readline())
            if header["digest"] != S.digest():
                raise ValueError("cache file belongs to a different generating set")
            ball = cls(S, header["radius"], sphere_sizes=header["sphere_sizes"])
            for line in fh:
                key, ln, par, gen = line.rstrip("\n").split("\t")
                g = decode_key(key.encode())
                ball.index[g] = len(ball.elements)
                ball.elements.append(g)
                ball.lengths.append(int(ln))
                ball.parents.append(int(par))
                ball.gens.append(int(gen))
        return ball


def enumerate_ball(S: GeneratingSet, n: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> BallIndex:
    if n < 0:
        raise ValueError("radius must be non-negative")
    shape = S.shape
    ball = BallIndex(S, n)
    ball.elements.append(IDENTITY)
    ball.lengths.append(0)
    ball.parents.append(-1)
    ball.gens.append(0)
    ball.index[IDENTITY] = 0
    ball.sphere_sizes.append(1)
    index = ball.index
    elements = ball.elements
    lo, hi = 0, 1
    for k in range(1, n + 1):
        for j, s in enumerate(S.elements, start=1):
            for pi in range(lo, hi):
                child = multiply(elements[pi], s, shape)
                if child in index:
                    continue
                if len(elements) >= element_cap:
                    raise CapExceededError(k, k - 1, element_cap)
                index[child] = len(elements)
                elements.append(child)
                ball.lengths.append(k)
                ball.parents.append(pi)
                ball.gens.append(j)
        lo, hi = hi, len(elements)
        ball.sphere_sizes.append(hi - lo)
    return ball


def extend_ball(ball: BallIndex, n: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> BallIndex:
    """Grow ``ball`` in place to radius ``n`` (no-op if already that large)."""
    shape = ball.shape
    elements, index = ball.elements, ball.index
    lo = len(elements) - ball.sphere_sizes[-1]
    hi = len(elements)
    for k in range(ball.radius + 1, n + 1):
        for j, s in enumerate(ball.S.elements, start=1):
            for pi in range(lo, hi):
                child = multiply(elements[pi], s, shape)
                if child in index:
                    continue
                if len(elements) >= element_cap:
                    raise CapExceededError(k, k - 1, element_cap)
                index[child] = len(elements)
                elements.append(child)
                ball.lengths.append(k)
                ball.parents.append(pi)
                ball.gens.append(j)
        lo, hi = hi, len(elements)
        ball.sphere_sizes.append(hi - lo)
        ball.radius = k
    return ball


def cache_dir() -> Path:
    return Path(os.environ.get("WREATHDC_CACHE", Path.home() / ".cache" / "wreathdc"))


def cached_ball(S: GeneratingSet, n: int, element_cap: int = DEFAULT_ELEMENT_CAP,
                directory=None) -> BallIndex:
    """Load ``B_S(n)`` from the cache directory, building and saving it if absent."""
    directory = Path(directory) if directory is not None else cache_dir()
    path = directory / f"ball-{S.digest()}-{n}.tsv"
    if path.exists():
        return BallIndex.load(path, S)
    ball = enumerate_ball(S, n, element_cap)
    ball.save(path)
    return ball


@dataclass
class GrowthRecord:
    n: int
    ball_size: int
    sphere_size: int
    nth_root: float | None
    fekete_inf: float | None


@dataclass
class GrowthStats:
    """Finite-range growth data.

    ``fekete_inf`` is the running minimum of the n-th roots: an upper bound
    for the growth rate over the computed range, not the rate itself.
    """

    records: list
    submultiplicative: bool
    violations: list

    @property
    def upper_bound(self) -> float | None:
        return self.records[-1].fekete_inf if self.records else None

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "ball_size", "sphere_size", "nth_root", "fekete_inf"])
            for r in self.records:
                w.writerow([r.n, r.ball_size, r.sphere_size, _fmt(r.nth_root), _fmt(r.fekete_inf)])


def _fmt(x):
    return "" if x is None else f"{x:.12g}"


def growth_stats(ball_sizes: Sequence[int]) -> GrowthStats:
    sizes = list(ball_sizes)
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("ball sizes must be non-decreasing")
    if sizes and sizes[0] < 1:
        raise ValueError("ball sizes must be positive")
    records = []
    inf = None
    for n, b in enumerate(sizes):
        root = None
        if n >= 1:
            root = math.exp(math.log(b) / n)
            inf = root if inf is None else min(inf, root)
        sphere = b - sizes[n - 1] if n else b
        records.append(GrowthRecord(n, b, sphere, root, inf))
    violations = [(a, b) for a in range(len(sizes)) for b in range(a, len(sizes) - a)
                  if sizes[a + b] > sizes[a] * sizes[b]]
    return GrowthStats(records, not violations, violations)
