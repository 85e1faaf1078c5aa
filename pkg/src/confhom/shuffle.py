"""The shuffle algebra of a wedge of circles.

A basis element of H_N(U1) (U1 a disjoint union of oriented lines, one per
edge of the alphabet) is stored as a tuple with one entry per edge: the
ordered tuple of points placed on that edge.  Its canonical word is the
concatenation of those tuples in alphabet order; all signs are
permutation signs relative to canonical words.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

Basis = tuple  # tuple[tuple[int, ...], ...], one entry per edge


class EdgeAlphabet:
    """Ordered, immutable list of oriented 1-cell names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate edge names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeAlphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"EdgeAlphabet({' '.join(self.names)})"

    @classmethod
    def surface(cls, g: int, l: int = 0) -> "EdgeAlphabet":
        names = []
        for i in range(1, g + 1):
            names += [f"a{i}", f"a-{i}"]
        names += [f"b{j}" for j in range(1, l + 1)]
        return cls(names)


def canonical_word(b: Basis) -> tuple[int, ...]:
    return tuple(p for seq in b for p in seq)


def points_of(b: Basis) -> frozenset:
    return frozenset(canonical_word(b))


def perm_sign(source: Sequence[int], target: Sequence[int]) -> int:
    """Sign of the permutation taking the word ``source`` to ``target``."""
    pos = {x: i for i, x in enumerate(target)}
    seq = [pos[x] for x in source]
    sign = 1
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _interleavings(u: tuple, v: tuple):
    n = len(u) + len(v)
    for slots in combinations(range(n), len(u)):
        out = [None] * n
        it_u, it_v = iter(u), iter(v)
        s = set(slots)
        for k in range(n):
            out[k] = next(it_u) if k in s else next(it_v)
        yield tuple(out)


@lru_cache(maxsize=1 << 18)
def basis_product(x: Basis, y: Basis) -> tuple:
    """Signed shuffle product of two basis elements on disjoint points."""
    concat = canonical_word(x) + canonical_word(y)
    per_edge = [tuple(_interleavings(a, b)) if a and b else ((a or b),)
                for a, b in zip(x, y)]
    out = []
    for choice in product(*per_edge):
        out.append((choice, perm_sign(concat, canonical_word(choice))))
    return tuple(out)


class HElement:
    """Integer combination of basis elements, all on the same point set."""

    __slots__ = ("r", "points", "terms")

    def __init__(self, r: int, points: Iterable[int], terms: Mapping[Basis, int] | None = None):
        self.r = r
        self.points = frozenset(points)
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        for k in self.terms:
            if len(k) != r:
                raise ValueError("basis element has wrong number of edges")
            if points_of(k) != self.points or len(canonical_word(k)) != len(self.points):
                raise ValueError(f"basis element {k} does not live on {sorted(self.points)}")

    @classmethod
    def unit(cls, r: int) -> "HElement":
        return cls(r, (), {((),) * r: 1})

    @classmethod
    def zero(cls, r: int, points: Iterable[int]) -> "HElement":
        return cls(r, points)

    @classmethod
    def basis(cls, b: Basis, coeff: int = 1) -> "HElement":
        return cls(len(b), points_of(b), {b: coeff})

    @classmethod
    def cell(cls, r: int, edge: int, seq: Sequence[int]) -> "HElement":
        """The single cell with ``seq`` on ``edge``, i.e. the simplex class."""
        b = tuple(tuple(seq) if e == edge else () for e in range(r))
        return cls.basis(b)

    @property
    def n(self) -> int:
        return len(self.points)

    def _check(self, other: "HElement") -> None:
        if self.r != other.r or self.points != other.points:
            raise ValueError("elements live in different groups")

    def __add__(self, other: "HElement") -> "HElement":
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return HElement(self.r, self.points, t)

    def __neg__(self) -> "HElement":
        return HElement(self.r, self.points, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "HElement") -> "HElement":
        return self + (-other)

    def __rmul__(self, c: int) -> "HElement":
        return HElement(self.r, self.points, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return shuffle_product(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HElement):
            return NotImplemented
        return (self.r, self.points, self.terms) == (other.r, other.points, other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def relabel(self, mapping: Mapping[int, int]) -> "HElement":
        pts = [mapping[p] for p in self.points]
        t = {tuple(tuple(mapping[p] for p in seq) for seq in k): v for k, v in self.terms.items()}
        return HElement(self.r, pts, t)

    def normalized(self) -> "HElement":
        order = sorted(self.points)
        return self.relabel({p: i + 1 for i, p in enumerate(order)})

    def render(self, alphabet: EdgeAlphabet | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            coeff = "" if v == 1 else "-" if v == -1 else f"{v}*"
            parts.append(coeff + render_basis(k, alphabet))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"HElement({self.render()})"


def render_basis(b: Basis, alphabet: EdgeAlphabet | None = None) -> str:
    if not any(b):
        return "1"
    names = alphabet.names if alphabet is not None else [f"e{i}" for i in range(len(b))]
    return "|".join(f"{names[e]}:({','.join(map(str, seq))})" for e, seq in enumerate(b) if seq)


def shuffle_product(x: HElement, y: HElement) -> HElement:
    """Koszul-signed Kunneth product on disjoint point sets."""
    if x.r != y.r:
        raise ValueError("different alphabets")
    if x.points & y.points:
        raise ValueError(f"point sets overlap: {sorted(x.points & y.points)}")
    acc: dict = {}
    for a, u in x.terms.items():
        for b, v in y.terms.items():
            for c, s in basis_product(a, b):
                acc[c] = acc.get(c, 0) + s * u * v
    return HElement(x.r, x.points | y.points, acc)


def basis_enumerate(r: int, n: int, points: Sequence[int] | None = None) -> list[Basis]:
    """All basis elements of H_N over r edges, sorted; count n! C(n+r-1, n)."""
    pts = tuple(points) if points is not None else tuple(range(1, n + 1))
    out = []
    for labels in product(range(r), repeat=len(pts)):
        fibers = [[p for p, e in zip(pts, labels) if e == k] for k in range(r)]
        for orders in product(*(permutations(f) for f in fibers)):
            out.append(tuple(orders))
    out.sort()
    return out


def basis_count(r: int, n: int) -> int:
    if n == 0:
        return 1
    return factorial(n) * comb(n + r - 1, n) if r else 0


# -- truncated series ------------------------------------------------------------

class HSeries:
    """Truncated series sum_k c_k t^k with c_k in H_k on the points 1..k."""

    __slots__ = ("r", "n_max", "comps")

    def __init__(self, r: int, n_max: int, comps: Sequence):
        self.r = r
        self.n_max = n_max
        comps = list(comps)[: n_max + 1]
        while len(comps) < n_max + 1:
            comps.append(HElement.zero(r, range(1, len(comps) + 1)))
        if not isinstance(comps[0], int):
            raise TypeError("degree-0 component must be an int")
        for k in range(1, n_max + 1):
            if comps[k].points != frozenset(range(1, k + 1)):
                raise ValueError(f"component {k} must live on 1..{k}")
        self.comps = comps

    @classmethod
    def one(cls, r: int, n_max: int) -> "HSeries":
        return cls(r, n_max, [1])

    @classmethod
    def generator(cls, r: int, edge: int, n_max: int) -> "HSeries":
        """sum_k Delta^(1..k)_e t^k, the image of the loop around ``edge``."""
        return cls(r, n_max, [1] + [HElement.cell(r, edge, range(1, k + 1)) for k in range(1, n_max + 1)])

    def __getitem__(self, k: int):
        return self.comps[k]

    def __add__(self, other: "HSeries") -> "HSeries":
        _same(self, other)
        return HSeries(self.r, self.n_max, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "HSeries":
        return HSeries(self.r, self.n_max, [-c for c in self.comps])

    def __sub__(self, other: "HSeries") -> "HSeries":
        return self + (-other)

    def __mul__(self, other: "HSeries") -> "HSeries":
        return series_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        return (self.r, self.n_max, self.comps) == (other.r, other.n_max, other.comps)

    def __repr__(self) -> str:
        return f"HSeries(n_max={self.n_max}, {self.comps!r})"


def _same(s: HSeries, t: HSeries) -> None:
    if s.r != t.r or s.n_max != t.n_max:
        raise ValueError("series of different shape")



def series_mul(s: HSeries, t: HSeries) -> HSeries:
    """Cauchy product, identifying [i] + [j] with [i+j] by order sum."""
    _same(s, t)
    r, n = s.r, s.n_max
    comps: list = [s[0] * t[0]]
    for k in range(1, n + 1):
        acc = HElement.zero(r, range(1, k + 1))
        for i in range(k + 1):
            j = k - i
            a, b = s[i], t[j]
            if i == 0:
                if a:
                    acc = acc + a * b
                continue
            if j == 0:
                if b:
                    acc = acc + b * a
                continue
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + shuffle_product(a, b.relabel({p: p + i for p in b.points}))
        comps.append(acc)
    return HSeries(r, n, comps)


def series_inverse(s: HSeries) -> HSeries:
    """Inverse of a series with constant term +-1 (truncated geometric series)."""
    c = s[0]
    if c not in (1, -1):
        raise ValueError(f"constant term {c} is not a unit")
    # s = c (1 + u), s^-1 = c sum (-u)^m
    neg_u = HSeries(s.r, s.n_max, [0] + [-(c * x) for x in s.comps[1:]])
    acc = HSeries.one(s.r, s.n_max)
    power = HSeries.one(s.r, s.n_max)
    for _ in range(s.n_max):
        power = power * neg_u
        acc = acc + power
    return HSeries(s.r, s.n_max, [c * x for x in acc.comps])


@lru_cache(maxsize=None)
def _generator_series(r: int, edge: int, exponent: int, n_max: int) -> HSeries:
    g = HSeries.generator(r, edge, n_max)
    return g if exponent > 0 else series_inverse(g)


def delta_of_letters(r: int, letters: Sequence[tuple[int, int]], n_max: int) -> HSeries:
    """Image of a word (sequence of (edge, +-1)) under the ring map Delta_t."""
    acc = HSeries.one(r, n_max)
    for edge, e in letters:
        if not 0 <= edge < r:
            raise KeyError(f"unknown letter index {edge}")
        acc = acc * _generator_series(r, edge, e, n_max)
    return acc


def delta_on(element: HElement, order: Sequence[int]) -> HElement:
    """Transport an element on 1..k to the totally ordered set ``order``."""
    return element.relabel({i + 1: p for i, p in enumerate(order)})
