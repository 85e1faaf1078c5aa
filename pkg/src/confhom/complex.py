"""Configuration chain complexes of 2-complexes with one 0-cell.

A cell of the bar model is a pair ``(blocks, coeff)``: ``blocks`` is the
printed bar word ``(N_r, ..., N_1)`` of ordered point tuples living in the
attached upper half plane, ``coeff`` a basis element of the 1-skeleton
on the remaining points.  Its homological degree is n + r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Sequence

from .intlin import (AbGroupInvariants, Quotient, SparseIntMat, rank, snf,
                     subquotient_invariants)
from .magnus import FreeGroupWord
from .shuffle import (EdgeAlphabet, HElement, basis_enumerate, basis_product, delta_of_letters,
                      delta_on, shuffle_product)


class BoundaryError(AssertionError):
    """A built complex failed d o d == 0."""


@dataclass(frozen=True)
class TwoComplexPresentation:
    alphabet: EdgeAlphabet
    relators: tuple = ()

    def __post_init__(self):
        r = len(self.alphabet)
        rels = tuple(FreeGroupWord(z.letters) for z in self.relators)
        for z in rels:
            if any(not 0 <= e < r for e, _ in z.letters):
                raise ValueError("relator letter outside the alphabet")
        object.__setattr__(self, "relators", rels)

    @property
    def r(self) -> int:
        return len(self.alphabet)

    @classmethod
    def parse(cls, text: str) -> "TwoComplexPresentation":
        gens = None
        rels = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(":")
            key = key.strip()
            if key == "gens":
                gens = EdgeAlphabet(rest.split())
            elif key == "rel":
                if gens is None:
                    raise ValueError("'gens:' must come before 'rel:'")
                rels.append(FreeGroupWord.parse(rest, gens))
            else:
                raise ValueError(f"unrecognized line: {raw!r}")
        if gens is None:
            raise ValueError("missing 'gens:' line")
        return cls(gens, tuple(rels))


# -- degree n presentation --------------------------------------------------------

def delta_zeta_table(p: TwoComplexPresentation, n: int) -> list[list[HElement]]:
    """For each relator, [Delta^k(z) on 1..k for k = 0..n]."""
    return [delta_of_letters(p.r, z.letters, n).comps for z in p.relators]


def kernel_generators(p: TwoComplexPresentation, n: int, points: Sequence[int] | None = None):
    """Spanning set of K_n: Delta^I(z_j) x psi over ordered I, basis psi."""
    pts = tuple(points) if points is not None else tuple(range(1, n + 1))
    out = []
    if not p.relators:
        return out
    table = delta_zeta_table(p, len(pts))
    for k in range(1, len(pts) + 1):
        for subset in combinations(pts, k):
            rest = tuple(q for q in pts if q not in subset)
            others = basis_enumerate(p.r, len(rest), rest)
            for order in permutations(subset):
                for comps in table:
                    z = comps[k]
                    if z.is_zero():
                        continue
                    zi = delta_on(z, order)
                    for psi in others:
                        out.append(shuffle_product(zi, HElement.basis(psi)))
    return out


@dataclass
class HnPresentation:
    """H_n(U) as the quotient of H_n(U1) by K_n."""

    presentation: TwoComplexPresentation
    n: int
    basis: list
    kernel: SparseIntMat
    quotient: Quotient

    @property
    def invariants(self) -> AbGroupInvariants:
        return self.quotient.invariants

    @cached_property
    def index(self) -> dict:
        return {b: i for i, b in enumerate(self.basis)}

    def vector(self, x: HElement) -> dict:
        return {self.index[b]: c for b, c in x.terms.items()}

    def project(self, x: HElement) -> tuple[int, ...]:
        return self.quotient.project(self.vector(x))

    def element(self, vec: dict) -> HElement:
        pts = range(1, self.n + 1)
        return HElement(self.presentation.r, pts, {self.basis[i]: c for i, c in vec.items()})


_HN_CACHE: dict = {}


def hn_presentation(p: TwoComplexPresentation, n: int) -> HnPresentation:
    key = (p, n)
    if key not in _HN_CACHE:
        basis = basis_enumerate(p.r, n)
        idx = {b: i for i, b in enumerate(basis)}
        cols = []
        seen = set()
        for x in kernel_generators(p, n):
            col = {idx[b]: c for b, c in x.terms.items()}
            k = tuple(sorted(col.items()))
            if col and k not in seen:
                seen.add(k)
                cols.append(col)
        kmat = SparseIntMat(len(basis), len(cols), cols)
        _HN_CACHE[key] = HnPresentation(p, n, basis, kmat, Quotient(kmat))
    return _HN_CACHE[key]


def kernel_K(p: TwoComplexPresentation, n: int) -> tuple[SparseIntMat, AbGroupInvariants]:
    h = hn_presentation(p, n)
    return h.kernel, AbGroupInvariants(rank(h.kernel))


# -- F-filtration ------------------------------------------------------------------

def _set_partitions(items: tuple, s: int):
    """Unordered partitions of items into exactly s nonempty blocks."""
    if s == 0:
        if not items:
            yield []
        return
    if len(items) < s:
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest) + 1):
        for comp in combinations(rest, k):
            block = (first,) + comp
            remaining = tuple(x for x in rest if x not in comp)
            for tail in _set_partitions(remaining, s - 1):
                yield [block] + tail


def filtration_generators(r: int, n: int, s: int) -> list[HElement]:
    """Products b_1 x ... x b_s of basis elements on s nonempty parts."""
    out = []
    for parts in _set_partitions(tuple(range(1, n + 1)), s):
        factors = [basis_enumerate(r, len(b), b) for b in parts]
        stack = [HElement.unit(r)]
        for choices in factors:
            stack = [shuffle_product(x, HElement.basis(c)) for x in stack for c in choices]
        out.extend(stack)
    return out


def _span(vectors: list[dict], d: int) -> SparseIntMat:
    return SparseIntMat(d, len(vectors), vectors)


def filtration_ranks(p: TwoComplexPresentation, n: int) -> list[AbGroupInvariants]:
    """F^s H_n(U) / F^{s+1} H_n(U) for s = 1..n."""
    h = hn_presentation(p, n)
    d = len(h.basis)
    kcols = [dict(c) for c in h.kernel.cols]
    spans = []
    for s in range(1, n + 2):
        gens = [h.vector(x) for x in filtration_generators(p.r, n, s)] if s <= n else []
        spans.append(_span([g for g in gens if g] + kcols, d))
    return [subquotient_invariants(spans[s], spans[s + 1]) for s in range(n)]


def fn_word(r: int, word: Sequence[int]) -> HElement:
    """Product of singleton cells Delta^(i)_{word_i}."""
    x = HElement.unit(r)
    for i, e in enumerate(word, start=1):
        x = shuffle_product(x, HElement.cell(r, e, (i,)))
    return x


def fn_map(p: TwoComplexPresentation, n: int, target: str = "U") -> SparseIntMat | list:
    """Matrix of S_1^{(x)n} -> H_n: columns indexed by words (lex order).

    target "U1" gives a SparseIntMat into H_n(U1); "U" gives quotient
    coordinate tuples.
    """
    from itertools import product as iproduct
    h = hn_presentation(p, n)
    cols = [h.vector(fn_word(p.r, w)) for w in iproduct(range(p.r), repeat=n)]
    if target == "U1":
        return SparseIntMat(len(h.basis), len(cols), cols)
    return [h.quotient.project(c) for c in cols]


# -- the bar complex ----------------------------------------------------------------

@dataclass
class ChainComplexZ:
    """Free chain complex with boundary[d]: C_d -> C_{d-1}."""

    basis: dict
    boundary: dict
    _snf: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def check(self) -> None:
        for d in self.degrees:
            a, b = self.boundary.get(d), self.boundary.get(d - 1)
            if a is None or b is None or not a.n_cols or not b.n_cols:
                continue
            if not (b @ a).is_zero():
                raise BoundaryError(f"boundary squares to nonzero in degree {d}")

    def _snf_of(self, d: int):
        if d not in self._snf:
            m = self.boundary.get(d)
            self._snf[d] = snf(m) if m is not None else None
        return self._snf[d]

    def homology(self, d: int) -> AbGroupInvariants:
        n = self.dim(d)
        if n == 0:
            return AbGroupInvariants(0)
        out_rank = self._snf_of(d).rank if self.boundary.get(d) is not None else 0
        inc = self._snf_of(d + 1) if self.boundary.get(d + 1) is not None else None
        in_rank = inc.rank if inc else 0
        torsion = tuple(x for x in inc.diagonal if x > 1) if inc else ()
        return AbGroupInvariants(n - out_rank - in_rank, torsion)

    def index_of(self, d: int, cell) -> int:
        if not hasattr(self, "_index"):
            self._index = {}
        if d not in self._index:
            self._index[d] = {c: i for i, c in enumerate(self.basis[d])}
        return self._index[d][cell]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.dim(d) for d in self.degrees)


def _ordered_block_sequences(pts: tuple):
    """All bar words (N_r, ..., N_1) of nonempty ordered blocks covering pts."""
    if not pts:
        yield ()
        return
    n = len(pts)
    for k in range(1, n + 1):
        for subset in combinations(pts, k):
            rest = tuple(q for q in pts if q not in subset)
            for order in permutations(subset):
                for tail in _ordered_block_sequences(rest):
                    yield (order,) + tail


def bar_cells(p: TwoComplexPresentation, points: Sequence[int]) -> dict:
    """Cells grouped by degree."""
    pts = tuple(sorted(points))
    n = len(pts)
    out: dict = {d: [] for d in range(n, 2 * n + 1)}
    for k in range(n + 1):
        for bar_pts in combinations(pts, k):
            rest = tuple(q for q in pts if q not in bar_pts)
            coeffs = basis_enumerate(p.r, len(rest), rest)
            if not coeffs:
                continue
            for blocks in _ordered_block_sequences(bar_pts):
                for c in coeffs:
                    out[n + len(blocks)].append((blocks, c))
    for d in out:
        out[d].sort(key=lambda cell: (tuple(map(len, cell[0])), cell))
    return out


def _line_product(x: tuple, y: tuple) -> tuple:
    """Shuffle product of two simplices in H(R) as ((order, sign), ...)."""
    return tuple((c[0], s) for c, s in basis_product((x,), (y,)))


def bar_boundary_terms(cell, p: TwoComplexPresentation, n: int, zeta_table: list) -> dict:
    """Boundary of one cell: {cell: coefficient}."""
    blocks, coeff = cell
    r = len(blocks)
    out: dict = {}
    # merge N_{t+1} (printed left) with N_t, lower factor first; the sign
    # counts bar degrees up to and including N_{t+1}
    prefix = 0
    for pos in range(r - 1):
        upper, lower = blocks[pos], blocks[pos + 1]
        prefix += 1 + len(upper)
        sign = -1 if prefix % 2 else 1
        for merged, s in _line_product(lower, upper):
            key = (blocks[:pos] + (merged,) + blocks[pos + 2:], coeff)
            out[key] = out.get(key, 0) + sign * s
    if r:
        low = blocks[-1]
        # same rule: total bar degree of all blocks
        sign = -1 if (sum(map(len, blocks)) + r) % 2 else 1
        psi = HElement.basis(coeff)
        for comps in zeta_table:
            z = comps[len(low)]
            if z.is_zero():
                continue
            prod = shuffle_product(psi, delta_on(z, low))
            for c, v in prod.terms.items():
                key = (blocks[:-1], c)
                out[key] = out.get(key, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def build_bar_complex(p: TwoComplexPresentation, n: int, points: Sequence[int] | None = None,
                      check: bool = True) -> ChainComplexZ:
    """Closed-support chain complex of conf_N(U) for a single attached 2-cell."""
    if len(p.relators) != 1:
        raise ValueError("full complex requires single relator")
    pts = tuple(points) if points is not None else tuple(range(1, n + 1))
    n = len(pts)
    cells = bar_cells(p, pts)
    table = delta_zeta_table(p, n)
    index = {d: {c: i for i, c in enumerate(cs)} for d, cs in cells.items()}
    boundary = {}
    for d, cs in cells.items():
        if d - 1 not in cells:
            boundary[d] = SparseIntMat(0, len(cs))
            continue
        tgt = index[d - 1]
        cols = [{tgt[k]: v for k, v in bar_boundary_terms(c, p, n, table).items()} for c in cs]
        boundary[d] = SparseIntMat(len(cells[d - 1]), len(cs), cols)
    cx = ChainComplexZ(cells, boundary)
    if check:
        cx.check()
    return cx


def homology_cl(p: TwoComplexPresentation, n: int, k: int) -> AbGroupInvariants:
    """H^cl_{n+k}(conf_n(U))."""
    if k < 0 or k > n:
        return AbGroupInvariants(0)
    return build_bar_complex(p, n).homology(n + k)


# -- closed surface: cone over the exit faces ----------------------------------------

def _exit_faces(cell):
    """Faces where one point reaches the 0-cell: {(i, cell'): coefficient}.

    A run of k ordered points on a line leaves through its first point at
    -infinity (local sign -1) or its last point at +infinity (sign
    (-1)^(k-1)); for k = 1 the two cancel.  A bar block carries its height
    coordinate in front of the point coordinates.
    """
    blocks, coeff = cell
    out: dict = {}

    def add(key, v):
        out[key] = out.get(key, 0) + v

    prefix = 0
    for pos, b in enumerate(blocks):
        k = len(b)
        if k >= 2:
            base = -(-1) ** prefix
            add((b[0], (blocks[:pos] + (b[1:],) + blocks[pos + 1:], coeff)), -base)
            add((b[-1], (blocks[:pos] + (b[:-1],) + blocks[pos + 1:], coeff)), base * (-1) ** (k - 1))
        prefix += k + 1
    for e, seq in enumerate(coeff):
        k = len(seq)
        if k >= 2:
            base = (-1) ** prefix
            add((seq[0], (blocks, coeff[:e] + (seq[1:],) + coeff[e + 1:])), -base)
            add((seq[-1], (blocks, coeff[:e] + (seq[:-1],) + coeff[e + 1:])), base * (-1) ** (k - 1))
        prefix += k
    return {k: v for k, v in out.items() if v}


def closed_surface_complex(g: int, n: int, check: bool = True) -> ChainComplexZ:
    """Cells of conf_n of the closed genus g surface as a mapping cone.

    The open part sits in the upper row with negated boundary; the cells
    with one point at the 0-cell form the subcomplex.
    """
    alphabet = EdgeAlphabet.surface(g, 0)
    zeta = FreeGroupWord([(2 * i + j, s) for i in range(g) for j, s in ((0, 1), (1, 1), (0, -1), (1, -1))])
    p = TwoComplexPresentation(alphabet, (zeta,))
    pts = tuple(range(1, n + 1))
    source = build_bar_complex(p, n, pts, check=check)
    targets = {i: build_bar_complex(p, n - 1, tuple(q for q in pts if q != i), check=check)
               for i in pts}
    basis: dict = {}
    for d in range(n - 1, 2 * n + 1):
        cells = [(0, c) for c in source.basis.get(d, ())]
        for i in pts:
            cells += [(i, c) for c in targets[i].basis.get(d, ())]
        basis[d] = cells
    index = {d: {c: j for j, c in enumerate(cs)} for d, cs in basis.items()}
    boundary = {}
    for d, cs in basis.items():
        if d - 1 not in basis:
            boundary[d] = SparseIntMat(0, len(cs))
            continue
        rows = index[d - 1]
        cols = []
        for tag, cell in cs:
            col: dict = {}
            if tag == 0:
                j = source.index_of(d, cell)
                for row, v in source.boundary[d].cols[j].items():
                    col[rows[(0, source.basis[d - 1][row])]] = -v
                for (i, face), v in _exit_faces(cell).items():
                    key = rows[(i, face)]
                    col[key] = col.get(key, 0) + v
            else:
                t = targets[tag]
                j = t.index_of(d, cell)
                for row, v in t.boundary[d].cols[j].items():
                    col[rows[(tag, t.basis[d - 1][row])]] = v
            cols.append({k: v for k, v in col.items() if v})
        boundary[d] = SparseIntMat(len(basis[d - 1]), len(cs), cols)
    cx = ChainComplexZ(basis, boundary)
    if check:
        cx.check()
    return cx


def closed_surface_homology(g: int, n: int) -> list[AbGroupInvariants]:
    """H^cl_d(conf_n(X)) for d = 0..2n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cx = closed_surface_complex(g, n)
    return [cx.homology(d) if d in cx.basis else AbGroupInvariants(0) for d in range(2 * n + 1)]
