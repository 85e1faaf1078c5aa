"""Punctured surfaces: the commutator relator, its Delta-expansion, the
many-punctures splitting, and endomorphisms of the free group fixing zeta."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial

from .complex import TwoComplexPresentation, homology_cl, hn_presentation
from .intlin import AbGroupInvariants
from .magnus import FreeGroupWord
from .shuffle import EdgeAlphabet, HElement, basis_enumerate, delta_of_letters, delta_on, shuffle_product


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus g surface minus l + 1 points; b-edges carry the l extra punctures."""

    g: int
    l: int = 0

    def __post_init__(self):
        if self.g < 0 or self.l < 0:
            raise ValueError("genus and puncture count must be non-negative")

    @cached_property
    def alphabet(self) -> EdgeAlphabet:
        return EdgeAlphabet.surface(self.g, self.l)

    @property
    def r(self) -> int:
        return 2 * self.g + self.l

    @cached_property
    def zeta(self) -> FreeGroupWord:
        return zeta_word(self.g, self.l)

    @cached_property
    def presentation(self) -> TwoComplexPresentation:
        return TwoComplexPresentation(self.alphabet, (self.zeta,))


def zeta_word(g: int, l: int = 0) -> FreeGroupWord:
    """(a1, a-1)...(ag, a-g) with (x, y) = x y x^-1 y^-1."""
    letters = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return FreeGroupWord(letters)


def delta_zeta(g: int, n: int, l: int = 0) -> HElement:
    """Coefficient of t^n in Delta_t(zeta), on the points 1..n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = delta_of_letters(2 * g + l, zeta_word(g, l).letters, n)[n]
    return x * HElement.unit(2 * g + l) if isinstance(x, int) else x


def graded_product(x: HElement, y: HElement) -> HElement:
    """x on 1..i times y shifted to i+1..i+j."""
    i = x.n
    return shuffle_product(x, y.relabel({p: p + i for p in y.points}))


def delta3_formula(g: int, l: int = 0) -> HElement:
    """sum_{i=+-1..+-g} sign(i)[Delta^2(alpha_i), a_-i] - sum_i [a_i, a_-i](a_i + a_-i)."""
    r = 2 * g + l

    def br(x, y):
        return graded_product(x, y) - graded_product(y, x)

    out = HElement.zero(r, (1, 2, 3))
    for i in range(g):
        a = HElement.cell(r, 2 * i, (1,))
        am = HElement.cell(r, 2 * i + 1, (1,))
        out = out + br(HElement.cell(r, 2 * i, (1, 2)), am) - br(HElement.cell(r, 2 * i + 1, (1, 2)), a)
        out = out - graded_product(br(a, am), a + am)
    return out


def mu_element(g: int, l: int = 0) -> HElement:
    """mu in H_2(U1): sum_i a_i(1) x a_-i(2) - a_-i(1) x a_i(2)."""
    r = 2 * g + l
    out = HElement.zero(r, (1, 2))
    for i in range(g):
        for e, f, s in ((2 * i, 2 * i + 1, 1), (2 * i + 1, 2 * i, -1)):
            out = out + s * shuffle_product(HElement.cell(r, e, (1,)), HElement.cell(r, f, (2,)))
    return out


# -- many punctures ----------------------------------------------------------------

def many_punctures_check(g: int, l: int, n: int, k: int) -> dict:
    """Compare rank H^cl_{n+k}(conf_n(U)) with the partition sum over one-puncture pieces.

    The right side sums, over the size n0 of the part left on the surface
    with one puncture, binom(n, n0) * rank H^cl_{n0+k} times the number of
    ways to spread the other m points as ordered sequences on l lines,
    m! * binom(m+l-1, l-1).
    """
    if k < 0 or k > n:
        return {"equal": True, "direct": 0, "split": 0, "terms": []}
    direct = homology_cl(SurfaceSpec(g, l).presentation, n, k).free_rank
    base = SurfaceSpec(g, 0).presentation
    terms = []
    total = 0
    for n0 in range(n + 1):
        if n0 == 0:
            h = 1 if k == 0 else 0
        else:
            h = homology_cl(base, n0, k).free_rank if k <= n0 else 0
        m = n - n0
        lines = factorial(m) * (comb(m + l - 1, l - 1) if l else (1 if m == 0 else 0))
        term = comb(n, n0) * h * lines
        terms.append({"n0": n0, "rank": h, "line_factor": lines, "term": term})
        total += term
    return {"equal": direct == total, "direct": direct, "split": total, "terms": terms}


# -- endomorphisms -----------------------------------------------------------------

class ZetaNotFixed(ValueError):
    pass


class EndoSpec:
    """Endomorphism of the free group on the surface alphabet that fixes zeta."""

    def __init__(self, surface: SurfaceSpec, images: dict[int, FreeGroupWord]):
        self.surface = surface
        self.images = tuple(images.get(e, FreeGroupWord.generator(e)) for e in range(surface.r))
        if surface.zeta.substitute(self.images) != surface.zeta:
            raise ZetaNotFixed("endomorphism does not fix zeta")

    @classmethod
    def identity(cls, surface: SurfaceSpec) -> "EndoSpec":
        return cls(surface, {})

    @classmethod
    def conjugation(cls, surface: SurfaceSpec, w: FreeGroupWord) -> "EndoSpec":
        return cls(surface, {e: w * FreeGroupWord.generator(e) * w.inverse() for e in range(surface.r)})

    @classmethod
    def parse(cls, text: str, surface: SurfaceSpec) -> "EndoSpec":
        images = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            lhs, arrow, rhs = line.partition("->")
            if not arrow:
                raise ValueError(f"expected 'gen -> word': {raw!r}")
            e = surface.alphabet.index(lhs.strip())
            if e in images:
                raise ValueError(f"generator listed twice: {lhs.strip()}")
            rhs = rhs.strip()
            images[e] = FreeGroupWord() if rhs in ("", "1") else FreeGroupWord.parse(rhs, surface.alphabet)
        return cls(surface, images)


def endo_on_h(e: EndoSpec, n: int) -> dict:
    """Matrix of the induced map on H_n(U1) as {basis: {basis: coeff}}."""
    r = e.surface.r
    series = [delta_of_letters(r, w.letters, n).comps for w in e.images]
    out = {}
    for b in basis_enumerate(r, n):
        x = HElement.unit(r)
        for edge, seq in enumerate(b):
            if seq:
                x = shuffle_product(x, delta_on(series[edge][len(seq)], seq))
        out[b] = x.terms
    return out


class KernelNotPreserved(AssertionError):
    pass


def act_endomorphism(e: EndoSpec, n: int) -> dict:
    """Induced map on H_n(U) in quotient coordinates.

    Returns ``{"matrix": columns, "is_identity": bool, "invariants": ...}``;
    raises KernelNotPreserved if K_n is not mapped into itself.
    """
    h = hn_presentation(e.surface.presentation, n)
    table = endo_on_h(e, n)

    def apply(vec: dict) -> dict:
        out: dict = {}
        for i, c in vec.items():
            for b, v in table[h.basis[i]].items():
                j = h.index[b]
                out[j] = out.get(j, 0) + c * v
        return {j: v for j, v in out.items() if v}

    for col in h.kernel.cols:
        if not h.quotient.is_zero(apply(col)):
            raise KernelNotPreserved("kernel not preserved")
    q = h.quotient
    cols = [q.project(apply(q.lift(i))) for i in range(q.dim)]
    ident = all(q.project(q.lift(i)) == c for i, c in enumerate(cols))
    return {"matrix": cols, "is_identity": ident, "invariants": q.invariants}


def act_on_h_is_identity(e: EndoSpec, n: int) -> bool:
    """Whether the map on H_n(U1), before descent, is the identity."""
    return all(t == {b: 1} for b, t in endo_on_h(e, n).items())
