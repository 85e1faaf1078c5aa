"""Tensor algebra on H_1, the element mu, its insertions, and the
Johnson-type bracket certificates in degrees 4 and 5."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .complex import TwoComplexPresentation, fn_word, hn_presentation
from .intlin import SparseIntMat, SpanMembership, rank
from .shuffle import EdgeAlphabet


class TensorElt:
    """Homogeneous element of the tensor algebra; words are tuples of letter indices."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        self.degree = degree
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        if any(len(w) != degree for w in self.terms):
            raise ValueError("inhomogeneous tensor")

    @classmethod
    def letter(cls, e: int) -> "TensorElt":
        return cls(1, {(e,): 1})

    @classmethod
    def one(cls) -> "TensorElt":
        return cls(0, {(): 1})

    @classmethod
    def parse(cls, text: str, alphabet: EdgeAlphabet) -> "TensorElt":
        """Combination like ``a1.a-1 - 2*a-1.a1``; signs are separate tokens."""
        terms: dict = {}
        degree = None
        sign = 1
        for tok in text.split():
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                continue
            if tok.startswith("-"):
                sign, tok = -sign, tok[1:]
            coeff, _, word = tok.rpartition("*")
            w = () if word == "1" else tuple(alphabet.index(s) for s in word.split("."))
            if degree is not None and len(w) != degree:
                raise ValueError("inhomogeneous tensor")
            degree = len(w)
            terms[w] = terms.get(w, 0) + sign * (int(coeff) if coeff else 1)
            sign = 1
        if degree is None:
            raise ValueError("empty tensor expression")
        return cls(degree, terms)

    def __add__(self, other: "TensorElt") -> "TensorElt":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return TensorElt(self.degree, t)

    def __neg__(self) -> "TensorElt":
        return TensorElt(self.degree, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + (-other)

    def __rmul__(self, c: int) -> "TensorElt":
        return TensorElt(self.degree, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                t[w1 + w2] = t.get(w1 + w2, 0) + c1 * c2
        return TensorElt(self.degree + other.degree, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElt):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.degree, self.terms) == (other.degree, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Sequence[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def render(self, alphabet: EdgeAlphabet | None = None) -> str:
        if not self.terms:
            return "0"
        name = (lambda e: alphabet.names[e]) if alphabet else str
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            body = ".".join(name(e) for e in w) or "1"
            parts.append(("- " if c < 0 else "+ ") + (f"{abs(c)}*" if abs(c) != 1 else "") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"TensorElt({self.render()})"


def linear(letters: Iterable[tuple[int, int]]) -> TensorElt:
    """Degree 1 element from (letter, coefficient) pairs."""
    return TensorElt(1, {(e,): c for e, c in letters})


def mu(g: int) -> TensorElt:
    """sum_i a_i a_{-i} - a_{-i} a_i in the letter indexing of EdgeAlphabet.surface."""
    if g < 1:
        raise ValueError("g must be positive")
    t = {}
    for i in range(g):
        t[(2 * i, 2 * i + 1)] = 1
        t[(2 * i + 1, 2 * i)] = -1
    return TensorElt(2, t)


def mu_insert(i: int, j: int, x: TensorElt, g: int) -> TensorElt:
    """Insert the two letters of mu into slots i < j (1-based) of the result."""
    d = x.degree
    if not 1 <= i < j <= d + 2:
        raise ValueError("slot out of range")
    t: dict = {}
    for (p, q), cm in mu(g).terms.items():
        for w, c in x.terms.items():
            rest = list(w)
            out = rest[:i - 1] + [p] + rest[i - 1:j - 2] + [q] + rest[j - 2:]
            k = tuple(out)
            t[k] = t.get(k, 0) + cm * c
    return TensorElt(d + 2, t)


def bracket(x: TensorElt, y: TensorElt) -> TensorElt:
    return x * y - y * x


def johnson_a(g: int, n: int, c: Sequence[TensorElt]) -> TensorElt:
    """sum_i [a_i,[c_1,[...,[c_{n-2},a_{-i}]]]] - (a_i <-> a_{-i}), in the free tensor algebra."""
    if n < 3 or len(c) != n - 2:
        raise ValueError("need n >= 3 and n-2 degree-one elements")
    total = TensorElt(n)
    for i in range(g):
        for first, last, sign in ((2 * i, 2 * i + 1, 1), (2 * i + 1, 2 * i, -1)):
            inner = TensorElt.letter(last)
            for cv in reversed(c):
                inner = bracket(cv, inner)
            total = total + sign * bracket(TensorElt.letter(first), inner)
    return total


# -- spans in degree n ------------------------------------------------------------

def _words(r: int, n: int) -> list:
    return list(product(range(r), repeat=n))


@lru_cache(maxsize=None)
def _insertion_span(g: int, r: int, n: int, adjacent: bool) -> SpanMembership:
    idx = {w: k for k, w in enumerate(_words(r, n))}
    pairs = [(i, i + 1) for i in range(1, n)] if adjacent else list(combinations(range(1, n + 1), 2))
    cols = []
    for i, j in pairs:
        for w in _words(r, n - 2):
            y = mu_insert(i, j, TensorElt(n - 2, {w: 1}), g)
            cols.append({idx[k]: v for k, v in y.terms.items()})
    return SpanMembership(SparseIntMat(len(idx), len(cols), cols))


def _vector(x: TensorElt, r: int) -> dict:
    idx = {w: k for k, w in enumerate(_words(r, x.degree))}
    return {idx[w]: c for w, c in x.terms.items()}


def sn_quotient_membership(g: int, x: TensorElt, r: int | None = None) -> bool:
    """x lies in the degree-n part of the two-sided ideal generated by mu."""
    r = 2 * g if r is None else r
    if x.is_zero():
        return True
    if x.degree < 2:
        return False
    return _insertion_span(g, r, x.degree, True).contains(_vector(x, r))


def insertion_span_membership(g: int, x: TensorElt, r: int | None = None) -> bool:
    """x lies in the span of all mu_{i,j}-insertions, adjacent or not."""
    r = 2 * g if r is None else r
    if x.is_zero():
        return True
    if x.degree < 2:
        return False
    return _insertion_span(g, r, x.degree, False).contains(_vector(x, r))


def sn_rank(g: int, n: int, r: int | None = None) -> int:
    """Rank of S_n(U) = T_n / (mu) (free, the ideal is saturated)."""
    r = 2 * g if r is None else r
    if n < 2:
        return r ** n
    return r ** n - _insertion_span(g, r, n, True).rank


def ad_check(g: int, a: TensorElt, x: TensorElt, witness: Sequence[int] | None = None) -> dict:
    """[a, x] and whether it survives modulo the mu ideal."""
    y = bracket(a, x)
    out = {"value": y, "nonzero_mod_mu": not sn_quotient_membership(g, y)}
    if witness is not None:
        out["coefficient"] = y.coefficient(witness)
    return out


def scfg_image(p: TwoComplexPresentation, x: TensorElt) -> tuple[int, ...]:
    """Image of x under S_n(U1) -> F^n H_n(U) (quotient coordinates)."""
    n = x.degree
    h = hn_presentation(p, n)
    vec: dict = {}
    for w, c in x.terms.items():
        for k, v in h.vector(fn_word(p.r, w)).items():
            vec[k] = vec.get(k, 0) + c * v
    return h.quotient.project({k: v for k, v in vec.items() if v})


def scfg_rank(p: TwoComplexPresentation, n: int) -> int:
    """Rank of F^n H_n(U) modulo torsion: the image of all words."""
    h = hn_presentation(p, n)
    cols = [h.vector(fn_word(p.r, w)) for w in _words(p.r, n)]
    return rank(SparseIntMat(len(h.basis), len(cols), cols).hstack(h.kernel)) - rank(h.kernel)
