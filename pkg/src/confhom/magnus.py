"""Free group words, the Magnus model of truncated group rings, and the
Delta-map from the truncated group ring into H_n."""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .intlin import AbGroupInvariants, Quotient, SparseIntMat, preimage, snf, subquotient_invariants
from .shuffle import EdgeAlphabet, HElement, HSeries, basis_enumerate, delta_of_letters, _generator_series


class FreeGroupWord:
    """Freely reduced word; letters are (edge index, +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        out: list = []
        for e, s in letters:
            if s not in (1, -1):
                raise ValueError("exponents must be +-1")
            if out and out[-1] == (e, -s):
                out.pop()
            else:
                out.append((e, s))
        self.letters = tuple(out)

    @classmethod
    def parse(cls, text: str | Sequence[str], alphabet: EdgeAlphabet) -> "FreeGroupWord":
        tokens = text.split() if isinstance(text, str) else list(text)
        letters = []
        for tok in tokens:
            if tok.endswith("^-1"):
                letters.append((alphabet.index(tok[:-3]), -1))
            else:
                letters.append((alphabet.index(tok), 1))
        return cls(letters)

    @classmethod
    def generator(cls, e: int) -> "FreeGroupWord":
        return cls([(e, 1)])

    def __mul__(self, other: "FreeGroupWord") -> "FreeGroupWord":
        return FreeGroupWord(self.letters + other.letters)

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord((e, -s) for e, s in reversed(self.letters))

    def substitute(self, images: Sequence["FreeGroupWord"]) -> "FreeGroupWord":
        out = FreeGroupWord()
        for e, s in self.letters:
            out = out * (images[e] if s > 0 else images[e].inverse())
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeGroupWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def render(self, alphabet: EdgeAlphabet) -> str:
        if not self.letters:
            return "1"
        return " ".join(alphabet.names[e] + ("" if s > 0 else "^-1") for e, s in self.letters)

    def __repr__(self) -> str:
        return f"FreeGroupWord({self.letters})"


def commutator(x: FreeGroupWord, y: FreeGroupWord) -> FreeGroupWord:
    return x * y * x.inverse() * y.inverse()


class TruncAlgElt:
    """Element of Z<x_e> / (words of length > n_max)."""

    __slots__ = ("n_max", "terms")

    def __init__(self, n_max: int, terms: dict | None = None):
        self.n_max = n_max
        self.terms = {m: c for m, c in (terms or {}).items() if c and len(m) <= n_max}

    @classmethod
    def one(cls, n_max: int) -> "TruncAlgElt":
        return cls(n_max, {(): 1})

    def __add__(self, other: "TruncAlgElt") -> "TruncAlgElt":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return TruncAlgElt(min(self.n_max, other.n_max), t)

    def __neg__(self) -> "TruncAlgElt":
        return TruncAlgElt(self.n_max, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TruncAlgElt") -> "TruncAlgElt":
        return self + (-other)

    def __mul__(self, other: "TruncAlgElt") -> "TruncAlgElt":
        n = min(self.n_max, other.n_max)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if len(m1) + len(m2) <= n:
                    m = m1 + m2
                    t[m] = t.get(m, 0) + c1 * c2
        return TruncAlgElt(n, t)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncAlgElt) and (self.n_max, self.terms) == (other.n_max, other.terms)

    def render(self, alphabet: EdgeAlphabet | None = None) -> str:
        if not self.terms:
            return "0"
        name = (lambda e: alphabet.names[e]) if alphabet else (lambda e: f"x{e}")
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            w = ".".join(name(e) for e in m) or "1"
            parts.append(f"{c}*{w}" if c != 1 else w)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TruncAlgElt({self.render()})"


def truncate(elt: TruncAlgElt, n: int) -> TruncAlgElt:
    if n > elt.n_max:
        raise ValueError("cannot truncate above the current degree bound")
    return TruncAlgElt(n, elt.terms)


def magnus_expand(w: FreeGroupWord, n_max: int) -> TruncAlgElt:
    """gamma_e -> 1 + x_e, gamma_e^-1 -> 1 - x_e + x_e^2 - ..."""
    acc = TruncAlgElt.one(n_max)
    for e, s in w.letters:
        if s > 0:
            f = TruncAlgElt(n_max, {(): 1, (e,): 1})
        else:
            f = TruncAlgElt(n_max, {(e,) * k: (-1) ** k for k in range(n_max + 1)})
        acc = acc * f
    return acc


def monomials(r: int, n_max: int, min_len: int = 0) -> list[tuple[int, ...]]:
    """Monomial basis ordered by (length, lex)."""
    out = []
    for k in range(min_len, n_max + 1):
        out.extend(product(range(r), repeat=k))
    return out


def relator_ideal(r: int, relators: Sequence[FreeGroupWord], n_max: int) -> SparseIntMat:
    """Columns m (expand(z) - 1) m' spanning the two-sided relator ideal."""
    basis = monomials(r, n_max)
    idx = {m: i for i, m in enumerate(basis)}
    seen = set()
    cols = []
    for z in relators:
        core = magnus_expand(z, n_max) - TruncAlgElt.one(n_max)
        if not core.terms:
            continue
        low = min(len(m) for m in core.terms)
        for a in range(n_max - low + 1):
            for b in range(n_max - low - a + 1):
                for m1 in product(range(r), repeat=a):
                    for m2 in product(range(r), repeat=b):
                        col = {}
                        for m, c in core.terms.items():
                            w = m1 + m + m2
                            if len(w) <= n_max:
                                col[idx[w]] = col.get(idx[w], 0) + c
                        key = tuple(sorted(col.items()))
                        if col and key not in seen:
                            seen.add(key)
                            cols.append(col)
    return SparseIntMat(len(basis), len(cols), cols)


def lambda_invariants(r: int, relators: Sequence[FreeGroupWord], n_max: int) -> AbGroupInvariants:
    """Invariants of the truncated group ring of the presented group."""
    return snf(relator_ideal(r, relators, n_max)).cokernel


def _minus_one(r: int, edge: int, n: int) -> HSeries:
    g = _generator_series(r, edge, 1, n)
    return HSeries(r, n, [0] + g.comps[1:])


def delta_monomial(r: int, m: tuple[int, ...], n: int) -> HElement:
    """t^n coefficient of prod_i (Delta_t(gamma_{m_i}) - 1)."""
    if len(m) > n:
        return HElement.zero(r, range(1, n + 1))
    return _delta_monomials(r, n)[m]


@lru_cache(maxsize=64)
def _delta_monomials(r: int, n: int) -> dict:
    # prefix products, shared along the monomial trie
    out = {(): HSeries.one(r, n)}
    for k in range(1, n + 1):
        for m in product(range(r), repeat=k):
            out[m] = out[m[:-1]] * _minus_one(r, m[-1], n)
    return {m: s[n] if m else (HElement.unit(r) if n == 0 else HElement.zero(r, range(1, n + 1)))
            for m, s in out.items()}


def delta_matrix_u1(r: int, n: int, min_len: int = 0) -> tuple[SparseIntMat, list, list]:
    """Matrix of Delta^n from monomials of length min_len..n to H_n(U1)."""
    rows = basis_enumerate(r, n)
    ridx = {b: i for i, b in enumerate(rows)}
    mons = monomials(r, n, min_len)
    table = _delta_monomials(r, n)
    cols = [{ridx[b]: c for b, c in table[m].terms.items()} for m in mons]
    return SparseIntMat(len(rows), len(cols), cols), mons, rows


def delta_of_word(w: FreeGroupWord, r: int, n_max: int) -> HSeries:
    return delta_of_letters(r, w.letters, n_max)


def delta_matrix(p, n: int, target: str = "U1", min_len: int = 1):
    """Delta^n on monomials of length min_len..n.

    ``target="U1"`` gives a SparseIntMat into H_n(U1); ``"U"`` gives the
    list of quotient coordinate tuples in H_n(U) = H_n(U1)/K_n.
    """
    from .complex import hn_presentation
    if n < 1:
        raise ValueError("n must be positive")
    mat, mons, _ = delta_matrix_u1(p.r, n, min_len)
    if target == "U1":
        return mat
    if target != "U":
        raise ValueError("target must be 'U1' or 'U'")
    return hn_presentation(p, n).quotient.projection_matrix(mat)


def icfg_kernel(p, n: int) -> tuple[AbGroupInvariants, list[dict]]:
    """Kernel of I|_n -> H_n(U), as (preimage of K_n) / (relator ideal).

    Vectors are indexed by monomials(r, n, 1).  Returns the invariants of
    the kernel and generators of the preimage.
    """
    from .complex import hn_presentation
    h = hn_presentation(p, n)
    mat, mons, _ = delta_matrix_u1(p.r, n, 1)
    pre = preimage(h.quotient, mat)
    full = monomials(p.r, n)
    shift = {i: i - 1 for i, m in enumerate(full) if m}
    ideal = relator_ideal(p.r, p.relators, n)
    cols = []
    for c in ideal.cols:
        if 0 in c:
            raise ValueError("relator with nonzero augmentation")
        cols.append({shift[i]: v for i, v in c.items()})
    a = SparseIntMat(len(mons), len(pre), pre)
    b = SparseIntMat(len(mons), len(cols), cols)
    return subquotient_invariants(a, b), pre
