"""Exact sparse integer linear algebra.

Matrices are stored column-major as lists of ``{row: value}`` dicts with
Python integers, so nothing ever overflows.  The routines here are the
backend for every homology, kernel and quotient computation in the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class NotASubgroupError(ValueError):
    pass


def _clean(col: dict) -> dict:
    return {r: v for r, v in col.items() if v}


class SparseIntMat:
    """Immutable-by-convention sparse integer matrix (column-major)."""

    __slots__ = ("n_rows", "n_cols", "cols")

    def __init__(self, n_rows: int, n_cols: int, cols: Sequence[dict] | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        if cols is None:
            cols = [{} for _ in range(n_cols)]
        if len(cols) != n_cols:
            raise ValueError("column count mismatch")
        out = []
        for c in cols:
            c = _clean(c)
            for r in c:
                if not 0 <= r < n_rows:
                    raise IndexError(f"row index {r} out of range")
            out.append(c)
        self.cols = out

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "SparseIntMat":
        n_rows = len(rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(n_cols)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(n_rows, n_cols, cols)

    @classmethod
    def from_columns(cls, n_rows: int, cols: Iterable[dict]) -> "SparseIntMat":
        cols = list(cols)
        return cls(n_rows, len(cols), cols)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMat":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> "SparseIntMat":
        return cls(n_rows, n_cols)

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def transpose(self) -> "SparseIntMat":
        cols = [{} for _ in range(self.n_rows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return SparseIntMat(self.n_cols, self.n_rows, cols)

    def __matmul__(self, other: "SparseIntMat") -> "SparseIntMat":
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        out = []
        for c in other.cols:
            acc: dict = {}
            for k, w in c.items():
                for i, v in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append(acc)
        return SparseIntMat(self.n_rows, other.n_cols, out)

    def apply(self, vec: dict) -> dict:
        acc: dict = {}
        for k, w in vec.items():
            for i, v in self.cols[k].items():
                acc[i] = acc.get(i, 0) + v * w
        return _clean(acc)

    def hstack(self, other: "SparseIntMat") -> "SparseIntMat":
        if self.n_rows != other.n_rows:
            raise ValueError("row count mismatch")
        return SparseIntMat(self.n_rows, self.n_cols + other.n_cols,
                            [dict(c) for c in self.cols] + [dict(c) for c in other.cols])

    def is_zero(self) -> bool:
        return not any(self.cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMat):
            return NotImplemented
        return (self.n_rows, self.n_cols, self.cols) == (other.n_rows, other.n_cols, other.cols)

    def __repr__(self) -> str:
        return f"SparseIntMat({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class AbGroupInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.torsion
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion chain broken: {t}")
        if any(d < 2 for d in t):
            raise ValueError(f"torsion coefficients must be >= 2: {t}")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple[int, ...]
    n_rows: int

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def cokernel(self) -> AbGroupInvariants:
        return AbGroupInvariants(self.n_rows - self.rank, tuple(d for d in self.diagonal if d > 1))


# -- column echelon / Hermite form ------------------------------------------

def _axpy(dst: dict, f: int, src: dict) -> None:
    """dst -= f * src, in place."""
    for r, v in src.items():
        nv = dst.get(r, 0) - f * v
        if nv:
            dst[r] = nv
        else:
            dst.pop(r, None)


def _nearest_quotient(a: int, b: int) -> int:
    # rem has the sign of b; stepping q up moves it to rem - b
    q, rem = divmod(a, b)
    if 2 * abs(rem) > abs(b):
        q += 1
    return q


def _echelon(cols: list[dict], n_rows: int, track: bool):
    """Column echelon form by minimal-absolute-value pivoting.

    Returns (pivots, zero_cols) where pivots is a list of (row, col, ucol)
    with positive pivot entries, in increasing row order; ucol is the
    transform column when ``track``.
    """
    work = [dict(c) for c in cols]
    trans = [{j: 1} for j in range(len(cols))] if track else None
    active = list(range(len(cols)))
    pivots = []
    for row in range(n_rows):
        hits = [j for j in active if row in work[j]]
        while len(hits) > 1:
            p = min(hits, key=lambda j: (abs(work[j][row]), len(work[j])))
            pv = work[p][row]
            nxt = [p]
            for j in hits:
                if j == p:
                    continue
                q = _nearest_quotient(work[j][row], pv)
                _axpy(work[j], q, work[p])
                if track:
                    _axpy(trans[j], q, trans[p])
                if row in work[j]:
                    nxt.append(j)
            hits = nxt
        if hits:
            p = hits[0]
            if work[p][row] < 0:
                work[p] = {r: -v for r, v in work[p].items()}
                if track:
                    trans[p] = {r: -v for r, v in trans[p].items()}
            pivots.append((row, work[p], trans[p] if track else None))
            active.remove(p)
    zeros = [(work[j], trans[j] if track else None) for j in active]
    return pivots, zeros


def _hermite_reduce(pivots: list, track: bool) -> None:
    for k, (row, col, ucol) in enumerate(pivots):
        pv = col[row]
        for j in range(k):
            _, cj, uj = pivots[j]
            v = cj.get(row, 0)
            if v and not 0 <= v < pv:
                q = v // pv
                _axpy(cj, q, col)
                if track:
                    _axpy(uj, q, ucol)


def hnf(m: SparseIntMat) -> tuple[SparseIntMat, SparseIntMat]:
    """Column-style Hermite normal form h = m @ u with u unimodular.

    The nonzero columns of h come first, with strictly increasing pivot rows
    and positive pivots; entries left of each pivot are reduced into
    ``[0, pivot)``.  ``rank(m)`` is the number of nonzero columns of h.
    """
    pivots, zeros = _echelon(m.cols, m.n_rows, track=True)
    _hermite_reduce(pivots, track=True)
    hcols = [c for _, c, _ in pivots] + [c for c, _ in zeros]
    ucols = [u for _, _, u in pivots] + [u for _, u in zeros]
    return SparseIntMat(m.n_rows, m.n_cols, hcols), SparseIntMat(m.n_cols, m.n_cols, ucols)


def column_basis(m: SparseIntMat) -> SparseIntMat:
    """Hermite basis of the column span."""
    pivots, _ = _echelon(m.cols, m.n_rows, track=False)
    _hermite_reduce(pivots, track=False)
    return SparseIntMat(m.n_rows, len(pivots), [c for _, c, _ in pivots])


def kernel_basis(m: SparseIntMat) -> list[dict]:
    """Basis of the integer kernel; it spans a direct summand of Z^n_cols."""
    _, zeros = _echelon(m.cols, m.n_rows, track=True)
    return [u for _, u in zeros]


def _solve_echelon(pivots: list, vec: dict):
    """Write vec in terms of echelon columns; returns (coeffs, remainder)."""
    v = dict(vec)
    coeffs = []
    for k, (row, col, _) in enumerate(pivots):
        a = v.get(row, 0)
        if not a:
            continue
        q, rem = divmod(a, col[row])
        if rem:
            return None, v
        _axpy(v, q, col)
        coeffs.append((k, q))
    return coeffs, v


def image_membership(m: SparseIntMat, v: dict | Sequence[int]) -> tuple[bool, dict | None]:
    """Decide v in the Z-column span of m; returns (member, preimage)."""
    if not isinstance(v, dict):
        if len(v) != m.n_rows:
            raise ValueError("vector length must equal n_rows")
        v = {i: x for i, x in enumerate(v) if x}
    pivots, _ = _echelon(m.cols, m.n_rows, track=True)
    coeffs, rem = _solve_echelon(pivots, v)
    if coeffs is None or rem:
        return False, None
    w: dict = {}
    for k, q in coeffs:
        _axpy(w, -q, pivots[k][2])
    return True, w


class SpanMembership:
    """Reusable membership oracle for one column span."""

    def __init__(self, m: SparseIntMat):
        self.n_rows = m.n_rows
        self._pivots, _ = _echelon(m.cols, m.n_rows, track=False)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def contains(self, v: dict) -> bool:
        coeffs, rem = _solve_echelon(self._pivots, v)
        return coeffs is not None and not rem

    @property
    def basis(self) -> SparseIntMat:
        """Echelon basis of the span; ``coordinates`` refers to it."""
        return SparseIntMat(self.n_rows, len(self._pivots), [c for _, c, _ in self._pivots])

    def coordinates(self, v: dict) -> dict | None:
        """Coefficients of v on ``basis`` (not on the original columns)."""
        coeffs, rem = _solve_echelon(self._pivots, v)
        if coeffs is None or rem:
            return None
        return {k: q for k, q in coeffs}


# -- Smith normal form --------------------------------------------------------

def _eliminate_units(cols: list[dict]) -> tuple[int, list[dict]]:
    """Eliminate +-1 pivots with row and column operations (Markowitz-ish)."""
    work = {j: dict(c) for j, c in enumerate(cols) if c}
    rows: dict = {}
    for j, c in work.items():
        for r in c:
            rows.setdefault(r, set()).add(j)
    n_units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(work, key=lambda j: len(work[j])):
            c = work.get(j)
            if not c:
                continue
            units = [r for r, v in c.items() if v == 1 or v == -1]
            if not units:
                continue
            r = min(units, key=lambda r: len(rows[r]))
            p = c[r]
            for k in list(rows[r]):
                if k == j:
                    continue
                ck = work[k]
                f = ck[r] * p
                for rr, v in c.items():
                    nv = ck.get(rr, 0) - f * v
                    if nv:
                        if rr not in ck:
                            rows.setdefault(rr, set()).add(k)
                        ck[rr] = nv
                    else:
                        del ck[rr]
                        rows[rr].discard(k)
                if not ck:
                    del work[k]
            for rr in c:
                rows[rr].discard(j)
            del work[j]
            del rows[r]
            n_units += 1
            progress = True
    return n_units, [c for c in work.values() if c]


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalize a dense integer matrix; returns the nonzero diagonal."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = a[i], a[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if a[i][t]:
                        done = False
            rt = a[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for row in a:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                break
            best = None
            for i in range(t, m):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, t)
            for j in range(t, n):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: list[int]) -> list[int]:
    d = sorted(diag)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            g = gcd(a, b)
            if g != a:
                d[i], d[j] = g, a * b // g
    return sorted(d)


def snf(m: SparseIntMat) -> SNFResult:
    """Smith invariants s_1 | s_2 | ... | s_rank of m (cokernel in ``.cokernel``)."""
    n_units, rest = _eliminate_units(m.cols)
    diag = [1] * n_units
    if rest:
        rows = sorted({r for c in rest for r in c})
        idx = {r: i for i, r in enumerate(rows)}
        dense = [[0] * len(rest) for _ in rows]
        for j, c in enumerate(rest):
            for r, v in c.items():
                dense[idx[r]][j] = v
        diag += _dense_diagonal(dense)
    return SNFResult(tuple(_divisibility_chain(diag)), m.n_rows)


def rank(m: SparseIntMat) -> int:
    return snf(m).rank


def cokernel_invariants(m: SparseIntMat) -> AbGroupInvariants:
    return snf(m).cokernel


def subquotient_invariants(span_a: SparseIntMat, span_b: SparseIntMat) -> AbGroupInvariants:
    """Invariants of span_a / span_b for subgroups of a common Z^d."""
    if span_a.n_rows != span_b.n_rows:
        raise ValueError("spans live in different ambient groups")
    basis = SpanMembership(span_a)
    coords = []
    for c in span_b.cols:
        x = basis.coordinates(c)
        if x is None:
            raise NotASubgroupError("not a subgroup")
        coords.append(x)
    return snf(SparseIntMat(basis.rank, len(coords), coords)).cokernel


# -- explicit quotients ---------------------------------------------------------

def _dense_snf_with_left(a: list[list[int]]):
    """SNF of dense a with row transform P and its inverse: P a Q = D."""
    m = len(a)
    n = len(a[0]) if m else 0
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Pinv = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        P[i], P[k] = P[k], P[i]
        for row in Pinv:
            row[i], row[k] = row[k], row[i]

    def row_add(i, k, q):  # row_i -= q row_k
        if not q:
            return
        ai, ak = a[i], a[k]
        for j in range(n):
            ai[j] -= q * ak[j]
        pi, pk = P[i], P[k]
        for j in range(m):
            pi[j] -= q * pk[j]
        for row in Pinv:  # inverse: col_k += q col_i
            row[k] += q * row[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]

    def col_add(j, k, q):  # col_j -= q col_k
        if q:
            for row in a:
                row[j] -= q * row[k]

    t = 0
    diag = []
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                        best = (abs(a[i][j]), i, j)
            if best is None:
                return diag, P, Pinv
            _, i, j = best
            row_swap(t, i)
            col_swap(t, j)
            p = a[t][t]
            for i in range(t + 1, m):
                row_add(i, t, a[i][t] // p)
            for j in range(t + 1, n):
                col_add(j, t, a[t][j] // p)
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]
            for row in Pinv:
                row[t] = -row[t]
        diag.append(a[t][t])
        t += 1
    return diag, P, Pinv


class Quotient:
    """Z^d modulo the column span of ``rel``, with explicit coordinates.

    ``project`` is a homomorphism Z^d -> Z^free x prod Z/m_i that induces an
    isomorphism from the quotient; ``lift`` gives preimages of coordinate
    generators.  Unit pivots of the relation lattice are eliminated
    linearly, only the leftover block goes through a dense Smith form.
    """

    def __init__(self, rel: SparseIntMat):
        d = rel.n_rows
        self.ambient = d
        pivots, _ = _echelon(rel.cols, d, track=False)
        self._units = [(r, c) for r, c, _ in pivots if c[r] == 1]
        unit_rows = {r for r, _ in self._units}
        rest = [self._reduce_units(c) for r, c, _ in pivots if c[r] != 1]
        support = sorted({r for c in rest for r in c})
        sup_set = set(support)
        self._free_rows = [r for r in range(d) if r not in unit_rows and r not in sup_set]
        self._support = support
        self._snf_rows: list = []   # (row of P, modulus or 0)
        self._snf_lifts: list = []
        if support:
            idx = {r: i for i, r in enumerate(support)}
            dense = [[0] * len(rest) for _ in support]
            for j, c in enumerate(rest):
                for r, v in c.items():
                    dense[idx[r]][j] = v
            diag, P, Pinv = _dense_snf_with_left(dense)
            for i in range(len(support)):
                s = diag[i] if i < len(diag) else 0
                if s == 1:
                    continue
                self._snf_rows.append(({support[k]: P[i][k] for k in range(len(support)) if P[i][k]}, s))
                self._snf_lifts.append({support[k]: Pinv[k][i] for k in range(len(support)) if Pinv[k][i]})
        free = [(None, r) for r in self._free_rows]
        free += [(k, None) for k, (_, s) in enumerate(self._snf_rows) if s == 0]
        tors = sorted(((k, None) for k, (_, s) in enumerate(self._snf_rows) if s > 1),
                      key=lambda kr: self._snf_rows[kr[0]][1])
        self._coords = free + tors
        self.moduli = tuple(0 for _ in free) + tuple(self._snf_rows[k][1] for k, _ in tors)
        self.invariants = AbGroupInvariants(len(free), tuple(m for m in self.moduli if m))

    def _reduce_units(self, vec: dict) -> dict:
        v = dict(vec)
        for r, c in self._units:
            a = v.get(r)
            if a:
                _axpy(v, a, c)
        return v

    @property
    def dim(self) -> int:
        return len(self._coords)

    def project(self, vec: dict) -> tuple[int, ...]:
        w = self._reduce_units(vec)
        out = []
        for k, r in self._coords:
            if r is not None:
                out.append(w.get(r, 0))
            else:
                prow, s = self._snf_rows[k]
                x = sum(a * w.get(c, 0) for c, a in prow.items())
                out.append(x % s if s else x)
        return tuple(out)

    def lift(self, i: int) -> dict:
        k, r = self._coords[i]
        if r is not None:
            return {r: 1}
        return dict(self._snf_lifts[k])

    def is_zero(self, vec: dict) -> bool:
        return not any(self.project(vec))

    def projection_matrix(self, m: SparseIntMat) -> list[tuple[int, ...]]:
        """Coordinates of each column of m, as a list of tuples."""
        return [self.project(c) for c in m.cols]


def preimage(q: Quotient, m: SparseIntMat) -> list[dict]:
    """Generators of {x : m x == 0 in the quotient q}."""
    n = m.n_cols
    coords = q.projection_matrix(m)
    cols = [{i: v for i, v in enumerate(c) if v} for c in coords]
    for i, s in enumerate(q.moduli):
        if s:
            cols.append({i: s})
    ker = kernel_basis(SparseIntMat(q.dim, len(cols), cols))
    out = []
    for v in ker:
        w = {j: a for j, a in v.items() if j < n}
        if w:
            out.append(w)
    return out
