"""Degeneracy maps d_ij: H_N -> H_{N_ij} that collide two points."""
from __future__ import annotations

from .complex import TwoComplexPresentation, hn_presentation
from .intlin import SparseIntMat, snf
from .shuffle import Basis, HElement, basis_enumerate


class KernelNotPreserved(AssertionError):
    pass


def degeneracy_basis(b: Basis, i: int, j: int) -> tuple[int, Basis | None]:
    """(sign, merged basis element) or (0, None) when the pair is not adjacent."""
    for e, seq in enumerate(b):
        for pos in range(len(seq) - 1):
            if {seq[pos], seq[pos + 1]} == {i, j}:
                keep = min(i, j)
                merged = seq[:pos] + (keep,) + seq[pos + 2:]
                before = sum(len(s) for s in b[:e]) + pos
                return (-1) ** before, b[:e] + (merged,) + b[e + 1:]
    return 0, None


def degeneracy(x: HElement, i: int, j: int, normalize: bool = True) -> HElement:
    """d_ij; the merged point keeps the smaller label.

    With ``normalize`` the result is relabelled onto 1..n-1, otherwise it
    lives on N minus max(i, j), which is what composites need.
    """
    if i == j:
        raise ValueError("degeneracy needs two distinct points")
    if i not in x.points or j not in x.points:
        raise ValueError("points not in the support")
    out: dict = {}
    for b, c in x.terms.items():
        s, m = degeneracy_basis(b, i, j)
        if s:
            out[m] = out.get(m, 0) + s * c
    y = HElement(x.r, x.points - {max(i, j)}, out)
    return y.normalized() if normalize else y


def iterated_degeneracy(x: HElement, k: int) -> HElement:
    """d_{k,k+1} o ... o d_{n-1,n} : H_n -> H_k."""
    n = x.n
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    for m in range(n, k, -1):
        x = degeneracy(x, m - 1, m)
    return x


def degeneracy_matrix(r: int, n: int, i: int, j: int) -> tuple[SparseIntMat, list, list]:
    """Matrix of d_ij from H_n(U1) to H_{n-1}(U1) (normalized labels)."""
    src = basis_enumerate(r, n)
    tgt = basis_enumerate(r, n - 1)
    tidx = {b: t for t, b in enumerate(tgt)}
    cols = []
    for b in src:
        y = degeneracy(HElement.basis(b), i, j)
        cols.append({tidx[k]: v for k, v in y.terms.items()})
    return SparseIntMat(len(tgt), len(src), cols), src, tgt


def degeneracy_on_quotient(p: TwoComplexPresentation, n: int, i: int, j: int) -> list[tuple[int, ...]]:
    """Induced map H_n(U) -> H_{n-1}(U) on quotient coordinates.

    Column c is the image of the c-th coordinate generator of H_n(U).
    Raises KernelNotPreserved if K_n is not carried into K_{n-1}.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    src = hn_presentation(p, n)
    tgt = hn_presentation(p, n - 1)
    mat, _, _ = degeneracy_matrix(p.r, n, i, j)
    for col in src.kernel.cols:
        if tgt.quotient.is_zero(mat.apply(col)):
            continue
        raise KernelNotPreserved("kernel not preserved")
    return [tgt.quotient.project(mat.apply(src.quotient.lift(c))) for c in range(src.quotient.dim)]


def is_onto(p: TwoComplexPresentation, n: int, i: int, j: int) -> bool:
    """The image together with K_{n-1} spans all of H_{n-1}(U1)."""
    tgt = hn_presentation(p, n - 1)
    mat, _, _ = degeneracy_matrix(p.r, n, i, j)
    return snf(mat.hstack(tgt.kernel)).cokernel.is_trivial
