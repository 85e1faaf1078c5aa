"""Named identity checks behind ``confhom paper-check``.

Each check returns ``(ok, detail)``; ``run_all`` times them.
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from itertools import combinations, permutations
from unittest import mock

from . import complex as cx
from .degeneracy import degeneracy, iterated_degeneracy, is_onto
from .graded import (TensorElt, ad_check, insertion_span_membership, johnson_a, mu_insert,
                     scfg_image, sn_quotient_membership)
from .intlin import SparseIntMat, SpanMembership, rank
from .magnus import FreeGroupWord, icfg_kernel
from .shuffle import EdgeAlphabet, HElement, basis_enumerate, shuffle_product
from .surfaces import (EndoSpec, SurfaceSpec, act_endomorphism, delta3_formula, delta_zeta,
                       many_punctures_check, mu_element)


def check_delta_zeta():
    for g in (1, 2, 3):
        if not delta_zeta(g, 1).is_zero():
            return False, f"Delta^1(zeta) != 0 for g={g}"
        if delta_zeta(g, 2) != mu_element(g):
            return False, f"Delta^2(zeta) != mu for g={g}"
        if delta_zeta(g, 3) != delta3_formula(g):
            return False, f"Delta^3(zeta) formula fails for g={g}"
    return True, "g = 1, 2, 3"


def kernel_three_pieces(g: int, orbit: bool = False) -> list[HElement]:
    """Delta^3(zeta), mu x H_1, H_1 x mu and mu_{1,3}(H_1) inside H_3(U1).

    With ``orbit`` every relabelling of Delta^3(zeta) is included; without
    it the span falls one short of K_3.
    """
    r = 2 * g
    z = delta_zeta(g, 3)
    labels = permutations((1, 2, 3)) if orbit else [(1, 2, 3)]
    out = [z.relabel(dict(zip((1, 2, 3), q))) for q in labels]
    m12 = mu_element(g)
    m23 = m12.relabel({1: 2, 2: 3})
    for e in range(r):
        out.append(shuffle_product(m12, HElement.cell(r, e, (3,))))
        out.append(shuffle_product(HElement.cell(r, e, (1,)), m23))
        y = mu_insert(1, 3, TensorElt.letter(e), g)
        z = HElement.zero(r, (1, 2, 3))
        for w, c in y.terms.items():
            z = z + c * cx.fn_word(r, w)
        out.append(z)
    return out


def check_kernel_table():
    p = SurfaceSpec(2).presentation
    k1 = cx.kernel_K(p, 1)[1]
    if k1.free_rank:
        return False, "K_1 != 0"
    k2mat, k2 = cx.kernel_K(p, 2)
    h2 = cx.hn_presentation(p, 2)
    mu_vec = h2.vector(mu_element(2))
    if k2.free_rank != 1 or not SpanMembership(k2mat).contains(mu_vec):
        return False, "K_2 is not Z mu"
    mu_span = SpanMembership(SparseIntMat(len(h2.basis), 1, [mu_vec]))
    if not all(mu_span.contains(dict(c)) for c in k2mat.cols):
        return False, "mu does not generate K_2"
    k3mat, k3 = cx.kernel_K(p, 3)
    h3 = cx.hn_presentation(p, 3)
    literal = [h3.vector(x) for x in kernel_three_pieces(2)]
    pieces = [h3.vector(x) for x in kernel_three_pieces(2, orbit=True)]
    pm = SparseIntMat(len(h3.basis), len(pieces), pieces)
    span_k, span_p = SpanMembership(k3mat), SpanMembership(pm)
    if not all(span_k.contains(v) for v in pieces):
        return False, "displayed pieces not in K_3"
    if not all(span_p.contains(dict(c)) for c in k3mat.cols):
        return False, "K_3 not spanned by the pieces"
    short = k3.free_rank - rank(SparseIntMat(len(h3.basis), len(literal), literal))
    return True, f"rank K_3 = {k3.free_rank}; without relabellings of Delta^3(zeta) the span is {short} short"


def _surface(g: int, l: int = 0):
    return SurfaceSpec(g, l).presentation


def check_bar_complex():
    for g in (0, 1, 2):
        for l in (0, 1):
            for n in range(1, 5):
                cx.build_bar_complex(_surface(g, l), n)
    p = _surface(1)
    table = cx.delta_zeta_table(p, 3)
    empty = ((),) * p.r
    ex2 = cx.bar_boundary_terms((((2,), (1,)), empty), p, 2, table)
    want2 = {(((1, 2),), empty): 1, (((2, 1),), empty): -1}
    ex3 = cx.bar_boundary_terms((((3,), (1, 2)), empty), p, 3, table)
    pure3 = {k: v for k, v in ex3.items() if k[1] == empty}
    want3 = {(((3, 1, 2),), empty): 1, (((1, 3, 2),), empty): -1, (((1, 2, 3),), empty): 1}
    ok = {k: v for k, v in ex2.items() if k[1] == empty} == want2 and pure3 == want3
    return ok, "d^2 = 0 for g <= 2, l <= 1, n <= 4; two-block boundary identities"


def check_fundamental_group():
    sphere = cx.TwoComplexPresentation(EdgeAlphabet([]), (FreeGroupWord(),))
    x = EdgeAlphabet(["x"])
    trivial = cx.TwoComplexPresentation(x, (FreeGroupWord.parse("x", x),))
    for n in (1, 2, 3):
        a = cx.hn_presentation(sphere, n).invariants
        b = cx.hn_presentation(trivial, n).invariants
        if not (a.is_trivial and b.is_trivial):
            return False, f"nonzero at n={n}"
    return True, "H_n = 0 for n = 1..3 in both models"


def check_torus():
    p = _surface(1)
    a = cx.homology_cl(p, 2, 0)
    b = cx.hn_presentation(p, 2).invariants
    return a == b and a.free_rank == 5 and not a.torsion, f"bar {a.as_dict()}, presentation {b.as_dict()}"


def check_degeneracy():
    for n in range(2, 6):
        x = HElement.cell(1, 0, tuple(range(1, n + 1)))
        if degeneracy(x, n - 1, n) != (-1) ** n * HElement.cell(1, 0, tuple(range(1, n))):
            return False, f"truncation sign at n={n}"
    for n in (3, 4):
        for b in basis_enumerate(2, n):
            x = HElement.basis(b)
            for i, j, k in combinations(range(1, n + 1), 3):
                s = HElement.zero(2, set(range(1, n + 1)) - {j, k})
                for u, v, w in ((i, j, k), (j, k, i), (k, i, j)):
                    s = s + degeneracy(degeneracy(x, v, w, False), u, min(v, w), False)
                if not s.is_zero():
                    return False, "Jacobi identity"
    p = _surface(1)
    for n in (2, 3, 4):
        if not is_onto(p, n, n - 1, n):
            return False, "not onto"
        if iterated_degeneracy(delta_zeta(1, n), 2) not in (mu_element(1), -mu_element(1)):
            return False, "iterated degeneracy of Delta^n(zeta)"
    return True, "signs, Jacobi, surjectivity"


def check_johnson():
    g = 2
    a3 = johnson_a(g, 3, [TensorElt.letter(2)])
    if not sn_quotient_membership(g, a3):
        return False, "n = 3 element nonzero mod mu"
    c1, c2 = TensorElt.letter(0), TensorElt.letter(1)
    a = johnson_a(g, 4, [c1, c2])
    c = c1 * c2 + c2 * c1
    closed = -1 * mu_insert(1, 3, c, g) + mu_insert(1, 4, c, g) - mu_insert(2, 4, c, g)
    if not sn_quotient_membership(g, a - closed):
        return False, "closed form"
    res = ad_check(g, a, TensorElt.letter(2), witness=(2, 0, 3, 1, 2))
    ok = (res["coefficient"] == -2 and res["nonzero_mod_mu"] and insertion_span_membership(g, a)
          and not any(scfg_image(_surface(g), a)))
    return ok, f"coefficient {res['coefficient']}"


def check_icfg():
    inv, _ = icfg_kernel(_surface(2), 4)
    return inv.free_rank >= 1, f"rank {inv.free_rank}"


def check_many_punctures():
    for args in ((1, 1, 2, 0), (1, 1, 2, 1), (1, 2, 3, 0)):
        r = many_punctures_check(*args)
        if not r["equal"]:
            return False, f"{args}: {r['direct']} != {r['split']}"
    return True, "(1,1,2,0), (1,1,2,1), (1,2,3,0)"


def check_closed():
    for g in (0, 1, 2, 3):
        h = cx.closed_surface_homology(g, 1)
        if [x.free_rank for x in h] != [1, 2 * g, 1] or any(x.torsion for x in h):
            return False, f"conf_1 at g={g}"
    for g in (0, 1, 2):
        chi = 2 - 2 * g
        for n in (1, 2, 3):
            c = cx.closed_surface_complex(g, n)
            want = 1
            for i in range(n):
                want *= chi - i
            if c.euler_characteristic() != want:
                return False, f"Euler characteristic g={g} n={n}"
    return True, "conf_1, d^2 = 0, Euler characteristics"


def check_endomorphisms():
    for g, l, n in ((1, 0, 2), (1, 1, 2), (2, 0, 3)):
        s = SurfaceSpec(g, l)
        for e in (EndoSpec.identity(s), EndoSpec.conjugation(s, s.zeta)):
            if not act_endomorphism(e, n)["is_identity"]:
                return False, f"not identity at {(g, l, n)}"
    return True, "identity and zeta-conjugation"


CHECKS = [
    ("delta-zeta", check_delta_zeta),
    ("kernel-table", check_kernel_table),
    ("bar-complex", check_bar_complex),
    ("fundamental-group", check_fundamental_group),
    ("torus", check_torus),
    ("degeneracy", check_degeneracy),
    ("johnson", check_johnson),
    ("icfg", check_icfg),
    ("many-punctures", check_many_punctures),
    ("closed-surface", check_closed),
    ("endomorphisms", check_endomorphisms),
]


@contextmanager
def sign_flip():
    """Negate the zeta part of every bar boundary (mutation hook)."""
    original = cx.bar_boundary_terms

    def flipped(cell, p, n, table):
        out = original(cell, p, n, table)
        return {k: (-v if k[1] != cell[1] else v) for k, v in out.items()}

    with mock.patch.object(cx, "bar_boundary_terms", flipped):
        cx._HN_CACHE.clear()
        yield
    cx._HN_CACHE.clear()


def run_all(names=None) -> list[dict]:
    report = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except AssertionError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.append({"name": name, "ok": bool(ok), "detail": detail,
                       "seconds": round(time.perf_counter() - t0, 3)})
    return report
