import random
from itertools import combinations, permutations

import pytest

from confhom.complex import filtration_generators, hn_presentation
from confhom.degeneracy import (degeneracy, degeneracy_basis, degeneracy_matrix, degeneracy_on_quotient,
                                is_onto, iterated_degeneracy)
from confhom.intlin import SparseIntMat, snf
from confhom.shuffle import HElement, basis_enumerate, delta_of_letters
from confhom.surfaces import SurfaceSpec, delta_zeta, mu_element
from oracles import oracle_merge


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (2, 4), (3, 3)])
def test_sign_formula_on_all_basis_elements(r, n):
    for b in basis_enumerate(r, n):
        for i, j in permutations(range(1, n + 1), 2):
            assert degeneracy_basis(b, i, j) == oracle_merge(b, i, j)


def test_examples():
    for n in range(2, 7):
        x = HElement.cell(1, 0, tuple(range(1, n + 1)))
        assert degeneracy(x, n - 1, n) == (-1) ** n * HElement.cell(1, 0, tuple(range(1, n)))
    assert degeneracy(HElement.cell(1, 0, (1, 2, 3)), 1, 3).is_zero()
    assert degeneracy(HElement.cell(1, 0, (2, 1)), 1, 2) == HElement.cell(1, 0, (1,))


def test_errors():
    x = HElement.cell(1, 0, (1, 2))
    with pytest.raises(ValueError):
        degeneracy(x, 1, 1)
    with pytest.raises(ValueError):
        degeneracy(x, 1, 5)
    with pytest.raises(ValueError):
        iterated_degeneracy(x, 3)


def test_iterated_identity_at_top():
    x = delta_zeta(1, 3)
    assert iterated_degeneracy(x, 3) == x


@pytest.mark.parametrize("n", range(2, 6))
def test_truncation_square(n):
    rnd = random.Random(n)
    for _ in range(6):
        letters = [(rnd.randrange(2), rnd.choice((1, -1))) for _ in range(rnd.randint(1, 5))]
        s = delta_of_letters(2, letters, n)
        assert degeneracy(s[n], n - 1, n) == (-1) ** n * s[n - 1]


@pytest.mark.parametrize("g,n", [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4)])
def test_iterated_degeneracy_of_boundary_word(g, n):
    assert iterated_degeneracy(delta_zeta(g, n), 2) in (mu_element(g), -mu_element(g))


@pytest.mark.parametrize("r,n", [(1, 3), (1, 4), (2, 3), (2, 4)])
def test_iterated_degeneracy_kills_deeper_filtration(r, n):
    for k in range(1, n):
        for x in filtration_generators(r, n, k + 1):
            assert iterated_degeneracy(x, k).is_zero()


@pytest.mark.parametrize("r,n", [(1, 4), (2, 4)])
def test_anticommutation(r, n):
    pts = range(1, n + 1)
    for b in basis_enumerate(r, n):
        x = HElement.basis(b)
        for (i, j), (k, l) in combinations(combinations(pts, 2), 2):
            if {i, j} & {k, l}:
                continue
            a = degeneracy(degeneracy(x, k, l, False), i, j, False)
            c = degeneracy(degeneracy(x, i, j, False), k, l, False)
            assert a == -c


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (2, 4)])
def test_jacobi(r, n):
    for b in basis_enumerate(r, n):
        x = HElement.basis(b)
        for i, j, k in combinations(range(1, n + 1), 3):
            total = HElement.zero(r, set(range(1, n + 1)) - {j, k})
            for u, v, w in ((i, j, k), (j, k, i), (k, i, j)):
                total = total + degeneracy(degeneracy(x, v, w, False), u, min(v, w), False)
            assert total.is_zero()


def test_naturality_under_relabelling():
    rnd = random.Random(7)
    n = 4
    for b in rnd.sample(basis_enumerate(2, n), 30):
        x = HElement.basis(b)
        sigma = dict(zip(range(1, n + 1), rnd.sample(range(1, n + 1), n)))
        for i, j in combinations(range(1, n + 1), 2):
            left = degeneracy(x.relabel(sigma), sigma[i], sigma[j], False)
            tau = {p: sigma[p] for p in x.points - {max(i, j)}}
            tau[min(i, j)] = min(sigma[i], sigma[j])
            assert left == degeneracy(x, i, j, False).relabel(tau)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_onto_for_free_part(n):
    for i, j in combinations(range(1, n + 1), 2):
        mat, _, _ = degeneracy_matrix(2, n, i, j)
        assert snf(mat).cokernel.is_trivial


@pytest.mark.parametrize("n", [2, 3, 4])
def test_onto_and_well_defined_for_torus(n):
    p = SurfaceSpec(1).presentation
    for i, j in combinations(range(1, n + 1), 2):
        assert is_onto(p, n, i, j)
        cols = degeneracy_on_quotient(p, n, i, j)
        assert len(cols) == hn_presentation(p, n).quotient.dim


def test_quotient_map_is_surjective_on_coordinates():
    p = SurfaceSpec(1).presentation
    cols = degeneracy_on_quotient(p, 3, 2, 3)
    d = hn_presentation(p, 2).quotient.dim
    m = SparseIntMat(d, len(cols), [{i: v for i, v in enumerate(c) if v} for c in cols])
    assert snf(m).cokernel.is_trivial


def test_degeneracy_on_quotient_needs_two_points():
    with pytest.raises(ValueError):
        degeneracy_on_quotient(SurfaceSpec(1).presentation, 1, 1, 2)
