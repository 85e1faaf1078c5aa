import random

import pytest

from confhom.intlin import rank
from confhom.magnus import delta_matrix_u1
from confhom.shuffle import (EdgeAlphabet, HElement, HSeries, basis_count, basis_enumerate, basis_product,
                             delta_of_letters, delta_on, series_inverse, shuffle_product)
from oracles import brute_basis, brute_shuffle


def random_element(rnd, r, points, terms=3):
    basis = basis_enumerate(r, len(points), points)
    x = HElement.zero(r, points)
    for b in rnd.sample(basis, min(terms, len(basis))):
        x = x + rnd.randint(-3, 3) * HElement.basis(b)
    return x


def split_points(rnd, sizes):
    pts = list(range(1, sum(sizes) + 1))
    rnd.shuffle(pts)
    out, i = [], 0
    for s in sizes:
        out.append(sorted(pts[i:i + s])); i += s
    return out


def test_alphabet_surface_names():
    a = EdgeAlphabet.surface(2, 1)
    assert list(a.names[:4]) == ["a1", "a-1", "a2", "a-2"]
    assert len(a) == 5
    with pytest.raises(KeyError):
        a.index("zz")


@pytest.mark.parametrize("r,n", [(1, 3), (2, 3), (3, 2), (2, 4)])
def test_basis_matches_brute_force(r, n):
    got = basis_enumerate(r, n)
    assert got == brute_basis(r, range(1, n + 1))
    assert len(got) == basis_count(r, n)


def test_basis_product_matches_oracle():
    rnd = random.Random(0)
    for _ in range(200):
        r = rnd.randint(1, 3)
        p, q = split_points(rnd, [rnd.randint(0, 3), rnd.randint(0, 3)])
        x = rnd.choice(basis_enumerate(r, len(p), p))
        y = rnd.choice(basis_enumerate(r, len(q), q))
        got: dict = {}
        for c, s in basis_product(x, y):
            got[c] = got.get(c, 0) + s
        assert {k: v for k, v in got.items() if v} == brute_shuffle(x, y)


def test_line_shuffle_count():
    x = HElement.cell(1, 0, (1, 2))
    y = HElement.cell(1, 0, (3,))
    z = shuffle_product(x, y)
    # points have odd degree, so moving 3 past one point costs a sign
    assert z.terms == {((1, 2, 3),): 1, ((1, 3, 2),): -1, ((3, 1, 2),): 1}


@pytest.mark.parametrize("seed", range(4))
def test_associativity(seed):
    rnd = random.Random(seed)
    r = rnd.randint(1, 3)
    pa, pb, pc = split_points(rnd, [rnd.randint(1, 2), rnd.randint(1, 2), rnd.randint(0, 1)])
    a, b, c = (random_element(rnd, r, p) for p in (pa, pb, pc))
    assert shuffle_product(shuffle_product(a, b), c) == shuffle_product(a, shuffle_product(b, c))


@pytest.mark.parametrize("seed", range(6))
def test_graded_commutativity(seed):
    rnd = random.Random(100 + seed)
    r = rnd.randint(1, 3)
    p, q = split_points(rnd, [rnd.randint(0, 2), rnd.randint(0, 2)])
    a, b = random_element(rnd, r, p), random_element(rnd, r, q)
    assert shuffle_product(a, b) == (-1) ** (len(p) * len(q)) * shuffle_product(b, a)


def test_unit_and_overlap():
    x = HElement.cell(2, 1, (1, 2))
    assert shuffle_product(HElement.unit(2), x) == x
    with pytest.raises(ValueError):
        shuffle_product(x, HElement.cell(2, 0, (2,)))
    with pytest.raises(ValueError):
        shuffle_product(x, HElement.cell(3, 0, (3,)))


def test_element_arithmetic():
    x = HElement.cell(2, 0, (1,))
    assert (x - x).is_zero()
    assert (3 * x).terms == {((1,), ()): 3}
    assert x.relabel({1: 5}).points == frozenset({5})
    assert x.relabel({1: 5}).normalized() == x


def test_generator_series_inverse():
    for n in (1, 3, 5):
        g = HSeries.generator(2, 1, n)
        assert g * series_inverse(g) == HSeries.one(2, n)
        assert series_inverse(g) * g == HSeries.one(2, n)


def test_inverse_coefficients_on_a_line():
    # antipode: (-1)^n times the sign of reversing n odd points
    inv = delta_of_letters(1, [(0, -1)], 5)
    for n in range(1, 6):
        assert inv[n] == (-1) ** (n * (n + 1) // 2) * HElement.cell(1, 0, tuple(range(n, 0, -1)))


def test_delta_is_multiplicative():
    rnd = random.Random(3)
    for _ in range(10):
        u = [(rnd.randrange(2), rnd.choice((1, -1))) for _ in range(rnd.randint(0, 3))]
        v = [(rnd.randrange(2), rnd.choice((1, -1))) for _ in range(rnd.randint(0, 3))]
        assert delta_of_letters(2, u + v, 4) == delta_of_letters(2, u, 4) * delta_of_letters(2, v, 4)


def test_free_reduction_is_respected():
    assert delta_of_letters(2, [(0, 1), (1, 1), (1, -1), (0, -1)], 4) == HSeries.one(2, 4)


def test_delta_on_transports_labels():
    x = HElement.cell(1, 0, (1, 2))
    assert delta_on(x, (7, 3)) == HElement.cell(1, 0, (7, 3))


@pytest.mark.parametrize("n", range(1, 7))
def test_delta_injective_on_line_augmentation(n):
    mat, mons, _ = delta_matrix_u1(1, n, 1)
    assert len(mons) == n
    assert rank(mat) == n
