import random
from fractions import Fraction

import pytest

from wklrw.poly import Poly, all_monomials


def y(n, r):
    return Poly.var(n, r)


def test_mul_basic():
    assert y(2, 1) * y(2, 2) == Poly.monomial(2, (1, 1))
    f = 3 * y(3, 1) ** 2 - y(3, 2)
    assert f * Poly.one(3) == f


def test_difference_of_squares():
    # (y1-y2)(y1+y2) = y1^2 - y2^2, expanded by hand
    f = (y(2, 1) - y(2, 2)) * (y(2, 1) + y(2, 2))
    assert f == y(2, 1) ** 2 - y(2, 2) ** 2


def test_dimension_error():
    with pytest.raises(ValueError):
        y(2, 1) * y(3, 1)


def test_permute():
    assert y(2, 1).permute([2, 1]) == y(2, 2)
    f = y(2, 1) * y(2, 2) ** 2
    assert f.permute([1, 2]) == f
    g = y(3, 1) + y(3, 3)
    assert g.permute([3, 2, 1]) == g


def test_permute_is_group_action():
    rng = random.Random(0)
    n = 4
    for _ in range(20):
        f = Poly.zero(n)
        for _ in range(4):
            exps = tuple(rng.randrange(3) for _ in range(n))
            f = f + Poly.monomial(n, exps, rng.randrange(-3, 4))
        v = list(range(1, n + 1))
        w = list(range(1, n + 1))
        rng.shuffle(v)
        rng.shuffle(w)
        wv = [w[v[k] - 1] for k in range(n)]
        assert f.permute(v).permute(w) == f.permute(wv)


def test_demazure_examples():
    assert Poly.one(2).demazure(1, 2) == Poly.zero(2)
    assert y(2, 1).demazure(1, 2) == Poly.one(2)
    # ((y2^2 - y1^2)/(y2 - y1)) = y1 + y2
    assert (y(2, 1) ** 2).demazure(1, 2) == y(2, 1) + y(2, 2)


def test_demazure_squares_to_zero():
    rng = random.Random(1)
    for _ in range(25):
        f = Poly.zero(3)
        for _ in range(5):
            exps = tuple(rng.randrange(4) for _ in range(3))
            f = f + Poly.monomial(3, exps, rng.randrange(-5, 6))
        g = f.demazure(1, 3)
        assert g.demazure(1, 3) == Poly.zero(3)


def test_demazure_leibniz():
    rng = random.Random(2)
    for _ in range(20):
        def rand():
            f = Poly.zero(3)
            for _ in range(3):
                exps = tuple(rng.randrange(3) for _ in range(3))
                f = f + Poly.monomial(3, exps, rng.randrange(-4, 5))
            return f

        f, g = rand(), rand()
        lhs = (f * g).demazure(1, 2)
        rhs = f.demazure(1, 2) * g + f.swap(1, 2) * g.demazure(1, 2)
        assert lhs == rhs


def test_is_symmetric_in_blocks():
    f = y(2, 1) + y(2, 2)
    assert f.is_symmetric_in_blocks([[1, 2]])
    assert not y(2, 1).is_symmetric_in_blocks([[1, 2]])
    g = y(2, 1) * y(2, 2) + y(2, 1) + y(2, 2)
    assert g.is_symmetric_in_blocks([[1, 2]])
    h = y(3, 1) * y(3, 2) + y(3, 3)
    assert h.is_symmetric_in_blocks([[1, 2], [3]])
    assert not h.is_symmetric_in_blocks([[1, 3], [2]])


def test_text_roundtrip():
    f = 3 * y(3, 1) ** 2 * y(3, 3) - y(3, 2)
    assert f.text() == "3*y1^2*y3 - y2"
    assert Poly.parse(3, f.text()) == f
    assert Poly.parse(2, "0") == Poly.zero(2)
    g = Poly.monomial(2, (1, 0), Fraction(1, 2)) + Poly.const(2, -7)
    assert Poly.parse(2, g.text()) == g


def test_all_monomials():
    ms = all_monomials(2, 2)
    assert len(ms) == 6
    assert (0, 0) in ms and (2, 0) in ms and (1, 1) in ms


def test_substitute():
    f = y(2, 1) ** 2 + y(2, 2)
    assert f.substitute([Fraction(1, 2), Fraction(3)]) == Fraction(13, 4)
