from fractions import Fraction

import pytest

from wklrw.loading import Loading
from wklrw.morphism import Context, Morphism, PolyVector
from wklrw.perm import Perm
from wklrw.poly import Poly
from wklrw.quiver import GhostShift, a_affine, c_affine, default_qpolys


def make_ctx(q):
    return Context(q, GhostShift(q), default_qpolys(q))


CTX = make_ctx(a_affine(3))


def loading(xs, residues, kappa=(), rho=()):
    return Loading(kappa, rho, xs, residues)


def test_eval_dot_is_variable():
    x = loading([0, Fraction(3, 4)], [0, 1], [Fraction(3, 2)], [2])
    d = Morphism.dot(x, 1)
    out = d.apply_to_poly(CTX, Poly.one(2))
    assert out == Poly.var(2, 1)
    d2 = Morphism.dot(x, 2)
    assert d2.apply_to_poly(CTX, Poly.var(2, 2)) == Poly.var(2, 2) ** 2


def test_eval_projects_on_bottom_key():
    x = loading([0, Fraction(3, 4)], [0, 1], [Fraction(3, 2)], [2])
    other = x.with_residues([1, 0])
    d = Morphism.identity(x)
    pv = PolyVector.unit(other, Poly.one(2))
    assert d.eval(CTX, pv).is_zero()
    pv2 = PolyVector.unit(x, Poly.one(2))
    assert d.eval(CTX, pv2) == PolyVector.unit(x, Poly.one(2))


def test_same_residue_crossing_acts_by_demazure():
    x = loading([0, Fraction(1, 8)], [0, 0], [Fraction(3, 2)], [2])
    chi = Morphism.permutation_diagram(CTX, x, x, Perm([2, 1]))
    assert chi.apply_to_poly(CTX, Poly.var(2, 1)) == Poly.one(2)
    assert chi.apply_to_poly(CTX, Poly.one(2)) == Poly.zero(2)


def test_distinct_residue_crossing_permutes():
    x = loading([0, Fraction(1, 8)], [0, 1], [Fraction(3, 2)], [2])
    top = x.with_residues([1, 0])
    chi = Morphism.permutation_diagram(CTX, x, top, Perm([2, 1]))
    assert chi.apply_to_poly(CTX, Poly.var(2, 1)) == Poly.var(2, 2)


def test_solid_red_crossing_rules():
    # solid passing left-to-right over a matching red multiplies the dot;
    # a non-matching red acts as the identity
    for rho, expected in ((0, Poly.var(1, 1)), (1, Poly.one(1))):
        x = loading([Fraction(-1, 4)], [0], [0], [rho])
        top = loading([Fraction(1, 4)], [0], [0], [rho])
        drift = Morphism.permutation_diagram(CTX, x, top, Perm([1]))
        assert drift.apply_to_poly(CTX, Poly.one(1)) == expected


def test_degree_examples():
    x = loading([0, Fraction(1, 8)], [0, 0], [Fraction(3, 2)], [2])
    assert Morphism.dot(x, 1).degree(CTX) == 2
    chi = Morphism.permutation_diagram(CTX, x, x, Perm([2, 1]))
    assert chi.degree(CTX) == -2
    # solid crossing a matching red: degree 1
    y0 = loading([Fraction(-1, 4)], [0], [0], [0])
    y1 = loading([Fraction(1, 4)], [0], [0], [0])
    assert Morphism.permutation_diagram(CTX, y0, y1, Perm([1])).degree(CTX) == 1
    # type C: dot on a residue-0 string has degree 2*d_0 = 4
    cctx = make_ctx(c_affine(2))
    z = Loading([10], [0], [0], [0])
    assert Morphism.dot(z, 1).degree(cctx) == 4


def test_star_is_involution_and_degree_neutral():
    x = loading([0, Fraction(1, 8)], [0, 0], [Fraction(3, 2)], [2])
    chi = Morphism.permutation_diagram(CTX, x, x, Perm([2, 1]))
    m = Morphism.dot(x, 2).compose(chi)
    s = m.star()
    assert s.bottom == m.top and s.top == m.bottom
    ss = s.star()
    assert ss.degree(CTX) == m.degree(CTX) == s.degree(CTX)
    f = Poly.var(2, 1) ** 2
    assert ss.apply_to_poly(CTX, f) == m.apply_to_poly(CTX, f)


def test_star_antihomomorphism_on_paths():
    x = loading([0, Fraction(1, 8)], [0, 1], [Fraction(3, 2)], [2])
    top = x.with_residues([1, 0])
    chi = Morphism.permutation_diagram(CTX, x, top, Perm([2, 1]))
    d = Morphism.dot(top, 1)
    m = d.compose(chi)  # chi then dot
    # star reverses composition: (d∘chi)* = chi*∘d*
    lhs = m.star()
    rhs = chi.star().compose(d.star())
    f = Poly.var(2, 2)
    assert lhs.apply_to_poly(CTX, f) == rhs.apply_to_poly(CTX, f)


def test_straight_line_invertible():
    x = loading([0, Fraction(3, 4)], [0, 1], [Fraction(3, 2)], [2])
    y = loading([Fraction(1, 8), Fraction(5, 8)], [0, 1], [Fraction(3, 2)], [2])
    s = Morphism.straight(CTX, x, y)
    loop = s.star().compose(s)
    f = Poly.var(2, 1) + 3 * Poly.var(2, 2) ** 2
    assert loop.apply_to_poly(CTX, f) == f


def test_eval_functorial():
    x = loading([0, Fraction(1, 8)], [0, 0], [Fraction(3, 2)], [2])
    chi = Morphism.permutation_diagram(CTX, x, x, Perm([2, 1]))
    d = Morphism.dot(x, 1)
    comp = d.compose(chi)
    f = Poly.var(2, 1) ** 3
    step1 = chi.apply_to_poly(CTX, f)
    assert comp.apply_to_poly(CTX, f) == d.apply_to_poly(CTX, step1)


def test_eval_gr_rules():
    x = loading([0, Fraction(1, 8)], [0, 0], [Fraction(3, 2)], [2])
    chi = Morphism.permutation_diagram(CTX, x, x, Perm([2, 1]))
    assert chi.apply_to_poly(CTX, Poly.var(2, 1), graded=True) == Poly.zero(2)
    # distinct residues: D(w) sends f to the place-permuted polynomial
    y = loading([0, Fraction(1, 8)], [0, 1], [Fraction(3, 2)], [2])
    top = y.with_residues([1, 0])
    chi2 = Morphism.permutation_diagram(CTX, y, top, Perm([2, 1]))
    f = Poly.var(2, 1) ** 2 * Poly.var(2, 2)
    assert chi2.apply_to_poly(CTX, f, graded=True) == f.permute([2, 1])
    # dots are unchanged in the graded action
    assert Morphism.dot(y, 1).apply_to_poly(CTX, Poly.one(2), graded=True) == Poly.var(2, 1)


def test_ghost_solid_crossing_multiplies_q():
    # edge 0 -> 1: drag the 0-string so its ghost passes the 1-string
    x = loading([0, Fraction(9, 8)], [0, 1], [10], [0])
    top = loading([Fraction(1, 2), Fraction(9, 8)], [0, 1], [10], [0])
    drift = Morphism.permutation_diagram(CTX, x, top, Perm.identity(2))
    # ghost of string 1 moves from 1 to 3/2 across the solid at 9/8: fire
    out = drift.apply_to_poly(CTX, Poly.one(2))
    assert out == Poly.var(2, 1) - Poly.var(2, 2)
    # reverse drift: trivial direction
    back = Morphism.permutation_diagram(CTX, top, x, Perm.identity(2))
    assert back.apply_to_poly(CTX, Poly.one(2)) == Poly.one(2)
