import pytest

from wklrw.poly import Poly
from wklrw.quiver import (
    GhostShift,
    Quiver,
    a_affine,
    a_line,
    build_quiver,
    c_affine,
    default_qpolys,
)

u = Poly.var(2, 1)
v = Poly.var(2, 2)


def test_a_affine_3():
    q = a_affine(3)
    assert q.vertices == [0, 1, 2]
    assert all(q.symmetrizer[i] == 1 for i in q.vertices)
    assert {(e.source, e.target) for e in q.edges} == {(0, 1), (1, 2), (2, 0)}


def test_c_affine_3():
    q = c_affine(3)
    assert q.vertices == [0, 1, 2, 3]
    mult2 = {(e.source, e.target) for e in q.edges if e.multiplicity == 2}
    assert mult2 == {(0, 1), (3, 2)}
    assert q.symmetrizer == {0: 2, 1: 1, 2: 1, 3: 2}


def test_a_line():
    q = a_line([-1, 0, 1])
    assert len(q.vertices) == 3
    assert len(q.edges) == 2


def test_cartan_pairing():
    q = a_affine(3)
    assert q.cartan_pairing(0, 0) == 2
    assert q.cartan_pairing(0, 1) == -1
    assert q.cartan_pairing(0, 2) == -1
    c = c_affine(3)
    assert c.cartan_pairing(0, 1) == -2
    assert c.cartan_pairing(1, 0) == -2
    assert c.cartan_pairing(0, 0) == 4
    assert c.cartan_pairing(1, 1) == 2
    assert c.cartan_pairing(1, 2) == -1


def test_a_affine_2_doubled():
    q = a_affine(2)
    assert len(q.edges) == 2
    assert q.cartan_entry(0, 1) == -2
    assert q.cartan_pairing(0, 1) == -2


def test_default_qpolys_type_a():
    q = a_affine(3)
    qs = default_qpolys(q)
    assert qs.q(0, 1) == u - v
    assert qs.q(1, 0) == v - u
    assert qs.q(0, 0) == Poly.zero(2)
    # 2 -> 0 is the edge, so Q_20 = u - v and Q_02 = v - u
    assert qs.q(2, 0) == u - v
    assert qs.q(0, 2) == v - u


def test_default_qpolys_type_c():
    qs = default_qpolys(c_affine(3))
    assert qs.q(0, 1) == u - v * v
    assert qs.q(1, 0) == v - u * u
    assert qs.q(1, 2) == u - v
    assert qs.q(1, 3) == Poly.one(2)


def test_qpoly_homogeneity():
    for q in (a_affine(2), a_affine(3), c_affine(2), c_affine(3)):
        qs = default_qpolys(q)
        for i in q.vertices:
            for j in q.vertices:
                if i == j or not q.adjacent(i, j):
                    continue
                di, dj = 2 * q.symmetrizer[i], 2 * q.symmetrizer[j]
                assert qs.q(i, j).weighted_degree((di, dj)) == -2 * q.cartan_pairing(i, j)
                assert qs.q(i, j) == qs.q(j, i).swap(1, 2)


def test_q_triple():
    qs = default_qpolys(a_affine(3))
    assert qs.q_triple(0, 1, 2) == Poly.zero(3)
    # edge 0->1: Q_01 = u-v: Q_{0,1,0} = ((u-v)-(w-v))/(w-u) = -1
    assert qs.q_triple(0, 1, 0) == Poly.const(3, -1)
    # edge 0->1 viewed from 1: Q_10 = v-u: Q_{1,0,1} = ((v-u)-(v-w))/(w-v)... with
    # arguments (u,v,w) = (y1,y2,y3): ((y2-y1)-(y2-y3))/(y3-y1) = 1
    assert qs.q_triple(1, 0, 1) == Poly.one(3)


def test_ghost_offsets():
    q = a_affine(3)
    gs = GhostShift(q)
    offs = gs.ghost_offsets(0)
    assert len(offs) == 1 and offs[0][1] == 1
    c = c_affine(3)
    cgs = GhostShift(c)
    assert len(cgs.ghost_offsets(2)) == 0  # vertex e-1 has no outgoing edge
    assert len(cgs.ghost_offsets(3)) == 1
    assert len(cgs.ghost_offsets(0)) == 1


def test_negative_shift_ghosts():
    # edge i -> j with negative shift gives the *target* a ghost
    q = a_line([0, 1])
    gs = GhostShift(q, default=-1)
    assert gs.ghost_offsets(0) == []
    offs = gs.ghost_offsets(1)
    assert len(offs) == 1 and offs[0][1] == 1


def test_build_quiver_custom_and_errors():
    q = build_quiver(
        "custom",
        vertices=[0, 1, 2],
        edges=[(0, 1, 2), (1, 2)],
        symmetrizer={0: 2, 1: 1, 2: 1},
    )
    assert q.cartan_pairing(0, 1) == -2
    with pytest.raises(ValueError):
        build_quiver("A_affine", e=1)
    with pytest.raises(ValueError):
        Quiver([0, 1], [], {0: 1, 1: 0})
