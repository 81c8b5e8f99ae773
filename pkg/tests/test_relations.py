"""Defining-relation suite at unit-test scale (the acceptance test reruns
it at full scale over all five quivers)."""

import pytest

from wklrw.morphism import Context
from wklrw.quiver import GhostShift, a_affine, build_quiver, c_affine, default_qpolys
from wklrw.relations import RELATIONS, check_relations, report_ok


def make_ctx(q):
    return Context(q, GhostShift(q), default_qpolys(q))


CTX_A3 = make_ctx(a_affine(3))
CTX_C2 = make_ctx(c_affine(2))
CTX_A2 = make_ctx(a_affine(2))


@pytest.mark.parametrize("name", sorted(RELATIONS))
def test_relation_a3(name):
    rep = check_relations(CTX_A3, samples=6, seed=11, max_degree=3, relations=[name])
    assert rep[name]["checked"] >= 1, f"{name}: no instances sampled"
    assert not rep[name]["failures"], rep[name]["failures"][:1]


@pytest.mark.parametrize("name", sorted(RELATIONS))
def test_relation_c2(name):
    rep = check_relations(CTX_C2, samples=4, seed=5, max_degree=3, relations=[name])
    assert rep[name]["checked"] >= 1, f"{name}: no instances sampled"
    assert not rep[name]["failures"], rep[name]["failures"][:1]


def test_relation_a2_doubled_quiver():
    rep = check_relations(CTX_A2, samples=3, seed=3, max_degree=3)
    assert report_ok(rep)


def test_relation_custom_quiver():
    q = build_quiver(
        "custom",
        vertices=[0, 1, 2],
        edges=[(0, 1, 2), (1, 2)],
        symmetrizer={0: 2, 1: 1, 2: 1},
    )
    rep = check_relations(make_ctx(q), samples=3, seed=7, max_degree=3)
    assert report_ok(rep)
