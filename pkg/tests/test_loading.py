from fractions import Fraction

import pytest

from wklrw.loading import (
    Loading,
    LoadingError,
    crossing_events,
    is_unsteady,
    is_valid,
    resolve_segments,
    strings,
    validate,
)
from wklrw.perm import Perm
from wklrw.quiver import GhostShift, a_affine, c_affine


def ctx_a3():
    q = a_affine(3)
    return q, GhostShift(q)


def test_validate_sr_violation():
    q, gs = ctx_a3()
    l = Loading([0], [0], [0], [0])
    v = validate(l, q, gs)
    assert v is not None and v[0] == "sr"


def test_validate_gr_violation():
    q, gs = ctx_a3()
    # ghost of the solid at -1 sits at 0 = kappa
    l = Loading([0], [0], [-1], [0])
    v = validate(l, q, gs)
    assert v is not None and v[0] == "gr"


def test_validate_ok():
    q, gs = ctx_a3()
    l = Loading([0], [0], [Fraction(-1, 2)], [0])
    assert validate(l, q, gs) is None


def test_strings_expanded_picture():
    q, gs = ctx_a3()
    l = Loading([0], [2], [Fraction(-1, 2)], [1])
    ss = strings(l, q, gs)
    assert [(s.kind, s.position) for s in ss] == [
        ("solid", Fraction(-1, 2)),
        ("red", 0),
        ("ghost", Fraction(1, 2)),
    ]


def test_strings_red_only_and_type_c():
    q, gs = ctx_a3()
    l = Loading([0], [1], [], [])
    assert [s.kind for s in strings(l, q, gs)] == ["red"]
    c = c_affine(3)
    cgs = GhostShift(c)
    l2 = Loading([10], [0], [0], [2])  # residue 2 = e-1 has no ghost
    ss = strings(l2, c, cgs)
    assert [s.kind for s in ss] == ["solid", "red"]
    l3 = Loading([10], [0], [0], [1])
    assert [s.kind for s in strings(l3, c, cgs)] == ["solid", "ghost", "red"]


def test_unsteady_paper_examples():
    q, gs = ctx_a3()
    # Unsteady: red at 1/4, solid at 1/2 (ghost at 3/2)
    l1 = Loading([Fraction(1, 4)], [0], [Fraction(1, 2)], [0])
    assert is_unsteady(l1, q, gs)
    # not unsteady: solid at 0, red at 1/4, ghost at 1
    l2 = Loading([Fraction(1, 4)], [0], [0], [0])
    assert not is_unsteady(l2, q, gs)


def test_unsteady_no_reds():
    q, gs = ctx_a3()
    l = Loading([], [], [0, Fraction(1, 3)], [0, 1])
    assert is_unsteady(l, q, gs)
    empty = Loading([], [], [], [])
    assert not is_unsteady(empty, q, gs)


def test_unsteady_monotone_translation():
    q, gs = ctx_a3()
    # escaping suffix stays escaping when pushed right
    l = Loading([Fraction(1, 4)], [0], [Fraction(1, 2)], [0])
    l2 = Loading([Fraction(1, 4)], [0], [Fraction(7, 2)], [0])
    assert is_unsteady(l, q, gs) and is_unsteady(l2, q, gs)


def test_crossing_events_trivial_and_swap():
    q, gs = ctx_a3()
    x = Loading([Fraction(3, 2)], [0], [0, Fraction(3, 4)], [0, 1])
    assert crossing_events(x, x, Perm.identity(2), q, gs) == []
    evs = crossing_events(x, x.with_residues([1, 0]), Perm([2, 1]), q, gs)
    cats = sorted(e.category for e in evs)
    # solid-solid swap, ghost-ghost shadow, and both ghosts cross the red
    assert cats == ["gg", "gr", "gr", "ss"]


def test_crossing_events_star_symmetry():
    q, gs = ctx_a3()
    x = Loading([Fraction(3, 2)], [0], [0, Fraction(3, 4)], [0, 1])
    y = Loading([Fraction(3, 2)], [0], [Fraction(-2, 7), Fraction(5, 4)], [1, 0])
    w = Perm([2, 1])
    evs = crossing_events(x, y, w, q, gs)
    rev = crossing_events(y, x, w.inverse(), q, gs)
    assert len(evs) == len(rev)
    for e, r in zip(sorted(evs, key=lambda e: e.time), sorted(rev, key=lambda e: (1 - e.time))):
        assert e.category == r.category
        assert e.time == 1 - r.time
        # left/right swap under reflection
        assert (e.left.kind, e.left.residue) == (r.right.kind, r.right.residue)


def test_resolve_segments_breaks_ties():
    q, gs = ctx_a3()
    # three equal-residue solids reversed: all three ss crossings happen at
    # t=1/2 and share strings, forcing a perturbed midpoint
    x = Loading([100], [0], [0, 1, 2], [0, 0, 0])
    pieces = resolve_segments(x, x, Perm([3, 2, 1]), q, gs)
    assert len(pieces) >= 2
    # composite assignment is preserved
    comp = Perm.identity(3)
    for _, _, a in pieces:
        comp = a * comp
    assert comp == Perm([3, 2, 1])


def test_residue_mismatch_raises():
    q, gs = ctx_a3()
    x = Loading([10], [0], [0, 1], [0, 1])
    with pytest.raises(LoadingError):
        crossing_events(x, x, Perm([2, 1]), q, gs)
