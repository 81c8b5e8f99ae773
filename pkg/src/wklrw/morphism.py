"""Diagrams as composable paths with dots, and their evaluation on the
faithful polynomial module.

A Morphism is a bottom loading, a top loading and an ordered list of
steps (straight segments carrying a slot assignment, and dots).  Its
evaluation compiles the time-ordered nontrivial events into a list of
exact operators on polynomials; isotopy classes are captured because
only that event sequence matters.
"""

from __future__ import annotations

from .loading import (
    Loading,
    crossing_events,
    event_is_genuine_crossing,
    is_valid,
    resolve_segments,
)
from .perm import Perm
from .poly import Poly


class Context:
    """The fixed data every diagram computation needs."""

    def __init__(self, quiver, gs, qpolys):
        self.quiver = quiver
        self.gs = gs
        self.qpolys = qpolys

    def pairing(self, i, j):
        return self.quiver.cartan_pairing(i, j)


class DotStep:
    __slots__ = ("slot",)

    def __init__(self, slot):
        self.slot = slot

    def __repr__(self):
        return f"Dot({self.slot})"


class Segment:
    __slots__ = ("bottom", "top", "assign", "_events")

    def __init__(self, bottom, top, assign):
        self.bottom = bottom
        self.top = top
        self.assign = assign
        self._events = None

    def events(self, ctx):
        if self._events is None:
            self._events = crossing_events(
                self.bottom, self.top, self.assign, ctx.quiver, ctx.gs
            )
        return self._events

    def flipped(self):
        return Segment(self.top, self.bottom, self.assign.inverse())

    def __repr__(self):
        return f"Segment({self.bottom.xs}->{self.top.xs}, {self.assign})"


class ComposabilityError(ValueError):
    pass


class Morphism:
    def __init__(self, bottom, top, steps):
        self.bottom = bottom
        self.top = top
        self.steps = list(steps)
        self._perm = None
        self._compiled = {}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def identity(loading):
        return Morphism(loading, loading, [])

    @staticmethod
    def dot(loading, r):
        if not 1 <= r <= loading.n:
            raise ValueError(f"dot slot {r} out of range")
        return Morphism(loading, loading, [DotStep(r)])

    @staticmethod
    def straight(ctx, bottom, top):
        m = Morphism.permutation_diagram(ctx, bottom, top, Perm.identity(bottom.n))
        for step in m.steps:
            for ev in step.events(ctx):
                if event_is_genuine_crossing(ev, ctx.quiver):
                    raise ComposabilityError(
                        f"not a straight line: genuine crossing {ev}"
                    )
        return m

    @staticmethod
    def permutation_diagram(ctx, bottom, top, w, reduced_word=None):
        """The diagram where bottom slot k travels to top slot w(k) along a
        straight path, auto-subdivided at ties."""
        if reduced_word is not None:
            check = Perm.from_word(bottom.n, reduced_word)
            if check != w or len(reduced_word) != w.length():
                raise ValueError("reduced_word does not reduce to w")
        for k in range(1, bottom.n + 1):
            if top.residues[w(k) - 1] != bottom.residues[k - 1]:
                raise ComposabilityError("residues incompatible with w")
        pieces = resolve_segments(bottom, top, w, ctx.quiver, ctx.gs)
        return Morphism(bottom, top, [Segment(*p) for p in pieces])

    # -- structure ---------------------------------------------------------

    def compose(self, other):
        """self after other (other at the bottom)."""
        if other.top != self.bottom:
            raise ComposabilityError("top of lower != bottom of upper")
        return Morphism(other.bottom, self.top, other.steps + self.steps)

    def __mul__(self, other):
        return self.compose(other)

    def star(self):
        steps = []
        for step in reversed(self.steps):
            if isinstance(step, DotStep):
                steps.append(step)
            else:
                steps.append(step.flipped())
        return Morphism(self.top, self.bottom, steps)

    def perm(self):
        """Composite slot assignment bottom -> top."""
        if self._perm is None:
            w = Perm.identity(self.bottom.n)
            for step in self.steps:
                if isinstance(step, Segment):
                    w = step.assign * w
            self._perm = w
        return self._perm

    def with_dots(self, exps):
        """Post-compose with dots y^exps at the bottom loading."""
        dots = []
        for r, a in enumerate(exps, start=1):
            dots.extend([DotStep(r)] * a)
        return Morphism(self.bottom, self.top, dots + self.steps)

    def __repr__(self):
        return f"Morphism({self.bottom.xs}->{self.top.xs}, {len(self.steps)} steps)"

    # -- grading -------------------------------------------------------------

    def degree(self, ctx):
        d = ctx.quiver.symmetrizer
        deg = 0
        cur = Perm.identity(self.bottom.n)
        for step in self.steps:
            if isinstance(step, DotStep):
                res = self._residue_at(step.slot, cur)
                deg += 2 * d[res]
            else:
                for ev in step.events(ctx):
                    deg += _event_degree(ev, ctx)
                cur = step.assign * cur
        return deg

    def _residue_at(self, slot, cur):
        ident = cur.inverse()(slot)
        return self.bottom.residues[ident - 1]

    # -- evaluation ------------------------------------------------------------

    def compiled(self, ctx, graded=False):
        key = (id(ctx), graded)
        if key not in self._compiled:
            self._compiled[key] = _compile(self, ctx, graded)
        return self._compiled[key]

    def apply_to_poly(self, ctx, poly, graded=False):
        """Apply to poly at the bottom key; returns the poly at the top key."""
        ops, final = self.compiled(ctx, graded)
        p = poly
        for op in ops:
            if p.is_zero():
                return p
            tag = op[0]
            if tag == "zero":
                return Poly.zero(p.n)
            if tag == "mul_var":
                p = p * Poly.var(p.n, op[1])
            elif tag == "swap":
                p = p.swap(op[1], op[2])
            elif tag == "demazure":
                p = p.demazure(op[1], op[2])
            else:  # mul_Q
                _, a, b, qpoly = op
                p = p * qpoly.embed(p.n, [a, b])
        if not final.is_identity():
            p = p.permute(final)
        return p

    def eval(self, ctx, pv, graded=False):
        """Evaluate on a PolyVector; linear, key-projecting."""
        out = PolyVector()
        for key, poly in pv.items():
            if key != self.bottom:
                continue
            out.add(self.top, self.apply_to_poly(ctx, poly, graded))
        return out


def _event_degree(ev, ctx):
    if ev.category == "ss":
        if ev.left.residue == ev.right.residue:
            return -2 * ctx.quiver.symmetrizer[ev.left.residue]
        return 0
    if ev.category == "sg":
        ghost = ev.left if ev.left.kind == "ghost" else ev.right
        solid = ev.left if ev.left.kind == "solid" else ev.right
        if ctx.quiver.has_edge(ghost.residue, solid.residue):
            # paper's D:Grading says <a_i,a_j>; the sign is flipped so the
            # defining relations are homogeneous (see decisions ledger)
            return -ctx.pairing(ghost.residue, solid.residue)
        return 0
    if ev.category == "sr":
        if ev.left.residue == ev.right.residue:
            return ctx.quiver.symmetrizer[ev.left.residue]
        return 0
    return 0


def _compile(morphism, ctx, graded):
    ops = []
    cur = Perm.identity(morphism.bottom.n)
    for step in morphism.steps:
        if isinstance(step, DotStep):
            ops.append(("mul_var", cur.inverse()(step.slot)))
            continue
        inv = cur.inverse()
        for ev in step.events(ctx):
            if ev.category == "ss":
                if ev.left.residue == ev.right.residue:
                    a = inv(ev.left.slot)
                    b = inv(ev.right.slot)
                    ops.append(("zero",) if graded else ("demazure", a, b))
                # distinct residues: in string-identity coordinates the
                # variables follow their strings, so the crossing is a no-op;
                # the final relabelling realizes the place permutation
            elif ev.category == "sg":
                if ev.left.kind == "ghost":  # ghost passes left-to-right
                    gres, sres = ev.left.residue, ev.right.residue
                    if ctx.quiver.has_edge(gres, sres):
                        if graded:
                            ops.append(("zero",))
                        else:
                            a = inv(ev.left.slot)
                            b = inv(ev.right.slot)
                            ops.append(("mul_Q", a, b, ctx.qpolys.q(gres, sres)))
            elif ev.category == "sr":
                if ev.left.kind == "solid" and ev.left.residue == ev.right.residue:
                    ops.append(("mul_var", inv(ev.left.slot)))
        cur = step.assign * cur
    return ops, cur


class PolyVector(dict):
    """Finitely supported map Loading -> Poly."""

    def add(self, key, poly):
        if poly.is_zero():
            return
        if key in self:
            s = self[key] + poly
            if s.is_zero():
                del self[key]
            else:
                self[key] = s
        else:
            self[key] = poly

    def scaled(self, c):
        out = PolyVector()
        if c == 0:
            return out
        for k, p in self.items():
            out[k] = p * c
        return out

    def plus(self, other):
        out = PolyVector(self)
        for k, p in other.items():
            out.add(k, p)
        return out

    @staticmethod
    def unit(loading, poly):
        pv = PolyVector()
        pv.add(loading, poly)
        return pv

    def is_zero(self):
        return not self
