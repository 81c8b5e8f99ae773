"""Loadings and the expanded string picture.

A Loading fixes the charge (red-string anchors), the red labels, the
solid positions and their residues.  Positions are exact rationals and
are stored sorted; all derived data (ghosts, validity, unsteadiness,
crossing events of a linear interpolation) is computed here.
"""

from __future__ import annotations

from fractions import Fraction

from .perm import Perm


class LoadingError(ValueError):
    pass


class NonGenericPath(Exception):
    """A linear interpolation hit a tie between interacting nontrivial events."""

    def __init__(self, time, events):
        super().__init__(f"non-generic path at t={time}")
        self.time = time
        self.events = events


class Loading:
    """charge kappa (strictly increasing), red labels rho, sorted solid
    positions xs with aligned residues."""

    __slots__ = ("kappa", "rho", "xs", "residues", "_hash")

    def __init__(self, kappa, rho, xs, residues):
        kappa = tuple(Fraction(k) for k in kappa)
        if any(a >= b for a, b in zip(kappa, kappa[1:])):
            raise LoadingError("charge must be strictly increasing")
        if len(kappa) != len(rho):
            raise LoadingError("rho must align with kappa")
        pairs = sorted(zip((Fraction(x) for x in xs), residues))
        self.kappa = kappa
        self.rho = tuple(rho)
        self.xs = tuple(p for p, _ in pairs)
        self.residues = tuple(r for _, r in pairs)
        self._hash = None

    @property
    def n(self):
        return len(self.xs)

    @property
    def ell(self):
        return len(self.kappa)

    def key(self):
        return (self.kappa, self.rho, self.xs, self.residues)

    def positions_key(self):
        return (self.kappa, self.rho, self.xs)

    def __eq__(self, other):
        return isinstance(other, Loading) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        xs = ",".join(str(x) for x in self.xs)
        return f"Loading(x=[{xs}], i={list(self.residues)}, kappa={[str(k) for k in self.kappa]}, rho={list(self.rho)})"

    def with_residues(self, residues):
        if len(residues) != self.n:
            raise LoadingError("residue count mismatch")
        return Loading(self.kappa, self.rho, self.xs, residues)

    def translated(self, z):
        z = Fraction(z)
        return Loading(
            tuple(k + z for k in self.kappa),
            self.rho,
            tuple(x + z for x in self.xs),
            self.residues,
        )


class PlacedString:
    """A string of the expanded picture: solid, ghost or red."""

    __slots__ = ("kind", "position", "residue", "owner", "edge")

    def __init__(self, kind, position, residue, owner=None, edge=None):
        self.kind = kind  # 'solid' | 'ghost' | 'red'
        self.position = position
        self.residue = residue
        self.owner = owner  # solid slot (1-based) for ghosts, red index for reds
        self.edge = edge

    def __repr__(self):
        extra = f", owner={self.owner}" if self.kind == "ghost" else ""
        return f"{self.kind}({self.residue})@{self.position}{extra}"


def strings(loading, quiver, gs):
    """All placed strings of the loading, sorted by position."""
    out = []
    for slot, (x, res) in enumerate(zip(loading.xs, loading.residues), start=1):
        out.append(PlacedString("solid", x, res, owner=slot))
        for edge, off in gs.ghost_offsets(res):
            out.append(PlacedString("ghost", x + off, res, owner=slot, edge=edge))
    for m, (k, r) in enumerate(zip(loading.kappa, loading.rho), start=1):
        out.append(PlacedString("red", k, r, owner=m))
    out.sort(key=lambda s: s.position)
    return out


def validate(loading, quiver, gs):
    """None if the loading avoids all forbidden coincidences, else a
    (class, left, right) violation triple with class in ss/sg/sr/gg/gr/rr."""
    placed = strings(loading, quiver, gs)
    order = {"solid": 0, "ghost": 1, "red": 2}
    for a, b in zip(placed, placed[1:]):
        if a.position == b.position:
            x, y = sorted((a, b), key=lambda s: order[s.kind])
            cls = {"solidsolid": "ss", "solidghost": "sg", "solidred": "sr",
                   "ghostghost": "gg", "ghostred": "gr", "redred": "rr"}[x.kind + y.kind]
            return (cls, x, y)
    return None


def is_valid(loading, quiver, gs):
    return validate(loading, quiver, gs) is None


def is_unsteady(loading, quiver, gs):
    """True iff a nonempty suffix of the string picture contains no red
    string and contains the owner of each of its ghosts."""
    if loading.n == 0:
        return False
    placed = strings(loading, quiver, gs)
    solids_seen = set()
    ghosts_pending = set()
    for s in reversed(placed):
        if s.kind == "red":
            return False
        if s.kind == "solid":
            solids_seen.add(s.owner)
            ghosts_pending.discard(s.owner)
        else:
            ghosts_pending.add(s.owner)
        # suffix ending just left of s is a candidate once consistent
        if solids_seen and not (ghosts_pending - solids_seen):
            return True
    return bool(solids_seen) and not (ghosts_pending - solids_seen)


# -- crossing events of a linear interpolation --------------------------------


class CrossingEvent:
    """A transversal intersection of two interpolated strings.

    left/right are the PlacedString-like descriptors *before* the event;
    slots are segment-bottom solid slots (owner for ghosts).
    """

    __slots__ = ("time", "category", "left", "right")

    def __init__(self, time, category, left, right):
        self.time = time
        self.category = category  # 'ss' | 'sg' | 'gg' | 'sr' | 'gr'
        self.left = left
        self.right = right

    def __repr__(self):
        return f"Event(t={self.time}, {self.category}, {self.left} | {self.right})"


class _Traj:
    __slots__ = ("kind", "slot", "residue", "start", "end", "edge")

    def __init__(self, kind, slot, residue, start, end, edge=None):
        self.kind = kind
        self.slot = slot
        self.residue = residue
        self.start = start
        self.end = end
        self.edge = edge

    def at(self, t):
        return self.start + t * (self.end - self.start)

    def __repr__(self):
        return f"{self.kind}{self.slot}({self.residue})"


def _trajectories(bottom, top, assign, quiver, gs):
    trajs = []
    for k in range(1, bottom.n + 1):
        res = bottom.residues[k - 1]
        x0 = bottom.xs[k - 1]
        x1 = top.xs[assign(k) - 1]
        trajs.append(_Traj("solid", k, res, x0, x1))
        for edge, off in gs.ghost_offsets(res):
            trajs.append(_Traj("ghost", k, res, x0 + off, x1 + off, edge))
    for m, (kap, r) in enumerate(zip(bottom.kappa, bottom.rho), start=1):
        trajs.append(_Traj("red", m, r, kap, kap))
    return trajs


def _event_is_nontrivial(ev, quiver):
    """Does the event act non-identically on the polynomial module?"""
    if ev.category == "ss":
        return True
    if ev.category == "sg":
        ghost = ev.left if ev.left.kind == "ghost" else ev.right
        solid = ev.left if ev.left.kind == "solid" else ev.right
        fire = ev.left.kind == "ghost"  # ghost passes left-to-right
        return fire and quiver.has_edge(ghost.residue, solid.residue)
    if ev.category == "sr":
        solid = ev.left if ev.left.kind == "solid" else ev.right
        red = ev.left if ev.left.kind == "red" else ev.right
        fire = ev.left.kind == "solid"  # solid passes left-to-right
        return fire and solid.residue == red.residue
    return False


def event_is_genuine_crossing(ev, quiver):
    """Events whose reverse or forward action is non-identity; a straight
    line diagram must avoid these (its star is then a two-sided inverse)."""
    if ev.category == "ss":
        return True
    if ev.category == "sg":
        ghost = ev.left if ev.left.kind == "ghost" else ev.right
        solid = ev.left if ev.left.kind == "solid" else ev.right
        return quiver.has_edge(ghost.residue, solid.residue)
    if ev.category == "sr":
        return ev.left.residue == ev.right.residue
    return False


def _solid_slots(ev):
    out = set()
    for part in (ev.left, ev.right):
        if part.kind in ("solid", "ghost"):
            out.add(part.slot)
    return out


def crossing_events(bottom, top, assign, quiver, gs, check_generic=True):
    """Time-sorted transversal intersections of the linear interpolation
    where bottom slot k travels to top slot assign(k).

    Raises NonGenericPath when two nontrivial events sharing a solid
    string happen at the same time (callers subdivide the path).
    """
    if bottom.kappa != top.kappa or bottom.rho != top.rho:
        raise LoadingError("crossing events need identical red data")
    for k in range(1, bottom.n + 1):
        if top.residues[assign(k) - 1] != bottom.residues[k - 1]:
            raise LoadingError("residues incompatible with the assignment")
    trajs = _trajectories(bottom, top, assign, quiver, gs)
    events = []
    for ai in range(len(trajs)):
        for bi in range(ai + 1, len(trajs)):
            A, B = trajs[ai], trajs[bi]
            if A.kind == "red" and B.kind == "red":
                continue
            if A.kind == B.kind and A.slot == B.slot and A.kind != "ghost":
                continue
            if A.kind != "red" and B.kind != "red" and A.slot == B.slot:
                # a string never crosses its own parallel partners
                continue
            d0 = A.start - B.start
            d1 = A.end - B.end
            if d0 == d1:
                continue  # parallel
            # position difference is linear: zero at t*
            t = Fraction(d0, d0 - d1)
            if not (0 < t < 1):
                continue
            left, right = (A, B) if d0 < 0 else (B, A)
            kinds = {A.kind, B.kind}
            if kinds == {"solid"}:
                cat = "ss"
            elif kinds == {"solid", "ghost"}:
                cat = "sg"
            elif kinds == {"ghost"}:
                cat = "gg"
            elif kinds == {"solid", "red"}:
                cat = "sr"
            else:
                cat = "gr"
            events.append(
                CrossingEvent(
                    t,
                    cat,
                    _EventEnd(left.kind, left.slot, left.residue),
                    _EventEnd(right.kind, right.slot, right.residue),
                )
            )
    events.sort(key=lambda e: e.time)
    if check_generic:
        i = 0
        while i < len(events):
            j = i
            while j < len(events) and events[j].time == events[i].time:
                j += 1
            group = events[i:j]
            if len(group) > 1:
                hot = [e for e in group if _event_is_nontrivial(e, quiver)]
                for x in range(len(hot)):
                    for y in range(x + 1, len(hot)):
                        if _solid_slots(hot[x]) & _solid_slots(hot[y]):
                            raise NonGenericPath(group[0].time, group)
            i = j
    return events


class _EventEnd:
    __slots__ = ("kind", "slot", "residue")

    def __init__(self, kind, slot, residue):
        self.kind = kind
        self.slot = slot
        self.residue = residue

    def __repr__(self):
        return f"{self.kind}{self.slot}({self.residue})"


# -- generic path resolution ---------------------------------------------------


def _min_gap(values):
    vals = sorted(set(values))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else Fraction(1)


def resolve_segments(bottom, top, assign, quiver, gs, depth=0):
    """Split the straight path bottom->top into generic straight pieces.

    Returns a list of (bottom, top, assign) triples whose event lists are
    tie-free.  Ties are broken by a perturbed midpoint loading; the
    perturbations are deterministic.
    """
    if depth > 12:
        raise LoadingError("could not resolve a generic path (depth exceeded)")
    try:
        crossing_events(bottom, top, assign, quiver, gs)
        return [(bottom, top, assign)]
    except NonGenericPath:
        pass
    n = bottom.n
    all_positions = list(bottom.xs) + list(top.xs) + list(bottom.kappa)
    base_gap = _min_gap(all_positions)
    for attempt in range(1, 9):
        delta = base_gap / (4 * (n + 1) * (n + 1) * (depth + 1) * attempt)
        mids = []
        for k in range(1, n + 1):
            # quadratic multipliers so affinely degenerate configurations
            # (arithmetic progressions) actually separate
            mid = (bottom.xs[k - 1] + top.xs[assign(k) - 1]) / 2 + (
                k * k + attempt * k
            ) * delta
            mids.append(mid)
        if len(set(mids)) != n:
            continue
        order = sorted(range(1, n + 1), key=lambda k: mids[k - 1])
        assign1 = Perm([order.index(k) + 1 for k in range(1, n + 1)])
        mid_residues = [None] * n
        for k in range(1, n + 1):
            mid_residues[assign1(k) - 1] = bottom.residues[k - 1]
        try:
            mid_loading = Loading(bottom.kappa, bottom.rho, sorted(mids), mid_residues)
        except LoadingError:
            continue
        if not is_valid(mid_loading, quiver, gs):
            continue
        assign2 = assign * assign1.inverse()
        try:
            first = resolve_segments(bottom, mid_loading, assign1, quiver, gs, depth + 1)
            second = resolve_segments(mid_loading, top, assign2, quiver, gs, depth + 1)
            return first + second
        except LoadingError:
            continue
    raise LoadingError("could not resolve a generic path")
