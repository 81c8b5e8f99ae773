"""Symmetrizable quivers, ghost shifts and Q-polynomials.

A quiver is a finite oriented graph with edge multiplicities in {1,2,3}
and a symmetrizer making (d_i a_ij) symmetric, subject to a_ij a_ji < 4.
The affine A1 quiver is modelled with its two single edges 0->1, 1->0.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly


class Edge:
    """Oriented edge source -> target with multiplicity (2 and 3 count once)."""

    __slots__ = ("source", "target", "multiplicity", "key")

    def __init__(self, source, target, multiplicity=1, key=0):
        if multiplicity not in (1, 2, 3):
            raise ValueError("edge multiplicity must be 1, 2 or 3")
        self.source = source
        self.target = target
        self.multiplicity = multiplicity
        self.key = key  # distinguishes parallel edges (affine A1)

    def __repr__(self):
        arrow = {1: "->", 2: "=>", 3: "=3=>"}[self.multiplicity]
        return f"{self.source}{arrow}{self.target}"

    def __eq__(self, other):
        return (
            isinstance(other, Edge)
            and (self.source, self.target, self.multiplicity, self.key)
            == (other.source, other.target, other.multiplicity, other.key)
        )

    def __hash__(self):
        return hash((self.source, self.target, self.multiplicity, self.key))


class Quiver:
    def __init__(self, vertices, edges, symmetrizer, name="custom"):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.symmetrizer = dict(symmetrizer)
        self.name = name
        self._validate()

    def _validate(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertices")
        for e in self.edges:
            if e.source not in vs or e.target not in vs:
                raise ValueError(f"edge {e} touches unknown vertex")
            if e.source == e.target:
                raise ValueError("loops are not allowed")
        for i in self.vertices:
            if self.symmetrizer.get(i, 0) <= 0:
                raise ValueError("symmetrizer entries must be positive")
        for i in self.vertices:
            for j in self.vertices:
                if i == j:
                    continue
                aij, aji = self.cartan_entry(i, j), self.cartan_entry(j, i)
                if (aij == 0) != (aji == 0):
                    raise ValueError("a_ij = 0 iff a_ji = 0 violated")
                both_ways = self.edges_from_to(i, j) and self.edges_from_to(j, i)
                # the doubled affine A1 convention (edges both ways) is the
                # one sanctioned exception to a_ij a_ji < 4
                if aij * aji >= 4 and not both_ways:
                    raise ValueError("a_ij a_ji >= 4 not supported")
                if self.symmetrizer[i] * aij != self.symmetrizer[j] * aji:
                    raise ValueError(f"symmetrizer fails at ({i},{j})")

    # -- Cartan data ---------------------------------------------------------

    def edges_between(self, i, j):
        return [
            e
            for e in self.edges
            if {e.source, e.target} == {i, j}
        ]

    def edges_from_to(self, i, j):
        return [e for e in self.edges if e.source == i and e.target == j]

    def cartan_entry(self, i, j):
        """a_ij: 2 on the diagonal, else determined by the edges and symmetrizer.

        For a single edge of multiplicity m between i and j oriented i->j
        with d_i = m*d_j the matrix entries are a_ij = -1, a_ji = -m when
        d_i > d_j; in the simply laced case both are -1.  The general rule
        a_ij = -(sum of multiplicities)*d_j/gcd-normalization reduces to
        requiring d_i a_ij symmetric, so we solve from the edge data.
        """
        if i == j:
            return 2
        total = sum(e.multiplicity for e in self.edges_between(i, j))
        if total == 0:
            return 0
        # d_i a_ij = d_j a_ji and |a_ij| <= |a_ji| iff d_i >= d_j.
        di, dj = self.symmetrizer[i], self.symmetrizer[j]
        # the symmetrized entry: for one mult-m edge, d_i a_ij = -m * min(d_i,d_j)
        # with the convention d_source = m * d_target for m >= 2; for the
        # doubled affine A1 (two simple edges) total = 2 and d_i = d_j.
        b = -total * min(di, dj)
        if b % di:  # pragma: no cover - guarded by _validate
            raise ValueError("inconsistent Cartan data")
        return b // di

    def cartan_pairing(self, i, j):
        """<alpha_i, alpha_j> = d_i a_ij."""
        if i not in self.symmetrizer or j not in self.symmetrizer:
            raise KeyError(f"unknown vertex in ({i},{j})")
        return self.symmetrizer[i] * self.cartan_entry(i, j)

    def has_edge(self, i, j):
        """True iff there is an edge from i to j (any multiplicity)."""
        return bool(self.edges_from_to(i, j))

    def adjacent(self, i, j):
        return bool(self.edges_between(i, j)) and i != j

    def __repr__(self):
        return f"Quiver({self.name}, vertices={self.vertices}, edges={self.edges})"


# -- standard families -------------------------------------------------------


def a_line(labels):
    """Path quiver on the given integer labels with edges i -> i+1."""
    labels = list(labels)
    edges = [Edge(a, b) for a, b in zip(labels, labels[1:])]
    return Quiver(labels, edges, {i: 1 for i in labels}, name=f"A_line{labels}")


def a_affine(e):
    """Cyclic quiver on Z/eZ with edges i -> i+1; e = 2 uses the doubled-edge
    convention (two single edges 0->1 and 1->0)."""
    if e < 2:
        raise ValueError("affine type A needs e >= 2")
    vertices = list(range(e))
    if e == 2:
        edges = [Edge(0, 1, key=0), Edge(1, 0, key=1)]
    else:
        edges = [Edge(i, (i + 1) % e) for i in vertices]
    return Quiver(vertices, edges, {i: 1 for i in vertices}, name=f"A_affine({e})")


def c_halfline(labels):
    """Type C half line 0 => 1 -> 2 -> ... on the given labels."""
    labels = list(labels)
    if len(labels) < 2:
        raise ValueError("need at least 2 vertices")
    edges = [Edge(labels[0], labels[1], multiplicity=2)]
    edges += [Edge(a, b) for a, b in zip(labels[1:], labels[2:])]
    sym = {i: 1 for i in labels}
    sym[labels[0]] = 2
    return Quiver(labels, edges, sym, name=f"C_halfline{labels}")


def c_affine(e):
    """Affine type C on vertices {0..e}: 0 => 1, i -> i+1 (1 <= i <= e-2), e => e-1."""
    if e < 2:
        raise ValueError("affine type C needs e >= 2")
    vertices = list(range(e + 1))
    edges = [Edge(0, 1, multiplicity=2)]
    edges += [Edge(i, i + 1) for i in range(1, e - 1)]
    edges += [Edge(e, e - 1, multiplicity=2)]
    sym = {i: 1 for i in vertices}
    sym[0] = 2
    sym[e] = 2
    return Quiver(vertices, edges, sym, name=f"C_affine({e})")


def build_quiver(kind, **params):
    if kind == "A_line":
        return a_line(params["labels"])
    if kind == "A_affine":
        return a_affine(params["e"])
    if kind == "C_halfline":
        return c_halfline(params["labels"])
    if kind == "C_affine":
        return c_affine(params["e"])
    if kind == "custom":
        return Quiver(
            params["vertices"],
            [Edge(*spec) if not isinstance(spec, Edge) else spec for spec in params["edges"]],
            params["symmetrizer"],
        )
    raise ValueError(f"unknown quiver kind {kind!r}")


# -- ghost shifts ------------------------------------------------------------


class GhostShift:
    """Nonzero rational shift per edge; default shift 1 on every edge."""

    def __init__(self, quiver, shifts=None, default=Fraction(1)):
        self.quiver = quiver
        default = Fraction(default)
        if default == 0:
            raise ValueError("ghost shifts must be nonzero")
        self.shifts = {}
        for e in quiver.edges:
            v = Fraction(shifts[e]) if shifts and e in shifts else default
            if v == 0:
                raise ValueError("ghost shifts must be nonzero")
            self.shifts[e] = v
        self._check_loadings_exist()

    def _check_loadings_exist(self):
        for i in self.quiver.vertices:
            offs = [off for _, off in self.ghost_offsets(i)]
            if len(offs) != len(set(offs)):
                raise ValueError(
                    f"vertex {i} has two ghosts at the same offset; loadings would not exist"
                )

    def __getitem__(self, edge):
        return self.shifts[edge]

    def ghost_offsets(self, i):
        """(edge, positive offset) pairs for the ghosts of a solid i-string.

        One ghost per outgoing edge with positive shift and per incoming
        edge with negative shift.
        """
        out = []
        for e in self.quiver.edges:
            if e.source == i and self.shifts[e] > 0:
                out.append((e, self.shifts[e]))
            elif e.target == i and self.shifts[e] < 0:
                out.append((e, -self.shifts[e]))
        return out


# -- Q-polynomials -----------------------------------------------------------


class QPolySet:
    """Q_{ij}(u,v) for ordered vertex pairs, as 2-variable Polys (u=y1, v=y2)."""

    def __init__(self, quiver, table=None):
        self.quiver = quiver
        if table is None:
            table = _default_table(quiver)
        self.table = table
        self._check()

    def _check(self):
        for i in self.quiver.vertices:
            for j in self.quiver.vertices:
                q = self.q(i, j)
                if i == j:
                    if not q.is_zero():
                        raise ValueError("Q_ii must be 0")
                    continue
                if q != self.q(j, i).swap(1, 2):
                    raise ValueError(f"Q_{i}{j}(u,v) != Q_{j}{i}(v,u)")
                if not self.quiver.adjacent(i, j):
                    if not (q.is_constant() and q.constant_coefficient() != 0):
                        raise ValueError("Q_ij must be an invertible constant off edges")
                else:
                    di = 2 * self.quiver.symmetrizer[i]
                    dj = 2 * self.quiver.symmetrizer[j]
                    want = -2 * self.quiver.cartan_pairing(i, j)
                    if q.weighted_degree((di, dj)) != want:
                        raise ValueError(
                            f"Q_{i}{j} not homogeneous of degree {want} "
                            f"for weights ({di},{dj})"
                        )

    def q(self, i, j):
        return self.table[(i, j)]

    def q_triple(self, i, j, k):
        """Q_{i,j,k}(u,v,w) = (Q_ij(u,v) - Q_kj(w,v))/(w-u) if i=k else 0."""
        if i != k:
            return Poly.zero(3)
        quv = self.q(i, j).embed(3, [1, 2])  # u,v -> y1,y2
        qwv = self.q(k, j).embed(3, [3, 2])  # u,v -> y3,y2
        num = quv - qwv
        # divide by (y3 - y1) exactly
        return num.divide_exact_by_diff(3, 1)


def _default_table(quiver):
    """Standard choices: u-v for i->j, v-u for i<-j, u-v^2 for i=>j, etc.

    For several edges between i and j (affine A1) the factors multiply.
    """
    u = Poly.var(2, 1)
    v = Poly.var(2, 2)
    table = {}
    for i in quiver.vertices:
        for j in quiver.vertices:
            if i == j:
                table[(i, j)] = Poly.zero(2)
                continue
            q = Poly.one(2)
            found = False
            for e in quiver.edges_between(i, j):
                found = True
                if e.source == i:
                    q = q * (u - v ** e.multiplicity)
                else:
                    q = q * (v - u ** e.multiplicity)
            table[(i, j)] = q if found else Poly.one(2)
    return table


def default_qpolys(quiver):
    return QPolySet(quiver)
