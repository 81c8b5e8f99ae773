"""The weighted KLRW algebra as computable linear algebra.

Elements are integer combinations of canonical basis words
(top loading, permutation, dot exponents, bottom loading); arbitrary
morphisms are brought to this normal form by evaluating on the faithful
polynomial module and solving an exact linear system.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .linalg import solve_in_span
from .loading import Loading, is_valid
from .morphism import Context, Morphism
from .perm import Perm, all_perms
from .poly import Poly, all_monomials, monomials_of_degree


class BudgetError(RuntimeError):
    pass


class BasisWord:
    """1_{top,j} D(w) y^a 1_{bottom,i} with the lex-least reduced word for w."""

    __slots__ = ("top", "w", "word", "dots", "bottom", "_hash")

    def __init__(self, top, w, dots, bottom):
        self.top = top
        self.w = w
        self.word = w.lex_least_reduced_word()
        self.dots = tuple(dots)
        self.bottom = bottom
        self._hash = None

    def key(self):
        return (self.top, self.w, self.dots, self.bottom)

    def __eq__(self, other):
        return isinstance(other, BasisWord) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return (
            f"Word(top={list(self.top.xs)}|{list(self.top.residues)}, w={self.w.images}, "
            f"a={list(self.dots)}, bottom={list(self.bottom.xs)}|{list(self.bottom.residues)})"
        )


class Element:
    """Finitely many (BasisWord, coefficient) pairs; the algebra normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for word, c in (terms.items() if isinstance(terms, dict) else terms):
                if c != 0:
                    self.terms[word] = self.terms.get(word, 0) + c
            self.terms = {w: c for w, c in self.terms.items() if c != 0}

    @staticmethod
    def zero():
        return Element()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        e = Element()
        e.terms = out
        return e

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        e = Element()
        if c != 0:
            e.terms = {w: c * v for w, v in self.terms.items()}
        return e

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        parts = [f"{c}*{w!r}" for w, c in list(self.terms.items())[:4]]
        more = "..." if len(self.terms) > 4 else ""
        return "Element(" + " + ".join(parts) + more + ")"

    def degrees(self, spec):
        return {spec.word_degree(w) for w in self.terms}


class AlgebraSpec:
    """Quiver data plus a positioning set; owns all caches.

    positionings: list of (kappa, rho, xs) Loadings *without* meaningful
    residues (residue sequences range over I^beta).  beta is given as a
    residue multiset, or n for the direct sum over all beta of height n.
    """

    def __init__(self, quiver, gs, qpolys, positionings, n, beta=None):
        self.ctx = Context(quiver, gs, qpolys)
        self.quiver = quiver
        self.gs = gs
        self.qpolys = qpolys
        self.n = n
        self.beta = None if beta is None else tuple(sorted(beta))
        seen = []
        for p in positionings:
            if p.positions_key() not in {q.positions_key() for q in seen}:
                seen.append(p)
        self.positionings = seen
        for p in self.positionings:
            if len(p.xs) != n:
                raise ValueError("positioning with wrong string count")
            bad = not is_valid(p, quiver, gs)
            if bad:
                raise ValueError(f"invalid positioning {p}")
        self._residue_seqs = None
        self._real_cache = {}
        self._norm_cache = {}
        self.eval_budget = 3  # extra degree-raising attempts in normalize

    # -- keys -------------------------------------------------------------

    def residue_sequences(self):
        """All residue sequences allowed on the positionings."""
        if self._residue_seqs is None:
            if self.beta is not None:
                base = self.beta
                seqs = sorted(set(permutations(base)))
            else:
                seqs = []
                verts = self.quiver.vertices
                def rec(prefix):
                    if len(prefix) == self.n:
                        seqs.append(tuple(prefix))
                        return
                    for v in verts:
                        rec(prefix + [v])
                rec([])
            self._residue_seqs = seqs
        return self._residue_seqs

    def loadings(self):
        for p in self.positionings:
            for seq in self.residue_sequences():
                yield p.with_residues(seq)

    def has_positioning(self, loading):
        return loading.positions_key() in {
            p.positions_key() for p in self.positionings
        }

    def restricted(self, positionings):
        sub = AlgebraSpec(
            self.quiver, self.gs, self.qpolys, positionings, self.n, self.beta
        )
        sub._real_cache = self._real_cache
        sub._norm_cache = self._norm_cache
        return sub

    # -- words --------------------------------------------------------------

    def realize(self, word):
        """The fixed morphism realization of a basis word."""
        m = self._real_cache.get(word)
        if m is None:
            m = Morphism.permutation_diagram(
                self.ctx, word.bottom, word.top, word.w
            ).with_dots(word.dots)
            self._real_cache[word] = m
        return m

    def word_degree(self, word):
        return self.realize(word).degree(self.ctx)

    def enumerate_basis(self, bottom, top, dot_bound=None, degree=None):
        """All words with the given endpoints and either a dot bound or an
        exact homogeneous degree."""
        if sorted(bottom.residues) != sorted(top.residues):
            return []
        if (dot_bound is None) == (degree is None):
            raise ValueError("give exactly one of dot_bound, degree")
        words = []
        d = self.quiver.symmetrizer
        for w in all_perms(self.n):
            ok = all(
                top.residues[w(k) - 1] == bottom.residues[k - 1]
                for k in range(1, self.n + 1)
            )
            if not ok:
                continue
            base = BasisWord(top, w, (0,) * self.n, bottom)
            base_deg = self.word_degree(base)
            weights = [2 * d[res] for res in bottom.residues]
            if degree is not None:
                need = degree - base_deg
                if need < 0:
                    continue
                for dots in _weighted_compositions(weights, need):
                    words.append(BasisWord(top, w, dots, bottom))
            else:
                for m in all_monomials(self.n, dot_bound):
                    words.append(BasisWord(top, w, m, bottom))
        return words

    # -- normal form ----------------------------------------------------------

    def normalize_morphism(self, m, expected_degree=None):
        """Expand a morphism in the basis via the faithful module."""
        deg = m.degree(self.ctx) if expected_degree is None else expected_degree
        key = ("nm", m.bottom, m.top, deg, _morphism_signature(m))
        hit = self._norm_cache.get(key)
        if hit is not None:
            return hit
        candidates = self.enumerate_basis(m.bottom, m.top, degree=deg)
        if not candidates:
            for exps in all_monomials(self.n, self.n + 2):
                out = m.apply_to_poly(self.ctx, Poly.monomial(self.n, exps))
                if not out.is_zero():
                    raise ArithmeticError(
                        "morphism evaluates nonzero but no basis word matches its degree"
                    )
            out = Element.zero()
            self._norm_cache[key] = out
            return out
        max_dots = max((sum(w.dots) for w in candidates), default=0)
        m0 = self.n + max_dots // 2 + 2
        for attempt in range(self.eval_budget):
            big = m0 * (2 ** attempt)
            coeffs = self._solve(m, candidates, big)
            if coeffs is not None and self._verify(m, candidates, coeffs, big):
                out = Element(list(zip(candidates, coeffs)))
                for w, c in out.terms.items():
                    frac = Fraction(c)
                    if frac.denominator != 1:
                        raise ArithmeticError(
                            f"non-integral basis coefficient {c} for {w}"
                        )
                out.terms = {w: int(Fraction(c)) for w, c in out.terms.items()}
                self._norm_cache[key] = out
                return out
        raise BudgetError("normalize failed within the evaluation budget")

    def _columns(self, candidates, test_exps):
        cols = []
        for word in candidates:
            mor = self.realize(word)
            col = {}
            for t, exps in enumerate(test_exps):
                out = mor.apply_to_poly(self.ctx, Poly.monomial(self.n, exps))
                for oe, c in out.terms.items():
                    col[(t, oe)] = c
            cols.append(col)
        return cols

    def _target(self, m, test_exps):
        tgt = {}
        for t, exps in enumerate(test_exps):
            out = m.apply_to_poly(self.ctx, Poly.monomial(self.n, exps))
            for oe, c in out.terms.items():
                tgt[(t, oe)] = c
        return tgt

    def _solve(self, m, candidates, max_deg):
        test_exps = all_monomials(self.n, max_deg)
        cols = self._columns(candidates, test_exps)
        tgt = self._target(m, test_exps)
        return solve_in_span(cols, tgt)

    def _verify(self, m, candidates, coeffs, max_deg):
        for exps in monomials_of_degree(self.n, max_deg + 1) + monomials_of_degree(
            self.n, max_deg + 2
        ):
            f = Poly.monomial(self.n, exps)
            lhs = m.apply_to_poly(self.ctx, f)
            rhs = Poly.zero(self.n)
            for word, c in zip(candidates, coeffs):
                if c:
                    rhs = rhs + self.realize(word).apply_to_poly(self.ctx, f) * c
            if lhs != rhs:
                return False
        return True

    def normalize(self, thing):
        """Normalize a Morphism, an Element, or a (coeff, Morphism) list."""
        if isinstance(thing, Morphism):
            return self.normalize_morphism(thing)
        if isinstance(thing, Element):
            return thing
        out = Element.zero()
        for c, m in thing:
            out = out + self.normalize_morphism(m).scaled(c)
        return out

    # -- algebra operations -----------------------------------------------------

    def word_element(self, word):
        return Element([(word, 1)])

    def idempotent(self, loading):
        w = BasisWord(loading, Perm.identity(self.n), (0,) * self.n, loading)
        return Element([(w, 1)])

    def identity_element(self):
        out = Element.zero()
        for loading in self.loadings():
            out = out + self.idempotent(loading)
        return out

    def multiply(self, a, b):
        """Product of elements: concatenate realizations, renormalize."""
        out = Element.zero()
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                if wa.bottom != wb.top:
                    continue
                prod = self._word_product(wa, wb)
                out = out + prod.scaled(ca * cb)
        return out

    def _word_product(self, wa, wb):
        key = ("wp", wa, wb)
        hit = self._norm_cache.get(key)
        if hit is None:
            m = self.realize(wa).compose(self.realize(wb))
            hit = self.normalize_morphism(m)
            self._norm_cache[key] = hit
        return hit

    def equals(self, a, b):
        return (a - b).is_zero()

    def star_elt(self, a):
        out = Element.zero()
        for w, c in a.terms.items():
            m = self.realize(w).star()
            out = out + self.normalize_morphism(m).scaled(c)
        return out

    def element_eval(self, a, poly_key, f):
        """Evaluate an element on f*1_{poly_key}: PolyVector output."""
        from .morphism import PolyVector

        out = PolyVector()
        for w, c in a.terms.items():
            if w.bottom != poly_key:
                continue
            out.add(w.top, self.realize(w).apply_to_poly(self.ctx, f) * c)
        return out

    # -- generators ---------------------------------------------------------------

    def dot_generator(self, loading, r):
        return self.normalize_morphism(Morphism.dot(loading, r))

    def crossing_generator(self, loading, r):
        """Single crossing of slots r, r+1 (possibly changing the residue key)."""
        w = Perm.s(self.n, r)
        top = loading.with_residues(w.act_on_tuple(loading.residues))
        m = Morphism.permutation_diagram(self.ctx, loading, top, w)
        return self.normalize_morphism(m)

    def generators(self, include_dots=True, include_crossings=True):
        for loading in self.loadings():
            if include_dots:
                for r in range(1, self.n + 1):
                    yield self.dot_generator(loading, r)
            if include_crossings:
                for r in range(1, self.n):
                    yield self.crossing_generator(loading, r)

    # -- center ----------------------------------------------------------------

    def central_element(self, blocks_polys):
        """f*1 for a residue-blocked symmetric family.

        blocks_polys: dict residue -> Poly in k variables (k = multiplicity
        of the residue), symmetric; the element applies each block to the
        matching strings of every key, in position order.
        """
        out = Element.zero()
        for loading in self.loadings():
            exps_poly = Poly.one(self.n)
            ok = True
            for res, f in blocks_polys.items():
                slots = [
                    k for k in range(1, self.n + 1) if loading.residues[k - 1] == res
                ]
                if f.n != len(slots):
                    ok = False
                    break
                if not f.is_symmetric_in_blocks([list(range(1, f.n + 1))]):
                    raise ValueError("block polynomial is not symmetric")
                exps_poly = exps_poly * f.embed(self.n, slots)
            if not ok:
                continue
            for exps, c in exps_poly.terms.items():
                w = BasisWord(loading, Perm.identity(self.n), exps, loading)
                out = out + Element([(w, c)])
        return out

    def is_central(self, a, sample_loadings=None):
        loadings = sample_loadings or list(self.loadings())
        for loading in loadings:
            for r in range(1, self.n + 1):
                g = self.dot_generator(loading, r)
                if not self.equals(self.multiply(a, g), self.multiply(g, a)):
                    return False
            for r in range(1, self.n):
                g = self.crossing_generator(loading, r)
                if not self.equals(self.multiply(a, g), self.multiply(g, a)):
                    return False
        return True


def _morphism_signature(m):
    """Hashable identity of a morphism path for the normalize cache."""
    from .morphism import DotStep

    sig = []
    for step in m.steps:
        if isinstance(step, DotStep):
            sig.append(("d", step.slot))
        else:
            sig.append(("s", step.bottom.key(), step.top.key(), step.assign.images))
    return tuple(sig)


def _weighted_compositions(weights, total):
    """All nonnegative integer tuples a with sum(w_k a_k) = total."""
    out = []

    def rec(idx, remaining, prefix):
        if idx == len(weights):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        w = weights[idx]
        k = 0
        while k * w <= remaining:
            rec(idx + 1, remaining - k * w, prefix + [k])
            k += 1

    rec(0, total, [])
    return out


# -- side-by-side embedding ------------------------------------------------------


def embed_side_by_side(spec_a, spec_b, z, elt_a, elt_b):
    """The image of elt_a (x) elt_b under the juxtaposition embedding with
    the right block translated by z."""
    z = Fraction(z)
    if spec_a.quiver is not spec_b.quiver:
        raise ValueError("embedding needs a common quiver")
    hi = _spread_max(spec_a)
    lo = _spread_min(spec_b) + z
    if not lo > hi:
        raise ValueError("shift too small: blocks would interleave")
    positionings = []
    for pa in spec_a.positionings:
        for pb in spec_b.positionings:
            positionings.append(_juxtapose(pa, pb, z))
    combined = AlgebraSpec(
        spec_a.quiver,
        spec_a.gs,
        spec_a.qpolys,
        positionings,
        spec_a.n + spec_b.n,
        None,
    )
    out = Element.zero()
    na = spec_a.n
    for wa, ca in elt_a.terms.items():
        for wb, cb in elt_b.terms.items():
            bottom = _juxtapose_loadings(wa.bottom, wb.bottom, z)
            top = _juxtapose_loadings(wa.top, wb.top, z)
            images = list(wa.w.images) + [v + na for v in wb.w.images]
            dots = tuple(wa.dots) + tuple(wb.dots)
            word = BasisWord(top, Perm(images), dots, bottom)
            out = out + Element([(word, ca * cb)])
    return combined, out


def _spread_max(spec):
    out = None
    for p in spec.positionings:
        vals = list(p.xs) + list(p.kappa)
        for x in p.xs:
            vals.append(x + _max_offset(spec))
        m = max(vals) if vals else Fraction(0)
        out = m if out is None else max(out, m)
    return out


def _spread_min(spec):
    out = None
    for p in spec.positionings:
        vals = list(p.xs) + list(p.kappa)
        m = min(vals) if vals else Fraction(0)
        out = m if out is None else min(out, m)
    return out


def _max_offset(spec):
    mx = Fraction(0)
    for i in spec.quiver.vertices:
        for _, off in spec.gs.ghost_offsets(i):
            mx = max(mx, off)
    return mx


def _juxtapose(pa, pb, z):
    return Loading(
        list(pa.kappa) + [k + z for k in pb.kappa],
        list(pa.rho) + list(pb.rho),
        list(pa.xs) + [x + z for x in pb.xs],
        list(pa.residues) + list(pb.residues),
    )


def _juxtapose_loadings(la, lb, z):
    return _juxtapose(la, lb, z)


def klr_truncation(spec, omega):
    """The idempotent subalgebra with bottom = top = omega (positions)."""
    keep = [p for p in spec.positionings if p.positions_key() == omega.positions_key()]
    if not keep:
        raise ValueError("unknown loading")
    return spec.restricted(keep)
