"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials live in variables y1..yn with a dense exponent-tuple
representation: a dict mapping exponent tuples (length n) to nonzero
coefficients (int or Fraction).  Everything is immutable from the
outside; all operations return new Poly objects.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce


class DimensionError(ValueError):
    pass


class Poly:
    """Polynomial in y1..yn with exact rational coefficients.

    terms: dict exponent-tuple -> coefficient, no zero coefficients stored.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=None):
        self.n = n
        if terms is None:
            terms = {}
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n):
        return Poly(n, {})

    @staticmethod
    def const(n, c):
        if c == 0:
            return Poly(n, {})
        return Poly(n, {(0,) * n: c})

    @staticmethod
    def one(n):
        return Poly.const(n, 1)

    @staticmethod
    def var(n, r):
        """y_r, 1-based."""
        if not 1 <= r <= n:
            raise DimensionError(f"variable index {r} out of range 1..{n}")
        exp = [0] * n
        exp[r - 1] = 1
        return Poly(n, {tuple(exp): 1})

    @staticmethod
    def monomial(n, exps, coeff=1):
        if len(exps) != n:
            raise DimensionError("exponent tuple has wrong length")
        if coeff == 0:
            return Poly(n, {})
        return Poly(n, {tuple(exps): coeff})

    # -- basic predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.n, 0)

    def total_degree(self):
        """Max total degree, -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def weighted_degree(self, weights):
        """Max degree with per-variable weights; None if inhomogeneous, -1 if zero."""
        if not self.terms:
            return -1
        degs = {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop()

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"mixed variable counts {self.n} != {other.n}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Poly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly(self.n, {})
            return Poly(self.n, {exp: c * other for exp, c in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, 0) + c1 * c2
                if s == 0:
                    terms.pop(exp, None)
                else:
                    terms[exp] = s
        return Poly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        return self.terms == Poly.const(self.n, other).terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # -- structure maps -----------------------------------------------------

    def permute(self, w):
        """Apply y_r -> y_{w(r)}; w is a Perm, dict or sequence on 1..n."""
        if isinstance(w, dict):
            images = [w[r] - 1 for r in range(1, self.n + 1)]
        elif hasattr(w, "images"):
            images = [w.images[r - 1] - 1 for r in range(1, self.n + 1)]
        else:
            images = [w[r - 1] - 1 for r in range(1, self.n + 1)]
        if sorted(images) != list(range(self.n)):
            raise ValueError("not a bijection")
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * self.n
            for pos, e in enumerate(exp):
                new[images[pos]] = e
            terms[tuple(new)] = c
        return Poly(self.n, terms)

    def swap(self, r, s):
        """Transposition y_r <-> y_s (1-based)."""
        if r == s:
            return self
        terms = {}
        for exp, c in self.terms.items():
            new = list(exp)
            new[r - 1], new[s - 1] = new[s - 1], new[r - 1]
            terms[tuple(new)] = c
        return Poly(self.n, terms)

    def demazure(self, r, s):
        """((r,s) - 1)/(y_s - y_r) applied to self; the division is exact."""
        if r == s:
            raise ValueError("demazure needs r != s")
        num = self.swap(r, s) - self
        return num.divide_exact_by_diff(s, r)

    def divide_exact_by_diff(self, s, r):
        """Divide by (y_s - y_r) exactly, raising if a remainder appears.

        Views the polynomial in y_s with coefficients in the other
        variables and performs synthetic division; a nonzero remainder
        indicates an internal bug because the callers only divide
        antisymmetrized numerators.
        """
        if self.is_zero():
            return self
        n = self.n
        si, ri = s - 1, r - 1
        # group by exponents away from y_s and y_r: view as a polynomial in
        # y_s with coefficients in R[y_r] and divide synthetically
        groups = {}
        for exp, c in self.terms.items():
            key = list(exp)
            key[si] = 0
            key[ri] = 0
            coeffs = groups.setdefault(tuple(key), {})
            coeffs.setdefault(exp[si], {})[exp[ri]] = c
        out = {}
        for key, coeffs in groups.items():
            deg = max(coeffs)
            carry = {}  # y_r-exponent -> coefficient: w * b_{k+1}
            for k in range(deg, -1, -1):
                cur = dict(carry)
                for rexp, c in coeffs.get(k, {}).items():
                    v = cur.get(rexp, 0) + c
                    if v == 0:
                        cur.pop(rexp, None)
                    else:
                        cur[rexp] = v
                if k == 0:
                    if cur:
                        raise ArithmeticError("inexact division in demazure")
                    break
                # quotient coefficient of y_s^{k-1} is cur (a poly in y_r)
                for rexp, cc in cur.items():
                    exp = list(key)
                    exp[si] = k - 1
                    exp[ri] = rexp
                    t = tuple(exp)
                    ss = out.get(t, 0) + cc
                    if ss == 0:
                        out.pop(t, None)
                    else:
                        out[t] = ss
                # carry = cur * y_r
                carry = {rexp + 1: cc for rexp, cc in cur.items()}
        return Poly(n, out)

    def substitute(self, values):
        """Substitute values[r] (Fraction/int) for y_r, r=1..n; returns a scalar."""
        total = 0
        for exp, c in self.terms.items():
            v = c
            for pos, e in enumerate(exp):
                if e:
                    v *= values[pos] ** e
            total += v
        return total

    def embed(self, n_new, positions):
        """Relabel into n_new variables; variable r goes to positions[r-1] (1-based)."""
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * n_new
            for pos, e in enumerate(exp):
                if e:
                    new[positions[pos] - 1] = e
            terms[tuple(new)] = c
        return Poly(n_new, terms)

    def map_coefficients(self, f):
        terms = {}
        for exp, c in self.terms.items():
            v = f(c)
            if v != 0:
                terms[exp] = v
        return Poly(self.n, terms)

    # -- symmetry -----------------------------------------------------------

    def is_symmetric_in_blocks(self, blocks):
        """True iff invariant under all transpositions within each block.

        blocks: iterable of iterables partitioning 1..n.
        """
        seen = set()
        for block in blocks:
            block = list(block)
            seen.update(block)
            for a, b in zip(block, block[1:]):
                if self.swap(a, b) != self:
                    return False
        if seen != set(range(1, self.n + 1)):
            raise ValueError("blocks do not partition 1..n")
        return True

    # -- text form ----------------------------------------------------------

    def __repr__(self):
        return f"Poly({self.text()})"

    def text(self):
        """Canonical text form, e.g. '3*y1^2*y3 - y2'; terms sorted by exponent."""
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"y{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = "-" + mono
            else:
                piece = f"{c}*{mono}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    @staticmethod
    def parse(n, text):
        """Inverse of text(); accepts '3*y1^2*y3 - y2', '0', fractions like 1/2."""
        text = text.strip()
        if text == "0":
            return Poly.zero(n)
        out = Poly.zero(n)
        term = ""
        depth = 0
        pieces = []
        prev = ""
        for ch in text:
            if ch == "-" and prev.strip() and prev.strip()[-1] not in "+-*/^(":
                pieces.append(term)
                term = "-"
            elif ch == "+":
                pieces.append(term)
                term = ""
            else:
                term += ch
            prev += ch
        pieces.append(term)
        for piece in pieces:
            piece = piece.strip()
            if not piece:
                continue
            coeff = Fraction(1)
            exps = [0] * n
            if piece.startswith("-"):
                coeff = -coeff
                piece = piece[1:].strip()
            for factor in piece.split("*"):
                factor = factor.strip()
                if not factor:
                    continue
                if factor.startswith("y"):
                    if "^" in factor:
                        v, e = factor[1:].split("^")
                        exps[int(v) - 1] += int(e)
                    else:
                        exps[int(factor[1:]) - 1] += 1
                else:
                    coeff *= Fraction(factor)
            if coeff.denominator == 1:
                coeff = int(coeff)
            out = out + Poly.monomial(n, exps, coeff)
        return out


def all_monomials(n, max_total_degree):
    """All exponent tuples of length n with total degree <= bound."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], max_total_degree, n)
    return out


def monomials_of_degree(n, d):
    return [m for m in all_monomials(n, d) if sum(m) == d]


def prod(polys, n=None):
    if not polys:
        if n is None:
            raise ValueError("empty product needs explicit n")
        return Poly.one(n)
    return reduce(lambda a, b: a * b, polys)
