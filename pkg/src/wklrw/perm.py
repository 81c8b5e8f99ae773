"""Permutations of {1..n} in one-line notation, with reduced words."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _permutations


class Perm:
    """images[k-1] = w(k); composition (w*v)(k) = w(v(k))."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @staticmethod
    def identity(n):
        return Perm(range(1, n + 1))

    @staticmethod
    def transposition(n, a, b):
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return Perm(images)

    @staticmethod
    def s(n, j):
        """Adjacent transposition (j, j+1)."""
        return Perm.transposition(n, j, j + 1)

    @staticmethod
    def from_word(n, word):
        w = Perm.identity(n)
        for j in word:
            w = w * Perm.s(n, j)
        return w

    @property
    def n(self):
        return len(self.images)

    def __call__(self, k):
        return self.images[k - 1]

    def __mul__(self, other):
        return Perm(tuple(self.images[other.images[k] - 1] for k in range(self.n)))

    def inverse(self):
        inv = [0] * self.n
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Perm(inv)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm{self.images}"

    def is_identity(self):
        return all(v == k for k, v in enumerate(self.images, start=1))

    def length(self):
        """Number of inversions."""
        inv = 0
        im = self.images
        for a in range(self.n):
            for b in range(a + 1, self.n):
                if im[a] > im[b]:
                    inv += 1
        return inv

    def act_on_tuple(self, t):
        """Place permutation: entry at slot k moves to slot w(k)."""
        out = [None] * self.n
        for k in range(1, self.n + 1):
            out[self(k) - 1] = t[k - 1]
        return tuple(out)

    def descents(self):
        return [j for j in range(1, self.n) if self(j) > self(j + 1)]

    def lex_least_reduced_word(self):
        """Lexicographically least reduced expression.

        Greedy: the first letter is the least left descent j (so that
        l(s_j w) = l(w) - 1), then recurse on s_j w.
        """
        word = []
        w = self
        n = self.n
        while not w.is_identity():
            winv = w.inverse()
            j = min(j for j in range(1, n) if winv(j) > winv(j + 1))
            word.append(j)
            w = Perm.s(n, j) * w
        return tuple(word)

    def reduced_word(self):
        """A reduced expression (deterministic)."""
        word = []
        im = list(self.images)
        n = self.n
        # bubble-sort the one-line notation; each adjacent swap records s_j
        changed = True
        while changed:
            changed = False
            for j in range(n - 1):
                if im[j] > im[j + 1]:
                    im[j], im[j + 1] = im[j + 1], im[j]
                    word.append(j + 1)
                    changed = True
        word.reverse()
        return tuple(word)


@lru_cache(maxsize=None)
def all_perms(n):
    return [Perm(p) for p in _permutations(range(1, n + 1))]
