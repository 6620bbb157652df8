"""Root datum of the general linear superalgebra of block sizes (m, n).

Simple roots are indexed by I = {1, ..., m+n-1}.  Index m is the isotropic
(fermionic) one; indices below m form the first bosonic block, indices above m
the second.  The symmetric pairing on simple roots ("bullet") is:

    i • i = 2   for i < m,      i • i = -2  for i > m,      m • m = 0,
    i • j = -1  for |i-j| = 1 with min(i,j) < m,
    i • j = +1  for |i-j| = 1 with min(i,j) >= m,
    i • j = 0   for |i-j| > 1.

Positive roots are the interval sums alpha_i + ... + alpha_j, encoded as pairs
(i, j) with i <= j, ordered lexicographically.  A root is odd (fermionic)
exactly when its interval contains m; odd roots may appear at most once in a
monomial exponent vector.

Weights are dicts {index: multiplicity >= 1}; a word (sequence of indices)
has the obvious weight.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Mapping

Word = tuple[int, ...]
Root = tuple[int, int]
Weight = dict[int, int]


class RootData:
    """Bookkeeping for the (m, n) root datum: pairing, parity, roots, words."""

    def __init__(self, m: int, n: int = 1):
        if m < 1 or n < 1:
            raise ValueError("block sizes must be positive")
        self.m = m
        self.n = n
        self.indices = tuple(range(1, m + n))

    # -- pairing and parity -----------------------------------------------

    def bullet(self, i: int, j: int) -> int:
        self._check_index(i)
        self._check_index(j)
        if i == j:
            if i < self.m:
                return 2
            if i > self.m:
                return -2
            return 0
        if abs(i - j) == 1:
            return -1 if min(i, j) < self.m else 1
        return 0

    def parity(self, i: int) -> int:
        self._check_index(i)
        return 1 if i == self.m else 0

    def word_parity(self, word: Iterable[int]) -> int:
        return sum(self.parity(i) for i in word) % 2

    def word_bullet(self, u: Iterable[int], v: Iterable[int]) -> int:
        """Pairing of the weights of two words."""
        u = tuple(u)
        total = 0
        for j in v:
            for i in u:
                total += self.bullet(i, j)
        return total

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.m + self.n - 1:
            raise ValueError(f"index {i} outside 1..{self.m + self.n - 1}")

    # -- weights and words ---------------------------------------------------

    def weight_of_word(self, word: Iterable[int]) -> Weight:
        wt: Weight = {}
        for i in word:
            self._check_index(i)
            wt[i] = wt.get(i, 0) + 1
        return wt

    def words_of_weight(self, weight: Mapping[int, int]) -> list[Word]:
        """All sequences with the given content, sorted lexicographically."""
        letters = []
        for i in sorted(weight):
            self._check_index(i)
            if weight[i] < 0:
                raise ValueError("negative multiplicity")
            letters += [i] * weight[i]
        return sorted(set(permutations(letters)))

    def weights_of_size(self, size: int) -> list[Weight]:
        """All weights with |nu| equal to ``size``."""
        out: list[Weight] = []

        def rec(pos: int, remaining: int, acc: dict[int, int]) -> None:
            if pos > self.m + self.n - 1:
                if remaining == 0:
                    out.append(dict(acc))
                return
            for k in range(remaining + 1):
                if k:
                    acc[pos] = k
                rec(pos + 1, remaining - k, acc)
                acc.pop(pos, None)

        rec(1, size, {})
        return out

    # -- positive roots -----------------------------------------------------------

    def roots(self) -> list[Root]:
        top = self.m + self.n - 1
        return [(i, j) for i in range(1, top + 1) for j in range(i, top + 1)]

    def root_weight(self, root: Root) -> Weight:
        i, j = root
        return {k: 1 for k in range(i, j + 1)}

    def root_parity(self, root: Root) -> int:
        i, j = root
        return 1 if i <= self.m <= j else 0

    def root_bullet(self, a: Root, b: Root) -> int:
        return self.word_bullet(range(a[0], a[1] + 1), range(b[0], b[1] + 1))

    def root_word(self, root: Root) -> Word:
        return tuple(range(root[0], root[1] + 1))

    # -- exponent vectors of restricted monomials ------------------------------------

    def pbw_monomials(self, weight: Mapping[int, int]) -> list[tuple[tuple[Root, int], ...]]:
        """All root-exponent assignments with the given total weight.

        Odd roots are capped at multiplicity 1.  Each monomial is returned as a
        tuple of (root, multiplicity) pairs in increasing root order.
        """
        roots = self.roots()
        target = tuple(weight.get(i, 0) for i in self.indices)
        out: list[tuple[tuple[Root, int], ...]] = []

        def rec(idx: int, left: tuple[int, ...], acc: tuple[tuple[Root, int], ...]) -> None:
            if not any(left):
                out.append(acc)
                return
            if idx >= len(roots):
                return
            i, j = roots[idx]
            span = range(i - 1, j)  # 0-based positions of the simple constituents
            cap = min(left[k] for k in span)
            if self.root_parity((i, j)):
                cap = min(cap, 1)
            for mult in range(cap + 1):
                if mult == 0:
                    rec(idx + 1, left, acc)
                else:
                    nxt = list(left)
                    for k in span:
                        nxt[k] -= mult
                    rec(idx + 1, tuple(nxt), acc + (((i, j), mult),))

        rec(0, target, ())
        return sorted(out)

    def __repr__(self) -> str:
        return f"RootData(m={self.m}, n={self.n})"


@lru_cache(maxsize=None)
def root_data(m: int, n: int = 1) -> RootData:
    return RootData(m, n)
