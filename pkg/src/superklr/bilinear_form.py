"""The bilinear form on the free half-quantum-group, two independent ways.

``form_recursive`` peels the leftmost letter of the second argument through
the coproduct:

    (x, theta_j * rest) = sum over positions k of x with x_k = j of
        [ prod_{l<k} (-1)^(p(x_k)p(x_l)) q^(-x_k • x_l) ]
        * (theta_j, theta_j) * (x with position k removed, rest)

with (theta_i, theta_i) = 1/(1 - q^(i•i)) for non-isotropic i and = 1 at the
isotropic index, and (1, 1) = 1.  Words of different weights pair to zero.

``form_graphical`` sums over label-preserving bijections between the letter
positions of the two words.  A bijection's crossings are its inversions; a
crossing of strands labeled (i, j) contributes bidegree (-[i=j=m], -i•j), and
bidegrees add.  Each bijection contributes
(-1)^deg1 q^deg2 * prod over non-isotropic letters of 1/(1 - q^(i•i)).

The two implementations share no code and serve as oracles for each other.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .free_super import FreeElement
from .root_data import RootData, Word
from .scalars import LaurentPoly, RationalQ, rank_over_Qq

R_ZERO = RationalQ.zero()
R_ONE = RationalQ.one()


def generator_pairing(rd: RootData, i: int) -> RationalQ:
    """(theta_i, theta_i): 1/(1-q^(i•i)), or 1 at the isotropic index."""
    if i == rd.m:
        return R_ONE
    b = rd.bullet(i, i)
    return RationalQ(LaurentPoly.one(),
                     LaurentPoly.one() - LaurentPoly.q_power(b))


@lru_cache(maxsize=None)
def _form_words(m: int, n: int, a: Word, b: Word) -> RationalQ:
    rd = RootData.__new__(RootData)  # avoid re-validating on the hot path
    rd.m, rd.n = m, n
    rd.indices = tuple(range(1, m + n))
    if not a and not b:
        return R_ONE
    if len(a) != len(b):
        return R_ZERO
    if sorted(a) != sorted(b):
        return R_ZERO
    j = b[0]
    total = R_ZERO
    pj = rd.parity(j)
    gj = generator_pairing(rd, j)
    for k, letter in enumerate(a):
        if letter != j:
            continue
        qexp = 0
        sign = 0
        for l in range(k):
            qexp -= rd.bullet(letter, a[l])
            sign += pj * rd.parity(a[l])
        sub = _form_words(m, n, a[:k] + a[k + 1:], b[1:])
        if sub.is_zero():
            continue
        piece = sub * gj
        piece = piece.mul_laurent(LaurentPoly.q_power(qexp))
        if sign % 2:
            piece = -piece
        total = total + piece
    return total


def form_recursive(rd: RootData, a: FreeElement | Word, b: FreeElement | Word) -> RationalQ:
    """The bilinear form, by the coproduct recursion (memoized on word pairs)."""
    if not isinstance(a, FreeElement):
        a = FreeElement.word(a)
    if not isinstance(b, FreeElement):
        b = FreeElement.word(b)
    total = R_ZERO
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            v = _form_words(rd.m, rd.n, wa, wb)
            if not v.is_zero():
                total = total + v * ca * cb
    return total


def form_graphical(rd: RootData, a: Word, b: Word) -> RationalQ:
    """The bilinear form, by the minimal-diagram (bijection) sum."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b) or sorted(a) != sorted(b):
        return R_ZERO
    m = rd.m
    # positions of each label in b, to build label-preserving bijections
    slots: dict[int, list[int]] = {}
    for pos, letter in enumerate(b):
        slots.setdefault(letter, []).append(pos)
    labels = sorted(slots)
    weight_factor = R_ONE
    for letter in a:
        if letter != m:
            weight_factor = weight_factor * generator_pairing(rd, letter)

    total_num = LaurentPoly.zero()
    for assignment in _label_bijections(labels, slots):
        # pi maps a-position -> b-position, respecting labels
        pi = [0] * len(a)
        counters = {letter: 0 for letter in labels}
        for pos, letter in enumerate(a):
            pi[pos] = assignment[letter][counters[letter]]
            counters[letter] += 1
        deg1 = 0
        deg2 = 0
        for k in range(len(a)):
            for l in range(k + 1, len(a)):
                if pi[k] > pi[l]:
                    if a[k] == m and a[l] == m:
                        deg1 -= 1
                    deg2 -= rd.bullet(a[k], a[l])
        c = 1 if deg1 % 2 == 0 else -1
        total_num = total_num + LaurentPoly.q_power(deg2, c)
    return RationalQ(total_num) * weight_factor


def _label_bijections(labels, slots):
    """Iterate over {label: ordering of that label's b-positions} choices."""
    if not labels:
        yield {}
        return
    first, rest = labels[0], labels[1:]
    for perm in permutations(slots[first]):
        for tail in _label_bijections(rest, slots):
            out = {first: list(perm)}
            out.update(tail)
            yield out


def gram_matrix(rd: RootData, words: list[Word]) -> list[list[RationalQ]]:
    """Gram matrix of the form on a list of words."""
    return [[form_recursive(rd, a, b) for b in words] for a in words]


def dim_fnu(rd: RootData, weight: dict[int, int]) -> int:
    """Dimension of the weight component of the quotient by the form radical."""
    words = rd.words_of_weight(weight)
    if not words:
        return 1 if not any(weight.values()) else 0
    return rank_over_Qq(gram_matrix(rd, words))


def radical_contains(rd: RootData, x: FreeElement) -> bool:
    """Whether (x, y) = 0 for all words y (checked weight component by weight)."""
    by_weight: dict[tuple, FreeElement] = {}
    for w, c in x.terms.items():
        key = tuple(sorted(rd.weight_of_word(w).items()))
        by_weight[key] = by_weight.get(key, FreeElement.zero()) + FreeElement.word(w, c)
    for key, component in by_weight.items():
        weight = dict(key)
        for y in rd.words_of_weight(weight):
            if not form_recursive(rd, component, y).is_zero():
                return False
    return True
