"""Shared oracles and fuzz generators for the test suite.

The relation tables here are written independently of the rewriting engine:
each defining relation of the diagram algebra is spelled out as raw generator
tokens, so the tests compare the engine against a literal transcription
rather than against its own internals.
"""

import random
from fractions import Fraction

from superklr.klr_core import KlrElement, RawWord, rewrite
from superklr.root_data import RootData
from superklr.scalars import BiRational, RationalQ

Token = tuple[str, int]
Tokens = tuple[Token, ...]
# one side of a relation: list of (integer coefficient, token word)
Combo = list[tuple[int, Tokens]]


def P(k: int) -> Token:
    return ("psi", k)


def Y(r: int) -> Token:
    return ("y", r)


# -- exact Laurent series windows ---------------------------------------------------


def laurent_series_window(rq: RationalQ, lo: int, hi: int) -> dict[int, Fraction]:
    """Nonzero coefficients of the Laurent expansion of ``rq`` in [lo, hi].

    The canonical denominator has minimal exponent 0 and nonzero constant
    term, so the quotient expands as a Laurent series bounded below.
    """
    if rq.is_zero():
        return {}
    num, den = rq.num, rq.den
    d0 = Fraction(den.coeff(0))
    start = num.min_exp()
    series: dict[int, Fraction] = {}
    for k in range(start, hi + 1):
        acc = Fraction(num.coeff(k))
        for e, c in den.terms.items():
            if e >= 1 and (k - e) in series:
                acc -= c * series[k - e]
        val = acc / d0
        if val:
            series[k] = val
    return {e: c for e, c in series.items() if lo <= e <= hi and c}


def birational_series_window(br: BiRational, lo: int, hi: int
                             ) -> dict[tuple[int, int], Fraction]:
    """Nonzero (t-exponent, q-exponent) series coefficients, q-window [lo, hi]."""
    out: dict[tuple[int, int], Fraction] = {}
    for te, rq in br.terms.items():
        for qe, c in laurent_series_window(rq, lo, hi).items():
            out[(te, qe)] = c
    return out


# -- literal relation tables --------------------------------------------------------


def relation_instances(rd: RootData, src: tuple[int, ...]):
    """Yield (name, lhs tokens, rhs combo) for every defining relation
    applicable at the sequence ``src``.

    The nil-Hecke corrections at equal labels carry an identity term only at
    bosonic labels; at the fermionic label both sides collapse to zero
    because dots vanish there (see the engine's relation table).
    """
    d = len(src)
    m = rd.m

    for r in range(1, d + 1):
        if src[r - 1] == m:
            yield ("dot-kills-fermion", (Y(r),), [])

    for r in range(1, d + 1):
        for s in range(r + 1, d + 1):
            yield ("dots-commute", (Y(r), Y(s)), [(1, (Y(s), Y(r)))])

    for k in range(1, d):
        a, b = src[k - 1], src[k]

        for l in range(k + 2, d):
            allm = a == m and b == m and src[l - 1] == m and src[l] == m
            yield ("distant-crossings",
                   (P(k), P(l)),
                   [(-1 if allm else 1, (P(l), P(k)))])

        for l in range(1, d + 1):
            if l in (k, k + 1):
                continue
            yield ("far-dot-slides", (P(k), Y(l)), [(1, (Y(l), P(k)))])

        if a != b:
            yield ("dot-through-crossing-up", (P(k), Y(k)), [(1, (Y(k + 1), P(k)))])
            yield ("dot-through-crossing-down", (Y(k), P(k)), [(1, (P(k), Y(k + 1)))])
        else:
            corr: Combo = [(1, ())] if a != m else []
            yield ("nil-hecke-down", (Y(k), P(k)), [(1, (P(k), Y(k + 1)))] + corr)
            yield ("nil-hecke-up", (P(k), Y(k)), [(1, (Y(k + 1), P(k)))] + corr)

        square = (P(k), P(k))
        if a == b:
            yield ("square-equal", square, [])
        elif a == m and abs(b - m) == 1:
            yield ("square-fermion-first", square, [(1, (Y(k + 1),))])
        elif b == m and abs(a - m) == 1:
            yield ("square-fermion-second", square, [(1, (Y(k),))])
        elif abs(rd.bullet(a, b)) == 1:
            yield ("square-adjacent", square, [(1, (Y(k),)), (1, (Y(k + 1),))])
        else:
            yield ("square-distant", square, [(1, ())])

    for k in range(1, d - 1):
        a, b, c = src[k - 1], src[k], src[k + 1]
        lhs = (P(k), P(k + 1), P(k))
        rhs: Combo = [(1, (P(k + 1), P(k), P(k + 1)))]
        if a == c and abs(rd.bullet(a, b)) == 1 and a != m:
            rhs.append((1, ()))
        yield ("braid", lhs, rhs)


def combo_element(rd: RootData, combo: Combo, tokens_before: Tokens,
                  tokens_after: Tokens, src: tuple[int, ...]) -> KlrElement:
    """Rewrite sum of coeff * (before ++ word ++ after) applied to e(src)."""
    acc = None
    for coeff, word in combo:
        piece = rewrite(rd, RawWord(tokens_before + word + tokens_after, src))
        piece = piece.scale(coeff)
        acc = piece if acc is None else acc + piece
    return acc if acc is not None else KlrElement.zero(rd)


# -- random generators --------------------------------------------------------------


def random_tokens_below(rng: random.Random, top: tuple[int, ...], steps: int
                        ) -> tuple[Tokens, tuple[int, ...]]:
    """Random token word whose crossing action carries its source up to ``top``.

    Returns (tokens, source sequence); the tokens read top-to-bottom.
    """
    seq = list(top)
    toks: list[Token] = []
    d = len(top)
    for _ in range(steps):
        if d > 1 and rng.random() < 0.6:
            c = rng.randrange(1, d)
            toks.append(P(c))
            seq[c - 1], seq[c] = seq[c], seq[c - 1]
        else:
            toks.append(Y(rng.randrange(1, d + 1)))
    return tuple(toks), tuple(seq)


def random_tokens(rng: random.Random, d: int, steps: int) -> Tokens:
    toks: list[Token] = []
    for _ in range(steps):
        if d > 1 and rng.random() < 0.6:
            toks.append(P(rng.randrange(1, d)))
        else:
            toks.append(Y(rng.randrange(1, d + 1)))
    return tuple(toks)


def random_raw(rng: random.Random, rd: RootData, size: int, steps: int) -> RawWord:
    src = tuple(rng.choice(rd.indices) for _ in range(size))
    return RawWord(random_tokens(rng, size, steps), src)


def framed_relation_ok(rng: random.Random, rd: RootData, src: tuple[int, ...],
                       lhs: Tokens, rhs: Combo, frame_steps: int = 3) -> bool:
    """Check one relation instance inside a random ambient word."""
    below, full_src = random_tokens_below(rng, src, rng.randrange(frame_steps + 1))
    above = random_tokens(rng, len(src), rng.randrange(frame_steps + 1))
    left = rewrite(rd, RawWord(above + lhs + below, full_src))
    right = combo_element(rd, rhs, above, below, full_src)
    return left == right
