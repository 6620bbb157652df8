"""Polynomial action of the diagram algebra: an independent faithfulness oracle.

Elements act on a direct sum of polynomial rings, one sector per label
sequence, with one variable per bosonic strand.  Dots multiply by the
matching variable, same-label bosonic crossings apply divided differences,
and the remaining crossing cases relabel sectors with the multipliers listed
in ``_act_crossing``.  The implementation covers weights with at most one
fermionic strand; with two or more fermionic strands the crossing action
needs an extra sign convention that this artifact does not pin down, so such
weights are refused rather than guessed.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .klr_core import KlrElement, RawWord, rewrite
from .root_data import RootData, Word

Exponents = tuple[int, ...]
Poly = dict[Exponents, int]


class UnsupportedRegimeError(ValueError):
    """Raised for weights with two or more fermionic strands."""


# -- integer polynomials in t variables ----------------------------------------------


def _p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _p_scale(a: Poly, c: int) -> Poly:
    if c == 0:
        return {}
    return {e: c * v for e, v in a.items()}


def _p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _p_mul_var(a: Poly, k: int, power: int = 1) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        lifted = list(e)
        lifted[k] += power
        out[tuple(lifted)] = c
    return out


def _p_swap(a: Poly, k: int) -> Poly:
    """Exchange variables k and k+1 (0-based)."""
    out: Poly = {}
    for e, c in a.items():
        swapped = list(e)
        swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
        key = tuple(swapped)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _p_divided_difference(a: Poly, k: int) -> Poly:
    """(g - swap_k g) / (x_k - x_{k+1}), exact on integer polynomials."""
    out: Poly = {}
    for e, c in a.items():
        al, be = e[k], e[k + 1]
        if al == be:
            continue
        lo, hi, sign = (be, al, 1) if al > be else (al, be, -1)
        for r in range(lo, hi):
            lifted = list(e)
            lifted[k], lifted[k + 1] = r, al + be - 1 - r
            key = tuple(lifted)
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


# -- sectors and elements -------------------------------------------------------------


class PolElement:
    """Finitely supported map from label sequences to integer polynomials."""

    __slots__ = ("t", "terms")

    def __init__(self, t: int, terms: Mapping[Word, Poly] | None = None):
        self.t = t
        clean: dict[Word, Poly] = {}
        if terms:
            for seq, poly in terms.items():
                if poly:
                    clean[tuple(seq)] = dict(poly)
        self.terms = clean

    @classmethod
    def zero(cls, t: int) -> "PolElement":
        return cls(t)

    @classmethod
    def monomial(cls, seq: Word, exponents: Exponents, coeff: int = 1
                 ) -> "PolElement":
        t = len(exponents)
        if coeff == 0:
            return cls.zero(t)
        return cls(t, {tuple(seq): {tuple(exponents): coeff}})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PolElement") -> "PolElement":
        out = {seq: dict(p) for seq, p in self.terms.items()}
        for seq, poly in other.terms.items():
            out[seq] = _p_add(out.get(seq, {}), poly)
        return PolElement(self.t, out)

    def __sub__(self, other: "PolElement") -> "PolElement":
        return self + other.scale(-1)

    def scale(self, c: int) -> "PolElement":
        return PolElement(self.t, {s: _p_scale(p, c) for s, p in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((s, frozenset(p.items()))
                              for s, p in self.terms.items()))

    def __repr__(self) -> str:
        return f"PolElement({self.terms!r})"


def bosonic_count(rd: RootData, seq: Word) -> int:
    return sum(1 for c in seq if c != rd.m)


def check_regime(rd: RootData, seq: Word) -> None:
    if sum(1 for c in seq if c == rd.m) >= 2:
        raise UnsupportedRegimeError(
            "polynomial action implemented only for at most one fermionic strand")


def _bosonic_index(rd: RootData, seq: Word, pos: int) -> int:
    """0-based variable index of the bosonic strand at 1-based position pos."""
    return sum(1 for c in seq[:pos] if c != rd.m) - 1


def _act_crossing(rd: RootData, p: int, seq: Word, poly: Poly
                  ) -> tuple[Word, Poly]:
    """Action of the crossing of strands p, p+1 on one sector."""
    a, b = seq[p - 1], seq[p]
    m = rd.m
    swapped = seq[:p - 1] + (b, a) + seq[p + 1:]
    if a == m and b == m:
        raise UnsupportedRegimeError(
            "fermion-fermion crossings are outside the supported regime")
    if a != m and b != m:
        k = _bosonic_index(rd, seq, p)
        if a == b:
            return seq, _p_divided_difference(poly, k)
        moved = _p_swap(poly, k)
        if a == b - 1:
            moved = _p_add(_p_mul_var(moved, k), _p_mul_var(moved, k + 1))
        return swapped, moved
    if a == m:
        # fermionic strand first: multiply by the bosonic variable when the
        # bosonic label neighbors the fermionic one (pinned by the square
        # relations together with the braid relation)
        k = _bosonic_index(rd, seq, p + 1)
        if abs(b - m) == 1:
            return swapped, _p_mul_var(poly, k)
        return swapped, dict(poly)
    # bosonic strand first: plain sector relabeling
    return swapped, dict(poly)


def act(rd: RootData, kind: str, index: int, v: PolElement) -> PolElement:
    """Act by one generator token on every sector of ``v``."""
    out: dict[Word, Poly] = {}
    for seq, poly in v.terms.items():
        check_regime(rd, seq)
        if kind == "y":
            if not 1 <= index <= len(seq):
                raise ValueError(f"dot position {index} out of range")
            if seq[index - 1] == rd.m:
                continue  # dots vanish on fermionic strands
            tgt, moved = seq, _p_mul_var(poly, _bosonic_index(rd, seq, index))
        elif kind == "psi":
            if not 1 <= index <= len(seq) - 1:
                raise ValueError(f"crossing position {index} out of range")
            tgt, moved = _act_crossing(rd, index, seq, poly)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        if moved:
            out[tgt] = _p_add(out.get(tgt, {}), moved)
    return PolElement(v.t, out)


def act_raw(rd: RootData, raw: RawWord, v: PolElement) -> PolElement:
    """Act by a raw generator word: project onto its source, then apply
    the tokens bottom-up."""
    check_regime(rd, raw.src)
    poly = v.terms.get(tuple(raw.src))
    cur = PolElement(v.t, {tuple(raw.src): poly} if poly else None)
    for kind, index in reversed(raw.tokens):
        cur = act(rd, kind, index, cur)
    return cur


def act_element(rd: RootData, x: KlrElement, v: PolElement) -> PolElement:
    """Act by a rewritten element through its normal-form terms."""
    total = PolElement.zero(v.t)
    for nf, coeff in x.terms.items():
        check_regime(rd, nf.src)
        poly = v.terms.get(tuple(nf.src))
        if not poly:
            continue
        cur = PolElement(v.t, {tuple(nf.src): poly})
        for r, u in enumerate(nf.dots):
            if u:
                cur = PolElement(v.t, {
                    seq: _p_mul_var(p, _bosonic_index(rd, seq, r + 1), u)
                    for seq, p in cur.terms.items()})
        for a in reversed(nf.word):
            cur = act(rd, "psi", a, cur)
        total = total + cur.scale(coeff)
    return total


def standard_samples(rd: RootData, src: Word, max_degree: int = 3
                     ) -> list[PolElement]:
    """All monomial samples in the source sector up to the given degree."""
    t = bosonic_count(rd, src)
    samples = []
    for exps in _exponents_up_to(t, max_degree):
        samples.append(PolElement.monomial(src, exps))
    return samples


def _exponents_up_to(t: int, max_degree: int) -> Iterator[Exponents]:
    if t == 0:
        yield ()
        return
    for head in range(max_degree + 1):
        for tail in _exponents_up_to(t - 1, max_degree - head):
            yield (head,) + tail


def oracle_check(rd: RootData, raw: RawWord,
                 samples: Iterable[PolElement] | None = None) -> bool:
    """True iff the raw word and its rewritten normal form act identically."""
    check_regime(rd, raw.src)
    if samples is None:
        samples = standard_samples(rd, raw.src)
    rewritten = rewrite(rd, raw)
    return all(act_raw(rd, raw, s) == act_element(rd, rewritten, s)
               for s in samples)
