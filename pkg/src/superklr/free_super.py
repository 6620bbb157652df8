"""The free half-quantum-group: words in the generators, with coproduct.

Elements are finite linear combinations of words over the index set, with
rational-function coefficients.  Multiplication is concatenation of words.

The coproduct takes values in tensor powers.  Tensor powers carry the twisted
multiplication

    (x1 ⊗ ... ⊗ xk)(y1 ⊗ ... ⊗ yk)
      = q^(-sum_{i<j} |x_j| • |y_i|) * (-1)^(sum_{i<j} p(x_j) p(y_i))
        * (x1 y1 ⊗ ... ⊗ xk yk)

where |x| is the weight of a word and p its parity.  With this structure the
coproduct determined by  theta_i |-> theta_i ⊗ 1 + 1 ⊗ theta_i  is an algebra
homomorphism; e.g. (1 ⊗ theta_m)(theta_m ⊗ 1) = -(theta_m ⊗ theta_m) since
m • m = 0 and the generator at the isotropic index is odd.

Divided powers theta_i^(p) = theta_i^p / [p]! are provided as elements.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .root_data import RootData, Word
from .scalars import LaurentPoly, RationalQ, q_fact

R_ZERO = RationalQ.zero()
R_ONE = RationalQ.one()


class FreeElement:
    """Linear combination of words, coefficients in Q(q)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, RationalQ] | None = None):
        clean: dict[Word, RationalQ] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "FreeElement":
        return cls()

    @classmethod
    def unit(cls) -> "FreeElement":
        return cls({(): R_ONE})

    @classmethod
    def word(cls, w: Iterable[int], coeff: RationalQ = R_ONE) -> "FreeElement":
        return cls({tuple(w): coeff})

    @classmethod
    def generator(cls, i: int) -> "FreeElement":
        return cls({(i,): R_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, R_ZERO) + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return FreeElement(t)

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        t: dict[Word, RationalQ] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = t.get(w, R_ZERO) + c1 * c2
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        return FreeElement(t)

    def scale(self, c: RationalQ) -> "FreeElement":
        if c.is_zero():
            return FreeElement()
        return FreeElement({w: x * c for w, x in self.terms.items()})

    def __pow__(self, n: int) -> "FreeElement":
        out = FreeElement.unit()
        for _ in range(n):
            out = out * self
        return out

    def coeff(self, w: Iterable[int]) -> RationalQ:
        return self.terms.get(tuple(w), R_ZERO)

    def weights(self, rd: RootData) -> set[tuple[tuple[int, int], ...]]:
        out = set()
        for w in self.terms:
            out.add(tuple(sorted(rd.weight_of_word(w).items())))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "FreeElement(0)"
        bits = [f"({c})*{list(w)}" for w, c in sorted(self.terms.items())]
        return "FreeElement(" + " + ".join(bits) + ")"


def divided_power(i: int, p: int) -> FreeElement:
    """theta_i^(p) = theta_i^p / [p]!."""
    return FreeElement({(i,) * p: RationalQ(LaurentPoly.one(), q_fact(p))})


TensorKey = tuple[Word, ...]


class TensorElement:
    """Linear combination of k-fold tensors of words, twisted multiplication."""

    __slots__ = ("rd", "factors", "terms")

    def __init__(self, rd: RootData, factors: int,
                 terms: Mapping[TensorKey, RationalQ] | None = None):
        self.rd = rd
        self.factors = factors
        clean: dict[TensorKey, RationalQ] = {}
        if terms:
            for k, c in terms.items():
                if len(k) != factors:
                    raise ValueError("tensor key with wrong number of factors")
                if not c.is_zero():
                    clean[tuple(tuple(w) for w in k)] = c
        self.terms = clean

    @classmethod
    def unit(cls, rd: RootData, factors: int) -> "TensorElement":
        return cls(rd, factors, {((),) * factors: R_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._compat(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, R_ZERO) + c
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return TensorElement(self.rd, self.factors, t)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.rd, self.factors,
                             {k: -c for k, c in self.terms.items()})

    def scale(self, c: RationalQ) -> "TensorElement":
        if c.is_zero():
            return TensorElement(self.rd, self.factors)
        return TensorElement(self.rd, self.factors,
                             {k: x * c for k, x in self.terms.items()})

    def _compat(self, other: "TensorElement") -> None:
        if self.factors != other.factors or self.rd is not other.rd:
            raise ValueError("tensor factor mismatch")

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._compat(other)
        rd = self.rd
        t: dict[TensorKey, RationalQ] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                # twist: every letter of k1's factor j crosses every letter of
                # k2's factor i for i < j
                qexp = 0
                sign = 0
                for j in range(1, self.factors):
                    xj = k1[j]
                    if not xj:
                        continue
                    for i in range(j):
                        yi = k2[i]
                        if not yi:
                            continue
                        qexp -= rd.word_bullet(xj, yi)
                        sign += rd.word_parity(xj) * rd.word_parity(yi)
                key = tuple(k1[f] + k2[f] for f in range(self.factors))
                c = c1 * c2
                if qexp:
                    c = c.mul_laurent(LaurentPoly.q_power(qexp))
                if sign % 2:
                    c = -c
                s = t.get(key, R_ZERO) + c
                if s.is_zero():
                    t.pop(key, None)
                else:
                    t[key] = s
        return TensorElement(rd, self.factors, t)

    def coeff(self, key: TensorKey) -> RationalQ:
        return self.terms.get(tuple(tuple(w) for w in key), R_ZERO)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TensorElement)
                and self.factors == other.factors and self.terms == other.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorElement(0)"
        bits = []
        for k, c in sorted(self.terms.items()):
            body = " (x) ".join(str(list(w)) for w in k)
            bits.append(f"({c})*[{body}]")
        return "TensorElement(" + " + ".join(bits) + ")"


def coproduct(rd: RootData, x: FreeElement, times: int = 1) -> TensorElement:
    """The ``times``-fold iterated coproduct, valued in ``times + 1`` factors.

    Computed directly: each generator maps to the sum of the k tensor
    positions, and words multiply out in the twisted tensor algebra.  By
    coassociativity this equals any composition order of single coproducts
    (checked in the tests via :func:`coproduct_at`).
    """
    k = times + 1
    out = TensorElement(rd, k)
    for w, c in x.terms.items():
        term = TensorElement.unit(rd, k)
        for letter in w:
            spread = TensorElement(rd, k, {
                tuple((letter,) if f == pos else () for f in range(k)): R_ONE
                for pos in range(k)
            })
            term = term * spread
        out = out + term.scale(c)
    return out


def coproduct_at(t: TensorElement, idx: int) -> TensorElement:
    """Apply the single coproduct to tensor factor ``idx`` of ``t``.

    Used to verify coassociativity: applying at index 0 or 1 of a two-factor
    tensor gives equal three-factor tensors.
    """
    rd = t.rd
    out = TensorElement(rd, t.factors + 1)
    for key, c in t.terms.items():
        piece = coproduct(rd, FreeElement.word(key[idx]), 1)
        for (u, v), c2 in piece.terms.items():
            new_key = key[:idx] + (u, v) + key[idx + 1:]
            out = out + TensorElement(rd, t.factors + 1, {new_key: c * c2})
    return out
