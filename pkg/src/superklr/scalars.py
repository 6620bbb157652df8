"""Exact scalar arithmetic: Laurent polynomials and rational functions in q.

Everything downstream (bilinear forms, graded dimensions, character
computations) is exact, so the coefficient types here never touch floats.

Representation choices:

* ``LaurentPoly`` — element of Z[q, q^-1], stored as a dict mapping exponent
  to a nonzero int coefficient.  The zero polynomial is the empty dict.
* ``RationalQ`` — quotient num/den of Laurent polynomials, kept in a unique
  canonical form so that equality is structural:
    - den != 0, and den has minimal exponent 0 (all spare powers of q are
      pushed into num, which may therefore have any minimal exponent);
    - gcd(num, den) over Q[q] is 1 once the q-power offsets are stripped;
    - the integer contents of num and den are jointly coprime;
    - den's lowest-degree coefficient is positive.
* ``BiLaurent`` — element of Z[q^±1, t^±1], dict (q-exp, t-exp) -> int.
* ``BiRational`` — Laurent polynomial in t with RationalQ coefficients,
  dict t-exp -> RationalQ.  This is where bigraded dimensions live.

``rank_over_Qq`` computes matrix rank over the rational function field Q(q)
by clearing denominators and running fraction-free Bareiss elimination in
Z[q, q^-1]; the interior divisions are exact by Sylvester's identity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.terms)

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly(t)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) - c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly(t)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        t: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return LaurentPoly(t)

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        return LaurentPoly({e: c * x for e, x in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def evaluate(self, q: Fraction) -> Fraction:
        if not self.terms and q == 0:
            return Fraction(0)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * q ** e
        return total

    # -- protocol -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if abs(c) == 1 else f"{abs(c)}{qpart}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})


ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()


# -- dense helpers over Q[x], used only inside canonicalization ----------------

def _to_dense(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    """Return (offset, coeffs) with p = q^offset * sum coeffs[i] q^i, coeffs[0] != 0."""
    off = p.min_exp()
    deg = p.max_exp() - off
    dense = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        dense[e - off] = Fraction(c)
    return off, dense


def _dense_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and _dense_trim(a):
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] -= f * bc
        _dense_trim(a)
    return q, a


def _dense_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    _dense_trim(a)
    _dense_trim(b)
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]
    return a


def _from_dense(offset: int, dense: Iterable[Fraction], lcm_clear: bool = False) -> LaurentPoly:
    terms = {}
    for i, c in enumerate(dense):
        if c:
            if c.denominator != 1:
                raise ValueError("non-integer coefficient after exact division")
            terms[offset + i] = int(c)
    return LaurentPoly(terms)


def laurent_div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a/b in Z[q, q^-1]; raises if not exact."""
    if b.is_zero():
        raise ZeroDivisionError("laurent_div_exact by zero")
    if a.is_zero():
        return LaurentPoly()
    off_a, da = _to_dense(a)
    off_b, db = _to_dense(b)
    quot, rem = _dense_divmod(da, db)
    if _dense_trim(rem):
        raise ValueError("division not exact in Z[q,q^-1]")
    return _from_dense(off_a - off_b, quot)


class RationalQ:
    """Rational function in q over Q, as a canonical num/den pair in Z[q,q^-1]."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = ONE
        if den.is_zero():
            raise ZeroDivisionError("RationalQ with zero denominator")
        num, den = _canonical_pair(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalQ":
        return cls(ZERO)

    @classmethod
    def one(cls) -> "RationalQ":
        return cls(ONE)

    @classmethod
    def const(cls, c: int) -> "RationalQ":
        return cls(LaurentPoly.const(c))

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "RationalQ":
        return cls(LaurentPoly.q_power(e, c))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalQ":
        return cls(p)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "RationalQ") -> "RationalQ":
        return RationalQ(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    def __sub__(self, other: "RationalQ") -> "RationalQ":
        return RationalQ(self.num * other.den - other.num * self.den,
                         self.den * other.den)

    def __neg__(self) -> "RationalQ":
        return RationalQ(-self.num, self.den)

    def __mul__(self, other: "RationalQ") -> "RationalQ":
        return RationalQ(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalQ") -> "RationalQ":
        if other.is_zero():
            raise ZeroDivisionError("division of RationalQ by zero")
        return RationalQ(self.num * other.den, self.den * other.num)

    def scale(self, c: int) -> "RationalQ":
        return RationalQ(self.num.scale(c), self.den)

    def mul_laurent(self, p: LaurentPoly) -> "RationalQ":
        return RationalQ(self.num * p, self.den)

    def bar(self) -> "RationalQ":
        """q -> q^-1."""
        return RationalQ(self.num.bar(), self.den.bar())

    def evaluate(self, q: Fraction) -> Fraction:
        d = self.den.evaluate(q)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={q}")
        return self.num.evaluate(q) / d

    # -- protocol ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RationalQ)
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __repr__(self) -> str:
        return f"RationalQ({self.num.terms!r}, {self.den.terms!r})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den})"

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalQ":
        return cls(LaurentPoly.from_json(data["num"]),
                   LaurentPoly.from_json(data["den"]))


def _canonical_pair(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    off_n, dn = _to_dense(num)
    off_d, dd = _to_dense(den)
    g = _dense_gcd(dn, dd)
    if len(g) > 1:
        dn, rn = _dense_divmod(dn, g)
        dd, rd = _dense_divmod(dd, g)
        assert not _dense_trim(rn) and not _dense_trim(rd)
    # clear coefficient denominators jointly, then strip joint integer content
    mult = 1
    for c in dn + dd:
        mult = mult * c.denominator // gcd(mult, c.denominator)
    ni = [int(c * mult) for c in dn]
    di = [int(c * mult) for c in dd]
    content = 0
    for c in ni + di:
        content = gcd(content, abs(c))
    if content > 1:
        ni = [c // content for c in ni]
        di = [c // content for c in di]
    # den's lowest-degree coefficient (its constant term here) must be positive
    if di[0] < 0:
        ni = [-c for c in ni]
        di = [-c for c in di]
    new_num = LaurentPoly({off_n - off_d + i: c for i, c in enumerate(ni) if c})
    new_den = LaurentPoly({i: c for i, c in enumerate(di) if c})
    return new_num, new_den


R_ZERO = RationalQ.zero()
R_ONE = RationalQ.one()


class BiLaurent:
    """Element of Z[q^±1, t^±1]: dict (q-exp, t-exp) -> nonzero int."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[(int(k[0]), int(k[1]))] = int(c)
        self.terms = clean

    @classmethod
    def zero(cls) -> "BiLaurent":
        return cls()

    @classmethod
    def one(cls) -> "BiLaurent":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, qe: int, te: int, c: int = 1) -> "BiLaurent":
        return cls({(qe, te): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BiLaurent") -> "BiLaurent":
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return BiLaurent(t)

    def __sub__(self, other: "BiLaurent") -> "BiLaurent":
        return self + (-other)

    def __neg__(self) -> "BiLaurent":
        return BiLaurent({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BiLaurent") -> "BiLaurent":
        t: dict[tuple[int, int], int] = {}
        for (q1, t1), c1 in self.terms.items():
            for (q2, t2), c2 in other.terms.items():
                k = (q1 + q2, t1 + t2)
                s = t.get(k, 0) + c1 * c2
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        return BiLaurent(t)

    def specialize_t(self, t_value: int = -1) -> LaurentPoly:
        """Substitute an integer (unit) value for t, leaving a Laurent poly in q."""
        if t_value not in (1, -1):
            raise ValueError("only unit specializations stay in Z[q,q^-1]")
        out: dict[int, int] = {}
        for (qe, te), c in self.terms.items():
            v = c * (t_value ** (te % 2) if t_value == -1 else 1)
            s = out.get(qe, 0) + v
            if s:
                out[qe] = s
            else:
                out.pop(qe, None)
        return LaurentPoly(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiLaurent) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BiLaurent({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (qe, te) in sorted(self.terms):
            c = self.terms[(qe, te)]
            factors = []
            if qe:
                factors.append("q" if qe == 1 else f"q^{qe}")
            if te:
                factors.append("t" if te == 1 else f"t^{te}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def to_json(self) -> dict[str, str]:
        return {f"{qe},{te}": str(c) for (qe, te), c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "BiLaurent":
        out = {}
        for k, c in data.items():
            qe, te = k.split(",")
            out[(int(qe), int(te))] = int(c)
        return cls(out)


class BiRational:
    """Laurent polynomial in t whose coefficients are rational functions of q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, RationalQ] | None = None):
        clean = {}
        if terms:
            for te, r in terms.items():
                if not r.is_zero():
                    clean[int(te)] = r
        self.terms = clean

    @classmethod
    def zero(cls) -> "BiRational":
        return cls()

    @classmethod
    def one(cls) -> "BiRational":
        return cls({0: R_ONE})

    @classmethod
    def from_rational(cls, r: RationalQ, te: int = 0) -> "BiRational":
        return cls({te: r})

    @classmethod
    def from_bilaurent(cls, b: BiLaurent) -> "BiRational":
        per_t: dict[int, dict[int, int]] = {}
        for (qe, te), c in b.terms.items():
            per_t.setdefault(te, {})[qe] = c
        return cls({te: RationalQ(LaurentPoly(d)) for te, d in per_t.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BiRational") -> "BiRational":
        t = dict(self.terms)
        for te, r in other.terms.items():
            s = t.get(te, R_ZERO) + r
            if s.is_zero():
                t.pop(te, None)
            else:
                t[te] = s
        return BiRational(t)

    def __sub__(self, other: "BiRational") -> "BiRational":
        return self + (-other)

    def __neg__(self) -> "BiRational":
        return BiRational({te: -r for te, r in self.terms.items()})

    def __mul__(self, other: "BiRational") -> "BiRational":
        t: dict[int, RationalQ] = {}
        for t1, r1 in self.terms.items():
            for t2, r2 in other.terms.items():
                te = t1 + t2
                s = t.get(te, R_ZERO) + r1 * r2
                if s.is_zero():
                    t.pop(te, None)
                else:
                    t[te] = s
        return BiRational(t)

    def scale(self, r: RationalQ) -> "BiRational":
        return BiRational({te: x * r for te, x in self.terms.items()})

    def mul_monomial(self, qe: int, te: int, c: int = 1) -> "BiRational":
        f = RationalQ.q_power(qe, c)
        return BiRational({t0 + te: r * f for t0, r in self.terms.items()})

    def specialize_t(self, t_value: int = -1) -> RationalQ:
        total = R_ZERO
        for te, r in self.terms.items():
            sign = -1 if (t_value == -1 and te % 2) else 1
            total = total + (r.scale(sign) if sign < 0 else r)
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiRational) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BiRational({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for te in sorted(self.terms):
            r = self.terms[te]
            if te == 0:
                parts.append(str(r))
            else:
                tpart = "t" if te == 1 else f"t^{te}"
                parts.append(f"({r})*{tpart}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {str(te): r.to_json() for te, r in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping) -> "BiRational":
        return cls({int(te): RationalQ.from_json(r) for te, r in data.items()})


# -- quantum integers -----------------------------------------------------------

def q_int(p: int) -> LaurentPoly:
    """Balanced quantum integer [p] = (q^p - q^-p)/(q - q^-1)."""
    if p < 0:
        return -q_int(-p)
    # [p] = q^(p-1) + q^(p-3) + ... + q^(1-p)
    return LaurentPoly({p - 1 - 2 * k: 1 for k in range(p)})


def q_fact(p: int) -> LaurentPoly:
    """Quantum factorial [p]! = [p][p-1]...[1]."""
    if p < 0:
        raise ValueError("quantum factorial of a negative integer")
    out = LaurentPoly.one()
    for k in range(2, p + 1):
        out = out * q_int(k)
    return out


def q_binom(p: int, g: int) -> LaurentPoly:
    """Quantum binomial [p]!/([g]! [p-g]!); always a Laurent polynomial."""
    if g < 0 or g > p:
        return LaurentPoly.zero()
    r = RationalQ(q_fact(p), q_fact(g) * q_fact(p - g))
    return r.as_laurent()


def q_multinomial(parts: Iterable[int]) -> LaurentPoly:
    """[sum]! / prod [part]! as a Laurent polynomial."""
    parts = list(parts)
    den = LaurentPoly.one()
    for p in parts:
        den = den * q_fact(p)
    return RationalQ(q_fact(sum(parts)), den).as_laurent()


# -- fraction-free rank over Q(q) -------------------------------------------------

def rank_over_Qq(rows: list[list[RationalQ]]) -> int:
    """Rank of a matrix of rational functions, via Bareiss elimination in Z[q,q^-1].

    Each row is scaled by the product of its entries' denominators first, which
    does not change the rank; the remaining eliminations use exact division.
    """
    if not rows:
        return 0
    cleared: list[list[LaurentPoly]] = []
    for row in rows:
        mult = ONE
        for x in row:
            mult = mult * x.den
        cleared.append([laurent_div_exact(x.num * mult, x.den) for x in row])
    m, n = len(cleared), len(cleared[0])
    prev = ONE
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if cleared[i][col].terms), None)
        if pivot is None:
            continue
        cleared[r], cleared[pivot] = cleared[pivot], cleared[r]
        piv = cleared[r][col]
        for i in range(r + 1, m):
            fi = cleared[i][col]
            for j in range(col + 1, n):
                cleared[i][j] = laurent_div_exact(
                    piv * cleared[i][j] - fi * cleared[r][j], prev)
            cleared[i][col] = ZERO
        prev = piv
        r += 1
        if r == m:
            break
    return r
