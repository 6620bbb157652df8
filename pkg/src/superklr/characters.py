"""Bigraded characters, the quantum shuffle product, and small simple modules.

A character is a finite formal sum of sequences with coefficients in the
two-variable rational scalars: the character of a column module records the
graded dimension of each idempotent slice.  The shuffle product interleaves
two characters with a q,t-weight per crossing; specializing the second
variable at -1 collapses characters to the level where the quantum Serre
identities hold.  The one-column simple modules over a single repeated label
are built explicitly: a two-term complex for the fermionic label, the
coinvariant-algebra quotient of the polynomial action for bosonic labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .klr_core import Word, gdim
from .root_data import RootData, Weight
from .scalars import BiRational, RationalQ, q_int, rank_over_Qq

F0 = Fraction(0)
F1 = Fraction(1)

Matrix = tuple[tuple[Fraction, ...], ...]


class Character:
    """Finite map from sequences to two-variable rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, BiRational] | None = None):
        self.terms: dict[Word, BiRational] = {
            tuple(seq): v for seq, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def zero(cls) -> "Character":
        return cls()

    @classmethod
    def delta(cls, seq: Iterable[int]) -> "Character":
        return cls({tuple(seq): BiRational.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, seq: Iterable[int]) -> BiRational:
        return self.terms.get(tuple(seq), BiRational.zero())

    def __add__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for seq, v in other.terms.items():
            out[seq] = out.get(seq, BiRational.zero()) + v
        return Character(out)

    def __sub__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for seq, v in other.terms.items():
            out[seq] = out.get(seq, BiRational.zero()) - v
        return Character(out)

    def scale(self, c: BiRational) -> "Character":
        return Character({seq: v * c for seq, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Character) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "Character(0)"
        bits = [f"({v})*{seq}" for seq, v in sorted(self.terms.items())]
        return "Character(" + " + ".join(bits) + ")"

    def weight(self, rd: RootData) -> Weight:
        wts = {tuple(sorted(rd.weight_of_word(s).items())) for s in self.terms}
        if len(wts) > 1:
            raise ValueError("character mixes sequences of different weight")
        return dict(wts.pop()) if wts else {}

    def to_json(self) -> list[dict]:
        out = []
        for seq in sorted(self.terms):
            for te in sorted(self.terms[seq].terms):
                rq = self.terms[seq].terms[te]
                entry = {"sequence": list(seq), "t_exponent": te}
                entry.update(rq.to_json())
                out.append(entry)
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Character":
        acc: dict[Word, BiRational] = {}
        for entry in data:
            seq = tuple(entry["sequence"])
            rq = RationalQ.from_json(entry)
            piece = BiRational.from_rational(rq, int(entry["t_exponent"]))
            acc[seq] = acc.get(seq, BiRational.zero()) + piece
        return cls(acc)


def ch_projective(rd: RootData, src: Iterable[int]) -> Character:
    """Character of the column module on the given sequence: every slice is
    the graded dimension of the corresponding pair block."""
    src = tuple(src)
    nu = rd.weight_of_word(src)
    return Character({j: gdim(rd, src, j) for j in rd.words_of_weight(nu)})


def shuffle(rd: RootData, a: Character, b: Character) -> Character:
    """Interleave two characters; a crossing of entry x (left factor) past
    entry y (right factor) weighs q^(-x bullet y) t^(-[both fermionic])."""
    out: dict[Word, BiRational] = {}
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            base = ca * cb
            r, s = len(sa), len(sb)
            for pos in combinations(range(r + s), r):
                merged: list[int] = [0] * (r + s)
                taken = set(pos)
                for k, p in enumerate(pos):
                    merged[p] = sa[k]
                rest = [p for p in range(r + s) if p not in taken]
                for l, p in enumerate(rest):
                    merged[p] = sb[l]
                qe = te = 0
                for k, pa in enumerate(pos):
                    for l, pb in enumerate(rest):
                        if pa > pb:
                            qe -= rd.bullet(sa[k], sb[l])
                            if sa[k] == rd.m and sb[l] == rd.m:
                                te -= 1
                seq = tuple(merged)
                piece = base.mul_monomial(qe, te)
                out[seq] = out.get(seq, BiRational.zero()) + piece
    return Character(out)


def restrict_character(rd: RootData, c: Character, nu1: Weight,
                       nu2: Weight) -> dict[tuple[Word, Word], BiRational]:
    """Split every sequence into a prefix of weight nu1 and suffix of weight
    nu2, keeping only the terms that split."""
    total = c.weight(rd)
    combined: dict[int, int] = dict(nu1)
    for i, v in nu2.items():
        combined[i] = combined.get(i, 0) + v
    if total and {i: v for i, v in combined.items() if v} != total:
        raise ValueError("weights do not sum to the character's weight")
    cut = sum(nu1.values())
    out: dict[tuple[Word, Word], BiRational] = {}
    for seq, v in c.terms.items():
        prefix, suffix = seq[:cut], seq[cut:]
        if rd.weight_of_word(prefix) == {i: v for i, v in nu1.items() if v}:
            out[(prefix, suffix)] = v
    return out


def specialize(c: Character) -> dict[Word, RationalQ]:
    """Evaluate the second variable at -1, dropping vanishing terms."""
    out = {}
    for seq, v in c.terms.items():
        s = v.specialize_t(-1)
        if not s.is_zero():
            out[seq] = s
    return out


# -- one-column simple modules ----------------------------------------------------------


@dataclass(frozen=True)
class KatoModule:
    """Simple module on a repeated label, with explicit action matrices."""

    rd: RootData
    label: int
    power: int
    basis: tuple[str, ...]
    bidegrees: tuple[tuple[int, int], ...]
    psi: tuple[Matrix, ...]   # psi[r-1] acts by the r-th crossing
    dot: tuple[Matrix, ...]   # dot[r-1] acts by the r-th dot
    diff: Matrix              # the module differential

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def sequence(self) -> Word:
        return (self.label,) * self.power

    def character(self) -> Character:
        acc = BiRational.zero()
        for d1, d2 in self.bidegrees:
            acc = acc + BiRational.from_rational(RationalQ.q_power(d2), d1)
        return Character({self.sequence: acc})

    def as_complex(self):
        from .dg_linalg import DgModule
        # DgModule stores d row-per-basis-vector; the action matrix is
        # column-per-basis-vector, so transpose
        rows = tuple(tuple(col) for col in zip(*self.diff))
        return DgModule(self.bidegrees, rows)

    def check_axioms(self) -> None:
        """Defining relations for a single repeated label, plus the dg axiom."""
        n = self.dim
        ident = _mat_identity(n)
        zero = _mat_zero(n)
        fermionic = self.label == self.rd.m
        for r_mat in self.dot:
            for s_mat in self.dot:
                if _mat_mul(r_mat, s_mat) != _mat_mul(s_mat, r_mat):
                    raise ValueError("dots do not commute")
        if fermionic and any(mat != zero for mat in self.dot):
            raise ValueError("dots must kill a fermionic strand")
        for k, psi_k in enumerate(self.psi, start=1):
            if _mat_mul(psi_k, psi_k) != zero:
                raise ValueError("equal-label crossing must square to zero")
            for l, y_l in enumerate(self.dot, start=1):
                if l not in (k, k + 1):
                    if _mat_mul(psi_k, y_l) != _mat_mul(y_l, psi_k):
                        raise ValueError("far dots must slide freely")
            if not fermionic:
                # y_k psi_k = psi_k y_{k+1} + 1 and psi_k y_k = y_{k+1} psi_k + 1
                lhs = _mat_sub(_mat_mul(self.dot[k - 1], psi_k),
                               _mat_mul(psi_k, self.dot[k]))
                rhs = _mat_sub(_mat_mul(psi_k, self.dot[k - 1]),
                               _mat_mul(self.dot[k], psi_k))
                if lhs != ident or rhs != ident:
                    raise ValueError("divided-difference relation fails")
        for k, psi_k in enumerate(self.psi, start=1):
            for l, psi_l in enumerate(self.psi, start=1):
                if abs(k - l) > 1:
                    sign = -1 if fermionic else 1
                    if _mat_mul(psi_k, psi_l) != _mat_scale(
                            _mat_mul(psi_l, psi_k), sign):
                        raise ValueError("distant crossings fail to commute")
            if k < len(self.psi):
                lhs = _mat_mul(_mat_mul(psi_k, self.psi[k]), psi_k)
                rhs = _mat_mul(_mat_mul(self.psi[k], psi_k), self.psi[k])
                if lhs != rhs:
                    raise ValueError("braid relation fails")
        # dg axioms: d^2 = 0, degree shift, and the signed product rule
        if _mat_mul(self.diff, self.diff) != zero:
            raise ValueError("module differential does not square to zero")
        for i in range(n):
            d1, d2 = self.bidegrees[i]
            for j in range(n):
                if self.diff[j][i] and self.bidegrees[j] != (d1 + 1, d2):
                    raise ValueError("module differential must raise deg1 by one")
        for psi_k in self.psi:
            lhs = _mat_mul(self.diff, psi_k)
            if fermionic:
                # d(psi v) = d(psi) v - psi d(v) with d(psi) acting as the identity
                rhs = _mat_sub(ident, _mat_mul(psi_k, self.diff))
            else:
                # d(psi) = 0 and deg1(psi) = 0
                rhs = _mat_mul(psi_k, self.diff)
            if lhs != rhs:
                raise ValueError("crossing fails the module product rule")
        for y in self.dot:
            if _mat_mul(self.diff, y) != _mat_mul(y, self.diff):
                raise ValueError("dots must commute with the differential")


def _mat_zero(n: int) -> Matrix:
    return tuple((F0,) * n for _ in range(n))


def _mat_identity(n: int) -> Matrix:
    return tuple(tuple(F1 if i == j else F0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n))
                       for j in range(n)) for i in range(n))


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def kato(rd: RootData, label: int, power: int) -> KatoModule:
    """The simple module on the sequence (label, ..., label).

    For the fermionic label and power >= 2 this is the two-term complex with
    a surjective differential; for bosonic labels it is the coinvariant
    quotient of the polynomial action, with zero differential.
    """
    if label not in rd.indices:
        raise ValueError(f"label {label} is not in the index set")
    if power < 1:
        raise ValueError("power must be positive")
    if power == 1:
        return KatoModule(rd, label, 1, ("w0",), ((0, 0),), (),
                          (_mat_zero(1),), _mat_zero(1))
    if label == rd.m:
        zero = _mat_zero(2)
        lower = ((F0, F0), (F1, F0))   # w0 -> w-1, w-1 -> 0
        raise_d = ((F0, F1), (F0, F0))  # d(w-1) = w0
        return KatoModule(
            rd, label, power, ("w0", "w-1"), ((0, 0), (-1, 0)),
            tuple(lower for _ in range(power - 1)),
            tuple(zero for _ in range(power)),
            raise_d)
    return _kato_bosonic(rd, label, power)


# -- coinvariant model for a repeated bosonic label --------------------------------------

Poly = dict[tuple[int, ...], Fraction]


def _staircase(k: int) -> list[tuple[int, ...]]:
    """Exponent vectors with j-th entry at most j: a basis of the
    coinvariant quotient."""
    out = [()]
    for j in range(k):
        out = [e + (a,) for e in out for a in range(j + 1)]
    return sorted(out, key=lambda e: (sum(e), e))


def _complete_homogeneous(k: int, start: int, degree: int) -> Poly:
    """Sum of all monomials of the given degree in variables start..k-1."""
    if degree == 0:
        return {(0,) * k: F1}
    out: Poly = {}

    def rec(pos: int, remaining: int, acc: tuple[int, ...]) -> None:
        if pos == k - 1:
            expo = acc + (remaining,)
            out[(0,) * start + expo] = F1
            return
        for a in range(remaining + 1):
            rec(pos + 1, remaining - a, acc + (a,))

    rec(start, degree, ())
    return out


def _coinvariant_reduce(poly: Poly, k: int) -> Poly:
    """Normal form modulo positive-degree symmetric polynomials: rewrite the
    pure power x_j^(j+1) via the complete homogeneous relation of the same
    degree in the tail variables until every exponent is inside the
    staircase."""
    work = {e: c for e, c in poly.items() if c}
    done: Poly = {}
    while work:
        expo, coeff = work.popitem()
        over = next((j for j in range(k) if expo[j] > j), None)
        if over is None:
            done[expo] = done.get(expo, F0) + coeff
            if not done[expo]:
                del done[expo]
            continue
        # x_over^(over+1) = -(other monomials of h_{over+1}(x_over..x_{k-1}))
        h = _complete_homogeneous(k, over, over + 1)
        lead = (0,) * over + (over + 1,) + (0,) * (k - over - 1)
        rest = {e: c for e, c in h.items() if e != lead}
        reduced_expo = list(expo)
        reduced_expo[over] -= over + 1
        for e, c in rest.items():
            new = tuple(a + b for a, b in zip(reduced_expo, e))
            work[new] = work.get(new, F0) - coeff * c
            if not work[new]:
                del work[new]
    return done


def _kato_bosonic(rd: RootData, label: int, k: int) -> KatoModule:
    basis = _staircase(k)
    index = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    eps = rd.bullet(label, label)
    shift = -k * (k - 1)  # top staircase class sits in internal degree 0

    def column(poly: Poly) -> list[Fraction]:
        out = [F0] * n
        for e, c in _coinvariant_reduce(poly, k).items():
            out[index[e]] += c
        return out

    def act_matrix(action) -> Matrix:
        cols = [column(action(e)) for e in basis]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def mul_var(e: tuple[int, ...], r: int) -> Poly:
        lifted = list(e)
        lifted[r] += 1
        return {tuple(lifted): F1}

    def divided_difference(e: tuple[int, ...], r: int) -> Poly:
        alpha, beta = e[r], e[r + 1]
        out: Poly = {}
        lo, hi, sign = (beta, alpha, F1) if alpha > beta else (alpha, beta, -F1)
        for a in range(lo, hi):
            expo = list(e)
            expo[r], expo[r + 1] = a, alpha + beta - 1 - a
            out[tuple(expo)] = out.get(tuple(expo), F0) + sign
        return out

    psi = tuple(act_matrix(lambda e, r=r: divided_difference(e, r))
                for r in range(k - 1))
    dot = tuple(act_matrix(lambda e, r=r: mul_var(e, r)) for r in range(k))
    bidegs = tuple((0, eps * sum(e) + shift) for e in basis)
    names = tuple("x^" + "".join(map(str, e)) for e in basis)
    return KatoModule(rd, label, k, names, bidegs, psi, dot, _mat_zero(n))


# -- the specialized-character matrix and the quantum Serre identities --------------------


def dim_f(rd: RootData, nu: Weight) -> int:
    """Dimension of the weight space of the halved quantum superalgebra."""
    return len(rd.pbw_monomials(nu))


def character_matrix(rd: RootData, nu: Weight) -> tuple[list[Word], list[list[RationalQ]]]:
    """Rows indexed by source sequences, columns by slice sequences, entries
    the specialized characters."""
    seqs = rd.words_of_weight(nu)
    rows = []
    for i in seqs:
        spec = specialize(ch_projective(rd, i))
        rows.append([spec.get(j, RationalQ.zero()) for j in seqs])
    return seqs, rows


def character_matrix_rank(rd: RootData, nu: Weight) -> int:
    _, rows = character_matrix(rd, nu)
    if not rows:
        return 0
    return rank_over_Qq(rows)


@dataclass(frozen=True)
class SerreReport:
    weight: tuple[tuple[int, int], ...]
    adjacent_fermion_checked: int
    distant_checked: int
    serre_checked: int
    rank: int
    dim: int
    ok: bool


def serre_checks(rd: RootData, nu: Weight) -> SerreReport:
    """Verify, at the specialized level, the three defining identities on
    every embedding inside the given weight, plus the rank statement."""
    seqs = rd.words_of_weight(nu)
    spec: dict[Word, dict[Word, RationalQ]] = {}

    def specialized(i: Word) -> dict[Word, RationalQ]:
        if i not in spec:
            spec[i] = specialize(ch_projective(rd, i))
        return spec[i]

    ok = True
    adjacent = distant = serre = 0
    two = q_int(2)  # q + 1/q
    for i in seqs:
        for p in range(len(i) - 1):
            a, b = i[p], i[p + 1]
            if a == b == rd.m:
                adjacent += 1
                if specialized(i):
                    ok = False
            if abs(a - b) > 1:
                distant += 1
                swapped = i[:p] + (b, a) + i[p + 2:]
                if specialized(i) != specialized(swapped):
                    ok = False
        for p in range(len(i) - 2):
            a, b, c = i[p], i[p + 1], i[p + 2]
            if a == c and abs(a - b) == 1 and a != rd.m:
                serre += 1
                left = i[:p] + (a, a, b) + i[p + 3:]
                right = i[:p] + (b, a, a) + i[p + 3:]
                lhs = {j: v.mul_laurent(two) for j, v in specialized(i).items()}
                rhs: dict[Word, RationalQ] = {}
                for src in (left, right):
                    for j, v in specialized(src).items():
                        rhs[j] = rhs.get(j, RationalQ.zero()) + v
                rhs = {j: v for j, v in rhs.items() if not v.is_zero()}
                if lhs != rhs:
                    ok = False
    rank = character_matrix_rank(rd, nu)
    dim = dim_f(rd, nu)
    if rank != dim:
        ok = False
    return SerreReport(tuple(sorted(nu.items())), adjacent, distant, serre,
                       rank, dim, ok)


# -- the pairing on column-module classes -------------------------------------------------


def k0_pairing(rd: RootData, i: Iterable[int], j: Iterable[int]) -> RationalQ:
    """Specialized graded dimension of the pair block: the bilinear pairing
    of the column classes on sequences i and j."""
    return gdim(rd, tuple(j), tuple(i)).specialize_t(-1)


def adjointness_checks(rd: RootData, nu: Weight) -> int:
    """Induction/restriction adjointness at the level of specialized
    characters, for every two-part splitting of the weight.  Returns the
    number of identities checked; raises on the first failure."""
    seqs = rd.words_of_weight(nu)
    checked = 0
    splittings = []
    items = sorted(nu.items())
    sizes = [v for _, v in items]

    def rec(pos: int, acc: dict[int, int]) -> None:
        if pos == len(items):
            splittings.append(dict(acc))
            return
        label, v = items[pos]
        for take in range(v + 1):
            acc[label] = take
            rec(pos + 1, acc)
        del acc[label]

    rec(0, {})
    for nu1 in splittings:
        nu1 = {i: v for i, v in nu1.items() if v}
        nu2 = {i: nu[i] - nu1.get(i, 0) for i in nu}
        nu2 = {i: v for i, v in nu2.items() if v}
        lefts = rd.words_of_weight(nu1)
        rights = rd.words_of_weight(nu2)
        for a in lefts:
            cha = ch_projective(rd, a)
            for b in rights:
                chb = ch_projective(rd, b)
                concat = ch_projective(rd, a + b)
                shuffled = shuffle(rd, cha, chb)
                # pairing against every column class of the full weight
                for k in seqs:
                    lhs = shuffled.coeff(k).specialize_t(-1)
                    rhs = concat.coeff(k).specialize_t(-1)
                    if lhs != rhs:
                        raise ValueError(
                            f"induction adjointness fails at {a},{b} vs {k}")
                    checked += 1
                # restriction adjointness: pairing the restricted character
                # against a split pair picks out the concatenated slice
                restricted = restrict_character(rd, concat, nu1, nu2)
                for (pre, suf), v in restricted.items():
                    if concat.coeff(pre + suf) != v:
                        raise ValueError(
                            f"restriction adjointness fails at {pre},{suf}")
                    checked += 1
    return checked
