"""Exact analysis of finite-dimensional nonpositively graded dg algebras.

Implements the desk-scale linear algebra for dg algebras concentrated in
cohomological degrees <= 0: radical of the degree-zero part, the d-stable
ideal spanned by degrees <= -2, the kernel-like part of degree -1, and the
degree-zero radical, the induced quotient dg algebra, and the resulting
block classification.  Blocks of the semisimple quotient whose central
idempotent lies in the image of the differential correspond to acyclic
indecomposable projectives; the remaining blocks are counted by the ranks of
the two Grothendieck groups.  Everything is computed exactly over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .klr_core import KlrElement, NormalForm, basis_words, bidegree as nf_bidegree
from .root_data import RootData

Vec = tuple[Fraction, ...]
Matrix = list[list[Fraction]]

F0 = Fraction(0)
F1 = Fraction(1)


class NonSplitBlockError(ValueError):
    """A simple block of the semisimple quotient is not split over Q."""


# -- exact linear algebra over Q -----------------------------------------------------


def _rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    mat = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    row = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = F1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[:row], pivots


def _rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(_rref(rows)[0])


def _nullspace(rows: Iterable[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    rref, pivots = _rref(list(rows) or [[F0] * ncols])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F0] * ncols
        v[f] = F1
        for r, p in zip(rref, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def _in_span(span: list[Vec], v: Vec) -> bool:
    if not span:
        return all(x == 0 for x in v)
    return _rank(list(span)) == _rank(list(span) + [list(v)])


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[F0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            ait = a[i][t]
            if ait:
                row_b = b[t]
                row_o = out[i]
                for j in range(m):
                    row_o[j] += ait * row_b[j]
    return out


def _mat_pow_apply(poly: list[Fraction], mat: Matrix) -> Matrix:
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = len(mat)
    out = [[F0] * n for _ in range(n)]
    power = [[F1 if i == j else F0 for j in range(n)] for i in range(n)]
    for c in poly:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * power[i][j]
        power = _mat_mul(power, mat)
    return out


def _char_poly(mat: Matrix) -> list[Fraction]:
    """Characteristic polynomial, ascending coefficients, monic of degree n."""
    n = len(mat)
    coeffs = [F1]  # leading coefficient of lambda^n
    mk = [[F0] * n for _ in range(n)]
    ident = [[F1 if i == j else F0 for j in range(n)] for i in range(n)]
    cs = []
    for k in range(1, n + 1):
        if k == 1:
            mk = [row[:] for row in mat]
        else:
            shifted = [[mk[i][j] + (cs[-1] if i == j else F0) for j in range(n)]
                       for i in range(n)]
            mk = _mat_mul(mat, shifted)
        ck = -sum(mk[i][i] for i in range(n)) / k
        cs.append(ck)
    return list(reversed(cs)) + [F1]


def _rational_roots(poly: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a polynomial with ascending coefficients."""
    coeffs = list(poly)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    from math import lcm

    scale = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(F0)
        while ints and ints[0] == 0:
            ints.pop(0)
    if not ints or len(ints) == 1:
        return roots

    def divisors(v: int) -> list[int]:
        v = abs(v)
        out = []
        f = 1
        while f * f <= v:
            if v % f == 0:
                out.extend((f, v // f))
            f += 1
        return sorted(set(out))

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                acc = F0
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots


# -- the algebra container ------------------------------------------------------------


class PlainAlgebra(NamedTuple):
    """Associative algebra data without grading or differential."""

    names: tuple[str, ...]
    mult: tuple[tuple[Vec, ...], ...]
    unit: Vec


@dataclass(frozen=True)
class DgModule:
    """Finite-dimensional bigraded complex: basis bidegrees and d vectors."""

    bidegrees: tuple[tuple[int, int], ...]
    diff: tuple[Vec, ...]  # diff[i] = coordinates of d(basis_i)


class FinDimDgAlgebra:
    """Finite-dimensional dg algebra with deg1 <= 0, exact over Q."""

    __slots__ = ("names", "bidegrees", "mult", "diff", "unit")

    def __init__(self, names: Sequence[str], bidegrees: Sequence[tuple[int, int]],
                 mult: Sequence[Sequence[Sequence[Fraction | int]]],
                 diff: Sequence[Sequence[Fraction | int]],
                 unit: Sequence[Fraction | int]):
        n = len(names)
        self.names = tuple(names)
        self.bidegrees = tuple((int(a), int(b)) for a, b in bidegrees)
        self.mult = tuple(tuple(tuple(map(Fraction, row)) for row in block)
                          for block in mult)
        self.diff = tuple(tuple(map(Fraction, row)) for row in diff)
        self.unit = tuple(map(Fraction, unit))
        if not (len(self.bidegrees) == n and len(self.mult) == n
                and len(self.diff) == n and len(self.unit) == n
                and all(len(b) == n and all(len(v) == n for v in b)
                        for b in self.mult)
                and all(len(v) == n for v in self.diff)):
            raise ValueError("inconsistent dimensions in algebra data")
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    # -- algebra operations on coordinate vectors ----------------------------------

    def product(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        n = self.dim
        out = [F0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += xi * yj * c
        return tuple(out)

    def d_of(self, x: Sequence[Fraction]) -> Vec:
        n = self.dim
        out = [F0] * n
        for i, xi in enumerate(x):
            if xi:
                for k, c in enumerate(self.diff[i]):
                    if c:
                        out[k] += xi * c
        return tuple(out)

    def basis_vec(self, i: int) -> Vec:
        return tuple(F1 if j == i else F0 for j in range(self.dim))

    def indices_deg1(self, predicate) -> list[int]:
        return [i for i, (d1, _) in enumerate(self.bidegrees) if predicate(d1)]

    def as_module(self) -> DgModule:
        return DgModule(self.bidegrees, self.diff)

    # -- construction-time validation -----------------------------------------------

    def _validate(self) -> None:
        n = self.dim
        if any(d1 > 0 for d1, _ in self.bidegrees):
            raise ValueError("positive cohomological degree in a negative dg algebra")
        for i in range(n):
            if self.product(self.unit, self.basis_vec(i)) != self.basis_vec(i):
                raise ValueError("unit fails on the left")
            if self.product(self.basis_vec(i), self.unit) != self.basis_vec(i):
                raise ValueError("unit fails on the right")
        for i in range(n):
            d1, d2 = self.bidegrees[i]
            for k, c in enumerate(self.diff[i]):
                if c and self.bidegrees[k] != (d1 + 1, d2):
                    raise ValueError("differential must raise deg1 by one only")
            if any(self.d_of(self.diff[i])):
                raise ValueError("differential does not square to zero")
            for j in range(n):
                e1, e2 = self.bidegrees[j]
                for k, c in enumerate(self.mult[i][j]):
                    if c and self.bidegrees[k] != (d1 + e1, d2 + e2):
                        raise ValueError("multiplication is not bigraded")
        limit = min(n, 12)
        for i in range(limit):
            bi = self.basis_vec(i)
            for j in range(limit):
                bj = self.basis_vec(j)
                ij = self.product(bi, bj)
                for k in range(limit):
                    bk = self.basis_vec(k)
                    if self.product(ij, bk) != self.product(bi, self.product(bj, bk)):
                        raise ValueError("structure constants are not associative")
                # graded Leibniz rule on the pair (i, j)
                sign = -1 if self.bidegrees[i][0] % 2 else 1
                want = tuple(a + sign * b for a, b in zip(
                    self.product(self.d_of(bi), bj),
                    self.product(bi, self.d_of(bj))))
                if self.d_of(ij) != want:
                    raise ValueError("differential fails the Leibniz rule")

    # -- serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "bidegrees": [list(b) for b in self.bidegrees],
            "mult": [[[str(c) for c in row] for row in block] for block in self.mult],
            "diff": [[str(c) for c in row] for row in self.diff],
            "unit": [str(c) for c in self.unit],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinDimDgAlgebra":
        return cls(
            data["names"],
            [tuple(b) for b in data["bidegrees"]],
            [[[Fraction(c) for c in row] for row in block] for block in data["mult"]],
            [[Fraction(c) for c in row] for row in data["diff"]],
            [Fraction(c) for c in data["unit"]],
        )


# -- ready-made examples ---------------------------------------------------------------


def ground_field() -> FinDimDgAlgebra:
    return FinDimDgAlgebra(("1",), ((0, 0),), (((F1,),),), ((F0,),), (F1,))


def lambda_y() -> FinDimDgAlgebra:
    """Exterior algebra on one degree (-1, 0) generator with d(y) = 1."""
    e = (F1, F0)
    y = (F0, F1)
    zero = (F0, F0)
    return FinDimDgAlgebra(
        ("1", "y"), ((0, 0), (-1, 0)),
        ((e, y), (y, zero)),
        (zero, e),
        e,
    )


def truncated_square(deg2: int) -> FinDimDgAlgebra:
    """Q[x]/(x^2) with x in bidegree (0, deg2) and zero differential."""
    e = (F1, F0)
    x = (F0, F1)
    zero = (F0, F0)
    return FinDimDgAlgebra(
        ("1", "x"), ((0, 0), (0, deg2)),
        ((e, x), (x, zero)),
        (zero, zero),
        e,
    )


def from_klr(rd: RootData, weight: Mapping[int, int]) -> FinDimDgAlgebra:
    """The full diagram algebra of a weight supported on the fermionic label.

    Such weights are the only ones with finite-dimensional algebras: all
    strands are fermionic, so dots vanish and the basis is indexed by
    permutations.
    """
    support = {i for i, v in weight.items() if v}
    if support - {rd.m}:
        raise ValueError(
            "weights with bosonic support give infinite-dimensional algebras")
    k = int(weight.get(rd.m, 0))
    if k < 1:
        raise ValueError("weight must be nonzero")
    src = (rd.m,) * k
    words = basis_words(rd, src, src)
    nfs = [NormalForm(src, w, (0,) * k) for w in words]
    index = {nf: i for i, nf in enumerate(nfs)}
    n = len(nfs)

    def as_vec(x: KlrElement) -> Vec:
        out = [F0] * n
        for nf, c in x.terms.items():
            out[index[nf]] = Fraction(c)
        return tuple(out)

    elements = [KlrElement(rd, {nf: 1}) for nf in nfs]
    mult = tuple(tuple(as_vec(a * b) for b in elements) for a in elements)
    diff = tuple(as_vec(a.differential()) for a in elements)
    names = tuple("e" if not nf.word else
                  "psi_" + "".join(map(str, nf.word)) for nf in nfs)
    unit = as_vec(KlrElement.idempotent(rd, src))
    bidegs = tuple(nf_bidegree(rd, nf) for nf in nfs)
    return FinDimDgAlgebra(names, bidegs, mult, diff, unit)


def smash_with_differential(a: FinDimDgAlgebra) -> PlainAlgebra:
    """Adjoin the differential as an odd operator D with D^2 = 0 and
    D x = d(x) + (-1)^(deg1 x) x D; the result is a plain algebra."""
    n = a.dim
    names = a.names + tuple(f"{nm}*D" for nm in a.names)

    def sign(i: int) -> int:
        return -1 if a.bidegrees[i][0] % 2 else 1

    def pad(vec: Vec, upper: bool) -> Vec:
        zero = (F0,) * n
        return (zero + tuple(vec)) if upper else (tuple(vec) + zero)

    mult: list[list[Vec]] = [[()] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        bi = a.basis_vec(i)
        for j in range(n):
            bj = a.basis_vec(j)
            prod = a.product(bi, bj)
            # x * y,  x * (yD)
            mult[i][j] = pad(prod, False)
            mult[i][j + n] = pad(prod, True)
            # (xD) * y = x(d y) + (-1)^{|y|} (xy) D
            xdy = a.product(bi, a.d_of(bj))
            low = tuple(xdy)
            high = tuple(Fraction(sign(j)) * c for c in prod)
            mult[i + n][j] = low + high
            # (xD) * (yD) = x (d y) D + 0
            mult[i + n][j + n] = pad(a.product(bi, a.d_of(bj)), True)
    unit = tuple(a.unit) + (F0,) * n
    return PlainAlgebra(names, tuple(tuple(r) for r in mult), unit)


# -- radicals and the d-stable ideal ---------------------------------------------------


def _sub_radical(a: FinDimDgAlgebra, indices: list[int]) -> list[Vec]:
    """Radical of the subalgebra spanned by the given basis indices,
    returned in full-algebra coordinates (per-degree trace pairing)."""
    if not indices:
        return []
    pos = {b: t for t, b in enumerate(indices)}
    k = len(indices)
    # left multiplication inside the subalgebra
    lmat = {}
    for b in indices:
        m = [[F0] * k for _ in range(k)]
        for j in indices:
            col = a.mult[b][j]
            for t, c in enumerate(col):
                if c:
                    m[pos[t]][pos[j]] = c
        lmat[b] = m
    by_deg2: dict[int, list[int]] = {}
    for b in indices:
        by_deg2.setdefault(a.bidegrees[b][1], []).append(b)
    radical: list[Vec] = []
    for s, xs in by_deg2.items():
        ys = by_deg2.get(-s, [])
        rows = []
        for y in ys:
            row = []
            for x in xs:
                prod = _mat_mul(lmat[x], lmat[y])
                row.append(sum(prod[t][t] for t in range(k)))
            rows.append(row)
        for sol in _nullspace(rows, len(xs)):
            vec = [F0] * a.dim
            for c, b in zip(sol, xs):
                vec[b] = c
            radical.append(tuple(vec))
    return radical


def radical0(a: FinDimDgAlgebra) -> list[Vec]:
    """Basis of the radical of the degree-zero subalgebra."""
    return _sub_radical(a, a.indices_deg1(lambda d1: d1 == 0))


def j_bullet(a: FinDimDgAlgebra) -> list[Vec]:
    """The d-stable ideal: everything below degree -1, the degree -1 part
    whose differential lands in the degree-zero radical, and that radical."""
    rad = radical0(a)
    ideal: list[Vec] = [a.basis_vec(i)
                        for i in a.indices_deg1(lambda d1: d1 <= -2)]
    minus_one = a.indices_deg1(lambda d1: d1 == -1)
    if minus_one:
        # condition: d(sum alpha_i b_i) lies in span(rad)
        zero0 = a.indices_deg1(lambda d1: d1 == 0)
        rad_rref, rad_pivots = _rref([[v[t] for t in zero0] for v in rad]
                                     ) if rad else ([], [])

        def residue(i: int) -> list[Fraction]:
            vec = [a.diff[i][z] for z in zero0]
            for r, p in zip(rad_rref, rad_pivots):
                if vec[p]:
                    f = vec[p]
                    vec = [x - f * y for x, y in zip(vec, r)]
            return vec

        residues = {i: residue(i) for i in minus_one}
        compl = [t for t in range(len(zero0)) if t not in rad_pivots]
        rows = [[residues[i][t] for i in minus_one] for t in compl]
        for sol in _nullspace(rows, len(minus_one)):
            vec = [F0] * a.dim
            for c, i in zip(sol, minus_one):
                vec[i] = c
            ideal.append(tuple(vec))
    ideal.extend(rad)
    return ideal


def a_bullet(a: FinDimDgAlgebra) -> FinDimDgAlgebra:
    """Quotient dg algebra by the d-stable ideal."""
    return _quotient(a, j_bullet(a))


def _quotient(a: FinDimDgAlgebra, ideal: list[Vec]) -> FinDimDgAlgebra:
    if not ideal:
        return a
    # group ideal vectors by bidegree so representatives stay homogeneous
    by_deg: dict[tuple[int, int], list[Vec]] = {}
    for v in ideal:
        degs = {a.bidegrees[i] for i, c in enumerate(v) if c}
        if len(degs) != 1:
            raise ValueError("ideal basis must be homogeneous")
        by_deg.setdefault(degs.pop(), []).append(v)
    rref_rows: list[list[Fraction]] = []
    pivots: list[int] = []
    for vecs in by_deg.values():
        rr, pv = _rref(vecs)
        rref_rows.extend(rr)
        pivots.extend(pv)
    order = sorted(range(len(pivots)), key=lambda t: pivots[t])
    rref_rows = [rref_rows[t] for t in order]
    pivots = [pivots[t] for t in order]

    def project(vec: Sequence[Fraction]) -> list[Fraction]:
        out = list(vec)
        for row, p in zip(rref_rows, pivots):
            if out[p]:
                f = out[p]
                out = [x - f * y for x, y in zip(out, row)]
        return out

    keep = [i for i in range(a.dim) if i not in pivots]
    # sanity: the ideal must be two-sided and d-stable
    for v in ideal:
        if any(project(a.d_of(v))[i] for i in keep):
            raise ValueError("ideal is not d-stable")
        for i in range(a.dim):
            b = a.basis_vec(i)
            if any(project(a.product(b, v))[t] for t in keep):
                raise ValueError("ideal is not a left ideal")
            if any(project(a.product(v, b))[t] for t in keep):
                raise ValueError("ideal is not a right ideal")

    def compress(vec: Sequence[Fraction]) -> Vec:
        proj = project(vec)
        return tuple(proj[i] for i in keep)

    names = tuple(a.names[i] for i in keep)
    bidegs = tuple(a.bidegrees[i] for i in keep)
    mult = tuple(tuple(compress(a.product(a.basis_vec(i), a.basis_vec(j)))
                       for j in keep) for i in keep)
    diff = tuple(compress(a.diff[i]) for i in keep)
    unit = compress(a.unit)
    return FinDimDgAlgebra(names, bidegs, mult, diff, unit)


# -- block classification ---------------------------------------------------------------


@dataclass(frozen=True)
class DgAnalysis:
    jbullet: tuple[Vec, ...]
    abullet_dim: int
    blocks: int
    m_I: int
    m_II: int
    k0_rank: int
    g0_rank: int


def _center(a: FinDimDgAlgebra, indices: list[int]) -> list[Vec]:
    """Center of the subalgebra on the given indices (sub-coordinates)."""
    k = len(indices)
    rows = []
    for j in indices:
        for t in indices:
            row = []
            for i in indices:
                comm = tuple(x - y for x, y in
                             zip(a.mult[i][j], a.mult[j][i]))
                row.append(comm[t])
            rows.append(row)
    return _nullspace(rows, k)


def _split_commutative(a: FinDimDgAlgebra, center: list[Vec]) -> list[Vec]:
    """Primitive idempotents of the (semisimple, commutative) center.

    Pieces are refined by kernels of rational-eigenvalue factors of
    multiplication by candidate elements; a final piece of dimension > 1
    witnesses a block not split over Q.
    """
    if not center:
        raise ValueError("center of a unital algebra cannot be empty")
    pieces = [list(center)]
    changed = True
    while changed:
        changed = False
        refined: list[list[Vec]] = []
        for piece in pieces:
            if len(piece) == 1:
                refined.append(piece)
                continue
            candidates = [tuple(v) for v in piece]
            extra = []
            for x in candidates:
                for y in candidates:
                    extra.append(a.product(x, y))
                    extra.append(tuple(p - q for p, q in zip(x, y)))
            split = _try_split(a, piece, candidates + extra)
            if split is not None:
                refined.extend(split)
                changed = True
            else:
                refined.append(piece)
        pieces = refined
    idems = []
    for piece in pieces:
        if len(piece) != 1:
            raise NonSplitBlockError(
                f"semisimple block of dimension {len(piece)} is not split over Q")
        z = piece[0]
        z2 = a.product(z, z)
        # z^2 = mu z in a one-dimensional semisimple piece
        ratio = None
        for p, q in zip(z2, z):
            if q:
                ratio = p / q
                break
        if not ratio:
            raise ValueError("central element is nilpotent; quotient not semisimple")
        idems.append(tuple(c / ratio for c in z))
    return idems


def _try_split(a: FinDimDgAlgebra, piece: list[Vec],
               candidates: list[Vec]) -> list[list[Vec]] | None:
    k = len(piece)
    cols = list(range(a.dim))
    coord_rows = [[piece[j][c] for j in range(k)] for c in cols]
    for z in candidates:
        # matrix of multiplication by z on the piece, in piece coordinates
        mat_cols = []
        ok = True
        for v in piece:
            c = _solve(coord_rows, list(a.product(z, v)))
            if c is None:
                ok = False
                break
            mat_cols.append(c)
        if not ok:
            continue
        mat = [[mat_cols[j][i] for j in range(k)] for i in range(k)]
        poly = _char_poly(mat)
        roots = _rational_roots(poly)
        if not roots:
            continue
        remaining = poly
        parts: list[list[Vec]] = []
        for lam in roots:
            mult = 0
            while True:
                quo, rem = _poly_divmod(remaining, [-lam, F1])
                if any(rem):
                    break
                remaining = quo
                mult += 1
            factor = _poly_power([-lam, F1], mult)
            op = _mat_pow_apply(factor, mat)
            kernel = _nullspace(op, k)
            part = [tuple(sum(s[t] * piece[t][c] for t in range(k))
                          for c in cols) for s in kernel]
            if part:
                parts.append(part)
        if len(remaining) > 1:
            op = _mat_pow_apply(remaining, mat)
            kernel = _nullspace(op, k)
            part = [tuple(sum(s[t] * piece[t][c] for t in range(k))
                          for c in cols) for s in kernel]
            if part:
                parts.append(part)
        if len(parts) > 1:
            return parts
    return None


def _solve(rows: Matrix, target: list[Fraction]) -> list[Fraction] | None:
    n = len(rows[0]) if rows else 0
    aug = [row + [t] for row, t in zip(rows, target)]
    rref, pivots = _rref(aug)
    sol = [F0] * n
    for row, p in zip(rref, pivots):
        if p == n:
            return None
        sol[p] = row[n]
    return sol


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [F0] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        q[shift] = f
        for i, c in enumerate(den):
            num[shift + i] -= f * c
        num.pop()
    return q, num


def _poly_power(p: list[Fraction], k: int) -> list[Fraction]:
    out = [F1]
    for _ in range(k):
        res = [F0] * (len(out) + len(p) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(p):
                res[i + j] += x * y
        out = res
    return out


def classify(a: FinDimDgAlgebra) -> DgAnalysis:
    """Block classification of the quotient by the d-stable ideal."""
    ideal = j_bullet(a)
    ab = _quotient(a, ideal)
    zero = ab.indices_deg1(lambda d1: d1 == 0)
    if _sub_radical(ab, zero):
        raise ValueError("degree-zero part of the quotient is not semisimple")
    center = _center(ab, zero)
    center_full = []
    for v in center:
        vec = [F0] * ab.dim
        for c, i in zip(v, zero):
            vec[i] = c
        center_full.append(tuple(vec))
    idems = _split_commutative(ab, center_full)
    minus_one = ab.indices_deg1(lambda d1: d1 == -1)
    image = [ab.diff[i] for i in minus_one]
    image = [v for v in image if any(v)]
    m_two = sum(1 for e in idems if _in_span(image, e))
    blocks = len(idems)
    m_one = blocks - m_two
    return DgAnalysis(
        jbullet=tuple(ideal),
        abullet_dim=ab.dim,
        blocks=blocks,
        m_I=m_one,
        m_II=m_two,
        k0_rank=m_one,
        g0_rank=m_one,
    )


# -- cohomology of complexes -------------------------------------------------------------


def cohomology(module: DgModule) -> dict[tuple[int, int], int]:
    """Dimension of kernel mod image at every bidegree (omitting zeros)."""
    n = len(module.bidegrees)
    for i in range(n):
        vec = [F0] * n
        for j, c in enumerate(module.diff[i]):
            if c:
                if module.bidegrees[j] != (module.bidegrees[i][0] + 1,
                                           module.bidegrees[i][1]):
                    raise ValueError("differential must raise deg1 by one only")
                for t, c2 in enumerate(module.diff[j]):
                    vec[t] += c * c2
        if any(vec):
            raise ValueError("differential does not square to zero")
    by_deg: dict[tuple[int, int], list[int]] = {}
    for i, bd in enumerate(module.bidegrees):
        by_deg.setdefault(bd, []).append(i)
    out: dict[tuple[int, int], int] = {}
    for bd, idx in by_deg.items():
        nxt = by_deg.get((bd[0] + 1, bd[1]), [])
        prv = by_deg.get((bd[0] - 1, bd[1]), [])
        out_rank = _rank([[module.diff[i][j] for j in nxt] for i in idx]
                         ) if nxt else 0
        in_rank = _rank([[module.diff[i][j] for j in idx] for i in prv]
                        ) if prv else 0
        h = len(idx) - out_rank - in_rank
        if h:
            out[bd] = h
    return out
