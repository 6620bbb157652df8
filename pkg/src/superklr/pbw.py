"""Root vectors, restricted monomial bases, and the defining ideal.

For an interval root alpha = alpha_i + ... + alpha_j the root vector is built
by the recursion (alpha' = alpha minus its last simple constituent):

    theta_alpha = theta_alpha' theta_j
                  - (-1)^(p(alpha')p(j)) q^(alpha' • alpha_j) theta_j theta_alpha'

Monomials are products of root vector powers in increasing root order, with
odd roots capped at exponent 1.  ``monomial_form_closed`` gives the closed
form of the Gram pairing of two such monomials (diagonal in the monomials);
``root_form_closed`` the closed form of (theta_alpha, theta_alpha).  Both are
oracles against the recursive/graphical form implementations.

``defining_ideal_generators`` returns the generators of the two-sided ideal
that the form's radical is generated by; ``straightening_elements`` returns
the radical elements straightening products of two root vectors (seven
families, by the relative position of the two intervals), all of which the
tests verify to pair to zero against every word.
"""

from __future__ import annotations

from .free_super import FreeElement, divided_power
from .root_data import Root, RootData
from .scalars import LaurentPoly, RationalQ, q_int

R_ONE = RationalQ.one()


def root_vector(rd: RootData, root: Root) -> FreeElement:
    i, j = root
    if i == j:
        return FreeElement.generator(i)
    head = root_vector(rd, (i, j - 1))
    last = FreeElement.generator(j)
    sign = (-1) ** (rd.root_parity((i, j - 1)) * rd.parity(j))
    qexp = rd.root_bullet((i, j - 1), (j, j))
    twist = RationalQ.q_power(qexp, sign)
    return head * last - (last * head).scale(twist)


Monomial = tuple[tuple[Root, int], ...]


def monomial_element(rd: RootData, mon: Monomial) -> FreeElement:
    """Product of root-vector powers in increasing root order."""
    out = FreeElement.unit()
    for root, mult in sorted(mon):
        if mult < 0:
            raise ValueError(f"negative exponent on root {root}")
        if rd.root_parity(root) and mult > 1:
            raise ValueError(f"odd root {root} capped at exponent 1, got {mult}")
        rv = root_vector(rd, root)
        for _ in range(mult):
            out = out * rv
    return out


def root_form_closed(rd: RootData, root: Root) -> RationalQ:
    """Closed form of (theta_alpha, theta_alpha) for an interval root."""
    i, j = root
    m = rd.m
    if i <= j < m:
        return RationalQ(LaurentPoly.q_power(-2 * (j - i)),
                         LaurentPoly.one() - LaurentPoly.q_power(2))
    if i <= j == m:
        return RationalQ.q_power(-2 * (j - i))
    if m < i <= j:
        return RationalQ(LaurentPoly.q_power(2 * (j - i)),
                         LaurentPoly.one() - LaurentPoly.q_power(-2))
    if m == i <= j:
        return RationalQ.q_power(2 * (j - i))
    # i < m < j
    return RationalQ.q_power(2 * (i + j - 2 * m))


def monomial_form_closed(rd: RootData, a: Monomial, b: Monomial) -> RationalQ:
    """Closed form of the pairing of two ordered monomials (diagonal)."""
    if dict(a) != dict(b):
        return RationalQ.zero()
    total = R_ONE
    for root, mult in a:
        base = root_form_closed(rd, root)
        p = rd.root_parity(root)
        bb = rd.root_bullet(root, root)
        for _ in range(mult):
            total = total * base
        for k in range(1, mult + 1):
            partial = LaurentPoly.zero()
            for r in range(k):
                partial = partial + LaurentPoly.q_power(-r * bb, (-1) ** (r * p))
            total = total.mul_laurent(partial)
    return total


def comult_root_closed(rd: RootData, root: Root):
    """Expected coproduct of a root vector, as a list of (left, right, coeff).

    Delta(theta_alpha) = theta_alpha (x) 1  +  1 (x) theta_alpha
        + sum_{r=i}^{j-1} (q^(-r•(r+1)) - q^(r•(r+1)))
              theta_{alpha_{r+1}+...+alpha_j} (x) theta_{alpha_i+...+alpha_r}
    """
    i, j = root
    out = [((i, j), None, R_ONE), (None, (i, j), R_ONE)]
    for r in range(i, j):
        b = rd.bullet(r, r + 1)
        coeff = RationalQ(LaurentPoly.q_power(-b) - LaurentPoly.q_power(b))
        out.append(((r + 1, j), (i, r), coeff))
    return out


# -- radical elements ------------------------------------------------------


def defining_ideal_generators(rd: RootData) -> list[FreeElement]:
    """Generators of the two-sided ideal cutting out the quotient algebra."""
    m = rd.m
    gens: list[FreeElement] = []

    def w(*letters: int) -> FreeElement:
        return FreeElement.word(letters)

    two = RationalQ(q_int(2))  # q + q^-1
    if m - 1 >= 1 and m + 1 <= m + rd.n - 1:
        gens.append(
            w(m, m - 1, m + 1, m).scale(two)
            - w(m - 1, m, m + 1, m) - w(m, m - 1, m, m + 1)
            - w(m, m + 1, m, m - 1) - w(m + 1, m, m - 1, m))
    gens.append(w(m, m))
    for i in rd.indices:
        for j in rd.indices:
            if j > i + 1:
                gens.append(w(i, j) - w(j, i))
    for i in rd.indices:
        if i == m:
            continue
        for eps in (1, -1):
            j = i + eps
            if 1 <= j <= m + rd.n - 1:
                gens.append(w(i, j, i).scale(two) - w(i, i, j) - w(j, i, i))
    return gens


def straightening_elements(rd: RootData, max_size: int) -> list[FreeElement]:
    """Radical elements straightening theta_alpha theta_beta, all seven shapes.

    Enumerates interval pairs with total weight size at most ``max_size`` and
    instantiates, per relative position:
      disjoint non-adjacent   -> plain commutator;
      adjacent (beta after)   -> q-commutator minus theta_{alpha+beta};
      nested (beta inside)    -> signed plain commutator;
      same start, alpha longer / same end, beta shorter  -> q-commutators
          signed by the product of the two root parities (the power of q
          flips when the shared endpoint is the isotropic index);
      strictly overlapping    -> parity-signed commutator with a correction
          on union/intersection root vectors;
      odd roots               -> squares;
    plus the two-term Serre-type elements on an even root followed by an
    adjacent root.
    """
    m = rd.m
    out: list[FreeElement] = []
    roots = rd.roots()

    def rv(r: Root) -> FreeElement:
        return root_vector(rd, r)

    def size(r: Root) -> int:
        return r[1] - r[0] + 1

    for a in roots:
        i, j = a
        pa = rd.root_parity(a)
        if pa and 2 * size(a) <= max_size:
            out.append(rv(a) * rv(a))  # pbw7: odd root squares
        for b in roots:
            k, l = b
            if size(a) + size(b) > max_size:
                continue
            pb = rd.root_parity(b)
            A, B = rv(a), rv(b)
            if k > j + 1:  # pbw1: disjoint, non-adjacent
                out.append(A * B - B * A)
            elif k == j + 1:  # pbw2: adjacent
                sign = (-1) ** (pa * pb)
                tw = RationalQ.q_power(rd.root_bullet(a, b), sign)
                out.append(A * B - (B * A).scale(tw) - rv((i, l)))
            elif i < k <= l < j:  # pbw3: nested
                sign = (-1) ** (pa * pb)
                out.append(A * B - (B * A).scale(RationalQ.const(sign)))
            elif i == k and j > l:  # pbw4: same start, first longer
                sign = (-1) ** (pa * pb)
                exp = rd.bullet(i, i + 1) if i != m else -rd.bullet(i, i + 1)
                out.append(A * B - (B * A).scale(RationalQ.q_power(exp, sign)))
            elif j == l and i < k:  # pbw5: same end, second shorter
                sign = (-1) ** (pa * pb)
                exp = -rd.bullet(j - 1, j) if j != m else rd.bullet(j - 1, j)
                out.append(A * B - (B * A).scale(RationalQ.q_power(exp, sign)))
            elif i < k < j < l:  # pbw6: strictly overlapping interiors
                sign = (-1) ** (pa * pb)
                G, Gp = rv((i, l)), rv((k, j))
                bb = rd.bullet(j, j + 1)
                corr = RationalQ(LaurentPoly.q_power(-bb) - LaurentPoly.q_power(bb))
                out.append(A * B - (B * A).scale(RationalQ.const(sign))
                           - (G * Gp).scale(corr))

    # Serre-type straightening on an even root and an adjacent root
    inv2 = RationalQ(LaurentPoly.one(), q_int(2))
    for a in roots:
        if rd.root_parity(a):
            continue
        i, j = a
        for b in roots:
            if b[0] != j + 1 or 2 * size(a) + size(b) > max_size:
                continue
            A, B = rv(a), rv(b)
            out.append(A * B * A - (A * A * B).scale(inv2) - (B * A * A).scale(inv2))
    return out
