"""Tests for characters, the shuffle product, and one-column simple modules."""

from fractions import Fraction

import pytest

from superklr import characters as C
from superklr import dg_linalg as dg
from superklr.characters import Character, KatoModule
from superklr.klr_core import gdim
from superklr.root_data import root_data
from superklr.scalars import BiRational, LaurentPoly, RationalQ, q_fact, q_int

RD2 = root_data(2, 1)
RD3 = root_data(3, 1)

F0 = Fraction(0)
F1 = Fraction(1)

ONE = BiRational.one()


def one_over_one_minus_q2() -> RationalQ:
    return RationalQ.one() / RationalQ.from_laurent(
        LaurentPoly.one() - LaurentPoly.q_power(2))


# -- characters of column modules -----------------------------------------------------


def test_two_fermion_column_character():
    ch = C.ch_projective(RD2, (2, 2))
    expect = BiRational({0: RationalQ.one(), -1: RationalQ.one()})
    assert ch.terms == {(2, 2): expect}


def test_single_boson_column_character():
    ch = C.ch_projective(RD2, (1,))
    assert ch.terms == {(1,): BiRational.from_rational(one_over_one_minus_q2())}


def test_distant_pair_column_character_is_balanced():
    ch = C.ch_projective(RD3, (1, 3))
    assert set(ch.terms) == {(1, 3), (3, 1)}
    assert ch.coeff((1, 3)) == ch.coeff((3, 1))


def test_character_weight_consistency():
    ch = C.ch_projective(RD2, (1, 2))
    assert ch.weight(RD2) == {1: 1, 2: 1}
    mixed = Character({(1,): ONE, (2,): ONE})
    with pytest.raises(ValueError, match="weight"):
        mixed.weight(RD2)


def test_character_arithmetic_drops_zeros():
    a = Character.delta((1, 2))
    b = Character.delta((1, 2))
    assert (a - b).is_zero()
    assert (a + b).coeff((1, 2)) == ONE + ONE
    assert a.scale(BiRational.zero()).is_zero()


# -- the shuffle product ---------------------------------------------------------------


def test_shuffle_with_orthogonal_labels_is_untwisted():
    out = C.shuffle(RD3, Character.delta((1,)), Character.delta((3,)))
    assert out.terms == {(1, 3): ONE, (3, 1): ONE}


def test_shuffle_of_two_fermions_matches_column_character():
    out = C.shuffle(RD2, Character.delta((2,)), Character.delta((2,)))
    assert out == C.ch_projective(RD2, (2, 2)).scale(ONE) or \
        out.terms == C.ch_projective(RD2, (2, 2)).terms
    assert out.coeff((2, 2)) == BiRational(
        {0: RationalQ.one(), -1: RationalQ.one()})


def test_shuffle_of_adjacent_bosons_twists_by_q():
    out = C.shuffle(RD3, Character.delta((1,)), Character.delta((2,)))
    assert out.coeff((1, 2)) == ONE
    assert out.coeff((2, 1)) == ONE.mul_monomial(1, 0)  # -bullet(1,2) = 1


@pytest.mark.parametrize("rd", [RD2, RD3])
def test_shuffle_lemma_concatenation(rd):
    for s1 in (1, 2):
        for s2 in (1, 2):
            for w1 in rd.weights_of_size(s1):
                for w2 in rd.weights_of_size(s2):
                    for a in rd.words_of_weight(w1):
                        for b in rd.words_of_weight(w2):
                            lhs = C.shuffle(rd, C.ch_projective(rd, a),
                                            C.ch_projective(rd, b))
                            assert lhs == C.ch_projective(rd, a + b), (a, b)


def test_shuffle_is_associative_on_samples():
    samples = [Character.delta((1,)), Character.delta((2,)),
               C.ch_projective(RD2, (1, 2))]
    for a in samples:
        for b in samples:
            for c in samples:
                lhs = C.shuffle(RD2, C.shuffle(RD2, a, b), c)
                rhs = C.shuffle(RD2, a, C.shuffle(RD2, b, c))
                assert lhs == rhs


# -- restriction -------------------------------------------------------------------------


def test_restrict_filters_by_prefix_weight():
    ch = C.ch_projective(RD2, (1, 2))
    out = C.restrict_character(RD2, ch, {1: 1}, {2: 1})
    assert set(out) == {((1,), (2,))}
    assert out[((1,), (2,))] == ch.coeff((1, 2))


def test_restrict_partition_recovers_support():
    ch = C.ch_projective(RD2, (1, 2, 2))
    seen = set()
    for cut_weight in ({}, {1: 1}, {2: 1}, {1: 1, 2: 1}, {2: 2}, {1: 1, 2: 2}):
        rest = {i: ch.weight(RD2).get(i, 0) - cut_weight.get(i, 0)
                for i in ch.weight(RD2)}
        rest = {i: v for i, v in rest.items() if v}
        out = C.restrict_character(RD2, ch, cut_weight, rest)
        cut = sum(cut_weight.values())
        for (pre, suf) in out:
            assert len(pre) == cut
            seen.add(pre + suf)
    assert seen == set(ch.terms)


def test_restrict_rejects_weight_mismatch():
    ch = C.ch_projective(RD2, (1, 2))
    with pytest.raises(ValueError, match="weight"):
        C.restrict_character(RD2, ch, {1: 1}, {1: 1})


def _filtration_ok(rd, k, nu1, nu2):
    conc = C.ch_projective(rd, k)
    restricted = C.restrict_character(rd, conc, nu1, nu2)
    lefts = rd.words_of_weight(nu1)
    rights = rd.words_of_weight(nu2)
    for a in lefts:
        for b in rights:
            want = restricted.get((a, b), BiRational.zero())
            acc = BiRational.zero()
            for ap in lefts:
                for bp in rights:
                    s = C.shuffle(rd, Character.delta(ap),
                                  Character.delta(bp)).coeff(k)
                    if s.is_zero():
                        continue
                    acc = acc + s * gdim(rd, ap, a) * gdim(rd, bp, b)
            if acc != want:
                return False
    return True


def test_restriction_matches_interleaving_filtration():
    cases = []
    for nu in RD2.weights_of_size(3):
        for s1 in (1, 2):
            for nu1 in RD2.weights_of_size(s1):
                if any(nu1.get(i, 0) > nu.get(i, 0) for i in nu1):
                    continue
                nu2 = {i: nu[i] - nu1.get(i, 0) for i in nu}
                cases.append((RD2, nu, nu1, {i: v for i, v in nu2.items() if v}))
    cases.append((RD3, {1: 1, 2: 1, 3: 1}, {2: 1}, {1: 1, 3: 1}))
    for rd, nu, nu1, nu2 in cases:
        for k in rd.words_of_weight(nu):
            assert _filtration_ok(rd, k, nu1, nu2), (rd.m, k, nu1)


# -- specialization ----------------------------------------------------------------------


def test_specializing_adjacent_fermions_vanishes():
    assert C.specialize(C.ch_projective(RD2, (2, 2))) == {}


def test_specializing_single_boson():
    spec = C.specialize(C.ch_projective(RD2, (1,)))
    assert spec == {(1,): one_over_one_minus_q2()}


def test_specialization_commutes_with_shuffle():
    a = C.ch_projective(RD2, (1,))
    b = C.ch_projective(RD2, (2, 1))
    full = C.specialize(C.shuffle(RD2, a, b))
    # shuffle computed directly at t = -1: same interleavings, scalar weights
    spec_a = C.specialize(a)
    spec_b = C.specialize(b)
    acc: dict = {}
    for sa, ca in spec_a.items():
        for sb, cb in spec_b.items():
            inter = C.shuffle(RD2, Character.delta(sa), Character.delta(sb))
            for seq, w in inter.terms.items():
                term = w.specialize_t(-1) * ca * cb
                acc[seq] = acc.get(seq, RationalQ.zero()) + term
    acc = {k: v for k, v in acc.items() if not v.is_zero()}
    assert full == acc


# -- one-column simple modules -------------------------------------------------------


def test_fermionic_column_simple_is_two_dimensional():
    for k in (2, 3):
        mod = C.kato(RD2, 2, k)
        mod.check_axioms()
        assert mod.dim == 2
        assert mod.bidegrees == ((0, 0), (-1, 0))
        expect = BiRational({0: RationalQ.one(), -1: RationalQ.one()})
        assert mod.character().coeff((2,) * k) == expect


def test_fermionic_column_simple_is_acyclic_for_two_or_more():
    # the two-term complex with surjective differential has no cohomology
    for k in (2, 3):
        mod = C.kato(RD2, 2, k)
        assert dg.cohomology(mod.as_complex()) == {}


def test_single_strand_simples():
    for rd, label in ((RD2, 2), (RD2, 1), (RD3, 3), (RD3, 1)):
        mod = C.kato(rd, label, 1)
        mod.check_axioms()
        assert mod.dim == 1
        assert dg.cohomology(mod.as_complex()) == {(0, 0): 1}
        for mat in mod.dot:
            assert all(all(x == 0 for x in row) for row in mat)


def test_bosonic_column_simple_matches_hand_built_oracle():
    # independent 2-dim model: basis {1, x1} in the quotient where
    # x0 + x1 = 0 and x0*x1 = 0; psi acts by the divided difference
    zero2 = ((F0, F0), (F0, F0))
    oracle = KatoModule(
        rd=RD2, label=1, power=2,
        basis=("1", "x1"),
        bidegrees=((0, -2), (0, 0)),
        psi=(((F0, -F1), (F0, F0)),),
        dot=(((F0, F0), (-F1, F0)), ((F0, F0), (F1, F0))),
        diff=zero2,
    )
    oracle.check_axioms()
    built = C.kato(RD2, 1, 2)
    built.check_axioms()
    assert built.character() == oracle.character()
    assert built.dim == 2


@pytest.mark.parametrize("rd,label,k", [(RD2, 1, 2), (RD2, 1, 3),
                                        (RD3, 2, 2), (RD3, 2, 3)])
def test_bosonic_column_simple_character_formula(rd, label, k):
    mod = C.kato(rd, label, k)
    mod.check_axioms()
    assert mod.dim == 1 * __import__("math").factorial(k)
    want = RationalQ.from_laurent(
        q_fact(k) * LaurentPoly.q_power(-k * (k - 1) // 2))
    assert mod.character().coeff((label,) * k) == BiRational.from_rational(want)


def test_bosonic_column_simple_has_zero_differential():
    mod = C.kato(RD2, 1, 3)
    assert all(all(x == 0 for x in row) for row in mod.diff)
    dims = {}
    for bd in mod.bidegrees:
        dims[bd] = dims.get(bd, 0) + 1
    assert dg.cohomology(mod.as_complex()) == dims


def test_kato_input_validation():
    with pytest.raises(ValueError, match="index"):
        C.kato(RD2, 5, 2)
    with pytest.raises(ValueError, match="positive"):
        C.kato(RD2, 1, 0)


# -- quantum Serre identities at the specialized level -------------------------------


def test_serre_report_mixed_weight():
    rep = C.serre_checks(RD2, {1: 1, 2: 1})
    assert rep.ok
    assert rep.rank == rep.dim == 2


def test_serre_report_double_fermion():
    rep = C.serre_checks(RD2, {2: 2})
    assert rep.ok
    assert rep.adjacent_fermion_checked == 1
    assert rep.rank == rep.dim == 0


def test_serre_report_braid_weight():
    rep = C.serre_checks(RD3, {1: 2, 2: 1})
    assert rep.ok
    assert rep.serre_checked == 1
    assert rep.rank == rep.dim == 2


def test_serre_report_distant_weight():
    rep = C.serre_checks(RD3, {1: 1, 3: 1})
    assert rep.ok
    assert rep.distant_checked == 2  # both orders of the distant pair


def test_serre_report_embedded_cases():
    rep = C.serre_checks(RD2, {1: 2, 2: 2})
    assert rep.ok
    assert rep.adjacent_fermion_checked == 3
    assert rep.serre_checked == 2
    assert rep.rank == rep.dim == 1


@pytest.mark.parametrize("rd", [RD2, RD3])
def test_character_matrix_rank_is_dimension(rd):
    for size in (1, 2, 3):
        for nu in rd.weights_of_size(size):
            assert C.character_matrix_rank(rd, nu) == C.dim_f(rd, nu), nu


# -- the pairing on column classes ----------------------------------------------------


def test_pairing_of_empty_sequences_is_one():
    assert C.k0_pairing(RD2, (), ()) == RationalQ.one()


def test_pairing_of_bosonic_generators():
    assert C.k0_pairing(RD2, (1,), (1,)) == one_over_one_minus_q2()
    assert C.k0_pairing(RD3, (1,), (2,)) == RationalQ.zero()


def test_pairing_of_fermionic_generator_is_one():
    assert C.k0_pairing(RD2, (2,), (2,)) == RationalQ.one()
    assert C.k0_pairing(RD3, (3,), (3,)) == RationalQ.one()


@pytest.mark.parametrize("rd,nu", [
    (RD2, {1: 1, 2: 1}), (RD2, {1: 2}), (RD2, {2: 2}),
    (RD2, {1: 2, 2: 1}), (RD3, {1: 1, 2: 1, 3: 1}),
])
def test_adjointness_at_character_level(rd, nu):
    assert C.adjointness_checks(rd, nu) > 0


# -- serialization ----------------------------------------------------------------------


def test_character_json_round_trip():
    for src in ((1, 2), (2, 2), (1, 1)):
        ch = C.ch_projective(RD2, src)
        assert Character.from_json(ch.to_json()) == ch


def test_character_json_shape():
    data = C.ch_projective(RD2, (2, 2)).to_json()
    assert all(set(entry) == {"sequence", "t_exponent", "num", "den"}
               for entry in data)
    assert sorted(e["t_exponent"] for e in data) == [-1, 0]
