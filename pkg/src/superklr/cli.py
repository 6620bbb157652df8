"""Batch command-line frontend exposing every computation of the package.

Thirteen subcommands cover the bilinear-form side (``form``, ``gram``,
``dim-fnu``, ``pbw``, ``radical-check``), the diagrammatic side
(``klr-gdim``, ``klr-rewrite``, ``klr-verify``), the character layer
(``char``, ``shuffle-check``, ``serre-check``) and the dg-algebra layer
(``dg-analyze``, ``kato``).  Output is machine readable (JSON, or CSV for
matrices) and byte-stable for fixed flags and seed.

Exit codes: 0 on success, 1 on a verification failure (the first
counterexample is printed, inputs and both sides), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bilinear_form import (dim_fnu, form_graphical, form_recursive,
                            gram_matrix, radical_contains)
from .characters import (ch_projective, character_matrix_rank, dim_f, kato,
                         serre_checks, shuffle, specialize)
from .dg_linalg import (FinDimDgAlgebra, NonSplitBlockError, classify,
                        cohomology, from_klr, ground_field, lambda_y,
                        smash_with_differential)
from .free_super import (FreeElement, TensorElement, coproduct, coproduct_at,
                         divided_power)
from .klr_core import (KlrElement, RawWord, basis_normal_forms, bidegree,
                       gdim, rewrite, tilde_e)
from .pbw import (comult_root_closed, defining_ideal_generators,
                  monomial_element, monomial_form_closed, root_vector,
                  straightening_elements)
from .polrep import UnsupportedRegimeError, oracle_check
from .root_data import RootData, root_data
from .scalars import LaurentPoly, RationalQ

OUTPUT_DIR_ENV = "SUPERKLR_OUTPUT_DIR"

KLR_SIDE = frozenset({"klr-gdim", "klr-rewrite", "klr-verify", "char",
                      "shuffle-check", "serre-check", "dg-analyze", "kato"})


class UsageError(ValueError):
    """Bad flag values; reported on stderr with exit code 2."""


class VerificationFailure(Exception):
    """A checked identity failed; the message holds the counterexample."""


@dataclass(frozen=True)
class JobConfig:
    """Common run parameters shared by every subcommand."""

    command: str
    m: int
    n: int
    nu: dict[int, int] | None
    fmt: str
    seed: int
    workers: int
    output: str | None

    def root_data(self) -> RootData:
        return root_data(self.m, self.n)


# -- flag parsing helpers ---------------------------------------------------------


def parse_weight(text: str, rd: RootData) -> dict[int, int]:
    """Parse ``i:mult,i:mult`` into a weight dictionary."""
    out: dict[int, int] = {}
    for chunk in text.split(","):
        head, sep, tail = chunk.partition(":")
        try:
            if not sep:
                raise ValueError
            index, mult = int(head), int(tail)
        except ValueError:
            raise UsageError(f"bad weight entry {chunk!r}; expected i:mult")
        if index not in rd.indices:
            raise UsageError(f"index {index} outside 1..{rd.m + rd.n - 1}")
        if mult < 0:
            raise UsageError(f"negative multiplicity in {chunk!r}")
        if index in out:
            raise UsageError(f"index {index} repeated in weight")
        if mult:
            out[index] = mult
    return out


def parse_sequence(text: str, rd: RootData) -> tuple[int, ...]:
    """Parse a comma-separated label list into a sequence."""
    try:
        seq = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad sequence {text!r}; expected comma-separated labels")
    for i in seq:
        if i not in rd.indices:
            raise UsageError(f"label {i} outside 1..{rd.m + rd.n - 1}")
    return seq


def parse_tokens(text: str) -> tuple[tuple[str, int], ...]:
    """Parse generator tokens like ``psi1,y2`` (topmost first)."""
    toks: list[tuple[str, int]] = []
    for chunk in text.split(","):
        kind = chunk.rstrip("0123456789")
        tail = chunk[len(kind):]
        if kind not in ("psi", "y") or not tail:
            raise UsageError(f"bad token {chunk!r}; expected psiK or yK")
        toks.append((kind, int(tail)))
    return tuple(toks)


def _config(args: argparse.Namespace) -> JobConfig:
    m = getattr(args, "m", None)
    n = getattr(args, "n", 1)
    if m is not None and m < 1:
        raise UsageError("--m must be at least 1")
    if n < 1:
        raise UsageError("--n must be at least 1")
    if args.command in KLR_SIDE and n != 1:
        raise UsageError(f"{args.command} requires --n 1")
    workers = getattr(args, "workers", None)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    rd = root_data(m, n) if m is not None else None
    nu_text = getattr(args, "nu", None)
    nu = parse_weight(nu_text, rd) if nu_text is not None and rd else None
    return JobConfig(command=args.command, m=m if m is not None else 0, n=n,
                     nu=nu, fmt=getattr(args, "format", "json"),
                     seed=getattr(args, "seed", 0), workers=workers,
                     output=getattr(args, "output", None))


# -- output plumbing --------------------------------------------------------------


def _emit(cfg: JobConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output is None:
        sys.stdout.write(text)
        return
    path = Path(cfg.output)
    if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv_matrix(labels: list[str], rows: list[list[str]]) -> str:
    import csv
    import io
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + labels)
    for label, row in zip(labels, rows):
        writer.writerow([label] + row)
    return buf.getvalue()


def _pmap(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _seq_label(seq: tuple[int, ...]) -> str:
    return " ".join(map(str, seq))


# -- bilinear-form subcommands -----------------------------------------------------


def _cmd_form(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    if args.nu is not None:
        if args.a or args.b:
            raise UsageError("--nu (verify mode) excludes --a/--b")
        words = rd.words_of_weight(cfg.nu)
        checked = 0
        for a in words:
            for b in words:
                rec = form_recursive(rd, a, b)
                gra = form_graphical(rd, a, b)
                if rec != gra:
                    _emit(cfg, f"counterexample a={list(a)} b={list(b)}: "
                               f"recursive={rec} graphical={gra}")
                    return 1
                sym = form_recursive(rd, b, a)
                if rec != sym:
                    _emit(cfg, f"counterexample a={list(a)} b={list(b)}: "
                               f"(a,b)={rec} (b,a)={sym}")
                    return 1
                checked += 1
        _emit(cfg, f"form agreement: {checked} pairs ok")
        return 0
    if not args.a or not args.b:
        raise UsageError("form needs --a and --b (or --nu for verify mode)")
    a = parse_sequence(args.a, rd)
    b = parse_sequence(args.b, rd)
    if rd.weight_of_word(a) != rd.weight_of_word(b):
        _emit(cfg, "0")
        return 0
    values: dict[str, RationalQ] = {}
    if args.method in ("both", "recursive"):
        values["recursive"] = form_recursive(rd, a, b)
    if args.method in ("both", "graphical"):
        values["graphical"] = form_graphical(rd, a, b)
    if len(values) == 2 and values["recursive"] != values["graphical"]:
        _emit(cfg, f"counterexample a={list(a)} b={list(b)}: "
                   f"recursive={values['recursive']} "
                   f"graphical={values['graphical']}")
        return 1
    _emit(cfg, str(next(iter(values.values()))))
    return 0


def _cmd_gram(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    words = rd.words_of_weight(cfg.nu)
    rows = _pmap(lambda a: [form_recursive(rd, a, b) for b in words],
                 words, cfg.workers)
    if cfg.fmt == "csv":
        text = _csv_matrix([_seq_label(w) for w in words],
                           [[str(r) for r in row] for row in rows])
    else:
        text = _dumps({"words": [list(w) for w in words],
                       "matrix": [[r.to_json() for r in row] for row in rows]})
    _emit(cfg, text)
    return 0


def _cmd_dim_fnu(cfg: JobConfig, args: argparse.Namespace) -> int:
    _emit(cfg, str(dim_fnu(cfg.root_data(), cfg.nu)))
    return 0


def _tensor2(rd: RootData, x: FreeElement, y: FreeElement) -> TensorElement:
    return TensorElement(rd, 2, {
        (wa, wb): ca * cb
        for wa, ca in x.terms.items() for wb, cb in y.terms.items()})


def _check_pbw_gram(rd: RootData, max_size: int) -> int:
    checked = 0
    for size in range(1, max_size + 1):
        for nu in rd.weights_of_size(size):
            mons = rd.pbw_monomials(nu)
            elts = [monomial_element(rd, mon) for mon in mons]
            for i, a in enumerate(mons):
                for j, b in enumerate(mons):
                    got = form_recursive(rd, elts[i], elts[j])
                    expect = monomial_form_closed(rd, a, b)
                    if got != expect:
                        raise VerificationFailure(
                            f"monomials {a} | {b}: form={got} closed={expect}")
                    checked += 1
    return checked


def _check_pbw_rank(rd: RootData, max_size: int) -> int:
    checked = 0
    for size in range(1, max_size + 1):
        for nu in rd.weights_of_size(size):
            rank = dim_fnu(rd, nu)
            count = len(rd.pbw_monomials(nu))
            if rank != count:
                raise VerificationFailure(
                    f"weight {sorted(nu.items())}: word-Gram rank {rank} "
                    f"!= {count} monomials")
            checked += 1
    return checked


def _check_pbw_divided(rd: RootData, max_power: int) -> int:
    checked = 0
    for i in rd.indices:
        for p in range(1, max_power + 1):
            theta = divided_power(i, p)
            got = form_recursive(rd, theta, theta)
            if rd.parity(i):
                expect = RationalQ.one() if p == 1 else RationalQ.zero()
            else:
                # product over s of 1/(1 - q^(s * i bullet i))
                bb = rd.bullet(i, i)
                expect = RationalQ.one()
                for s in range(1, p + 1):
                    expect = expect / RationalQ(
                        LaurentPoly.one() - LaurentPoly.q_power(bb * s))
            if got != expect:
                raise VerificationFailure(
                    f"divided power i={i} p={p}: form={got} closed={expect}")
            checked += 1
    return checked


def _check_pbw_comult(rd: RootData, max_size: int) -> int:
    checked = 0
    for root in rd.roots():
        if root[1] - root[0] + 1 > max_size:
            continue
        actual = coproduct(rd, root_vector(rd, root))
        expect = TensorElement(rd, 2)
        for left, right, coeff in comult_root_closed(rd, root):
            lv = root_vector(rd, left) if left else FreeElement.unit()
            rv = root_vector(rd, right) if right else FreeElement.unit()
            expect = expect + _tensor2(rd, lv, rv).scale(coeff)
        # the closed form is an identity in the quotient by the radical:
        # the difference must pair to zero against every word tensor, split
        # by the weight of each factor so only matching weights are paired
        delta = actual - expect
        by_split: dict[tuple, list] = {}
        for (wl, wr), coeff in delta.terms.items():
            split = (tuple(sorted(rd.weight_of_word(wl).items())),
                     tuple(sorted(rd.weight_of_word(wr).items())))
            by_split.setdefault(split, []).append(((wl, wr), coeff))
        for (wtl, wtr), terms in sorted(by_split.items()):
            for ul in rd.words_of_weight(dict(wtl)):
                for ur in rd.words_of_weight(dict(wtr)):
                    total = RationalQ.zero()
                    for (vl, vr), c in terms:
                        total = total + (c * form_recursive(rd, ul, vl)
                                         * form_recursive(rd, ur, vr))
                    if not total.is_zero():
                        raise VerificationFailure(
                            f"root {root}: coproduct differs from closed "
                            f"form against {ul} (x) {ur}: {total}")
                    checked += 1
        checked += 1
    return checked


def _check_pbw_coassoc(rd: RootData, max_size: int) -> int:
    checked = 0
    for size in range(1, max_size + 1):
        for nu in rd.weights_of_size(size):
            for w in rd.words_of_weight(nu):
                t = coproduct(rd, FreeElement.word(w))
                once = coproduct_at(t, 0)
                twice = coproduct_at(t, 1)
                direct = coproduct(rd, FreeElement.word(w), times=2)
                if once != twice or once != direct:
                    raise VerificationFailure(
                        f"coassociativity fails on word {list(w)}")
                checked += 1
    return checked


def _check_pbw_homo(rd: RootData, max_size: int) -> int:
    checked = 0
    words = [w for size in range(1, max_size + 1)
             for nu in rd.weights_of_size(size)
             for w in rd.words_of_weight(nu)]
    for wa in words:
        for wb in words:
            x = FreeElement.word(wa)
            y = FreeElement.word(wb)
            lhs = coproduct(rd, x * y)
            rhs = coproduct(rd, x) * coproduct(rd, y)
            if lhs != rhs:
                raise VerificationFailure(
                    f"coproduct not multiplicative on {list(wa)} * {list(wb)}")
            checked += 1
    return checked


PBW_JOBS = ("gram", "rank", "divided", "comult", "coassoc", "homo")


def _cmd_pbw(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    if args.verify is None:
        if cfg.nu is None:
            raise UsageError("pbw needs --nu (or --verify)")
        mons = rd.pbw_monomials(cfg.nu)
        payload = {"count": len(mons),
                   "monomials": [[[list(root), mult] for root, mult in mon]
                                 for mon in mons]}
        _emit(cfg, _dumps(payload))
        return 0
    jobs = PBW_JOBS if args.verify == "all" else tuple(args.verify.split(","))
    for job in jobs:
        if job not in PBW_JOBS:
            raise UsageError(f"unknown pbw verify job {job!r}; "
                             f"choose from {', '.join(PBW_JOBS)}")
    lines = []
    try:
        for job in jobs:
            if job == "gram":
                k = _check_pbw_gram(rd, args.max_size)
            elif job == "rank":
                k = _check_pbw_rank(rd, args.max_size)
            elif job == "divided":
                k = _check_pbw_divided(rd, args.max_power)
            elif job == "comult":
                k = _check_pbw_comult(rd, args.max_size)
            elif job == "coassoc":
                k = _check_pbw_coassoc(rd, min(args.max_size, 3))
            else:
                k = _check_pbw_homo(rd, min(args.max_size, 2))
            lines.append(f"pbw {job}: {k} checks ok")
    except VerificationFailure as exc:
        lines.append(f"counterexample: {exc}")
        _emit(cfg, "\n".join(lines))
        return 1
    _emit(cfg, "\n".join(lines))
    return 0


def _cmd_radical_check(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    elements = defining_ideal_generators(rd)
    elements += straightening_elements(rd, args.max_size)
    for k, x in enumerate(elements):
        if not radical_contains(rd, x):
            words = sorted(x.terms)
            _emit(cfg, f"counterexample: element {k} with words "
                       f"{[list(w) for w in words]} is not in the radical")
            return 1
    _emit(cfg, f"radical-check: {len(elements)} elements in radical ok")
    return 0


# -- diagrammatic subcommands -------------------------------------------------------


def _cmd_klr_gdim(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    if args.verify:
        if cfg.nu is None:
            raise UsageError("klr-gdim --verify needs --nu")
        words = rd.words_of_weight(cfg.nu)
        pairs = [(a, b) for a in words for b in words]

        def check(pair):
            a, b = pair
            got = gdim(rd, a, b).specialize_t(-1)
            expect = form_recursive(rd, b, a)
            return pair, got, expect

        for pair, got, expect in _pmap(check, pairs, cfg.workers):
            if got != expect:
                _emit(cfg, f"counterexample src={list(pair[0])} "
                           f"tgt={list(pair[1])}: gdim(t=-1)={got} "
                           f"form={expect}")
                return 1
        rank = character_matrix_rank(rd, cfg.nu)
        dim = dim_f(rd, cfg.nu)
        if rank != dim:
            _emit(cfg, f"counterexample: character matrix rank {rank} != "
                       f"dim {dim}")
            return 1
        _emit(cfg, f"klr-gdim verify: {len(pairs)} pairs ok, rank {rank} == "
                   f"dim {dim}")
        return 0
    if not args.src or not args.tgt:
        raise UsageError("klr-gdim needs --src and --tgt (or --nu --verify)")
    src = parse_sequence(args.src, rd)
    tgt = parse_sequence(args.tgt, rd)
    _emit(cfg, str(gdim(rd, src, tgt)))
    return 0


def _element_json(x: KlrElement) -> list[dict]:
    out = []
    for nf in sorted(x.terms):
        out.append({"src": list(nf.src), "word": list(nf.word),
                    "dots": list(nf.dots), "coeff": x.terms[nf]})
    return out


def _cmd_klr_rewrite(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    src = parse_sequence(args.src, rd)
    tokens = parse_tokens(args.tokens) if args.tokens else ()
    raw = RawWord(tokens, src)
    try:
        right = rewrite(rd, raw, "right")
        left = rewrite(rd, raw, "left")
    except ValueError as exc:
        raise UsageError(str(exc))
    if right != left:
        _emit(cfg, f"counterexample tokens={args.tokens} src={list(src)}: "
                   f"right={_element_json(right)} left={_element_json(left)}")
        return 1
    _emit(cfg, _dumps(_element_json(right)))
    return 0


# -- fuzzed engine self-checks ------------------------------------------------------


def _all_words(rd: RootData, max_size: int) -> list[tuple[int, ...]]:
    return [w for size in range(1, max_size + 1)
            for nu in rd.weights_of_size(size)
            for w in rd.words_of_weight(nu)]


def _random_raw(rng: random.Random, src: tuple[int, ...],
                max_tokens: int = 5) -> RawWord:
    d = len(src)
    toks = []
    for _ in range(rng.randint(0, max_tokens)):
        kind = "y" if d == 1 else rng.choice(("psi", "y"))
        top = d - 1 if kind == "psi" else d
        toks.append((kind, rng.randint(1, top)))
    return RawWord(tuple(toks), src)


def _random_basis_element(rng: random.Random, rd: RootData,
                          src: tuple[int, ...]) -> KlrElement | None:
    """A single normal-form basis diagram with the given source."""
    perm = list(src)
    rng.shuffle(perm)
    forms = list(basis_normal_forms(rd, src, tuple(perm), max_dot_degree=2))
    if not forms:
        return None
    return KlrElement(rd, {rng.choice(forms): 1})


def _check_confluence(rd, rng, words, trials):
    for _ in range(trials):
        raw = _random_raw(rng, rng.choice(words))
        if rewrite(rd, raw, "right") != rewrite(rd, raw, "left"):
            raise VerificationFailure(
                f"strategies disagree on tokens={raw.tokens} src={raw.src}")
    return trials


def _check_assoc(rd, rng, words, trials):
    done = 0
    while done < trials:
        a = _random_basis_element(rng, rd, rng.choice(words))
        if a is None or a.is_zero():
            continue
        src_a = next(iter(a.terms)).src
        b = _random_basis_element(rng, rd, _shuffled(rng, src_a))
        c = _random_basis_element(rng, rd, _shuffled(rng, src_a))
        if b is None or c is None:
            continue
        if (a * b) * c != a * (b * c):
            raise VerificationFailure(
                f"associativity fails on {a.terms} | {b.terms} | {c.terms}")
        done += 1
    return done


def _shuffled(rng: random.Random, seq: tuple[int, ...]) -> tuple[int, ...]:
    out = list(seq)
    rng.shuffle(out)
    return tuple(out)


def _homogeneous_pair(rng, rd, words):
    """Two composable single-diagram elements (b feeds into a)."""
    while True:
        a = _random_basis_element(rng, rd, rng.choice(words))
        if a is None:
            continue
        nf_a = next(iter(a.terms))
        forms = list(basis_normal_forms(rd, _shuffled(rng, nf_a.src),
                                        nf_a.src, max_dot_degree=2))
        if not forms:
            continue
        nf_b = rng.choice(forms)
        return a, KlrElement(rd, {nf_b: 1}), nf_a, nf_b


def _check_dg(rd, rng, words, trials):
    for _ in range(trials):
        x = rewrite(rd, _random_raw(rng, rng.choice(words)))
        if not x.differential().differential().is_zero():
            raise VerificationFailure(f"d^2 != 0 on {x.terms}")
        a, b, nf_a, _ = _homogeneous_pair(rng, rd, words)
        sign = -1 if bidegree(rd, nf_a)[0] % 2 else 1
        lhs = (a * b).differential()
        rhs = a.differential() * b + (a * b.differential()).scale(sign)
        if lhs != rhs:
            raise VerificationFailure(
                f"Leibniz fails on {nf_a} | {next(iter(b.terms))}")
    return trials


def _check_sigma(rd, rng, words, trials):
    for _ in range(trials):
        x = rewrite(rd, _random_raw(rng, rng.choice(words)))
        if x.sigma().sigma() != x:
            raise VerificationFailure(f"sigma^2 != id on {x.terms}")
        if x.differential().sigma() != x.sigma().differential():
            raise VerificationFailure(f"sigma d != d sigma on {x.terms}")
        a, b, nf_a, nf_b = _homogeneous_pair(rng, rd, words)
        sign = (-1) ** (bidegree(rd, nf_a)[0] * bidegree(rd, nf_b)[0])
        if (a * b).sigma() != (b.sigma() * a.sigma()).scale(sign):
            raise VerificationFailure(
                f"sigma not an anti-involution on {nf_a} | {nf_b}")
    return trials


def _divided_sequences(rd: RootData, max_size: int):
    """All divided sequences ((i, mult), ...) with total size bounded."""
    out = []

    def rec(acc, size):
        if acc:
            out.append(tuple(acc))
        for i in rd.indices:
            if acc and acc[-1][0] == i:
                continue
            top = 1 if rd.parity(i) else max_size - size
            for mult in range(1, top + 1):
                if size + mult > max_size:
                    break
                acc.append((i, mult))
                rec(acc, size + mult)
                acc.pop()

    rec([], 0)
    return out


def _check_tilde(rd, rng, words, trials):
    checked = 0
    for blocks in _divided_sequences(rd, 3):
        e = tilde_e(rd, blocks)
        if e * e != e:
            raise VerificationFailure(f"tilde e not idempotent on {blocks}")
        if not e.differential().is_zero():
            raise VerificationFailure(f"tilde e not d-closed on {blocks}")
        checked += 1
    return checked


def _check_polrep(rd, rng, words, trials):
    eligible = [w for w in words if sum(1 for i in w if i == rd.m) <= 1]
    for _ in range(trials):
        raw = _random_raw(rng, rng.choice(eligible))
        if not oracle_check(rd, raw):
            raise VerificationFailure(
                f"polynomial action disagrees on tokens={raw.tokens} "
                f"src={raw.src}")
    return trials


KLR_CHECKS = {"confluence": _check_confluence, "assoc": _check_assoc,
              "dg": _check_dg, "sigma": _check_sigma, "tilde": _check_tilde,
              "polrep": _check_polrep}


def _cmd_klr_verify(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    names = tuple(KLR_CHECKS) if args.checks == "all" else tuple(args.checks.split(","))
    for name in names:
        if name not in KLR_CHECKS:
            raise UsageError(f"unknown check {name!r}; choose from "
                             f"{', '.join(KLR_CHECKS)}")
    words = _all_words(rd, args.size)
    lines = []
    for name in names:
        rng = random.Random(f"{cfg.seed}:{name}")
        try:
            k = KLR_CHECKS[name](rd, rng, words, args.trials)
        except VerificationFailure as exc:
            lines.append(f"counterexample in {name}: {exc}")
            _emit(cfg, "\n".join(lines))
            return 1
        lines.append(f"klr-verify {name}: {k} cases ok")
    _emit(cfg, "\n".join(lines))
    return 0


# -- character subcommands ----------------------------------------------------------


def _cmd_char(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    src = parse_sequence(args.src, rd)
    c = ch_projective(rd, src)
    if args.specialize:
        spec = specialize(c)
        payload = [{"sequence": list(seq), **spec[seq].to_json()}
                   for seq in sorted(spec)]
    else:
        payload = c.to_json()
    _emit(cfg, _dumps(payload))
    return 0


def _cmd_shuffle_check(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    lefts = [w for nu in rd.weights_of_size(args.size1)
             for w in rd.words_of_weight(nu)]
    rights = [w for nu in rd.weights_of_size(args.size2)
              for w in rd.words_of_weight(nu)]
    checked = 0
    for a in lefts:
        for b in rights:
            got = shuffle(rd, ch_projective(rd, a), ch_projective(rd, b))
            expect = ch_projective(rd, a + b)
            if got != expect:
                _emit(cfg, f"counterexample a={list(a)} b={list(b)}: "
                           f"shuffle={got!r} concatenation={expect!r}")
                return 1
            checked += 1
    _emit(cfg, f"shuffle-check: {checked} products ok")
    return 0


def _cmd_serre_check(cfg: JobConfig, args: argparse.Namespace) -> int:
    report = serre_checks(cfg.root_data(), cfg.nu)
    payload = {"weight": ",".join(f"{i}:{k}" for i, k in report.weight),
               "adjacent_fermion_checked": report.adjacent_fermion_checked,
               "distant_checked": report.distant_checked,
               "serre_checked": report.serre_checked,
               "rank": report.rank, "dim": report.dim, "ok": report.ok}
    _emit(cfg, _dumps(payload))
    return 0 if report.ok else 1


# -- dg subcommands -----------------------------------------------------------------


def _smash_as_plain_dg() -> FinDimDgAlgebra:
    plain = smash_with_differential(lambda_y())
    n = len(plain.names)
    return FinDimDgAlgebra(plain.names, [(0, 0)] * n, plain.mult,
                           [[Fraction(0)] * n for _ in range(n)], plain.unit)


BUILTIN_ALGEBRAS = {"ground": ground_field, "lambda-y": lambda_y,
                    "smash-lambda": _smash_as_plain_dg}


def _cmd_dg_analyze(cfg: JobConfig, args: argparse.Namespace) -> int:
    sources = [s for s in (args.from_klr, args.json_file, args.builtin)
               if s not in (None, False)]
    if len(sources) != 1:
        raise UsageError("dg-analyze needs exactly one of --from-klr, "
                         "--json, --builtin")
    if args.from_klr:
        if cfg.nu is None:
            raise UsageError("dg-analyze --from-klr needs --m and --nu")
        try:
            algebra = from_klr(cfg.root_data(), cfg.nu)
        except ValueError as exc:
            raise UsageError(str(exc))
    elif args.builtin:
        if args.builtin not in BUILTIN_ALGEBRAS:
            raise UsageError(f"unknown builtin {args.builtin!r}; choose from "
                             f"{', '.join(BUILTIN_ALGEBRAS)}")
        algebra = BUILTIN_ALGEBRAS[args.builtin]()
    else:
        try:
            data = json.loads(Path(args.json_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.json_file}: {exc}")
        algebra = FinDimDgAlgebra.from_json(data)
    try:
        analysis = classify(algebra)
    except NonSplitBlockError as exc:
        _emit(cfg, f"verification failure: {exc}")
        return 1
    payload = {"m_I": analysis.m_I, "m_II": analysis.m_II,
               "k0_rank": analysis.k0_rank}
    if args.full:
        payload.update({"g0_rank": analysis.g0_rank,
                        "blocks": analysis.blocks,
                        "abullet_dim": analysis.abullet_dim,
                        "jbullet_dim": len(analysis.jbullet),
                        "dim": algebra.dim})
    _emit(cfg, _dumps(payload))
    return 0


def _cmd_kato(cfg: JobConfig, args: argparse.Namespace) -> int:
    rd = cfg.root_data()
    if args.label not in rd.indices:
        raise UsageError(f"label {args.label} outside 1..{rd.m}")
    if args.power < 1:
        raise UsageError("--power must be at least 1")
    module = kato(rd, args.label, args.power)
    payload = {"label": args.label, "power": args.power,
               "dim": len(module.basis),
               "bidegrees": [list(b) for b in module.bidegrees],
               "character": module.character().to_json(),
               "cohomology": {f"{d1},{d2}": dim for (d1, d2), dim in
                              sorted(cohomology(module.as_complex()).items())}}
    if args.check:
        try:
            module.check_axioms()
        except ValueError as exc:
            _emit(cfg, f"counterexample: {exc}")
            return 1
        payload["axioms"] = "ok"
    _emit(cfg, _dumps(payload))
    return 0


# -- parser -------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *, need_m=True, need_n=True,
                nu=False, fmt=False, seed=False, workers=False) -> None:
    if need_m:
        p.add_argument("--m", type=int, required=True,
                       help="number of labels before the fermionic one")
    if need_n:
        p.add_argument("--n", type=int, default=1,
                       help="labels from the fermionic one on (default 1)")
    if nu:
        p.add_argument("--nu", help="weight as i:mult,i:mult")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if workers:
        p.add_argument("--workers", type=int, default=None,
                       help="worker threads (default: available parallelism)")
    p.add_argument("--output", default=None,
                   help=f"write to this file instead of stdout; relative "
                        f"paths resolve under ${OUTPUT_DIR_ENV} when set")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superklr",
        description="Exact computations in the halved quantum superalgebra "
                    "and its diagrammatic categorification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("form", help="bilinear form of two sequences")
    _add_common(p, nu=True)
    p.add_argument("--a", help="first sequence, comma separated")
    p.add_argument("--b", help="second sequence, comma separated")
    p.add_argument("--method", choices=("both", "recursive", "graphical"),
                   default="both")

    p = sub.add_parser("gram", help="Gram matrix of all sequences of a weight")
    _add_common(p, nu=True, fmt=True, workers=True)

    p = sub.add_parser("dim-fnu", help="dimension of a weight space")
    _add_common(p, nu=True)

    p = sub.add_parser("pbw", help="restricted monomials; closed-form checks")
    _add_common(p, nu=True)
    p.add_argument("--verify", help=f"comma list from: {', '.join(PBW_JOBS)}; "
                                    f"or 'all'")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--max-power", type=int, default=3)

    p = sub.add_parser("radical-check",
                       help="ideal generators and straightening elements "
                            "pair to zero with everything")
    _add_common(p)
    p.add_argument("--max-size", type=int, default=4)

    p = sub.add_parser("klr-gdim", help="graded dimension of a pair block")
    _add_common(p, nu=True, workers=True)
    p.add_argument("--src", help="bottom sequence")
    p.add_argument("--tgt", help="top sequence")
    p.add_argument("--verify", action="store_true",
                   help="check gdim(t=-1) = form on all pairs of --nu")

    p = sub.add_parser("klr-rewrite", help="normal form of a generator word")
    _add_common(p)
    p.add_argument("--src", required=True, help="bottom sequence")
    p.add_argument("--tokens", default="",
                   help="generators topmost first, e.g. psi1,y2")

    p = sub.add_parser("klr-verify", help="fuzzed engine self-checks")
    _add_common(p, seed=True)
    p.add_argument("--size", type=int, default=3, help="max weight size")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--checks", default="all",
                   help=f"comma list from: {', '.join(KLR_CHECKS)}")

    p = sub.add_parser("char", help="bigraded character of a column module")
    _add_common(p)
    p.add_argument("--src", required=True, help="sequence, comma separated")
    p.add_argument("--specialize", action="store_true",
                   help="evaluate at t = -1")

    p = sub.add_parser("shuffle-check",
                       help="shuffle product matches concatenation")
    _add_common(p)
    p.add_argument("--size1", type=int, required=True)
    p.add_argument("--size2", type=int, required=True)

    p = sub.add_parser("serre-check",
                       help="specialized Serre identities inside a weight")
    _add_common(p, nu=True)

    p = sub.add_parser("dg-analyze", help="classify a dg algebra")
    _add_common(p, need_m=False)
    p.add_argument("--m", type=int, help="labels before the fermionic one")
    p.add_argument("--from-klr", action="store_true",
                   help="analyze the diagram algebra of --nu (fermionic "
                        "weights only)")
    p.add_argument("--nu", help="weight as i:mult,i:mult")
    p.add_argument("--json", dest="json_file",
                   help="load an algebra from a JSON file")
    p.add_argument("--builtin", help=f"one of: {', '.join(BUILTIN_ALGEBRAS)}")
    p.add_argument("--full", action="store_true",
                   help="include block and dimension details")

    p = sub.add_parser("kato", help="the distinguished module on one label")
    _add_common(p)
    p.add_argument("--label", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--check", action="store_true",
                   help="verify the module axioms")

    return parser


HANDLERS = {
    "form": _cmd_form,
    "gram": _cmd_gram,
    "dim-fnu": _cmd_dim_fnu,
    "pbw": _cmd_pbw,
    "radical-check": _cmd_radical_check,
    "klr-gdim": _cmd_klr_gdim,
    "klr-rewrite": _cmd_klr_rewrite,
    "klr-verify": _cmd_klr_verify,
    "char": _cmd_char,
    "shuffle-check": _cmd_shuffle_check,
    "serre-check": _cmd_serre_check,
    "dg-analyze": _cmd_dg_analyze,
    "kato": _cmd_kato,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return HANDLERS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
