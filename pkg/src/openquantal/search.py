"""Summary: Exhaustive search for involutive quantal frames on a small frame, up to isomorphism.

Importance: Reproduces the independence examples for the axioms and looks for new ones, with
every witness passed through the theorem checks.
Alternatives: Hand-write candidate multiplication tables and check them one by one.
"""

from __future__ import annotations

import itertools
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from openquantal.bisections import multiplicativity_profile
from openquantal.errors import CapExceededError, InputError
from openquantal.iso import order_automorphisms
from openquantal.lattice import FiniteLattice, validate_frame
from openquantal.models import Finding
from openquantal.quantale import Quantale, derived_lemma_suite

logger = logging.getLogger(__name__)

FLAG_ALIASES = {
    "B": "B",
    "O": "O",
    "R": "R",
    "U": "U",
    "M": "multiplicative",
    "W": "weakly_multiplicative",
    "unital": "unital",
    "support": "support",
    "inverse": "inverse",
    "semiopen": "semiopen",
    "open": "open",
    "multiplicative": "multiplicative",
    "weakly_multiplicative": "weakly_multiplicative",
}
_NEGATIONS = ("¬", "!", "~")
_SEPARATOR = re.compile(r"\s*(?:∧|&|,|\band\b)\s*")


@dataclass(frozen=True)
class Literal:
    flag: str
    positive: bool

    def __str__(self) -> str:
        return self.flag if self.positive else f"¬{self.flag}"


@dataclass(frozen=True)
class AxiomPattern:
    """Summary: A conjunction of possibly negated classification flags.

    Importance: A literal whose flag is undefined (hypotheses unmet) matches neither way.
    Alternatives: Treat undefined flags as false.
    """

    text: str
    literals: tuple[Literal, ...]

    def matches(self, flags: Mapping[str, bool | None]) -> bool:
        for literal in self.literals:
            value = flags.get(literal.flag)
            if value is None or value != literal.positive:
                return False
        return True

    def __str__(self) -> str:
        return "∧".join(str(literal) for literal in self.literals)


def parse_pattern(text: str) -> AxiomPattern:
    """Summary: Parse patterns such as "B∧O∧U∧¬R" or "B & !U".

    Importance: Unknown flags are input errors, not silent mismatches.
    Alternatives: Accept a Python expression and evaluate it.
    """

    literals = []
    for token in _SEPARATOR.split(text.strip()):
        if not token:
            raise InputError("empty literal", location="pattern")
        positive = True
        while token[:1] in _NEGATIONS or token.startswith("not "):
            positive = not positive
            token = token[4:] if token.startswith("not ") else token[1:]
            token = token.strip()
        if token not in FLAG_ALIASES:
            raise InputError(f"unknown flag {token!r}", location="pattern")
        literals.append(Literal(FLAG_ALIASES[token], positive))
    return AxiomPattern(text, tuple(literals))


def frame_from_family(family: str) -> FiniteLattice:
    """Summary: Build "powerset:<atoms>" or "chain:<length>" frames for the search command.

    Importance: The common search targets need no structure file.
    Alternatives: Require a frame file for every search.
    """

    kind, _, argument = family.partition(":")
    if not argument.isdigit() or int(argument) < 1:
        raise InputError("expected powerset:<n> or chain:<n> with n >= 1", location="frame")
    size = int(argument)
    if kind == "powerset":
        return FiniteLattice.powerset([chr(ord("a") + offset) for offset in range(size)])
    if kind == "chain":
        return FiniteLattice.chain(size)
    raise InputError(f"unknown frame family {kind!r}", location="frame")


def _orbits(
    generators: Sequence[int], inv: Sequence[int]
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Generator pairs grouped with their partners (q*, p*) under the involution."""

    seen: set[tuple[int, int]] = set()
    orbits = []
    for p, q in itertools.product(generators, repeat=2):
        if (p, q) in seen:
            continue
        partner = (inv[q], inv[p])
        seen.update({(p, q), partner})
        orbits.append(((p, q), partner))
    return orbits


def _monotone(
    frame: FiniteLattice, values: Mapping[tuple[int, int], int], pair: tuple[int, int]
) -> bool:
    p, q = pair
    value = values[pair]
    for (r, s), other in values.items():
        if r == p:
            if frame.le(q, s) and not frame.le(value, other):
                return False
            if frame.le(s, q) and not frame.le(other, value):
                return False
        if s == q:
            if frame.le(p, r) and not frame.le(value, other):
                return False
            if frame.le(r, p) and not frame.le(other, value):
                return False
    return True


def _extend(frame: FiniteLattice, values: Mapping[tuple[int, int], int]) -> np.ndarray:
    generators = frame.join_irreducibles
    below = [[p for p in generators if frame.le(p, a)] for a in range(frame.n)]
    table = np.zeros((frame.n, frame.n), dtype=np.int64)
    for a in range(frame.n):
        for b in range(frame.n):
            table[a, b] = frame.join_all(values[(p, q)] for p in below[a] for q in below[b])
    return table


def _associative(table: np.ndarray) -> bool:
    ids = np.arange(table.shape[0])
    left = table[table[:, :, None], ids[None, None, :]]
    right = table[ids[:, None, None], table[None, :, :]]
    return bool((left == right).all())


def _walk(
    frame: FiniteLattice,
    inv: Sequence[int],
    orbits: Sequence[tuple[tuple[int, int], tuple[int, int]]],
    values: dict[tuple[int, int], int],
    position: int,
) -> Iterator[np.ndarray]:
    if position == len(orbits):
        table = _extend(frame, values)
        if _associative(table):
            yield table
        return
    pair, partner = orbits[position]
    for value in range(frame.n):
        if pair == partner and inv[value] != value:
            continue
        values[pair] = value
        values[partner] = inv[value]
        if _monotone(frame, values, pair) and _monotone(frame, values, partner):
            yield from _walk(frame, inv, orbits, values, position + 1)
        del values[pair]
        values.pop(partner, None)


def search_branch(
    names: Sequence[str], leq: Sequence[Sequence[bool]], inv: Sequence[int], first: int
) -> list[tuple[int, ...]]:
    """Summary: All associative tables whose first generator orbit takes the value `first`.

    Importance: The unit of parallel work; arguments and results are plain tuples so it runs
    in a worker process.
    Alternatives: Ship FiniteLattice objects across processes.
    """

    frame = FiniteLattice.from_leq(names, np.array(leq, dtype=bool))
    orbits = _orbits(frame.join_irreducibles, inv)
    pair, partner = orbits[0]
    if pair == partner and inv[first] != first:
        return []
    values = {pair: first, partner: inv[first]}
    if not (_monotone(frame, values, pair) and _monotone(frame, values, partner)):
        return []
    return [
        tuple(int(value) for value in table.ravel())
        for table in _walk(frame, inv, orbits, values, 1)
    ]


def _canonical(
    table: Sequence[int], inv: Sequence[int], automorphisms: Sequence[tuple[int, ...]]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    size = len(inv)
    square = np.array(table, dtype=np.int64).reshape(size, size)
    involution = np.array(inv, dtype=np.int64)
    candidates = []
    for automorphism in automorphisms:
        alpha = np.array(automorphism, dtype=np.int64)
        moved = np.empty_like(square)
        moved[np.ix_(alpha, alpha)] = alpha[square]
        moved_inv = np.empty_like(involution)
        moved_inv[alpha] = alpha[involution]
        candidates.append(
            (tuple(int(v) for v in moved_inv), tuple(int(v) for v in moved.ravel()))
        )
    return min(candidates)


def enumerate_structures(
    frame: FiniteLattice, *, cap: int, workers: int = 1
) -> list[Quantale]:
    """Summary: Every involutive quantal frame on `frame`, one per isomorphism class.

    Importance: Products are chosen on join-irreducibles in involution orbits and pruned by
    monotonicity; classes are canonical forms under the frame automorphisms, sorted.
    Alternatives: Enumerate all n^(n²) tables and test each.
    """

    if frame.n > cap:
        raise CapExceededError(f"structure search limited to frames with <= {cap} elements")
    validate_frame(frame).require()
    automorphisms = list(order_automorphisms(frame))
    involutions = [
        alpha for alpha in automorphisms if all(alpha[alpha[a]] == a for a in range(frame.n))
    ]
    if not frame.join_irreducibles:
        return [Quantale.build(frame, [[frame.bot]], [frame.bot], "S0")]
    leq = frame.leq_rows
    tasks = [(inv, first) for inv in involutions for first in range(frame.n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                (inv, pool.submit(search_branch, frame.names, leq, inv, first))
                for inv, first in tasks
            ]
            results = [(inv, future.result()) for inv, future in futures]
    else:
        results = [(inv, search_branch(frame.names, leq, inv, first)) for inv, first in tasks]

    classes = {
        _canonical(table, inv, automorphisms) for inv, tables in results for table in tables
    }
    structures = []
    for offset, (inv, table) in enumerate(sorted(classes)):
        square = np.array(table, dtype=np.int64).reshape(frame.n, frame.n)
        structures.append(Quantale.build(frame, square, inv, f"S{offset}"))
    logger.info(
        "Found %d structures up to isomorphism on a %d-element frame", len(structures), frame.n
    )
    return structures


def structure_flags(
    quantale: Quantale, subset_cap: int = 4
) -> tuple[dict[str, bool | None], list[Finding]]:
    """Classification flags with both multiplicativity notions filled in."""

    profile = multiplicativity_profile(quantale, subset_cap=subset_cap)
    flags = dict(quantale.classification.flags())
    flags.update(profile.flags())
    return flags, profile.findings


@dataclass(frozen=True)
class SearchResult:
    """Summary: Structures found, the witnesses matching a pattern, and theorem findings."""

    frame: FiniteLattice
    pattern: AxiomPattern
    structures: list[Quantale]
    witnesses: list[tuple[Quantale, dict[str, bool | None]]]
    findings: list[Finding] = field(default_factory=list)


def search(
    frame: FiniteLattice,
    pattern: AxiomPattern,
    *,
    cap: int,
    workers: int = 1,
    support_cap: int = 16,
    subset_cap: int = 4,
) -> SearchResult:
    """Summary: Enumerate, classify, and filter structures by an axiom pattern.

    Importance: Every enumerated structure runs the theorem checks, so a search also acts as
    a regression sweep.
    Alternatives: Check theorems only on matching witnesses.
    """

    structures = enumerate_structures(frame, cap=cap, workers=workers)
    witnesses = []
    red_flags: list[Finding] = []
    for quantale in structures:
        flags, findings = structure_flags(quantale, subset_cap)
        findings = findings + derived_lemma_suite(quantale, support_cap)
        red_flags.extend(
            Finding(
                finding.section,
                f"{quantale.title}: {finding.name}",
                finding.status,
                finding.witness,
                finding.detail,
                True,
            )
            for finding in findings
            if finding.red_flag
        )
        if pattern.matches(flags):
            witnesses.append((quantale, flags))
    logger.info("Pattern %s matched %d of %d structures", pattern, len(witnesses), len(structures))
    return SearchResult(frame, pattern, structures, witnesses, red_flags)
