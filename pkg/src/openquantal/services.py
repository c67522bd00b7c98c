"""Summary: Orchestration services producing reports for every OpenQuantal command.

Importance: The CLI and the API share one implementation of each command.
Alternatives: Call the checkers directly from each entry point.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Mapping

from openquantal.bisections import (
    Bisection,
    MultiplicativityProfile,
    bisection_laws,
    bisection_table,
    enumerate_bisections,
    multiplicativity_profile,
    spatial_oracle_check,
    sufficient_condition_check,
    xi_isomorphism,
)
from openquantal.config import AppConfig
from openquantal.cover import (
    CoverData,
    build_cover,
    cover_functor,
    embeddability_check,
    enough_bisections_findings,
    eta_checks,
    ideal_check,
    weak_embeddability_check,
)
from openquantal.errors import InputError, PreconditionError
from openquantal.groupoid import (
    SemigroupAction,
    TopGroupoid,
    germ_groupoid,
    germ_groupoid_direct,
    groupoid_of,
    natural_action_check,
    points,
    quantale_of,
    quantale_of_checks,
    roundtrip_check,
)
from openquantal.iso import semigroup_isomorphism
from openquantal.lattice import FiniteLattice, validate_frame
from openquantal.models import Finding, Report, Status, Verdict
from openquantal.quantale import Quantale, derived_lemma_suite
from openquantal.report import report_from_dict, report_to_dict
from openquantal.search import frame_from_family, parse_pattern, search
from openquantal.semigroup import (
    Completion,
    InverseSemigroup,
    acp_check,
    completion_checks,
    lcc_completion,
    partial_units_semigroup,
)
from openquantal.storage.sqlite_store import ReportStore, StoredReport
from openquantal.structure_file import StructureFile, Subject, to_document
from openquantal.tensor import (
    TensorLattice,
    brute_force_adjoint,
    mu0_star,
    pushout_oracle,
    quotient_oracle,
    semicategory_check,
)

logger = logging.getLogger(__name__)

CLASSIFICATION_SECTIONS = frozenset({"axioms", "groupoid", "frame", "semigroup", "action"})
CONVERSION_TARGETS = ("quantale", "groupoid", "inverse_semigroup", "cover")

QUANTALE_FLAGS = (
    "B",
    "O",
    "R",
    "U",
    "unital",
    "support",
    "inverse",
    "semiopen",
    "open",
    "multiplicative",
    "weakly_multiplicative",
    "enough_bisections",
    "weakly_embeddable",
    "embeddable",
)
GROUPOID_FLAGS = ("d_open", "etale", "m_open", "u_open", "cover_iso")
FRAME_FLAGS = ("distributive", "boolean", "spatial")
SEMIGROUP_FLAGS = ("acp",)
ACTION_FLAGS = ("natural",)

Flags = dict[str, bool | None]


@contextmanager
def _timed(report: Report, stage: str) -> Iterator[None]:
    started = time.perf_counter()
    try:
        yield
    finally:
        report.timing[stage] = round(time.perf_counter() - started, 6)


def _negative(report: Report) -> bool:
    return any(
        finding.status is Status.FAIL and not finding.red_flag
        for finding in report.findings
        if finding.section in CLASSIFICATION_SECTIONS
    )


def _theorem(section: str, name: str, holds: bool, detail: str = "") -> Finding:
    verdict = Verdict.ok() if holds else Verdict.fail(detail=detail)
    return Finding.from_verdict(section, name, verdict, theorem=True)


def compare_expected(
    expected: Mapping[str, bool], flags: Mapping[str, bool | None], source: str
) -> list[Finding]:
    """Summary: Compare the expected classification of a file with the computed flags.

    Importance: A mismatch is a red flag; an expected flag that the kind never computes is
    an input error naming the field.
    Alternatives: Ignore unknown expectations.
    """

    findings = []
    for flag, wanted in expected.items():
        if flag not in flags:
            raise InputError(f"unknown flag {flag!r}", location=f"{source}:expected.{flag}")
        actual = flags[flag]
        name = f"{flag} = {str(wanted).lower()}"
        if actual is None:
            verdict = Verdict.fail(detail="hypotheses unmet, flag undetermined")
        elif actual == wanted:
            verdict = Verdict.ok()
        else:
            verdict = Verdict.fail(detail=f"computed {str(actual).lower()}")
        findings.append(Finding.from_verdict("expected", name, verdict, theorem=True))
    return findings


@dataclass(frozen=True)
class SuiteOutcome:
    """Summary: Findings, flags, and printable values of one checker suite."""

    findings: list[Finding]
    flags: Flags
    values: dict[str, Any]
    cover: CoverData | None = None
    bisections: tuple[Bisection, ...] | None = None


@dataclass(frozen=True)
class QuantaleSuite:
    """Summary: The full applicable check suite for one quantale.

    Importance: Axioms, multiplicativity, bisections, cover, tensor oracles, and partial
    units run with the caps of the active configuration.
    Alternatives: Let each command pick its own subset of checks.
    """

    config: AppConfig

    def run(
        self, quantale: Quantale, report: Report, *, spatial_groupoid: bool = False
    ) -> SuiteOutcome:
        config = self.config
        flags: Flags = {flag: None for flag in QUANTALE_FLAGS}
        values: dict[str, Any] = {
            "|Q|": quantale.n,
            "|R(Q)|": len(quantale.rs),
            "υ": {
                quantale.names[a]: quantale.names[value]
                for a, value in enumerate(quantale.upsilon_table)
            },
        }
        findings: list[Finding] = []
        classification = quantale.classification
        with _timed(report, "axioms"):
            findings.extend(classification.findings())
            findings.extend(derived_lemma_suite(quantale, config.support_search_cap))
        flags.update(classification.flags())

        bisections = None
        if classification.is_open:
            with _timed(report, "bisections"):
                bisections = enumerate_bisections(quantale)
            values["|ℬ(Q)|"] = len(bisections)
        with _timed(report, "multiplicativity"):
            profile = multiplicativity_profile(quantale, bisections, config.acp_subset_cap)
        findings.extend(profile.findings)
        flags.update(profile.flags())

        if bisections is not None:
            with _timed(report, "bisection laws"):
                findings.extend(self._bisection_findings(quantale, bisections, profile))

        cover = None
        if profile.weak is not None and profile.weak.holds:
            with _timed(report, "cover"):
                cover, cover_findings = self._cover(quantale, bisections, flags, spatial_groupoid)
            findings.extend(cover_findings)
            if cover is not None:
                values["|L∨(ℬ(Q))|"] = cover.qhat.n

        if quantale.n <= config.tensor_cap:
            with _timed(report, "tensor oracles"):
                findings.extend(self._tensor_oracles(quantale))
        else:
            findings.append(
                Finding.skipped("tensor", "oracles", f"|Q| > tensor cap {config.tensor_cap}")
            )

        if classification.inverse:
            with _timed(report, "partial units"):
                partial, partial_findings = self._partial_units(quantale)
            findings.extend(partial_findings)
            values["|I(Q)|"] = len(partial)
        return SuiteOutcome(findings, flags, values, cover, bisections)

    def _bisection_findings(
        self,
        quantale: Quantale,
        bisections: tuple[Bisection, ...],
        profile: MultiplicativityProfile,
    ) -> list[Finding]:
        findings: list[Finding] = []
        weak = profile.weak
        table = weak.semigroup if weak is not None else bisection_table(quantale, bisections)
        findings.extend(bisection_laws(table, bool(weak and weak.holds)))
        findings.extend(sufficient_condition_check(quantale, bisections))
        if quantale.classification.inverse:
            findings.extend(xi_isomorphism(quantale, table).findings)
        return findings

    def _cover(
        self,
        quantale: Quantale,
        bisections: tuple[Bisection, ...] | None,
        flags: Flags,
        spatial_groupoid: bool,
    ) -> tuple[CoverData | None, list[Finding]]:
        config = self.config
        try:
            cover = build_cover(quantale, bisections, config.acp_subset_cap)
        except PreconditionError as exc:
            return None, [Finding.skipped("cover", "L∨(ℬ(Q))", str(exc))]
        findings = list(cover.findings)
        findings.extend(eta_checks(cover))
        weak = weak_embeddability_check(cover)
        findings.extend(weak.findings)
        enough = enough_bisections_findings(cover)
        findings.extend(enough)
        embeddable = embeddability_check(
            cover,
            weak,
            tensor_cap=config.tensor_cap,
            embed_cap=config.embed_cap,
            sample_count=config.sample_count,
            seed=config.seed,
            spatial_groupoid=spatial_groupoid,
        )
        findings.extend(embeddable.findings)
        flags["enough_bisections"] = enough[0].status is Status.PASS
        flags["weakly_embeddable"] = weak.holds
        flags["embeddable"] = embeddable.holds
        return cover, findings

    def _tensor_oracles(self, quantale: Quantale) -> list[Finding]:
        section = "tensor"
        cap = self.config.tensor_cap
        try:
            tensor = TensorLattice.over(quantale)
            findings = semicategory_check(tensor)
        except PreconditionError as exc:
            return [Finding.skipped(section, "oracles", str(exc))]
        ideals = tensor.enumerate_ideals(cap)
        mismatch = next(
            (
                a
                for a in range(quantale.n)
                if mu0_star(tensor, a) != brute_force_adjoint(tensor, a, ideals)
            ),
            None,
        )
        verdict = Verdict.ok(detail=f"{len(ideals)} bi-ideals")
        if mismatch is not None:
            verdict = Verdict.fail(quantale.names[mismatch])
        findings.append(
            Finding.from_verdict(section, "μ₀* = brute-force adjoint", verdict, theorem=True)
        )
        pushout = pushout_oracle(tensor, cap)
        findings.append(
            Finding.from_verdict(
                section, "bi-ideals ≅ opens of the point pullback", pushout.verdict, theorem=True
            )
        )
        quotient = quotient_oracle(tensor, cap)
        findings.append(
            Finding.from_verdict(
                section, "bi-ideals ≅ Q⊗Q modulo (a·z)⊗b = a⊗(z·b)", quotient.verdict, theorem=True
            )
        )
        return findings

    def _partial_units(self, quantale: Quantale) -> tuple[tuple[int, ...], list[Finding]]:
        partial = partial_units_semigroup(quantale, self.config.acp_subset_cap)
        findings = [
            Finding.from_verdict(
                "partial units",
                "I(Q) is an ACP",
                Verdict.ok() if partial.acp.holds else Verdict.fail(),
                theorem=True,
            )
        ]
        findings.extend(completion_checks(partial.completion))
        findings.append(
            _theorem("partial units", "L∨(I(Q)) ≅ Q", partial.iso is not None, "no isomorphism")
        )
        return partial.elements, findings


@dataclass(frozen=True)
class ReportArchive:
    """Summary: Report cache and history on top of the SQLite store.

    Importance: Repeated checks of the same input, flags, and seed are served from the
    archive; every fresh run is archived for `history`.
    Alternatives: Recompute every report.
    """

    store: ReportStore
    enabled: bool

    @staticmethod
    def cache_key(command: str, payload: Mapping[str, Any], options: Mapping[str, Any]) -> str:
        material = json.dumps(
            {"command": command, "input": payload, "options": options},
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()

    def run(
        self, key: str, producer: Callable[[], Report], *, use_cache: bool = True
    ) -> Report:
        if self.enabled and use_cache:
            stored = self.store.find_report(key)
            if stored is not None:
                logger.info("Serving %s of %s from cache", stored.command, stored.title)
                return report_from_dict(stored.payload)
        report = producer()
        if self.enabled:
            self.store.save_report(
                key,
                report.command,
                report.title,
                report.kind,
                report.exit_code,
                report_to_dict(report, include_timing=True),
            )
        return report

    def history(self, limit: int, command: str | None = None) -> list[StoredReport]:
        return self.store.list_reports(limit, command)


def semigroup_roundtrip(
    semigroup: InverseSemigroup, quantale: Quantale, subset_cap: int
) -> Finding:
    """I(L∨(S)) ≅ S, or S with a zero adjoined when S has none.

    `quantale` is the completion of `semigroup`; its bottom is the empty down-set.
    """

    name = "I(L∨(S)) ≅ S"
    try:
        partial = partial_units_semigroup(quantale, subset_cap)
    except PreconditionError as exc:
        return Finding.from_verdict("roundtrip", name, Verdict.fail(detail=str(exc)), theorem=True)
    target = semigroup.with_zero()
    iso = semigroup_isomorphism(partial.semigroup, target)
    detail = "no isomorphism" if target is semigroup else "no isomorphism with S⁰"
    return _theorem("roundtrip", name, iso is not None, detail)


def _input_payload(structure: StructureFile) -> dict[str, Any]:
    document = to_document(structure.subject, structure.title, structure.expected)
    if structure.ideal is not None:
        document["ideal"] = list(structure.ideal)
    return document


@dataclass(frozen=True)
class CheckService:
    """Summary: Run the full check suite for a structure file of any kind.

    Importance: Dispatches on the declared kind and compares expected flags.
    Alternatives: Separate commands per kind.
    """

    config: AppConfig
    archive: ReportArchive

    def check(
        self, structure: StructureFile, *, roundtrip: bool = False, use_cache: bool = True
    ) -> Report:
        key = self.archive.cache_key(
            "check", _input_payload(structure), self._options(roundtrip=roundtrip)
        )
        return self.archive.run(
            key, lambda: self._check(structure, roundtrip), use_cache=use_cache
        )

    def _options(self, **extra: Any) -> dict[str, Any]:
        config = self.config
        return {
            "tensor_cap": config.tensor_cap,
            "embed_cap": config.embed_cap,
            "support_search_cap": config.support_search_cap,
            "acp_subset_cap": config.acp_subset_cap,
            "sample_count": config.sample_count,
            "seed": config.seed,
            **extra,
        }

    def _check(self, structure: StructureFile, roundtrip: bool) -> Report:
        report = Report("check", structure.title, structure.kind)
        subject = structure.subject
        logger.info("Checking %s (%s)", structure.title, structure.kind)
        if isinstance(subject, Quantale):
            flags = self._quantale(subject, structure, report, roundtrip)
        elif isinstance(subject, TopGroupoid):
            flags = self._groupoid(subject, report, roundtrip)
        elif isinstance(subject, FiniteLattice):
            flags = self._frame(subject, report)
        elif isinstance(subject, InverseSemigroup):
            flags = self._semigroup(subject, report, roundtrip)
        elif isinstance(subject, SemigroupAction):
            flags = self._action(subject, report)
        else:
            raise InputError(f"unsupported kind {structure.kind!r}", location="kind")
        report.values["flags"] = {key: value for key, value in flags.items()}
        report.extend(compare_expected(structure.expected, flags, structure.source))
        report.negative = _negative(report)
        return report

    def _quantale(
        self, quantale: Quantale, structure: StructureFile, report: Report, roundtrip: bool
    ) -> Flags:
        outcome = QuantaleSuite(self.config).run(quantale, report)
        report.extend(outcome.findings)
        report.values.update(outcome.values)
        if structure.ideal is not None:
            with _timed(report, "ideal"):
                try:
                    witness = ideal_check(
                        quantale,
                        structure.ideal,
                        embed_cap=self.config.embed_cap,
                        title=f"I({quantale.title or 'Q'})",
                    )
                    report.extend(witness.findings)
                except PreconditionError as exc:
                    report.add(Finding.skipped("ideal", "involutive ideal", str(exc)))
        if roundtrip:
            with _timed(report, "roundtrip"):
                result = roundtrip_check(quantale, self.config.tensor_cap)
            report.extend(result.findings)
            if result.quantale_iso is not None:
                report.values["quantale isomorphism"] = {
                    quantale.names[target]: quantale.names[offset]
                    for offset, target in enumerate(result.quantale_iso)
                }
        return outcome.flags

    def _groupoid(self, groupoid: TopGroupoid, report: Report, roundtrip: bool) -> Flags:
        config = self.config
        classification = groupoid.classification
        flags: Flags = {flag: None for flag in GROUPOID_FLAGS}
        flags.update(classification.flags())
        with _timed(report, "groupoid"):
            report.extend(classification.findings())
            report.extend(quantale_of_checks(groupoid))
        quantale = quantale_of(groupoid)
        outcome = QuantaleSuite(config).run(quantale, report, spatial_groupoid=True)
        report.extend(outcome.findings)
        report.values.update(
            {"|G0|": groupoid.objects.n, "|G1|": groupoid.arrows.n, **outcome.values}
        )
        flags.update(outcome.flags)
        if outcome.bisections:
            with _timed(report, "spatial oracle"):
                report.extend(spatial_oracle_check(groupoid, outcome.bisections))
        with _timed(report, "cover functor"):
            functor = cover_functor(
                groupoid,
                tensor_cap=config.tensor_cap,
                subset_cap=config.acp_subset_cap,
                cover=outcome.cover,
            )
        report.extend(functor.findings)
        if functor.applicable:
            flags["cover_iso"] = functor.iso
        if roundtrip:
            with _timed(report, "roundtrip"):
                result = roundtrip_check(groupoid, config.tensor_cap)
            report.extend(result.findings)
            if result.groupoid_iso is not None:
                rebuilt = groupoid_of(quantale, config.tensor_cap)
                report.values["groupoid isomorphism"] = {
                    rebuilt.arrow_name(x): groupoid.arrow_name(target)
                    for x, target in enumerate(result.groupoid_iso.arrows)
                }
        return flags

    def _frame(self, lattice: FiniteLattice, report: Report) -> Flags:
        section = "frame"
        witness = validate_frame(lattice)
        distributive = (
            Verdict.ok() if witness.distributive else Verdict.fail(*witness.witness)
        )
        report.record(section, "distributive", distributive)
        flags: Flags = {flag: None for flag in FRAME_FLAGS}
        flags["distributive"] = witness.distributive
        report.values["|L|"] = lattice.n
        if not witness.distributive:
            report.add(Finding.skipped(section, "Boolean", "not a frame"))
            report.add(Finding.skipped(section, "spatial", "not a frame"))
            return flags
        boolean = lattice.is_boolean
        report.record(section, "Boolean", Verdict.ok() if boolean else Verdict.fail())
        spectrum = points(lattice)
        report.record(section, "spatial", spectrum.spatial, theorem=True)
        report.values["points"] = list(spectrum.space.points)
        flags.update({"boolean": boolean, "spatial": bool(spectrum.spatial)})
        return flags

    def _semigroup(self, semigroup: InverseSemigroup, report: Report, roundtrip: bool) -> Flags:
        section = "semigroup"
        flags: Flags = {flag: None for flag in SEMIGROUP_FLAGS}
        with _timed(report, "acp"):
            acp = acp_check(semigroup, self.config.acp_subset_cap)
        report.record(section, "complete", acp.complete)
        report.record(section, "infinitely distributive", acp.distributive)
        report.values["|S|"] = semigroup.n
        report.values["|E(S)|"] = len(semigroup.idempotents)
        flags["acp"] = acp.holds
        if not acp.holds:
            report.add(Finding.skipped("completion", "L∨(S)", "not an ACP"))
            return flags
        with _timed(report, "completion"):
            completion = lcc_completion(semigroup, acp)
            report.extend(completion_checks(completion))
        report.values["|L∨(S)|"] = completion.quantale.n
        if roundtrip:
            with _timed(report, "roundtrip"):
                report.add(
                    semigroup_roundtrip(semigroup, completion.quantale, self.config.acp_subset_cap)
                )
        return flags

    def _action(self, action: SemigroupAction, report: Report) -> Flags:
        natural = natural_action_check(action)
        report.record("action", "natural", natural)
        with _timed(report, "germs"):
            germs = germ_groupoid(action, self.config.acp_subset_cap)
        report.extend(germs.findings())
        report.values["|germs|"] = germs.direct.arrows.n
        report.values["|germ objects|"] = germs.direct.objects.n
        return {"natural": natural.holds}


@dataclass(frozen=True)
class SearchService:
    """Summary: Exhaustive search for quantal frames matching an axiom pattern."""

    config: AppConfig
    archive: ReportArchive

    def search(
        self,
        frame: str | FiniteLattice,
        pattern: str,
        *,
        witnesses: bool = True,
        use_cache: bool = True,
    ) -> Report:
        lattice = frame_from_family(frame) if isinstance(frame, str) else frame
        parsed = parse_pattern(pattern)
        config = self.config
        payload = {"frame": to_document(lattice), "pattern": str(parsed)}
        options = {
            "search_cap": config.search_cap,
            "support_search_cap": config.support_search_cap,
            "acp_subset_cap": config.acp_subset_cap,
        }
        key = self.archive.cache_key("search", payload, options)
        label = frame if isinstance(frame, str) else "frame"

        def produce() -> Report:
            report = Report("search", f"{label} / {parsed}", "frame")
            with _timed(report, "search"):
                result = search(
                    lattice,
                    parsed,
                    cap=config.search_cap,
                    workers=config.workers,
                    support_cap=config.support_search_cap,
                    subset_cap=config.acp_subset_cap,
                )
            report.extend(result.findings)
            report.add(
                Finding(
                    "search",
                    f"theorem checks on {len(result.structures)} structures",
                    Status.PASS if not result.findings else Status.FAIL,
                    red_flag=bool(result.findings),
                )
            )
            report.values["structures"] = len(result.structures)
            report.values["witnesses"] = len(result.witnesses)
            report.values["matches"] = [
                {
                    "title": quantale.title,
                    "flags": flags,
                    **({"document": to_document(quantale)} if witnesses else {}),
                }
                for quantale, flags in result.witnesses
            ]
            return report

        return self.archive.run(key, produce, use_cache=use_cache)


@dataclass(frozen=True)
class Conversion:
    """Summary: A converted structure, its document, and the verdict summary."""

    subject: Subject
    document: dict[str, Any]
    report: Report


@dataclass(frozen=True)
class ConvertService:
    """Summary: Build O(G), G(Q), L∨(S), I(Q), or the étale cover from a structure file.

    Importance: Converted structures are emitted in the loader's format.
    Alternatives: Only print sizes of the constructed structures.
    """

    config: AppConfig

    def convert(self, structure: StructureFile, target: str) -> Conversion:
        if target not in CONVERSION_TARGETS:
            raise InputError(
                f"unknown target {target!r}; expected one of {', '.join(CONVERSION_TARGETS)}",
                location="--to",
            )
        subject = structure.subject
        report = Report("convert", structure.title, structure.kind)
        with _timed(report, "convert"):
            converted = self._convert(subject, target)
        title = getattr(converted, "title", "") or f"{target} of {structure.title}"
        document = to_document(converted, title)
        report.values["target"] = target
        report.extend(self._summary(converted))
        report.values["size"] = _size(converted)
        report.negative = _negative(report)
        logger.info("Converted %s to %s", structure.title, target)
        return Conversion(converted, document, report)

    def _convert(self, subject: Subject, target: str) -> Subject:
        config = self.config
        if target == "quantale":
            if isinstance(subject, TopGroupoid):
                return quantale_of(subject)
            if isinstance(subject, InverseSemigroup):
                return _completion(subject, config.acp_subset_cap).quantale
        elif target == "groupoid":
            if isinstance(subject, Quantale):
                return groupoid_of(subject, config.tensor_cap)
            if isinstance(subject, InverseSemigroup):
                return groupoid_of(_completion(subject, config.acp_subset_cap).quantale)
            if isinstance(subject, SemigroupAction):
                return germ_groupoid_direct(subject)
        elif target == "inverse_semigroup":
            if isinstance(subject, TopGroupoid):
                subject = quantale_of(subject)
            if isinstance(subject, Quantale):
                return partial_units_semigroup(subject, config.acp_subset_cap).semigroup
        elif target == "cover":
            if isinstance(subject, Quantale):
                return build_cover(subject, subset_cap=config.acp_subset_cap).qhat
            if isinstance(subject, TopGroupoid):
                functor = cover_functor(
                    subject, tensor_cap=config.tensor_cap, subset_cap=config.acp_subset_cap
                )
                if functor.cover_groupoid is None:
                    raise PreconditionError(functor.findings[0].detail)
                return functor.cover_groupoid
        kind = type(subject).__name__
        raise InputError(f"cannot convert {kind} to {target}", location="--to")

    def _summary(self, converted: Subject) -> list[Finding]:
        if isinstance(converted, Quantale):
            return converted.classification.findings()
        if isinstance(converted, TopGroupoid):
            return converted.classification.findings()
        if isinstance(converted, InverseSemigroup):
            acp = acp_check(converted, self.config.acp_subset_cap)
            return [
                Finding.from_verdict("semigroup", "complete", acp.complete),
                Finding.from_verdict("semigroup", "infinitely distributive", acp.distributive),
            ]
        return []


def _completion(semigroup: InverseSemigroup, subset_cap: int) -> Completion:
    acp = acp_check(semigroup, subset_cap)
    if not acp.holds:
        raise PreconditionError("L∨(S) requires an abstract complete pseudogroup")
    return lcc_completion(semigroup, acp)


def _size(subject: Subject) -> int:
    if isinstance(subject, TopGroupoid):
        return subject.arrows.n
    return subject.n


def _quantale_subject(structure: StructureFile) -> tuple[Quantale, TopGroupoid | None]:
    subject = structure.subject
    if isinstance(subject, Quantale):
        return subject, None
    if isinstance(subject, TopGroupoid):
        return quantale_of(subject), subject
    raise InputError(
        f"expected a quantale or groupoid, got {structure.kind}",
        location=f"{structure.source}:kind",
    )


@dataclass(frozen=True)
class BisectionService:
    """Summary: List ℬ(Q) with its product table and the bisection laws."""

    config: AppConfig

    def bisections(self, structure: StructureFile) -> Report:
        quantale, groupoid = _quantale_subject(structure)
        report = Report("bisections", structure.title, structure.kind)
        with _timed(report, "bisections"):
            elements = enumerate_bisections(quantale)
            profile = multiplicativity_profile(quantale, elements, self.config.acp_subset_cap)
        report.extend(profile.findings)
        table = profile.weak.semigroup if profile.weak else bisection_table(quantale, elements)
        report.extend(bisection_laws(table, bool(profile.weak and profile.weak.holds)))
        report.extend(sufficient_condition_check(quantale, elements))
        if groupoid is not None:
            report.extend(spatial_oracle_check(groupoid, elements))
        report.values["bisections"] = {
            name: sigma.describe() for name, sigma in zip(table.names, table.elements)
        }
        report.values["products"] = {
            f"{table.names[s]}·{table.names[t]}": (
                table.names[value] if value is not None else None
            )
            for s, row in enumerate(table.table)
            for t, value in enumerate(row)
        }
        return report


@dataclass(frozen=True)
class CoverService:
    """Summary: Build the cover L∨(ℬ(Q)), the map j, and for groupoids the functor J."""

    config: AppConfig

    def cover(self, structure: StructureFile) -> Report:
        config = self.config
        quantale, groupoid = _quantale_subject(structure)
        report = Report("cover", structure.title, structure.kind)
        with _timed(report, "cover"):
            cover = build_cover(quantale, subset_cap=config.acp_subset_cap)
        report.extend(cover.findings)
        report.extend(eta_checks(cover))
        weak = weak_embeddability_check(cover)
        report.extend(weak.findings)
        report.extend(enough_bisections_findings(cover))
        embeddable = embeddability_check(
            cover,
            weak,
            tensor_cap=config.tensor_cap,
            embed_cap=config.embed_cap,
            sample_count=config.sample_count,
            seed=config.seed,
            spatial_groupoid=groupoid is not None,
        )
        report.extend(embeddable.findings)
        report.values["|L∨(ℬ(Q))|"] = cover.qhat.n
        report.values["j"] = {
            quantale.names[a]: cover.qhat.names[value] for a, value in enumerate(cover.j.table)
        }
        report.values["embeddability mode"] = embeddable.mode
        if groupoid is not None:
            with _timed(report, "cover functor"):
                functor = cover_functor(
                    groupoid,
                    tensor_cap=config.tensor_cap,
                    subset_cap=config.acp_subset_cap,
                    cover=cover,
                )
            report.extend(functor.findings)
            if functor.cover_groupoid is not None:
                report.values["|Ĝ1|"] = functor.cover_groupoid.arrows.n
                report.values["J iso"] = functor.iso
        return report


@dataclass(frozen=True)
class RoundtripService:
    """Summary: G(O(G)) ≅ G, O(G(Q)) ≅ Q, or I(L∨(S)) ≅ S with the isomorphism found."""

    config: AppConfig

    def roundtrip(self, structure: StructureFile) -> Report:
        subject = structure.subject
        report = Report("roundtrip", structure.title, structure.kind)
        with _timed(report, "roundtrip"):
            if isinstance(subject, (Quantale, TopGroupoid)):
                result = roundtrip_check(subject, self.config.tensor_cap)
                report.extend(result.findings)
                if result.groupoid_iso is not None:
                    report.values["objects"] = list(result.groupoid_iso.objects)
                    report.values["arrows"] = list(result.groupoid_iso.arrows)
                if result.quantale_iso is not None:
                    report.values["elements"] = list(result.quantale_iso)
            elif isinstance(subject, InverseSemigroup):
                completion = _completion(subject, self.config.acp_subset_cap)
                report.add(
                    semigroup_roundtrip(subject, completion.quantale, self.config.acp_subset_cap)
                )
            else:
                raise InputError(
                    "roundtrip needs a quantale, groupoid, or inverse_semigroup",
                    location=f"{structure.source}:kind",
                )
        return report
