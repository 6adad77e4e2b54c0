"""
Verification suites: each check lands in a Report as PASS, FAIL or SKIP.

Suites never raise on a mathematical failure; errors from the kernel become
FAIL entries whose witness names the inputs and what went wrong.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional

import pandas as pd
from loguru import logger

from ..colimits.diagrams import coequalizer, pushout
from ..colimits.tensor import copair, tensor_coproduct
from ..config import KernelSettings, load_settings
from ..core.canonical import are_isomorphic
from ..core.semiring import FiniteSemiring, hom_enumerate, identity_hom
from ..errors import NotOverInitial, OrderTooLarge, SemiringError
from ..salgebra.coreflection import (
    AICSR_SPEC,
    DLAT_SPEC,
    IDEMPOTENT_SPEC,
    STAR_SPEC,
    BaseSemiring,
    SAlgebra,
    VarietyFlag,
    classify,
    coreflect,
    star_subset,
    two_torsion_idempotents,
    unit_absorbed_idempotents,
)
from .catalog import Catalog, CatalogEntry, catalog_up_to

COLUMNS = ["suite", "check", "status", "witness"]


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: CheckStatus
    witness: str = ""

    def __post_init__(self):
        if self.status is CheckStatus.FAIL and not self.witness:
            raise ValueError(f"FAIL for {self.check_id} has no witness")


@dataclass
class Report:
    suite: str
    results: List[CheckResult] = field(default_factory=list)

    def record(self, check_id: str, ok: bool, witness: str = "") -> None:
        status = CheckStatus.PASS if ok else CheckStatus.FAIL
        self.results.append(CheckResult(check_id, status, witness))

    def skip(self, check_id: str, reason: str) -> None:
        self.results.append(CheckResult(check_id, CheckStatus.SKIP, reason))

    def fail(self, check_id: str, witness: str) -> None:
        self.results.append(CheckResult(check_id, CheckStatus.FAIL, witness))

    @property
    def summary(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for result in self.results:
            counts[result.status.value] += 1
        return counts

    @property
    def passed(self) -> bool:
        return self.summary[CheckStatus.FAIL.value] == 0

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status is CheckStatus.FAIL]

    def to_frame(self) -> pd.DataFrame:
        rows = [(self.suite, r.check_id, r.status.value, r.witness) for r in self.results]
        return pd.DataFrame(rows, columns=COLUMNS)

    def to_tsv(self) -> str:
        return self.to_frame().to_csv(sep="\t", index=False, lineterminator="\n")


def _flag_spec_failure(algebra: FiniteSemiring, flag: VarietyFlag) -> str:
    """Why the algebra lacks the flag, as a replayable identity instance."""
    specs = {
        VarietyFlag.CSRSTAR: STAR_SPEC,
        VarietyFlag.AICSR: AICSR_SPEC,
        VarietyFlag.DLAT: DLAT_SPEC,
        VarietyFlag.BRINGS: IDEMPOTENT_SPEC,
    }
    spec = specs.get(flag)
    if spec is not None:
        failure = spec.first_failure(algebra)
        if failure is not None:
            identity, assignment = failure
            return f"{identity} fails at {assignment}"
    one_plus_one = algebra.plus(algebra.one, algebra.one)
    if one_plus_one != algebra.zero:
        return f"1+1 = {one_plus_one}, not 0"
    return "some element has no additive inverse"


def star_probes(settings: Optional[KernelSettings] = None) -> List[CatalogEntry]:
    """Every CSRstar semiring up to the probe order, independent of the catalog under test."""
    settings = settings or load_settings()
    bound = settings.probe_max_order
    if bound > settings.max_order:
        settings = settings.model_copy(update={"max_order": bound})
    return catalog_up_to(bound, settings).with_flag(VarietyFlag.CSRSTAR)


def verify_coreflection_suite(catalog: Catalog, probes: Optional[Iterable[CatalogEntry]] = None,
                              settings: Optional[KernelSettings] = None) -> Report:
    """Star subsets are subalgebras, coreflect is idempotent and couniversal."""
    settings = settings or load_settings()
    report = Report("coreflection")
    if probes is None:
        probes = star_probes(settings)
    probes = list(probes)
    logger.info(f"coreflection suite: {len(catalog)} entries, {len(probes)} probes")

    for entry in catalog:
        A = entry.algebra
        salgebra = SAlgebra.over_naturals(A)
        name = entry.name
        try:
            star = star_subset(salgebra)
        except NotOverInitial as e:
            report.skip(f"{name}/star-subset", f"NotOverInitial: {e}")
            continue
        members = star.sorted_members

        witness = next((f"{a}+{b}={A.plus(a, b)} leaves A'" for a, b in itertools.product(members, repeat=2)
                        if A.plus(a, b) not in star), "")
        report.record(f"{name}/sums", not witness, witness)

        witness = next((f"{s}·{a}={salgebra.act(s, a)} leaves A'"
                        for s in salgebra.base_elements() for a in members if salgebra.act(s, a) not in star), "")
        report.record(f"{name}/scalars", not witness, witness)

        report.record(f"{name}/unit", A.one in star, "" if A.one in star else f"1 is not in A' = {members}")

        witness = next((f"{a}·{b}={A.times(a, b)} leaves A'" for a, b in itertools.product(members, repeat=2)
                        if A.times(a, b) not in star), "")
        report.record(f"{name}/products", not witness, witness)

        try:
            core = coreflect(salgebra)
            again = coreflect(core.salgebra)
        except SemiringError as e:
            report.fail(f"{name}/idempotent", f"{type(e).__name__}: {e}")
            continue
        composite = again.inclusion.then(core.inclusion)
        idempotent = again.algebra.order == core.algebra.order and composite.image() == star.members
        report.record(f"{name}/idempotent", idempotent,
                      "" if idempotent else f"A'' has {again.algebra.order} elements, A' has {core.algebra.order}")

        for probe in probes:
            B = probe.algebra
            direct = sorted(h.images for h in hom_enumerate(B, A))
            through = sorted(h.then(core.inclusion).images for h in hom_enumerate(B, core.algebra))
            same = direct == through
            report.record(f"{name}/couniversal/{probe.name}", same,
                          "" if same else f"Hom({probe.name}, A) = {direct} but via A' = {through}")
    logger.info(f"coreflection suite: {report.summary}")
    return report


def _as_salgebra(algebra: FiniteSemiring, base: Optional[FiniteSemiring]) -> Optional[SAlgebra]:
    """Over N, or over base through the first structure homomorphism."""
    if base is None:
        return SAlgebra.over_naturals(algebra)
    homs = hom_enumerate(base, algebra)
    if not homs:
        return None
    return SAlgebra(BaseSemiring.finite(base), algebra, homs[0])


def verify_closure_suite(catalog: Catalog, flag: VarietyFlag, base: Optional[FiniteSemiring] = None,
                         settings: Optional[KernelSettings] = None) -> Report:
    """Coproducts of flagged pairs carry the flag; coequalizer and pushout spot checks."""
    settings = settings or load_settings()
    flag = VarietyFlag(flag)
    report = Report(f"closure/{flag.value}")
    flagged = catalog.with_flag(flag, settings.closure_max_order)
    logger.info(f"closure suite for {flag.value}: {len(flagged)} entries")

    for left, right in itertools.product(flagged, repeat=2):
        pair = f"{left.name}+{right.name}"
        A = _as_salgebra(left.algebra, base)
        B = _as_salgebra(right.algebra, base)
        if A is None or B is None:
            missing = left.name if A is None else right.name
            report.skip(f"{pair}/coproduct", f"no structure map {base.label} -> {missing}")
            continue

        try:
            T = tensor_coproduct(A, B, settings)
        except SemiringError as e:
            report.fail(f"{pair}/coproduct", f"{type(e).__name__}: {e}")
            continue
        carried = flag in classify(T.result)
        report.record(f"{pair}/coproduct", carried,
                      f"order {T.result.order}" if carried else _flag_spec_failure(T.result, flag))

        homs = hom_enumerate(left.algebra, right.algebra)
        if not homs:
            report.skip(f"{pair}/coequalizer", f"no homomorphism {left.name} -> {right.name}")
            report.skip(f"{pair}/pushout", f"no homomorphism {left.name} -> {right.name}")
            continue

        f, g = homs[0], homs[-1]
        quotient_algebra = coequalizer(f, g).algebra
        carried = flag in classify(quotient_algebra)
        report.record(f"{pair}/coequalizer", carried,
                      f"order {quotient_algebra.order}" if carried else _flag_spec_failure(quotient_algebra, flag))

        try:
            P = pushout(identity_hom(left.algebra), f, settings)
        except SemiringError as e:
            report.fail(f"{pair}/pushout", f"{type(e).__name__}: {e}")
            continue
        carried = flag in classify(P.algebra)
        if not carried:
            report.fail(f"{pair}/pushout", _flag_spec_failure(P.algebra, flag))
            continue
        try:
            recovered = are_isomorphic(P.algebra, right.algebra, settings)
        except OrderTooLarge as e:
            report.skip(f"{pair}/pushout", str(e))
            continue
        report.record(f"{pair}/pushout", recovered,
                      f"order {P.algebra.order}" if recovered
                      else f"pushout along the identity has order {P.algebra.order}, not {right.name}")
    logger.info(f"closure suite for {flag.value}: {report.summary}")
    return report


def verify_section3_suite(catalog: Catalog) -> Report:
    """Star subsets of CRings2 and AICSR entries, and the flags of their coreflections."""
    report = Report("section3")
    for entry in catalog:
        A = entry.algebra
        branches = []
        if VarietyFlag.CRINGS2 in entry.flags:
            branches.append(("rings", two_torsion_idempotents, VarietyFlag.BRINGS, "{a | 2a=0, a^2=a}"))
        if VarietyFlag.AICSR in entry.flags:
            branches.append(("aicsr", unit_absorbed_idempotents, VarietyFlag.DLAT, "{a | 1+a=1, a^2=a}"))
        if not branches:
            report.skip(f"{entry.name}/section3", "neither CRings2 nor AICSR")
            continue

        for label, comprehension, target_flag, text in branches:
            salgebra = SAlgebra.over_naturals(A)
            star = star_subset(salgebra)
            expected = comprehension(A)
            same = star.members == expected
            report.record(f"{entry.name}/{label}/star-subset", same,
                          "" if same else f"A' = {star.sorted_members} but {text} = {sorted(expected)}")
            core = coreflect(salgebra)
            carried = target_flag in classify(core.algebra)
            report.record(f"{entry.name}/{label}/{target_flag.value}", carried,
                          f"order {core.algebra.order}" if carried else _flag_spec_failure(core.algebra, target_flag))
    logger.info(f"section3 suite: {report.summary}")
    return report


def verify_universal_property_suite(catalog: Catalog, targets: Optional[Iterable[CatalogEntry]] = None,
                                    settings: Optional[KernelSettings] = None) -> Report:
    """Every cocone out of a coproduct factors uniquely through copair."""
    settings = settings or load_settings()
    report = Report("universal")
    pairs = catalog.with_flag(VarietyFlag.CSRSTAR, settings.closure_max_order)
    if targets is None:
        targets = [e for e in catalog if e.order <= settings.cocone_max_order]
    targets = list(targets)
    logger.info(f"universal property suite: {len(pairs)} entries, {len(targets)} targets")

    for left, right in itertools.product(pairs, repeat=2):
        pair = f"{left.name}+{right.name}"
        try:
            T = tensor_coproduct(SAlgebra.over_naturals(left.algebra), SAlgebra.over_naturals(right.algebra),
                                 settings)
        except SemiringError as e:
            report.fail(f"{pair}/coproduct", f"{type(e).__name__}: {e}")
            continue

        for target in targets:
            C = target.algebra
            check_id = f"{pair}/{target.name}"
            mediators = hom_enumerate(T.result, C)
            cocones = 0
            witness = ""
            for p in hom_enumerate(left.algebra, C):
                for q in hom_enumerate(right.algebra, C):
                    cocones += 1
                    try:
                        m = copair(T, p, q)
                    except SemiringError as e:
                        witness = f"copair{p.images, q.images}: {type(e).__name__}: {e}"
                        break
                    if T.left_injection.then(m) != p or T.right_injection.then(m) != q:
                        witness = f"copair{p.images, q.images} = {m.images} does not restrict to the legs"
                        break
                    unique = [h.images for h in mediators
                              if T.left_injection.then(h) == p and T.right_injection.then(h) == q]
                    if unique != [m.images]:
                        witness = f"cocone {p.images, q.images} has mediators {unique}"
                        break
                if witness:
                    break
            report.record(check_id, not witness, witness or f"cocones: {cocones}")
    logger.info(f"universal property suite: {report.summary}")
    return report
