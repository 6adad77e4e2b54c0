"""
S-algebras over a finite base or over N, the initial object I = S/E of the
subvariety cut out by 1+2x=1 and x^2=x, the star subset A' and the
coreflector A -> A'.
"""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from loguru import logger

from ..core.semiring import (
    Congruence,
    FiniteSemiring,
    Homomorphism,
    Subset,
    congruence_generated,
    hom_enumerate,
    quotient,
    subalgebra_close,
    validate_hom,
)
from ..core.terms import Identity, check_identity, parse_identity
from ..errors import NotOverInitial, SAlgebraError
from .builtins import NSTAR


@dataclass(frozen=True)
class BaseSemiring:
    """Either a finite semiring S or the distinguished token for S = N."""
    semiring: Optional[FiniteSemiring] = None

    @property
    def is_naturals(self) -> bool:
        return self.semiring is None

    @property
    def label(self) -> str:
        return "N" if self.semiring is None else self.semiring.label

    @classmethod
    def finite(cls, semiring: FiniteSemiring) -> "BaseSemiring":
        return cls(semiring)


NATURALS = BaseSemiring()


def naturals_scalar_sequence(algebra: FiniteSemiring) -> Tuple[List[int], int]:
    """The values k·1 for k = 0, 1, ... up to the first repeat, and where the cycle starts."""
    seen = {algebra.zero: 0}
    sequence = [algebra.zero]
    value = algebra.zero
    while True:
        value = algebra.plus(value, algebra.one)
        if value in seen:
            return sequence, seen[value]
        seen[value] = len(sequence)
        sequence.append(value)


@dataclass(frozen=True)
class SAlgebra:
    """A commutative semiring A with its structure map from the base.

    For the Naturals base the structure map is the unique s ↦ s·1 and is
    left implicit.
    """
    base: BaseSemiring
    algebra: FiniteSemiring
    structure: Optional[Homomorphism] = None

    @classmethod
    def over_naturals(cls, algebra: FiniteSemiring) -> "SAlgebra":
        return cls(NATURALS, algebra, None)

    @property
    def name(self) -> str:
        return self.algebra.label

    def scalar(self, s: int) -> int:
        """s·1 in the algebra."""
        if self.base.is_naturals:
            sequence, start = naturals_scalar_sequence(self.algebra)
            if s < len(sequence):
                return sequence[s]
            period = len(sequence) - start
            return sequence[start + (s - start) % period]
        return self.structure(s)

    def act(self, s: int, a: int) -> int:
        return self.algebra.times(self.scalar(s), a)

    def base_elements(self) -> List[int]:
        """Enough base elements to reach every scalar value."""
        if self.base.is_naturals:
            sequence, _ = naturals_scalar_sequence(self.algebra)
            return list(range(len(sequence)))
        return list(self.base.semiring.elements)

    def base_plus(self, s: int, t: int) -> int:
        return s + t if self.base.is_naturals else self.base.semiring.plus(s, t)

    def base_times(self, s: int, t: int) -> int:
        return s * t if self.base.is_naturals else self.base.semiring.times(s, t)

    @property
    def base_one(self) -> int:
        return 1 if self.base.is_naturals else self.base.semiring.one


def module_law_violations(salgebra: SAlgebra) -> List[str]:
    """Scalar action laws of an S-algebra, each failure with its witness."""
    A = salgebra.algebra
    act = salgebra.act
    failures: List[str] = []
    scalars = salgebra.base_elements()

    for a in A.elements:
        if act(salgebra.base_one, a) != a:
            failures.append(f"1a=a fails at a={a}")
        if act(0, a) != A.zero:
            failures.append(f"0a=0 fails at a={a}")
    for s in scalars:
        if act(s, A.zero) != A.zero:
            failures.append(f"s0=0 fails at s={s}")
        for t in scalars:
            st = salgebra.base_times(s, t)
            s_plus_t = salgebra.base_plus(s, t)
            for a in A.elements:
                if act(s, act(t, a)) != act(st, a):
                    failures.append(f"s(ta)=(st)a fails at s={s}, t={t}, a={a}")
                if act(s_plus_t, a) != A.plus(act(s, a), act(t, a)):
                    failures.append(f"(s+t)a=sa+ta fails at s={s}, t={t}, a={a}")
        for a in A.elements:
            for b in A.elements:
                if act(s, A.plus(a, b)) != A.plus(act(s, a), act(s, b)):
                    failures.append(f"s(a+b)=sa+sb fails at s={s}, a={a}, b={b}")
                if act(s, A.times(a, b)) != A.times(act(s, a), b):
                    failures.append(f"s(ab)=(sa)b fails at s={s}, a={a}, b={b}")
    return failures


def validate_salgebra(base: BaseSemiring, algebra: FiniteSemiring,
                      structure_map: Optional[Sequence[int]] = None) -> SAlgebra:
    """Check the structure homomorphism and the action laws.

    With a finite base and no map given, the structure map is taken when it
    is the only homomorphism S -> A.
    """
    if base.is_naturals:
        salgebra = SAlgebra(NATURALS, algebra, None)
    else:
        if structure_map is None:
            candidates = hom_enumerate(base.semiring, algebra)
            if len(candidates) != 1:
                raise SAlgebraError(
                    f"{algebra.label} has {len(candidates)} structure maps from {base.label}; give one explicitly"
                )
            structure = candidates[0]
        else:
            structure = validate_hom(structure_map, base.semiring, algebra)
        salgebra = SAlgebra(base, algebra, structure)

    failures = module_law_violations(salgebra)
    if failures:
        raise SAlgebraError(f"{algebra.label} over {base.label}: {failures[0]}")
    return salgebra


@dataclass(frozen=True)
class VarietySpec:
    name: str
    identities: Tuple[Identity, ...]

    @classmethod
    def parse(cls, name: str, *texts: str) -> "VarietySpec":
        return cls(name, tuple(parse_identity(t) for t in texts))

    def first_failure(self, algebra: FiniteSemiring) -> Optional[Tuple[Identity, dict]]:
        for identity in self.identities:
            result = check_identity(algebra, identity)
            if not result.holds:
                return identity, result.counterexample
        return None

    def satisfied_by(self, algebra: FiniteSemiring) -> bool:
        return self.first_failure(algebra) is None


STAR_SPEC = VarietySpec.parse("CSRstar", "1+2x=1", "x^2=x")
AICSR_SPEC = VarietySpec.parse("AICSR", "2x=x")
IDEMPOTENT_SPEC = VarietySpec.parse("idempotent", "x^2=x")
DLAT_SPEC = VarietySpec.parse("DLat", "x+x=x", "x^2=x", "1+x=1")


class InitialObject(NamedTuple):
    salgebra: SAlgebra
    congruence: Optional[Congruence] = None
    projection: Optional[Homomorphism] = None

    @property
    def algebra(self) -> FiniteSemiring:
        return self.salgebra.algebra


def initial_object(base: BaseSemiring) -> InitialObject:
    """I = S/E, E generated by (1+2s, 1) and (s^2, s); NSTAR when S = N."""
    if base.is_naturals:
        return InitialObject(SAlgebra(NATURALS, NSTAR, None))

    S = base.semiring
    pairs = []
    for s in S.elements:
        pairs.append((S.plus(S.one, S.plus(s, s)), S.one))
        pairs.append((S.times(s, s), s))
    congruence = congruence_generated(S, pairs)
    result, projection = quotient(S, congruence, f"I({S.label})")
    logger.debug(f"initial object over {S.label} has order {result.order}")
    return InitialObject(SAlgebra(base, result, projection), congruence, projection)


def _three_is_one(algebra: FiniteSemiring) -> bool:
    one = algebra.one
    return algebra.plus(algebra.plus(one, one), one) == one


def is_over_initial(salgebra: SAlgebra) -> bool:
    """True iff the structure map factors through I."""
    if salgebra.base.is_naturals:
        return _three_is_one(salgebra.algebra)

    initial = initial_object(salgebra.base)
    S = salgebra.base.semiring
    for h in hom_enumerate(initial.algebra, salgebra.algebra):
        if all(h(initial.projection(s)) == salgebra.structure(s) for s in S.elements):
            return True
    return False


def _star_members(algebra: FiniteSemiring) -> FrozenSet[int]:
    one = algebra.one
    return frozenset(
        a for a in algebra.elements
        if algebra.plus(one, algebra.plus(a, a)) == one and algebra.times(a, a) == a
    )


def star_subset(salgebra: SAlgebra) -> Subset:
    """A' = {a | 1+2a=1 and a^2=a}."""
    if not is_over_initial(salgebra):
        A = salgebra.algebra
        detail = ""
        if salgebra.base.is_naturals:
            detail = f"1+1+1 = {A.plus(A.plus(A.one, A.one), A.one)}, not 1"
        raise NotOverInitial(salgebra.name, detail)
    return Subset(salgebra.algebra, _star_members(salgebra.algebra))


class Coreflection(NamedTuple):
    salgebra: SAlgebra
    inclusion: Homomorphism
    subset: Subset

    @property
    def algebra(self) -> FiniteSemiring:
        return self.salgebra.algebra


def coreflect(salgebra: SAlgebra) -> Coreflection:
    """The subalgebra A' with its inclusion into A."""
    star = star_subset(salgebra)
    closure = subalgebra_close(salgebra.algebra, star.members, f"{salgebra.name}'")
    if closure.subset.members != star.members:
        extra = sorted(closure.subset.members - star.members)
        raise SAlgebraError(f"star subset of {salgebra.name} is not closed: closure adds {extra}")

    structure = None
    if not salgebra.base.is_naturals:
        position = {x: i for i, x in enumerate(closure.inclusion.images)}
        images = [position[salgebra.structure(s)] for s in salgebra.base.semiring.elements]
        structure = validate_hom(images, salgebra.base.semiring, closure.algebra)
    result = SAlgebra(salgebra.base, closure.algebra, structure)
    return Coreflection(result, closure.inclusion, star)


def two_torsion_idempotents(algebra: FiniteSemiring) -> FrozenSet[int]:
    """{a | 2a=0 and a^2=a}."""
    return frozenset(
        a for a in algebra.elements if algebra.plus(a, a) == algebra.zero and algebra.times(a, a) == a
    )


def unit_absorbed_idempotents(algebra: FiniteSemiring) -> FrozenSet[int]:
    """{a | 1+a=1 and a^2=a}."""
    one = algebra.one
    return frozenset(a for a in algebra.elements if algebra.plus(one, a) == one and algebra.times(a, a) == a)


class VarietyFlag(str, Enum):
    CRINGS2 = "CRings2"
    AICSR = "AICSR"
    BRINGS = "BRings"
    DLAT = "DLat"
    CSRSTAR = "CSRstar"


def classify(algebra: FiniteSemiring) -> FrozenSet[VarietyFlag]:
    flags = set()
    has_negatives = bool((algebra.add == algebra.zero).any(axis=1).all())
    ring2 = algebra.plus(algebra.one, algebra.one) == algebra.zero and has_negatives
    idempotent = IDEMPOTENT_SPEC.satisfied_by(algebra)

    if ring2:
        flags.add(VarietyFlag.CRINGS2)
        if idempotent:
            flags.add(VarietyFlag.BRINGS)
    if AICSR_SPEC.satisfied_by(algebra):
        flags.add(VarietyFlag.AICSR)
    if DLAT_SPEC.satisfied_by(algebra):
        flags.add(VarietyFlag.DLAT)
    if STAR_SPEC.satisfied_by(algebra):
        flags.add(VarietyFlag.CSRSTAR)
    return frozenset(flags)


def flag_names(flags) -> List[str]:
    """Flags in declaration order, as strings."""
    return [f.value for f in VarietyFlag if f in flags]
