"""
Coequalizers, pushouts and colimits of finite diagrams.

Connected colimits in (S↓CSR) are computed in CSR, so a pushout only needs
the coproduct over N; arbitrary diagrams use the iterated coproduct over
the common base followed by one coequalizer.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

from loguru import logger

from ..config import KernelSettings, load_settings
from ..core.semiring import (
    FiniteSemiring,
    Homomorphism,
    congruence_generated,
    identity_hom,
    quotient,
    validate_hom,
)
from ..errors import DiagramError, EmptyDiagram
from ..salgebra.coreflection import SAlgebra
from .tensor import TensorQuotient, tensor_coproduct


class Coequalizer(NamedTuple):
    algebra: FiniteSemiring
    projection: Homomorphism


def coequalizer(f: Homomorphism, g: Homomorphism, name: str = "") -> Coequalizer:
    """B/E for E generated by {(f(a), g(a))}."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("coequalizer needs two parallel maps")
    B = f.target
    congruence = congruence_generated(B, ((f(a), g(a)) for a in f.source.elements))
    result, projection = quotient(B, congruence, name or f"coeq({B.label})")
    return Coequalizer(result, projection)


class Pushout(NamedTuple):
    algebra: FiniteSemiring
    left_leg: Homomorphism
    right_leg: Homomorphism
    coproduct: TensorQuotient


def pushout(f: Homomorphism, g: Homomorphism, settings: Optional[KernelSettings] = None) -> Pushout:
    """Pushout of A <-f- Z -g-> B as coeq(ι_A∘f, ι_B∘g) on A ⊗_N B."""
    if f.source != g.source:
        raise ValueError("pushout legs must share their source")
    T = tensor_coproduct(SAlgebra.over_naturals(f.target), SAlgebra.over_naturals(g.target), settings)
    u = f.then(T.left_injection)
    v = g.then(T.right_injection)
    result, projection = coequalizer(u, v, f"{f.target.label}+[{f.source.label}]{g.target.label}")
    return Pushout(result, T.left_injection.then(projection), T.right_injection.then(projection), T)


@dataclass(frozen=True)
class DiagramArrow:
    source: int
    target: int
    hom: Homomorphism


@dataclass(frozen=True)
class Diagram:
    """Objects over one base and arrows between them, by object index."""
    objects: Tuple[SAlgebra, ...]
    arrows: Tuple[DiagramArrow, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        bases = {obj.base for obj in self.objects}
        if len(bases) > 1:
            raise DiagramError("diagram objects are over different bases")
        for k, arrow in enumerate(self.arrows):
            for end in (arrow.source, arrow.target):
                if not 0 <= end < len(self.objects):
                    raise DiagramError(f"arrow {k} refers to object {end}, diagram has {len(self.objects)}")
            src = self.objects[arrow.source].algebra
            dst = self.objects[arrow.target].algebra
            if arrow.hom.source != src or arrow.hom.target != dst:
                raise DiagramError(f"arrow {k} does not run from object {arrow.source} to object {arrow.target}")
            validate_hom(arrow.hom.images, src, dst)


class Colimit(NamedTuple):
    algebra: FiniteSemiring
    legs: List[Homomorphism]


def _iterated_coproduct(objects: Tuple[SAlgebra, ...],
                        settings: KernelSettings) -> Tuple[SAlgebra, List[Homomorphism]]:
    """((A0 ⊗ A1) ⊗ A2) ⊗ ... with every leg into the final result."""
    current = objects[0]
    legs = [identity_hom(current.algebra)]
    for obj in objects[1:]:
        T = tensor_coproduct(current, obj, settings)
        legs = [leg.then(T.left_injection) for leg in legs] + [T.right_injection]
        current = T.salgebra
    return current, legs


def colimit_diagram(diagram: Diagram, settings: Optional[KernelSettings] = None) -> Colimit:
    """Coequalize the coproduct of the objects along every arrow."""
    if not diagram.objects:
        raise EmptyDiagram()
    settings = settings or load_settings()

    coproduct, legs = _iterated_coproduct(diagram.objects, settings)
    pairs = []
    for arrow in diagram.arrows:
        source_leg, target_leg = legs[arrow.source], legs[arrow.target]
        for x in arrow.hom.source.elements:
            pairs.append((source_leg(x), target_leg(arrow.hom(x))))

    congruence = congruence_generated(coproduct.algebra, pairs)
    result, projection = quotient(coproduct.algebra, congruence, "colim")
    logger.debug(
        f"colimit of {len(diagram.objects)} objects and {len(diagram.arrows)} arrows has order {result.order}"
    )
    return Colimit(result, [leg.then(projection) for leg in legs])
