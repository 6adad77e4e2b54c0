"""
Binary coproducts of S-algebras as tensor products A ⊗_S B.

Elements are bounded multisets of generators (a, b) read as formal sums of
a⊗b. Equivalence is kept by union-find over an explicitly enumerated
universe of multisets; the relations are bilinearity (merge and split),
(s·a, b) = (a, s·b) for a finite base, and congruence propagation through
both operations. A result is only emitted once it is stable under one more
unit of bound.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from loguru import logger

from ..config import KernelSettings, load_settings
from ..core.semiring import FiniteSemiring, Homomorphism, validate_hom, validate_semiring
from ..core.unionfind import UnionFind
from ..errors import BaseMismatch, BoundUnstable, IllDefined, NotAHomomorphism, SemiringValidationError
from ..salgebra.coreflection import SAlgebra


class TensorGenerator(NamedTuple):
    left: int
    right: int


TensorElement = Tuple[TensorGenerator, ...]


@dataclass(frozen=True)
class TensorRelations:
    """The two factors and the arithmetic on formal sums of their generators."""
    left: SAlgebra
    right: SAlgebra

    @property
    def A(self) -> FiniteSemiring:
        return self.left.algebra

    @property
    def B(self) -> FiniteSemiring:
        return self.right.algebra

    def generators(self) -> List[TensorGenerator]:
        return [TensorGenerator(a, b) for a in self.A.elements if a != self.A.zero
                for b in self.B.elements if b != self.B.zero]

    def element(self, members: Sequence[Tuple[int, int]]) -> TensorElement:
        """Sorted, with zero generators dropped."""
        return tuple(sorted(TensorGenerator(a, b) for a, b in members
                            if a != self.A.zero and b != self.B.zero))

    def scalar_moves(self) -> List[Tuple[int, int]]:
        """(s·1 in A, s·1 in B) for every s of a finite base."""
        if self.left.base.is_naturals:
            return []
        return [(self.left.scalar(s), self.right.scalar(s)) for s in self.left.base.semiring.elements]

    def add(self, x: TensorElement, y: TensorElement) -> TensorElement:
        return tensor_normalize(x + y, self)

    def mul(self, x: TensorElement, y: TensorElement) -> TensorElement:
        A, B = self.A, self.B
        pairs = [(A.times(a, c), B.times(b, d)) for (a, b) in x for (c, d) in y]
        return tensor_normalize(self.element(pairs), self)

    def value(self, x: TensorElement, p: Homomorphism, q: Homomorphism) -> int:
        """Σ p(a)·q(b) in the common target of p and q."""
        C = p.target
        total = C.zero
        for a, b in x:
            total = C.plus(total, C.times(p(a), q(b)))
        return total


def tensor_normalize(x: Sequence[Tuple[int, int]], relations: TensorRelations) -> TensorElement:
    """Merge members sharing a coordinate until all lefts and all rights are distinct."""
    A, B = relations.A, relations.B
    members = list(relations.element(x))
    merged = True
    while merged:
        merged = False
        for i in range(len(members)):
            a, b = members[i]
            for j in range(i + 1, len(members)):
                c, d = members[j]
                if a == c and b == d:
                    # a doubled generator: merge through whichever side's sum vanishes
                    replacement = (A.plus(a, c), b)
                    if replacement[0] != A.zero and B.plus(b, d) == B.zero:
                        replacement = (a, B.plus(b, d))
                elif a == c:
                    replacement = (a, B.plus(b, d))
                elif b == d:
                    replacement = (A.plus(a, c), b)
                else:
                    continue
                del members[j]
                del members[i]
                members.extend(relations.element([replacement]))
                merged = True
                break
            if merged:
                break
    return relations.element(members)


def _size_key(x: TensorElement) -> Tuple[int, TensorElement]:
    return len(x), x


class _TensorClosure:
    """Union-find closure over all multisets of size <= bound."""

    def __init__(self, relations: TensorRelations, bound: int, universe_cap: int):
        self.relations = relations
        self.bound = bound
        generators = relations.generators()
        size = math.comb(len(generators) + bound, bound)
        if size > universe_cap:
            raise BoundUnstable(relations.A.label, relations.B.label, (bound,),
                                f"universe of {size} multisets exceeds the cap {universe_cap}")
        self.universe: List[TensorElement] = [
            combo for k in range(bound + 1) for combo in itertools.combinations_with_replacement(generators, k)
        ]
        self.index: Dict[TensorElement, int] = {x: i for i, x in enumerate(self.universe)}
        self.uf = UnionFind(len(self.universe))

    def union(self, x: TensorElement, y: TensorElement) -> None:
        self.uf.union(self.index[x], self.index[y])

    def find(self, x: TensorElement) -> int:
        return self.uf.find(self.index[x])

    def seed(self) -> None:
        rel = self.relations
        A, B = rel.A, rel.B
        moves = rel.scalar_moves()
        for x in self.universe:
            for i, j in itertools.combinations(range(len(x)), 2):
                (a, b), (c, d) = x[i], x[j]
                rest = [g for k, g in enumerate(x) if k not in (i, j)]
                if a == c:
                    self.union(x, rel.element(rest + [(a, B.plus(b, d))]))
                if b == d:
                    self.union(x, rel.element(rest + [(A.plus(a, c), b)]))
            for i, (a, b) in enumerate(x):
                rest = list(x[:i] + x[i + 1:])
                for sa, sb in moves:
                    self.union(rel.element(rest + [(A.times(sa, a), b)]),
                               rel.element(rest + [(a, B.times(sb, b))]))

    def representatives(self) -> Dict[int, TensorElement]:
        reps: Dict[int, TensorElement] = {}
        for x in self.universe:
            root = self.find(x)
            if root not in reps or _size_key(x) < _size_key(reps[root]):
                reps[root] = x
        return reps

    def propagate_round(self) -> int:
        """One pass of congruence propagation; returns the number of merges."""
        rel = self.relations
        before = self.uf.merges
        reps = self.representatives()
        rep_of = {x: reps[self.find(x)] for x in self.universe}
        rep_list = [reps[r] for r in sorted(reps, key=lambda r: _size_key(reps[r]))]

        for x in self.universe:
            rx = rep_of[x]
            if rx == x:
                continue
            for r in rep_list:
                self.union(rel.add(x, r), rel.add(rx, r))
                self.union(rel.mul(x, r), rel.mul(rx, r))

        # a formal sum equals the sum of its generator classes
        for x in self.universe:
            total: TensorElement = ()
            for g in x:
                total = rel.add(rep_of[total], rep_of[(g,)])
            self.union(x, total)

        # a⊗b is the product of the injected a⊗1 and 1⊗b
        one_a, one_b = rel.A.one, rel.B.one
        for g in rel.generators():
            left = rep_of[rel.element([(g.left, one_b)])]
            right = rep_of[rel.element([(one_a, g.right)])]
            self.union((g,), rel.mul(left, right))
        return self.uf.merges - before

    def close(self) -> None:
        self.seed()
        rounds = 0
        while True:
            rounds += 1
            merged = self.propagate_round()
            logger.debug(f"tensor closure bound={self.bound} round {rounds}: {merged} merges")
            if merged == 0:
                return


@dataclass(frozen=True)
class TensorQuotient:
    """The coproduct of two S-algebras with its injections."""
    left: SAlgebra
    right: SAlgebra
    bound: int
    universe: Tuple[TensorElement, ...]
    labels: Tuple[int, ...]
    representatives: Tuple[TensorElement, ...]
    result: FiniteSemiring
    left_injection: Homomorphism
    right_injection: Homomorphism

    @property
    def relations(self) -> TensorRelations:
        return TensorRelations(self.left, self.right)

    @property
    def salgebra(self) -> SAlgebra:
        """The coproduct as an S-algebra over the common base."""
        structure = None
        if not self.left.base.is_naturals:
            structure = self.left.structure.then(self.left_injection)
        return SAlgebra(self.left.base, self.result, structure)

    def class_of(self, members: Sequence[Tuple[int, int]]) -> int:
        x = tensor_normalize(members, self.relations)
        return self.labels[self.universe.index(x)]


def _build_quotient(closure: _TensorClosure) -> TensorQuotient:
    rel = closure.relations
    reps = closure.representatives()
    zero_root = closure.find(())
    unit_root = closure.find(rel.element([(rel.A.one, rel.B.one)]))

    roots = [zero_root]
    if unit_root != zero_root:
        roots.append(unit_root)
    roots += sorted((r for r in reps if r not in roots), key=lambda r: _size_key(reps[r]))
    position = {r: i for i, r in enumerate(roots)}
    ordered = [reps[r] for r in roots]

    def class_index(x: TensorElement) -> int:
        return position[closure.find(x)]

    n = len(roots)
    add = [[class_index(rel.add(x, y)) for y in ordered] for x in ordered]
    mul = [[class_index(rel.mul(x, y)) for y in ordered] for x in ordered]
    result = validate_semiring(n, add, mul, f"{rel.A.label}+{rel.B.label}")

    one_a, one_b = rel.A.one, rel.B.one
    left = validate_hom([class_index(rel.element([(a, one_b)])) for a in rel.A.elements], rel.A, result)
    right = validate_hom([class_index(rel.element([(one_a, b)])) for b in rel.B.elements], rel.B, result)
    if not rel.left.base.is_naturals:
        for s in rel.left.base.semiring.elements:
            if left(rel.left.scalar(s)) != right(rel.right.scalar(s)):
                raise NotAHomomorphism("base", (s,), "injections disagree on the base")

    return TensorQuotient(
        left=rel.left,
        right=rel.right,
        bound=closure.bound,
        universe=tuple(closure.universe),
        labels=tuple(class_index(x) for x in closure.universe),
        representatives=tuple(ordered),
        result=result,
        left_injection=left,
        right_injection=right,
    )


def _stable(small: TensorQuotient, large: TensorQuotient) -> bool:
    """The map induced by the inclusion of universes is an isomorphism."""
    if small.result.order != large.result.order:
        return False
    position = {x: i for i, x in enumerate(large.universe)}
    images: Dict[int, int] = {}
    for x, label in zip(small.universe, small.labels):
        target = large.labels[position[x]]
        if images.setdefault(label, target) != target:
            return False
    mapping = [images[i] for i in range(small.result.order)]
    if len(set(mapping)) != len(mapping):
        return False
    try:
        validate_hom(mapping, small.result, large.result)
    except NotAHomomorphism:
        return False
    return True


def _closure_at(relations: TensorRelations, bound: int, settings: KernelSettings) -> TensorQuotient:
    closure = _TensorClosure(relations, bound, settings.tensor_universe_cap)
    closure.close()
    return _build_quotient(closure)


def tensor_coproduct(left: SAlgebra, right: SAlgebra, settings: Optional[KernelSettings] = None) -> TensorQuotient:
    """A ⊗_S B, stable under one more unit of bound, or BoundUnstable."""
    settings = settings or load_settings()
    if left.base != right.base:
        raise BaseMismatch(f"{left.name} is over {left.base.label} but {right.name} is over {right.base.label}")

    relations = TensorRelations(left, right)
    first = min(left.algebra.order, right.algebra.order) + 1
    last = first + settings.tensor_bound_slack
    reasons: List[str] = []
    previous: Optional[TensorQuotient] = None

    for bound in range(first, last + 1):
        try:
            current = _closure_at(relations, bound, settings)
        except (SemiringValidationError, NotAHomomorphism) as e:
            reasons.append(f"bound {bound}: {e}")
            previous = None
            continue
        if previous is not None and _stable(previous, current):
            logger.debug(f"{left.name} ⊗ {right.name}: order {previous.result.order} at bound {previous.bound}")
            return previous
        if previous is not None:
            reasons.append(f"bounds {previous.bound} and {bound} disagree")
        previous = current

    raise BoundUnstable(left.name, right.name, tuple(range(first, last + 1)),
                        "; ".join(reasons) or "no two consecutive bounds agreed")


def copair(tensor: TensorQuotient, p: Homomorphism, q: Homomorphism) -> Homomorphism:
    """The mediating map sending [Σ (a_i, b_i)] to Σ p(a_i)·q(b_i)."""
    if p.source != tensor.left.algebra or q.source != tensor.right.algebra:
        raise ValueError("cocone legs must start at the two factors of the coproduct")
    if p.target != q.target:
        raise ValueError("cocone legs must share a target")

    relations = tensor.relations
    values: Dict[int, Tuple[TensorElement, int]] = {}
    for x, label in zip(tensor.universe, tensor.labels):
        v = relations.value(x, p, q)
        seen = values.setdefault(label, (x, v))
        if seen[1] != v:
            raise IllDefined((seen[0], x), (seen[1], v))
    images = [values[i][1] for i in range(tensor.result.order)]
    return validate_hom(images, tensor.result, p.target)
