"""
Finite commutative semirings as operation tables.
Carrier is {0..n-1}; index 0 is the additive identity and, for n >= 2,
index 1 is the multiplicative identity.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import NotAHomomorphism, SemiringValidationError, TableShapeError
from .unionfind import UnionFind


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    """A validated commutative semiring on {0..n-1}.

    Equality and hashing compare the tables only, never the name.
    """
    add: np.ndarray
    mul: np.ndarray
    name: str = ""

    def __post_init__(self):
        for field in ("add", "mul"):
            table = np.array(getattr(self, field), dtype=np.int64)
            table.setflags(write=False)
            object.__setattr__(self, field, table)

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 if self.order > 1 else 0

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def label(self) -> str:
        return self.name or f"<order {self.order}>"

    @cached_property
    def add_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.add.tolist())

    @cached_property
    def mul_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.mul.tolist())

    def plus(self, a: int, b: int) -> int:
        return self.add_rows[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul_rows[a][b]

    def multiple(self, k: int, a: int) -> int:
        """k·a as a k-fold sum."""
        total = 0
        for _ in range(k):
            total = self.plus(total, a)
        return total

    def key(self) -> bytes:
        return bytes([self.order]) + self.add.astype(np.uint8).tobytes() + self.mul.astype(np.uint8).tobytes()

    def renamed(self, name: str) -> "FiniteSemiring":
        return FiniteSemiring(self.add, self.mul, name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSemiring):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.label!r}, order={self.order})"


class AxiomKind(str, Enum):
    NON_ASSOCIATIVE = "NonAssociative"
    NON_COMMUTATIVE = "NonCommutative"
    BAD_IDENTITY_ELEMENT = "BadIdentityElement"
    ABSORPTION_FAILS = "AbsorptionFails"
    DISTRIBUTIVITY_FAILS = "DistributivityFails"


@dataclass(frozen=True)
class AxiomViolation:
    """One violated axiom with the first witness found in row-major order."""
    kind: AxiomKind
    operation: str
    witness: Tuple[int, ...]

    def describe(self) -> str:
        return f"{self.kind.value}[{self.operation}] at {self.witness}"


def _as_table(order: int, table: Sequence[Sequence[int]], label: str) -> np.ndarray:
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise TableShapeError(f"{label} table is not an integer matrix: {e}") from e
    if arr.shape != (order, order):
        raise TableShapeError(f"{label} table has shape {arr.shape}, expected ({order}, {order})")
    if order < 1:
        raise TableShapeError("order must be positive")
    if arr.min() < 0 or arr.max() >= order:
        raise TableShapeError(f"{label} table has entries outside 0..{order - 1}")
    return arr


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _monoid_violations(table: np.ndarray, identity: int, operation: str) -> List[AxiomViolation]:
    n = table.shape[0]
    idx = np.arange(n)
    found = []

    witness = _first(table != table.T)
    if witness is not None:
        found.append(AxiomViolation(AxiomKind.NON_COMMUTATIVE, operation, witness))

    witness = _first((table[identity, :] != idx) | (table[:, identity] != idx))
    if witness is not None:
        found.append(AxiomViolation(AxiomKind.BAD_IDENTITY_ELEMENT, operation, witness))

    # lhs[x, y, z] = (x∘y)∘z and rhs[x, y, z] = x∘(y∘z)
    lhs = table[table[:, :, None], idx[None, None, :]]
    rhs = table[idx[:, None, None], table[None, :, :]]
    witness = _first(lhs != rhs)
    if witness is not None:
        found.append(AxiomViolation(AxiomKind.NON_ASSOCIATIVE, operation, witness))
    return found


def axiom_violations(order: int, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]]) -> List[AxiomViolation]:
    """Every violated commutative-semiring axiom, each with a witness."""
    add_t = _as_table(order, add, "add")
    mul_t = _as_table(order, mul, "mul")
    one = 1 if order > 1 else 0
    idx = np.arange(order)

    found = _monoid_violations(add_t, 0, "add") + _monoid_violations(mul_t, one, "mul")

    witness = _first(mul_t[:, 0] != 0)
    if witness is not None:
        found.append(AxiomViolation(AxiomKind.ABSORPTION_FAILS, "mul", witness))

    # x(y+z) against xy+xz
    lhs = mul_t[idx[:, None, None], add_t[None, :, :]]
    rhs = add_t[mul_t[:, :, None], mul_t[:, None, :]]
    witness = _first(lhs != rhs)
    if witness is not None:
        found.append(AxiomViolation(AxiomKind.DISTRIBUTIVITY_FAILS, "mul", witness))
    return found


def validate_semiring(order: int, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
                      name: str = "") -> FiniteSemiring:
    """Return a validated FiniteSemiring or raise with every violated axiom."""
    violations = axiom_violations(order, add, mul)
    if violations:
        raise SemiringValidationError(violations, name)
    return FiniteSemiring(np.asarray(add), np.asarray(mul), name)


@dataclass(frozen=True)
class Subset:
    algebra: FiniteSemiring
    members: FrozenSet[int]

    def __post_init__(self):
        members = frozenset(int(m) for m in self.members)
        bad = [m for m in members if not 0 <= m < self.algebra.order]
        if bad:
            raise ValueError(f"subset members {sorted(bad)} outside the carrier of {self.algebra.label}")
        object.__setattr__(self, "members", members)

    @property
    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_members)


@dataclass(frozen=True)
class Homomorphism:
    """A total map between carriers preserving 0, +, 1 and ·."""
    source: FiniteSemiring
    target: FiniteSemiring
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """other ∘ self."""
        if other.source != self.target:
            raise ValueError(f"cannot compose: {self.target.label} is not {other.source.label}")
        return Homomorphism(self.source, other.target, tuple(other.images[v] for v in self.images))

    def image(self) -> FrozenSet[int]:
        return frozenset(self.images)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order


def hom_failure(images: Sequence[int], source: FiniteSemiring, target: FiniteSemiring) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """The first violated preservation law with its witness, or None."""
    img = np.asarray(images, dtype=np.int64)
    if img[source.zero] != target.zero:
        return "zero", (source.zero,)
    if img[source.one] != target.one:
        return "one", (source.one,)
    witness = _first(img[source.add] != target.add[img[:, None], img[None, :]])
    if witness is not None:
        return "add", witness
    witness = _first(img[source.mul] != target.mul[img[:, None], img[None, :]])
    if witness is not None:
        return "mul", witness
    return None


def validate_hom(images: Sequence[int], source: FiniteSemiring, target: FiniteSemiring) -> Homomorphism:
    if len(images) != source.order:
        raise TableShapeError(f"map has {len(images)} images, {source.label} has {source.order} elements")
    if any(not 0 <= int(v) < target.order for v in images):
        raise TableShapeError(f"map has images outside the carrier of {target.label}")
    failure = hom_failure(images, source, target)
    if failure is not None:
        law, witness = failure
        raise NotAHomomorphism(law, witness, f"{source.label} -> {target.label}")
    return Homomorphism(source, target, tuple(images))


def identity_hom(algebra: FiniteSemiring) -> Homomorphism:
    return Homomorphism(algebra, algebra, tuple(algebra.elements))


def hom_compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """outer ∘ inner."""
    return inner.then(outer)


def hom_enumerate(source: FiniteSemiring, target: FiniteSemiring) -> List[Homomorphism]:
    """All homomorphisms source -> target, lexicographic in the image vector."""
    n = source.order
    images = [-1] * n
    forced = {source.zero: target.zero}
    if source.one in forced and forced[source.one] != target.one:
        return []
    forced[source.one] = target.one

    def consistent() -> bool:
        for x in range(n):
            fx = images[x]
            if fx < 0:
                continue
            for y in range(x, n):
                fy = images[y]
                if fy < 0:
                    continue
                s = images[source.plus(x, y)]
                if s >= 0 and s != target.plus(fx, fy):
                    return False
                p = images[source.times(x, y)]
                if p >= 0 and p != target.times(fx, fy):
                    return False
        return True

    found: List[Homomorphism] = []

    def extend(x: int):
        if x == n:
            found.append(Homomorphism(source, target, tuple(images)))
            return
        candidates = [forced[x]] if x in forced else range(target.order)
        for v in candidates:
            images[x] = v
            if consistent():
                extend(x + 1)
        images[x] = -1

    extend(0)
    return found


@dataclass(frozen=True)
class Congruence:
    """A congruence given by the least member of each element's class."""
    algebra: FiniteSemiring
    labels: Tuple[int, ...]

    @classmethod
    def from_labels(cls, algebra: FiniteSemiring, labels: Sequence[int]) -> "Congruence":
        least: Dict[int, int] = {}
        for x, lab in enumerate(labels):
            least.setdefault(lab, x)
        return cls(algebra, tuple(least[lab] for lab in labels))

    @classmethod
    def identity(cls, algebra: FiniteSemiring) -> "Congruence":
        return cls(algebra, tuple(algebra.elements))

    @property
    def classes(self) -> List[Tuple[int, ...]]:
        grouped: Dict[int, List[int]] = {}
        for x, lab in enumerate(self.labels):
            grouped.setdefault(lab, []).append(x)
        return [tuple(grouped[lab]) for lab in sorted(grouped)]

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    @property
    def is_identity(self) -> bool:
        return all(lab == x for x, lab in enumerate(self.labels))

    def contains(self, other: "Congruence") -> bool:
        """True if every pair related by other is related here."""
        return all(self.same(x, lab) for x, lab in enumerate(other.labels))


def is_congruence(algebra: FiniteSemiring, labels: Sequence[int]) -> bool:
    n = algebra.order
    for a in range(n):
        for b in range(a + 1, n):
            if labels[a] != labels[b]:
                continue
            for c in range(n):
                if labels[algebra.plus(a, c)] != labels[algebra.plus(b, c)]:
                    return False
                if labels[algebra.times(a, c)] != labels[algebra.times(b, c)]:
                    return False
    return True


def congruence_generated(algebra: FiniteSemiring, pairs: Iterable[Tuple[int, int]]) -> Congruence:
    """Least congruence containing pairs, by union-find and a pair worklist."""
    n = algebra.order
    uf = UnionFind(n)
    work = deque((int(a), int(b)) for a, b in pairs)
    while work:
        a, b = work.popleft()
        if not uf.union(a, b):
            continue
        for c in range(n):
            work.append((algebra.plus(a, c), algebra.plus(b, c)))
            work.append((algebra.times(a, c), algebra.times(b, c)))
    least = uf.least_members(range(n))
    logger.debug(f"congruence on {algebra.label}: {uf.merges} merges, {len(least)} classes")
    return Congruence(algebra, tuple(least[uf.find(x)] for x in range(n)))


def _set_partitions(n: int) -> Iterator[List[int]]:
    """Restricted growth strings of length n."""
    labels = [0] * n

    def grow(i: int, top: int):
        if i == n:
            yield list(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from grow(i + 1, max(top, v))

    if n == 0:
        return
    yield from grow(1, 0)


def enumerate_congruences(algebra: FiniteSemiring) -> List[Congruence]:
    """All congruences of the algebra, by brute force over partitions."""
    found = []
    for labels in _set_partitions(algebra.order):
        if is_congruence(algebra, labels):
            found.append(Congruence.from_labels(algebra, labels))
    return sorted(found, key=lambda c: c.labels)


class Quotient(NamedTuple):
    algebra: FiniteSemiring
    projection: Homomorphism


def quotient(algebra: FiniteSemiring, congruence: Congruence, name: str = "") -> Quotient:
    """A/E with the class of 0 at index 0 and the class of 1 at index 1."""
    if congruence.algebra != algebra:
        raise ValueError(f"congruence belongs to {congruence.algebra.label}, not {algebra.label}")
    labels = congruence.labels
    order = [labels[algebra.zero]]
    if labels[algebra.one] not in order:
        order.append(labels[algebra.one])
    order.extend(lab for lab in sorted(set(labels)) if lab not in order)
    index = {lab: i for i, lab in enumerate(order)}

    k = len(order)
    add = [[index[labels[algebra.plus(r, s)]] for s in order] for r in order]
    mul = [[index[labels[algebra.times(r, s)]] for s in order] for r in order]
    result = validate_semiring(k, add, mul, name or f"{algebra.label}/E")
    projection = validate_hom([index[labels[x]] for x in algebra.elements], algebra, result)
    return Quotient(result, projection)


class SubalgebraClosure(NamedTuple):
    subset: Subset
    algebra: FiniteSemiring
    inclusion: Homomorphism


def subalgebra_close(algebra: FiniteSemiring, seed: Iterable[int], name: str = "") -> SubalgebraClosure:
    """Smallest subalgebra containing seed, with its induced tables."""
    members = set(int(x) for x in seed) | {algebra.zero, algebra.one}
    frontier = list(members)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in list(members):
                for c in (algebra.plus(a, b), algebra.times(a, b)):
                    if c not in members:
                        fresh.add(c)
        members |= fresh
        frontier = list(fresh)

    ordered = sorted(members)
    index = {x: i for i, x in enumerate(ordered)}
    add = [[index[algebra.plus(a, b)] for b in ordered] for a in ordered]
    mul = [[index[algebra.times(a, b)] for b in ordered] for a in ordered]
    induced = validate_semiring(len(ordered), add, mul, name or f"<{algebra.label}>")
    inclusion = validate_hom(ordered, induced, algebra)
    return SubalgebraClosure(Subset(algebra, frozenset(members)), induced, inclusion)


class Product(NamedTuple):
    algebra: FiniteSemiring
    left: Homomorphism
    right: Homomorphism


def direct_product(left: FiniteSemiring, right: FiniteSemiring, name: str = "") -> Product:
    """Componentwise product, with (0,0) at index 0 and (1,1) at index 1."""
    pairs = [(left.zero, right.zero)]
    unit = (left.one, right.one)
    if unit not in pairs:
        pairs.append(unit)
    pairs.extend(p for p in ((a, b) for a in left.elements for b in right.elements) if p not in pairs)
    index = {p: i for i, p in enumerate(pairs)}

    add = [[index[(left.plus(a, c), right.plus(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    mul = [[index[(left.times(a, c), right.times(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    algebra = validate_semiring(len(pairs), add, mul, name or f"{left.label}x{right.label}")
    return Product(
        algebra,
        validate_hom([a for a, _ in pairs], algebra, left),
        validate_hom([b for _, b in pairs], algebra, right),
    )
