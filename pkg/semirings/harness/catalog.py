"""
Iso-free catalog of small commutative semirings.

Addition tables are enumerated first as commutative monoids with identity 0,
then multiplication tables with identity 1 and absorbing 0; partial tables
are pruned on associativity and distributivity, complete ones deduplicated
by canonical_form.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional

from loguru import logger

from ..config import KernelSettings, load_settings
from ..core.canonical import canonical_form
from ..core.semiring import FiniteSemiring, validate_semiring
from ..errors import OrderTooLarge
from ..salgebra.builtins import BUILTINS, FIXTURES
from ..salgebra.coreflection import VarietyFlag, classify, flag_names

UNSET = -1


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: FiniteSemiring
    flags: FrozenSet[VarietyFlag]
    canonical: bytes

    @property
    def order(self) -> int:
        return self.algebra.order

    @property
    def flag_names(self) -> List[str]:
        return flag_names(self.flags)


@dataclass
class Catalog:
    """Entries pairwise non-isomorphic, ordered by (order, canonical form)."""
    entries: List[CatalogEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __contains__(self, algebra: FiniteSemiring) -> bool:
        key = canonical_form(algebra)
        return any(e.canonical == key for e in self.entries)

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    def find(self, algebra: FiniteSemiring) -> Optional[CatalogEntry]:
        key = canonical_form(algebra)
        return next((e for e in self.entries if e.canonical == key), None)

    def with_flag(self, flag: VarietyFlag, max_order: Optional[int] = None) -> List[CatalogEntry]:
        return [e for e in self.entries if flag in e.flags and (max_order is None or e.order <= max_order)]

    def up_to(self, max_order: int) -> "Catalog":
        return Catalog([e for e in self.entries if e.order <= max_order])


def _known_names(settings: KernelSettings) -> Dict[bytes, str]:
    names = {}
    for name, algebra in FIXTURES.items():
        if algebra.order <= settings.canonical_max_order:
            names.setdefault(canonical_form(algebra, settings), name)
    return names


def build_catalog(algebras: Iterable[FiniteSemiring], settings: Optional[KernelSettings] = None) -> Catalog:
    """Deduplicate up to isomorphism, keeping the first name seen for each class."""
    settings = settings or load_settings()
    seen: Dict[bytes, CatalogEntry] = {}
    for algebra in algebras:
        key = canonical_form(algebra, settings)
        if key not in seen:
            seen[key] = CatalogEntry(algebra.label, algebra, classify(algebra), key)
    entries = sorted(seen.values(), key=lambda e: (e.order, e.canonical))
    return Catalog(entries)


def builtin_catalog(settings: Optional[KernelSettings] = None) -> Catalog:
    return build_catalog(BUILTINS.values(), settings)


def _associative_so_far(table: List[List[int]], n: int) -> bool:
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, yz = table[x][y], table[y][z]
        if xy == UNSET or yz == UNSET:
            continue
        left, right = table[xy][z], table[x][yz]
        if left != UNSET and right != UNSET and left != right:
            return False
    return True


def _distributive_so_far(add: List[List[int]], mul: List[List[int]], n: int) -> bool:
    for x, y, z in itertools.product(range(n), repeat=3):
        left = mul[x][add[y][z]]
        xy, xz = mul[x][y], mul[x][z]
        if left == UNSET or xy == UNSET or xz == UNSET:
            continue
        if left != add[xy][xz]:
            return False
    return True


def _fill(table: List[List[int]], cells: List[tuple], n: int, ok) -> Iterator[List[List[int]]]:
    """Assign the free cells symmetrically, backtracking whenever ok fails."""
    if not cells:
        yield [row[:] for row in table]
        return
    (i, j), rest = cells[0], cells[1:]
    for v in range(n):
        table[i][j] = table[j][i] = v
        if ok(table):
            yield from _fill(table, rest, n, ok)
    table[i][j] = table[j][i] = UNSET


def _addition_tables(n: int) -> Iterator[List[List[int]]]:
    table = [[UNSET] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    yield from _fill(table, cells, n, lambda t: _associative_so_far(t, n))


def _multiplication_tables(n: int, add: List[List[int]]) -> Iterator[List[List[int]]]:
    table = [[UNSET] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = 0
    if n > 1:
        for x in range(n):
            table[1][x] = table[x][1] = x
        table[0][1] = table[1][0] = 0
    cells = [(i, j) for i in range(2, n) for j in range(i, n)]
    yield from _fill(table, cells, n,
                     lambda t: _associative_so_far(t, n) and _distributive_so_far(add, t, n))


def enumerate_semirings(n: int, settings: Optional[KernelSettings] = None) -> Catalog:
    """All commutative semirings of order n up to isomorphism, deterministically ordered."""
    settings = settings or load_settings()
    if n > settings.max_order:
        raise OrderTooLarge(n, settings.max_order, "enumerate_semirings")
    if n < 1:
        raise ValueError("order must be positive")

    known = _known_names(settings)
    found: Dict[bytes, FiniteSemiring] = {}
    tables = 0
    for add in _addition_tables(n):
        for mul in _multiplication_tables(n, add):
            tables += 1
            algebra = validate_semiring(n, add, mul)
            found.setdefault(canonical_form(algebra, settings), algebra)

    entries = []
    anonymous = 0
    for key in sorted(found):
        name = known.get(key)
        if name is None:
            anonymous += 1
            name = f"S{n}_{anonymous}"
        algebra = found[key].renamed(name)
        entries.append(CatalogEntry(name, algebra, classify(algebra), key))
    logger.debug(f"order {n}: {tables} semirings, {len(entries)} up to isomorphism")
    return Catalog(entries)


def catalog_up_to(max_order: int, settings: Optional[KernelSettings] = None) -> Catalog:
    """enumerate_semirings for every order 1..max_order, concatenated."""
    settings = settings or load_settings()
    if max_order > settings.max_order:
        raise OrderTooLarge(max_order, settings.max_order, "catalog_up_to")
    entries: List[CatalogEntry] = []
    for n in range(1, max_order + 1):
        entries.extend(enumerate_semirings(n, settings).entries)
    return Catalog(entries)
