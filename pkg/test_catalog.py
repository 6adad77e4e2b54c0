"""
The pruned enumerator against an unpruned double loop with brute-force isomorphism.
"""

import itertools

import pytest

from semirings.config import load_settings
from semirings.core.semiring import validate_semiring
from semirings.errors import OrderTooLarge
from semirings.harness.catalog import build_catalog, builtin_catalog, catalog_up_to, enumerate_semirings
from semirings.salgebra.builtins import BOOL, BUILTINS, C3, NSTAR, TRIV, Z2, Z3
from semirings.salgebra.coreflection import VarietyFlag, classify


def _is_semiring(n, add, mul):
    one = 1 if n > 1 else 0
    r = range(n)
    for x, y in itertools.product(r, repeat=2):
        if add[x][y] != add[y][x] or mul[x][y] != mul[y][x]:
            return False
    for x in r:
        if add[0][x] != x or mul[one][x] != x or mul[0][x] != 0:
            return False
    for x, y, z in itertools.product(r, repeat=3):
        if add[add[x][y]][z] != add[x][add[y][z]]:
            return False
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            return False
        if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
            return False
    return True


def _isomorphic(n, left, right):
    (add1, mul1), (add2, mul2) = left, right
    for perm in itertools.permutations(range(n)):
        if all(perm[add1[x][y]] == add2[perm[x]][perm[y]] and perm[mul1[x][y]] == mul2[perm[x]][perm[y]]
               for x, y in itertools.product(range(n), repeat=2)):
            return True
    return False


def naive_enumerate(n):
    """Every table pair with a fixed zero row, deduplicated pairwise."""
    one = 1 if n > 1 else 0
    found = []
    free = [(x, y) for x in range(1, n) for y in range(1, n)]
    for add_values in itertools.product(range(n), repeat=len(free)):
        add = [[y if x == 0 else (x if y == 0 else None) for y in range(n)] for x in range(n)]
        for (x, y), v in zip(free, add_values):
            add[x][y] = v
        mul_free = [(x, y) for x in range(n) for y in range(n) if x not in (0, one) and y not in (0, one)]
        for mul_values in itertools.product(range(n), repeat=len(mul_free)):
            mul = [[0 if 0 in (x, y) else (y if x == one else (x if y == one else None))
                    for y in range(n)] for x in range(n)]
            for (x, y), v in zip(mul_free, mul_values):
                mul[x][y] = v
            if not _is_semiring(n, add, mul):
                continue
            if not any(_isomorphic(n, (add, mul), other) for other in found):
                found.append(([row[:] for row in add], [row[:] for row in mul]))
    return found


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumerator_matches_naive_oracle(n):
    catalog = enumerate_semirings(n)
    oracle = naive_enumerate(n)
    assert len(catalog) == len(oracle)
    for add, mul in oracle:
        matches = [e for e in catalog
                   if _isomorphic(n, (add, mul), (e.algebra.add.tolist(), e.algebra.mul.tolist()))]
        assert len(matches) == 1


def test_order_one_and_two():
    assert [e.algebra for e in enumerate_semirings(1)] == [TRIV]
    two = enumerate_semirings(2)
    assert {e.name for e in two} == {"Z2", "BOOL"}
    assert [e.algebra for e in two] == [Z2, BOOL]


def test_order_three_contains_known_algebras():
    three = enumerate_semirings(3)
    for algebra in (NSTAR, C3, Z3):
        entry = three.find(algebra)
        assert entry is not None
        assert entry.name == algebra.name
    assert len(set(three.names)) == len(three)


def test_entries_carry_their_flags():
    for entry in catalog_up_to(3):
        assert entry.flags == classify(entry.algebra)
        validate_semiring(entry.order, entry.algebra.add, entry.algebra.mul)


def test_enumeration_is_deterministic():
    assert enumerate_semirings(3).names == enumerate_semirings(3).names


def test_order_four_contains_z4_and_d4():
    four = enumerate_semirings(4)
    assert four.find(BUILTINS["Z4"]) is not None
    assert four.find(BUILTINS["D4"]) is not None


def test_order_too_large():
    with pytest.raises(OrderTooLarge):
        enumerate_semirings(3, load_settings(max_order=2))
    with pytest.raises(OrderTooLarge):
        catalog_up_to(5, load_settings(max_order=4))


def test_build_catalog_deduplicates():
    catalog = build_catalog([Z2, BOOL, Z2.renamed("again"), C3])
    assert catalog.names == ["Z2", "BOOL", "C3"]
    assert catalog.with_flag(VarietyFlag.DLAT) == [catalog.find(BOOL), catalog.find(C3)]


def test_builtin_catalog():
    catalog = builtin_catalog()
    assert len(catalog) == len(BUILTINS)
    assert all(e.order <= 2 for e in catalog.up_to(2))
