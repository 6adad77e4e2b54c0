"""
S-algebras, the initial object, star subsets, the coreflector and classify.
"""

import pytest

from semirings.core.canonical import are_isomorphic
from semirings.core.semiring import direct_product, enumerate_congruences, hom_enumerate, quotient
from semirings.errors import NotOverInitial, SAlgebraError
from semirings.salgebra.builtins import BOOL, C3, D4, NSTAR, TRIV, Z2, Z3, Z4, builtin
from semirings.salgebra.coreflection import (
    NATURALS,
    BaseSemiring,
    SAlgebra,
    VarietyFlag,
    classify,
    coreflect,
    flag_names,
    initial_object,
    is_over_initial,
    module_law_violations,
    naturals_scalar_sequence,
    star_subset,
    two_torsion_idempotents,
    unit_absorbed_idempotents,
    validate_salgebra,
)

F = VarietyFlag


def over_n(algebra):
    return SAlgebra.over_naturals(algebra)


def test_initial_object_over_naturals_is_nstar():
    initial = initial_object(NATURALS)
    assert initial.algebra == NSTAR
    assert initial.salgebra.base.is_naturals


def test_initial_object_over_z4_is_z2():
    initial = initial_object(BaseSemiring.finite(Z4))
    assert are_isomorphic(initial.algebra, Z2)
    assert initial.projection.images == (0, 1, 0, 1)


def test_initial_object_over_z4_matches_congruence_oracle():
    pairs = [(Z4.plus(Z4.one, Z4.plus(s, s)), Z4.one) for s in Z4.elements]
    pairs += [(Z4.times(s, s), s) for s in Z4.elements]
    containing = [c for c in enumerate_congruences(Z4) if all(c.same(a, b) for a, b in pairs)]
    least = min(containing, key=lambda c: -len(c.classes))
    assert all(c.contains(least) for c in containing)
    expected, _ = quotient(Z4, least)
    assert initial_object(BaseSemiring.finite(Z4)).algebra == expected


def test_initial_object_over_a_star_base_is_itself():
    assert initial_object(BaseSemiring.finite(C3)).algebra == C3
    assert initial_object(BaseSemiring.finite(Z3)).algebra.order == 1


def test_naturals_scalar_sequence():
    assert naturals_scalar_sequence(NSTAR) == ([0, 1, 2], 1)
    assert naturals_scalar_sequence(Z3) == ([0, 1, 2], 0)
    assert naturals_scalar_sequence(BOOL) == ([0, 1], 1)


def test_scalar_over_naturals_is_periodic():
    salgebra = over_n(NSTAR)
    assert [salgebra.scalar(k) for k in range(7)] == [0, 1, 2, 1, 2, 1, 2]
    assert [over_n(Z4).scalar(k) for k in (4, 5, 10)] == [0, 1, 2]


def test_module_laws_hold_for_builtins():
    for algebra in (TRIV, Z2, BOOL, NSTAR, C3, Z4, D4):
        assert module_law_violations(over_n(algebra)) == []


def test_validate_salgebra_picks_the_unique_structure_map():
    salgebra = validate_salgebra(BaseSemiring.finite(Z4), Z2)
    assert salgebra.structure.images == (0, 1, 0, 1)
    assert salgebra.scalar(3) == 1


def test_validate_salgebra_needs_an_explicit_map_when_ambiguous():
    with pytest.raises(SAlgebraError):
        validate_salgebra(BaseSemiring.finite(TRIV), Z2)
    # C3 has three endomorphisms
    assert len(hom_enumerate(C3, C3)) == 3
    with pytest.raises(SAlgebraError):
        validate_salgebra(BaseSemiring.finite(C3), C3)
    salgebra = validate_salgebra(BaseSemiring.finite(C3), C3, [0, 1, 2])
    assert salgebra.act(2, 2) == 2


@pytest.mark.parametrize("algebra, expected", [
    (TRIV, True), (Z2, True), (BOOL, True), (NSTAR, True), (C3, True), (D4, True),
    (Z3, False), (Z4, False),
])
def test_over_initial(algebra, expected):
    assert is_over_initial(over_n(algebra)) is expected


def test_over_initial_for_a_finite_base():
    z4 = BaseSemiring.finite(Z4)
    assert is_over_initial(validate_salgebra(z4, Z2))
    assert not is_over_initial(validate_salgebra(z4, Z4, [0, 1, 2, 3]))


def test_star_subset_not_over_initial():
    with pytest.raises(NotOverInitial) as info:
        star_subset(over_n(Z3))
    assert "1+1+1 = 0" in str(info.value)


def test_star_subsets():
    assert star_subset(over_n(D4)).members == frozenset({0, 1})
    assert star_subset(over_n(C3)).members == frozenset({0, 1, 2})
    assert star_subset(over_n(NSTAR)).members == frozenset({0, 1, 2})


def test_star_subset_of_a_mixed_product_is_everything():
    product = direct_product(Z2, BOOL).algebra
    assert star_subset(over_n(product)).members == frozenset(range(4))


def test_coreflect_d4_is_z2_boolean_ring():
    result = coreflect(over_n(D4))
    assert are_isomorphic(result.algebra, Z2)
    assert F.BRINGS in classify(result.algebra)
    assert result.inclusion.images == (0, 1)


def test_coreflect_is_identity_on_star_algebras():
    for algebra in (TRIV, Z2, BOOL, NSTAR, C3):
        result = coreflect(over_n(algebra))
        assert result.algebra == algebra
        assert result.inclusion.images == tuple(algebra.elements)


def test_coreflect_is_idempotent():
    once = coreflect(over_n(D4))
    twice = coreflect(once.salgebra)
    assert twice.algebra == once.algebra


def test_coreflect_over_a_finite_base_keeps_the_structure_map():
    salgebra = validate_salgebra(BaseSemiring.finite(Z4), direct_product(Z2, Z2).algebra)
    result = coreflect(salgebra)
    assert result.salgebra.structure.source == Z4
    assert result.algebra.order == 4


def test_coreflect_refuses_algebras_not_over_initial():
    with pytest.raises(NotOverInitial):
        coreflect(over_n(Z4))


def test_section_three_comprehensions():
    assert two_torsion_idempotents(D4) == frozenset({0, 1})
    assert unit_absorbed_idempotents(C3) == frozenset({0, 1, 2})
    assert unit_absorbed_idempotents(BOOL) == frozenset({0, 1})


@pytest.mark.parametrize("name, flags", [
    ("TRIV", ["CRings2", "AICSR", "BRings", "DLat", "CSRstar"]),
    ("Z2", ["CRings2", "BRings", "CSRstar"]),
    ("BOOL", ["AICSR", "DLat", "CSRstar"]),
    ("NSTAR", ["CSRstar"]),
    ("C3", ["AICSR", "DLat", "CSRstar"]),
    ("Z4", []),
    ("D4", ["CRings2"]),
    ("Z3", []),
])
def test_classify(name, flags):
    assert flag_names(classify(builtin(name))) == flags


def test_product_of_z2_and_bool_is_neither_ring_nor_idempotent():
    flags = classify(direct_product(Z2, BOOL).algebra)
    assert F.CRINGS2 not in flags
    assert F.AICSR not in flags
    assert F.CSRSTAR in flags
