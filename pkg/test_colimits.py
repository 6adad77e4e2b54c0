"""
Coproducts by bounded tensor closure, copair, coequalizers, pushouts and diagram colimits.
"""

import itertools

import pytest

from semirings.colimits.diagrams import Diagram, DiagramArrow, coequalizer, colimit_diagram, pushout
from semirings.colimits.tensor import TensorRelations, copair, tensor_coproduct, tensor_normalize
from semirings.config import load_settings
from semirings.core.canonical import are_isomorphic
from semirings.core.semiring import hom_enumerate, identity_hom, validate_hom
from semirings.errors import BaseMismatch, BoundUnstable, DiagramError, EmptyDiagram
from semirings.salgebra.builtins import BOOL, C3, NSTAR, TRIV, Z2, Z4
from semirings.salgebra.coreflection import BaseSemiring, SAlgebra, VarietyFlag, classify, validate_salgebra


def over_n(algebra):
    return SAlgebra.over_naturals(algebra)


def coproduct(left, right, **overrides):
    return tensor_coproduct(over_n(left), over_n(right), load_settings(**overrides))


def test_normalize_merges_shared_coordinates():
    relations = TensorRelations(over_n(C3), over_n(C3))
    # (m, 1) + (m, m) = (m, 1 + m) = (m, 1)
    assert tensor_normalize([(2, 1), (2, 2)], relations) == ((2, 1),)
    assert tensor_normalize([(0, 1), (1, 0)], relations) == ()
    assert tensor_normalize([(1, 2), (2, 1)], relations) == ((1, 2), (2, 1))


def test_normalize_doubled_generator_vanishes_through_either_side():
    # (1,1) + (1,1) = (1+1, 1) = (0, 1), which is zero
    assert tensor_normalize([(1, 1), (1, 1)], TensorRelations(over_n(Z2), over_n(BOOL))) == ()
    assert tensor_normalize([(1, 1), (1, 1)], TensorRelations(over_n(BOOL), over_n(Z2))) == ()
    assert tensor_normalize([(1, 1), (1, 1)], TensorRelations(over_n(BOOL), over_n(BOOL))) == ((1, 1),)


@pytest.mark.parametrize("left, right, expected", [
    (BOOL, BOOL, BOOL),
    (Z2, Z2, Z2),
    (Z2, BOOL, TRIV),
    (BOOL, Z2, TRIV),
])
def test_small_coproducts(left, right, expected):
    T = coproduct(left, right)
    assert are_isomorphic(T.result, expected)


def test_chain_coproduct_has_six_elements():
    T = coproduct(C3, C3)
    assert T.result.order == 6
    assert VarietyFlag.DLAT in classify(T.result)


@pytest.mark.parametrize("algebra", [TRIV, Z2, BOOL, NSTAR, C3], ids=lambda a: a.name)
def test_trivial_is_absorbing(algebra):
    assert coproduct(algebra, TRIV).result.order == 1
    assert coproduct(TRIV, algebra).result.order == 1


@pytest.mark.parametrize("algebra", [Z2, BOOL, NSTAR, C3], ids=lambda a: a.name)
def test_initial_star_algebra_is_a_unit(algebra):
    T = coproduct(algebra, NSTAR)
    assert are_isomorphic(T.result, algebra)
    assert T.left_injection.is_injective and T.left_injection.is_surjective


def test_injections_are_homomorphisms():
    T = coproduct(C3, BOOL)
    validate_hom(T.left_injection.images, C3, T.result)
    validate_hom(T.right_injection.images, BOOL, T.result)
    assert T.class_of([(1, 1)]) == T.result.one
    assert T.class_of([]) == T.result.zero


def test_coproduct_is_stable_one_bound_later():
    T = coproduct(C3, C3)
    later = coproduct(C3, C3, tensor_bound_slack=4)
    assert T.bound == later.bound
    assert T.result == later.result


def test_coproduct_over_a_finite_base():
    z4 = BaseSemiring.finite(Z4)
    A = validate_salgebra(z4, Z2)
    T = tensor_coproduct(A, A)
    assert are_isomorphic(T.result, Z2)
    assert T.salgebra.structure.source == Z4


def test_base_mismatch():
    A = validate_salgebra(BaseSemiring.finite(Z4), Z2)
    with pytest.raises(BaseMismatch):
        tensor_coproduct(A, over_n(Z2))


def test_universe_cap_raises_bound_unstable():
    with pytest.raises(BoundUnstable) as info:
        coproduct(C3, C3, tensor_universe_cap=10)
    assert "exceeds the cap" in info.value.reason


def test_copair_is_the_unique_mediator():
    T = coproduct(C3, BOOL)
    target = C3
    for p, q in itertools.product(hom_enumerate(C3, target), hom_enumerate(BOOL, target)):
        m = copair(T, p, q)
        assert T.left_injection.then(m) == p
        assert T.right_injection.then(m) == q
        mediators = [h for h in hom_enumerate(T.result, target)
                     if T.left_injection.then(h) == p and T.right_injection.then(h) == q]
        assert mediators == [m]


def test_copair_of_identities():
    T = coproduct(Z2, Z2)
    m = copair(T, identity_hom(Z2), identity_hom(Z2))
    assert m.images == (0, 1)


def test_copair_rejects_mismatched_legs():
    T = coproduct(Z2, Z2)
    with pytest.raises(ValueError):
        copair(T, identity_hom(BOOL), identity_hom(Z2))


def test_coequalizer_of_identity_and_collapse():
    collapse = validate_hom([0, 1, 1], C3, C3)
    result = coequalizer(identity_hom(C3), collapse)
    assert result.algebra == BOOL
    assert result.projection.images == (0, 1, 1)


def test_coequalizer_of_equal_maps_is_the_target():
    h = identity_hom(NSTAR)
    assert coequalizer(h, h).algebra == NSTAR


def test_pushout_of_z2_and_bool_over_nstar_is_trivial():
    f = hom_enumerate(NSTAR, Z2)[0]
    g = hom_enumerate(NSTAR, BOOL)[0]
    result = pushout(f, g)
    assert result.algebra.order == 1
    assert result.left_leg.target == result.algebra


def test_pushout_of_two_lattices_over_nstar_is_their_coproduct():
    f = hom_enumerate(NSTAR, C3)[0]
    result = pushout(f, f)
    assert result.algebra.order == 6
    assert VarietyFlag.DLAT in classify(result.algebra)


def test_pushout_along_identity_recovers_the_target():
    h = validate_hom([0, 1, 1], C3, BOOL)
    result = pushout(identity_hom(C3), h)
    assert are_isomorphic(result.algebra, BOOL)


def test_colimit_of_a_single_arrow():
    h = hom_enumerate(NSTAR, BOOL)[0]
    diagram = Diagram((over_n(NSTAR), over_n(BOOL)), (DiagramArrow(0, 1, h),))
    result = colimit_diagram(diagram)
    assert are_isomorphic(result.algebra, BOOL)
    assert len(result.legs) == 2
    # legs commute with the arrow
    assert h.then(result.legs[1]) == result.legs[0]


def test_colimit_of_a_single_object():
    result = colimit_diagram(Diagram((over_n(C3),)))
    assert result.algebra == C3


def test_colimit_of_a_span():
    f = hom_enumerate(NSTAR, Z2)[0]
    g = hom_enumerate(NSTAR, BOOL)[0]
    diagram = Diagram((over_n(NSTAR), over_n(Z2), over_n(BOOL)), (DiagramArrow(0, 1, f), DiagramArrow(0, 2, g)))
    assert colimit_diagram(diagram).algebra.order == 1


def test_empty_diagram():
    with pytest.raises(EmptyDiagram):
        colimit_diagram(Diagram(()))


def test_diagram_arrows_must_match_objects():
    h = hom_enumerate(NSTAR, BOOL)[0]
    with pytest.raises(DiagramError):
        Diagram((over_n(NSTAR), over_n(Z2)), (DiagramArrow(0, 1, h),))
    with pytest.raises(DiagramError):
        Diagram((over_n(NSTAR),), (DiagramArrow(0, 3, h),))
