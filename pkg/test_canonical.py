"""
Canonical forms are invariant under relabelling and separate non-isomorphic tables.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semirings.config import load_settings
from semirings.core.canonical import are_isomorphic, canonical_form, relabel
from semirings.core.semiring import direct_product, validate_hom
from semirings.errors import NotAHomomorphism, OrderTooLarge
from semirings.salgebra.builtins import BOOL, BUILTINS, C3, D4, NSTAR, TRIV, Z2, Z3, Z4

ALGEBRAS = [TRIV, Z2, BOOL, NSTAR, C3, Z3, Z4, D4, direct_product(Z2, BOOL).algebra]


def _brute_isomorphic(left, right):
    if left.order != right.order:
        return False
    for perm in itertools.permutations(range(left.order)):
        try:
            validate_hom(perm, left, right)
        except NotAHomomorphism:
            continue
        return True
    return False


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_canonical_form_is_relabelling_invariant(data):
    algebra = data.draw(st.sampled_from(ALGEBRAS))
    rest = data.draw(st.permutations(list(range(min(algebra.order, 2), algebra.order))))
    new_of_old = list(range(min(algebra.order, 2))) + list(rest)
    relabelled = relabel(algebra, new_of_old)
    assert canonical_form(relabelled) == canonical_form(algebra)
    assert are_isomorphic(relabelled, algebra)


def test_canonical_form_separates_builtins():
    forms = {canonical_form(a) for a in BUILTINS.values()}
    assert len(forms) == len(BUILTINS)


def test_are_isomorphic_agrees_with_brute_force():
    for left, right in itertools.product(ALGEBRAS, repeat=2):
        assert are_isomorphic(left, right) == _brute_isomorphic(left, right)


def test_relabel_must_fix_zero_and_one():
    with pytest.raises(ValueError):
        relabel(NSTAR, [1, 0, 2])
    with pytest.raises(ValueError):
        relabel(NSTAR, [0, 1, 1])


def test_orders_differ():
    assert not are_isomorphic(Z2, NSTAR)


def test_canonical_form_refuses_large_orders():
    small = load_settings(canonical_max_order=3)
    with pytest.raises(OrderTooLarge):
        canonical_form(Z4, small)
    assert canonical_form(C3, small)[0] == 3
