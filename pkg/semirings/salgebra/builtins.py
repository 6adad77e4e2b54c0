"""
Built-in fixtures: TRIV, Z2, BOOL, NSTAR, C3, Z4, D4 (and Z3 for tests).
Tables are generated from the defining arithmetic, never typed by hand,
except NSTAR which is the three-element quotient of N with 3 = 1.
"""

from typing import Callable, Dict, Sequence, TypeVar

from ..core.semiring import FiniteSemiring, validate_semiring

T = TypeVar("T")


def table_from_operations(elements: Sequence[T], plus: Callable[[T, T], T], times: Callable[[T, T], T],
                          name: str) -> FiniteSemiring:
    """Build tables from Python operations; elements[0] is zero, elements[1] is one."""
    index = {x: i for i, x in enumerate(elements)}
    add = [[index[plus(x, y)] for y in elements] for x in elements]
    mul = [[index[times(x, y)] for y in elements] for x in elements]
    return validate_semiring(len(elements), add, mul, name)


def integers_mod(n: int, name: str = "") -> FiniteSemiring:
    return table_from_operations(list(range(n)), lambda x, y: (x + y) % n, lambda x, y: (x * y) % n,
                                 name or f"Z{n}")


def chain_lattice(n: int, name: str = "") -> FiniteSemiring:
    """The n-element chain with max as + and min as ·; index 1 is the top."""
    ranks = [0, n - 1] + list(range(1, n - 1)) if n > 1 else [0]
    return table_from_operations(ranks, max, min, name or f"C{n}")


def boolean_semiring() -> FiniteSemiring:
    return table_from_operations([0, 1], lambda x, y: x | y, lambda x, y: x & y, "BOOL")


def dual_numbers_mod2() -> FiniteSemiring:
    """Z2[t]/(t^2) on pairs (c0, c1) meaning c0 + c1·t."""
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def plus(x, y):
        return (x[0] ^ y[0], x[1] ^ y[1])

    def times(x, y):
        return (x[0] & y[0], (x[0] & y[1]) ^ (x[1] & y[0]))

    return table_from_operations(elements, plus, times, "D4")


# N modulo 1+2x=1 and x^2=x: {0, 1, 2} with 1+1=2, 1+2=1, 2+2=2, 2·2=2
NSTAR = validate_semiring(
    3,
    [[0, 1, 2],
     [1, 2, 1],
     [2, 1, 2]],
    [[0, 0, 0],
     [0, 1, 2],
     [0, 2, 2]],
    "NSTAR",
)

TRIV = validate_semiring(1, [[0]], [[0]], "TRIV")
Z2 = integers_mod(2, "Z2")
BOOL = boolean_semiring()
C3 = chain_lattice(3, "C3")
Z3 = integers_mod(3, "Z3")
Z4 = integers_mod(4, "Z4")
D4 = dual_numbers_mod2()

BUILTINS: Dict[str, FiniteSemiring] = {
    a.name: a for a in (TRIV, Z2, BOOL, NSTAR, C3, Z4, D4)
}

# Z3 is a fixture outside the built-in catalog (it is not over NSTAR)
FIXTURES: Dict[str, FiniteSemiring] = {**BUILTINS, "Z3": Z3}


def builtin(name: str) -> FiniteSemiring:
    try:
        return FIXTURES[name.upper() if name.upper() in FIXTURES else name]
    except KeyError:
        raise KeyError(f"no built-in algebra named {name!r}; known: {', '.join(FIXTURES)}") from None
