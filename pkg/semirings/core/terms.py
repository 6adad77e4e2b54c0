"""
Terms and identities over the semiring signature (0, 1, +, ·).
Includes a small parser so identities can be written as "1+2x=1".
"""

import itertools
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

from ..errors import TermSyntaxError, UnboundVariable
from .semiring import FiniteSemiring


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"({self.left}+{self.right})"


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{self.left}*{self.right}"


Term = Union[Zero, One, Var, Sum, Prod]


def numeral(k: int) -> Term:
    """k as 1+1+...+1."""
    return scaled(k, One())


def scaled(k: int, term: Term) -> Term:
    """k·t as a k-fold Sum."""
    if k < 0:
        raise ValueError("coefficients are natural numbers")
    if k == 0:
        return Zero()
    result = term
    for _ in range(k - 1):
        result = Sum(result, term)
    return result


def power(term: Term, k: int) -> Term:
    """t^k as a k-fold Prod."""
    if k < 0:
        raise ValueError("exponents are natural numbers")
    if k == 0:
        return One()
    result = term
    for _ in range(k - 1):
        result = Prod(result, term)
    return result


def variables_of(term: Term) -> List[str]:
    """Variables in order of first occurrence."""
    seen: List[str] = []

    def walk(t: Term):
        if isinstance(t, Var):
            if t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, (Sum, Prod)):
            walk(t.left)
            walk(t.right)

    walk(term)
    return seen


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    variables: Tuple[str, ...]
    text: str = ""

    def __post_init__(self):
        declared = set(self.variables)
        missing = [v for v in variables_of(self.lhs) + variables_of(self.rhs) if v not in declared]
        if missing:
            raise ValueError(f"identity uses undeclared variables {missing}")

    def __str__(self) -> str:
        return self.text or f"{self.lhs}={self.rhs}"


def eval_term(algebra: FiniteSemiring, term: Term, assignment: Mapping[str, int]) -> int:
    """Value of term under the tables of the algebra."""
    if isinstance(term, Zero):
        return algebra.zero
    if isinstance(term, One):
        return algebra.one
    if isinstance(term, Var):
        if term.name not in assignment:
            raise UnboundVariable(term.name)
        return assignment[term.name]
    if isinstance(term, Sum):
        return algebra.plus(eval_term(algebra, term.left, assignment), eval_term(algebra, term.right, assignment))
    if isinstance(term, Prod):
        return algebra.times(eval_term(algebra, term.left, assignment), eval_term(algebra, term.right, assignment))
    raise TypeError(f"not a term: {term!r}")


class IdentityCheck(NamedTuple):
    holds: bool
    counterexample: Optional[Dict[str, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def check_identity(algebra: FiniteSemiring, identity: Identity) -> IdentityCheck:
    """Exhaustive over every assignment; returns the first falsifying one."""
    names = identity.variables
    for values in itertools.product(algebra.elements, repeat=len(names)):
        assignment = dict(zip(names, values))
        if eval_term(algebra, identity.lhs, assignment) != eval_term(algebra, identity.rhs, assignment):
            return IdentityCheck(False, assignment)
    return IdentityCheck(True)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][0-9_]*)|(?P<op>[-+*^()=]))")


class _Parser:
    """expr := product ('+' product)*; product := power+ with '*' optional; power := atom ('^' int)?"""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise TermSyntaxError(text, pos, "unexpected character")
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError(self.text, len(self.text), "unexpected end of input")
        if value is not None and tok[1] != value:
            raise TermSyntaxError(self.text, tok[2], f"expected {value!r}")
        self.i += 1
        return tok

    def expr(self) -> Term:
        term = self.product()
        while self.peek() and self.peek()[1] == "+":
            self.take("+")
            term = Sum(term, self.product())
        return term

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok[0] in ("int", "name") or tok[1] == "(")

    def product(self) -> Term:
        coefficient = 1
        factors: List[Term] = []
        while True:
            kind, value = self.power()
            if kind == "int":
                coefficient *= value
            else:
                factors.append(value)
            if self.peek() and self.peek()[1] == "*":
                self.take("*")
                continue
            if self._starts_factor():
                continue
            break
        if not factors:
            return numeral(coefficient)
        body = factors[0]
        for f in factors[1:]:
            body = Prod(body, f)
        return scaled(coefficient, body) if coefficient != 1 else body

    def power(self):
        kind, value, pos = self.take()
        if kind == "int":
            base = ("int", int(value))
        elif kind == "name":
            base = ("term", Var(value))
        elif value == "(":
            inner = self.expr()
            self.take(")")
            base = ("term", inner)
        else:
            raise TermSyntaxError(self.text, pos, f"unexpected {value!r}")
        if self.peek() and self.peek()[1] == "^":
            self.take("^")
            kind_e, exp, pos_e = self.take()
            if kind_e != "int":
                raise TermSyntaxError(self.text, pos_e, "exponent must be a natural number")
            if base[0] == "int":
                return "int", base[1] ** int(exp)
            return "term", power(base[1], int(exp))
        return base

    def finish(self):
        tok = self.peek()
        if tok is not None:
            raise TermSyntaxError(self.text, tok[2], f"unexpected {tok[1]!r}")


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    term = parser.expr()
    parser.finish()
    return term


def parse_identity(text: str) -> Identity:
    """Parse "lhs = rhs"; variables are declared in order of first occurrence."""
    parser = _Parser(text)
    lhs = parser.expr()
    parser.take("=")
    rhs = parser.expr()
    parser.finish()
    names = variables_of(lhs)
    names += [v for v in variables_of(rhs) if v not in names]
    return Identity(lhs, rhs, tuple(names), text.replace(" ", ""))
