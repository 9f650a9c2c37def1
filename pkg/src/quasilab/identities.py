"""Term identities over quasigroups and the operator form of (N1).

Terms use the three quasigroup operations: a*b, left division a\\b (the
x with a*x = b) and right division a/b (the y with y*b = a).  The grammar
demands parentheses around every binary application, so there are no
precedence rules to get wrong for \\ and /.

check_identity evaluates both sides exhaustively over all n^k variable
assignments.  check_operator_n1 works purely with translation
permutations; the two never share evaluation code, which is what lets
n1_equivalence_report serve as a two-route check of the translation form
of (N1): Q satisfies ((x*y)*z)*y = x*(y*(z*y)) pointwise iff
R_y o L_{x*y} = L_x o L_y o R_y for all x, y, with (S o T)(z) = S(T(z)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cayley import FiniteQuasigroup
from .perm import Perm, compose_images


class ParseError(ValueError):
    """Malformed identity text; position is a 0-based character offset."""

    def __init__(self, position: int, expected: str, found: str = ""):
        self.position = position
        self.expected = expected
        self.found = found
        shown = found if found else "end of input"
        super().__init__(f"at position {position}: expected {expected}, found {shown}")


class EmptySide(ParseError):
    def __init__(self, position: int, side: str):
        self.side = side
        ParseError.__init__(self, position, f"a term on the {side} side")


class VariableLimitExceeded(ValueError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"identity has {count} variables, cap is {cap}")


class UnknownIdentityError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no builtin identity named {name!r}")

    def __str__(self):
        # KeyError would wrap the message in repr quotes
        return self.args[0]


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Multiply:
    left: object
    right: object


@dataclass(frozen=True)
class LeftDivide:
    left: object
    right: object


@dataclass(frozen=True)
class RightDivide:
    left: object
    right: object


@dataclass(frozen=True)
class Identity:
    lhs: object
    rhs: object
    variables: tuple[str, ...]


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: dict | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None


_OPS = {"*": Multiply, "\\": LeftDivide, "/": RightDivide}


class _Parser:
    """Recursive descent for: identity := term "=" term;
    term := var | "(" term op term ")"; op := "*" | "\\" | "/".
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        got = self.peek()
        if got != char:
            raise ParseError(self.pos, f"{char!r}", got)
        self.pos += 1

    def term(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            left = self.term()
            op = self.peek()
            if op not in _OPS:
                raise ParseError(self.pos, "an operator '*', '\\' or '/'", op)
            self.pos += 1
            right = self.term()
            self.expect(")")
            return _OPS[op](left, right)
        if ch.isalnum() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            return Variable(self.text[start : self.pos])
        raise ParseError(self.pos, "a variable or '('", ch)

    def identity(self) -> Identity:
        if self.peek() in ("", "="):
            raise EmptySide(self.pos, "left")
        lhs = self.term()
        self.expect("=")
        if self.peek() == "":
            raise EmptySide(self.pos, "right")
        rhs = self.term()
        if self.peek() != "":
            raise ParseError(self.pos, "end of input", self.peek())
        names: list[str] = []
        for term in (lhs, rhs):
            _collect_variables(term, names)
        return Identity(lhs, rhs, tuple(names))


def _collect_variables(term, names: list):
    if isinstance(term, Variable):
        if term.name not in names:
            names.append(term.name)
    else:
        _collect_variables(term.left, names)
        _collect_variables(term.right, names)


def parse_identity(text: str) -> Identity:
    return _Parser(text).identity()


def pretty_term(term) -> str:
    if isinstance(term, Variable):
        return term.name
    op = {Multiply: "*", LeftDivide: "\\", RightDivide: "/"}[type(term)]
    return f"({pretty_term(term.left)}{op}{pretty_term(term.right)})"


def pretty(identity: Identity) -> str:
    return f"{pretty_term(identity.lhs)} = {pretty_term(identity.rhs)}"


# Postfix opcodes for the evaluation loop: (_PUSH, var_index) loads from
# the assignment tuple, the rest pop two operands (left pushed first).
_PUSH, _MUL, _LDIV, _RDIV = 0, 1, 2, 3


def _compile(term, variables: tuple[str, ...]) -> list:
    code = []

    def emit(t):
        if isinstance(t, Variable):
            code.append((_PUSH, variables.index(t.name)))
        else:
            emit(t.left)
            emit(t.right)
            code.append(
                {Multiply: (_MUL, 0), LeftDivide: (_LDIV, 0), RightDivide: (_RDIV, 0)}[
                    type(t)
                ]
            )

    emit(term)
    return code


def _evaluate(code, assignment, table, left_div, right_div) -> int:
    stack = []
    push = stack.append
    for op, arg in code:
        if op == _PUSH:
            push(assignment[arg])
        else:
            b = stack.pop()
            a = stack.pop()
            if op == _MUL:
                push(table[a][b])
            elif op == _LDIV:
                push(left_div[a][b])
            else:
                # a/b: the y with y*b = a, stored at right_div[a][b]
                push(right_div[a][b])
    return stack[0]


def evaluate_term(q: FiniteQuasigroup, term, assignment: dict) -> int:
    """Evaluate one term under a {name: element} assignment."""
    names = []
    _collect_variables(term, names)
    variables = tuple(names)
    code = _compile(term, variables)
    left_div, right_div = q._division_tables()
    values = tuple(assignment[name] for name in variables)
    return _evaluate(code, values, q.table, left_div, right_div)


def check_identity(q: FiniteQuasigroup, identity: Identity, cap: int = 4) -> CheckResult:
    """Exhaustively test an identity over all n^k assignments.

    Assignments run in lexicographic order over the identity's variable
    list, so the reported counterexample is the smallest failing one.
    """
    k = len(identity.variables)
    if k > cap:
        raise VariableLimitExceeded(k, cap)
    lhs_code = _compile(identity.lhs, identity.variables)
    rhs_code = _compile(identity.rhs, identity.variables)
    table = q.table
    if any(op in (_LDIV, _RDIV) for op, _ in lhs_code + rhs_code):
        left_div, right_div = q._division_tables()
    else:
        left_div = right_div = ()
    for assignment in itertools.product(range(q.order), repeat=k):
        lhs = _evaluate(lhs_code, assignment, table, left_div, right_div)
        rhs = _evaluate(rhs_code, assignment, table, left_div, right_div)
        if lhs != rhs:
            return CheckResult(
                holds=False,
                counterexample=dict(zip(identity.variables, assignment)),
                lhs_value=lhs,
                rhs_value=rhs,
            )
    return CheckResult(holds=True)


def check_operator_n1(q: FiniteQuasigroup, x: int, y: int) -> bool:
    """Whether R_y o L_{x*y} = L_x o L_y o R_y as permutations."""
    ry = q.right_translation(y)
    lxy = q.left_translation(q.multiply(x, y))
    lx = q.left_translation(x)
    ly = q.left_translation(y)
    return (ry @ lxy) == (lx @ (ly @ ry))


def _operator_n1_all(q: FiniteQuasigroup) -> bool:
    n = q.order
    table = q.table
    rows = [table[a] for a in range(n)]
    cols = [tuple(table[x][a] for x in range(n)) for a in range(n)]
    for y in range(n):
        ry = cols[y]
        ly = rows[y]
        ly_ry = compose_images(ly, ry)
        for x in range(n):
            lhs = compose_images(ry, rows[table[x][y]])
            rhs = compose_images(rows[x], ly_ry)
            if lhs != rhs:
                return False
    return True


N1_TEXT = "(((x*y)*z)*y) = (x*(y*(z*y)))"

_BUILTIN_TEXT = {
    "N1": N1_TEXT,
    "moufang_left": "(z*(x*(z*y))) = (((z*x)*z)*y)",
    "associativity": "((x*y)*z) = (x*(y*z))",
    "commutativity": "(x*y) = (y*x)",
}


def builtin_identities() -> dict[str, Identity]:
    return {name: parse_identity(text) for name, text in _BUILTIN_TEXT.items()}


def builtin_identity(name: str) -> Identity:
    try:
        return parse_identity(_BUILTIN_TEXT[name])
    except KeyError:
        raise UnknownIdentityError(name) from None


def n1_equivalence_report(q: FiniteQuasigroup) -> dict:
    """Check (N1) along both routes and report agreement.

    pointwise: term evaluation of ((x*y)*z)*y = x*(y*(z*y)).
    operator: permutation compositions R_y o L_{x*y} vs L_x o L_y o R_y.
    """
    pointwise = check_identity(q, builtin_identity("N1")).holds
    operator = _operator_n1_all(q)
    return {
        "pointwise": pointwise,
        "operator": operator,
        "agree": pointwise == operator,
    }
