"""Equation-system text: tokenizer, recursive-descent parser, printer and evaluators.

Grammar, one equation per line (``#`` starts a comment)::

    equation := expr "=" expr
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := primary ("^" unary)?          # right-associative
    primary  := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"

A numeric literal written directly against a name or an opening parenthesis
(``3x1``, ``2(x1 + 1)``) is read as a product.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Mapping, Sequence, Union

import mpmath

from .errors import DomainError, ParseError, UnbalancedParentheses, UnknownFunction

UNARY_FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "abs")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or one of UNARY_FUNCTIONS
    child: "Expression"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expression"
    right: "Expression"


Expression = Union[Constant, Variable, Unary, Binary]


def variables_of(e: Expression, out: list | None = None) -> list[str]:
    """Variable names in ``e`` in order of first appearance."""
    if out is None:
        out = []
    if isinstance(e, Variable):
        if e.name not in out:
            out.append(e.name)
    elif isinstance(e, Unary):
        variables_of(e.child, out)
    elif isinstance(e, Binary):
        variables_of(e.left, out)
        variables_of(e.right, out)
    return out


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number, name, op, end
    text: str
    column: int  # 1-based


def _tokenize(line: str, lineno: int) -> list[_Token]:
    line = line.replace("−", "-")
    tokens: list[_Token] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            # coefficient juxtaposition: 3x1 -> 3 * x1
            if tokens and tokens[-1].kind == "number" and tokens[-1].column + len(tokens[-1].text) == pos + 1 \
                    and (kind == "name" or text == "("):
                tokens.append(_Token("op", "*", pos + 1))
            tokens.append(_Token(kind, text, pos + 1))
        pos = m.end()
    tokens.append(_Token("end", "", len(line) + 1))
    return tokens


# ------------------------------------------------------------------- parser

class _Parser:
    def __init__(self, line: str, lineno: int):
        self.tokens = _tokenize(line, lineno)
        self.lineno = lineno
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, self.lineno, tok.column)

    def _advance(self) -> _Token:
        tok = self.tok
        self.i += 1
        return tok

    def _describe(self, tok):
        return "end of line" if tok.kind == "end" else repr(tok.text)

    def equation(self) -> tuple[Expression, Expression]:
        lhs = self.expr()
        if self.tok.text == ")":
            raise UnbalancedParentheses("unmatched ')'", self.lineno, self.tok.column)
        if self.tok.text != "=":
            raise self._error(f"expected '=', found {self._describe(self.tok)}")
        self._advance()
        rhs = self.expr()
        if self.tok.text == ")":
            raise UnbalancedParentheses("unmatched ')'", self.lineno, self.tok.column)
        if self.tok.kind != "end":
            raise self._error(f"unexpected {self._describe(self.tok)}")
        return lhs, rhs

    def expr(self) -> Expression:
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = "add" if self._advance().text == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self.tok.text in ("*", "/"):
            op = "mul" if self._advance().text == "*" else "div"
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Expression:
        if self.tok.text == "-":
            self._advance()
            return Unary("neg", self.unary())
        if self.tok.text == "+":
            self._advance()
            return self.unary()
        return self.power()

    def power(self) -> Expression:
        base = self.primary()
        if self.tok.text == "^":
            self._advance()
            return Binary("pow", base, self.unary())
        return base

    def _close(self, opener: _Token):
        if self.tok.text != ")":
            raise UnbalancedParentheses(
                f"'(' at column {opener.column} is never closed (found {self._describe(self.tok)})",
                self.lineno, self.tok.column)
        self._advance()

    def primary(self) -> Expression:
        tok = self.tok
        if tok.kind == "number":
            self._advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise self._error(f"literal {tok.text} is out of range", tok)
            return Constant(value)
        if tok.kind == "name":
            self._advance()
            if self.tok.text == "(":
                if tok.text not in UNARY_FUNCTIONS:
                    raise UnknownFunction(tok.text, self.lineno, tok.column)
                opener = self._advance()
                arg = self.expr()
                self._close(opener)
                return Unary(tok.text, arg)
            if tok.text in UNARY_FUNCTIONS:
                raise self._error(f"function {tok.text!r} needs a parenthesised argument", tok)
            return Variable(tok.text)
        if tok.text == "(":
            opener = self._advance()
            inner = self.expr()
            self._close(opener)
            return inner
        if tok.text == ")":
            raise UnbalancedParentheses("unmatched ')'", self.lineno, tok.column)
        raise self._error(f"expected a number, name or '(', found {self._describe(tok)}")


def parse_expression(text: str) -> Expression:
    """Parse a single expression (no ``=``)."""
    p = _Parser(text, 1)
    node = p.expr()
    if p.tok.text == ")":
        raise UnbalancedParentheses("unmatched ')'", 1, p.tok.column)
    if p.tok.kind != "end":
        raise p._error(f"unexpected {p._describe(p.tok)}")
    return node


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_system(text: str, variables: Sequence[str] | None = None) -> "EquationSystem":
    """Parse one equation per nonblank line into residuals ``lhs - rhs``.

    Variables are ordered by first appearance unless ``variables`` fixes the
    order explicitly.
    """
    residuals = []
    names: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        lhs, rhs = _Parser(line, lineno).equation()
        variables_of(lhs, names)
        variables_of(rhs, names)
        residuals.append(Binary("sub", lhs, rhs))
    if not residuals:
        raise ParseError("no equations found")
    if variables is not None:
        missing = [v for v in names if v not in variables]
        if missing:
            raise ParseError(f"variables {missing} are not in the declared order {list(variables)}")
        names = list(variables)
    if not names:
        raise ParseError("system has no variables")
    return EquationSystem(tuple(names), tuple(residuals))


def load_system(path, variables: Sequence[str] | None = None) -> "EquationSystem":
    return parse_system(Path(path).read_text(), variables)


# ------------------------------------------------------------------ printer

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def _prec(e: Expression) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return _PREC["neg"]
    return 5


def _format_constant(v: float) -> str:
    if v == 0:
        return "0"
    if v.is_integer() and abs(v) < 1e15:
        text = str(int(v))
    else:
        text = repr(v)
    return f"({text})" if v < 0 else text


def to_text(e: Expression) -> str:
    """Render ``e`` in the input grammar with only the parentheses it needs."""
    if isinstance(e, Constant):
        return _format_constant(e.value)
    if isinstance(e, Variable):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = to_text(e.child)
            return "-" + (f"({inner})" if _prec(e.child) < _PREC["neg"] else inner)
        return f"{e.op}({to_text(e.child)})"
    p = _PREC[e.op]
    left, right = to_text(e.left), to_text(e.right)
    if e.op == "pow":
        if _prec(e.left) <= p:
            left = f"({left})"
        if _prec(e.right) < _PREC["neg"]:
            right = f"({right})"
    else:
        if _prec(e.left) < p:
            left = f"({left})"
        if _prec(e.right) <= p:
            right = f"({right})"
    return f"{left} {_SYMBOL[e.op]} {right}"


def system_to_text(system: "EquationSystem") -> str:
    lines = []
    for r in system.residuals:
        if isinstance(r, Binary) and r.op == "sub":
            lines.append(f"{to_text(r.left)} = {to_text(r.right)}")
        else:
            lines.append(f"{to_text(r)} = 0")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- evaluation

def _checked(v: float, what: str) -> float:
    if not math.isfinite(v):
        raise DomainError(f"{what} overflowed")
    return v


def _f_div(a, b):
    if b == 0:
        raise DomainError("division by zero")
    return _checked(a / b, "division")


def _f_pow(a, b):
    if a == 0 and b < 0:
        raise DomainError("zero raised to a negative power")
    if a < 0 and not float(b).is_integer():
        raise DomainError("negative base with non-integer exponent")
    try:
        return _checked(a ** b, "power")
    except OverflowError:
        raise DomainError("power overflowed") from None


def _f_exp(a):
    try:
        return math.exp(a)
    except OverflowError:
        raise DomainError("exp overflowed") from None


def _f_ln(a):
    if a <= 0:
        raise DomainError(f"ln of non-positive value {a!r}")
    return math.log(a)


def _f_sqrt(a):
    if a < 0:
        raise DomainError(f"sqrt of negative value {a!r}")
    return math.sqrt(a)


FLOAT_OPS: dict[str, Callable] = {
    "const": float,
    "add": lambda a, b: _checked(a + b, "addition"),
    "sub": lambda a, b: _checked(a - b, "subtraction"),
    "mul": lambda a, b: _checked(a * b, "multiplication"),
    "div": _f_div,
    "pow": _f_pow,
    "neg": lambda a: -a,
    "sin": math.sin,
    "cos": math.cos,
    "exp": _f_exp,
    "ln": _f_ln,
    "sqrt": _f_sqrt,
    "abs": abs,
}


def precise_ops(digits: int = 40) -> dict[str, Callable]:
    """Operator table evaluating in an mpmath context with ``digits`` significant digits.

    Same domain rules as :data:`FLOAT_OPS`. Each table owns its context, so
    tables can be shared between threads.
    """
    ctx = mpmath.MPContext()
    ctx.dps = digits

    def div(a, b):
        if b == 0:
            raise DomainError("division by zero")
        return a / b

    def pow_(a, b):
        if a == 0 and b < 0:
            raise DomainError("zero raised to a negative power")
        if a < 0:
            if not ctx.isint(b):
                raise DomainError("negative base with non-integer exponent")
            return a ** int(b)
        return a ** b

    def ln(a):
        if a <= 0:
            raise DomainError(f"ln of non-positive value {float(a)!r}")
        return ctx.log(a)

    def sqrt(a):
        if a < 0:
            raise DomainError(f"sqrt of negative value {float(a)!r}")
        return ctx.sqrt(a)

    return {
        "const": ctx.mpf,
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
        "div": div,
        "pow": pow_,
        "neg": lambda a: -a,
        "sin": ctx.sin,
        "cos": ctx.cos,
        "exp": ctx.exp,
        "ln": ln,
        "sqrt": sqrt,
        "abs": abs,
        "context": ctx,
    }


def compile_expression(e: Expression, variables: Sequence[str], ops=FLOAT_OPS) -> Callable:
    """Turn ``e`` into a closure ``f(point)``; ``point`` is indexed by ``variables``."""
    index = {name: i for i, name in enumerate(variables)}

    def build(node):
        if isinstance(node, Constant):
            c = ops["const"](node.value)
            return lambda x: c
        if isinstance(node, Variable):
            try:
                i = index[node.name]
            except KeyError:
                raise ValueError(f"variable {node.name!r} is not declared") from None
            return lambda x: x[i]
        if isinstance(node, Unary):
            fn = ops[node.op]
            child = build(node.child)
            return lambda x: fn(child(x))
        fn = ops[node.op]
        left, right = build(node.left), build(node.right)
        return lambda x: fn(left(x), right(x))

    return build(e)


def evaluate(e: Expression, point, variables: Sequence[str] | None = None) -> float:
    """Value of ``e`` at ``point``.

    ``point`` is either a mapping from names to values or a sequence ordered
    like ``variables``. Raises :class:`DomainError` instead of returning NaN.
    """
    if isinstance(point, Mapping):
        variables = list(point)
        point = [point[v] for v in variables]
    elif variables is None:
        raise TypeError("a positional point needs the variable order")
    if len(point) != len(variables):
        raise ValueError(f"point has {len(point)} components, expected {len(variables)}")
    return compile_expression(e, variables)([float(v) for v in point])


@dataclass(frozen=True)
class EquationSystem:
    """Residual functions ``F(x) = lhs - rhs`` over an ordered list of variables."""

    variables: tuple[str, ...]
    residuals: tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "residuals", tuple(self.residuals))
        if not self.variables:
            raise ValueError("a system needs at least one variable")
        if not self.residuals:
            raise ValueError("a system needs at least one equation")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        declared = set(self.variables)
        for i, r in enumerate(self.residuals):
            stray = [v for v in variables_of(r) if v not in declared]
            if stray:
                raise ValueError(f"equation {i} uses undeclared variables {stray}")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.residuals)

    @cached_property
    def _compiled(self):
        return [compile_expression(r, self.variables) for r in self.residuals]

    def _check_point(self, point):
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} components, system has {self.n} variables")

    def residual_vector(self, point) -> list[float]:
        self._check_point(point)
        x = [float(v) for v in point]
        out = []
        for i, f in enumerate(self._compiled):
            try:
                out.append(f(x))
            except DomainError as exc:
                raise exc.at(equation=i) from None
        return out

    def residual_norm(self, point) -> float:
        return math.hypot(*self.residual_vector(point))

    def precise_residuals(self, digits: int = 40):
        """Residual closures evaluated at ``digits`` significant digits, plus their mpmath context."""
        cache = self.__dict__.setdefault("_precise_cache", {})
        if digits not in cache:
            ops = precise_ops(digits)
            cache[digits] = ([compile_expression(r, self.variables, ops) for r in self.residuals], ops["context"])
        return cache[digits]

    def __str__(self):
        return system_to_text(self).rstrip("\n")


def residual_vector(system: EquationSystem, point) -> list[float]:
    return system.residual_vector(point)


def residual_norm(system: EquationSystem, point) -> float:
    """Euclidean norm of the residual vector; exactly 0 only at an exact root."""
    return system.residual_norm(point)
