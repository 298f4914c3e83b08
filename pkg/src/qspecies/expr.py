"""A small expression language over the series, Weyl and super rings.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | NAME '(' args ')' | '(' expr ')'

``*`` keeps operand order, so it is the noncommutative product in ``nc``,
``weyl`` and ``super`` modes.  ``/`` only divides by a constant.
"""
import re
from dataclasses import dataclass
from fractions import Fraction

from . import comm_series, nc_series, super_series, weyl
from .comm_series import CommSeries
from .core import InvalidArgument
from .nc_series import NCSeries
from .super_series import SuperSeries
from .weyl import WeylElement

MODES = ("comm", "nc", "weyl", "super")


class ParseError(InvalidArgument):
    """Syntax error; ``offset`` is the byte offset where parsing failed."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariable(InvalidArgument):
    def __init__(self, name, offset):
        super().__init__(f"unknown variable {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


@dataclass(frozen=True)
class Expr:
    """An AST node: ``op`` is one of num, var, neg, add, sub, mul, div, pow, call."""

    op: str
    args: tuple
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    """Tokens ``(kind, value, byte_offset)``, ending with an ``end`` token."""
    tokens = []
    pos = 0

    def offset(i):
        return len(text[:i].encode("utf-8"))

    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), offset(start)))
        elif m.group(2):
            tokens.append(("name", m.group(2), offset(start)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", offset(start))
            tokens.append(("op", ch, offset(start)))
        pos = m.end()
    tokens.append(("end", "", offset(len(text))))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "num":
            raise ParseError(f"expected {value!r}", tok[2])
        return tok

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self):
        left = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            tok = self.take()
            right = self.term()
            left = Expr("add" if tok[1] == "+" else "sub", (left, right), tok[2])
        return left

    def term(self):
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            right = self.unary()
            left = Expr("mul" if tok[1] == "*" else "div", (left, right), tok[2])
        return left

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return Expr("neg", (self.unary(),), tok[2])
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                raise ParseError("exponent must be a non-negative integer", exp[2])
            return Expr("pow", (base, int(exp[1])), tok[2])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return Expr("num", (Fraction(int(value)),), pos)
        if kind == "name":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "(":
                self.take()
                args = []
                if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                    args.append(self.expr())
                    while self.peek()[0] == "op" and self.peek()[1] == ",":
                        self.take()
                        args.append(self.expr())
                self.expect(")")
                return Expr("call", (value, tuple(args)), pos)
            return Expr("var", (value,), pos)
        if kind == "op" and value == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse(text, mode="comm"):
    """Parse ``text`` into an :class:`Expr`; ``mode`` is checked but does not change the grammar."""
    if mode not in MODES:
        raise InvalidArgument(f"unknown mode {mode!r}")
    return _Parser(text).parse()


# ---------------------------------------------------------------- evaluation

@dataclass(frozen=True)
class Context:
    mode: str = "comm"
    dim: int = 1
    trunc: int = 8
    odd: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidArgument(f"unknown mode {self.mode!r}")
        if self.dim < 1 and self.mode != "super":
            raise InvalidArgument("dim must be at least 1")

    def constant(self, c):
        if self.mode == "comm":
            return CommSeries.constant(self.dim, self.trunc, c)
        if self.mode == "nc":
            return NCSeries.constant(self.dim, self.trunc, c)
        if self.mode == "weyl":
            return WeylElement.constant(self.dim, self.trunc, c)
        return SuperSeries.constant(self.dim, self.odd, self.trunc, c)


_VAR = re.compile(r"([A-Za-z]+)(\d*)$")


def _variable(name, ctx, pos):
    m = _VAR.match(name)
    if not m:
        raise UnknownVariable(name, pos)
    stem, idx = m.group(1), m.group(2)
    lowered = stem.lower() if ctx.mode == "weyl" else stem
    if idx == "":
        i = 1
        if lowered in ("x", "y") and ctx.dim != 1:
            raise UnknownVariable(name, pos)
    else:
        i = int(idx)
    if ctx.mode == "weyl":
        if lowered == "h" and idx == "":
            return WeylElement.h(ctx.dim, ctx.trunc)
        if lowered in ("x", "y") and 1 <= i <= ctx.dim:
            return (WeylElement.x if lowered == "x" else WeylElement.y)(ctx.dim, ctx.trunc, i)
        raise UnknownVariable(name, pos)
    if stem == "x" and 1 <= i <= ctx.dim:
        if ctx.mode == "comm":
            return CommSeries.var(ctx.dim, ctx.trunc, i)
        if ctx.mode == "nc":
            return NCSeries.var(ctx.dim, ctx.trunc, i)
        return SuperSeries.var(ctx.dim, ctx.odd, ctx.trunc, i)
    if ctx.mode == "super" and stem == "t" and idx and 1 <= i <= ctx.odd:
        return SuperSeries.theta(ctx.dim, ctx.odd, ctx.trunc, i)
    raise UnknownVariable(name, pos)


def _scalar(value):
    """The rational value of a constant element, or ``None``."""
    c = value.constant_term
    return c if value == c else None


def _exp(value, ctx):
    if ctx.mode == "weyl":
        return weyl.exp_element(value)
    if value.constant_term != 0:
        raise InvalidArgument("exp needs a zero constant term")
    result = ctx.constant(1)
    term = ctx.constant(1)
    for n in range(1, ctx.trunc + ctx.odd + 1):
        term = term * value / n
        result = result + term
    return result


def _call(name, args, ctx, pos):
    def need(n):
        if len(args) != n:
            raise InvalidArgument(f"{name}() takes {n} argument(s), got {len(args)} (offset {pos})")

    if name == "inv":
        need(1)
        f = args[0]
        if ctx.mode == "comm":
            return comm_series.mul_inverse(f)
        if ctx.mode == "nc":
            return nc_series.mul_inverse(f)
        if ctx.mode == "super":
            return super_series.mul_inverse(f)
        raise InvalidArgument("inv() is not available in weyl mode")
    if name == "cinv":
        if ctx.mode == "comm":
            need(ctx.dim)
            out = comm_series.comp_inverse(args)
        elif ctx.mode == "nc":
            need(ctx.dim)
            out = nc_series.comp_inverse(args)
        else:
            raise InvalidArgument(f"cinv() is not available in {ctx.mode} mode")
        return out[0] if len(out) == 1 else tuple(out)
    if name == "compose":
        if ctx.mode not in ("comm", "nc"):
            raise InvalidArgument(f"compose() is not available in {ctx.mode} mode")
        need(ctx.dim + 1)
        mod = comm_series if ctx.mode == "comm" else nc_series
        return mod.compose(args[0], *args[1:])
    if name == "star":
        if ctx.mode != "weyl":
            raise InvalidArgument("star() is only available in weyl mode")
        need(2)
        return weyl.star_mul(args[0], args[1])
    if name == "exp":
        need(1)
        return _exp(args[0], ctx)
    if name == "shuffle":
        if ctx.mode != "nc":
            raise InvalidArgument("shuffle() is only available in nc mode")
        need(2)
        return nc_series.shuffle(args[0], args[1])
    m = re.fullmatch(r"D(\d*)", name) or re.fullmatch(r"D_(\d+)", name)
    if m:
        need(1)
        idx = int(m.group(1)) if m.group(1) else 1
        if ctx.mode == "comm":
            return comm_series.derivative(args[0], idx)
        if ctx.mode == "nc":
            return nc_series.derivative(args[0], idx)
        raise InvalidArgument(f"derivatives are not available in {ctx.mode} mode")
    raise InvalidArgument(f"unknown function {name!r} at offset {pos}")


def evaluate(node, ctx):
    op = node.op
    if op == "num":
        return ctx.constant(node.args[0])
    if op == "var":
        return _variable(node.args[0], ctx, node.pos)
    if op == "call":
        name, args = node.args
        return _call(name, [evaluate(a, ctx) for a in args], ctx, node.pos)
    if op == "neg":
        return -evaluate(node.args[0], ctx)
    if op == "pow":
        base = evaluate(node.args[0], ctx)
        return base ** node.args[1]
    left = evaluate(node.args[0], ctx)
    right = evaluate(node.args[1], ctx)
    if isinstance(left, tuple) or isinstance(right, tuple):
        raise InvalidArgument(f"cannot do arithmetic on a tuple (offset {node.pos})")
    if op == "add":
        return left + right
    if op == "sub":
        return left - right
    if op == "mul":
        return left * right
    if op == "div":
        c = _scalar(right)
        if c is None:
            raise InvalidArgument(f"can only divide by a constant (offset {node.pos})")
        if c == 0:
            raise InvalidArgument(f"division by zero (offset {node.pos})")
        return left / c
    raise InvalidArgument(f"unknown node {op!r}")


def evaluate_text(text, ctx):
    return evaluate(parse(text, ctx.mode), ctx)
