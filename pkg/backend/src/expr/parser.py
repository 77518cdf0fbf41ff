"""
Recursive-descent parser for the identity language.

Grammar notes (whitespace-insensitive, "#" starts a comment to end of line):

    <file>      ::= { <identity> }
    <identity>  ::= "identity" NAME { <clause> } "lhs" "=" <expr> "rhs" "=" <expr>
    <clause>    ::= "anchor" STRING | "order" INT | "params" <range> { <range> }
    <range>     ::= IDENT "in" ["-"] INT ".." ["-"] INT

    <expr>      ::= <term> { ("+" | "-") <term> }
    <term>      ::= <unary> { "*" <unary> }
    <unary>     ::= "-" <unary> | <power>
    <power>     ::= <primary> [ "^" <iunary> ]
    <primary>   ::= INT [ "/" INT ] | <monofactor> | <call> | IDENT | "(" <expr> ")"

    <mono>      ::= ["-"] ( "1" | <monofactor> { "*" <monofactor> } )
    <monofactor>::= "q" [ "^" <iunary> ] | "(" "-" "1" ")" "^" <iunary> | "(" "-" "q" ")" "^" <iunary>

    <iexpr>     ::= <iterm> { ("+" | "-") <iterm> }
    <iterm>     ::= <iunary> { "*" <iunary> }
    <iunary>    ::= "-" <iunary> | <ipow>
    <ipow>      ::= <iatom> [ "^" <iunary> ]
    <iatom>     ::= INT | IDENT | "(" <iexpr> ")" | "binom" "(" <iexpr> "," <iexpr> ")"
                  | "floor" "(" <iexpr> "/" <iexpr> ")"

Function names are listed in ``FUNCTIONS`` below and are reserved.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Set, Tuple, Union

from src.errors import ExprSyntaxError, UndeclaredParameter, UnknownIdentifier
from src.expr.ast import (
    G3, Add, Appell, Binom, EulerInv3, EulerSum, Expr, FloorDiv, Hecke, Identity, IntBin, IntExpr, IntLit, IntNeg,
    Inv, JFamily, KDelta, Mock, Mono, MonoFactor, MonoTerm, Mul, Neg, Param, ParamConst, ParamRange, Poch, Pow, QuasiPeriod,
    Rational, SplitPart, StringC, Sub, Sum, Theta,
)
from src.mocktheta.ramanujan import MOCK_THETA

_TOKEN = re.compile(
    r"""
    (?P<INT>\d+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>"[^"\n]*")
  | (?P<RANGE>\.\.)
  | (?P<PUNCT>[()\[\],;+\-*^/=])
    """,
    re.VERBOSE,
)
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")
_SKIP = re.compile(r"(?:\s+|\#[^\n]*)*")

FUNCTIONS = frozenset({
    "j", "J", "Jbar", "Jsingle", "f", "m", "g3", "poch", "C", "sum", "eulerInv3", "inv", "h", "theta", "euler", "delta",
    "qperiod",
}) | frozenset(MOCK_THETA)
RESERVED = FUNCTIONS | frozenset({
    "q", "inf", "binom", "floor", "identity", "params", "lhs", "rhs", "order", "anchor", "in",
})


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


class _Scanner:
    """On-demand tokenizer; identity names are read with their own pattern."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self._peeked: Optional[Token] = None

    def _skip(self) -> int:
        return _SKIP.match(self.text, self.pos).end()

    def peek(self) -> Token:
        if self._peeked is None:
            start = self._skip()
            if start >= len(self.text):
                self._peeked = Token("EOF", "", start)
            else:
                match = _TOKEN.match(self.text, start)
                if match is None:
                    raise ExprSyntaxError(f"unexpected character {self.text[start]!r}", start)
                self._peeked = Token(match.lastgroup, match.group(), start)
        return self._peeked

    def advance(self) -> Token:
        tok = self.peek()
        self.pos = tok.offset + len(tok.text)
        self._peeked = None
        return tok

    def read_name(self) -> Token:
        start = self._skip()
        match = _NAME.match(self.text, start)
        if match is None:
            raise ExprSyntaxError("missing identity name", start, ["NAME"])
        self.pos = match.end()
        self._peeked = None
        return Token("NAME", match.group(), start)

    def lookahead(self, *texts: str) -> bool:
        """True when the upcoming tokens spell ``texts``; the scanner does not move."""
        saved_pos, saved_peek = self.pos, self._peeked
        try:
            for text in texts:
                if self.advance().text != text:
                    return False
            return True
        except ExprSyntaxError:
            return False
        finally:
            self.pos, self._peeked = saved_pos, saved_peek


_PRIMARY_START = ["INT", "IDENT", "q", "(", "-"]


class Parser:
    """Parses one text; ``declared`` restricts free parameter names when given."""

    def __init__(self, text: str, declared: Optional[Iterable[str]] = None):
        self.scanner = _Scanner(text)
        self.declared: Optional[Set[str]] = None if declared is None else set(declared)
        self.bound: List[str] = []

    # -- token helpers ---------------------------------------------------------
    def _peek(self) -> Token:
        return self.scanner.peek()

    def _at(self, text: str) -> bool:
        tok = self._peek()
        return tok.text == text and tok.kind in ("PUNCT", "IDENT", "RANGE")

    def _accept(self, text: str) -> bool:
        if self._at(text):
            self.scanner.advance()
            return True
        return False

    def _expect(self, text: str) -> Token:
        tok = self._peek()
        if not self._at(text):
            found = tok.text or "end of input"
            raise ExprSyntaxError(f"found {found!r}", tok.offset, [text])
        return self.scanner.advance()

    def _expect_kind(self, kind: str) -> Token:
        tok = self._peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ExprSyntaxError(f"found {found!r}", tok.offset, [kind])
        return self.scanner.advance()

    def _expect_end(self):
        tok = self._peek()
        if tok.kind != "EOF":
            raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.offset, ["EOF", "+", "-", "*"])

    def _param_name(self, tok: Token) -> str:
        name = tok.text
        if name in RESERVED:
            raise ExprSyntaxError(f"{name!r} is reserved", tok.offset, ["parameter"])
        if name in self.bound:
            return name
        if self.declared is not None and name not in self.declared:
            raise UndeclaredParameter(f"parameter {name!r} at offset {tok.offset} is not declared")
        return name

    # -- identities ------------------------------------------------------------
    def parse_file(self) -> List[Identity]:
        identities = []
        while self._peek().kind != "EOF":
            identities.append(self.parse_identity())
        return identities

    def parse_identity(self) -> Identity:
        self._expect("identity")
        name = self.scanner.read_name().text
        anchor, order, params = "", None, []
        while True:
            if self._accept("anchor"):
                anchor = self._expect_kind("STRING").text[1:-1]
            elif self._accept("order"):
                order = int(self._expect_kind("INT").text)
            elif self._accept("params"):
                params.append(self._range())
                while self._peek().kind == "IDENT" and self._peek().text not in RESERVED:
                    params.append(self._range())
            else:
                break
        saved = self.declared
        self.declared = {p.name for p in params}
        try:
            tok = self._peek()
            if not self._at("lhs"):
                raise ExprSyntaxError(f"found {tok.text!r}", tok.offset, ["anchor", "order", "params", "lhs"])
            self.scanner.advance()
            self._expect("=")
            lhs = self.expr()
            self._expect("rhs")
            self._expect("=")
            rhs = self.expr()
        finally:
            self.declared = saved
        return Identity(name=name, lhs=lhs, rhs=rhs, anchor=anchor, params=tuple(params), order=order)

    def _signed_int(self) -> int:
        negative = self._accept("-")
        value = int(self._expect_kind("INT").text)
        return -value if negative else value

    def _range(self) -> ParamRange:
        tok = self._expect_kind("IDENT")
        if tok.text in RESERVED:
            raise ExprSyntaxError(f"{tok.text!r} is reserved", tok.offset, ["parameter"])
        self._expect("in")
        lo = self._signed_int()
        self._expect_kind("RANGE")
        hi = self._signed_int()
        return ParamRange(tok.text, lo, hi)

    # -- series expressions ----------------------------------------------------
    def expr(self) -> Expr:
        node = self.term()
        while True:
            if self._accept("+"):
                node = Add(node, self.term())
            elif self._accept("-"):
                node = Sub(node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.unary()
        while self._accept("*"):
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.primary()
        if self._accept("^"):
            node = Pow(node, self.iunary())
        return node

    def primary(self) -> Expr:
        tok = self._peek()
        if tok.kind == "INT":
            self.scanner.advance()
            value = Fraction(int(tok.text))
            if self._accept("/"):
                den = self._expect_kind("INT")
                if int(den.text) == 0:
                    raise ExprSyntaxError("zero denominator", den.offset, ["INT"])
                value = value / int(den.text)
            return Rational(value)
        if self._starts_mono_factor():
            return MonoTerm(Mono(False, (self.mono_factor(),)))
        if tok.kind == "IDENT":
            if tok.text in FUNCTIONS:
                return self.call()
            self.scanner.advance()
            nxt = self._peek()
            if nxt.text in ("(", "[") and nxt.kind == "PUNCT":
                raise UnknownIdentifier(f"unknown function {tok.text!r} at offset {tok.offset}")
            return ParamConst(self._param_name(tok))
        if self._accept("("):
            node = self.expr()
            self._expect(")")
            return node
        raise ExprSyntaxError(f"found {tok.text or 'end of input'!r}", tok.offset, _PRIMARY_START)

    # -- function calls --------------------------------------------------------
    def _bracket_ints(self, count: int) -> Tuple[IntExpr, ...]:
        self._expect("[")
        values = [self.iexpr()]
        for _ in range(count - 1):
            self._expect(",")
            values.append(self.iexpr())
        self._expect("]")
        return tuple(values)

    def _monos(self, before_semicolon: int) -> Tuple[Mono, ...]:
        """``(mono, ..., mono; mono)`` with ``before_semicolon`` entries before the ';'."""
        self._expect("(")
        monos = [self.mono()]
        for _ in range(before_semicolon - 1):
            self._expect(",")
            monos.append(self.mono())
        self._expect(";")
        monos.append(self.mono())
        self._expect(")")
        return tuple(monos)

    def _int_args(self, count: int) -> Tuple[IntExpr, ...]:
        self._expect("(")
        values = [self.iexpr()]
        for _ in range(count - 1):
            self._expect(",")
            values.append(self.iexpr())
        self._expect(")")
        return tuple(values)

    def call(self) -> Expr:
        name = self.scanner.advance().text
        if name == "j":
            x, base = self._monos(1)
            return Theta(x, base)
        if name in ("J", "Jbar"):
            a, b = self._bracket_ints(2)
            return JFamily(name, a, b)
        if name == "Jsingle":
            (a,) = self._bracket_ints(1)
            return JFamily(name, a)
        if name == "f":
            a, b, c = self._bracket_ints(3)
            x, y, base = self._monos(2)
            return Hecke(a, b, c, x, y, base)
        if name == "m":
            x, z, base = self._monos(2)
            return Appell(x, z, base)
        if name in MOCK_THETA:
            self._expect("(")
            base = self.mono()
            self._expect(")")
            return Mock(name, base)
        if name == "g3":
            x, base = self._monos(1)
            return G3(x, base)
        if name == "poch":
            self._expect("(")
            x = self.mono()
            self._expect(",")
            length = None if self._accept("inf") else self.iexpr()
            self._expect(";")
            base = self.mono()
            self._expect(")")
            return Poch(x, length, base)
        if name == "C":
            p, pprime = self._bracket_ints(2)
            m, ell = self._int_args(2)
            return StringC(p, pprime, m, ell)
        if name == "euler":
            p, pprime = self._bracket_ints(2)
            ell, eta = self._int_args(2)
            return EulerSum(p, pprime, ell, eta)
        if name in ("h", "theta"):
            (n,) = self._bracket_ints(1)
            x, y, base = self._monos(2)
            return SplitPart(name, n, x, y, base)
        if name == "delta":
            a, b = self._int_args(2)
            return KDelta(a, b)
        if name == "qperiod":
            self._expect("[")
            tok = self._peek()
            if tok.text not in ("even", "odd"):
                raise ExprSyntaxError(f"found {tok.text or 'end of input'!r}", tok.offset, ["even", "odd"])
            self.scanner.advance()
            self._expect("]")
            return QuasiPeriod(tok.text, *self._int_args(5))
        if name == "eulerInv3":
            return EulerInv3()
        if name == "inv":
            self._expect("(")
            operand = self.expr()
            self._expect(")")
            return Inv(operand)
        if name == "sum":
            return self._sum()
        raise UnknownIdentifier(f"unknown function {name!r}")  # pragma: no cover

    def _sum(self) -> Sum:
        self._expect("(")
        tok = self._expect_kind("IDENT")
        if tok.text in RESERVED:
            raise ExprSyntaxError(f"{tok.text!r} is reserved", tok.offset, ["index"])
        self._expect(",")
        lo = self.iexpr()
        self._expect(",")
        hi = self.iexpr()
        self._expect(",")
        self.bound.append(tok.text)
        try:
            body = self.expr()
        finally:
            self.bound.pop()
        self._expect(")")
        return Sum(tok.text, lo, hi, body)

    # -- monomials -------------------------------------------------------------
    def _starts_mono_factor(self) -> bool:
        tok = self._peek()
        if tok.kind == "IDENT" and tok.text == "q":
            return True
        return self.scanner.lookahead("(", "-", "1", ")", "^") or self.scanner.lookahead("(", "-", "q", ")", "^")

    def mono_factor(self) -> MonoFactor:
        if self._accept("q"):
            exponent = self.iunary() if self._accept("^") else IntLit(1)
            return MonoFactor("q", exponent)
        tok = self._peek()
        if not self._starts_mono_factor():
            raise ExprSyntaxError(f"found {tok.text or 'end of input'!r}", tok.offset, ["q", "(-1)^", "(-q)^"])
        self._expect("(")
        self._expect("-")
        kind = "minus_q" if self._accept("q") else "minus_one"
        if kind == "minus_one":
            self._expect_kind("INT")
        self._expect(")")
        self._expect("^")
        return MonoFactor(kind, self.iunary())

    def mono(self) -> Mono:
        negated = self._accept("-")
        tok = self._peek()
        if tok.kind == "INT":
            if tok.text != "1":
                raise ExprSyntaxError(f"monomial constant must be 1 or -1, found {tok.text}", tok.offset, ["1", "q"])
            self.scanner.advance()
            return Mono(negated)
        factors = [self.mono_factor()]
        while self._accept("*"):
            factors.append(self.mono_factor())
        return Mono(negated, tuple(factors))

    # -- integer expressions ---------------------------------------------------
    def iexpr(self) -> IntExpr:
        node = self.iterm()
        while True:
            if self._accept("+"):
                node = IntBin("+", node, self.iterm())
            elif self._accept("-"):
                node = IntBin("-", node, self.iterm())
            else:
                return node

    def iterm(self) -> IntExpr:
        node = self.iunary()
        while self._accept("*"):
            node = IntBin("*", node, self.iunary())
        return node

    def iunary(self) -> IntExpr:
        if self._accept("-"):
            return IntNeg(self.iunary())
        return self.ipow()

    def ipow(self) -> IntExpr:
        node = self.iatom()
        if self._accept("^"):
            node = IntBin("^", node, self.iunary())
        return node

    def iatom(self) -> IntExpr:
        tok = self._peek()
        if tok.kind == "INT":
            self.scanner.advance()
            return IntLit(int(tok.text))
        if self._accept("("):
            node = self.iexpr()
            self._expect(")")
            return node
        if self._accept("binom"):
            n, k = self._int_args(2)
            return Binom(n, k)
        if self._accept("floor"):
            self._expect("(")
            num = self.iexpr()
            self._expect("/")
            den = self.iexpr()
            self._expect(")")
            return FloorDiv(num, den)
        if tok.kind == "IDENT":
            self.scanner.advance()
            return Param(self._param_name(tok))
        raise ExprSyntaxError(f"found {tok.text or 'end of input'!r}", tok.offset, ["INT", "IDENT", "(", "binom", "floor"])


def parse_expr(text: str, declared: Optional[Iterable[str]] = None) -> Expr:
    parser = Parser(text, declared)
    node = parser.expr()
    parser._expect_end()
    return node


def parse_identities(text: str, source: Optional[str] = None) -> List[Identity]:
    identities = Parser(text).parse_file()
    if source is None:
        return identities
    return [Identity(i.name, i.lhs, i.rhs, i.anchor, i.params, i.order, source) for i in identities]


def parse(text: str, declared: Optional[Iterable[str]] = None) -> Union[Expr, Identity]:
    """An identity block when the text starts with ``identity``, otherwise a bare expression."""
    parser = Parser(text, declared)
    if parser._at("identity"):
        identity = parser.parse_identity()
        parser._expect_end()
        return identity
    node = parser.expr()
    parser._expect_end()
    return node
