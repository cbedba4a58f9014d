"""Parsing and printing of the ket text notation.

The bit-exact surface syntax of the library:

* element: identifier (``a``, ``z0``), numeral (``0``), or pair ``(a,0)``
* multiset: ``[3 a, 2 b]``, empty ``[]``; entry values may themselves be
  multisets or distributions, as in ``[2 <1/3 a, 2/3 b>]``
* distribution: ``<1/3 a, 2/3 b>``; values may be elements, multisets, or
  nested distributions
* predicate: ``(a:1, b:1/2)``
* channel table (used by the CLI): ``{a: <1/2 u, 1/2 v>, b: <1 u>}``
* rational: ``p`` or ``p/q``, always reduced on output

Printed output is canonical: entries sorted by the element order,
rationals in lowest terms, so printing after parsing normalizes and two
equal values always print identically.
"""

import re
from fractions import Fraction

from .dist import Channel, Dist, Predicate
from .elements import Elem, Pair
from .errors import DomainError, ParseError
from .multiset import Multiset

# -- formatting ---------------------------------------------------------------


def format_rational(q: Fraction | int) -> str:
    return str(q)


def format_element(e: Elem) -> str:
    if isinstance(e, str):
        return e
    if isinstance(e, Pair):
        return f"({format_element(e.fst)},{format_element(e.snd)})"
    if isinstance(e, tuple):
        return "(" + ",".join(format_element(c) for c in e) + ")"
    if isinstance(e, (Multiset, Dist)):
        return format_value(e)
    raise TypeError(f"cannot format {e!r} as an element")


def format_multiset(m: Multiset) -> str:
    inner = ", ".join(f"{n} {format_element(e)}" for e, n in m.entries)
    return f"[{inner}]"


def format_dist(d: Dist) -> str:
    inner = ", ".join(f"{format_rational(w)} {format_element(e)}" for e, w in d.entries)
    return f"<{inner}>"


def format_predicate(p: Predicate) -> str:
    inner = ", ".join(f"{format_element(e)}:{format_rational(v)}" for e, v in p.entries)
    return f"({inner})"


def format_value(v) -> str:
    if isinstance(v, Multiset):
        return format_multiset(v)
    if isinstance(v, Dist):
        return format_dist(v)
    if isinstance(v, Predicate):
        return format_predicate(v)
    return format_element(v)


# -- tokenizing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\[\]<>(){},:/-])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        tokens.append((kind, m.group(), i))
        i = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[1] != text:
            raise ParseError(f"expected {text!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])

    # -- grammar --------------------------------------------------------------

    def nat(self) -> int:
        tok = self.next()
        if tok[0] != "nat":
            raise ParseError(f"expected a natural number, found {tok[1] or 'end of input'!r}", tok[2])
        return int(tok[1])

    def rational(self) -> Fraction:
        negative = False
        if self.peek()[1] == "-":
            self.next()
            negative = True
        num = self.nat()
        if negative:
            num = -num
        if self.peek()[1] == "/":
            self.next()
            dtok = self.peek()
            den = self.nat()
            if den == 0:
                raise ParseError("zero denominator", dtok[2])
            return Fraction(num, den)
        return Fraction(num)

    def element(self) -> Elem:
        kind, text, pos = self.peek()
        if kind in ("ident", "nat"):
            self.next()
            return text
        if text == "(":
            self.next()
            fst = self.element()
            self.expect(",")
            snd = self.element()
            self.expect(")")
            return Pair(fst, snd)
        raise ParseError(f"expected an element, found {text or 'end of input'!r}", pos)

    def value(self):
        kind, text, pos = self.peek()
        if text == "[":
            return self.multiset()
        if text == "<":
            return self.dist()
        return self.element()

    def multiset(self) -> Multiset:
        _, _, start = self.expect("[")
        entries = []
        if self.peek()[1] != "]":
            while True:
                n = self.nat()
                entries.append((self.value(), n))
                if self.peek()[1] != ",":
                    break
                self.next()
        self.expect("]")
        try:
            return Multiset(entries)
        except DomainError as exc:
            raise ParseError(str(exc), start) from None

    def dist(self) -> Dist:
        _, _, start = self.expect("<")
        entries = []
        while True:
            w = self.rational()
            entries.append((self.value(), w))
            if self.peek()[1] != ",":
                break
            self.next()
        self.expect(">")
        try:
            return Dist(entries)
        except DomainError as exc:
            raise ParseError(str(exc), start) from None

    def predicate(self) -> Predicate:
        _, _, start = self.expect("(")
        entries = []
        while True:
            key = self.element()
            self.expect(":")
            entries.append((key, self.rational()))
            if self.peek()[1] != ",":
                break
            self.next()
        self.expect(")")
        try:
            return Predicate(entries)
        except DomainError as exc:
            raise ParseError(str(exc), start) from None

    def channel(self) -> Channel:
        self.expect("{")
        table = {}
        while True:
            key = self.element()
            self.expect(":")
            if key in table:
                raise ParseError(f"duplicate channel entry for {key!r}", self.peek()[2])
            table[key] = self.dist()
            if self.peek()[1] != ",":
                break
            self.next()
        self.expect("}")
        return Channel.from_mapping(table)

    def any_value(self):
        kind, text, pos = self.peek()
        if text == "[":
            return self.multiset()
        if text == "<":
            return self.dist()
        if text == "{":
            return self.channel()
        if text == "(":
            # A parenthesis opens either a pair or a predicate; the token
            # after the first inner element tells them apart.
            if self.peek(2)[1] == ":":
                return self.predicate()
            return self.element()
        return self.element()


def _parse_with(method_name: str, text: str):
    parser = _Parser(text)
    value = getattr(parser, method_name)()
    parser.done()
    return value


def parse_value(text: str):
    """Parse any ket literal: element, multiset, distribution, or predicate."""
    return _parse_with("any_value", text)


def parse_element(text: str) -> Elem:
    return _parse_with("element", text)


def parse_multiset(text: str) -> Multiset:
    return _parse_with("multiset", text)


def parse_dist(text: str) -> Dist:
    return _parse_with("dist", text)


def parse_predicate(text: str) -> Predicate:
    return _parse_with("predicate", text)


def parse_channel(text: str) -> Channel:
    return _parse_with("channel", text)
