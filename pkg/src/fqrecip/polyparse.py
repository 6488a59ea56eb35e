"""Text grammar for polynomials and field-spec files.

Polynomials::

    poly  := sign? term (('+' | '-') term)*
    term  := coeff ('*' mono)? | mono
    mono  := 't' ('^' INT)?
    coeff := INT | '[' INT (',' INT)* ']'

INT coefficients are prime-subfield residues reduced mod p; a bracketed list is
an extension element c0 + c1 x + ... in ascending order.  Whitespace is ignored.

Field specs are ``key = value`` lines (``;`` also separates entries) with keys
``p``, ``k``, ``modulus`` and optional ``generator``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CoeffLengthMismatch, ParseError
from .field import FieldSpec, make_field_spec
from .polyring import Poly, _add

__all__ = ["ParseDiagnostic", "parse_poly", "format_poly", "format_element", "parse_field_spec"]


@dataclass(frozen=True)
class ParseDiagnostic:
    position: int
    expected: str
    found: str

    def __str__(self):
        return "at offset %d: expected %s, found %s" % (self.position, self.expected, self.found)


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def fail(self, expected: str, cls=ParseError):
        self.skip()
        found = repr(self.text[self.i]) if self.i < len(self.text) else "end of input"
        pos = len(self.text[: self.i].encode("utf-8"))
        raise cls(ParseDiagnostic(pos, expected, found))

    def take(self, ch: str, expected: str):
        if self.peek() != ch:
            self.fail(expected)
        self.i += 1

    def integer(self, expected: str) -> int:
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.fail(expected)
        value = int(self.text[self.i : j])
        self.i = j
        return value


def _coeff(cur: _Cursor, spec: FieldSpec) -> int:
    if cur.peek() == "[":
        start = cur.i
        cur.i += 1
        digits = [cur.integer("integer")]
        while cur.peek() == ",":
            cur.i += 1
            digits.append(cur.integer("integer"))
        cur.take("]", "',' or ']'")
        if len(digits) > spec.k:
            pos = len(cur.text[:start].encode("utf-8"))
            raise CoeffLengthMismatch(
                ParseDiagnostic(pos, "at most %d coefficients" % spec.k, "%d coefficients" % len(digits))
            )
        return spec(digits).code
    return cur.integer("coefficient or 't'") % spec.p


def _mono(cur: _Cursor) -> int:
    cur.take("t", "'t'")
    if cur.peek() == "^":
        cur.i += 1
        return cur.integer("exponent")
    return 1


def _term(cur: _Cursor, spec: FieldSpec) -> tuple[int, int]:
    ch = cur.peek()
    if ch == "t":
        return 1, _mono(cur)
    if not (ch.isdigit() or ch == "["):
        cur.fail("coefficient or 't'")
    c = _coeff(cur, spec)
    if cur.peek() == "*":
        cur.i += 1
        return c, _mono(cur)
    return c, 0


def parse_poly(text: str, spec: FieldSpec) -> Poly:
    cur = _Cursor(text)
    acc: tuple[int, ...] = ()
    negative = False
    if cur.peek() in ("+", "-"):
        negative = cur.peek() == "-"
        cur.i += 1
    while True:
        c, e = _term(cur, spec)
        if negative:
            c = spec.cneg(c)
        acc = _add(spec, acc, (0,) * e + (c,))
        ch = cur.peek()
        if ch == "":
            break
        if ch not in ("+", "-"):
            cur.fail("'+', '-' or end of input")
        negative = ch == "-"
        cur.i += 1
    return Poly.from_codes(spec, acc)


def format_element(spec: FieldSpec, code: int) -> str:
    digits = spec.digits(code)
    if not any(digits[1:]):
        return str(digits[0])
    n = len(digits)
    while digits[n - 1] == 0:
        n -= 1
    return "[%s]" % ",".join(str(d) for d in digits[:n])


def format_poly(f: Poly) -> str:
    """Descending-power rendering; ``parse_poly(format_poly(f)) == f``."""
    if not f.codes:
        return "0"
    parts = []
    for e in range(len(f.codes) - 1, -1, -1):
        c = f.codes[e]
        if c == 0:
            continue
        coeff = format_element(f.spec, c)
        if e == 0:
            parts.append(coeff)
            continue
        mono = "t" if e == 1 else "t^%d" % e
        parts.append(mono if c == 1 else "%s*%s" % (coeff, mono))
    return "+".join(parts)


def _int_list(cur: _Cursor) -> list[int]:
    cur.take("[", "'['")
    items = []
    if cur.peek() != "]":
        items.append(cur.integer("integer"))
        while cur.peek() == ",":
            cur.i += 1
            items.append(cur.integer("integer"))
    cur.take("]", "',' or ']'")
    return items


def parse_field_spec(text: str) -> FieldSpec:
    """Parse the ``key = value`` field description and validate it."""
    values: dict[str, object] = {}
    # entries end at newlines or ';'
    entries = []
    start = 0
    for i, ch in enumerate(text + "\n"):
        if ch in "\n;":
            entries.append((start, text[start:i]))
            start = i + 1
    for start, line in entries:
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        cur = _Cursor(text)
        cur.i = start
        end = start + len(body)
        cur.text = text[:end]
        cur.skip()
        j = cur.i
        while j < end and (text[j].isalnum() or text[j] == "_"):
            j += 1
        key = text[cur.i : j]
        if key not in ("p", "k", "modulus", "generator"):
            cur.fail("one of p, k, modulus, generator")
        if key in values:
            cur.fail("a key not already given")
        cur.i = j
        cur.take("=", "'='")
        if key in ("p", "k"):
            values[key] = cur.integer("integer")
        elif key == "modulus":
            values[key] = _int_list(cur)
        else:
            values[key] = _int_list(cur) if cur.peek() == "[" else cur.integer("integer or list")
        if cur.peek() != "":
            cur.fail("end of line")
    if "p" not in values:
        raise ParseError(ParseDiagnostic(len(text.encode("utf-8")), "key 'p'", "end of input"))
    return make_field_spec(
        values["p"], values.get("k", 1), values.get("modulus"), values.get("generator")
    )
