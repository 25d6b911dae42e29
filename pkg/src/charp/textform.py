"""Canonical text formats and parsers.

Element grammar (shared with the command line): integers, variable names,
``+ - * / ^`` and parentheses; constant-field elements are polynomials in
the generator symbol ``g``.  Symbols are written ``[a, b)_p`` with an
optional ``^op`` suffix; expressions join symbols with ``*``; towers are
``GF(q)(t) ; AS i: i^2+i = 1/t ; ROOT s: s^2 = t``; simple steps are
``EXT j: j^2+(t)*j+(t^2) = 0``.

Printing is canonical (graded lexicographic term order, normalized
fractions), so parse(print(x)) reproduces x and print is injective on
normal forms; serialized artifacts round-trip byte for byte.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .ffield import FFElem, FiniteField
from .poly import Poly, PolyRing, RatFunc


class ParseError(ValueError):
    """Syntax or semantic error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def format_ff(field: FiniteField, c: FFElem) -> str:
    if field.is_zero(c):
        return "0"
    parts = []
    for e in range(field.d - 1, -1, -1):
        digit = c[e]
        if not digit:
            continue
        if e == 0:
            parts.append(str(digit))
        else:
            head = "" if digit == 1 else "%d*" % digit
            parts.append(head + ("g" if e == 1 else "g^%d" % e))
    return "+".join(parts)


def _format_monomial(ring: PolyRing, mon) -> str:
    pieces = []
    for name, e in zip(ring.variables, mon):
        if e == 0:
            continue
        pieces.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(pieces)


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    ring = f.ring
    field = ring.field
    parts = []
    for mon, c in f.sorted_terms():
        mon_str = _format_monomial(ring, mon)
        c_str = format_ff(field, c)
        if not mon_str:
            parts.append(c_str if ("+" not in c_str) else "(%s)" % c_str)
        elif c == field.one:
            parts.append(mon_str)
        elif "+" in c_str or "*" in c_str:
            parts.append("(%s)*%s" % (c_str, mon_str))
        else:
            parts.append("%s*%s" % (c_str, mon_str))
    return "+".join(parts)


def _wrap(s: str) -> str:
    return s if re.fullmatch(r"[A-Za-z_]\w*(\^\d+)?|\d+", s) else "(%s)" % s


def format_ratfunc(x: RatFunc) -> str:
    num = format_poly(x.num)
    if x.den == x.ring.one():
        return num
    return "%s/%s" % (_wrap(num), _wrap(format_poly(x.den)))


def format_elem(x) -> str:
    """A tower element as a sum of coefficient * generator-monomial terms."""
    from . import towers as tw
    tower = x.tower
    coords = tw._coordinates(x, 0)
    gens = tower.generator_names(x.level)
    parts = []
    for key in sorted(coords, key=lambda k: (sum(k), k)):
        coeff = coords[key]
        if coeff.is_zero():
            continue
        mon = "*".join(
            (g if e == 1 else "%s^%d" % (g, e))
            for g, e in zip(gens, key) if e)
        c_str = format_ratfunc(coeff)
        if not mon:
            parts.append(c_str)
        elif c_str == "1":
            parts.append(mon)
        else:
            parts.append("%s*%s" % (_wrap(c_str), mon))
    if not parts:
        return "0"
    return "+".join(parts)


def format_symbol(s) -> str:
    return "[%s, %s)_%d" % (format_elem(s.a), format_elem(s.b), s.p)


def format_expr(e) -> str:
    if e.is_empty():
        return "1"
    return " * ".join(format_symbol(s) for s in e.entries)


def format_tower(t) -> str:
    head = "GF(%d)(%s)" % (t.base_field.order, ",".join(t.ring.variables))
    parts = [head]
    p = t.p
    for level in range(1, t.depth + 1):
        step = t.steps[level - 1]
        if step.kind == "artin_schreier":
            from . import towers as tw
            a = tw.step_defining_elem(t, level)
            lhs = _as_lhs(step.gen, p)
            parts.append("AS %s: %s = %s" % (step.gen, lhs, format_elem(a)))
        elif step.kind == "insep_root":
            from . import towers as tw
            b = tw.step_defining_elem(t, level)
            parts.append("ROOT %s: %s^%d = %s" % (step.gen, step.gen, p, format_elem(b)))
        else:
            from . import towers as tw
            coeffs = [tw.Elem(t, level - 1, rep) for rep in step.data]
            terms = []
            for e in range(len(coeffs) - 1, -1, -1):
                c = coeffs[e]
                if c.is_zero():
                    continue
                mon = step.gen if e == 1 else ("%s^%d" % (step.gen, e) if e else "")
                c_str = format_elem(c)
                if e == len(coeffs) - 1:
                    terms.append(mon)
                elif mon:
                    terms.append("(%s)*%s" % (c_str, mon))
                else:
                    terms.append("(%s)" % c_str)
            parts.append("EXT %s: %s = 0" % (step.gen, "+".join(terms)))
    return " ; ".join(parts)


def _as_lhs(gen: str, p: int) -> str:
    if p == 2:
        return "%s^2+%s" % (gen, gen)
    return "%s^%d+%d*%s" % (gen, p, p - 1, gen)


def format_place(place) -> str:
    if place.pi is None:
        return "inf"
    return "(%s)" % format_poly(place.pi)


def format_invariant_vector(v) -> str:
    if v.is_zero():
        return "{}"
    parts = ["%s: %d/%d" % (format_place(pl), v.entries[pl], v.p)
             for pl in v.support()]
    return "{%s}" % ", ".join(parts)


def invariant_vector_json(v) -> dict:
    return {
        "p": v.p,
        "entries": [{"place": format_place(pl), "value": v.entries[pl]}
                    for pl in v.support()],
    }


# ---------------------------------------------------------------------------
# element parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\^|\+|\-|\*|/|\(|\)|\[|\]|,|\{|\}))")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            rest = self.text[self.pos:].strip()
            if rest:
                raise ParseError("unrecognized input %r" % rest[:10], self.pos)
            return None
        if m.group(1) is not None:
            return ("int", m.group(1), m.end())
        if m.group(2) is not None:
            return ("name", m.group(2), m.end())
        return ("op", m.group(3), m.end())

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.pos)
        self.pos = tok[2]
        return tok

    def accept(self, kind: str, value: Optional[str] = None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            return None
        self.pos = tok[2]
        return tok

    def expect(self, kind: str, value: Optional[str] = None):
        tok = self.accept(kind, value)
        if tok is None:
            raise ParseError("expected %s" % (value or kind), self.pos)
        return tok

    def at_end(self) -> bool:
        return self.peek() is None


class ElementParser:
    """Recursive-descent parser for level elements of a tower."""

    def __init__(self, tower, level: int):
        from . import towers as tw
        self.tw = tw
        self.tower = tower
        self.level = level
        self.names = {}
        for name in tower.ring.variables:
            self.names[name] = tw.var_elem(tower, name, level)
        for lvl in range(1, level + 1):
            gen = tower.steps[lvl - 1].gen
            self.names[gen] = tw.lift(tw.gen_elem(tower, lvl), level)
        if tower.base_field.d > 1 and "g" not in self.names:
            self.names["g"] = tw.const_elem(tower, tower.base_field.gen, level)

    def parse(self, text: str):
        cur = _Cursor(text)
        out = self.parse_cursor(cur)
        if not cur.at_end():
            raise ParseError("trailing input", cur.pos)
        return out

    def parse_cursor(self, cur: _Cursor):
        return self._sum(cur)

    def _sum(self, cur: _Cursor):
        tw = self.tw
        neg = False
        while True:
            if cur.accept("op", "-"):
                neg = not neg
            elif cur.accept("op", "+"):
                pass
            else:
                break
        acc = self._product(cur)
        if neg:
            acc = tw.neg(acc)
        while True:
            if cur.accept("op", "+"):
                acc = tw.add(acc, self._product(cur))
            elif cur.accept("op", "-"):
                acc = tw.sub(acc, self._product(cur))
            else:
                return acc

    def _product(self, cur: _Cursor):
        tw = self.tw
        acc = self._factor(cur)
        while True:
            if cur.accept("op", "*"):
                acc = tw.mul(acc, self._factor(cur))
            elif cur.accept("op", "/"):
                pos = cur.pos
                rhs = self._factor(cur)
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                acc = tw.div(acc, rhs)
            else:
                return acc

    def _factor(self, cur: _Cursor):
        tw = self.tw
        base = self._atom(cur)
        if cur.accept("op", "^"):
            tok = cur.expect("int")
            return tw.power(base, int(tok[1]))
        return base

    def _atom(self, cur: _Cursor):
        tw = self.tw
        if cur.accept("op", "("):
            inner = self._sum(cur)
            cur.expect("op", ")")
            return inner
        tok = cur.peek()
        if tok is None:
            raise ParseError("unexpected end of input", cur.pos)
        if tok[0] == "int":
            cur.next()
            return tw.int_elem(self.tower, self.level, int(tok[1]))
        if tok[0] == "name":
            cur.next()
            el = self.names.get(tok[1])
            if el is None:
                raise ParseError("unknown variable %r" % tok[1], cur.pos)
            return el
        raise ParseError("expected a value", cur.pos)


def parse_element(text: str, tower, level: int = 0):
    return ElementParser(tower, level).parse(text)


# ---------------------------------------------------------------------------
# symbols and expressions
# ---------------------------------------------------------------------------

def parse_symbol_cursor(cur: _Cursor, parser: ElementParser, p: int):
    from .symbols import Symbol
    cur.expect("op", "[")
    a = parser.parse_cursor(cur)
    cur.expect("op", ",")
    b = parser.parse_cursor(cur)
    cur.expect("op", ")")
    pos = cur.pos
    if cur.text[cur.pos:cur.pos + 1] != "_":
        raise ParseError("expected _p after a symbol", pos)
    cur.pos += 1
    tok = cur.expect("int")
    if int(tok[1]) != p:
        raise ParseError("symbol prime %s does not match the field" % tok[1], pos)
    is_op = False
    if cur.accept("op", "^"):
        name = cur.expect("name")
        if name[1] != "op":
            raise ParseError("only ^op is allowed on symbols", cur.pos)
        is_op = True
    if b.is_zero():
        raise ParseError("the radical slot must be nonzero", pos)
    return Symbol(a, b), is_op


def parse_symbol(text: str, tower, level: int = 0):
    parser = ElementParser(tower, level)
    cur = _Cursor(text)
    sym, is_op = parse_symbol_cursor(cur, parser, tower.p)
    if not cur.at_end():
        raise ParseError("trailing input after symbol", cur.pos)
    return sym, is_op


def parse_expr(text: str, tower, level: int = 0):
    """An expression: symbols joined by ``*``, or ``1`` for the empty one.
    ``^op`` entries expand into p-1 positive copies."""
    from .symbols import BrauerExpr
    parser = ElementParser(tower, level)
    cur = _Cursor(text)
    entries = []
    if cur.accept("int", "1"):
        if not cur.at_end():
            raise ParseError("trailing input after the empty expression", cur.pos)
        return BrauerExpr(tower, level, [])
    while True:
        sym, is_op = parse_symbol_cursor(cur, parser, tower.p)
        entries.extend([sym] * ((tower.p - 1) if is_op else 1))
        if cur.accept("op", "*"):
            continue
        if not cur.at_end():
            raise ParseError("expected * between symbols", cur.pos)
        return BrauerExpr(tower, level, entries)


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

def _parse_gf(head: str) -> Tuple[FiniteField, List[str]]:
    m = re.fullmatch(r"\s*GF\((\d+)\)\(([^)]*)\)\s*", head)
    if m is None:
        raise ParseError("expected GF(q)(vars)", 0)
    q = int(m.group(1))
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    d = 0
    qq = q
    while qq > 1:
        if qq % p:
            raise ParseError("constant field size must be a prime power", 0)
        qq //= p
        d += 1
    variables = [v.strip() for v in m.group(2).split(",") if v.strip()]
    if not variables:
        raise ParseError("at least one base variable is required", 0)
    return FiniteField(p, d), variables


def parse_tower(text: str):
    from . import towers as tw
    chunks = [c.strip() for c in text.split(";")]
    field, variables = _parse_gf(chunks[0])
    tower = tw.FieldTower(field, variables)
    p = field.p
    for chunk in chunks[1:]:
        if not chunk:
            continue
        m = re.match(r"(AS|ROOT|EXT)\s+([A-Za-z_]\w*)\s*:\s*(.*)$", chunk)
        if m is None:
            raise ParseError("expected 'AS g: ...', 'ROOT g: ...' or 'EXT g: ...'", 0)
        kind_word, gen, body = m.group(1), m.group(2), m.group(3)
        if kind_word in ("AS", "ROOT"):
            lhs, _, rhs = body.partition("=")
            if not rhs:
                raise ParseError("missing '=' in step %r" % chunk, 0)
            want = _as_lhs(gen, p) if kind_word == "AS" else "%s^%d" % (gen, p)
            if lhs.replace(" ", "") != want:
                raise ParseError(
                    "step left side must be %r" % want, 0)
            data = parse_element(rhs.strip(), tower, tower.depth)
            kind = "artin_schreier" if kind_word == "AS" else "insep_root"
            tower = tw.make_step(tower, kind, gen, data)
        else:
            lhs, _, rhs = body.partition("=")
            if rhs.strip() != "0":
                raise ParseError("simple steps end in '= 0'", 0)
            coeffs = _parse_simple_lhs(lhs.strip(), gen, tower)
            tower = tw.make_step(tower, "simple", gen, coeffs)
    return tower


def _parse_simple_lhs(lhs: str, gen: str, tower) -> list:
    from . import towers as tw
    term_re = re.compile(
        r"(?:\((?P<coeff>[^()]*(?:\([^()]*\)[^()]*)*)\)\*)?"
        r"(?P<gen>%s)(?:\^(?P<exp>\d+))?$" % re.escape(gen))
    level = tower.depth
    pieces = _split_top_level_plus(lhs)
    coeffs: dict = {}
    for piece in pieces:
        piece = piece.strip()
        m = term_re.fullmatch(piece)
        if m is not None:
            e = int(m.group("exp") or 1)
            c_text = m.group("coeff") or "1"
        else:
            e = 0
            c_text = piece[1:-1] if piece.startswith("(") and piece.endswith(")") else piece
        if e in coeffs:
            raise ParseError("repeated power %d in simple step" % e, 0)
        coeffs[e] = parse_element(c_text, tower, level)
    degree = max(coeffs)
    out = []
    for e in range(degree + 1):
        out.append(coeffs.get(e, tw.int_elem(tower, level, 0)))
    return out


def _split_top_level_plus(text: str) -> List[str]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return out
