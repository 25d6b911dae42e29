"""Multivariate polynomials and reduced rational functions over GF(p^d).

Polynomials are finitely supported maps monomial -> nonzero coefficient,
where a monomial is a tuple of exponents matching the ring's variable list.
Printing, leading terms and tie-breaks all use graded lexicographic order.

Rational functions are kept in reduced normal form: numerator and
denominator coprime, denominator's leading coefficient equal to one.  In one
variable the gcd is the ordinary Euclidean one; in several variables it is
computed by content / primitive-part recursion, which is all the reduction
this package ever needs (no general multivariate factorization).
"""

from __future__ import annotations

import random
from typing import Dict, Iterable, Tuple

from .ffield import FFElem, FiniteField

Monomial = Tuple[int, ...]


class PolyRing:
    """A polynomial ring: a coefficient field plus an ordered variable list."""

    def __init__(self, field: FiniteField, variables: Iterable[str]):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self._zero_mon = (0,) * self.nvars

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.variables == other.variables)

    def __hash__(self) -> int:
        return hash((self.field, self.variables))

    def __repr__(self) -> str:
        return "PolyRing(GF(%d^%d), %s)" % (self.field.p, self.field.d, list(self.variables))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(self.field.one)

    def constant(self, c: FFElem) -> "Poly":
        if self.field.is_zero(c):
            return Poly(self, {})
        return Poly(self, {self._zero_mon: c})

    def from_int(self, n: int) -> "Poly":
        return self.constant(self.field.from_int(n))

    def var(self, name: str) -> "Poly":
        i = self.variables.index(name)
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {mon: self.field.one})


def _grlex_key(mon: Monomial):
    return (sum(mon), mon)


class Poly:
    """Immutable multivariate polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, FFElem]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if not ring.field.is_zero(c)}
        self._hash = None

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> FFElem:
        if self.is_zero():
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[self.ring._zero_mon]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var_index: int) -> int:
        return max((m[var_index] for m in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> FFElem:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]), reverse=True)

    # -- ring operations --

    def __add__(self, other: "Poly") -> "Poly":
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(out.get(m, field.zero), c)
            if field.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        field = self.ring.field
        return Poly(self.ring, {m: field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        field = self.ring.field
        out: Dict[Monomial, FFElem] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = field.mul(c1, c2)
                s = field.add(out.get(m, field.zero), prod)
                if field.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.ring, out)

    def scale(self, c: FFElem) -> "Poly":
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {m: field.mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .textform import format_poly
        return format_poly(self)

    # -- calculus and substitution --

    def derivative(self, var_index: int) -> "Poly":
        field = self.ring.field
        out: Dict[Monomial, FFElem] = {}
        for m, c in self.terms.items():
            e = m[var_index]
            if e % field.p == 0:
                continue
            nm = tuple(x - 1 if i == var_index else x for i, x in enumerate(m))
            nc = field.smul(e, c)
            s = field.add(out.get(nm, field.zero), nc)
            if field.is_zero(s):
                out.pop(nm, None)
            else:
                out[nm] = s
        return Poly(self.ring, out)

    def substitute(self, values: dict, zero, one, add, mul, embed_coeff):
        """Map each variable through ``values`` into any commutative ring
        described by (zero, one, add, mul); coefficients are sent through
        embed_coeff.  Used for base changes and expression evaluation."""
        acc = zero
        for m, c in self.terms.items():
            term = embed_coeff(c)
            for i, e in enumerate(m):
                if e:
                    term = mul(term, _generic_pow(values[self.ring.variables[i]], e, one, mul))
            acc = add(acc, term)
        return acc

    # -- characteristic-p structure --

    def pth_power_root(self) -> "Poly | None":
        """The polynomial g with g^p = self, or None.

        In characteristic p a polynomial is a p-th power iff every exponent is
        divisible by p; coefficients always have roots since GF(p^d) is perfect.
        """
        p = self.ring.field.p
        out: Dict[Monomial, FFElem] = {}
        for m, c in self.terms.items():
            if any(e % p for e in m):
                return None
            out[tuple(e // p for e in m)] = self.ring.field.pth_root(c)
        return Poly(self.ring, out)


def _generic_pow(x, e, one, mul):
    result = one
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# division and gcd
# ---------------------------------------------------------------------------

def poly_divmod_1var(f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """Euclidean division in one variable (ring must be univariate)."""
    ring = f.ring
    if ring.nvars != 1:
        raise ValueError("univariate division on a multivariate ring")
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    field = ring.field
    inv_lead = field.inv(g.leading_coeff())
    dg = g.degree_in(0)
    q: Dict[Monomial, FFElem] = {}
    r = f
    while not r.is_zero() and r.degree_in(0) >= dg:
        dr = r.degree_in(0)
        c = field.mul(r.terms[(dr,)], inv_lead)
        q[(dr - dg,)] = c
        shift = Poly(ring, {(dr - dg,): c})
        r = r - shift * g
    return Poly(ring, q), r


def poly_exact_div(f: Poly, g: Poly) -> Poly:
    """Exact division f / g; raises ArithmeticError if g does not divide f."""
    ring = f.ring
    field = ring.field
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q: Dict[Monomial, FFElem] = {}
    r = f
    glm = g.leading_monomial()
    glc_inv = field.inv(g.leading_coeff())
    while not r.is_zero():
        rlm = r.leading_monomial()
        mon = tuple(a - b for a, b in zip(rlm, glm))
        if any(e < 0 for e in mon):
            raise ArithmeticError("inexact polynomial division")
        c = field.mul(r.terms[rlm], glc_inv)
        q[mon] = field.add(q.get(mon, field.zero), c)
        r = r - Poly(ring, {mon: c}) * g
    return Poly(ring, q)


def _gcd_1var(a: Poly, b: Poly) -> Poly:
    field = a.ring.field
    while not b.is_zero():
        _, r = poly_divmod_1var(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(field.inv(a.leading_coeff()))


def _coeff_map(f: Poly, var_index: int) -> Dict[int, Poly]:
    """View f as a univariate polynomial in one variable with polynomial
    coefficients in the remaining ones (same ring, exponent zeroed)."""
    out: Dict[int, Dict[Monomial, FFElem]] = {}
    for m, c in f.terms.items():
        e = m[var_index]
        rest = tuple(0 if i == var_index else x for i, x in enumerate(m))
        out.setdefault(e, {})[rest] = c
    return {e: Poly(f.ring, terms) for e, terms in out.items()}


def _from_coeff_map(ring: PolyRing, var_index: int, cmap: Dict[int, Poly]) -> Poly:
    terms: Dict[Monomial, FFElem] = {}
    for e, coeff in cmap.items():
        for m, c in coeff.terms.items():
            nm = tuple(e if i == var_index else x for i, x in enumerate(m))
            terms[nm] = c
    return Poly(ring, terms)


def _content(f: Poly, var_index: int) -> Poly:
    cmap = _coeff_map(f, var_index)
    acc = f.ring.zero()
    for coeff in cmap.values():
        acc = poly_gcd(acc, coeff)
    return acc


def _pseudo_rem(f: Poly, g: Poly, var_index: int) -> Poly:
    """Pseudo remainder of f by g in the chosen variable."""
    dg = g.degree_in(var_index)
    lead_g = _coeff_map(g, var_index)[dg]
    r = f
    ring = f.ring
    while not r.is_zero() and r.degree_in(var_index) >= dg:
        dr = r.degree_in(var_index)
        lead_r = _coeff_map(r, var_index)[dr]
        shift_mon = tuple(dr - dg if i == var_index else 0 for i in range(ring.nvars))
        r = r * lead_g - g * (lead_r * Poly(ring, {shift_mon: ring.field.one}))
        if not r.is_zero() and r.degree_in(var_index) == dr:
            raise AssertionError("pseudo remainder failed to drop the degree")
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic-normalized gcd; multivariate case by primitive remainder sequences."""
    ring = a.ring
    if a.is_zero():
        return _normalize_lead(b)
    if b.is_zero():
        return _normalize_lead(a)
    if ring.nvars == 1:
        return _gcd_1var(a, b)
    # pick the first variable occurring in either operand
    var_index = None
    for i in range(ring.nvars):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            var_index = i
            break
    if var_index is None:
        return ring.one()
    ca, cb = _content(a, var_index), _content(b, var_index)
    pa, pb = poly_exact_div(a, ca), poly_exact_div(b, cb)
    if pa.degree_in(var_index) < pb.degree_in(var_index):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, var_index)
        if r.is_zero():
            pa, pb = pb, r
            break
        r = poly_exact_div(r, _content(r, var_index))
        pa, pb = pb, r
    if pb.is_zero() and pa.degree_in(var_index) >= 0:
        pa = poly_exact_div(pa, _content(pa, var_index))
    return _normalize_lead(poly_gcd(ca, cb) * pa)


def _normalize_lead(f: Poly) -> Poly:
    if f.is_zero():
        return f
    return f.scale(f.ring.field.inv(f.leading_coeff()))


# ---------------------------------------------------------------------------
# reduced rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """A reduced fraction of polynomials with normalized denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ring != den.ring:
            raise ValueError("numerator and denominator in different rings")
        if reduce:
            if num.is_zero():
                den = num.ring.one()
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = poly_exact_div(num, g)
                    den = poly_exact_div(den, g)
                lc = den.leading_coeff()
                if lc != num.ring.field.one:
                    inv = num.ring.field.inv(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    # -- constructors --

    @staticmethod
    def from_poly(f: Poly) -> "RatFunc":
        return RatFunc(f, f.ring.one(), reduce=False)

    @staticmethod
    def zero(ring: PolyRing) -> "RatFunc":
        return RatFunc(ring.zero(), ring.one(), reduce=False)

    @staticmethod
    def one(ring: PolyRing) -> "RatFunc":
        return RatFunc(ring.one(), ring.one(), reduce=False)

    # -- predicates --

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> FFElem:
        field = self.ring.field
        return field.div(self.num.constant_value(), self.den.constant_value())

    # -- field operations --

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFunc":
        return RatFunc.one(self.ring) / self

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inv() ** (-e)
        result = RatFunc.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        from .textform import format_ratfunc
        return format_ratfunc(self)

    # -- calculus / characteristic-p structure --

    def derivative(self, var_name: str) -> "RatFunc":
        i = self.ring.variables.index(var_name)
        n, d = self.num, self.den
        return RatFunc(n.derivative(i) * d - n * d.derivative(i), d * d)

    def pth_root(self) -> "RatFunc | None":
        """y with y^p = self, or None; reads exponents of the reduced form."""
        rn = self.num.pth_power_root()
        if rn is None:
            return None
        rd = self.den.pth_power_root()
        if rd is None:
            return None
        return RatFunc(rn, rd, reduce=False)


def normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduced, canonically normalized fraction equal to num/den."""
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# univariate factorization (distinct-degree, then equal-degree splitting)
# ---------------------------------------------------------------------------

def _powmod_poly(base: Poly, e: int, mod: Poly) -> Poly:
    result = base.ring.one()
    b = poly_divmod_1var(base, mod)[1]
    while e:
        if e & 1:
            result = poly_divmod_1var(result * b, mod)[1]
        b = poly_divmod_1var(b * b, mod)[1]
        e >>= 1
    return result


def _random_poly(ring: PolyRing, max_deg: int, rng: random.Random) -> Poly:
    field = ring.field
    terms: Dict[Monomial, FFElem] = {}
    for e in range(max_deg + 1):
        c = tuple(rng.randrange(field.p) for _ in range(field.d))
        if not field.is_zero(c):
            terms[(e,)] = c
    return Poly(ring, terms)


def _equal_degree_split(f: Poly, r: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree product of irreducibles of equal degree r."""
    ring = f.ring
    field = ring.field
    q = field.order
    n = f.degree_in(0)
    if n == r:
        return [f]
    one = ring.one()
    while True:
        u = _random_poly(ring, n - 1, rng)
        if u.is_zero() or u.is_constant():
            continue
        if field.p == 2:
            # absolute trace map to GF(2), evaluated modulo f
            t = poly_divmod_1var(u, f)[1]
            acc = t
            bits = field.d * r
            for _ in range(bits - 1):
                t = poly_divmod_1var(t * t, f)[1]
                acc = acc + t
            g = poly_gcd(f, acc)
        else:
            w = _powmod_poly(u, (q ** r - 1) // 2, f)
            g = poly_gcd(f, w - one)
        if not g.is_constant() and g.degree_in(0) < n:
            h = poly_exact_div(f, g)
            h = _normalize_lead(h)
            return _equal_degree_split(g, r, rng) + _equal_degree_split(h, r, rng)


def _split_squarefree(f: Poly, rng: random.Random) -> list[Poly]:
    """Distinct-degree then equal-degree factorization of a squarefree monic f."""
    ring = f.ring
    q = ring.field.order
    x = ring.var(ring.variables[0])
    out: list[Poly] = []
    r = 1
    rest = f
    while rest.degree_in(0) >= 2 * r:
        h = _powmod_poly(x, q ** r, rest) - x
        g = poly_gcd(rest, h)
        if not g.is_constant():
            out.extend(_equal_degree_split(g, r, rng))
            rest = _normalize_lead(poly_exact_div(rest, g))
        r += 1
    if rest.degree_in(0) > 0:
        out.append(rest)
    return out


def factor_univariate(f: Poly, seed: int = 0) -> Tuple[FFElem, Dict[Poly, int]]:
    """Factor a nonzero univariate polynomial.

    Returns (leading coefficient, {monic irreducible: multiplicity}); the
    product of the factors times the leading coefficient equals f.  The
    random choices of equal-degree splitting are driven by the seed, so the
    output is reproducible.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.ring.nvars != 1:
        raise ValueError("factor_univariate needs a univariate polynomial")
    rng = random.Random(seed)
    lc = f.leading_coeff()
    f = _normalize_lead(f)
    factors: Dict[Poly, int] = {}
    mult = 1
    while f.degree_in(0) > 0:
        deriv = f.derivative(0)
        if deriv.is_zero():
            f = f.pth_power_root()
            mult *= f.ring.field.p
            continue
        sqf = _normalize_lead(poly_exact_div(f, poly_gcd(f, deriv)))
        for irr in _split_squarefree(sqf, rng):
            k = 0
            while True:
                q, r = poly_divmod_1var(f, irr)
                if not r.is_zero():
                    break
                f = q
                k += 1
            factors[irr] = factors.get(irr, 0) + k * mult
    return lc, factors
