"""Local invariants of degree-p symbols over GF(q)(t).

A place is a monic irreducible polynomial or the degree-one place at
infinity.  The local invariant of a symbol with slots (a, b) at a place v is

    Tr_{k(v)/F_p}( res_v( a * db/b ) )   in   Z/p,

computed after the pole order of a at v has been reduced to be prime to p
by subtracting elements of the form c^p - c.  Residues are exact: the
completion at v is expanded in a coefficient field constructed from the
multiplicative lift of the residue class of t, so digits multiply as
residue-field elements and the coefficient of the -1 power is the residue.

Everything here works on plain rational functions; symbol and expression
level plumbing lives in the oracle module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .poly import (Poly, PolyRing, RatFunc, factor_univariate, poly_divmod_1var,
                   poly_exact_div)


class BackendError(ValueError):
    """The invariant oracle was asked about an unsupported backend."""


# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A monic irreducible over GF(q), or the place at infinity (pi None)."""

    pi: Optional[Poly]

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree_in(0)

    def sort_key(self):
        if self.pi is None:
            return (1, 0, ())
        code = tuple(self.pi.terms.get((e,), self.pi.ring.field.zero)
                     for e in range(self.pi.degree_in(0) + 1))
        return (0, self.pi.degree_in(0), code)

    def __repr__(self) -> str:
        from .textform import format_place
        return format_place(self)


INF = Place(None)


def finite_places_of(*fracs: RatFunc) -> List[Place]:
    """Places dividing any listed numerator or denominator."""
    seen = {}
    for f in fracs:
        for part in (f.num, f.den):
            if part.is_constant():
                continue
            _, factors = factor_univariate(part)
            for pi in factors:
                seen[Place(pi)] = True
    return sorted(seen, key=Place.sort_key)


def valuation(x: RatFunc, place: Place) -> int:
    """The valuation of a nonzero rational function at a place."""
    if x.is_zero():
        raise ValueError("the zero function has no finite valuation")
    if place.is_infinite:
        return x.den.degree_in(0) - x.num.degree_in(0)
    return _poly_val(x.num, place.pi) - _poly_val(x.den, place.pi)


def _poly_val(f: Poly, pi: Poly) -> int:
    v = 0
    while True:
        q, r = poly_divmod_1var(f, pi)
        if not r.is_zero():
            return v
        f = q
        v += 1


# ---------------------------------------------------------------------------
# residue fields
# ---------------------------------------------------------------------------

class ResidueField:
    """GF(q)[x]/(pi): elements are polynomial representatives of degree < deg pi."""

    def __init__(self, pi: Poly):
        self.pi = pi
        self.ring = pi.ring
        self.e = pi.degree_in(0)
        self.base = pi.ring.field

    def reduce(self, f: Poly) -> Poly:
        return poly_divmod_1var(f, self.pi)[1]

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    def inv(self, a: Poly) -> Poly:
        r0, r1 = self.pi, self.reduce(a)
        s0, s1 = self.ring.zero(), self.ring.one()
        while not r1.is_zero():
            q, r = poly_divmod_1var(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree_in(0) != 0:
            raise ZeroDivisionError("non-unit modulo the place")
        return self.reduce(s0.scale(self.base.inv(r0.constant_value())))

    def pow(self, a: Poly, n: int) -> Poly:
        out = self.ring.one()
        base = self.reduce(a)
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def pth_root(self, a: Poly) -> Poly:
        return self.pow(a, self.base.p ** (self.base.d * self.e - 1))

    def trace_to_prime(self, a: Poly) -> int:
        """Absolute trace of the residue class down to F_p."""
        p = self.base.p
        acc = self.ring.zero()
        cur = self.reduce(a)
        for _ in range(self.base.d * self.e):
            acc = acc + cur
            cur = self.pow(cur, p)
        acc = self.reduce(acc)
        if acc.is_zero():
            return 0
        if acc.degree_in(0) != 0:
            raise AssertionError("trace landed outside the prime field")
        c = acc.constant_value()
        if any(c[1:]):
            raise AssertionError("trace landed outside the prime field")
        return c[0]


# ---------------------------------------------------------------------------
# exact local expansions
# ---------------------------------------------------------------------------

class _Completion:
    """Truncated expansion machinery at one finite place."""

    def __init__(self, pi: Poly, precision: int):
        self.pi = pi
        self.res = ResidueField(pi)
        self.N = max(precision, 1)
        self.modulus = pi ** self.N
        self.teich = self._teichmueller()

    def _mod(self, f: Poly) -> Poly:
        return poly_divmod_1var(f, self.modulus)[1]

    def _teichmueller(self) -> Poly:
        """The multiplicative lift of the class of t: the fixed point of
        x -> x^(q^e) congruent to t modulo pi."""
        qe = self.res.base.order ** self.res.e
        x = self.res.ring.var(self.res.ring.variables[0])
        x = self._mod(x)
        while True:
            nxt = self._powmod(x, qe)
            if nxt == x:
                return x
            x = nxt

    def _powmod(self, f: Poly, n: int) -> Poly:
        out = self.res.ring.one()
        base = self._mod(f)
        while n:
            if n & 1:
                out = self._mod(out * base)
            base = self._mod(base * base)
            n >>= 1
        return out

    def lift_residue(self, c: Poly) -> Poly:
        """Evaluate a residue representative at the multiplicative lift."""
        acc = self.res.ring.zero()
        for e in range(c.degree_in(0), -1, -1):
            acc = self._mod(acc * self.teich)
            coeff = c.terms.get((e,))
            if coeff is not None:
                acc = acc + self.res.ring.constant(coeff)
        return self._mod(acc)

    def digits(self, unit: Poly, count: int) -> List[Poly]:
        """Leading ``count`` expansion digits of a unit, as residue classes."""
        out = []
        cur = self._mod(unit)
        for _ in range(count):
            c = self.res.reduce(cur)
            out.append(c)
            cur = poly_exact_div(cur - self.lift_residue(c), self.pi)
        return out


def laurent_digits(x: RatFunc, place: Place, upto: int) -> Dict[int, Poly]:
    """Expansion digits {index: residue class} of x at a place for all
    indices < ``upto`` (and none below the valuation).  Exact."""
    if x.is_zero():
        return {}
    if place.is_infinite:
        x = _flip_to_infinity(x)
        place = Place(x.ring.var(x.ring.variables[0]))
    pi = place.pi
    vn, n_unit = _strip(x.num, pi)
    vd, d_unit = _strip(x.den, pi)
    v = vn - vd
    count = upto - v
    if count <= 0:
        return {}
    comp = _Completion(pi, count)
    inv_d = _inv_mod_power(d_unit, pi, count)
    unit = poly_divmod_1var(n_unit * inv_d, comp.modulus)[1]
    digits = comp.digits(unit, count)
    return {v + i: c for i, c in enumerate(digits) if not c.is_zero()}


def _strip(f: Poly, pi: Poly) -> Tuple[int, Poly]:
    v = 0
    while True:
        q, r = poly_divmod_1var(f, pi)
        if not r.is_zero():
            return v, f
        f = q
        v += 1


def _inv_mod_power(f: Poly, pi: Poly, n: int) -> Poly:
    modulus = pi ** n
    r0, r1 = modulus, poly_divmod_1var(f, modulus)[1]
    s0, s1 = f.ring.zero(), f.ring.one()
    while not r1.is_zero():
        q, r = poly_divmod_1var(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree_in(0) != 0:
        raise ArithmeticError("non-unit at the place")
    return poly_divmod_1var(s0.scale(f.ring.field.inv(r0.constant_value())), modulus)[1]


def _flip_to_infinity(x: RatFunc) -> RatFunc:
    """Rewrite x(t) as a function of u = 1/t (the infinite place moves to u = 0)."""
    ring = x.ring
    dn, dd = x.num.degree_in(0), x.den.degree_in(0)
    rn = _reverse(x.num, dn)
    rd = _reverse(x.den, dd)
    shift = dd - dn
    u = ring.var(ring.variables[0])
    if shift >= 0:
        return RatFunc(rn * u ** shift, rd)
    return RatFunc(rn, rd * u ** (-shift))


def _reverse(f: Poly, deg: int) -> Poly:
    return Poly(f.ring, {(deg - m[0],): c for m, c in f.terms.items()})


def residue_of_differential(f: RatFunc, place: Place) -> Poly:
    """res_v(f dt) as a residue class at v (a polynomial of degree < deg v)."""
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    if place.is_infinite:
        # t = 1/u, dt = -u^(-2) du
        g = _flip_to_infinity(f)
        u = ring.var(ring.variables[0])
        integrand = RatFunc(-(g.num), g.den * u * u)
        digits = laurent_digits(integrand, Place(u), 0)
        return digits.get(-1, ring.zero())
    # f dt = (f / pi'(t)) dpi
    dpi = place.pi.derivative(0)
    integrand = f / RatFunc.from_poly(dpi)
    digits = laurent_digits(integrand, place, 0)
    return digits.get(-1, ring.zero())


# ---------------------------------------------------------------------------
# the local invariant
# ---------------------------------------------------------------------------

def reduce_pole_at_place(a: RatFunc, place: Place) -> RatFunc:
    """Subtract terms c^p - c until the pole order of a at the place is prime
    to p (or the pole is gone).  Other places may change; the value of the
    traced residue does not."""
    ring = a.ring
    field = ring.field
    p = field.p
    while not a.is_zero():
        if place.is_infinite:
            q, _ = poly_divmod_1var(a.num, a.den)
            deg = q.degree_in(0)
            if deg < 1 or deg % p:
                break
            lead = field.pth_root(q.terms[(deg,)])
            c = RatFunc.from_poly(Poly(ring, {(deg // p,): lead}))
        else:
            v = valuation(a, place)
            if v >= 0 or (-v) % p:
                break
            m = -v
            res = ResidueField(place.pi)
            digit = laurent_digits(a, place, v + 1).get(v, ring.zero())
            root = res.pth_root(digit)
            c = RatFunc(root, place.pi ** (m // p))
        a = a - (c ** p - c)
    return a


def local_invariant(a: RatFunc, b: RatFunc, place: Place) -> int:
    """Tr(res_v(a db/b)) in Z/p, after normalizing a at v."""
    if b.is_zero():
        raise ValueError("the b slot of a symbol must be nonzero")
    ring = a.ring
    p = ring.field.p
    a = reduce_pole_at_place(a, place)
    if a.is_zero():
        return 0
    varname = ring.variables[0]
    dlog = b.derivative(varname) / b
    integrand = a * dlog
    res = residue_of_differential(integrand, place)
    if res.is_zero():
        return 0
    if place.is_infinite:
        rf = ResidueField(ring.var(varname))  # degree-one dummy modulus
        return rf.trace_to_prime(res) % p
    return ResidueField(place.pi).trace_to_prime(res) % p


def support_places(a: RatFunc, b: RatFunc) -> List[Place]:
    """Places where the invariant of (a, b) can be nonzero: poles of a,
    zeros and poles of b, and infinity."""
    places = finite_places_of(RatFunc(a.den, a.num.ring.one(), reduce=False), b)
    out = [pl for pl in places]
    out.append(INF)
    return out


# ---------------------------------------------------------------------------
# invariant vectors
# ---------------------------------------------------------------------------

class InvariantVector:
    """A finitely supported map from places to Z/p."""

    def __init__(self, p: int, entries: Optional[Dict[Place, int]] = None):
        self.p = p
        self.entries = {pl: v % p for pl, v in (entries or {}).items() if v % p}

    def copy(self) -> "InvariantVector":
        return InvariantVector(self.p, dict(self.entries))

    def add_in(self, place: Place, value: int) -> None:
        v = (self.entries.get(place, 0) + value) % self.p
        if v:
            self.entries[place] = v
        else:
            self.entries.pop(place, None)

    def __add__(self, other: "InvariantVector") -> "InvariantVector":
        if self.p != other.p:
            raise ValueError("invariant vectors over different primes")
        out = self.copy()
        for pl, v in other.entries.items():
            out.add_in(pl, v)
        return out

    def __neg__(self) -> "InvariantVector":
        return InvariantVector(self.p, {pl: -v for pl, v in self.entries.items()})

    def __sub__(self, other: "InvariantVector") -> "InvariantVector":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, InvariantVector) and self.p == other.p
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.p, frozenset(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def total(self) -> int:
        return sum(self.entries.values()) % self.p

    def support(self) -> List[Place]:
        return sorted(self.entries, key=Place.sort_key)

    def __repr__(self) -> str:
        from .textform import format_invariant_vector
        return format_invariant_vector(self)


def index_exponent(v: InvariantVector) -> Tuple[int, int]:
    """(index, exponent) of the class an invariant vector describes.

    The exponent is the least common multiple of the orders of the entries;
    each nonzero entry of Z/p has order p.  Over this global backend the
    index always equals the exponent (recorded as an oracle assumption)."""
    exp = 1
    for val in v.entries.values():
        if val % v.p:
            exp = v.p
            break
    return exp, exp


def symbol_vector(a: RatFunc, b: RatFunc, p: int) -> InvariantVector:
    out = InvariantVector(p)
    for place in support_places(a, b):
        out.add_in(place, local_invariant(a, b, place))
    return out


# ---------------------------------------------------------------------------
# realization of prescribed vectors
# ---------------------------------------------------------------------------

class RealizeError(ValueError):
    """A prescribed vector cannot be realized with the given b slots."""

    def __init__(self, message: str, place: Optional[Place] = None):
        super().__init__(message)
        self.place = place


def trace_preimage(res: ResidueField, target: int) -> Poly:
    """A canonical residue class with prescribed absolute trace, found on the
    F_p-basis x^k * g^j of the residue field."""
    p = res.base.p
    target %= p
    if target == 0:
        return res.ring.zero()
    for k in range(res.e):
        for j in range(res.base.d):
            coeff = res.base.pow(res.base.gen, j)
            cand = res.reduce(Poly(res.ring, {(k,): coeff}))
            tr = res.trace_to_prime(cand)
            if tr:
                scale = (target * pow(tr, p - 2, p)) % p
                return res.reduce(cand.scale(res.base.from_int(scale)))
    raise AssertionError("trace form is surjective; no preimage found")


def realize_slot(b: RatFunc, targets: Dict[Place, int], p: int) -> RatFunc:
    """An element a with local invariant of (a, b) equal to ``targets`` at
    every finite place and the reciprocity-forced value at infinity.

    Feasible when each targeted finite place has valuation of b prime to p;
    at every other finite place of b with valuation prime to p the residue
    class of a is pinned to zero.  Raises RealizeError otherwise."""
    ring = b.ring
    requirements: List[Tuple[Poly, Poly]] = []  # (place poly, residue rep)
    handled = set()
    for place in finite_places_of(b):
        m = valuation(b, place) % p
        tgt = targets.get(place, 0) % p
        if m == 0:
            if tgt:
                raise RealizeError(
                    "b has p-divisible valuation at a targeted place", place)
            continue
        handled.add(place)
        res = ResidueField(place.pi)
        want = (tgt * pow(m, p - 2, p)) % p
        requirements.append((place.pi, trace_preimage(res, want)))
    for place, tgt in targets.items():
        if place.is_infinite:
            raise RealizeError("infinite place targets are set by reciprocity", place)
        if tgt % p and place not in handled:
            raise RealizeError("targeted place does not divide b oddly", place)
    if not requirements:
        return RatFunc.zero(ring)
    return RatFunc.from_poly(_poly_crt(requirements))


def _poly_crt(pairs: List[Tuple[Poly, Poly]]) -> Poly:
    ring = pairs[0][0].ring
    modulus = ring.one()
    for pi, _ in pairs:
        modulus = modulus * pi
    out = ring.zero()
    for pi, rep in pairs:
        other = poly_exact_div(modulus, pi)
        inv = _crt_inv(other, pi)
        out = out + rep * other * inv
    return poly_divmod_1var(out, modulus)[1]


def _crt_inv(a: Poly, m: Poly) -> Poly:
    r0, r1 = m, poly_divmod_1var(a, m)[1]
    s0, s1 = a.ring.zero(), a.ring.one()
    while not r1.is_zero():
        q, r = poly_divmod_1var(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree_in(0) != 0:
        raise ArithmeticError("moduli are not coprime")
    return poly_divmod_1var(s0.scale(a.ring.field.inv(r0.constant_value())), m)[1]


def realize_pairs(vector: InvariantVector, ring: PolyRing,
                  b_slots: Optional[List[RatFunc]] = None
                  ) -> List[Tuple[RatFunc, RatFunc, Optional[int]]]:
    """Slot data (a_i, b_i, slot index) whose summed local invariants equal
    the vector.

    With free slots, each finite place w with value c contributes one pair
    (a, pi_w) with the residue class of a chosen so the invariant at w is c;
    reciprocity closes the infinite place.  With prescribed slots the finite
    support is consumed greedily across the slots (slots left with nothing
    to do are skipped); a leftover is infeasible and reported with its
    obstructing place."""
    p = vector.p
    if vector.total() != 0:
        raise RealizeError("entries must sum to zero")
    remaining = vector.copy()
    out: List[Tuple[RatFunc, RatFunc, Optional[int]]] = []
    if b_slots is None:
        for place in vector.support():
            if place.is_infinite:
                continue
            c = vector.entries[place]
            b = RatFunc.from_poly(place.pi)
            a = realize_slot(b, {place: c}, p)
            out.append((a, b, None))
            remaining = remaining - symbol_vector(a, b, p)
    else:
        for idx, b in enumerate(b_slots):
            targets = {}
            for place in list(remaining.support()):
                if place.is_infinite:
                    continue
                if valuation(b, place) % p:
                    targets[place] = remaining.entries[place]
            if not targets:
                continue
            a = realize_slot(b, targets, p)
            out.append((a, b, idx))
            remaining = remaining - symbol_vector(a, b, p)
    finite_left = [pl for pl in remaining.support() if not pl.is_infinite]
    if finite_left:
        raise RealizeError("vector not realizable with the given slots", finite_left[0])
    if not remaining.is_zero():
        raise AssertionError("reciprocity failed to close the infinite place")
    return out
