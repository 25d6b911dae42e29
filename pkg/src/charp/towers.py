"""Field extension towers over rational function fields.

A tower starts from GF(p^d)(t_1, ..., t_m) and stacks extension steps:

* ``artin_schreier``: adjoin i with i^p - i = a, for a not of that form below;
* ``insep_root``: adjoin s with s^p = b, for b not a p-th power below;
* ``simple``: adjoin a root of a given monic irreducible polynomial.

An element of level k is stored as a dense coefficient vector over level
k-1 (a polynomial in the top generator of degree below the step degree),
bottoming out in reduced rational functions.  That normal form is unique,
so equality is structural.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import List, Optional, Sequence, Tuple

from .ffield import FiniteField
from .poly import Poly, PolyRing, RatFunc, factor_univariate, poly_divmod_1var

MAX_DEPTH = 8
MAX_TOTAL_DEGREE = 256


class StepError(ValueError):
    """A proposed extension step violates its invariants."""


class ExtStep:
    """One extension step; ``data`` is the defining element (or the tuple of
    minimal polynomial coefficient representations for simple steps), given
    at the level below the step."""

    __slots__ = ("kind", "gen", "data", "degree")

    def __init__(self, kind: str, gen: str, data, degree: int):
        self.kind = kind
        self.gen = gen
        self.data = data
        self.degree = degree

    def __repr__(self) -> str:
        return "ExtStep(%s, %s, deg=%d)" % (self.kind, self.gen, self.degree)


class FieldTower:
    """A base rational function field plus a chain of extension steps."""

    def __init__(self, base_field: FiniteField, base_vars: Sequence[str]):
        self.base_field = base_field
        self.ring = PolyRing(base_field, base_vars)
        self.steps: Tuple[ExtStep, ...] = ()
        self._ops_cache: dict = {}

    @property
    def p(self) -> int:
        return self.base_field.p

    @property
    def depth(self) -> int:
        return len(self.steps)

    def degree_of_level(self, level: int) -> int:
        d = 1
        for step in self.steps[:level]:
            d *= step.degree
        return d

    def step_at(self, level: int) -> ExtStep:
        if level < 1 or level > self.depth:
            raise ValueError("no step at level %d" % level)
        return self.steps[level - 1]

    def generator_names(self, level: Optional[int] = None) -> List[str]:
        upto = self.depth if level is None else level
        return [s.gen for s in self.steps[:upto]]

    def __repr__(self) -> str:
        from .textform import format_tower
        return format_tower(self)

    def _extended(self, step: ExtStep) -> "FieldTower":
        t = FieldTower(self.base_field, self.ring.variables)
        t.steps = self.steps + (step,)
        return t

    def signature(self, level: Optional[int] = None):
        """A hashable fingerprint of the tower below a level, for caches."""
        upto = self.depth if level is None else level
        parts = []
        for s in self.steps[:upto]:
            data = s.data if s.kind == "simple" else s.data.rep
            parts.append((s.kind, s.gen, s.degree, data))
        return (self.base_field.p, self.base_field.d, self.ring.variables,
                tuple(parts))


class Elem:
    """An element of a tower level, in reduced normal form."""

    __slots__ = ("tower", "level", "rep", "_hash")

    def __init__(self, tower: FieldTower, level: int, rep):
        self.tower = tower
        self.level = level
        self.rep = rep
        self._hash = None

    def __eq__(self, other) -> bool:
        return (isinstance(other, Elem) and self.level == other.level
                and self.rep == other.rep)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.level, self.rep))
        return self._hash

    def __repr__(self) -> str:
        from .textform import format_elem
        return format_elem(self)

    def is_zero(self) -> bool:
        return _ops(self.tower, self.level).is_zero(self.rep)


def _ops(tower: FieldTower, level: int) -> "LevelOps":
    ops = tower._ops_cache.get(level)
    if ops is None:
        ops = LevelOps(tower, level)
        tower._ops_cache[level] = ops
    return ops


class LevelOps:
    """Field operations on the raw representations of one tower level."""

    def __init__(self, tower: FieldTower, level: int):
        self.tower = tower
        self.level = level
        if level == 0:
            self._lower = None
            self.step = None
            self._minpoly = None
        else:
            self._lower = _ops(tower, level - 1)
            self.step = tower.step_at(level)
            self._minpoly = None

    # representation helpers ------------------------------------------------

    def zero(self):
        if self.level == 0:
            return RatFunc.zero(self.tower.ring)
        return (self._lower.zero(),) * self.step.degree

    def one(self):
        if self.level == 0:
            return RatFunc.one(self.tower.ring)
        return (self._lower.one(),) + (self._lower.zero(),) * (self.step.degree - 1)

    def lift(self, lower_rep):
        """Embed a level-(k-1) representation into level k."""
        return (lower_rep,) + (self._lower.zero(),) * (self.step.degree - 1)

    def gen_rep(self):
        e = self.step.degree
        return ((self._lower.zero(), self._lower.one())
                + (self._lower.zero(),) * (e - 2))

    def is_zero(self, a) -> bool:
        if self.level == 0:
            return a.is_zero()
        return all(self._lower.is_zero(c) for c in a)

    def eq(self, a, b) -> bool:
        return a == b

    def minpoly_lower(self) -> list:
        """Defining polynomial coefficients (little-endian, monic) over the
        level below; cached."""
        if self._minpoly is not None:
            return self._minpoly
        low = self._lower
        step = self.step
        p = self.tower.p
        if step.kind == "artin_schreier":
            coeffs = [low.neg(step.data.rep)] + [low.zero()] * (p - 1) + [low.one()]
            coeffs[1] = low.sub(coeffs[1], low.one())
        elif step.kind == "insep_root":
            coeffs = [low.neg(step.data.rep)] + [low.zero()] * (p - 1) + [low.one()]
        else:
            coeffs = list(step.data)
        self._minpoly = coeffs
        return coeffs

    # arithmetic -------------------------------------------------------------

    def add(self, a, b):
        if self.level == 0:
            return a + b
        return tuple(self._lower.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.level == 0:
            return a - b
        return tuple(self._lower.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.level == 0:
            return -a
        return tuple(self._lower.neg(x) for x in a)

    def mul(self, a, b):
        if self.level == 0:
            return a * b
        low = self._lower
        e = self.step.degree
        conv = [low.zero()] * (2 * e - 1)
        for i, x in enumerate(a):
            if low.is_zero(x):
                continue
            for j, y in enumerate(b):
                if low.is_zero(y):
                    continue
                conv[i + j] = low.add(conv[i + j], low.mul(x, y))
        return self._reduce(conv)

    def _reduce(self, coeffs: list):
        low = self._lower
        e = self.step.degree
        minpoly = self.minpoly_lower()
        for d in range(len(coeffs) - 1, e - 1, -1):
            c = coeffs[d]
            if low.is_zero(c):
                continue
            coeffs[d] = low.zero()
            # g^d = g^(d-e) * g^e with g^e = -(lower part of the step polynomial)
            for j in range(e):
                term = low.mul(c, low.neg(minpoly[j]))
                coeffs[d - e + j] = low.add(coeffs[d - e + j], term)
        return tuple(coeffs[:e])

    def inv(self, a):
        if self.level == 0:
            if a.is_zero():
                raise ZeroDivisionError("inverse of zero in the base field")
            return a.inv()
        low = self._lower
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero at level %d" % self.level)
        g, u, _ = upoly_gcdex(low, list(a), self.minpoly_lower())
        if len(g) != 1:
            raise ArithmeticError(
                "step relation is reducible; tower arithmetic is inconsistent")
        ginv = low.inv(g[0])
        out = [low.mul(ginv, c) for c in u]
        out += [low.zero()] * (self.step.degree - len(out))
        return tuple(out[: self.step.degree])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def from_int(self, n: int):
        if self.level == 0:
            return RatFunc.from_poly(self.tower.ring.from_int(n))
        return self.lift(self._lower.from_int(n))


# ---------------------------------------------------------------------------
# generic dense univariate arithmetic over a LevelOps field
# ---------------------------------------------------------------------------

def upoly_trim(ops, a: list) -> list:
    while a and ops.is_zero(a[-1]):
        a.pop()
    return a


def upoly_mul(ops, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ops.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ops.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ops.add(out[i + j], ops.mul(x, y))
    return upoly_trim(ops, out)


def upoly_sub(ops, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ops.zero()
        y = b[i] if i < len(b) else ops.zero()
        out.append(ops.sub(x, y))
    return upoly_trim(ops, out)


def upoly_divmod(ops, a: list, b: list) -> Tuple[list, list]:
    a = upoly_trim(ops, list(a))
    b = upoly_trim(ops, list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = ops.inv(b[-1])
    q = [ops.zero()] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b):
        c = ops.mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        q[shift] = ops.add(q[shift], c)
        for j, bj in enumerate(b):
            r[shift + j] = ops.sub(r[shift + j], ops.mul(c, bj))
        r = upoly_trim(ops, r)
    return upoly_trim(ops, q), r


def upoly_gcdex(ops, a: list, b: list) -> Tuple[list, list, list]:
    """Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic or empty."""
    r0, r1 = upoly_trim(ops, list(a)), upoly_trim(ops, list(b))
    u0, u1 = [ops.one()], []
    v0, v1 = [], [ops.one()]
    while r1:
        q, r = upoly_divmod(ops, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, upoly_sub(ops, u0, upoly_mul(ops, q, u1))
        v0, v1 = v1, upoly_sub(ops, v0, upoly_mul(ops, q, v1))
    if r0:
        scale = [ops.inv(r0[-1])]
        r0 = upoly_mul(ops, r0, scale)
        u0 = upoly_mul(ops, u0, scale)
        v0 = upoly_mul(ops, v0, scale)
    return r0, u0, v0


def upoly_resultant(ops, f: list, g: list):
    """Resultant of two polynomials over a field, by Euclidean reduction."""
    f = upoly_trim(ops, list(f))
    g = upoly_trim(ops, list(g))
    if not f or not g:
        return ops.zero()
    res = ops.one()
    track_sign = (ops.tower.p != 2)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return ops.mul(res, ops.pow(g[0], df))
        _, r = upoly_divmod(ops, f, g)
        if not r:
            return ops.zero()
        dr = len(r) - 1
        res = ops.mul(res, ops.pow(g[-1], df - dr))
        if track_sign and (df % 2) and (dg % 2):
            res = ops.neg(res)
        f, g = g, r


# ---------------------------------------------------------------------------
# element-level API
# ---------------------------------------------------------------------------

def base_elem(tower: FieldTower, value: RatFunc) -> Elem:
    return Elem(tower, 0, value)


def int_elem(tower: FieldTower, level: int, n: int) -> Elem:
    return Elem(tower, level, _ops(tower, level).from_int(n))


def const_elem(tower: FieldTower, c, level: int = 0) -> Elem:
    x = Elem(tower, 0, RatFunc.from_poly(tower.ring.constant(c)))
    return lift(x, level)


def var_elem(tower: FieldTower, name: str, level: int = 0) -> Elem:
    x = Elem(tower, 0, RatFunc.from_poly(tower.ring.var(name)))
    return lift(x, level)


def gen_elem(tower: FieldTower, level: int) -> Elem:
    """The generator adjoined at the given level, as a level element."""
    return Elem(tower, level, _ops(tower, level).gen_rep())


def step_defining_elem(tower: FieldTower, level: int) -> Elem:
    """The defining element of the step at ``level``, rebound to this tower
    (steps are shared between a tower and its extensions)."""
    step = tower.step_at(level)
    if step.kind == "simple":
        raise ValueError("simple steps have no single defining element")
    return Elem(tower, level - 1, step.data.rep)


def rebind(x: Elem, tower: FieldTower) -> Elem:
    """Reattach an element to another tower with the same step prefix."""
    if x.level > tower.depth:
        raise ValueError("target tower is too shallow")
    return Elem(tower, x.level, x.rep)


def truncate(tower: FieldTower, level: int) -> FieldTower:
    """A tower consisting of the first ``level`` steps (steps are shared)."""
    if level > tower.depth:
        raise ValueError("cannot truncate above the top")
    if level == tower.depth:
        return tower
    t = FieldTower(tower.base_field, tower.ring.variables)
    t.steps = tower.steps[:level]
    return t


def fresh_gen_name(tower: FieldTower, base: str = "w") -> str:
    """A deterministic generator name unused by the tower."""
    taken = set(tower.ring.variables) | set(tower.generator_names()) | {"g"}
    if base not in taken:
        return base
    k = 1
    while "%s%d" % (base, k) in taken:
        k += 1
    return "%s%d" % (base, k)


def lift(x: Elem, level: int) -> Elem:
    """Reinterpret x at a higher level of the same tower."""
    if level < x.level:
        raise ValueError("lift goes upward only; use descend")
    rep = x.rep
    for k in range(x.level + 1, level + 1):
        rep = _ops(x.tower, k).lift(rep)
    return Elem(x.tower, level, rep)


def descend(x: Elem, level: int) -> Elem:
    """Reinterpret x at a lower level; fails if x does not live there."""
    if level > x.level:
        raise ValueError("descend goes downward only; use lift")
    rep = x.rep
    for k in range(x.level, level, -1):
        ops = _ops(x.tower, k)
        if any(not ops._lower.is_zero(c) for c in rep[1:]):
            raise ValueError("element does not belong to level %d" % level)
        rep = rep[0]
    return Elem(x.tower, level, rep)


def level_of_definition(x: Elem) -> int:
    """The smallest level whose normal form carries x."""
    lvl, rep = x.level, x.rep
    while lvl > 0:
        ops = _ops(x.tower, lvl)
        if any(not ops._lower.is_zero(c) for c in rep[1:]):
            return lvl
        rep = rep[0]
        lvl -= 1
    return 0


def _binop(a: Elem, b: Elem, name: str) -> Elem:
    if a.tower is not b.tower:
        raise ValueError("elements from different towers; rebind first")
    level = max(a.level, b.level)
    a, b = lift(a, level), lift(b, level)
    ops = _ops(a.tower, level)
    return Elem(a.tower, level, getattr(ops, name)(a.rep, b.rep))


def add(a: Elem, b: Elem) -> Elem:
    return _binop(a, b, "add")


def sub(a: Elem, b: Elem) -> Elem:
    return _binop(a, b, "sub")


def mul(a: Elem, b: Elem) -> Elem:
    return _binop(a, b, "mul")


def div(a: Elem, b: Elem) -> Elem:
    return _binop(a, b, "div")


def neg(a: Elem) -> Elem:
    return Elem(a.tower, a.level, _ops(a.tower, a.level).neg(a.rep))


def power(a: Elem, n: int) -> Elem:
    return Elem(a.tower, a.level, _ops(a.tower, a.level).pow(a.rep, n))


def wp(a: Elem) -> Elem:
    """The additive map w(x) = x^p - x."""
    return sub(power(a, a.tower.p), a)


# ---------------------------------------------------------------------------
# step construction and validity
# ---------------------------------------------------------------------------

def make_step(tower: FieldTower, kind: str, gen: str, data) -> FieldTower:
    """Extend a tower by one validated step.

    ``data`` is the defining element (artin_schreier / insep_root) or a
    little-endian monic list of lower-level Elems (simple).  Degenerate steps
    are rejected with the reason in the exception message.
    """
    if tower.depth >= MAX_DEPTH:
        raise StepError("tower nesting depth limit (%d) reached" % MAX_DEPTH)
    if gen in tower.ring.variables or gen in tower.generator_names():
        raise StepError("generator name %r already in use" % gen)
    p = tower.p
    if kind == "artin_schreier":
        a = rebind(data, tower)
        if a.level > tower.depth:
            raise StepError("defining element lives above the tower top")
        a = lift(a, tower.depth)
        try:
            hit = artin_schreier_preimage(a)
        except NotImplementedError:
            # no exact test for this tower shape: bounded candidate search
            hit = _as_degenerate_bounded(tower, a)
        if hit is not None:
            raise StepError(
                "degenerate step: defining element equals w^%d - w for w = %r" % (p, hit))
        degree, payload = p, a
    elif kind == "insep_root":
        b = rebind(data, tower)
        if b.level > tower.depth:
            raise StepError("radicand lives above the tower top")
        b = lift(b, tower.depth)
        if b.is_zero():
            raise StepError("degenerate step: radicand is zero")
        root = pth_root_in_level(b)
        if root is not None:
            raise StepError(
                "degenerate step: radicand is the %d-th power of %r" % (p, root))
        degree, payload = p, b
    elif kind == "simple":
        coeffs = [lift(rebind(c, tower), tower.depth) for c in data]
        degree = len(coeffs) - 1
        if degree < 2:
            raise StepError("simple step needs degree >= 2")
        ops = _ops(tower, tower.depth)
        if not ops.eq(coeffs[-1].rep, ops.one()):
            raise StepError("simple step polynomial must be monic")
        if _has_root_at_level(tower, coeffs) or degree > 3:
            if degree > 3:
                raise StepError("simple steps above degree 3 are not supported")
            raise StepError("degenerate step: polynomial has a root at this level")
        payload = tuple(c.rep for c in coeffs)
    else:
        raise StepError("unknown step kind %r" % kind)
    if tower.degree_of_level(tower.depth) * degree > MAX_TOTAL_DEGREE:
        raise StepError("tower degree limit (%d) exceeded" % MAX_TOTAL_DEGREE)
    step = ExtStep(kind, gen, payload, degree)
    new_tower = tower._extended(step)
    if kind in ("artin_schreier", "insep_root"):
        step.data = Elem(new_tower, tower.depth, payload.rep)
    return new_tower


def _as_degenerate_bounded(tower: FieldTower, a: Elem) -> Optional[Elem]:
    """Bounded-search degeneracy probe for levels without an exact test:
    catches w of small height, never proves nondegeneracy."""
    level = a.level
    for rep in _pool_candidates(tower, level):
        cand = Elem(tower, level, rep)
        if sub(power(cand, tower.p), cand) == a:
            return cand
    return None


def _has_root_at_level(tower: FieldTower, coeffs: List[Elem]) -> bool:
    """Root test for degree <= 3 polynomials: exact over the univariate base
    (rational root candidates from factored outer coefficients), a small
    deterministic candidate pool elsewhere."""
    level = tower.depth
    ops = _ops(tower, level)
    reps = [c.rep for c in coeffs]

    def value_at(rep):
        acc = ops.zero()
        for c in reversed(reps):
            acc = ops.add(ops.mul(acc, rep), c)
        return ops.is_zero(acc)

    if level == 0 and tower.ring.nvars == 1:
        for cand in _rational_root_candidates(tower, coeffs):
            if value_at(cand.rep):
                return True
        return False
    for cand in _pool_candidates(tower, level):
        if value_at(cand):
            return True
    return False


def _rational_root_candidates(tower: FieldTower, coeffs: List[Elem]):
    """All n/d with n | numerator data of the constant coefficient and
    d | denominator-cleared leading data, up to constants (exact for the
    univariate base by the usual divisor argument)."""
    ring = tower.ring
    den_lcm = ring.one()
    for c in coeffs:
        den_lcm = den_lcm * c.rep.den
    cleared = [c.rep.num * poly_exact_div_total(den_lcm, c.rep.den) for c in coeffs]
    c0, lead = cleared[0], cleared[-1]
    if c0.is_zero():
        yield Elem(tower, 0, RatFunc.zero(ring))
        return
    nums = _monic_divisors(c0)
    dens = _monic_divisors(lead)
    consts = [c for c in tower.base_field.elements() if any(c)]
    for n in nums:
        for d in dens:
            for c in consts:
                yield Elem(tower, 0, RatFunc(n.scale(c), d))
    yield Elem(tower, 0, RatFunc.zero(ring))


def poly_exact_div_total(a: Poly, b: Poly) -> Poly:
    from .poly import poly_exact_div
    return poly_exact_div(a, b)


def _monic_divisors(f: Poly) -> List[Poly]:
    _, factors = factor_univariate(f)
    out = [f.ring.one()]
    for pi, mult in sorted(factors.items(), key=lambda kv: str(kv[0])):
        out = [d * pi ** e for d in out for e in range(mult + 1)]
    return out


def _pool_candidates(tower: FieldTower, level: int):
    for c in tower.base_field.elements():
        yield lift(const_elem(tower, c), level).rep
    for name in tower.ring.variables:
        v = var_elem(tower, name)
        yield lift(v, level).rep
        yield lift(Elem(tower, 0, v.rep.inv()), level).rep
    for k in range(1, level + 1):
        yield lift(gen_elem(tower, k), level).rep


# ---------------------------------------------------------------------------
# p-th powers
# ---------------------------------------------------------------------------

_PTH_ROOT_CACHE: dict = {}


def pth_root_in_level(x: Elem) -> Optional[Elem]:
    """A y at the same level with y^p = x, or None.  Memoized.

    Separable steps above both the element and the topmost inseparable step
    are stripped first (they do not create new p-th powers of lower
    elements).  What remains is exact at the base (exponent inspection),
    over inseparable-root chains with base-level radicands (linear algebra
    over the base), and over levels with a rational presentation; other
    tower shapes raise.
    """
    key = (x.tower.signature(x.level), x.level, x.rep)
    hit = _PTH_ROOT_CACHE.get(key)
    if hit is not None:
        found, rep = hit
        return Elem(x.tower, x.level, rep) if found else None
    out = _pth_root_uncached(x)
    _PTH_ROOT_CACHE[key] = (out is not None, out.rep if out is not None else None)
    return out


def _pth_root_uncached(x: Elem) -> Optional[Elem]:
    tower, level = x.tower, x.level
    if level == 0:
        root = x.rep.pth_root()
        return None if root is None else Elem(tower, 0, root)
    last_insep = 0
    for k in range(1, level + 1):
        if tower.steps[k - 1].kind == "insep_root":
            last_insep = k
    target = max(last_insep, level_of_definition(x))
    if target < level:
        prefix = truncate(tower, target)
        root0 = pth_root_in_level(rebind(descend(x, target), prefix))
        if root0 is None:
            return None
        return lift(rebind(root0, tower), level)
    steps = tower.steps[:level]
    if all(s.kind == "insep_root" for s in steps):
        radicands = []
        for k in range(1, level + 1):
            r = step_defining_elem(tower, k)
            if level_of_definition(r) != 0:
                raise NotImplementedError("inseparable radicand above the base field")
            radicands.append(descend(r, 0).rep)
        try:
            x0 = descend(x, 0)
        except ValueError:
            return None  # proper top-generator coordinates: the p-th powers lie below
        coords = _pth_span_coordinates(tower.ring, x0.rep, radicands)
        if coords is None:
            return None
        out = int_elem(tower, level, 0)
        for expvec, lam in coords:
            term = lift(Elem(tower, 0, lam), level)
            for gi, e in enumerate(expvec):
                if e:
                    term = mul(term, power(lift(gen_elem(tower, gi + 1), level), e))
            out = add(out, term)
        return out
    from .rationalize import rationalize_level
    rz = rationalize_level(tower, level)
    if rz is None:
        raise NotImplementedError("p-th power membership for this tower shape")
    image = rz.forward(x)
    root = image.pth_root()
    if root is None:
        return None
    return rz.backward(root)


def _pth_span_coordinates(ring: PolyRing, x: RatFunc, radicands: List[RatFunc]):
    """Coordinates of x in the F^p-span of products b_1^{e_1}...b_k^{e_k}
    (exponents < p), or None.  After rewriting everything in p-basis
    coordinates the system is linear over F itself."""
    p = ring.field.p
    exps = _exponent_vectors(len(radicands), p)
    products = []
    for ev in exps:
        prod = RatFunc.one(ring)
        for b, e in zip(radicands, ev):
            if e:
                prod = prod * (RatFunc.from_poly(b.num) ** e) / (RatFunc.from_poly(b.den) ** e)
        products.append(prod)
    monomials: List[Tuple[int, ...]] = []
    columns = []
    for prod in products:
        col = _p_basis_coordinates(prod)
        columns.append(col)
        for mon in col:
            if mon not in monomials:
                monomials.append(mon)
    target = _p_basis_coordinates(x)
    for mon in target:
        if mon not in monomials:
            monomials.append(mon)
    matrix = [[col.get(mon, RatFunc.zero(ring)) for col in columns] for mon in monomials]
    rhs = [target.get(mon, RatFunc.zero(ring)) for mon in monomials]
    sol = _solve_ratfunc_system(ring, matrix, rhs)
    if sol is None:
        return None
    return [(exps[j], sol[j]) for j in range(len(products)) if not sol[j].is_zero()]


def _exponent_vectors(k: int, p: int):
    out = [()]
    for _ in range(k):
        out = [ev + (e,) for ev in out for e in range(p)]
    return out


def _p_basis_coordinates(x: RatFunc) -> dict:
    """Write x = sum_e c_e^p * t^e over exponent vectors e with entries < p;
    returns {e: c_e}.  Uses x = (num * den^(p-1)) / den^p."""
    ring = x.ring
    p = ring.field.p
    adjusted = x.num * (x.den ** (p - 1))
    field = ring.field
    pieces: dict = {}
    for mon, c in adjusted.terms.items():
        residue = tuple(e % p for e in mon)
        quotient = tuple(e // p for e in mon)
        piece = Poly(ring, {quotient: field.pth_root(c)})
        cur = pieces.get(residue)
        pieces[residue] = piece if cur is None else cur + piece
    return {res: RatFunc(poly, x.den) for res, poly in pieces.items() if not poly.is_zero()}


def _solve_ratfunc_system(ring: PolyRing, matrix, rhs):
    """Gaussian elimination over the rational function field; one solution
    vector, or None when inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inv()
        m[r] = [entry * inv for entry in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not m[i][cols].is_zero():
            return None
    sol = [RatFunc.zero(ring) for _ in range(cols)]
    for i, c in enumerate(pivot_cols):
        sol[c] = m[i][cols]
    return sol


# ---------------------------------------------------------------------------
# Artin-Schreier preimages
# ---------------------------------------------------------------------------

_AS_PREIMAGE_CACHE: dict = {}


def artin_schreier_preimage(a: Elem) -> Optional[Elem]:
    """Some c at the level of a with c^p - c = a, or None.  Memoized.

    Base level: pole-order reduction at every place (univariate) or an exact
    semilinear solve (multivariate).  Inseparable-root chains reduce to the
    base by matching generator coordinates; other tower shapes go through
    the rational presentation when one exists.
    """
    key = (a.tower.signature(a.level), a.level, a.rep)
    hit = _AS_PREIMAGE_CACHE.get(key)
    if hit is not None:
        found, rep = hit
        return Elem(a.tower, a.level, rep) if found else None
    out = _as_preimage_uncached(a)
    _AS_PREIMAGE_CACHE[key] = (out is not None, out.rep if out is not None else None)
    return out


def _as_preimage_uncached(a: Elem) -> Optional[Elem]:
    tower, level = a.tower, a.level
    if level == 0:
        return _as_preimage_base(a)
    steps = tower.steps[:level]
    if all(s.kind == "insep_root" for s in steps):
        return _as_preimage_insep(a)
    from .rationalize import rationalize_level
    rz = rationalize_level(tower, level)
    if rz is None:
        raise NotImplementedError(
            "Artin-Schreier membership unsupported for this tower shape")
    pre = _as_preimage_base(Elem(rz.tower, 0, rz.forward(a)))
    if pre is None:
        return None
    return rz.backward(pre.rep)


def _as_preimage_insep(a: Elem) -> Optional[Elem]:
    # in c = sum c_e g^e the coordinates at e != 0 are forced (c^p lands in
    # the base), leaving a base-level equation for the e = 0 coordinate
    tower, level = a.tower, a.level
    p = tower.p
    ring = tower.ring
    radicands = []
    for k in range(1, level + 1):
        r = step_defining_elem(tower, k)
        if level_of_definition(r) != 0:
            raise NotImplementedError("inseparable radicand above the base field")
        radicands.append(descend(r, 0).rep)
    coords = _insep_coordinates(a)
    zero_key = tuple([0] * level)
    forced = {ev: -c for ev, c in coords.items() if any(ev)}
    shift = RatFunc.zero(ring)
    for ev, lam in forced.items():
        prod = lam ** p
        for b, e in zip(radicands, ev):
            if e:
                prod = prod * (b ** e)
        shift = shift + prod
    base_target = coords.get(zero_key, RatFunc.zero(ring)) - shift
    c0 = _as_preimage_base(Elem(tower, 0, base_target))
    if c0 is None:
        return None
    out = lift(c0, level)
    for ev, lam in forced.items():
        term = lift(Elem(tower, 0, lam), level)
        for gi, e in enumerate(ev):
            if e:
                term = mul(term, power(lift(gen_elem(tower, gi + 1), level), e))
        out = add(out, term)
    return out


def _insep_coordinates(a: Elem) -> dict:
    """{exponent vector over generators 1..level: base coefficient}."""
    out: dict = {}

    def walk(rep, lvl, suffix):
        if lvl == 0:
            if not rep.is_zero():
                out[suffix] = rep
            return
        for e, c in enumerate(rep):
            walk(c, lvl - 1, (e,) + suffix)

    walk(a.rep, a.level, ())
    return out


def _as_preimage_base(a: Elem) -> Optional[Elem]:
    tower = a.tower
    if tower.ring.nvars == 1:
        reduced, witness = reduce_artin_schreier_slot(a)
        return witness if reduced.is_zero() else None
    return _as_preimage_multivariate(tower, a.rep)


def reduce_artin_schreier_slot(a: Elem) -> Tuple[Elem, Elem]:
    """Pole-order reduction of a univariate base element: returns (a', c)
    with a' = a - (c^p - c), every pole order of a' prime to p, and the
    constant part absorbed whenever its trace allows.  a' is zero exactly
    when a = c^p - c has a solution."""
    tower = a.tower
    if a.level != 0 or tower.ring.nvars != 1:
        raise ValueError("pole-order reduction lives on the univariate base")
    ring = tower.ring
    field = ring.field
    p = field.p
    cur = a.rep
    witness = RatFunc.zero(ring)
    changed = True
    while changed:
        changed = False
        if not cur.is_zero() and not cur.den.is_constant():
            _, factors = factor_univariate(cur.den)
            for pi, mult in sorted(factors.items(), key=lambda kv: (kv[0].degree_in(0), str(kv[0]))):
                if mult % p != 0:
                    continue
                k = mult // p
                lead = _leading_digit(cur, pi, mult)
                root = _residue_pth_root(pi, lead)
                c = RatFunc(root, pi ** k)
                cur = cur - (c ** p - c)
                witness = witness + c
                changed = True
                break
            if changed:
                continue
        poly_part, _ = _polynomial_part(cur)
        dpp = poly_part.degree_in(0)
        if dpp >= 1 and dpp % p == 0:
            lead = field.pth_root(poly_part.terms[(dpp,)])
            c = RatFunc.from_poly(Poly(ring, {(dpp // p,): lead}))
            cur = cur - (c ** p - c)
            witness = witness + c
            changed = True
    poly_part, _ = _polynomial_part(cur)
    const = poly_part.terms.get((0,))
    if const is not None:
        sol = field.solve_artin_schreier(const)
        if sol is not None:
            c = RatFunc.from_poly(ring.constant(sol))
            cur = cur - (c ** p - c)
            witness = witness + c
    return Elem(tower, 0, cur), Elem(tower, 0, witness)


def _polynomial_part(x: RatFunc) -> Tuple[Poly, RatFunc]:
    q, r = poly_divmod_1var(x.num, x.den)
    return q, RatFunc(r, x.den)


def _leading_digit(x: RatFunc, pi: Poly, mult: int) -> Poly:
    """(x * pi^mult) mod pi: the leading expansion digit at the place pi."""
    from .poly import poly_exact_div
    den = x.den
    for _ in range(mult):
        den = poly_exact_div(den, pi)
    num_red = poly_divmod_1var(x.num, pi)[1]
    inv = _inverse_mod(den, pi)
    return poly_divmod_1var(num_red * inv, pi)[1]


def _inverse_mod(a: Poly, m: Poly) -> Poly:
    r0, r1 = m, poly_divmod_1var(a, m)[1]
    s0, s1 = a.ring.zero(), a.ring.one()
    while not r1.is_zero():
        q, r = poly_divmod_1var(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree_in(0) != 0:
        raise ArithmeticError("element not invertible modulo the place")
    return poly_divmod_1var(s0.scale(a.ring.field.inv(r0.constant_value())), m)[1]


def _residue_pth_root(pi: Poly, rep: Poly) -> Poly:
    """p-th root in the residue field GF(q)[x]/(pi), as a representative."""
    field = pi.ring.field
    e = pi.degree_in(0)
    n = field.p ** (field.d * e - 1)
    out = pi.ring.one()
    base = poly_divmod_1var(rep, pi)[1]
    while n:
        if n & 1:
            out = poly_divmod_1var(out * base, pi)[1]
        base = poly_divmod_1var(base * base, pi)[1]
        n >>= 1
    return out


def _as_preimage_multivariate(tower: FieldTower, x: RatFunc) -> Optional[Elem]:
    """Exact semilinear solve of c^p - c = x over a multivariate base: the
    reduced denominator pins the denominator of c, the numerator is found by
    F_p-linear algebra on a bounded support."""
    ring = tower.ring
    p = ring.field.p
    if x.is_zero():
        return Elem(tower, 0, RatFunc.zero(ring))
    w = x.den.pth_power_root()
    if w is None:
        return None
    bounds = [max(x.num.degree_in(i), x.den.degree_in(i), 0) // p
              for i in range(ring.nvars)]
    field = ring.field
    basis = []
    for mon in _box_monomials(bounds):
        for b in range(field.d):
            coeff = tuple(1 if i == b else 0 for i in range(field.d))
            basis.append(Poly(ring, {mon: coeff}))
    w_pm1 = w ** (p - 1)
    images = [(u ** p) - u * w_pm1 for u in basis]
    sol = _solve_fp_poly_system(ring, images, x.num)
    if sol is None:
        return None
    num = ring.zero()
    for coeff, u in zip(sol, basis):
        if coeff:
            num = num + u.scale(field.from_int(coeff))
    return Elem(tower, 0, RatFunc(num, w))


def _box_monomials(bounds: List[int]):
    out = [()]
    for b in bounds:
        out = [mon + (e,) for mon in out for e in range(b + 1)]
    return out


def _solve_fp_poly_system(ring: PolyRing, images: List[Poly], target: Poly):
    """Solve sum_j c_j * images[j] = target with c_j in F_p."""
    p = ring.field.p
    d = ring.field.d
    index: dict = {}

    def coords(poly: Poly):
        vec = {}
        for mon, c in poly.terms.items():
            for b in range(d):
                if c[b]:
                    key = (mon, b)
                    if key not in index:
                        index[key] = len(index)
                    vec[index[key]] = c[b]
        return vec

    cols = [coords(img) for img in images]
    tgt = coords(target)
    nrows, ncols = len(index), len(images)
    matrix = [[0] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            matrix[i][j] = v
    for i, v in tgt.items():
        matrix[i][ncols] = v
    r, pivots = 0, []
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if matrix[i][c]), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = pow(matrix[r][c], p - 2, p)
        matrix[r] = [(v * inv) % p for v in matrix[r]]
        for i in range(nrows):
            if i != r and matrix[i][c]:
                f = matrix[i][c]
                matrix[i] = [(x - f * y) % p for x, y in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if matrix[i][ncols]:
            return None
    sol = [0] * ncols
    for i, c in enumerate(pivots):
        sol[c] = matrix[i][ncols]
    return sol


# ---------------------------------------------------------------------------
# minimal polynomials, norms and norm equations
# ---------------------------------------------------------------------------

def _basis_between(tower: FieldTower, low: int, high: int):
    """Exponent vectors of the generator-monomial basis of level ``high``
    over level ``low``, canonical counting order."""
    out = [()]
    for k in range(low, high):
        out = [v + (e,) for v in out for e in range(tower.steps[k].degree)]
    return out


def _coordinates(x: Elem, low: int) -> dict:
    """Coordinates of x over level ``low``, keyed by generator exponents."""
    out: dict = {}

    def walk(rep, lvl, suffix):
        if lvl == low:
            out[suffix] = rep
            return
        for e, c in enumerate(rep):
            walk(c, lvl - 1, (e,) + suffix)

    walk(x.rep, x.level, ())
    return out


def min_poly(x: Elem, down_to: int) -> List[Elem]:
    """Monic minimal polynomial of x over a lower level, as a little-endian
    coefficient list of level-``down_to`` elements."""
    tower = x.tower
    if down_to > x.level:
        raise ValueError("target level lies above the element")
    ops_low = _ops(tower, down_to)
    basis = _basis_between(tower, down_to, x.level)
    dim = len(basis)
    index = {v: i for i, v in enumerate(basis)}

    def coord_vector(y: Elem):
        vec = [ops_low.zero()] * dim
        for key, rep in _coordinates(y, down_to).items():
            vec[index[key]] = rep
        return vec

    rows: list = []  # (pivot position, normalized row, combination over powers)
    powers = [int_elem(tower, x.level, 1)]
    while True:
        target = coord_vector(powers[-1])
        comb = [ops_low.zero()] * len(powers)
        comb[-1] = ops_low.one()
        for pivot, row, rcomb in rows:
            c = target[pivot]
            if ops_low.is_zero(c):
                continue
            target = [ops_low.sub(t, ops_low.mul(c, rv)) for t, rv in zip(target, row)]
            for i, rc in enumerate(rcomb):
                comb[i] = ops_low.sub(comb[i], ops_low.mul(c, rc))
        nz = next((i for i, t in enumerate(target) if not ops_low.is_zero(t)), None)
        if nz is None:
            # comb gives sum comb_j x^j = 0 with leading coefficient one
            return [Elem(tower, down_to, c) for c in comb]
        inv = ops_low.inv(target[nz])
        rows.append((nz, [ops_low.mul(inv, t) for t in target],
                     [ops_low.mul(inv, c) for c in comb]))
        powers.append(mul(powers[-1], x))
        if len(powers) > dim + 1:
            raise AssertionError("no linear dependence within the tower degree")


def norm(x: Elem, down_to: int = 0) -> Elem:
    """Norm of x from its level down to ``down_to``: the determinant of
    multiplication by x, computed stepwise as a resultant against each
    step's defining polynomial."""
    tower = x.tower
    if down_to > x.level:
        raise ValueError("norm target lies above the element")
    cur = x
    for lvl in range(x.level, down_to, -1):
        ops = _ops(tower, lvl)
        low = ops._lower
        g = upoly_trim(low, list(cur.rep))
        res = upoly_resultant(low, ops.minpoly_lower(), g)
        cur = Elem(tower, lvl - 1, res)
    return cur


def solve_norm(y: Elem, level_top: int, level_bottom: int = 0,
               degree_bound: int = 4) -> Optional[Elem]:
    """Search z at ``level_top`` with Norm down to ``level_bottom`` equal to
    y; candidate coordinates are base fractions with numerator and
    denominator degrees at most ``degree_bound``.  Returns the first hit in
    canonical enumeration order, or None once the space is exhausted ("not
    found within the bound" is a value, not an error)."""
    tower = y.tower
    y = descend(y, level_bottom) if y.level > level_bottom else lift(y, level_bottom)
    if level_top == level_bottom:
        return y if not y.is_zero() else None
    if level_bottom > 0:
        found = _solve_norm_rationalized(y, level_top, level_bottom, degree_bound)
        if found is not NotImplemented:
            return found
        return _solve_norm_projected(y, level_top, level_bottom, degree_bound)
    if (level_top == 1 and tower.p == 2
            and tower.step_at(1).kind in ("artin_schreier", "insep_root")):
        return _solve_norm_char2_resolvent(y, degree_bound)
    basis = _basis_between(tower, level_bottom, level_top)
    dim = len(basis)
    for height in range(degree_bound + 1):
        for vec in _coordinate_tuples(tower, dim, height):
            z = _assemble(tower, level_bottom, level_top, basis, vec)
            if z is None:
                continue
            if norm(z, level_bottom) == y:
                return z
    return None


def _solve_norm_char2_resolvent(y: Elem, degree_bound: int) -> Optional[Elem]:
    """One degree-2 step over the base in characteristic 2: for each radical
    coordinate candidate c1 the norm equation becomes an explicit equation
    for c0 (a square root for root steps, an Artin-Schreier preimage for
    cyclic steps), both decided exactly.  Covers every witness whose c1
    coordinate has height within the bound, in canonical order."""
    tower = y.tower
    step = tower.step_at(1)
    w = step_defining_elem(tower, 1)
    y0 = y.rep
    is_as = (step.kind == "artin_schreier")

    def finish(c0: RatFunc, c1: RatFunc) -> Elem:
        z = _assemble(tower, 0, 1, [(0,), (1,)], (c0, c1))
        if z is None or norm(z, 0) != y:
            raise AssertionError("norm resolvent produced a bad witness")
        return z

    root = y0.pth_root()
    if root is not None and not root.is_zero():
        return finish(root, RatFunc.zero(tower.ring))
    for h in range(degree_bound + 1):
        for c1 in _ratfuncs_of_height(tower, h):
            if c1.is_zero():
                continue
            c1sq = c1 * c1
            if is_as:
                # N(c0 + c1 i) = c0^2 + c0 c1 + c1^2 w = y:
                # substituting c0 = c1 u gives u^2 + u = (y - c1^2 w) / c1^2
                rhs = (y0 - c1sq * w.rep) / c1sq
                u = _as_preimage_base(Elem(tower, 0, rhs))
                if u is None:
                    continue
                return finish(c1 * u.rep, c1)
            # N(c0 + c1 s) = c0^2 + c1^2 b = y (char 2)
            c0sq = y0 - c1sq * w.rep
            c0 = c0sq.pth_root()
            if c0 is None:
                continue
            return finish(c0, c1)
    return None


def _solve_norm_rationalized(y: Elem, level_top: int, level_bottom: int,
                             degree_bound: int):
    """Search a norm witness through the rational presentation of the bottom
    level, when the extension is a single step defined at or below the
    bottom.  Returns NotImplemented when the shape is unsupported (the
    caller then falls back to slow direct enumeration)."""
    tower = y.tower
    if level_top != level_bottom + 1:
        return NotImplemented
    step = tower.step_at(level_top)
    if step.kind == "simple":
        return NotImplemented
    from .rationalize import rationalize_level
    rz = rationalize_level(tower, level_bottom)
    if rz is None:
        return NotImplemented
    data = step_defining_elem(tower, level_top)
    if data.level > level_bottom:
        return NotImplemented
    shadow0 = rz.tower
    data_img = Elem(shadow0, 0, rz.forward(data))
    try:
        shadow = make_step(shadow0, step.kind, "@g", data_img)
    except StepError:
        return NotImplemented
    y_img = Elem(shadow0, 0, rz.forward(y))
    z_img = solve_norm(rebind(y_img, shadow), 1, 0, degree_bound)
    if z_img is None:
        return None
    g_src = gen_elem(tower, level_top)
    out = int_elem(tower, level_top, 0)
    g_pow = int_elem(tower, level_top, 1)
    for coeff in z_img.rep:
        coeff_src = lift(rz.backward(coeff), level_top)
        out = add(out, mul(coeff_src, g_pow))
        g_pow = mul(g_pow, g_src)
    if norm(out, level_bottom) != descend(y, level_bottom):
        raise AssertionError("norm witness did not survive the change of coordinates")
    return out


def _solve_norm_projected(y: Elem, level_top: int, level_bottom: int,
                          degree_bound: int) -> Optional[Elem]:
    """Tower levels without a rational presentation: search the subextension
    generated over the base by the same defining data, when both that data
    and the target descend there.  Sound (witnesses lift), incomplete
    (coordinates above the base are not enumerated); unsupported shapes
    return None, which callers treat as an exhausted search."""
    tower = y.tower
    if level_top != level_bottom + 1:
        return None
    step = tower.step_at(level_top)
    if step.kind == "simple":
        return None
    data = step_defining_elem(tower, level_top)
    if level_of_definition(data) > 0:
        return None
    try:
        y0 = descend(y, 0)
    except ValueError:
        return None
    base = truncate(tower, 0)
    try:
        ext = make_step(base, step.kind, "@p", rebind(descend(data, 0), base))
    except StepError:
        return None
    z0 = solve_norm(rebind(y0, ext), 1, 0, degree_bound)
    if z0 is None:
        return None
    out = int_elem(tower, level_top, 0)
    g = gen_elem(tower, level_top)
    g_pow = int_elem(tower, level_top, 1)
    for coeff in z0.rep:
        out = add(out, mul(lift(Elem(tower, 0, coeff), level_top), g_pow))
        g_pow = mul(g_pow, g)
    if norm(out, level_bottom) != descend(y, level_bottom):
        raise AssertionError("projected norm witness failed to lift")
    return out


def _assemble(tower, low, high, basis, vec):
    """Combine base-fraction coordinates against the generator-monomial
    basis of ``high`` over ``low``."""
    out = int_elem(tower, high, 0)
    nonzero = False
    for key, c in zip(basis, vec):
        if c.is_zero():
            continue
        nonzero = True
        term = lift(Elem(tower, 0, c), high)
        for lvl_off, e in enumerate(key):
            if e:
                term = mul(term, power(lift(gen_elem(tower, low + lvl_off + 1), high), e))
        out = add(out, term)
    return out if nonzero else None


def _coordinate_tuples(tower: FieldTower, dim: int, height: int):
    """All dim-tuples of base fractions whose maximal height is exactly
    ``height``, in canonical order (so each tuple appears once overall)."""
    lower: list = []
    for h in range(height):
        lower.extend(_ratfuncs_of_height(tower, h))
    singles = _ratfuncs_of_height(tower, height)
    boundary = len(lower)
    pool = lower + singles
    for combo in _iproduct(range(len(pool)), repeat=dim):
        if max(combo) < boundary:
            continue
        yield tuple(pool[i] for i in combo)


_POOL_CACHE: dict = {}


def _ratfuncs_of_height(tower: FieldTower, h: int) -> list:
    """Reduced base fractions with max(deg num, deg den) == h, denominator
    monic; degree means total degree on multivariate bases.  Cached."""
    ring = tower.ring
    key = (ring.field.p, ring.field.d, ring.variables, h)
    cached = _POOL_CACHE.get(key)
    if cached is not None:
        return cached
    seen = set()
    out = []
    nums = _polys_up_to(ring, h)
    dens = [d for d in _polys_up_to(ring, h, monic=True)]
    for num in nums:
        for den in dens:
            if max(num.total_degree(), den.total_degree()) != h:
                continue
            f = RatFunc(num, den)
            if max(f.num.total_degree(), f.den.total_degree()) != h:
                continue
            if f not in seen:
                seen.add(f)
                out.append(f)
    _POOL_CACHE[key] = out
    return out


def _polys_up_to(ring: PolyRing, h: int, monic: bool = False) -> list:
    field = ring.field
    mons = [m for m in _box_monomials([h] * ring.nvars) if sum(m) <= h]
    mons.sort(key=lambda m: (sum(m), m))
    polys = [ring.zero()]
    for mon in mons:
        fresh = []
        for base in polys:
            for c in field.elements():
                if field.is_zero(c):
                    continue
                fresh.append(base + Poly(ring, {mon: c}))
        polys.extend(fresh)
    if monic:
        return [f for f in polys if not f.is_zero() and f.leading_coeff() == field.one]
    return polys
