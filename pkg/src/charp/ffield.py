"""Exact arithmetic in finite fields GF(p^d).

Elements are represented as tuples of d integers in {0, ..., p-1}: the
coefficients, low degree first, of a polynomial in the canonical generator
``g`` modulo a fixed irreducible modulus.  The modulus is chosen
deterministically (see :func:`canonical_modulus`), so values are portable
across runs and machines.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Tuple

FFElem = Tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# -- dense univariate arithmetic over GF(p), used only for modulus search --

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _fp_mod(prod, m, p)


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _fp_trim(a)
        if len(a) - 1 < dm:
            break
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
        a = _fp_trim(a)
    return _fp_trim(a)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b) and r:
            r = _fp_trim(r)
            if len(r) < len(b):
                break
            c = (r[-1] * inv_lead) % p
            shift = len(r) - len(b)
            for j, bj in enumerate(b):
                r[shift + j] = (r[shift + j] - c * bj) % p
            r = _fp_trim(r)
        a, b = b, r
    return a


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    # x^(p^d) == x mod f, and gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d
    d = len(f) - 1
    if d < 1:
        return False
    x = [0, 1]
    if _fp_sub(_fp_powmod(x, p ** d, f, p), x, p):
        return False
    for ell in range(2, d + 1):
        if d % ell == 0 and _is_prime(ell):
            diff = _fp_sub(_fp_powmod(x, p ** (d // ell), f, p), x, p)
            g = _fp_gcd(f, diff, p) if diff else list(f)
            if len(g) - 1 > 0:
                return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p: int, d: int) -> Tuple[int, ...]:
    """First monic irreducible of degree d over GF(p) in base-p counting order.

    Candidates x^d + c_{d-1}x^{d-1} + ... + c_0 are enumerated by the integer
    value sum(c_i * p^i), smallest first.
    """
    if d == 1:
        return (0, 1)
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible of degree %d over GF(%d)" % (d, p))


class FiniteField:
    """The field GF(p^d) with its canonical modulus.

    All element-level operations take and return plain coefficient tuples;
    the field object itself carries the arithmetic.
    """

    def __init__(self, p: int, d: int = 1):
        if not _is_prime(p):
            raise ValueError("characteristic must be prime, got %r" % (p,))
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.d = d
        self.order = p ** d
        self.modulus = canonical_modulus(p, d)
        self.zero: FFElem = (0,) * d
        self.one: FFElem = (1,) + (0,) * (d - 1)
        self.gen: FFElem = ((0, 1) + (0,) * (d - 2)) if d >= 2 else (1,)

    def __repr__(self) -> str:
        return "FiniteField(%d, %d)" % (self.p, self.d)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self) -> int:
        return hash(("FiniteField", self.p, self.d))

    # -- construction --

    def from_int(self, n: int) -> FFElem:
        return ((n % self.p),) + (0,) * (self.d - 1)

    def from_coeffs(self, coeffs) -> FFElem:
        c = [x % self.p for x in coeffs]
        if len(c) > self.d:
            c = _fp_mod(c, list(self.modulus), self.p)
        return tuple(c) + (0,) * (self.d - len(c))

    def elements(self) -> Iterator[FFElem]:
        """All field elements in base-p counting order."""
        for code in range(self.order):
            c = code
            coeffs = []
            for _ in range(self.d):
                coeffs.append(c % self.p)
                c //= self.p
            yield tuple(coeffs)

    # -- arithmetic --

    def add(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: FFElem) -> FFElem:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: FFElem, b: FFElem) -> FFElem:
        if self.d == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _fp_mulmod(list(a), list(b), list(self.modulus), self.p)
        return tuple(prod) + (0,) * (self.d - len(prod))

    def smul(self, n: int, a: FFElem) -> FFElem:
        p = self.p
        return tuple((n * x) % p for x in a)

    def inv(self, a: FFElem) -> FFElem:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in %r" % (self,))
        return self.pow(a, self.order - 2)

    def div(self, a: FFElem, b: FFElem) -> FFElem:
        return self.mul(a, self.inv(b))

    def pow(self, a: FFElem, e: int) -> FFElem:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a: FFElem) -> bool:
        return all(x == 0 for x in a)

    def frob(self, a: FFElem) -> FFElem:
        return self.pow(a, self.p)

    def pth_root(self, a: FFElem) -> FFElem:
        """Unique p-th root; the Frobenius x -> x^p is bijective here."""
        return self.pow(a, self.p ** (self.d - 1))

    def trace_to_prime(self, a: FFElem) -> int:
        """Absolute trace down to GF(p), returned as an integer in [0, p)."""
        acc = self.zero
        cur = a
        for _ in range(self.d):
            acc = self.add(acc, cur)
            cur = self.frob(cur)
        if any(acc[1:]):
            raise AssertionError("trace landed outside the prime field")
        return acc[0]

    def solve_artin_schreier(self, c: FFElem) -> FFElem | None:
        """Some x with x^p - x = c, or None (exists iff the trace vanishes)."""
        if self.trace_to_prime(c) != 0:
            return None
        for x in self.elements():
            if self.sub(self.pow(x, self.p), x) == c:
                return x
        return None
