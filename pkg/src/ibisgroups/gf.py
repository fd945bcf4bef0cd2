"""Arithmetic in GF(p^f).

Elements are plain ints: the coefficient vector (c0, c1, ..., c_{f-1}) of
c0 + c1 z + ... read as base-p digits, c0 least significant.  So the prime
field sits inside as 0..p-1 and ``ctx.index(e)`` is the identity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

MAX_FIELD_SIZE = 2**32


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, f) with q = p^f, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, m = 0, q
    while m % p == 0:
        m //= p
        f += 1
    if m != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, f


# -- polynomials over GF(p) as coefficient lists, lowest degree first --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _polymulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, m, p)


def _polypowmod(a, e, m, p):
    result = [1]
    a = _polymod(a, m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, a, m, p)
        a = _polymulmod(a, a, m, p)
        e >>= 1
    return result


def _polysub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    f = len(poly) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    x = [0, 1]
    if _polysub(_polypowmod(x, p**f, poly, p), x, p):
        return False
    for r in _prime_factors(f):
        h = _polysub(_polypowmod(x, p ** (f // r), poly, p), x, p)
        if len(_polygcd(poly, h, p)) != 1:
            return False
    return True


def _digits(n: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(cs, p: int) -> int:
    n = 0
    for c in reversed(cs):
        n = n * p + c
    return n


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^f) with a fixed modulus and primitive element; see ``field_create``."""

    p: int
    f: int
    modulus: tuple
    primitive: int
    _exp: tuple = field(repr=False, compare=False)
    _log: dict = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.f

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, e: int) -> list[int]:
        return _digits(e, self.p, self.f)

    def from_coeffs(self, cs) -> int:
        return _undigits([c % self.p for c in cs], self.p)

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        return _undigits([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))], p)

    def neg(self, a: int) -> int:
        return _undigits([(-x) % self.p for x in self.coeffs(a)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the primitive element (table lookup)."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def mul_poly(self, a: int, b: int) -> int:
        """Multiplication straight from the modulus, independent of the log tables."""
        return _undigits(_polymulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p)
                         + [0] * self.f, self.p)

    def frobenius(self, e: int, k: int = 1) -> int:
        return self.pow(e, self.p ** (k % self.f)) if e else 0

    def subfield(self, ell: int) -> list[int]:
        """Elements of GF(p^ell), the fixed points of x -> x^(p^ell)."""
        if self.f % ell:
            raise FieldError(f"{ell} does not divide {self.f}")
        return [e for e in self.elements() if self.frobenius(e, ell) == e]

    def label(self, e: int) -> str:
        if e == 0:
            return "0"
        if e == 1:
            return "1"
        return f"z^{self._log[e]}"


def field_create(p: int, f: int = 1) -> FieldCtx:
    """GF(p^f) with the least irreducible modulus and least primitive element.

    The modulus is x^f + c_{f-1} x^{f-1} + ... + c_0 with the coefficient
    vector (c_0, ..., c_{f-1}) minimal as a base-p number.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if f < 1:
        raise FieldError("exponent must be at least 1")
    q = p**f
    if q > MAX_FIELD_SIZE:
        raise FieldError(f"field of size {q} is too large")
    modulus = None
    for m in range(q):
        poly = _digits(m, p, f) + [1]
        if is_irreducible(poly, p):
            modulus = poly
            break
    assert modulus is not None
    factors = _prime_factors(q - 1)
    primitive = None
    for e in range(1, q):
        cs = _digits(e, p, f)
        if all(_trim(_polypowmod(cs, (q - 1) // r, modulus, p)) != [1] for r in factors):
            primitive = e
            break
    if q == 2:
        primitive = 1
    assert primitive is not None
    exp, log = [], {}
    x = [1]
    gcs = _digits(primitive, p, f)
    for k in range(q - 1):
        e = _undigits(x + [0] * (f - len(x)), p)
        exp.append(e)
        log[e] = k
        x = _polymulmod(x, gcs, modulus, p)
    return FieldCtx(p, f, tuple(modulus), primitive, tuple(exp), log)


def galois_orbit_profile(ctx: FieldCtx, ell: int) -> Counter:
    """Orbit sizes of Gal(GF(p^f)/GF(p^ell)) on GF(p^f) minus GF(p^ell).

    Returned as a Counter {orbit size: number of orbits}.
    """
    if ell < 1 or ctx.f % ell:
        raise FieldError(f"{ell} does not divide {ctx.f}")
    small = set(ctx.subfield(ell))
    seen = set()
    sizes = Counter()
    for e in ctx.elements():
        if e in small or e in seen:
            continue
        orbit = {e}
        y = ctx.frobenius(e, ell)
        while y != e:
            orbit.add(y)
            y = ctx.frobenius(y, ell)
        seen |= orbit
        sizes[len(orbit)] += 1
    return sizes
