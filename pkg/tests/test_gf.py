import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ibisgroups.gf import (FieldError, field_create, galois_orbit_profile, is_irreducible,
                           is_prime, prime_power)

SMALL = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5)]


def brute_irreducible(poly, p):
    # no root-free check shortcut: trial division by every monic of lower degree
    f = len(poly) - 1
    for d in range(1, f // 2 + 1):
        for cs in itertools.product(range(p), repeat=d):
            div = list(cs) + [1]
            rem = list(poly)
            for i in range(f - d, -1, -1):
                c = rem[i + d]
                if c:
                    for j, a in enumerate(div):
                        rem[i + j] = (rem[i + j] - c * a) % p
            if not any(rem):
                return False
    return True


def mult_order(ctx, e):
    k, x = 1, e
    while x != 1:
        x = ctx.mul_poly(x, e)
        k += 1
    return k


class TestCreate:
    def test_prime_field_two(self):
        ctx = field_create(2, 1)
        assert ctx.q == 2 and ctx.primitive == 1

    def test_gf9(self):
        ctx = field_create(3, 2)
        assert ctx.modulus == (1, 0, 1)
        assert mult_order(ctx, ctx.primitive) == 8
        assert ctx.primitive == 4

    def test_known_moduli(self):
        assert field_create(2, 2).modulus == (1, 1, 1)
        assert field_create(2, 3).modulus == (1, 1, 0, 1)
        assert field_create(2, 4).modulus == (1, 1, 0, 0, 1)

    @pytest.mark.parametrize("p, f", SMALL)
    def test_modulus_is_least_irreducible(self, p, f):
        ctx = field_create(p, f)
        assert brute_irreducible(list(ctx.modulus), p)
        target = sum(c * p**i for i, c in enumerate(ctx.modulus[:-1]))
        for m in range(target):
            cs = [(m // p**i) % p for i in range(f)] + [1]
            assert not brute_irreducible(cs, p)

    @pytest.mark.parametrize("p, f", SMALL)
    def test_primitive_is_least_of_full_order(self, p, f):
        ctx = field_create(p, f)
        q = p**f
        assert mult_order(ctx, ctx.primitive) == q - 1
        for e in range(1, ctx.primitive):
            assert mult_order(ctx, e) < q - 1

    def test_errors(self):
        with pytest.raises(FieldError):
            field_create(4, 1)
        with pytest.raises(FieldError):
            field_create(2, 0)
        with pytest.raises(FieldError):
            field_create(2, 33)

    def test_helpers(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
        assert prime_power(81) == (3, 4) and prime_power(7) == (7, 1)
        with pytest.raises(FieldError):
            prime_power(12)
        assert is_irreducible([1, 1, 1], 2) and not is_irreducible([1, 0, 1], 2)


class TestArithmetic:
    @pytest.mark.parametrize("p, f", SMALL)
    def test_mul_agrees_with_polynomial_oracle(self, p, f):
        ctx = field_create(p, f)
        for a in ctx.elements():
            for b in ctx.elements():
                assert ctx.mul(a, b) == ctx.mul_poly(a, b)

    def test_inverses_gf16(self):
        ctx = field_create(2, 4)
        for x in range(1, 16):
            assert ctx.mul(x, ctx.inv(x)) == 1
        with pytest.raises(ZeroDivisionError):
            ctx.inv(0)

    def test_additive_identity_and_negation(self):
        ctx = field_create(3, 2)
        for x in ctx.elements():
            assert ctx.add(x, 0) == x
            assert ctx.add(x, ctx.neg(x)) == 0
            assert ctx.sub(x, x) == 0

    @pytest.mark.parametrize("p, f", SMALL)
    def test_primitive_powers(self, p, f):
        ctx = field_create(p, f)
        n = ctx.q - 1
        assert ctx.pow(ctx.primitive, n) == 1
        assert all(ctx.pow(ctx.primitive, d) != 1 for d in range(1, n) if n % d == 0)

    @settings(max_examples=200)
    @given(st.sampled_from(SMALL), st.data())
    def test_field_axioms(self, pf, data):
        ctx = field_create(*pf)
        a, b, c = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        if b:
            assert ctx.mul(ctx.div(a, b), b) == a

    def test_labels(self):
        ctx = field_create(2, 3)
        assert ctx.label(0) == "0" and ctx.label(1) == "1"
        assert ctx.label(ctx.primitive) == "z^1"


class TestFrobenius:
    @pytest.mark.parametrize("p, f", SMALL)
    def test_identity_cases(self, p, f):
        ctx = field_create(p, f)
        for e in ctx.elements():
            assert ctx.frobenius(e, 0) == e
            assert ctx.frobenius(e, f) == e
        assert all(ctx.frobenius(e) == e for e in range(p))

    @given(st.sampled_from(SMALL), st.data())
    def test_automorphism(self, pf, data):
        ctx = field_create(*pf)
        a, b = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(2))
        fr = ctx.frobenius
        assert fr(ctx.add(a, b)) == ctx.add(fr(a), fr(b))
        assert fr(ctx.mul(a, b)) == ctx.mul(fr(a), fr(b))

    def test_gf16_orbits_outside_gf4(self):
        ctx = field_create(2, 4)
        small = set(ctx.subfield(2))
        assert len(small) == 4
        for e in set(range(16)) - small:
            orbit = {ctx.frobenius(e, k) for k in range(4)}
            assert len(orbit) == 4


class TestGaloisProfile:
    def test_examples(self):
        assert galois_orbit_profile(field_create(2, 4), 2) == {2: 6}
        assert galois_orbit_profile(field_create(2, 4), 1) == {2: 1, 4: 3}
        assert galois_orbit_profile(field_create(2, 3), 1) == {3: 2}

    def test_bad_divisor(self):
        with pytest.raises(FieldError):
            galois_orbit_profile(field_create(2, 4), 3)

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("f", range(1, 7))
    def test_equal_sizes_criterion(self, p, f):
        ctx = field_create(p, f)
        for ell in range(1, f + 1):
            if f % ell:
                continue
            profile = galois_orbit_profile(ctx, ell)
            m = f // ell
            prime = m > 1 and all(m % d for d in range(2, m))
            assert (len(profile) <= 1) == (ell == f or prime)
            assert sum(k * v for k, v in profile.items()) == p**f - p**ell
