"""Constructors for the concrete groups and actions studied by the library.

Every constructor returns an ``AtlasEntry``.  Entries carrying an
``Expected`` record are checked against it (degree and order) before they
are handed out, so a wrong generator set fails loudly at build time.

Randomised constructions take a seed, record it in the entry, and always
finish with an exact certificate (orders and memberships checked by chains).
"""

from __future__ import annotations

import itertools
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .gf import FieldCtx, field_create, prime_power
from .perm import (ActionGroup, GeneratedGroup, LabeledDomain, Permutation, element_order,
                   group_from_dict, identity_tuple, inv, mul, on_set_of_sets, on_sets)
from .stabchain import StabilizerChain, build_chain, conjugate, coset_action, derived_subgroup


class AtlasError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """A randomised subgroup search gave up; retry with another seed."""


# Where an expected value comes from: a published statement, a computation
# independent of the code under test, or something immediate.
PUBLISHED, COMPUTED, ELEMENTARY = "published", "computed", "elementary"


@dataclass(frozen=True)
class Expected:
    degree: int | None = None
    order: int | None = None
    ibis: bool | None = None
    rank: int | None = None
    basis: str = ELEMENTARY
    note: str = ""


@dataclass
class AtlasEntry:
    name: str
    parameters: dict
    group: GeneratedGroup | ActionGroup
    expected: Expected | None = None
    seed: int = 0
    extras: dict = field(default_factory=dict)
    _chain: StabilizerChain | None = field(default=None, repr=False)

    @property
    def domain(self) -> LabeledDomain | None:
        return self.group.domain

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def source(self) -> GeneratedGroup:
        """The group in the representation its chain is built in."""
        return self.group.source if isinstance(self.group, ActionGroup) else self.group

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            hint = self.expected.order if self.expected and self.expected.order else None
            self._chain = build_chain(self.source)
            if hint is not None and self._chain.order() != hint:
                raise AtlasError(f"{self.name}: order {self._chain.order()}, expected {hint}")
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def generated(self) -> GeneratedGroup:
        """The group as permutations of its analysed points."""
        if isinstance(self.group, ActionGroup):
            return self.group.induced()
        return self.group

    def verify(self) -> AtlasEntry:
        exp = self.expected
        if exp is None:
            return self
        if exp.degree is not None and exp.degree != self.degree:
            raise AtlasError(f"{self.name}: degree {self.degree}, expected {exp.degree}")
        if exp.order is not None and exp.order != self.order():
            raise AtlasError(f"{self.name}: order {self.order()}, expected {exp.order}")
        return self


def _entry(name, params, group, expected=None, seed=0, **extras) -> AtlasEntry:
    return AtlasEntry(name, dict(params), group, expected, seed, extras).verify()


def _cycle(points, degree) -> tuple:
    return Permutation.from_cycles([list(points)], degree).images


# -- symmetric and alternating groups -------------------------------------------

def _sym_group(n: int) -> GeneratedGroup:
    gens = []
    if n >= 2:
        gens.append(_cycle(range(n), n))
        gens.append(_cycle((0, 1), n))
    return GeneratedGroup(n, tuple(gens), f"Sym({n})")


def _alt_group(n: int) -> GeneratedGroup:
    gens = tuple(_cycle((0, 1, i), n) for i in range(2, n))
    return GeneratedGroup(n, gens, f"Alt({n})")


def sym(n: int) -> AtlasEntry:
    if n < 1:
        raise AtlasError("n must be at least 1")
    return _entry(f"Sym({n})", {"n": n}, _sym_group(n),
                  Expected(n, math.factorial(n), True, max(n - 1, 0)))


def alt(n: int) -> AtlasEntry:
    if n < 3:
        raise AtlasError("n must be at least 3")
    return _entry(f"Alt({n})", {"n": n}, _alt_group(n),
                  Expected(n, math.factorial(n) // 2, True, n - 2))


def _parent(parent: str, n: int) -> GeneratedGroup:
    if parent == "sym":
        return _sym_group(n)
    if parent == "alt":
        return _alt_group(n)
    raise AtlasError(f"parent must be 'sym' or 'alt', not {parent!r}")


def k_subsets(n: int, k: int) -> list[tuple]:
    """k-subsets of 0..n-1 in colex order."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def on_k_subsets(parent: str, n: int, k: int) -> AtlasEntry:
    if not 1 <= k <= n // 2:
        raise AtlasError("need 1 <= k <= n/2")
    if 2 * k == n:
        warnings.warn("k = n/2: the action on k-subsets is imprimitive", stacklevel=2)
    src = _parent(parent, n)
    domain = LabeledDomain.from_objects(k_subsets(n, k))
    name = f"{src.label} on {k}-subsets"
    order = math.factorial(n) // (1 if parent == "sym" else 2)
    return _entry(name, {"parent": parent, "n": n, "k": k},
                  ActionGroup(src, domain, on_sets, name),
                  Expected(math.comb(n, k), order))


def regular_partitions(a: int, b: int) -> list[tuple]:
    """Partitions of 0..ab-1 into b blocks of size a, as sorted tuples of sorted blocks."""
    out = []

    def rec(rest: tuple, blocks: list):
        if not rest:
            out.append(tuple(blocks))
            return
        first, others = rest[0], rest[1:]
        for comb in itertools.combinations(others, a - 1):
            block = (first,) + comb
            left = tuple(x for x in others if x not in comb)
            rec(left, blocks + [block])

    rec(tuple(range(a * b)), [])
    return out


def on_partitions(parent: str, a: int, b: int) -> AtlasEntry:
    if a < 2 or b < 2:
        raise AtlasError("need a >= 2 and b >= 2")
    n = a * b
    src = _parent(parent, n)
    domain = LabeledDomain.from_objects(regular_partitions(a, b))
    name = f"{src.label} on ({a},{b})-partitions"
    degree = math.factorial(n) // (math.factorial(a) ** b * math.factorial(b))
    order = math.factorial(n) // (1 if parent == "sym" else 2)
    return _entry(name, {"parent": parent, "a": a, "b": b},
                  ActionGroup(src, domain, on_set_of_sets, name),
                  Expected(degree, order))


# -- the projective line --------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveLine:
    """PG(1, q): point 0 is infinity, point e + 1 is the field element e."""

    ctx: FieldCtx

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def degree(self) -> int:
        return self.q + 1

    def labels(self) -> tuple:
        return ("inf",) + tuple(self.ctx.label(e) for e in self.ctx.elements())

    def domain(self) -> LabeledDomain:
        return LabeledDomain.from_objects(self.labels())

    def _map(self, fn: Callable[[int | None], int | None]) -> tuple:
        def pt(x):
            return 0 if x is None else x + 1
        return tuple(pt(fn(None if i == 0 else i - 1)) for i in range(self.degree))

    def translation(self, c: int = 1) -> tuple:
        return self._map(lambda x: None if x is None else self.ctx.add(x, c))

    def scaling(self, c: int) -> tuple:
        return self._map(lambda x: None if x is None else self.ctx.mul(c, x))

    def inversion(self) -> tuple:
        """x -> -1/x."""
        ctx = self.ctx
        return self._map(lambda x: 0 if x is None else (None if x == 0 else ctx.neg(ctx.inv(x))))

    def frobenius(self) -> tuple:
        return self._map(lambda x: None if x is None else self.ctx.frobenius(x))

    def moebius(self, a: int, b: int, c: int, d: int) -> tuple:
        """x -> (ax + c)/(bx + d), the row-vector action of [[a, b], [c, d]]."""
        ctx = self.ctx

        def fn(x):
            if x is None:
                return None if b == 0 else ctx.div(a, b)
            num, den = ctx.add(ctx.mul(a, x), c), ctx.add(ctx.mul(b, x), d)
            return None if den == 0 else ctx.div(num, den)
        return self._map(fn)

    def psl_generators(self) -> list[tuple]:
        lam = self.ctx.primitive
        return [self.translation(), self.scaling(self.ctx.mul(lam, lam)), self.inversion()]


def _psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _subgroups_of_abelian(d: int, f: int) -> list[frozenset]:
    """All subgroups of C_d x C_f, by closing every pair of elements."""
    elems = [(i, j) for i in range(d) for j in range(f)]

    def close(gs):
        seen = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gs:
                    y = ((x[0] + g[0]) % d, (x[1] + g[1]) % f)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    subs = {close([x, y]) for x in elems for y in elems}
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def _min_gens(sub: frozenset, d: int, f: int) -> list[tuple]:
    """A small generating set of a subgroup of C_d x C_f."""
    for k in (0, 1, 2):
        for gs in itertools.combinations(sorted(sub), k):
            seen = {(0, 0)}
            frontier = [(0, 0)]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gs:
                        y = ((x[0] + g[0]) % d, (x[1] + g[1]) % f)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            if seen == sub:
                return list(gs)
    raise AssertionError("subgroup needs more than two generators")


def _projective_name(q: int, d: int, f: int, sub: frozenset) -> str:
    if len(sub) == 1:
        return f"PSL2({q})"
    if d == 2 and sub == frozenset({(0, 0), (1, 0)}):
        return f"PGL2({q})"
    if len(sub) == d * f:
        return f"PGammaL2({q})"
    if all(i == 0 for i, _ in sub) and len(sub) == f:
        return f"PSigmaL2({q})"
    if q == 9 and sub == frozenset({(0, 0), (1, 1)}):
        return "M10"
    parts = []
    for i, j in _min_gens(sub, d, f):
        word = ("delta" if i else "") + ("*" if i and j else "") + (f"phi^{j}" if j else "")
        parts.append(word)
    return f"PSL2({q}).<{','.join(parts)}>"


def projective_groups(q: int) -> list[AtlasEntry]:
    """Every G with PSL2(q) <= G <= PGammaL2(q), acting on the projective line.

    Each entry carries ``extras['r']`` = |G PGL2(q) : PGL2(q)| computed from
    chain orders, and ``extras['coset']`` = the (i, j) pairs of delta^i phi^j
    in G / PSL2(q).
    """
    if q < 4:
        raise AtlasError("q must be at least 4")
    p, f = prime_power(q)
    line = ProjectiveLine(field_create(p, f))
    d = math.gcd(2, q - 1)
    psl = line.psl_generators()
    delta = line.scaling(line.ctx.primitive)
    phi = line.frobenius()
    domain = line.domain()
    pgl_order = q * (q * q - 1)

    def coset_element(i, j):
        x = identity_tuple(q + 1)
        for _ in range(i):
            x = mul(x, delta)
        for _ in range(j):
            x = mul(x, phi)
        return x

    out = []
    for sub in _subgroups_of_abelian(d, f):
        extra = [coset_element(i, j) for i, j in _min_gens(sub, d, f)]
        name = _projective_name(q, d, f, sub)
        g = GeneratedGroup(q + 1, tuple(psl + extra), name, domain)
        order = _psl2_order(q) * len(sub)
        entry = _entry(name, {"q": q}, g, Expected(q + 1, order, basis=COMPUTED), coset=sorted(sub))
        with_delta = build_chain(psl + extra + [delta], degree=q + 1).order()
        entry.extras["r"] = with_delta // pgl_order
        out.append(entry)
    return out


def projective_group(q: int, name: str) -> AtlasEntry:
    for entry in projective_groups(q):
        if entry.name == name:
            return entry
    raise AtlasError(f"no group named {name!r} between PSL2({q}) and PGammaL2({q})")


def ibis_criterion(r: int, f: int) -> bool:
    """Predicted IBIS verdict on the projective line from the field-part index."""
    return r == 1 or (_is_prime(r) and f % r == 0)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


# -- vector space actions over GF(2) --------------------------------------------

def _bits(v: int, n: int) -> str:
    return "".join(str(v >> i & 1) for i in range(n))


def _vector_domain(n: int) -> LabeledDomain:
    return LabeledDomain.from_objects(_bits(v, n) for v in range(1, 2**n))


def _linear_perm(fn: Callable[[int], int], n: int) -> tuple:
    """Permutation of the nonzero vectors (vector v at point v - 1)."""
    return tuple(fn(v) - 1 for v in range(1, 2**n))


def _gl2_order(n: int) -> int:
    out = 1
    for i in range(n):
        out *= 2**n - 2**i
    return out


def _sl_generators(n: int) -> list[tuple]:
    top = 1 << (n - 1)

    def transvection(v):
        return v ^ ((v & 1) << 1)

    def shift(v):
        return ((v << 1) & (2**n - 1)) | (1 if v & top else 0)

    return [_linear_perm(transvection, n), _linear_perm(shift, n)]


def sl_n_2_on_vectors(n: int) -> AtlasEntry:
    if not 2 <= n <= 6:
        raise AtlasError("n must be between 2 and 6")
    name = f"SL{n}(2) on vectors"
    g = GeneratedGroup(2**n - 1, tuple(_sl_generators(n)), name, _vector_domain(n))
    return _entry(name, {"n": n}, g, Expected(2**n - 1, _gl2_order(n), True, n, COMPUTED))


def hyperplanes(n: int) -> list[frozenset]:
    """Hyperplanes of GF(2)^n as sets of points (nonzero vectors minus one)."""
    return [frozenset(v - 1 for v in range(1, 2**n) if bin(u & v).count("1") % 2 == 0)
            for u in range(1, 2**n)]


def on_hyperplanes(g: GeneratedGroup, n: int, name: str) -> GeneratedGroup:
    """The action of a group of the nonzero vectors on the hyperplanes."""
    hs = hyperplanes(n)
    index = {h: i for i, h in enumerate(hs)}
    domain = LabeledDomain.from_objects(f"{_bits(u, n)}-perp" for u in range(1, 2**n))
    gens = []
    for s in g.gen_tuples:
        gens.append(tuple(index[frozenset(s[x] for x in h)] for h in hs))
    return GeneratedGroup(len(hs), tuple(gens), name, domain)


def sl_n_2_on_hyperplanes(n: int) -> AtlasEntry:
    base = sl_n_2_on_vectors(n)
    name = f"SL{n}(2) on hyperplanes"
    g = on_hyperplanes(base.group, n, name)
    return _entry(name, {"n": n}, g, Expected(2**n - 1, _gl2_order(n), True, n, COMPUTED))


def _sp_order(n: int) -> int:
    m = n // 2
    out = 2 ** (m * m)
    for i in range(1, m + 1):
        out *= 4**i - 1
    return out


def symplectic_form(u: int, v: int, n: int) -> int:
    """<u, v> with e_i (bit i) paired to f_i (bit i + n/2)."""
    m = n // 2
    low = (1 << m) - 1
    swapped = ((v & low) << m) | (v >> m)
    return bin(u & swapped).count("1") % 2


def sp_n_2_on_vectors(n: int) -> AtlasEntry:
    if n not in (4, 6):
        raise AtlasError("n must be 4 or 6")
    m = n // 2
    vectors = [1 << i for i in range(n)] + [(1 << i) | (1 << (i + 1)) for i in range(m - 1)]
    vectors += [(1 << i) | (1 << (i + m)) for i in range(m)]
    gens = []
    for a in vectors:
        gens.append(_linear_perm(lambda v, a=a: v ^ a if symplectic_form(v, a, n) else v, n))
    name = f"Sp{n}(2) on vectors"
    g = GeneratedGroup(2**n - 1, tuple(gens), name, _vector_domain(n))
    return _entry(name, {"n": n}, g, Expected(2**n - 1, _sp_order(n), True, n, COMPUTED))


def sp4_2_derived() -> AtlasEntry:
    parent = sp_n_2_on_vectors(4)
    name = "Sp4(2)' on vectors"
    g = derived_subgroup(parent.group).with_label(name)
    g = GeneratedGroup(g.degree, g.generators, name, parent.group.domain)
    return _entry(name, {"n": 4}, g, Expected(15, 360, True, 4, PUBLISHED))


# -- coset actions ----------------------------------------------------------------

def _random_element_of_order(chain: StabilizerChain, k: int, rng: random.Random,
                             tries: int = 10_000) -> tuple:
    for _ in range(tries):
        g = chain.random_tuple(rng)
        if element_order(g) == k:
            return g
    raise SearchExhausted(f"no element of order {k} found in {tries} tries")


def _cycle_of(g: tuple, start: int) -> list[int]:
    cyc = [start]
    x = g[start]
    while x != start:
        cyc.append(x)
        x = g[x]
    return cyc


def _dihedral_subgroup(chain: StabilizerChain, q: int, rng: random.Random) -> tuple[tuple, tuple]:
    """(s, t) with s of order q + 1 acting as one cycle and t an involution
    of G inverting it."""
    s = _random_element_of_order(chain, q + 1, rng)
    cyc = _cycle_of(s, 0)
    if len(cyc) != q + 1:
        raise SearchExhausted("element of order q+1 is not a single cycle")
    pos = {x: i for i, x in enumerate(cyc)}
    for j in range(q + 1):
        t = [0] * len(s)
        for x in range(len(s)):
            t[x] = cyc[(j - pos[x]) % (q + 1)]
        t = tuple(t)
        if chain.contains_tuple(t):
            assert conjugate(s, t) == inv(s)
            return s, t
    raise SearchExhausted("no inverting involution lies in G")


def _sl2_even(q: int) -> tuple[ProjectiveLine, list[tuple]]:
    p, f = prime_power(q)
    if p != 2:
        raise AtlasError("q must be a power of 2")
    line = ProjectiveLine(field_create(2, f))
    return line, line.psl_generators()


def _element_set(gens: list[tuple], degree: int) -> frozenset:
    return frozenset(build_chain(gens, degree=degree).elements())


def dihedral_coset_action(q: int, seed: int = 0, extended: bool = False) -> AtlasEntry:
    """SL2(q), q even, on the cosets of a dihedral subgroup of order 2(q+1).

    With ``extended`` the Frobenius map is adjoined (PGammaL2(q)) and the
    action is on the cosets of the normalizer of the dihedral subgroup.
    """
    p, f = prime_power(q)
    if p != 2 or not 8 <= q <= 32:
        raise AtlasError("q must be 8, 16 or 32")
    line, gens = _sl2_even(q)
    degree = q + 1
    chain = build_chain(gens, degree=degree)
    rng = random.Random(seed)
    s, t = _dihedral_subgroup(chain, q, rng)
    h_gens = [s, t]
    h_chain = build_chain(h_gens, degree=degree)
    assert h_chain.order() == 2 * (q + 1)
    index = q * (q - 1) // 2
    if not extended:
        name = f"SL2({q}) on cosets of D{2 * (q + 1)}"
        g, _ = coset_action(chain, h_gens, generators=gens, label=name)
        return _entry(name, {"q": q}, g,
                      Expected(index, _psl2_order(q), True, None, PUBLISHED), seed,
                      subgroup=h_gens)
    phi = line.frobenius()
    big_gens = gens + [phi]
    big = build_chain(big_gens, degree=degree)
    assert big.order() == f * chain.order()
    # find g in G with H^g = H^phi; then phi g^-1 normalizes H
    h_elems = frozenset(h_chain.elements())
    target = frozenset(conjugate(x, phi) for x in h_elems)
    seen = {h_elems: identity_tuple(degree)}
    frontier = [h_elems]
    found = None
    while frontier and found is None:
        nxt = []
        for k in frontier:
            for a in gens:
                k2 = frozenset(conjugate(x, a) for x in k)
                if k2 not in seen:
                    seen[k2] = mul(seen[k], a)
                    nxt.append(k2)
                    if k2 == target:
                        found = seen[k2]
                        break
            if found is not None:
                break
        frontier = nxt
    if target == h_elems:
        found = identity_tuple(degree)
    if found is None:
        raise SearchExhausted("H^phi is not conjugate to H in G")
    n_elem = mul(phi, inv(found))
    assert frozenset(conjugate(x, n_elem) for x in h_elems) == h_elems
    n_gens = h_gens + [n_elem]
    name = f"PGammaL2({q}) on cosets of N(D{2 * (q + 1)})"
    g, _ = coset_action(big, n_gens, generators=big_gens, label=name)
    return _entry(name, {"q": q, "extended": 1}, g,
                  Expected(index, f * _psl2_order(q), None, None, COMPUTED), seed,
                  subgroup=n_gens)


def dihedral_conjugates(q: int, seed: int = 0) -> tuple[list[frozenset], list[tuple]]:
    """The conjugates of the dihedral subgroup in SL2(q) (as element sets) and
    the involutions of G."""
    line, gens = _sl2_even(q)
    degree = q + 1
    chain = build_chain(gens, degree=degree)
    s, t = _dihedral_subgroup(chain, q, random.Random(seed))
    h = _element_set([s, t], degree)
    seen = {h}
    frontier = [h]
    while frontier:
        nxt = []
        for k in frontier:
            for a in gens:
                k2 = frozenset(conjugate(x, a) for x in k)
                if k2 not in seen:
                    seen.add(k2)
                    nxt.append(k2)
        frontier = nxt
    involutions = [x for x in chain.elements() if element_order(x) == 2]
    return sorted(seen, key=lambda k: sorted(k)), involutions


def pair_decomposition_action(q: int) -> AtlasEntry:
    """PGammaL2(q), q = 2^p, on unordered pairs of distinct projective points."""
    p, f = prime_power(q)
    if p != 2 or not _is_prime(f):
        raise AtlasError("q must be 2^p with p prime")
    entry = projective_group(q, f"PGammaL2({q})")
    src = entry.group
    pairs = k_subsets(q + 1, 2)
    domain = LabeledDomain.from_objects(pairs)
    name = f"PGammaL2({q}) on point pairs"
    return _entry(name, {"q": q}, ActionGroup(src, domain, on_sets, name),
                  Expected(math.comb(q + 1, 2), f * _psl2_order(q), True, None, PUBLISHED))


def subfield_coset_action(q0: int) -> AtlasEntry:
    """SL2(q0^2) on the cosets of SL2(q0) embedded through the subfield."""
    if q0 != 4:
        raise AtlasError("only q0 = 4 is supported")
    q = q0 * q0
    line, gens = _sl2_even(q)
    ctx = line.ctx
    mu = ctx.pow(ctx.primitive, (q - 1) // (q0 - 1))
    h_gens = [line.translation(), line.scaling(ctx.mul(mu, mu)), line.inversion()]
    chain = build_chain(gens, degree=q + 1)
    assert build_chain(h_gens, degree=q + 1).order() == _psl2_order(q0)
    name = f"SL2({q}) on cosets of SL2({q0})"
    g, _ = coset_action(chain, h_gens, generators=gens, label=name)
    return _entry(name, {"q0": q0}, g,
                  Expected(_psl2_order(q) // _psl2_order(q0), _psl2_order(q), True, None, PUBLISHED),
                  subgroup=h_gens)


def small_coset_action(parent: str) -> AtlasEntry:
    """Alt(6) or Sym(6) on the six cosets of PSL2(5) or PGL2(5)."""
    g = _parent(parent, 6)
    line = ProjectiveLine(field_create(5))
    sub = line.psl_generators()
    if parent == "sym":
        sub = sub + [line.scaling(line.ctx.primitive)]
    chain = build_chain(g)
    name = f"{g.label} on cosets of {'PGL2(5)' if parent == 'sym' else 'PSL2(5)'}"
    h, _ = coset_action(chain, sub, generators=g.gen_tuples, label=name)
    return _entry(name, {"parent": parent}, h,
                  Expected(6, chain.order(), True, None, PUBLISHED), subgroup=sub)


# -- Mathieu groups ---------------------------------------------------------------

MATHIEU = ("M11", "M12", "M22", "M23", "M24")


def mathieu(name: str) -> AtlasEntry:
    if name not in MATHIEU:
        raise AtlasError(f"unknown Mathieu group {name!r}")
    try:
        text = resources.files("ibisgroups.data").joinpath(f"{name.lower()}.json").read_text()
        doc = json.loads(text)
        g = group_from_dict(doc)
    except (OSError, ValueError) as exc:
        raise AtlasError(f"data file for {name} missing or corrupt: {exc}") from None
    order = doc["order"]
    a = build_chain(g).order()
    b = build_chain(g, base_hint=range(g.degree - 1, -1, -1)).order()
    if not a == b == order:
        raise AtlasError(f"{name}: chain orders {a}, {b}, expected {order}")
    return _entry(name, {}, g, Expected(g.degree, order, True, None, PUBLISHED))


# -- Alt(7) of degree 15 ------------------------------------------------------------

def equivalent_actions(g1: GeneratedGroup, g2: GeneratedGroup) -> tuple | None:
    """A bijection pi with pi(x^s1) = pi(x)^s2 for corresponding generators,
    or None.  Both groups must be transitive."""
    if g1.degree != g2.degree or len(g1.generators) != len(g2.generators):
        return None
    n = g1.degree
    a, b = g1.gen_tuples, g2.gen_tuples
    for y0 in range(n):
        pi = {0: y0}
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for s1, s2 in zip(a, b):
                x2, y2 = s1[x], s2[pi[x]]
                if x2 in pi:
                    if pi[x2] != y2:
                        ok = False
                        break
                else:
                    pi[x2] = y2
                    stack.append(x2)
        if ok and len(pi) == n and len(set(pi.values())) == n:
            return tuple(pi[x] for x in range(n))
    return None


def _find_alt7(seed: int, tries: int = 5000) -> tuple[list[tuple], int]:
    sl4 = sl_n_2_on_vectors(4)
    chain = sl4.chain()
    rng = random.Random(seed)
    for attempt in range(tries):
        pair = [chain.random_tuple(rng), chain.random_tuple(rng)]
        sub = build_chain(pair, degree=15)
        if sub.order() == 2520:
            return pair, attempt
    raise SearchExhausted(f"no Alt(7) found in {tries} tries")


def alt7_degree15(variant: str = "points", seed: int = 0) -> AtlasEntry:
    """Alt(7) inside SL4(2) = Alt(8), acting on nonzero vectors or on hyperplanes.

    The subgroup is a random two-generated subgroup of order 2520; the only
    such subgroups of Alt(8) are copies of Alt(7).
    """
    if variant not in ("points", "hyperplanes"):
        raise AtlasError("variant must be 'points' or 'hyperplanes'")
    gens, attempt = _find_alt7(seed)
    on_vec = GeneratedGroup(15, tuple(gens), "Alt(7) on vectors", _vector_domain(4))
    g = on_vec if variant == "points" else on_hyperplanes(on_vec, 4, "Alt(7) on hyperplanes")
    return _entry(g.label, {"variant": variant}, g,
                  Expected(15, 2520, True, None, PUBLISHED), seed, attempts=attempt + 1)


# -- diagonal type ------------------------------------------------------------------

def diagonal_psl2(f: int) -> AtlasEntry:
    """T x T acting on T = PSL2(2^f) by t -> a^-1 t b."""
    if f not in (2, 3):
        raise AtlasError("f must be 2 or 3")
    q = 2**f
    _, gens = _sl2_even(q)
    m = q + 1
    t_chain = build_chain(gens, degree=m)
    elems = sorted(t_chain.elements())
    domain = LabeledDomain.from_objects(elems)
    ident = identity_tuple(m)
    src_gens = []
    for s in gens:
        src_gens.append(s + tuple(x + m for x in ident))
        src_gens.append(ident + tuple(x + m for x in s))
    src = GeneratedGroup(2 * m, tuple(src_gens), f"PSL2({q}) x PSL2({q})")

    def action(t, g):
        a = g[:m]
        b = tuple(x - m for x in g[m:])
        return mul(mul(inv(a), t), b)

    name = f"PSL2({q}) x PSL2({q}) on PSL2({q})"
    order = _psl2_order(q) ** 2
    return _entry(name, {"f": f}, ActionGroup(src, domain, action, name),
                  Expected(len(elems), order, True if f == 2 else None, None, PUBLISHED))


# -- explicit sequences -----------------------------------------------------------------

def _subset(*pts) -> tuple:
    return tuple(sorted(x - 1 for x in pts))


def _partition(*blocks) -> tuple:
    return tuple(sorted(tuple(sorted(x - 1 for x in b)) for b in blocks))


def subset_chain(parent: str, n: int, k: int) -> list[tuple]:
    """The alpha-then-beta chain of k-subsets (1-indexed construction)."""
    if k == 2:
        seq = [_subset(1, i) for i in range(2, n - 1)]
        if parent == "sym":
            seq.append(_subset(1, n))
        return seq
    head = list(range(1, k))
    seq = [_subset(*head, j) for j in range(k, n)]
    tail = list(range(k, 2 * k - 1))
    last = k - 2 if parent == "sym" else k - 3
    seq += [_subset(i, *tail) for i in range(1, last + 1)]
    return seq


def partition_chain_a2(b: int) -> list[tuple]:
    """Four (2,b)-partitions; the fourth pairs 7 with 2 so that it is a partition."""
    rest = [(2 * i + 1, 2 * i + 2) for i in range(4, b)]
    return [
        _partition((1, 2), (3, 4), (5, 6), (7, 8), *rest),
        _partition((1, 4), (3, 2), (5, 6), (7, 8), *rest),
        _partition((1, 6), (3, 4), (5, 2), (7, 8), *rest),
        _partition((1, 8), (3, 4), (5, 6), (7, 2), *rest),
    ]


def partition_chain(a: int, b: int) -> list[tuple]:
    """alpha_1, then for each pair of consecutive blocks the a - 1 partitions
    obtained by swapping one point between the two blocks."""
    blocks = [list(range(i * a + 1, (i + 1) * a + 1)) for i in range(b)]
    seq = [_partition(*blocks)]
    for pair in range(b // 2):
        left, right = 2 * pair, 2 * pair + 1
        for i in range(a - 1):
            bs = [list(x) for x in blocks]
            bs[left][i], bs[right][i] = bs[right][i], bs[left][i]
            seq.append(_partition(*bs))
    return seq


WITNESS_CASES = {
    "sym8-3subsets-long": ("sym", 8, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 2, 7), (1, 3, 4)]),
    "sym8-3subsets-short": ("sym", 8, 3, [(1, 2, 3), (4, 5, 6), (1, 4, 7), (2, 5, 8)]),
    "alt8-3subsets-long": ("alt", 8, 3, [(1, 2, 3), (4, 5, 6), (1, 4, 7), (2, 5, 8)]),
    "alt8-3subsets-short": ("alt", 8, 3, [(1, 2, 3), (1, 4, 5), (2, 3, 6)]),
}


def paper_witnesses(case: str, **params) -> tuple[AtlasEntry, list[int]]:
    """An entry and an explicit point sequence for it.

    Cases: the four fixed 3-subset sequences in ``WITNESS_CASES``,
    ``subset-chain`` (parent, n, k), ``partitions-a2-chain`` (parent, b)
    and ``partitions-chain`` (parent, a, b).
    """
    if case in WITNESS_CASES:
        parent, n, k, sets = WITNESS_CASES[case]
        entry = on_k_subsets(parent, n, k)
        return entry, entry.domain.points(_subset(*s) for s in sets)
    parent = params.get("parent", "sym")
    if case == "subset-chain":
        n, k = params["n"], params["k"]
        entry = on_k_subsets(parent, n, k)
        return entry, entry.domain.points(subset_chain(parent, n, k))
    if case == "partitions-a2-chain":
        b = params["b"]
        if b < 4:
            raise AtlasError("the chain needs b >= 4")
        entry = on_partitions(parent, 2, b)
        return entry, entry.domain.points(partition_chain_a2(b))
    if case == "partitions-chain":
        a, b = params["a"], params["b"]
        entry = on_partitions(parent, a, b)
        return entry, entry.domain.points(partition_chain(a, b))
    raise AtlasError(f"unknown witness case {case!r}")


# -- registry used by the command line ------------------------------------------------

def _int(v) -> int:
    return int(v)


BUILDERS: dict[str, tuple[Callable, tuple]] = {
    "sym": (sym, ("n",)),
    "alt": (alt, ("n",)),
    "k-subsets": (on_k_subsets, ("parent", "n", "k")),
    "partitions": (on_partitions, ("parent", "a", "b")),
    "projective": (projective_group, ("q", "name")),
    "sl-vectors": (sl_n_2_on_vectors, ("n",)),
    "sl-hyperplanes": (sl_n_2_on_hyperplanes, ("n",)),
    "sp-vectors": (sp_n_2_on_vectors, ("n",)),
    "sp4-derived": (sp4_2_derived, ()),
    "dihedral-cosets": (dihedral_coset_action, ("q",)),
    "dihedral-cosets-extended": (lambda q: dihedral_coset_action(q, extended=True), ("q",)),
    "point-pairs": (pair_decomposition_action, ("q",)),
    "subfield-cosets": (subfield_coset_action, ("q0",)),
    "small-cosets": (small_coset_action, ("parent",)),
    "mathieu": (mathieu, ("name",)),
    "alt7": (alt7_degree15, ("variant",)),
    "diagonal": (diagonal_psl2, ("f",)),
}

_STRING_PARAMS = {"parent", "name", "variant"}


def build(kind: str, *args: str) -> AtlasEntry:
    """Build an entry from command-line style arguments."""
    if kind not in BUILDERS:
        raise AtlasError(f"unknown atlas entry {kind!r}")
    fn, names = BUILDERS[kind]
    if len(args) != len(names):
        raise AtlasError(f"{kind} takes parameters {', '.join(names) or '(none)'}")
    values = [a if n in _STRING_PARAMS else _int(a) for n, a in zip(names, args)]
    return fn(*values)
