"""Stabilizer chains (base and strong generating set) and what they give.

Chains are built by Schreier-Sims.  Without extra information the
deterministic variant is used: every Schreier generator is sifted.  When an
upper bound on the group order is known (a parent chain, an order formula),
uniformly random elements are sifted until the chain reaches that order;
hitting the bound exactly is itself a proof that the chain is complete.  If
the bound is never reached the deterministic completion runs on top, so the
result is exact either way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import (ActionGroup, GeneratedGroup, LabeledDomain, Permutation, DegreeError,
                   identity_tuple, inv, mul)

DEFAULT_INDEX_BOUND = 10**6

# consecutive sifts-to-identity before random filling gives up on a bound
_RANDOM_PATIENCE = 40


class NotSubgroupError(ValueError):
    pass


class IndexTooLargeError(ValueError):
    pass


class IntransitiveError(ValueError):
    pass


class StabilizerChain:
    """Base points, strong generators per level and explicit transversals.

    ``gens[i]`` generates the pointwise stabilizer of ``base[:i]``;
    ``trans[i][x]`` maps ``base[i]`` to ``x`` and ``tinv[i][x]`` is its inverse.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.ident = identity_tuple(degree)
        self.base: list[int] = []
        self.gens: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.tinv: list[dict[int, tuple]] = []
        self.orbit_lists: list[list[int]] = []
        self._checked: list[set] = []

    # -- construction internals ------------------------------------------

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self.ident})
        self.tinv.append({point: self.ident})
        self.orbit_lists.append([point])
        self._checked.append(set())

    def _add_gen(self, level: int, g: tuple) -> None:
        gens = self.gens[level]
        gens.append(g)
        trans, tinv, orbit = self.trans[level], self.tinv[level], self.orbit_lists[level]
        queue = []
        for x in orbit:
            y = g[x]
            if y not in trans:
                u = mul(trans[x], g)
                trans[y] = u
                tinv[y] = inv(u)
                orbit.append(y)
                queue.append(y)
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for s in gens:
                y = s[x]
                if y not in trans:
                    u = mul(trans[x], s)
                    trans[y] = u
                    tinv[y] = inv(u)
                    orbit.append(y)
                    queue.append(y)

    def _first_moved(self, g: tuple) -> int:
        for i, x in enumerate(g):
            if i != x:
                return i
        raise ValueError("identity has no moved point")

    def _insert_residue(self, h: tuple, start: int, stop: int) -> None:
        """Add residue ``h`` (which fixes base[:stop]) to levels start..stop."""
        if stop == len(self.base):
            self._add_level(self._first_moved(h))
        for level in range(start, stop + 1):
            self._add_gen(level, h)

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        """Strip g through the chain; returns (residue, level where it stopped)."""
        base, tinv = self.base, self.tinv
        for level in range(start, len(base)):
            b = base[level]
            x = g[b]
            if x == b:
                continue
            t = tinv[level].get(x)
            if t is None:
                return g, level
            g = mul(g, t)
        return g, len(base)

    def _schreier_sims(self) -> None:
        """Deterministic completion: sift every Schreier generator."""
        ident = self.ident
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            checked = self._checked[i]
            trans, tinv, gens = self.trans[i], self.tinv[i], self.gens[i]
            for x in list(self.orbit_lists[i]):
                u = trans[x]
                for k, s in enumerate(gens):
                    if (x, k) in checked:
                        continue
                    checked.add((x, k))
                    sg = mul(mul(u, s), tinv[s[x]])
                    if sg == ident:
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or h != ident:
                        self._insert_residue(h, i + 1, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def _random_fill(self, source, target: int) -> bool:
        """Sift random group elements until the order reaches ``target``."""
        ident = self.ident
        misses = 0
        while self.order() < target:
            h, j = self.sift(source())
            if j < len(self.base) or h != ident:
                self._insert_residue(h, 0, j)
                misses = 0
            else:
                misses += 1
                if misses > _RANDOM_PATIENCE:
                    return False
        return self.order() == target

    def _drop_trivial_levels(self) -> None:
        keep = [i for i in range(len(self.base)) if len(self.orbit_lists[i]) > 1]
        for name in ("base", "gens", "trans", "tinv", "orbit_lists", "_checked"):
            seq = getattr(self, name)
            setattr(self, name, [seq[i] for i in keep])

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for orb in self.orbit_lists:
            n *= len(orb)
        return n

    def __len__(self) -> int:
        return len(self.base)

    def contains_tuple(self, g: tuple) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and h == self.ident

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeError(f"permutation of degree {p.degree} tested against a chain of degree {self.degree}")
        return self.contains_tuple(p.images)

    def strong_generators(self) -> list[tuple]:
        return list(self.gens[0]) if self.gens else []

    def level_orders(self) -> list[int]:
        """|G|, |G_b1|, |G_b1,b2|, ... down to 1."""
        out = [1]
        for orb in reversed(self.orbit_lists):
            out.append(out[-1] * len(orb))
        return out[::-1]

    def random_tuple(self, rng: random.Random) -> tuple:
        """A uniformly distributed group element."""
        g = self.ident
        for level in range(len(self.base) - 1, -1, -1):
            orbit = self.orbit_lists[level]
            g = mul(g, self.trans[level][orbit[rng.randrange(len(orbit))]])
        return g

    def elements(self):
        """Iterate over every element (small groups only)."""
        def rec(level, acc):
            if level < 0:
                yield acc
                return
            for x in self.orbit_lists[level]:
                yield from rec(level - 1, mul(acc, self.trans[level][x]))
        yield from rec(len(self.base) - 1, self.ident)

    def group(self, label: str = "", domain: LabeledDomain | None = None) -> GeneratedGroup:
        return GeneratedGroup(self.degree, tuple(Permutation(g, check=False) for g in self.strong_generators()),
                              label, domain)

    def fixed_points(self) -> set[int]:
        gens = self.strong_generators()
        return {x for x in range(self.degree) if all(g[x] == x for g in gens)}

    def stabilizer_chain(self, x: int, seed: int = 0, action: Action | None = None) -> StabilizerChain:
        """Chain of the stabilizer of ``x``, built from uniform random elements.

        With an ``action`` the point x lives in that action's domain while the
        chain stays in its own (smaller) degree.
        """
        gens = self.strong_generators()
        if action is None:
            igens = gens
            image = lambda g: g[x]
        else:
            igens = [action.induced(s) for s in gens]
            image = lambda g: action.image(x, g)
        orbit = schreier_vector(igens, x)
        target = self.order() // len(orbit)
        ginv = [inv(g) for g in gens]
        rng = random.Random(seed * 1_000_003 + x)

        def source():
            g = self.random_tuple(rng)
            return trace_back(g, image(g), orbit, ginv)

        child = StabilizerChain(self.degree)
        for b in self.base:
            if action is not None or b != x:
                child._add_level(b)
        if target > 1 and not child._random_fill(source, target):
            # unlucky sampling: Schreier generators plus deterministic completion
            for y in orbit:
                u = transversal_element(y, orbit, gens, self.degree)
                for k, s in enumerate(gens):
                    sg = trace_back(mul(u, s), igens[k][y], orbit, ginv)
                    if sg != self.ident:
                        h, j = child.sift(sg)
                        if j < len(child.base) or h != self.ident:
                            child._insert_residue(h, 0, j)
            child._schreier_sims()
        child._drop_trivial_levels()
        return child


class Action:
    """The natural action: points are the chain's own points."""

    def __init__(self, degree: int):
        self.degree = degree

    def image(self, x: int, g: tuple) -> int:
        return g[x]

    def induced(self, g: tuple) -> tuple:
        return g


class InducedAction(Action):
    """Action on a labeled domain through an object-level action function."""

    def __init__(self, domain: LabeledDomain, object_action):
        super().__init__(len(domain))
        self.objects = domain.objects
        self.index = domain.index
        self.fn = object_action
        self._cache: dict[tuple, tuple] = {}

    def image(self, x: int, g: tuple) -> int:
        return self.index[self.fn(self.objects[x], g)]

    def induced(self, g: tuple) -> tuple:
        out = self._cache.get(g)
        if out is None:
            index, fn = self.index, self.fn
            out = tuple([index[fn(obj, g)] for obj in self.objects])
            if len(self._cache) > 4096:
                self._cache.clear()
            self._cache[g] = out
        return out


def schreier_vector(gens: Sequence[tuple], x: int) -> dict[int, tuple[int, int]]:
    """Orbit of x with BFS parent pointers: point -> (previous point, generator index)."""
    orbit = {x: (-1, -1)}
    queue = [x]
    i = 0
    while i < len(queue):
        y = queue[i]
        i += 1
        for k, g in enumerate(gens):
            z = g[y]
            if z not in orbit:
                orbit[z] = (y, k)
                queue.append(z)
    return orbit


def trace_back(g: tuple, y: int, orbit: dict, ginv: Sequence[tuple]) -> tuple:
    """Multiply g on the right by a word carrying y back to the orbit root."""
    while True:
        prev, k = orbit[y]
        if k < 0:
            return g
        g = mul(g, ginv[k])
        y = prev


def transversal_element(y: int, orbit: dict, gens: Sequence[tuple], degree: int) -> tuple:
    """An element mapping the orbit root to y."""
    word = []
    while True:
        prev, k = orbit[y]
        if k < 0:
            break
        word.append(k)
        y = prev
    g = identity_tuple(degree)
    for k in reversed(word):
        g = mul(g, gens[k])
    return g


def _product_replacement(gens: Sequence[tuple], degree: int, rng: random.Random):
    """Random element source by product replacement (seeded, deterministic)."""
    state = list(gens) or [identity_tuple(degree)]
    while len(state) < 10:
        state.append(state[len(state) % max(1, len(gens))] if gens else identity_tuple(degree))
    acc = identity_tuple(degree)
    for _ in range(50):
        i, j = rng.sample(range(len(state)), 2)
        state[i] = mul(state[i], state[j])
        acc = mul(acc, state[i])

    def source():
        nonlocal acc
        i, j = rng.sample(range(len(state)), 2)
        state[i] = mul(state[i], state[j])
        acc = mul(acc, state[i])
        return acc

    return source


def build_chain(g: GeneratedGroup | Sequence[tuple], base_hint: Iterable[int] = (),
                order_hint: int | None = None, seed: int = 0,
                degree: int | None = None) -> StabilizerChain:
    """Build a verified stabilizer chain.

    ``base_hint`` points are used first (points fixed by the stabilizer of the
    earlier ones are skipped).  ``order_hint`` is an upper bound on the order,
    e.g. the order of a group this one is a quotient or subgroup of; it only
    speeds things up.
    """
    if isinstance(g, GeneratedGroup):
        degree = g.degree
        gens = g.gen_tuples
    else:
        gens = [tuple(x) for x in g]
        if degree is None:
            if not gens:
                raise ValueError("degree is required when there are no generators")
            degree = len(gens[0])
    chain = StabilizerChain(degree)
    ident = chain.ident
    gens = [s for s in gens if s != ident]
    for b in base_hint:
        if b not in chain.base:
            chain._add_level(b)
    for s in gens:
        if all(s[b] == b for b in chain.base):
            chain._add_level(chain._first_moved(s))
    for s in gens:
        for level in range(len(chain.base)):
            chain._add_gen(level, s)
            if s[chain.base[level]] != chain.base[level]:
                break
    if order_hint is not None and gens:
        source = _product_replacement(gens, degree, random.Random(seed))
        if not chain._random_fill(source, order_hint):
            chain._schreier_sims()
    else:
        chain._schreier_sims()
    chain._drop_trivial_levels()
    return chain


def _as_chain(g) -> StabilizerChain:
    return g if isinstance(g, StabilizerChain) else build_chain(g)


def order(c: StabilizerChain | GeneratedGroup) -> int:
    return _as_chain(c).order()


def contains(c: StabilizerChain, p: Permutation) -> bool:
    return c.contains(p)


def point_stabilizer(g: GeneratedGroup | StabilizerChain, x: int) -> GeneratedGroup:
    chain = _as_chain(g)
    if not 0 <= x < chain.degree:
        raise DegreeError(f"point {x} outside 0..{chain.degree - 1}")
    label = f"{g.label}_{x + 1}" if isinstance(g, GeneratedGroup) and g.label else ""
    domain = g.domain if isinstance(g, GeneratedGroup) else None
    return chain.stabilizer_chain(x).group(label, domain)


def pointwise_stabilizer_chain(g: GeneratedGroup | StabilizerChain, xs: Sequence[int]) -> StabilizerChain:
    chain = _as_chain(g)
    for x in xs:
        if not 0 <= x < chain.degree:
            raise DegreeError(f"point {x} outside 0..{chain.degree - 1}")
        chain = chain.stabilizer_chain(x)
    return chain


def pointwise_stabilizer(g: GeneratedGroup | StabilizerChain, xs: Sequence[int]) -> GeneratedGroup:
    domain = g.domain if isinstance(g, GeneratedGroup) else None
    if not xs and isinstance(g, GeneratedGroup):
        return g
    return pointwise_stabilizer_chain(g, xs).group(domain=domain)


def fixed_points(g: GeneratedGroup) -> set[int]:
    gens = g.gen_tuples
    return {x for x in range(g.degree) if all(s[x] == x for s in gens)}


@dataclass(frozen=True)
class OrbitPartition:
    representatives: tuple
    cells: tuple

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells]

    def cell_of(self, x: int) -> frozenset:
        for c in self.cells:
            if x in c:
                return c
        raise KeyError(x)


def orbit_cells(gens: Sequence[tuple], degree: int) -> list[list[int]]:
    """Orbits as sorted lists, ordered by least point."""
    seen = bytearray(degree)
    cells = []
    for x in range(degree):
        if seen[x]:
            continue
        seen[x] = 1
        cell = [x]
        i = 0
        while i < len(cell):
            y = cell[i]
            i += 1
            for s in gens:
                z = s[y]
                if not seen[z]:
                    seen[z] = 1
                    cell.append(z)
        cell.sort()
        cells.append(cell)
    return cells


def orbits(g: GeneratedGroup | StabilizerChain) -> OrbitPartition:
    if isinstance(g, StabilizerChain):
        gens, degree = g.strong_generators(), g.degree
    else:
        gens, degree = g.gen_tuples, g.degree
    cells = orbit_cells(gens, degree)
    return OrbitPartition(tuple(c[0] for c in cells), tuple(frozenset(c) for c in cells))


def is_transitive(g: GeneratedGroup) -> bool:
    return g.degree <= 1 or len(orbit_cells(g.gen_tuples, g.degree)) == 1


def minimal_block(gens: Sequence[tuple], degree: int, a: int, b: int) -> list[int]:
    """Block partition (as a class-label list) generated by merging a and b."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for s in gens:
            u, v = find(s[x]), find(s[y])
            if u != v:
                parent[v] = u
                queue.append((u, v))
    return [find(x) for x in range(degree)]


def block_systems_through(g: GeneratedGroup, chain: StabilizerChain | None = None) -> list[list[int]]:
    """Minimal blocks containing point 0 and one representative of each G_0-orbit."""
    if not is_transitive(g):
        raise IntransitiveError("block systems need a transitive group")
    if g.degree <= 2:
        return []
    chain = chain or build_chain(g)
    stab = chain.stabilizer_chain(0)
    reps = [c[0] for c in orbit_cells(stab.strong_generators(), g.degree) if c[0] != 0]
    gens = g.gen_tuples
    blocks = []
    for b in reps:
        labels = minimal_block(gens, g.degree, 0, b)
        root = labels[0]
        blocks.append(sorted(x for x in range(g.degree) if labels[x] == root))
    return blocks


def is_primitive(g: GeneratedGroup, chain: StabilizerChain | None = None) -> bool:
    """Transitive with no block system other than the trivial ones."""
    if not is_transitive(g):
        raise IntransitiveError("primitivity is only defined for transitive groups")
    if g.degree <= 2:
        return True
    return all(len(block) == g.degree for block in block_systems_through(g, chain))


def _coset_canonizer(g_chain: StabilizerChain, h_chain: StabilizerChain):
    """Function sending an element y of G to a canonical key for the coset Hy.

    The representative of Hy whose images of G's base are lexicographically
    least is found level by level through H's chain, whose base is a
    subsequence of G's base.
    """
    levels = []
    for i, b in enumerate(h_chain.base):
        levels.append((b, h_chain.orbit_lists[i], h_chain.trans[i]))
    gbase = g_chain.base

    def canon(y: tuple) -> tuple[tuple, tuple]:
        for b, orbit, trans in levels:
            best = min(orbit, key=y.__getitem__)
            if best != b:
                y = mul(trans[best], y)
        return tuple(y[b] for b in gbase), y

    return canon


def coset_action(g_chain: StabilizerChain, h: GeneratedGroup | Sequence[tuple],
                 generators: Sequence[tuple] | None = None,
                 index_bound: int = DEFAULT_INDEX_BOUND,
                 label: str = "") -> tuple[GeneratedGroup, LabeledDomain]:
    """Action of G on the right cosets of a subgroup H.

    Points are cosets, labelled by the base images of their canonical
    representative; the coset H itself is point 0.  ``generators`` defaults
    to G's strong generators; pass the original ones to keep the image small.
    """
    h_gens = h.gen_tuples if isinstance(h, GeneratedGroup) else [tuple(x) for x in h]
    for s in h_gens:
        if not g_chain.contains_tuple(s):
            raise NotSubgroupError("a generator of H is not in G")
    h_chain = build_chain(h_gens, base_hint=g_chain.base, degree=g_chain.degree,
                          order_hint=None)
    index, rem = divmod(g_chain.order(), h_chain.order())
    assert rem == 0
    if index > index_bound:
        raise IndexTooLargeError(f"index {index} exceeds bound {index_bound}")
    gens = list(generators) if generators is not None else g_chain.strong_generators()
    canon = _coset_canonizer(g_chain, h_chain)
    key0, rep0 = canon(g_chain.ident)
    keys = {key0: 0}
    reps = [rep0]
    images = [[] for _ in gens]
    i = 0
    while i < len(reps):
        y = reps[i]
        for k, s in enumerate(gens):
            key, rep = canon(mul(y, s))
            j = keys.get(key)
            if j is None:
                j = len(reps)
                keys[key] = j
                reps.append(rep)
            images[k].append(j)
        i += 1
    assert len(reps) == index, (len(reps), index)
    domain = LabeledDomain.from_objects(keys)
    perms = tuple(Permutation(im, check=False) for im in images)
    return GeneratedGroup(index, perms, label, domain), domain


def conjugate(x: tuple, g: tuple) -> tuple:
    """x^g = g^-1 x g."""
    return mul(mul(inv(g), x), g)


def normal_closure(gens: Sequence[tuple], ambient: Sequence[tuple], degree: int) -> StabilizerChain:
    """Chain of the smallest subgroup containing ``gens`` and normalized by ``ambient``."""
    chain = build_chain(list(gens), degree=degree)
    queue = list(chain.strong_generators())
    while queue:
        x = queue.pop()
        for a in ambient:
            y = conjugate(x, a)
            if not chain.contains_tuple(y):
                chain = build_chain(chain.strong_generators() + [y], degree=degree)
                queue.append(y)
    return chain


def derived_subgroup(g: GeneratedGroup) -> GeneratedGroup:
    """The commutator subgroup, as the normal closure of generator commutators."""
    gens = g.gen_tuples
    comms = [mul(mul(inv(a), inv(b)), mul(a, b)) for a in gens for b in gens]
    chain = normal_closure([c for c in comms if c != identity_tuple(g.degree)], gens, g.degree)
    return chain.group(g.label + "'" if g.label else "", g.domain)
