"""Irredundant bases: checking, sampling, exact min/max search and the IBIS test.

The exact searches walk a tree of pointwise stabilizers.  From a stabilizer
K the search only branches on one point per K-orbit: two points in the same
K-orbit give conjugate stabilizers, so the sets of possible completion
lengths agree.  Nodes are shared by fixed-point set, because the pointwise
stabilizer of a sequence only depends on the set of points it fixes.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .perm import ActionGroup, GeneratedGroup, closure, identity_tuple, mul
from .stabchain import (Action, InducedAction, StabilizerChain, build_chain, orbit_cells,
                        schreier_vector, transversal_element)

AnyGroup = GeneratedGroup | ActionGroup

DEFAULT_BUDGET = 10**8
DEFAULT_SAMPLES = 200


def default_budget() -> int:
    env = os.environ.get("IBIS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search finished.

    ``lower``/``upper`` bound the quantity searched for; ``witness`` is the
    best sequence found so far.
    """

    def __init__(self, what: str, lower: int, upper: int, witness, nodes: int):
        super().__init__(f"{what}: budget exhausted after {nodes} nodes, value in [{lower}, {upper}]")
        self.what = what
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.nodes = nodes


class NotABaseError(ValueError):
    pass


class NotIBISError(ValueError):
    pass


@dataclass(frozen=True)
class IrredundantSequence:
    points: tuple
    orders: tuple  # |G|, then the stabilizer order after each point

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_base(self) -> bool:
        return self.orders[-1] == 1


@dataclass(frozen=True)
class IbisVerdict:
    min_size: int
    max_size: int
    is_ibis: bool
    min_witness: IrredundantSequence
    max_witness: IrredundantSequence
    method: str  # "exact" or "sampled-refutation"
    nodes_explored: int = 0
    order: int = 1

    def to_dict(self, g: GeneratedGroup, seed: int | None = None) -> dict:
        doc = {
            "group": g.label,
            "degree": g.degree,
            "order": self.order,
            "min": self.min_size,
            "max": self.max_size,
            "ibis": self.is_ibis,
            "method": self.method,
            "witnesses": {
                "min": [x + 1 for x in self.min_witness.points],
                "max": [x + 1 for x in self.max_witness.points],
            },
            "nodes_explored": self.nodes_explored,
        }
        if seed is not None:
            doc["seed"] = seed
        return doc


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    count, d = 0, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (n > 1)


# -- bound table ---------------------------------------------------------------

def kappa2(n: int) -> int:
    """Base size of Sym(n) on 2-subsets."""
    return -(-2 * (n - 1) // 3)


def kappa3(n: int) -> int:
    """Base size bound for Sym(n) on k-subsets, k >= 3; valid for n >= 9."""
    if n < 9:
        raise ValueError("kappa3 is only valid for n >= 9")
    return -(-(n - 1) // 2)


def partition_bound(a: int, b: int) -> int:
    """ceil(log_b(a + 3)) + 1, computed in integers."""
    t, power = 0, 1
    while power < a + 3:
        power *= b
        t += 1
    return t + 1


# -- the stabilizer tree -------------------------------------------------------

def setup(g: AnyGroup | StabilizerChain) -> tuple[StabilizerChain, Action]:
    """Chain in the group's own degree plus the action on the analysed points."""
    if isinstance(g, StabilizerChain):
        return g, Action(g.degree)
    if isinstance(g, ActionGroup):
        return build_chain(g.source), InducedAction(g.domain, g.object_action)
    return build_chain(g), Action(g.degree)


class UnfaithfulActionError(ValueError):
    pass


class _Node:
    __slots__ = ("chain", "action", "order", "omega", "fixed", "cells", "children", "_svec", "_igens")

    def __init__(self, chain: StabilizerChain, action: Action):
        self.chain = chain
        self.action = action
        self.order = chain.order()
        self.omega = sum(big_omega(len(o)) for o in chain.orbit_lists)
        self._igens = [action.induced(s) for s in chain.strong_generators()]
        cells = orbit_cells(self._igens, action.degree)
        self.fixed = frozenset(c[0] for c in cells if len(c) == 1)
        self.cells = [c for c in cells if len(c) > 1]
        if self.order > 1 and not self.cells:
            raise UnfaithfulActionError("a nontrivial subgroup fixes every point")
        self.children: dict[int, _Node] = {}
        self._svec: dict[int, dict] = {}

    def max_orbit(self) -> int:
        return max((len(c) for c in self.cells), default=1)

    def moves(self, x: int) -> bool:
        return x not in self.fixed

    def transversal(self, rep: int, z: int) -> tuple:
        """An element of this stabilizer taking rep to z (in the chain's degree)."""
        if rep not in self._svec:
            self._svec[rep] = schreier_vector(self._igens, rep)
        return transversal_element(z, self._svec[rep], self.chain.strong_generators(), self.chain.degree)

    def stabilizer(self, x: int, seed: int = 0) -> _Node:
        return _Node(self.chain.stabilizer_chain(x, seed, self._action_arg()), self.action)

    def _action_arg(self):
        return None if type(self.action) is Action else self.action


class BaseSearch:
    """Shared stabilizer tree for one group; every search method reuses it.

    ``nodes_explored`` counts stabilizer computations, the unit of ``budget``.
    """

    def __init__(self, g: AnyGroup | StabilizerChain, budget: int | None = None, seed: int = 0,
                 root: _Node | None = None):
        self.group = g
        self.budget = default_budget() if budget is None else budget
        self.seed = seed
        self.nodes_explored = 0
        self.root = root or _Node(*setup(g))
        self.degree = self.root.action.degree
        self._nodes = {self.root.fixed: self.root}

    def from_prefix(self, points: Sequence[int]) -> BaseSearch:
        """A search rooted at the pointwise stabilizer of ``points``."""
        node = self.root
        for x in points:
            node = node.stabilizer(x, self.seed)
        return BaseSearch(self.group, self.budget, self.seed, root=node)

    @property
    def order(self) -> int:
        return self.root.order

    def child(self, node: _Node, rep: int, what: str = "search") -> _Node:
        c = node.children.get(rep)
        if c is not None:
            return c
        if self.nodes_explored >= self.budget:
            raise BudgetExhausted(what, 0, 0, None, self.nodes_explored)
        self.nodes_explored += 1
        fresh = node.stabilizer(rep, self.seed)
        c = self._nodes.setdefault(fresh.fixed, fresh)
        node.children[rep] = c
        return c

    def _sequence(self, points: Sequence[int], orders: Sequence[int]) -> IrredundantSequence:
        return IrredundantSequence(tuple(points), tuple(orders))

    # -- exact minimum --------------------------------------------------------

    def _lower_bound(self, node: _Node) -> int:
        if node.order == 1:
            return 0
        m = node.max_orbit()
        if m == node.order:
            return 1
        r, power = 1, m
        while power < node.order:
            power *= m
            r += 1
        return max(r, 2)

    def _greedy(self, largest: bool) -> tuple[list[int], list[int]]:
        node, points, orders = self.root, [], [self.root.order]
        while node.order > 1:
            size = (max if largest else min)(len(c) for c in node.cells)
            rep = next(c[0] for c in node.cells if len(c) == size)
            node = self.child(node, rep, "greedy descent")
            points.append(rep)
            orders.append(node.order)
        return points, orders

    def min_base(self) -> tuple[int, IrredundantSequence]:
        """Exact b(G) with a witness base; raises BudgetExhausted."""
        if self.root.order == 1:
            return 0, self._sequence([], [1])
        root_lb = self._lower_bound(self.root)
        try:
            best_pts, best_ord = self._greedy(largest=True)
        except BudgetExhausted as exc:
            raise BudgetExhausted("minimum base search", root_lb, self.root.omega, None,
                                  exc.nodes) from None
        state = {"pts": best_pts, "ord": best_ord}
        visited: dict[frozenset, int] = {}

        def dfs(node: _Node, pts: list[int], ords: list[int]) -> None:
            depth = len(pts)
            best = len(state["pts"])
            if depth >= visited.get(node.fixed, best + 1):
                return
            visited[node.fixed] = depth
            if depth + self._lower_bound(node) >= best:
                return
            for cell in node.cells:
                rep = cell[0]
                if len(cell) == node.order:
                    state["pts"], state["ord"] = pts + [rep], ords + [1]
                    return
            for cell in node.cells:
                if depth + 1 + 1 >= len(state["pts"]):
                    return
                rep = cell[0]
                child = self.child(node, rep, "minimum base search")
                dfs(child, pts + [rep], ords + [child.order])

        try:
            dfs(self.root, [], [self.root.order])
        except BudgetExhausted as exc:
            raise BudgetExhausted("minimum base search", root_lb, len(state["pts"]),
                                  self._sequence(state["pts"], state["ord"]), exc.nodes) from None
        return len(state["pts"]), self._sequence(state["pts"], state["ord"])

    # -- exact maximum --------------------------------------------------------

    def max_irredundant(self, early_exit_above: int | None = None) -> tuple[int, IrredundantSequence]:
        """Exact maximum irredundant base length, or the first one longer than
        ``early_exit_above`` when that is given."""
        if self.root.order == 1:
            return 0, self._sequence([], [1])
        try:
            best_pts, best_ord = self._greedy(largest=False)
        except BudgetExhausted as exc:
            raise BudgetExhausted("maximum irredundant base search", 1, self.root.omega, None,
                                  exc.nodes) from None
        state = {"pts": best_pts, "ord": best_ord}
        visited: dict[frozenset, int] = {}

        class _Found(Exception):
            pass

        def improve(pts, ords):
            state["pts"], state["ord"] = pts, ords
            if early_exit_above is not None and len(pts) > early_exit_above:
                raise _Found

        if early_exit_above is not None and len(best_pts) > early_exit_above:
            return len(best_pts), self._sequence(best_pts, best_ord)

        def dfs(node: _Node, pts: list[int], ords: list[int]) -> None:
            depth = len(pts)
            if depth <= visited.get(node.fixed, -1):
                return
            visited[node.fixed] = depth
            if depth + node.omega <= len(state["pts"]):
                return
            for cell in node.cells:
                rep = cell[0]
                if len(cell) == node.order:
                    if depth + 1 > len(state["pts"]):
                        improve(pts + [rep], ords + [1])
                    continue
                if depth + node.omega <= len(state["pts"]):
                    return
                child = self.child(node, rep, "maximum irredundant base search")
                if child.order == 1:
                    if depth + 1 > len(state["pts"]):
                        improve(pts + [rep], ords + [1])
                else:
                    dfs(child, pts + [rep], ords + [child.order])

        try:
            dfs(self.root, [], [self.root.order])
        except _Found:
            pass
        except BudgetExhausted as exc:
            raise BudgetExhausted("maximum irredundant base search", len(state["pts"]),
                                  self.root.omega, self._sequence(state["pts"], state["ord"]),
                                  exc.nodes) from None
        return len(state["pts"]), self._sequence(state["pts"], state["ord"])

    # -- sampling ---------------------------------------------------------------

    def sample(self, rng: random.Random) -> IrredundantSequence:
        """A random irredundant base: each point is uniform among those moved by
        the current stabilizer.

        The walk runs on orbit representatives and is carried back to actual
        points by an accumulated conjugating element, so the shared tree is
        reused across samples.
        """
        node = self.root
        conj = identity_tuple(self.root.chain.degree)
        points, orders = [], [node.order]
        while node.order > 1:
            total = sum(len(c) for c in node.cells)
            k = rng.randrange(total)
            for cell in node.cells:
                if k < len(cell):
                    break
                k -= len(cell)
            z, rep = cell[k], cell[0]
            points.append(self.root.action.image(z, conj))
            conj = mul(node.transversal(rep, z), conj)
            node = self.child(node, rep, "sampling")
            orders.append(node.order)
        return self._sequence(points, orders)


# -- public operations ---------------------------------------------------------

def _root(g) -> _Node:
    if isinstance(g, BaseSearch):
        return g.root
    if isinstance(g, _Node):
        return g
    return _Node(*setup(g))


def is_irredundant(g, pts: Sequence[int]) -> IrredundantSequence | int:
    """The annotated sequence if every point is moved by the stabilizer of its
    predecessors, otherwise the index of the first redundant point.

    Stabilizers are recomputed from scratch along the sequence, independent of
    any search tree.  ``g`` may be a group, an ActionGroup, a chain or a search.
    """
    node = _root(g)
    orders = [node.order]
    for i, x in enumerate(pts):
        if not 0 <= x < node.action.degree:
            raise ValueError(f"point {x} out of range")
        if not node.moves(x):
            return i
        node = node.stabilizer(x)
        orders.append(node.order)
    return IrredundantSequence(tuple(pts), tuple(orders))


def strip_redundant(g, pts: Sequence[int]) -> IrredundantSequence:
    """Drop every point fixed by the stabilizer of the points kept before it."""
    node = _root(g)
    kept, orders = [], [node.order]
    for x in pts:
        if node.moves(x):
            node = node.stabilizer(x)
            kept.append(x)
            orders.append(node.order)
    if node.order != 1:
        raise NotABaseError("the given points do not form a base")
    return IrredundantSequence(tuple(kept), tuple(orders))


def random_irredundant_base(g, seed: int, search: BaseSearch | None = None) -> IrredundantSequence:
    search = search or BaseSearch(g)
    return search.sample(random.Random(seed))


def min_base_size(g, budget: int | None = None,
                  search: BaseSearch | None = None) -> tuple[int, IrredundantSequence]:
    search = search or BaseSearch(g, budget=budget)
    return search.min_base()


def max_irredundant_size(g, budget: int | None = None, early_exit_above: int | None = None,
                         search: BaseSearch | None = None) -> tuple[int, IrredundantSequence]:
    search = search or BaseSearch(g, budget=budget)
    return search.max_irredundant(early_exit_above)


def ibis_check(g, mode: str = "exact", budget: int | None = None, seed: int = 0,
               samples: int = DEFAULT_SAMPLES, search: BaseSearch | None = None) -> IbisVerdict:
    """Decide whether all irredundant bases of g have the same size.

    ``exact``: b(G) first, then look for an irredundant base longer than it.
    ``fast``: random bases first; two different sizes (both re-verified from
    scratch) refute IBIS, otherwise fall through to the exact search.
    """
    if mode not in ("exact", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    search = search or BaseSearch(g, budget=budget, seed=seed)
    if search.order == 1:
        empty = IrredundantSequence((), (1,))
        return IbisVerdict(0, 0, True, empty, empty, "exact", 0, 1)
    if mode == "fast":
        rng = random.Random(seed)
        by_size: dict[int, IrredundantSequence] = {}
        for _ in range(samples):
            s = search.sample(rng)
            by_size.setdefault(len(s), s)
        if len(by_size) > 1:
            lo, hi = by_size[min(by_size)], by_size[max(by_size)]
            for s in (lo, hi):
                checked = is_irredundant(search.root, s.points)
                if isinstance(checked, int) or not checked.is_base:
                    raise AssertionError(f"sampled witness failed re-verification: {s}")
            return IbisVerdict(len(lo), len(hi), False, lo, hi, "sampled-refutation",
                               search.nodes_explored, search.order)
    lo_size, lo = search.min_base()
    hi_size, hi = search.max_irredundant(early_exit_above=lo_size)
    return IbisVerdict(lo_size, hi_size, lo_size == hi_size, lo, hi, "exact",
                       search.nodes_explored, search.order)


def reorder_invariance_check(g, trials: int = 50, seed: int = 0,
                             search: BaseSearch | None = None) -> tuple[bool, tuple | None]:
    """Shuffle sampled irredundant bases and re-test them.

    Returns ``(True, None)`` or ``(False, reordered_sequence)``.
    """
    search = search or BaseSearch(g, seed=seed)
    rng = random.Random(seed)
    for _ in range(trials):
        base = list(search.sample(rng).points)
        for _ in range(3):
            rng.shuffle(base)
            if isinstance(is_irredundant(search.root, base), int):
                return False, tuple(base)
    return True, None


@dataclass
class GroupMatroid:
    ground_size: int
    rank: int
    bases: set = field(default_factory=set)
    exchange_verified: bool = False

    @property
    def ordered_base_count(self) -> int:
        return len(self.bases) * math.factorial(self.rank)

    def to_dict(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "rank": self.rank,
            "bases": sorted(sorted(x + 1 for x in b) for b in self.bases),
            "exchange_axiom_verified": self.exchange_verified,
        }


def check_exchange_axiom(bases: set, ground_size: int) -> tuple | None:
    """First (A, a, B) violating basis exchange, or None."""
    masks = [sum(1 << x for x in b) for b in bases]
    maskset = set(masks)

    def unmask(m):
        return frozenset(i for i in range(ground_size) if m >> i & 1)

    for A in masks:
        for a in range(ground_size):
            if not A >> a & 1:
                continue
            rest = A & ~(1 << a)
            good = 0
            for b in range(ground_size):
                if not A >> b & 1 and (rest | 1 << b) in maskset:
                    good |= 1 << b
            for B in masks:
                if not B >> a & 1 and not B & good:
                    return unmask(A), a, unmask(B)
    return None


def matroid_from_group(g, degree_bound: int = 40, verdict: IbisVerdict | None = None) -> GroupMatroid:
    """All irredundant bases as point sets (no orbit pruning), with the
    exchange axiom verified before returning."""
    root = _root(g)
    degree = root.action.degree
    if degree > degree_bound:
        raise ValueError(f"degree {degree} exceeds bound {degree_bound}")
    verdict = verdict or ibis_check(g)
    if not verdict.is_ibis:
        raise NotIBISError(f"not IBIS: irredundant bases of sizes {verdict.min_size} and {verdict.max_size}")
    bases: set = set()
    seen: set = set()
    stack = [(frozenset(), root)]
    while stack:
        pts, node = stack.pop()
        if node.order == 1:
            bases.add(pts)
            continue
        for x in range(degree):
            if x in pts or not node.moves(x):
                continue
            nxt = pts | {x}
            if nxt in seen:
                continue
            seen.add(nxt)
            stack.append((nxt, node.stabilizer(x)))
    ranks = {len(b) for b in bases}
    if len(ranks) != 1:
        raise NotIBISError(f"bases of several sizes: {sorted(ranks)}")
    rank = ranks.pop()
    bad = check_exchange_axiom(bases, degree)
    if bad is not None:
        raise NotIBISError(f"basis exchange fails for {bad}")
    return GroupMatroid(degree, rank, bases, True)


def stabilizer_profile(g, depth: int = 2, first_point: int = 0) -> Counter:
    """Orders of two-point (or three-point) stabilizers starting at ``first_point``.

    depth 2: Counter {|G_{w,x}|: number of points x != w with that order}.
    depth 3: Counter {|G_{w,x,y}|: count}, x over orbit representatives of
    G_w, y over the points moved by G_{w,x}.
    """
    if depth not in (2, 3):
        raise ValueError("depth must be 2 or 3")
    node = _root(g).stabilizer(first_point)
    profile: Counter = Counter()
    if depth == 2:
        others = [x for x in node.fixed if x != first_point]
        if others:
            profile[node.order] += len(others)
        for cell in node.cells:
            profile[node.order // len(cell)] += len(cell)
        return profile
    for cell in node.cells:
        sub = node.stabilizer(cell[0])
        for c2 in sub.cells:
            profile[sub.order // len(c2)] += len(c2)
    return profile


def brute_force_base_sizes(g: GeneratedGroup, order_limit: int = 10**4) -> tuple[int, int]:
    """(min, max) irredundant base length by plain recursion over every point
    sequence with explicit element lists: no chains, no orbit pruning, no
    memoization.  Independent oracle for small groups."""
    elems = list(closure(g.gen_tuples, g.degree, limit=order_limit))
    sizes = set()

    def rec(group: list, depth: int) -> None:
        if len(group) == 1:
            sizes.add(depth)
            return
        for x in range(g.degree):
            sub = [e for e in group if e[x] == x]
            if len(sub) < len(group):
                rec(sub, depth + 1)

    rec(elems, 0)
    return min(sizes), max(sizes)


def extend_irredundant(g, prefix: Sequence[int], target: int,
                       budget: int | None = None) -> IrredundantSequence:
    """Extend an irredundant prefix to the longest irredundant base found,
    stopping early once the total length reaches ``target``."""
    checked = is_irredundant(g, prefix)
    if isinstance(checked, int):
        raise ValueError(f"prefix is redundant at position {checked}")
    search = BaseSearch(g, budget=budget).from_prefix(prefix)
    need = target - len(prefix)
    _, tail = search.max_irredundant(early_exit_above=max(need - 1, 0) if need > 0 else 0)
    pts = tuple(prefix) + tail.points
    return IrredundantSequence(pts, checked.orders + tail.orders[1:])
