"""Permutations on {0, ..., n-1}, generated groups and induced actions.

Points are 0-indexed internally.  Everything a person reads or writes
(cycle notation, group files, reports) is 1-indexed.

Composition is left to right: ``(p * q)(x) == q(p(x))``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence


class DegreeError(ValueError):
    """Two permutations (or a permutation and a point) disagree on degree."""


class ParseError(ValueError):
    """Malformed permutation text; ``token`` names the offending piece."""

    def __init__(self, message: str, token: str = ""):
        super().__init__(message if not token else f"{message}: {token!r}")
        self.token = token


class DomainError(ValueError):
    """An induced action left its labeled domain or was not bijective."""


# -- raw image-tuple helpers, used by the hot loops elsewhere ---------------

def mul(a: tuple, b: tuple) -> tuple:
    """Image tuple of a-then-b."""
    return tuple(map(b.__getitem__, a))


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity_tuple(n: int) -> tuple:
    return tuple(range(n))


def cycle_lengths(a: tuple) -> list[int]:
    seen = bytearray(len(a))
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        j, k = i, 0
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            k += 1
        lengths.append(k)
    return lengths


def element_order(a: tuple) -> int:
    return math.lcm(*cycle_lengths(a)) if a else 1


class Permutation:
    """A bijection of {0..n-1}, stored as its image table."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-indexed cycles."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise ParseError("point out of range", str(x + 1))
                if x in seen:
                    raise ParseError("repeated point", str(x + 1))
                seen.add(x)
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return act(self, x)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        result = identity_tuple(self.degree)
        base = self.images if k >= 0 else inv(self.images)
        k = abs(k)
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return Permutation(result, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({render(self)!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return element_order(self.images)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, 0-indexed."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p then q."""
    if p.degree != q.degree:
        raise DegreeError(f"degrees differ: {p.degree} vs {q.degree}")
    return Permutation(mul(p.images, q.images), check=False)


def inverse(p: Permutation) -> Permutation:
    return Permutation(inv(p.images), check=False)


def act(p: Permutation, x: int) -> int:
    if not 0 <= x < p.degree:
        raise DegreeError(f"point {x} outside 0..{p.degree - 1}")
    return p.images[x]


def render(p: Permutation) -> str:
    """Canonical 1-indexed cycle notation; the identity renders as ``()``."""
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycs)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-indexed cycle notation or a 0-indexed comma-separated image list.

    >>> parse_permutation("(1 2)", 3).images
    (1, 0, 2)
    >>> parse_permutation("2,0,1", 3).images
    (2, 0, 1)
    """
    s = text.strip()
    if not s:
        raise ParseError("empty permutation text")
    if s.startswith("("):
        rest = _CYCLE.sub("", s).strip()
        if rest:
            raise ParseError("unexpected text outside cycles", rest)
        cycles = []
        for body in _CYCLE.findall(s):
            tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
            cyc = []
            for t in tokens:
                if not t.isdigit():
                    raise ParseError("not a point", t)
                x = int(t)
                if not 1 <= x <= degree:
                    raise ParseError(f"point outside 1..{degree}", t)
                cyc.append(x - 1)
            if len(set(cyc)) != len(cyc):
                raise ParseError("repeated point in cycle", "(" + body + ")")
            if len(cyc) > 1:
                cycles.append(cyc)
        return Permutation.from_cycles(cycles, degree)
    tokens = [t.strip() for t in s.split(",")]
    images = []
    for t in tokens:
        if not t.isdigit():
            raise ParseError("not a point", t)
        images.append(int(t))
    if len(images) != degree:
        raise ParseError(f"image list has {len(images)} entries, degree is {degree}", s)
    bad = [x for x in images if x >= degree]
    if bad:
        raise ParseError(f"point outside 0..{degree - 1}", str(bad[0]))
    if len(set(images)) != degree:
        raise ParseError("image list is not a bijection", s)
    return Permutation(images, check=False)


@dataclass(frozen=True)
class LabeledDomain:
    """Names for the points of an induced action.

    ``objects[i]`` is the object living at point ``i``.  Objects must be
    hashable canonical encodings (sorted tuples for subsets, sorted tuples
    of sorted tuples for partitions, and so on).
    """

    objects: tuple
    index: dict = field(compare=False, repr=False)

    @classmethod
    def from_objects(cls, objects: Iterable[Hashable]) -> LabeledDomain:
        objects = tuple(objects)
        index = {obj: i for i, obj in enumerate(objects)}
        if len(index) != len(objects):
            raise DomainError("domain objects are not pairwise distinct")
        return cls(objects, index)

    def __len__(self) -> int:
        return len(self.objects)

    def point(self, obj) -> int:
        return self.index[obj]

    def points(self, objs: Iterable) -> list[int]:
        return [self.index[o] for o in objs]


@dataclass(frozen=True)
class GeneratedGroup:
    """A permutation group given by generators.  Identity generators are dropped."""

    degree: int
    generators: tuple = ()
    label: str = ""
    domain: LabeledDomain | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        gens = []
        for g in self.generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != self.degree:
                raise DegreeError(f"generator of degree {g.degree} in a group of degree {self.degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        if self.domain is not None and len(self.domain) != self.degree:
            raise DomainError("domain size differs from degree")

    @property
    def gen_tuples(self) -> list[tuple]:
        return [g.images for g in self.generators]

    def with_label(self, label: str) -> GeneratedGroup:
        return GeneratedGroup(self.degree, self.generators, label, self.domain)

    def point_label(self, x: int) -> str:
        """Human-readable name of point x (1-indexed when unlabeled)."""
        if self.domain is None:
            return str(x + 1)
        return format_object(self.domain.objects[x])


def format_object(obj) -> str:
    """Render a domain object with 1-indexed underlying points where that makes sense."""
    if isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj + 1)
    if isinstance(obj, tuple):
        return "{" + ",".join(format_object(o) for o in obj) + "}"
    return str(obj)


def induce(g: GeneratedGroup, domain: LabeledDomain,
           object_action: Callable[[Hashable, Permutation], Hashable],
           label: str = "") -> GeneratedGroup:
    """The action of ``g`` on ``domain`` given by ``object_action``."""
    gens = []
    for p in g.generators:
        images = []
        for obj in domain.objects:
            img = object_action(obj, p)
            try:
                images.append(domain.index[img])
            except KeyError:
                raise DomainError(f"action sends {obj!r} outside the domain (to {img!r})") from None
        if len(set(images)) != len(images):
            raise DomainError("induced map is not a bijection")
        gens.append(Permutation(images, check=False))
    return GeneratedGroup(len(domain), tuple(gens), label or g.label, domain)


def on_sets(obj: tuple, p) -> tuple:
    """Image of a sorted tuple of points under a Permutation or image tuple."""
    images = getattr(p, "images", p)
    return tuple(sorted([images[x] for x in obj]))


def on_set_of_sets(obj: tuple, p) -> tuple:
    """Image of a sorted tuple of sorted tuples (partitions, pairs of subsets)."""
    images = getattr(p, "images", p)
    return tuple(sorted([tuple(sorted([images[x] for x in block])) for block in obj]))


@dataclass(frozen=True)
class ActionGroup:
    """A group known faithfully on a small set, analysed through its action on
    a labeled domain of objects.

    Keeping the small representation avoids storing transversals of the
    (possibly huge) induced degree; ``induced()`` materialises the large one.
    """

    source: GeneratedGroup
    domain: LabeledDomain
    object_action: Callable = field(compare=False)
    label: str = ""

    @property
    def degree(self) -> int:
        return len(self.domain)

    def image(self, x: int, g) -> int:
        return self.domain.index[self.object_action(self.domain.objects[x], g)]

    def induced(self) -> GeneratedGroup:
        return induce(self.source, self.domain, self.object_action, self.label)


# -- group files ------------------------------------------------------------

def group_to_dict(g: GeneratedGroup) -> dict:
    return {"degree": g.degree,
            "generators": [render(p) for p in g.generators],
            "label": g.label}


def group_from_dict(doc: dict) -> GeneratedGroup:
    try:
        degree = doc["degree"]
        gens = doc["generators"]
    except (KeyError, TypeError) as exc:
        raise ParseError("group document lacks a required key", str(exc)) from None
    if not isinstance(degree, int) or degree < 0:
        raise ParseError("degree must be a non-negative integer", str(degree))
    perms = [parse_permutation(s, degree) for s in gens]
    return GeneratedGroup(degree, tuple(perms), doc.get("label", ""))


def dumps_group(g: GeneratedGroup) -> str:
    return json.dumps(group_to_dict(g), indent=2) + "\n"


def loads_group(text: str) -> GeneratedGroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return group_from_dict(doc)


def load_group(path) -> GeneratedGroup:
    with open(path) as fh:
        return loads_group(fh.read())


def save_group(g: GeneratedGroup, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_group(g))


def closure(generators: Iterable[tuple], degree: int, limit: int | None = None) -> set:
    """All elements of the group generated by the given image tuples (BFS).

    Only suitable for small groups; raises ``OverflowError`` past ``limit``.
    """
    ident = identity_tuple(degree)
    gens = [tuple(g) for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        raise OverflowError(f"group has more than {limit} elements")
        frontier = nxt
    return seen
